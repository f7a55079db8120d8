use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{GraphError, Vertex};

/// Explicit target graphs are capped so the exact solver stays tractable.
pub const MAX_EXPLICIT_EDGES: usize = 10;

/// A target graph that one color class must contain to win.
///
/// Text form: `S<k>` star with `k` edges, `P<n>` path on `n` vertices,
/// `C<n>` cycle, `K<n>` clique, `M<n>` matching with `n` edges, and
/// `E[u-v,...]` for an explicit edge list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TargetSpec {
    Star(usize),
    Path(usize),
    Cycle(usize),
    Matching(usize),
    Clique(usize),
    Explicit(Vec<(Vertex, Vertex)>),
}

impl TargetSpec {
    pub fn validate(&self) -> Result<(), GraphError> {
        let bad = |why: &str| Err(GraphError::UnsupportedTarget(format!("{self}: {why}")));
        match self {
            TargetSpec::Star(0)
            | TargetSpec::Path(0)
            | TargetSpec::Matching(0)
            | TargetSpec::Clique(0) => bad("parameter must be at least 1"),
            TargetSpec::Cycle(n) if *n < 3 => bad("a cycle needs at least 3 vertices"),
            TargetSpec::Explicit(edges) => {
                if edges.is_empty() {
                    return bad("empty edge list");
                }
                if edges.len() > MAX_EXPLICIT_EDGES {
                    return bad("too many edges for the exact search");
                }
                let mut seen = Vec::with_capacity(edges.len());
                for &(u, v) in edges {
                    if u == v {
                        return bad("loop edge");
                    }
                    let key = (u.min(v), u.max(v));
                    if seen.contains(&key) {
                        return bad("repeated edge");
                    }
                    seen.push(key);
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Edge list of the target graph on vertices `0..k`.
    pub fn pattern_edges(&self) -> Vec<(Vertex, Vertex)> {
        match self {
            TargetSpec::Star(k) => (1..=*k).map(|i| (0, i)).collect(),
            TargetSpec::Path(n) => (1..*n).map(|i| (i - 1, i)).collect(),
            TargetSpec::Cycle(n) => (0..*n).map(|i| (i, (i + 1) % n)).collect(),
            TargetSpec::Matching(n) => (0..*n).map(|i| (2 * i, 2 * i + 1)).collect(),
            TargetSpec::Clique(n) => (0..*n)
                .flat_map(|i| (i + 1..*n).map(move |j| (i, j)))
                .collect(),
            TargetSpec::Explicit(edges) => {
                // compact the ids so isolated gaps do not count as pattern vertices
                let mut ids: Vec<Vertex> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
                ids.sort_unstable();
                ids.dedup();
                let idx = |x: Vertex| ids.binary_search(&x).unwrap();
                edges.iter().map(|&(u, v)| (idx(u), idx(v))).collect()
            }
        }
    }

    /// Number of vertices of the target graph.
    pub fn order(&self) -> usize {
        match self {
            TargetSpec::Star(k) => k + 1,
            TargetSpec::Path(n) | TargetSpec::Cycle(n) | TargetSpec::Clique(n) => *n,
            TargetSpec::Matching(n) => 2 * n,
            TargetSpec::Explicit(_) => {
                let edges = self.pattern_edges();
                edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0)
            }
        }
    }
}

impl fmt::Display for TargetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TargetSpec::Star(k) => write!(f, "S{k}"),
            TargetSpec::Path(n) => write!(f, "P{n}"),
            TargetSpec::Cycle(n) => write!(f, "C{n}"),
            TargetSpec::Clique(n) => write!(f, "K{n}"),
            TargetSpec::Matching(n) => write!(f, "M{n}"),
            TargetSpec::Explicit(edges) => {
                write!(f, "E[")?;
                for (i, (u, v)) in edges.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{u}-{v}")?;
                }
                write!(f, "]")
            }
        }
    }
}

impl FromStr for TargetSpec {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || GraphError::UnsupportedTarget(format!("cannot parse target {s:?}"));
        let spec = if let Some(body) = s.strip_prefix("E[").and_then(|r| r.strip_suffix(']')) {
            let mut edges = Vec::new();
            for part in body.split(',').filter(|p| !p.trim().is_empty()) {
                let (u, v) = part.split_once('-').ok_or_else(bad)?;
                let u = u.trim().parse().map_err(|_| bad())?;
                let v = v.trim().parse().map_err(|_| bad())?;
                edges.push((u, v));
            }
            TargetSpec::Explicit(edges)
        } else {
            let mut chars = s.chars();
            let head = chars.next().ok_or_else(bad)?;
            let n: usize = chars.as_str().parse().map_err(|_| bad())?;
            match head.to_ascii_uppercase() {
                'S' => TargetSpec::Star(n),
                'P' => TargetSpec::Path(n),
                'C' => TargetSpec::Cycle(n),
                'K' => TargetSpec::Clique(n),
                'M' => TargetSpec::Matching(n),
                _ => return Err(bad()),
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl Serialize for TargetSpec {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TargetSpec {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The red and blue targets of one game.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TargetPair {
    pub red: TargetSpec,
    pub blue: TargetSpec,
}

impl TargetPair {
    pub fn new(red: TargetSpec, blue: TargetSpec) -> Self {
        TargetPair { red, blue }
    }

    /// The star-versus-path pair `(K_{1,3}, P_l)`.
    pub fn star_path(l: usize) -> Self {
        TargetPair::new(TargetSpec::Star(3), TargetSpec::Path(l))
    }

    pub fn for_color(&self, c: super::Color) -> &TargetSpec {
        match c {
            super::Color::Red => &self.red,
            super::Color::Blue => &self.blue,
        }
    }

    pub fn validate(&self) -> Result<(), GraphError> {
        self.red.validate()?;
        self.blue.validate()
    }
}

impl fmt::Display for TargetPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.red, self.blue)
    }
}
