//! Two-colored simple graphs: the shared board of the online Ramsey game.
//!
//! Vertices are dense ids `0..vertex_count()`. Adjacency is stored as one
//! bitmask per vertex and color, which caps a board at [`MAX_VERTICES`].

mod canon;
mod detect;
mod target;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use canon::{canonical_key, canonical_labeling, CanonicalKey, MAX_CANON_VERTICES};
pub use detect::{
    contains_path, contains_target, creates_red_violation, has_cycle_len, longest_path,
    longest_path_order, longest_path_within, max_degree,
};
pub use target::{TargetPair, TargetSpec, MAX_EXPLICIT_EDGES};

pub(crate) use canon::canonical_form_labeled;

/// Hard upper bound on the number of vertices a board may hold.
pub const MAX_VERTICES: usize = 64;

pub type Vertex = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Color {
    #[serde(rename = "R")]
    Red,
    #[serde(rename = "B")]
    Blue,
}

impl Color {
    pub const BOTH: [Color; 2] = [Color::Red, Color::Blue];

    /// Byte used in canonical encodings (absent edges encode as 0).
    pub fn code(self) -> u8 {
        match self {
            Color::Red => 1,
            Color::Blue => 2,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Color::Red => 'R',
            Color::Blue => 'B',
        }
    }

    pub fn other(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }

    fn index(self) -> usize {
        match self {
            Color::Red => 0,
            Color::Blue => 1,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop edge at vertex {0}")]
    LoopEdge(Vertex),
    #[error("edge {{{0},{1}}} is already colored")]
    DuplicateEdge(Vertex, Vertex),
    #[error("vertex {0} exceeds the board capacity of {MAX_VERTICES}")]
    CapacityExceeded(Vertex),
    #[error("graph has {0} vertices, canonical labeling supports at most {MAX_CANON_VERTICES}")]
    SizeExceeded(usize),
    #[error("unsupported target: {0}")]
    UnsupportedTarget(String),
    #[error("malformed graph: {0}")]
    Malformed(String),
}

/// A simple graph whose edges each carry one [`Color`].
#[derive(Clone, PartialEq, Eq)]
pub struct ColoredGraph {
    n: usize,
    adj: [[u64; MAX_VERTICES]; 2],
    edges: usize,
}

impl Default for ColoredGraph {
    fn default() -> Self {
        Self::new()
    }
}

impl ColoredGraph {
    pub fn new() -> Self {
        ColoredGraph {
            n: 0,
            adj: [[0; MAX_VERTICES]; 2],
            edges: 0,
        }
    }

    /// Graph with `n` isolated vertices.
    pub fn with_vertices(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::CapacityExceeded(n - 1));
        }
        let mut g = Self::new();
        g.n = n;
        Ok(g)
    }

    pub fn from_edges<I>(edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex, Color)>,
    {
        let mut g = Self::new();
        for (u, v, c) in edges {
            g.add_edge(u, v, c)?;
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn color_edge_count(&self, c: Color) -> usize {
        let total: u32 = self.adj[c.index()][..self.n]
            .iter()
            .map(|m| m.count_ones())
            .sum();
        total as usize / 2
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Bitmask of all vertex ids.
    pub fn vertex_mask(&self) -> u64 {
        if self.n >= 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    /// Neighbors of `v` along edges of color `c`, as a bitmask.
    #[inline]
    pub fn neighbors(&self, v: Vertex, c: Color) -> u64 {
        self.adj[c.index()][v]
    }

    /// Neighbors of `v` along edges of either color.
    #[inline]
    pub fn all_neighbors(&self, v: Vertex) -> u64 {
        self.adj[0][v] | self.adj[1][v]
    }

    #[inline]
    pub fn degree(&self, v: Vertex, c: Color) -> usize {
        self.adj[c.index()][v].count_ones() as usize
    }

    pub fn edge_color(&self, u: Vertex, v: Vertex) -> Option<Color> {
        if u >= self.n || v >= self.n {
            return None;
        }
        let bit = 1u64 << v;
        if self.adj[0][u] & bit != 0 {
            Some(Color::Red)
        } else if self.adj[1][u] & bit != 0 {
            Some(Color::Blue)
        } else {
            None
        }
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edge_color(u, v).is_some()
    }

    /// Checks that `{u, v}` could be added as a new edge.
    pub fn check_new_edge(&self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::LoopEdge(u));
        }
        let hi = u.max(v);
        if hi >= MAX_VERTICES {
            return Err(GraphError::CapacityExceeded(hi));
        }
        if self.has_edge(u, v) {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
        Ok(())
    }

    /// Adds `{u, v}` with color `c`, growing the vertex set as needed.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex, c: Color) -> Result<(), GraphError> {
        self.check_new_edge(u, v)?;
        self.n = self.n.max(u + 1).max(v + 1);
        self.adj[c.index()][u] |= 1 << v;
        self.adj[c.index()][v] |= 1 << u;
        self.edges += 1;
        Ok(())
    }

    /// Returns a copy of the graph extended by `{u, v}` colored `c`.
    pub fn with_edge(&self, u: Vertex, v: Vertex, c: Color) -> Result<Self, GraphError> {
        let mut g = self.clone();
        g.add_edge(u, v, c)?;
        Ok(g)
    }

    /// All edges as `(u, v, color)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex, Color)> + '_ {
        (0..self.n).flat_map(move |u| {
            let higher = u64::MAX.checked_shl(u as u32 + 1).unwrap_or(0);
            let red = self.adj[0][u] & higher;
            let blue = self.adj[1][u] & higher;
            bits(red | blue).map(move |v| {
                let c = if red & (1 << v) != 0 {
                    Color::Red
                } else {
                    Color::Blue
                };
                (u, v, c)
            })
        })
    }

    /// Vertices with at least one incident edge of color `c`.
    pub fn touched_by(&self, c: Color) -> u64 {
        (0..self.n)
            .filter(|&v| self.adj[c.index()][v] != 0)
            .fold(0, |m, v| m | 1 << v)
    }

    /// Connected components of the `c`-colored subgraph that have at least
    /// one edge, as bitmasks.
    pub fn components(&self, c: Color) -> Vec<u64> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for v in 0..self.n {
            if seen & (1 << v) != 0 || self.adj[c.index()][v] == 0 {
                continue;
            }
            let comp = self.reach(v, c);
            seen |= comp;
            out.push(comp);
        }
        out
    }

    /// Vertices reachable from `v` along `c`-colored edges.
    pub fn reach(&self, v: Vertex, c: Color) -> u64 {
        let mut comp = 1u64 << v;
        let mut frontier = comp;
        while frontier != 0 {
            let mut next = 0;
            for w in bits(frontier) {
                next |= self.adj[c.index()][w];
            }
            frontier = next & !comp;
            comp |= next;
        }
        comp
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            vertices: self.n,
            edges: self.edges().collect(),
        }
    }

    pub fn from_json(json: &GraphJson) -> Result<Self, GraphError> {
        let mut g = Self::with_vertices(json.vertices)?;
        for &(u, v, c) in &json.edges {
            if u >= json.vertices || v >= json.vertices {
                return Err(GraphError::Malformed(format!(
                    "edge {{{u},{v}}} references a vertex beyond the bound {}",
                    json.vertices
                )));
            }
            g.add_edge(u, v, c)?;
        }
        Ok(g)
    }
}

impl fmt::Debug for ColoredGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ColoredGraph(n={}; ", self.n)?;
        for (i, (u, v, c)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{u}-{v}{c}")?;
        }
        write!(f, ")")
    }
}

/// Wire form: `{"vertices": n, "edges": [[u, v, "R"|"B"], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: usize,
    pub edges: Vec<(Vertex, Vertex, Color)>,
}

/// Iterates the set bits of a mask, lowest first.
#[inline]
pub fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}
