//! Exact canonical labeling of small edge-colored graphs.
//!
//! Each connected component is labeled by individualization and refinement:
//! colors of incident edges feed the refinement signatures, and the search
//! tree over refinement-stable orderings keeps the lexicographically least
//! adjacency encoding. Components are then ordered by their own encodings.
//! Interchangeable twin vertices are branched on only once.

use std::fmt;

use super::{ColoredGraph, GraphError, Vertex};

/// Largest graph accepted by [`canonical_key`].
pub const MAX_CANON_VERTICES: usize = 24;

/// Byte encoding of a colored graph, identical exactly for isomorphic graphs.
///
/// Layout: the vertex count, then for each pair `i < j` of canonical
/// positions (row-major) the edge byte: 0 absent, 1 red, 2 blue.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey(")?;
        for b in &self.0 {
            write!(f, "{b}")?;
        }
        write!(f, ")")
    }
}

pub fn canonical_key(g: &ColoredGraph) -> Result<CanonicalKey, GraphError> {
    let (key, _) = canonical_parts(g)?;
    Ok(key)
}

/// Canonical vertex order: position `i` holds the vertex placed `i`-th.
pub fn canonical_labeling(g: &ColoredGraph) -> Result<Vec<Vertex>, GraphError> {
    let (_, order) = canonical_parts(g)?;
    Ok(order)
}

fn canonical_parts(g: &ColoredGraph) -> Result<(CanonicalKey, Vec<Vertex>), GraphError> {
    let n = g.vertex_count();
    if n > MAX_CANON_VERTICES {
        return Err(GraphError::SizeExceeded(n));
    }
    let mut lab = vec![0u8; n * n];
    for (u, v, c) in g.edges() {
        lab[u * n + v] = c.code();
        lab[v * n + u] = c.code();
    }
    let (bytes, order) = canonical_form_labeled(n, &lab);
    Ok((CanonicalKey(bytes), order))
}

/// Canonical form of a graph given as a symmetric `n x n` label matrix
/// (0 = no edge). Returns the encoding and the canonical vertex order.
pub(crate) fn canonical_form_labeled(n: usize, lab: &[u8]) -> (Vec<u8>, Vec<usize>) {
    debug_assert_eq!(lab.len(), n * n);
    let mut comps: Vec<(Vec<u8>, Vec<usize>)> = components(n, lab)
        .into_iter()
        .map(|verts| {
            let sub = Component::new(&verts, n, lab);
            let (enc, local) = sub.canonical();
            (enc, local.into_iter().map(|i| verts[i]).collect())
        })
        .collect();
    comps.sort();
    let order: Vec<usize> = comps.into_iter().flat_map(|(_, o)| o).collect();
    (encode(n, lab, &order), order)
}

fn encode(n: usize, lab: &[u8], order: &[usize]) -> Vec<u8> {
    let k = order.len();
    let mut out = Vec::with_capacity(1 + k * k.saturating_sub(1) / 2);
    out.push(k as u8);
    for i in 0..k {
        for j in i + 1..k {
            out.push(lab[order[i] * n + order[j]]);
        }
    }
    out
}

fn components(n: usize, lab: &[u8]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            for w in 0..n {
                if !seen[w] && lab[v * n + w] != 0 {
                    seen[w] = true;
                    comp.push(w);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// One connected component relabeled to `0..k`.
struct Component {
    k: usize,
    lab: Vec<u8>,
    /// (neighbor, label) lists
    nbrs: Vec<Vec<(usize, u8)>>,
}

impl Component {
    fn new(verts: &[usize], n: usize, lab: &[u8]) -> Self {
        let k = verts.len();
        let mut local = vec![0u8; k * k];
        let mut nbrs = vec![Vec::new(); k];
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate() {
                let l = lab[u * n + v];
                local[i * k + j] = l;
                if l != 0 {
                    nbrs[i].push((j, l));
                }
            }
        }
        Component {
            k,
            lab: local,
            nbrs,
        }
    }

    fn canonical(&self) -> (Vec<u8>, Vec<usize>) {
        if self.k == 1 {
            return (vec![1], vec![0]);
        }
        let mut best: Option<(Vec<u8>, Vec<usize>)> = None;
        self.search(vec![0; self.k], &mut best);
        best.expect("search visits at least one leaf")
    }

    /// Refines `cells` to the coarsest equitable partition below it.
    /// Cell values come back as dense ranks `0..count`.
    fn refine(&self, cells: &mut [u32]) -> usize {
        let k = self.k;
        let mut count = usize::MAX;
        let mut sigs: Vec<(u32, Vec<(u32, u8)>)> = Vec::with_capacity(k);
        loop {
            sigs.clear();
            for v in 0..k {
                let mut around: Vec<(u32, u8)> =
                    self.nbrs[v].iter().map(|&(w, l)| (cells[w], l)).collect();
                around.sort_unstable();
                sigs.push((cells[v], around));
            }
            let mut idx: Vec<usize> = (0..k).collect();
            idx.sort_by(|&a, &b| sigs[a].cmp(&sigs[b]));
            let mut rank = 0u32;
            let mut fresh = vec![0u32; k];
            for w in 0..k {
                if w > 0 && sigs[idx[w]] != sigs[idx[w - 1]] {
                    rank += 1;
                }
                fresh[idx[w]] = rank;
            }
            let new_count = rank as usize + 1;
            cells.copy_from_slice(&fresh);
            if new_count == count {
                return count;
            }
            count = new_count;
        }
    }

    fn twins(&self, a: usize, b: usize) -> bool {
        let k = self.k;
        (0..k).all(|x| x == a || x == b || self.lab[a * k + x] == self.lab[b * k + x])
    }

    fn search(&self, mut cells: Vec<u32>, best: &mut Option<(Vec<u8>, Vec<usize>)>) {
        let count = self.refine(&mut cells);
        let k = self.k;
        if count == k {
            let mut order = vec![0usize; k];
            for (v, &c) in cells.iter().enumerate() {
                order[c as usize] = v;
            }
            let enc = encode(k, &self.lab, &order);
            if best.as_ref().is_none_or(|(b, _)| enc < *b) {
                *best = Some((enc, order));
            }
            return;
        }
        let mut sizes = vec![0usize; count];
        for &c in &cells {
            sizes[c as usize] += 1;
        }
        let target = sizes.iter().position(|&s| s > 1).unwrap() as u32;
        let mut reps: Vec<usize> = Vec::new();
        for v in (0..k).filter(|&v| cells[v] == target) {
            if !reps.iter().any(|&r| self.twins(r, v)) {
                reps.push(v);
            }
        }
        for v in reps {
            let split: Vec<u32> = cells
                .iter()
                .enumerate()
                .map(|(u, &c)| 2 * c + u32::from(c == target && u != v))
                .collect();
            self.search(split, best);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Color::{Blue, Red};

    #[test]
    fn relabeled_edge_has_same_key() {
        let a = ColoredGraph::from_edges([(0, 1, Red)]).unwrap();
        let mut b = ColoredGraph::with_vertices(10).unwrap();
        b.add_edge(7, 9, Red).unwrap();
        // b carries isolated vertices; compare the edge-bearing part
        let b_trim = ColoredGraph::from_edges([(0, 1, Red)]).unwrap();
        assert_eq!(canonical_key(&a).unwrap(), canonical_key(&b_trim).unwrap());
        assert_ne!(canonical_key(&a).unwrap(), canonical_key(&b).unwrap());
    }

    #[test]
    fn color_matters() {
        let a = ColoredGraph::from_edges([(0, 1, Red)]).unwrap();
        let b = ColoredGraph::from_edges([(0, 1, Blue)]).unwrap();
        assert_ne!(canonical_key(&a).unwrap(), canonical_key(&b).unwrap());
    }

    #[test]
    fn reversed_two_colored_path() {
        let a = ColoredGraph::from_edges([(0, 1, Red), (1, 2, Blue)]).unwrap();
        let b = ColoredGraph::from_edges([(2, 1, Red), (1, 0, Blue)]).unwrap();
        let c = ColoredGraph::from_edges([(0, 1, Blue), (1, 2, Red)]).unwrap();
        let ka = canonical_key(&a).unwrap();
        assert_eq!(ka, canonical_key(&b).unwrap());
        assert_eq!(ka, canonical_key(&c).unwrap());
    }

    #[test]
    fn encoding_layout() {
        let g = ColoredGraph::from_edges([(0, 1, Blue)]).unwrap();
        assert_eq!(canonical_key(&g).unwrap().as_bytes(), &[2, 2]);
        assert_eq!(canonical_key(&ColoredGraph::new()).unwrap().as_bytes(), &[0]);
    }

    #[test]
    fn large_star_is_fast_and_exact() {
        let star = ColoredGraph::from_edges((1..20).map(|i| (0, i, Blue))).unwrap();
        let mut shuffled = ColoredGraph::new();
        for i in 1..20 {
            shuffled.add_edge(19, i - 1, Blue).unwrap();
        }
        assert_eq!(canonical_key(&star).unwrap(), canonical_key(&shuffled).unwrap());
    }

    #[test]
    fn too_large_is_rejected() {
        let g = ColoredGraph::from_edges((1..30).map(|i| (i - 1, i, Red))).unwrap();
        assert_eq!(canonical_key(&g), Err(GraphError::SizeExceeded(30)));
    }

    #[test]
    fn labeling_is_a_permutation() {
        let g = ColoredGraph::from_edges([(0, 3, Red), (3, 2, Blue), (1, 4, Blue)]).unwrap();
        let mut order = canonical_labeling(&g).unwrap();
        order.sort_unstable();
        assert_eq!(order, vec![0, 1, 2, 3, 4]);
    }
}
