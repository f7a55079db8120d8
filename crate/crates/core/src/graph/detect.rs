//! Target-pattern detectors on a single color class.

use super::{bits, Color, ColoredGraph, GraphError, TargetSpec, Vertex};

/// Components at or below this size use the subset dynamic program for
/// longest paths; larger ones fall back to backtracking.
const PATH_DP_LIMIT: usize = 16;

pub fn max_degree(g: &ColoredGraph, c: Color) -> usize {
    (0..g.vertex_count())
        .map(|v| g.degree(v, c))
        .max()
        .unwrap_or(0)
}

/// Number of vertices on a longest `c`-colored path; 1 for a nonempty graph
/// without `c` edges and 0 for the empty graph.
pub fn longest_path_order(g: &ColoredGraph, c: Color) -> usize {
    if g.is_empty() {
        return 0;
    }
    let mut best = 1;
    for comp in g.components(c) {
        let size = comp.count_ones() as usize;
        if size <= best {
            continue;
        }
        let order = if size <= PATH_DP_LIMIT {
            longest_in_component_dp(g, c, comp)
        } else {
            longest_path_within(g, c, comp).len()
        };
        best = best.max(order);
    }
    best
}

/// Subset DP: `ends[mask]` holds the vertices at which some path covering
/// exactly `mask` can end.
fn longest_in_component_dp(g: &ColoredGraph, c: Color, comp: u64) -> usize {
    let verts: Vec<Vertex> = bits(comp).collect();
    let k = verts.len();
    let local_adj: Vec<u32> = verts
        .iter()
        .map(|&v| {
            verts
                .iter()
                .enumerate()
                .filter(|&(_, &w)| g.neighbors(v, c) & (1 << w) != 0)
                .fold(0u32, |m, (j, _)| m | 1 << j)
        })
        .collect();
    let full = (1usize << k) - 1;
    let mut ends = vec![0u32; full + 1];
    for i in 0..k {
        ends[1 << i] = 1 << i;
    }
    let mut best = 1;
    for mask in 1..=full {
        let e = ends[mask];
        if e == 0 {
            continue;
        }
        best = best.max(mask.count_ones() as usize);
        if best == k {
            break;
        }
        let mut rest = e;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let mut ext = local_adj[v] & !(mask as u32);
            while ext != 0 {
                let w = ext.trailing_zeros() as usize;
                ext &= ext - 1;
                ends[mask | 1 << w] |= 1 << w;
            }
        }
    }
    best
}

/// A longest `c`-colored path whose vertices all lie in `mask`, as a vertex
/// sequence. Empty when `mask` holds no vertex of the graph.
pub fn longest_path_within(g: &ColoredGraph, c: Color, mask: u64) -> Vec<Vertex> {
    let mask = mask & g.vertex_mask();
    let mut best: Vec<Vertex> = bits(mask).take(1).collect();
    let mut seen = 0u64;
    for start in bits(mask) {
        if seen & (1 << start) != 0 {
            continue;
        }
        let comp = g.reach(start, c) & mask;
        seen |= comp;
        let size = comp.count_ones() as usize;
        if size <= best.len() {
            continue;
        }
        let mut path = Vec::with_capacity(size);
        for s in bits(comp) {
            path.clear();
            path.push(s);
            extend_longest(g, c, comp, 1 << s, &mut path, &mut best);
            if best.len() == size {
                break;
            }
        }
    }
    best
}

fn extend_longest(
    g: &ColoredGraph,
    c: Color,
    comp: u64,
    visited: u64,
    path: &mut Vec<Vertex>,
    best: &mut Vec<Vertex>,
) {
    if path.len() > best.len() {
        best.clear();
        best.extend_from_slice(path);
    }
    if best.len() == comp.count_ones() as usize {
        return;
    }
    let tip = *path.last().unwrap();
    for w in bits(g.neighbors(tip, c) & comp & !visited) {
        path.push(w);
        extend_longest(g, c, comp, visited | 1 << w, path, best);
        path.pop();
    }
}

/// A longest `c`-colored path in the whole graph.
pub fn longest_path(g: &ColoredGraph, c: Color) -> Vec<Vertex> {
    longest_path_within(g, c, g.vertex_mask())
}

/// Whether the `c`-colored subgraph contains a path on `n` vertices.
pub fn contains_path(g: &ColoredGraph, c: Color, n: usize) -> bool {
    match n {
        0 => true,
        1 => !g.is_empty(),
        _ => g.components(c).into_iter().any(|comp| {
            (comp.count_ones() as usize) >= n
                && bits(comp).any(|s| path_from(g, c, s, 1 << s, n - 1))
        }),
    }
}

fn path_from(g: &ColoredGraph, c: Color, tip: Vertex, visited: u64, more: usize) -> bool {
    if more == 0 {
        return true;
    }
    bits(g.neighbors(tip, c) & !visited).any(|w| path_from(g, c, w, visited | 1 << w, more - 1))
}

/// Whether the `c`-colored subgraph contains a cycle of length exactly `k`.
pub fn has_cycle_len(g: &ColoredGraph, c: Color, k: usize) -> bool {
    if k < 3 {
        return false;
    }
    // anchor each cycle at its smallest vertex
    (0..g.vertex_count()).any(|s| {
        let above = !((2u64 << s).wrapping_sub(1)) & g.vertex_mask();
        cycle_from(g, c, s, s, 1 << s, above, k - 1)
    })
}

fn cycle_from(
    g: &ColoredGraph,
    c: Color,
    anchor: Vertex,
    tip: Vertex,
    visited: u64,
    allowed: u64,
    more: usize,
) -> bool {
    if more == 0 {
        return g.neighbors(tip, c) & (1 << anchor) != 0;
    }
    bits(g.neighbors(tip, c) & allowed & !visited)
        .any(|w| cycle_from(g, c, anchor, w, visited | 1 << w, allowed, more - 1))
}

/// Whether a `c`-colored simple path from `from` to `to` exists whose edge
/// count lies in `min_edges..=max_edges`.
fn path_between(
    g: &ColoredGraph,
    c: Color,
    from: Vertex,
    to: Vertex,
    min_edges: usize,
    max_edges: usize,
) -> bool {
    fn go(
        g: &ColoredGraph,
        c: Color,
        tip: Vertex,
        to: Vertex,
        visited: u64,
        used: usize,
        min_edges: usize,
        max_edges: usize,
    ) -> bool {
        if used >= max_edges {
            return false;
        }
        let next = g.neighbors(tip, c) & !visited;
        if next & (1 << to) != 0 && used + 1 >= min_edges {
            return true;
        }
        bits(next & !(1 << to))
            .any(|w| go(g, c, w, to, visited | 1 << w, used + 1, min_edges, max_edges))
    }
    if from >= g.vertex_count() || to >= g.vertex_count() {
        return false;
    }
    go(g, c, from, to, 1 << from, 0, min_edges, max_edges)
}

/// Whether coloring the new edge `{u, v}` red would give a vertex red
/// degree 3, or close a red cycle of length in `3..=l/2`.
pub fn creates_red_violation(
    g: &ColoredGraph,
    u: Vertex,
    v: Vertex,
    l: usize,
) -> Result<bool, GraphError> {
    g.check_new_edge(u, v)?;
    let deg = |x: Vertex| {
        if x < g.vertex_count() {
            g.degree(x, Color::Red)
        } else {
            0
        }
    };
    if deg(u) >= 2 || deg(v) >= 2 {
        return Ok(true);
    }
    let longest_cycle = l / 2;
    if longest_cycle < 3 {
        return Ok(false);
    }
    Ok(path_between(g, Color::Red, u, v, 2, longest_cycle - 1))
}

/// Whether the `c`-colored subgraph of `g` contains `t` (not necessarily
/// induced).
pub fn contains_target(g: &ColoredGraph, c: Color, t: &TargetSpec) -> Result<bool, GraphError> {
    t.validate()?;
    Ok(match t {
        TargetSpec::Star(k) => max_degree(g, c) >= *k,
        TargetSpec::Path(n) => contains_path(g, c, *n),
        TargetSpec::Cycle(n) => has_cycle_len(g, c, *n),
        TargetSpec::Clique(n) => has_clique(g, c, *n),
        TargetSpec::Matching(n) => has_matching(g, c, g.touched_by(c), *n),
        TargetSpec::Explicit(_) => has_subgraph(g, c, &t.pattern_edges()),
    })
}

fn has_clique(g: &ColoredGraph, c: Color, n: usize) -> bool {
    fn grow(g: &ColoredGraph, c: Color, cand: u64, need: usize) -> bool {
        if need == 0 {
            return true;
        }
        if (cand.count_ones() as usize) < need {
            return false;
        }
        bits(cand).any(|v| {
            let later = cand & !((2u64 << v).wrapping_sub(1));
            grow(g, c, later & g.neighbors(v, c), need - 1)
        })
    }
    match n {
        0 => true,
        1 => !g.is_empty(),
        _ => grow(g, c, g.touched_by(c), n),
    }
}

fn has_matching(g: &ColoredGraph, c: Color, live: u64, need: usize) -> bool {
    if need == 0 {
        return true;
    }
    // drop vertices without a partner left
    let mut live = live;
    for v in bits(live) {
        if g.neighbors(v, c) & live == 0 {
            live &= !(1 << v);
        }
    }
    if (live.count_ones() as usize) < 2 * need {
        return false;
    }
    let v = live.trailing_zeros() as usize;
    let rest = live & !(1 << v);
    bits(g.neighbors(v, c) & rest).any(|w| has_matching(g, c, rest & !(1 << w), need - 1))
        || has_matching(g, c, rest, need)
}

/// Subgraph monomorphism search for a small pattern given by its edge list
/// on vertices `0..k`.
fn has_subgraph(g: &ColoredGraph, c: Color, pattern: &[(Vertex, Vertex)]) -> bool {
    let k = pattern.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    if k > g.vertex_count() {
        return false;
    }
    let mut padj = vec![0u64; k];
    for &(u, v) in pattern {
        padj[u] |= 1 << v;
        padj[v] |= 1 << u;
    }
    // visit order: repeatedly take the unplaced vertex with most placed
    // neighbors, breaking ties by degree
    let mut order = Vec::with_capacity(k);
    let mut placed = 0u64;
    while order.len() < k {
        let next = (0..k)
            .filter(|&i| placed & (1 << i) == 0)
            .max_by_key(|&i| ((padj[i] & placed).count_ones(), padj[i].count_ones()))
            .unwrap();
        order.push(next);
        placed |= 1 << next;
    }
    let host = g.touched_by(c);
    let mut map = vec![usize::MAX; k];
    place(g, c, &padj, &order, 0, host, 0, &mut map)
}

#[allow(clippy::too_many_arguments)]
fn place(
    g: &ColoredGraph,
    c: Color,
    padj: &[u64],
    order: &[usize],
    depth: usize,
    host: u64,
    used: u64,
    map: &mut [usize],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let p = order[depth];
    let need_deg = padj[p].count_ones() as usize;
    let mut cand = host & !used;
    for q in bits(padj[p]) {
        if map[q] != usize::MAX {
            cand &= g.neighbors(map[q], c);
        }
    }
    for h in bits(cand) {
        if g.degree(h, c) < need_deg {
            continue;
        }
        map[p] = h;
        if place(g, c, padj, order, depth + 1, host, used | 1 << h, map) {
            return true;
        }
    }
    map[p] = usize::MAX;
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use Color::{Blue, Red};

    fn graph(edges: &[(Vertex, Vertex, Color)]) -> ColoredGraph {
        ColoredGraph::from_edges(edges.iter().copied()).unwrap()
    }

    fn path_graph(n: usize, c: Color) -> ColoredGraph {
        graph(&(1..n).map(|i| (i - 1, i, c)).collect::<Vec<_>>())
    }

    #[test]
    fn red_star_detected() {
        let g = graph(&[(0, 1, Red), (0, 2, Red), (0, 3, Red)]);
        assert!(contains_target(&g, Red, &TargetSpec::Star(3)).unwrap());
        assert!(!contains_target(&g, Blue, &TargetSpec::Star(1)).unwrap());
    }

    #[test]
    fn blue_path_too_short() {
        let g = path_graph(5, Blue);
        assert!(!contains_target(&g, Blue, &TargetSpec::Path(6)).unwrap());
        assert!(contains_target(&g, Blue, &TargetSpec::Path(5)).unwrap());
    }

    #[test]
    fn small_graph_with_blue_p5() {
        // v1..v4 = 0..3, x = 4
        let g = graph(&[
            (0, 1, Blue),
            (0, 2, Blue),
            (1, 3, Blue),
            (4, 2, Blue),
            (1, 2, Red),
            (2, 3, Red),
        ]);
        assert!(contains_target(&g, Blue, &TargetSpec::Path(5)).unwrap());
        assert_eq!(longest_path_order(&g, Blue), 5);
    }

    #[test]
    fn path_orders() {
        let tri = graph(&[(0, 1, Blue), (1, 2, Blue), (2, 0, Blue)]);
        assert_eq!(longest_path_order(&tri, Blue), 3);
        let mut c6: Vec<_> = (1..6).map(|i| (i - 1, i, Blue)).collect();
        c6.push((5, 0, Blue));
        assert_eq!(longest_path_order(&graph(&c6), Blue), 6);
        assert_eq!(longest_path_order(&ColoredGraph::new(), Blue), 0);
        assert_eq!(longest_path_order(&tri, Red), 1);
    }

    #[test]
    fn backtracking_path_on_large_component() {
        let g = path_graph(30, Blue);
        assert_eq!(longest_path_order(&g, Blue), 30);
        assert_eq!(longest_path(&g, Blue).len(), 30);
    }

    #[test]
    fn degenerate_path_targets() {
        let g = ColoredGraph::with_vertices(1).unwrap();
        assert!(contains_target(&g, Blue, &TargetSpec::Path(1)).unwrap());
        assert!(!contains_target(&ColoredGraph::new(), Blue, &TargetSpec::Path(1)).unwrap());
    }

    #[test]
    fn violation_examples() {
        assert!(!creates_red_violation(&ColoredGraph::new(), 0, 1, 7).unwrap());
        let p3 = path_graph(3, Red);
        assert!(creates_red_violation(&p3, 0, 2, 7).unwrap());
        let p5 = path_graph(5, Red);
        assert!(!creates_red_violation(&p5, 0, 4, 8).unwrap());
        assert!(creates_red_violation(&p5, 0, 4, 10).unwrap());
        // vertex 1 already has red degree 2
        assert!(creates_red_violation(&p3, 1, 5, 2).unwrap());
        assert_eq!(
            creates_red_violation(&p3, 0, 1, 7),
            Err(GraphError::DuplicateEdge(0, 1))
        );
    }

    #[test]
    fn short_targets_disable_cycle_rule() {
        let p3 = path_graph(3, Red);
        assert!(!creates_red_violation(&p3, 0, 2, 5).unwrap());
    }

    #[test]
    fn cycles_cliques_matchings() {
        let mut c5: Vec<_> = (1..5).map(|i| (i - 1, i, Red)).collect();
        c5.push((4, 0, Red));
        let g = graph(&c5);
        assert!(has_cycle_len(&g, Red, 5));
        assert!(!has_cycle_len(&g, Red, 4));
        assert!(contains_target(&g, Red, &TargetSpec::Matching(2)).unwrap());
        assert!(!contains_target(&g, Red, &TargetSpec::Matching(3)).unwrap());
        assert!(!contains_target(&g, Red, &TargetSpec::Clique(3)).unwrap());
        let tri = graph(&[(0, 1, Blue), (1, 2, Blue), (2, 0, Blue), (2, 3, Blue)]);
        assert!(contains_target(&tri, Blue, &TargetSpec::Clique(3)).unwrap());
        assert!(!contains_target(&tri, Blue, &TargetSpec::Clique(4)).unwrap());
    }

    #[test]
    fn explicit_pattern_search() {
        let paw = TargetSpec::Explicit(vec![(0, 1), (1, 2), (2, 0), (2, 3)]);
        let g = graph(&[(5, 6, Blue), (6, 7, Blue), (7, 5, Blue), (5, 1, Blue)]);
        assert!(contains_target(&g, Blue, &paw).unwrap());
        let h = graph(&[(5, 6, Blue), (6, 7, Blue), (7, 5, Blue), (5, 1, Red)]);
        assert!(!contains_target(&h, Blue, &paw).unwrap());
    }
}
