//! Brute-force oracles shared by the property and acceptance suites.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;

use ramsey_core::engine::GameState;
use ramsey_core::graph::{bits, Color, ColoredGraph, TargetPair, Vertex};
use ramsey_core::painter::BlockingPainter;
use ramsey_core::solver::all_moves;

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, density: f64) -> ColoredGraph {
    let mut g = ColoredGraph::with_vertices(n).unwrap();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                let c = if rng.gen_bool(0.5) {
                    Color::Red
                } else {
                    Color::Blue
                };
                g.add_edge(u, v, c).unwrap();
            }
        }
    }
    g
}

/// `g` with vertex `v` renamed to `perm[v]`.
pub fn permuted(g: &ColoredGraph, perm: &[Vertex]) -> ColoredGraph {
    let mut h = ColoredGraph::with_vertices(g.vertex_count()).unwrap();
    for (u, v, c) in g.edges() {
        h.add_edge(perm[u], perm[v], c).unwrap();
    }
    h
}

pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<Vertex> {
    let mut p: Vec<Vertex> = (0..n).collect();
    p.shuffle(rng);
    p
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Tries every bijection.
pub fn brute_isomorphic(a: &ColoredGraph, b: &ColoredGraph) -> bool {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        if a.edges()
            .all(|(u, v, c)| b.edge_color(p[u], p[v]) == Some(c))
        {
            return true;
        }
        if !next_permutation(&mut p) {
            return false;
        }
    }
}

/// Order of a longest path in color `c`, by enumerating simple paths.
pub fn brute_longest_path(g: &ColoredGraph, c: Color) -> usize {
    fn walk(g: &ColoredGraph, c: Color, v: Vertex, used: u64) -> usize {
        let mut best = used.count_ones() as usize;
        for w in bits(g.neighbors(v, c) & !used) {
            best = best.max(walk(g, c, w, used | 1 << w));
        }
        best
    }
    let n = g.vertex_count();
    (0..n).map(|v| walk(g, c, v, 1 << v)).max().unwrap_or(0)
}

/// Independent form of the blocking rule on a board whose red part has
/// maximum degree two: red is refused at a red-degree-2 endpoint, or when
/// `u` and `v` are joined by a red path short enough that the closed cycle
/// has at most `l / 2` vertices.
pub fn brute_violation(g: &ColoredGraph, u: Vertex, v: Vertex, l: usize) -> bool {
    if g.degree(u, Color::Red) >= 2 || g.degree(v, Color::Red) >= 2 {
        return true;
    }
    // breadth-first red distance
    let mut dist = vec![usize::MAX; g.vertex_count().max(u.max(v) + 1)];
    let mut queue = std::collections::VecDeque::new();
    if u < g.vertex_count() {
        dist[u] = 0;
        queue.push_back(u);
    }
    while let Some(x) = queue.pop_front() {
        for y in bits(g.neighbors(x, Color::Red)) {
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    let d = dist[v];
    d != usize::MAX && d + 1 >= 3 && d + 1 <= l / 2
}

/// Random legal Builder moves against the blocking painter. Stops early if a
/// target appears.
pub fn random_blocking_game<R: Rng>(rng: &mut R, l: usize, len: usize) -> GameState {
    let painter = BlockingPainter::new(l);
    let mut state = GameState::new(TargetPair::star_path(l)).unwrap();
    for _ in 0..len {
        if state.status().is_over() {
            break;
        }
        let moves = all_moves(state.board());
        let &(u, v) = moves.choose(rng).unwrap();
        let c = painter.color_for(state.board(), u, v);
        state.apply_move(u, v, c).unwrap();
    }
    state
}
