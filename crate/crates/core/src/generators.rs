//! Named graphs and random families.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bigraph::{BipartiteMultigraph, EdgeId, VertexId};
use crate::checker::{factor_violation, GraphPath, PathFactor};
use crate::error::{Error, Result};
use crate::transversal::{FGraph, TripleSystem};

pub const SIMPLE_RETRY_CAP: usize = 10_000;

/// K_{3,4} with X the degree-3 side; edges ordered by (x, y).
pub fn k34() -> BipartiteMultigraph {
    let pairs: Vec<_> = (0..4).flat_map(|x| (0..3).map(move |y| (x, y))).collect();
    BipartiteMultigraph::build(4, 3, &pairs).expect("in range")
}

fn subsets(n: u32, size: u32) -> Vec<u32> {
    // bitmasks of {1..n}, listed lexicographically by their sorted elements
    let mut out: Vec<u32> = (0u32..1 << n).filter(|m| m.count_ones() == size).collect();
    out.sort_by_key(|&m| (0..n).filter(|b| m >> b & 1 == 1).collect::<Vec<_>>());
    out
}

fn mask_of(label: &str) -> u32 {
    label.bytes().map(|b| 1u32 << (b - b'1')).sum()
}

/// The factor listed with the 3-set/2-set graph, one path per line.
const SUBSET_FACTOR: [&str; 5] = [
    "124 12 123 23 235 35 345",
    "135 13 134 34 346 46 456",
    "146 14 145 45 245 25 256",
    "125 15 156 56 356 36 236",
    "136 16 126 26 246 24 234",
];

/// X = 3-subsets and Y = 2-subsets of {1..6} in lexicographic order, joined
/// by containment, together with its five-path P7-factor.
pub fn subset_graph_6() -> (BipartiteMultigraph, PathFactor) {
    let xs = subsets(6, 3);
    let ys = subsets(6, 2);
    let mut pairs = Vec::new();
    for (xi, &x) in xs.iter().enumerate() {
        for (yi, &y) in ys.iter().enumerate() {
            if x & y == y {
                pairs.push((xi, yi));
            }
        }
    }
    let g = BipartiteMultigraph::build(xs.len(), ys.len(), &pairs).expect("in range");

    let vertex = |label: &str| {
        let m = mask_of(label);
        match label.len() {
            3 => VertexId::x(xs.iter().position(|&s| s == m).expect("3-set")),
            _ => VertexId::y(ys.iter().position(|&s| s == m).expect("2-set")),
        }
    };
    let paths = SUBSET_FACTOR
        .iter()
        .map(|line| {
            let labels: Vec<&str> = line.split(' ').collect();
            let mut p = GraphPath::single(vertex(labels[0]));
            for l in &labels[1..] {
                let v = vertex(l);
                let e = edge_between(&g, p.last(), v).expect("listed pair is adjacent");
                p.push(e, v);
            }
            p
        })
        .collect();
    (g, PathFactor::new(paths))
}

fn edge_between(g: &BipartiteMultigraph, u: VertexId, v: VertexId) -> Option<EdgeId> {
    g.incident(u).iter().copied().find(|&e| g.other_end(e, u) == Some(v))
}

/// Y = {1..6} and eight X-vertices with neighborhoods 123, 124, 235, 346,
/// 346, 145, 156, 256 (in that order).
pub fn eight_triples_graph() -> BipartiteMultigraph {
    let triples = ["123", "124", "235", "346", "346", "145", "156", "256"];
    let pairs: Vec<_> = triples
        .iter()
        .enumerate()
        .flat_map(|(x, t)| t.bytes().map(move |b| (x, (b - b'1') as usize)))
        .collect();
    BipartiteMultigraph::build(8, 6, &pairs).expect("in range")
}

/// x0 joined once to each of y0, y1, y2, and x_{i+1} joined to y_i by three
/// parallel edges.
pub fn claw_triple_graph() -> BipartiteMultigraph {
    let mut pairs = vec![(0, 0), (0, 1), (0, 2)];
    for i in 0..3 {
        pairs.extend([(i + 1, i); 3]);
    }
    BipartiteMultigraph::build(4, 3, &pairs).expect("in range")
}

/// Disjoint union of `g1` and `g2` with `e1 = x1y1` and `e2 = x2y2` replaced
/// by `x1y2` and `x2y1`. Edge ids of `g1` are kept, those of `g2` are shifted
/// by `g1.edge_count()`, and the new edges take the ids of the old ones.
pub fn two_switch(
    g1: &BipartiteMultigraph,
    f1: &PathFactor,
    e1: EdgeId,
    g2: &BipartiteMultigraph,
    f2: &PathFactor,
    e2: EdgeId,
) -> Result<(BipartiteMultigraph, PathFactor)> {
    for (name, g, f, e) in [("first", g1, f1, e1), ("second", g2, f2, e2)] {
        g.require_biregular(3, 4)?;
        if !g.is_two_edge_connected() {
            return Err(Error::Precondition(format!("{name} graph is not 2-edge-connected")));
        }
        if let Some(reason) = factor_violation(g, f)? {
            return Err(Error::Precondition(format!("{name} factor: {reason}")));
        }
        if f.lengths().iter().any(|&l| l != 6) {
            return Err(Error::Precondition(format!("{name} factor is not a P7-factor")));
        }
        if !g.contains_edge(e) {
            return Err(Error::Precondition(format!("{e} is not an edge of the {name} graph")));
        }
        if f.edge_set().contains(&e) {
            return Err(Error::Precondition(format!("{e} lies on the {name} factor")));
        }
    }
    let (xo, yo, eo) = (g1.x_count(), g1.y_count(), g1.edge_count());
    let (x1, y1) = g1.edge_pairs()[e1.0];
    let (x2, y2) = g2.edge_pairs()[e2.0];
    let mut pairs: Vec<(usize, usize)> = g1.edge_pairs().to_vec();
    pairs.extend(g2.edge_pairs().iter().map(|&(x, y)| (x + xo, y + yo)));
    pairs[e1.0] = (x1, y2 + yo);
    pairs[eo + e2.0] = (x2 + xo, y1);
    let g = BipartiteMultigraph::build(xo + g2.x_count(), yo + g2.y_count(), &pairs)?;

    let shift = |v: VertexId| match v.is_x() {
        true => VertexId::x(v.index + xo),
        false => VertexId::y(v.index + yo),
    };
    let mut paths = f1.paths.clone();
    paths.extend(f2.paths.iter().map(|p| GraphPath {
        vertices: p.vertices.iter().copied().map(shift).collect(),
        edges: p.edges.iter().map(|e| EdgeId(e.0 + eo)).collect(),
    }));
    Ok((g, PathFactor::new(paths)))
}

/// Vertex id of the j-th element (1-based) of the i-th triple (1-based).
fn named(offset: usize, i: usize, j: usize) -> usize {
    offset + (i - 1) * 3 + (j - 1)
}

fn triples_from(offset: usize, k: usize) -> Vec<[usize; 3]> {
    (1..=k).map(|i| [1, 2, 3].map(|j| named(offset, i, j))).collect()
}

/// Cycles of the F with no independent transversal: k/2 four-cycles on the
/// first two elements of each triple and k/3 three-cycles on the third.
fn no_independent_cycles(offset: usize, k: usize) -> Vec<Vec<usize>> {
    let y = |i: usize, j: usize| named(offset, (i - 1) % k + 1, j);
    let mut cycles: Vec<Vec<usize>> = (1..=k / 2)
        .map(|i| vec![y(2 * i - 1, 1), y(2 * i, 1), y(2 * i - 1, 2), y(2 * i, 2)])
        .collect();
    for i in 1..=k / 6 {
        cycles.push(vec![y(6 * i - 3, 3), y(6 * i - 1, 3), y(6 * i + 1, 3)]);
        cycles.push(vec![y(6 * i - 4, 3), y(6 * i - 2, 3), y(6 * i, 3)]);
    }
    cycles
}

/// Cycles of the F with no spread transversal: 3k/2 two-cycles.
fn no_spread_cycles(offset: usize, k: usize) -> Vec<Vec<usize>> {
    let z = |i: usize, j: usize| named(offset, (i - 1) % k + 1, j);
    let mut cycles: Vec<Vec<usize>> = (1..=k).map(|i| vec![z(i, 1), z(i + 1, 2)]).collect();
    cycles.extend((1..=k / 2).map(|i| vec![z(2 * i - 1, 3), z(2 * i, 3)]));
    cycles
}

/// F and triples admitting no independent transversal; `k` a positive
/// multiple of 6.
pub fn no_independent_instance(k: usize) -> Result<(FGraph, TripleSystem)> {
    if k == 0 || !k.is_multiple_of(6) {
        return Err(Error::Precondition(format!("k = {k} is not a positive multiple of 6")));
    }
    let f = FGraph::from_cycles(3 * k, &no_independent_cycles(0, k))?;
    Ok((f, TripleSystem::new(triples_from(0, k))))
}

/// F and triples admitting no spread transversal; `k` a positive even number.
pub fn no_spread_instance(k: usize) -> Result<(FGraph, TripleSystem)> {
    if k == 0 || !k.is_multiple_of(2) {
        return Err(Error::Precondition(format!("k = {k} is not a positive even number")));
    }
    let f = FGraph::from_cycles(3 * k, &no_spread_cycles(0, k))?;
    Ok((f, TripleSystem::new(triples_from(0, k))))
}

/// The two instances above for k = 12 and k = 8 side by side, with the
/// first element of the first triple of each trading places in F. Vertices
/// 0..36 are the first part, 36..60 the second; triples keep their members.
pub fn no_mixed_transversal_instance() -> (FGraph, TripleSystem) {
    let (k1, k2) = (12, 8);
    let offset = 3 * k1;
    let (a, b) = (named(0, 1, 1), named(offset, 1, 1));
    let mut cycles = no_independent_cycles(0, k1);
    cycles.extend(no_spread_cycles(offset, k2));
    for v in cycles.iter_mut().flatten() {
        if *v == a {
            *v = b;
        } else if *v == b {
            *v = a;
        }
    }
    let mut triples = triples_from(0, k1);
    triples.extend(triples_from(offset, k2));
    let f = FGraph::from_cycles(3 * (k1 + k2), &cycles).expect("valid cycles");
    (f, TripleSystem::new(triples))
}

/// Configuration model: three stubs per X-vertex, four per Y-vertex, Y-stubs
/// shuffled and paired in order. With `simple_only`, draws are repeated on
/// the same stream until one has no parallel edges. Rejection sampling is not
/// uniform over simple graphs.
pub fn random_34_biregular(k: usize, seed: u64, simple_only: bool) -> Result<BipartiteMultigraph> {
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x_stubs: Vec<usize> = (0..4 * k).flat_map(|x| [x; 3]).collect();
    let mut y_stubs: Vec<usize> = (0..3 * k).flat_map(|y| [y; 4]).collect();
    for _ in 0..SIMPLE_RETRY_CAP {
        y_stubs.shuffle(&mut rng);
        let pairs: Vec<(usize, usize)> = x_stubs.iter().copied().zip(y_stubs.iter().copied()).collect();
        let g = BipartiteMultigraph::build(4 * k, 3 * k, &pairs)?;
        if !simple_only || g.is_simple() {
            return Ok(g);
        }
    }
    Err(Error::Generation(format!(
        "no simple instance for k={k}, seed={seed} after {SIMPLE_RETRY_CAP} draws"
    )))
}
