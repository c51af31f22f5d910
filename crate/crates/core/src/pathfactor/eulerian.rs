use std::collections::BTreeSet;

use serde::Serialize;

use crate::bigraph::{BipartiteMultigraph, EdgeId, VertexId};
use crate::checker::{factor_violation, GraphPath, PathFactor};
use crate::error::{Error, Result};

/// Edge set of a (1,2)-biregular spanning subgraph of a (2,4)-biregular
/// graph; every component is a P3 centered on the degree-4 side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HalfFactor {
    pub edges: BTreeSet<EdgeId>,
}

/// Both parity classes of the per-component Eulerian circuits: index 0 holds
/// the edges at even positions, index 1 those at odd positions.
pub fn p3_half_factor_classes(h: &BipartiteMultigraph) -> Result<[HalfFactor; 2]> {
    h.require_biregular(2, 4)?;
    let mut classes = [BTreeSet::new(), BTreeSet::new()];
    for comp in h.components() {
        let circuit = h.eulerian_circuit(&comp)?;
        if circuit.len() % 2 != 0 {
            return Err(Error::Invariant(format!(
                "component at {} has an odd circuit of length {}",
                comp[0],
                circuit.len()
            )));
        }
        for (pos, e) in circuit.into_iter().enumerate() {
            classes[pos % 2].insert(e);
        }
    }
    let [even, odd] = classes;
    Ok([HalfFactor { edges: even }, HalfFactor { edges: odd }])
}

/// The even-position class; see [`p3_half_factor_classes`].
pub fn p3_half_factor(h: &BipartiteMultigraph) -> Result<HalfFactor> {
    let [even, _] = p3_half_factor_classes(h)?;
    debug_assert!(is_half_factor(h, &even));
    Ok(even)
}

/// Degree-2-side vertices have degree 1, degree-4-side vertices degree 2,
/// and each Y-vertex's two edges reach distinct X-vertices.
pub fn is_half_factor(h: &BipartiteMultigraph, half: &HalfFactor) -> bool {
    if half.edges.iter().any(|e| !h.contains_edge(*e)) {
        return false;
    }
    let mut dx = vec![0usize; h.x_count()];
    let mut y_nbrs: Vec<Vec<usize>> = vec![Vec::new(); h.y_count()];
    for &e in &half.edges {
        let (x, y) = h.edge_pairs()[e.0];
        dx[x] += 1;
        y_nbrs[y].push(x);
    }
    dx.iter().all(|&d| d == 1) && y_nbrs.iter().all(|n| n.len() == 2 && n[0] != n[1])
}

fn require_34(g: &BipartiteMultigraph) -> Result<usize> {
    g.require_biregular(3, 4)?;
    let k = g.y_count() / 3;
    if g.y_count() != 3 * k || g.x_count() != 4 * k {
        return Err(Error::Invariant(format!(
            "(3,4)-biregular graph with |X|={} and |Y|={}",
            g.x_count(),
            g.y_count()
        )));
    }
    Ok(k)
}

/// Y-vertices whose neighborhoods partition X, if any exist.
///
/// Exact cover by backtracking: branch on the uncovered X-vertex with the
/// fewest usable candidates (lowest index on ties), trying candidates in
/// increasing order. Only Y-vertices with four distinct neighbors qualify.
pub fn find_y_cover(g: &BipartiteMultigraph) -> Result<Option<Vec<usize>>> {
    require_34(g)?;
    let nbhd: Vec<Option<Vec<usize>>> = (0..g.y_count())
        .map(|y| {
            let n: Vec<usize> = g.neighbors(VertexId::y(y)).iter().map(|v| v.index).collect();
            (n.len() == 4).then_some(n)
        })
        .collect();
    let mut candidates_of: Vec<Vec<usize>> = vec![Vec::new(); g.x_count()];
    for (y, n) in nbhd.iter().enumerate() {
        for &x in n.iter().flatten() {
            candidates_of[x].push(y);
        }
    }

    fn solve(
        nbhd: &[Option<Vec<usize>>],
        candidates_of: &[Vec<usize>],
        covered: &mut [bool],
        chosen: &mut Vec<usize>,
    ) -> bool {
        let usable = |y: usize, covered: &[bool]| {
            nbhd[y].as_ref().is_some_and(|n| n.iter().all(|&x| !covered[x]))
        };
        let mut best: Option<(usize, usize)> = None;
        for x in (0..covered.len()).filter(|&x| !covered[x]) {
            let count = candidates_of[x].iter().filter(|&&y| usable(y, covered)).count();
            if best.is_none_or(|(_, c)| count < c) {
                best = Some((x, count));
            }
        }
        let Some((x, count)) = best else {
            return true;
        };
        if count == 0 {
            return false;
        }
        for &y in &candidates_of[x] {
            if !usable(y, covered) {
                continue;
            }
            let n = nbhd[y].as_ref().expect("usable has a neighborhood");
            n.iter().for_each(|&x| covered[x] = true);
            chosen.push(y);
            if solve(nbhd, candidates_of, covered, chosen) {
                return true;
            }
            chosen.pop();
            n.iter().for_each(|&x| covered[x] = false);
        }
        false
    }

    let mut covered = vec![false; g.x_count()];
    let mut chosen = Vec::new();
    if solve(&nbhd, &candidates_of, &mut covered, &mut chosen) {
        chosen.sort_unstable();
        Ok(Some(chosen))
    } else {
        Ok(None)
    }
}

/// A P7-factor built from an exact Y-cover.
///
/// Deleting the cover leaves a (2,4)-biregular graph whose Eulerian half-factor
/// gives 2k paths `T_i`. Contracting the ends of each `T_i` turns the edges
/// into the cover into a (2,4)-biregular multigraph `H'`; its half-factor pairs
/// every cover vertex `u` with two distinct `T_i`, `T_j`, and the path is
/// `T_i` (ending at u's neighbor), `u`, then `T_j` (starting at u's neighbor).
///
/// Every contracted vertex has exactly one half-factor edge, so a cover vertex
/// can never pair a `T_i` with itself; that case is reported as an invariant
/// error rather than retried.
pub fn p7_factor_via_24(g: &BipartiteMultigraph) -> Result<Option<PathFactor>> {
    let k = require_34(g)?;
    let Some(cover) = find_y_cover(g)? else {
        return Ok(None);
    };
    let mut cover_slot = vec![None; g.y_count()];
    for (slot, &u) in cover.iter().enumerate() {
        cover_slot[u] = Some(slot);
    }

    let h = g.edge_induced(|e| cover_slot[g.edge_pairs()[e.0].1].is_none());
    if h.x_orig.len() != g.x_count() {
        return Err(Error::Invariant("G - Y-cover lost an X-vertex".into()));
    }
    let half = p3_half_factor(&h.graph)?;

    // T-paths, indexed by their middle vertex in H's Y order
    let mut t_edges: Vec<Vec<EdgeId>> = vec![Vec::new(); h.graph.y_count()];
    for &e in &half.edges {
        let (_, y) = h.graph.edge_pairs()[e.0];
        t_edges[y].push(h.edge_orig[e.0]);
    }
    // for each X-vertex: (T index, T-edge at it)
    let mut t_of_x: Vec<Option<(usize, EdgeId)>> = vec![None; g.x_count()];
    for (i, edges) in t_edges.iter().enumerate() {
        for &e in edges {
            t_of_x[g.edge_pairs()[e.0].0] = Some((i, e));
        }
    }
    if t_edges.len() != 2 * k || t_of_x.iter().any(Option::is_none) {
        return Err(Error::Invariant("half-factor of G - Y-cover is not a P3-factor".into()));
    }

    let mut contracted_pairs = Vec::new();
    let mut contracted_orig = Vec::new();
    for e in g.edge_ids() {
        let (x, y) = g.edge_pairs()[e.0];
        if let Some(slot) = cover_slot[y] {
            contracted_pairs.push((t_of_x[x].expect("checked").0, slot));
            contracted_orig.push(e);
        }
    }
    let contracted = BipartiteMultigraph::build(2 * k, k, &contracted_pairs)?;
    let pairing = p3_half_factor(&contracted)?;

    let mut at_cover: Vec<Vec<EdgeId>> = vec![Vec::new(); k];
    for &e in &pairing.edges {
        at_cover[contracted.edge_pairs()[e.0].1].push(contracted_orig[e.0]);
    }

    // T_i ending at `x`: other end, middle, x
    let t_into = |x: usize| -> GraphPath {
        let (i, e_at_x) = t_of_x[x].expect("checked");
        let e_other = *t_edges[i].iter().find(|&&e| e != e_at_x).expect("P3 has two edges");
        let mid = VertexId::y(h.y_orig[i]);
        let other = VertexId::x(g.edge_pairs()[e_other.0].0);
        GraphPath {
            vertices: vec![other, mid, VertexId::x(x)],
            edges: vec![e_other, e_at_x],
        }
    };

    let mut used_t = vec![false; 2 * k];
    let mut paths = Vec::with_capacity(k);
    for (slot, edges) in at_cover.iter().enumerate() {
        let u = VertexId::y(cover[slot]);
        let [ea, eb] = edges[..] else {
            return Err(Error::Invariant(format!("{u} has {} pairing edges", edges.len())));
        };
        let (xa, xb) = (g.edge_pairs()[ea.0].0, g.edge_pairs()[eb.0].0);
        let (ti, tj) = (t_of_x[xa].expect("checked").0, t_of_x[xb].expect("checked").0);
        if ti == tj {
            return Err(Error::Invariant(format!("{u} pairs T{ti} with itself")));
        }
        for t in [ti, tj] {
            if std::mem::replace(&mut used_t[t], true) {
                return Err(Error::Invariant(format!("T{t} claimed twice")));
            }
        }
        let mut path = t_into(xa);
        path.push(ea, u);
        path.push(eb, VertexId::x(xb));
        path.extend_with(&t_into(xb).reversed());
        paths.push(path);
    }

    let factor = PathFactor::new(paths);
    if let Some(reason) = factor_violation(g, &factor)? {
        return Err(Error::Invariant(format!("constructed P7-factor is invalid: {reason}")));
    }
    Ok(Some(factor))
}
