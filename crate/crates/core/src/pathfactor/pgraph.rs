use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use crate::bigraph::{BipartiteMultigraph, EdgeId, Part, VertexId};
use crate::checker::{factor_violation, GraphPath, PathFactor};
use crate::error::{Error, Result};

/// `Q = G - E(P)` split into its components. Cycles are closed walks
/// starting at the X-end of their lowest edge and leaving through it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QDecomposition {
    pub cycles: Vec<GraphPath>,
    pub q_paths: Vec<GraphPath>,
}

impl QDecomposition {
    pub fn edge_count(&self) -> usize {
        self.cycles.iter().chain(&self.q_paths).map(GraphPath::len).sum()
    }
}

fn require_factor(g: &BipartiteMultigraph, factor: &PathFactor) -> Result<()> {
    match factor_violation(g, factor)? {
        Some(reason) => Err(Error::InvalidFactor(reason)),
        None => Ok(()),
    }
}

pub fn build_q(g: &BipartiteMultigraph, factor: &PathFactor) -> Result<QDecomposition> {
    require_factor(g, factor)?;
    let in_p = factor.edge_set();
    let in_q: Vec<bool> = g.edge_ids().map(|e| !in_p.contains(&e)).collect();
    let q_incident = |v: VertexId| -> Vec<EdgeId> {
        g.incident(v).iter().copied().filter(|e| in_q[e.0]).collect()
    };
    for y in (0..g.y_count()).map(VertexId::y) {
        let d = q_incident(y).len();
        if d != 2 {
            return Err(Error::Invariant(format!("{y} has Q-degree {d}, expected 2")));
        }
    }

    let mut used = vec![false; g.edge_count()];
    let walk_from = |start: VertexId, first: EdgeId, used: &mut Vec<bool>| -> GraphPath {
        let mut path = GraphPath::single(start);
        let mut next = Some(first);
        while let Some(e) = next {
            used[e.0] = true;
            let w = g.other_end(e, path.last()).expect("incident edge");
            path.push(e, w);
            next = q_incident(w).into_iter().find(|f| !used[f.0]);
        }
        path
    };

    let mut q_paths = Vec::new();
    for x in (0..g.x_count()).map(VertexId::x) {
        let inc = q_incident(x);
        if inc.len() == 1 && !used[inc[0].0] {
            q_paths.push(walk_from(x, inc[0], &mut used));
        }
    }
    let mut cycles = Vec::new();
    for e in g.edge_ids() {
        if in_q[e.0] && !used[e.0] {
            let (x, _) = g.endpoints(e);
            let cycle = walk_from(x, e, &mut used);
            if cycle.first() != cycle.last() || cycle.len() % 2 != 0 {
                return Err(Error::Invariant(format!("Q component through {e} is not an even cycle")));
            }
            cycles.push(cycle);
        }
    }
    Ok(QDecomposition { cycles, q_paths })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PEdgeKind {
    /// The two internal X-vertices of a length-6 factor path.
    A,
    /// The X-vertices at distance 4 inside a length-8 factor path.
    B,
    /// The two ends of a Q-path.
    C,
}

/// An edge of the P-graph between X-vertex indices `u` and `v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PEdge {
    pub u: usize,
    pub v: usize,
    pub kind: PEdgeKind,
}

/// Auxiliary graph on the X-vertices of degree 2 in the factor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PGraph {
    pub vertices: Vec<usize>,
    pub edges: Vec<PEdge>,
}

impl PGraph {
    fn adjacency(&self) -> BTreeMap<usize, Vec<(usize, PEdgeKind)>> {
        let mut adj: BTreeMap<usize, Vec<(usize, PEdgeKind)>> =
            self.vertices.iter().map(|&v| (v, Vec::new())).collect();
        for e in &self.edges {
            adj.entry(e.u).or_default().push((e.v, e.kind));
            adj.entry(e.v).or_default().push((e.u, e.kind));
        }
        adj
    }
}

pub fn build_pgraph(g: &BipartiteMultigraph, factor: &PathFactor) -> Result<PGraph> {
    let q = build_q(g, factor)?;
    Ok(pgraph_from_parts(factor, &q))
}

pub(crate) fn pgraph_from_parts(factor: &PathFactor, q: &QDecomposition) -> PGraph {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for path in &factor.paths {
        let internal_x: Vec<usize> = path.vertices[1..path.vertices.len() - 1]
            .iter()
            .filter(|v| v.part == Part::X)
            .map(|v| v.index)
            .collect();
        vertices.extend_from_slice(&internal_x);
        match path.len() {
            6 => edges.push(PEdge {
                u: internal_x[0],
                v: internal_x[1],
                kind: PEdgeKind::A,
            }),
            8 => edges.push(PEdge {
                u: internal_x[0],
                v: internal_x[2],
                kind: PEdgeKind::B,
            }),
            _ => {}
        }
    }
    for qp in &q.q_paths {
        edges.push(PEdge {
            u: qp.first().index,
            v: qp.last().index,
            kind: PEdgeKind::C,
        });
    }
    vertices.sort_unstable();
    PGraph { vertices, edges }
}

/// Checks the structural facts the coloring relies on: exactly one
/// (c)-edge per vertex and maximum degree 2.
pub fn pgraph_violation(pg: &PGraph) -> Option<String> {
    for (v, nbrs) in pg.adjacency() {
        let c_count = nbrs.iter().filter(|(_, k)| *k == PEdgeKind::C).count();
        if c_count != 1 {
            return Some(format!("x{v} has {c_count} (c)-edges"));
        }
        if nbrs.len() > 2 {
            return Some(format!("x{v} has degree {}", nbrs.len()));
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Tone {
    A,
    B,
}

impl Tone {
    pub fn flip(self) -> Tone {
        match self {
            Tone::A => Tone::B,
            Tone::B => Tone::A,
        }
    }
}

/// Proper A/B coloring of the P-graph, keyed by X-vertex index.
pub type TwoColoring = BTreeMap<usize, Tone>;

/// BFS from the lowest uncolored vertex, root colored A.
pub fn two_color_pgraph(pg: &PGraph) -> Result<TwoColoring> {
    let adj = pg.adjacency();
    let mut tone: TwoColoring = BTreeMap::new();
    for &root in adj.keys() {
        if tone.contains_key(&root) {
            continue;
        }
        tone.insert(root, Tone::A);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let t = tone[&v];
            for &(w, _) in &adj[&v] {
                match tone.get(&w) {
                    None => {
                        tone.insert(w, t.flip());
                        queue.push_back(w);
                    }
                    Some(&tw) if tw == t => {
                        return Err(Error::Invariant(format!("P-graph has an odd cycle through x{v} and x{w}")));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Ok(tone)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k34() -> BipartiteMultigraph {
        let pairs: Vec<_> = (0..4).flat_map(|x| (0..3).map(move |y| (x, y))).collect();
        BipartiteMultigraph::build(4, 3, &pairs).unwrap()
    }

    fn path_of(g: &BipartiteMultigraph, verts: &[VertexId]) -> GraphPath {
        let mut p = GraphPath::single(verts[0]);
        for w in &verts[1..] {
            let e = *g
                .incident(p.last())
                .iter()
                .find(|&&e| g.other_end(e, p.last()) == Some(*w))
                .unwrap();
            p.push(e, *w);
        }
        p
    }

    fn k34_p7() -> PathFactor {
        let g = k34();
        use VertexId as V;
        PathFactor::new(vec![path_of(
            &g,
            &[V::x(0), V::y(0), V::x(1), V::y(1), V::x(2), V::y(2), V::x(3)],
        )])
    }

    #[test]
    fn q_of_k34_p7() {
        let g = k34();
        let q = build_q(&g, &k34_p7()).unwrap();
        assert_eq!(q.edge_count(), 6);
        // brute force: Q-degrees after removing the path
        let in_p = k34_p7().edge_set();
        for v in g.vertices() {
            let dq = g.incident(v).iter().filter(|e| !in_p.contains(e)).count();
            let expected = match v {
                VertexId { part: Part::Y, .. } => 2,
                VertexId { part: Part::X, index: 0 | 3 } => 2,
                _ => 1,
            };
            assert_eq!(dq, expected, "{v}");
        }
        let mut all: Vec<EdgeId> = q.cycles.iter().chain(&q.q_paths).flat_map(|p| p.edges.clone()).collect();
        all.sort();
        let mut expected: Vec<EdgeId> = g.edge_ids().filter(|e| !in_p.contains(e)).collect();
        expected.sort();
        assert_eq!(all, expected);
    }

    #[test]
    fn pgraph_of_single_p7() {
        let g = k34();
        let pg = build_pgraph(&g, &k34_p7()).unwrap();
        assert_eq!(pg.vertices, vec![1, 2]);
        let a: Vec<_> = pg.edges.iter().filter(|e| e.kind == PEdgeKind::A).collect();
        let c: Vec<_> = pg.edges.iter().filter(|e| e.kind == PEdgeKind::C).collect();
        assert_eq!(a.len(), 1);
        assert_eq!(c.len(), 1);
        assert_eq!(pgraph_violation(&pg), None);
        let tone = two_color_pgraph(&pg).unwrap();
        assert_eq!(tone[&1], Tone::A);
        assert_eq!(tone[&2], Tone::B);
    }

    #[test]
    fn empty_pgraph() {
        let pg = PGraph {
            vertices: vec![],
            edges: vec![],
        };
        assert!(two_color_pgraph(&pg).unwrap().is_empty());
    }

    #[test]
    fn single_c_edge_root_rule() {
        let pg = PGraph {
            vertices: vec![3, 7],
            edges: vec![PEdge {
                u: 7,
                v: 3,
                kind: PEdgeKind::C,
            }],
        };
        let tone = two_color_pgraph(&pg).unwrap();
        assert_eq!(tone[&3], Tone::A);
        assert_eq!(tone[&7], Tone::B);
    }

    #[test]
    fn odd_cycle_is_invariant_error() {
        let e = |u, v| PEdge { u, v, kind: PEdgeKind::C };
        let pg = PGraph {
            vertices: vec![0, 1, 2],
            edges: vec![e(0, 1), e(1, 2), e(2, 0)],
        };
        assert!(matches!(two_color_pgraph(&pg), Err(Error::Invariant(_))));
        assert!(pgraph_violation(&pg).is_some());
    }

    #[test]
    fn invalid_factor_propagates() {
        let g = k34();
        let bad = PathFactor::new(vec![]);
        assert!(matches!(build_q(&g, &bad), Err(Error::InvalidFactor(_))));
    }
}
