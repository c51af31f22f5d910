//! Verifiers for the certificates produced elsewhere in the crate.

use std::collections::BTreeSet;

use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bigraph::{BipartiteMultigraph, EdgeId, Part, VertexId};
use crate::error::{Error, Result};

/// Color per edge, indexed by `EdgeId`. Color `0` means uncolored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    pub colors: Vec<u32>,
    pub palette_size: u32,
}

impl EdgeColoring {
    pub fn new(colors: Vec<u32>, palette_size: u32) -> Self {
        EdgeColoring {
            colors,
            palette_size,
        }
    }

    pub fn color(&self, e: EdgeId) -> Option<u32> {
        self.colors.get(e.0).copied().filter(|&c| c != 0)
    }

    /// Edges of `g` that have no color in range `1..=palette_size`.
    pub fn uncolored(&self, g: &BipartiteMultigraph) -> Vec<EdgeId> {
        g.edge_ids()
            .filter(|&e| match self.color(e) {
                Some(c) => c > self.palette_size,
                None => true,
            })
            .collect()
    }

    /// Sorted colors at `v`.
    pub fn colors_at(&self, g: &BipartiteMultigraph, v: VertexId) -> Vec<u32> {
        let mut cs: Vec<u32> = g
            .incident(v)
            .iter()
            .filter_map(|&e| self.color(e))
            .collect();
        cs.sort_unstable();
        cs
    }
}

// JSON form is the bare color array.
impl Serialize for EdgeColoring {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.colors.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for EdgeColoring {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let colors = Vec::<u32>::deserialize(deserializer)?;
        let palette_size = colors.iter().copied().max().unwrap_or(0);
        Ok(EdgeColoring {
            colors,
            palette_size,
        })
    }
}

/// A walk stored with explicit vertices and the edges between them.
/// `vertices.len() == edges.len() + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphPath {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl GraphPath {
    pub fn single(v: VertexId) -> Self {
        GraphPath {
            vertices: vec![v],
            edges: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn first(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn last(&self) -> VertexId {
        *self.vertices.last().expect("path has a vertex")
    }

    pub fn push(&mut self, e: EdgeId, v: VertexId) {
        self.edges.push(e);
        self.vertices.push(v);
    }

    pub fn reversed(&self) -> GraphPath {
        let mut vertices = self.vertices.clone();
        let mut edges = self.edges.clone();
        vertices.reverse();
        edges.reverse();
        GraphPath { vertices, edges }
    }

    /// Appends `other`, which must start where `self` ends.
    pub fn extend_with(&mut self, other: &GraphPath) {
        debug_assert_eq!(self.last(), other.first());
        self.vertices.extend_from_slice(&other.vertices[1..]);
        self.edges.extend_from_slice(&other.edges);
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum PathToken {
    Edge(usize),
    Vertex(VertexId),
}

// Alternating array: ["x0", 4, "y1", 7, "x2"].
impl Serialize for GraphPath {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.vertices.len() + self.edges.len()))?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                seq.serialize_element(&self.edges[i - 1].0)?;
            }
            seq.serialize_element(v)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for GraphPath {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct PathVisitor;
        impl<'de> Visitor<'de> for PathVisitor {
            type Value = GraphPath;

            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("an alternating vertex/edge array")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<GraphPath, A::Error> {
                let mut vertices = Vec::new();
                let mut edges = Vec::new();
                let mut position = 0usize;
                while let Some(token) = seq.next_element::<PathToken>()? {
                    match (position % 2, token) {
                        (0, PathToken::Vertex(v)) => vertices.push(v),
                        (1, PathToken::Edge(e)) => edges.push(EdgeId(e)),
                        (0, _) => return Err(de::Error::custom(format!("position {position}: expected a vertex"))),
                        _ => return Err(de::Error::custom(format!("position {position}: expected an edge id"))),
                    }
                    position += 1;
                }
                if vertices.is_empty() || vertices.len() != edges.len() + 1 {
                    return Err(de::Error::custom("path must start and end with a vertex"));
                }
                Ok(GraphPath { vertices, edges })
            }
        }
        deserializer.deserialize_seq(PathVisitor)
    }
}

/// Vertex-disjoint paths meant to span a graph.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PathFactor {
    pub paths: Vec<GraphPath>,
}

impl PathFactor {
    pub fn new(paths: Vec<GraphPath>) -> Self {
        PathFactor { paths }
    }

    pub fn edge_set(&self) -> BTreeSet<EdgeId> {
        self.paths.iter().flat_map(|p| p.edges.iter().copied()).collect()
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.paths.iter().map(GraphPath::len).collect()
    }

    /// Canonical form for comparisons: each path oriented from its smaller
    /// end, paths sorted.
    pub fn normalized(&self) -> PathFactor {
        let mut paths: Vec<GraphPath> = self
            .paths
            .iter()
            .map(|p| if p.last() < p.first() { p.reversed() } else { p.clone() })
            .collect();
        paths.sort_by(|a, b| a.vertices.cmp(&b.vertices).then(a.edges.cmp(&b.edges)));
        PathFactor { paths }
    }
}

/// An edge subset of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SubgraphCertificate {
    pub edge_set: BTreeSet<EdgeId>,
}

impl SubgraphCertificate {
    pub fn new(edges: impl IntoIterator<Item = EdgeId>) -> Self {
        SubgraphCertificate {
            edge_set: edges.into_iter().collect(),
        }
    }
}

/// Proper: no vertex sees a color twice.
pub fn check_proper(g: &BipartiteMultigraph, coloring: &EdgeColoring) -> Result<bool> {
    Ok(first_improper(g, coloring)?.is_none())
}

fn first_improper(g: &BipartiteMultigraph, coloring: &EdgeColoring) -> Result<Option<(VertexId, u32)>> {
    let missing = coloring.uncolored(g);
    if !missing.is_empty() {
        return Err(Error::PartialColoring(missing));
    }
    for v in g.vertices() {
        let cs = coloring.colors_at(g, v);
        if let Some(w) = cs.windows(2).find(|w| w[0] == w[1]) {
            return Ok(Some((v, w[0])));
        }
    }
    Ok(None)
}

/// First vertex whose colors are not consecutive, with its sorted colors.
/// Errors if the coloring is partial or improper.
pub fn interval_violation(
    g: &BipartiteMultigraph,
    coloring: &EdgeColoring,
) -> Result<Option<(VertexId, Vec<u32>)>> {
    if let Some((vertex, color)) = first_improper(g, coloring)? {
        return Err(Error::ImproperColoring { vertex, color });
    }
    for v in g.vertices() {
        let cs = coloring.colors_at(g, v);
        if let (Some(&lo), Some(&hi)) = (cs.first(), cs.last()) {
            if (hi - lo) as usize + 1 != cs.len() {
                return Ok(Some((v, cs)));
            }
        }
    }
    Ok(None)
}

/// Interval: proper, and every vertex's colors are consecutive integers.
pub fn check_interval(g: &BipartiteMultigraph, coloring: &EdgeColoring) -> Result<bool> {
    Ok(interval_violation(g, coloring)?.is_none())
}

const PROPER_LENGTHS: [usize; 4] = [2, 4, 6, 8];

/// Why `factor` is not a proper path-factor of `g`, or `None` if it is.
///
/// Unknown vertices or edge ids are structural errors rather than a verdict.
pub fn factor_violation(g: &BipartiteMultigraph, factor: &PathFactor) -> Result<Option<String>> {
    for (i, path) in factor.paths.iter().enumerate() {
        if path.vertices.len() != path.edges.len() + 1 {
            return Err(Error::MalformedFactor(format!(
                "path {i} has {} vertices and {} edges",
                path.vertices.len(),
                path.edges.len()
            )));
        }
        if let Some(e) = path.edges.iter().find(|e| !g.contains_edge(**e)) {
            return Err(Error::MalformedFactor(format!("path {i} names unknown edge {e}")));
        }
        if let Some(v) = path.vertices.iter().find(|v| !g.contains_vertex(**v)) {
            return Err(Error::MalformedFactor(format!("path {i} names unknown vertex {v}")));
        }
    }

    let mut covered: BTreeSet<VertexId> = BTreeSet::new();
    for (i, path) in factor.paths.iter().enumerate() {
        for (j, &e) in path.edges.iter().enumerate() {
            if g.other_end(e, path.vertices[j]) != Some(path.vertices[j + 1]) {
                return Ok(Some(format!(
                    "path {i}: edge {e} does not join {} and {}",
                    path.vertices[j],
                    path.vertices[j + 1]
                )));
            }
        }
        for &v in &path.vertices {
            if !covered.insert(v) {
                return Ok(Some(format!("vertex {v} appears twice (path {i})")));
            }
        }
        if path.first().part != Part::X || path.last().part != Part::X {
            return Ok(Some(format!("path {i} has an endpoint outside X")));
        }
        if !PROPER_LENGTHS.contains(&path.len()) {
            return Ok(Some(format!("path {i} has length {}", path.len())));
        }
    }
    if covered.len() != g.vertex_count() {
        let missing = g.vertices().find(|v| !covered.contains(v)).expect("some vertex missing");
        return Ok(Some(format!("vertex {missing} is not covered")));
    }
    Ok(None)
}

/// Spanning, vertex-disjoint paths with both ends in X and lengths in
/// {2,4,6,8}.
pub fn check_proper_path_factor(g: &BipartiteMultigraph, factor: &PathFactor) -> Result<bool> {
    Ok(factor_violation(g, factor)?.is_none())
}

/// The edges form a 3-regular subgraph containing every Y-vertex: each
/// Y-vertex has degree 3 and each X-vertex degree 0 or 3.
pub fn check_full_3regular(g: &BipartiteMultigraph, cert: &SubgraphCertificate) -> bool {
    if cert.edge_set.iter().any(|e| !g.contains_edge(*e)) {
        return false;
    }
    let mut dx = vec![0usize; g.x_count()];
    let mut dy = vec![0usize; g.y_count()];
    for &e in &cert.edge_set {
        let (x, y) = g.edge_pairs()[e.0];
        dx[x] += 1;
        dy[y] += 1;
    }
    dy.iter().all(|&d| d == 3) && dx.iter().all(|&d| d == 0 || d == 3)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k34() -> BipartiteMultigraph {
        let pairs: Vec<_> = (0..4).flat_map(|x| (0..3).map(move |y| (x, y))).collect();
        BipartiteMultigraph::build(4, 3, &pairs).unwrap()
    }

    fn eid(g: &BipartiteMultigraph, x: usize, y: usize) -> EdgeId {
        EdgeId(g.edge_pairs().iter().position(|&p| p == (x, y)).unwrap())
    }

    /// Brute-force search for a path of given vertices through the simple
    /// graph; used as an independent source of a Hamiltonian path.
    fn hamiltonian_path(g: &BipartiteMultigraph) -> Option<GraphPath> {
        fn go(g: &BipartiteMultigraph, path: &mut GraphPath, used: &mut BTreeSet<VertexId>) -> bool {
            if used.len() == g.vertex_count() {
                return path.last().is_x();
            }
            for &e in g.incident(path.last()) {
                let w = g.other_end(e, path.last()).unwrap();
                if used.insert(w) {
                    path.push(e, w);
                    if go(g, path, used) {
                        return true;
                    }
                    path.vertices.pop();
                    path.edges.pop();
                    used.remove(&w);
                }
            }
            false
        }
        for start in (0..g.x_count()).map(VertexId::x) {
            let mut path = GraphPath::single(start);
            let mut used = BTreeSet::from([start]);
            if go(g, &mut path, &mut used) {
                return Some(path);
            }
        }
        None
    }

    #[test]
    fn k34_hamiltonian_path_is_proper_factor() {
        let g = k34();
        let p = hamiltonian_path(&g).expect("K34 has a Hamiltonian path");
        assert_eq!(p.len(), 6);
        let f = PathFactor::new(vec![p]);
        assert!(check_proper_path_factor(&g, &f).unwrap());
    }

    #[test]
    fn odd_length_path_rejected() {
        // single path of length 3 ends in Y
        let g = k34();
        let p = GraphPath {
            vertices: vec![VertexId::x(0), VertexId::y(0), VertexId::x(1), VertexId::y(1)],
            edges: vec![eid(&g, 0, 0), eid(&g, 1, 0), eid(&g, 1, 1)],
        };
        let f = PathFactor::new(vec![p]);
        assert!(!check_proper_path_factor(&g, &f).unwrap());
    }

    #[test]
    fn dangling_edge_is_structural_error() {
        let g = k34();
        let p = GraphPath {
            vertices: vec![VertexId::x(0), VertexId::y(0)],
            edges: vec![EdgeId(99)],
        };
        assert!(matches!(
            check_proper_path_factor(&g, &PathFactor::new(vec![p])),
            Err(Error::MalformedFactor(_))
        ));
    }

    #[test]
    fn wrong_edge_between_vertices_rejected() {
        let g = k34();
        let p = GraphPath {
            vertices: vec![VertexId::x(0), VertexId::y(0), VertexId::x(1)],
            edges: vec![eid(&g, 0, 1), eid(&g, 1, 0)],
        };
        let reason = factor_violation(&g, &PathFactor::new(vec![p])).unwrap().unwrap();
        assert!(reason.contains("does not join"), "{reason}");
    }

    #[test]
    fn all_ones_is_improper() {
        let g = k34();
        let c = EdgeColoring::new(vec![1; 12], 1);
        assert!(!check_proper(&g, &c).unwrap());
        assert!(matches!(check_interval(&g, &c), Err(Error::ImproperColoring { .. })));
    }

    #[test]
    fn single_edge() {
        let g = BipartiteMultigraph::build(1, 1, &[(0, 0)]).unwrap();
        let c = EdgeColoring::new(vec![1], 1);
        assert!(check_proper(&g, &c).unwrap());
        assert!(check_interval(&g, &c).unwrap());
    }

    #[test]
    fn partial_coloring_lists_edges() {
        let g = k34();
        let mut colors = vec![1; 12];
        colors[3] = 0;
        colors.truncate(11);
        match check_proper(&g, &EdgeColoring::new(colors, 4)) {
            Err(Error::PartialColoring(missing)) => assert_eq!(missing, vec![EdgeId(3), EdgeId(11)]),
            other => panic!("unexpected {other:?}"),
        }
    }

    /// K_{3,4} proper 4-coloring from the Latin-style rule color = (x + y) mod 4.
    #[test]
    fn latin_coloring_of_k34_is_proper_but_interval_fails_somewhere() {
        let g = k34();
        let colors: Vec<u32> = g.edge_pairs().iter().map(|&(x, y)| ((x + y) % 4) as u32 + 1).collect();
        let c = EdgeColoring::new(colors, 4);
        assert!(check_proper(&g, &c).unwrap());
        // x1 sees {2,3,4}, x2 sees {3,4,1}: not consecutive
        let (v, cs) = interval_violation(&g, &c).unwrap().unwrap();
        assert_eq!(v, VertexId::x(2));
        assert_eq!(cs, vec![1, 3, 4]);
    }

    #[test]
    fn gap_at_one_vertex_fails_interval() {
        // x0 with colors {1,3}
        let g = BipartiteMultigraph::build(1, 2, &[(0, 0), (0, 1)]).unwrap();
        let c = EdgeColoring::new(vec![1, 3], 3);
        assert!(check_proper(&g, &c).unwrap());
        assert!(!check_interval(&g, &c).unwrap());
        let c = EdgeColoring::new(vec![2, 3], 3);
        assert!(check_interval(&g, &c).unwrap());
    }

    #[test]
    fn full_3regular_on_k34() {
        let g = k34();
        // delete x3: the K_{3,3} on x0..x2
        let cert = SubgraphCertificate::new(g.edge_ids().filter(|&e| g.endpoints(e).0 != VertexId::x(3)));
        assert!(check_full_3regular(&g, &cert));
        assert!(!check_full_3regular(&g, &SubgraphCertificate::default()));
        // dropping one edge breaks it
        let mut broken = cert.clone();
        broken.edge_set.pop_first();
        assert!(!check_full_3regular(&g, &broken));
    }

    #[test]
    fn path_json_form() {
        let p = GraphPath {
            vertices: vec![VertexId::x(0), VertexId::y(2), VertexId::x(1)],
            edges: vec![EdgeId(2), EdgeId(5)],
        };
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(text, r#"["x0",2,"y2",5,"x1"]"#);
        let back: GraphPath = serde_json::from_str(&text).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<GraphPath>(r#"["x0",2]"#).is_err());
        assert!(serde_json::from_str::<GraphPath>(r#"["x0","y1"]"#).is_err());
    }
}
