//! Bipartite multigraphs with positional edge identities.
//!
//! The edge list is the only stored truth; adjacency lists are derived once at
//! construction. Parallel edges are distinct [`EdgeId`]s, which is what lets
//! factors, colorings and complements be expressed as edge sets without
//! ambiguity.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Which side of the bipartition a vertex lives on. `X` orders before `Y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Part {
    X,
    Y,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId {
    pub part: Part,
    pub index: usize,
}

impl VertexId {
    pub const fn x(index: usize) -> Self {
        VertexId { part: Part::X, index }
    }

    pub const fn y(index: usize) -> Self {
        VertexId { part: Part::Y, index }
    }

    pub fn is_x(self) -> bool {
        self.part == Part::X
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.part {
            Part::X => write!(f, "x{}", self.index),
            Part::Y => write!(f, "y{}", self.index),
        }
    }
}

impl FromStr for VertexId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let (part, rest) = match s.split_at_checked(1) {
            Some(("x", rest)) => (Part::X, rest),
            Some(("y", rest)) => (Part::Y, rest),
            _ => return Err(format!("vertex `{s}` must start with `x` or `y`")),
        };
        let index = rest
            .parse()
            .map_err(|_| format!("vertex `{s}` has a malformed index"))?;
        Ok(VertexId { part, index })
    }
}

// Vertices travel through JSON as "x3" / "y5" so that alternating
// vertex/edge arrays stay unambiguous.
impl Serialize for VertexId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for VertexId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub usize);

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// An X,Y-bigraph that may carry parallel edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteMultigraph {
    x_count: usize,
    y_count: usize,
    edges: Vec<(usize, usize)>,
    x_adj: Vec<Vec<EdgeId>>,
    y_adj: Vec<Vec<EdgeId>>,
}

/// A subgraph relabeled to contiguous indices, with maps back to the parent.
#[derive(Debug, Clone)]
pub struct Restriction {
    pub graph: BipartiteMultigraph,
    pub x_orig: Vec<usize>,
    pub y_orig: Vec<usize>,
    pub edge_orig: Vec<EdgeId>,
}

/// Serialized form: `{"x_count": n, "y_count": m, "edges": [[x, y], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub x_count: usize,
    pub y_count: usize,
    pub edges: Vec<(usize, usize)>,
}

impl BipartiteMultigraph {
    /// Builds a graph; edge `i` of the input becomes `EdgeId(i)`.
    pub fn build(x_count: usize, y_count: usize, edge_pairs: &[(usize, usize)]) -> Result<Self> {
        let mut x_adj = vec![Vec::new(); x_count];
        let mut y_adj = vec![Vec::new(); y_count];
        for (position, &(x, y)) in edge_pairs.iter().enumerate() {
            if x >= x_count || y >= y_count {
                return Err(Error::EndpointOutOfRange {
                    position,
                    x,
                    y,
                    x_count,
                    y_count,
                });
            }
            x_adj[x].push(EdgeId(position));
            y_adj[y].push(EdgeId(position));
        }
        Ok(BipartiteMultigraph {
            x_count,
            y_count,
            edges: edge_pairs.to_vec(),
            x_adj,
            y_adj,
        })
    }

    pub fn x_count(&self) -> usize {
        self.x_count
    }

    pub fn y_count(&self) -> usize {
        self.y_count
    }

    pub fn vertex_count(&self) -> usize {
        self.x_count + self.y_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_pairs(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        e.0 < self.edges.len()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        match v.part {
            Part::X => v.index < self.x_count,
            Part::Y => v.index < self.y_count,
        }
    }

    /// Endpoints as `(x, y)` vertices. Panics on an unknown edge.
    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        let (x, y) = self.edges[e.0];
        (VertexId::x(x), VertexId::y(y))
    }

    /// The endpoint of `e` that is not `v`; `None` if `v` is not on `e`.
    pub fn other_end(&self, e: EdgeId, v: VertexId) -> Option<VertexId> {
        let (x, y) = self.endpoints(e);
        if v == x {
            Some(y)
        } else if v == y {
            Some(x)
        } else {
            None
        }
    }

    /// Incident edges in increasing id order.
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        match v.part {
            Part::X => &self.x_adj[v.index],
            Part::Y => &self.y_adj[v.index],
        }
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incident(v).len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.x_count)
            .map(VertexId::x)
            .chain((0..self.y_count).map(VertexId::y))
    }

    /// Distinct neighbors of `v` in increasing order.
    pub fn neighbors(&self, v: VertexId) -> Vec<VertexId> {
        let set: BTreeSet<VertexId> = self
            .incident(v)
            .iter()
            .filter_map(|&e| self.other_end(e, v))
            .collect();
        set.into_iter().collect()
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        DegreeProfile {
            x: self.x_adj.iter().map(Vec::len).collect(),
            y: self.y_adj.iter().map(Vec::len).collect(),
        }
    }

    /// Every X-vertex has degree `a` and every Y-vertex degree `b`.
    pub fn is_biregular(&self, a: usize, b: usize) -> bool {
        self.x_adj.iter().all(|adj| adj.len() == a) && self.y_adj.iter().all(|adj| adj.len() == b)
    }

    /// Like [`is_biregular`](Self::is_biregular) but reports the first offender.
    pub fn require_biregular(&self, a: usize, b: usize) -> Result<()> {
        for v in self.vertices() {
            let want = if v.is_x() { a } else { b };
            let got = self.degree(v);
            if got != want {
                return Err(Error::NotBiregular {
                    a,
                    b,
                    detail: format!("{v} has degree {got}, expected {want}"),
                });
            }
        }
        Ok(())
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges.iter().all(|pair| seen.insert(*pair))
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut seen_x = vec![false; self.x_count];
        let mut seen_y = vec![false; self.y_count];
        let mut out = Vec::new();
        for start in self.vertices() {
            let seen = |v: VertexId, sx: &mut Vec<bool>, sy: &mut Vec<bool>| -> bool {
                let slot = match v.part {
                    Part::X => &mut sx[v.index],
                    Part::Y => &mut sy[v.index],
                };
                std::mem::replace(slot, true)
            };
            if seen(start, &mut seen_x, &mut seen_y) {
                continue;
            }
            let mut comp = vec![start];
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &e in self.incident(v) {
                    let w = self.other_end(e, v).expect("incident edge");
                    if !seen(w, &mut seen_x, &mut seen_y) {
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort();
            out.push(comp);
        }
        out
    }

    /// Closed walk through every edge of `component` exactly once.
    ///
    /// Hierholzer's algorithm starting at the smallest vertex and always
    /// leaving through the lowest-id unused edge, so the result is a pure
    /// function of the edge order.
    pub fn eulerian_circuit(&self, component: &[VertexId]) -> Result<Vec<EdgeId>> {
        for &v in component {
            let d = self.degree(v);
            if d % 2 == 1 {
                return Err(Error::OddDegree(v, d));
            }
        }
        let Some(&start) = component.iter().min() else {
            return Ok(Vec::new());
        };
        let mut used = vec![false; self.edges.len()];
        let mut cursor_x = vec![0usize; self.x_count];
        let mut cursor_y = vec![0usize; self.y_count];
        let mut stack: Vec<(VertexId, Option<EdgeId>)> = vec![(start, None)];
        let mut circuit = Vec::new();
        while let Some(&(v, via)) = stack.last() {
            let adj = self.incident(v);
            let cursor = match v.part {
                Part::X => &mut cursor_x[v.index],
                Part::Y => &mut cursor_y[v.index],
            };
            while *cursor < adj.len() && used[adj[*cursor].0] {
                *cursor += 1;
            }
            if *cursor < adj.len() {
                let e = adj[*cursor];
                used[e.0] = true;
                stack.push((self.other_end(e, v).expect("incident edge"), Some(e)));
            } else {
                stack.pop();
                if let Some(e) = via {
                    circuit.push(e);
                }
            }
        }
        circuit.reverse();
        Ok(circuit)
    }

    /// Vertex sequence of a walk given by edges, starting from `start`.
    /// Returns `None` if consecutive edges do not share the expected vertex.
    pub fn walk_vertices(&self, start: VertexId, walk: &[EdgeId]) -> Option<Vec<VertexId>> {
        let mut out = Vec::with_capacity(walk.len() + 1);
        out.push(start);
        let mut at = start;
        for &e in walk {
            at = self.other_end(e, at)?;
            out.push(at);
        }
        Some(out)
    }

    /// Connected with no bridge. Bridges are found from DFS low-links,
    /// skipping only the tree edge's own id so parallel edges count.
    pub fn is_two_edge_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return false;
        }
        let slot = |v: VertexId| match v.part {
            Part::X => v.index,
            Part::Y => self.x_count + v.index,
        };
        let mut order = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut clock = 0;
        let root = self.vertices().next().expect("nonempty");
        // (vertex, tree edge into it, next incident position)
        let mut stack: Vec<(VertexId, Option<EdgeId>, usize)> = vec![(root, None, 0)];
        order[slot(root)] = clock;
        low[slot(root)] = clock;
        clock += 1;
        while let Some(top) = stack.last_mut() {
            let (v, parent_edge, pos) = *top;
            let adj = self.incident(v);
            if pos < adj.len() {
                top.2 += 1;
                let e = adj[pos];
                if Some(e) == parent_edge {
                    continue;
                }
                let w = self.other_end(e, v).expect("incident edge");
                if order[slot(w)] == usize::MAX {
                    order[slot(w)] = clock;
                    low[slot(w)] = clock;
                    clock += 1;
                    stack.push((w, Some(e), 0));
                } else {
                    low[slot(v)] = low[slot(v)].min(order[slot(w)]);
                }
            } else {
                stack.pop();
                if let Some(&(u, _, _)) = stack.last() {
                    low[slot(u)] = low[slot(u)].min(low[slot(v)]);
                    if low[slot(v)] > order[slot(u)] {
                        return false;
                    }
                }
            }
        }
        clock == n
    }

    /// Subgraph on the kept edges and the vertices they touch, relabeled in
    /// increasing original order.
    pub fn edge_induced(&self, keep: impl Fn(EdgeId) -> bool) -> Restriction {
        let kept: Vec<EdgeId> = self.edge_ids().filter(|&e| keep(e)).collect();
        let mut x_new = vec![usize::MAX; self.x_count];
        let mut y_new = vec![usize::MAX; self.y_count];
        for &e in &kept {
            let (x, y) = self.edges[e.0];
            x_new[x] = 0;
            y_new[y] = 0;
        }
        let mut x_orig = Vec::new();
        for (x, slot) in x_new.iter_mut().enumerate() {
            if *slot == 0 {
                *slot = x_orig.len();
                x_orig.push(x);
            }
        }
        let mut y_orig = Vec::new();
        for (y, slot) in y_new.iter_mut().enumerate() {
            if *slot == 0 {
                *slot = y_orig.len();
                y_orig.push(y);
            }
        }
        let pairs: Vec<(usize, usize)> = kept
            .iter()
            .map(|e| {
                let (x, y) = self.edges[e.0];
                (x_new[x], y_new[y])
            })
            .collect();
        let graph = BipartiteMultigraph::build(x_orig.len(), y_orig.len(), &pairs)
            .expect("relabeled endpoints are in range");
        Restriction {
            graph,
            x_orig,
            y_orig,
            edge_orig: kept,
        }
    }

    pub fn to_file(&self) -> GraphFile {
        GraphFile {
            x_count: self.x_count,
            y_count: self.y_count,
            edges: self.edges.clone(),
        }
    }

    pub fn from_file(file: &GraphFile) -> Result<Self> {
        Self::build(file.x_count, file.y_count, &file.edges)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("graph serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: GraphFile = serde_json::from_str(text)?;
        Self::from_file(&file)
    }
}

impl Restriction {
    pub fn vertex_orig(&self, v: VertexId) -> VertexId {
        match v.part {
            Part::X => VertexId::x(self.x_orig[v.index]),
            Part::Y => VertexId::y(self.y_orig[v.index]),
        }
    }
}

/// Degree of every vertex, counting multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
}

impl DegreeProfile {
    pub fn x_sum(&self) -> usize {
        self.x.iter().sum()
    }

    pub fn y_sum(&self) -> usize {
        self.y.iter().sum()
    }
}
