//! Transversals of the triple system induced by a full 3-regular subgraph,
//! and the proper path-factors they yield.
//!
//! Given a full 3-regular subgraph `H` with a proper 3-edge-coloring, every
//! Y-vertex `y` has a color-1 partner `M(y)` in X. Following the color-2 edge
//! out of `M(y)` lands on a Y-vertex `succ(y)`; `succ` is a permutation of Y
//! and its cycles are the 2-regular graph F, oriented from the color-1 end
//! of each F-edge to the color-2 end. The X-vertices outside `H` have
//! pairwise disjoint neighborhoods, the triples.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::bigraph::{BipartiteMultigraph, EdgeId, VertexId};
use crate::checker::{check_full_3regular, factor_violation, GraphPath, PathFactor, SubgraphCertificate};
use crate::error::{Error, Result};
use crate::pathfactor::SearchOutcome;

/// Colors 1..=3 keyed by edge id.
pub type ThreeColoring = BTreeMap<EdgeId, u8>;

/// Proper 3-edge-coloring of a 3-regular bipartite multigraph, indexed by
/// edge id: three perfect matchings peeled off in turn with augmenting paths
/// (vertices and edges tried in increasing order).
pub fn proper_3_edge_color(h: &BipartiteMultigraph) -> Result<Vec<u8>> {
    h.require_biregular(3, 3)?;
    let n = h.x_count();
    let mut color = vec![0u8; h.edge_count()];
    for c in 1..=3u8 {
        let mut match_y: Vec<Option<EdgeId>> = vec![None; n];
        for x in 0..n {
            let mut visited = vec![false; n];
            if !augment(h, &color, x, &mut visited, &mut match_y) {
                return Err(Error::Invariant(format!(
                    "no perfect matching in color class {c} at x{x}"
                )));
            }
        }
        for e in match_y.into_iter().flatten() {
            color[e.0] = c;
        }
    }
    Ok(color)
}

fn augment(
    h: &BipartiteMultigraph,
    color: &[u8],
    x: usize,
    visited: &mut [bool],
    match_y: &mut [Option<EdgeId>],
) -> bool {
    for &e in h.incident(VertexId::x(x)) {
        if color[e.0] != 0 {
            continue;
        }
        let y = h.edge_pairs()[e.0].1;
        if std::mem::replace(&mut visited[y], true) {
            continue;
        }
        let free = match match_y[y] {
            None => true,
            Some(prev) => augment(h, color, h.edge_pairs()[prev.0].0, visited, match_y),
        };
        if free {
            match_y[y] = Some(e);
            return true;
        }
    }
    false
}

/// Colors the certificate's edges inside `g`.
pub fn three_color_certificate(g: &BipartiteMultigraph, cert: &SubgraphCertificate) -> Result<ThreeColoring> {
    let h = g.edge_induced(|e| cert.edge_set.contains(&e));
    let colors = proper_3_edge_color(&h.graph)?;
    Ok(h.edge_orig.iter().copied().zip(colors).collect())
}

/// Renames color `c` to `perm[c - 1]`.
pub fn permute_colors(coloring: &ThreeColoring, perm: [u8; 3]) -> ThreeColoring {
    coloring.iter().map(|(&e, &c)| (e, perm[c as usize - 1])).collect()
}

pub const COLOR_PERMUTATIONS: [[u8; 3]; 6] = [
    [1, 2, 3],
    [1, 3, 2],
    [2, 1, 3],
    [2, 3, 1],
    [3, 1, 2],
    [3, 2, 1],
];

/// A 2-regular graph on Y given as a permutation; its cycles are the
/// components, each oriented along `succ`. Fixed points are loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FGraph {
    succ: Vec<usize>,
}

impl FGraph {
    pub fn from_successors(succ: Vec<usize>) -> Result<Self> {
        let mut hit = vec![false; succ.len()];
        for &s in &succ {
            if s >= succ.len() || std::mem::replace(&mut hit[s], true) {
                return Err(Error::Precondition("successor map is not a permutation".into()));
            }
        }
        Ok(FGraph { succ })
    }

    /// Each cycle lists its vertices in forward order.
    pub fn from_cycles(vertex_count: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut succ = vec![usize::MAX; vertex_count];
        for cycle in cycles {
            for (i, &v) in cycle.iter().enumerate() {
                if v >= vertex_count || succ[v] != usize::MAX {
                    return Err(Error::Precondition(format!("vertex {v} repeated or out of range")));
                }
                succ[v] = cycle[(i + 1) % cycle.len()];
            }
        }
        if succ.contains(&usize::MAX) {
            return Err(Error::Precondition("cycles do not cover every vertex".into()));
        }
        Self::from_successors(succ)
    }

    pub fn vertex_count(&self) -> usize {
        self.succ.len()
    }

    pub fn succ(&self, v: usize) -> usize {
        self.succ[v]
    }

    pub fn pred(&self, v: usize) -> usize {
        self.succ.iter().position(|&s| s == v).expect("permutation")
    }

    pub fn is_adjacent(&self, a: usize, b: usize) -> bool {
        self.succ[a] == b || self.succ[b] == a
    }

    /// Cycles ordered by smallest vertex, each starting there.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.succ.len()];
        let mut out = Vec::new();
        for start in 0..self.succ.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                cycle.push(v);
                v = self.succ[v];
            }
            out.push(cycle);
        }
        out
    }

    /// Degree in the underlying multigraph, loops counted twice.
    pub fn degree(&self, v: usize) -> usize {
        let pred_count = self.succ.iter().filter(|&&s| s == v).count();
        1 + pred_count
    }
}

/// Disjoint triples of Y-vertices, each stored sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleSystem {
    pub triples: Vec<[usize; 3]>,
}

impl TripleSystem {
    pub fn new(mut triples: Vec<[usize; 3]>) -> Self {
        triples.iter_mut().for_each(|t| t.sort_unstable());
        TripleSystem { triples }
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    /// Triple index of every vertex; errors unless the triples partition
    /// `0..vertex_count`.
    pub fn owner_map(&self, vertex_count: usize) -> Result<Vec<usize>> {
        let mut owner = vec![usize::MAX; vertex_count];
        for (i, t) in self.triples.iter().enumerate() {
            for &v in t {
                if v >= vertex_count || owner[v] != usize::MAX {
                    return Err(Error::Precondition(format!("triples overlap or leave range at {v}")));
                }
                owner[v] = i;
            }
        }
        if owner.contains(&usize::MAX) {
            return Err(Error::Precondition("triples do not cover every vertex".into()));
        }
        Ok(owner)
    }
}

/// JSON form of an F-graph with its triples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FSystemFile {
    pub cycles: Vec<Vec<usize>>,
    pub triples: Vec<[usize; 3]>,
}

impl FSystemFile {
    pub fn new(f: &FGraph, ts: &TripleSystem) -> Self {
        FSystemFile {
            cycles: f.cycles(),
            triples: ts.triples.clone(),
        }
    }

    pub fn parse(&self) -> Result<(FGraph, TripleSystem)> {
        let n = self.cycles.iter().map(Vec::len).sum();
        let f = FGraph::from_cycles(n, &self.cycles)?;
        let ts = TripleSystem::new(self.triples.clone());
        ts.owner_map(n)?;
        Ok((f, ts))
    }
}

/// F and the triples together with the edges of `g` they were read from.
#[derive(Debug, Clone)]
pub struct FFrame {
    pub f: FGraph,
    pub triples: TripleSystem,
    /// The X-vertex outside the subgraph whose neighborhood is triple `i`.
    pub x0: Vec<usize>,
    /// Edges from `x0[i]` to `triples[i][j]`.
    pub x0_edges: Vec<[EdgeId; 3]>,
    /// Color-1 edge at each Y-vertex.
    pub m_edge: Vec<EdgeId>,
    /// Color-2 edge at `M(y)`, which ends at `succ(y)`.
    pub succ_edge: Vec<EdgeId>,
}

impl FFrame {
    /// X-vertex matched to `y` by color 1.
    pub fn m_partner(&self, g: &BipartiteMultigraph, y: usize) -> usize {
        g.edge_pairs()[self.m_edge[y].0].0
    }
}

pub fn build_f(g: &BipartiteMultigraph, cert: &SubgraphCertificate, coloring: &ThreeColoring) -> Result<FFrame> {
    g.require_biregular(3, 4)?;
    if !check_full_3regular(g, cert) {
        return Err(Error::Precondition("certificate is not a full 3-regular subgraph".into()));
    }
    let mut by_color_y: Vec<[Option<EdgeId>; 3]> = vec![[None; 3]; g.y_count()];
    let mut by_color_x: Vec<[Option<EdgeId>; 3]> = vec![[None; 3]; g.x_count()];
    for &e in &cert.edge_set {
        let c = *coloring
            .get(&e)
            .ok_or_else(|| Error::Precondition(format!("subgraph edge {e} is uncolored")))?;
        if !(1..=3).contains(&c) {
            return Err(Error::Precondition(format!("edge {e} has color {c}")));
        }
        let (x, y) = g.edge_pairs()[e.0];
        for slot in [&mut by_color_x[x][c as usize - 1], &mut by_color_y[y][c as usize - 1]] {
            if slot.replace(e).is_some() {
                return Err(Error::Precondition(format!("color {c} repeats at an end of {e}")));
            }
        }
    }

    let mut x0 = Vec::new();
    let mut x0_edges = Vec::new();
    let mut triples = Vec::new();
    for x in 0..g.x_count() {
        if by_color_x[x].iter().any(Option::is_some) {
            continue;
        }
        let mut edges: Vec<EdgeId> = g.incident(VertexId::x(x)).to_vec();
        edges.sort_by_key(|e| (g.edge_pairs()[e.0].1, e.0));
        let ys: Vec<usize> = edges.iter().map(|e| g.edge_pairs()[e.0].1).collect();
        if ys[0] == ys[1] || ys[1] == ys[2] {
            return Err(Error::Invariant(format!("x{x} outside the subgraph has a repeated neighbor")));
        }
        x0.push(x);
        x0_edges.push([edges[0], edges[1], edges[2]]);
        triples.push([ys[0], ys[1], ys[2]]);
    }
    let triples = TripleSystem::new(triples);
    triples
        .owner_map(g.y_count())
        .map_err(|e| Error::Invariant(format!("neighborhoods outside the subgraph: {e}")))?;

    let m_edge: Vec<EdgeId> = by_color_y.iter().map(|c| c[0].expect("full subgraph")).collect();
    let succ_edge: Vec<EdgeId> = m_edge
        .iter()
        .map(|e| {
            let x = g.edge_pairs()[e.0].0;
            by_color_x[x][1].expect("full subgraph")
        })
        .collect();
    let succ = succ_edge.iter().map(|e| g.edge_pairs()[e.0].1).collect();
    let f = FGraph::from_successors(succ).map_err(|e| Error::Invariant(format!("F is not 2-regular: {e}")))?;
    Ok(FFrame {
        f,
        triples,
        x0,
        x0_edges,
        m_edge,
        succ_edge,
    })
}

/// Components of F plus one triangle per triple, as sorted triple indices,
/// ordered by smallest triple.
pub fn fstar_components(f: &FGraph, ts: &TripleSystem) -> Result<Vec<Vec<usize>>> {
    let owner = ts.owner_map(f.vertex_count())?;
    let k = ts.len();
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    for v in 0..f.vertex_count() {
        let (a, b) = (find(&mut parent, owner[v]), find(&mut parent, owner[f.succ(v)]));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..k {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(i);
    }
    Ok(groups.into_values().collect())
}

/// Direction for each F-cycle; a cycle is reversed if its smallest vertex is
/// in `reversed`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Orientation {
    pub reversed: BTreeSet<usize>,
}

impl Orientation {
    /// Every cycle along `succ`, from the color-1 end of each F-edge to its
    /// color-2 end. This is the direction the path construction needs.
    pub fn natural() -> Self {
        Orientation::default()
    }

    /// Forward successor of every vertex.
    pub fn forward(&self, f: &FGraph) -> Vec<usize> {
        let mut next: Vec<usize> = (0..f.vertex_count()).map(|v| f.succ(v)).collect();
        for cycle in f.cycles() {
            if self.reversed.contains(&cycle[0]) {
                for &v in &cycle {
                    next[f.succ(v)] = v;
                }
            }
        }
        next
    }
}

/// One chosen element per triple of a component: `(triple, vertex)`.
pub type PartialTransversal = BTreeMap<usize, usize>;

/// Independent in F: no chosen vertex carries a loop or is adjacent to
/// another chosen vertex.
pub fn is_independent(f: &FGraph, chosen: &BTreeSet<usize>) -> bool {
    chosen
        .iter()
        .all(|&v| f.succ(v) != v && !chosen.contains(&f.succ(v)))
}

/// Spread on the given vertices: each of them outside `chosen` has a chosen
/// vertex among its next three forward.
pub fn is_spread(f: &FGraph, orientation: &Orientation, chosen: &BTreeSet<usize>, vertices: &[usize]) -> bool {
    let next = orientation.forward(f);
    vertices.iter().all(|&v| {
        chosen.contains(&v) || {
            let a = next[v];
            let b = next[a];
            let c = next[b];
            chosen.contains(&a) || chosen.contains(&b) || chosen.contains(&c)
        }
    })
}

fn component_vertices(ts: &TripleSystem, component: &[usize]) -> Vec<usize> {
    let mut vs: Vec<usize> = component.iter().flat_map(|&i| ts.triples[i]).collect();
    vs.sort_unstable();
    vs
}

struct Budget {
    nodes: u64,
    limit: Option<u64>,
}

impl Budget {
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        self.limit.is_none_or(|l| self.nodes <= l)
    }
}

enum Flow {
    Found,
    Exhausted,
    Aborted,
}

/// Backtracking over one element per triple of `component`, rejecting loops
/// and F-adjacent pairs, with forward checking on the remaining triples.
pub fn find_independent_transversal(
    f: &FGraph,
    ts: &TripleSystem,
    component: &[usize],
    max_nodes: Option<u64>,
) -> SearchOutcome<PartialTransversal> {
    let n = f.vertex_count();
    let mut blocked = vec![0u32; n];
    let pred: Vec<usize> = {
        let mut p = vec![0; n];
        (0..n).for_each(|v| p[f.succ(v)] = v);
        p
    };
    let usable = |v: usize, blocked: &[u32]| f.succ(v) != v && blocked[v] == 0;

    fn go(
        pos: usize,
        component: &[usize],
        ts: &TripleSystem,
        f: &FGraph,
        pred: &[usize],
        blocked: &mut [u32],
        chosen: &mut PartialTransversal,
        budget: &mut Budget,
        usable: &dyn Fn(usize, &[u32]) -> bool,
    ) -> Flow {
        if !budget.tick() {
            return Flow::Aborted;
        }
        let Some(&t) = component.get(pos) else {
            return Flow::Found;
        };
        for v in ts.triples[t] {
            if !usable(v, blocked) {
                continue;
            }
            let neighbors = [f.succ(v), pred[v]];
            neighbors.iter().for_each(|&w| blocked[w] += 1);
            let viable = component[pos + 1..]
                .iter()
                .all(|&u| ts.triples[u].iter().any(|&w| usable(w, blocked)));
            if viable {
                chosen.insert(t, v);
                match go(pos + 1, component, ts, f, pred, blocked, chosen, budget, usable) {
                    Flow::Exhausted => {}
                    flow => return flow,
                }
                chosen.remove(&t);
            }
            neighbors.iter().for_each(|&w| blocked[w] -= 1);
        }
        Flow::Exhausted
    }

    let mut chosen = PartialTransversal::new();
    let mut budget = Budget {
        nodes: 0,
        limit: max_nodes,
    };
    match go(0, component, ts, f, &pred, &mut blocked, &mut chosen, &mut budget, &usable) {
        Flow::Found => SearchOutcome::Found(chosen),
        Flow::Exhausted => SearchOutcome::None,
        Flow::Aborted => SearchOutcome::Unknown,
    }
}

/// Backtracking for a spread transversal of `component` under `orientation`.
///
/// A vertex outside S is within three forward steps of S exactly when the
/// run of non-S vertices it starts has length at most 3, and run lengths do
/// not depend on direction; pruning therefore rejects any cycle that already
/// has four consecutive excluded vertices, or is entirely excluded, or more
/// unhit cycles than triples left to choose. The final answer is re-checked
/// with the literal forward-step rule for `orientation`.
pub fn find_spread_transversal(
    f: &FGraph,
    ts: &TripleSystem,
    component: &[usize],
    orientation: &Orientation,
    max_nodes: Option<u64>,
) -> SearchOutcome<PartialTransversal> {
    let vertices = component_vertices(ts, component);
    let in_comp: BTreeSet<usize> = vertices.iter().copied().collect();
    let cycles: Vec<Vec<usize>> = f.cycles().into_iter().filter(|c| in_comp.contains(&c[0])).collect();
    if cycles.len() > component.len() {
        return SearchOutcome::None;
    }
    let n = f.vertex_count();
    let mut cycle_of = vec![usize::MAX; n];
    for (ci, c) in cycles.iter().enumerate() {
        c.iter().for_each(|&v| cycle_of[v] = ci);
    }

    #[derive(Clone, Copy, PartialEq)]
    enum State {
        Open,
        In,
        Out,
    }

    struct Spread<'s> {
        ts: &'s TripleSystem,
        component: &'s [usize],
        cycles: &'s [Vec<usize>],
        cycle_of: &'s [usize],
        state: Vec<State>,
        hits: Vec<u32>,
        chosen: PartialTransversal,
        budget: Budget,
    }

    impl Spread<'_> {
        fn cycle_ok(&self, ci: usize) -> bool {
            let c = &self.cycles[ci];
            if c.iter().all(|&v| self.state[v] == State::Out) {
                return false;
            }
            if c.len() < 4 {
                return true;
            }
            // longest cyclic run of excluded vertices
            let mut run = 0;
            for i in 0..2 * c.len() {
                if self.state[c[i % c.len()]] == State::Out {
                    run += 1;
                    if run >= 4 {
                        return false;
                    }
                } else {
                    run = 0;
                }
            }
            true
        }

        fn go(&mut self, pos: usize) -> Flow {
            if !self.budget.tick() {
                return Flow::Aborted;
            }
            let Some(&t) = self.component.get(pos) else {
                return Flow::Found;
            };
            let remaining = self.component.len() - pos;
            let unhit = self.hits.iter().filter(|&&h| h == 0).count();
            if unhit > remaining {
                return Flow::Exhausted;
            }
            let triple = self.ts.triples[t];
            for &v in &triple {
                for &w in &triple {
                    self.state[w] = if w == v { State::In } else { State::Out };
                }
                self.hits[self.cycle_of[v]] += 1;
                let touched: BTreeSet<usize> = triple.iter().map(|&w| self.cycle_of[w]).collect();
                if touched.iter().all(|&ci| self.cycle_ok(ci)) {
                    self.chosen.insert(t, v);
                    match self.go(pos + 1) {
                        Flow::Exhausted => {}
                        flow => return flow,
                    }
                    self.chosen.remove(&t);
                }
                self.hits[self.cycle_of[v]] -= 1;
            }
            for &w in &triple {
                self.state[w] = State::Open;
            }
            Flow::Exhausted
        }
    }

    let mut search = Spread {
        ts,
        component,
        cycles: &cycles,
        cycle_of: &cycle_of,
        state: vec![State::Open; n],
        hits: vec![0; cycles.len()],
        chosen: PartialTransversal::new(),
        budget: Budget {
            nodes: 0,
            limit: max_nodes,
        },
    };
    match search.go(0) {
        Flow::Found => {
            let chosen: BTreeSet<usize> = search.chosen.values().copied().collect();
            debug_assert!(is_spread(f, orientation, &chosen, &vertices));
            if is_spread(f, orientation, &chosen, &vertices) {
                SearchOutcome::Found(search.chosen)
            } else {
                SearchOutcome::Unknown
            }
        }
        Flow::Exhausted => SearchOutcome::None,
        Flow::Aborted => SearchOutcome::Unknown,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TransversalKind {
    Independent,
    Spread,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentChoice {
    pub triples: Vec<usize>,
    pub kind: TransversalKind,
}

/// One member per triple plus, per F*-component, which criterion it meets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transversal {
    pub members: Vec<usize>,
    pub components: Vec<ComponentChoice>,
}

/// Per F*-component: an independent transversal if one exists, otherwise a
/// spread one (natural orientation). `None` as soon as some component has
/// neither.
pub fn find_mixed_transversal(f: &FGraph, ts: &TripleSystem, max_nodes: Option<u64>) -> Result<SearchOutcome<Transversal>> {
    let mut members = vec![usize::MAX; ts.len()];
    let mut components = Vec::new();
    let mut unknown = false;
    for component in fstar_components(f, ts)? {
        let independent = find_independent_transversal(f, ts, &component, max_nodes);
        let (choice, kind) = match independent {
            SearchOutcome::Found(c) => (Some(c), TransversalKind::Independent),
            other => {
                let spread = find_spread_transversal(f, ts, &component, &Orientation::natural(), max_nodes);
                match spread {
                    SearchOutcome::Found(c) => (Some(c), TransversalKind::Spread),
                    SearchOutcome::None if other.is_none() => return Ok(SearchOutcome::None),
                    _ => (None, TransversalKind::Spread),
                }
            }
        };
        match choice {
            Some(c) => {
                for (t, v) in c {
                    members[t] = v;
                }
                components.push(ComponentChoice {
                    triples: component,
                    kind,
                });
            }
            None => unknown = true,
        }
    }
    if unknown {
        return Ok(SearchOutcome::Unknown);
    }
    Ok(SearchOutcome::Found(Transversal { members, components }))
}

/// Checks that `tr` picks one element per triple and that every F*-component
/// is listed with a criterion it actually satisfies.
pub fn transversal_violation(f: &FGraph, ts: &TripleSystem, tr: &Transversal) -> Result<Option<String>> {
    if tr.members.len() != ts.len() {
        return Ok(Some(format!("{} members for {} triples", tr.members.len(), ts.len())));
    }
    for (i, (&m, t)) in tr.members.iter().zip(&ts.triples).enumerate() {
        if !t.contains(&m) {
            return Ok(Some(format!("member {m} is not in triple {i}")));
        }
    }
    let mut listed: Vec<Vec<usize>> = tr
        .components
        .iter()
        .map(|c| {
            let mut t = c.triples.clone();
            t.sort_unstable();
            t
        })
        .collect();
    listed.sort();
    if listed != fstar_components(f, ts)? {
        return Ok(Some("listed components differ from the components of F*".into()));
    }
    for c in &tr.components {
        let chosen: BTreeSet<usize> = c.triples.iter().map(|&t| tr.members[t]).collect();
        let ok = match c.kind {
            TransversalKind::Independent => is_independent(f, &chosen),
            TransversalKind::Spread => {
                is_spread(f, &Orientation::natural(), &chosen, &component_vertices(ts, &c.triples))
            }
        };
        if !ok {
            return Ok(Some(format!("component starting at triple {} is not {:?}", c.triples[0], c.kind)));
        }
    }
    Ok(None)
}

/// Builds a proper path-factor of `g` from a mixed transversal.
///
/// Labels: `y1` is the triple's member, `y2 < y3` the others, and `x^j` is the
/// color-1 partner of `y^j`. Independent components start from
/// `x^2 y^2 x^0 y^3 x^3` and each `y1` is attached through its color-2 edge
/// to the base path ending there, then to `x^1`. Spread components cut every
/// F-cycle before each member and expand the surviving F-edges into length-2
/// paths, framed by `x^0 y1` at the start and the color-1 edge at the end.
pub fn factor_from_mixed_transversal(
    g: &BipartiteMultigraph,
    cert: &SubgraphCertificate,
    coloring: &ThreeColoring,
    transversal: &Transversal,
) -> Result<PathFactor> {
    let frame = build_f(g, cert, coloring)?;
    let (f, ts) = (&frame.f, &frame.triples);
    if let Some(reason) = transversal_violation(f, ts, transversal)? {
        return Err(Error::InvalidTransversal(reason));
    }
    let members: BTreeSet<usize> = transversal.members.iter().copied().collect();
    let m = |y: usize| VertexId::x(frame.m_partner(g, y));

    let mut paths = Vec::new();
    for comp in &transversal.components {
        match comp.kind {
            TransversalKind::Independent => {
                let mut base: Vec<GraphPath> = Vec::new();
                // which base path ends at an X-vertex: (path, at_last_end)
                let mut end_at: BTreeMap<VertexId, (usize, bool)> = BTreeMap::new();
                for &i in &comp.triples {
                    let [y2, y3] = others(ts.triples[i], transversal.members[i]);
                    let (j2, j3) = (slot(ts.triples[i], y2), slot(ts.triples[i], y3));
                    let x0 = VertexId::x(frame.x0[i]);
                    let mut p = GraphPath::single(m(y2));
                    p.push(frame.m_edge[y2], VertexId::y(y2));
                    p.push(frame.x0_edges[i][j2], x0);
                    p.push(frame.x0_edges[i][j3], VertexId::y(y3));
                    p.push(frame.m_edge[y3], m(y3));
                    end_at.insert(p.first(), (base.len(), false));
                    end_at.insert(p.last(), (base.len(), true));
                    base.push(p);
                }
                for &i in &comp.triples {
                    let y1 = transversal.members[i];
                    // color-2 edge at y1 is the successor edge of its predecessor
                    let e2 = frame.succ_edge[f.pred(y1)];
                    let x = VertexId::x(g.edge_pairs()[e2.0].0);
                    let &(pi, at_last) = end_at
                        .get(&x)
                        .ok_or_else(|| Error::Invariant(format!("color-2 neighbor {x} of y{y1} is not a base end")))?;
                    let p = &mut base[pi];
                    if !at_last {
                        *p = p.reversed();
                    }
                    p.push(e2, VertexId::y(y1));
                    p.push(frame.m_edge[y1], m(y1));
                    if !at_last {
                        *p = p.reversed();
                    }
                    end_at.remove(&x);
                }
                paths.extend(base);
            }
            TransversalKind::Spread => {
                for &i in &comp.triples {
                    let s = transversal.members[i];
                    let mut p = GraphPath::single(VertexId::x(frame.x0[i]));
                    p.push(frame.x0_edges[i][slot(ts.triples[i], s)], VertexId::y(s));
                    let mut w = s;
                    while !members.contains(&f.succ(w)) {
                        p.push(frame.m_edge[w], m(w));
                        w = f.succ(w);
                        p.push(frame.succ_edge[f.pred(w)], VertexId::y(w));
                    }
                    p.push(frame.m_edge[w], m(w));
                    paths.push(p);
                }
            }
        }
    }

    let factor = PathFactor::new(paths);
    if let Some(reason) = factor_violation(g, &factor)? {
        return Err(Error::Invariant(format!("transversal construction produced an invalid factor: {reason}")));
    }
    Ok(factor)
}

fn others(triple: [usize; 3], member: usize) -> [usize; 2] {
    let rest: Vec<usize> = triple.iter().copied().filter(|&v| v != member).collect();
    [rest[0], rest[1]]
}

fn slot(triple: [usize; 3], v: usize) -> usize {
    triple.iter().position(|&w| w == v).expect("vertex in triple")
}
