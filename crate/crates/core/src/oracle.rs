//! Brute-force reference answers for small graphs.
//!
//! These deliberately avoid the strategies of the main searches: factors are
//! enumerated as edge subsets chosen Y-vertex by Y-vertex, full 3-regular
//! subgraphs by trying every deletion set with a max-flow degree check.

use std::collections::VecDeque;

use crate::bigraph::{BipartiteMultigraph, EdgeId, VertexId};
use crate::checker::{EdgeColoring, GraphPath, PathFactor, SubgraphCertificate};

/// Union-find with undo, tracking edge counts per component.
struct RollbackDsu {
    parent: Vec<usize>,
    size: Vec<usize>,
    edges: Vec<usize>,
    history: Vec<Option<(usize, usize)>>,
}

impl RollbackDsu {
    fn new(n: usize) -> Self {
        RollbackDsu {
            parent: (0..n).collect(),
            size: vec![1; n],
            edges: vec![0; n],
            history: Vec::new(),
        }
    }

    fn find(&self, mut v: usize) -> usize {
        while self.parent[v] != v {
            v = self.parent[v];
        }
        v
    }

    /// Adds an edge unless it closes a cycle or the component would exceed
    /// `cap` edges.
    fn try_add(&mut self, a: usize, b: usize, cap: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb || self.edges[ra] + self.edges[rb] + 1 > cap {
            return false;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        self.edges[big] += self.edges[small] + 1;
        self.history.push(Some((big, small)));
        true
    }

    fn undo(&mut self) {
        if let Some(Some((big, small))) = self.history.pop() {
            self.parent[small] = small;
            self.size[big] -= self.size[small];
            self.edges[big] -= self.edges[small] + 1;
        }
    }
}

/// Exhaustive search for a proper path-factor. Each Y-vertex in turn picks
/// two incident edges to distinct X-vertices; X-degrees stay at most 2, the
/// chosen edges stay a forest with at most 8 edges per tree, and every
/// X-vertex must be touched once its last Y-neighbor is decided.
pub fn oracle_path_factor(g: &BipartiteMultigraph) -> Option<PathFactor> {
    let (nx, ny) = (g.x_count(), g.y_count());
    if g.vertex_count() == 0 {
        return Some(PathFactor::new(Vec::new()));
    }
    // only the lowest-id copy of each parallel class can be chosen
    let options: Vec<Vec<(EdgeId, EdgeId)>> = (0..ny)
        .map(|y| {
            let mut firsts: Vec<EdgeId> = Vec::new();
            for &e in g.incident(VertexId::y(y)) {
                let x = g.edge_pairs()[e.0].0;
                if !firsts.iter().any(|f| g.edge_pairs()[f.0].0 == x) {
                    firsts.push(e);
                }
            }
            let mut pairs = Vec::new();
            for i in 0..firsts.len() {
                for j in i + 1..firsts.len() {
                    pairs.push((firsts[i], firsts[j]));
                }
            }
            pairs
        })
        .collect();
    // X-vertices whose last Y-neighbor is y
    let mut closes: Vec<Vec<usize>> = vec![Vec::new(); ny];
    for x in 0..nx {
        {
            let y = g.incident(VertexId::x(x)).iter().map(|e| g.edge_pairs()[e.0].1).max()?;
            closes[y].push(x)
        }
    }

    struct State<'a> {
        g: &'a BipartiteMultigraph,
        options: &'a [Vec<(EdgeId, EdgeId)>],
        closes: &'a [Vec<usize>],
        xdeg: Vec<u8>,
        dsu: RollbackDsu,
        chosen: Vec<EdgeId>,
    }

    impl State<'_> {
        fn add(&mut self, e: EdgeId) -> bool {
            let (x, y) = self.g.edge_pairs()[e.0];
            if self.xdeg[x] == 2 || !self.dsu.try_add(x, self.g.x_count() + y, 8) {
                return false;
            }
            self.xdeg[x] += 1;
            self.chosen.push(e);
            true
        }

        fn remove_last(&mut self) {
            let e = self.chosen.pop().expect("nonempty");
            self.xdeg[self.g.edge_pairs()[e.0].0] -= 1;
            self.dsu.undo();
        }

        fn go(&mut self, y: usize) -> bool {
            if y == self.options.len() {
                return true;
            }
            for &(a, b) in &self.options[y] {
                if !self.add(a) {
                    continue;
                }
                if self.add(b) {
                    let closed_ok = self.closes[y].iter().all(|&x| self.xdeg[x] > 0);
                    if closed_ok && self.go(y + 1) {
                        return true;
                    }
                    self.remove_last();
                }
                self.remove_last();
            }
            false
        }
    }

    let mut st = State {
        g,
        options: &options,
        closes: &closes,
        xdeg: vec![0; nx],
        dsu: RollbackDsu::new(nx + ny),
        chosen: Vec::new(),
    };
    if !st.go(0) {
        return None;
    }
    Some(paths_from_edges(g, &st.chosen))
}

/// Splits a linear forest with X-leaves into paths, each starting at its
/// lower-id end.
fn paths_from_edges(g: &BipartiteMultigraph, edges: &[EdgeId]) -> PathFactor {
    let mut at: Vec<Vec<EdgeId>> = vec![Vec::new(); g.vertex_count()];
    let slot = |v: VertexId| if v.is_x() { v.index } else { g.x_count() + v.index };
    for &e in edges {
        let (x, y) = g.endpoints(e);
        at[slot(x)].push(e);
        at[slot(y)].push(e);
    }
    let mut used = vec![false; g.x_count()];
    let mut paths = Vec::new();
    for x in 0..g.x_count() {
        if used[x] || at[x].len() != 1 {
            continue;
        }
        let mut p = GraphPath::single(VertexId::x(x));
        let mut prev: Option<EdgeId> = None;
        loop {
            let v = p.last();
            let Some(&e) = at[slot(v)].iter().find(|&&e| Some(e) != prev) else {
                break;
            };
            let w = g.other_end(e, v).expect("incident");
            p.push(e, w);
            prev = Some(e);
        }
        used[x] = true;
        used[p.last().index] = true;
        paths.push(p);
    }
    PathFactor::new(paths)
}

/// Exhaustive search for an interval `k`-coloring. Edges are colored in id
/// order; a vertex whose colors already span more than `degree - 1` is cut,
/// and the first edge only takes colors in the lower half of the palette
/// (the reflection `c -> k + 1 - c` preserves intervals).
pub fn oracle_interval_coloring(g: &BipartiteMultigraph, k: u32) -> Option<EdgeColoring> {
    let m = g.edge_count();
    if m == 0 {
        return Some(EdgeColoring::new(Vec::new(), k));
    }
    if k == 0 {
        return None;
    }
    let n = g.vertex_count();
    let slot = |v: VertexId| if v.is_x() { v.index } else { g.x_count() + v.index };
    let degree: Vec<u32> = g.vertices().map(|v| g.degree(v) as u32).collect();
    let ends: Vec<[usize; 2]> = g
        .edge_ids()
        .map(|e| {
            let (x, y) = g.endpoints(e);
            [slot(x), slot(y)]
        })
        .collect();

    struct State<'a> {
        k: u32,
        ends: &'a [[usize; 2]],
        degree: &'a [u32],
        used: Vec<u64>,
        colors: Vec<u32>,
    }

    impl State<'_> {
        fn fits(&self, v: usize, c: u32) -> bool {
            let mask = self.used[v];
            if mask >> c & 1 == 1 {
                return false;
            }
            let mask = mask | 1 << c;
            let low = mask.trailing_zeros();
            let high = 63 - mask.leading_zeros();
            high - low < self.degree[v]
        }

        fn go(&mut self, i: usize) -> bool {
            if i == self.ends.len() {
                return true;
            }
            let [a, b] = self.ends[i];
            let top = if i == 0 { self.k.div_ceil(2) } else { self.k };
            for c in 1..=top {
                if self.fits(a, c) && self.fits(b, c) {
                    self.used[a] |= 1 << c;
                    self.used[b] |= 1 << c;
                    self.colors[i] = c;
                    if self.go(i + 1) {
                        return true;
                    }
                    self.used[a] &= !(1 << c);
                    self.used[b] &= !(1 << c);
                }
            }
            false
        }
    }

    assert!(k < 64, "palette too large for the oracle");
    let mut st = State {
        k,
        ends: &ends,
        degree: &degree,
        used: vec![0; n],
        colors: vec![0; m],
    };
    st.go(0).then(|| EdgeColoring::new(st.colors, k))
}

/// Max-flow on a dense capacity matrix (breadth-first augmenting paths).
fn max_flow(cap: &mut [Vec<u32>], s: usize, t: usize) -> u32 {
    let n = cap.len();
    let mut total = 0;
    loop {
        let mut prev = vec![usize::MAX; n];
        prev[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for v in 0..n {
                if prev[v] == usize::MAX && cap[u][v] > 0 {
                    prev[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if prev[t] == usize::MAX {
            return total;
        }
        let mut push = u32::MAX;
        let mut v = t;
        while v != s {
            push = push.min(cap[prev[v]][v]);
            v = prev[v];
        }
        let mut v = t;
        while v != s {
            cap[prev[v]][v] -= push;
            cap[v][prev[v]] += push;
            v = prev[v];
        }
        total += push;
    }
}

/// Exhaustive search for a full 3-regular subgraph of a (3,4)-biregular
/// graph. For every choice of `k = |X| / 4` X-vertices to leave out, a flow
/// network asks for degree 3 at each remaining X-vertex and each Y-vertex.
pub fn oracle_full_3regular(g: &BipartiteMultigraph) -> Option<SubgraphCertificate> {
    if !g.is_biregular(3, 4) || !g.x_count().is_multiple_of(4) {
        return None;
    }
    let (nx, ny) = (g.x_count(), g.y_count());
    let k = nx / 4;
    let mut mult = vec![vec![0u32; ny]; nx];
    for &(x, y) in g.edge_pairs() {
        mult[x][y] += 1;
    }
    let (s, t) = (nx + ny, nx + ny + 1);

    let mut deleted: Vec<usize> = (0..k).collect();
    loop {
        let mut cap = vec![vec![0u32; nx + ny + 2]; nx + ny + 2];
        for x in (0..nx).filter(|x| !deleted.contains(x)) {
            cap[s][x] = 3;
            for y in 0..ny {
                cap[x][nx + y] = mult[x][y];
            }
        }
        for y in 0..ny {
            cap[nx + y][t] = 3;
        }
        if max_flow(&mut cap, s, t) as usize == 9 * k {
            // flow on x -> y is the reverse residual capacity
            let mut picked = Vec::new();
            for x in 0..nx {
                for y in 0..ny {
                    let flow = cap[nx + y][x];
                    let copies = g
                        .incident(VertexId::x(x))
                        .iter()
                        .copied()
                        .filter(|e| g.edge_pairs()[e.0].1 == y);
                    picked.extend(copies.take(flow as usize));
                }
            }
            return Some(SubgraphCertificate::new(picked));
        }
        if !next_combination(&mut deleted, nx) {
            return None;
        }
    }
}

/// Advances a sorted k-subset of 0..n in lexicographic order.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let Some(i) = (0..k).rev().find(|&i| c[i] < n - k + i) else {
        return false;
    };
    c[i] += 1;
    for j in i + 1..k {
        c[j] = c[j - 1] + 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checker::{check_full_3regular, check_interval, check_proper_path_factor};
    use crate::generators::{claw_triple_graph, k34};

    #[test]
    fn rollback_dsu() {
        let mut d = RollbackDsu::new(4);
        assert!(d.try_add(0, 1, 8));
        assert!(d.try_add(1, 2, 8));
        assert!(!d.try_add(0, 2, 8));
        d.undo();
        assert!(d.try_add(0, 2, 8));
        assert!(!d.try_add(2, 3, 2));
    }

    #[test]
    fn path_factor_small_cases() {
        let g = k34();
        let f = oracle_path_factor(&g).unwrap();
        assert!(check_proper_path_factor(&g, &f).unwrap());
        assert!(oracle_path_factor(&claw_triple_graph()).is_none());
    }

    #[test]
    fn path_factor_single_cherry() {
        // x0 - y0 - x1: one path of length 2
        let g = BipartiteMultigraph::build(2, 1, &[(0, 0), (1, 0)]).unwrap();
        let f = oracle_path_factor(&g).unwrap();
        assert_eq!(f.lengths(), vec![2]);
    }

    #[test]
    fn interval_small_cases() {
        let single = BipartiteMultigraph::build(1, 1, &[(0, 0)]).unwrap();
        assert!(oracle_interval_coloring(&single, 1).is_some());
        let g = k34();
        assert!(oracle_interval_coloring(&g, 5).is_none());
        let c = oracle_interval_coloring(&g, 6).unwrap();
        assert!(check_interval(&g, &c).unwrap());
    }

    #[test]
    fn full_3regular_small_cases() {
        let g = k34();
        assert!(check_full_3regular(&g, &oracle_full_3regular(&g).unwrap()));
        let claw = claw_triple_graph();
        let cert = oracle_full_3regular(&claw).unwrap();
        assert!(check_full_3regular(&claw, &cert));
        assert_eq!(cert.edge_set.len(), 9);
    }

    #[test]
    fn combinations_enumerated() {
        let mut c = vec![0, 1];
        let mut count = 1;
        while next_combination(&mut c, 5) {
            count += 1;
        }
        assert_eq!(count, 10);
    }
}
