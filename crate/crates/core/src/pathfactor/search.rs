use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{SearchOutcome, SearchReport};
use crate::bigraph::{BipartiteMultigraph, EdgeId, Part, VertexId};
use crate::checker::{GraphPath, PathFactor, SubgraphCertificate};
use crate::error::Result;

pub const DEFAULT_MAX_NODES: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    /// Node-expansion cap; exceeding it yields `Unknown`. `None` = unbounded.
    pub max_nodes: Option<u64>,
    /// Permitted path lengths, a subset of {2,4,6,8}.
    pub lengths: Vec<usize>,
    /// Shuffles the order edges are tried in; `None` tries lowest id first.
    pub seed: Option<u64>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_nodes: Some(DEFAULT_MAX_NODES),
            lengths: vec![2, 4, 6, 8],
            seed: None,
        }
    }
}

impl SearchConfig {
    pub fn unbounded() -> Self {
        SearchConfig {
            max_nodes: None,
            ..Self::default()
        }
    }

    /// Only length-6 paths, i.e. a P7-factor.
    pub fn p7_only() -> Self {
        SearchConfig {
            lengths: vec![6],
            ..Self::default()
        }
    }
}

#[derive(Debug, PartialEq, Eq)]
enum Flow {
    Found,
    Exhausted,
    Aborted,
}

struct Budget {
    nodes: u64,
    limit: Option<u64>,
}

impl Budget {
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        self.limit.is_none_or(|limit| self.nodes <= limit)
    }
}

struct PathSearch<'a> {
    g: &'a BipartiteMultigraph,
    allowed: [bool; 9],
    max_len: usize,
    /// per vertex: (rank, edge, neighbor), one entry per distinct neighbor
    moves_x: Vec<Vec<(usize, EdgeId, VertexId)>>,
    moves_y: Vec<Vec<(usize, EdgeId, VertexId)>>,
    covered_x: Vec<bool>,
    covered_y: Vec<bool>,
    paths: Vec<GraphPath>,
    budget: Budget,
}

impl<'a> PathSearch<'a> {
    fn new(g: &'a BipartiteMultigraph, config: &SearchConfig) -> Self {
        let mut rank: Vec<usize> = (0..g.edge_count()).collect();
        if let Some(seed) = config.seed {
            rank.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        }
        // parallel edges lead to the same state, so keep the best-ranked one
        let moves = |v: VertexId| {
            let mut m: Vec<(usize, EdgeId, VertexId)> = g
                .incident(v)
                .iter()
                .map(|&e| (rank[e.0], e, g.other_end(e, v).expect("incident edge")))
                .collect();
            m.sort();
            let mut seen = Vec::new();
            m.retain(|&(_, _, w)| {
                let fresh = !seen.contains(&w);
                seen.push(w);
                fresh
            });
            m
        };
        let mut allowed = [false; 9];
        for &l in &config.lengths {
            if l < allowed.len() {
                allowed[l] = true;
            }
        }
        let max_len = config.lengths.iter().copied().filter(|&l| l <= 8).max().unwrap_or(0);
        PathSearch {
            g,
            allowed,
            max_len,
            moves_x: (0..g.x_count()).map(|x| moves(VertexId::x(x))).collect(),
            moves_y: (0..g.y_count()).map(|y| moves(VertexId::y(y))).collect(),
            covered_x: vec![false; g.x_count()],
            covered_y: vec![false; g.y_count()],
            paths: Vec::new(),
            budget: Budget {
                nodes: 0,
                limit: config.max_nodes,
            },
        }
    }

    fn moves(&self, v: VertexId) -> &[(usize, EdgeId, VertexId)] {
        match v.part {
            Part::X => &self.moves_x[v.index],
            Part::Y => &self.moves_y[v.index],
        }
    }

    fn covered(&self, v: VertexId) -> bool {
        match v.part {
            Part::X => self.covered_x[v.index],
            Part::Y => self.covered_y[v.index],
        }
    }

    fn set_covered(&mut self, v: VertexId, value: bool) {
        match v.part {
            Part::X => self.covered_x[v.index] = value,
            Part::Y => self.covered_y[v.index] = value,
        }
    }

    /// Every uncovered Y-vertex still has two uncovered X-neighbors, and
    /// every uncovered X-vertex an uncovered Y-neighbor.
    fn feasible(&self) -> bool {
        let free_nbrs = |v: VertexId| self.moves(v).iter().filter(|(_, _, w)| !self.covered(*w)).count();
        (0..self.g.y_count())
            .map(VertexId::y)
            .filter(|&y| !self.covered(y))
            .all(|y| free_nbrs(y) >= 2)
            && (0..self.g.x_count())
                .map(VertexId::x)
                .filter(|&x| !self.covered(x))
                .all(|x| free_nbrs(x) >= 1)
    }

    /// Starts the path through the lowest uncovered X-vertex.
    fn place_next(&mut self) -> Flow {
        if !self.budget.tick() {
            return Flow::Aborted;
        }
        let Some(x) = self.covered_x.iter().position(|c| !c) else {
            return if self.covered_y.iter().all(|&c| c) {
                Flow::Found
            } else {
                Flow::Exhausted
            };
        };
        if !self.feasible() {
            return Flow::Exhausted;
        }
        let v = VertexId::x(x);
        self.set_covered(v, true);
        let flow = self.grow_first(&mut GraphPath::single(v));
        self.set_covered(v, false);
        flow
    }

    /// Grows the first arm away from the anchor vertex. The arm may stop at
    /// any X-vertex once it has length ≥ 2; the second arm then grows from
    /// the anchor in the other direction.
    fn grow_first(&mut self, arm: &mut GraphPath) -> Flow {
        if !self.budget.tick() {
            return Flow::Aborted;
        }
        if arm.len() >= 2 && arm.len().is_multiple_of(2) {
            let first_rank = self.rank_of_first(arm);
            let flow = self.grow_second(arm, &mut GraphPath::single(arm.first()), first_rank);
            if flow != Flow::Exhausted {
                return flow;
            }
        }
        if arm.len() < self.max_len {
            let end = arm.last();
            let moves = self.moves(end).to_vec();
            for (_, e, w) in moves {
                if self.covered(w) {
                    continue;
                }
                self.set_covered(w, true);
                arm.push(e, w);
                let flow = self.grow_first(arm);
                arm.vertices.pop();
                arm.edges.pop();
                self.set_covered(w, false);
                if flow != Flow::Exhausted {
                    return flow;
                }
            }
        }
        Flow::Exhausted
    }

    fn rank_of_first(&self, arm: &GraphPath) -> usize {
        let (e, w) = (arm.edges[0], arm.vertices[1]);
        self.moves(arm.first())
            .iter()
            .find(|&&(_, f, u)| f == e && u == w)
            .map(|&(r, _, _)| r)
            .expect("arm edge is a move")
    }

    /// `first_rank` breaks the mirror symmetry between the two arms: the
    /// second arm must leave the anchor through a higher-ranked edge.
    fn grow_second(&mut self, arm1: &GraphPath, arm2: &mut GraphPath, first_rank: usize) -> Flow {
        if !self.budget.tick() {
            return Flow::Aborted;
        }
        let total = arm1.len() + arm2.len();
        if arm2.len().is_multiple_of(2) && self.allowed[total] {
            let mut path = arm2.reversed();
            path.extend_with(arm1);
            self.paths.push(path);
            let flow = self.place_next();
            if flow == Flow::Found {
                return flow;
            }
            self.paths.pop();
            if flow == Flow::Aborted {
                return flow;
            }
        }
        if total < self.max_len {
            let end = arm2.last();
            let moves = self.moves(end).to_vec();
            for (rank, e, w) in moves {
                if self.covered(w) || (arm2.is_empty() && rank <= first_rank) {
                    continue;
                }
                self.set_covered(w, true);
                arm2.push(e, w);
                let flow = self.grow_second(arm1, arm2, first_rank);
                arm2.vertices.pop();
                arm2.edges.pop();
                self.set_covered(w, false);
                if flow != Flow::Exhausted {
                    return flow;
                }
            }
        }
        Flow::Exhausted
    }
}

/// Exhaustive backtracking for a proper path-factor.
///
/// The lowest uncovered X-vertex must lie on some path; that path is
/// enumerated as two arms growing out of it through uncovered vertices and
/// closed only at X with a permitted length. A node cap turns an unfinished
/// search into `Unknown`.
pub fn search_proper_path_factor(g: &BipartiteMultigraph, config: &SearchConfig) -> SearchReport<PathFactor> {
    let mut search = PathSearch::new(g, config);
    let flow = search.place_next();
    let outcome = match flow {
        Flow::Found => SearchOutcome::Found(PathFactor::new(std::mem::take(&mut search.paths))),
        Flow::Exhausted => SearchOutcome::None,
        Flow::Aborted => SearchOutcome::Unknown,
    };
    SearchReport {
        outcome,
        nodes: search.budget.nodes,
    }
}

/// Exhaustive search for a full 3-regular subgraph.
///
/// Kept X-vertices must keep all three edges, so the subgraph is fixed by the
/// set D of deleted X-vertices; it is full exactly when the neighborhoods of
/// D partition Y. That exact cover is solved by backtracking on the
/// uncovered Y-vertex with fewest candidates.
pub fn search_full_3regular(
    g: &BipartiteMultigraph,
    config: &SearchConfig,
) -> Result<SearchReport<SubgraphCertificate>> {
    g.require_biregular(3, 4)?;
    let nbhd: Vec<Option<Vec<usize>>> = (0..g.x_count())
        .map(|x| {
            let n: Vec<usize> = g.neighbors(VertexId::x(x)).iter().map(|v| v.index).collect();
            (n.len() == 3).then_some(n)
        })
        .collect();
    let mut candidates_of: Vec<Vec<usize>> = vec![Vec::new(); g.y_count()];
    for (x, n) in nbhd.iter().enumerate() {
        for &y in n.iter().flatten() {
            candidates_of[y].push(x);
        }
    }

    struct Cover<'c> {
        nbhd: &'c [Option<Vec<usize>>],
        candidates_of: &'c [Vec<usize>],
        covered: Vec<bool>,
        deleted: Vec<usize>,
        budget: Budget,
    }

    impl Cover<'_> {
        fn usable(&self, x: usize) -> bool {
            self.nbhd[x].as_ref().is_some_and(|n| n.iter().all(|&y| !self.covered[y]))
        }

        fn solve(&mut self) -> Flow {
            if !self.budget.tick() {
                return Flow::Aborted;
            }
            let mut best: Option<(usize, usize)> = None;
            for y in (0..self.covered.len()).filter(|&y| !self.covered[y]) {
                let count = self.candidates_of[y].iter().filter(|&&x| self.usable(x)).count();
                if best.is_none_or(|(_, c)| count < c) {
                    best = Some((y, count));
                }
            }
            let Some((y, count)) = best else {
                return Flow::Found;
            };
            if count == 0 {
                return Flow::Exhausted;
            }
            for x in self.candidates_of[y].clone() {
                if !self.usable(x) {
                    continue;
                }
                let n = self.nbhd[x].clone().expect("usable");
                n.iter().for_each(|&y| self.covered[y] = true);
                self.deleted.push(x);
                let flow = self.solve();
                if flow != Flow::Exhausted {
                    return flow;
                }
                self.deleted.pop();
                n.iter().for_each(|&y| self.covered[y] = false);
            }
            Flow::Exhausted
        }
    }

    let mut cover = Cover {
        nbhd: &nbhd,
        candidates_of: &candidates_of,
        covered: vec![false; g.y_count()],
        deleted: Vec::new(),
        budget: Budget {
            nodes: 0,
            limit: config.max_nodes,
        },
    };
    let outcome = match cover.solve() {
        Flow::Found => {
            let deleted = &cover.deleted;
            SearchOutcome::Found(SubgraphCertificate::new(
                g.edge_ids().filter(|&e| !deleted.contains(&g.edge_pairs()[e.0].0)),
            ))
        }
        Flow::Exhausted => SearchOutcome::None,
        Flow::Aborted => SearchOutcome::Unknown,
    };
    Ok(SearchReport {
        outcome,
        nodes: cover.budget.nodes,
    })
}
