//! Interval 6-colorings from proper path-factors.
//!
//! Factor edges get colors from {1,2,5,6} and complement edges from {3,4}.
//! The complement splits into even cycles and X-to-X paths; the P-graph ties
//! the internal X-vertices of factor paths together and its A/B coloring
//! decides, per internal vertex, whether it sees {1,2,3} or {4,5,6}.

use serde::Serialize;

use crate::bigraph::{BipartiteMultigraph, EdgeId, VertexId};
use crate::checker::{check_proper, interval_violation, EdgeColoring, GraphPath, PathFactor};
use crate::error::{Error, Result};
use crate::pathfactor::{build_q, pgraph::pgraph_from_parts, two_color_pgraph, Tone, TwoColoring};

pub const PALETTE: u32 = 6;

/// Colors along a factor path, first edge to last.
fn factor_path_colors(path: &GraphPath, tone: &TwoColoring) -> Result<Vec<u32>> {
    let tone_at = |pos: usize| -> Result<Tone> {
        let v = path.vertices[pos];
        tone.get(&v.index)
            .copied()
            .ok_or_else(|| Error::Invariant(format!("internal vertex {v} missing from the P-graph")))
    };
    // written from the end whose first edge gets color 2
    let (colors, from_first): (Vec<u32>, bool) = match path.len() {
        2 => (vec![2, 5], path.edges[0] < path.edges[1]),
        4 => {
            let colors = match tone_at(2)? {
                Tone::A => vec![2, 1, 2, 5],
                Tone::B => vec![2, 5, 6, 5],
            };
            (colors, path.edges[0] < path.edges[3])
        }
        6 => (vec![2, 1, 2, 5, 6, 5], tone_at(2)? == Tone::A),
        8 => {
            let near = tone_at(2)?;
            let center = match tone_at(4)? {
                Tone::A => [1, 2],
                Tone::B => [5, 6],
            };
            let mut colors = vec![2, 1, 2];
            colors.extend_from_slice(&center);
            colors.extend_from_slice(&[5, 6, 5]);
            (colors, near == Tone::A)
        }
        other => return Err(Error::Invariant(format!("factor path of length {other}"))),
    };
    Ok(if from_first {
        colors
    } else {
        colors.into_iter().rev().collect()
    })
}

/// Builds an interval 6-coloring from a proper path-factor and verifies it
/// before returning. A verification failure is an invariant error naming the
/// offending vertex.
pub fn color_from_factor(g: &BipartiteMultigraph, factor: &PathFactor) -> Result<EdgeColoring> {
    let q = build_q(g, factor)?;
    let pg = pgraph_from_parts(factor, &q);
    let tone = two_color_pgraph(&pg)?;
    let mut colors = vec![0u32; g.edge_count()];

    let mut paint = |edges: &[EdgeId], pattern: &mut dyn Iterator<Item = u32>| {
        for (&e, c) in edges.iter().zip(pattern) {
            colors[e.0] = c;
        }
    };

    for cycle in &q.cycles {
        paint(&cycle.edges, &mut [3, 4].into_iter().cycle());
    }
    for qp in &q.q_paths {
        let start = tone.get(&qp.first().index).copied();
        let end = tone.get(&qp.last().index).copied();
        match (start, end) {
            (Some(Tone::A), Some(Tone::B)) => paint(&qp.edges, &mut [3, 4].into_iter().cycle()),
            (Some(Tone::B), Some(Tone::A)) => paint(&qp.edges, &mut [4, 3].into_iter().cycle()),
            _ => {
                return Err(Error::Invariant(format!(
                    "Q-path {}..{} ends are not colored A and B",
                    qp.first(),
                    qp.last()
                )))
            }
        }
    }
    for path in &factor.paths {
        let pattern = factor_path_colors(path, &tone)?;
        paint(&path.edges, &mut pattern.into_iter());
    }

    let coloring = EdgeColoring::new(colors, PALETTE);
    if !check_proper(g, &coloring)? {
        return Err(Error::Invariant("constructed coloring is not proper".into()));
    }
    if let Some((v, cs)) = interval_violation(g, &coloring)? {
        return Err(Error::Invariant(format!("constructed coloring leaves a gap at {v}: {cs:?}")));
    }
    Ok(coloring)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexReport {
    pub vertex: VertexId,
    pub colors: Vec<u32>,
    pub low: u32,
    pub high: u32,
}

impl VertexReport {
    pub fn is_interval(&self) -> bool {
        (self.high - self.low) as usize + 1 == self.colors.len()
    }
}

/// Sorted incident colors and their bounds for every non-isolated vertex.
pub fn color_summary(g: &BipartiteMultigraph, coloring: &EdgeColoring) -> Vec<VertexReport> {
    g.vertices()
        .filter_map(|v| {
            let colors = coloring.colors_at(g, v);
            Some(VertexReport {
                vertex: v,
                low: *colors.first()?,
                high: *colors.last()?,
                colors,
            })
        })
        .collect()
}

/// Plain-text table of a [`color_summary`].
pub fn summary_table(reports: &[VertexReport]) -> String {
    let mut out = String::from("vertex  colors        interval\n");
    for r in reports {
        let cs: Vec<String> = r.colors.iter().map(u32::to_string).collect();
        out.push_str(&format!(
            "{:<7} {:<13} {}-{}{}\n",
            r.vertex.to_string(),
            cs.join(","),
            r.low,
            r.high,
            if r.is_interval() { "" } else { "  GAP" }
        ));
    }
    out
}

/// Number of places along a factor path where the colors move between the
/// {1,2} pair and the {5,6} pair.
pub fn switch_count(colors: &[u32]) -> usize {
    let side: Vec<bool> = colors.iter().map(|&c| c >= 5).collect();
    side.windows(2).filter(|w| w[0] != w[1]).count()
}
