//! Randomized search for simple (3,4)-biregular graphs without a proper
//! path-factor.
//!
//! Trial `i` uses seed `seed + i`, so the report depends only on
//! `(k, trials, seed, max_nodes)` and not on how many worker threads ran.

use rayon::prelude::*;
use serde::Serialize;

use crate::bigraph::GraphFile;
use crate::error::{Error, Result};
use crate::generators::random_34_biregular;
use crate::oracle::oracle_path_factor;
use crate::pathfactor::{search_proper_path_factor, SearchConfig, SearchOutcome};

#[derive(Debug, Clone)]
pub struct HuntConfig {
    pub k: usize,
    pub trials: u64,
    pub seed: u64,
    pub jobs: usize,
    pub max_nodes: Option<u64>,
}

/// A graph on which the search answered "none", with the oracle's verdict.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArchivedInstance {
    pub trial: u64,
    pub seed: u64,
    /// True when the oracle also finds no factor.
    pub oracle_confirmed: bool,
    pub graph: GraphFile,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HuntReport {
    pub k: usize,
    pub trials: u64,
    pub seed: u64,
    pub max_nodes: Option<u64>,
    pub factor: u64,
    pub none: u64,
    pub unknown: u64,
    /// Confirmed counterexamples, ordered by trial.
    pub counterexamples: Vec<ArchivedInstance>,
    /// Search said none but the oracle found a factor.
    pub disagreements: Vec<ArchivedInstance>,
}

enum TrialResult {
    Factor,
    Unknown,
    None(ArchivedInstance),
}

fn run_trial(config: &HuntConfig, trial: u64) -> Result<TrialResult> {
    let seed = config.seed.wrapping_add(trial);
    let g = random_34_biregular(config.k, seed, true)?;
    let search = SearchConfig {
        max_nodes: config.max_nodes,
        ..SearchConfig::default()
    };
    Ok(match search_proper_path_factor(&g, &search).outcome {
        SearchOutcome::Found(_) => TrialResult::Factor,
        SearchOutcome::Unknown => TrialResult::Unknown,
        SearchOutcome::None => TrialResult::None(ArchivedInstance {
            trial,
            seed,
            oracle_confirmed: oracle_path_factor(&g).is_none(),
            graph: g.to_file(),
        }),
    })
}

pub fn hunt(config: &HuntConfig) -> Result<HuntReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs.max(1))
        .build()
        .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
    // collect keeps trial order whatever the scheduling
    let results: Vec<TrialResult> = pool.install(|| {
        (0..config.trials)
            .into_par_iter()
            .map(|t| run_trial(config, t))
            .collect::<Result<_>>()
    })?;

    let mut report = HuntReport {
        k: config.k,
        trials: config.trials,
        seed: config.seed,
        max_nodes: config.max_nodes,
        factor: 0,
        none: 0,
        unknown: 0,
        counterexamples: Vec::new(),
        disagreements: Vec::new(),
    };
    for r in results {
        match r {
            TrialResult::Factor => report.factor += 1,
            TrialResult::Unknown => report.unknown += 1,
            TrialResult::None(inst) => {
                report.none += 1;
                if inst.oracle_confirmed {
                    report.counterexamples.push(inst);
                } else {
                    report.disagreements.push(inst);
                }
            }
        }
    }
    Ok(report)
}
