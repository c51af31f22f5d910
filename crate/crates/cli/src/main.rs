//! `interval6` command-line tool.
//!
//! Exit codes: 0 success or verified, 1 definitive negative, 2 unknown or
//! method not applicable, 3 input error.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use interval6::bigraph::BipartiteMultigraph;
use interval6::checker::{
    check_full_3regular, check_proper, factor_violation, interval_violation, EdgeColoring, PathFactor,
    SubgraphCertificate,
};
use interval6::coloring::{color_from_factor, color_summary, summary_table};
use interval6::export::to_dot;
use interval6::generators;
use interval6::hunt::{hunt, HuntConfig};
use interval6::oracle::{oracle_full_3regular, oracle_interval_coloring, oracle_path_factor};
use interval6::pathfactor::{
    p7_factor_via_24, search_full_3regular, search_proper_path_factor, SearchConfig, SearchOutcome,
    DEFAULT_MAX_NODES,
};
use interval6::transversal::{
    build_f, factor_from_mixed_transversal, find_mixed_transversal, three_color_certificate, FSystemFile,
};

const OK: u8 = 0;
const NEGATIVE: u8 = 1;
const UNKNOWN: u8 = 2;
const INPUT_ERROR: u8 = 3;

/// Edge counts above this skip the interval-coloring oracle in `verify`.
const INTERVAL_ORACLE_EDGE_LIMIT: usize = 24;

#[derive(Parser)]
#[command(name = "interval6", version, about = "Interval 6-colorings of (3,4)-biregular bigraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Subset6,
    EightTriples,
    ClawTriple,
    K34,
    Random,
    /// 2-switch of two eight-triples copies.
    TwoSwitch,
    /// F and triples with no mixed transversal.
    NoMixed,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Search,
    Via24,
    Transversal,
    Oracle,
}

#[derive(Subcommand)]
enum Command {
    /// Write a named or random graph as JSON.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Reject draws with parallel edges.
        #[arg(long)]
        simple: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the family's bundled factor (subset6, two-switch).
        #[arg(long)]
        factor_out: Option<PathBuf>,
    },
    /// Find a proper path-factor.
    Factor {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "search")]
        method: Method,
        #[arg(long, default_value_t = DEFAULT_MAX_NODES)]
        max_nodes: u64,
        /// Remove the node cap.
        #[arg(long)]
        unbounded: bool,
        /// Shuffle the search's edge order.
        #[arg(long)]
        seed: Option<u64>,
        /// Allowed path lengths, e.g. `--lengths 6` for a P7-factor.
        #[arg(long, value_delimiter = ',', default_values_t = [2usize, 4, 6, 8])]
        lengths: Vec<usize>,
        /// Write the bare factor here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build and verify an interval 6-coloring from a factor.
    Color {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        factor: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write a DOT drawing with colored edges.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Check certificates, and optionally ask the brute-force oracles.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        factor: Option<PathBuf>,
        #[arg(long)]
        coloring: Option<PathBuf>,
        #[arg(long)]
        certificate: Option<PathBuf>,
        #[arg(long)]
        oracle: bool,
    },
    /// Search random simple instances for a graph without a proper path-factor.
    Hunt {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_NODES)]
        max_nodes: u64,
        /// Directory for graphs on which the search answered "none".
        #[arg(long)]
        archive: Option<PathBuf>,
    },
    /// Write a graph, optionally with a coloring and a factor, as DOT.
    Export {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        coloring: Option<PathBuf>,
        #[arg(long)]
        factor: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { INPUT_ERROR } else { OK });
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}

fn read_graph(path: &Path) -> Result<BipartiteMultigraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    BipartiteMultigraph::from_json(&text).with_context(|| format!("parsing graph {}", path.display()))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path, what: &str) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {what} {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            say(text);
            Ok(())
        }
    }
}

/// Print to stdout, ignoring a closed pipe.
fn say(text: &str) {
    let _ = writeln!(io::stdout().lock(), "{text}");
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Gen {
            family,
            k,
            seed,
            simple,
            out,
            factor_out,
        } => gen(family, k, seed, simple, out.as_deref(), factor_out.as_deref()),
        Command::Factor {
            input,
            method,
            max_nodes,
            unbounded,
            seed,
            lengths,
            out,
        } => {
            let config = SearchConfig {
                max_nodes: (!unbounded).then_some(max_nodes),
                lengths,
                seed,
            };
            factor(&read_graph(&input)?, method, &config, out.as_deref())
        }
        Command::Color {
            input,
            factor,
            out,
            dot,
        } => {
            let g = read_graph(&input)?;
            let f: PathFactor = read_json(&factor, "factor")?;
            if let Some(reason) = factor_violation(&g, &f)? {
                bail!("not a proper path-factor: {reason}");
            }
            let c = color_from_factor(&g, &f)?;
            eprint!("{}", summary_table(&color_summary(&g, &c)));
            emit(out.as_deref(), &serde_json::to_string(&c)?)?;
            if let Some(p) = dot {
                fs::write(&p, to_dot(&g, Some(&c), Some(&f))).with_context(|| format!("writing {}", p.display()))?;
            }
            Ok(OK)
        }
        Command::Verify {
            input,
            factor,
            coloring,
            certificate,
            oracle,
        } => verify(&read_graph(&input)?, factor, coloring, certificate, oracle),
        Command::Hunt {
            k,
            trials,
            seed,
            jobs,
            max_nodes,
            archive,
        } => {
            let report = hunt(&HuntConfig {
                k,
                trials,
                seed,
                jobs,
                max_nodes: Some(max_nodes),
            })?;
            if let Some(dir) = archive {
                fs::create_dir_all(&dir)?;
                for inst in report.counterexamples.iter().chain(&report.disagreements) {
                    let p = dir.join(format!("k{}-trial{}-seed{}.json", k, inst.trial, inst.seed));
                    fs::write(&p, serde_json::to_string(&inst.graph)?)?;
                }
            }
            for inst in &report.counterexamples {
                eprintln!("COUNTEREXAMPLE: trial {} (seed {}) has no proper path-factor", inst.trial, inst.seed);
            }
            for inst in &report.disagreements {
                eprintln!("DISAGREEMENT: trial {} (seed {}): search says none, oracle finds a factor", inst.trial, inst.seed);
            }
            say(&pretty(&report));
            Ok(if report.none > 0 {
                NEGATIVE
            } else if report.unknown > 0 {
                UNKNOWN
            } else {
                OK
            })
        }
        Command::Export {
            input,
            coloring,
            factor,
            out,
        } => {
            let g = read_graph(&input)?;
            let c: Option<EdgeColoring> = coloring.map(|p| read_json(&p, "coloring")).transpose()?;
            let f: Option<PathFactor> = factor.map(|p| read_json(&p, "factor")).transpose()?;
            if let Some(f) = &f {
                if let Some(reason) = factor_violation(&g, f)? {
                    bail!("not a proper path-factor: {reason}");
                }
            }
            emit(out.as_deref(), &to_dot(&g, c.as_ref(), f.as_ref()))?;
            Ok(OK)
        }
    }
}

fn gen(family: Family, k: usize, seed: u64, simple: bool, out: Option<&Path>, factor_out: Option<&Path>) -> Result<u8> {
    let (g, f) = match family {
        Family::Subset6 => {
            let (g, f) = generators::subset_graph_6();
            (g, Some(f))
        }
        Family::EightTriples => (generators::eight_triples_graph(), None),
        Family::ClawTriple => (generators::claw_triple_graph(), None),
        Family::K34 => (generators::k34(), None),
        Family::Random => (generators::random_34_biregular(k, seed, simple)?, None),
        Family::TwoSwitch => {
            let g = generators::eight_triples_graph();
            let p7 = SearchConfig {
                max_nodes: None,
                ..SearchConfig::p7_only()
            };
            let f = search_proper_path_factor(&g, &p7)
                .outcome
                .found()
                .context("eight-triples graph has no P7-factor")?;
            let on = f.edge_set();
            let e = g.edge_ids().find(|e| !on.contains(e)).context("factor uses every edge")?;
            let (h, hf) = generators::two_switch(&g, &f, e, &g, &f, e)?;
            (h, Some(hf))
        }
        Family::NoMixed => {
            let (f, ts) = generators::no_mixed_transversal_instance();
            emit(out, &pretty(&FSystemFile::new(&f, &ts)))?;
            return Ok(OK);
        }
    };
    emit(out, &g.to_json())?;
    if let Some(p) = factor_out {
        let f = f.context("this family has no bundled factor")?;
        fs::write(p, serde_json::to_string(&f)?).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(OK)
}

fn factor(g: &BipartiteMultigraph, method: Method, config: &SearchConfig, out: Option<&Path>) -> Result<u8> {
    g.require_biregular(3, 4)?;
    let mut report = serde_json::Map::new();
    let (outcome, definitive, note): (SearchOutcome<PathFactor>, bool, Option<String>) = match method {
        Method::Search => {
            let r = search_proper_path_factor(g, config);
            report.insert("nodes".into(), json!(r.nodes));
            (r.outcome, true, None)
        }
        Method::Oracle => match oracle_path_factor(g) {
            Some(f) => (SearchOutcome::Found(f), true, None),
            None => (SearchOutcome::None, true, None),
        },
        Method::Via24 => match p7_factor_via_24(g)? {
            Some(f) => (SearchOutcome::Found(f), true, None),
            None => (SearchOutcome::Unknown, false, Some("no Y-cover; construction does not apply".into())),
        },
        Method::Transversal => transversal_factor(g, config)?,
    };
    report.insert("method".into(), json!(method_name(method)));
    report.insert("status".into(), json!(outcome.label()));
    if outcome.is_none() {
        report.insert("definitive".into(), json!(definitive));
    }
    if let Some(n) = note {
        report.insert("note".into(), json!(n));
    }
    let code = match &outcome {
        SearchOutcome::Found(f) => {
            if let Some(reason) = factor_violation(g, f)? {
                bail!("internal error: produced factor is invalid: {reason}");
            }
            report.insert("lengths".into(), json!(f.lengths()));
            report.insert("factor".into(), serde_json::to_value(f)?);
            if let Some(p) = out {
                fs::write(p, serde_json::to_string(f)?).with_context(|| format!("writing {}", p.display()))?;
            }
            OK
        }
        SearchOutcome::None => NEGATIVE,
        SearchOutcome::Unknown => UNKNOWN,
    };
    say(&pretty(&Value::Object(report)));
    Ok(code)
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Search => "search",
        Method::Via24 => "via24",
        Method::Transversal => "transversal",
        Method::Oracle => "oracle",
    }
}

fn transversal_factor(
    g: &BipartiteMultigraph,
    config: &SearchConfig,
) -> Result<(SearchOutcome<PathFactor>, bool, Option<String>)> {
    let cert = match search_full_3regular(g, config)?.outcome {
        SearchOutcome::Found(c) => c,
        SearchOutcome::None => {
            return Ok((SearchOutcome::Unknown, false, Some("no full 3-regular subgraph; construction does not apply".into())))
        }
        SearchOutcome::Unknown => {
            return Ok((SearchOutcome::Unknown, false, Some("full 3-regular subgraph search hit the node cap".into())))
        }
    };
    let coloring = three_color_certificate(g, &cert)?;
    let frame = build_f(g, &cert, &coloring)?;
    match find_mixed_transversal(&frame.f, &frame.triples, config.max_nodes)? {
        SearchOutcome::Found(tr) => Ok((
            SearchOutcome::Found(factor_from_mixed_transversal(g, &cert, &coloring, &tr)?),
            true,
            None,
        )),
        _ => Ok((SearchOutcome::Unknown, false, Some("no mixed transversal found".into()))),
    }
}

fn verify(
    g: &BipartiteMultigraph,
    factor: Option<PathBuf>,
    coloring: Option<PathBuf>,
    certificate: Option<PathBuf>,
    oracle: bool,
) -> Result<u8> {
    let mut report = serde_json::Map::new();
    let mut all_ok = true;
    let mut record = |name: &str, ok: bool, detail: Option<String>| {
        all_ok &= ok;
        report.insert(name.into(), json!({ "ok": ok, "detail": detail }));
    };
    report_biregular(g, &mut record);
    if let Some(p) = factor {
        let f: PathFactor = read_json(&p, "factor")?;
        let violation = factor_violation(g, &f)?;
        record("factor", violation.is_none(), violation);
    }
    if let Some(p) = coloring {
        let c: EdgeColoring = read_json(&p, "coloring")?;
        let missing = c.uncolored(g);
        if !missing.is_empty() {
            record("coloring", false, Some(format!("{} edge(s) uncolored", missing.len())));
        } else if !check_proper(g, &c)? {
            record("coloring", false, Some("not proper".into()));
        } else {
            match interval_violation(g, &c)? {
                None => record("coloring", true, Some(format!("interval, palette {}", c.palette_size))),
                Some((v, cs)) => record("coloring", false, Some(format!("gap at {v}: {cs:?}"))),
            }
        }
    }
    if let Some(p) = certificate {
        let cert: SubgraphCertificate = read_json(&p, "certificate")?;
        record("certificate", check_full_3regular(g, &cert), None);
    }
    if oracle {
        let mut oracles = serde_json::Map::new();
        oracles.insert("path_factor".into(), json!(oracle_path_factor(g).is_some()));
        oracles.insert("full_3regular".into(), json!(oracle_full_3regular(g).is_some()));
        if g.edge_count() <= INTERVAL_ORACLE_EDGE_LIMIT {
            oracles.insert("interval_6_coloring".into(), json!(oracle_interval_coloring(g, 6).is_some()));
        }
        report.insert("oracle".into(), Value::Object(oracles));
    }
    say(&pretty(&Value::Object(report)));
    Ok(if all_ok { OK } else { NEGATIVE })
}

fn report_biregular(g: &BipartiteMultigraph, record: &mut impl FnMut(&str, bool, Option<String>)) {
    match g.require_biregular(3, 4) {
        Ok(()) => record("biregular", true, None),
        Err(e) => record("biregular", false, Some(e.to_string())),
    }
}
