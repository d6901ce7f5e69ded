//! Command-line front end.
//!
//! Exit codes: 0 success or pair found, 1 definitive negative answer,
//! 2 inconclusive, 3 bad input.

use std::ffi::OsString;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::branching::{verify_good_pair, GoodPairCert};
use crate::connectivity::{arc_connectivity, edmonds_branchings, max_arc_disjoint_paths, BranchingPacking};
use crate::constructions::{hamilton_dipath, longest_dipath, reduce_and_lift_with, ReduceOptions};
use crate::digraph::{Digraph, Dipath, VertexSet};
use crate::error::{Error, Result};
use crate::format::{parse_digraph, serialize_digraph, Format};
use crate::genlab::{
    enumerate_small, iso_classes, random_2arc_strong, verify_theorem_sample_with, write_failures, EnumFilter,
    EnumMode, GenKind, GenModel, HarnessOptions,
};
use crate::solver::{find_good_pair_exact, ExactOutcome, SearchOptions, DEFAULT_NODE_BUDGET};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NONE: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "goodpair", version, about = "Arc-disjoint out- and in-branchings in small digraphs")]
pub struct Cli {
    /// Print machine-readable JSON on stdout.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Arc-connectivity with a minimum cut.
    Lambda(Input),
    /// Maximum family of arc-disjoint dipaths from s to t.
    Paths {
        #[command(flatten)]
        input: Input,
        s: usize,
        t: usize,
    },
    /// k arc-disjoint out-branchings rooted at z, or a violated cut.
    Edmonds {
        #[command(flatten)]
        input: Input,
        z: usize,
        k: usize,
    },
    /// Exact search for a good pair.
    Goodpair {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        root_out: Option<usize>,
        #[arg(long)]
        root_in: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Check a certificate against a digraph.
    Verify {
        #[command(flatten)]
        input: Input,
        cert: PathBuf,
    },
    /// Hamilton dipath, or the longest dipath with --longest.
    Hamilton {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        longest: bool,
    },
    /// Reduction pipeline: certificate plus the trace of rules applied.
    Reduce {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Random 2-arc-strong digraphs.
    Gen {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Output format: edge-list or digraph6.
        #[arg(long, default_value = "edge-list")]
        format: Format,
    },
    /// Sampled verification that 2-arc-strong digraphs have good pairs.
    Sweep {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
        /// Where failing and inconclusive instances are written.
        #[arg(long, default_value = "goodpair-failures")]
        failures_dir: PathBuf,
    },
    /// Exhaustive listing of small labelled digraphs or tournaments.
    Enum {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "any")]
        filter: EnumFilter,
        #[arg(long, default_value = "all")]
        mode: EnumMode,
        /// Group into isomorphism classes and report good-pair existence.
        #[arg(long)]
        classes: bool,
    },
}

#[derive(Debug, Args)]
pub struct Input {
    /// Edge-list or digraph6 file; `-` reads stdin.
    pub file: PathBuf,
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value = "mixed")]
    pub model: GenKind,
    #[arg(long, default_value_t = 0.3)]
    pub p: f64,
    #[arg(long)]
    pub seed: u64,
}

impl ModelArgs {
    fn model(&self) -> Result<GenModel> {
        GenModel::new(self.model, self.p, self.seed)
    }
}

/// Parses `args` (program name first) and runs the verb, returning the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_INPUT
                }
            };
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn read_digraph(path: &Path) -> Result<Digraph> {
    let text = read_text(path)?;
    parse_digraph(&text, Format::sniff(&text))
}

fn read_text(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Error::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
    }
}

fn set_json(s: VertexSet) -> serde_json::Value {
    json!(s.iter().collect::<Vec<_>>())
}

fn path_json(p: &Dipath) -> serde_json::Value {
    json!(p.vertices())
}

fn emit(out: &mut dyn Write, value: &serde_json::Value) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(value)?)?;
    Ok(())
}

fn outcome_code(o: &ExactOutcome) -> i32 {
    match o {
        ExactOutcome::Found(_) => EXIT_OK,
        ExactOutcome::NoneExists => EXIT_NONE,
        ExactOutcome::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn outcome_json(o: &ExactOutcome) -> serde_json::Value {
    match o {
        ExactOutcome::Found(c) => json!({"status": "found", "cert": c}),
        ExactOutcome::NoneExists => json!({"status": "none"}),
        ExactOutcome::Inconclusive => json!({"status": "inconclusive"}),
    }
}

fn write_outcome(out: &mut dyn Write, o: &ExactOutcome) -> Result<()> {
    match o {
        ExactOutcome::Found(c) => writeln!(out, "{}", c.to_json_pretty())?,
        ExactOutcome::NoneExists => writeln!(out, "NONE")?,
        ExactOutcome::Inconclusive => writeln!(out, "INCONCLUSIVE")?,
    }
    Ok(())
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let json = cli.json;
    match &cli.command {
        Command::Lambda(input) => {
            let d = read_digraph(&input.file)?;
            let (lambda, w) = arc_connectivity(&d)?;
            if json {
                emit(out, &json!({"lambda": lambda, "witness": w}))?;
            } else {
                writeln!(out, "{lambda}")?;
                writeln!(out, "{w}")?;
            }
            Ok(EXIT_OK)
        }
        Command::Paths { input, s, t } => {
            let d = read_digraph(&input.file)?;
            let p = max_arc_disjoint_paths(&d, *s, *t)?;
            if json {
                let paths: Vec<_> = p.paths.iter().map(path_json).collect();
                emit(
                    out,
                    &json!({"source": s, "sink": t, "value": p.value, "paths": paths, "cut": set_json(p.source_side)}),
                )?;
            } else {
                writeln!(out, "{}", p.value)?;
                for path in &p.paths {
                    writeln!(out, "{path}")?;
                }
                writeln!(out, "cut X={} d+(X)={}", p.source_side, p.value)?;
            }
            Ok(EXIT_OK)
        }
        Command::Edmonds { input, z, k } => {
            let d = read_digraph(&input.file)?;
            match edmonds_branchings(&d, *z, *k)? {
                BranchingPacking::Branchings(bs) => {
                    if json {
                        emit(out, &json!({"status": "found", "branchings": bs}))?;
                    } else {
                        for b in &bs {
                            writeln!(out, "{b}")?;
                        }
                    }
                    Ok(EXIT_OK)
                }
                BranchingPacking::Cut(w) => {
                    if json {
                        emit(out, &json!({"status": "cut", "witness": w}))?;
                    } else {
                        writeln!(out, "CUT {w}")?;
                    }
                    Ok(EXIT_NONE)
                }
            }
        }
        Command::Goodpair { input, root_out, root_in, budget } => {
            let d = read_digraph(&input.file)?;
            let opts = SearchOptions {
                root_out: *root_out,
                root_in: *root_in,
                ..SearchOptions::default()
            }
            .budget(*budget);
            let search = find_good_pair_exact(&d, opts)?;
            if json {
                let mut v = outcome_json(&search.outcome);
                v["nodes"] = json!(search.nodes);
                emit(out, &v)?;
            } else {
                write_outcome(out, &search.outcome)?;
            }
            Ok(outcome_code(&search.outcome))
        }
        Command::Verify { input, cert } => {
            let d = read_digraph(&input.file)?;
            let c = GoodPairCert::from_json(&read_text(cert)?)?;
            let verdict = verify_good_pair(&d, &c);
            if json {
                let reason = verdict.as_ref().err().map(|e| e.to_string());
                emit(out, &json!({"valid": verdict.is_ok(), "reason": reason}))?;
            } else {
                match &verdict {
                    Ok(()) => writeln!(out, "OK")?,
                    Err(e) => writeln!(out, "INVALID: {e}")?,
                }
            }
            Ok(if verdict.is_ok() { EXIT_OK } else { EXIT_NONE })
        }
        Command::Hamilton { input, longest } => {
            let d = read_digraph(&input.file)?;
            let path = if *longest { Some(longest_dipath(&d)?) } else { hamilton_dipath(&d)? };
            if json {
                emit(out, &json!({"path": path.as_ref().map(path_json)}))?;
            } else {
                match &path {
                    Some(p) => writeln!(out, "{p}")?,
                    None => writeln!(out, "NONE")?,
                }
            }
            Ok(if path.is_some() { EXIT_OK } else { EXIT_NONE })
        }
        Command::Reduce { input, budget } => {
            let d = read_digraph(&input.file)?;
            let r = reduce_and_lift_with(
                &d,
                ReduceOptions {
                    node_budget: *budget,
                    ..ReduceOptions::default()
                },
            );
            if json {
                let mut v = outcome_json(&r.outcome);
                v["closing_rule"] = json!(r.trace.closing_rule());
                v["trace"] = json!(r.trace.steps());
                emit(out, &v)?;
            } else {
                write_outcome(out, &r.outcome)?;
                write!(out, "{}", r.trace.to_json_lines())?;
            }
            Ok(outcome_code(&r.outcome))
        }
        Command::Gen { model, count, format } => {
            let m = model.model()?;
            let graphs = (0..*count)
                .map(|i| {
                    let mi = if *count == 1 { m } else { m.for_instance(i as u64) };
                    random_2arc_strong(model.n, &mi)
                })
                .collect::<Result<Vec<_>>>()?;
            if json {
                let list: Vec<_> = graphs
                    .iter()
                    .map(|d| json!({"n": d.order(), "arcs": d.arcs().map(|(u, v)| [u, v]).collect::<Vec<_>>()}))
                    .collect();
                emit(out, &json!(list))?;
            } else {
                for (i, d) in graphs.iter().enumerate() {
                    if i > 0 && *format == Format::EdgeList {
                        writeln!(out)?;
                    }
                    let text = serialize_digraph(d, *format);
                    write!(out, "{text}")?;
                    if !text.ends_with('\n') {
                        writeln!(out)?;
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Sweep { model, count, jobs, budget, failures_dir } => {
            let m = model.model()?;
            let opts = HarnessOptions {
                jobs: *jobs,
                node_budget: *budget,
            };
            let report = verify_theorem_sample_with(model.n, *count, &m, opts)?;
            let written = write_failures(&report, failures_dir)?;
            for p in &written {
                writeln!(err, "wrote {}", p.display())?;
            }
            if json {
                emit(out, &serde_json::to_value(&report)?)?;
            } else {
                writeln!(
                    out,
                    "n={} model={} p={} seed={}",
                    report.n, report.model, report.p, report.seed
                )?;
                writeln!(
                    out,
                    "tested={} found={} failures={} inconclusive={}",
                    report.tested,
                    report.found,
                    report.failures.len(),
                    report.inconclusive
                )?;
                for (rule, k) in &report.closed_by {
                    writeln!(out, "closed by {rule}: {k}")?;
                }
                for f in &report.failures {
                    writeln!(out, "FAILURE {f}")?;
                }
                writeln!(out, "wall time {:.2}s", report.wall_time_secs)?;
            }
            Ok(if !report.failures.is_empty() {
                EXIT_NONE
            } else if report.inconclusive > 0 {
                EXIT_INCONCLUSIVE
            } else {
                EXIT_OK
            })
        }
        Command::Enum { n, filter, mode, classes } => {
            if *classes {
                let list = iso_classes(*n, *mode, *filter)?;
                if json {
                    emit(out, &json!(list))?;
                } else {
                    for c in &list {
                        writeln!(out, "{} arcs={} labelled={} good_pair={}", c.digraph6, c.arcs, c.labelled, c.good_pair)?;
                    }
                }
            } else {
                let graphs: Vec<String> = enumerate_small(*n, *mode, *filter)?
                    .map(|d| serialize_digraph(&d, Format::Digraph6))
                    .collect();
                if json {
                    emit(out, &json!(graphs))?;
                } else {
                    for g in &graphs {
                        writeln!(out, "{g}")?;
                    }
                }
            }
            Ok(EXIT_OK)
        }
    }
}
