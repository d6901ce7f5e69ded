//! Sampled verification that 2-arc-strong digraphs have good pairs.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::generate::{random_2arc_strong, GenKind, GenModel};
use crate::branching::verify_good_pair;
use crate::constructions::{reduce_and_lift_with, ReduceOptions};
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::format::{serialize_digraph, Format};
use crate::solver::{ExactOutcome, DEFAULT_NODE_BUDGET};

pub const MIN_SAMPLE_ORDER: usize = 5;
pub const MAX_SAMPLE_ORDER: usize = 10;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub n: usize,
    pub model: GenKind,
    pub p: f64,
    pub seed: u64,
    pub tested: usize,
    pub found: usize,
    /// Instances proved to have no good pair, as sorted digraph6 strings.
    pub failures: Vec<String>,
    pub inconclusive: usize,
    pub inconclusive_instances: Vec<String>,
    /// How many certificates each closing rule produced.
    pub closed_by: BTreeMap<String, usize>,
    pub wall_time_secs: f64,
}

impl VerificationReport {
    pub fn is_consistent(&self) -> bool {
        self.tested == self.found + self.failures.len() + self.inconclusive
            && self.inconclusive == self.inconclusive_instances.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HarnessOptions {
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    pub node_budget: u64,
}

impl Default for HarnessOptions {
    fn default() -> Self {
        HarnessOptions {
            jobs: None,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

enum Verdict {
    Found(&'static str),
    None(String),
    Inconclusive(String),
}

pub fn verify_theorem_sample(n: usize, count: usize, model: &GenModel) -> Result<VerificationReport> {
    verify_theorem_sample_with(n, count, model, HarnessOptions::default())
}

/// Generates `count` instances from the stream seeded by `model.seed` and
/// decides each with the reduction pipeline. The report depends only on
/// the arguments, not on scheduling.
pub fn verify_theorem_sample_with(
    n: usize,
    count: usize,
    model: &GenModel,
    opts: HarnessOptions,
) -> Result<VerificationReport> {
    if !(MIN_SAMPLE_ORDER..=MAX_SAMPLE_ORDER).contains(&n) {
        return Err(Error::precondition(format!(
            "sample order must lie in {MIN_SAMPLE_ORDER}..={MAX_SAMPLE_ORDER}, got {n}"
        )));
    }
    let start = Instant::now();
    let reduce = ReduceOptions {
        node_budget: opts.node_budget,
        ..ReduceOptions::default()
    };
    let decide = |i: usize| -> Result<Verdict> {
        let d = random_2arc_strong(n, &model.for_instance(i as u64))?;
        Ok(decide_instance(&d, reduce))
    };
    let verdicts: Vec<Verdict> = match opts.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::precondition(e.to_string()))?
            .install(|| (0..count).into_par_iter().map(decide).collect::<Result<_>>())?,
        None => (0..count).into_par_iter().map(decide).collect::<Result<_>>()?,
    };

    let mut report = VerificationReport {
        n,
        model: model.kind,
        p: model.p,
        seed: model.seed,
        tested: count,
        found: 0,
        failures: Vec::new(),
        inconclusive: 0,
        inconclusive_instances: Vec::new(),
        closed_by: BTreeMap::new(),
        wall_time_secs: 0.0,
    };
    for v in verdicts {
        match v {
            Verdict::Found(rule) => {
                report.found += 1;
                *report.closed_by.entry(rule.to_string()).or_default() += 1;
            }
            Verdict::None(d6) => report.failures.push(d6),
            Verdict::Inconclusive(d6) => {
                report.inconclusive += 1;
                report.inconclusive_instances.push(d6);
            }
        }
    }
    report.failures.sort();
    report.inconclusive_instances.sort();
    report.wall_time_secs = start.elapsed().as_secs_f64();
    Ok(report)
}

fn decide_instance(d: &Digraph, opts: ReduceOptions) -> Verdict {
    let r = reduce_and_lift_with(d, opts);
    let d6 = || serialize_digraph(d, Format::Digraph6);
    match &r.outcome {
        ExactOutcome::Found(cert) => {
            assert_eq!(verify_good_pair(d, cert), Ok(()), "emitted certificate must verify on {}", d6());
            Verdict::Found(r.trace.closing_rule().expect("a found pair has a closing step").as_str())
        }
        ExactOutcome::NoneExists => Verdict::None(d6()),
        ExactOutcome::Inconclusive => Verdict::Inconclusive(d6()),
    }
}

/// Writes every failing and inconclusive instance of `report` to `dir` in
/// edge-list and digraph6 form, returning the paths written.
pub fn write_failures(report: &VerificationReport, dir: &Path) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    let groups = [("failure", &report.failures), ("inconclusive", &report.inconclusive_instances)];
    if groups.iter().all(|(_, list)| list.is_empty()) {
        return Ok(written);
    }
    fs::create_dir_all(dir)?;
    for (tag, list) in groups {
        for (i, d6) in list.iter().enumerate() {
            let d = crate::format::parse_digraph(d6, Format::Digraph6)?;
            let stem = format!("n{}-{}-seed{}-{tag}-{i}", report.n, report.model, report.seed);
            for (ext, text) in [
                ("txt", serialize_digraph(&d, Format::EdgeList)),
                ("d6", format!("{d6}\n")),
            ] {
                let path = dir.join(format!("{stem}.{ext}"));
                fs::write(&path, text)?;
                written.push(path);
            }
        }
    }
    Ok(written)
}
