//! Reduction pipeline: grow a good pair from a small seed subdigraph with
//! the lifting constructions, try the Hamilton-dipath construction on
//! oriented graphs, and fall back to exact search.

use serde::{Deserialize, Serialize};

use super::hamilton::{hamilton_dipaths, pair_from_hamilton, MAX_HAMILTON_ORDER};
use super::pairing::{absorb, absorption_closure, pair_components, spare_vertex, PairingOutcome, SpareRoute};
use super::small::order_four_hypothesis;
use super::transfer::digon_root_transfer;
use super::{checked, PartialPair};
use crate::branching::GoodPairCert;
use crate::digraph::{Digraph, Dipath, VertexSet};
use crate::error::{Error, Result};
use crate::solver::{find_good_pair_exact, ExactOutcome, SearchOptions, DEFAULT_NODE_BUDGET};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    DigonTransfer,
    Absorb,
    ComponentPairing,
    SpareVertex,
    SmallBase,
    Hamilton,
    ExactFallback,
}

impl Rule {
    pub fn as_str(self) -> &'static str {
        match self {
            Rule::DigonTransfer => "digon-transfer",
            Rule::Absorb => "absorb",
            Rule::ComponentPairing => "component-pairing",
            Rule::SpareVertex => "spare-vertex",
            Rule::SmallBase => "small-base",
            Rule::Hamilton => "hamilton",
            Rule::ExactFallback => "exact-fallback",
        }
    }
}

mod hex_mask {
    use crate::digraph::VertexSet;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(set: &VertexSet, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{:#x}", set.bits()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<VertexSet, D::Error> {
        let text = String::deserialize(d)?;
        let digits = text.strip_prefix("0x").unwrap_or(&text);
        u64::from_str_radix(digits, 16)
            .map(VertexSet::from_bits)
            .map_err(serde::de::Error::custom)
    }
}

/// One step of a reduction. Applied steps, read in order, rebuild the
/// certificate; the others record attempts that did not close.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceStep {
    pub rule: Rule,
    /// Vertex set covered once the step is applied.
    #[serde(with = "hex_mask")]
    pub subdigraph: VertexSet,
    pub applied: bool,
    pub note: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
}

impl TraceStep {
    fn new(rule: Rule, subdigraph: VertexSet, applied: bool, note: impl Into<String>) -> Self {
        TraceStep {
            rule,
            subdigraph,
            applied,
            note: note.into(),
            vertex: None,
            path: None,
            budget: None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductionTrace {
    steps: Vec<TraceStep>,
}

impl ReductionTrace {
    pub fn steps(&self) -> &[TraceStep] {
        &self.steps
    }

    pub fn push(&mut self, step: TraceStep) {
        self.steps.push(step);
    }

    /// Rule of the last applied step.
    pub fn closing_rule(&self) -> Option<Rule> {
        self.steps.iter().rev().find(|s| s.applied).map(|s| s.rule)
    }

    pub fn uses(&self, rule: Rule) -> bool {
        self.steps.iter().any(|s| s.applied && s.rule == rule)
    }

    /// One JSON object per line.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for s in &self.steps {
            out.push_str(&serde_json::to_string(s).expect("plain data"));
            out.push('\n');
        }
        out
    }

    pub fn from_json_lines(text: &str) -> Result<Self> {
        let steps = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(serde_json::from_str)
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(ReductionTrace { steps })
    }
}

#[derive(Clone, Debug)]
pub struct Reduction {
    pub outcome: ExactOutcome,
    pub trace: ReductionTrace,
}

impl Reduction {
    pub fn cert(&self) -> Option<&GoodPairCert> {
        self.outcome.cert()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReduceOptions {
    /// Node budget for the exact fallback.
    pub node_budget: u64,
    /// Seeds tried before giving up on the lifting rules.
    pub max_seeds: usize,
    /// Hamilton dipaths tried on oriented graphs.
    pub max_hamilton_paths: usize,
}

impl Default for ReduceOptions {
    fn default() -> Self {
        ReduceOptions {
            node_budget: DEFAULT_NODE_BUDGET,
            max_seeds: 64,
            max_hamilton_paths: 64,
        }
    }
}

pub fn reduce_and_lift(d: &Digraph) -> Reduction {
    reduce_and_lift_with(d, ReduceOptions::default())
}

pub fn reduce_and_lift_with(d: &Digraph, opts: ReduceOptions) -> Reduction {
    let mut trace = ReductionTrace::default();
    let full = d.vertices();

    if d.order() <= 4 {
        if let Some(pair) = exact_on(d, full, opts.node_budget) {
            trace.push(TraceStep::new(Rule::SmallBase, full, true, "whole digraph is a base case"));
            return found(pair.into_cert(), trace);
        }
    } else if let Some(cert) = lift_from_seeds(d, &opts, &mut trace) {
        return found(cert, trace);
    }

    if d.order() > 4 && d.is_oriented() && d.order() <= MAX_HAMILTON_ORDER {
        if let Some(cert) = hamilton_route(d, &opts, &mut trace) {
            return found(cert, trace);
        }
    }

    let budget = opts.node_budget.max(1);
    let search = find_good_pair_exact(d, SearchOptions::default().budget(budget)).expect("valid options");
    let note = match &search.outcome {
        ExactOutcome::Found(_) => format!("found after {} nodes", search.nodes),
        ExactOutcome::NoneExists => format!("exhausted after {} nodes: no good pair", search.nodes),
        ExactOutcome::Inconclusive => format!("budget of {budget} nodes exhausted"),
    };
    let mut step = TraceStep::new(Rule::ExactFallback, full, search.outcome.is_found(), note);
    step.budget = Some(budget);
    trace.push(step);
    Reduction {
        outcome: search.outcome,
        trace,
    }
}

fn found(cert: GoodPairCert, trace: ReductionTrace) -> Reduction {
    Reduction {
        outcome: ExactOutcome::Found(cert),
        trace,
    }
}

fn exact_on(d: &Digraph, set: VertexSet, budget: u64) -> Option<PartialPair> {
    let (sub, _) = d.induced_subdigraph(set).ok()?;
    let cert = find_good_pair_exact(&sub, SearchOptions::default().budget(budget.max(1)))
        .ok()?
        .outcome
        .into_cert()?;
    Some(PartialPair::lift(&cert, set, d.order()))
}

/// Seed candidates: digons, then 3-sets spanning at least four arcs, then
/// 4-sets meeting the order-4 hypothesis, each in ascending order.
fn seed_candidates(d: &Digraph) -> impl Iterator<Item = VertexSet> + '_ {
    let n = d.order();
    let digons = d
        .arcs()
        .filter(|&(u, v)| u < v && d.has_arc(v, u))
        .map(|(u, v)| VertexSet::from_iter([u, v]));
    let triples = subsets(n, 3).filter(move |&s| arcs_inside(d, s) >= 4);
    let quads = subsets(n, 4).filter(move |&s| {
        d.induced_subdigraph(s)
            .map(|(sub, _)| order_four_hypothesis(&sub))
            .unwrap_or(false)
    });
    digons.chain(triples).chain(quads)
}

fn arcs_inside(d: &Digraph, s: VertexSet) -> usize {
    s.iter().map(|v| d.out_neighbours(v).intersection(s).len()).sum()
}

/// `k`-subsets of `0..n` in lexicographic order.
fn subsets(n: usize, k: usize) -> impl Iterator<Item = VertexSet> {
    let mut idx: Vec<usize> = (0..k).collect();
    let mut done = k > n;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let set = idx.iter().copied().collect();
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                done = true;
                break;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(set)
    })
}

fn lift_from_seeds(d: &Digraph, opts: &ReduceOptions, trace: &mut ReductionTrace) -> Option<GoodPairCert> {
    let full = d.vertices();
    let mut tried: Vec<VertexSet> = Vec::new();
    let mut seeds_used = 0;
    for seed in seed_candidates(d) {
        if seeds_used >= opts.max_seeds {
            break;
        }
        let grown = seed.union(absorption_closure(d, seed));
        if tried.contains(&grown) {
            continue;
        }
        let Some(mut pair) = exact_on(d, seed, opts.node_budget) else {
            continue;
        };
        seeds_used += 1;
        tried.push(grown);

        let mut steps = vec![TraceStep::new(Rule::SmallBase, seed, true, format!("seed {seed}"))];
        let extra = grown.difference(seed);
        if !extra.is_empty() {
            absorb(d, &mut pair, extra).expect("closure vertices are absorbable");
            steps.push(TraceStep::new(Rule::Absorb, grown, true, format!("absorbed {extra}")));
        }
        if grown == full {
            trace.steps.extend(steps);
            return Some(pair.into_cert());
        }

        let x = d.in_neighbourhood(grown);
        let y = d.out_neighbourhood(grown);
        let rest = full.difference(grown).difference(x.union(y));
        match rest.len() {
            0 => match pair_components(d, pair, x, y) {
                PairingOutcome::Paired { cert, .. } => {
                    let note = format!("X = {x}, Y = {y}");
                    steps.push(TraceStep::new(Rule::ComponentPairing, full, true, note));
                    trace.steps.extend(steps);
                    return Some(cert);
                }
                PairingOutcome::ConditionNotMet { side, component, arcs } => {
                    let note = format!(
                        "seed {seed}, Q = {grown}: component {component} on side {side:?} has {arcs} crossing arcs"
                    );
                    trace.push(TraceStep::new(Rule::ComponentPairing, grown, false, note));
                }
            },
            1 => {
                let w = rest.first().expect("one vertex");
                match spare_vertex(d, &pair, x, y, w) {
                    Some((cert, route)) => {
                        let route = match route {
                            SpareRoute::FromY((u, v)) => format!("arc {u}->{v} from Y"),
                            SpareRoute::IntoX((u, v)) => format!("arc {u}->{v} into X"),
                            SpareRoute::Direct { tail, head } => format!("arcs {tail}->{w} and {w}->{head}"),
                        };
                        let mut step = TraceStep::new(Rule::SpareVertex, full, true, format!("spare vertex {w} via {route}"));
                        step.vertex = Some(w);
                        steps.push(step);
                        trace.steps.extend(steps);
                        return Some(cert);
                    }
                    None => {
                        let note = format!("seed {seed}, Q = {grown}: spare vertex {w} not placed");
                        trace.push(TraceStep::new(Rule::SpareVertex, grown, false, note));
                    }
                }
            }
            k => {
                let note = format!("seed {seed}, Q = {grown}: {k} vertices outside Q and its neighbourhoods");
                trace.push(TraceStep::new(Rule::Absorb, grown, false, note));
            }
        }
    }
    if seeds_used == 0 {
        trace.push(TraceStep::new(Rule::SmallBase, VertexSet::EMPTY, false, "no seed subdigraph with a good pair"));
    }
    None
}

fn hamilton_route(d: &Digraph, opts: &ReduceOptions, trace: &mut ReductionTrace) -> Option<GoodPairCert> {
    let paths = hamilton_dipaths(d, opts.max_hamilton_paths).ok()?;
    for p in &paths {
        if let Ok(Some(cert)) = pair_from_hamilton(d, p) {
            let mut step = TraceStep::new(Rule::Hamilton, d.vertices(), true, format!("Hamilton dipath {p}"));
            step.path = Some(p.vertices().to_vec());
            trace.push(step);
            return Some(cert);
        }
    }
    let note = if paths.is_empty() {
        "no Hamilton dipath".to_string()
    } else {
        format!("{} Hamilton dipaths tried, none splits into two components", paths.len())
    };
    trace.push(TraceStep::new(Rule::Hamilton, d.vertices(), false, note));
    None
}

/// Rebuilds the certificate from the applied steps of `trace`.
pub fn replay(d: &Digraph, trace: &ReductionTrace) -> Result<Option<GoodPairCert>> {
    let full = d.vertices();
    let mut pair: Option<PartialPair> = None;
    let mut cert: Option<GoodPairCert> = None;
    let bad = |i: usize, msg: &str| Error::precondition(format!("trace step {i}: {msg}"));

    for (i, step) in trace.steps.iter().enumerate().filter(|(_, s)| s.applied) {
        if !step.subdigraph.is_subset(full) {
            return Err(bad(i, "vertex set exceeds the digraph"));
        }
        match step.rule {
            Rule::SmallBase => {
                let budget = step.budget.unwrap_or(DEFAULT_NODE_BUDGET);
                let p = exact_on(d, step.subdigraph, budget).ok_or_else(|| bad(i, "seed has no good pair"))?;
                cert = (step.subdigraph == full).then(|| p.clone().into_cert());
                pair = Some(p);
            }
            Rule::Absorb => {
                let p = pair.as_mut().ok_or_else(|| bad(i, "nothing to absorb into"))?;
                let extra = step.subdigraph.difference(p.set);
                absorb(d, p, extra)?;
                cert = (p.set == full).then(|| p.clone().into_cert());
            }
            Rule::ComponentPairing => {
                let p = pair.take().ok_or_else(|| bad(i, "no subdigraph pair"))?;
                let (x, y) = (d.in_neighbourhood(p.set), d.out_neighbourhood(p.set));
                cert = match pair_components(d, p, x, y) {
                    PairingOutcome::Paired { cert, .. } => Some(cert),
                    PairingOutcome::ConditionNotMet { .. } => return Err(bad(i, "pairing condition not met")),
                };
            }
            Rule::SpareVertex => {
                let p = pair.take().ok_or_else(|| bad(i, "no subdigraph pair"))?;
                let w = step.vertex.ok_or_else(|| bad(i, "missing spare vertex"))?;
                let (x, y) = (d.in_neighbourhood(p.set), d.out_neighbourhood(p.set));
                cert = Some(spare_vertex(d, &p, x, y, w).ok_or_else(|| bad(i, "spare vertex not placed"))?.0);
            }
            Rule::Hamilton => {
                let path = step.path.clone().ok_or_else(|| bad(i, "missing path"))?;
                let p = Dipath::new(d, path, false)?;
                cert = Some(pair_from_hamilton(d, &p)?.ok_or_else(|| bad(i, "Hamilton construction declined"))?);
            }
            Rule::ExactFallback => {
                let budget = step.budget.unwrap_or(DEFAULT_NODE_BUDGET);
                let search = find_good_pair_exact(d, SearchOptions::default().budget(budget))?;
                cert = Some(search.outcome.into_cert().ok_or_else(|| bad(i, "exact search found nothing"))?);
            }
            Rule::DigonTransfer => {
                let t = step.vertex.ok_or_else(|| bad(i, "missing target vertex"))?;
                let c = cert.as_ref().ok_or_else(|| bad(i, "no certificate to transfer"))?;
                cert = Some(digon_root_transfer(d, c, t)?);
            }
        }
        if cert.is_some() {
            pair = None;
        }
    }
    Ok(cert.and_then(|c| checked(d, c)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branching::verify_good_pair;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn bidirected(n: usize) -> Digraph {
        Digraph::from_arcs(n, (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))).unwrap()
    }

    #[test]
    fn subsets_enumerate_combinations() {
        assert_eq!(subsets(5, 3).count(), 10);
        assert_eq!(subsets(4, 4).count(), 1);
        assert_eq!(subsets(3, 4).count(), 0);
        let first: Vec<_> = subsets(4, 2).take(3).collect();
        assert_eq!(first[2], VertexSet::from_iter([0, 3]));
    }

    #[test]
    fn bidirected_k5_closes_by_absorption() {
        let d = bidirected(5);
        let r = reduce_and_lift(&d);
        let cert = r.cert().unwrap();
        assert_eq!(verify_good_pair(&d, cert), Ok(()));
        assert_eq!(r.trace.closing_rule(), Some(Rule::Absorb));
        assert!(!r.trace.uses(Rule::ExactFallback));
        assert_eq!(r.trace.steps()[0].subdigraph, VertexSet::from_iter([0, 1]));
        assert_eq!(replay(&d, &r.trace).unwrap().as_ref(), Some(cert));
    }

    #[test]
    fn c3_exhausts_fallback() {
        let d = Digraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let r = reduce_and_lift(&d);
        assert_eq!(r.outcome, ExactOutcome::NoneExists);
        let last = r.trace.steps().last().unwrap();
        assert_eq!(last.rule, Rule::ExactFallback);
        assert!(!last.applied);
        assert_eq!(replay(&d, &r.trace).unwrap(), None);
    }

    #[test]
    fn trace_json_lines_round_trip() {
        let d = bidirected(6);
        let r = reduce_and_lift(&d);
        let text = r.trace.to_json_lines();
        assert!(text.lines().next().unwrap().contains("\"subdigraph\":\"0x3\""));
        assert!(text.contains("\"rule\":\"small-base\""));
        let back = ReductionTrace::from_json_lines(&text).unwrap();
        assert_eq!(back, r.trace);
        assert!(ReductionTrace::from_json_lines("{\"rule\":\"magic\"}").is_err());
    }

    #[test]
    fn agrees_with_exact_and_replays() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..400 {
            let n = rng.gen_range(2..=8);
            let p = rng.gen_range(0.2..0.8);
            let mut d = Digraph::empty(n).unwrap();
            for u in 0..n {
                for v in 0..n {
                    if u != v && rng.gen_bool(p) {
                        d.add_arc(u, v).unwrap();
                    }
                }
            }
            let r = reduce_and_lift(&d);
            let exact = find_good_pair_exact(&d, SearchOptions::default()).unwrap().outcome;
            assert_eq!(r.outcome.is_found(), exact.is_found());
            if let Some(c) = r.cert() {
                assert_eq!(verify_good_pair(&d, c), Ok(()));
                assert_eq!(replay(&d, &r.trace).unwrap().as_ref(), Some(c));
            }
        }
    }

    #[test]
    fn replay_applies_digon_transfer() {
        let d = bidirected(4);
        let mut trace = ReductionTrace::default();
        let mut step = TraceStep::new(Rule::ExactFallback, d.vertices(), true, "");
        step.budget = Some(1000);
        trace.push(step);
        let base = replay(&d, &trace).unwrap().unwrap();
        assert_eq!(base.roots(), (0, 0));
        let mut step = TraceStep::new(Rule::DigonTransfer, d.vertices(), true, "");
        step.vertex = Some(2);
        trace.push(step);
        assert_eq!(replay(&d, &trace).unwrap().unwrap().roots(), (2, 2));
    }
}
