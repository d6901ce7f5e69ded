//! Seeded generators for 2-arc-strong digraphs.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::branching::GoodPairCert;
use crate::connectivity::{arc_connectivity, is_k_arc_strong};
use crate::digraph::{Arc, Digraph, VertexSet, MAX_VERTICES};
use crate::error::{Error, Result};
use crate::solver::{find_good_pair_exact, SearchOptions};

/// Attempts with fresh derived seeds before a generator reports a stall.
const MAX_ATTEMPTS: u64 = 256;
/// Rejection-sampling attempts for tournaments.
const MAX_TOURNAMENT_ATTEMPTS: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenKind {
    /// Independent arcs with probability `p`, repaired up to `λ ≥ 2`.
    GnpRepair,
    /// Each vertex pair carries one arc of random direction with
    /// probability `p`; repair never creates a digon.
    OrientedGnpRepair,
    /// Uniform labelled tournaments, resampled until 2-arc-strong.
    Tournament,
    /// `GnpRepair` followed by [`arc_minimize`].
    ArcMinimal,
    /// `GnpRepair` or `ArcMinimal`, chosen by the low bit of the seed.
    Mixed,
}

impl GenKind {
    pub const ALL: [GenKind; 5] = [
        GenKind::GnpRepair,
        GenKind::OrientedGnpRepair,
        GenKind::Tournament,
        GenKind::ArcMinimal,
        GenKind::Mixed,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            GenKind::GnpRepair => "gnp-repair",
            GenKind::OrientedGnpRepair => "oriented-gnp-repair",
            GenKind::Tournament => "tournament",
            GenKind::ArcMinimal => "arc-minimal",
            GenKind::Mixed => "mixed",
        }
    }
}

impl fmt::Display for GenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GenKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        GenKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| {
                let names: Vec<_> = GenKind::ALL.iter().map(|k| k.as_str()).collect();
                format!("unknown model `{s}` (expected one of {})", names.join(", "))
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenModel {
    pub kind: GenKind,
    pub p: f64,
    pub seed: u64,
}

impl GenModel {
    pub fn new(kind: GenKind, p: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::precondition(format!("arc probability {p} outside [0, 1]")));
        }
        Ok(GenModel { kind, p, seed })
    }

    /// The same model with the seed of instance `i`.
    pub fn for_instance(&self, i: u64) -> GenModel {
        GenModel {
            seed: instance_seed(self.seed, i),
            ..*self
        }
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of the `i`-th instance of a stream seeded with `seed`.
pub fn instance_seed(seed: u64, i: u64) -> u64 {
    splitmix64(seed ^ splitmix64(i))
}

fn check_order(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::precondition(format!("generator needs at least {min} vertices, got {n}")));
    }
    if n > MAX_VERTICES {
        return Err(Error::VertexCount(n));
    }
    Ok(())
}

/// A random digraph with `λ ≥ 2`, a pure function of `(n, model)`.
pub fn random_2arc_strong(n: usize, model: &GenModel) -> Result<Digraph> {
    check_order(n, 3)?;
    GenModel::new(model.kind, model.p, model.seed)?;
    match model.kind {
        GenKind::GnpRepair => with_retries(n, model, |rng| Ok(repair(gnp(n, model.p, rng), |_, _| true))),
        GenKind::OrientedGnpRepair => {
            check_order(n, 5)?;
            with_retries(n, model, |rng| {
                Ok(repair(oriented_gnp(n, model.p, rng), |d: &Digraph, (u, v)| !d.has_arc(v, u)))
            })
        }
        GenKind::Tournament => random_2arc_strong_tournament(n, model.seed),
        GenKind::ArcMinimal => {
            let base = random_2arc_strong(n, &GenModel { kind: GenKind::GnpRepair, ..*model })?;
            arc_minimize(&base, splitmix64(model.seed))
        }
        GenKind::Mixed => {
            let kind = if model.seed & 1 == 0 { GenKind::GnpRepair } else { GenKind::ArcMinimal };
            random_2arc_strong(n, &GenModel { kind, ..*model })
        }
    }
}

fn with_retries<F>(n: usize, model: &GenModel, mut attempt: F) -> Result<Digraph>
where
    F: FnMut(&mut ChaCha8Rng) -> Result<Option<Digraph>>,
{
    for k in 0..MAX_ATTEMPTS {
        let seed = if k == 0 { model.seed } else { instance_seed(model.seed, k) };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        if let Some(d) = attempt(&mut rng)? {
            return Ok(d);
        }
    }
    Err(Error::Generation(format!(
        "{} on {n} vertices with p = {} and seed {}",
        model.kind, model.p, model.seed
    )))
}

fn gnp(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Digraph {
    let mut d = Digraph::empty(n).expect("order checked");
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(p) {
                d.add_arc(u, v).expect("in range");
            }
        }
    }
    d
}

fn oriented_gnp(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Digraph {
    let mut d = Digraph::empty(n).expect("order checked");
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                let (a, b) = if rng.gen_bool(0.5) { (u, v) } else { (v, u) };
                d.add_arc(a, b).expect("in range");
            }
        }
    }
    d
}

/// Adds the lowest allowed missing arc across a deficient cut until
/// `λ ≥ 2`; `None` when some deficient cut admits no allowed arc.
fn repair(mut d: Digraph, allowed: impl Fn(&Digraph, Arc) -> bool) -> Option<Digraph> {
    loop {
        let (lambda, witness) = arc_connectivity(&d).expect("order at least 2");
        if lambda >= 2 {
            return Some(d);
        }
        let x = witness.set;
        let rest = d.vertices().difference(x);
        let arc = x
            .iter()
            .flat_map(|u| rest.iter().map(move |v| (u, v)))
            .find(|&(u, v)| !d.has_arc(u, v) && allowed(&d, (u, v)))?;
        d.add_arc(arc.0, arc.1).expect("in range");
    }
}

fn random_2arc_strong_tournament(n: usize, seed: u64) -> Result<Digraph> {
    check_order(n, 5)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_TOURNAMENT_ATTEMPTS {
        let d = oriented_gnp(n, 1.0, &mut rng);
        if is_k_arc_strong(&d, 2) {
            return Ok(d);
        }
    }
    Err(Error::Generation(format!("no 2-arc-strong tournament on {n} vertices from seed {seed}")))
}

/// Removes arcs in a seeded random order while `λ ≥ 2` survives. One pass
/// suffices: an arc that cannot go stays necessary as others disappear.
pub fn arc_minimize(d: &Digraph, seed: u64) -> Result<Digraph> {
    if d.order() < 2 || !is_k_arc_strong(d, 2) {
        return Err(Error::precondition("arc_minimize needs a 2-arc-strong digraph"));
    }
    let mut arcs: Vec<Arc> = d.arcs().collect();
    arcs.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut out = d.clone();
    for (u, v) in arcs {
        out.remove_arc(u, v);
        if !is_k_arc_strong(&out, 2) {
            out.add_arc(u, v).expect("restoring an arc");
        }
    }
    Ok(out)
}

/// A 2-arc-strong digraph with a subdigraph `Q` on `0..nq` that has a
/// good pair, `X = N^-(Q)` on the next `nx` vertices and `Y = N^+(Q)` on
/// the last `ny`, so that every vertex lies in `Q ∪ X ∪ Y`.
#[derive(Clone, Debug)]
pub struct SplitInstance {
    pub digraph: Digraph,
    pub q: VertexSet,
    pub x: VertexSet,
    pub y: VertexSet,
    /// Good pair of `D[Q]` in dense numbering.
    pub cert_q: GoodPairCert,
}

pub fn random_split_instance(nq: usize, nx: usize, ny: usize, p: f64, seed: u64) -> Result<SplitInstance> {
    if nq == 0 || nx == 0 || ny == 0 {
        return Err(Error::precondition("Q, X and Y must all be nonempty"));
    }
    let n = nq + nx + ny;
    check_order(n, 3)?;
    let model = GenModel::new(GenKind::GnpRepair, p, seed)?;
    let q = VertexSet::full(nq);
    let x = VertexSet::full(nq + nx).difference(q);
    let y = VertexSet::full(n).difference(q.union(x));
    // arcs Q -> X and Y -> Q would move vertices between the neighbourhoods
    let fits = move |(u, v): Arc| !(q.contains(u) && x.contains(v)) && !(y.contains(u) && q.contains(v));
    let allowed = move |_: &Digraph, a: Arc| fits(a);
    let pairs = (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)));
    let everything = Digraph::from_arcs(n, pairs.filter(|&a| fits(a)))?;
    if !is_k_arc_strong(&everything, 2) {
        return Err(Error::precondition(format!(
            "no 2-arc-strong digraph has |Q| = {nq}, |X| = {nx}, |Y| = {ny}"
        )));
    }

    let mut cert_q = None;
    let d = with_retries(n, &model, |rng| {
        let mut d = gnp(n, p, rng);
        for (u, v) in d.arcs().collect::<Vec<_>>() {
            if !allowed(&d, (u, v)) {
                d.remove_arc(u, v);
            }
        }
        for v in x.iter() {
            if d.out_neighbours(v).intersection(q).is_empty() {
                d.add_arc(v, rng.gen_range(0..nq)).expect("in range");
            }
        }
        for v in y.iter() {
            if d.in_neighbours(v).intersection(q).is_empty() {
                d.add_arc(rng.gen_range(0..nq), v).expect("in range");
            }
        }
        let Some(d) = repair(d, allowed) else { return Ok(None) };
        let (sub, _) = d.induced_subdigraph(q)?;
        match find_good_pair_exact(&sub, SearchOptions::default())?.outcome.into_cert() {
            Some(c) => {
                cert_q = Some(c);
                Ok(Some(d))
            }
            None => Ok(None),
        }
    })?;
    Ok(SplitInstance {
        digraph: d,
        q,
        x,
        y,
        cert_q: cert_q.expect("set with the accepted digraph"),
    })
}
