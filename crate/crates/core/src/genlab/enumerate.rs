//! Exhaustive enumeration of small labelled digraphs and tournaments.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::connectivity::is_k_arc_strong;
use crate::digraph::{Arc, Digraph};
use crate::error::{Error, Result};
use crate::format::{serialize_digraph, Format};
use crate::scc::strong_decomposition;
use crate::solver::{find_good_pair_exact, SearchOptions};

pub const MAX_ALL_ORDER: usize = 4;
pub const MAX_TOURNAMENT_ORDER: usize = 7;
pub const MAX_CANONICAL_ORDER: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EnumMode {
    /// Every labelled digraph.
    All,
    /// Every labelled tournament.
    Tournaments,
}

impl EnumMode {
    pub fn max_order(self) -> usize {
        match self {
            EnumMode::All => MAX_ALL_ORDER,
            EnumMode::Tournaments => MAX_TOURNAMENT_ORDER,
        }
    }
}

impl FromStr for EnumMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "all" => Ok(EnumMode::All),
            "tournaments" | "tournament" => Ok(EnumMode::Tournaments),
            other => Err(format!("unknown mode `{other}` (expected all or tournaments)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EnumFilter {
    Any,
    MinArcs(usize),
    Strong,
    TwoArcStrong,
    /// Three vertices and at least four arcs.
    DenseTriple,
    /// Four vertices, at least six arcs, and `δ^0 ≥ 1` or semicomplete.
    OrderFour,
}

impl EnumFilter {
    pub fn accepts(self, d: &Digraph) -> bool {
        match self {
            EnumFilter::Any => true,
            EnumFilter::MinArcs(k) => d.arc_count() >= k,
            EnumFilter::Strong => strong_decomposition(d).is_strong(),
            EnumFilter::TwoArcStrong => d.order() >= 2 && is_k_arc_strong(d, 2),
            EnumFilter::DenseTriple => d.order() == 3 && d.arc_count() >= 4,
            EnumFilter::OrderFour => crate::constructions::order_four_hypothesis(d),
        }
    }
}

impl fmt::Display for EnumFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnumFilter::Any => f.write_str("any"),
            EnumFilter::MinArcs(k) => write!(f, "min-arcs={k}"),
            EnumFilter::Strong => f.write_str("strong"),
            EnumFilter::TwoArcStrong => f.write_str("2-arc-strong"),
            EnumFilter::DenseTriple => f.write_str("dense-triple"),
            EnumFilter::OrderFour => f.write_str("order-four"),
        }
    }
}

impl FromStr for EnumFilter {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if let Some(k) = s.strip_prefix("min-arcs=").or_else(|| s.strip_prefix("min-arcs:")) {
            return k
                .parse()
                .map(EnumFilter::MinArcs)
                .map_err(|_| format!("bad arc count `{k}`"));
        }
        match s {
            "any" => Ok(EnumFilter::Any),
            "strong" => Ok(EnumFilter::Strong),
            "2-arc-strong" => Ok(EnumFilter::TwoArcStrong),
            "dense-triple" => Ok(EnumFilter::DenseTriple),
            "order-four" => Ok(EnumFilter::OrderFour),
            other => Err(format!(
                "unknown filter `{other}` (expected any, min-arcs=K, strong, 2-arc-strong, dense_triple or order_four)"
            )),
        }
    }
}

/// Every labelled digraph (or tournament) on `n` vertices passing
/// `filter`, each exactly once, in increasing order of its arc bitmask.
pub fn enumerate_small(
    n: usize,
    mode: EnumMode,
    filter: EnumFilter,
) -> Result<Box<dyn Iterator<Item = Digraph> + Send>> {
    if n == 0 {
        return Err(Error::VertexCount(0));
    }
    if n > mode.max_order() {
        return Err(Error::TooLarge {
            what: "enumerate_small",
            n,
            max: mode.max_order(),
        });
    }
    let slots: Vec<Arc> = match mode {
        EnumMode::All => (0..n)
            .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
            .collect(),
        EnumMode::Tournaments => (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect(),
    };
    let total = 1u64 << slots.len();
    Ok(Box::new((0..total).filter_map(move |mask| {
        let mut d = Digraph::empty(n).expect("order checked");
        for (i, &(u, v)) in slots.iter().enumerate() {
            let bit = mask >> i & 1 == 1;
            match (mode, bit) {
                (EnumMode::All, true) | (EnumMode::Tournaments, true) => d.add_arc(u, v),
                (EnumMode::All, false) => Ok(false),
                (EnumMode::Tournaments, false) => d.add_arc(v, u),
            }
            .expect("in range");
        }
        filter.accepts(&d).then_some(d)
    })))
}

/// Row-major adjacency matrix packed most significant entry first.
fn matrix_key(d: &Digraph, perm: &[usize]) -> u64 {
    let n = d.order();
    let mut key = 0u64;
    for u in 0..n {
        for v in 0..n {
            key = key << 1 | d.has_arc(perm[u], perm[v]) as u64;
        }
    }
    key
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    heap_permute(&mut p, n, &mut out);
    out
}

fn heap_permute(p: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(p.clone());
        return;
    }
    for i in 0..k {
        heap_permute(p, k - 1, out);
        let j = if k.is_multiple_of(2) { i } else { 0 };
        p.swap(j, k - 1);
    }
}

/// The relabelling of `d` whose adjacency matrix, read row by row, is
/// lexicographically smallest.
pub fn canonical_form(d: &Digraph) -> Result<Digraph> {
    let n = d.order();
    if n > MAX_CANONICAL_ORDER {
        return Err(Error::TooLarge {
            what: "canonical_form",
            n,
            max: MAX_CANONICAL_ORDER,
        });
    }
    let best = permutations(n)
        .into_iter()
        .min_by_key(|perm| matrix_key(d, perm))
        .expect("at least one permutation");
    let arcs = (0..n).flat_map(|u| (0..n).map(move |v| (u, v)));
    Digraph::from_arcs(n, arcs.filter(|&(u, v)| d.has_arc(best[u], best[v])))
}

/// One isomorphism class seen during an enumeration.
#[derive(Clone, Debug, Serialize)]
pub struct IsoClass {
    pub digraph6: String,
    pub arcs: usize,
    /// Labelled members of the class met by the enumeration.
    pub labelled: usize,
    pub good_pair: bool,
}

/// Isomorphism classes of the enumerated digraphs, sorted by canonical
/// digraph6 string.
pub fn iso_classes(n: usize, mode: EnumMode, filter: EnumFilter) -> Result<Vec<IsoClass>> {
    if n > MAX_CANONICAL_ORDER {
        return Err(Error::TooLarge {
            what: "iso_classes",
            n,
            max: MAX_CANONICAL_ORDER,
        });
    }
    let mut classes: std::collections::BTreeMap<String, IsoClass> = Default::default();
    for d in enumerate_small(n, mode, filter)? {
        let c = canonical_form(&d)?;
        let key = serialize_digraph(&c, Format::Digraph6);
        classes
            .entry(key.clone())
            .or_insert_with(|| IsoClass {
                digraph6: key,
                arcs: c.arc_count(),
                labelled: 0,
                good_pair: find_good_pair_exact(&c, SearchOptions::default())
                    .expect("valid options")
                    .outcome
                    .is_found(),
            })
            .labelled += 1;
    }
    Ok(classes.into_values().collect())
}
