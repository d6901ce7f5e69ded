//! Constructions that lift good pairs of subdigraphs to the whole digraph,
//! the Hamilton-dipath construction, and the reduction pipeline tying them
//! together.

mod hamilton;
mod pairing;
mod reduce;
mod small;
mod transfer;

pub use hamilton::{hamilton_dipath, hamilton_dipaths, longest_dipath, pair_from_hamilton, MAX_HAMILTON_ORDER};
pub use pairing::{
    absorb_external_vertices, component_pairing, pair_with_spare_vertex, PairingArtifacts, PairingOutcome, Side,
};
pub use reduce::{
    reduce_and_lift, reduce_and_lift_with, replay, ReduceOptions, Reduction, ReductionTrace, Rule, TraceStep,
};
pub use small::{exceptional_order4_classes, order_four_hypothesis, small_good_pair};
pub use transfer::digon_root_transfer;

use crate::branching::{verify_good_pair, Branching, BranchingKind, GoodPairCert};
use crate::digraph::{Arc, Digraph, VertexSet};
use crate::error::{Error, Result};

/// A good pair of `D[set]` kept in the numbering of the host digraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct PartialPair {
    pub set: VertexSet,
    pub out_root: usize,
    pub in_root: usize,
    pub out_parent: Vec<Option<Arc>>,
    pub in_parent: Vec<Option<Arc>>,
}

impl PartialPair {
    /// Lifts a certificate of `D[set]` (dense numbering, ascending) into
    /// host numbering for a host of order `n`.
    pub fn lift(cert: &GoodPairCert, set: VertexSet, n: usize) -> Self {
        let map: Vec<usize> = set.iter().collect();
        PartialPair {
            set,
            out_root: map[cert.out_branching.root()],
            in_root: map[cert.in_branching.root()],
            out_parent: cert.out_branching.lift(&map, n),
            in_parent: cert.in_branching.lift(&map, n),
        }
    }

    /// The certificate of `D[set]` in dense numbering.
    pub fn restrict(&self) -> GoodPairCert {
        let n = self.out_parent.len();
        let mut index = vec![usize::MAX; n];
        for (i, v) in self.set.iter().enumerate() {
            index[v] = i;
        }
        let dense = |parent: &[Option<Arc>]| -> Vec<Option<Arc>> {
            self.set
                .iter()
                .map(|v| parent[v].map(|(a, b)| (index[a], index[b])))
                .collect()
        };
        GoodPairCert {
            out_branching: Branching::new(BranchingKind::Out, index[self.out_root], dense(&self.out_parent)),
            in_branching: Branching::new(BranchingKind::In, index[self.in_root], dense(&self.in_parent)),
        }
    }

    pub fn into_cert(self) -> GoodPairCert {
        GoodPairCert {
            out_branching: Branching::new(BranchingKind::Out, self.out_root, self.out_parent),
            in_branching: Branching::new(BranchingKind::In, self.in_root, self.in_parent),
        }
    }

    /// The pair read in the reverse digraph: out and in swap roles.
    pub fn reversed(&self) -> Self {
        let flip = |p: &[Option<Arc>]| p.iter().map(|a| a.map(|(u, v)| (v, u))).collect();
        PartialPair {
            set: self.set,
            out_root: self.in_root,
            in_root: self.out_root,
            out_parent: flip(&self.in_parent),
            in_parent: flip(&self.out_parent),
        }
    }

    pub fn add_out(&mut self, (u, v): Arc) {
        self.out_parent[v] = Some((u, v));
        self.set.insert(v);
    }

    pub fn add_in(&mut self, (u, v): Arc) {
        self.in_parent[u] = Some((u, v));
        self.set.insert(u);
    }
}

/// Checks `cert` against `D[q]` and lifts it.
pub(crate) fn lift_checked(d: &Digraph, q: VertexSet, cert: &GoodPairCert) -> Result<PartialPair> {
    if q.is_empty() {
        return Err(Error::EmptySet);
    }
    if !q.is_subset(d.vertices()) {
        return Err(Error::precondition(format!("{q} is not a vertex set of the digraph")));
    }
    let (dq, _) = d.induced_subdigraph(q)?;
    verify_good_pair(&dq, cert).map_err(|e| Error::Certificate(format!("not a good pair of D[{q}]: {e}")))?;
    Ok(PartialPair::lift(cert, q, d.order()))
}

/// Returns the certificate after checking it, or `None` when the
/// construction produced something invalid.
pub(crate) fn checked(d: &Digraph, cert: GoodPairCert) -> Option<GoodPairCert> {
    verify_good_pair(d, &cert).ok().map(|_| cert)
}
