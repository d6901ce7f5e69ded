//! Brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use goodpair::branching::{enumerate_branchings, BranchingKind};
use goodpair::{Digraph, VertexSet};
use rand::Rng;

pub fn random_digraph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Digraph {
    let mut d = Digraph::empty(n).unwrap();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(p) {
                d.add_arc(u, v).unwrap();
            }
        }
    }
    d
}

pub fn out_degree_of_set(d: &Digraph, s: VertexSet) -> usize {
    s.iter().map(|u| d.out_neighbours(u).difference(s).len()).sum()
}

pub fn in_degree_of_set(d: &Digraph, s: VertexSet) -> usize {
    s.iter().map(|u| d.in_neighbours(u).difference(s).len()).sum()
}

fn proper_subsets(n: usize) -> impl Iterator<Item = VertexSet> {
    (1..(1u64 << n) - 1).map(VertexSet::from_bits)
}

/// Minimum `d^+(X)` over all proper nonempty `X`.
pub fn lambda_by_subsets(d: &Digraph) -> usize {
    proper_subsets(d.order()).map(|s| out_degree_of_set(d, s)).min().unwrap()
}

/// Minimum `d^+(X)` over `X` containing `s` but not `t`.
pub fn min_st_cut(d: &Digraph, s: usize, t: usize) -> usize {
    proper_subsets(d.order())
        .filter(|x| x.contains(s) && !x.contains(t))
        .map(|x| out_degree_of_set(d, x))
        .min()
        .unwrap()
}

/// Minimum `d^-(X)` over nonempty `X ⊆ V - z`.
pub fn min_in_cut_avoiding(d: &Digraph, z: usize) -> usize {
    proper_subsets(d.order())
        .filter(|x| !x.contains(z))
        .map(|x| in_degree_of_set(d, x))
        .min()
        .unwrap()
}

/// Whether some out-branching and some in-branching share no arc, by
/// listing all branchings at every root.
pub fn has_good_pair_by_cross_product(d: &Digraph) -> bool {
    let n = d.order();
    let arcs_of = |kind| -> Vec<u64> {
        let mut masks = Vec::new();
        for r in 0..n {
            for b in enumerate_branchings(d, kind, r, usize::MAX).unwrap() {
                masks.push(b.arcs().fold(0u64, |m, (u, v)| m | 1 << (u * n + v)));
            }
        }
        masks
    };
    let outs = arcs_of(BranchingKind::Out);
    let ins = arcs_of(BranchingKind::In);
    outs.iter().any(|o| ins.iter().any(|i| o & i == 0))
}
