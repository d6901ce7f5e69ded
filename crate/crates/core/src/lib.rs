//! Arc-disjoint out- and in-branchings ("good pairs") in digraphs.

pub mod branching;
pub mod cli;
pub mod connectivity;
pub mod constructions;
pub mod digraph;
pub mod error;
pub mod format;
pub mod genlab;
pub mod scc;
pub mod solver;

pub use branching::{verify_branching, verify_good_pair, Branching, BranchingKind, GoodPairCert};
pub use connectivity::{arc_connectivity, edmonds_branchings, max_arc_disjoint_paths, CutWitness};
pub use digraph::{Arc, Dipath, Digraph, VertexSet, MAX_VERTICES};
pub use error::{Error, Result};
pub use format::{parse_digraph, serialize_digraph, Format};
pub use scc::{strong_decomposition, StrongDecomposition};
pub use solver::{find_good_pair_exact, ExactOutcome, ExactSearch, SearchOptions};
pub use constructions::{
    absorb_external_vertices, component_pairing, digon_root_transfer, hamilton_dipath, pair_from_hamilton,
    pair_with_spare_vertex, reduce_and_lift, small_good_pair, PairingOutcome, Reduction, ReductionTrace, Rule,
};
pub use genlab::{random_2arc_strong, verify_theorem_sample, GenKind, GenModel, VerificationReport};
