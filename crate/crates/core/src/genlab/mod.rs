//! Instance generation and the sampled verification harness.

mod enumerate;
mod generate;
mod harness;

pub use enumerate::{
    canonical_form, enumerate_small, iso_classes, EnumFilter, EnumMode, IsoClass, MAX_ALL_ORDER,
    MAX_CANONICAL_ORDER, MAX_TOURNAMENT_ORDER,
};
pub use generate::{
    arc_minimize, instance_seed, random_2arc_strong, random_split_instance, SplitInstance, GenKind, GenModel,
};
pub use harness::{
    verify_theorem_sample, verify_theorem_sample_with, write_failures, HarnessOptions, VerificationReport,
    MAX_SAMPLE_ORDER, MIN_SAMPLE_ORDER,
};
