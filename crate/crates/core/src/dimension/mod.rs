//! Small-order corpora, WL-dimension estimates and verification runs.

mod corpus;
mod estimate;
mod harness;

pub use corpus::{
    all_schemes, cayley_canonical_mask, cayley_class_size, enumerate_graphs, enumerate_schemes,
    Corpus, CorpusOptions,
};
pub use estimate::{estimate_dimension, DimensionReport, EstimateOptions, Witness};
pub use harness::{
    translations, verify_main_theorem, verify_reduction, verify_reduction_at, MainRow, MainSummary,
    ReductionCase, ReductionReport,
};
