//! Coherent configurations, Weisfeiler-Leman refinement and the structure
//! theory of circulant schemes, with exhaustive small-order checks.

pub mod algebra;
pub mod arith;
pub mod circulant;
pub mod coloring;
pub mod config;
pub mod dimension;
pub mod error;
pub mod io;
mod refine;
pub mod wl;

pub use algebra::{
    algebraic_automorphisms, enumerate_algebraic_isos, find_isomorphism, tuple_extension,
    AlgebraicIso, CombIso, TupleExtension,
};
pub use coloring::{validate, Coloring, ValidationReport, Violation};
pub use config::{CoherentConfig, Fiber, Parabolic, Relation, Tensor};
pub use error::{Error, Result};
