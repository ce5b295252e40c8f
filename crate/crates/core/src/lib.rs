//! Numerical verification toolkit for intuitionistic fuzzy normed linear
//! spaces over ℝᵈ.
//!
//! Every universally quantified statement is checked on a finite, recorded
//! sample; verdicts carry the plan and budgets they were computed under.

// `!(a < b)` is used on purpose: NaN must fail every check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod continuity;
pub mod error;
pub mod function_sequences;
pub mod mutants;
pub mod norm_algebra;
pub mod point_convergence;
pub mod report;
pub mod sampling;
pub mod space;
pub mod topology;
pub mod vector;

pub use error::{Error, Result};
pub use norm_algebra::{TConorm, TNorm, UnitValue};
pub use report::ViolationReport;
pub use sampling::SamplingPlan;
pub use space::{make_example_family, make_standard_space, AxiomTier, IfnAxiom, IfnSpace};
pub use vector::{ClassicalNorm, Vector};
