//! Solutions in arithmetic progression of `ax² + by² + cz² = dxyz` over the
//! ring of integers of `Q` or of a quadratic field.
//!
//! The [`solver`] module runs the integral-points pipeline on the cubic
//! curve that parametrizes a.p. triples; [`oracle`] is an independent
//! bounded brute force used to cross-check it; [`scan`] drives batch runs
//! over families of `(d, D)` and regenerates the published solution tables.

pub mod error;
pub mod normeq;
pub mod oracle;
pub mod qfield;
pub mod scan;
pub mod solver;
pub mod uniteq;

pub use error::{Error, Result};
pub use qfield::{AlgInt, AlgNum, FieldDesc, UnitGroup};
pub use solver::{solve_ap, APTriple, MRInstance, SolutionReport};
