//! Exact verification of nested (twisted) Frobenius extensions of
//! Λ×ℤ₂-graded superalgebras presented by structure constants.
//!
//! The usual entry points are the builtin towers in [`constructions`] and
//! [`nested::verify_main_theorem`], which returns a [`nested::Certificate`].

pub mod algebra;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod frobenius;
pub mod grading;
pub mod homspace;
pub mod linalg;
pub mod nested;
pub mod report;

pub use algebra::{AlgebraSpec, Element, Embedding, Tower};
pub use error::{Error, Result};
pub use frobenius::{DualGenerators, Freeness, NakayamaMap, TraceData};
pub use grading::{koszul_sign, Degree, Parity, Sign};
pub use homspace::{HomElement, ModuleSpec};
pub use linalg::{Matrix, Scalar, SparseVec, Subspace};
pub use nested::{verify_main_theorem, Certificate, NestedProblem};
pub use report::{Check, Report};
