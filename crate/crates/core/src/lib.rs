//! Linear coding schemes for the (A, ε) function-update problem.
//!
//! A receiver stores `A·x` for a full-row-rank `A` over GF(q). The source
//! vector changes to `x + e` with at most ε nonzero entries, and the sender,
//! knowing only `x + e`, transmits a short codeword `H·(x + e)` from which
//! the receiver recovers `A·(x + e)`. This crate enumerates the interference
//! sets that decide whether an encoder works, bounds and computes the optimal
//! codelength, builds encoders (naive, drop-one, striped constructions from
//! classical codes, subspace families and companion-matrix expansion),
//! decodes, and reduces every instance to a functional index coding problem.

pub mod codes;
pub mod construct;
pub mod error;
pub mod exec;
pub mod fic;
pub mod format;
pub mod gf;
pub mod matrix;
pub mod oracle;
pub mod problem;
pub mod sim;
pub mod vectors;

pub use error::{Error, Result};
pub use exec::{Exec, Limits};
pub use gf::{FieldElement, FieldSpec};
pub use matrix::Matrix;
pub use problem::{EncoderScheme, FunctionUpdateProblem, InterferenceSets, Method, Validity};
