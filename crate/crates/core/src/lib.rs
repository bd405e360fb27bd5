//! Linear prediction viewed through interpolation bases.
//!
//! An order-`p` recurrence `f(n) = Σ a_k f(n-k)` generates exactly the sums of
//! `n^k ρ^n cos(nθ)` and `n^k ρ^n sin(nθ)` fixed by its characteristic roots.
//! This crate converts between the two views ([`basis`]), fits recurrences by
//! least squares ([`lsq`]), and constructs them directly from a DCT-1 analysis
//! ([`dct`]) or from the backward difference operator ([`diffop`]).

// `!(a <= b)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod basis;
pub mod dct;
pub mod diffop;
pub mod error;
pub mod exec;
pub mod lsq;
pub mod recurrence;
pub mod report;
pub mod signal;

pub use error::{LpError, Result};
pub use exec::Execution;
pub use recurrence::{iterate, residuals, LpCoefficients, LpModel};
pub use report::{ApproxReport, Method};
pub use signal::{mse, Grid, Signal};
