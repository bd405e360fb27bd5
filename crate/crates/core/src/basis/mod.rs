//! Conversions between recurrences, characteristic roots and interpolation bases.
//!
//! A recurrence of order `p` corresponds to the `p` roots of its characteristic
//! polynomial, and each root `ρe^{±iθ}` of multiplicity `m` to the bases
//! `n^k ρ^n cos(nθ)`, `n^k ρ^n sin(nθ)` for `k < m`. Weights on those bases are
//! fixed by `p` initial values.

mod expansion;
mod poly;
mod roots;
mod terms;

pub use expansion::{
    solve_weights, synthesize, SolvedWeights, WeightedExpansion, WeightedTerm, MAX_WEIGHT_CONDITION,
};
pub use poly::{characteristic_polynomial, coefficients_from_polynomial, Polynomial};
pub use roots::{find_roots, Root, RootSet, DEFAULT_CLUSTER_TOL};
pub use terms::{bases_to_coefficients, basis_count, roots_to_bases, BasisTerm};

use crate::error::Result;
use crate::recurrence::{LpCoefficients, LpModel};

/// Recurrence and seed values that regenerate an expansion exactly.
pub fn expansion_to_model(expansion: &WeightedExpansion) -> Result<LpModel> {
    let coefficients = bases_to_coefficients(&expansion.bases())?;
    let initial = synthesize(expansion, coefficients.order())?.into_vec();
    LpModel::new(coefficients, initial)
}

/// `roots_to_bases ∘ find_roots ∘ characteristic_polynomial`.
pub fn coefficients_to_bases(coeffs: &LpCoefficients, cluster_tol: f64) -> Result<Vec<BasisTerm>> {
    roots_to_bases(&find_roots(
        &characteristic_polynomial(coeffs),
        cluster_tol,
    )?)
}
