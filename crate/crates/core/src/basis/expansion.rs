use nalgebra::{DMatrix, DVector};

use super::terms::{basis_count, root_groups, BasisTerm};
use crate::error::{LpError, Result};
use crate::signal::Signal;

/// Systems with a larger condition estimate are refused by [`solve_weights`].
pub const MAX_WEIGHT_CONDITION: f64 = 1e12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedTerm {
    pub basis: BasisTerm,
    /// Weight of `n^k ρ^n cos(nθ)`.
    pub b: f64,
    /// Weight of `n^k ρ^n sin(nθ)`; zero at `θ ∈ {0, π}`.
    pub c: f64,
}

/// A finite weighted sum of interpolation bases with pairwise distinct terms.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct WeightedExpansion {
    terms: Vec<WeightedTerm>,
}

impl WeightedExpansion {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a term. The sine weight is dropped for `θ ∈ {0, π}` where its basis vanishes.
    pub fn push(&mut self, basis: BasisTerm, b: f64, c: f64) -> Result<()> {
        if !b.is_finite() || !c.is_finite() {
            return Err(LpError::InvalidArgument("weights must be finite".into()));
        }
        if self.terms.iter().any(|t| t.basis == basis) {
            return Err(LpError::InvalidArgument(format!(
                "duplicate basis (ρ={}, θ={}, k={})",
                basis.rho(),
                basis.theta(),
                basis.power()
            )));
        }
        let c = if basis.is_real() { 0.0 } else { c };
        self.terms.push(WeightedTerm { basis, b, c });
        Ok(())
    }

    /// Adds a term given by arbitrary real `(ρ, θ)`, folding it to canonical form.
    pub fn push_raw(&mut self, rho: f64, theta: f64, power: u32, b: f64, c: f64) -> Result<()> {
        let (basis, sin_sign) = BasisTerm::canonical(rho, theta, power)?;
        self.push(basis, b, c * sin_sign)
    }

    pub fn from_terms<I: IntoIterator<Item = (BasisTerm, f64, f64)>>(terms: I) -> Result<Self> {
        let mut e = Self::new();
        for (basis, b, c) in terms {
            e.push(basis, b, c)?;
        }
        Ok(e)
    }

    pub fn terms(&self) -> &[WeightedTerm] {
        &self.terms
    }

    pub fn bases(&self) -> Vec<BasisTerm> {
        self.terms.iter().map(|t| t.basis).collect()
    }

    pub fn value_at(&self, n: usize) -> f64 {
        self.terms
            .iter()
            .map(|t| {
                let (cos, sin) = t.basis.phase(n);
                t.basis.envelope(n) * (t.b * cos + t.c * sin)
            })
            .sum()
    }
}

/// Weights recovered from initial values, with the conditioning of the solve.
#[derive(Debug, Clone, PartialEq)]
pub struct SolvedWeights {
    pub expansion: WeightedExpansion,
    pub condition_estimate: f64,
}

/// Evaluates the expansion at `n = 0..count-1`.
pub fn synthesize(expansion: &WeightedExpansion, count: usize) -> Result<Signal> {
    let samples: Vec<f64> = (0..count).map(|n| expansion.value_at(n)).collect();
    if let Some(index) = samples.iter().position(|v| !v.is_finite()) {
        return Err(LpError::NumericOverflow { index });
    }
    Signal::new(samples)
}

/// Solves for the weights that make the bases reproduce `initial` at `n = 0..p-1`.
pub fn solve_weights(bases: &[BasisTerm], initial: &[f64]) -> Result<SolvedWeights> {
    root_groups(bases)?;
    let p = basis_count(bases);
    if initial.len() != p {
        return Err(LpError::InvalidArgument(format!(
            "{p} scalar bases need {p} initial values, got {}",
            initial.len()
        )));
    }
    if let Some(index) = initial.iter().position(|v| !v.is_finite()) {
        return Err(LpError::NonFinite { index });
    }

    let mut m = DMatrix::<f64>::zeros(p, p);
    let mut col = 0;
    for basis in bases {
        for n in 0..p {
            let (cos, sin) = basis.phase(n);
            let env = basis.envelope(n);
            m[(n, col)] = env * cos;
            if !basis.is_real() {
                m[(n, col + 1)] = env * sin;
            }
        }
        col += basis.width();
    }
    if m.iter().any(|v| !v.is_finite()) {
        return Err(LpError::NumericOverflow { index: p - 1 });
    }

    let sv = m.clone().svd(false, false).singular_values;
    let smax = sv.max();
    let smin = sv.min();
    let condition = if smin > 0.0 {
        smax / smin
    } else {
        f64::INFINITY
    };
    if !(condition <= MAX_WEIGHT_CONDITION) {
        return Err(LpError::IllConditioned { condition });
    }

    let rhs = DVector::from_column_slice(initial);
    let w = m.lu().solve(&rhs).ok_or(LpError::IllConditioned {
        condition: f64::INFINITY,
    })?;

    let mut expansion = WeightedExpansion::new();
    let mut col = 0;
    for basis in bases {
        let c = if basis.is_real() { 0.0 } else { w[col + 1] };
        expansion.push(*basis, w[col], c)?;
        col += basis.width();
    }
    Ok(SolvedWeights {
        expansion,
        condition_estimate: condition,
    })
}
