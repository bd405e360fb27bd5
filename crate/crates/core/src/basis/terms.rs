use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;

use super::poly::{coefficients_from_polynomial, Polynomial};
use super::roots::RootSet;
use crate::error::{LpError, Result};
use crate::recurrence::LpCoefficients;

/// Roots with modulus below this fraction of the largest root count as zero.
const ZERO_ROOT_REL: f64 = 1e-12;
const ANGLE_SNAP: f64 = 4.0 * f64::EPSILON * PI;

/// One interpolation basis `n^k ρ^n cos(nθ)` (and, for `0 < θ < π`, its sine
/// companion `n^k ρ^n sin(nθ)`), in canonical form `ρ > 0`, `θ ∈ [0, π]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisTerm {
    rho: f64,
    theta: f64,
    power: u32,
}

impl BasisTerm {
    pub fn new(rho: f64, theta: f64, power: u32) -> Result<Self> {
        if !(rho > 0.0 && rho.is_finite()) {
            return Err(LpError::InvalidArgument(format!(
                "basis modulus must be positive and finite, got {rho}"
            )));
        }
        if !(0.0..=PI).contains(&theta) {
            return Err(LpError::InvalidArgument(format!(
                "basis angle {theta} outside [0, π]; use BasisTerm::canonical"
            )));
        }
        Ok(Self {
            rho,
            theta: snap_angle(theta),
            power,
        })
    }

    /// Folds an arbitrary real `(ρ, θ)` into canonical form.
    ///
    /// Returns the term and the factor (±1) the sine weight must be multiplied by
    /// so that the represented sequence is unchanged.
    pub fn canonical(rho: f64, theta: f64, power: u32) -> Result<(Self, f64)> {
        if !rho.is_finite() || !theta.is_finite() {
            return Err(LpError::InvalidArgument(
                "basis parameters must be finite".into(),
            ));
        }
        // (-ρ)^n = ρ^n cos(nπ) + ..., i.e. a sign flip is a half turn
        let (rho, theta) = if rho < 0.0 {
            (-rho, theta + PI)
        } else {
            (rho, theta)
        };
        let mut t = theta.rem_euclid(TAU);
        let mut sin_sign = 1.0;
        if t > PI {
            t = TAU - t;
            sin_sign = -1.0;
        }
        Ok((Self::new(rho, t.min(PI), power)?, sin_sign))
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn power(&self) -> u32 {
        self.power
    }

    /// `θ ∈ {0, π}`: the sine companion vanishes and the term is a single basis.
    pub fn is_real(&self) -> bool {
        self.theta == 0.0 || self.theta == PI
    }

    /// Number of scalar bases this term contributes (1 or 2).
    pub fn width(&self) -> usize {
        if self.is_real() {
            1
        } else {
            2
        }
    }

    fn same_root(&self, other: &Self) -> bool {
        self.rho == other.rho && self.theta == other.theta
    }

    /// `n^k ρ^n`.
    pub(crate) fn envelope(&self, n: usize) -> f64 {
        let growth = self.rho.powi(n as i32);
        if self.power == 0 {
            growth
        } else {
            (n as f64).powi(self.power as i32) * growth
        }
    }

    /// `(cos(nθ), sin(nθ))`, exact at `θ ∈ {0, π/2, π}`.
    pub(crate) fn phase(&self, n: usize) -> (f64, f64) {
        if self.theta == 0.0 {
            (1.0, 0.0)
        } else if self.theta == PI {
            (if n.is_multiple_of(2) { 1.0 } else { -1.0 }, 0.0)
        } else if self.theta == FRAC_PI_2 {
            [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)][n % 4]
        } else {
            let (s, c) = (n as f64 * self.theta).sin_cos();
            (c, s)
        }
    }
}

fn snap_angle(theta: f64) -> f64 {
    if theta <= ANGLE_SNAP {
        0.0
    } else if PI - theta <= ANGLE_SNAP {
        PI
    } else {
        theta
    }
}

/// Scalar basis count (sine and cosine counted separately); equals the order
/// of the recurrence the terms span.
pub fn basis_count(bases: &[BasisTerm]) -> usize {
    bases.iter().map(BasisTerm::width).sum()
}

/// Each root `ρe^{±iθ}` of multiplicity `m` becomes the terms `(ρ, θ, 0..m)`.
pub fn roots_to_bases(roots: &RootSet) -> Result<Vec<BasisTerm>> {
    let largest = roots
        .roots()
        .iter()
        .map(|r| r.value.norm())
        .fold(1.0_f64, f64::max);
    let mut out = Vec::new();
    for root in roots.roots() {
        let z: Complex64 = root.value;
        if z.norm() <= ZERO_ROOT_REL * largest {
            return Err(LpError::UnsupportedRoot);
        }
        if z.im < 0.0 {
            continue;
        }
        let (rho, theta) = if z.im == 0.0 {
            if z.re > 0.0 {
                (z.re, 0.0)
            } else {
                (-z.re, PI)
            }
        } else {
            (z.norm(), z.arg())
        };
        for k in 0..root.multiplicity {
            out.push(BasisTerm::new(rho, theta, k as u32)?);
        }
    }
    Ok(out)
}

/// Groups terms by root and checks that each group's powers are exactly `0..m`.
pub(crate) fn root_groups(bases: &[BasisTerm]) -> Result<Vec<(BasisTerm, usize)>> {
    if bases.is_empty() {
        return Err(LpError::InvalidArgument("basis list is empty".into()));
    }
    let mut groups: Vec<(BasisTerm, Vec<u32>)> = Vec::new();
    for b in bases {
        match groups.iter_mut().find(|(g, _)| g.same_root(b)) {
            Some((_, powers)) => {
                if powers.contains(&b.power) {
                    return Err(LpError::InvalidArgument(format!(
                        "duplicate basis (ρ={}, θ={}, k={})",
                        b.rho, b.theta, b.power
                    )));
                }
                powers.push(b.power);
            }
            None => groups.push((*b, vec![b.power])),
        }
    }
    groups
        .into_iter()
        .map(|(g, mut powers)| {
            powers.sort_unstable();
            if powers.iter().enumerate().any(|(i, &k)| k as usize != i) {
                return Err(LpError::InvalidArgument(format!(
                    "powers for (ρ={}, θ={}) must run contiguously from 0, got {powers:?}",
                    g.rho, g.theta
                )));
            }
            Ok((g, powers.len()))
        })
        .collect()
}

/// The recurrence whose solution space is spanned by `bases`.
///
/// Factors are multiplied in a fixed order, so the result does not depend on
/// the order of `bases`.
pub fn bases_to_coefficients(bases: &[BasisTerm]) -> Result<LpCoefficients> {
    let mut groups = root_groups(bases)?;
    groups.sort_by(|(a, _), (b, _)| a.rho.total_cmp(&b.rho).then(a.theta.total_cmp(&b.theta)));
    let mut poly = Polynomial::one();
    for (term, multiplicity) in groups {
        for _ in 0..multiplicity {
            if term.theta == 0.0 {
                poly.mul_linear(term.rho);
            } else if term.theta == PI {
                poly.mul_linear(-term.rho);
            } else {
                // (x - ρe^{iθ})(x - ρe^{-iθ})
                poly.mul_quadratic(-2.0 * term.rho * term.theta.cos(), term.rho * term.rho);
            }
        }
    }
    coefficients_from_polynomial(&poly)
}
