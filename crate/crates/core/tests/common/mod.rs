//! Random inputs shared by the property and acceptance suites.
#![allow(dead_code)]

use std::f64::consts::PI;

use lpkit::basis::{basis_count, BasisTerm, WeightedExpansion};
use lpkit::Signal;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random basis set: `ρ ∈ [0.5, 1.5]`, `θ ∈ {0, π/6, ..., π}`, powers `≤ 2`,
/// scalar basis count in `1..=max_order`, distinct roots at least `separation` apart.
pub fn random_bases<R: Rng>(rng: &mut R, max_order: usize, separation: f64) -> Vec<BasisTerm> {
    random_bases_in(rng, max_order, separation, (0.5, 1.5), 3)
}

/// As [`random_bases`], with `ρ` in `rho` and at most `max_multiplicity` copies of a root.
pub fn random_bases_in<R: Rng>(
    rng: &mut R,
    max_order: usize,
    separation: f64,
    rho: (f64, f64),
    max_multiplicity: u32,
) -> Vec<BasisTerm> {
    let target = rng.random_range(1..=max_order);
    let mut bases: Vec<BasisTerm> = Vec::new();
    let mut roots: Vec<(f64, f64)> = Vec::new();
    let mut attempts = 0;
    while basis_count(&bases) < target && attempts < 1000 {
        attempts += 1;
        let (rho_lo, rho_hi) = rho;
        let rho = rng.random_range(rho_lo..=rho_hi);
        let theta = PI * rng.random_range(0..=6) as f64 / 6.0;
        let multiplicity = rng.random_range(1..=max_multiplicity);
        let term = BasisTerm::new(rho, theta, 0).unwrap();
        let width = term.width() * multiplicity as usize;
        if basis_count(&bases) + width > target {
            continue;
        }
        let z = (rho * theta.cos(), rho * theta.sin());
        let far = roots.iter().all(|&(x, y)| {
            // conjugates are separated by 2ρ sin θ automatically
            let d = ((x - z.0).powi(2) + (y - z.1).powi(2)).sqrt();
            let d_conj = ((x - z.0).powi(2) + (y + z.1).powi(2)).sqrt();
            d > 0.0 && d >= separation && d_conj >= separation
        });
        let self_far = term.is_real() || 2.0 * z.1 >= separation;
        if !far || !self_far {
            continue;
        }
        roots.push(z);
        for k in 0..multiplicity {
            bases.push(BasisTerm::new(rho, theta, k).unwrap());
        }
    }
    bases
}

/// Non-zero weight with magnitude in `[0.5, 2]`.
pub fn nonzero_weight<R: Rng>(rng: &mut R) -> f64 {
    let w = rng.random_range(0.5..=2.0);
    if rng.random_bool(0.5) {
        w
    } else {
        -w
    }
}

pub fn random_expansion<R: Rng>(rng: &mut R, bases: &[BasisTerm]) -> WeightedExpansion {
    let mut e = WeightedExpansion::new();
    for &b in bases {
        let cos = nonzero_weight(rng);
        let sin = if b.is_real() {
            0.0
        } else {
            nonzero_weight(rng)
        };
        e.push(b, cos, sin).unwrap();
    }
    e
}

pub fn uniform_signal<R: Rng>(rng: &mut R, len: usize) -> Signal {
    Signal::new((0..len).map(|_| rng.random_range(-1.0..=1.0)).collect()).unwrap()
}

pub fn sup_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
}

/// `max |a - b| / max(‖b‖∞, tiny)`.
pub fn relative_error(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let diff = a
        .iter()
        .zip(b)
        .fold(0.0_f64, |m, (x, y)| m.max((x - y).abs()));
    diff / sup_norm(b).max(f64::MIN_POSITIVE)
}
