//! Linear prediction built from DCT-1 analysis.
//!
//! Any `N >= 2` samples are the cosine sum `f(n) = Σ_{k<N} b_k cos(nθ_k)` with
//! `θ_k = πk/(N-1)`. Keeping the `p` largest `|b_k|` gives an approximant whose
//! characteristic roots are `1`, `-1` and the pairs `e^{±iθ_k}`, so it is
//! iterated exactly by a recurrence. The squared weights of the dropped terms
//! are reported as the error bound.

use std::f64::consts::PI;

use crate::basis::{bases_to_coefficients, basis_count, BasisTerm};
use crate::error::{LpError, Result};
use crate::recurrence::LpModel;
use crate::report::{ApproxReport, Method};
use crate::signal::{max_abs, Signal};

/// Coefficients below this fraction of `max |b_k|` are treated as zero.
pub const DEFAULT_ZERO_TOL_REL: f64 = 1e-12;

/// Weights `b_0..b_{N-1}` of the cosine-sum interpolant of an `N`-sample signal.
#[derive(Debug, Clone, PartialEq)]
pub struct Dct1Coefficients {
    b: Vec<f64>,
}

impl Dct1Coefficients {
    pub fn new(b: Vec<f64>) -> Result<Self> {
        if b.len() < 2 {
            return Err(LpError::InvalidArgument(format!(
                "DCT-1 needs at least 2 coefficients, got {}",
                b.len()
            )));
        }
        if let Some(index) = b.iter().position(|v| !v.is_finite()) {
            return Err(LpError::NonFinite { index });
        }
        Ok(Self { b })
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.b
    }

    pub fn len(&self) -> usize {
        self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `θ_k = πk/(N-1)`, exactly `0` and `π` at the ends.
    pub fn theta(&self, k: usize) -> f64 {
        let last = self.b.len() - 1;
        match k {
            0 => 0.0,
            k if k == last => PI,
            k => PI * k as f64 / last as f64,
        }
    }

    /// Canonical basis term carrying coefficient `k`.
    pub fn basis(&self, k: usize) -> BasisTerm {
        BasisTerm::new(1.0, self.theta(k), 0).expect("θ_k lies in [0, π]")
    }
}

/// `cos(πj/(N-1))` for `j < 2(N-1)`; products `n·k` are reduced modulo the period.
struct CosTable {
    values: Vec<f64>,
}

impl CosTable {
    fn new(n: usize) -> Self {
        let m = n - 1;
        let period = 2 * m;
        let values = (0..period)
            .map(|j| match j {
                0 => 1.0,
                j if j == m => -1.0,
                j if 2 * j == m => 0.0,
                j if 2 * j == 3 * m => 0.0,
                j => (PI * j as f64 / m as f64).cos(),
            })
            .collect();
        Self { values }
    }

    fn cos(&self, n: usize, k: usize) -> f64 {
        let period = self.values.len();
        self.values[((n % period) * (k % period)) % period]
    }
}

/// DCT-1 analysis in the unnormalized synthesis convention above.
pub fn dct1_forward(signal: &Signal) -> Result<Dct1Coefficients> {
    let f = signal.samples();
    let n = f.len();
    if n < 2 {
        return Err(LpError::InvalidArgument(format!(
            "DCT-1 needs N >= 2, got {n}"
        )));
    }
    let table = CosTable::new(n);
    let last = n - 1;
    let edge = |i: usize| if i == 0 || i == last { 0.5 } else { 1.0 };
    let scale = 2.0 / last as f64;
    let b = (0..n)
        .map(|k| {
            let sum: f64 = (0..n).map(|i| edge(i) * f[i] * table.cos(i, k)).sum();
            scale * edge(k) * sum
        })
        .collect();
    Dct1Coefficients::new(b)
}

/// Evaluates the cosine sum at `n = 0..count-1`; beyond `N-1` it extrapolates periodically.
pub fn dct1_synthesize(coeffs: &Dct1Coefficients, count: usize) -> Result<Signal> {
    let table = CosTable::new(coeffs.len());
    let b = coeffs.as_slice();
    let samples = (0..count)
        .map(|n| {
            b.iter()
                .enumerate()
                .map(|(k, bk)| bk * table.cos(n, k))
                .sum()
        })
        .collect();
    Signal::new(samples)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelectionResult {
    /// Indices of the kept coefficients, largest `|b_k|` first.
    pub selected: Vec<usize>,
    /// Remaining non-zero indices, in the same order.
    pub rejected: Vec<usize>,
    /// `Σ_{rejected} b_k²`.
    pub bound: f64,
    /// Number of non-zero coefficients `N_I`.
    pub nonzero: usize,
}

/// Keeps the `p` largest-magnitude non-zero coefficients; ties go to the smaller index.
///
/// `zero_tol` defaults to `1e-12 · max |b_k|`.
pub fn select_top_p(
    coeffs: &Dct1Coefficients,
    p: usize,
    zero_tol: Option<f64>,
) -> Result<SelectionResult> {
    let b = coeffs.as_slice();
    let tol = zero_tol.unwrap_or(DEFAULT_ZERO_TOL_REL * max_abs(b));
    if !(tol >= 0.0) {
        return Err(LpError::InvalidArgument(format!(
            "zero tolerance must be non-negative, got {tol}"
        )));
    }
    let mut order: Vec<usize> = (0..b.len()).filter(|&k| b[k].abs() > tol).collect();
    let nonzero = order.len();
    if p == 0 || p > nonzero {
        return Err(LpError::InvalidArgument(format!(
            "cannot select {p} bases from {nonzero} non-zero coefficients"
        )));
    }
    order.sort_by(|&i, &j| b[j].abs().total_cmp(&b[i].abs()).then(i.cmp(&j)));
    let rejected = order.split_off(p);
    let bound = rejected.iter().fold(0.0, |s, &k| s + b[k] * b[k]);
    Ok(SelectionResult {
        selected: order,
        rejected,
        bound,
        nonzero,
    })
}

/// The truncated cosine sum `f̂(n) = Σ_{k∈selected} b_k cos(nθ_k)`.
pub fn truncated_values(
    coeffs: &Dct1Coefficients,
    sel: &SelectionResult,
    count: usize,
) -> Vec<f64> {
    let table = CosTable::new(coeffs.len());
    let b = coeffs.as_slice();
    (0..count)
        .map(|n| sel.selected.iter().map(|&k| b[k] * table.cos(n, k)).sum())
        .collect()
}

/// Recurrence that iterates the truncated cosine sum, seeded with its first values.
///
/// Order is `2·(interior selections) + (selections among k = 0, N-1)`. The report
/// compares `f̂` with `signal` over all `N` samples and carries the selection bound.
pub fn construct_lp_from_selection(
    signal: &Signal,
    coeffs: &Dct1Coefficients,
    sel: &SelectionResult,
) -> Result<(LpModel, ApproxReport)> {
    if signal.len() != coeffs.len() {
        return Err(LpError::InvalidArgument(format!(
            "signal has {} samples but the transform has {} coefficients",
            signal.len(),
            coeffs.len()
        )));
    }
    if sel.selected.is_empty() || sel.selected.iter().any(|&k| k >= coeffs.len()) {
        return Err(LpError::InvalidArgument(
            "selection indices out of range".into(),
        ));
    }
    let bases: Vec<BasisTerm> = sel.selected.iter().map(|&k| coeffs.basis(k)).collect();
    let coefficients = bases_to_coefficients(&bases)?;
    let order = basis_count(&bases);
    debug_assert_eq!(order, coefficients.order());

    let n = signal.len();
    let approx = truncated_values(coeffs, sel, n.max(order));
    let model = LpModel::new(coefficients, approx[..order].to_vec())?;
    let residuals = signal
        .samples()
        .iter()
        .zip(&approx)
        .map(|(f, g)| f - g)
        .collect();
    let report = ApproxReport::new(residuals, Some(sel.bound), Method::Dct1, order)?;
    Ok((model, report))
}

/// Forward transform, top-`p` selection and construction in one call.
pub fn construct_dct_lp(
    signal: &Signal,
    p: usize,
) -> Result<(LpModel, ApproxReport, SelectionResult)> {
    let coeffs = dct1_forward(signal)?;
    let sel = select_top_p(&coeffs, p, None)?;
    let (model, report) = construct_lp_from_selection(signal, &coeffs, &sel)?;
    Ok((model, report, sel))
}
