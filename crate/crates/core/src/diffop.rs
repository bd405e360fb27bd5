//! Linear prediction from the backward difference operator.
//!
//! The order-p predictor `f̂_p(n) = Σ_{k<p} Δ^k f(n-1)` collapses to the
//! recurrence `a_k = (-1)^{k-1} C(p, k)`, and its one-step error is exactly
//! `Δ^p f(n)`. With `λ = Σ_{i even} C(p, i)` and `ω` the largest range of `f`
//! over any `p+1` consecutive samples, `|Δ^p f(n)| <= λω`.

use crate::error::{LpError, Result};
use crate::exec::{try_map, Execution};
use crate::recurrence::{LpCoefficients, LpModel};
use crate::report::{ApproxReport, Method};
use crate::signal::Signal;

/// Largest order whose binomial coefficients are handled.
pub const MAX_ORDER: usize = 30;

fn check_order(p: usize) -> Result<()> {
    if p > MAX_ORDER {
        return Err(LpError::InvalidArgument(format!(
            "difference order {p} exceeds the supported maximum {MAX_ORDER}"
        )));
    }
    Ok(())
}

/// `C(n, k)` in exact integer arithmetic.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    // each partial product C(n-k+i, i) is an integer
    (1..=k as u64).fold(1u64, |acc, i| acc * (n as u64 - k as u64 + i) / i)
}

/// `Σ_{i even} C(p, i)`; equal to `2^{p-1}` for `p >= 1`.
pub fn lambda(p: usize) -> Result<u64> {
    check_order(p)?;
    Ok((0..=p).step_by(2).map(|i| binomial(p, i)).sum())
}

/// `Δ^k f(m) = Σ_{i=0}^{k} (-1)^i C(k, i) f(m-i)` for `m = k..N-1`.
pub fn forward_difference(signal: &Signal, k: usize) -> Result<Vec<f64>> {
    check_order(k)?;
    let f = signal.samples();
    if f.len() <= k {
        return Err(LpError::InvalidArgument(format!(
            "order {k} difference needs more than {k} samples, got {}",
            f.len()
        )));
    }
    let weights: Vec<f64> = (0..=k)
        .map(|i| {
            let c = binomial(k, i) as f64;
            if i % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect();
    Ok((k..f.len())
        .map(|m| weights.iter().enumerate().map(|(i, w)| w * f[m - i]).sum())
        .collect())
}

/// `a_k = (-1)^{k-1} C(p, k)`, `k = 1..p`.
pub fn diff_lp_coefficients(p: usize) -> Result<LpCoefficients> {
    if p == 0 {
        return Err(LpError::InvalidArgument("order must be at least 1".into()));
    }
    check_order(p)?;
    LpCoefficients::new(
        (1..=p)
            .map(|k| {
                let c = binomial(p, k) as f64;
                if k % 2 == 1 {
                    c
                } else {
                    -c
                }
            })
            .collect(),
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiffBoundReport {
    pub p: usize,
    pub lambda: f64,
    /// `max_n (max - min)` of `f` over the windows `{n-p, ..., n}`.
    pub omega: f64,
    /// `λ²ω²`.
    pub bound: f64,
    pub mse: f64,
    /// `max_n |Δ^p f(n)|`.
    pub max_abs_diff: f64,
}

impl DiffBoundReport {
    /// `max |Δ^p f| <= λω` and `mse <= λ²ω²`, each up to `slack`.
    pub fn holds(&self, slack: f64) -> bool {
        self.max_abs_diff <= self.lambda * self.omega + slack && self.mse <= self.bound + slack
    }
}

fn window_range(f: &[f64], p: usize) -> f64 {
    f.windows(p + 1)
        .map(|w| {
            let (lo, hi) = w
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                    (lo.min(v), hi.max(v))
                });
            hi - lo
        })
        .fold(0.0, f64::max)
}

/// One-step difference-operator prediction from true past samples, over `n = p..N-1`.
pub fn construct_diff_lp(
    signal: &Signal,
    p: usize,
) -> Result<(LpModel, ApproxReport, DiffBoundReport)> {
    let coefficients = diff_lp_coefficients(p)?;
    let f = signal.samples();
    if f.len() <= p {
        return Err(LpError::InvalidArgument(format!(
            "order {p} construction needs more than {p} samples, got {}",
            f.len()
        )));
    }
    let residuals: Vec<f64> = (p..f.len())
        .map(|n| f[n] - coefficients.predict_at(f, n))
        .collect();
    let diff = forward_difference(signal, p)?;
    let max_abs_diff = diff.iter().fold(0.0_f64, |m, d| m.max(d.abs()));
    let lambda = lambda(p)? as f64;
    let omega = window_range(f, p);

    let model = LpModel::new(coefficients, f[..p].to_vec())?;
    let report = ApproxReport::new(residuals, None, Method::DiffOp, p)?;
    let bound = lambda * lambda * omega * omega;
    let bounds = DiffBoundReport {
        p,
        lambda,
        omega,
        bound,
        mse: report.mse,
        max_abs_diff,
    };
    let report = ApproxReport {
        bound: Some(bound),
        ..report
    };
    Ok((model, report, bounds))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefinementRow {
    pub n: usize,
    pub mse: f64,
    pub max_abs_diff: f64,
    pub bound: f64,
}

/// Samples `func` on `[lo, hi]` at each `N` and runs the order-`p` construction.
///
/// Rows are independent; with [`Execution::Parallel`] they are computed concurrently
/// and returned in the order of `n_values`.
pub fn refinement_experiment<F>(
    func: F,
    lo: f64,
    hi: f64,
    p: usize,
    n_values: &[usize],
    exec: Execution,
) -> Result<Vec<RefinementRow>>
where
    F: Fn(f64) -> f64 + Sync + Send,
{
    if !(lo < hi) {
        return Err(LpError::InvalidArgument(format!(
            "interval [{lo}, {hi}] is empty"
        )));
    }
    if let Some(&n) = n_values.iter().find(|&&n| n <= p) {
        return Err(LpError::InvalidArgument(format!(
            "sample count {n} must exceed the order {p}"
        )));
    }
    try_map(exec, n_values, |&n| {
        let signal = Signal::sample(&func, lo, hi, n)?;
        let (_, _, b) = construct_diff_lp(&signal, p)?;
        Ok(RefinementRow {
            n,
            mse: b.mse,
            max_abs_diff: b.max_abs_diff,
            bound: b.bound,
        })
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub p: usize,
    pub mse: f64,
}

/// Runs the construction at each order in `p_values` on the same signal.
pub fn order_sweep(signal: &Signal, p_values: &[usize], exec: Execution) -> Result<Vec<SweepRow>> {
    if let Some(&p) = p_values.iter().find(|&&p| p >= signal.len()) {
        return Err(LpError::InvalidArgument(format!(
            "order {p} must be below the signal length {}",
            signal.len()
        )));
    }
    try_map(exec, p_values, |&p| {
        let (_, report, _) = construct_diff_lp(signal, p)?;
        Ok(SweepRow { p, mse: report.mse })
    })
}
