//! Least-squares estimation of recurrence coefficients, and recovery of the
//! interpolation bases the fitted recurrence selects.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};

use crate::basis::{
    coefficients_to_bases, solve_weights, BasisTerm, WeightedExpansion, DEFAULT_CLUSTER_TOL,
};
use crate::error::{LpError, Result};
use crate::exec::{try_map, Execution};
use crate::recurrence::{residuals, LpCoefficients};
use crate::report::{ApproxReport, Method};
use crate::signal::{mean_square, Signal};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FitMethod {
    /// Minimizes `Σ_{n=p}^{N-1} (f(n) - Σ a_k f(n-k))²` over the observed samples only.
    #[default]
    Covariance,
    /// Biased-autocorrelation Toeplitz system (implicit zero padding).
    Autocorrelation,
}

impl FitMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            FitMethod::Covariance => "covariance",
            FitMethod::Autocorrelation => "autocorrelation",
        }
    }
}

impl fmt::Display for FitMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FitMethod {
    type Err = LpError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "covariance" => Ok(FitMethod::Covariance),
            "autocorrelation" => Ok(FitMethod::Autocorrelation),
            other => Err(LpError::InvalidArgument(format!(
                "unknown fit method {other:?} (expected covariance or autocorrelation)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitDiagnostics {
    /// Mean squared one-step residual over `n = p..N-1`.
    pub residual_mse: f64,
    /// Numerical rank of the system; below `p` the returned fit is the minimum-norm one.
    pub rank: usize,
    /// Condition number of the normal equations over their numerical range.
    pub condition_estimate: f64,
    pub method: FitMethod,
}

impl FitDiagnostics {
    pub fn is_full_rank(&self, order: usize) -> bool {
        self.rank == order
    }
}

/// Least-squares recurrence of the given order.
pub fn fit(
    signal: &Signal,
    order: usize,
    method: FitMethod,
) -> Result<(LpCoefficients, FitDiagnostics)> {
    if order == 0 {
        return Err(LpError::InvalidArgument("order must be at least 1".into()));
    }
    let n = signal.len();
    if n < 2 * order {
        return Err(LpError::InsufficientData {
            needed: 2 * order,
            got: n,
        });
    }
    let f = signal.samples();
    let solution = match method {
        FitMethod::Covariance => {
            let rows = n - order;
            let x = DMatrix::from_fn(rows, order, |r, k| f[r + order - 1 - k]);
            let y = DVector::from_fn(rows, |r, _| f[r + order]);
            graded_solve(x, &y)?
        }
        FitMethod::Autocorrelation => {
            let r: Vec<f64> = (0..=order)
                .map(|lag| (lag..n).map(|i| f[i] * f[i - lag]).sum::<f64>() / n as f64)
                .collect();
            let toeplitz = DMatrix::from_fn(order, order, |i, j| r[i.abs_diff(j)]);
            let rhs = DVector::from_fn(order, |i, _| r[i + 1]);
            min_norm_solve(toeplitz, &rhs, true)?
        }
    };
    let coeffs = LpCoefficients::new(solution.weights)
        .map_err(|_| LpError::NumericFailure("least-squares solution is not finite".into()))?;
    let residual_mse = mean_square(residuals(&coeffs, signal)?.into_iter());
    Ok((
        coeffs,
        FitDiagnostics {
            residual_mse,
            rank: solution.rank,
            condition_estimate: solution.condition,
            method,
        },
    ))
}

/// Least squares for data matrices whose rows span many orders of magnitude
/// (signals growing or decaying like `ρ^n`).
///
/// Rank is judged on the row-equilibrated matrix, which has the same rank but
/// is not dominated by the largest rows. At full rank the minimizer comes from
/// a column-pivoted Householder QR of the rows sorted by decreasing size, which
/// is backward stable row by row; otherwise the minimum-norm solution is used.
fn graded_solve(a: DMatrix<f64>, b: &DVector<f64>) -> Result<Solution> {
    if a.iter().chain(b.iter()).any(|v| !v.is_finite()) {
        return Err(LpError::NumericFailure(
            "least-squares system is not finite".into(),
        ));
    }
    let (rows, cols) = a.shape();
    let scale: Vec<f64> = (0..rows)
        .map(|i| a.row(i).amax())
        .map(|m| if m > 0.0 { m } else { 1.0 })
        .collect();
    let equilibrated = DMatrix::from_fn(rows, cols, |i, j| a[(i, j)] / scale[i]);
    let sv = equilibrated.singular_values();
    let cutoff = rows.max(cols) as f64 * f64::EPSILON * sv.max();
    let rank = sv.iter().filter(|&&s| s > cutoff && s > 0.0).count();
    if rank < cols {
        return min_norm_solve(a, b, false);
    }

    let mut order: Vec<usize> = (0..rows).collect();
    order.sort_by(|&i, &j| scale[j].total_cmp(&scale[i]).then(i.cmp(&j)));
    let sorted = DMatrix::from_fn(rows, cols, |i, j| a[(order[i], j)]);
    let qr = sorted.col_piv_qr();
    let r = qr.r();
    let solve = |rhs: &DVector<f64>| -> Result<DVector<f64>> {
        let mut z = DVector::from_fn(rows, |i, _| rhs[order[i]]);
        qr.q_tr_mul(&mut z);
        let mut x = r
            .solve_upper_triangular(&z.rows(0, cols).into_owned())
            .ok_or_else(|| LpError::NumericFailure("triangular factor is singular".into()))?;
        qr.p().inv_permute_rows(&mut x);
        Ok(x)
    };
    let x = refine(&a, b, solve(b)?, solve)?;

    let sv = a.singular_values();
    let smax = sv.max();
    let smin = sv
        .iter()
        .copied()
        .filter(|&s| s > 0.0)
        .fold(f64::INFINITY, f64::min);
    let condition = if smin.is_finite() {
        (smax / smin).powi(2)
    } else {
        1.0
    };
    let weights: Vec<f64> = x.iter().copied().collect();
    if weights.iter().any(|w| !w.is_finite()) || !condition.is_finite() {
        return Err(LpError::NumericFailure(
            "least-squares solution is not finite".into(),
        ));
    }
    Ok(Solution {
        weights,
        rank,
        condition,
    })
}

/// Iterative refinement against compensated residuals, stopping once the
/// corrections stop shrinking.
fn refine<F>(
    a: &DMatrix<f64>,
    b: &DVector<f64>,
    mut x: DVector<f64>,
    solve: F,
) -> Result<DVector<f64>>
where
    F: Fn(&DVector<f64>) -> Result<DVector<f64>>,
{
    let mut last_step = f64::INFINITY;
    for _ in 0..REFINEMENT_STEPS {
        let r = accurate_residual(a, &x, b);
        let dx = solve(&r)?;
        let step = dx.amax();
        if !(step < last_step) {
            break;
        }
        x += dx;
        last_step = step;
        if step <= f64::EPSILON * x.amax() {
            break;
        }
    }
    Ok(x)
}

/// Fits every signal independently at the same order. Results keep the input order.
pub fn fit_many(
    signals: &[Signal],
    order: usize,
    method: FitMethod,
    exec: Execution,
) -> Result<Vec<(LpCoefficients, FitDiagnostics)>> {
    try_map(exec, signals, |s| fit(s, order, method))
}

struct Solution {
    weights: Vec<f64>,
    rank: usize,
    condition: f64,
}

/// Minimum-norm least-squares solution via SVD, dropping singular values below
/// `max(rows, cols) · ε · σ_max`, then refined against residuals computed with
/// compensated dot products. `normal` marks a system that is already a Gram
/// matrix, whose condition is reported as is rather than squared.
fn min_norm_solve(a: DMatrix<f64>, b: &DVector<f64>, normal: bool) -> Result<Solution> {
    if a.iter().chain(b.iter()).any(|v| !v.is_finite()) {
        return Err(LpError::NumericFailure(
            "least-squares system is not finite".into(),
        ));
    }
    let cols = a.ncols();
    let tol = a.nrows().max(cols) as f64 * f64::EPSILON;
    let svd = a
        .clone()
        .try_svd(true, true, f64::EPSILON, 0)
        .ok_or_else(|| {
            LpError::NumericFailure("singular value decomposition did not converge".into())
        })?;
    let sv = &svd.singular_values;
    let smax = sv.max();
    let cutoff = tol * smax;
    let kept: Vec<f64> = sv
        .iter()
        .copied()
        .filter(|&s| s > cutoff && s > 0.0)
        .collect();
    let rank = kept.len();
    let condition = if rank == 0 {
        1.0
    } else {
        let ratio = smax / kept.iter().copied().fold(f64::INFINITY, f64::min);
        if normal {
            ratio
        } else {
            ratio * ratio
        }
    };
    if rank == 0 {
        return Ok(Solution {
            weights: vec![0.0; cols],
            rank,
            condition,
        });
    }
    let solve = |rhs: &DVector<f64>| {
        svd.solve(rhs, cutoff)
            .map_err(|e| LpError::NumericFailure(e.to_string()))
    };
    let x = refine(&a, b, solve(b)?, solve)?;
    let weights: Vec<f64> = x.iter().copied().collect();
    if weights.iter().any(|w| !w.is_finite()) || !condition.is_finite() {
        return Err(LpError::NumericFailure(
            "least-squares solution is not finite".into(),
        ));
    }
    Ok(Solution {
        weights,
        rank,
        condition,
    })
}

const REFINEMENT_STEPS: usize = 8;

/// `b - A x` with each row evaluated as a compensated dot product.
fn accurate_residual(a: &DMatrix<f64>, x: &DVector<f64>, b: &DVector<f64>) -> DVector<f64> {
    DVector::from_fn(a.nrows(), |i, _| {
        let mut sum = b[i];
        let mut err = 0.0;
        for j in 0..a.ncols() {
            let prod = -a[(i, j)] * x[j];
            let prod_err = (-a[(i, j)]).mul_add(x[j], -prod);
            let (s, e) = two_sum(sum, prod);
            sum = s;
            err += e + prod_err;
        }
        sum + err
    })
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

/// Everything [`identify_bases`] recovers from a signal.
#[derive(Debug, Clone, PartialEq)]
pub struct Identified {
    pub coefficients: LpCoefficients,
    pub diagnostics: FitDiagnostics,
    pub bases: Vec<BasisTerm>,
    pub expansion: WeightedExpansion,
    /// Condition estimate of the weight solve.
    pub weight_condition: f64,
    /// One-step prediction residuals over `n = p..N-1`; no a-priori bound.
    pub report: ApproxReport,
}

/// Covariance fit, then the bases its characteristic roots select, weighted to
/// match the first `order` samples.
pub fn identify_bases(signal: &Signal, order: usize) -> Result<Identified> {
    identify_bases_with(signal, order, FitMethod::Covariance, DEFAULT_CLUSTER_TOL)
}

pub fn identify_bases_with(
    signal: &Signal,
    order: usize,
    method: FitMethod,
    cluster_tol: f64,
) -> Result<Identified> {
    let (coefficients, diagnostics) = fit(signal, order, method)?;
    let bases = coefficients_to_bases(&coefficients, cluster_tol)?;
    let solved = solve_weights(&bases, &signal.samples()[..order])?;
    let report = ApproxReport::new(
        residuals(&coefficients, signal)?,
        None,
        Method::LeastSquares,
        order,
    )?;
    Ok(Identified {
        coefficients,
        diagnostics,
        bases,
        expansion: solved.expansion,
        weight_condition: solved.condition_estimate,
        report,
    })
}
