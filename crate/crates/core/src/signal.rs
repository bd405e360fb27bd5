//! Finite real-valued signals and the mean-square error metric.

use crate::error::{LpError, Result};

/// Equidistant sampling grid `x_n = start + n * step`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub step: f64,
}

impl Grid {
    pub fn new(start: f64, step: f64) -> Result<Self> {
        if !start.is_finite() || !step.is_finite() || step <= 0.0 {
            return Err(LpError::InvalidArgument(format!(
                "grid step must be positive and finite (start {start}, step {step})"
            )));
        }
        Ok(Self { start, step })
    }

    pub fn at(&self, n: usize) -> f64 {
        self.start + self.step * n as f64
    }
}

/// A non-empty sequence of finite samples `f(0), ..., f(N-1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    samples: Vec<f64>,
    grid: Option<Grid>,
}

impl Signal {
    /// Non-finite samples are rejected rather than carried along.
    pub fn new(samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(LpError::InvalidArgument(
                "signal must contain at least one sample".into(),
            ));
        }
        if let Some(index) = samples.iter().position(|v| !v.is_finite()) {
            return Err(LpError::NonFinite { index });
        }
        Ok(Self {
            samples,
            grid: None,
        })
    }

    pub fn with_grid(samples: Vec<f64>, grid: Grid) -> Result<Self> {
        let mut signal = Self::new(samples)?;
        signal.grid = Some(grid);
        Ok(signal)
    }

    /// Samples `f` at `N` equidistant points spanning `[lo, hi]`.
    pub fn sample<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, count: usize) -> Result<Self> {
        if !(lo < hi) {
            return Err(LpError::InvalidArgument(format!(
                "interval [{lo}, {hi}] is empty"
            )));
        }
        if count < 2 {
            return Err(LpError::InvalidArgument(
                "sampling needs at least two points".into(),
            ));
        }
        let grid = Grid::new(lo, (hi - lo) / (count - 1) as f64)?;
        let samples = (0..count)
            .map(|n| if n + 1 == count { f(hi) } else { f(grid.at(n)) })
            .collect();
        Self::with_grid(samples, grid)
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn grid(&self) -> Option<Grid> {
        self.grid
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Largest absolute sample, `‖f‖∞`.
    pub fn max_abs(&self) -> f64 {
        max_abs(&self.samples)
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.samples
    }
}

impl AsRef<[f64]> for Signal {
    fn as_ref(&self) -> &[f64] {
        &self.samples
    }
}

pub(crate) fn max_abs(values: &[f64]) -> f64 {
    values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
}

/// `(1/N) Σ (actual - predicted)²`.
pub fn mse(actual: &[f64], predicted: &[f64]) -> Result<f64> {
    if actual.len() != predicted.len() {
        return Err(LpError::InvalidArgument(format!(
            "length mismatch: {} vs {}",
            actual.len(),
            predicted.len()
        )));
    }
    if actual.is_empty() {
        return Err(LpError::InvalidArgument("mse of empty sequences".into()));
    }
    Ok(mean_square(
        actual.iter().zip(predicted).map(|(a, p)| a - p),
    ))
}

pub(crate) fn mean_square<I: ExactSizeIterator<Item = f64>>(values: I) -> f64 {
    let n = values.len();
    if n == 0 {
        return 0.0;
    }
    values.map(|v| v * v).sum::<f64>() / n as f64
}
