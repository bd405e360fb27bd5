use std::fmt;

use crate::error::{LpError, Result};
use crate::signal::mean_square;

/// Which construction produced a model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    LeastSquares,
    Dct1,
    DiffOp,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::LeastSquares => "least-squares",
            Method::Dct1 => "dct-1",
            Method::DiffOp => "diff-op",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Approximation quality of a constructed model against the signal it was built from.
///
/// `mse` is always the mean of the squared `residuals`. `bound`, when present, is the
/// a-priori error bound the construction advertises; it is reported, not enforced.
#[derive(Debug, Clone, PartialEq)]
pub struct ApproxReport {
    pub mse: f64,
    pub bound: Option<f64>,
    pub residuals: Vec<f64>,
    pub method: Method,
    pub order: usize,
}

impl ApproxReport {
    pub fn new(
        residuals: Vec<f64>,
        bound: Option<f64>,
        method: Method,
        order: usize,
    ) -> Result<Self> {
        if order == 0 {
            return Err(LpError::InvalidArgument(
                "report order must be positive".into(),
            ));
        }
        if let Some(index) = residuals.iter().position(|r| !r.is_finite()) {
            return Err(LpError::NumericOverflow { index });
        }
        Ok(Self {
            mse: mean_square(residuals.iter().copied()),
            bound,
            residuals,
            method,
            order,
        })
    }

    /// `None` when no bound is advertised.
    pub fn within_bound(&self, slack: f64) -> Option<bool> {
        self.bound.map(|b| self.mse <= b + slack)
    }
}
