//! Order-p linear prediction recurrences `f(n) = Σ a_k f(n-k)`.

use crate::error::{LpError, Result};
use crate::signal::Signal;

/// Weights `a_1..a_p` of an order-p recurrence.
#[derive(Debug, Clone, PartialEq)]
pub struct LpCoefficients(Vec<f64>);

impl LpCoefficients {
    pub fn new(a: Vec<f64>) -> Result<Self> {
        if a.is_empty() {
            return Err(LpError::InvalidArgument(
                "recurrence order must be at least 1".into(),
            ));
        }
        if let Some(index) = a.iter().position(|v| !v.is_finite()) {
            return Err(LpError::NonFinite { index });
        }
        Ok(Self(a))
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    /// One-step prediction `Σ a_k f(n-k)` from the `p` samples preceding `n`.
    pub fn predict_at(&self, samples: &[f64], n: usize) -> f64 {
        debug_assert!(n >= self.order() && n <= samples.len());
        self.0
            .iter()
            .enumerate()
            .map(|(k, a)| a * samples[n - 1 - k])
            .sum()
    }
}

/// A recurrence together with the seed values `f(0)..f(p-1)` it starts from.
#[derive(Debug, Clone, PartialEq)]
pub struct LpModel {
    coefficients: LpCoefficients,
    initial: Vec<f64>,
}

impl LpModel {
    pub fn new(coefficients: LpCoefficients, initial: Vec<f64>) -> Result<Self> {
        if initial.len() != coefficients.order() {
            return Err(LpError::InvalidArgument(format!(
                "order {} recurrence needs {} initial values, got {}",
                coefficients.order(),
                coefficients.order(),
                initial.len()
            )));
        }
        if let Some(index) = initial.iter().position(|v| !v.is_finite()) {
            return Err(LpError::NonFinite { index });
        }
        Ok(Self {
            coefficients,
            initial,
        })
    }

    pub fn coefficients(&self) -> &LpCoefficients {
        &self.coefficients
    }

    pub fn initial(&self) -> &[f64] {
        &self.initial
    }

    pub fn order(&self) -> usize {
        self.coefficients.order()
    }
}

/// Runs the recurrence forward to produce `count` samples.
pub fn iterate(model: &LpModel, count: usize) -> Result<Signal> {
    let p = model.order();
    if count < p {
        return Err(LpError::InvalidArgument(format!(
            "count {count} is smaller than the recurrence order {p}"
        )));
    }
    let mut out = Vec::with_capacity(count);
    out.extend_from_slice(model.initial());
    for n in p..count {
        let next = model.coefficients.predict_at(&out, n);
        if !next.is_finite() {
            return Err(LpError::NumericOverflow { index: n });
        }
        out.push(next);
    }
    Signal::new(out)
}

/// Prediction residuals `f(n) - Σ a_k f(n-k)` for `n = p..N-1`.
pub fn residuals(coeffs: &LpCoefficients, signal: &Signal) -> Result<Vec<f64>> {
    let p = coeffs.order();
    let f = signal.samples();
    if f.len() <= p {
        return Err(LpError::InvalidArgument(format!(
            "signal of length {} has no residuals under an order {p} recurrence",
            f.len()
        )));
    }
    Ok((p..f.len())
        .map(|n| f[n] - coeffs.predict_at(f, n))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

    fn model(a: &[f64], init: &[f64]) -> LpModel {
        LpModel::new(LpCoefficients::new(a.to_vec()).unwrap(), init.to_vec()).unwrap()
    }

    #[test]
    fn constant_recurrence() {
        let s = iterate(&model(&[1.0], &[5.0]), 4).unwrap();
        assert_eq!(s.samples(), &[5.0; 4]);
    }

    #[test]
    fn linear_sequence_from_double_root() {
        let s = iterate(&model(&[2.0, -1.0], &[0.0, 1.0]), 5).unwrap();
        assert_eq!(s.samples(), &[0.0, 1.0, 2.0, 3.0, 4.0]);
    }

    #[test]
    fn cosine_recurrence() {
        let s = iterate(&model(&[SQRT_2, -1.0], &[1.0, FRAC_1_SQRT_2]), 5).unwrap();
        let expected = [1.0, FRAC_1_SQRT_2, 0.0, -FRAC_1_SQRT_2, -1.0];
        for (got, want) in s.samples().iter().zip(expected) {
            assert!((got - want).abs() < 1e-15, "{got} vs {want}");
        }
    }

    #[test]
    fn count_below_order_is_rejected() {
        let err = iterate(&model(&[2.0, -1.0], &[0.0, 1.0]), 1).unwrap_err();
        assert!(matches!(err, LpError::InvalidArgument(_)));
    }

    #[test]
    fn overflow_names_first_bad_index() {
        let err = iterate(&model(&[1e200], &[1e200]), 4).unwrap_err();
        assert_eq!(err, LpError::NumericOverflow { index: 1 });
    }

    #[test]
    fn model_checks_seed_length() {
        let a = LpCoefficients::new(vec![1.0, 1.0]).unwrap();
        assert!(LpModel::new(a, vec![1.0]).is_err());
        assert!(LpCoefficients::new(vec![]).is_err());
        assert_eq!(
            LpCoefficients::new(vec![f64::NAN]),
            Err(LpError::NonFinite { index: 0 })
        );
    }

    #[test]
    fn residual_examples() {
        let r = |a: &[f64], f: &[f64]| {
            residuals(
                &LpCoefficients::new(a.to_vec()).unwrap(),
                &Signal::new(f.to_vec()).unwrap(),
            )
        };
        assert_eq!(r(&[1.0], &[3.0, 3.0, 3.0]).unwrap(), vec![0.0, 0.0]);
        assert_eq!(
            r(&[2.0, -1.0], &[0.0, 1.0, 2.0, 3.0]).unwrap(),
            vec![0.0, 0.0]
        );
        assert_eq!(r(&[1.0], &[0.0, 1.0, 2.0]).unwrap(), vec![1.0, 1.0]);
        assert!(r(&[1.0, 1.0], &[0.0, 1.0]).is_err());
    }

    #[test]
    fn shift_consistency() {
        let m = model(&[0.5, 0.3, -0.2], &[1.0, -2.0, 0.5]);
        let long = iterate(&m, 40).unwrap();
        for n in 3..40 {
            assert_eq!(iterate(&m, n).unwrap().samples(), &long.samples()[..n]);
        }
    }
}
