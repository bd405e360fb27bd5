use std::fmt;

use num_complex::Complex64;

use crate::error::{LpError, Result};
use crate::recurrence::LpCoefficients;

/// Monic real polynomial, coefficients stored highest degree first.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial(Vec<f64>);

impl Polynomial {
    /// Builds `x^p + c_1 x^{p-1} + ... + c_p` from the sub-leading coefficients.
    pub fn monic(sub_leading: &[f64]) -> Result<Self> {
        if sub_leading.is_empty() {
            return Err(LpError::InvalidArgument(
                "polynomial degree must be at least 1".into(),
            ));
        }
        if let Some(index) = sub_leading.iter().position(|v| !v.is_finite()) {
            return Err(LpError::NonFinite { index });
        }
        let mut c = Vec::with_capacity(sub_leading.len() + 1);
        c.push(1.0);
        c.extend_from_slice(sub_leading);
        Ok(Self(c))
    }

    /// Highest degree first; the leading entry is exactly 1.
    pub fn coefficients(&self) -> &[f64] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len() - 1
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.0.iter().fold(0.0, |acc, c| acc * x + c)
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.0
            .iter()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Value and first derivative at `z`.
    pub(crate) fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &c in &self.0 {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    /// Multiplies in place by `x - r`.
    pub(crate) fn mul_linear(&mut self, r: f64) {
        self.0.push(0.0);
        for i in (1..self.0.len()).rev() {
            self.0[i] -= r * self.0[i - 1];
        }
    }

    /// Multiplies in place by `x² + s x + t`.
    pub(crate) fn mul_quadratic(&mut self, s: f64, t: f64) {
        self.0.push(0.0);
        self.0.push(0.0);
        for i in (1..self.0.len()).rev() {
            let mut v = self.0[i] + s * self.0[i - 1];
            if i >= 2 {
                v += t * self.0[i - 2];
            }
            self.0[i] = v;
        }
    }

    pub(crate) fn one() -> Self {
        Self(vec![1.0])
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.degree();
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            let power = p - i;
            if c == 0.0 && power != p {
                continue;
            }
            let sign = if c < 0.0 { "-" } else { "+" };
            if first {
                if c < 0.0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            let show_mag = mag != 1.0 || power == 0;
            if show_mag {
                write!(f, "{mag}")?;
            }
            match power {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{power}")?,
            }
        }
        Ok(())
    }
}

/// `x^p - a_1 x^{p-1} - ... - a_p`.
pub fn characteristic_polynomial(coeffs: &LpCoefficients) -> Polynomial {
    let negated: Vec<f64> = coeffs.as_slice().iter().map(|a| -a).collect();
    Polynomial::monic(&negated).expect("LpCoefficients are non-empty and finite")
}

/// Reads the recurrence weights back off a characteristic polynomial.
pub fn coefficients_from_polynomial(poly: &Polynomial) -> Result<LpCoefficients> {
    LpCoefficients::new(poly.coefficients()[1..].iter().map(|c| -c).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    fn charpoly(a: &[f64]) -> Vec<f64> {
        characteristic_polynomial(&LpCoefficients::new(a.to_vec()).unwrap())
            .coefficients()
            .to_vec()
    }

    #[test]
    fn transcribes_recurrence() {
        assert_eq!(charpoly(&[2.0, -1.0]), vec![1.0, -2.0, 1.0]);
        assert_eq!(charpoly(&[1.0]), vec![1.0, -1.0]);
        assert_eq!(charpoly(&[SQRT_2, -1.0]), vec![1.0, -SQRT_2, 1.0]);
    }

    #[test]
    fn products_expand_correctly() {
        let mut p = Polynomial::one();
        p.mul_linear(1.0);
        p.mul_linear(1.0);
        assert_eq!(p.coefficients(), &[1.0, -2.0, 1.0]);
        // (x - 2)(x² + 1) = x³ - 2x² + x - 2
        let mut q = Polynomial::one();
        q.mul_linear(2.0);
        q.mul_quadratic(0.0, 1.0);
        assert_eq!(q.coefficients(), &[1.0, -2.0, 1.0, -2.0]);
        assert_eq!(q.eval(2.0), 0.0);
    }

    #[test]
    fn derivative_by_horner() {
        let p = Polynomial::monic(&[-2.0, 1.0, -2.0]).unwrap();
        let (v, d) = p.eval_with_derivative(Complex64::new(1.0, 0.0));
        assert_eq!(v, Complex64::new(-2.0, 0.0));
        // 3x² - 4x + 1 at 1
        assert_eq!(d, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn display() {
        assert_eq!(
            Polynomial::monic(&[-2.0, 1.0]).unwrap().to_string(),
            "x^2 - 2x + 1"
        );
        assert_eq!(
            Polynomial::monic(&[0.0, 1.0]).unwrap().to_string(),
            "x^2 + 1"
        );
    }
}
