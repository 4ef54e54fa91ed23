use crate::error::{Error, Result};
use crate::operator::RightSign;
use crate::special::gamma;

use super::Side;

/// Exact Caputo derivatives of a polynomial on `[a, b]` for any order.
///
/// Expanding `τ^m` about `x` turns each one-sided integral into a finite sum
/// of `length^(j+1-s) / (j+1-s)` terms.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialCaputo {
    coeffs: Vec<f64>,
    a: f64,
    b: f64,
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

impl PolynomialCaputo {
    /// `coeffs` are ascending: `c0 + c1 x + c2 x^2 + ...`.
    pub fn new(coeffs: Vec<f64>, a: f64, b: f64) -> Result<Self> {
        if !(a < b) {
            return Err(Error::Domain(format!("empty interval [{a}, {b}]")));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::Domain("non-finite polynomial coefficient".into()));
        }
        Ok(Self { coeffs, a, b })
    }

    pub fn on_unit_interval(coeffs: Vec<f64>) -> Result<Self> {
        Self::new(coeffs, 0.0, 1.0)
    }

    pub fn value(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    pub fn evaluate(&self, x: f64, s: f64, side: Side, right_sign: RightSign) -> Result<f64> {
        if !(s > 0.0 && s < 1.0) {
            return Err(Error::Domain(format!("order s = {s} outside (0, 1)")));
        }
        if !(x >= self.a && x <= self.b) {
            return Err(Error::Domain(format!("x = {x} outside [{}, {}]", self.a, self.b)));
        }
        let (left_len, right_len) = (x - self.a, self.b - x);
        let mut left = 0.0;
        let mut right = 0.0;
        for (k, &c) in self.coeffs.iter().enumerate().skip(1) {
            let m = k - 1;
            let d = k as f64 * c;
            for j in 0..=m {
                let weight = d * binomial(m, j) * x.powi((m - j) as i32) / (j as f64 + 1.0 - s);
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                left += sign * weight * left_len.powf(j as f64 + 1.0 - s);
                right += weight * right_len.powf(j as f64 + 1.0 - s);
            }
        }
        let total = match side {
            Side::Left => left,
            Side::TwoSided => left + right_sign.factor() * right,
        };
        Ok(total / gamma(1.0 - s)?)
    }
}
