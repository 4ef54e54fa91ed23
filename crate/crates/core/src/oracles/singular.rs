use crate::error::{Error, Result};
use crate::operator::RightSign;
use crate::quadrature::integrate;
use crate::special::gamma;

use super::Side;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-9,
            max_subdivisions: 500,
        }
    }
}

/// Caputo derivative of order `s` at `x` from `f'` by direct quadrature.
///
/// With `u = |x - τ|^(1-s)` each one-sided integral becomes
/// `∫ f'(x ∓ u^(1/(1-s))) du / (1-s)` over `[0, distance^(1-s)]`, which has no
/// endpoint singularity. The right-hand integral enters with `right_sign`.
pub fn caputo_quadrature(
    f_prime: &dyn Fn(f64) -> f64,
    (a, b): (f64, f64),
    x: f64,
    s: f64,
    side: Side,
    right_sign: RightSign,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if !(spec.abs_tol > 0.0) {
        return Err(Error::Argument(format!("abs_tol = {} must be positive", spec.abs_tol)));
    }
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::Domain(format!("quadrature order s = {s} outside (0, 1)")));
    }
    if !(a < b && x >= a && x <= b) {
        return Err(Error::Domain(format!("x = {x} outside [{a}, {b}]")));
    }
    let scale = 1.0 / gamma(1.0 - s)?;
    let exponent = 1.0 / (1.0 - s);
    let pieces = if side == Side::TwoSided { 2.0 } else { 1.0 };
    let tol = spec.abs_tol / (scale * pieces);
    let one_sided = |direction: f64, length: f64| -> Result<f64> {
        if length <= 0.0 {
            return Ok(0.0);
        }
        let g = |u: f64| f_prime(x + direction * u.powf(exponent)) * exponent;
        Ok(integrate(&g, 0.0, length.powf(1.0 - s), tol, spec.max_subdivisions)
            .map_err(|e| rescale(e, scale))?
            .value)
    };
    let left = one_sided(-1.0, x - a)?;
    let total = match side {
        Side::Left => left,
        Side::TwoSided => left + right_sign.factor() * one_sided(1.0, b - x)?,
    };
    Ok(scale * total)
}

fn rescale(error: Error, scale: f64) -> Error {
    match error {
        Error::Accuracy { achieved, requested } => Error::Accuracy {
            achieved: achieved * scale,
            requested: requested * scale,
        },
        other => other,
    }
}
