//! Gamma and two-parameter Mittag-Leffler functions.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

fn lanczos_sum(z: f64) -> f64 {
    LANCZOS[1..]
        .iter()
        .enumerate()
        .fold(LANCZOS[0], |acc, (i, c)| acc + c / (z + (i + 1) as f64))
}

fn is_pole(z: f64) -> bool {
    z <= 0.0 && z == z.floor()
}

/// Γ(z) for real `z`, with reflection below 1/2.
pub fn gamma(z: f64) -> Result<f64> {
    if is_pole(z) {
        return Err(Error::Pole(z));
    }
    if z.is_nan() {
        return Err(Error::Domain("gamma of NaN".into()));
    }
    if z < 0.5 {
        return Ok(PI / ((PI * z).sin() * gamma(1.0 - z)?));
    }
    let z = z - 1.0;
    let t = z + LANCZOS_G + 0.5;
    // t^(z+1/2) e^-t split in two halves to delay overflow.
    let half = t.powf(0.5 * (z + 0.5));
    Ok((2.0 * PI).sqrt() * half * (-t).exp() * half * lanczos_sum(z))
}

/// ln Γ(z) for `z > 0`.
pub fn ln_gamma(z: f64) -> Result<f64> {
    if !(z > 0.0) {
        return Err(Error::Domain(format!("ln_gamma needs z > 0, got {z}")));
    }
    if z < 0.5 {
        return Ok((PI / (PI * z).sin()).ln() - ln_gamma(1.0 - z)?);
    }
    let z = z - 1.0;
    let t = z + LANCZOS_G + 0.5;
    Ok(LN_SQRT_2PI + (z + 0.5) * t.ln() - t + lanczos_sum(z).ln())
}

/// Series controls for [`mittag_leffler_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MLParams {
    pub a: f64,
    pub b: f64,
    pub series_tol: f64,
    pub max_terms: usize,
}

impl MLParams {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        let p = Self {
            a,
            b,
            series_tol: 1e-15,
            max_terms: 200,
        };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        if !(self.a > 0.0 && self.b > 0.0) {
            return Err(Error::Domain(format!(
                "Mittag-Leffler needs a, b > 0 (got a = {}, b = {})",
                self.a, self.b
            )));
        }
        if !(self.series_tol > 0.0) || self.max_terms == 0 {
            return Err(Error::Domain("series_tol and max_terms must be positive".into()));
        }
        Ok(())
    }
}

/// Largest |z| accepted by the power series.
pub const ML_MAX_ARGUMENT: f64 = 50.0;

/// `E_{a,b}(z) = sum_k z^k / Γ(a k + b)` by direct summation.
pub fn mittag_leffler(a: f64, b: f64, z: f64) -> Result<f64> {
    mittag_leffler_with(&MLParams::new(a, b)?, z)
}

pub fn mittag_leffler_with(params: &MLParams, z: f64) -> Result<f64> {
    params.validate()?;
    if !(z.abs() <= ML_MAX_ARGUMENT) {
        return Err(Error::Domain(format!(
            "|z| = {} outside the series range |z| <= {ML_MAX_ARGUMENT}",
            z.abs()
        )));
    }
    if z == 0.0 {
        return Ok(1.0 / gamma(params.b)?);
    }
    let ln_abs_z = z.abs().ln();
    let mut sum = 0.0;
    let mut power: f64 = 1.0;
    for k in 0..params.max_terms {
        let arg = params.a * k as f64 + params.b;
        let term = if arg < 170.0 && power.is_finite() {
            power / gamma(arg)?
        } else {
            let sign = if z < 0.0 && k % 2 == 1 { -1.0 } else { 1.0 };
            sign * (k as f64 * ln_abs_z - ln_gamma(arg)?).exp()
        };
        sum += term;
        if term.abs() < params.series_tol * sum.abs() {
            return Ok(sum);
        }
        power *= z;
    }
    Err(Error::Convergence {
        terms: params.max_terms,
    })
}
