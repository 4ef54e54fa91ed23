//! Reference fractional derivatives: closed forms, an exact polynomial
//! evaluator and a singular-quadrature Caputo evaluator.

mod polynomial;
mod singular;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::RightSign;
use crate::special::{gamma, mittag_leffler};

pub use polynomial::PolynomialCaputo;
pub use singular::{caputo_quadrature, QuadratureSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    TwoSided,
}

fn check_unit(x: f64, name: &str) -> Result<()> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("{name} = {x} outside [0, 1]")));
    }
    Ok(())
}

fn check_order(s: f64) -> Result<()> {
    if !(s > 0.0 && s <= 1.0) {
        return Err(Error::Domain(format!("order s = {s} outside (0, 1]")));
    }
    Ok(())
}

/// Left-sided Caputo derivative of `x^q` on `[0, x]`.
pub fn caputo_power(q: f64, s: f64, x: f64) -> Result<f64> {
    if !(q > 0.0) {
        return Err(Error::Domain(format!("power q = {q} must be positive")));
    }
    check_order(s)?;
    if x < 0.0 || x.is_nan() {
        return Err(Error::Domain(format!("x = {x} must be nonnegative")));
    }
    Ok(gamma(q + 1.0)? * x.powf(q - s) / gamma(q + 1.0 - s)?)
}

/// Two-sided order-1/2 derivative of `x^3` on `[0, 1]` as printed.
/// Cross-checks against the quadrature oracle with `RightSign::Minus`.
pub fn two_sided_cubic(x: f64) -> Result<f64> {
    check_unit(x, "x")?;
    let g35 = gamma(3.5)?;
    Ok(gamma(4.0)? * x.powf(2.5) / g35 - 3.0 / g35 * (1.0 - x).sqrt() * (0.75 + x + 2.0 * x * x))
}

/// Two-sided order-1/2 derivative of `-10x^3 + 10x^2` on `[0, 1]` as printed.
/// Cross-checks against the quadrature oracle with `RightSign::Plus`.
pub fn two_sided_poly(x: f64) -> Result<f64> {
    check_unit(x, "x")?;
    let g35 = gamma(3.5)?;
    let g25 = gamma(2.5)?;
    let r = (1.0 - x).sqrt();
    Ok(-10.0 * gamma(4.0)? / g35 * x.powf(2.5) + 10.0 * gamma(3.0)? / g25 * x.powf(1.5)
        - 30.0 / g35 * r * (0.75 + x + 2.0 * x * x)
        + 20.0 / g25 * r * (x + 0.5))
}

/// `x^(1-s) E_{1,2-s}(x)`, the left-sided derivative of `e^x` on `[0, x]`.
pub fn left_caputo_exp(x: f64, s: f64) -> Result<f64> {
    check_unit(x, "x")?;
    check_order(s)?;
    Ok(x.powf(1.0 - s) * mittag_leffler(1.0, 2.0 - s, x)?)
}

/// Two-sided order-1/2 gradient of `-x^2 + y^2` on the unit square as printed.
pub fn frac_gradient_saddle(x: f64, y: f64) -> Result<[f64; 2]> {
    check_unit(x, "x")?;
    check_unit(y, "y")?;
    let g25 = gamma(2.5)?;
    let half = |t: f64| 2.0 * t.powf(1.5) / g25 + 2.0 * (1.0 - t).sqrt() * (t + 0.5) / g25;
    Ok([-half(x), half(y)])
}

/// Two-sided order-1/2 gradient of `(x - .1)^2 + (y - .1)^2` on the unit
/// square, transcribed as printed.
pub fn frac_gradient_shifted_min(x: f64, y: f64) -> Result<[f64; 2]> {
    check_unit(x, "x")?;
    check_unit(y, "y")?;
    let g25 = gamma(2.5)?;
    let g15 = gamma(1.5)?;
    let component = |t: f64| {
        let r = (1.0 - t).sqrt();
        (2.0 * t.powf(1.5) - r * (0.5 - 2.0 * t)) / g25 - (t.sqrt() - r) / (5.0 * g15)
    };
    Ok([component(x), component(y)])
}

/// Built-in test functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    /// `x^q` with `q > 0`.
    Power(f64),
    Cubic,
    /// `-10x^3 + 10x^2`.
    Poly,
    Exp,
    /// `-x^2 + y^2`.
    Saddle2d,
    /// `(x - .1)^2 + (y - .1)^2`.
    ShiftedMin2d,
    /// The constant 1, in any dimension.
    Constant,
}

impl Family {
    pub const NAMES: [&'static str; 7] = [
        "power:<q>",
        "cubic_x3",
        "poly_neg10x3_plus_10x2",
        "exp_x",
        "saddle_2d",
        "shifted_min_2d",
        "constant",
    ];

    pub fn is_2d(&self) -> bool {
        matches!(self, Family::Saddle2d | Family::ShiftedMin2d)
    }

    /// Spatial dimension the family is sampled in; `None` for `Constant`.
    pub fn dimension(&self) -> Option<usize> {
        match self {
            Family::Constant => None,
            f if f.is_2d() => Some(2),
            _ => Some(1),
        }
    }

    /// `f(point)`.
    pub fn value(&self, point: &[f64]) -> f64 {
        match *self {
            Family::Power(q) => point[0].powf(q),
            Family::Cubic => point[0].powi(3),
            Family::Poly => -10.0 * point[0].powi(3) + 10.0 * point[0].powi(2),
            Family::Exp => point[0].exp(),
            Family::Saddle2d => -point[0] * point[0] + point[1] * point[1],
            Family::ShiftedMin2d => (point[0] - 0.1).powi(2) + (point[1] - 0.1).powi(2),
            Family::Constant => 1.0,
        }
    }

    /// Derivative along `axis` of the separable part depending on `t`.
    pub fn axis_derivative(&self, axis: usize, t: f64) -> f64 {
        match *self {
            Family::Power(q) => q * t.powf(q - 1.0),
            Family::Cubic => 3.0 * t * t,
            Family::Poly => -30.0 * t * t + 20.0 * t,
            Family::Exp => t.exp(),
            Family::Saddle2d if axis == 0 => -2.0 * t,
            Family::Saddle2d => 2.0 * t,
            Family::ShiftedMin2d => 2.0 * (t - 0.1),
            Family::Constant => 0.0,
        }
    }

    /// Ascending coefficients of the per-axis polynomial, where there is one.
    pub fn axis_polynomial(&self, axis: usize) -> Option<Vec<f64>> {
        match *self {
            Family::Power(q) if q.fract() == 0.0 && q <= 32.0 => {
                let mut c = vec![0.0; q as usize + 1];
                c[q as usize] = 1.0;
                Some(c)
            }
            Family::Power(_) | Family::Exp => None,
            Family::Cubic => Some(vec![0.0, 0.0, 0.0, 1.0]),
            Family::Poly => Some(vec![0.0, 0.0, 10.0, -10.0]),
            Family::Saddle2d if axis == 0 => Some(vec![0.0, 0.0, -1.0]),
            Family::Saddle2d => Some(vec![0.0, 0.0, 1.0]),
            Family::ShiftedMin2d => Some(vec![0.01, -0.2, 1.0]),
            Family::Constant => Some(vec![1.0]),
        }
    }

    /// Sign convention the printed two-sided form is checked under.
    pub fn printed_right_sign(&self) -> Option<RightSign> {
        match self {
            Family::Cubic => Some(RightSign::Minus),
            Family::Poly | Family::Saddle2d | Family::ShiftedMin2d => Some(RightSign::Plus),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Power(q) => write!(f, "power:{q}"),
            Family::Cubic => f.write_str("cubic_x3"),
            Family::Poly => f.write_str("poly_neg10x3_plus_10x2"),
            Family::Exp => f.write_str("exp_x"),
            Family::Saddle2d => f.write_str("saddle_2d"),
            Family::ShiftedMin2d => f.write_str("shifted_min_2d"),
            Family::Constant => f.write_str("constant"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let family = match text {
            "cubic_x3" | "cubic" => Family::Cubic,
            "poly_neg10x3_plus_10x2" | "poly" => Family::Poly,
            "exp_x" | "exp" => Family::Exp,
            "saddle_2d" | "saddle" => Family::Saddle2d,
            "shifted_min_2d" | "shifted_min" => Family::ShiftedMin2d,
            "constant" => Family::Constant,
            _ => {
                let q = text
                    .strip_prefix("power:")
                    .and_then(|q| q.parse::<f64>().ok())
                    .filter(|q| *q > 0.0)
                    .ok_or_else(|| {
                        Error::Argument(format!(
                            "unknown family '{text}' (expected one of {})",
                            Family::NAMES.join(", ")
                        ))
                    })?;
                Family::Power(q)
            }
        };
        Ok(family)
    }
}

/// A family together with the order and side its closed form is known for.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormFamily {
    family: Family,
    s: f64,
    side: Side,
}

impl ClosedFormFamily {
    pub fn new(family: Family, s: f64, side: Side) -> Result<Self> {
        check_order(s)?;
        let ok = match family {
            Family::Power(_) | Family::Exp => side == Side::Left,
            Family::Cubic | Family::Poly | Family::Saddle2d | Family::ShiftedMin2d => {
                side == Side::TwoSided && s == 0.5
            }
            Family::Constant => true,
        };
        if !ok {
            return Err(Error::Argument(format!(
                "no closed form for {family} with s = {s}, {side:?}"
            )));
        }
        Ok(Self { family, s, side })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn evaluate_1d(&self, x: f64) -> Result<f64> {
        match self.family {
            Family::Power(q) => {
                check_unit(x, "x")?;
                caputo_power(q, self.s, x)
            }
            Family::Cubic => two_sided_cubic(x),
            Family::Poly => two_sided_poly(x),
            Family::Exp => left_caputo_exp(x, self.s),
            Family::Constant => {
                check_unit(x, "x")?;
                Ok(0.0)
            }
            Family::Saddle2d | Family::ShiftedMin2d => Err(Error::Argument(format!(
                "{} is a 2D family",
                self.family
            ))),
        }
    }

    pub fn evaluate_2d(&self, x: f64, y: f64) -> Result<[f64; 2]> {
        match self.family {
            Family::Saddle2d => frac_gradient_saddle(x, y),
            Family::ShiftedMin2d => frac_gradient_shifted_min(x, y),
            Family::Constant => {
                check_unit(x, "x")?;
                check_unit(y, "y")?;
                Ok([0.0, 0.0])
            }
            _ => Err(Error::Argument(format!("{} is a 1D family", self.family))),
        }
    }
}
