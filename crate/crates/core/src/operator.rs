//! The fractional discrete exterior derivative.
//!
//! `D_p^s α = W D_p α / Γ(1 - s)`, where `W` is a dense weight matrix over the
//! (p+1)-simplices: off-diagonal entries are `distance^(-s)` and the diagonal
//! is `c_s` times the largest off-diagonal weight. Rows index the target
//! simplex and columns the source simplex. At `s = 1` the weights collapse to
//! the identity and the operator is exactly `D_p`.

use std::fmt::{self, Write as _};

use ndarray::Array2;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mesh::{build_coboundary, Cochain, IncidenceMatrix, SimplicialComplex};
use crate::metric::{simplex_distance, DistanceMode, DistanceTable};
use crate::special::gamma;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sidedness {
    #[default]
    TwoSided,
    LeftSided,
}

/// Sign applied to contributions from sources to the right of the target
/// (1D two-sided mode). `Plus` sums both one-sided integrals; `Minus`
/// subtracts the right-hand one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RightSign {
    #[default]
    Plus,
    Minus,
}

impl RightSign {
    pub fn factor(self) -> f64 {
        match self {
            RightSign::Plus => 1.0,
            RightSign::Minus => -1.0,
        }
    }
}

/// What happens to the diagonal under the left-sided mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MaskDiagonal {
    /// A simplex is not strictly left of itself, so its weight goes too.
    #[default]
    Drop,
    Keep,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FracConfig {
    pub s: f64,
    pub c_s: f64,
    pub sidedness: Sidedness,
    pub right_sign: RightSign,
    pub distance_mode: DistanceMode,
}

impl FracConfig {
    /// Two-sided, plus-sign, geodesic configuration with the default `c_s`.
    pub fn new(s: f64) -> Result<Self> {
        let config = Self {
            s,
            c_s: Self::default_c_s(s),
            sidedness: Sidedness::default(),
            right_sign: RightSign::default(),
            distance_mode: DistanceMode::default(),
        };
        config.validate()?;
        Ok(config)
    }

    /// `2s / (1 - s)`; the integer order never reads it, so it is 1 there.
    pub fn default_c_s(s: f64) -> f64 {
        if s == 1.0 {
            1.0
        } else {
            2.0 * s / (1.0 - s)
        }
    }

    pub fn with_c_s(mut self, c_s: f64) -> Self {
        self.c_s = c_s;
        self
    }

    pub fn with_sidedness(mut self, sidedness: Sidedness) -> Self {
        self.sidedness = sidedness;
        self
    }

    pub fn with_right_sign(mut self, right_sign: RightSign) -> Self {
        self.right_sign = right_sign;
        self
    }

    pub fn with_distance_mode(mut self, distance_mode: DistanceMode) -> Self {
        self.distance_mode = distance_mode;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.s > 0.0 && self.s <= 1.0) {
            return Err(Error::Config(format!("s = {} outside (0, 1]", self.s)));
        }
        if !(self.c_s > 0.0 && self.c_s.is_finite()) {
            return Err(Error::Config(format!("c_s = {} must be positive", self.c_s)));
        }
        Ok(())
    }

    pub fn is_integer_order(&self) -> bool {
        self.s == 1.0
    }

    fn check_against(&self, complex: &SimplicialComplex) -> Result<()> {
        self.validate()?;
        if self.sidedness == Sidedness::LeftSided && !is_embedded_1d(complex) {
            return Err(Error::Unsupported(
                "left-sided weights are defined on 1D embedded complexes only".into(),
            ));
        }
        Ok(())
    }
}

fn is_embedded_1d(complex: &SimplicialComplex) -> bool {
    complex.dimension() == 1 && complex.ambient_dimension() == Some(1)
}

/// Dense nonnegative weights over the simplices of one degree.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightMatrix {
    degree: usize,
    entries: Array2<f64>,
}

impl WeightMatrix {
    /// Weights from a distance table.
    pub fn from_distances(table: &DistanceTable, config: &FracConfig) -> Result<Self> {
        config.validate()?;
        if config.is_integer_order() {
            return Err(Error::IntegerOrder);
        }
        let n = table.len();
        let min = table.min_off_diagonal().ok_or_else(|| {
            Error::DegenerateMesh(format!(
                "the weight diagonal needs at least two degree-{} simplices",
                table.degree()
            ))
        })?;
        if !(min > 0.0) {
            return Err(Error::DegenerateMesh(
                "two distinct simplices are at distance zero".into(),
            ));
        }
        let s = config.s;
        let rows: Vec<Vec<f64>> = (0..n)
            .into_par_iter()
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { 0.0 } else { table.get(i, j).powf(-s) })
                    .collect()
            })
            .collect();
        let largest = rows
            .iter()
            .flatten()
            .copied()
            .fold(0.0, f64::max);
        let diagonal = config.c_s * largest;
        let mut entries = Array2::zeros((n, n));
        for (i, row) in rows.into_iter().enumerate() {
            for (j, w) in row.into_iter().enumerate() {
                entries[[i, j]] = if i == j { diagonal } else { w };
            }
        }
        Ok(Self {
            degree: table.degree(),
            entries,
        })
    }

    pub fn identity(degree: usize, n: usize) -> Self {
        Self {
            degree,
            entries: Array2::eye(n),
        }
    }

    /// Degree of the simplices the rows and columns index.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.entries.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.nrows() == 0
    }

    pub fn get(&self, target: usize, source: usize) -> f64 {
        self.entries[[target, source]]
    }

    pub fn entries(&self) -> &Array2<f64> {
        &self.entries
    }

    pub fn transposed(&self) -> Self {
        Self {
            degree: self.degree,
            entries: self.entries.t().to_owned(),
        }
    }
}

/// Weight matrix over the (p+1)-simplices for `D_p^s`.
pub fn build_weight_matrix(
    complex: &SimplicialComplex,
    p: usize,
    config: &FracConfig,
) -> Result<WeightMatrix> {
    if p >= complex.dimension() {
        return Err(Error::Degree {
            degree: p,
            dimension: complex.dimension(),
        });
    }
    weights_on(complex, p + 1, config)
}

fn weights_on(complex: &SimplicialComplex, degree: usize, config: &FracConfig) -> Result<WeightMatrix> {
    config.validate()?;
    if config.is_integer_order() {
        return Err(Error::IntegerOrder);
    }
    let table = simplex_distance(complex, degree, config.distance_mode)?;
    WeightMatrix::from_distances(&table, config)
}

fn barycenter_x(complex: &SimplicialComplex, degree: usize) -> Result<Vec<f64>> {
    if !is_embedded_1d(complex) {
        return Err(Error::Unsupported(
            "left/right ordering needs a 1D embedded complex".into(),
        ));
    }
    Ok((0..complex.count(degree))
        .map(|i| complex.barycenter(degree, i).expect("embedded")[0])
        .collect())
}

/// Keeps weight (target t, source j) only when source j lies strictly left of
/// target t; the diagonal follows `diagonal`.
pub fn apply_left_sided_mask(
    weights: &WeightMatrix,
    complex: &SimplicialComplex,
    diagonal: MaskDiagonal,
) -> Result<WeightMatrix> {
    let x = barycenter_x(complex, weights.degree)?;
    check_size(weights, x.len())?;
    let mut entries = weights.entries.clone();
    for ((t, j), w) in entries.indexed_iter_mut() {
        let keep = if t == j {
            diagonal == MaskDiagonal::Keep
        } else {
            x[j] < x[t]
        };
        if !keep {
            *w = 0.0;
        }
    }
    Ok(WeightMatrix {
        degree: weights.degree,
        entries,
    })
}

/// Weights as applied: contributions from sources right of the target get
/// `right_sign`. With `Plus` this is the plain weight matrix and works on any
/// complex; `Minus` needs a 1D embedding.
pub fn apply_right_sign(
    weights: &WeightMatrix,
    complex: &SimplicialComplex,
    right_sign: RightSign,
) -> Result<Array2<f64>> {
    if right_sign == RightSign::Plus {
        return Ok(weights.entries.clone());
    }
    let x = barycenter_x(complex, weights.degree)?;
    check_size(weights, x.len())?;
    let mut entries = weights.entries.clone();
    for ((t, j), w) in entries.indexed_iter_mut() {
        if x[j] > x[t] {
            *w = -*w;
        }
    }
    Ok(entries)
}

fn check_size(weights: &WeightMatrix, n: usize) -> Result<()> {
    if weights.len() != n {
        return Err(Error::Shape {
            expected: format!("{n} degree-{} simplices", weights.degree),
            actual: format!("{}x{} weights", weights.len(), weights.len()),
        });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    Caputo,
    /// `D_p W α / Γ(1-s)`, with W over p-simplices. No reference results exist.
    RiemannLiouvilleExperimental,
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorKind::Caputo => f.write_str("caputo"),
            OperatorKind::RiemannLiouvilleExperimental => {
                f.write_str("riemann-liouville (experimental)")
            }
        }
    }
}

/// An assembled operator from p-cochains to (p+1)-cochains.
#[derive(Debug, Clone)]
pub struct FracOperator {
    kind: OperatorKind,
    config: FracConfig,
    weights: WeightMatrix,
    applied: Array2<f64>,
    coboundary: IncidenceMatrix,
    scale: f64,
}

/// Assembles `D_p^s` for `complex`.
pub fn build_frac_derivative(
    complex: &SimplicialComplex,
    p: usize,
    config: &FracConfig,
) -> Result<FracOperator> {
    build(complex, p, config, OperatorKind::Caputo)
}

/// Assembles the experimental `D_p W α / Γ(1-s)` variant.
pub fn build_riemann_liouville_experimental(
    complex: &SimplicialComplex,
    p: usize,
    config: &FracConfig,
) -> Result<FracOperator> {
    build(complex, p, config, OperatorKind::RiemannLiouvilleExperimental)
}

fn build(
    complex: &SimplicialComplex,
    p: usize,
    config: &FracConfig,
    kind: OperatorKind,
) -> Result<FracOperator> {
    config.check_against(complex)?;
    let coboundary = build_coboundary(complex, p)?;
    let degree = match kind {
        OperatorKind::Caputo => p + 1,
        OperatorKind::RiemannLiouvilleExperimental => p,
    };
    if config.is_integer_order() {
        let weights = WeightMatrix::identity(degree, complex.count(degree));
        return Ok(FracOperator {
            kind,
            config: *config,
            applied: weights.entries.clone(),
            weights,
            coboundary,
            scale: 1.0,
        });
    }
    let weights = weights_on(complex, degree, config)?;
    let applied = match config.sidedness {
        Sidedness::LeftSided => {
            apply_left_sided_mask(&weights, complex, MaskDiagonal::Drop)?.entries
        }
        Sidedness::TwoSided => apply_right_sign(&weights, complex, config.right_sign)?,
    };
    Ok(FracOperator {
        kind,
        config: *config,
        weights,
        applied,
        coboundary,
        scale: 1.0 / gamma(1.0 - config.s)?,
    })
}

fn matvec(matrix: &Array2<f64>, x: &[f64]) -> Vec<f64> {
    matrix
        .outer_iter()
        .map(|row| row.iter().zip(x).fold(0.0, |acc, (w, v)| acc + w * v))
        .collect()
}

impl FracOperator {
    pub fn kind(&self) -> OperatorKind {
        self.kind
    }

    pub fn config(&self) -> &FracConfig {
        &self.config
    }

    /// Source degree.
    pub fn degree(&self) -> usize {
        self.coboundary.degree()
    }

    /// Unsigned, unmasked weights (identity at `s = 1`).
    pub fn weights(&self) -> &WeightMatrix {
        &self.weights
    }

    /// Weights after masking and sign application.
    pub fn applied_weights(&self) -> &Array2<f64> {
        &self.applied
    }

    pub fn coboundary(&self) -> &IncidenceMatrix {
        &self.coboundary
    }

    /// `1 / Γ(1 - s)`, or 1 at the integer order.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn apply(&self, cochain: &Cochain) -> Result<Cochain> {
        let differentiated_first = self.kind == OperatorKind::Caputo;
        if self.config.is_integer_order() {
            return self.coboundary.apply(cochain);
        }
        if differentiated_first {
            let d = self.coboundary.apply(cochain)?;
            let values = matvec(&self.applied, d.values())
                .into_iter()
                .map(|v| self.scale * v)
                .collect();
            Ok(Cochain::from_raw(d.degree(), values))
        } else {
            if cochain.degree() != self.degree() || cochain.len() != self.applied.ncols() {
                return Err(Error::Shape {
                    expected: format!(
                        "degree-{} cochain with {} values",
                        self.degree(),
                        self.applied.ncols()
                    ),
                    actual: format!("degree-{} with {} values", cochain.degree(), cochain.len()),
                });
            }
            let weighted = Cochain::from_raw(cochain.degree(), matvec(&self.applied, cochain.values()));
            let d = self.coboundary.apply(&weighted)?;
            let values = d.values().iter().map(|v| self.scale * v).collect();
            Ok(Cochain::from_raw(d.degree(), values))
        }
    }

    /// The full operator as a dense (p+1)-by-p matrix.
    pub fn to_dense(&self) -> Array2<f64> {
        let rows = self.coboundary.rows();
        let cols = self.coboundary.cols();
        let d = {
            let mut d = Array2::zeros((rows, cols));
            for r in 0..rows {
                for &(c, v) in self.coboundary.row(r) {
                    d[[r, c]] = f64::from(v);
                }
            }
            d
        };
        if self.config.is_integer_order() {
            return d;
        }
        let product = match self.kind {
            OperatorKind::Caputo => self.applied.dot(&d),
            OperatorKind::RiemannLiouvilleExperimental => d.dot(&self.applied),
        };
        product * self.scale
    }

    /// Dense CSV, one row per target simplex.
    pub fn to_csv(&self) -> String {
        let dense = self.to_dense();
        let mut out = String::new();
        for row in dense.outer_iter() {
            let line: Vec<String> = row.iter().map(f64::to_string).collect();
            writeln!(out, "{}", line.join(",")).unwrap();
        }
        out
    }
}
