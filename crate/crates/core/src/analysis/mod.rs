//! Error norms, the 1D step representation, convergence studies and 2D
//! field comparison.

mod field2d;
mod whitney;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mesh::{interval_mesh, Cochain, SimplicialComplex};
use crate::operator::{build_frac_derivative, FracConfig, Sidedness};
use crate::oracles::{ClosedFormFamily, Family, PolynomialCaputo, Side};
use crate::quadrature::integrate;

pub use field2d::{
    critical_triangle, field2d_experiment, grid_cell, grid_layer_distance, relative_l2_per_triangle,
    ErrorSummary, Field2dReport, RelativeErrors, ZERO_REFERENCE_TOL,
};
pub use whitney::{eval_at_barycenters, whitney_reconstruct, WhitneyField};

/// Per-step tolerance for [`l2_error_stairs`].
pub const STEP_ABS_TOL: f64 = 1e-10;
const STEP_MAX_SUBDIVISIONS: usize = 400;

/// Piecewise-constant function: `values[i]` on `[breakpoints[i], breakpoints[i+1])`.
#[derive(Debug, Clone, PartialEq)]
pub struct StairsFunction {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

impl StairsFunction {
    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if values.is_empty() || breakpoints.len() != values.len() + 1 {
            return Err(Error::Shape {
                expected: format!("{} breakpoints", values.len() + 1),
                actual: format!("{}", breakpoints.len()),
            });
        }
        if breakpoints.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidComplex(
                "step breakpoints must be strictly increasing".into(),
            ));
        }
        Ok(Self { breakpoints, values })
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn support(&self) -> (f64, f64) {
        (self.breakpoints[0], *self.breakpoints.last().expect("nonempty"))
    }

    /// Value at `x`; the last step is closed on the right.
    pub fn evaluate(&self, x: f64) -> Option<f64> {
        let (lo, hi) = self.support();
        if !(x >= lo && x <= hi) {
            return None;
        }
        let i = self.breakpoints.partition_point(|&b| b <= x);
        Some(self.values[(i.max(1) - 1).min(self.values.len() - 1)])
    }

    /// `(start, end, value)` per step.
    pub fn steps(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.breakpoints
            .windows(2)
            .zip(&self.values)
            .map(|(w, &v)| (w[0], w[1], v))
    }
}

/// How edge values are laid out along the line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepLayout {
    /// Each edge value is held over its own edge.
    #[default]
    EdgeAligned,
    /// Steps start at edge barycenters; the last one runs to the right end.
    Barycentric,
}

fn interval_edges(complex: &SimplicialComplex, cochain: &Cochain) -> Result<Vec<(f64, f64)>> {
    if complex.dimension() != 1 || complex.ambient_dimension() != Some(1) {
        return Err(Error::Unsupported("step functions need a 1D embedded complex".into()));
    }
    if cochain.degree() != 1 || cochain.len() != complex.count(1) {
        return Err(Error::Shape {
            expected: format!("degree-1 cochain with {} values", complex.count(1)),
            actual: format!("degree-{} with {} values", cochain.degree(), cochain.len()),
        });
    }
    let coords = complex.coords().expect("embedded");
    Ok(complex
        .simplices(1)
        .iter()
        .map(|e| {
            let (a, b) = (coords[e[0]][0], coords[e[1]][0]);
            (a.min(b), a.max(b))
        })
        .collect())
}

/// Steps starting at each edge barycenter, the last extended to the right end.
pub fn to_stairs(complex: &SimplicialComplex, cochain: &Cochain) -> Result<StairsFunction> {
    let edges = interval_edges(complex, cochain)?;
    let mut breakpoints: Vec<f64> = edges.iter().map(|(a, b)| 0.5 * (a + b)).collect();
    let right = edges.iter().map(|e| e.1).fold(f64::NEG_INFINITY, f64::max);
    breakpoints.push(right);
    StairsFunction::new(breakpoints, cochain.values().to_vec())
        .map_err(|_| Error::InvalidComplex("edges are not sorted left to right without overlap".into()))
}

/// Each edge value held constant over its edge.
pub fn to_edge_steps(complex: &SimplicialComplex, cochain: &Cochain) -> Result<StairsFunction> {
    let edges = interval_edges(complex, cochain)?;
    if edges.windows(2).any(|w| w[0].1 != w[1].0) {
        return Err(Error::InvalidComplex(
            "edges are not contiguous and sorted left to right".into(),
        ));
    }
    let mut breakpoints: Vec<f64> = edges.iter().map(|e| e.0).collect();
    breakpoints.push(edges.last().expect("nonempty").1);
    StairsFunction::new(breakpoints, cochain.values().to_vec())
}

pub fn to_steps(complex: &SimplicialComplex, cochain: &Cochain, layout: StepLayout) -> Result<StairsFunction> {
    match layout {
        StepLayout::EdgeAligned => to_edge_steps(complex, cochain),
        StepLayout::Barycentric => to_stairs(complex, cochain),
    }
}

/// `sqrt(∫ (stairs - reference)^2)` over the stairs support.
pub fn l2_error_stairs(stairs: &StairsFunction, reference: &dyn Fn(f64) -> f64) -> Result<f64> {
    let mut total = 0.0;
    for (a, b, v) in stairs.steps() {
        let g = |x: f64| (v - reference(x)).powi(2);
        total += integrate(&g, a, b, STEP_ABS_TOL, STEP_MAX_SUBDIVISIONS)?.value;
    }
    Ok(total.max(0.0).sqrt())
}

/// `max |predicted - reference|` over sample pairs.
pub fn linf_error(samples: &[(f64, f64)]) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::Argument("L-infinity error of an empty sample list".into()));
    }
    Ok(samples.iter().map(|(p, r)| (p - r).abs()).fold(0.0, f64::max))
}

/// An edge value next to the reference at the edge barycenter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EdgeSample {
    pub x: f64,
    pub predicted: f64,
    pub reference: f64,
}

fn side_of(config: &FracConfig) -> Side {
    match config.sidedness {
        Sidedness::LeftSided => Side::Left,
        Sidedness::TwoSided => Side::TwoSided,
    }
}

fn check_reference(family: &ClosedFormFamily, config: &FracConfig) -> Result<()> {
    if family.family().dimension() == Some(2) {
        return Err(Error::Argument(format!("{} is not a 1D family", family.family())));
    }
    if family.s() != config.s || family.side() != side_of(config) {
        return Err(Error::Config(format!(
            "reference ({}, s = {}, {:?}) does not match the operator (s = {}, {:?})",
            family.family(),
            family.s(),
            family.side(),
            config.s,
            config.sidedness
        )));
    }
    Ok(())
}

/// `D_0^s` of the family's vertex samples on `n` uniform edges of `[0, 1]`.
pub fn frac_derivative_1d(family: Family, n: usize, config: &FracConfig) -> Result<(SimplicialComplex, Cochain)> {
    if family.dimension() == Some(2) {
        return Err(Error::Argument(format!("{family} is not a 1D family")));
    }
    let complex = interval_mesh(0.0, 1.0, n)?;
    let alpha = Cochain::sample_vertices(&complex, |p| family.value(p))?;
    let out = build_frac_derivative(&complex, 0, config)?.apply(&alpha)?;
    Ok((complex, out))
}

fn edge_barycenters(complex: &SimplicialComplex) -> Vec<f64> {
    (0..complex.count(1))
        .map(|i| complex.barycenter(1, i).expect("embedded")[0])
        .collect()
}

/// Edge values against the closed form at the edge barycenters.
pub fn edge_samples(family: &ClosedFormFamily, n: usize, config: &FracConfig) -> Result<Vec<EdgeSample>> {
    check_reference(family, config)?;
    let (complex, out) = frac_derivative_1d(family.family(), n, config)?;
    edge_barycenters(&complex)
        .into_iter()
        .zip(out.values())
        .map(|(x, &predicted)| {
            Ok(EdgeSample {
                x,
                predicted,
                reference: family.evaluate_1d(x)?,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub n: usize,
    pub error: f64,
    /// `error / previous error`; absent on the first row.
    pub ratio: Option<f64>,
}

/// L2 error against the closed form for each edge count.
pub fn convergence_study(
    family: &ClosedFormFamily,
    edge_counts: &[usize],
    config: &FracConfig,
    layout: StepLayout,
) -> Result<Vec<ConvergenceRow>> {
    check_reference(family, config)?;
    if edge_counts.is_empty() {
        return Err(Error::Argument("no edge counts given".into()));
    }
    let reference = |x: f64| family.evaluate_1d(x).unwrap_or(f64::NAN);
    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(edge_counts.len());
    for &n in edge_counts {
        let (complex, out) = frac_derivative_1d(family.family(), n, config)?;
        let stairs = to_steps(&complex, &out, layout)?;
        let error = l2_error_stairs(&stairs, &reference)?;
        let ratio = rows.last().map(|r| error / r.error);
        rows.push(ConvergenceRow { n, error, ratio });
    }
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub s: f64,
    pub linf_error: f64,
}

/// L-infinity error at edge barycenters against the exact polynomial
/// derivative, over `s` for each `n`. The default `c_s` is used per order.
pub fn fractional_order_sweep(
    family: Family,
    edge_counts: &[usize],
    orders: &[f64],
    base: &FracConfig,
) -> Result<Vec<SweepRow>> {
    let coeffs = family
        .axis_polynomial(0)
        .filter(|_| family.dimension() != Some(2))
        .ok_or_else(|| Error::Argument(format!("{family} is not a 1D polynomial family")))?;
    if edge_counts.is_empty() || orders.is_empty() {
        return Err(Error::Argument("sweep needs edge counts and orders".into()));
    }
    let exact = PolynomialCaputo::on_unit_interval(coeffs)?;
    let mut rows = Vec::new();
    for &n in edge_counts {
        for &s in orders {
            let config = FracConfig {
                s,
                c_s: FracConfig::default_c_s(s),
                ..*base
            };
            let (complex, out) = frac_derivative_1d(family, n, &config)?;
            let samples = edge_barycenters(&complex)
                .into_iter()
                .zip(out.values())
                .map(|(x, &p)| Ok((p, exact.evaluate(x, s, side_of(&config), config.right_sign)?)))
                .collect::<Result<Vec<_>>>()?;
            rows.push(SweepRow {
                n,
                s,
                linf_error: linf_error(&samples)?,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::RightSign;

    #[test]
    fn stairs_on_two_edges() {
        let k = interval_mesh(0.0, 1.0, 2).unwrap();
        let c = Cochain::on(&k, 1, vec![3.0, -1.0]).unwrap();
        let st = to_stairs(&k, &c).unwrap();
        assert_eq!(st.breakpoints(), &[0.25, 0.75, 1.0]);
        assert_eq!(st.evaluate(0.5), Some(3.0));
        assert_eq!(st.evaluate(0.9), Some(-1.0));
        assert_eq!(st.evaluate(1.0), Some(-1.0));
        assert_eq!(st.evaluate(0.1), None);
        let edges = to_edge_steps(&k, &c).unwrap();
        assert_eq!(edges.breakpoints(), &[0.0, 0.5, 1.0]);
    }

    #[test]
    fn stairs_support_at_1024() {
        let k = interval_mesh(0.0, 1.0, 1024).unwrap();
        let st = to_stairs(&k, &Cochain::zeros(&k, 1)).unwrap();
        assert_eq!(st.support(), (1.0 / 2048.0, 1.0));
    }

    #[test]
    fn constant_stairs() {
        let k = interval_mesh(0.0, 2.0, 5).unwrap();
        let st = to_stairs(&k, &Cochain::constant(&k, 1, 1.5)).unwrap();
        assert!(st.steps().all(|(_, _, v)| v == 1.5));
        assert_eq!(l2_error_stairs(&st, &|_| 1.5).unwrap(), 0.0);
    }

    #[test]
    fn unsorted_edges_are_rejected() {
        let k = SimplicialComplex::from_simplices(
            3,
            vec![vec![0, 1], vec![0, 2]],
            Some(vec![vec![0.0], vec![2.0], vec![1.0]]),
            None,
        )
        .unwrap();
        let c = Cochain::zeros(&k, 1);
        assert!(matches!(to_stairs(&k, &c), Err(Error::InvalidComplex(_))));
        assert!(matches!(to_edge_steps(&k, &c), Err(Error::InvalidComplex(_))));
    }

    #[test]
    fn l2_of_a_step_against_piecewise_constant() {
        let st = StairsFunction::new(vec![0.0, 0.5, 1.0], vec![1.0, 2.0]).unwrap();
        assert_eq!(l2_error_stairs(&st, &|x| if x < 0.5 { 1.0 } else { 2.0 }).unwrap(), 0.0);
        let e = l2_error_stairs(&st, &|_| 0.0).unwrap();
        assert!((e - 2.5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn linf_examples() {
        assert_eq!(linf_error(&[(1.0, 3.0)]).unwrap(), 2.0);
        assert_eq!(linf_error(&[(0.5, 0.5), (2.0, 2.0)]).unwrap(), 0.0);
        assert!(matches!(linf_error(&[]), Err(Error::Argument(_))));
    }

    #[test]
    fn single_row_study() {
        let family = ClosedFormFamily::new(Family::Poly, 0.5, Side::TwoSided).unwrap();
        let rows = convergence_study(&family, &[2], &FracConfig::new(0.5).unwrap(), StepLayout::EdgeAligned)
            .unwrap();
        assert_eq!(rows.len(), 1);
        assert!(rows[0].ratio.is_none());
        assert!((rows[0].error - 1.5619).abs() < 1e-4);
    }

    #[test]
    fn mismatched_reference_is_a_config_error() {
        let family = ClosedFormFamily::new(Family::Poly, 0.5, Side::TwoSided).unwrap();
        let config = FracConfig::new(0.4).unwrap();
        assert!(matches!(
            convergence_study(&family, &[4], &config, StepLayout::EdgeAligned),
            Err(Error::Config(_))
        ));
        let config = FracConfig::new(0.5).unwrap();
        assert!(convergence_study(&family, &[], &config, StepLayout::EdgeAligned).is_err());
    }

    #[test]
    fn sweep_shape() {
        let base = FracConfig::new(0.5).unwrap().with_right_sign(RightSign::Plus);
        let rows = fractional_order_sweep(Family::Poly, &[8, 16], &[0.25, 0.5, 0.75], &base).unwrap();
        assert_eq!(rows.len(), 6);
        assert!(rows.iter().all(|r| r.linf_error.is_finite() && r.linf_error > 0.0));
        assert!(fractional_order_sweep(Family::Exp, &[8], &[0.5], &base).is_err());
    }
}
