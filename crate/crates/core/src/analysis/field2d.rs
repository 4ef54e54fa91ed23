use serde::Serialize;

use crate::error::{Error, Result};
use crate::mesh::{unit_square_mesh, Cochain};
use crate::operator::{build_frac_derivative, FracConfig};
use crate::oracles::ClosedFormFamily;

use super::whitney::whitney_reconstruct;

/// Reference vectors at most this long get no relative error.
pub const ZERO_REFERENCE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorSummary {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    pub argmax: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RelativeErrors {
    /// `None` where the reference vanishes.
    pub values: Vec<Option<f64>>,
    pub flagged: Vec<usize>,
    /// Over unflagged triangles; `None` if every triangle is flagged.
    pub summary: Option<ErrorSummary>,
}

fn norm(v: [f64; 2]) -> f64 {
    v[0].hypot(v[1])
}

/// `|pred - ref| / |ref|` per triangle.
pub fn relative_l2_per_triangle(predicted: &[[f64; 2]], reference: &[[f64; 2]]) -> Result<RelativeErrors> {
    if predicted.len() != reference.len() {
        return Err(Error::Shape {
            expected: format!("{} predicted vectors", reference.len()),
            actual: format!("{}", predicted.len()),
        });
    }
    let values: Vec<Option<f64>> = predicted
        .iter()
        .zip(reference)
        .map(|(p, r)| {
            let size = norm(*r);
            (size > ZERO_REFERENCE_TOL).then(|| norm([p[0] - r[0], p[1] - r[1]]) / size)
        })
        .collect();
    let flagged = values
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.is_none().then_some(i))
        .collect();
    let mut summary: Option<ErrorSummary> = None;
    let mut sum = 0.0;
    let mut count = 0usize;
    for (i, v) in values.iter().enumerate() {
        let Some(v) = *v else { continue };
        sum += v;
        count += 1;
        summary = Some(match summary {
            None => ErrorSummary { min: v, max: v, mean: 0.0, argmax: i },
            Some(s) => ErrorSummary {
                min: s.min.min(v),
                max: s.max.max(v),
                argmax: if v > s.max { i } else { s.argmax },
                mean: 0.0,
            },
        });
    }
    if let Some(s) = summary.as_mut() {
        s.mean = sum / count as f64;
    }
    Ok(RelativeErrors { values, flagged, summary })
}

/// Index of the shortest reference vector.
pub fn critical_triangle(reference: &[[f64; 2]]) -> Option<usize> {
    reference
        .iter()
        .enumerate()
        .min_by(|a, b| norm(*a.1).total_cmp(&norm(*b.1)))
        .map(|(i, _)| i)
}

/// Grid cell `(i, j)` containing `point` on an `n x n` unit-square grid.
pub fn grid_cell(point: [f64; 2], n: usize) -> (usize, usize) {
    let cell = |t: f64| ((t * n as f64).floor().max(0.0) as usize).min(n - 1);
    (cell(point[0]), cell(point[1]))
}

/// Chebyshev distance between the grid cells holding two points.
pub fn grid_layer_distance(a: [f64; 2], b: [f64; 2], n: usize) -> usize {
    let (ai, aj) = grid_cell(a, n);
    let (bi, bj) = grid_cell(b, n);
    ai.abs_diff(bi).max(aj.abs_diff(bj))
}

/// Result of comparing `D_0^s` plus Whitney reconstruction against a closed
/// form gradient on the unit square.
#[derive(Debug, Clone, PartialEq)]
pub struct Field2dReport {
    pub n: usize,
    pub barycenters: Vec<[f64; 2]>,
    pub predicted: Vec<[f64; 2]>,
    pub reference: Vec<[f64; 2]>,
    pub errors: RelativeErrors,
    pub critical: usize,
}

impl Field2dReport {
    /// Grid layers between the worst triangle and the reference's critical
    /// triangle; `None` when no error is defined.
    pub fn worst_to_critical_layers(&self) -> Option<usize> {
        let worst = self.errors.summary?.argmax;
        Some(grid_layer_distance(self.barycenters[worst], self.barycenters[self.critical], self.n))
    }
}

pub fn field2d_experiment(family: &ClosedFormFamily, n: usize, config: &FracConfig) -> Result<Field2dReport> {
    if family.family().dimension() != Some(2) {
        return Err(Error::Argument(format!("{} is not a 2D family", family.family())));
    }
    if family.s() != config.s {
        return Err(Error::Config(format!(
            "reference order {} differs from operator order {}",
            family.s(),
            config.s
        )));
    }
    let complex = unit_square_mesh(n)?;
    let f = family.family();
    let alpha = Cochain::sample_vertices(&complex, |p| f.value(p))?;
    let out = build_frac_derivative(&complex, 0, config)?.apply(&alpha)?;
    let predicted = whitney_reconstruct(&complex, &out)?.at_barycenters();
    let barycenters: Vec<[f64; 2]> = (0..complex.count(2))
        .map(|t| {
            let b = complex.barycenter(2, t).expect("embedded");
            [b[0], b[1]]
        })
        .collect();
    let reference = barycenters
        .iter()
        .map(|b| family.evaluate_2d(b[0], b[1]))
        .collect::<Result<Vec<_>>>()?;
    let errors = relative_l2_per_triangle(&predicted, &reference)?;
    let critical = critical_triangle(&reference).expect("nonempty mesh");
    Ok(Field2dReport {
        n,
        barycenters,
        predicted,
        reference,
        errors,
        critical,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::{Family, Side};

    #[test]
    fn identical_fields_have_zero_error() {
        let v = vec![[1.0, 2.0], [0.0, -1.0]];
        let e = relative_l2_per_triangle(&v, &v).unwrap();
        assert_eq!(e.values, vec![Some(0.0), Some(0.0)]);
        assert_eq!(e.summary.unwrap().max, 0.0);
    }

    #[test]
    fn zero_reference_is_flagged() {
        let e = relative_l2_per_triangle(&[[1.0, 0.0], [2.0, 0.0]], &[[0.0, 0.0], [1.0, 0.0]]).unwrap();
        assert_eq!(e.flagged, vec![0]);
        assert_eq!(e.values[0], None);
        let s = e.summary.unwrap();
        assert_eq!((s.min, s.max, s.mean, s.argmax), (1.0, 1.0, 1.0, 1));
        assert!(relative_l2_per_triangle(&[[0.0; 2]], &[]).is_err());
        assert!(relative_l2_per_triangle(&[[1.0, 0.0]], &[[0.0, 0.0]]).unwrap().summary.is_none());
    }

    #[test]
    fn grid_layers() {
        assert_eq!(grid_cell([0.99, 1.0], 4), (3, 3));
        assert_eq!(grid_layer_distance([0.1, 0.1], [0.6, 0.3], 4), 2);
    }

    #[test]
    fn saddle_experiment_runs() {
        let family = ClosedFormFamily::new(Family::Saddle2d, 0.5, Side::TwoSided).unwrap();
        let report = field2d_experiment(&family, 4, &FracConfig::new(0.5).unwrap()).unwrap();
        assert_eq!(report.predicted.len(), 32);
        let s = report.errors.summary.unwrap();
        assert!(s.min <= s.mean && s.mean <= s.max && s.max.is_finite());
        assert!(report.worst_to_critical_layers().is_some());
        let line = ClosedFormFamily::new(Family::Poly, 0.5, Side::TwoSided).unwrap();
        assert!(field2d_experiment(&line, 4, &FracConfig::new(0.5).unwrap()).is_err());
    }
}
