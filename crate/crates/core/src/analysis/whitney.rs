use crate::error::{Error, Result};
use crate::mesh::{Cochain, SimplicialComplex};

/// Per-triangle affine field `Σ_i λ_i A_i`, with
/// `A_i = Σ_{j≠i} c_ij ∇λ_j` and `c_ji = -c_ij`.
#[derive(Debug, Clone, PartialEq)]
struct TriangleField {
    corners: [[f64; 2]; 3],
    grads: [[f64; 2]; 3],
    coeffs: [[f64; 2]; 3],
}

/// Whitney interpolation of a 1-cochain on a planar triangle mesh.
#[derive(Debug, Clone, PartialEq)]
pub struct WhitneyField {
    triangles: Vec<TriangleField>,
}

fn barycentric_gradients(p: &[[f64; 2]; 3]) -> Result<[[f64; 2]; 3]> {
    let e1 = [p[1][0] - p[0][0], p[1][1] - p[0][1]];
    let e2 = [p[2][0] - p[0][0], p[2][1] - p[0][1]];
    let det = e1[0] * e2[1] - e1[1] * e2[0];
    let scale = e1[0].hypot(e1[1]) * e2[0].hypot(e2[1]);
    if det.abs() <= 1e-14 * scale || scale == 0.0 {
        return Err(Error::Geometry(format!("triangle {p:?} has zero area")));
    }
    let g1 = [e2[1] / det, -e2[0] / det];
    let g2 = [-e1[1] / det, e1[0] / det];
    Ok([[-g1[0] - g2[0], -g1[1] - g2[1]], g1, g2])
}

/// Builds `Σ_e c_e (λ_i ∇λ_j - λ_j ∇λ_i)` on every triangle, each edge
/// oriented from its lower to its higher vertex index.
pub fn whitney_reconstruct(complex: &SimplicialComplex, cochain: &Cochain) -> Result<WhitneyField> {
    if complex.dimension() != 2 || complex.ambient_dimension() != Some(2) {
        return Err(Error::Unsupported(
            "Whitney reconstruction needs a planar triangle mesh".into(),
        ));
    }
    if cochain.degree() != 1 || cochain.len() != complex.count(1) {
        return Err(Error::Shape {
            expected: format!("degree-1 cochain with {} values", complex.count(1)),
            actual: format!("degree-{} with {} values", cochain.degree(), cochain.len()),
        });
    }
    let coords = complex.coords().expect("embedded");
    let values = cochain.values();
    let triangles = complex
        .simplices(2)
        .iter()
        .map(|t| {
            let corners = [0, 1, 2].map(|k| [coords[t[k]][0], coords[t[k]][1]]);
            let grads = barycentric_gradients(&corners)?;
            let mut c = [[0.0; 3]; 3];
            for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                let edge = complex.index_of(&[t[i], t[j]]).expect("closed complex");
                c[i][j] = values[edge];
                c[j][i] = -values[edge];
            }
            let coeffs = [0, 1, 2].map(|i| {
                let mut a = [0.0; 2];
                for j in 0..3 {
                    a[0] += c[i][j] * grads[j][0];
                    a[1] += c[i][j] * grads[j][1];
                }
                a
            });
            Ok(TriangleField { corners, grads, coeffs })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WhitneyField { triangles })
}

impl WhitneyField {
    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    pub fn evaluate_barycentric(&self, triangle: usize, lambda: [f64; 3]) -> [f64; 2] {
        let a = &self.triangles[triangle].coeffs;
        [
            lambda[0] * a[0][0] + lambda[1] * a[1][0] + lambda[2] * a[2][0],
            lambda[0] * a[0][1] + lambda[1] * a[1][1] + lambda[2] * a[2][1],
        ]
    }

    /// Value at a point of the triangle's plane (extended affinely outside it).
    pub fn evaluate(&self, triangle: usize, point: [f64; 2]) -> [f64; 2] {
        let t = &self.triangles[triangle];
        let d = [point[0] - t.corners[0][0], point[1] - t.corners[0][1]];
        let l1 = t.grads[1][0] * d[0] + t.grads[1][1] * d[1];
        let l2 = t.grads[2][0] * d[0] + t.grads[2][1] * d[1];
        self.evaluate_barycentric(triangle, [1.0 - l1 - l2, l1, l2])
    }

    /// `∫ F · dr` along the straight segment from `from` to `to`, using this
    /// triangle's affine field. Two-point Gauss is exact for affine fields.
    pub fn tangential_integral(&self, triangle: usize, from: [f64; 2], to: [f64; 2]) -> f64 {
        let d = [to[0] - from[0], to[1] - from[1]];
        let offset = 0.5 / 3f64.sqrt();
        [0.5 - offset, 0.5 + offset]
            .iter()
            .map(|&u| {
                let v = self.evaluate(triangle, [from[0] + u * d[0], from[1] + u * d[1]]);
                0.5 * (v[0] * d[0] + v[1] * d[1])
            })
            .sum()
    }

    /// Value at each triangle's barycenter, where every `λ_i` is 1/3.
    pub fn at_barycenters(&self) -> Vec<[f64; 2]> {
        let third = 1.0 / 3.0;
        (0..self.len())
            .map(|t| self.evaluate_barycentric(t, [third; 3]))
            .collect()
    }
}

pub fn eval_at_barycenters(field: &WhitneyField, complex: &SimplicialComplex) -> Result<Vec<[f64; 2]>> {
    if field.len() != complex.count(2) {
        return Err(Error::Shape {
            expected: format!("field over {} triangles", complex.count(2)),
            actual: format!("{} triangles", field.len()),
        });
    }
    Ok(field.at_barycenters())
}
