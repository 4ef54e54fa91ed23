use crate::error::{Error, Result};

use super::SimplicialComplex;

/// Uniform mesh of `[a, b]` with `n_edges` edges, vertices numbered left to right.
pub fn interval_mesh(a: f64, b: f64, n_edges: usize) -> Result<SimplicialComplex> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::Domain(format!("interval needs a < b, got [{a}, {b}]")));
    }
    if n_edges == 0 {
        return Err(Error::Domain("interval mesh needs at least one edge".into()));
    }
    let h = (b - a) / n_edges as f64;
    let coords = (0..=n_edges)
        .map(|i| {
            if i == n_edges {
                vec![b]
            } else {
                vec![a + i as f64 * h]
            }
        })
        .collect();
    let overrides = (0..n_edges).map(|i| ((i, i + 1), h)).collect();
    SimplicialComplex::from_simplices(
        n_edges + 1,
        (0..n_edges).map(|i| vec![i, i + 1]),
        Some(coords),
        Some(&overrides),
    )
}

/// Triangulated `[0, 1]^2` with an `n x n` grid; every cell is cut along its
/// lower-left to upper-right diagonal. Vertex `(i, j)` has index `j (n + 1) + i`.
pub fn unit_square_mesh(n: usize) -> Result<SimplicialComplex> {
    if n == 0 {
        return Err(Error::Domain("square mesh needs n >= 1".into()));
    }
    let side = n + 1;
    let coords = (0..side)
        .flat_map(|j| (0..side).map(move |i| vec![i as f64 / n as f64, j as f64 / n as f64]))
        .collect();
    let at = |i: usize, j: usize| j * side + i;
    let mut triangles = Vec::with_capacity(2 * n * n);
    for j in 0..n {
        for i in 0..n {
            let (ll, lr, ul, ur) = (at(i, j), at(i + 1, j), at(i, j + 1), at(i + 1, j + 1));
            triangles.push(vec![ll, lr, ur]);
            triangles.push(vec![ll, ul, ur]);
        }
    }
    SimplicialComplex::from_simplices(side * side, triangles, Some(coords), None)
}
