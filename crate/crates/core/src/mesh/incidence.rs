use std::collections::BTreeMap;

use crate::error::{Error, Result};

use super::{face_without, Cochain, SimplicialComplex};

/// Sparse signed coboundary `D_p`: rows are (p+1)-simplices, columns are
/// p-simplices. Each row stores its `p + 2` nonzeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceMatrix {
    degree: usize,
    cols: usize,
    rows: Vec<Vec<(usize, i8)>>,
}

/// Builds `D_p`. Row `r` for `[v_0 .. v_{p+1}]` carries `(-1)^k` on the face
/// that omits `v_k`.
pub fn build_coboundary(complex: &SimplicialComplex, p: usize) -> Result<IncidenceMatrix> {
    if p >= complex.dimension() {
        return Err(Error::Degree {
            degree: p,
            dimension: complex.dimension(),
        });
    }
    let rows = complex
        .simplices(p + 1)
        .iter()
        .map(|simplex| {
            let mut row: Vec<(usize, i8)> = (0..simplex.len())
                .map(|k| {
                    let face = face_without(simplex, k);
                    let col = complex
                        .index_of(&face)
                        .expect("complex is closed under faces");
                    (col, if k % 2 == 0 { 1 } else { -1 })
                })
                .collect();
            row.sort_unstable_by_key(|&(c, _)| c);
            row
        })
        .collect();
    Ok(IncidenceMatrix {
        degree: p,
        cols: complex.count(p),
        rows,
    })
}

impl IncidenceMatrix {
    /// Source degree `p`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[(usize, i8)] {
        &self.rows[r]
    }

    pub fn get(&self, r: usize, c: usize) -> i8 {
        self.rows[r]
            .iter()
            .find(|&&(col, _)| col == c)
            .map_or(0, |&(_, v)| v)
    }

    pub fn to_dense(&self) -> Vec<Vec<i8>> {
        self.rows
            .iter()
            .map(|row| {
                let mut dense = vec![0; self.cols];
                for &(c, v) in row {
                    dense[c] = v;
                }
                dense
            })
            .collect()
    }

    /// Matrix-vector product, mapping a p-cochain to a (p+1)-cochain.
    pub fn apply(&self, cochain: &Cochain) -> Result<Cochain> {
        if cochain.degree() != self.degree || cochain.len() != self.cols {
            return Err(Error::Shape {
                expected: format!("degree-{} cochain with {} values", self.degree, self.cols),
                actual: format!(
                    "degree-{} cochain with {} values",
                    cochain.degree(),
                    cochain.len()
                ),
            });
        }
        Ok(Cochain::from_raw(self.degree + 1, self.apply_slice(cochain.values())))
    }

    pub(crate) fn apply_slice(&self, values: &[f64]) -> Vec<f64> {
        self.rows
            .iter()
            .map(|row| {
                row.iter().fold(0.0, |acc, &(c, sign)| {
                    if sign > 0 {
                        acc + values[c]
                    } else {
                        acc - values[c]
                    }
                })
            })
            .collect()
    }

    /// Integer product `self · rhs` (apply `rhs` first). Only nonzero entries
    /// are returned, keyed by `(row, col)`.
    pub fn compose(&self, rhs: &IncidenceMatrix) -> Result<BTreeMap<(usize, usize), i64>> {
        if self.cols != rhs.rows() {
            return Err(Error::Shape {
                expected: format!("{} rows on the right factor", self.cols),
                actual: format!("{} rows", rhs.rows()),
            });
        }
        let mut product = BTreeMap::new();
        for (r, row) in self.rows.iter().enumerate() {
            let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
            for &(mid, a) in row {
                for &(c, b) in rhs.row(mid) {
                    *acc.entry(c).or_default() += i64::from(a) * i64::from(b);
                }
            }
            for (c, v) in acc {
                if v != 0 {
                    product.insert((r, c), v);
                }
            }
        }
        Ok(product)
    }
}
