use crate::error::{Error, Result};

use super::SimplicialComplex;

/// A discrete p-form: one real value per p-simplex, indexed like
/// [`SimplicialComplex::simplices`].
#[derive(Debug, Clone, PartialEq)]
pub struct Cochain {
    degree: usize,
    values: Vec<f64>,
}

impl Cochain {
    pub fn new(degree: usize, values: Vec<f64>) -> Result<Self> {
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Domain(format!(
                "cochain value {i} is not finite ({})",
                values[i]
            )));
        }
        Ok(Self { degree, values })
    }

    /// Checks the length against the complex as well.
    pub fn on(complex: &SimplicialComplex, degree: usize, values: Vec<f64>) -> Result<Self> {
        complex.require_degree(degree)?;
        let expected = complex.count(degree);
        if values.len() != expected {
            return Err(Error::Shape {
                expected: format!("{expected} values for degree {degree}"),
                actual: format!("{} values", values.len()),
            });
        }
        Self::new(degree, values)
    }

    pub fn zeros(complex: &SimplicialComplex, degree: usize) -> Self {
        Self {
            degree,
            values: vec![0.0; complex.count(degree)],
        }
    }

    pub fn constant(complex: &SimplicialComplex, degree: usize, value: f64) -> Self {
        Self {
            degree,
            values: vec![value; complex.count(degree)],
        }
    }

    /// Samples `f` at every vertex (degree 0). Requires an embedding.
    pub fn sample_vertices(
        complex: &SimplicialComplex,
        f: impl Fn(&[f64]) -> f64,
    ) -> Result<Self> {
        let coords = complex
            .coords()
            .ok_or_else(|| Error::Unsupported("sampling needs vertex coordinates".into()))?;
        Self::new(0, coords.iter().map(|p| f(p)).collect())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub(crate) fn from_raw(degree: usize, values: Vec<f64>) -> Self {
        Self { degree, values }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::interval_mesh;

    #[test]
    fn rejects_non_finite_values() {
        assert!(Cochain::new(0, vec![1.0, f64::NAN]).is_err());
        assert!(Cochain::new(0, vec![f64::INFINITY]).is_err());
    }

    #[test]
    fn length_must_match_complex() {
        let k = interval_mesh(0.0, 1.0, 2).unwrap();
        assert!(Cochain::on(&k, 0, vec![0.0; 3]).is_ok());
        assert!(matches!(
            Cochain::on(&k, 0, vec![0.0; 2]),
            Err(Error::Shape { .. })
        ));
        assert!(matches!(
            Cochain::on(&k, 2, vec![]),
            Err(Error::Degree { .. })
        ));
    }
}
