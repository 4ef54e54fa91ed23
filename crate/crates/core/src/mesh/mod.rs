//! Simplicial complexes, cochains and the signed coboundary.
//!
//! Simplices are stored as strictly increasing vertex tuples, so orientation
//! follows the global vertex order. Each dimension keeps its simplices in
//! lexicographic order; the position in that list is the simplex index used by
//! cochains and operator matrices.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};

mod cochain;
mod generate;
mod incidence;
pub mod io;

pub use cochain::Cochain;
pub use generate::{interval_mesh, unit_square_mesh};
pub use incidence::{build_coboundary, IncidenceMatrix};

/// Edge-length overrides keyed by the (unordered) vertex pair.
pub type EdgeLengths = BTreeMap<(usize, usize), f64>;

const EDGE_LENGTH_RTOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct SimplicialComplex {
    dimension: usize,
    num_vertices: usize,
    coords: Option<Vec<Vec<f64>>>,
    simplices: Vec<Vec<Vec<usize>>>,
    lookup: Vec<HashMap<Vec<usize>, usize>>,
    edge_lengths: Vec<f64>,
}

impl SimplicialComplex {
    /// Builds the closure of `simplices` over `num_vertices` vertices.
    ///
    /// Vertex tuples may be given in any order; they are sorted. Every face is
    /// added automatically and every vertex becomes a 0-simplex, isolated or
    /// not. Edge lengths come from `coords` unless overridden; a complex without
    /// coordinates needs an override for every edge.
    pub fn from_simplices<I>(
        num_vertices: usize,
        simplices: I,
        coords: Option<Vec<Vec<f64>>>,
        overrides: Option<&EdgeLengths>,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<usize>>,
    {
        if num_vertices == 0 {
            return Err(Error::InvalidComplex("complex has no vertices".into()));
        }
        if let Some(points) = &coords {
            validate_coords(points, num_vertices)?;
        }

        let mut levels: Vec<BTreeSet<Vec<usize>>> = vec![(0..num_vertices).map(|v| vec![v]).collect()];
        for mut simplex in simplices {
            simplex.sort_unstable();
            if simplex.is_empty() {
                return Err(Error::InvalidComplex("empty simplex".into()));
            }
            if simplex.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidComplex(format!(
                    "simplex {simplex:?} repeats a vertex"
                )));
            }
            if let Some(&v) = simplex.iter().find(|&&v| v >= num_vertices) {
                return Err(Error::InvalidComplex(format!(
                    "vertex {v} out of range ({num_vertices} vertices)"
                )));
            }
            insert_with_faces(&mut levels, simplex);
        }

        let simplices: Vec<Vec<Vec<usize>>> = levels
            .into_iter()
            .map(|level| level.into_iter().collect())
            .collect();
        let lookup: Vec<HashMap<Vec<usize>, usize>> = simplices
            .iter()
            .map(|level| {
                level
                    .iter()
                    .enumerate()
                    .map(|(i, s)| (s.clone(), i))
                    .collect()
            })
            .collect();

        let edges: &[Vec<usize>] = simplices.get(1).map(Vec::as_slice).unwrap_or(&[]);
        let mut edge_lengths = Vec::with_capacity(edges.len());
        for edge in edges {
            let key = (edge[0], edge[1]);
            let length = match (overrides.and_then(|o| o.get(&key)), &coords) {
                (Some(&len), _) => len,
                (None, Some(points)) => euclidean(&points[edge[0]], &points[edge[1]]),
                (None, None) => {
                    return Err(Error::InvalidComplex(format!(
                        "edge {edge:?} has no length and the complex has no coordinates"
                    )))
                }
            };
            if !(length.is_finite() && length > 0.0) {
                return Err(Error::InvalidComplex(format!(
                    "edge {edge:?} has non-positive or non-finite length {length}"
                )));
            }
            edge_lengths.push(length);
        }
        if let Some(o) = overrides {
            if let Some(key) = o.keys().find(|(a, b)| a >= b || !lookup_has(&lookup, &[*a, *b])) {
                return Err(Error::InvalidComplex(format!(
                    "edge-length override for {key:?} does not name an edge"
                )));
            }
        }

        Ok(Self {
            dimension: simplices.len() - 1,
            num_vertices,
            coords,
            simplices,
            lookup,
            edge_lengths,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    /// Number of p-simplices (zero above the top dimension).
    pub fn count(&self, p: usize) -> usize {
        self.simplices.get(p).map_or(0, Vec::len)
    }

    pub fn simplices(&self, p: usize) -> &[Vec<usize>] {
        self.simplices.get(p).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn index_of(&self, simplex: &[usize]) -> Option<usize> {
        lookup_index(&self.lookup, simplex)
    }

    pub fn coords(&self) -> Option<&[Vec<f64>]> {
        self.coords.as_deref()
    }

    /// Dimension of the embedding space, if the complex is embedded.
    pub fn ambient_dimension(&self) -> Option<usize> {
        self.coords.as_ref().map(|c| c[0].len())
    }

    pub fn edge_lengths(&self) -> &[f64] {
        &self.edge_lengths
    }

    pub fn edge_length(&self, edge: usize) -> f64 {
        self.edge_lengths[edge]
    }

    /// Coordinate average of the vertices of simplex `index` of degree `p`.
    pub fn barycenter(&self, p: usize, index: usize) -> Option<Vec<f64>> {
        let points = self.coords.as_ref()?;
        let simplex = &self.simplices[p][index];
        let mut center = vec![0.0; points[0].len()];
        for &v in simplex {
            for (c, x) in center.iter_mut().zip(&points[v]) {
                *c += x;
            }
        }
        let k = simplex.len() as f64;
        center.iter_mut().for_each(|c| *c /= k);
        Some(center)
    }

    pub fn require_degree(&self, p: usize) -> Result<()> {
        if p > self.dimension {
            Err(Error::Degree {
                degree: p,
                dimension: self.dimension,
            })
        } else {
            Ok(())
        }
    }

    /// Exhaustively checks that every face of every stored simplex is stored,
    /// that vertex tuples are strictly increasing and that embedded edge
    /// lengths agree with the coordinates (overrides aside, so this only
    /// reports disagreement as `Ok(false)`).
    pub fn check_invariants(&self) -> Result<bool> {
        for (p, level) in self.simplices.iter().enumerate() {
            for simplex in level {
                if simplex.len() != p + 1 || simplex.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::InvalidComplex(format!(
                        "simplex {simplex:?} is not a strictly increasing {p}-simplex"
                    )));
                }
                if p > 0 {
                    for k in 0..simplex.len() {
                        let face = face_without(simplex, k);
                        if self.index_of(&face).is_none() {
                            return Err(Error::InvalidComplex(format!(
                                "face {face:?} of {simplex:?} missing"
                            )));
                        }
                    }
                }
            }
        }
        let Some(points) = &self.coords else {
            return Ok(true);
        };
        Ok(self.simplices(1).iter().zip(&self.edge_lengths).all(|(e, &len)| {
            let exact = euclidean(&points[e[0]], &points[e[1]]);
            (len - exact).abs() <= EDGE_LENGTH_RTOL * exact
        }))
    }

    /// Vertex adjacency lists with edge lengths.
    pub fn vertex_adjacency(&self) -> Vec<Vec<(usize, f64)>> {
        let mut adjacency = vec![Vec::new(); self.num_vertices];
        for (edge, &len) in self.simplices(1).iter().zip(&self.edge_lengths) {
            adjacency[edge[0]].push((edge[1], len));
            adjacency[edge[1]].push((edge[0], len));
        }
        adjacency
    }
}

/// The face of `simplex` obtained by dropping its `k`-th vertex.
pub fn face_without(simplex: &[usize], k: usize) -> Vec<usize> {
    simplex
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != k)
        .map(|(_, &v)| v)
        .collect()
}

pub(crate) fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

fn insert_with_faces(levels: &mut Vec<BTreeSet<Vec<usize>>>, simplex: Vec<usize>) {
    let p = simplex.len() - 1;
    while levels.len() <= p {
        levels.push(BTreeSet::new());
    }
    if p == 0 || levels[p].contains(&simplex) {
        return;
    }
    for k in 0..simplex.len() {
        insert_with_faces(levels, face_without(&simplex, k));
    }
    levels[p].insert(simplex);
}

fn lookup_index(lookup: &[HashMap<Vec<usize>, usize>], simplex: &[usize]) -> Option<usize> {
    lookup
        .get(simplex.len().checked_sub(1)?)?
        .get(simplex)
        .copied()
}

fn lookup_has(lookup: &[HashMap<Vec<usize>, usize>], simplex: &[usize]) -> bool {
    lookup_index(lookup, simplex).is_some()
}

fn validate_coords(points: &[Vec<f64>], num_vertices: usize) -> Result<()> {
    if points.len() != num_vertices {
        return Err(Error::InvalidComplex(format!(
            "{} coordinate rows for {num_vertices} vertices",
            points.len()
        )));
    }
    let dim = points[0].len();
    if dim == 0 {
        return Err(Error::InvalidComplex("zero-dimensional coordinates".into()));
    }
    for (v, p) in points.iter().enumerate() {
        if p.len() != dim {
            return Err(Error::InvalidComplex(format!(
                "vertex {v} has {} coordinates, expected {dim}",
                p.len()
            )));
        }
        if p.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidComplex(format!("vertex {v} has a non-finite coordinate")));
        }
    }
    Ok(())
}
