//! Distances between simplices.
//!
//! Vertex distances are shortest edge paths under the local metric (the edge
//! lengths). Two p-simplices are then `min d_m(u, v) + l(σ) + l(η)` apart,
//! where `l` is the mean distance from a simplex's barycenter to the
//! barycenters of its facets. In Euclidean mode the table holds plain
//! barycenter distances instead.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::fmt::Write as _;

use ndarray::Array2;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mesh::{euclidean, face_without, SimplicialComplex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceMode {
    #[default]
    Geodesic,
    Euclidean,
}

/// Dense symmetric table of distances between all p-simplices.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceTable {
    degree: usize,
    mode: DistanceMode,
    entries: Array2<f64>,
}

impl DistanceTable {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn mode(&self) -> DistanceMode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.entries.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.nrows() == 0
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[[i, j]]
    }

    pub fn entries(&self) -> &Array2<f64> {
        &self.entries
    }

    /// Smallest distance between two distinct simplices, if there are two.
    pub fn min_off_diagonal(&self) -> Option<f64> {
        let n = self.len();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| self.entries[[i, j]])
            .min_by(f64::total_cmp)
    }

    /// Builds a table from a full matrix, mirroring the upper triangle so the
    /// result is exactly symmetric.
    pub fn from_matrix(degree: usize, mode: DistanceMode, mut entries: Array2<f64>) -> Result<Self> {
        let n = entries.nrows();
        if entries.ncols() != n {
            return Err(Error::Shape {
                expected: "square distance matrix".into(),
                actual: format!("{}x{}", n, entries.ncols()),
            });
        }
        for i in 0..n {
            entries[[i, i]] = 0.0;
            for j in i + 1..n {
                let d = entries[[i, j]];
                if !(d.is_finite() && d >= 0.0) {
                    return Err(Error::Domain(format!("distance ({i}, {j}) = {d}")));
                }
                entries[[j, i]] = d;
            }
        }
        Ok(Self {
            degree,
            mode,
            entries,
        })
    }

    /// Long-format CSV: `row,col,distance`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("row,col,distance\n");
        for ((i, j), d) in self.entries.indexed_iter() {
            writeln!(out, "{i},{j},{d}").unwrap();
        }
        out
    }
}

/// Barycenters of all p-simplices with their barycenter-to-boundary lengths.
#[derive(Debug, Clone, PartialEq)]
pub struct BarycenterSet {
    pub points: Vec<Vec<f64>>,
    pub boundary_lengths: Vec<f64>,
}

pub fn barycenters(complex: &SimplicialComplex, p: usize) -> Result<BarycenterSet> {
    complex.require_degree(p)?;
    if complex.coords().is_none() {
        return Err(Error::Unsupported("barycenters need vertex coordinates".into()));
    }
    let points = (0..complex.count(p))
        .map(|i| complex.barycenter(p, i).expect("embedded"))
        .collect();
    Ok(BarycenterSet {
        points,
        boundary_lengths: boundary_lengths(complex, p)?,
    })
}

/// `l(σ)` for every p-simplex, from edge lengths alone: the mean distance
/// between the barycenter and the barycenters of the facets. Vertices get 0,
/// edges half their length, triangles the mean of `median / 3`.
pub fn boundary_lengths(complex: &SimplicialComplex, p: usize) -> Result<Vec<f64>> {
    complex.require_degree(p)?;
    if p == 0 {
        return Ok(vec![0.0; complex.count(0)]);
    }
    complex
        .simplices(p)
        .iter()
        .map(|simplex| {
            let facets: Vec<Vec<usize>> =
                (0..simplex.len()).map(|k| face_without(simplex, k)).collect();
            let total: f64 = facets
                .iter()
                .map(|f| barycenter_gap(complex, simplex, f).map(f64::sqrt))
                .sum::<Result<f64>>()?;
            Ok(total / facets.len() as f64)
        })
        .collect()
}

// Squared distance between the barycenters of two vertex sets of one simplex,
// from pairwise squared lengths:
// |G_S - G_T|^2 = mean_{S x T} d^2 - mean_{S x S} d^2 / 2 - mean_{T x T} d^2 / 2.
fn barycenter_gap(complex: &SimplicialComplex, s: &[usize], t: &[usize]) -> Result<f64> {
    let sq = |a: usize, b: usize| -> Result<f64> {
        if a == b {
            return Ok(0.0);
        }
        let edge = [a.min(b), a.max(b)];
        let idx = complex
            .index_of(&edge)
            .ok_or_else(|| Error::InvalidComplex(format!("missing edge {edge:?}")))?;
        Ok(complex.edge_length(idx).powi(2))
    };
    let mean = |x: &[usize], y: &[usize]| -> Result<f64> {
        let mut acc = 0.0;
        for &a in x {
            for &b in y {
                acc += sq(a, b)?;
            }
        }
        Ok(acc / (x.len() * y.len()) as f64)
    };
    let gap = mean(s, t)? - 0.5 * mean(s, s)? - 0.5 * mean(t, t)?;
    Ok(gap.max(0.0))
}

#[derive(Copy, Clone, PartialEq)]
struct Visit {
    dist: f64,
    vertex: usize,
}

impl Eq for Visit {}

impl Ord for Visit {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for Visit {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn dijkstra(adjacency: &[Vec<(usize, f64)>], source: usize) -> Vec<f64> {
    let mut dist = vec![f64::INFINITY; adjacency.len()];
    let mut heap = BinaryHeap::new();
    dist[source] = 0.0;
    heap.push(Visit {
        dist: 0.0,
        vertex: source,
    });
    while let Some(Visit { dist: d, vertex: u }) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        for &(v, len) in &adjacency[u] {
            let next = d + len;
            if next < dist[v] {
                dist[v] = next;
                heap.push(Visit {
                    dist: next,
                    vertex: v,
                });
            }
        }
    }
    dist
}

fn symmetric_from_rows(rows: Vec<Vec<f64>>) -> Result<Array2<f64>> {
    let n = rows.len();
    let mut table = Array2::zeros((n, n));
    for i in 0..n {
        for j in i + 1..n {
            let d = rows[i][j];
            if !d.is_finite() {
                return Err(Error::Disconnected { from: i, to: j });
            }
            table[[i, j]] = d;
            table[[j, i]] = d;
        }
    }
    Ok(table)
}

/// Shortest-path distance between every pair of vertices (Dijkstra per source).
pub fn all_pairs_vertex_distance(complex: &SimplicialComplex) -> Result<DistanceTable> {
    let adjacency = complex.vertex_adjacency();
    let rows: Vec<Vec<f64>> = (0..complex.num_vertices())
        .into_par_iter()
        .map(|s| dijkstra(&adjacency, s))
        .collect();
    Ok(DistanceTable {
        degree: 0,
        mode: DistanceMode::Geodesic,
        entries: symmetric_from_rows(rows)?,
    })
}

/// Floyd–Warshall over the same graph; O(V^3), kept as a cross-check.
pub fn floyd_warshall_vertex_distance(complex: &SimplicialComplex) -> Result<DistanceTable> {
    let n = complex.num_vertices();
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0.0;
    }
    for (edge, &len) in complex.simplices(1).iter().zip(complex.edge_lengths()) {
        let (a, b) = (edge[0], edge[1]);
        d[a][b] = d[a][b].min(len);
        d[b][a] = d[b][a].min(len);
    }
    for k in 0..n {
        for i in 0..n {
            let dik = d[i][k];
            if !dik.is_finite() {
                continue;
            }
            for j in 0..n {
                let via = dik + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    Ok(DistanceTable {
        degree: 0,
        mode: DistanceMode::Geodesic,
        entries: symmetric_from_rows(d)?,
    })
}

/// Distance table between all p-simplices.
pub fn simplex_distance(
    complex: &SimplicialComplex,
    p: usize,
    mode: DistanceMode,
) -> Result<DistanceTable> {
    complex.require_degree(p)?;
    match mode {
        DistanceMode::Geodesic => {
            let vertex = all_pairs_vertex_distance(complex)?;
            geodesic_simplex_distance(complex, p, &vertex)
        }
        DistanceMode::Euclidean => euclidean_simplex_distance(complex, p),
    }
}

/// Geodesic simplex distances reusing a precomputed vertex table.
pub fn geodesic_simplex_distance(
    complex: &SimplicialComplex,
    p: usize,
    vertex: &DistanceTable,
) -> Result<DistanceTable> {
    complex.require_degree(p)?;
    if vertex.degree() != 0 || vertex.len() != complex.num_vertices() {
        return Err(Error::Shape {
            expected: format!("vertex distance table over {} vertices", complex.num_vertices()),
            actual: format!("degree-{} table of size {}", vertex.degree(), vertex.len()),
        });
    }
    if p == 0 {
        return Ok(vertex.clone());
    }
    let l = boundary_lengths(complex, p)?;
    let simplices = complex.simplices(p);
    let rows: Vec<Vec<f64>> = (0..simplices.len())
        .into_par_iter()
        .map(|i| {
            let mut row = vec![0.0; simplices.len()];
            for j in i + 1..simplices.len() {
                let closest = simplices[i]
                    .iter()
                    .flat_map(|&u| simplices[j].iter().map(move |&v| vertex.get(u, v)))
                    .fold(f64::INFINITY, f64::min);
                row[j] = closest + l[i] + l[j];
            }
            row
        })
        .collect();
    Ok(DistanceTable {
        degree: p,
        mode: DistanceMode::Geodesic,
        entries: symmetric_from_rows(rows)?,
    })
}

fn euclidean_simplex_distance(complex: &SimplicialComplex, p: usize) -> Result<DistanceTable> {
    let centers = barycenters(complex, p)?.points;
    let rows: Vec<Vec<f64>> = (0..centers.len())
        .into_par_iter()
        .map(|i| {
            let mut row = vec![0.0; centers.len()];
            for j in i + 1..centers.len() {
                row[j] = euclidean(&centers[i], &centers[j]);
            }
            row
        })
        .collect();
    Ok(DistanceTable {
        degree: p,
        mode: DistanceMode::Euclidean,
        entries: symmetric_from_rows(rows)?,
    })
}
