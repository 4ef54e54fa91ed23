//! Mesh files: ASCII OFF (triangles) and a JSON complex format.
//!
//! JSON layout:
//!
//! ```json
//! {"dimension": 2,
//!  "vertices": [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]],
//!  "simplices": {"1": [[0, 1]], "2": [[0, 1, 2]]},
//!  "edge_lengths": {"0,1": 0.5}}
//! ```
//!
//! `edge_lengths` is an optional override map keyed by `"i,j"`. A complex
//! without coordinates omits `vertices`, gives `num_vertices` instead and must
//! list every edge length.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{euclidean, EdgeLengths, SimplicialComplex};
use crate::error::{Error, Result};

pub fn load_off(path: impl AsRef<Path>) -> Result<SimplicialComplex> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_off(&text, path)
}

/// Parses OFF text. `origin` only labels error messages.
pub fn parse_off(text: &str, origin: impl AsRef<Path>) -> Result<SimplicialComplex> {
    let origin = origin.as_ref().to_path_buf();
    let fail = |line: usize, message: String| Error::Format {
        path: origin.clone(),
        line,
        message,
    };

    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| fail(1, "empty file, expected OFF header".into()))?;
    let mut rest = header
        .strip_prefix("OFF")
        .ok_or_else(|| fail(header_line, format!("expected header \"OFF\", found {header:?}")))?
        .trim()
        .to_string();
    let mut counts_line = header_line;
    if rest.is_empty() {
        let (n, l) = lines
            .next()
            .ok_or_else(|| fail(header_line, "missing counts line".into()))?;
        counts_line = n;
        rest = l.to_string();
    }
    let counts: Vec<usize> = rest
        .split_whitespace()
        .map(|t| t.parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| fail(counts_line, format!("bad counts line: {e}")))?;
    if counts.len() < 2 {
        return Err(fail(counts_line, "counts line needs V and F".into()));
    }
    let (num_vertices, num_faces) = (counts[0], counts[1]);

    let mut points = Vec::with_capacity(num_vertices);
    for v in 0..num_vertices {
        let (n, l) = lines
            .next()
            .ok_or_else(|| fail(counts_line, format!("file ends before vertex {v}")))?;
        let xyz: Vec<f64> = l
            .split_whitespace()
            .take(3)
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| fail(n, format!("bad vertex coordinate: {e}")))?;
        if xyz.len() != 3 {
            return Err(fail(n, format!("vertex line needs 3 coordinates, found {}", xyz.len())));
        }
        points.push(xyz);
    }

    let mut triangles = Vec::with_capacity(num_faces);
    for f in 0..num_faces {
        let (n, l) = lines
            .next()
            .ok_or_else(|| fail(counts_line, format!("file ends before face {f}")))?;
        let mut tokens = l.split_whitespace();
        let k: usize = tokens
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| fail(n, "face line must start with a vertex count".into()))?;
        if k != 3 {
            return Err(Error::UnsupportedFace {
                path: origin.clone(),
                line: n,
                vertices: k,
            });
        }
        let tri: Vec<usize> = tokens
            .take(3)
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| fail(n, format!("bad face index: {e}")))?;
        if tri.len() != 3 {
            return Err(fail(n, "triangle needs 3 indices".into()));
        }
        if let Some(&bad) = tri.iter().find(|&&i| i >= num_vertices) {
            return Err(fail(n, format!("face index {bad} out of range")));
        }
        triangles.push(tri);
    }

    // Planar files come back as 2D embeddings.
    if points.iter().all(|p| p[2] == 0.0) {
        points.iter_mut().for_each(|p| p.truncate(2));
    }
    SimplicialComplex::from_simplices(num_vertices, triangles, Some(points), None).map_err(|e| {
        fail(counts_line, e.to_string())
    })
}

/// OFF text for an embedded complex of dimension at most 2 whose top simplices
/// are triangles. Counts line is `V F E`.
pub fn to_off_string(complex: &SimplicialComplex) -> Result<String> {
    let coords = complex
        .coords()
        .ok_or_else(|| Error::Unsupported("OFF needs vertex coordinates".into()))?;
    if complex.dimension() != 2 {
        return Err(Error::Unsupported(format!(
            "OFF stores triangle meshes, complex has dimension {}",
            complex.dimension()
        )));
    }
    if coords[0].len() > 3 {
        return Err(Error::Unsupported("OFF coordinates are at most 3D".into()));
    }
    let mut out = String::new();
    writeln!(out, "OFF").unwrap();
    writeln!(out, "{} {} {}", complex.num_vertices(), complex.count(2), complex.count(1)).unwrap();
    for p in coords {
        let xyz: Vec<String> = (0..3)
            .map(|i| format!("{:?}", p.get(i).copied().unwrap_or(0.0)))
            .collect();
        writeln!(out, "{}", xyz.join(" ")).unwrap();
    }
    for t in complex.simplices(2) {
        writeln!(out, "3 {} {} {}", t[0], t[1], t[2]).unwrap();
    }
    Ok(out)
}

pub fn write_off(complex: &SimplicialComplex, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, to_off_string(complex)?).map_err(|e| Error::io(path, e))
}

#[derive(Debug, Serialize, Deserialize)]
struct MeshJson {
    dimension: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    num_vertices: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vertices: Option<Vec<Vec<f64>>>,
    simplices: BTreeMap<String, Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    edge_lengths: Option<BTreeMap<String, f64>>,
}

pub fn to_json_string(complex: &SimplicialComplex) -> String {
    let simplices = (1..=complex.dimension())
        .map(|p| (p.to_string(), complex.simplices(p).to_vec()))
        .collect();
    // Only lengths that the coordinates would not reproduce bit for bit.
    let edge_lengths: BTreeMap<String, f64> = complex
        .simplices(1)
        .iter()
        .zip(complex.edge_lengths())
        .filter(|(e, &len)| {
            complex
                .coords()
                .is_none_or(|c| euclidean(&c[e[0]], &c[e[1]]) != len)
        })
        .map(|(e, &len)| (format!("{},{}", e[0], e[1]), len))
        .collect();
    let doc = MeshJson {
        dimension: complex.dimension(),
        num_vertices: complex.coords().is_none().then_some(complex.num_vertices()),
        vertices: complex.coords().map(<[Vec<f64>]>::to_vec),
        simplices,
        edge_lengths: (!edge_lengths.is_empty()).then_some(edge_lengths),
    };
    serde_json::to_string_pretty(&doc).expect("mesh serializes")
}

pub fn from_json_str(text: &str, origin: impl AsRef<Path>) -> Result<SimplicialComplex> {
    let origin: PathBuf = origin.as_ref().to_path_buf();
    let doc: MeshJson = serde_json::from_str(text).map_err(|source| Error::Json {
        path: origin.clone(),
        source,
    })?;
    let invalid = |message: String| Error::Format {
        path: origin.clone(),
        line: 0,
        message,
    };
    let num_vertices = match (&doc.vertices, doc.num_vertices) {
        (Some(v), Some(n)) if v.len() != n => {
            return Err(invalid(format!("num_vertices {n} but {} vertex rows", v.len())))
        }
        (Some(v), _) => v.len(),
        (None, Some(n)) => n,
        (None, None) => return Err(invalid("needs \"vertices\" or \"num_vertices\"".into())),
    };
    let mut simplices = Vec::new();
    for (key, list) in doc.simplices {
        let p: usize = key
            .parse()
            .map_err(|_| invalid(format!("simplex degree key {key:?} is not an integer")))?;
        if let Some(s) = list.iter().find(|s| s.len() != p + 1) {
            return Err(invalid(format!("{s:?} listed under degree {p}")));
        }
        simplices.extend(list);
    }
    let overrides: Option<EdgeLengths> = doc
        .edge_lengths
        .map(|m| {
            m.into_iter()
                .map(|(k, len)| {
                    let pair = k
                        .split_once(',')
                        .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)))
                        .ok_or_else(|| invalid(format!("edge key {k:?} is not \"i,j\"")))?;
                    let (a, b): (usize, usize) = pair;
                    Ok(((a.min(b), a.max(b)), len))
                })
                .collect::<Result<_>>()
        })
        .transpose()?;
    let complex =
        SimplicialComplex::from_simplices(num_vertices, simplices, doc.vertices, overrides.as_ref())?;
    if complex.dimension() != doc.dimension {
        return Err(invalid(format!(
            "declared dimension {} but simplices give {}",
            doc.dimension,
            complex.dimension()
        )));
    }
    Ok(complex)
}

pub fn load_json(path: impl AsRef<Path>) -> Result<SimplicialComplex> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    from_json_str(&text, path)
}

pub fn write_json(complex: &SimplicialComplex, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, to_json_string(complex) + "\n").map_err(|e| Error::io(path, e))
}

fn is_off(path: &Path) -> bool {
    path.extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("off"))
}

/// Loads `.off` files as OFF and everything else as JSON.
pub fn load_mesh(path: impl AsRef<Path>) -> Result<SimplicialComplex> {
    let path = path.as_ref();
    if is_off(path) {
        load_off(path)
    } else {
        load_json(path)
    }
}

pub fn write_mesh(complex: &SimplicialComplex, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    if is_off(path) {
        write_off(complex, path)
    } else {
        write_json(complex, path)
    }
}
