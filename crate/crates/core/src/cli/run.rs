use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use crate::analysis::{convergence_study, field2d_experiment, fractional_order_sweep};
use crate::error::{Error, Result};
use crate::mesh::io::{load_mesh, to_json_string, to_off_string};
use crate::mesh::{interval_mesh, unit_square_mesh, Cochain, SimplicialComplex};
use crate::operator::{build_frac_derivative, build_riemann_liouville_experimental, Sidedness};
use crate::oracles::{caputo_quadrature, ClosedFormFamily, Family, QuadratureSpec, Side};

use super::{
    CommandConfig, ExperimentConfig, InputSpec, MeshFormat, MeshSource, OracleMethod, OutputFormat,
    Variant, HEADER_PREFIX, JSON_CONFIG_KEY,
};

/// File contents plus an optional line for the terminal.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub text: String,
    pub summary: Option<String>,
}

impl Output {
    fn plain(text: String) -> Self {
        Self { text, summary: None }
    }
}

/// Recovers the config from a file written by [`execute`].
pub fn extract_config(text: &str, origin: &Path) -> Result<ExperimentConfig> {
    let fail = |line: usize, message: String| Error::Format {
        path: origin.to_path_buf(),
        line,
        message,
    };
    if text.trim_start().starts_with('{') {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::Json {
            path: origin.to_path_buf(),
            source: e,
        })?;
        let config = value
            .get(JSON_CONFIG_KEY)
            .ok_or_else(|| fail(1, format!("no \"{JSON_CONFIG_KEY}\" key")))?;
        return serde_json::from_value(config.clone()).map_err(|e| Error::Json {
            path: origin.to_path_buf(),
            source: e,
        });
    }
    let (line, json) = text
        .lines()
        .enumerate()
        .find_map(|(i, l)| l.strip_prefix(HEADER_PREFIX).map(|j| (i + 1, j)))
        .ok_or_else(|| fail(1, "no config header line".into()))?;
    let config: ExperimentConfig =
        serde_json::from_str(json).map_err(|e| fail(line, format!("bad config header: {e}")))?;
    config.validate()?;
    Ok(config)
}

fn build_mesh(source: &MeshSource) -> Result<SimplicialComplex> {
    match source {
        MeshSource::Interval { a, b, edges } => interval_mesh(*a, *b, *edges),
        MeshSource::Square { n } => unit_square_mesh(*n),
        MeshSource::File { path } => load_mesh(path),
    }
}

fn side_of(config: &ExperimentConfig) -> Side {
    match config.operator.sidedness {
        Sidedness::TwoSided => Side::TwoSided,
        Sidedness::LeftSided => Side::Left,
    }
}

/// A CSV table or a JSON document, both carrying the config.
struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    trailer: Vec<String>,
    json_rows: Vec<Value>,
    json_extra: Vec<(&'static str, Value)>,
}

impl Table {
    fn new(columns: Vec<&'static str>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
            trailer: Vec::new(),
            json_rows: Vec::new(),
            json_extra: Vec::new(),
        }
    }

    fn push(&mut self, cells: Vec<String>, json: impl Serialize) {
        self.rows.push(cells);
        self.json_rows.push(serde_json::to_value(json).expect("row serializes"));
    }

    fn render(self, config: &ExperimentConfig) -> String {
        match config.format {
            OutputFormat::Csv => {
                let mut out = config.header();
                writeln!(out, "{}", self.columns.join(",")).unwrap();
                for row in &self.rows {
                    writeln!(out, "{}", row.join(",")).unwrap();
                }
                for line in &self.trailer {
                    writeln!(out, "# {line}").unwrap();
                }
                out
            }
            OutputFormat::Json => {
                let mut doc = serde_json::Map::new();
                doc.insert(JSON_CONFIG_KEY.into(), serde_json::to_value(config).expect("config"));
                doc.insert("rows".into(), Value::Array(self.json_rows));
                for (k, v) in self.json_extra {
                    doc.insert(k.into(), v);
                }
                let mut out = serde_json::to_string_pretty(&Value::Object(doc)).expect("json");
                out.push('\n');
                out
            }
        }
    }
}

fn cell(v: f64) -> String {
    v.to_string()
}

fn opt_cell(v: Option<f64>) -> String {
    v.map(cell).unwrap_or_default()
}

/// Runs the experiment described by `config`.
pub fn execute(config: &ExperimentConfig) -> Result<Output> {
    config.validate()?;
    match &config.command {
        CommandConfig::GenMesh { mesh, mesh_format } => gen_mesh(config, mesh, *mesh_format),
        CommandConfig::FracDeriv {
            mesh,
            input,
            degree,
            variant,
        } => frac_deriv(config, mesh, input, *degree, *variant),
        CommandConfig::Convergence { family, edges, layout } => {
            let family = ClosedFormFamily::new(family.parse()?, config.operator.s, side_of(config))?;
            let rows = convergence_study(&family, edges, &config.operator, *layout)?;
            let mut table = Table::new(vec!["n", "l2_error", "ratio"]);
            for r in &rows {
                table.push(vec![r.n.to_string(), cell(r.error), opt_cell(r.ratio)], r);
            }
            Ok(Output::plain(table.render(config)))
        }
        CommandConfig::Sweep { family, edges, orders } => {
            let rows = fractional_order_sweep(family.parse()?, edges, orders, &config.operator)?;
            let mut table = Table::new(vec!["n", "s", "linf_error"]);
            for r in &rows {
                table.push(vec![r.n.to_string(), cell(r.s), cell(r.linf_error)], r);
            }
            Ok(Output::plain(table.render(config)))
        }
        CommandConfig::Field2d { family, n } => field2d(config, family, *n),
        CommandConfig::OracleSample { family, points, method } => {
            oracle_sample(config, family.parse()?, *points, *method)
        }
    }
}

fn gen_mesh(config: &ExperimentConfig, source: &MeshSource, format: MeshFormat) -> Result<Output> {
    if let MeshSource::File { .. } = source {
        return Err(Error::Argument("gen-mesh builds interval or square meshes".into()));
    }
    let complex = build_mesh(source)?;
    let text = match format {
        MeshFormat::Off => format!("{}{}", config.header(), to_off_string(&complex)?),
        MeshFormat::Json => {
            let mut value: Value = serde_json::from_str(&to_json_string(&complex)).expect("mesh json");
            value
                .as_object_mut()
                .expect("object")
                .insert(JSON_CONFIG_KEY.into(), serde_json::to_value(config).expect("config"));
            let mut out = serde_json::to_string_pretty(&value).expect("json");
            out.push('\n');
            out
        }
    };
    let counts: Vec<String> = (0..=complex.dimension()).map(|p| complex.count(p).to_string()).collect();
    Ok(Output {
        text,
        summary: Some(format!("simplex counts by dimension: {}", counts.join(" "))),
    })
}

fn read_values(path: &Path) -> Result<Vec<f64>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut values = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let field = line.rsplit(',').next().unwrap_or("").trim();
        match field.parse::<f64>() {
            Ok(v) => values.push(v),
            Err(_) if values.is_empty() => {} // column header
            Err(_) => {
                return Err(Error::Format {
                    path: path.to_path_buf(),
                    line: i + 1,
                    message: format!("expected a number, found '{field}'"),
                })
            }
        }
    }
    Ok(values)
}

fn frac_deriv(
    config: &ExperimentConfig,
    source: &MeshSource,
    input: &InputSpec,
    degree: usize,
    variant: Variant,
) -> Result<Output> {
    let complex = build_mesh(source)?;
    let alpha = match input {
        InputSpec::Family { family } => {
            let family: Family = family.parse()?;
            Cochain::sample_vertices(&complex, |p| family.value(p))?
        }
        InputSpec::Values { path } => Cochain::on(&complex, degree, read_values(path)?)?,
    };
    let op = match variant {
        Variant::Caputo => build_frac_derivative(&complex, degree, &config.operator)?,
        Variant::RlExperimental => {
            build_riemann_liouville_experimental(&complex, degree, &config.operator)?
        }
    };
    let out = op.apply(&alpha)?;
    let target = degree + 1;
    let ambient = complex.ambient_dimension().unwrap_or(0);
    let mut columns = vec!["index", "vertices"];
    columns.extend(["x", "y", "z"].iter().take(ambient));
    columns.push("value");
    let mut table = Table::new(columns);
    for (i, (simplex, &v)) in complex.simplices(target).iter().zip(out.values()).enumerate() {
        let vertices: Vec<String> = simplex.iter().map(usize::to_string).collect();
        let mut cells = vec![i.to_string(), vertices.join(" ")];
        let centre = complex.barycenter(target, i).unwrap_or_default();
        cells.extend(centre.iter().map(|&c| cell(c)));
        cells.push(cell(v));
        table.push(
            cells,
            json!({ "index": i, "vertices": simplex, "barycenter": centre, "value": v }),
        );
    }
    table.json_extra.push(("operator_kind", json!(op.kind().to_string())));
    Ok(Output::plain(table.render(config)))
}

fn field2d(config: &ExperimentConfig, family: &str, n: usize) -> Result<Output> {
    let family = ClosedFormFamily::new(family.parse()?, config.operator.s, Side::TwoSided)?;
    let report = field2d_experiment(&family, n, &config.operator)?;
    let mut table = Table::new(vec![
        "tri_index", "cx", "cy", "vx_pred", "vy_pred", "vx_ref", "vy_ref", "rel_error",
    ]);
    for t in 0..report.barycenters.len() {
        let (b, p, r) = (report.barycenters[t], report.predicted[t], report.reference[t]);
        let e = report.errors.values[t];
        table.push(
            vec![t.to_string(), cell(b[0]), cell(b[1]), cell(p[0]), cell(p[1]), cell(r[0]), cell(r[1]), opt_cell(e)],
            json!({ "tri_index": t, "barycenter": b, "predicted": p, "reference": r, "rel_error": e }),
        );
    }
    let summary = match report.errors.summary {
        Some(s) => format!(
            "summary: min={} max={} mean={} argmax={} flagged={} critical_triangle={} worst_to_critical_layers={}",
            s.min,
            s.max,
            s.mean,
            s.argmax,
            report.errors.flagged.len(),
            report.critical,
            report.worst_to_critical_layers().unwrap_or(0)
        ),
        None => format!("summary: all {} triangles flagged", report.errors.flagged.len()),
    };
    table.trailer.push(summary.clone());
    table.json_extra.push(("summary", json!(report.errors.summary)));
    table.json_extra.push(("flagged", json!(report.errors.flagged)));
    table.json_extra.push(("critical_triangle", json!(report.critical)));
    Ok(Output {
        text: table.render(config),
        summary: Some(summary),
    })
}

fn oracle_sample(config: &ExperimentConfig, family: Family, points: usize, method: OracleMethod) -> Result<Output> {
    let s = config.operator.s;
    let side = side_of(config);
    let grid: Vec<f64> = (1..=points).map(|k| k as f64 / (points + 1) as f64).collect();
    let quad = |axis: usize, t: f64| {
        caputo_quadrature(
            &|u| family.axis_derivative(axis, u),
            (0.0, 1.0),
            t,
            s,
            side,
            config.operator.right_sign,
            &QuadratureSpec::default(),
        )
    };
    let closed = match method {
        OracleMethod::Closed => Some(ClosedFormFamily::new(family, s, side)?),
        OracleMethod::Quadrature => None,
    };
    let name = family.to_string();
    if family.is_2d() {
        let mut table = Table::new(vec!["x", "y", "family", "s", "value_x", "value_y"]);
        for &y in &grid {
            for &x in &grid {
                let v = match &closed {
                    Some(c) => c.evaluate_2d(x, y)?,
                    None => [quad(0, x)?, quad(1, y)?],
                };
                table.push(
                    vec![cell(x), cell(y), name.clone(), cell(s), cell(v[0]), cell(v[1])],
                    json!({ "x": x, "y": y, "family": name, "s": s, "value": v }),
                );
            }
        }
        return Ok(Output::plain(table.render(config)));
    }
    let mut table = Table::new(vec!["x", "family", "s", "value"]);
    for &x in &grid {
        let v = match &closed {
            Some(c) => c.evaluate_1d(x)?,
            None => quad(0, x)?,
        };
        table.push(
            vec![cell(x), name.clone(), cell(s), cell(v)],
            json!({ "x": x, "family": name, "s": s, "value": v }),
        );
    }
    Ok(Output::plain(table.render(config)))
}
