//! Command-line front end. Every run is described by an [`ExperimentConfig`],
//! which is written into the output so the file can be regenerated with
//! `fracdec rerun`.

mod run;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::analysis::StepLayout;
use crate::error::{Error, Result};
use crate::metric::DistanceMode;
use crate::operator::{FracConfig, RightSign, Sidedness};
use crate::oracles::Family;

pub use run::{execute, extract_config, Output};

/// Prefix of the first line of every text output.
pub const HEADER_PREFIX: &str = "# fracdec-config: ";
/// Key holding the config in JSON outputs.
pub const JSON_CONFIG_KEY: &str = "fracdec_config";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MeshSource {
    Interval { a: f64, b: f64, edges: usize },
    Square { n: usize },
    File { path: PathBuf },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InputSpec {
    Family { family: String },
    Values { path: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    #[default]
    Caputo,
    RlExperimental,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum OracleMethod {
    #[default]
    Closed,
    Quadrature,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum CommandConfig {
    GenMesh {
        mesh: MeshSource,
        mesh_format: MeshFormat,
    },
    FracDeriv {
        mesh: MeshSource,
        input: InputSpec,
        degree: usize,
        variant: Variant,
    },
    Convergence {
        family: String,
        edges: Vec<usize>,
        layout: StepLayout,
    },
    Sweep {
        family: String,
        edges: Vec<usize>,
        orders: Vec<f64>,
    },
    Field2d {
        family: String,
        n: usize,
    },
    OracleSample {
        family: String,
        points: usize,
        method: OracleMethod,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeshFormat {
    Json,
    Off,
}

/// Everything that determines an output file, apart from where it goes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub command: CommandConfig,
    pub operator: FracConfig,
    pub seed: u64,
    pub format: OutputFormat,
}

impl ExperimentConfig {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }

    pub fn header(&self) -> String {
        format!("{HEADER_PREFIX}{}\n", self.to_json())
    }

    /// Checks everything that can be checked before computing.
    pub fn validate(&self) -> Result<()> {
        self.operator.validate()?;
        match &self.command {
            CommandConfig::GenMesh { mesh, .. } | CommandConfig::FracDeriv { mesh, .. } => {
                if let MeshSource::Interval { a, b, edges } = mesh {
                    if !(a < b) || *edges == 0 {
                        return Err(Error::Argument(format!(
                            "interval needs a < b and at least one edge (a = {a}, b = {b}, edges = {edges})"
                        )));
                    }
                }
                if let MeshSource::Square { n: 0 } = mesh {
                    return Err(Error::Argument("square mesh needs n >= 1".into()));
                }
                if let CommandConfig::FracDeriv {
                    input: InputSpec::Family { family },
                    degree,
                    ..
                } = &self.command
                {
                    family.parse::<Family>()?;
                    if *degree != 0 {
                        return Err(Error::Argument(
                            "families are sampled at vertices; use --values for degree > 0".into(),
                        ));
                    }
                }
            }
            CommandConfig::Convergence { family, edges, .. } => {
                family.parse::<Family>()?;
                check_edges(edges)?;
            }
            CommandConfig::Sweep { family, edges, orders } => {
                family.parse::<Family>()?;
                check_edges(edges)?;
                if orders.is_empty() || orders.iter().any(|s| !(*s > 0.0 && *s < 1.0)) {
                    return Err(Error::Argument("orders must be a nonempty list in (0, 1)".into()));
                }
            }
            CommandConfig::Field2d { family, n } => {
                if family.parse::<Family>()?.dimension() != Some(2) {
                    return Err(Error::Argument(format!("{family} is not a 2D family")));
                }
                if *n == 0 {
                    return Err(Error::Argument("square mesh needs n >= 1".into()));
                }
            }
            CommandConfig::OracleSample { family, points, .. } => {
                family.parse::<Family>()?;
                if *points == 0 {
                    return Err(Error::Argument("need at least one sample point".into()));
                }
            }
        }
        Ok(())
    }
}

fn check_edges(edges: &[usize]) -> Result<()> {
    if edges.is_empty() || edges.contains(&0) {
        return Err(Error::Argument("edge counts must be a nonempty list of positive integers".into()));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Two,
    Left,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DistanceArg {
    Geodesic,
    Euclidean,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LayoutArg {
    EdgeAligned,
    Barycentric,
}

#[derive(Debug, Parser)]
#[command(name = "fracdec", version, about = "Fractional discrete exterior derivatives on simplicial complexes")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Fractional order in (0, 1].
    #[arg(long = "s", global = true, default_value_t = 0.5)]
    s: f64,
    /// Diagonal constant; defaults to 2s / (1 - s).
    #[arg(long = "cs", global = true)]
    cs: Option<f64>,
    #[arg(long, global = true, value_enum, default_value = "two")]
    sidedness: SideArg,
    #[arg(long = "right-sign", global = true, value_enum, default_value = "plus")]
    right_sign: SignArg,
    #[arg(long, global = true, value_enum, default_value = "geodesic")]
    distance: DistanceArg,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "csv")]
    format: OutputFormat,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate an interval or unit-square mesh (.off or .json by extension).
    GenMesh {
        #[command(subcommand)]
        shape: Shape,
    },
    /// Apply the fractional derivative to a sampled function or a cochain file.
    FracDeriv(FracDerivArgs),
    /// L2 convergence table, or an L-infinity sweep over s with --sweep.
    Convergence(ConvergenceArgs),
    /// Fractional gradient on the unit square against the closed form.
    Field2d {
        #[arg(long, default_value = "saddle_2d")]
        family: String,
        #[arg(long, default_value_t = 8)]
        n: usize,
    },
    /// Evaluate a reference derivative at interior points.
    OracleSample {
        #[arg(long)]
        family: String,
        /// Interior points per axis.
        #[arg(long, default_value_t = 19)]
        points: usize,
        #[arg(long, value_enum, default_value = "closed")]
        method: OracleMethod,
    },
    /// Regenerate an output from the config recorded in it.
    Rerun { input: PathBuf },
}

#[derive(Debug, Subcommand)]
enum Shape {
    Interval {
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        b: f64,
        #[arg(long)]
        edges: usize,
    },
    Square {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, Args)]
struct FracDerivArgs {
    /// Mesh file (.off or .json).
    #[arg(long, group = "mesh_source")]
    mesh: Option<PathBuf>,
    /// Uniform mesh of [0, 1] with this many edges.
    #[arg(long, group = "mesh_source")]
    interval: Option<usize>,
    /// Unit-square mesh with an n x n grid.
    #[arg(long, group = "mesh_source")]
    square: Option<usize>,
    /// Built-in function sampled at the vertices.
    #[arg(long, group = "input")]
    family: Option<String>,
    /// One value per p-simplex, one per line (last comma field is used).
    #[arg(long, group = "input")]
    values: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    degree: usize,
    #[arg(long, value_enum, default_value = "caputo")]
    variant: Variant,
}

#[derive(Debug, Args)]
struct ConvergenceArgs {
    #[arg(long, default_value = "poly_neg10x3_plus_10x2")]
    family: String,
    /// Comma-separated edge counts.
    #[arg(long, default_value = "2,4,8,16,32,64,128,256,512,1024")]
    edges: String,
    #[arg(long, value_enum, default_value = "edge-aligned")]
    layout: LayoutArg,
    /// Sweep s instead of refining the mesh.
    #[arg(long)]
    sweep: bool,
    /// Comma-separated orders for --sweep; defaults to .05, .10, ..., .95.
    #[arg(long)]
    orders: Option<String>,
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<T>()
                .map_err(|_| Error::Argument(format!("bad {what} entry '{t}'")))
        })
        .collect()
}

fn canonical(family: String) -> Result<String> {
    Ok(family.parse::<Family>()?.to_string())
}

fn default_orders() -> Vec<f64> {
    (1..20).map(|k| k as f64 / 20.0).collect()
}

fn operator_config(g: &GlobalArgs) -> FracConfig {
    FracConfig {
        s: g.s,
        c_s: g.cs.unwrap_or_else(|| FracConfig::default_c_s(g.s)),
        sidedness: match g.sidedness {
            SideArg::Two => Sidedness::TwoSided,
            SideArg::Left => Sidedness::LeftSided,
        },
        right_sign: match g.right_sign {
            SignArg::Plus => RightSign::Plus,
            SignArg::Minus => RightSign::Minus,
        },
        distance_mode: match g.distance {
            DistanceArg::Geodesic => DistanceMode::Geodesic,
            DistanceArg::Euclidean => DistanceMode::Euclidean,
        },
    }
}

fn mesh_format_of(path: &Path) -> MeshFormat {
    match path.extension().and_then(|e| e.to_str()) {
        Some(e) if e.eq_ignore_ascii_case("off") => MeshFormat::Off,
        _ => MeshFormat::Json,
    }
}

fn build_config(command: Command, g: &GlobalArgs) -> Result<ExperimentConfig> {
    let command = match command {
        Command::GenMesh { shape } => {
            let output = g.output.as_deref().ok_or_else(|| {
                Error::Argument("gen-mesh needs an output path (-o/--output)".into())
            })?;
            let mesh = match shape {
                Shape::Interval { a, b, edges } => MeshSource::Interval { a, b, edges },
                Shape::Square { n } => MeshSource::Square { n },
            };
            CommandConfig::GenMesh {
                mesh,
                mesh_format: mesh_format_of(output),
            }
        }
        Command::FracDeriv(args) => {
            let mesh = match (args.mesh, args.interval, args.square) {
                (Some(path), _, _) => MeshSource::File { path },
                (_, Some(edges), _) => MeshSource::Interval { a: 0.0, b: 1.0, edges },
                (_, _, Some(n)) => MeshSource::Square { n },
                _ => {
                    return Err(Error::Argument(
                        "frac-deriv needs one of --mesh, --interval or --square".into(),
                    ))
                }
            };
            let input = match (args.family, args.values) {
                (Some(family), _) => InputSpec::Family {
                    family: canonical(family)?,
                },
                (_, Some(path)) => InputSpec::Values { path },
                _ => return Err(Error::Argument("frac-deriv needs --family or --values".into())),
            };
            CommandConfig::FracDeriv {
                mesh,
                input,
                degree: args.degree,
                variant: args.variant,
            }
        }
        Command::Convergence(args) => {
            let edges = parse_list(&args.edges, "edge count")?;
            if args.sweep {
                let orders = match &args.orders {
                    Some(text) => parse_list(text, "order")?,
                    None => default_orders(),
                };
                CommandConfig::Sweep {
                    family: canonical(args.family)?,
                    edges,
                    orders,
                }
            } else {
                CommandConfig::Convergence {
                    family: canonical(args.family)?,
                    edges,
                    layout: match args.layout {
                        LayoutArg::EdgeAligned => StepLayout::EdgeAligned,
                        LayoutArg::Barycentric => StepLayout::Barycentric,
                    },
                }
            }
        }
        Command::Field2d { family, n } => CommandConfig::Field2d {
            family: canonical(family)?,
            n,
        },
        Command::OracleSample { family, points, method } => CommandConfig::OracleSample {
            family: canonical(family)?,
            points,
            method,
        },
        Command::Rerun { .. } => unreachable!("handled by the caller"),
    };
    let config = ExperimentConfig {
        command,
        operator: operator_config(g),
        seed: g.seed,
        format: g.format,
    };
    config.validate()?;
    Ok(config)
}

fn write_output(output: &Output, path: Option<&Path>) -> Result<()> {
    match path {
        Some(path) => {
            std::fs::write(path, &output.text).map_err(|e| Error::io(path, e))?;
            if let Some(summary) = &output.summary {
                println!("{summary}");
            }
        }
        None => print!("{}", output.text),
    }
    Ok(())
}

fn run_parsed(cli: Cli) -> Result<()> {
    let Cli { global, command } = cli;
    let config = match command {
        Command::Rerun { input } => {
            let text = std::fs::read_to_string(&input).map_err(|e| Error::io(&input, e))?;
            extract_config(&text, &input)?
        }
        other => build_config(other, &global)?,
    };
    write_output(&execute(&config)?, global.output.as_deref())
}

/// Parses `args` (including the program name), runs, and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run_parsed(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn main() -> i32 {
    main_with_args(std::env::args_os())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config_from(args: &[&str]) -> Result<ExperimentConfig> {
        let cli = Cli::try_parse_from(args).unwrap();
        build_config(cli.command, &cli.global)
    }

    #[test]
    fn header_round_trips() {
        let config = config_from(&["fracdec", "--s", "0.25", "convergence", "--edges", "2,4"]).unwrap();
        let header = config.header();
        assert!(header.starts_with(HEADER_PREFIX) && header.ends_with('\n'));
        let back: ExperimentConfig =
            serde_json::from_str(header.trim_end().strip_prefix(HEADER_PREFIX).unwrap()).unwrap();
        assert_eq!(back, config);
        assert!(!header.contains("output"));
    }

    #[test]
    fn usage_errors() {
        for args in [
            &["fracdec", "gen-mesh", "square", "--n", "4"][..],
            &["fracdec", "convergence", "--edges", ""],
            &["fracdec", "frac-deriv", "--interval", "4", "--family", "sine"],
            &["fracdec", "field2d", "--family", "poly"],
            &["fracdec", "--s", "1.5", "field2d"],
        ] {
            let err = config_from(args).unwrap_err();
            assert_eq!(err.exit_code(), 2, "{args:?}: {err}");
        }
    }

    #[test]
    fn global_flags_after_subcommand() {
        let config = config_from(&[
            "fracdec", "frac-deriv", "--interval", "8", "--family", "cubic", "--right-sign", "minus",
            "--sidedness", "left", "--distance", "euclidean", "--cs", "3",
        ])
        .unwrap();
        assert_eq!(config.operator.right_sign, RightSign::Minus);
        assert_eq!(config.operator.sidedness, Sidedness::LeftSided);
        assert_eq!(config.operator.distance_mode, DistanceMode::Euclidean);
        assert_eq!(config.operator.c_s, 3.0);
    }
}
