use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lamina::coordinates::{assemble, dimension, DTCoordinates};
use lamina::geometry::validate_decomposition;
use lamina::intersection::{distinguishing_family, intersection_vector, oracle_cap, oracle_vector};
use lamina::rational::fmt_q;
use lamina::train_track::{extend_weights_arc, extend_weights_closed};
use lamina::{schema, CoordError, IntersectionError, ParseError, StructureError, TrackError};

#[derive(Parser)]
#[command(
    name = "lamina",
    version,
    about = "Coordinates and intersection numbers for measured laminations on surface pairs"
)]
struct Cli {
    /// Output mode.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Euler characteristic and geometric Euler characteristic of a surface
    /// pair or of the pair assembled from a decomposition.
    Chi { file: PathBuf },
    /// Checks a decomposition.
    Validate { file: PathBuf },
    /// Dimension of the lamination space of a decomposition.
    Dim { file: PathBuf },
    /// Checks a coordinates document against its decomposition.
    CoordsCheck { file: PathBuf },
    /// Intersection numbers with the distinguishing family.
    Intersect {
        file: PathBuf,
        /// Evaluate detectors and boundary arcs by drawing instead of by formula.
        #[arg(long)]
        oracle: bool,
        /// Weight cap for `--oracle` (defaults to LAMINA_ORACLE_CAP or 6).
        #[arg(long)]
        cap: Option<i64>,
    },
    /// Weights forced on a δ component by the branches attached to it.
    Extend { file: PathBuf },
    /// Draws the curve system of one piece.
    Svg {
        file: PathBuf,
        #[arg(long)]
        piece: String,
    },
}

/// A failure with its exit code: 1 for violated invariants, 2 for input
/// that cannot be read.
struct Failure {
    code: u8,
    kind: &'static str,
    detail: Value,
}

impl Failure {
    fn malformed(e: impl std::fmt::Display) -> Self {
        Failure { code: 2, kind: "malformed_input", detail: json!(e.to_string()) }
    }
    fn violation(kind: &'static str, detail: Value) -> Self {
        Failure { code: 1, kind, detail }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::malformed(e)
    }
}

impl From<StructureError> for Failure {
    fn from(e: StructureError) -> Self {
        Failure::malformed(e)
    }
}

impl From<CoordError> for Failure {
    fn from(e: CoordError) -> Self {
        match e {
            CoordError::Structure(s) => s.into(),
            CoordError::InvalidDecomposition(v) => Failure::violation("invalid_decomposition", json!(v)),
            CoordError::GluingMismatch(v) => Failure::violation("gluing_mismatch", json!(v)),
            other => Failure::violation("coordinates", json!(other.to_string())),
        }
    }
}

impl From<IntersectionError> for Failure {
    fn from(e: IntersectionError) -> Self {
        match e {
            IntersectionError::Coord(c) => c.into(),
            other => Failure::violation("intersection", json!(other.to_string())),
        }
    }
}

impl From<TrackError> for Failure {
    fn from(e: TrackError) -> Self {
        Failure::violation("track", json!(e.to_string()))
    }
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::malformed(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::malformed(format!("{}: {e}", path.display())))
}

fn load_coords(path: &Path) -> Result<DTCoordinates, Failure> {
    let v = read_json(path)?;
    let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let load = |rel: &str| -> Result<Value, ParseError> {
        let p = dir.join(rel);
        let text = std::fs::read_to_string(&p).map_err(|e| ParseError::Schema(format!("{}: {e}", p.display())))?;
        serde_json::from_str(&text).map_err(|e| ParseError::Schema(format!("{}: {e}", p.display())))
    };
    let (d, charts) = schema::coordinates_from_json(&v, load)?;
    Ok(assemble(&d, &charts)?)
}

/// Standard output and whether it reports a violation.
enum Report {
    Json(Value, bool),
    /// A document whose table form lists only `(key, value)` rows.
    Rows(Value, Vec<(String, String)>),
    Text(String),
}

fn chi(file: &Path) -> Result<Report, Failure> {
    let v = read_json(file)?;
    let out = if v.get("pieces").is_some() {
        let d = schema::decomposition_from_json(&v)?;
        d.check_structure()?;
        serde_json::to_value(d.derived()).expect("serializable")
    } else {
        let pair = schema::surface_pair_from_json(&v)?;
        json!({"chi": pair.chi(), "chi_g": fmt_q(&pair.chi_g()), "c": pair.alpha_arcs()})
    };
    Ok(Report::Json(out, false))
}

fn validate(file: &Path) -> Result<Report, Failure> {
    let d = schema::decomposition_from_json(&read_json(file)?)?;
    let report = validate_decomposition(&d)?;
    let bad = !report.ok;
    Ok(Report::Json(serde_json::to_value(report).expect("serializable"), bad))
}

fn dim(file: &Path) -> Result<Report, Failure> {
    let d = schema::decomposition_from_json(&read_json(file)?)?;
    Ok(Report::Json(serde_json::to_value(dimension(&d)?).expect("serializable"), false))
}

fn coords_check(file: &Path) -> Result<Report, Failure> {
    let coords = load_coords(file)?;
    let boundary: serde_json::Map<String, Value> =
        coords.boundary.iter().map(|(p, w)| (p.to_string(), json!(fmt_q(w)))).collect();
    Ok(Report::Json(json!({"ok": true, "boundary": boundary, "norm": fmt_q(&coords.norm())}), false))
}

fn intersect(file: &Path, oracle: bool, cap: Option<i64>) -> Result<Report, Failure> {
    let coords = load_coords(file)?;
    let family = distinguishing_family(&coords.decomposition)?;
    let vector = if oracle {
        oracle_vector(&coords, &family, cap.unwrap_or_else(oracle_cap))?
    } else {
        intersection_vector(&coords, &family)?
    };
    let rows = vector.entries.iter().map(|(k, v)| (k.clone(), v.to_string())).collect();
    let family: Vec<Value> = family.iter().map(|c| c.to_json()).collect();
    Ok(Report::Rows(json!({"family": family, "vector": vector}), rows))
}

fn extend(file: &Path) -> Result<Report, Failure> {
    let (closed, att) = schema::attachments_from_json(&read_json(file)?)?;
    let ext = if closed { extend_weights_closed(&att)? } else { extend_weights_arc(&att)? };
    let weights: Vec<String> = ext.segment_weights.iter().map(fmt_q).collect();
    let mut out = json!({"x0": fmt_q(&ext.x0), "weights": weights});
    if closed {
        out["algebraic_total"] = json!(fmt_q(&ext.algebraic_total));
        out["rotation"] = json!(ext.rotation);
        out["orientation_reversed"] = json!(ext.orientation_reversed);
    }
    Ok(Report::Json(out, false))
}

fn svg(file: &Path, piece: &str) -> Result<Report, Failure> {
    let coords = load_coords(file)?;
    let kind = coords.decomposition.kind(piece).ok_or_else(|| Failure::malformed(format!("no piece `{piece}`")))?;
    let drawing = lamina::render::render_svg(kind, coords.chart(piece))
        .map_err(|e| Failure::violation("chart", json!(e.to_string())))?;
    Ok(Report::Text(drawing))
}

/// Flattens a JSON value into `path<TAB>value` lines.
fn table(v: &Value, prefix: &str, out: &mut String) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                table(x, &if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") }, out);
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                table(x, &format!("{prefix}[{i}]"), out);
            }
        }
        Value::String(s) => out.push_str(&format!("{prefix}\t{s}\n")),
        other => out.push_str(&format!("{prefix}\t{other}\n")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Chi { file } => chi(file),
        Command::Validate { file } => validate(file),
        Command::Dim { file } => dim(file),
        Command::CoordsCheck { file } => coords_check(file),
        Command::Intersect { file, oracle, cap } => intersect(file, *oracle, *cap),
        Command::Extend { file } => extend(file),
        Command::Svg { file, piece } => svg(file, piece),
    };
    match result {
        Ok(Report::Text(s)) => {
            print!("{s}");
            ExitCode::SUCCESS
        }
        Ok(Report::Rows(v, rows)) => {
            if cli.format == Format::Table {
                for (k, x) in rows {
                    println!("{k}\t{x}");
                }
            } else {
                println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
            }
            ExitCode::SUCCESS
        }
        Ok(Report::Json(v, violated)) => {
            if cli.format == Format::Table {
                let mut s = String::new();
                table(&v, "", &mut s);
                print!("{s}");
            } else {
                println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
            }
            if violated {
                let err = json!({"error": "invariant_violation", "detail": v.get("violations").cloned().unwrap_or(Value::Null)});
                eprintln!("{err}");
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(f) => {
            eprintln!("{}", json!({"error": f.kind, "detail": f.detail}));
            ExitCode::from(f.code)
        }
    }
}
