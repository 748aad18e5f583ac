//! The `pqbez` command line.
//!
//! Exit codes: 0 success, 1 audit failures, 2 usage or input errors,
//! 3 I/O errors.

pub mod error;
pub mod svg;

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::net::SocketAddr;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use pqbezier::curve::intermediate_points;
use pqbezier::document::Number;
use pqbezier::pq::tri;
use pqbezier::scalar::{format_rational, FromLiteral};
use pqbezier::{
    audit_all, default_audit_params, degree_elevate, subdivide, AlgorithmOptions, CurveDocument,
    EvaluatorRegistry, Literal, Point, PqBezierCurve, PqParams, Rational, SamplingOptions, Scalar,
};
use pqbezier_service::ServiceConfig;
use serde_json::json;

pub use error::CliError;

#[derive(Debug, Parser)]
#[command(name = "pqbez", version, about = "(p,q)-Bezier curves: evaluate, plot, elevate, subdivide, audit, serve")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Curve document (JSON); `-` reads stdin.
    #[arg(long)]
    pub curve: PathBuf,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Exact rational arithmetic; decimal inputs are rejected.
    #[arg(long)]
    pub exact: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the curve point for each --t.
    Eval {
        #[command(flatten)]
        common: Common,
        #[arg(long = "t", required = true, allow_hyphen_values = true)]
        t: Vec<String>,
        #[arg(long, default_value = "direct")]
        algorithm: String,
        /// Permutation for `--algorithm perm`, e.g. `2,1`.
        #[arg(long, value_delimiter = ',')]
        sigma: Option<Vec<usize>>,
    },
    /// Write an SVG of the curve.
    Plot {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 128)]
        samples: usize,
        #[arg(long)]
        show_polygon: bool,
        /// Draw the first de Casteljau triangle at this parameter.
        #[arg(long, allow_hyphen_values = true)]
        show_triangle: Option<String>,
    },
    /// Raise the degree by one without changing the curve.
    Elevate {
        #[command(flatten)]
        common: Common,
    },
    /// Split at --r: the left piece as a document, the rest as samples.
    Subdivide {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        r: String,
    },
    /// Check every printed identity in exact arithmetic.
    Audit {
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        /// Parameter p; pair each --p with a --q.
        #[arg(long = "p")]
        p: Vec<String>,
        #[arg(long = "q")]
        q: Vec<String>,
        /// Accepted for symmetry; audits always run exact.
        #[arg(long)]
        exact: bool,
        /// Also write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print JSON instead of the table.
        #[arg(long)]
        json: bool,
    },
    /// Run the HTTP service.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "0.0.0.0")]
        host: String,
        /// Where saved curves live.
        #[arg(long, default_value = "curves")]
        store: PathBuf,
        /// Built UI bundle to serve at `/`.
        #[arg(long = "static")]
        static_dir: Option<PathBuf>,
    },
}

/// Parses `args` and runs; returns the exit code. `out` and `err` receive
/// what would go to stdout and stderr.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            e.exit_code()
        }
    }
}

pub fn execute(command: Command, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Eval { common, t, algorithm, sigma } => {
            let doc = read_document(&common.curve)?;
            let opts = AlgorithmOptions { sigma };
            let text = if common.exact {
                eval_text::<Rational>(&doc, &t, &algorithm, &opts)?
            } else {
                eval_text::<f64>(&doc, &t, &algorithm, &opts)?
            };
            emit(common.out.as_deref(), &text, out)
        }
        Command::Plot { common, samples, show_polygon, show_triangle } => {
            let doc = read_document(&common.curve)?;
            let svg = if common.exact {
                plot::<Rational>(&doc, samples, show_polygon, show_triangle.as_deref())?
            } else {
                plot::<f64>(&doc, samples, show_polygon, show_triangle.as_deref())?
            };
            emit(common.out.as_deref(), &svg, out)
        }
        Command::Elevate { common } => {
            let doc = read_document(&common.curve)?;
            let elevated = if common.exact {
                CurveDocument::from_curve(&degree_elevate(&doc.to_curve::<Rational>()?)?)
            } else {
                CurveDocument::from_curve(&degree_elevate(&doc.to_curve::<f64>()?)?)
            };
            emit(common.out.as_deref(), &(elevated.to_json() + "\n"), out)
        }
        Command::Subdivide { common, r } => {
            let doc = read_document(&common.curve)?;
            let text = if common.exact {
                subdivide_text::<Rational>(&doc, &r)?
            } else {
                subdivide_text::<f64>(&doc, &r)?
            };
            emit(common.out.as_deref(), &text, out)
        }
        Command::Audit { n_max, p, q, exact: _, out: path, json } => {
            let params = audit_params(&p, &q)?;
            let report = audit_all(n_max, &params)?;
            if let Some(path) = &path {
                write_file(path, &(report.to_json() + "\n"))?;
            }
            let text = if json { report.to_json() + "\n" } else { report.to_string() };
            out.write_all(text.as_bytes()).map_err(|e| CliError::io("stdout", e))?;
            if report.has_failures() {
                return Err(CliError::AuditFailed(report.count(pqbezier::Verdict::Fail)));
            }
            Ok(())
        }
        Command::Serve { port, host, store, static_dir } => {
            let addr: SocketAddr = format!("{host}:{port}")
                .parse()
                .map_err(|e| CliError::Input(format!("bad address {host}:{port}: {e}")))?;
            let config = ServiceConfig { store_dir: store, static_dir };
            let rt = tokio::runtime::Runtime::new().map_err(|e| CliError::io("runtime", e))?;
            let _ = writeln!(out, "listening on http://{addr}");
            let _ = out.flush();
            rt.block_on(pqbezier_service::serve(addr, &config))
                .map_err(|e| CliError::io(format!("serving on {addr}"), e))
        }
    }
}

fn read_document(path: &Path) -> Result<CurveDocument, CliError> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| CliError::io("stdin", e))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| CliError::io(path.display(), e))?
    };
    Ok(CurveDocument::from_json(&text)?)
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::io(path.display(), e))
}

fn emit(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => write_file(p, text),
        None => out.write_all(text.as_bytes()).map_err(|e| CliError::io("stdout", e)),
    }
}

/// Exact values as `num/den`, floats in shortest round-trip form.
pub fn format_scalar<S: Scalar>(v: &S) -> String {
    match v.to_rational() {
        Some(r) => format_rational(&r),
        None => format!("{}", v.to_f64()),
    }
}

fn format_point<S: Scalar>(p: &Point<S>) -> String {
    p.coords().iter().map(format_scalar).collect::<Vec<_>>().join(" ")
}

fn parse_value<S: FromLiteral>(text: &str, what: &str) -> Result<S, CliError> {
    let lit: Literal = text.parse().map_err(|e| CliError::Input(format!("{what}: {e}")))?;
    let v: S = lit.to_scalar().map_err(|e| CliError::Input(format!("{what}: {e}")))?;
    if v.to_f64().is_finite() {
        Ok(v)
    } else {
        Err(CliError::Input(format!("{what}: {text} is not finite")))
    }
}

fn eval_text<S: FromLiteral>(
    doc: &CurveDocument,
    ts: &[String],
    algorithm: &str,
    opts: &AlgorithmOptions,
) -> Result<String, CliError> {
    let curve = doc.to_curve::<S>()?;
    let ts = ts.iter().map(|t| parse_value::<S>(t, "--t")).collect::<Result<Vec<_>, _>>()?;
    let evaluator = EvaluatorRegistry::<S>::with_defaults().create(algorithm, opts)?;
    let mut text = String::new();
    for t in &ts {
        text.push_str(&format_point(&evaluator.evaluate(&curve, t)?));
        text.push('\n');
    }
    Ok(text)
}

fn xy<S: Scalar>(p: &Point<S>) -> svg::Xy {
    let c = p.to_f64().0;
    [c[0], c[1]]
}

/// First de Casteljau rows scaled to affine combinations: row `k` is
/// divided by `p^{(n-1) + … + (n-k)}`.
pub fn triangle_rows<S: Scalar>(curve: &PqBezierCurve<S>, t: &S) -> Result<Vec<Vec<Point<S>>>, CliError> {
    let tri_pts = intermediate_points(curve, t, "dc1", &AlgorithmOptions::default())?;
    let n = curve.degree();
    tri_pts
        .levels
        .iter()
        .enumerate()
        .map(|(k, row)| {
            let exp = tri(n) - tri(n - k);
            let inv = S::one().checked_div(&curve.params().p.pown(exp))?;
            Ok(row.iter().map(|pt| pt.scale(&inv)).collect())
        })
        .collect()
}

fn plot<S: FromLiteral>(
    doc: &CurveDocument,
    samples: usize,
    show_polygon: bool,
    show_triangle: Option<&str>,
) -> Result<String, CliError> {
    if doc.dimension < 2 {
        return Err(CliError::Input("plot needs a curve of dimension 2 or 3 (3 is projected to xy)".into()));
    }
    let curve = doc.to_curve::<S>()?;
    let pts = pqbezier::curve::flatten(&curve, samples)?;
    let mut plot = svg::Plot { curve: pts.iter().map(xy).collect(), ..Default::default() };
    if show_polygon {
        plot.polygon = Some(curve.control_points().iter().map(xy).collect());
    }
    if let Some(t) = show_triangle {
        let t: S = parse_value(t, "--show-triangle")?;
        let rows = triangle_rows(&curve, &t)?;
        plot.triangle = Some((t.to_f64(), rows.iter().map(|r| r.iter().map(xy).collect()).collect()));
    }
    Ok(svg::render(&plot))
}

fn subdivide_text<S: FromLiteral>(doc: &CurveDocument, r: &str) -> Result<String, CliError> {
    let curve = doc.to_curve::<S>()?;
    let r: S = parse_value(r, "--r")?;
    let res = subdivide(&curve, &r, &SamplingOptions::default())?;
    let samples: Vec<Vec<Number>> = res
        .right_samples
        .iter()
        .map(|p| p.coords().iter().map(Number::from_scalar).collect())
        .collect();
    let value = json!({ "left": CurveDocument::from_curve(&res.left), "right_samples": samples });
    Ok(serde_json::to_string_pretty(&value).expect("serializable") + "\n")
}

fn audit_params(p: &[String], q: &[String]) -> Result<Vec<PqParams<Rational>>, CliError> {
    if p.len() != q.len() {
        return Err(CliError::Input(format!("--p given {} times but --q {} times", p.len(), q.len())));
    }
    if p.is_empty() {
        return Ok(default_audit_params());
    }
    let exact = |s: &str, what: &str| -> Result<Rational, CliError> {
        let lit: Literal = s.parse().map_err(|e| CliError::Input(format!("{what}: {e}")))?;
        lit.to_rational().map_err(|_| {
            CliError::Input(format!("{what}: audit requires exact arithmetic; write {s} as num/den"))
        })
    };
    p.iter()
        .zip(q)
        .map(|(p, q)| Ok(PqParams::new(exact(p, "--p")?, exact(q, "--q")?)))
        .collect()
}
