//! The `cpai` command: argument handling, orchestration and output.

mod fixtures;
mod text;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use cpai_core::cpai::{analyze, AnalysisOptions, CpaiReport};
use cpai_core::laurent::{infer_variables, parse};
use cpai_core::polytope::{
    newton_polytope, scale_to_normal, sigma_cone, verify_normality, ConeDescriptor, FaceDescriptor, Halfspace,
    Normality, DEFAULT_BUDGET,
};
use cpai_core::transform::{build_face_transform, transform_polynomial, MonomialTransform, StructuralWarning};
use cpai_core::witness::{cross_check, sample_limits, ConvergenceEstimate, CrossCheck, SampleOptions, WitnessCurve};
use cpai_core::{Error, Exponent, LaurentPolynomial};

pub use fixtures::{direction_basis, fixtures, run_examples, Fixture, FixtureOutcome};

/// Environment variable holding the number of worker threads for face
/// analyses.
pub const WORKERS_ENV: &str = "CPAI_WORKERS";

#[derive(Debug, Parser)]
#[command(name = "cpai", version, about = "Critical points at infinity of Laurent polynomial hypersurfaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, clap::Args)]
pub struct Input {
    /// The Laurent polynomial, e.g. "z - y - (x-1)^2".
    pub polynomial: String,
    /// Variable order, comma separated (default: inferred).
    #[arg(long, value_delimiter = ',')]
    pub vars: Option<Vec<String>>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Face-by-face verdicts on limiting log-gradient directions.
    Analyze {
        #[command(flatten)]
        input: Input,
        /// Only analyse this face (ids as printed by `polytope`).
        #[arg(long)]
        face: Option<usize>,
        /// Direction for critical values, e.g. -2,-1,1 or 1/2,0,1.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        direction: Option<Vec<String>>,
        /// Relative singular-value threshold for rank decisions.
        #[arg(long, default_value_t = 1e-8)]
        tol_rank: f64,
    },
    /// Newton polytope, its normal dilation and face lattice.
    Polytope {
        #[command(flatten)]
        input: Input,
    },
    /// Monomial transform adapted to a face and the transformed polynomial.
    Transform {
        #[command(flatten)]
        input: Input,
        /// Face to adapt the transform to (ids as printed by `polytope`).
        #[arg(long)]
        face: Option<usize>,
        /// Explicit rows of N^T separated by ';', e.g. "1,0,0;0,1,0;-1,0,-1".
        #[arg(long, allow_hyphen_values = true)]
        nt: Option<String>,
        /// Anchor vertex for an explicit N^T, e.g. 0,0,1.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        anchor: Option<Vec<i64>>,
        /// Number of trailing normal coordinates for an explicit N^T
        /// (default: all, as for a vertex).
        #[arg(long)]
        codim: Option<usize>,
    },
    /// Sample witness curves and cross-check them against the analysis.
    Verify {
        #[command(flatten)]
        input: Input,
        /// JSON file with curves: {"maps": [...], "r": [...]}, a list of
        /// those, or {"curves": [...]}.
        #[arg(long)]
        curves: PathBuf,
        /// Default direction for height limits of curves without their own `r`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        direction: Option<Vec<String>>,
        /// Convergence tolerance for sampled limits.
        #[arg(long, default_value_t = 1e-7)]
        tol_conv: f64,
    },
    /// Run the bundled worked examples and compare with stored expectations.
    Examples,
}

/// Exit status and rendered output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { code: 0, stdout, stderr: String::new() }
    }

    fn failure(code: u8, message: impl Into<String>) -> Self {
        Self { code, stdout: String::new(), stderr: message.into() }
    }
}

/// Input problems exit with 1, analysis failures with 2.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Syntax { .. }
        | Error::UnknownVariable { .. }
        | Error::NonIntegerExponent { .. }
        | Error::ZeroPolynomial => 1,
        _ => 2,
    }
}

fn fail(e: Error) -> Outcome {
    Outcome::failure(exit_code(&e), format!("error: {e}"))
}

pub fn read_polynomial(input: &Input) -> Result<(LaurentPolynomial, Vec<String>), Error> {
    let vars = input.vars.clone().unwrap_or_else(|| infer_variables(&input.polynomial));
    let h = parse(&input.polynomial, &vars)?;
    if h.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok((h, vars))
}

pub fn parse_direction(entries: &[String]) -> Result<Vec<BigRational>, Error> {
    entries
        .iter()
        .map(|s| {
            s.trim()
                .parse::<BigRational>()
                .map_err(|_| Error::Syntax { pos: 0, message: format!("`{s}` is not a rational number") })
        })
        .collect()
}

fn workers() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&n: &usize| n >= 1)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema: &'a str,
    #[serde(flatten)]
    body: T,
}

fn json<T: Serialize>(schema: &str, body: T) -> String {
    let mut s = serde_json::to_string_pretty(&Envelope { schema, body }).expect("serialisable output");
    s.push('\n');
    s
}

/// Analysis options shared by `analyze` and `verify`.
fn options(direction: Option<&[String]>, face: Option<usize>, rank_tol: f64) -> Result<AnalysisOptions, Error> {
    if !(rank_tol > 0.0) {
        return Err(Error::Precondition("tolerances must be positive".into()));
    }
    Ok(AnalysisOptions {
        rank_tol,
        direction: direction.map(parse_direction).transpose()?,
        faces: face.map(|f| vec![f]),
        workers: workers(),
        lattice_budget: DEFAULT_BUDGET,
    })
}

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Analyze { input, face, direction, tol_rank } => {
            let result = read_polynomial(input).and_then(|(h, vars)| {
                let opts = options(direction.as_deref(), *face, *tol_rank)?;
                let mut report = analyze(&h, &opts)?;
                report.polynomial = h.format_with(&vars.iter().map(String::as_str).collect::<Vec<_>>());
                report.variables = vars;
                Ok(report)
            });
            match result {
                Ok(r) => Outcome::ok(match cli.format {
                    Format::Json => json("cpai-report-v1", &r),
                    Format::Text => text::report(&r),
                }),
                Err(e) => fail(e),
            }
        }
        Command::Polytope { input } => match read_polynomial(input).and_then(|(h, _)| polytope_summary(&h)) {
            Ok(p) => Outcome::ok(match cli.format {
                Format::Json => json("cpai-polytope-v1", &p),
                Format::Text => text::polytope(&p),
            }),
            Err(e) => fail(e),
        },
        Command::Transform { input, face, nt, anchor, codim } => {
            match read_polynomial(input)
                .and_then(|(h, vars)| transform_dump(&h, vars, *face, nt.as_deref(), anchor.as_deref(), *codim))
            {
                Ok(t) => Outcome::ok(match cli.format {
                    Format::Json => json("cpai-transform-v1", &t),
                    Format::Text => text::transform(&t),
                }),
                Err(e) => fail(e),
            }
        }
        Command::Verify { input, curves, direction, tol_conv } => {
            let result = read_polynomial(input).and_then(|(h, _)| verify(&h, curves, direction.as_deref(), *tol_conv));
            match result {
                Ok(v) => {
                    let code = if v.cross_check.discrepancies.is_empty() { 0 } else { 2 };
                    let stdout = match cli.format {
                        Format::Json => json("cpai-verify-v1", &v),
                        Format::Text => text::verify(&v),
                    };
                    Outcome { code, stdout, stderr: String::new() }
                }
                Err(e) => fail(e),
            }
        }
        Command::Examples => {
            let outcomes = run_examples();
            let code = if outcomes.iter().all(|o| o.passed) { 0 } else { 3 };
            let stdout = match cli.format {
                Format::Json => json("cpai-examples-v1", Examples { fixtures: &outcomes }),
                Format::Text => text::examples(&outcomes),
            };
            Outcome { code, stdout, stderr: String::new() }
        }
    }
}

#[derive(Debug, Serialize)]
pub struct FaceEntry {
    #[serde(flatten)]
    pub face: FaceDescriptor,
    pub modified_simple: bool,
    pub cone: ConeDescriptor,
}

#[derive(Debug, Serialize)]
pub struct PolytopeDump {
    pub dim: usize,
    pub affine_dim: usize,
    pub vertices: Vec<Exponent>,
    pub facets: Vec<Halfspace>,
    pub equations: Vec<Halfspace>,
    pub kappa: i64,
    pub lattice_points: usize,
    pub dilated_lattice_points: usize,
    pub normality: Normality,
    pub faces: Vec<FaceEntry>,
}

pub fn polytope_summary(h: &LaurentPolynomial) -> Result<PolytopeDump, Error> {
    let p = newton_polytope(h)?;
    let (q, kappa) = scale_to_normal(&p);
    let lattice = p.face_lattice()?;
    let faces = lattice
        .faces
        .iter()
        .map(|f| FaceEntry { face: f.clone(), modified_simple: f.modified_simple(), cone: sigma_cone(&lattice, f) })
        .collect();
    Ok(PolytopeDump {
        dim: p.dim(),
        affine_dim: p.affine_dim(),
        vertices: p.vertices().to_vec(),
        facets: p.halfspaces().to_vec(),
        equations: p.equations().to_vec(),
        kappa,
        lattice_points: lattice.lattice_points.len(),
        dilated_lattice_points: q.lattice_points_with_budget(DEFAULT_BUDGET)?.len(),
        normality: verify_normality(&q, 3, DEFAULT_BUDGET),
        faces,
    })
}

#[derive(Debug, Serialize)]
pub struct TransformDump {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub face: Option<usize>,
    pub transform: MonomialTransform,
    pub transpose: Vec<Vec<i64>>,
    pub transformed: String,
    pub warnings: Vec<StructuralWarning>,
    pub variables: Vec<String>,
}

fn parse_rows(text: &str) -> Result<Vec<Vec<i64>>, Error> {
    text.split(';')
        .map(|row| {
            row.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Syntax { pos: 0, message: format!("`{x}` is not an integer") })
                })
                .collect()
        })
        .collect()
}

pub fn transform_dump(
    h: &LaurentPolynomial,
    vars: Vec<String>,
    face: Option<usize>,
    nt: Option<&str>,
    anchor: Option<&[i64]>,
    codim: Option<usize>,
) -> Result<TransformDump, Error> {
    let t = match (nt, face) {
        (Some(rows), _) => {
            let rows = parse_rows(rows)?;
            let anchor = Exponent(anchor.map(<[i64]>::to_vec).unwrap_or_else(|| vec![0; h.dim()]));
            MonomialTransform::from_transpose_rows(&rows, codim.unwrap_or(h.dim()), anchor)?
        }
        (None, Some(id)) => {
            let p = newton_polytope(h)?;
            if !p.is_full_dimensional() {
                return Err(Error::NotFullDimensional);
            }
            let lattice = p.face_lattice()?;
            build_face_transform(lattice.face(id)?)?
        }
        (None, None) => return Err(Error::Precondition("give --face or --nt".into())),
    };
    let tp = transform_polynomial(h, &t)?;
    let refs: Vec<&str> = vars.iter().map(String::as_str).collect();
    Ok(TransformDump {
        face: face.filter(|_| nt.is_none()),
        transpose: t.transpose().to_rows(),
        transformed: tp.polynomial.format_with(&refs),
        warnings: tp.warnings,
        variables: vars,
        transform: t,
    })
}

/// One curve as read from a curves file.
#[derive(Debug, Clone, Deserialize)]
pub struct CurveSpec {
    #[serde(default)]
    pub label: Option<String>,
    #[serde(default)]
    pub vars: Option<Vec<String>>,
    pub maps: Vec<String>,
    #[serde(default)]
    pub r: Option<Vec<serde_json::Value>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CurveFile {
    One(CurveSpec),
    Many(Vec<CurveSpec>),
    Wrapped { curves: Vec<CurveSpec> },
}

pub fn read_curves(text: &str) -> Result<Vec<CurveSpec>, Error> {
    let file: CurveFile = serde_json::from_str(text)
        .map_err(|e| Error::Syntax { pos: e.column(), message: format!("curves file: {e}") })?;
    Ok(match file {
        CurveFile::One(c) => vec![c],
        CurveFile::Many(v) | CurveFile::Wrapped { curves: v } => v,
    })
}

fn value_to_string(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[derive(Serialize)]
struct Examples<'a> {
    fixtures: &'a [FixtureOutcome],
}

#[derive(Debug, Serialize)]
pub struct VerifyOutput {
    pub estimates: Vec<ConvergenceEstimate>,
    pub cross_check: CrossCheck,
}

fn verify(
    h: &LaurentPolynomial,
    path: &PathBuf,
    direction: Option<&[String]>,
    tol_conv: f64,
) -> Result<VerifyOutput, Error> {
    if !(tol_conv > 0.0) {
        return Err(Error::Precondition("tolerances must be positive".into()));
    }
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Syntax { pos: 0, message: format!("cannot read {}: {e}", path.display()) })?;
    let specs = read_curves(&text)?;
    let global = direction.map(parse_direction).transpose()?;
    let sample = SampleOptions { tol_conv, ..SampleOptions::default() };
    let mut curves = Vec::new();
    let mut estimates = Vec::new();
    for spec in &specs {
        let label = spec.label.clone().unwrap_or_else(|| format!("({})", spec.maps.join(", ")));
        let curve = WitnessCurve::parse(label, &spec.maps)?;
        let r = match &spec.r {
            Some(r) => Some(parse_direction(&r.iter().map(value_to_string).collect::<Vec<_>>())?),
            None => global.clone(),
        };
        if curve.dim() != h.dim() {
            return Err(Error::DimensionMismatch { expected: h.dim(), found: curve.dim() });
        }
        estimates.push(sample_limits(h, &curve, r.as_deref(), &sample)?);
        curves.push(curve);
    }
    let report: CpaiReport = analyze(h, &AnalysisOptions { workers: workers(), ..AnalysisOptions::default() })?;
    let cross_check = cross_check(h, &report, &curves, &sample, 1e-5)?;
    Ok(VerifyOutput { estimates, cross_check })
}
