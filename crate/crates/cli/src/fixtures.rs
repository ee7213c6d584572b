//! Worked examples bundled with the binary, with stored expectations.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use cpai_core::cpai::{analyze, AnalysisOptions, CpaiReport, DirectionSet, FaceVerdict, Heightedness};
use cpai_core::laurent::parse;
use cpai_core::numeric::{chordal_distance, real_vector, subspace_distance};
use cpai_core::witness::{sample_limits, sample_solved_path, Limit, SampleOptions, SolvedPath, WitnessCurve};
use cpai_core::{Error, Exponent, LaurentPolynomial};

use crate::parse_direction;

pub const FIXTURES: [&str; 3] = [
    include_str!("../fixtures/edge.json"),
    include_str!("../fixtures/paraboloid.json"),
    include_str!("../fixtures/quadrilateral.json"),
];

const MATRIX_TOL: f64 = 1e-10;
const SPAN_TOL: f64 = 1e-10;
const LIMIT_TOL: f64 = 1e-6;
const HEIGHT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Deserialize)]
pub struct Fixture {
    pub name: String,
    pub description: String,
    pub polynomial: String,
    pub vars: Vec<String>,
    pub generic_faces: usize,
    pub nongeneric: Vec<ExpectedFace>,
    pub curves: Vec<ExpectedCurve>,
    pub solved_paths: Vec<ExpectedPath>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct ExpectedFace {
    pub vertices: Vec<Vec<i64>>,
    pub jacobian: Vec<Vec<f64>>,
    pub span: Vec<Vec<f64>>,
    pub heighted: Heightedness,
}

#[derive(Debug, Clone, Deserialize)]
pub struct ExpectedCurve {
    pub maps: Vec<String>,
    #[serde(default)]
    pub r: Option<Vec<String>>,
    pub limit: Vec<f64>,
    #[serde(default)]
    pub height: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct ExpectedPath {
    pub given: Vec<Option<String>>,
    pub limit: Vec<f64>,
    /// Vertices of the face whose directions must contain the limit.
    pub parallel_to: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FixtureOutcome {
    pub name: String,
    pub description: String,
    pub passed: bool,
    pub checks: usize,
    pub mismatches: Vec<String>,
}

pub fn fixtures() -> Vec<Fixture> {
    FIXTURES.iter().map(|s| serde_json::from_str(s).expect("bundled fixture is valid JSON")).collect()
}

pub fn run_examples() -> Vec<FixtureOutcome> {
    fixtures().iter().map(check_fixture).collect()
}

fn vertices(v: &[Vec<i64>]) -> Vec<Exponent> {
    v.iter().cloned().map(Exponent).collect()
}

/// A basis of the directions a verdict allows, when that is a subspace.
pub fn direction_basis(set: &DirectionSet) -> Option<Vec<Vec<Complex64>>> {
    match set {
        DirectionSet::Subspace { basis, .. } => Some(basis.clone()),
        DirectionSet::FaceParallel { basis } => {
            Some(basis.iter().map(|b| b.iter().map(|&x| Complex64::new(x as f64, 0.0)).collect()).collect())
        }
        _ => None,
    }
}

fn max_entry_diff(a: &[Vec<Complex64>], b: &[Vec<f64>]) -> f64 {
    if a.len() != b.len() || a.iter().zip(b).any(|(x, y)| x.len() != y.len()) {
        return f64::INFINITY;
    }
    a.iter()
        .zip(b)
        .flat_map(|(x, y)| x.iter().zip(y).map(|(p, q)| (p - Complex64::new(*q, 0.0)).norm()))
        .fold(0.0, f64::max)
}

struct Checker {
    checks: usize,
    mismatches: Vec<String>,
}

impl Checker {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.mismatches.push(what());
        }
    }
}

fn check_fixture(f: &Fixture) -> FixtureOutcome {
    let mut c = Checker { checks: 0, mismatches: Vec::new() };
    if let Err(e) = run_checks(f, &mut c) {
        c.mismatches.push(format!("error: {e}"));
    }
    FixtureOutcome {
        name: f.name.clone(),
        description: f.description.clone(),
        passed: c.mismatches.is_empty(),
        checks: c.checks,
        mismatches: c.mismatches,
    }
}

fn check_face(verdict: &FaceVerdict, e: &ExpectedFace, d: usize, c: &mut Checker) {
    let id = verdict.face_id;
    c.check(verdict.generic == Some(false), || format!("face {id}: expected non-generic"));
    let jac = verdict.singular_points.iter().find_map(|p| p.model.as_ref()).map(|m| &m.jacobian);
    match jac {
        Some(j) => {
            let diff = max_entry_diff(j, &e.jacobian);
            c.check(diff < MATRIX_TOL, || format!("face {id}: Jacobian differs by {diff:e}"));
        }
        None => c.check(false, || format!("face {id}: no local model")),
    }
    let expected: Vec<Vec<Complex64>> = e.span.iter().map(|v| real_vector(v)).collect();
    match direction_basis(&verdict.directions) {
        Some(b) => {
            let dist = subspace_distance(&b, &expected, d);
            c.check(dist < SPAN_TOL, || format!("face {id}: direction span off by {dist:e}"));
        }
        None => c.check(false, || format!("face {id}: directions are not a subspace")),
    }
    c.check(verdict.heighted == e.heighted, || format!("face {id}: heightedness {:?}", verdict.heighted));
}

fn check_limit(
    label: &str,
    limit: &Limit<Vec<Complex64>>,
    best: Option<Vec<Complex64>>,
    expected: &[f64],
    c: &mut Checker,
) {
    match best {
        Some(l) => {
            let dist = chordal_distance(&l, &real_vector(expected));
            c.check(dist < LIMIT_TOL, || format!("{label}: limit off by {dist:e}"));
        }
        None => c.check(false, || format!("{label}: no limit ({limit:?})")),
    }
}

fn run_checks(f: &Fixture, c: &mut Checker) -> Result<(), Error> {
    let h = parse(&f.polynomial, &f.vars)?;
    let report = analyze(&h, &AnalysisOptions::default())?;
    let d = h.dim();
    let generic = report.summary.generic_faces.len();
    c.check(generic == f.generic_faces, || format!("{generic} generic faces, expected {}", f.generic_faces));
    for e in &f.nongeneric {
        match report.face_with_vertices(&vertices(&e.vertices)) {
            Some(v) => check_face(v, e, d, c),
            None => c.check(false, || format!("no face with vertices {:?}", e.vertices)),
        }
    }
    let expected_nongeneric = f.nongeneric.len();
    let found = report.summary.nongeneric_faces.len();
    c.check(found == expected_nongeneric, || format!("{found} non-generic faces, expected {expected_nongeneric}"));

    let opts = SampleOptions::default();
    for e in &f.curves {
        let label = format!("({})", e.maps.join(", "));
        let curve = WitnessCurve::parse(label.clone(), &e.maps)?;
        let r = e.r.as_deref().map(parse_direction).transpose()?;
        let est = sample_limits(&h, &curve, r.as_deref(), &opts)?;
        check_limit(&label, &est.projective_limit, est.best_limit(), &e.limit, c);
        if let Some(target) = e.height {
            match est.height_limit.as_ref().and_then(Limit::converged) {
                Some(v) => {
                    c.check((v - target).abs() < HEIGHT_TOL, || format!("{label}: height {v}, expected {target}"))
                }
                None => c.check(false, || format!("{label}: height did not converge")),
            }
        }
    }
    for e in &f.solved_paths {
        check_path(&h, &report, e, &opts, c)?;
    }
    Ok(())
}

fn check_path(
    h: &LaurentPolynomial,
    report: &CpaiReport,
    e: &ExpectedPath,
    opts: &SampleOptions,
    c: &mut Checker,
) -> Result<(), Error> {
    let t = ["t"];
    let given =
        e.given.iter().map(|g| g.as_deref().map(|s| parse(s, &t)).transpose()).collect::<Result<Vec<_>, _>>()?;
    let label = format!("path {:?}", e.given);
    let est = sample_solved_path(h, &SolvedPath::new(label.clone(), given)?, None, opts)?;
    let best = est.best_limit();
    check_limit(&label, &est.projective_limit, best.clone(), &e.limit, c);
    let face = report.face_with_vertices(&vertices(&e.parallel_to));
    match (face, best) {
        (Some(face), Some(l)) => {
            let dist = face.directions.distance(&l);
            c.check(dist.is_some_and(|x| x < LIMIT_TOL), || {
                format!("{label}: limit not in face {} directions", face.face_id)
            });
        }
        _ => c.check(false, || format!("{label}: face {:?} or limit missing", e.parallel_to)),
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_fixtures_pass() {
        for o in run_examples() {
            assert!(o.passed, "{}: {:?}", o.name, o.mismatches);
            assert!(o.checks > 0);
        }
    }
}
