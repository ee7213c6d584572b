//! Limiting directions of the log-gradient on a hypersurface approaching
//! each face of the Newton polytope, and which directions carry a finite
//! height.
//!
//! [`analyze`] runs the whole pipeline: Newton polytope, face lattice, face
//! polynomials and their singular points, then for each face either the
//! generic conclusion (directions parallel to the face) or the local model
//! at each singular point.

pub mod local;
pub mod singular;

use num_complex::Complex64;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::{Exponent, LaurentPolynomial};
use crate::numeric::{chordal_distance, distance_to_subspace, RANK_TOL};
use crate::polytope::{
    newton_polytope, scale_to_normal, FaceDescriptor, FaceLattice, Halfspace, LatticePolytope, DEFAULT_BUDGET,
};
use crate::toric::{clear_denominators, height_limit, span_coordinates, HeightLimit, InfinityPoint};
use crate::transform::build_face_transform;

pub use local::{finite_difference_jacobian, nongeneric_analysis, LocalModel, PointAnalysis};
pub use singular::{directional_points, face_polynomial, face_singularities, SingularSet, TorusPoint};

/// Possible limiting directions `[∇_log H]` for sequences approaching a face.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DirectionSet {
    Single {
        direction: Vec<Complex64>,
    },
    /// Every direction in `L_F ⊗ ℂ`, given by a lattice basis.
    FaceParallel {
        basis: Vec<Vec<i64>>,
    },
    /// Directions in the span of `basis`, of the given codimension.
    Subspace {
        basis: Vec<Vec<Complex64>>,
        codim: usize,
    },
    Union {
        members: Vec<DirectionSet>,
    },
    Undetermined {
        reason: String,
    },
}

impl DirectionSet {
    /// Distance from `dir` to the set: chordal distance to a single
    /// direction, sine of the angle to a subspace, the minimum over a union;
    /// `None` when undetermined.
    pub fn distance(&self, dir: &[Complex64]) -> Option<f64> {
        match self {
            DirectionSet::Single { direction } => Some(chordal_distance(direction, dir)),
            DirectionSet::FaceParallel { basis } => {
                let basis: Vec<Vec<Complex64>> = basis.iter().map(|b| to_complex(b)).collect();
                Some(distance_to_subspace(dir, &basis))
            }
            DirectionSet::Subspace { basis, .. } => Some(distance_to_subspace(dir, basis)),
            DirectionSet::Union { members } => members
                .iter()
                .map(|m| m.distance(dir))
                .collect::<Option<Vec<f64>>>()
                .map(|ds| ds.into_iter().fold(f64::INFINITY, f64::min)),
            DirectionSet::Undetermined { .. } => None,
        }
    }

    /// Whether `dir` lies within `tol` of the set; `None` when undetermined.
    pub fn contains(&self, dir: &[Complex64], tol: f64) -> Option<bool> {
        match self {
            DirectionSet::Union { members } => {
                let mut unknown = false;
                for m in members {
                    match m.contains(dir, tol) {
                        Some(true) => return Some(true),
                        None => unknown = true,
                        Some(false) => {}
                    }
                }
                (!unknown).then_some(false)
            }
            _ => self.distance(dir).map(|d| d <= tol),
        }
    }

    /// Image under the linear map with the given columns (used to return
    /// from affine-hull coordinates to the ambient lattice).
    pub fn embed(&self, columns: &[Vec<i64>]) -> Self {
        let d = columns.first().map_or(0, Vec::len);
        let map_c = |v: &[Complex64]| -> Vec<Complex64> {
            (0..d).map(|i| v.iter().zip(columns).map(|(x, c)| x * c[i] as f64).sum()).collect()
        };
        let map_i =
            |v: &[i64]| -> Vec<i64> { (0..d).map(|i| v.iter().zip(columns).map(|(x, c)| x * c[i]).sum()).collect() };
        match self {
            DirectionSet::Single { direction } => DirectionSet::Single { direction: map_c(direction) },
            DirectionSet::FaceParallel { basis } => {
                DirectionSet::FaceParallel { basis: basis.iter().map(|b| map_i(b)).collect() }
            }
            DirectionSet::Subspace { basis, codim } => DirectionSet::Subspace {
                basis: basis.iter().map(|b| map_c(b)).collect(),
                codim: codim + d - columns.len(),
            },
            DirectionSet::Union { members } => {
                DirectionSet::Union { members: members.iter().map(|m| m.embed(columns)).collect() }
            }
            DirectionSet::Undetermined { reason } => DirectionSet::Undetermined { reason: reason.clone() },
        }
    }

    fn union(mut sets: Vec<DirectionSet>) -> Self {
        sets.dedup();
        if sets.len() == 1 {
            sets.pop().expect("one element")
        } else {
            DirectionSet::Union { members: sets }
        }
    }
}

fn to_complex(v: &[i64]) -> Vec<Complex64> {
    v.iter().map(|&x| Complex64::new(x as f64, 0.0)).collect()
}

/// Whether the height `h_r` has a finite limit along sequences producing a
/// given limiting direction `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Heightedness {
    /// Every limiting direction is parallel to the face, so the height
    /// converges along every sequence that realises it.
    AllHeighted,
    /// Some directions leave the face; whether their heights converge
    /// depends on the curve.
    CurveDependent,
    Undetermined,
}

/// A limit of `h_r` at a point of the face's orbit where `r` is a limiting
/// direction.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriticalValue {
    pub direction: Vec<i64>,
    pub face_coordinates: Vec<Complex64>,
    pub value: HeightLimit,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FaceVerdict {
    pub face_id: usize,
    pub dim: usize,
    pub codim: usize,
    pub vertices: Vec<Exponent>,
    pub inward_normals: Vec<Vec<i64>>,
    /// `None` when the face could not be decided.
    pub generic: Option<bool>,
    pub face_polynomial: String,
    pub singular_set: SingularSet,
    pub singular_points: Vec<PointAnalysis>,
    pub directions: DirectionSet,
    pub heighted: Heightedness,
    pub cvai: Vec<CriticalValue>,
    pub caveats: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PolytopeSummary {
    pub vertices: Vec<Exponent>,
    pub facets: Vec<Halfspace>,
    pub equations: Vec<Halfspace>,
    pub kappa: i64,
    pub faces: usize,
}

/// Coordinates used when the Newton polytope is not full-dimensional:
/// exponents are `origin + Σ y_i basis_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reduction {
    pub origin: Vec<i64>,
    pub basis: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub generic_faces: Vec<usize>,
    pub nongeneric_faces: Vec<usize>,
    pub undetermined_faces: Vec<usize>,
    /// Limiting directions that are not parallel to their face.
    pub transverse_directions: Vec<(usize, DirectionSet)>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CpaiReport {
    pub polynomial: String,
    pub variables: Vec<String>,
    pub dim: usize,
    pub newton_polytope: PolytopeSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduction: Option<Reduction>,
    pub faces: Vec<FaceVerdict>,
    pub summary: Summary,
    pub caveats: Vec<String>,
}

impl CpaiReport {
    pub fn face(&self, id: usize) -> Option<&FaceVerdict> {
        self.faces.iter().find(|f| f.face_id == id)
    }

    /// The verdict for the face with exactly these vertices (ambient
    /// coordinates, any order).
    pub fn face_with_vertices(&self, vertices: &[Exponent]) -> Option<&FaceVerdict> {
        let mut want = vertices.to_vec();
        want.sort();
        self.faces.iter().find(|f| {
            let mut have = f.vertices.clone();
            have.sort();
            have == want
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnalysisOptions {
    pub rank_tol: f64,
    /// Direction `r` for which critical values are reported; face span
    /// vectors are used when absent.
    pub direction: Option<Vec<BigRational>>,
    /// Only analyse these faces.
    pub faces: Option<Vec<usize>>,
    pub workers: usize,
    pub lattice_budget: usize,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self { rank_tol: RANK_TOL, direction: None, faces: None, workers: 1, lattice_budget: DEFAULT_BUDGET }
    }
}

/// Context shared by all per-face analyses.
pub struct Analysis {
    pub polynomial: LaurentPolynomial,
    pub polytope: LatticePolytope,
    pub lattice: FaceLattice,
    pub kappa: i64,
}

impl Analysis {
    pub fn new(h: &LaurentPolynomial, budget: usize) -> Result<Self> {
        let polytope = newton_polytope(h)?;
        if !polytope.is_full_dimensional() {
            return Err(Error::NotFullDimensional);
        }
        let lattice_points = polytope.lattice_points_with_budget(budget)?;
        let mut lattice = polytope.face_lattice()?;
        lattice.lattice_points = lattice_points;
        let (_, kappa) = scale_to_normal(&polytope);
        Ok(Self { polynomial: h.clone(), polytope, lattice, kappa })
    }

    fn subfaces_with_dim<'a>(&'a self, face: &'a FaceDescriptor) -> impl Iterator<Item = &'a FaceDescriptor> + 'a {
        self.lattice.subfaces(face).filter(|g| g.dim >= 1)
    }
}

/// Conclusion for a face with no singular points: limiting directions are
/// parallel to the face and every one of them is heighted.
///
/// Requires the face and all its positive-dimensional subfaces to be free
/// of singular points.
pub fn generic_analysis(a: &Analysis, face: &FaceDescriptor, opts: &AnalysisOptions) -> Result<FaceVerdict> {
    for g in a.subfaces_with_dim(face) {
        let sing = face_singularities(&face_polynomial(&a.polynomial, g)?)?;
        match sing {
            SingularSet::Isolated { points } if points.is_empty() => {}
            SingularSet::Isolated { .. } => return Err(Error::DeferredToSubface { face: face.id, subface: g.id }),
            SingularSet::Undetermined { reason } => {
                return Err(Error::Precondition(format!("sub-face {} undecided: {reason}", g.id)))
            }
        }
    }
    let hf = face_polynomial(&a.polynomial, face)?;
    let sing = face_singularities(&hf)?;
    if !sing.is_empty() {
        return Err(Error::Precondition(format!("face {} has singular points", face.id)));
    }
    generic_verdict(a, face, hf, sing, opts, Vec::new())
}

fn base_verdict(face: &FaceDescriptor, hf: &LaurentPolynomial, sing: SingularSet) -> FaceVerdict {
    let names: Vec<String> = match hf.dim() {
        1 => vec!["u".into()],
        2 => vec!["u".into(), "v".into()],
        g => (1..=g).map(|i| format!("u{i}")).collect(),
    };
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    FaceVerdict {
        face_id: face.id,
        dim: face.dim,
        codim: face.codim,
        vertices: face.vertices.clone(),
        inward_normals: face.inward_normals.clone(),
        generic: None,
        face_polynomial: hf.format_with(&refs),
        singular_set: sing,
        singular_points: Vec::new(),
        directions: DirectionSet::Undetermined { reason: String::new() },
        heighted: Heightedness::Undetermined,
        cvai: Vec::new(),
        caveats: Vec::new(),
    }
}

fn generic_verdict(
    a: &Analysis,
    face: &FaceDescriptor,
    hf: LaurentPolynomial,
    sing: SingularSet,
    opts: &AnalysisOptions,
    caveats: Vec<String>,
) -> Result<FaceVerdict> {
    let mut v = base_verdict(face, &hf, sing);
    v.generic = Some(true);
    v.directions = DirectionSet::FaceParallel { basis: face.span_basis.clone() };
    v.heighted = Heightedness::AllHeighted;
    v.caveats = caveats;
    for (r, rho) in cvai_directions(face, opts) {
        match directional_points(&hf, &rho) {
            Some(points) => {
                for p in points {
                    let ip = InfinityPoint::on_face(&a.lattice, face, p.coordinates.clone());
                    let value = height_limit(&a.lattice, face, &ip, &to_rational(&r))?;
                    v.cvai.push(CriticalValue { direction: r.clone(), face_coordinates: p.coordinates, value });
                }
            }
            None => v.caveats.push(format!("critical points for direction {r:?} are not isolated")),
        }
    }
    Ok(v)
}

fn to_rational(r: &[i64]) -> Vec<BigRational> {
    r.iter().map(|&x| BigRational::from_integer(x.into())).collect()
}

/// Integer directions in `L_F` with their span coordinates.
fn cvai_directions(face: &FaceDescriptor, opts: &AnalysisOptions) -> Vec<(Vec<i64>, Vec<i64>)> {
    let candidates: Vec<Vec<i64>> = match &opts.direction {
        Some(r) => match clear_denominators(r) {
            Ok((ints, _)) if face.span_contains(&ints) => vec![ints],
            _ => Vec::new(),
        },
        None => face.span_basis.clone(),
    };
    candidates.into_iter().filter_map(|r| span_coordinates(face, &r).ok().map(|rho| (r, rho))).collect()
}

/// Verdict for one face of positive dimension below the top.
pub fn analyze_face(a: &Analysis, face: &FaceDescriptor, opts: &AnalysisOptions) -> Result<FaceVerdict> {
    let hf = face_polynomial(&a.polynomial, face)?;
    let sing = face_singularities(&hf)?;
    match sing {
        SingularSet::Undetermined { ref reason } => {
            let reason = reason.clone();
            let mut v = base_verdict(face, &hf, sing);
            v.directions = DirectionSet::Undetermined { reason: reason.clone() };
            v.caveats.push(reason);
            Ok(v)
        }
        SingularSet::Isolated { ref points } if points.is_empty() => {
            let mut caveats = Vec::new();
            for g in a.subfaces_with_dim(face) {
                let s = face_singularities(&face_polynomial(&a.polynomial, g)?)?;
                if !s.is_empty() {
                    caveats.push(format!(
                        "sub-face {} is not generic; limits on its orbit are described by its own verdict",
                        g.id
                    ));
                }
            }
            generic_verdict(a, face, hf, sing, opts, caveats)
        }
        SingularSet::Isolated { ref points } => {
            let points = points.clone();
            let mut v = base_verdict(face, &hf, sing);
            v.generic = Some(false);
            let t = match build_face_transform(face) {
                Ok(t) => t,
                Err(e) => {
                    v.directions = DirectionSet::Undetermined { reason: e.to_string() };
                    v.caveats.push(e.to_string());
                    return Ok(v);
                }
            };
            let mut sets = Vec::new();
            let mut heighted = Vec::new();
            for p in &points {
                let pa = nongeneric_analysis(&a.polynomial, face, &t, p, opts.rank_tol)?;
                sets.push(pa.directions.clone());
                heighted.push(pa.heighted);
                if pa.heighted == Heightedness::AllHeighted {
                    for (r, _) in cvai_directions(face, opts) {
                        let ip = InfinityPoint::on_face(&a.lattice, face, p.coordinates.clone());
                        let value = height_limit(&a.lattice, face, &ip, &to_rational(&r))?;
                        v.cvai.push(CriticalValue { direction: r, face_coordinates: p.coordinates.clone(), value });
                    }
                }
                v.singular_points.push(pa);
            }
            v.directions = DirectionSet::union(sets);
            v.heighted = if heighted.iter().all(|&h| h == Heightedness::AllHeighted) {
                Heightedness::AllHeighted
            } else if heighted.contains(&Heightedness::Undetermined) {
                Heightedness::Undetermined
            } else {
                Heightedness::CurveDependent
            };
            if face.codim >= 2 {
                v.caveats.push("heights along directions leaving the face depend on the curve".into());
            }
            Ok(v)
        }
    }
}

/// Full analysis of `H`.
pub fn analyze(h: &LaurentPolynomial, opts: &AnalysisOptions) -> Result<CpaiReport> {
    if h.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if h.num_terms() == 1 {
        return Err(Error::ConstantPolynomial);
    }
    let d = h.dim();
    let full = newton_polytope(h)?;
    let mut caveats =
        vec!["the hypersurface is assumed smooth in the torus; singular points of V(H) are not examined".to_string()];
    let (work, reduction) = if full.is_full_dimensional() {
        (h.clone(), None)
    } else {
        let (origin, basis) = full.affine_hull();
        let r = basis.len();
        let reduced = LaurentPolynomial::from_terms(
            r,
            h.terms().map(|(m, c)| (Exponent(full.reduced_coordinates(&m.0)), c.clone())),
        );
        caveats.push(format!(
            "Newton polytope has dimension {r} < {d}; analysed in affine-hull coordinates and mapped back"
        ));
        (reduced, Some(Reduction { origin, basis }))
    };
    let mut inner_opts = opts.clone();
    if let (Some(red), Some(r)) = (&reduction, &opts.direction) {
        inner_opts.direction = reduce_direction(red, r);
        if inner_opts.direction.is_none() {
            caveats.push("the requested direction is not parallel to the Newton polytope; no critical values".into());
        }
    }
    let a = Analysis::new(&work, opts.lattice_budget)?;
    let top = a.polytope.dim();
    for &id in opts.faces.iter().flatten() {
        let f = a.lattice.face(id)?;
        if f.dim == 0 || f.dim == top {
            return Err(Error::Precondition(format!(
                "face {id} has dimension {}; only proper faces of positive dimension are analysed",
                f.dim
            )));
        }
    }
    let targets: Vec<&FaceDescriptor> = a
        .lattice
        .faces
        .iter()
        .filter(|f| f.dim >= 1 && f.dim < top)
        .filter(|f| opts.faces.as_ref().is_none_or(|ids| ids.contains(&f.id)))
        .collect();
    let mut faces = run_parallel(&a, &targets, &inner_opts)?;
    if let Some(red) = &reduction {
        for f in &mut faces {
            lift_verdict(f, red);
        }
    }

    let mut summary = Summary {
        generic_faces: Vec::new(),
        nongeneric_faces: Vec::new(),
        undetermined_faces: Vec::new(),
        transverse_directions: Vec::new(),
    };
    for f in &faces {
        match f.generic {
            Some(true) => summary.generic_faces.push(f.face_id),
            Some(false) => {
                summary.nongeneric_faces.push(f.face_id);
                summary.transverse_directions.push((f.face_id, f.directions.clone()));
            }
            None => summary.undetermined_faces.push(f.face_id),
        }
    }
    let newton_polytope = PolytopeSummary {
        vertices: full.vertices().to_vec(),
        facets: full.halfspaces().to_vec(),
        equations: full.equations().to_vec(),
        kappa: a.kappa,
        faces: a.lattice.faces.len(),
    };
    let variables = crate::laurent::default_variables(d);
    Ok(CpaiReport { polynomial: h.to_string(), variables, dim: d, newton_polytope, reduction, faces, summary, caveats })
}

fn run_parallel(a: &Analysis, targets: &[&FaceDescriptor], opts: &AnalysisOptions) -> Result<Vec<FaceVerdict>> {
    let workers = opts.workers.max(1).min(targets.len().max(1));
    let results: Vec<Result<FaceVerdict>> = if workers == 1 {
        targets.iter().map(|f| analyze_face(a, f, opts)).collect()
    } else {
        let chunk = targets.len().div_ceil(workers);
        std::thread::scope(|s| {
            let handles: Vec<_> = targets
                .chunks(chunk)
                .map(|part| s.spawn(move || part.iter().map(|f| analyze_face(a, f, opts)).collect::<Vec<_>>()))
                .collect();
            handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
        })
    };
    results.into_iter().collect()
}

fn lift_point(red: &Reduction, y: &[i64]) -> Vec<i64> {
    let mut x = red.origin.clone();
    for (yi, b) in y.iter().zip(&red.basis) {
        for (xi, bi) in x.iter_mut().zip(b) {
            *xi += yi * bi;
        }
    }
    x
}

fn reduce_direction(red: &Reduction, r: &[BigRational]) -> Option<Vec<BigRational>> {
    let d = red.origin.len();
    let m = crate::transform::IntMatrix::from_columns(d, &red.basis);
    crate::transform::integer::solve_rational(&m, r)
}

fn lift_verdict(f: &mut FaceVerdict, red: &Reduction) {
    f.vertices = f.vertices.iter().map(|v| Exponent(lift_point(red, &v.0))).collect();
    f.directions = f.directions.embed(&red.basis);
    for p in &mut f.singular_points {
        p.directions = p.directions.embed(&red.basis);
    }
    for c in &mut f.cvai {
        c.direction = lift_direction(red, &c.direction);
    }
    f.caveats.push("inward normals are given in affine-hull coordinates".into());
}

fn lift_direction(red: &Reduction, r: &[i64]) -> Vec<i64> {
    let d = red.origin.len();
    (0..d).map(|i| r.iter().zip(&red.basis).map(|(x, b)| x * b[i]).sum()).collect()
}
