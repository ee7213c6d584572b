//! Face polynomials and their singular points in the torus.

use num_complex::Complex64;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gaussian::GaussianRational as Q;
use crate::laurent::{Exponent, LaurentPolynomial};
use crate::polytope::FaceDescriptor;
use crate::toric::span_coordinates;
use crate::univariate::{complex_roots, BiPoly, UniPoly};

const RESIDUAL_TOL: f64 = 1e-8;
const CLUSTER_TOL: f64 = 1e-8;

/// `H_F` written in the face's span-basis coordinates: the terms of `H` on
/// `F`, with `z^m ↦ u^{c}` where `m - anchor = Σ c_i b_i`.
pub fn face_polynomial(h: &LaurentPolynomial, face: &FaceDescriptor) -> Result<LaurentPolynomial> {
    let g = face.span_basis.len();
    let mut terms = Vec::new();
    for (m, c) in h.terms() {
        if !face.lattice_points.contains(m) {
            continue;
        }
        let coords = span_coordinates(face, &m.sub(&face.vertex_anchor).0)?;
        terms.push((Exponent(coords), c.clone()));
    }
    if terms.is_empty() {
        return Err(Error::NoFaceTerms(face.id));
    }
    Ok(LaurentPolynomial::from_terms(g, terms))
}

/// A point of the torus, numerically and (when recognised) exactly.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TorusPoint {
    pub coordinates: Vec<Complex64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<Vec<Q>>,
}

impl TorusPoint {
    fn exact(values: Vec<Q>) -> Self {
        Self { coordinates: values.iter().map(Q::to_complex).collect(), exact: Some(values) }
    }

    fn numeric(coordinates: Vec<Complex64>) -> Self {
        Self { coordinates, exact: None }
    }
}

/// Outcome of a singular-point search on a face polynomial.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SingularSet {
    Isolated { points: Vec<TorusPoint> },
    Undetermined { reason: String },
}

impl SingularSet {
    pub fn is_empty(&self) -> bool {
        matches!(self, SingularSet::Isolated { points } if points.is_empty())
    }
}

/// Torus points where `h = 0` and `∇_log h = 0`.
///
/// Solved exactly for one and two face variables (gcds and resultants over
/// `ℚ(i)`, with numeric polishing where roots are not rational); faces of
/// higher dimension are reported as undetermined.
pub fn face_singularities(h: &LaurentPolynomial) -> Result<SingularSet> {
    if h.is_zero() {
        return Err(Error::DegenerateFacePolynomial);
    }
    match h.dim() {
        0 => Ok(SingularSet::Isolated { points: Vec::new() }),
        1 => {
            let p = to_unipoly(h);
            let g = p.gcd(&p.derivative()).strip_zero_roots();
            let points = g
                .distinct_roots()
                .into_iter()
                .map(|r| match r.exact {
                    Some(q) => TorusPoint::exact(vec![q]),
                    None => TorusPoint::numeric(vec![r.approx]),
                })
                .collect();
            Ok(SingularSet::Isolated { points })
        }
        2 => {
            let a = to_bipoly(h);
            let system = [a.clone(), a.partial_u(), a.partial_v()];
            Ok(match solve_with_swap(&system, (1, 2)) {
                Ok(points) => SingularSet::Isolated { points },
                Err(reason) => SingularSet::Undetermined { reason },
            })
        }
        g => Ok(SingularSet::Undetermined {
            reason: format!("singular points of a face polynomial in {g} variables are not computed"),
        }),
    }
}

/// Torus points with `h = 0` and `∇_log h ∥ ρ`, for `h` in at most two
/// variables; `None` when the solution set is not finite.
pub fn directional_points(h: &LaurentPolynomial, rho: &[i64]) -> Option<Vec<TorusPoint>> {
    match h.dim() {
        1 => {
            let p = to_unipoly(h).strip_zero_roots();
            Some(
                p.distinct_roots()
                    .into_iter()
                    .map(|r| match r.exact {
                        Some(q) => TorusPoint::exact(vec![q]),
                        None => TorusPoint::numeric(vec![r.approx]),
                    })
                    .collect(),
            )
        }
        2 => {
            let a = to_bipoly(h);
            let (r1, r2) = (Q::from_integer(rho[0]), Q::from_integer(rho[1]));
            // ρ_2 u∂_u h - ρ_1 v∂_v h = 0 expresses parallelism
            let e = BiPoly::from_terms(a.terms().map(|(i, j, c)| {
                let w = &(&r2 * &Q::from_integer(i as i64)) - &(&r1 * &Q::from_integer(j as i64));
                (i, j, &c * &w)
            }));
            if e.is_zero() {
                return None;
            }
            solve_with_swap(&[a, e], (0, 1)).ok()
        }
        _ => None,
    }
}

pub(crate) fn to_unipoly(h: &LaurentPolynomial) -> UniPoly {
    let cleared = h.clear_negative_exponents();
    let deg = cleared.exponents().map(|m| m.0[0] as usize).max().unwrap_or(0);
    let mut coeffs = vec![Q::zero(); deg + 1];
    for (m, c) in cleared.terms() {
        coeffs[m.0[0] as usize] = c.clone();
    }
    UniPoly::from_coeffs(coeffs)
}

pub(crate) fn to_bipoly(h: &LaurentPolynomial) -> BiPoly {
    let cleared = h.clear_negative_exponents();
    BiPoly::from_terms(cleared.terms().map(|(m, c)| (m.0[0] as usize, m.0[1] as usize, c.clone())))
}

fn solve_with_swap(system: &[BiPoly], polish: (usize, usize)) -> std::result::Result<Vec<TorusPoint>, String> {
    match common_torus_roots(system, polish) {
        Ok(p) => Ok(p),
        Err(_) => {
            let swapped: Vec<BiPoly> = system.iter().map(BiPoly::swap).collect();
            common_torus_roots(&swapped, polish).map(|pts| {
                pts.into_iter()
                    .map(|p| TorusPoint {
                        coordinates: vec![p.coordinates[1], p.coordinates[0]],
                        exact: p.exact.map(|e| vec![e[1].clone(), e[0].clone()]),
                    })
                    .collect()
            })
        }
    }
}

/// Common zeros in `(ℂ^*)^2` of a polynomial system, assumed finite.
fn common_torus_roots(system: &[BiPoly], polish: (usize, usize)) -> std::result::Result<Vec<TorusPoint>, String> {
    let polys: Vec<&BiPoly> = system.iter().filter(|p| !p.is_zero()).collect();
    if polys.len() < 2 {
        return Err("system has fewer than two nonzero equations".into());
    }
    let mut g: Option<UniPoly> = None;
    for i in 0..polys.len() {
        for j in i + 1..polys.len() {
            let r = polys[i].resultant_v(polys[j]);
            if !r.is_zero() {
                g = Some(match g {
                    None => r.monic(),
                    Some(acc) => acc.gcd(&r),
                });
            }
        }
    }
    let g = g.ok_or_else(|| "equations share a common curve component".to_string())?.strip_zero_roots();
    let mut points: Vec<TorusPoint> = Vec::new();
    for root in g.distinct_roots() {
        let candidates = match &root.exact {
            Some(u) => exact_fibre(system, u)?,
            None => numeric_fibre(system, root.approx, polish),
        };
        for p in candidates {
            if p.coordinates.iter().any(|c| c.norm() < 1e-12) {
                continue;
            }
            if !points.iter().any(|q| close(&q.coordinates, &p.coordinates)) {
                points.push(p);
            }
        }
    }
    points.sort_by(|a, b| {
        let key = |p: &TorusPoint| (p.coordinates[0].re, p.coordinates[0].im, p.coordinates[1].re, p.coordinates[1].im);
        key(a).partial_cmp(&key(b)).unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(points)
}

fn close(a: &[Complex64], b: &[Complex64]) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).norm() <= CLUSTER_TOL * x.norm().max(1.0))
}

fn exact_fibre(system: &[BiPoly], u: &Q) -> std::result::Result<Vec<TorusPoint>, String> {
    let mut g: Option<UniPoly> = None;
    for p in system {
        let q = p.at_u(u);
        if !q.is_zero() {
            g = Some(match g {
                None => q.monic(),
                Some(acc) => acc.gcd(&q),
            });
        }
    }
    let g = g.ok_or_else(|| "a whole line u = const solves the system".to_string())?.strip_zero_roots();
    Ok(g.distinct_roots()
        .into_iter()
        .filter_map(|r| match r.exact {
            Some(v) => Some(TorusPoint::exact(vec![u.clone(), v])),
            None => {
                let pt = [u.to_complex(), r.approx];
                system
                    .iter()
                    .all(|p| relative_residual(p, pt[0], pt[1]) < RESIDUAL_TOL)
                    .then(|| TorusPoint::numeric(pt.to_vec()))
            }
        })
        .collect())
}

fn numeric_fibre(system: &[BiPoly], u: Complex64, polish: (usize, usize)) -> Vec<TorusPoint> {
    let mut out = Vec::new();
    for p in system {
        let mut coeffs = p.at_u_complex(u);
        let top = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        while coeffs.last().is_some_and(|c| c.norm() <= 1e-12 * top) {
            coeffs.pop();
        }
        if coeffs.len() < 2 {
            continue;
        }
        for v in complex_roots(&coeffs) {
            let (uu, vv) = newton2(&system[polish.0], &system[polish.1], u, v);
            if system.iter().all(|q| relative_residual(q, uu, vv) < RESIDUAL_TOL) {
                out.push(TorusPoint::numeric(vec![uu, vv]));
            }
        }
        break;
    }
    out
}

/// `|f(u, v)|` divided by the sum of the moduli of its terms there.
fn relative_residual(f: &BiPoly, u: Complex64, v: Complex64) -> f64 {
    let mut value = Complex64::zero();
    let mut scale = 0.0;
    for (a, b, c) in f.terms() {
        let t = c.to_complex() * u.powi(a as i32) * v.powi(b as i32);
        value += t;
        scale += t.norm();
    }
    if scale == 0.0 {
        0.0
    } else {
        value.norm() / scale
    }
}

/// Newton's method on the square system `f = g = 0`.
fn newton2(f: &BiPoly, g: &BiPoly, mut u: Complex64, mut v: Complex64) -> (Complex64, Complex64) {
    let (fu, fv, gu, gv) = (f.partial_u(), f.partial_v(), g.partial_u(), g.partial_v());
    for _ in 0..60 {
        let (a, b) = (fu.eval_complex(u, v), fv.eval_complex(u, v));
        let (c, d) = (gu.eval_complex(u, v), gv.eval_complex(u, v));
        let det = a * d - b * c;
        if det.norm() == 0.0 {
            break;
        }
        let (r1, r2) = (f.eval_complex(u, v), g.eval_complex(u, v));
        let du = (d * r1 - b * r2) / det;
        let dv = (a * r2 - c * r1) / det;
        u -= du;
        v -= dv;
        if du.norm().max(dv.norm()) <= 1e-15 * u.norm().max(v.norm()).max(1.0) {
            break;
        }
    }
    (u, v)
}
