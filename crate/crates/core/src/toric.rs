//! The toric compactification defined by the lattice points of a polytope:
//! the embedding `Φ(z) = [z^{m_1} : … : z^{m_s}]`, points on faces at
//! infinity, limits of monomials and height functions, and the inverse of
//! `Φ` on the torus.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::{ComplexPoint, Exponent};
use crate::numeric::normalize_projective;
use crate::polytope::{sigma_cone, FaceDescriptor, FaceLattice};
use crate::transform::integer::solve_integer;
use crate::transform::IntMatrix;

/// `Φ(z)` over the given lattice points, normalised so the coordinate of
/// largest modulus equals 1 (first such index on ties).
///
/// Moduli are computed in log space so points far out in the torus do not
/// overflow.
pub fn phi(points: &[Exponent], z: &ComplexPoint) -> Result<Vec<Complex64>> {
    if let Some(i) = z.coords().iter().position(|c| c.norm() == 0.0) {
        return Err(Error::NotTorusPoint { index: i });
    }
    let logs: Vec<Complex64> = z.coords().iter().map(|c| c.ln()).collect();
    let exps: Vec<Complex64> = points.iter().map(|m| m.0.iter().zip(&logs).map(|(&e, l)| l * e as f64).sum()).collect();
    let top = exps.iter().map(|e| e.re).fold(f64::NEG_INFINITY, f64::max);
    let raw: Vec<Complex64> = exps.iter().map(|e| (e - top).exp()).collect();
    normalize_projective(&raw).ok_or_else(|| Error::Internal("Φ produced the zero vector".into()))
}

/// A point of the compactification lying in the open orbit of a face.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InfinityPoint {
    pub face_id: usize,
    /// Values of the span-basis monomials `u_i = p^{b_i}`.
    pub face_coordinates: Vec<Complex64>,
    /// Indices (into the lattice-point list) of the nonzero coordinates.
    pub support: Vec<usize>,
}

impl InfinityPoint {
    /// The point of the face's orbit with the given face coordinates.
    pub fn on_face(lattice: &FaceLattice, face: &FaceDescriptor, face_coordinates: Vec<Complex64>) -> Self {
        let support = face.lattice_points.iter().filter_map(|m| lattice.point_index(m)).collect();
        Self { face_id: face.id, face_coordinates, support }
    }

    /// Reads off the face and face coordinates of a projective point;
    /// coordinates below `tol` (relative to the largest) count as zero.
    pub fn from_projective(lattice: &FaceLattice, p: &[Complex64], tol: f64) -> Result<Self> {
        let top = p.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let support: Vec<usize> = (0..p.len()).filter(|&j| p[j].norm() > tol * top).collect();
        if support.is_empty() {
            return Err(Error::UnrealizableSupport);
        }
        let face = classify_support(lattice, &support)?;
        let face_coordinates = face
            .span_basis
            .iter()
            .map(|b| {
                let n = integer_combination_in_face(face, b)?;
                Ok(face
                    .lattice_points
                    .iter()
                    .zip(&n)
                    .filter(|(_, &c)| c != 0)
                    .map(|(m, &c)| p[lattice.point_index(m).expect("face point is a lattice point")].powi(c as i32))
                    .product())
            })
            .collect::<Result<Vec<Complex64>>>()?;
        Ok(Self { face_id: face.id, face_coordinates, support })
    }

    /// Projective coordinates `p_j = u^{c_j}` on the face's lattice points,
    /// zero elsewhere, where `c_j` are the span-basis coordinates of
    /// `m_j - anchor`.
    pub fn projective(&self, lattice: &FaceLattice) -> Result<Vec<Complex64>> {
        let face = lattice.face(self.face_id)?;
        let mut p = vec![Complex64::zero(); lattice.lattice_points.len()];
        for m in &face.lattice_points {
            let c = span_coordinates(face, &m.sub(&face.vertex_anchor).0)?;
            p[lattice.point_index(m).expect("face point is a lattice point")] = monomial_in(&self.face_coordinates, &c);
        }
        normalize_projective(&p).ok_or_else(|| Error::Internal("empty face".into()))
    }
}

fn monomial_in(u: &[Complex64], c: &[i64]) -> Complex64 {
    u.iter().zip(c).map(|(ui, &ci)| ui.powi(ci as i32)).product()
}

/// Integer coordinates of `x ∈ L_F ∩ ℤ^d` in the face's span basis.
pub fn span_coordinates(face: &FaceDescriptor, x: &[i64]) -> Result<Vec<i64>> {
    if face.span_basis.is_empty() {
        return if x.iter().all(|&v| v == 0) { Ok(Vec::new()) } else { Err(Error::NotInFaceLattice) };
    }
    let b = IntMatrix::from_columns(x.len(), &face.span_basis);
    solve_integer(&b, x).ok_or(Error::NotInFaceLattice)
}

/// The face whose open orbit contains points with the given support.
///
/// The support must be exactly the lattice points of the smallest face
/// containing it; anything else does not occur on the compactification.
pub fn classify_support<'a>(lattice: &'a FaceLattice, support: &[usize]) -> Result<&'a FaceDescriptor> {
    if support.is_empty() {
        return Err(Error::UnrealizableSupport);
    }
    let pts: Vec<Exponent> = support
        .iter()
        .map(|&j| lattice.lattice_points.get(j).cloned().ok_or(Error::UnrealizableSupport))
        .collect::<Result<_>>()?;
    let face = lattice.minimal_face_containing(&pts).ok_or(Error::UnrealizableSupport)?;
    let mut want: Vec<usize> = face.lattice_points.iter().filter_map(|m| lattice.point_index(m)).collect();
    want.sort_unstable();
    let mut have = support.to_vec();
    have.sort_unstable();
    have.dedup();
    if want == have {
        Ok(face)
    } else {
        Err(Error::UnrealizableSupport)
    }
}

/// Limit behaviour of a monomial along sequences converging to a point of a
/// face's orbit.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "class", content = "value", rename_all = "snake_case")]
pub enum LimitClass {
    NonzeroLimit(Complex64),
    ZeroLimit,
    Undetermined,
}

/// `z^m` converges to `p^m ≠ 0` for `m ∈ L_F`, to `0` for the other lattice
/// vectors of `σ_F`, and has no sequence-independent limit otherwise.
pub fn monomial_limit_class(
    lattice: &FaceLattice,
    face: &FaceDescriptor,
    m: &Exponent,
    p: &InfinityPoint,
) -> LimitClass {
    if face.span_contains(&m.0) {
        return match span_coordinates(face, &m.0) {
            Ok(c) => LimitClass::NonzeroLimit(monomial_in(&p.face_coordinates, &c)),
            Err(_) => LimitClass::Undetermined,
        };
    }
    if sigma_cone(lattice, face).contains(&m.0) {
        LimitClass::ZeroLimit
    } else {
        LimitClass::Undetermined
    }
}

/// Limit of `h_r(z) = -Σ r_i log|z_i|`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum HeightLimit {
    Finite(f64),
    PlusInfinity,
    MinusInfinity,
    Undetermined,
}

/// Clears denominators: returns `(R, D)` with `r = R / D`, `D > 0`.
pub fn clear_denominators(r: &[BigRational]) -> Result<(Vec<i64>, i64)> {
    let den = r.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints = r
        .iter()
        .map(|q| (q * BigRational::from_integer(den.clone())).to_integer().to_i64())
        .collect::<Option<Vec<i64>>>()
        .ok_or_else(|| Error::Precondition("direction entries are too large".into()))?;
    Ok((ints, den.to_i64().ok_or_else(|| Error::Precondition("direction denominators are too large".into()))?))
}

pub fn height_limit(
    lattice: &FaceLattice,
    face: &FaceDescriptor,
    p: &InfinityPoint,
    r: &[BigRational],
) -> Result<HeightLimit> {
    let (big_r, den) = clear_denominators(r)?;
    let m = Exponent(big_r);
    Ok(match monomial_limit_class(lattice, face, &m, p) {
        // h_r = -(1/D) log|z^R|; adding 0.0 maps -0.0 to 0.0
        LimitClass::NonzeroLimit(v) => HeightLimit::Finite(-v.norm().ln() / den as f64 + 0.0),
        LimitClass::ZeroLimit => HeightLimit::PlusInfinity,
        LimitClass::Undetermined => match monomial_limit_class(lattice, face, &m.scale(-1), p) {
            LimitClass::ZeroLimit => HeightLimit::MinusInfinity,
            _ => HeightLimit::Undetermined,
        },
    })
}

/// Coefficients `n` over the face's lattice points with `Σ n_j = 0` and
/// `Σ n_j m_j = x`.
pub fn integer_combination_in_face(face: &FaceDescriptor, x: &[i64]) -> Result<Vec<i64>> {
    if !face.span_contains(x) {
        return Err(Error::NotInFaceLattice);
    }
    let d = x.len();
    let cols: Vec<Vec<i64>> = face
        .lattice_points
        .iter()
        .map(|m| {
            let mut c = m.0.clone();
            c.push(1);
            c
        })
        .collect();
    let a = IntMatrix::from_columns(d + 1, &cols);
    let mut rhs = x.to_vec();
    rhs.push(0);
    solve_integer(&a, &rhs).ok_or(Error::NotInFaceLattice)
}

/// Inverts `Φ` on points with full support.
pub fn reconstruct_point(lattice: &FaceLattice, p: &[Complex64]) -> Result<ComplexPoint> {
    if p.len() != lattice.lattice_points.len() {
        return Err(Error::DimensionMismatch { expected: lattice.lattice_points.len(), found: p.len() });
    }
    if p.iter().any(|c| c.norm() == 0.0) {
        return Err(Error::Precondition("projective point must have full support".into()));
    }
    let top = lattice.top();
    let d = top.vertex_anchor.dim();
    if top.dim != d {
        return Err(Error::NotFullDimensional);
    }
    let coords = (0..d)
        .map(|i| {
            let e = crate::transform::integer::unit(d, i);
            let n = integer_combination_in_face(top, &e)
                .map_err(|_| Error::Internal("lattice points do not generate the lattice".into()))?;
            Ok(n.iter().zip(p).filter(|(&c, _)| c != 0).map(|(&c, pj)| pj.powi(c as i32)).product())
        })
        .collect::<Result<Vec<Complex64>>>()?;
    Ok(ComplexPoint(coords))
}
