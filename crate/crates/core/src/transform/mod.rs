//! Monomial changes of coordinates adapted to a face.
//!
//! For a face `F` lying in `k` facets, `N` is an invertible integer matrix
//! whose last `k` columns are the inward facet normals. The torus map
//! `τ_N(w) = exp(N log w)` acts on exponents by `N^T`, so after shifting by a
//! vertex of `F` every exponent of the polynomial has nonnegative last `k`
//! coordinates, with zeros exactly on `F`.

pub mod integer;

use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gaussian::Coefficient;
use crate::laurent::{Exponent, LaurentPolynomial};
use crate::polytope::FaceDescriptor;

use integer::{saturated_basis, unimodular_completion};
pub use integer::{Completion, HermiteForm, IntMatrix, RationalMatrix};

/// An invertible integer matrix `N` together with the face it was built for.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialTransform {
    pub matrix: IntMatrix,
    pub det: i64,
    pub unimodular: bool,
    #[serde(skip)]
    pub inverse_transpose: RationalMatrix,
    pub face_id: Option<usize>,
    /// Number of trailing columns that are facet normals.
    pub codim: usize,
    /// Vertex subtracted from every exponent before transforming.
    pub anchor: Exponent,
    pub caveats: Vec<String>,
}

impl MonomialTransform {
    pub fn new(matrix: IntMatrix, codim: usize, anchor: Exponent) -> Result<Self> {
        if matrix.rows() != matrix.cols() {
            return Err(Error::DimensionMismatch { expected: matrix.rows(), found: matrix.cols() });
        }
        if anchor.dim() != matrix.rows() {
            return Err(Error::DimensionMismatch { expected: matrix.rows(), found: anchor.dim() });
        }
        let det = matrix.det();
        if det == 0 {
            return Err(Error::SingularMatrix);
        }
        let inverse_transpose = matrix.inverse_rational().ok_or(Error::SingularMatrix)?.transpose();
        let mut caveats = Vec::new();
        if det.abs() != 1 {
            caveats.push(format!(
                "sublattice caveat: |det N| = {}, transformed exponents lie in a proper sublattice",
                det.abs()
            ));
        }
        Ok(Self { matrix, det, unimodular: det.abs() == 1, inverse_transpose, face_id: None, codim, anchor, caveats })
    }

    /// Builds `N` from the rows of `N^T`.
    pub fn from_transpose_rows(rows: &[Vec<i64>], codim: usize, anchor: Exponent) -> Result<Self> {
        Self::new(IntMatrix::from_rows(rows).transpose(), codim, anchor)
    }

    /// Completes an explicit list of normals (placed last, in the given
    /// order) to an invertible matrix, preferring a unimodular completion.
    pub fn from_normals(normals: &[Vec<i64>], anchor: Exponent) -> Result<Self> {
        let d = anchor.dim();
        let k = normals.len();
        let matrix = match unimodular_completion(normals, d)? {
            Completion::Unimodular(m) => m,
            Completion::Infeasible { .. } => {
                // complete the saturation of the normals, then put the normals back
                let sat = saturated_basis(normals, d);
                let Completion::Unimodular(u) = unimodular_completion(&sat, d)? else {
                    return Err(Error::Internal("saturated basis failed to complete".into()));
                };
                let mut cols: Vec<Vec<i64>> = (0..d - k).map(|j| u.column(j)).collect();
                cols.extend(normals.iter().cloned());
                IntMatrix::from_columns(d, &cols)
            }
        };
        Self::new(matrix, k, anchor)
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn transpose(&self) -> IntMatrix {
        self.matrix.transpose()
    }

    /// `N^T (m - anchor)`.
    pub fn transform_exponent(&self, m: &Exponent) -> Exponent {
        Exponent(self.matrix.transpose().mul_vec(&m.sub(&self.anchor).0))
    }

    /// Class of `N^T R`.
    pub fn pushforward_direction(&self, r: &[Complex64]) -> Vec<Complex64> {
        let nt = self.matrix.transpose();
        (0..self.dim()).map(|i| (0..self.dim()).map(|j| r[j] * nt.get(i, j) as f64).sum()).collect()
    }

    /// Class of `N^{-T} R`, the inverse of [`pushforward_direction`].
    ///
    /// [`pushforward_direction`]: Self::pushforward_direction
    pub fn pullback_direction(&self, r: &[Complex64]) -> Vec<Complex64> {
        let m = self.inverse_transpose.to_f64();
        m.iter().map(|row| row.iter().zip(r).map(|(a, z)| z * *a).sum()).collect()
    }

    /// Exponent `N^{-T} e_j`: the monomial in `z` equal to the transformed
    /// coordinate `w_j`.
    pub fn coordinate_monomial(&self, j: usize) -> Vec<num_rational::BigRational> {
        self.inverse_transpose.data.iter().map(|row| row[j].clone()).collect()
    }
}

/// Transform adapted to `f`: the last columns are its facet normals.
///
/// Requires the modified simple condition. When the normals cannot be
/// completed unimodularly a completion of their saturation is used and the
/// result carries a sublattice caveat. Among the orderings of the normals,
/// the one leaving the most columns equal to the identity's wins (first in
/// lexicographic order on ties), so a coordinate-aligned face gets `N = I`.
pub fn build_face_transform(f: &FaceDescriptor) -> Result<MonomialTransform> {
    if !f.modified_simple() {
        return Err(Error::ModifiedSimpleFails { face: f.id, facets: f.tight_halfspaces.len(), codim: f.codim });
    }
    let d = f.vertex_anchor.dim();
    let mut best: Option<(usize, MonomialTransform)> = None;
    for order in permutations(f.inward_normals.len()) {
        let normals: Vec<Vec<i64>> = order.iter().map(|&i| f.inward_normals[i].clone()).collect();
        let t = MonomialTransform::from_normals(&normals, f.vertex_anchor.clone())?;
        let score = (0..d).filter(|&j| t.matrix.column(j) == integer::unit(d, j)).count()
            + if t.unimodular { d + 1 } else { 0 };
        if best.as_ref().is_none_or(|(s, _)| score > *s) {
            best = Some((score, t));
        }
    }
    let (_, mut t) = best.ok_or_else(|| Error::Internal("no orderings".into()))?;
    t.face_id = Some(f.id);
    Ok(t)
}

/// All orderings of `0..n`, in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 0..n {
        for rest in permutations(n - 1) {
            let mut p = vec![first];
            p.extend(rest.into_iter().map(|i| if i >= first { i + 1 } else { i }));
            out.push(p);
        }
    }
    out
}

/// A structural defect of a transformed polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StructuralWarning {
    /// No term is a pure positive power of the `index`-th normal variable
    /// (1-based among the last `k` variables).
    MissingPureTerm { index: usize, variable: usize },
}

impl fmt::Display for StructuralWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::MissingPureTerm { index, .. } => write!(f, "no term involving y{index} alone"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransformedPolynomial {
    pub polynomial: LaurentPolynomial,
    pub warnings: Vec<StructuralWarning>,
}

/// `H̄ = τ_N^*(z^{-anchor} H)`, checked to have a constant term and no
/// negative powers of the last `k` variables.
pub fn transform_polynomial(h: &LaurentPolynomial, t: &MonomialTransform) -> Result<TransformedPolynomial> {
    if h.dim() != t.dim() {
        return Err(Error::DimensionMismatch { expected: t.dim(), found: h.dim() });
    }
    let shifted = h.mul_monomial(&t.anchor.scale(-1), &Coefficient::from_integer(1))?;
    let hbar = shifted.substitute_monomial_map(&t.matrix)?;
    let d = t.dim();
    let k = t.codim;
    if hbar.coefficient(&Exponent::zero(d)) == Coefficient::from_integer(0) {
        return Err(Error::Precondition("transformed polynomial has no constant term".into()));
    }
    if hbar.exponents().any(|m| m.0[d - k..].iter().any(|&e| e < 0)) {
        return Err(Error::Precondition("transformed polynomial has negative powers of a normal variable".into()));
    }
    let warnings = (0..k)
        .filter(|&j| {
            let var = d - k + j;
            !hbar.exponents().any(|m| m.0[var] > 0 && m.0[d - k..].iter().enumerate().all(|(i, &e)| i == j || e == 0))
        })
        .map(|j| StructuralWarning::MissingPureTerm { index: j + 1, variable: d - k + j })
        .collect();
    Ok(TransformedPolynomial { polynomial: hbar, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::{default_variables, parse};
    use crate::polytope::newton_polytope;

    fn poly(text: &str) -> LaurentPolynomial {
        parse(text, &default_variables(3)).unwrap()
    }

    #[test]
    fn pyramid_apex() {
        let h = poly("1 + x + y + x*y + z");
        let fl = newton_polytope(&h).unwrap().face_lattice().unwrap();
        let apex = fl.faces.iter().find(|f| f.vertices == vec![Exponent(vec![0, 0, 1])]).unwrap();
        assert!(matches!(build_face_transform(apex), Err(Error::ModifiedSimpleFails { facets: 4, codim: 3, .. })));
        let t = MonomialTransform::from_transpose_rows(
            &[vec![1, 0, 0], vec![0, 1, 0], vec![-1, 0, -1]],
            3,
            Exponent(vec![0, 0, 1]),
        )
        .unwrap();
        assert!(t.unimodular);
        let out = transform_polynomial(&h, &t).unwrap();
        assert_eq!(out.polynomial, poly("z + x + y*z + x*y + 1"));
        assert_eq!(out.warnings, vec![StructuralWarning::MissingPureTerm { index: 2, variable: 1 }]);
        assert_eq!(out.warnings[0].to_string(), "no term involving y2 alone");
        // the same matrix from the normals themselves
        let t2 =
            MonomialTransform::from_normals(&[vec![1, 0, 0], vec![0, 1, 0], vec![-1, 0, -1]], Exponent(vec![0, 0, 1]))
                .unwrap();
        assert_eq!(t2.matrix, t.matrix);
        let r = [Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
        let pushed = t.pushforward_direction(&r);
        assert_eq!(pushed, vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(-1.0, 0.0)]);
    }

    #[test]
    fn aligned_edge_gets_identity() {
        let h = poly("z - y - (x-1)^2");
        let fl = newton_polytope(&h).unwrap().face_lattice().unwrap();
        let edge = fl.faces.iter().find(|f| f.dim == 1 && f.span_basis == vec![vec![1, 0, 0]]).unwrap();
        let t = build_face_transform(edge).unwrap();
        assert_eq!(t.matrix, IntMatrix::identity(3));
        let out = transform_polynomial(&h, &t).unwrap();
        assert_eq!(out.polynomial, h);
        assert!(out.warnings.is_empty());
    }

    #[test]
    fn facets_put_normal_last() {
        let h = poly("1 + x^2 + y^3 + z + x*y*z");
        let fl = newton_polytope(&h).unwrap().face_lattice().unwrap();
        for f in fl.faces.iter().filter(|f| f.codim == 1) {
            let t = build_face_transform(f).unwrap();
            assert_eq!(t.matrix.column(2), f.inward_normals[0]);
            let hbar = transform_polynomial(&h, &t).unwrap().polynomial;
            assert!(hbar.exponents().all(|m| m.0[2] >= 0));
            assert!(hbar.exponents().any(|m| m.0[2] == 0));
        }
    }

    #[test]
    fn non_unimodular_normals_get_caveat() {
        let t = MonomialTransform::from_normals(&[vec![2, 1, 0], vec![0, 1, 2]], Exponent::zero(3)).unwrap();
        assert_eq!(t.matrix.column(1), vec![2, 1, 0]);
        assert_eq!(t.matrix.column(2), vec![0, 1, 2]);
        assert!(!t.unimodular);
        assert_eq!(t.det.abs(), 2);
        assert!(t.caveats[0].starts_with("sublattice caveat"));
    }
}
