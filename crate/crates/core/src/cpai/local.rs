//! Local model at a singular point of a face: the transformed polynomial
//! near the limit point `Z`, the unitary frame `B`, and the Jacobian `J`
//! whose column space gives the limiting log-gradient directions.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gaussian::GaussianRational as Q;
use crate::laurent::LaurentPolynomial;
use crate::numeric::{canonical_subspace_basis, distance_to_subspace, numerical_rank};
use crate::polytope::FaceDescriptor;
use crate::transform::integer::solve_rational;
use crate::transform::{transform_polynomial, IntMatrix, MonomialTransform, StructuralWarning};

use super::singular::TorusPoint;
use super::{DirectionSet, Heightedness};

/// Numeric matrix serialised as a list of rows.
pub type ComplexRows = Vec<Vec<Complex64>>;

/// Everything computed at one singular point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LocalModel {
    pub transform: MonomialTransform,
    pub transformed: String,
    pub warnings: Vec<StructuralWarning>,
    /// Limit of `w = τ_N^{-1}(z)`: the face coordinates in the first
    /// `d - k` slots, zeros in the last `k`.
    pub z: Vec<Complex64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z_exact: Option<Vec<Q>>,
    pub log_gradient: Vec<Complex64>,
    pub gradient: Vec<Complex64>,
    pub b: ComplexRows,
    pub d: ComplexRows,
    pub jacobian: ComplexRows,
    pub rank: usize,
    pub rank_is_exact: bool,
    /// The rows of the last `k` coordinates vanish on the first `d - k`
    /// columns of `J`.
    pub zero_block: bool,
    /// `L_F` lies in the resulting direction space.
    pub contains_face_span: Option<bool>,
    #[serde(skip)]
    pub hbar: LaurentPolynomial,
}

impl LocalModel {
    /// First `d - 1` columns of `B`, as vectors.
    pub fn tangent_frame(&self) -> Vec<Vec<Complex64>> {
        let d = self.z.len();
        (0..d - 1).map(|j| (0..d).map(|i| self.b[i][j]).collect()).collect()
    }

    /// Last column of `B`.
    pub fn transversal(&self) -> Vec<Complex64> {
        let d = self.z.len();
        (0..d).map(|i| self.b[i][d - 1]).collect()
    }
}

/// Result of the local analysis at one point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointAnalysis {
    pub point: TorusPoint,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<LocalModel>,
    pub directions: DirectionSet,
    pub heighted: Heightedness,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub caveats: Vec<String>,
}

#[derive(Clone, Debug)]
enum Values {
    Exact(Vec<Q>),
    Numeric(Vec<Complex64>),
}

impl Values {
    fn approx(&self) -> Vec<Complex64> {
        match self {
            Values::Exact(v) => v.iter().map(Q::to_complex).collect(),
            Values::Numeric(v) => v.clone(),
        }
    }

    fn eval(&self, p: &LaurentPolynomial) -> Result<(Complex64, Option<Q>)> {
        match self {
            Values::Exact(v) => {
                let q = p.evaluate_exact(v)?;
                Ok((q.to_complex(), Some(q)))
            }
            Values::Numeric(v) => Ok((p.evaluate_slice(v)?, None)),
        }
    }
}

/// Limit point `Z` of `τ_N^{-1}(z)` as `z → p`, where `p` has the given
/// face coordinates. Returns the point and any caveats (fractional
/// exponents need a branch choice).
fn limit_point(face: &FaceDescriptor, t: &MonomialTransform, point: &TorusPoint) -> Result<(Values, Vec<String>)> {
    let d = t.dim();
    let k = t.codim;
    let basis = IntMatrix::from_columns(d, &face.span_basis);
    let mut caveats = Vec::new();
    let mut exps: Vec<Vec<BigRational>> = Vec::new();
    for j in 0..d - k {
        let m = t.coordinate_monomial(j);
        let c = solve_rational(&basis, &m)
            .ok_or_else(|| Error::Internal("transformed coordinate is not a monomial on the face".into()))?;
        exps.push(c);
    }
    let integral = exps.iter().flatten().all(|q| q.is_integer());
    if let (true, Some(u)) = (integral, &point.exact) {
        let mut z = Vec::with_capacity(d);
        for c in &exps {
            let mut x = Q::one();
            for (ui, ci) in u.iter().zip(c) {
                let e = ci.to_integer().to_i64().ok_or_else(|| Error::Internal("exponent overflow".into()))?;
                x = &x * &ui.powi(e).ok_or(Error::Internal("face coordinate is zero".into()))?;
            }
            z.push(x);
        }
        z.extend(std::iter::repeat_n(Q::zero(), k));
        return Ok((Values::Exact(z), caveats));
    }
    if !integral {
        caveats.push("fractional exponents: limit point uses the principal branch of the logarithm".into());
    }
    let mut z: Vec<Complex64> = exps
        .iter()
        .map(|c| {
            let log: Complex64 =
                point.coordinates.iter().zip(c).map(|(u, q)| u.ln() * crate::gaussian::rat_to_f64(q)).sum();
            log.exp()
        })
        .collect();
    z.extend(std::iter::repeat_n(Complex64::zero(), k));
    Ok((Values::Numeric(z), caveats))
}

fn hermitian(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Unitary `B` with `e_1, …, e_{d-k}` first, then Gram–Schmidt completions
/// from the remaining standard vectors, and `transversal` last; the middle
/// block is rotated so `det B = 1` when it is nonempty.
fn unitary_frame(transversal: &[Complex64], k: usize) -> DMatrix<Complex64> {
    let d = transversal.len();
    let mut cols: Vec<Vec<Complex64>> = (0..d - k)
        .map(|j| (0..d).map(|i| if i == j { Complex64::one() } else { Complex64::zero() }).collect())
        .collect();
    let mut middle = Vec::new();
    let mut done = cols.clone();
    done.push(transversal.to_vec());
    for j in (d - k..d).chain(0..d - k) {
        if middle.len() == k - 1 {
            break;
        }
        let mut v: Vec<Complex64> = (0..d).map(|i| if i == j { Complex64::one() } else { Complex64::zero() }).collect();
        for q in done.iter() {
            let c = hermitian(q, &v);
            for (vi, qi) in v.iter_mut().zip(q) {
                *vi -= c * qi;
            }
        }
        let n = norm(&v);
        if n > 1e-8 {
            let v: Vec<Complex64> = v.iter().map(|x| x / n).collect();
            done.push(v.clone());
            middle.push(v);
        }
    }
    cols.extend(middle);
    cols.push(transversal.to_vec());
    let mut b = DMatrix::from_fn(d, d, |i, j| cols[j][i]);
    if k >= 2 {
        let det = b.determinant();
        let phase = det.conj() / det.norm();
        let j = d - k;
        for i in 0..d {
            b[(i, j)] *= phase;
        }
    }
    b
}

fn rows(m: &DMatrix<Complex64>) -> ComplexRows {
    (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect()
}

/// Rank over `ℚ(i)` by Gaussian elimination.
fn exact_rank(mut m: Vec<Vec<Q>>) -> usize {
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        let inv = m[rank][c].inv().expect("nonzero pivot");
        for r in rank + 1..m.len() {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] * &inv;
            for j in c..ncols {
                let delta = &f * &m[rank][j];
                m[r][j] -= &delta;
            }
        }
        rank += 1;
    }
    rank
}

/// Local analysis at a singular point `u*` of a face satisfying the
/// modified simple condition, using the adapted transform `t`.
pub fn nongeneric_analysis(
    h: &LaurentPolynomial,
    face: &FaceDescriptor,
    t: &MonomialTransform,
    point: &TorusPoint,
    rank_tol: f64,
) -> Result<PointAnalysis> {
    let d = t.dim();
    let k = t.codim;
    let transformed = transform_polynomial(h, t)?;
    let hbar = transformed.polynomial.clone();
    let (z, mut caveats) = limit_point(face, t, point)?;
    caveats.extend(t.caveats.iter().cloned());
    let z_approx = z.approx();

    let grad_polys = hbar.gradient();
    let mut gradient = Vec::with_capacity(d);
    let mut gradient_exact = Vec::with_capacity(d);
    for p in &grad_polys {
        let (a, e) = z.eval(p)?;
        gradient.push(a);
        gradient_exact.push(e);
    }
    let log_gradient: Vec<Complex64> = gradient.iter().zip(&z_approx).map(|(g, zi)| g * zi).collect();
    let grad_norm = norm(&gradient);
    let done = |directions: DirectionSet, caveats: Vec<String>| PointAnalysis {
        point: point.clone(),
        model: None,
        directions,
        heighted: Heightedness::Undetermined,
        caveats,
    };
    if norm(&log_gradient) > 1e-8 * grad_norm.max(1.0) {
        caveats.push("log-gradient does not vanish at the limit point".into());
        let mut r = done(DirectionSet::Single { direction: t.pullback_direction(&log_gradient) }, caveats);
        r.heighted = Heightedness::CurveDependent;
        return Ok(r);
    }
    if grad_norm <= 1e-12 {
        return Ok(done(
            DirectionSet::Undetermined { reason: "the transformed hypersurface is singular at the limit point".into() },
            caveats,
        ));
    }

    // tangent space of V(H̄) at Z is the bilinear complement of ∇H̄, i.e. the
    // Hermitian complement of its conjugate
    let transversal: Vec<Complex64> = gradient.iter().map(|g| g.conj() / grad_norm).collect();
    let b = unitary_frame(&transversal, k);

    let mut dm = DMatrix::<Complex64>::zeros(d, d);
    let mut d_exact: Option<Vec<Vec<Q>>> =
        gradient_exact.iter().all(Option::is_some).then(|| vec![vec![Q::zero(); d]; d]);
    for i in 0..d {
        for j in 0..d {
            let (second, second_exact) = z.eval(&grad_polys[i].partial(j))?;
            let delta = if i == j { gradient[i] } else { Complex64::zero() };
            dm[(i, j)] = delta + z_approx[i] * second;
            if let (Some(de), Some(s), Values::Exact(zv)) = (d_exact.as_mut(), second_exact, &z) {
                let mut v = &zv[i] * &s;
                if i == j {
                    v += gradient_exact[i].as_ref().expect("checked");
                }
                de[i][j] = v;
            } else {
                d_exact = None;
            }
        }
    }
    let tangent = b.columns(0, d - 1).into_owned();
    let jm = &dm * &tangent;

    let (rank, rank_is_exact) = match (&d_exact, gradient_exact.iter().cloned().collect::<Option<Vec<Q>>>()) {
        (Some(de), Some(ge)) => {
            // exact tangent basis: e_i - (g_i / g_p) e_p
            let p = ge.iter().position(|x| !x.is_zero()).expect("nonzero gradient");
            let inv = ge[p].inv().expect("nonzero");
            let kcols: Vec<Vec<Q>> = (0..d)
                .filter(|&i| i != p)
                .map(|i| {
                    let mut v = vec![Q::zero(); d];
                    v[i] = Q::one();
                    v[p] = -(&ge[i] * &inv);
                    v
                })
                .collect();
            let prod: Vec<Vec<Q>> = (0..d)
                .map(|i| kcols.iter().map(|kc| (0..d).fold(Q::zero(), |acc, l| &acc + &(&de[i][l] * &kc[l]))).collect())
                .collect();
            (exact_rank(prod), true)
        }
        _ => (numerical_rank(&jm, rank_tol), false),
    };

    let scale = jm.iter().map(|x| x.norm()).fold(0.0, f64::max).max(1.0);
    let zero_block = (d - k..d).all(|i| (0..d - k).all(|j| jm[(i, j)].norm() <= 1e-10 * scale));
    let heighted = if k == 1 { Heightedness::AllHeighted } else { Heightedness::CurveDependent };

    let (directions, contains_face_span, heighted) = if rank == d - 1 {
        let cols: Vec<Vec<Complex64>> = (0..d - 1).map(|j| jm.column(j).iter().copied().collect()).collect();
        let pulled: Vec<Vec<Complex64>> = cols.iter().map(|c| t.pullback_direction(c)).collect();
        let basis = canonical_subspace_basis(&pulled, d);
        let contains = face.span_basis.iter().all(|bv| {
            let v: Vec<Complex64> = bv.iter().map(|&x| Complex64::new(x as f64, 0.0)).collect();
            distance_to_subspace(&v, &basis) <= 1e-8
        });
        (DirectionSet::Subspace { basis, codim: 1 }, Some(contains), heighted)
    } else {
        caveats.push(format!("rank of J is {rank} < {}: higher-order terms decide the directions", d - 1));
        (
            DirectionSet::Undetermined { reason: format!("degenerate Jacobian (rank {rank})") },
            None,
            Heightedness::Undetermined,
        )
    };

    let model = LocalModel {
        transform: t.clone(),
        transformed: hbar.to_string(),
        warnings: transformed.warnings,
        z: z_approx,
        z_exact: match z {
            Values::Exact(v) => Some(v),
            Values::Numeric(_) => None,
        },
        log_gradient,
        gradient,
        b: rows(&b),
        d: rows(&dm),
        jacobian: rows(&jm),
        rank,
        rank_is_exact,
        zero_block,
        contains_face_span,
        hbar,
    };
    Ok(PointAnalysis { point: point.clone(), model: Some(model), directions, heighted, caveats })
}

/// Central differences of `W ↦ ∇_log H̄(Z + B'W + G(W)·b_d)` at `W = 0`,
/// where `G` keeps the point on `V(H̄)` (solved by Newton along the last
/// column of `B`). Approximates `J` column by column.
pub fn finite_difference_jacobian(model: &LocalModel, step: f64) -> Result<ComplexRows> {
    let d = model.z.len();
    let frame = model.tangent_frame();
    let transversal = model.transversal();
    let log_grad = model.hbar.log_gradient();
    let grad = model.hbar.gradient();
    let on_variety = |w: &[Complex64]| -> Result<Vec<Complex64>> {
        let mut x = w.to_vec();
        for _ in 0..50 {
            let f = model.hbar.evaluate_slice(&x)?;
            let df: Complex64 = grad
                .iter()
                .zip(&transversal)
                .map(|(g, t)| g.evaluate_slice(&x).map(|v| v * t))
                .sum::<Result<Complex64>>()?;
            if df.norm() == 0.0 {
                break;
            }
            let s = f / df;
            for (xi, ti) in x.iter_mut().zip(&transversal) {
                *xi -= s * ti;
            }
            if s.norm() < 1e-17 {
                break;
            }
        }
        log_grad.iter().map(|p| p.evaluate_slice(&x)).collect()
    };
    let mut out = vec![vec![Complex64::zero(); d - 1]; d];
    for (j, col) in frame.iter().enumerate() {
        let plus: Vec<Complex64> = model.z.iter().zip(col).map(|(z, c)| z + c * step).collect();
        let minus: Vec<Complex64> = model.z.iter().zip(col).map(|(z, c)| z - c * step).collect();
        let (fp, fm) = (on_variety(&plus)?, on_variety(&minus)?);
        for i in 0..d {
            out[i][j] = (fp[i] - fm[i]) / (2.0 * step);
        }
    }
    Ok(out)
}
