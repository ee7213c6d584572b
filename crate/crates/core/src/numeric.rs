//! Floating-point helpers on complex projective space and subspaces.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Zero;

/// Default relative threshold for numerical rank decisions.
pub const RANK_TOL: f64 = 1e-8;

/// Divides by the coordinate of largest modulus (first one on ties), so the
/// representative has max-modulus 1. `None` for the zero vector.
pub fn normalize_projective(v: &[Complex64]) -> Option<Vec<Complex64>> {
    let mut best = 0;
    let mut best_norm = 0.0;
    for (i, z) in v.iter().enumerate() {
        let n = z.norm();
        if n > best_norm {
            best = i;
            best_norm = n;
        }
    }
    if best_norm == 0.0 || !best_norm.is_finite() {
        return None;
    }
    let pivot = v[best];
    Some(v.iter().map(|z| z / pivot).collect())
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Chordal (Fubini–Study sine) distance between two projective points,
/// `sqrt(1 - |<a,b>|² / (|a|²|b|²))`, in `[0, 1]`.
///
/// Evaluated as the norm of the component of `b̂` orthogonal to `â`, which
/// keeps full relative accuracy for nearby points.
pub fn chordal_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    let (na, nb) = (norm(a), norm(b));
    if na == 0.0 || nb == 0.0 {
        return 1.0;
    }
    let ah: Vec<Complex64> = a.iter().map(|z| z / na).collect();
    let bh: Vec<Complex64> = b.iter().map(|z| z / nb).collect();
    let c = inner(&ah, &bh);
    let r: Vec<Complex64> = bh.iter().zip(&ah).map(|(y, x)| y - c * x).collect();
    norm(&r).min(1.0)
}

pub fn real_vector(v: &[f64]) -> Vec<Complex64> {
    v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
}

fn to_matrix(columns: &[Vec<Complex64>], rows: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(rows, columns.len(), |i, j| columns[j][i])
}

/// Singular values in decreasing order.
pub fn singular_values(m: &DMatrix<Complex64>) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Number of singular values above `rel_tol · σ_max`.
pub fn numerical_rank(m: &DMatrix<Complex64>, rel_tol: f64) -> usize {
    let s = singular_values(m);
    match s.first() {
        Some(&top) if top > 0.0 => s.iter().filter(|&&x| x > rel_tol * top).count(),
        _ => 0,
    }
}

/// Orthonormal basis of the span of `columns` (vectors of length `dim`).
pub fn orthonormal_basis(columns: &[Vec<Complex64>], dim: usize, rel_tol: f64) -> Vec<Vec<Complex64>> {
    if columns.is_empty() {
        return Vec::new();
    }
    let m = to_matrix(columns, dim);
    let svd = m.svd(true, false);
    let u = svd.u.expect("requested U");
    let top = svd.singular_values.iter().copied().fold(0.0, f64::max);
    if top == 0.0 {
        return Vec::new();
    }
    svd.singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s > rel_tol * top)
        .map(|(j, _)| u.column(j).iter().copied().collect())
        .collect()
}

fn projector(basis: &[Vec<Complex64>], dim: usize) -> DMatrix<Complex64> {
    let q = to_matrix(basis, dim);
    if basis.is_empty() {
        return DMatrix::zeros(dim, dim);
    }
    &q * q.adjoint()
}

/// Spectral norm of the difference of orthogonal projectors onto the two
/// spans: the sine of the largest principal angle, `1` for unequal
/// dimensions.
pub fn subspace_distance(a: &[Vec<Complex64>], b: &[Vec<Complex64>], dim: usize) -> f64 {
    let qa = orthonormal_basis(a, dim, RANK_TOL);
    let qb = orthonormal_basis(b, dim, RANK_TOL);
    if qa.len() != qb.len() {
        return 1.0;
    }
    let diff = projector(&qa, dim) - projector(&qb, dim);
    singular_values(&diff).first().copied().unwrap_or(0.0)
}

/// Sine of the angle between a vector and a subspace.
pub fn distance_to_subspace(v: &[Complex64], basis: &[Vec<Complex64>]) -> f64 {
    let nv = norm(v);
    if nv == 0.0 {
        return 0.0;
    }
    let q = orthonormal_basis(basis, v.len(), RANK_TOL);
    let mut r = v.to_vec();
    for b in &q {
        let c = inner(b, v);
        for (ri, bi) in r.iter_mut().zip(b) {
            *ri -= c * bi;
        }
    }
    norm(&r) / nv
}

/// Reduced row-echelon basis of a span, with entries below `1e-12` snapped
/// to zero; gives a readable deterministic representative of a subspace.
pub fn canonical_subspace_basis(columns: &[Vec<Complex64>], dim: usize) -> Vec<Vec<Complex64>> {
    let q = orthonormal_basis(columns, dim, RANK_TOL);
    let mut rows = q;
    let mut lead = 0;
    let r = rows.len();
    for row in 0..r {
        // pick the largest pivot in the remaining columns
        let mut found = None;
        while lead < dim {
            let (best, mag) =
                (row..r)
                    .map(|i| (i, rows[i][lead].norm()))
                    .fold((row, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if mag > 1e-10 {
                found = Some(best);
                break;
            }
            lead += 1;
        }
        let Some(p) = found else { break };
        rows.swap(row, p);
        let piv = rows[row][lead];
        for v in rows[row].iter_mut() {
            *v /= piv;
        }
        for i in 0..r {
            if i != row {
                let f = rows[i][lead];
                if f.norm() > 0.0 {
                    let pivot_row = rows[row].clone();
                    for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                        *x -= f * y;
                    }
                }
            }
        }
        lead += 1;
    }
    for row in rows.iter_mut() {
        for z in row.iter_mut() {
            let re = if z.re.abs() < 1e-12 { 0.0 } else { z.re };
            let im = if z.im.abs() < 1e-12 { 0.0 } else { z.im };
            *z = Complex64::new(re, im);
        }
    }
    rows.retain(|row| row.iter().any(|z| !z.is_zero()));
    rows
}

/// Largest coordinate-wise modulus difference, for tolerance checks on
/// vectors that are not projective.
pub fn max_abs_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Relative difference `|a - b| / max(|a|, |b|, floor)`.
pub fn relative_diff(a: &[Complex64], b: &[Complex64], floor: f64) -> f64 {
    let scale = norm(a).max(norm(b)).max(floor);
    let diff: Vec<Complex64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    norm(&diff) / scale
}
