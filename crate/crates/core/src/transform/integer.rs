//! Integer matrices and the lattice algorithms built on the Hermite normal form:
//! integer kernels, saturation of sublattices, exact integer solves and
//! unimodular completion.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self { rows: r, cols: c, data: rows.iter().flatten().copied().collect() }
    }

    /// Builds a `rows × cols.len()` matrix whose columns are `cols`.
    pub fn from_columns(rows: usize, cols: &[Vec<i64>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<i64> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let s: i128 = (0..self.cols).map(|k| self.get(i, k) as i128 * other.get(k, j) as i128).sum();
                out.set(i, j, narrow(s));
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows).map(|i| narrow((0..self.cols).map(|k| self.get(i, k) as i128 * v[k] as i128).sum())).collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> i64 {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| self.get(i, j) as i128).collect()).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&r| a[r][k] != 0) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        narrow(sign * a[n - 1][n - 1])
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.det().abs() == 1
    }

    pub fn rank(&self) -> usize {
        hermite_normal_form(self).rank
    }

    /// Exact inverse over ℚ; `None` when singular.
    pub fn inverse_rational(&self) -> Option<RationalMatrix> {
        RationalMatrix::from_int(self).inverse()
    }

    /// Inverse of a unimodular matrix, which is again integral.
    pub fn inverse_unimodular(&self) -> Option<IntMatrix> {
        if !self.is_unimodular() {
            return None;
        }
        self.inverse_rational()?.to_integer()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .to_rows()
            .iter()
            .map(|r| format!("[{}]", r.iter().map(i64::to_string).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

fn narrow(v: i128) -> i64 {
    i64::try_from(v).expect("integer matrix entry exceeds the i64 range")
}

/// Dense matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<BigRational>>,
}

impl RationalMatrix {
    pub fn from_int(m: &IntMatrix) -> Self {
        let data = (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| BigRational::from_integer(BigInt::from(m.get(i, j)))).collect())
            .collect();
        Self { rows: m.rows(), cols: m.cols(), data }
    }

    pub fn transpose(&self) -> Self {
        let data = (0..self.cols).map(|j| (0..self.rows).map(|i| self.data[i][j].clone()).collect()).collect();
        Self { rows: self.cols, cols: self.rows, data }
    }

    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut a = self.data.clone();
        let mut inv: Vec<Vec<BigRational>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
            .collect();
        for c in 0..n {
            let p = (c..n).find(|&r| !a[r][c].is_zero())?;
            a.swap(c, p);
            inv.swap(c, p);
            let piv = a[c][c].clone();
            for j in 0..n {
                a[c][j] = &a[c][j] / &piv;
                inv[c][j] = &inv[c][j] / &piv;
            }
            for r in 0..n {
                if r != c && !a[r][c].is_zero() {
                    let f = a[r][c].clone();
                    for j in 0..n {
                        let t = &f * &a[c][j];
                        a[r][j] -= t;
                        let t = &f * &inv[c][j];
                        inv[r][j] -= t;
                    }
                }
            }
        }
        Some(Self { rows: n, cols: n, data: inv })
    }

    pub fn to_integer(&self) -> Option<IntMatrix> {
        let mut m = IntMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = &self.data[i][j];
                if !v.is_integer() {
                    return None;
                }
                m.set(i, j, v.numer().to_i64()?);
            }
        }
        Some(m)
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        self.data.iter().map(|row| row.iter().zip(v).fold(BigRational::zero(), |acc, (a, b)| acc + a * b)).collect()
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        self.data.iter().map(|row| row.iter().map(crate::gaussian::rat_to_f64).collect()).collect()
    }
}

/// Column-style Hermite normal form `M·U = H`.
///
/// `H` is lower echelon: the first `rank` columns carry positive pivots at
/// strictly increasing rows, entries left of a pivot are reduced into
/// `[0, pivot)`, and the remaining columns are zero. `U` is unimodular, so
/// its trailing `cols - rank` columns are a basis of the integer kernel.
#[derive(Clone, Debug)]
pub struct HermiteForm {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub rank: usize,
    /// Row index of the pivot in each of the first `rank` columns.
    pub pivot_rows: Vec<usize>,
}

pub fn hermite_normal_form(m: &IntMatrix) -> HermiteForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut h: Vec<Vec<i128>> = (0..rows).map(|i| (0..cols).map(|j| m.get(i, j) as i128).collect()).collect();
    let mut u: Vec<Vec<i128>> = (0..cols).map(|i| (0..cols).map(|j| i128::from(i == j)).collect()).collect();

    // column operation helpers on both H and U
    fn combine(mats: [&mut Vec<Vec<i128>>; 2], c: usize, j: usize, (x, y, p, q): (i128, i128, i128, i128)) {
        // new col_c = x col_c + y col_j ; new col_j = p col_c + q col_j
        for mat in mats {
            for row in mat.iter_mut() {
                let (a, b) = (row[c], row[j]);
                row[c] = x * a + y * b;
                row[j] = p * a + q * b;
            }
        }
    }

    let mut pivot_rows = Vec::new();
    let mut c = 0;
    for i in 0..rows {
        if c == cols {
            break;
        }
        for j in c + 1..cols {
            if h[i][j] == 0 {
                continue;
            }
            let (a, b) = (h[i][c], h[i][j]);
            let e = a.extended_gcd(&b);
            let g = e.gcd;
            combine([&mut h, &mut u], c, j, (e.x, e.y, -b / g, a / g));
        }
        if h[i][c] == 0 {
            continue;
        }
        if h[i][c] < 0 {
            for mat in [&mut h, &mut u] {
                for row in mat.iter_mut() {
                    row[c] = -row[c];
                }
            }
        }
        let piv = h[i][c];
        for j in 0..c {
            let q = Integer::div_floor(&h[i][j], &piv);
            if q != 0 {
                for mat in [&mut h, &mut u] {
                    for row in mat.iter_mut() {
                        row[j] -= q * row[c];
                    }
                }
            }
        }
        pivot_rows.push(i);
        c += 1;
    }

    let to_mat = |v: &Vec<Vec<i128>>, r: usize, cc: usize| {
        let mut out = IntMatrix::zeros(r, cc);
        for (i, row) in v.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                out.set(i, j, narrow(x));
            }
        }
        out
    };
    HermiteForm { h: to_mat(&h, rows, cols), u: to_mat(&u, cols, cols), rank: c, pivot_rows }
}

/// Lattice basis (as vectors) of `{x ∈ ℤ^cols : M x = 0}`.
pub fn integer_kernel(m: &IntMatrix) -> Vec<Vec<i64>> {
    let hf = hermite_normal_form(m);
    (hf.rank..m.cols()).map(|j| hf.u.column(j)).collect()
}

/// Canonical lattice basis of `span_ℚ(vectors) ∩ ℤ^d`.
///
/// The basis is returned in column-HNF order, so it is unique for a given
/// saturated lattice; an empty list means the zero lattice.
pub fn saturated_basis(vectors: &[Vec<i64>], d: usize) -> Vec<Vec<i64>> {
    let nonzero: Vec<Vec<i64>> = vectors.iter().filter(|v| v.iter().any(|&x| x != 0)).cloned().collect();
    if nonzero.is_empty() {
        return Vec::new();
    }
    let a = IntMatrix::from_rows(&nonzero);
    let kernel = integer_kernel(&a);
    let basis = if kernel.is_empty() {
        (0..d).map(|i| unit(d, i)).collect()
    } else {
        let k_t = IntMatrix::from_rows(&kernel);
        integer_kernel(&k_t)
    };
    canonical_basis(&basis, d)
}

/// Canonical basis (column HNF) of the lattice generated by `vectors`.
pub fn canonical_basis(vectors: &[Vec<i64>], d: usize) -> Vec<Vec<i64>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = IntMatrix::from_columns(d, vectors);
    let hf = hermite_normal_form(&m);
    (0..hf.rank).map(|j| hf.h.column(j)).collect()
}

pub fn unit(d: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; d];
    v[i] = 1;
    v
}

/// Integer solution of `A x = b`, if one exists.
pub fn solve_integer(a: &IntMatrix, b: &[i64]) -> Option<Vec<i64>> {
    assert_eq!(a.rows(), b.len(), "dimension mismatch");
    let hf = hermite_normal_form(a);
    let mut y = vec![0i128; hf.rank];
    for c in 0..hf.rank {
        let r = hf.pivot_rows[c];
        let mut rhs = b[r] as i128;
        for (j, yj) in y.iter().enumerate().take(c) {
            rhs -= hf.h.get(r, j) as i128 * yj;
        }
        let piv = hf.h.get(r, c) as i128;
        if rhs % piv != 0 {
            return None;
        }
        y[c] = rhs / piv;
    }
    // rows without a pivot must be satisfied as well
    for (r, &br) in b.iter().enumerate() {
        let lhs: i128 = (0..hf.rank).map(|j| hf.h.get(r, j) as i128 * y[j]).sum();
        if lhs != br as i128 {
            return None;
        }
    }
    let x = (0..a.cols()).map(|i| narrow((0..hf.rank).map(|j| hf.u.get(i, j) as i128 * y[j]).sum())).collect();
    Some(x)
}

/// Rational solution of `A x = b` for `A` with full column rank.
pub fn solve_rational(a: &IntMatrix, b: &[BigRational]) -> Option<Vec<BigRational>> {
    let (rows, cols) = (a.rows(), a.cols());
    let mut m: Vec<Vec<BigRational>> = (0..rows)
        .map(|i| {
            let mut row: Vec<BigRational> =
                (0..cols).map(|j| BigRational::from_integer(BigInt::from(a.get(i, j)))).collect();
            row.push(b[i].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let piv = m[r][c].clone();
        for v in m[r].iter_mut() {
            *v /= &piv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..=cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if pivots.len() != cols {
        return None;
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    Some((0..cols).map(|i| m[i][cols].clone()).collect())
}

/// Index of the lattice spanned by independent `cols` inside its saturation:
/// the gcd of the maximal minors.
pub fn saturation_index(cols: &[Vec<i64>], d: usize) -> Result<u64> {
    let c_t = IntMatrix::from_rows(cols);
    let hf = hermite_normal_form(&c_t);
    if hf.rank != cols.len() {
        return Err(Error::DependentColumns);
    }
    let _ = d;
    Ok((0..hf.rank).map(|c| hf.h.get(hf.pivot_rows[c], c).unsigned_abs()).product())
}

/// Outcome of extending `k` columns to a unimodular `d × d` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Completion {
    /// The columns occupy the last `k` positions of this matrix.
    Unimodular(IntMatrix),
    /// The columns span a proper sublattice of their saturation.
    Infeasible { index: u64 },
}

/// Extends linearly independent columns to a unimodular matrix whose last
/// `k` columns are the given ones.
///
/// Standard basis vectors are tried first for the leading columns (in index
/// order), so an already-aligned configuration completes to a permutation of
/// the identity; otherwise the completion is read off the HNF transform.
pub fn unimodular_completion(cols: &[Vec<i64>], d: usize) -> Result<Completion> {
    let k = cols.len();
    if cols.iter().any(|c| c.len() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: cols.iter().map(Vec::len).find(|&l| l != d).unwrap_or(0),
        });
    }
    if k > d {
        return Err(Error::DependentColumns);
    }
    if k == 0 {
        return Ok(Completion::Unimodular(IntMatrix::identity(d)));
    }
    let index = saturation_index(cols, d)?;
    if index != 1 {
        return Ok(Completion::Infeasible { index });
    }
    for lead in combinations(d, d - k) {
        let mut all: Vec<Vec<i64>> = lead.iter().map(|&i| unit(d, i)).collect();
        all.extend(cols.iter().cloned());
        let m = IntMatrix::from_columns(d, &all);
        if m.det().abs() == 1 {
            return Ok(Completion::Unimodular(m));
        }
    }
    // C^T W = [I_k | 0]; then U = W^{-T} P^T has C as its last k columns.
    let c_t = IntMatrix::from_rows(cols);
    let hf = hermite_normal_form(&c_t);
    let w_inv = hf.u.inverse_unimodular().expect("HNF transform is unimodular");
    let w_inv_t = w_inv.transpose();
    let mut u = IntMatrix::zeros(d, d);
    for j in 0..d {
        // column j of U is column perm(j) of W^{-T}: leading d-k columns come from
        // the kernel part, trailing k from the pivot part
        let src = if j < d - k { k + j } else { j - (d - k) };
        for i in 0..d {
            u.set(i, j, w_inv_t.get(i, src));
        }
    }
    debug_assert!((0..k).all(|j| u.column(d - k + j) == cols[j]));
    Ok(Completion::Unimodular(u))
}

/// All `r`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < r - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if r <= n {
        rec(0, n, r, &mut Vec::new(), &mut out);
    }
    out
}

pub fn gcd_vec(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

/// Divides out the content so the entries have gcd 1.
pub fn primitive(v: &[i64]) -> Vec<i64> {
    let g = gcd_vec(v);
    if g == 0 {
        return v.to_vec();
    }
    v.iter().map(|x| x / g).collect()
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    narrow(a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_hnf(m: &IntMatrix) -> HermiteForm {
        let hf = hermite_normal_form(m);
        assert_eq!(m.mul(&hf.u), hf.h, "M U = H");
        assert_eq!(hf.u.det().abs(), 1, "U unimodular");
        hf
    }

    #[test]
    fn identity_hnf() {
        let hf = check_hnf(&IntMatrix::identity(3));
        assert_eq!(hf.h, IntMatrix::identity(3));
        assert_eq!(hf.u, IntMatrix::identity(3));
    }

    #[test]
    fn two_by_two_hnf() {
        let m = IntMatrix::from_rows(&[vec![2, 4], vec![1, 3]]);
        let hf = check_hnf(&m);
        assert_eq!(hf.h.det().abs(), 2);
        // lower triangular, reduced
        assert_eq!(hf.h.get(0, 1), 0);
        assert!(hf.h.get(1, 0) >= 0 && hf.h.get(1, 0) < hf.h.get(1, 1));
    }

    #[test]
    fn single_row_pivot_is_gcd() {
        let hf = check_hnf(&IntMatrix::from_rows(&[vec![6, 10]]));
        assert_eq!(hf.h.row(0), vec![2, 0]);
        assert_eq!(hf.rank, 1);
    }

    #[test]
    fn kernel_and_saturation() {
        // {x : 2x1 = 0} is spanned by e2, e3
        let k = integer_kernel(&IntMatrix::from_rows(&[vec![2, 0, 0]]));
        assert_eq!(k.len(), 2);
        let sat = saturated_basis(&[vec![2, 0, 0]], 3);
        assert_eq!(sat, vec![vec![1, 0, 0]]);
        let sat = saturated_basis(&[vec![2, 2], vec![4, 0]], 2);
        assert_eq!(sat.len(), 2);
        assert_eq!(IntMatrix::from_columns(2, &sat).det().abs(), 1);
        assert!(saturated_basis(&[vec![0, 0]], 2).is_empty());
    }

    #[test]
    fn integer_solve() {
        let a = IntMatrix::from_columns(2, &[vec![2, 0], vec![0, 3]]);
        assert_eq!(solve_integer(&a, &[4, 9]), Some(vec![2, 3]));
        assert_eq!(solve_integer(&a, &[1, 0]), None);
        let a = IntMatrix::from_columns(3, &[vec![1, 0, 0]]);
        assert_eq!(solve_integer(&a, &[5, 0, 0]), Some(vec![5]));
        assert_eq!(solve_integer(&a, &[5, 1, 0]), None);
    }

    #[test]
    fn completion_cases() {
        let c = unimodular_completion(&[vec![0, 0, 1]], 3).unwrap();
        assert_eq!(c, Completion::Unimodular(IntMatrix::identity(3)));
        let c = unimodular_completion(&[vec![0, 1, 0], vec![0, 0, 1]], 3).unwrap();
        assert_eq!(c, Completion::Unimodular(IntMatrix::identity(3)));
        assert_eq!(unimodular_completion(&[vec![2, 0]], 2).unwrap(), Completion::Infeasible { index: 2 });
        match unimodular_completion(&[vec![2, 1]], 2).unwrap() {
            Completion::Unimodular(m) => {
                assert_eq!(m.column(1), vec![2, 1]);
                assert_eq!(m.det().abs(), 1);
            }
            other => panic!("{other:?}"),
        }
        // needs the HNF route: no standard-basis completion exists
        let cols = vec![vec![2, 3, 5]];
        let Completion::Unimodular(m) = unimodular_completion(&cols, 3).unwrap() else { panic!() };
        assert_eq!(m.column(2), cols[0]);
        assert_eq!(m.det().abs(), 1);
        assert!(matches!(unimodular_completion(&[vec![1, 2], vec![2, 4]], 2), Err(Error::DependentColumns)));
    }

    #[test]
    fn hnf_route_for_two_columns() {
        let cols = vec![vec![1, 1, 1, 1], vec![0, 1, 2, 3]];
        let Completion::Unimodular(m) = unimodular_completion(&cols, 4).unwrap() else { panic!() };
        assert_eq!(m.column(2), cols[0]);
        assert_eq!(m.column(3), cols[1]);
        assert_eq!(m.det().abs(), 1);
    }

    #[test]
    fn rational_inverse() {
        let m = IntMatrix::from_rows(&[vec![1, 0, 0], vec![0, 1, 0], vec![-1, 0, -1]]);
        let inv = m.inverse_unimodular().unwrap();
        assert_eq!(m.mul(&inv), IntMatrix::identity(3));
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 1]]);
        assert!(m.inverse_unimodular().is_none());
        let r = m.inverse_rational().unwrap();
        assert_eq!(r.data[0][0], BigRational::new(1.into(), 2.into()));
    }

    #[test]
    fn bareiss_det() {
        let m = IntMatrix::from_rows(&[vec![0, 2, 1], vec![3, 1, 4], vec![1, 5, 9]]);
        // 0*(9-20) - 2*(27-4) + 1*(15-1) = -46 + 14 = -32
        assert_eq!(m.det(), -32);
    }
}
