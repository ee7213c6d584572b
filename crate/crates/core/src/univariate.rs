//! Dense univariate polynomials over the Gaussian rationals, plus the
//! bivariate elimination used to solve two-variable face systems.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::gaussian::GaussianRational;

type Q = GaussianRational;

/// `Σ c_k u^k`, coefficients stored from the constant term upwards with no
/// trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Q>,
}

impl UniPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Q) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The indeterminate `u`.
    pub fn x() -> Self {
        Self::from_coeffs(vec![Q::zero(), Q::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Q::from_integer(c)).collect())
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn coeff(&self, k: usize) -> Q {
        self.coeffs.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|k| &self.coeff(k) + &other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|k| &self.coeff(k) - &other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Self::from_coeffs(out)
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * &Q::from_integer(k as i64)).collect())
    }

    /// `u · p'(u)`.
    pub fn log_derivative(&self) -> Self {
        Self::from_coeffs(self.coeffs.iter().enumerate().map(|(k, c)| c * &Q::from_integer(k as i64)).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.leading().inv().expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Q::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1;
            let c = &rem[k] * &lead_inv;
            if !c.is_zero() {
                for (j, b) in divisor.coeffs.iter().enumerate() {
                    let t = &c * b;
                    rem[k - dd + j] -= &t;
                }
                quot[k - dd] = c;
            }
            rem.pop();
        }
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    /// Exact quotient, `None` if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.divrem(divisor);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        match self.leading().inv() {
            Some(inv) => self.scale(&inv),
            None => Self::zero(),
        }
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Product of the distinct irreducible factors.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).expect("gcd divides").monic()
    }

    /// Removes the factor `u^k` so the constant term is nonzero.
    pub fn strip_zero_roots(&self) -> Self {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        Self::from_coeffs(self.coeffs[k..].to_vec())
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs.iter().rev().fold(Q::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::zero(), |acc, c| acc * x + c.to_complex())
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.coeffs.iter().map(Q::to_complex).collect()
    }

    /// All roots with multiplicity removed: exact where they are Gaussian
    /// rationals that can be recognised, numeric (polished) otherwise.
    pub fn distinct_roots(&self) -> Vec<Root> {
        let sf = self.squarefree_part();
        match sf.degree() {
            None | Some(0) => Vec::new(),
            Some(1) => {
                let r = -&(&sf.coeff(0) / &sf.coeff(1));
                vec![Root::exact(r)]
            }
            Some(_) => {
                let approx = complex_roots(&sf.to_complex());
                approx
                    .into_iter()
                    .map(|z| match recognise_root(&sf, z) {
                        Some(exact) => Root::exact(exact),
                        None => Root { approx: polish(&sf, z), exact: None },
                    })
                    .collect()
            }
        }
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => c.to_string(),
                1 => format!("{c}*u"),
                _ => format!("{c}*u^{k}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A root with a numeric value and, when known, its exact value.
#[derive(Clone, Debug, PartialEq)]
pub struct Root {
    pub approx: Complex64,
    pub exact: Option<Q>,
}

impl Root {
    pub fn exact(q: Q) -> Self {
        Self { approx: q.to_complex(), exact: Some(q) }
    }
}

/// Newton refinement on `p` (used after Aberth; converges quadratically for
/// simple roots).
fn polish(p: &UniPoly, mut z: Complex64) -> Complex64 {
    let dp = p.derivative();
    for _ in 0..8 {
        let d = dp.eval_complex(z);
        if d.norm() == 0.0 {
            break;
        }
        let step = p.eval_complex(z) / d;
        z -= step;
        if step.norm() <= 1e-16 * z.norm().max(1.0) {
            break;
        }
    }
    z
}

/// Tries small-denominator rationalisations of a numeric root and keeps
/// one that is an exact root.
fn recognise_root(p: &UniPoly, z: Complex64) -> Option<Q> {
    let re = rationalise(z.re)?;
    let im = rationalise(z.im)?;
    let q = Q::new(re, im);
    p.eval(&q).is_zero().then_some(q)
}

fn rationalise(x: f64) -> Option<BigRational> {
    const MAX_DEN: i64 = 1000;
    if !x.is_finite() || x.abs() > 1e9 {
        return None;
    }
    // continued-fraction convergents
    let (mut h0, mut h1, mut k0, mut k1) = (0i64, 1i64, 1i64, 0i64);
    let mut v = x;
    for _ in 0..40 {
        let a = v.floor();
        let ai = a as i64;
        let h2 = ai.checked_mul(h1)?.checked_add(h0)?;
        let k2 = ai.checked_mul(k1)?.checked_add(k0)?;
        if k2 > MAX_DEN {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        if (x - h1 as f64 / k1 as f64).abs() < 1e-9 {
            return Some(BigRational::new(BigInt::from(h1), BigInt::from(k1)));
        }
        let frac = v - a;
        if frac.abs() < 1e-12 {
            break;
        }
        v = 1.0 / frac;
    }
    (k1 != 0 && (x - h1 as f64 / k1 as f64).abs() < 1e-9).then(|| BigRational::new(BigInt::from(h1), BigInt::from(k1)))
}

/// Simultaneous root finding (Aberth–Ehrlich) for a polynomial with complex
/// coefficients given from the constant term upwards.
pub fn complex_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut c = coeffs.to_vec();
    while c.last().is_some_and(|z| z.norm() == 0.0) {
        c.pop();
    }
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    let lead = c[n];
    let monic: Vec<Complex64> = c.iter().map(|z| z / lead).collect();
    // Cauchy bound on the root moduli
    let radius = 1.0 + monic[..n].iter().map(|z| z.norm()).fold(0.0, f64::max);
    let eval = |z: Complex64| {
        let mut p = Complex64::zero();
        let mut dp = Complex64::zero();
        for a in monic.iter().rev() {
            dp = dp * z + p;
            p = p * z + a;
        }
        (p, dp)
    };
    let mut roots: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius * 0.5, 0.4 + std::f64::consts::TAU * k as f64 / n as f64))
        .collect();
    for _ in 0..500 {
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let (p, dp) = eval(roots[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n).filter(|&j| j != k).map(|j| Complex64::one() / (roots[k] - roots[j])).sum();
            let step = ratio / (Complex64::one() - ratio * s);
            if step.is_finite() {
                roots[k] -= step;
                max_step = max_step.max(step.norm() / roots[k].norm().max(1.0));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    roots
}

/// Polynomial in two variables `(u, v)`, stored as a polynomial in `v`
/// whose coefficients are polynomials in `u`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BiPoly {
    by_v: Vec<UniPoly>,
}

impl BiPoly {
    /// Builds from `(deg_u, deg_v, coefficient)` triples.
    pub fn from_terms(terms: impl IntoIterator<Item = (usize, usize, Q)>) -> Self {
        let mut grid: Vec<Vec<Q>> = Vec::new();
        for (a, b, c) in terms {
            if grid.len() <= b {
                grid.resize(b + 1, Vec::new());
            }
            if grid[b].len() <= a {
                grid[b].resize(a + 1, Q::zero());
            }
            grid[b][a] += &c;
        }
        let mut by_v: Vec<UniPoly> = grid.into_iter().map(UniPoly::from_coeffs).collect();
        while by_v.last().is_some_and(UniPoly::is_zero) {
            by_v.pop();
        }
        Self { by_v }
    }

    pub fn is_zero(&self) -> bool {
        self.by_v.is_empty()
    }

    pub fn degree_v(&self) -> Option<usize> {
        self.by_v.len().checked_sub(1)
    }

    /// Swaps the roles of `u` and `v`.
    pub fn swap(&self) -> Self {
        Self::from_terms(self.terms().map(|(a, b, c)| (b, a, c)))
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, Q)> + '_ {
        self.by_v.iter().enumerate().flat_map(|(b, p)| {
            p.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(a, c)| (a, b, c.clone()))
        })
    }

    pub fn partial_u(&self) -> Self {
        Self::from_terms(
            self.terms().filter(|(a, _, _)| *a > 0).map(|(a, b, c)| (a - 1, b, &c * &Q::from_integer(a as i64))),
        )
    }

    pub fn partial_v(&self) -> Self {
        Self::from_terms(
            self.terms().filter(|(_, b, _)| *b > 0).map(|(a, b, c)| (a, b - 1, &c * &Q::from_integer(b as i64))),
        )
    }

    pub fn eval(&self, u: &Q, v: &Q) -> Q {
        self.at_u(u).eval(v)
    }

    /// Substitutes an exact `u`, leaving a polynomial in `v`.
    pub fn at_u(&self, u: &Q) -> UniPoly {
        UniPoly::from_coeffs(self.by_v.iter().map(|p| p.eval(u)).collect())
    }

    /// Substitutes a numeric `u`, leaving complex coefficients in `v`.
    pub fn at_u_complex(&self, u: Complex64) -> Vec<Complex64> {
        self.by_v.iter().map(|p| p.eval_complex(u)).collect()
    }

    pub fn eval_complex(&self, u: Complex64, v: Complex64) -> Complex64 {
        self.at_u_complex(u).iter().rev().fold(Complex64::zero(), |acc, c| acc * v + c)
    }

    /// Resultant with respect to `v`, a polynomial in `u`.
    pub fn resultant_v(&self, other: &Self) -> UniPoly {
        let (Some(m), Some(n)) = (self.degree_v(), other.degree_v()) else {
            return UniPoly::zero();
        };
        if m == 0 && n == 0 {
            return UniPoly::constant(Q::one());
        }
        if m == 0 {
            return pow(&self.by_v[0], n);
        }
        if n == 0 {
            return pow(&other.by_v[0], m);
        }
        let size = m + n;
        let mut sylvester = vec![vec![UniPoly::zero(); size]; size];
        for r in 0..n {
            for (k, c) in self.by_v.iter().rev().enumerate() {
                sylvester[r][r + k] = c.clone();
            }
        }
        for r in 0..m {
            for (k, c) in other.by_v.iter().rev().enumerate() {
                sylvester[n + r][r + k] = c.clone();
            }
        }
        bareiss_det(sylvester)
    }
}

fn pow(p: &UniPoly, k: usize) -> UniPoly {
    (0..k).fold(UniPoly::constant(Q::one()), |acc, _| acc.mul(p))
}

/// Fraction-free determinant over `ℚ(i)[u]`.
fn bareiss_det(mut a: Vec<Vec<UniPoly>>) -> UniPoly {
    let n = a.len();
    let mut sign = Q::one();
    let mut prev = UniPoly::constant(Q::one());
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return UniPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = UniPoly::zero();
        }
        prev = a[k][k].clone();
    }
    a[n - 1][n - 1].scale(&sign)
}
