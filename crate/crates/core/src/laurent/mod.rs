//! Laurent polynomials with exact Gaussian-rational coefficients.

mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gaussian::{Coefficient, GaussianRational};
use crate::transform::IntMatrix;

pub use parse::{infer_variables, parse};

/// Integer exponent vector; ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Exponent(pub Vec<i64>);

impl Exponent {
    pub fn zero(d: usize) -> Self {
        Self(vec![0; d])
    }

    pub fn unit(d: usize, i: usize) -> Self {
        let mut v = vec![0; d];
        v[i] = 1;
        Self(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    pub fn dot(&self, other: &[i64]) -> i64 {
        self.0.iter().zip(other).map(|(a, b)| a * b).sum()
    }

    pub fn add(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> Exponent {
        Exponent(self.0.iter().map(|a| a * k).collect())
    }
}

impl From<Vec<i64>> for Exponent {
    fn from(v: Vec<i64>) -> Self {
        Self(v)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A point of `ℂ^d` with finite coordinates.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ComplexPoint(pub Vec<Complex64>);

impl ComplexPoint {
    pub fn new(coords: Vec<Complex64>) -> Self {
        Self(coords)
    }

    pub fn real(coords: &[f64]) -> Self {
        Self(coords.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.0
    }

    /// All coordinates nonzero.
    pub fn is_torus_point(&self) -> bool {
        self.0.iter().all(|c| *c != Complex64::zero())
    }
}

/// `Σ c_m z^m` over finitely many exponents `m ∈ ℤ^d`.
///
/// Terms are kept in a lexicographically ordered map and zero coefficients
/// are never stored, so structural equality is mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    dim: usize,
    terms: BTreeMap<Exponent, Coefficient>,
}

impl LaurentPolynomial {
    pub fn zero(dim: usize) -> Self {
        Self { dim, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: Coefficient) -> Self {
        Self::monomial(Exponent::zero(dim), c)
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, Coefficient::one())
    }

    pub fn monomial(m: Exponent, c: Coefficient) -> Self {
        let dim = m.dim();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { dim, terms }
    }

    /// The `i`-th coordinate function `z_i`.
    pub fn variable(dim: usize, i: usize) -> Self {
        Self::monomial(Exponent::unit(dim, i), Coefficient::one())
    }

    /// Collects terms, summing duplicates and dropping zeros.
    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Exponent, Coefficient)>) -> Self {
        let mut p = Self::zero(dim);
        for (m, c) in terms {
            assert_eq!(m.dim(), dim, "exponent dimension mismatch");
            p.add_term(m, &c);
        }
        p
    }

    fn add_term(&mut self, m: Exponent, c: &Coefficient) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Coefficient)> + '_ {
        self.terms.iter()
    }

    pub fn exponents(&self) -> impl Iterator<Item = &Exponent> + '_ {
        self.terms.keys()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Exponent) -> Coefficient {
        self.terms.get(m).cloned().unwrap_or_else(Coefficient::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Zero or a nonzero constant.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Exponent::is_zero)
    }

    pub fn has_negative_exponents(&self) -> bool {
        self.terms.keys().any(|m| !m.is_nonnegative())
    }

    /// The single term of a monomial, if this is one.
    pub fn as_monomial(&self) -> Option<(&Exponent, &Coefficient)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        Self { dim: self.dim, terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    /// `c · z^m · H`.
    pub fn mul_monomial(&self, m: &Exponent, c: &Coefficient) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::ZeroCoefficient);
        }
        self.check_dim(m.dim())?;
        Ok(Self { dim: self.dim, terms: self.terms.iter().map(|(e, a)| (e.add(m), a * c)).collect() })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.dim);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse of a monomial.
    pub fn monomial_inverse(&self) -> Option<Self> {
        let (m, c) = self.as_monomial()?;
        Some(Self::monomial(m.scale(-1), c.inv()?))
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if found != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found });
        }
        Ok(())
    }

    /// `∂H/∂z_i`.
    pub fn partial(&self, i: usize) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.0[i] != 0).map(|(m, c)| {
            let mut e = m.clone();
            e.0[i] -= 1;
            (e, c * &Coefficient::from_integer(m.0[i]))
        });
        Self::from_terms(self.dim, terms)
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.dim).map(|i| self.partial(i)).collect()
    }

    /// `(z_1 ∂H/∂z_1, …, z_d ∂H/∂z_d)`: the coefficient of `z^m` in component
    /// `i` is `m_i c_m`.
    pub fn log_gradient(&self) -> Vec<Self> {
        (0..self.dim)
            .map(|i| {
                Self::from_terms(
                    self.dim,
                    self.terms.iter().map(|(m, c)| (m.clone(), c * &Coefficient::from_integer(m.0[i]))),
                )
            })
            .collect()
    }

    pub fn evaluate(&self, z: &ComplexPoint) -> Result<Complex64> {
        self.evaluate_slice(z.coords())
    }

    pub fn evaluate_slice(&self, z: &[Complex64]) -> Result<Complex64> {
        self.check_dim(z.len())?;
        let mut acc = Complex64::zero();
        for (m, c) in &self.terms {
            acc += c.to_complex() * monomial_value(m, z)?;
        }
        Ok(acc)
    }

    pub fn evaluate_exact(&self, z: &[GaussianRational]) -> Result<GaussianRational> {
        self.check_dim(z.len())?;
        let mut acc = GaussianRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, (&e, zi)) in m.0.iter().zip(z).enumerate() {
                if e != 0 {
                    let p = zi.powi(e).ok_or(Error::ZeroToNegativePower { index: i })?;
                    t = &t * &p;
                }
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// `τ_N^* H`: each exponent `m` becomes `N^T m`.
    pub fn substitute_monomial_map(&self, n: &IntMatrix) -> Result<Self> {
        if n.rows() != self.dim || n.cols() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: n.rows() });
        }
        if n.det() == 0 {
            return Err(Error::SingularMatrix);
        }
        let nt = n.transpose();
        Ok(self.map_exponents(self.dim, |m| Exponent(nt.mul_vec(&m.0))))
    }

    /// Re-collects terms after an arbitrary exponent map into dimension `dim`.
    pub fn map_exponents(&self, dim: usize, f: impl Fn(&Exponent) -> Exponent) -> Self {
        Self::from_terms(dim, self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }

    /// Keeps only the terms accepted by `keep`.
    pub fn filter_terms(&self, keep: impl Fn(&Exponent) -> bool) -> Self {
        Self {
            dim: self.dim,
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Componentwise minimum of the exponents (zero for the zero polynomial).
    pub fn min_exponents(&self) -> Exponent {
        let mut lo = vec![0i64; self.dim];
        for (k, m) in self.terms.keys().enumerate() {
            for i in 0..self.dim {
                lo[i] = if k == 0 { m.0[i] } else { lo[i].min(m.0[i]) };
            }
        }
        Exponent(lo)
    }

    /// Multiplies by the monomial that makes every exponent nonnegative with
    /// some exponent zero in each variable.
    pub fn clear_negative_exponents(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let shift = self.min_exponents().scale(-1);
        self.mul_monomial(&shift, &Coefficient::one()).expect("unit coefficient")
    }

    /// Substitutes `z_i ↦ maps[i]`, where all maps live in a common ring of
    /// dimension `target_dim`. Negative powers require monomial maps.
    pub fn compose(&self, maps: &[LaurentPolynomial]) -> Result<Self> {
        self.check_dim(maps.len())?;
        let target_dim = maps.first().map_or(0, |p| p.dim);
        let mut acc = Self::zero(target_dim);
        for (m, c) in &self.terms {
            let mut t = Self::constant(target_dim, c.clone());
            for (&e, map) in m.0.iter().zip(maps) {
                let factor = if e >= 0 {
                    map.pow(e as u32)
                } else {
                    map.monomial_inverse().ok_or(Error::NonInvertibleSubstitution)?.pow((-e) as u32)
                };
                t = &t * &factor;
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Canonical text with the given variable names.
    pub fn format_with(&self, vars: &[&str]) -> String {
        assert_eq!(vars.len(), self.dim, "variable name count mismatch");
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let unit = if vars.contains(&"i") { "I" } else { "i" };
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mono: Vec<String> =
                m.0.iter()
                    .zip(vars)
                    .filter(|(&e, _)| e != 0)
                    .map(|(&e, v)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
                    .collect();
            let mono = mono.join("*");
            let coeff = format_coefficient(c, unit);
            let term = if mono.is_empty() {
                coeff
            } else if c.is_one() {
                mono
            } else if (-c).is_one() {
                format!("-{mono}")
            } else {
                format!("{coeff}*{mono}")
            };
            if k == 0 {
                out.push_str(&term);
            } else if let Some(rest) = term.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&term);
            }
        }
        out
    }
}

fn format_coefficient(c: &Coefficient, unit: &str) -> String {
    let s = c.to_string();
    if unit == "i" {
        s
    } else {
        s.replace("*i", &format!("*{unit}"))
    }
}

/// Default variable names: `x, y, z` up to three variables, else `x1..xd`.
pub fn default_variables(d: usize) -> Vec<String> {
    if d <= 3 {
        ["x", "y", "z"][..d].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=d).map(|i| format!("x{i}")).collect()
    }
}

/// `z^m` at a numeric point.
pub fn monomial_value(m: &Exponent, z: &[Complex64]) -> Result<Complex64> {
    let mut v = Complex64::one();
    for (i, (&e, &zi)) in m.0.iter().zip(z).enumerate() {
        if e == 0 {
            continue;
        }
        if zi == Complex64::zero() && e < 0 {
            return Err(Error::ZeroToNegativePower { index: i });
        }
        v *= zi.powi(e as i32);
    }
    Ok(v)
}

/// `τ_N(z) = exp(N · Log z)`, computed with integer powers so the result is
/// branch-independent.
pub fn apply_monomial_map(n: &IntMatrix, z: &[Complex64]) -> Result<Vec<Complex64>> {
    (0..n.rows()).map(|i| monomial_value(&Exponent(n.row(i)), z)).collect()
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars = default_variables(self.dim);
        let refs: Vec<&str> = vars.iter().map(String::as_str).collect();
        f.write_str(&self.format_with(&refs))
    }
}

impl Serialize for LaurentPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'a> Add<&'a LaurentPolynomial> for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl<'a> Sub<&'a LaurentPolynomial> for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a LaurentPolynomial> for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = LaurentPolynomial::zero(self.dim);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.add(m2), &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial { dim: self.dim, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xyz() -> Vec<String> {
        default_variables(3)
    }

    fn p(text: &str, vars: &[String]) -> LaurentPolynomial {
        parse(text, vars).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn edge_example_terms() {
        let h = p("z - y - (x-1)^2", &xyz());
        let expect: Vec<(Vec<i64>, i64)> =
            vec![(vec![0, 0, 0], -1), (vec![0, 0, 1], 1), (vec![0, 1, 0], -1), (vec![1, 0, 0], 2), (vec![2, 0, 0], -1)];
        let got: Vec<(Vec<i64>, i64)> =
            h.terms().map(|(m, c)| (m.0.clone(), c.re.numer().try_into().unwrap())).collect();
        assert_eq!(got, expect);
        assert!(p("x*x - x^2", &xyz()).is_zero());
        let one = p("1", &xyz());
        assert_eq!(one.num_terms(), 1);
        assert!(one.is_constant());
    }

    #[test]
    fn evaluation() {
        let h = p("z - y - (x-1)^2", &xyz());
        let t = 0.1;
        let v = h.evaluate(&ComplexPoint::real(&[1.0 + t, t, t + t * t])).unwrap();
        assert!(v.norm() < 1e-15);
        let q = p("x*y^-1", &default_variables(2));
        assert!((q.evaluate(&ComplexPoint::real(&[6.0, 3.0])).unwrap() - c(2.0, 0.0)).norm() < 1e-15);
        assert!(matches!(q.evaluate(&ComplexPoint::real(&[6.0, 0.0])), Err(Error::ZeroToNegativePower { index: 1 })));
        // 0^0 = 1
        let r = p("1 + y", &default_variables(2));
        assert_eq!(r.evaluate(&ComplexPoint::real(&[0.0, 0.0])).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn gradients() {
        let h = p("z - y - (x-1)^2", &xyz());
        let g = h.gradient();
        assert_eq!(g[0], p("-2*x + 2", &xyz()));
        let at: Vec<Complex64> =
            g.iter().map(|gi| gi.evaluate(&ComplexPoint::real(&[1.0, 0.0, 0.0])).unwrap()).collect();
        assert_eq!(at, vec![c(0.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0)]);
        assert!(p("7", &xyz()).gradient().iter().all(LaurentPolynomial::is_zero));
        let v2 = default_variables(2);
        assert_eq!(p("x^2*y", &v2).gradient(), vec![p("2*x*y", &v2), p("x^2", &v2)]);
    }

    #[test]
    fn log_gradients() {
        let v = xyz();
        let lg = p("1 - 2*x + x^2 + 1 - 2*y + y^2 - z", &v).log_gradient();
        assert_eq!(lg, vec![p("-2*x + 2*x^2", &v), p("-2*y + 2*y^2", &v), p("-z", &v)]);
        let lg = p("z - y - (x-1)^2", &v).log_gradient();
        assert_eq!(lg, vec![p("-2*x*(x-1)", &v), p("-y", &v), p("z", &v)]);
        let m = p("x^2*y^-3*z", &v);
        assert_eq!(m.log_gradient(), vec![m.scale(&2.into()), m.scale(&(-3).into()), m.clone()]);
    }

    #[test]
    fn monomial_shift() {
        let v2 = default_variables(2);
        let h = p("1+x+x^2+x*y+x^2*y", &v2);
        let s = h.mul_monomial(&Exponent(vec![-1, -1]), &Coefficient::one()).unwrap();
        assert_eq!(s, p("x^-1*y^-1 + y^-1 + x*y^-1 + 1 + x", &v2));
        assert_eq!(
            p("x + x^2", &default_variables(1)).mul_monomial(&Exponent(vec![-1]), &Coefficient::one()).unwrap(),
            p("1 + x", &default_variables(1))
        );
        assert!(matches!(h.mul_monomial(&Exponent(vec![0, 0]), &Coefficient::zero()), Err(Error::ZeroCoefficient)));
    }

    #[test]
    fn monomial_substitution() {
        let v = xyz();
        let h = p("z^-1 + x*z^-1 + y*z^-1 + x*y*z^-1 + 1", &v);
        let nt = IntMatrix::from_rows(&[vec![1, 0, 0], vec![0, 1, 0], vec![-1, 0, -1]]);
        let out = h.substitute_monomial_map(&nt.transpose()).unwrap();
        assert_eq!(out, p("z + x + y*z + x*y + 1", &v));
        assert_eq!(h.substitute_monomial_map(&IntMatrix::identity(3)).unwrap(), h);
        let x = p("x", &default_variables(1));
        assert_eq!(
            x.substitute_monomial_map(&IntMatrix::from_rows(&[vec![2]])).unwrap(),
            p("x^2", &default_variables(1))
        );
        let singular = IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]]);
        assert!(matches!(p("x", &default_variables(2)).substitute_monomial_map(&singular), Err(Error::SingularMatrix)));
    }

    #[test]
    fn printing() {
        let v = xyz();
        let h = p("z - y - (x-1)^2", &v);
        assert_eq!(h.to_string(), "-1 + z - y + 2*x - x^2");
        assert_eq!(LaurentPolynomial::zero(2).to_string(), "0");
        let q = p("(1/2 - 3*i)*x^-1 - i*y", &v);
        assert_eq!(p(&q.to_string(), &v), q);
    }

    #[test]
    fn composition() {
        let v = xyz();
        let h = p("z - y - (x-1)^2", &v);
        let t = default_variables(1);
        let curve = [p("1+x", &t), p("x", &t), p("x+x^2", &t)];
        assert!(h.compose(&curve).unwrap().is_zero());
        let inv = p("x^-1", &default_variables(1));
        assert!(matches!(inv.compose(&[p("1+x", &t)]), Err(Error::NonInvertibleSubstitution)));
        assert_eq!(inv.compose(&[p("2*x^3", &t)]).unwrap(), p("1/2*x^-3", &t));
    }
}
