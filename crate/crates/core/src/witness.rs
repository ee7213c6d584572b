//! Curves on the hypersurface that run off to infinity, used to exhibit
//! limiting log-gradient directions and height limits numerically and to
//! check the analysis against them.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::cpai::CpaiReport;
use crate::error::{Error, Result};
use crate::gaussian::{rat_to_f64, GaussianRational};
use crate::laurent::{parse, Exponent, LaurentPolynomial};
use crate::numeric::{chordal_distance, normalize_projective};
use crate::univariate::complex_roots;

/// `t ↦ (z_1(t), …, z_d(t))` with Laurent-polynomial coordinates, tending
/// to infinity (or to a boundary point of the torus) as `t → 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessCurve {
    pub label: String,
    pub maps: Vec<LaurentPolynomial>,
}

impl WitnessCurve {
    pub fn new(label: impl Into<String>, maps: Vec<LaurentPolynomial>) -> Result<Self> {
        for m in &maps {
            if m.dim() != 1 {
                return Err(Error::DimensionMismatch { expected: 1, found: m.dim() });
            }
            if m.is_zero() {
                return Err(Error::Precondition("a coordinate map is identically zero".into()));
            }
        }
        Ok(Self { label: label.into(), maps })
    }

    /// Parses maps written in the parameter `t`.
    pub fn parse<S: AsRef<str>>(label: impl Into<String>, maps: &[S]) -> Result<Self> {
        let maps = maps.iter().map(|m| parse(m.as_ref(), &["t"])).collect::<Result<Vec<_>>>()?;
        Self::new(label, maps)
    }

    pub fn dim(&self) -> usize {
        self.maps.len()
    }

    pub fn point(&self, t: Complex64) -> Result<Vec<Complex64>> {
        self.maps.iter().map(|m| m.evaluate_slice(&[t])).collect()
    }

    /// Order of vanishing of each coordinate at `t = 0`.
    pub fn orders(&self) -> Vec<i64> {
        self.maps.iter().map(|m| m.min_exponents().0[0]).collect()
    }
}

/// Whether `H ∘ curve` is identically zero.
pub fn verify_on_variety(h: &LaurentPolynomial, curve: &WitnessCurve) -> Result<bool> {
    if h.dim() != curve.dim() {
        return Err(Error::DimensionMismatch { expected: h.dim(), found: curve.dim() });
    }
    Ok(h.clear_negative_exponents().compose(&curve.maps)?.is_zero())
}

/// `∇_log(z^M H) ∘ curve` as Laurent polynomials in `t`, where `z^M`
/// clears negative exponents. On the hypersurface this is `z^M ∇_log H`,
/// so it has the same projective class.
pub fn log_gradient_along(h: &LaurentPolynomial, curve: &WitnessCurve) -> Result<Vec<LaurentPolynomial>> {
    if h.dim() != curve.dim() {
        return Err(Error::DimensionMismatch { expected: h.dim(), found: curve.dim() });
    }
    h.clear_negative_exponents().log_gradient().iter().map(|p| p.compose(&curve.maps)).collect()
}

/// Projective limit at `t = 0` of a vector of Laurent polynomials in `t`:
/// the coefficients of the lowest power of `t` that occurs.
pub fn lowest_order_limit(components: &[LaurentPolynomial]) -> Option<Vec<GaussianRational>> {
    let order = components.iter().filter(|p| !p.is_zero()).map(|p| p.min_exponents().0[0]).min()?;
    let e = Exponent(vec![order]);
    Some(components.iter().map(|p| p.coefficient(&e)).collect())
}

/// Sample parameters `t_0 · 2^{-j}` for `j < count`, and the tolerance for
/// accepting a limit.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SampleOptions {
    pub t0: f64,
    pub count: usize,
    pub tol_conv: f64,
}

impl Default for SampleOptions {
    fn default() -> Self {
        Self { t0: 0.125, count: 41, tol_conv: 1e-7 }
    }
}

impl SampleOptions {
    pub fn schedule(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(|j| self.t0 * 0.5f64.powi(j as i32))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Limit<T> {
    Converged(T),
    Divergent,
    Inconclusive,
}

impl<T> Limit<T> {
    pub fn converged(&self) -> Option<&T> {
        match self {
            Limit::Converged(v) => Some(v),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Sample {
    pub t: f64,
    pub direction: Vec<Complex64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub height: Option<f64>,
}

/// Geometric-decay diagnostics for a sequence of samples.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Confidence {
    /// Median ratio of successive sample differences near the end.
    pub decay_ratio: f64,
    /// Largest distance of the last five samples from the extrapolated limit.
    pub tail_distance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceEstimate {
    pub label: String,
    pub projective_limit: Limit<Vec<Complex64>>,
    /// Limit read off from the lowest-order terms, for exact curves.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_limit: Option<Vec<GaussianRational>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub height_limit: Option<Limit<f64>>,
    pub direction_confidence: Confidence,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub height_confidence: Option<Confidence>,
    pub samples: Vec<Sample>,
    pub notes: Vec<String>,
}

impl ConvergenceEstimate {
    /// The exact limit when known, else the numeric one.
    pub fn best_limit(&self) -> Option<Vec<Complex64>> {
        match (&self.exact_limit, &self.projective_limit) {
            (Some(e), _) => normalize_projective(&e.iter().map(GaussianRational::to_complex).collect::<Vec<_>>()),
            (None, Limit::Converged(v)) => Some(v.clone()),
            _ => None,
        }
    }
}

const NOISE: f64 = 1e-14;
const TAIL: usize = 5;

fn decay_ratio(diffs: &[f64], floor: impl Fn(usize) -> f64) -> f64 {
    let start = diffs.len().saturating_sub(12);
    let mut ratios: Vec<f64> = (start..diffs.len().saturating_sub(1))
        .filter(|&j| diffs[j] > floor(j) && diffs[j + 1] > floor(j + 1))
        .map(|j| diffs[j + 1] / diffs[j])
        .collect();
    if ratios.len() < 2 {
        return 0.0;
    }
    ratios.sort_by(f64::total_cmp);
    ratios[ratios.len() / 2]
}

fn estimate_direction(samples: &[Sample], tol: f64) -> (Limit<Vec<Complex64>>, Confidence) {
    let n = samples.len();
    if n < TAIL + 1 {
        return (Limit::Inconclusive, Confidence { decay_ratio: f64::NAN, tail_distance: f64::NAN });
    }
    let last = &samples[n - 1].direction;
    let pivot = (0..last.len()).max_by(|&a, &b| last[a].norm().total_cmp(&last[b].norm())).unwrap_or(0);
    let fixed: Vec<Vec<Complex64>> = samples
        .iter()
        .map(|s| {
            let p = s.direction[pivot];
            if p.norm() > 0.0 {
                s.direction.iter().map(|z| z / p).collect()
            } else {
                s.direction.clone()
            }
        })
        .collect();
    // first-order Richardson step for ratio-2 sampling
    let extrapolated: Vec<Complex64> = fixed[n - 1].iter().zip(&fixed[n - 2]).map(|(a, b)| a * 2.0 - b).collect();
    let limit = normalize_projective(&extrapolated).unwrap_or_else(|| fixed[n - 1].clone());
    let tail_distance = fixed[n - TAIL..].iter().map(|v| chordal_distance(v, &limit)).fold(0.0, f64::max);
    let diffs: Vec<f64> = fixed.windows(2).map(|w| chordal_distance(&w[0], &w[1])).collect();
    let ratio = decay_ratio(&diffs, |_| NOISE);
    let confidence = Confidence { decay_ratio: ratio, tail_distance };
    let verdict = if tail_distance <= tol && ratio < 0.9 {
        Limit::Converged(limit)
    } else if ratio >= 0.9 {
        Limit::Divergent
    } else {
        Limit::Inconclusive
    };
    (verdict, confidence)
}

fn estimate_height(values: &[f64], tol: f64) -> (Limit<f64>, Confidence) {
    let n = values.len();
    if n < TAIL + 1 {
        return (Limit::Inconclusive, Confidence { decay_ratio: f64::NAN, tail_distance: f64::NAN });
    }
    let limit = 2.0 * values[n - 1] - values[n - 2];
    let scale = limit.abs().max(1.0);
    let tail_distance = values[n - TAIL..].iter().map(|v| (v - limit).abs() / scale).fold(0.0, f64::max);
    let diffs: Vec<f64> = values.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    let ratio = decay_ratio(&diffs, |j| NOISE * values[j].abs().max(1.0));
    let confidence = Confidence { decay_ratio: ratio, tail_distance };
    let verdict = if !limit.is_finite() {
        Limit::Divergent
    } else if tail_distance <= tol && ratio < 0.9 {
        Limit::Converged(limit)
    } else if ratio >= 0.9 {
        Limit::Divergent
    } else {
        Limit::Inconclusive
    };
    (verdict, confidence)
}

fn height(r: &[f64], z: &[Complex64]) -> f64 {
    -r.iter().zip(z).map(|(ri, zi)| ri * zi.norm().ln()).sum::<f64>()
}

fn assemble(
    label: String,
    samples: Vec<Sample>,
    exact_limit: Option<Vec<GaussianRational>>,
    with_height: bool,
    notes: Vec<String>,
    tol: f64,
) -> ConvergenceEstimate {
    let (projective_limit, direction_confidence) = estimate_direction(&samples, tol);
    let (height_limit, height_confidence) = if with_height {
        let hs: Vec<f64> = samples.iter().filter_map(|s| s.height).collect();
        let (l, c) = estimate_height(&hs, tol);
        (Some(l), Some(c))
    } else {
        (None, None)
    };
    ConvergenceEstimate {
        label,
        projective_limit,
        exact_limit,
        height_limit,
        direction_confidence,
        height_confidence,
        samples,
        notes,
    }
}

fn direction_f64(r: Option<&[BigRational]>) -> Option<Vec<f64>> {
    r.map(|r| r.iter().map(rat_to_f64).collect())
}

/// Samples `[∇_log H]` and `h_r` along a curve on the hypersurface.
///
/// The log-gradient is composed with the curve exactly before evaluation,
/// so cancellation near `t = 0` does not cost precision.
pub fn sample_limits(
    h: &LaurentPolynomial,
    curve: &WitnessCurve,
    r: Option<&[BigRational]>,
    opts: &SampleOptions,
) -> Result<ConvergenceEstimate> {
    let components = log_gradient_along(h, curve)?;
    let exact_limit = lowest_order_limit(&components);
    let rf = direction_f64(r);
    let mut samples = Vec::new();
    let mut notes = Vec::new();
    for t in opts.schedule() {
        let tc = Complex64::new(t, 0.0);
        let z = curve.point(tc)?;
        if z.iter().any(|c| c.norm() == 0.0 || !c.norm().is_finite()) {
            notes.push(format!("skipped t = {t:e}: coordinate is zero or not finite"));
            continue;
        }
        let raw: Vec<Complex64> = components.iter().map(|p| p.evaluate_slice(&[tc])).collect::<Result<_>>()?;
        let Some(direction) = normalize_projective(&raw) else {
            notes.push(format!("skipped t = {t:e}: log-gradient vanishes"));
            continue;
        };
        samples.push(Sample { t, direction, height: rf.as_ref().map(|r| height(r, &z)) });
    }
    Ok(assemble(curve.label.clone(), samples, exact_limit, rf.is_some(), notes, opts.tol_conv))
}

/// A path on the hypersurface given by all coordinates but one, the last
/// being solved from `H = 0` numerically and continued from sample to
/// sample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolvedPath {
    pub label: String,
    /// Maps in `t`; `None` marks the solved coordinate.
    pub given: Vec<Option<LaurentPolynomial>>,
}

impl SolvedPath {
    pub fn new(label: impl Into<String>, given: Vec<Option<LaurentPolynomial>>) -> Result<Self> {
        if given.iter().filter(|g| g.is_none()).count() != 1 {
            return Err(Error::Precondition("exactly one coordinate must be solved for".into()));
        }
        Ok(Self { label: label.into(), given })
    }

    fn solved_index(&self) -> usize {
        self.given.iter().position(Option::is_none).expect("checked in new")
    }

    /// Roots of `H` in the solved coordinate with the others fixed at `t`;
    /// the one closest to `previous`, or of largest modulus initially.
    pub fn point(
        &self,
        h: &LaurentPolynomial,
        t: Complex64,
        previous: Option<Complex64>,
    ) -> Result<Option<Vec<Complex64>>> {
        let k = self.solved_index();
        let mut z = vec![Complex64::zero(); self.given.len()];
        for (i, g) in self.given.iter().enumerate() {
            if let Some(g) = g {
                z[i] = g.evaluate_slice(&[t])?;
            }
        }
        let low = h.min_exponents().0[k];
        let high = h.exponents().map(|m| m.0[k]).max().unwrap_or(low);
        let mut coeffs = vec![Complex64::zero(); (high - low + 1) as usize];
        for (m, c) in h.terms() {
            let mut v = c.to_complex();
            for (i, &e) in m.0.iter().enumerate() {
                if i != k && e != 0 {
                    v *= z[i].powi(e as i32);
                }
            }
            coeffs[(m.0[k] - low) as usize] += v;
        }
        let roots: Vec<Complex64> = complex_roots(&coeffs).into_iter().filter(|r| r.norm() > 0.0).collect();
        let pick = match previous {
            Some(p) => roots.into_iter().min_by(|a, b| (a - p).norm().total_cmp(&(b - p).norm())),
            None => roots.into_iter().max_by(|a, b| a.norm().total_cmp(&b.norm())),
        };
        Ok(pick.map(|root| {
            z[k] = root;
            z
        }))
    }
}

/// Samples `[∇_log H]` and `h_r` along a solved path (numeric evaluation).
pub fn sample_solved_path(
    h: &LaurentPolynomial,
    path: &SolvedPath,
    r: Option<&[BigRational]>,
    opts: &SampleOptions,
) -> Result<ConvergenceEstimate> {
    let k = path.solved_index();
    let grad = h.log_gradient();
    let rf = direction_f64(r);
    let mut samples = Vec::new();
    let mut notes = Vec::new();
    let mut previous = None;
    for t in opts.schedule() {
        let Some(z) = path.point(h, Complex64::new(t, 0.0), previous)? else {
            notes.push(format!("skipped t = {t:e}: no torus root"));
            continue;
        };
        if z.iter().any(|c| c.norm() == 0.0 || !c.norm().is_finite()) {
            notes.push(format!("skipped t = {t:e}: coordinate is zero or not finite"));
            continue;
        }
        previous = Some(z[k]);
        let raw: Vec<Complex64> = grad.iter().map(|p| p.evaluate_slice(&z)).collect::<Result<_>>()?;
        let Some(direction) = normalize_projective(&raw) else {
            notes.push(format!("skipped t = {t:e}: log-gradient vanishes"));
            continue;
        };
        samples.push(Sample { t, direction, height: rf.as_ref().map(|r| height(r, &z)) });
    }
    Ok(assemble(path.label.clone(), samples, None, rf.is_some(), notes, opts.tol_conv))
}

/// The curve `(1 + c·t, 1 + t, (c² + 1)·t²)` on `(x-1)² + (y-1)² - z = 0`,
/// which keeps `(x - 1)/(y - 1) = c`.
pub fn paraboloid_curve(c: &GaussianRational) -> Result<WitnessCurve> {
    let t = LaurentPolynomial::variable(1, 0);
    let one = LaurentPolynomial::one(1);
    let c2 = &(c * c) + &GaussianRational::from_integer(1);
    let t2 = t.pow(2).scale(&c2);
    WitnessCurve::new(format!("x - 1 = ({c})(y - 1)"), vec![&one + &t.scale(c), &one + &t, t2])
}

/// The two axis curves `x = 1` and `y = 1` on a paraboloid-type surface
/// `(x-1)² + (y-1)² - z`.
pub fn paraboloid_probe(
    h: &LaurentPolynomial,
    opts: &SampleOptions,
) -> Result<(ConvergenceEstimate, ConvergenceEstimate)> {
    let along_y = WitnessCurve::parse("x = 1", &["1", "1 + t", "t^2"])?;
    let along_x = WitnessCurve::parse("y = 1", &["1 + t", "1", "t^2"])?;
    for c in [&along_y, &along_x] {
        if !verify_on_variety(h, c)? {
            return Err(Error::Precondition(format!("curve `{}` does not lie on the hypersurface", c.label)));
        }
    }
    Ok((sample_limits(h, &along_y, None, opts)?, sample_limits(h, &along_x, None, opts)?))
}

/// A curve whose limit direction falls outside the predicted set.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Discrepancy {
    pub curve: String,
    pub face_id: usize,
    pub limit: Vec<Complex64>,
    pub distance: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct CrossCheck {
    pub discrepancies: Vec<Discrepancy>,
    pub notes: Vec<String>,
}

/// Face of the Newton polytope whose orbit the curve approaches: the
/// vertices minimising `m · ord(curve)`. `None` when that is the whole
/// polytope (the curve stays in a compact part of the torus).
pub fn approached_vertices(report: &CpaiReport, curve: &WitnessCurve) -> Option<Vec<Exponent>> {
    let w = curve.orders();
    let verts = &report.newton_polytope.vertices;
    let values: Vec<i64> = verts.iter().map(|v| v.dot(&w)).collect();
    let min = *values.iter().min()?;
    let face: Vec<Exponent> = verts.iter().zip(&values).filter(|(_, &x)| x == min).map(|(v, _)| v.clone()).collect();
    (face.len() < verts.len()).then_some(face)
}

/// Checks that each curve's limit direction lies (within `tol`) in the
/// direction set of the face it approaches.
pub fn cross_check(
    h: &LaurentPolynomial,
    report: &CpaiReport,
    curves: &[WitnessCurve],
    opts: &SampleOptions,
    tol: f64,
) -> Result<CrossCheck> {
    let mut out = CrossCheck::default();
    for curve in curves {
        if !verify_on_variety(h, curve)? {
            out.notes.push(format!("{}: not on the hypersurface, skipped", curve.label));
            continue;
        }
        let Some(vertices) = approached_vertices(report, curve) else {
            out.notes.push(format!("{}: does not approach a face at infinity", curve.label));
            continue;
        };
        let Some(face) = report.face_with_vertices(&vertices) else {
            out.notes.push(format!("{}: no verdict for the approached face", curve.label));
            continue;
        };
        let estimate = sample_limits(h, curve, None, opts)?;
        let Some(limit) = estimate.best_limit() else {
            out.notes.push(format!("{}: limit direction not established", curve.label));
            continue;
        };
        match face.directions.distance(&limit) {
            Some(d) if d > tol => out.discrepancies.push(Discrepancy {
                curve: curve.label.clone(),
                face_id: face.face_id,
                limit,
                distance: d,
            }),
            Some(_) => {}
            None => out.notes.push(format!("{}: face {} is undetermined, not checked", curve.label, face.face_id)),
        }
    }
    Ok(out)
}
