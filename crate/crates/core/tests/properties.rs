use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;

use cpai_core::laurent::{apply_monomial_map, default_variables, monomial_value, parse};
use cpai_core::numeric::{chordal_distance, relative_diff};
use cpai_core::polytope::{newton_polytope, scale_to_normal, LatticePolytope};
use cpai_core::toric::{phi, reconstruct_point};
use cpai_core::transform::integer::{hermite_normal_form, unimodular_completion, Completion};
use cpai_core::transform::{IntMatrix, MonomialTransform};
use cpai_core::witness::{sample_limits, verify_on_variety, SampleOptions, WitnessCurve};
use cpai_core::{ComplexPoint, Exponent, GaussianRational, LaurentPolynomial};

fn coefficient() -> impl Strategy<Value = GaussianRational> {
    (-9i64..=9, 1i64..=6, -3i64..=3, 1i64..=4).prop_filter("nonzero", |(a, _, c, _)| *a != 0 || *c != 0).prop_map(
        |(a, b, c, d)| {
            GaussianRational::new(BigRational::new(a.into(), b.into()), BigRational::new(c.into(), d.into()))
        },
    )
}

fn polynomial(d: usize, max_terms: usize) -> impl Strategy<Value = LaurentPolynomial> {
    prop::collection::vec((prop::collection::vec(-3i64..=3, d), coefficient()), 1..=max_terms)
        .prop_map(move |terms| LaurentPolynomial::from_terms(d, terms.into_iter().map(|(m, c)| (Exponent(m), c))))
}

fn torus_point(d: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((0.4f64..2.5, 0.0f64..std::f64::consts::TAU), d)
        .prop_map(|v| v.into_iter().map(|(r, a)| Complex64::from_polar(r, a)).collect())
}

fn matrix(d: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, d), d).prop_map(|rows| IntMatrix::from_rows(&rows))
}

/// Products of elementary matrices, hence unimodular.
fn unimodular(d: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec((0..d, 0..d, -2i64..=2, any::<bool>()), 0..8).prop_map(move |ops| {
        let mut m = IntMatrix::identity(d);
        for (i, j, k, swap) in ops {
            if i == j {
                continue;
            }
            let mut e = IntMatrix::identity(d);
            if swap {
                e.set(i, i, 0);
                e.set(j, j, 0);
                e.set(i, j, 1);
                e.set(j, i, 1);
            } else {
                e.set(i, j, k);
            }
            m = m.mul(&e);
        }
        m
    })
}

fn eval(h: &LaurentPolynomial, z: &[Complex64]) -> Complex64 {
    h.evaluate_slice(z).unwrap()
}

fn log_gradient(h: &LaurentPolynomial, z: &[Complex64]) -> Vec<Complex64> {
    h.log_gradient().iter().map(|p| eval(p, z)).collect()
}

fn points_of(h: &LaurentPolynomial) -> Vec<Exponent> {
    h.exponents().cloned().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn printing_then_parsing_is_identity(h in polynomial(3, 6)) {
        let vars = default_variables(3);
        prop_assert_eq!(parse(&h.to_string(), &vars).unwrap(), h);
    }

    #[test]
    fn monomial_multiple_scales_values(h in polynomial(2, 5), m in prop::collection::vec(-3i64..=3, 2), z in torus_point(2)) {
        let m = Exponent(m);
        let hm = h.mul_monomial(&m, &GaussianRational::from_integer(1)).unwrap();
        let zm = monomial_value(&m, &z).unwrap();
        let lhs = eval(&hm, &z);
        let rhs = zm * eval(&h, &z);
        prop_assert!((lhs - rhs).norm() <= 1e-9 * (1.0 + rhs.norm()));
        // ∇_log(z^m H) = z^m (∇_log H + m H)
        let hz = eval(&h, &z);
        let want: Vec<Complex64> = log_gradient(&h, &z).iter().zip(&m.0).map(|(g, &mi)| zm * (g + hz * mi as f64)).collect();
        prop_assert!(relative_diff(&log_gradient(&hm, &z), &want, 1e-12) < 1e-9);
    }

    #[test]
    fn monomial_substitution_is_composition(h in polynomial(3, 5), n in matrix(3), z in torus_point(3)) {
        prop_assume!(n.det() != 0);
        let composed = h.substitute_monomial_map(&n).unwrap();
        let image = apply_monomial_map(&n, &z).unwrap();
        let (a, b) = (eval(&composed, &z), eval(&h, &image));
        prop_assert!((a - b).norm() <= 1e-8 * (1.0 + b.norm()));
        // chain rule: ∇_log(H∘τ_N)(z) = N^T ∇_log H(τ_N(z))
        let inner = log_gradient(&h, &image);
        let nt = n.transpose();
        let want: Vec<Complex64> = (0..3).map(|i| (0..3).map(|j| inner[j] * nt.get(i, j) as f64).sum()).collect();
        prop_assert!(relative_diff(&log_gradient(&composed, &z), &want, 1e-9) < 1e-8);
    }

    #[test]
    fn unimodular_substitution_round_trips(h in polynomial(3, 5), u in unimodular(3)) {
        let inv = u.inverse_unimodular().unwrap();
        let there = h.substitute_monomial_map(&u).unwrap();
        prop_assert_eq!(there.substitute_monomial_map(&inv).unwrap(), h);
    }

    #[test]
    fn hermite_form_invariants(rows in prop::collection::vec(prop::collection::vec(-6i64..=6, 4), 1..=4)) {
        let m = IntMatrix::from_rows(&rows);
        let hf = hermite_normal_form(&m);
        prop_assert_eq!(m.mul(&hf.u), hf.h.clone());
        prop_assert_eq!(hf.u.det().abs(), 1);
        prop_assert_eq!(hf.rank, m.rank());
        prop_assert!(hf.pivot_rows.windows(2).all(|w| w[0] < w[1]));
        for (j, &p) in hf.pivot_rows.iter().enumerate() {
            let piv = hf.h.get(p, j);
            prop_assert!(piv > 0);
            for i in 0..p {
                prop_assert_eq!(hf.h.get(i, j), 0);
            }
            for k in 0..j {
                let x = hf.h.get(p, k);
                prop_assert!(0 <= x && x < piv);
            }
        }
        for j in hf.rank..m.cols() {
            prop_assert!(hf.h.column(j).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn completion_keeps_given_columns(u in unimodular(3), k in 1usize..=2) {
        // trailing columns of a unimodular matrix are always completable
        let cols: Vec<Vec<i64>> = (3 - k..3).map(|j| u.column(j)).collect();
        match unimodular_completion(&cols, 3).unwrap() {
            Completion::Unimodular(n) => {
                prop_assert_eq!(n.det().abs(), 1);
                for (i, c) in cols.iter().enumerate() {
                    prop_assert_eq!(&n.column(3 - k + i), c);
                }
            }
            other => prop_assert!(false, "unexpected {:?}", other),
        }
    }

    #[test]
    fn hull_of_vertices_is_the_same_polytope(h in polynomial(3, 7)) {
        let Ok(p) = newton_polytope(&h) else { return Ok(()) };
        let q = LatticePolytope::from_points(p.vertices()).unwrap();
        prop_assert_eq!(q.vertices(), p.vertices());
        prop_assert_eq!(q.halfspaces(), p.halfspaces());
        for m in points_of(&h) {
            prop_assert!(p.contains(&m.0));
        }
    }

    #[test]
    fn face_lattice_has_euler_characteristic_one(h in polynomial(3, 7)) {
        let p = newton_polytope(&h).unwrap();
        let lattice = p.face_lattice().unwrap();
        let chi: i64 = lattice.faces.iter().map(|f| if f.dim % 2 == 0 { 1 } else { -1 }).sum();
        prop_assert_eq!(chi, 1);
        for f in &lattice.faces {
            prop_assert_eq!(f.dim + f.codim, p.affine_dim());
            prop_assert!(f.vertices.iter().all(|v| f.span_contains(&v.sub(&f.vertex_anchor).0)));
            if f.dim > 0 && f.codim <= 2 && p.is_full_dimensional() {
                prop_assert!(f.modified_simple());
            }
        }
    }

    #[test]
    fn embedding_round_trip(z in torus_point(3), scale in (0.1f64..10.0, 0.0f64..6.0)) {
        let h = parse("1 + x*y + y^2*z + x*z^2 + x*y*z", &default_variables(3)).unwrap();
        let (q, _) = scale_to_normal(&newton_polytope(&h).unwrap());
        let lattice = q.face_lattice().unwrap();
        let c = Complex64::from_polar(scale.0, scale.1);
        let p: Vec<Complex64> = phi(&lattice.lattice_points, &ComplexPoint::new(z.clone())).unwrap().iter().map(|x| x * c).collect();
        let back = reconstruct_point(&lattice, &p).unwrap();
        prop_assert!(relative_diff(back.coords(), &z, 1e-300) < 1e-10);
    }

    #[test]
    fn direction_push_and_pull_are_inverse(u in unimodular(3), r in torus_point(3)) {
        let t = MonomialTransform::new(u, 1, Exponent::zero(3)).unwrap();
        let back = t.pullback_direction(&t.pushforward_direction(&r));
        prop_assert!(chordal_distance(&back, &r) < 1e-10);
        let again = t.pushforward_direction(&t.pullback_direction(&r));
        prop_assert!(chordal_distance(&again, &r) < 1e-10);
    }

    #[test]
    fn edge_family_limits(num in -6i64..=6, den in 1i64..=3) {
        prop_assume!(num != 0);
        let gamma = num as f64 / den as f64;
        let g = format!("({num}/{den})");
        let h = parse("z - y - (x-1)^2", &default_variables(3)).unwrap();
        let maps = [format!("1+{g}*t"), "t".to_string(), format!("t+{g}^2*t^2")];
        let curve = WitnessCurve::parse("family", &maps).unwrap();
        prop_assert!(verify_on_variety(&h, &curve).unwrap());
        let est = sample_limits(&h, &curve, None, &SampleOptions::default()).unwrap();
        let want = [Complex64::new(-2.0 * gamma, 0.0), Complex64::new(-1.0, 0.0), Complex64::new(1.0, 0.0)];
        prop_assert!(chordal_distance(&est.best_limit().unwrap(), &want) < 1e-6);
    }

    #[test]
    fn limits_ignore_constant_and_monomial_factors(m in prop::collection::vec(-2i64..=2, 3), c in coefficient()) {
        let h = parse("z - y - (x-1)^2", &default_variables(3)).unwrap();
        let hm = h.mul_monomial(&Exponent(m), &c).unwrap();
        let curve = WitnessCurve::parse("a", &["1+t", "t^2", "2*t^2"]).unwrap();
        let opts = SampleOptions::default();
        let a = sample_limits(&h, &curve, None, &opts).unwrap();
        let b = sample_limits(&hm, &curve, None, &opts).unwrap();
        for (x, y) in a.samples.iter().zip(&b.samples) {
            prop_assert!(chordal_distance(&x.direction, &y.direction) < 1e-8);
        }
        prop_assert!(chordal_distance(&a.best_limit().unwrap(), &b.best_limit().unwrap()) < 1e-8);
    }
}

#[test]
fn points_on_the_curve_satisfy_the_equation_numerically() {
    let h = parse("z - y - (x-1)^2", &default_variables(3)).unwrap();
    let curve = WitnessCurve::parse("a", &["1+t", "t", "t+t^2"]).unwrap();
    for t in SampleOptions::default().schedule() {
        let z = curve.point(Complex64::new(t, 0.0)).unwrap();
        assert!(eval(&h, &z).norm() < 1e-12);
    }
}
