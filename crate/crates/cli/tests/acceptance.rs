//! End-to-end acceptance run: one PASS/FAIL line per criterion.

use std::process::{Command, ExitCode};
use std::time::Instant;

use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cpai_cli::direction_basis;
use cpai_core::cpai::{
    analyze, face_polynomial, face_singularities, finite_difference_jacobian, AnalysisOptions, CpaiReport, Heightedness,
};
use cpai_core::laurent::{apply_monomial_map, parse};
use cpai_core::numeric::{chordal_distance, max_abs_diff, real_vector, relative_diff, subspace_distance};
use cpai_core::polytope::{newton_polytope, scale_to_normal, verify_normality, Normality, DEFAULT_BUDGET};
use cpai_core::toric::{phi, reconstruct_point};
use cpai_core::transform::{
    build_face_transform, transform_polynomial, IntMatrix, MonomialTransform, StructuralWarning,
};
use cpai_core::witness::{
    paraboloid_probe, sample_limits, sample_solved_path, Limit, SampleOptions, SolvedPath, WitnessCurve,
};
use cpai_core::{ComplexPoint, Error, Exponent, GaussianRational, LaurentPolynomial};

const EDGE: &str = "z - y - (x-1)^2";
const PARABOLOID: &str = "(x-1)^2 + (y-1)^2 - z";
const QUADRILATERAL: &str = "1 + x + x^2 + x*y + x^2*y";
const PYRAMID: &str = "1 + x + y + x*y + z";

type Outcome = Result<(), String>;

fn xyz(text: &str) -> LaurentPolynomial {
    parse(text, &["x", "y", "z"]).expect("valid polynomial")
}

fn xy(text: &str) -> LaurentPolynomial {
    parse(text, &["x", "y"]).expect("valid polynomial")
}

fn ints(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
}

fn vertices(v: &[&[i64]]) -> Vec<Exponent> {
    v.iter().map(|x| Exponent(x.to_vec())).collect()
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn limit_of(h: &LaurentPolynomial, maps: &[&str], r: Option<&[BigRational]>) -> Result<Vec<Complex64>, String> {
    let curve = WitnessCurve::parse(maps.join(", "), maps).map_err(|e| e.to_string())?;
    let est = sample_limits(h, &curve, r, &SampleOptions::default()).map_err(|e| e.to_string())?;
    est.best_limit().ok_or_else(|| format!("no limit along ({})", maps.join(", ")))
}

fn report(h: &LaurentPolynomial) -> Result<CpaiReport, String> {
    analyze(h, &AnalysisOptions::default()).map_err(|e| e.to_string())
}

fn max_abs(a: &[Vec<Complex64>], b: &[Vec<f64>]) -> f64 {
    a.iter()
        .zip(b)
        .flat_map(|(x, y)| x.iter().zip(y).map(|(p, q)| (p - Complex64::new(*q, 0.0)).norm()))
        .fold(0.0, f64::max)
}

fn criterion_1() -> Outcome {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let expected_j = [vec![-2.0, 0.0], vec![0.0, -s], vec![0.0, s]];
    let expected_span = vec![real_vector(&[1.0, 0.0, 0.0]), real_vector(&[0.0, -1.0, 1.0])];

    let out = Command::new(env!("CARGO_BIN_EXE_cpai")).args(["analyze", EDGE]).output().map_err(|e| e.to_string())?;
    ensure(out.status.success(), || format!("cpai analyze exited with {:?}", out.status.code()))?;
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let edge = json["faces"]
        .as_array()
        .and_then(|fs| fs.iter().find(|f| f["vertices"] == serde_json::json!([[0, 0, 0], [2, 0, 0]])))
        .ok_or("no x-axis edge in the JSON report")?;
    ensure(edge["generic"] == false, || "edge reported generic in the JSON report".into())?;

    let r = report(&xyz(EDGE))?;
    let f = r.face_with_vertices(&vertices(&[&[0, 0, 0], &[2, 0, 0]])).ok_or("no x-axis edge")?;
    ensure(f.generic == Some(false), || "edge is not reported non-generic".into())?;
    let model = f.singular_points.iter().find_map(|p| p.model.as_ref()).ok_or("no local model on the edge")?;
    let dj = max_abs(&model.jacobian, &expected_j);
    ensure(dj < 1e-10, || format!("J differs by {dj:e}"))?;
    let basis = direction_basis(&f.directions).ok_or("edge directions are not a subspace")?;
    let ds = subspace_distance(&basis, &expected_span, 3);
    ensure(ds < 1e-10, || format!("direction span differs by {ds:e}"))?;
    let others: Vec<usize> =
        r.faces.iter().filter(|g| g.face_id != f.face_id && g.generic != Some(true)).map(|g| g.face_id).collect();
    ensure(others.is_empty(), || format!("faces {others:?} are not generic"))
}

fn criterion_2() -> Outcome {
    let h = xyz(EDGE);
    let r = ints(&[-2, -1, 1]);
    let mut cases: Vec<(Vec<String>, Vec<f64>)> =
        vec![(vec!["1+t".into(), "t".into(), "t+t^2".into()], vec![-2.0, -1.0, 1.0])];
    for g in [2i64, 3, -1] {
        cases.push((
            vec![format!("1+({g})*t"), "t".into(), format!("t+{}*t^2", g * g)],
            vec![-2.0 * g as f64, -1.0, 1.0],
        ));
    }
    cases.push((vec!["1+t".into(), "t^2".into(), "2*t^2".into()], vec![-2.0, 0.0, 0.0]));
    for (maps, want) in &cases {
        let refs: Vec<&str> = maps.iter().map(String::as_str).collect();
        let l = limit_of(&h, &refs, None)?;
        let d = chordal_distance(&l, &real_vector(want));
        ensure(d < 1e-6, || format!("({}) limit off by {d:e}", maps.join(", ")))?;
    }
    let curve = WitnessCurve::parse("first", &["1+t", "t", "t+t^2"]).map_err(|e| e.to_string())?;
    let est = sample_limits(&h, &curve, Some(&r), &SampleOptions::default()).map_err(|e| e.to_string())?;
    match est.height_limit {
        Some(Limit::Converged(v)) => ensure(v.abs() < 1e-8, || format!("height limit {v}")),
        other => Err(format!("height did not converge: {other:?}")),
    }
}

fn criterion_3() -> Outcome {
    let h = xyz(PARABOLOID);
    let (x_fixed, y_fixed) = paraboloid_probe(&h, &SampleOptions::default()).map_err(|e| e.to_string())?;
    let a = x_fixed.best_limit().ok_or("x = 1 curve has no limit")?;
    let b = y_fixed.best_limit().ok_or("y = 1 curve has no limit")?;
    let (da, db) =
        (chordal_distance(&a, &real_vector(&[0.0, 2.0, 0.0])), chordal_distance(&b, &real_vector(&[2.0, 0.0, 0.0])));
    ensure(da < 1e-6 && db < 1e-6, || format!("axis limits off by {da:e}, {db:e}"))?;

    let r = report(&h)?;
    let f = r.face_with_vertices(&vertices(&[&[0, 0, 0], &[0, 2, 0], &[2, 0, 0]])).ok_or("no base facet")?;
    let point = f.singular_points.first().ok_or("base facet has no singular point")?;
    let model = point.model.as_ref().ok_or("no local model on the base facet")?;
    let dz = max_abs_diff(&model.z, &real_vector(&[1.0, 1.0, 0.0]));
    ensure(dz < 1e-12, || format!("Z = {:?}", model.z))?;
    let basis = direction_basis(&f.directions).ok_or("base facet directions are not a subspace")?;
    let ds = subspace_distance(&basis, &[real_vector(&[1.0, 0.0, 0.0]), real_vector(&[0.0, 1.0, 0.0])], 3);
    ensure(ds < 1e-10, || format!("directions are not the xy-plane ({ds:e})"))?;
    ensure(f.heighted == Heightedness::AllHeighted, || format!("heightedness {:?}", f.heighted))?;
    for l in [&a, &b] {
        let d = f.directions.distance(l).ok_or("undetermined directions")?;
        ensure(d < 1e-6, || format!("curve limit not in the facet verdict ({d:e})"))?;
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    let h = xyz(PYRAMID);
    let lattice = newton_polytope(&h).and_then(|p| p.face_lattice()).map_err(|e| e.to_string())?;
    let apex = lattice.faces.iter().find(|f| f.vertices == vertices(&[&[0, 0, 1]])).ok_or("no apex")?;
    ensure(!apex.modified_simple() && apex.tight_halfspaces.len() == 4, || {
        format!("apex lies in {} facets", apex.tight_halfspaces.len())
    })?;
    match build_face_transform(apex) {
        Err(Error::ModifiedSimpleFails { facets: 4, .. }) => {}
        other => return Err(format!("apex transform: {other:?}")),
    }
    let rows = [vec![1, 0, 0], vec![0, 1, 0], vec![-1, 0, -1]];
    let t = MonomialTransform::from_transpose_rows(&rows, 3, Exponent(vec![0, 0, 1])).map_err(|e| e.to_string())?;
    let out = transform_polynomial(&h, &t).map_err(|e| e.to_string())?;
    let want = xyz("z + x + y*z + x*y + 1");
    ensure(out.polynomial == want, || format!("transformed polynomial is {}", out.polynomial))?;
    let fired = out
        .warnings
        .iter()
        .any(|w| matches!(w, StructuralWarning::MissingPureTerm { index: 2, .. }) && w.to_string().contains("alone"));
    ensure(fired, || format!("warnings: {:?}", out.warnings))
}

fn criterion_5() -> Outcome {
    let h = xy(QUADRILATERAL);
    let path = SolvedPath::new("x -> -1", vec![Some(parse("-1+t", &["t"]).map_err(|e| e.to_string())?), None])
        .map_err(|e| e.to_string())?;
    let est = sample_solved_path(&h, &path, None, &SampleOptions::default()).map_err(|e| e.to_string())?;
    let l = est.best_limit().ok_or("no limit along the path")?;
    let d = chordal_distance(&l, &real_vector(&[-1.0, 0.0]));
    ensure(d < 1e-6, || format!("limit off by {d:e}"))?;
    let r = report(&h)?;
    let top = r.face_with_vertices(&vertices(&[&[1, 1], &[2, 1]])).ok_or("no top edge")?;
    let dt = top.directions.distance(&l).ok_or("top edge undetermined")?;
    ensure(dt < 1e-6, || format!("limit not parallel to the top edge ({dt:e})"))
}

fn random_coefficient(rng: &mut ChaCha8Rng) -> GaussianRational {
    let mut num = 0;
    while num == 0 {
        num = rng.gen_range(-20..=20);
    }
    GaussianRational::from_ratio(num, rng.gen_range(1..=12))
}

fn criterion_6() -> Outcome {
    let supports: [&[&[i64]]; 3] = [
        &[&[0, 0], &[1, 0], &[2, 0], &[1, 1], &[2, 1]],
        &[&[0, 0], &[1, 0], &[2, 0], &[0, 1], &[1, 1], &[0, 2]],
        &[&[0, 0, 0], &[1, 0, 0], &[2, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]],
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let mut tallies = Vec::new();
    for support in supports {
        let d = support[0].len();
        let exps = vertices(support);
        let lattice = newton_polytope(&LaurentPolynomial::from_terms(
            d,
            exps.iter().map(|m| (m.clone(), GaussianRational::from_integer(1))),
        ))
        .and_then(|p| p.face_lattice())
        .map_err(|e| e.to_string())?;
        let mut generic = 0;
        for trial in 0..100 {
            let h = LaurentPolynomial::from_terms(d, exps.iter().map(|m| (m.clone(), random_coefficient(&mut rng))));
            let mut ok = true;
            for face in lattice.faces.iter().filter(|f| (1..=2).contains(&f.dim)) {
                let set = face_polynomial(&h, face).and_then(|g| face_singularities(&g)).map_err(|e| e.to_string())?;
                if !set.is_empty() {
                    println!("    support {support:?}, trial {trial}: face {} singular: {set:?}", face.id);
                    ok = false;
                }
            }
            generic += usize::from(ok);
        }
        tallies.push(generic);
    }
    println!("    generic counts per support: {tallies:?}");
    ensure(tallies.iter().all(|&n| n >= 99), || format!("generic counts {tallies:?}"))
}

fn random_polynomial(rng: &mut ChaCha8Rng, d: usize) -> LaurentPolynomial {
    let n = rng.gen_range(2..=5);
    LaurentPolynomial::from_terms(
        d,
        (0..n).map(|_| (Exponent((0..d).map(|_| rng.gen_range(-2..=2)).collect()), random_coefficient(rng))),
    )
}

fn random_unit_like(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(rng.gen_range(0.5..2.0), rng.gen_range(0.0..std::f64::consts::TAU))
}

fn random_matrix(rng: &mut ChaCha8Rng, d: usize) -> IntMatrix {
    loop {
        let rows: Vec<Vec<i64>> = (0..d).map(|_| (0..d).map(|_| rng.gen_range(-2..=2)).collect()).collect();
        let m = IntMatrix::from_rows(&rows);
        if m.det() != 0 {
            return m;
        }
    }
}

fn eval_log_gradient(h: &LaurentPolynomial, z: &[Complex64]) -> Result<Vec<Complex64>, String> {
    h.log_gradient().iter().map(|p| p.evaluate_slice(z)).collect::<Result<_, _>>().map_err(|e| e.to_string())
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let mut worst_chain = 0.0f64;
    let mut worst_monomial = 0.0f64;
    for _ in 0..200 {
        let d = rng.gen_range(2..=3);
        let g = random_polynomial(&mut rng, d);
        let n = random_matrix(&mut rng, d);
        let z: Vec<Complex64> = (0..d).map(|_| random_unit_like(&mut rng)).collect();

        // chain rule for the monomial substitution
        let composed = g.substitute_monomial_map(&n).map_err(|e| e.to_string())?;
        let lhs = eval_log_gradient(&composed, &z)?;
        let image = apply_monomial_map(&n, &z).map_err(|e| e.to_string())?;
        let inner = eval_log_gradient(&g, &image)?;
        let nt = n.transpose();
        let rhs: Vec<Complex64> = (0..d).map(|i| (0..d).map(|j| inner[j] * nt.get(i, j) as f64).sum()).collect();
        worst_chain = worst_chain.max(relative_diff(&lhs, &rhs, 1e-300));

        // monomial multiple, at an exact zero of H
        let z0: Vec<GaussianRational> =
            (0..d).map(|_| GaussianRational::from_ratio(rng.gen_range(1..=9), rng.gen_range(1..=9))).collect();
        let shift = g.evaluate_exact(&z0).map_err(|e| e.to_string())?;
        let h = &g - &LaurentPolynomial::constant(d, shift);
        if h.is_zero() || h.num_terms() < 2 {
            continue;
        }
        let m = Exponent((0..d).map(|_| rng.gen_range(-2..=2)).collect());
        let hm = h.mul_monomial(&m, &GaussianRational::from_integer(1)).map_err(|e| e.to_string())?;
        let zc: Vec<Complex64> = z0.iter().map(GaussianRational::to_complex).collect();
        let scale = cpai_core::laurent::monomial_value(&m, &zc).map_err(|e| e.to_string())?;
        let lhs = eval_log_gradient(&hm, &zc)?;
        let rhs: Vec<Complex64> = eval_log_gradient(&h, &zc)?.iter().map(|v| v * scale).collect();
        worst_monomial = worst_monomial.max(relative_diff(&lhs, &rhs, 1e-300));
    }
    ensure(worst_chain < 1e-8, || format!("chain-rule identity off by {worst_chain:e}"))?;
    ensure(worst_monomial < 1e-8, || format!("monomial-multiple identity off by {worst_monomial:e}"))?;

    let mut worst_phi = 0.0f64;
    for text in [EDGE, QUADRILATERAL] {
        let h = if text == EDGE { xyz(text) } else { xy(text) };
        let (q, _) = scale_to_normal(&newton_polytope(&h).map_err(|e| e.to_string())?);
        let lattice = q.face_lattice().map_err(|e| e.to_string())?;
        for _ in 0..100 {
            let z: Vec<Complex64> = (0..h.dim()).map(|_| random_unit_like(&mut rng)).collect();
            let p = phi(&lattice.lattice_points, &ComplexPoint::new(z.clone())).map_err(|e| e.to_string())?;
            let back = reconstruct_point(&lattice, &p).map_err(|e| e.to_string())?;
            worst_phi = worst_phi.max(relative_diff(back.coords(), &z, 1e-300));
        }
    }
    ensure(worst_phi < 1e-10, || format!("embedding round trip off by {worst_phi:e}"))?;

    for (text, face) in
        [(EDGE, vec![vec![0, 0, 0], vec![2, 0, 0]]), (PARABOLOID, vec![vec![0, 0, 0], vec![0, 2, 0], vec![2, 0, 0]])]
    {
        let r = report(&xyz(text))?;
        let f = r.face_with_vertices(&face.into_iter().map(Exponent).collect::<Vec<_>>()).ok_or("missing face")?;
        let model = f.singular_points.iter().find_map(|p| p.model.as_ref()).ok_or("no local model")?;
        let fd = finite_difference_jacobian(model, 1e-5).map_err(|e| e.to_string())?;
        let diff = fd
            .iter()
            .zip(&model.jacobian)
            .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y).norm()))
            .fold(0.0, f64::max);
        ensure(diff < 1e-6, || format!("{text}: finite differences differ by {diff:e}"))?;
    }
    println!("    worst errors: chain {worst_chain:e}, monomial {worst_monomial:e}, round trip {worst_phi:e}");
    Ok(())
}

fn criterion_8() -> Outcome {
    for (text, d) in [(EDGE, 3), (PARABOLOID, 3), (QUADRILATERAL, 2), (PYRAMID, 3)] {
        let h = if d == 3 { xyz(text) } else { xy(text) };
        let (q, kappa) = scale_to_normal(&newton_polytope(&h).map_err(|e| e.to_string())?);
        let verdict = verify_normality(&q, 3, DEFAULT_BUDGET);
        ensure(verdict == Normality::Normal, || format!("{text} (kappa = {kappa}): {verdict:?}"))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    // `cargo test` passes harness flags such as `--nocapture`; only a
    // listing request needs an answer.
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return ExitCode::SUCCESS;
    }
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("edge example end to end", criterion_1),
        ("edge witness limits", criterion_2),
        ("paraboloid", criterion_3),
        ("pyramid apex transform", criterion_4),
        ("quadrilateral edge limit", criterion_5),
        ("genericity of random coefficients", criterion_6),
        ("identity suites", criterion_7),
        ("normality audit", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {} ({name}): PASS [{secs:.2}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL [{secs:.2}s]: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
