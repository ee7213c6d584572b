//! Plain-text rendering of command outputs.

use std::fmt::Write;

use num_complex::Complex64;

use cpai_core::cpai::{CpaiReport, DirectionSet, FaceVerdict, Heightedness, SingularSet};
use cpai_core::polytope::Normality;
use cpai_core::toric::HeightLimit;
use cpai_core::witness::{ConvergenceEstimate, Limit};

use crate::{FixtureOutcome, PolytopeDump, TransformDump, VerifyOutput};

fn num(x: f64) -> String {
    let x = if x.abs() < 1e-12 { 0.0 } else { x };
    format!("{x:.6}").trim_end_matches('0').trim_end_matches('.').to_string()
}

fn complex(z: &Complex64) -> String {
    if z.im.abs() < 1e-12 {
        num(z.re)
    } else if z.re.abs() < 1e-12 {
        format!("{}i", num(z.im))
    } else {
        format!("{}{}{}i", num(z.re), if z.im < 0.0 { "-" } else { "+" }, num(z.im.abs()))
    }
}

fn vector(v: &[Complex64]) -> String {
    format!("[{}]", v.iter().map(complex).collect::<Vec<_>>().join(", "))
}

fn projective(v: &[Complex64]) -> String {
    format!("[{}]", v.iter().map(complex).collect::<Vec<_>>().join(" : "))
}

fn directions(set: &DirectionSet) -> String {
    match set {
        DirectionSet::Single { direction } => format!("single {}", projective(direction)),
        DirectionSet::FaceParallel { basis } => format!("parallel to the face, basis {basis:?}"),
        DirectionSet::Subspace { basis, codim } => format!(
            "subspace of codimension {codim} spanned by {}",
            basis.iter().map(|b| vector(b)).collect::<Vec<_>>().join(", ")
        ),
        DirectionSet::Union { members } => {
            format!("union of {}", members.iter().map(directions).collect::<Vec<_>>().join("; "))
        }
        DirectionSet::Undetermined { reason } => format!("undetermined ({reason})"),
    }
}

fn face(out: &mut String, f: &FaceVerdict) {
    let kind = match f.generic {
        Some(true) => "generic",
        Some(false) => "non-generic",
        None => "undetermined",
    };
    let verts: Vec<_> = f.vertices.iter().map(|v| format!("{:?}", v.0)).collect();
    let _ = writeln!(out, "face {} (dim {}, codim {}) {}: {}", f.face_id, f.dim, f.codim, kind, verts.join(" "));
    let _ = writeln!(out, "  face polynomial: {}", f.face_polynomial);
    match &f.singular_set {
        SingularSet::Isolated { points } if !points.is_empty() => {
            for p in points {
                let _ = writeln!(out, "  singular point: {}", vector(&p.coordinates));
            }
        }
        SingularSet::Isolated { .. } => {}
        SingularSet::Undetermined { reason } => {
            let _ = writeln!(out, "  singular set: undetermined ({reason})");
        }
    }
    for p in &f.singular_points {
        if let Some(m) = &p.model {
            let _ = writeln!(out, "  transformed: {}", m.transformed);
            let _ = writeln!(out, "  Z = {}", vector(&m.z));
            let rows: Vec<_> = m.jacobian.iter().map(|r| vector(r)).collect();
            let _ = writeln!(
                out,
                "  J = [{}] (rank {}{})",
                rows.join(", "),
                m.rank,
                if m.rank_is_exact { ", exact" } else { "" }
            );
        }
    }
    let _ = writeln!(out, "  directions: {}", directions(&f.directions));
    let _ = writeln!(out, "  heighted: {}", heighted(f.heighted));
    for cv in &f.cvai {
        let _ = writeln!(out, "  critical value for r = {:?}: {}", cv.direction, height(&cv.value));
    }
    for c in &f.caveats {
        let _ = writeln!(out, "  caveat: {c}");
    }
}

fn heighted(h: Heightedness) -> &'static str {
    match h {
        Heightedness::AllHeighted => "all heighted",
        Heightedness::CurveDependent => "curve dependent",
        Heightedness::Undetermined => "undetermined",
    }
}

fn height(h: &HeightLimit) -> String {
    match h {
        HeightLimit::Finite(x) => num(*x),
        HeightLimit::PlusInfinity => "+inf".into(),
        HeightLimit::MinusInfinity => "-inf".into(),
        HeightLimit::Undetermined => "undetermined".into(),
    }
}

pub fn report(r: &CpaiReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "H = {} in ({})", r.polynomial, r.variables.join(", "));
    let p = &r.newton_polytope;
    let verts: Vec<_> = p.vertices.iter().map(|v| format!("{:?}", v.0)).collect();
    let _ = writeln!(
        out,
        "Newton polytope: {} vertices {}, {} facets, kappa = {}",
        verts.len(),
        verts.join(" "),
        p.facets.len(),
        p.kappa
    );
    let s = &r.summary;
    let _ = writeln!(
        out,
        "generic faces: {:?}\nnon-generic faces: {:?}\nundetermined faces: {:?}",
        s.generic_faces, s.nongeneric_faces, s.undetermined_faces
    );
    for f in &r.faces {
        face(&mut out, f);
    }
    for c in &r.caveats {
        let _ = writeln!(out, "caveat: {c}");
    }
    out
}

pub fn polytope(p: &PolytopeDump) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "dimension {} (ambient {}), kappa = {}", p.affine_dim, p.dim, p.kappa);
    let _ = writeln!(out, "lattice points: {} in P, {} in kappa*P", p.lattice_points, p.dilated_lattice_points);
    let normality = match &p.normality {
        Normality::Normal => "normal".to_string(),
        Normality::NotNormal { k, witness } => format!("not normal, {:?} is not a sum of {k} points", witness.0),
        Normality::Unverified => "unverified (too many points)".to_string(),
    };
    let _ = writeln!(out, "normality of kappa*P up to k = 3: {normality}");
    for h in &p.facets {
        let _ = writeln!(out, "facet: {:?} . x >= {}", h.normal, h.offset);
    }
    for f in &p.faces {
        let verts: Vec<_> = f.face.vertices.iter().map(|v| format!("{:?}", v.0)).collect();
        let _ = writeln!(
            out,
            "face {} (dim {}, codim {}, {} facets{}): {}",
            f.face.id,
            f.face.dim,
            f.face.codim,
            f.face.tight_halfspaces.len(),
            if f.modified_simple { "" } else { ", not modified simple" },
            verts.join(" ")
        );
    }
    out
}

pub fn transform(t: &TransformDump) -> String {
    let mut out = String::new();
    if let Some(id) = t.face {
        let _ = writeln!(out, "face {id}");
    }
    let _ = writeln!(out, "N^T = {:?}", t.transpose);
    let _ = writeln!(out, "det = {}, anchor = {:?}", t.transform.det, t.transform.anchor.0);
    let _ = writeln!(out, "transformed: {}", t.transformed);
    for w in &t.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    for c in &t.transform.caveats {
        let _ = writeln!(out, "caveat: {c}");
    }
    out
}

fn estimate(out: &mut String, e: &ConvergenceEstimate) {
    let dir = match (&e.best_limit(), &e.projective_limit) {
        (Some(l), _) => projective(l),
        (None, Limit::Divergent) => "divergent".into(),
        (None, _) => "inconclusive".into(),
    };
    let _ = writeln!(out, "{}: direction {}", e.label, dir);
    if let Some(h) = &e.height_limit {
        let _ = writeln!(
            out,
            "  height: {}",
            match h {
                Limit::Converged(v) => num(*v),
                Limit::Divergent => "divergent".into(),
                Limit::Inconclusive => "inconclusive".into(),
            }
        );
    }
    for n in &e.notes {
        let _ = writeln!(out, "  note: {n}");
    }
}

pub fn verify(v: &VerifyOutput) -> String {
    let mut out = String::new();
    for e in &v.estimates {
        estimate(&mut out, e);
    }
    for d in &v.cross_check.discrepancies {
        let _ = writeln!(
            out,
            "discrepancy: {} on face {}: {} at distance {:e}",
            d.curve,
            d.face_id,
            projective(&d.limit),
            d.distance
        );
    }
    for n in &v.cross_check.notes {
        let _ = writeln!(out, "note: {n}");
    }
    let _ = writeln!(out, "{} discrepancies", v.cross_check.discrepancies.len());
    out
}

pub fn examples(outcomes: &[FixtureOutcome]) -> String {
    let mut out = String::new();
    for o in outcomes {
        let _ = writeln!(out, "{}: {} ({} checks)", o.name, if o.passed { "ok" } else { "MISMATCH" }, o.checks);
        for m in &o.mismatches {
            let _ = writeln!(out, "  {m}");
        }
    }
    out
}
