//! Fiber comparisons over every simplex of the base, pullback consequence
//! checks, and the report format shared by the command line tool.

mod consequences;
mod report;

use serde_json::json;

use crate::category::CategoryError;
use crate::homology::{homology, induced_map};
use crate::lifting::{certify_fibration_class, LiftError, Verdict};
use crate::simplicial::{pullback, restrict_over_simplex, vertex_subfiber, SMap, Simplex, SimplicialError};

pub use consequences::{euler_multiplicativity, fiber_constancy, vertex_fiber, ComponentConstancy, EulerCheck};
pub use report::{digest, Check, FiberComparison, NamedCertificate, SkeletonGroup, VerificationReport, QUALIFIER};

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
    #[error(transparent)]
    Lift(#[from] LiftError),
    #[error(transparent)]
    Category(#[from] CategoryError),
}

/// Compares `X|_{i(σ)} → X|_σ ← X|_{ℓ(σ)}` on homology and π0 for every
/// nondegenerate simplex `σ` of Y, grouped by degree.
pub fn realization_fibration_certificate(p: &SMap, cap: usize) -> Result<VerificationReport, VerifyError> {
    let y = p.target();
    let mut report = VerificationReport::new("realization_fibration");
    report.add_digest("map", p);
    report.cap = Some(cap);
    let mut groups: Vec<SkeletonGroup> = Vec::new();
    let mut failure: Option<String> = None;
    for s in y.nondegenerate() {
        let n = s.degree();
        let r = restrict_over_simplex(p, s)?;
        let hm = homology(&r.object);
        let leg = |k: usize| -> Result<bool, VerifyError> {
            let (fiber, incl) = vertex_subfiber(&r.to_simplex, k)?;
            Ok(induced_map(&incl, &homology(&fiber), &hm).is_iso())
        };
        let row = FiberComparison { simplex: y.cell_id(n, s.cell_index()).to_string(), initial_iso: leg(0)?, last_iso: leg(n)? };
        if failure.is_none() && !(row.initial_iso && row.last_iso) {
            failure = Some(row.simplex.clone());
        }
        if groups.last().is_none_or(|g| g.degree != n) {
            groups.push(SkeletonGroup { degree: n, simplices: Vec::new() });
        }
        groups.last_mut().unwrap().simplices.push(row);
    }
    report.fiber_comparisons = groups;
    report.verdict = match &failure {
        Some(id) => {
            report.witness = Some(format!("fiber inclusions over simplex {id} are not homology isomorphisms"));
            Verdict::Refuted
        }
        None => Verdict::Certified,
    };
    report.surface_truncation(p);
    Ok(report)
}

/// Certifies `P`, pulls it back along `F` and checks the consequences of
/// the pullback being a homotopy pullback.
pub fn ltg_check(f: &SMap, p: &SMap, cap: usize) -> Result<VerificationReport, VerifyError> {
    let mut report = VerificationReport::new("ltg_check");
    report.add_digest("F", f);
    report.add_digest("P", p);
    report.cap = Some(cap);
    let class = certify_fibration_class(p, cap);
    report.add_class("P", &class);
    let pb = pullback(f, p)?;
    if class.verdict() != Verdict::Certified {
        report.notes.push("hypotheses not established; consequences skipped".into());
        report.verdict = class.verdict();
        report.witness = [&class.inner, &class.cartesian, &class.cocartesian]
            .iter()
            .find_map(|c| c.witness.as_ref().map(|w| w.describe()));
        return Ok(report);
    }
    let pb_h = homology(&pb.object);
    report.details.insert("pullback_counts".into(), json!(pb.object.counts()));
    report.details.insert("pullback_homology".into(), pb_h.to_json());
    report.details.insert("pullback_homology_text".into(), json!(pb_h.render_reduced()));

    // (a) stability under pullback
    let pulled = certify_fibration_class(&pb.left, cap);
    report.add_class("P'", &pulled);
    report.checks.push(Check::new(
        "pullback_certified",
        Some(pulled.verdict() == Verdict::Certified),
        format!("P' is {} as a cartesian and cocartesian fibration", pulled.verdict().as_str()),
    ));

    // (b) fibers of P' against fibers of P computed directly
    let y2 = f.source();
    let mut mismatches = Vec::new();
    for v in 0..y2.cell_count(0) {
        let vs = Simplex::cell(0, v);
        let direct = homology(&*vertex_fiber(p, f.apply(vs))?);
        let pulled_fiber = homology(&*vertex_fiber(&pb.left, vs)?);
        if direct.signature() != pulled_fiber.signature() {
            mismatches.push(y2.cell_id(0, v).to_string());
        }
        if y2.cell_count(0) == 1 && y2.dimension() == Some(0) && direct.signature() != pb_h.signature() {
            mismatches.push(format!("{} (whole pullback)", y2.cell_id(0, v)));
        }
    }
    report.checks.push(Check::new(
        "vertex_fibers",
        Some(mismatches.is_empty()),
        if mismatches.is_empty() {
            format!("{} vertex fibers agree with the restrictions of P", y2.cell_count(0))
        } else {
            format!("fibers differ over {}", mismatches.join(", "))
        },
    ));

    // (c) constancy per component of Y
    let constancy = fiber_constancy(p)?;
    let constant = constancy.iter().all(|c| c.constant);
    report.details.insert("fiber_constancy".into(), serde_json::to_value(&constancy).expect("serializable"));
    report.checks.push(Check::new(
        "fiber_constancy",
        Some(constant),
        format!("{} components of the base", constancy.len()),
    ));

    // (d) Euler characteristics
    match euler_multiplicativity(p)? {
        Some(e) => {
            report.checks.push(Check::new("euler", Some(e.holds), e.describe()));
            report.details.insert("euler".into(), serde_json::to_value(e).expect("serializable"));
        }
        None => report.checks.push(Check::new("euler", None, "base is not connected or is truncated".into())),
    }

    report.verdict = report.checks_verdict();
    report.surface_truncation(p);
    report.surface_truncation(f);
    Ok(report)
}
