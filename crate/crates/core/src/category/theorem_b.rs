//! Comma category `F/D`, the fibers of its projection to `D` and the
//! transport between them, and the homological consequences.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use super::comma::{comma_category, slice_of, CommaCategory};
use super::nerve::{nerve, nerve_map, string_simplex};
use super::{FiniteCategory, Functor};
use crate::homology::{euler_characteristic, homology, induced_homology, pi0, HomologyProfile};
use crate::lifting::{certify_fibration_class, default_cap, transport_homology, Direction, FibrationClass, Verdict};
use crate::simplicial::standard::subset_of;
use crate::simplicial::{product, standard_simplex, SMap, Simplex, SimplicialSet};
use crate::verify::{fiber_constancy, vertex_fiber, VerifyError, QUALIFIER};

#[derive(Clone, Debug, Serialize)]
pub struct SliceSummary {
    pub object: String,
    pub objects: usize,
    pub homology: String,
    pub contractible: bool,
    /// Nerve of the slice and vertex fiber of `N(F/D) → N(D)` have the same
    /// cell counts and homology.
    pub matches_fiber: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct EdgeTransport {
    pub edge: String,
    pub source: String,
    pub target: String,
    pub source_fiber: String,
    pub target_fiber: String,
    pub leg_invertible: bool,
    pub equivalence: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremBReport {
    pub qualifier: &'static str,
    pub verdict: Verdict,
    pub cap: usize,
    pub truncated_at: Option<usize>,
    pub comma_objects: usize,
    pub comma_morphisms: usize,
    /// Certificates for `N(F/D) → N(D)`; the cocartesian one is required.
    pub projection: FibrationClass,
    pub slices: Vec<SliceSummary>,
    pub transports: Vec<EdgeTransport>,
    /// Every transport is a homology isomorphism and π0 bijection.
    pub hypothesis: bool,
    pub hypothesis_failure: Option<String>,
    pub all_slices_contractible: bool,
    /// Every fiber `F(c)/D` of the projection to C is homology-contractible.
    pub source_fibers_contractible: bool,
    /// `N(F/D) → N(C)` induces an isomorphism on homology.
    pub source_projection_iso: bool,
    /// `N(F/D) → N(D)` induces an isomorphism on homology.
    pub target_projection_iso: bool,
    pub comma_homology: String,
    pub source_homology: String,
    pub base_homology: String,
    /// The homotopy `N(F/D) × Δ^1 → N(D)` from `N(F)∘N(π_C)` to `N(π_D)`.
    pub homotopy_audit: bool,
    pub fiber_constancy: Option<bool>,
    pub euler: Option<Value>,
    pub notes: Vec<String>,
}

impl TheoremBReport {
    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Verdict::Certified => 0,
            Verdict::Refuted => 1,
            Verdict::Inconclusive => 2,
        }
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "theorem_b: {} ({})", self.verdict.as_str(), self.qualifier);
        let _ = writeln!(out, "  comma category: {} objects, {} morphisms", self.comma_objects, self.comma_morphisms);
        let _ = writeln!(out, "  projection to D: cocartesian {}", self.projection.cocartesian.verdict.as_str());
        for s in &self.slices {
            let _ = writeln!(out, "  slice over {}: {} objects, homology {}", s.object, s.objects, s.homology);
        }
        for t in &self.transports {
            let _ = writeln!(
                out,
                "  transport along {}: {} -> {}  {}",
                t.edge,
                t.source_fiber,
                t.target_fiber,
                if t.equivalence { "equivalence" } else { "not an equivalence" }
            );
        }
        let _ = writeln!(out, "  hypothesis: {}", if self.hypothesis { "holds" } else { "fails" });
        if let Some(w) = &self.hypothesis_failure {
            let _ = writeln!(out, "  witness: {w}");
        }
        let _ = writeln!(out, "  H(N(F/D)) = {}, H(N(C)) = {}, H(N(D)) = {}", self.comma_homology, self.source_homology, self.base_homology);
        let _ = writeln!(out, "  projection to C induces iso: {}", self.source_projection_iso);
        let _ = writeln!(out, "  homotopy audit: {}", if self.homotopy_audit { "pass" } else { "FAIL" });
        for n in &self.notes {
            let _ = writeln!(out, "  note: {n}");
        }
        out
    }
}

fn describe_fiber(h: &HomologyProfile, x: &SimplicialSet) -> String {
    if x.is_empty() {
        "empty".into()
    } else {
        h.render_reduced()
    }
}

/// Runs the comma-category pipeline for `F: C → D` with nerves cut off at
/// `nerve_cap` when a category has non-identity cycles.
pub fn theorem_b_report(f: &Functor, nerve_cap: usize) -> Result<TheoremBReport, VerifyError> {
    let comma = comma_category(f)?;
    let (c, d) = (f.source(), f.target());
    let ncomma = Arc::new(nerve(&comma.category, nerve_cap));
    let nc = Arc::new(nerve(c, nerve_cap));
    let nd = Arc::new(nerve(d, nerve_cap));
    let to_d = nerve_map(&comma.to_target, ncomma.clone(), nd.clone());
    let to_c = nerve_map(&comma.to_source, ncomma.clone(), nc.clone());
    let mut notes = Vec::new();
    let truncated_at = [ncomma.truncated_at(), nc.truncated_at(), nd.truncated_at()].into_iter().flatten().min();
    if let Some(t) = truncated_at {
        notes.push(format!("nerves truncated at degree {t}; homology reliable below it"));
    }

    let cap = default_cap(&to_d);
    let projection = certify_fibration_class(&to_d, cap);

    let mut slices = Vec::with_capacity(d.object_count());
    for o in 0..d.object_count() {
        let s = slice_of(&comma, o);
        let ns = nerve(&s, nerve_cap);
        let hs = homology(&ns);
        let fiber = vertex_fiber(&to_d, Simplex::cell(0, nd.find(0, d.object_id(o)).expect("object vertex")))?;
        let hf = homology(&fiber);
        slices.push(SliceSummary {
            object: d.object_id(o).to_string(),
            objects: s.object_count(),
            homology: describe_fiber(&hs, &ns),
            contractible: hs.is_point_like(),
            matches_fiber: ns.counts() == fiber.counts() && hs.signature() == hf.signature(),
        });
    }

    let mut transports = Vec::new();
    for e in 0..nd.cell_count(1) {
        let edge = Simplex::cell(1, e);
        let t = transport_homology(&to_d, edge, Direction::Forward)?;
        let m = d.morphism(nd.cell_id(1, e)).expect("edge is a morphism");
        transports.push(EdgeTransport {
            edge: nd.cell_id(1, e).to_string(),
            source: d.object_id(d.src(m)).to_string(),
            target: d.object_id(d.tgt(m)).to_string(),
            source_fiber: describe_fiber(&t.source_homology, &t.source_fiber),
            target_fiber: describe_fiber(&t.target_homology, &t.target_fiber),
            leg_invertible: t.leg_invertible,
            equivalence: t.is_equivalence(),
        });
    }
    let hypothesis_failure = transports.iter().find(|t| !t.equivalence).map(|t| {
        format!(
            "transport along {} compares the fiber over {} ({}) with the fiber over {} ({})",
            t.edge, t.source, t.source_fiber, t.target, t.target_fiber
        )
    });
    let hypothesis = hypothesis_failure.is_none();

    let source_fibers_contractible = (0..nc.cell_count(0))
        .map(|v| vertex_fiber(&to_c, Simplex::cell(0, v)).map(|x| homology(&x).is_point_like()))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .all(|b| b);
    let source_projection_iso = induced_homology(&to_c).is_iso();
    let target_projection_iso = induced_homology(&to_d).is_iso();
    let homotopy_audit = audit_comma_homotopy(f, &comma, &ncomma, &nc, &nd, &to_c, &to_d);

    let mut fiber_constancy_ok = None;
    let mut euler = None;
    if hypothesis {
        fiber_constancy_ok = Some(fiber_constancy(&to_d)?.iter().all(|c| c.constant));
        if pi0(&nd).count == 1 {
            let fiber = vertex_fiber(&to_d, Simplex::cell(0, 0))?;
            if let (Some(total), Some(fe), Some(base)) = (
                euler_characteristic(&nc).exact(),
                euler_characteristic(&fiber).exact(),
                euler_characteristic(&nd).exact(),
            ) {
                euler = Some(json!({"source": total, "fiber": fe, "base": base, "holds": total == fe * base}));
            }
        }
    } else {
        notes.push("hypothesis fails; consequence checks skipped".into());
    }

    let required = projection.inner.verdict.and(projection.cocartesian.verdict);
    let consequences_ok = source_fibers_contractible
        && source_projection_iso
        && homotopy_audit
        && fiber_constancy_ok != Some(false)
        && euler.as_ref().is_none_or(|e| e["holds"] == json!(true));
    let mut verdict = if !hypothesis || !consequences_ok { Verdict::Refuted } else { Verdict::Certified };
    verdict = verdict.and(required);
    if verdict == Verdict::Certified && truncated_at.is_some() {
        verdict = Verdict::Inconclusive;
    }

    Ok(TheoremBReport {
        qualifier: QUALIFIER,
        verdict,
        cap,
        truncated_at,
        comma_objects: comma.category.object_count(),
        comma_morphisms: comma.category.morphism_count(),
        projection,
        all_slices_contractible: slices.iter().all(|s| s.contractible),
        slices,
        transports,
        hypothesis,
        hypothesis_failure,
        source_fibers_contractible,
        source_projection_iso,
        target_projection_iso,
        comma_homology: homology(&ncomma).render_reduced(),
        source_homology: homology(&nc).render_reduced(),
        base_homology: homology(&nd).render_reduced(),
        homotopy_audit,
        fiber_constancy: fiber_constancy_ok,
        euler,
        notes,
    })
}

/// Builds `N(F/D) × Δ^1 → N(D)` from the arrow components `u: F(c) → d`
/// and checks its two ends.
pub fn comma_homotopy(f: &Functor, comma: &CommaCategory, ncomma: &Arc<SimplicialSet>, nd: &Arc<SimplicialSet>) -> Option<(SMap, crate::simplicial::FiberProduct)> {
    let d: &FiniteCategory = f.target();
    let cat = &comma.category;
    let interval = Arc::new(standard_simplex(1));
    let fp = product(ncomma, &interval).ok()?;
    let object_at = |s: Simplex, t: usize| -> usize {
        let v = ncomma.vertex(s, t);
        cat.object(ncomma.cell_id(0, v.cell_index())).expect("vertex is an object")
    };
    let morphism_at = |s: Simplex, t: usize| -> usize {
        let e = ncomma.edge(s, t, t + 1);
        if e.is_degenerate() {
            cat.identity(object_at(s, t))
        } else {
            cat.morphism(ncomma.cell_id(1, e.cell_index())).expect("edge is a morphism")
        }
    };
    let map = SMap::from_fn(fp.object.clone(), nd.clone(), |s| {
        let a = fp.left.apply(s);
        let b = fp.right.apply(s);
        let verts = subset_of(&interval, Simplex::cell(b.cell_dim(), b.cell_index()));
        let level: Vec<usize> = b.surjection().iter().map(|&t| verts[t]).collect();
        let n = a.degree();
        let start_obj = object_at(a, 0);
        let start = if level[0] == 0 { f.on_object(comma.object_data[start_obj].0) } else { comma.base_object(start_obj) };
        let string: Vec<usize> = (0..n)
            .map(|t| {
                let m = morphism_at(a, t);
                let (h, v) = comma.morphism_data[m];
                match (level[t], level[t + 1]) {
                    (0, 0) => f.on_morphism(h),
                    (1, 1) => v,
                    _ => {
                        let u = comma.object_data[object_at(a, t)].1;
                        d.compose(v, u).expect("composable")
                    }
                }
            })
            .collect();
        string_simplex(d, nd, start, &string)
    })
    .ok()?;
    Some((map, fp))
}

fn audit_comma_homotopy(
    f: &Functor,
    comma: &CommaCategory,
    ncomma: &Arc<SimplicialSet>,
    nc: &Arc<SimplicialSet>,
    nd: &Arc<SimplicialSet>,
    to_c: &SMap,
    to_d: &SMap,
) -> bool {
    let Some((h, fp)) = comma_homotopy(f, comma, ncomma, nd) else {
        return false;
    };
    let nf = nerve_map(f, nc.clone(), nd.clone());
    let interval = fp.right.target();
    let ends = [interval.find(0, "0"), interval.find(0, "1")];
    ncomma.nondegenerate().all(|s| {
        let constant = vec![0; s.degree() + 1];
        ends.iter().enumerate().all(|(k, v)| {
            let b = Simplex::cell(0, v.expect("Δ^1 vertex")).degenerate_by(&constant);
            let Some(ps) = fp.pair(s, b) else { return false };
            let expected = if k == 0 { nf.apply(to_c.apply(s)) } else { to_d.apply(s) };
            h.apply(ps) == expected
        })
    })
}
