use std::collections::HashMap;

use serde::Serialize;
use serde_json::Value;

use crate::simplicial::{opposite_map, SMap, Simplex};

use super::context::LiftContext;
use super::horn::HornProblem;
use super::{Certificate, LiftError, Verdict, Witness};

/// `max(dim X, dim Y) + 2`.
pub fn default_cap(p: &SMap) -> usize {
    let dx = p.source().dimension().unwrap_or(0);
    let dy = p.target().dimension().unwrap_or(0);
    dx.max(dy) + 2
}

/// Clamps the cap to the degrees in which truncated inputs are complete.
fn effective_cap(p: &SMap, cap: usize) -> (usize, Vec<String>) {
    let mut eff = cap;
    let mut notes = Vec::new();
    for (name, t) in [("source", p.source().truncated_at()), ("target", p.target().truncated_at())] {
        if let Some(t) = t {
            if t < eff {
                notes.push(format!("{name} is truncated at degree {t}; cap lowered from {cap} to {t}"));
                eff = t;
            }
        }
    }
    (eff, notes)
}

fn finish(verdict: Verdict, cap: usize, clamped: bool, count: u64, witness: Option<Witness>, mut notes: Vec<String>) -> Certificate {
    let verdict = if verdict == Verdict::Certified && clamped { Verdict::Inconclusive } else { verdict };
    if verdict == Verdict::Certified {
        notes.push(format!("all lifting problems up to degree {cap} solved"));
    }
    Certificate { verdict, cap, problems_checked: count, witness, notes }
}

fn to_horn(ctx: &LiftContext, n: usize, i: usize, sigma: u32, faces: &[Option<u32>]) -> HornProblem {
    HornProblem {
        n,
        i,
        faces: faces.iter().map(|f| f.map(|k| ctx.x.simplices[n - 1][k as usize])).collect(),
        base: ctx.y.simplices[n][sigma as usize],
    }
}

fn inner_with(ctx: &LiftContext, cap: usize) -> (Option<HornProblem>, u64) {
    let mut count = 0u64;
    let mut failure = None;
    for n in 2..=cap {
        for i in 1..n {
            for sigma in 0..ctx.y.simplices[n].len() as u32 {
                ctx.for_each_horn(n, i, sigma, None, &mut |faces| {
                    count += 1;
                    if ctx.solve(n, sigma, faces).is_none() {
                        failure = Some(to_horn(ctx, n, i, sigma, faces));
                        return false;
                    }
                    true
                });
                if failure.is_some() {
                    return (failure, count);
                }
            }
        }
    }
    (None, count)
}

/// Every inner horn `Λ^n_i`, `2 ≤ n ≤ cap`, `0 < i < n`, over every
/// n-simplex of Y.
pub fn certify_inner_fibration(p: &SMap, cap: usize) -> Certificate {
    let (eff, notes) = effective_cap(p, cap);
    let ctx = LiftContext::new(p, eff.max(1));
    let (failure, count) = inner_with(&ctx, eff);
    inner_certificate(p, eff, eff < cap, failure, count, notes)
}

fn inner_certificate(p: &SMap, cap: usize, clamped: bool, failure: Option<HornProblem>, count: u64, notes: Vec<String>) -> Certificate {
    match failure {
        Some(h) => finish(
            Verdict::Refuted,
            cap,
            clamped,
            count,
            Some(Witness::Horn { problem: h.to_problem(p, false) }),
            notes,
        ),
        None => finish(Verdict::Certified, cap, clamped, count, None, notes),
    }
}

/// First `Λ^n_n` problem with last edge `f` that has no lift.
pub(super) fn cartesian_edge_failure(ctx: &LiftContext, f: Simplex, cap: usize) -> (Option<HornProblem>, u64) {
    let (x, y) = (ctx.xset(), ctx.yset());
    let pf = ctx.p.apply(f);
    let mut count = 0u64;
    for n in 2..=cap {
        let ends_in_f: Vec<bool> = ctx.x.simplices[n - 1].iter().map(|&s| x.edge(s, n - 2, n - 1) == f).collect();
        let filter = |k: u32| ends_in_f[k as usize];
        for sigma in 0..ctx.y.simplices[n].len() as u32 {
            if y.edge(ctx.y.simplices[n][sigma as usize], n - 1, n) != pf {
                continue;
            }
            let mut failure = None;
            ctx.for_each_horn(n, n, sigma, Some(&filter), &mut |faces| {
                count += 1;
                if ctx.solve(n, sigma, faces).is_none() {
                    failure = Some(to_horn(ctx, n, n, sigma, faces));
                    return false;
                }
                true
            });
            if failure.is_some() {
                return (failure, count);
            }
        }
    }
    (None, count)
}

fn edge_certificate(p: &SMap, f: Simplex, cap: usize, opposite: bool) -> Result<Certificate, LiftError> {
    if f.degree() != 1 {
        return Err(LiftError::Precondition(format!("expected an edge, got a simplex of degree {}", f.degree())));
    }
    let (eff, notes) = effective_cap(p, cap);
    let ctx = LiftContext::new(p, eff.max(1));
    let (failure, count) = cartesian_edge_failure(&ctx, f, eff);
    Ok(match failure {
        Some(h) => finish(
            Verdict::Refuted,
            eff,
            eff < cap,
            count,
            Some(Witness::Horn { problem: h.to_problem(p, opposite) }),
            notes,
        ),
        None => finish(Verdict::Certified, eff, eff < cap, count, None, notes),
    })
}

/// Right lifting against `Λ^n_n ⊂ Δ^n` with last edge `f`, `2 ≤ n ≤ cap`.
pub fn is_cartesian_edge(p: &SMap, f: Simplex, cap: usize) -> Result<Certificate, LiftError> {
    edge_certificate(p, f, cap, false)
}

/// The cartesian test for `f` in the opposite map.
pub fn is_cocartesian_edge(p: &SMap, f: Simplex, cap: usize) -> Result<Certificate, LiftError> {
    edge_certificate(&opposite_map(p), f.opposite(), cap, true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FibrationClass {
    pub inner: Certificate,
    pub cartesian: Certificate,
    pub cocartesian: Certificate,
}

impl FibrationClass {
    /// Cartesian and cocartesian (both include the inner condition).
    pub fn verdict(&self) -> Verdict {
        self.inner.verdict.and(self.cartesian.verdict).and(self.cocartesian.verdict)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("certificates serialize")
    }
}

/// For every edge `g` of Y and vertex `c` over `d_0 g`, the least edge over
/// `g` ending at `c` that is cartesian.
fn cartesian_class(p: &SMap, cap: usize, clamped: bool, inner: &Certificate, opposite: bool, notes: Vec<String>) -> Certificate {
    if inner.verdict == Verdict::Refuted {
        let mut notes = notes;
        notes.push("not an inner fibration".into());
        return Certificate {
            verdict: Verdict::Refuted,
            cap,
            problems_checked: 0,
            witness: inner.witness.clone(),
            notes,
        };
    }
    let ctx = LiftContext::new(p, cap.max(1));
    let mut cache: HashMap<u32, Option<HornProblem>> = HashMap::new();
    let mut count = 0u64;
    for g in 0..ctx.y.simplices[1].len() {
        let end = ctx.y.faces[1][g][0];
        for c in 0..ctx.x.simplices[0].len() as u32 {
            if ctx.image[0][c as usize] != end {
                continue;
            }
            let candidates: Vec<u32> =
                ctx.over[1][g].iter().copied().filter(|&f| ctx.x.faces[1][f as usize][0] == c).collect();
            let mut found = false;
            for &f in &candidates {
                let failure = cache.entry(f).or_insert_with(|| {
                    let (failure, k) = cartesian_edge_failure(&ctx, ctx.x.simplices[1][f as usize], cap);
                    count += k;
                    failure
                });
                if failure.is_none() {
                    found = true;
                    break;
                }
            }
            if !found {
                let stuck = candidates.first().and_then(|f| cache[f].as_ref()).map(|h| h.to_problem(p, opposite));
                let witness = Witness::MissingLift {
                    base_edge: p.target().to_ref(ctx.y.simplices[1][g]),
                    vertex: p.source().to_ref(ctx.x.simplices[0][c as usize]),
                    candidates: candidates.len(),
                    stuck,
                    opposite,
                };
                return finish(Verdict::Refuted, cap, clamped, count, Some(witness), notes);
            }
        }
    }
    finish(Verdict::Certified, cap, clamped, count, None, notes)
}

/// Inner, cartesian and cocartesian certificates; the cocartesian one is the
/// cartesian test applied to the opposite map.
pub fn certify_fibration_class(p: &SMap, cap: usize) -> FibrationClass {
    let (eff, notes) = effective_cap(p, cap);
    let clamped = eff < cap;
    let ctx = LiftContext::new(p, eff.max(1));
    let (failure, count) = inner_with(&ctx, eff);
    drop(ctx);
    let inner = inner_certificate(p, eff, clamped, failure, count, notes.clone());
    let cartesian = cartesian_class(p, eff, clamped, &inner, false, notes.clone());
    let op = opposite_map(p);
    let cocartesian = cartesian_class(&op, eff, clamped, &inner, true, notes);
    FibrationClass { inner, cartesian, cocartesian }
}
