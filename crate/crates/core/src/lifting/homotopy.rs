use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::simplicial::standard::subset_of;
use crate::simplicial::{
    inclusion, opposite_map, product, standard_simplex, sub_object, FiberProduct, SMap, Simplex, SimplexRef,
    SimplicialSet,
};

use super::certify::{cartesian_edge_failure, is_cocartesian_edge};
use super::context::LiftContext;
use super::horn::{solve_horn_problem, HornProblem};
use super::{LiftError, LiftingProblem, Verdict, Witness};

/// `I × Δ^1` together with the sub-object `U = I×{0} ∪ J×Δ^1` on which a
/// partial lift is prescribed.
#[derive(Clone, Debug)]
pub struct Prism {
    pub base: Arc<SimplicialSet>,
    pub sub: Arc<SimplicialSet>,
    pub incl: SMap,
    pub total: FiberProduct,
    pub domain: Arc<SimplicialSet>,
    pub domain_incl: SMap,
}

impl Prism {
    fn interval(&self) -> &Arc<SimplicialSet> {
        self.total.right.target()
    }

    /// The edge `(v,0) → (v,1)` of the prism over a vertex of I.
    pub fn vertical_edge(&self, v: usize) -> Simplex {
        let a = Simplex::cell(0, v).degeneracy(0);
        let e = self.interval().find(1, "0,1").expect("Δ^1 has an edge");
        self.total.pair(a, Simplex::cell(1, e)).expect("vertical edge")
    }

    /// The (n+1)-cell `(s_j τ, 0^{j+1} 1^{n+1-j})` of the prism over `τ`.
    fn chain_cell(&self, tau: Simplex, j: usize) -> Simplex {
        let n = tau.degree();
        let values: Vec<usize> = (0..=n + 1).map(|t| usize::from(t > j)).collect();
        let e = self.interval().find(1, "0,1").expect("Δ^1 has an edge");
        self.total.pair(tau.degeneracy(j), Simplex::from_surjection(&values, 1, e)).expect("prism cell")
    }
}

/// Builds `I × Δ^1` and `U` for an injective `incl: J → I`.
pub fn prism(incl: &SMap) -> Result<Prism, LiftError> {
    if !incl.is_injective() {
        return Err(LiftError::Precondition("J → I must be injective".into()));
    }
    let base = incl.target().clone();
    let sub = incl.source().clone();
    let interval = Arc::new(standard_simplex(1));
    let total = product(&base, &interval)?;
    let image: HashSet<Simplex> = sub.nondegenerate().map(|s| incl.apply(s)).collect();
    let v0 = interval.find(0, "0").expect("Δ^1 has vertex 0");
    let domain = Arc::new(sub_object(&total.object, |s| {
        let a = total.left.apply(s);
        let b = total.right.apply(s);
        (b.cell_dim() == 0 && b.cell_index() == v0) || image.contains(&Simplex::cell(a.cell_dim(), a.cell_index()))
    })?);
    let domain_incl = inclusion(domain.clone(), total.object.clone())?;
    Ok(Prism { base, sub, incl: incl.clone(), total, domain, domain_incl })
}

#[derive(Clone, Debug)]
pub struct HomotopyLift {
    pub map: SMap,
    /// Vertex of I and the image of its vertical edge.
    pub designated: Vec<(SimplexRef, SimplexRef)>,
    /// Horn problems solved while filling prisms.
    pub horns_solved: usize,
}

fn inconclusive(reason: String, problem: LiftingProblem) -> LiftError {
    LiftError::Inconclusive { reason, problem: Box::new(problem) }
}

fn stuck_problem(cert: &super::Certificate) -> Option<LiftingProblem> {
    match &cert.witness {
        Some(Witness::Horn { problem }) => Some(problem.clone()),
        Some(Witness::MissingLift { stuck, .. }) => stuck.clone(),
        None => None,
    }
}

/// Extends `f0: U → X` to a lift `F: I×Δ^1 → X` of `base` whose vertical
/// edges are cocartesian. Cells of I outside J are handled by increasing
/// dimension; over an n-cell the prism is filled through its chain of
/// (n+1)-cells starting from the one containing `τ×{0}`.
pub fn lift_homotopy(p: &SMap, prism: &Prism, f0: &SMap, base: &SMap, cap: usize) -> Result<HomotopyLift, LiftError> {
    let (x, y) = (p.source(), p.target());
    let total = &prism.total.object;
    if **f0.source() != *prism.domain || **f0.target() != **x {
        return Err(LiftError::Precondition("F0 must be a map U → X".into()));
    }
    if **base.source() != **total || **base.target() != **y {
        return Err(LiftError::Precondition("the homotopy must be a map I×Δ^1 → Y".into()));
    }
    for s in prism.domain.nondegenerate() {
        let t = prism.domain_incl.apply(s);
        if p.apply(f0.apply(s)) != base.apply(t) {
            return Err(LiftError::Precondition(format!(
                "p∘F0 and the homotopy disagree on {}",
                prism.domain.describe(s)
            )));
        }
    }

    let mut images: Vec<Vec<Option<Simplex>>> = (0..total.counts().len()).map(|d| vec![None; total.cell_count(d)]).collect();
    for s in prism.domain.nondegenerate() {
        let t = prism.domain_incl.apply(s);
        images[t.cell_dim()][t.cell_index()] = Some(f0.apply(s));
    }
    let eval = |images: &Vec<Vec<Option<Simplex>>>, s: Simplex| {
        images[s.cell_dim()][s.cell_index()].map(|img| img.degenerate_by(&s.surjection()))
    };

    let sub_vertices: HashSet<usize> =
        (0..prism.sub.cell_count(0)).map(|v| prism.incl.apply(Simplex::cell(0, v)).cell_index()).collect();
    for &v in &sub_vertices {
        let edge = prism.vertical_edge(v);
        let f = eval(&images, edge).expect("F0 is defined on J×Δ^1");
        let cert = is_cocartesian_edge(p, f, cap)?;
        if cert.verdict != Verdict::Certified {
            let problem = stuck_problem(&cert).unwrap_or_else(|| edge_problem(p, f));
            return Err(inconclusive(
                format!("F0 sends the vertical edge over {} to a non-cocartesian edge", prism.base.cell_id(0, v)),
                problem,
            ));
        }
    }

    let op = opposite_map(p);
    let ctx = LiftContext::new(&op, cap.max(1));
    let mut edge_cache: HashMap<Simplex, bool> = HashMap::new();
    let mut designated = Vec::new();
    let mut horns = 0usize;
    let image_of_sub: HashSet<Simplex> = prism.sub.nondegenerate().map(|s| prism.incl.apply(s)).collect();

    for tau in prism.base.nondegenerate() {
        if image_of_sub.contains(&tau) {
            continue;
        }
        let n = tau.degree();
        if n == 0 {
            let edge = prism.vertical_edge(tau.cell_index());
            let start = eval(&images, x_vertex_of(&prism.total, edge, 0)).expect("I×{0} is prescribed");
            let g = base.apply(edge);
            let candidates: Vec<Simplex> = x
                .simplices(1)
                .into_iter()
                .filter(|&f| p.apply(f) == g && x.face(f, 1) == start)
                .collect();
            let mut chosen = None;
            for &f in &candidates {
                let ok = *edge_cache
                    .entry(f)
                    .or_insert_with(|| cartesian_edge_failure(&ctx, f.opposite(), cap).0.is_none());
                if ok {
                    chosen = Some(f);
                    break;
                }
            }
            let f = match chosen {
                Some(f) => f,
                None => {
                    let problem = candidates
                        .first()
                        .and_then(|&f| cartesian_edge_failure(&ctx, f.opposite(), cap).0)
                        .map(|h| h.to_problem(&op, true))
                        .unwrap_or_else(|| LiftingProblem {
                            n: 1,
                            i: 0,
                            base: y.to_ref(g),
                            faces: vec![(1, x.to_ref(start))],
                            opposite: false,
                        });
                    return Err(inconclusive(
                        format!("no cocartesian edge over {} starting at {}", y.describe(g), x.describe(start)),
                        problem,
                    ));
                }
            };
            set(&mut images, edge, f)?;
            set(&mut images, total.face(edge, 0), x.face(f, 0))?;
            continue;
        }
        for j in (0..=n).rev() {
            let sigma = prism.chain_cell(tau, j);
            let faces: Vec<Option<Simplex>> = (0..=n + 1)
                .map(|k| if k == j { None } else { eval(&images, total.face(sigma, k)) })
                .collect();
            if faces.iter().enumerate().any(|(k, f)| k != j && f.is_none()) {
                return Err(LiftError::Precondition(format!(
                    "prism over {} reached before its faces were filled",
                    prism.base.describe(tau)
                )));
            }
            let problem = HornProblem { n: n + 1, i: j, faces, base: base.apply(sigma) };
            let solution = solve_horn_problem(p, &problem)?.ok_or_else(|| {
                inconclusive(
                    format!("no filler for the prism over {} at step {j}", prism.base.describe(tau)),
                    problem.to_problem(p, false),
                )
            })?;
            horns += 1;
            set(&mut images, sigma, solution)?;
            set(&mut images, total.face(sigma, j), x.face(solution, j))?;
        }
    }

    let filled: Vec<Vec<Simplex>> = images
        .into_iter()
        .enumerate()
        .map(|(d, level)| {
            level
                .into_iter()
                .enumerate()
                .map(|(i, s)| s.ok_or_else(|| LiftError::Precondition(format!("cell {} left unfilled", total.cell_id(d, i)))))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    let map = SMap::new(total.clone(), x.clone(), filled)?;
    for v in 0..prism.base.cell_count(0) {
        designated.push((prism.base.to_ref(Simplex::cell(0, v)), x.to_ref(map.apply(prism.vertical_edge(v)))));
    }
    Ok(HomotopyLift { map, designated, horns_solved: horns })
}

fn x_vertex_of(total: &FiberProduct, edge: Simplex, k: usize) -> Simplex {
    total.object.vertex(edge, k)
}

fn edge_problem(p: &SMap, f: Simplex) -> LiftingProblem {
    let x = p.source();
    LiftingProblem {
        n: 1,
        i: 0,
        base: p.target().to_ref(p.apply(f)),
        faces: vec![(1, x.to_ref(x.face(f, 1)))],
        opposite: false,
    }
}

/// Records an image on a nondegenerate cell, or checks agreement with one
/// already recorded.
fn set(images: &mut [Vec<Option<Simplex>>], s: Simplex, img: Simplex) -> Result<(), LiftError> {
    if s.is_degenerate() {
        return Ok(());
    }
    let slot = &mut images[s.cell_dim()][s.cell_index()];
    match slot {
        Some(old) if *old != img => Err(LiftError::Precondition("prism faces disagree".into())),
        _ => {
            *slot = Some(img);
            Ok(())
        }
    }
}

/// Checks `p∘F = base`, `F|_U = f0` and that every vertical edge is
/// cocartesian. Returns the list of failures.
pub fn audit_homotopy_lift(
    p: &SMap,
    prism: &Prism,
    f0: &SMap,
    base: &SMap,
    lift: &SMap,
    cap: usize,
) -> Result<Vec<String>, LiftError> {
    let mut failures = Vec::new();
    let total = &prism.total.object;
    for s in total.nondegenerate() {
        if p.apply(lift.apply(s)) != base.apply(s) {
            failures.push(format!("p∘F differs from the homotopy on {}", total.describe(s)));
        }
    }
    for s in prism.domain.nondegenerate() {
        if lift.apply(prism.domain_incl.apply(s)) != f0.apply(s) {
            failures.push(format!("F does not extend F0 on {}", prism.domain.describe(s)));
        }
    }
    for v in 0..prism.base.cell_count(0) {
        let f = lift.apply(prism.vertical_edge(v));
        let cert = is_cocartesian_edge(p, f, cap)?;
        if !cert.is_certified() {
            failures.push(format!(
                "vertical edge over {} is {} as a cocartesian edge",
                prism.base.cell_id(0, v),
                cert.verdict.as_str()
            ));
        }
    }
    Ok(failures)
}

/// `Δ^n × Δ^1 → Δ^n`, `(i,0) ↦ i`, `(i,1) ↦ n`.
pub fn last_vertex_contraction(n: usize) -> SMap {
    let delta = Arc::new(standard_simplex(n));
    let interval = Arc::new(standard_simplex(1));
    let fp = product(&delta, &interval).expect("Δ^n × Δ^1");
    let top = Simplex::cell(n, 0);
    let vertices = |set: &SimplicialSet, s: Simplex| -> Vec<usize> {
        let verts = subset_of(set, Simplex::cell(s.cell_dim(), s.cell_index()));
        s.surjection().into_iter().map(|t| verts[t]).collect()
    };
    SMap::from_fn(fp.object.clone(), delta.clone(), |s| {
        let a = vertices(&delta, fp.left.apply(s));
        let b = vertices(&interval, fp.right.apply(s));
        let values: Vec<usize> = a.iter().zip(&b).map(|(&i, &e)| if e == 0 { i } else { n }).collect();
        delta.apply(top, &values)
    })
    .expect("contraction is simplicial")
}
