//! Runs the eight acceptance criteria and prints one line per criterion.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use fibcheck::category::*;
use fibcheck::corpus;
use fibcheck::homology::{euler_characteristic, homology, EulerCharacteristic, IntMatrix};
use fibcheck::lifting::*;
use fibcheck::simplicial::standard::subset_of;
use fibcheck::simplicial::*;
use fibcheck::verify::{euler_multiplicativity, vertex_fiber};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use common::{chains, complex_betti, functor_sample, horns_over, poset_fibration, random_order, transpose, VertexIndex};

const SEED: u64 = 0x5eed;

fn le_of(c: &FiniteCategory) -> Vec<Vec<bool>> {
    let n = c.object_count();
    (0..n).map(|a| (0..n).map(|b| !c.hom(a, b).is_empty()).collect()).collect()
}

fn lt_of(c: &FiniteCategory) -> Vec<Vec<bool>> {
    let n = c.object_count();
    (0..n).map(|a| (0..n).map(|b| a != b && !c.hom(a, b).is_empty()).collect()).collect()
}

fn random_samples() -> Vec<(usize, Functor)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut out = Vec::new();
    for k in 0..20 {
        let n = rng.gen_range(2..=8);
        let lt = random_order(&mut rng, n, 0.35);
        for (_, f) in functor_sample(&mut rng, n, &lt) {
            out.push((k, f));
        }
    }
    out
}

fn c4_lt() -> Vec<Vec<bool>> {
    // a, b, x, y
    let mut lt = vec![vec![false; 4]; 4];
    for (i, j) in [(0, 2), (0, 3), (1, 2), (1, 3)] {
        lt[i][j] = true;
    }
    lt
}

fn c4() -> FiniteCategory {
    pseudo_circle()
}

fn criterion_1() {
    for (k, f) in random_samples() {
        let p = nerve_functor(&f, DEFAULT_NERVE_CAP);
        let index = VertexIndex::new(p.source(), 3);
        for n in 2..=3 {
            for i in 1..n {
                for base in p.target().simplices(n) {
                    for (vs, faces) in horns_over(&p, &index, n, i, base) {
                        let oracle = index.get(&vs).filter(|&s| p.apply(s) == base).map_or(0, |_| 1);
                        assert_eq!(oracle, 1, "poset {k}: horn without a chain filler");
                        let problem = HornProblem { n, i, faces, base };
                        assert_eq!(horn_fillers(&p, &problem).unwrap(), 1, "poset {k}: Λ^{n}_{i}");
                    }
                }
            }
        }
        for cap in 2..=4 {
            assert!(certify_inner_fibration(&p, cap).is_certified(), "poset {k} cap {cap}");
        }
    }
}

fn criterion_2() {
    let mut seen = [0usize; 2];
    for (k, f) in random_samples() {
        let (ls, lt) = (le_of(f.source()), le_of(f.target()));
        let objects = f.object_images().to_vec();
        let fib = poset_fibration(&objects, &ls, &lt);
        let opfib = poset_fibration(&objects, &transpose(&ls), &transpose(&lt));
        seen[fib as usize] += 1;
        assert_eq!(is_grothendieck_fibration(&f), fib, "poset {k}");
        assert_eq!(is_grothendieck_opfibration(&f), opfib, "poset {k}");
        let p = nerve_functor(&f, DEFAULT_NERVE_CAP);
        for cap in 2..=4 {
            let class = certify_fibration_class(&p, cap);
            assert_eq!(class.cartesian.is_certified(), fib, "poset {k} cap {cap}");
            assert_eq!(class.cocartesian.is_certified(), opfib, "poset {k} cap {cap}");
        }
    }
    assert!(seen[0] > 0 && seen[1] > 0, "sample exercises both outcomes: {seen:?}");
}

fn criterion_3() {
    let f = corpus::double_cover_functor();
    let p = corpus::double_cover();
    let (cover, base) = (f.source(), f.target());
    for cap in [2, 3, 4] {
        assert_eq!(certify_fibration_class(&p, cap).verdict(), Verdict::Certified, "cap {cap}");
    }

    // oracle: order complex of the cover poset
    let cover_lt = lt_of(cover);
    let cover_chains = chains(&cover_lt);
    let (betti, torsion_free) = complex_betti(&cover_chains);
    assert!(torsion_free);
    assert_eq!(betti, vec![1, 1]);
    let h = homology(p.source());
    assert_eq!(h.betti_numbers(), betti);
    assert_eq!(h.render_reduced(), "(Z, Z)");

    // each object of C4 has two preimages with no relations between them
    for d in 0..base.object_count() {
        let pre: Vec<usize> = (0..cover.object_count()).filter(|&c| f.on_object(c) == d).collect();
        assert_eq!(pre.len(), 2);
        assert!(!cover_lt[pre[0]][pre[1]] && !cover_lt[pre[1]][pre[0]]);
        let v = p.target().find(0, base.object_id(d)).unwrap();
        let fh = homology(&vertex_fiber(&p, Simplex::cell(0, v)).unwrap());
        assert_eq!(fh.betti_numbers(), vec![2]);
        assert!(fh.groups[0].torsion.is_empty());
    }

    // oracle: follow unique lifts around a → x ← b → y ← a
    let id = |s: &str| cover.object(s).unwrap();
    let step = |from: usize, over: &str, up: bool| -> usize {
        let target = base.object(over).unwrap();
        let hits: Vec<usize> = (0..cover.object_count())
            .filter(|&c| f.on_object(c) == target && if up { cover_lt[from][c] } else { cover_lt[c][from] })
            .collect();
        assert_eq!(hits.len(), 1);
        hits[0]
    };
    let around = |s: usize| step(step(step(step(s, "x", true), "b", false), "y", true), "a", false);
    let (a0, a1) = (id("a0"), id("a1"));
    assert_eq!((around(a0), around(a1)), (a1, a0), "the loop exchanges sheets");

    let y = p.target();
    let h0 = |e: &str, dir| {
        let t = transport_homology(&p, Simplex::cell(1, y.find(1, e).unwrap()), dir).unwrap();
        assert!(t.is_equivalence());
        t.transport.unwrap()[0].clone()
    };
    let m = h0("a<x", Direction::Forward)
        .then(&h0("b<x", Direction::Backward))
        .then(&h0("b<y", Direction::Forward))
        .then(&h0("a<y", Direction::Backward));
    // a nontrivial permutation of two sheets is the swap in any basis of components
    assert_eq!(m.matrix, IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]));

    let chi = |faces: &[Vec<usize>]| faces.iter().map(|c| if c.len() % 2 == 1 { 1i64 } else { -1 }).sum::<i64>();
    let chi_total = chi(&cover_chains);
    let chi_base = chi(&chains(&c4_lt()));
    assert_eq!((chi_total, chi_base), (0, 0));
    let e = euler_multiplicativity(&p).unwrap().unwrap();
    assert_eq!((e.total, e.fiber, e.base), (chi_total, 2, chi_base));
    assert!(e.holds);
}

/// Objects `(c, d)` with `c ≤ d` ordered componentwise: the comma category
/// of the identity of a poset.
fn arrow_poset(lt: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = lt.len();
    let le = |i: usize, j: usize| i == j || lt[i][j];
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|c| (0..n).map(move |d| (c, d))).filter(|&(c, d)| le(c, d)).collect();
    let mut order: Vec<usize> = (0..pairs.len()).collect();
    // a linear extension so chains come out in a consistent vertex order
    order.sort_by_key(|&k| {
        let (c, d) = pairs[k];
        (pairs.iter().filter(|&&(a, b)| le(a, c) && le(b, d)).count(), k)
    });
    let sorted: Vec<(usize, usize)> = order.iter().map(|&k| pairs[k]).collect();
    sorted
        .iter()
        .map(|&(c, d)| sorted.iter().map(|&(c2, d2)| (c, d) != (c2, d2) && le(c, c2) && le(d, d2)).collect())
        .collect()
}

fn criterion_4() {
    let lt = c4_lt();
    let comma = arrow_poset(&lt);
    let trim = |mut b: Vec<usize>| {
        while b.last() == Some(&0) {
            b.pop();
        }
        b
    };
    let (comma_betti, tf) = complex_betti(&chains(&comma));
    let (base_betti, tf2) = complex_betti(&chains(&lt));
    assert!(tf && tf2);
    let (comma_betti, base_betti) = (trim(comma_betti), trim(base_betti));
    assert_eq!(comma_betti, vec![1, 1]);
    assert_eq!(comma_betti, base_betti);

    let r = theorem_b_report(&corpus::identity_c4(), DEFAULT_NERVE_CAP).unwrap();
    assert_eq!(r.comma_objects, comma.len());
    assert!(r.hypothesis, "{:?}", r.hypothesis_failure);
    assert!(r.all_slices_contractible);
    for s in &r.slices {
        // F/d = {c ≤ d} has the terminal object d
        let d = c4().object(&s.object).unwrap();
        let down: Vec<usize> = (0..4).filter(|&c| c == d || lt[c][d]).collect();
        let sub: Vec<Vec<bool>> = down.iter().map(|&i| down.iter().map(|&j| lt[i][j]).collect()).collect();
        assert_eq!(trim(complex_betti(&chains(&sub)).0), vec![1]);
        assert!(s.contractible && s.matches_fiber, "{}", s.object);
    }
    assert_eq!(r.comma_homology, "(Z, Z)");
    assert_eq!(r.base_homology, "(Z, Z)");
    assert!(r.target_projection_iso);
    assert!(r.source_projection_iso);
    assert!(r.homotopy_audit);
    assert_eq!(r.verdict, Verdict::Certified);
}

fn criterion_5() {
    let lt = c4_lt();
    let names = ["a", "b", "x", "y"];
    let a = 0;
    let reachable = |d: usize| d == a || lt[a][d];
    let failing: Vec<String> = (0..4)
        .flat_map(|d| (0..4).map(move |e| (d, e)))
        .filter(|&(d, e)| lt[d][e] && !reachable(d) && reachable(e))
        .map(|(d, e)| format!("{}<{}", names[d], names[e]))
        .collect();
    assert_eq!(failing, vec!["b<x", "b<y"]);

    let r = theorem_b_report(&corpus::point_at_a(), DEFAULT_NERVE_CAP).unwrap();
    assert!(!r.hypothesis);
    assert_eq!(r.verdict, Verdict::Refuted);
    let w = r.hypothesis_failure.as_deref().unwrap();
    let named: Vec<&String> = failing.iter().filter(|e| w.contains(e.as_str())).collect();
    assert_eq!(named.len(), 1, "{w}");
    let t = r.transports.iter().find(|t| &t.edge == named[0]).unwrap();
    assert_eq!((t.source_fiber.as_str(), t.target_fiber.as_str()), ("empty", "(Z)"));
    assert!(!t.equivalence);
    assert!(w.contains("empty") && w.contains("(Z)"), "{w}");
}

fn criterion_6() {
    let x = Arc::new(nerve(&c4(), DEFAULT_NERVE_CAP));
    let d1 = Arc::new(standard_simplex(1));
    let target = product(&x, &d1).unwrap();
    let p = target.right.clone();
    let incl = inclusion(Arc::new(boundary(2)), Arc::new(standard_simplex(2))).unwrap();
    let pr = prism(&incl).unwrap();
    let base = pr.total.right.clone();

    // F0 constant at a on I × {0} ∪ J × Δ^1
    let a = Simplex::cell(0, x.find(0, "a").unwrap());
    let f0 = SMap::from_fn(pr.domain.clone(), target.object.clone(), |s| {
        let b = pr.total.right.apply(pr.domain_incl.apply(s));
        target.pair(a.degenerate_by(&vec![0; b.degree() + 1]), b).unwrap()
    })
    .unwrap();
    let lift = lift_homotopy(&p, &pr, &f0, &base, 4).unwrap();
    assert!(audit_homotopy_lift(&p, &pr, &f0, &base, &lift.map, 4).unwrap().is_empty());
    for n in 0..=3 {
        for s in pr.total.object.simplices(n) {
            assert_eq!(p.apply(lift.map.apply(s)), base.apply(s));
        }
        for s in pr.domain.simplices(n) {
            assert_eq!(lift.map.apply(pr.domain_incl.apply(s)), f0.apply(s));
        }
    }
    for (_, image) in &lift.designated {
        let e = target.object.resolve(image).unwrap();
        assert!(is_cocartesian_edge(&p, e, 4).unwrap().is_certified());
    }

    // adversarial: along J × Δ^1 the map moves a → x, so J's vertical edges
    // are not cocartesian for the projection
    let ax = Simplex::cell(1, x.find(1, "a<x").unwrap());
    let bad = SMap::from_fn(pr.domain.clone(), target.object.clone(), |s| {
        let b = pr.total.right.apply(pr.domain_incl.apply(s));
        let verts = subset_of(pr.total.right.target(), Simplex::cell(b.cell_dim(), b.cell_index()));
        let values: Vec<usize> = b.surjection().iter().map(|&t| verts[t]).collect();
        target.pair(x.apply(ax, &values), b).unwrap()
    })
    .unwrap();
    match lift_homotopy(&p, &pr, &bad, &base, 4) {
        Err(LiftError::Inconclusive { problem, .. }) => assert!(!recheck(&p, &problem).unwrap()),
        other => panic!("expected an inconclusive error, got {other:?}"),
    }
}

fn criterion_7() {
    for n in 0..=5 {
        let (betti, tf) = complex_betti(&common::simplex_faces(n, n + 1));
        assert!(tf);
        let mut expected = vec![0; n + 1];
        expected[0] = 1;
        assert_eq!(betti, expected);
        let h = homology(&standard_simplex(n));
        assert_eq!(h.betti_numbers(), betti, "Δ^{n}");
        assert!(h.groups.iter().all(|g| g.torsion.is_empty()));
    }
    for n in 2..=5 {
        let (betti, tf) = complex_betti(&common::simplex_faces(n, n));
        assert!(tf);
        let mut expected = vec![0; n];
        expected[0] = 1;
        expected[n - 1] = 1;
        assert_eq!(betti, expected);
        let h = homology(&boundary(n));
        assert_eq!(h.betti_numbers(), betti, "∂Δ^{n}");
        assert!(h.groups.iter().all(|g| g.torsion.is_empty()));
    }
    let horn_faces: Vec<Vec<usize>> =
        common::simplex_faces(2, 3).into_iter().filter(|f| f != &vec![0, 1, 2] && f != &vec![0, 2]).collect();
    let (betti, tf) = complex_betti(&horn_faces);
    assert!(tf);
    assert_eq!(betti, vec![1, 0]);
    let h = homology(&horn(2, 1).unwrap());
    assert!(h.is_point_like());
    for p in 0..=5 {
        for q in 0..=5 - p {
            // nondegenerate simplices of Δ^p × Δ^q are chains in [p] × [q]
            let grid: Vec<(usize, usize)> = (0..=p).flat_map(|i| (0..=q).map(move |j| (i, j))).collect();
            let lt: Vec<Vec<bool>> =
                grid.iter().map(|&(i, j)| grid.iter().map(|&(k, l)| (i, j) != (k, l) && i <= k && j <= l).collect()).collect();
            let oracle: i64 = chains(&lt).iter().map(|c| if c.len() % 2 == 1 { 1 } else { -1 }).sum();
            assert_eq!(oracle, 1);
            let prod = product(&Arc::new(standard_simplex(p)), &Arc::new(standard_simplex(q))).unwrap();
            assert_eq!(euler_characteristic(&prod.object), EulerCharacteristic::Exact(oracle), "Δ^{p}×Δ^{q}");
        }
    }
}

fn corpus_file(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

fn ltg_cli(name: &str) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_fibcheck"))
        .arg("--json")
        .arg("ltg-check")
        .arg("--cospan")
        .arg(corpus_file(&format!("ltg_{name}_F.ssx")))
        .arg(corpus_file(&format!("ltg_{name}_P.ssx")))
        .output()
        .unwrap();
    (out.status.code().unwrap(), out.stdout)
}

fn criterion_8() {
    let c4_chains = chains(&c4_lt());
    let (c4_betti, _) = complex_betti(&c4_chains);
    let chi_c4: i64 = c4_chains.iter().map(|c| if c.len() % 2 == 1 { 1 } else { -1 }).sum();
    assert_eq!((c4_betti.clone(), chi_c4), (vec![1, 1], 0));
    let cover = corpus::double_cover_functor();
    let a = cover.target().object("a").unwrap();
    let sheets_over_a = (0..cover.source().object_count()).filter(|&c| cover.on_object(c) == a).count();

    let mut reports = Vec::new();
    for name in ["product_vertex", "cover_vertex", "cover_identity"] {
        let (code, first) = ltg_cli(name);
        let (code2, second) = ltg_cli(name);
        assert_eq!((code, code2), (0, 0), "{name}");
        assert_eq!(first, second, "{name}: --json output differs between runs");
        let v: Value = serde_json::from_slice(&first).unwrap();
        assert_eq!(v["verdict"], "certified", "{name}");
        let checks = v["checks"].as_array().unwrap();
        assert_eq!(checks.len(), 4);
        assert!(checks.iter().all(|c| c["passed"] == true), "{name}");
        reports.push(v);
    }
    let d = &reports[0]["details"];
    assert_eq!(d["pullback_homology_text"], "(Z, Z)");
    assert_eq!(c4_betti, vec![1, 1]);
    assert_eq!((d["euler"]["total"].as_i64(), d["euler"]["fiber"].as_i64(), d["euler"]["base"].as_i64()), (Some(0), Some(chi_c4), Some(1)));

    let d = &reports[1]["details"];
    assert_eq!(d["pullback_counts"], serde_json::json!([sheets_over_a]));
    assert_eq!((d["euler"]["total"].as_i64(), d["euler"]["fiber"].as_i64(), d["euler"]["base"].as_i64()), (Some(0), Some(2), Some(chi_c4)));

    let d = &reports[2]["details"];
    assert_eq!(d["pullback_counts"], serde_json::json!(corpus::double_cover().source().counts()));
    assert_eq!(d["pullback_homology_text"], "(Z, Z)");
}

fn main() {
    let criteria: [(&str, fn()); 8] = [
        ("inner-filler uniqueness on random poset nerves", criterion_1),
        ("Grothendieck agreement at caps 2-4", criterion_2),
        ("double-cover suite", criterion_3),
        ("comma pipeline, identity of C4", criterion_4),
        ("comma pipeline, point at a", criterion_5),
        ("constructive homotopy lift", criterion_6),
        ("homology unit suite", criterion_7),
        ("ltg_check suite", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let ok = catch_unwind(AssertUnwindSafe(run)).is_ok();
        let ms = start.elapsed().as_millis();
        println!("criterion {} {}: {} ({ms} ms)", i + 1, name, if ok { "PASS" } else { "FAIL" });
        failed += usize::from(!ok);
    }
    if failed > 0 {
        println!("{failed} of 8 criteria failed");
        std::process::exit(1);
    }
    println!("8 of 8 criteria passed");
}
