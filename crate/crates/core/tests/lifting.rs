use std::sync::Arc;

use fibcheck::category::{is_grothendieck_fibration, nerve, nerve_functor, pseudo_circle, Functor};
use fibcheck::corpus;
use fibcheck::lifting::*;
use fibcheck::simplicial::standard::subset_of;
use fibcheck::simplicial::{
    classifying_map, horn, inclusion, opposite_map, product, standard_simplex, boundary, FiberProduct, Kind,
    SMap, Simplex, SimplicialSet,
};

fn delta(n: usize) -> Arc<SimplicialSet> {
    Arc::new(standard_simplex(n))
}

fn cell(x: &SimplicialSet, d: usize, id: &str) -> Simplex {
    Simplex::cell(d, x.find(d, id).unwrap_or_else(|| panic!("no cell {id}")))
}

#[test]
fn identity_lift_is_top_cell() {
    let d2 = delta(2);
    let p = SMap::identity(d2.clone());
    let h = Arc::new(horn(2, 1).unwrap());
    let lambda = inclusion(h, d2.clone()).unwrap();
    let sigma = SMap::identity(d2.clone());
    let lift = solve_horn_lift(&p, &lambda, &sigma).unwrap();
    assert_eq!(lift, Some(cell(&d2, 2, "0,1,2")));
}

#[test]
fn horn_lift_precondition_names_face() {
    let d2 = delta(2);
    let p = SMap::identity(d2.clone());
    let problem = HornProblem {
        n: 2,
        i: 1,
        faces: vec![Some(cell(&d2, 1, "0,1")), None, Some(cell(&d2, 1, "0,1"))],
        base: cell(&d2, 2, "0,1,2"),
    };
    let err = solve_horn_problem(&p, &problem).unwrap_err().to_string();
    assert!(err.contains("d0"), "{err}");
}

#[test]
fn circle_has_no_inner_filler() {
    let p = corpus::circle_terminal();
    let cert = certify_inner_fibration(&p, 3);
    assert_eq!(cert.verdict, Verdict::Refuted);
    match cert.witness.as_ref().unwrap() {
        Witness::Horn { problem } => {
            assert_eq!((problem.n, problem.i), (2, 1));
            assert!(!recheck(&p, problem).unwrap());
        }
        w => panic!("unexpected witness {w:?}"),
    }
}

#[test]
fn nerve_inner_fillers_are_unique() {
    let c = pseudo_circle();
    let cover = corpus::double_cover();
    for p in [SMap::identity(Arc::new(nerve(&c, 4))), cover] {
        let x = p.source().clone();
        for n in 2..=3 {
            for i in 1..n {
                for base in p.target().simplices(n) {
                    // every horn over `base` built from faces of actual simplices
                    for s in x.simplices(n).into_iter().filter(|&s| p.apply(s) == base) {
                        let faces = (0..=n).map(|j| if j == i { None } else { Some(x.face(s, j)) }).collect();
                        let problem = HornProblem { n, i, faces, base };
                        assert_eq!(horn_fillers(&p, &problem).unwrap(), 1);
                    }
                }
            }
        }
        assert!(certify_inner_fibration(&p, 4).is_certified());
    }
}

#[test]
fn double_cover_is_bifibration() {
    let class = certify_fibration_class(&corpus::double_cover(), 4);
    assert!(class.inner.is_certified());
    assert!(class.cartesian.is_certified());
    assert!(class.cocartesian.is_certified());
}

#[test]
fn product_projection_is_bifibration() {
    let p = corpus::c4_times_interval();
    let class = certify_fibration_class(&p, 3);
    assert_eq!(class.verdict(), Verdict::Certified);
}

#[test]
fn vertex_inclusions_into_interval() {
    let d1 = delta(1);
    let v1 = classifying_map(&d1, cell(&d1, 0, "1"));
    let class = certify_fibration_class(&v1, 3);
    assert!(class.inner.is_certified());
    assert_eq!(class.cartesian.verdict, Verdict::Refuted);
    assert!(class.cocartesian.is_certified());
    let v0 = classifying_map(&d1, cell(&d1, 0, "0"));
    let class = certify_fibration_class(&v0, 3);
    assert!(class.cartesian.is_certified());
    assert_eq!(class.cocartesian.verdict, Verdict::Refuted);
    match class.cocartesian.witness.unwrap() {
        Witness::MissingLift { base_edge, opposite, candidates, .. } => {
            assert!(opposite);
            assert_eq!(candidates, 0);
            assert_eq!(base_edge.id, "0,1");
        }
        w => panic!("unexpected witness {w:?}"),
    }
}

#[test]
fn cartesian_is_cocartesian_of_opposite() {
    let d1 = delta(1);
    let maps = vec![
        corpus::double_cover(),
        classifying_map(&d1, cell(&d1, 0, "0")),
        classifying_map(&d1, cell(&d1, 0, "1")),
        nerve_functor(&corpus::point_at_a(), 4),
    ];
    for p in maps {
        for cap in 2..=3 {
            let a = certify_fibration_class(&p, cap);
            let b = certify_fibration_class(&opposite_map(&p), cap);
            assert_eq!(a.cartesian.verdict, b.cocartesian.verdict);
            assert_eq!(a.cocartesian.verdict, b.cartesian.verdict);
        }
    }
}

#[test]
fn point_at_a_matches_grothendieck() {
    let f = corpus::point_at_a();
    let class = certify_fibration_class(&nerve_functor(&f, 4), 3);
    assert_eq!(class.cartesian.is_certified(), is_grothendieck_fibration(&f));
    // the edge over b<x has an empty pre-fiber on both ends
    let id = Functor::identity(Arc::new(pseudo_circle()));
    let p = nerve_functor(&id, 4);
    let e = cell(p.source(), 1, "b<x");
    assert!(is_cartesian_edge(&p, e, 3).unwrap().is_certified());
    assert!(is_cocartesian_edge(&p, e, 3).unwrap().is_certified());
}

#[test]
fn edge_check_rejects_non_edges() {
    let p = corpus::double_cover();
    let v = Simplex::cell(0, 0);
    assert!(matches!(is_cartesian_edge(&p, v, 3), Err(LiftError::Precondition(_))));
}

#[test]
fn contraction_on_vertices() {
    let c1 = last_vertex_contraction(1);
    let x = c1.source();
    let expect = [("(0|0)", "0"), ("(1|0)", "1"), ("(0|1)", "1"), ("(1|1)", "1")];
    for (src, tgt) in expect {
        let s = cell(x, 0, src);
        assert_eq!(c1.target().describe(c1.apply(s)), tgt);
    }
    let c0 = last_vertex_contraction(0);
    assert!(c0.source().cell_count(1) == 1);
    let c2 = last_vertex_contraction(2);
    assert_eq!(c2.source().cell_count(3), 3);
    c2.validate().unwrap();
}

/// `I × Δ^1 → X × Δ^1` for the product projection, with first component
/// constant at `v` on the domain.
fn constant_partial_lift(prism: &Prism, target: &FiberProduct, v: Simplex) -> SMap {
    SMap::from_fn(prism.domain.clone(), target.object.clone(), |s| {
        let t = prism.domain_incl.apply(s);
        let b = prism.total.right.apply(t);
        let a = v.degenerate_by(&vec![0; b.degree() + 1]);
        target.pair(a, b).unwrap()
    })
    .unwrap()
}

#[test]
fn homotopy_lift_over_triangle() {
    let x = Arc::new(nerve(&pseudo_circle(), 4));
    let d1 = delta(1);
    let target = product(&x, &d1).unwrap();
    let p = target.right.clone();
    let i = delta(2);
    let j = Arc::new(boundary(2));
    let incl = inclusion(j, i).unwrap();
    let pr = prism(&incl).unwrap();
    let f0 = constant_partial_lift(&pr, &target, cell(&x, 0, "a"));
    let base = pr.total.right.clone();
    let lift = lift_homotopy(&p, &pr, &f0, &base, 4).unwrap();
    assert!(audit_homotopy_lift(&p, &pr, &f0, &base, &lift.map, 4).unwrap().is_empty());
    assert_eq!(lift.horns_solved, 3);
}

#[test]
fn homotopy_lift_refuses_non_cocartesian_designation() {
    let x = Arc::new(nerve(&pseudo_circle(), 4));
    let d1 = delta(1);
    let target = product(&x, &d1).unwrap();
    let p = target.right.clone();
    let incl = inclusion(Arc::new(boundary(2)), delta(2)).unwrap();
    let pr = prism(&incl).unwrap();
    let ax = cell(&x, 1, "a<x");
    let f0 = SMap::from_fn(pr.domain.clone(), target.object.clone(), |s| {
        let t = pr.domain_incl.apply(s);
        let b = pr.total.right.apply(t);
        // along J×Δ^1 move from a to x in step with the interval coordinate
        let verts = subset_of(pr.total.right.target(), Simplex::cell(b.cell_dim(), b.cell_index()));
        let values: Vec<usize> = b.surjection().iter().map(|&t| verts[t]).collect();
        let a = x.apply(ax, &values);
        target.pair(a, b).unwrap()
    })
    .unwrap();
    let base = pr.total.right.clone();
    match lift_homotopy(&p, &pr, &f0, &base, 4) {
        Err(LiftError::Inconclusive { problem, .. }) => assert!(!recheck(&p, &problem).unwrap()),
        other => panic!("expected an inconclusive error, got {other:?}"),
    }
}

#[test]
fn homotopy_lift_of_a_vertex_in_the_cover() {
    let p = corpus::double_cover();
    let i = delta(0);
    let incl = SMap::new(Arc::new(SimplicialSet::empty(Kind::Simplicial)), i.clone(), vec![]).unwrap();
    let pr = prism(&incl).unwrap();
    let x = p.source();
    let y = p.target();
    let a0 = cell(x, 0, "a0");
    let f0 = SMap::new(pr.domain.clone(), x.clone(), vec![vec![a0]]).unwrap();
    let ax = cell(y, 1, "a<x");
    let base = SMap::from_fn(pr.total.object.clone(), y.clone(), |s| {
        let b = pr.total.right.apply(s);
        let verts = subset_of(pr.total.right.target(), Simplex::cell(b.cell_dim(), b.cell_index()));
        let values: Vec<usize> = b.surjection().iter().map(|&t| verts[t]).collect();
        y.apply(ax, &values)
    })
    .unwrap();
    let lift = lift_homotopy(&p, &pr, &f0, &base, 3).unwrap();
    assert_eq!(lift.designated[0].1.id, "a0<x0");
}

#[test]
fn transport_along_product_is_identity() {
    let p = corpus::c4_times_interval();
    let e = cell(p.target(), 1, "0,1");
    let t = transport_homology(&p, e, Direction::Forward).unwrap();
    assert!(t.is_equivalence());
    for g in t.transport.unwrap() {
        assert_eq!(g.matrix, fibcheck::homology::IntMatrix::identity(g.source_moduli.len()));
    }
}

#[test]
fn double_cover_loop_transport_swaps_sheets() {
    let p = corpus::double_cover();
    let y = p.target();
    let h0 = |s: &str, dir| {
        let t = transport_homology(&p, cell(y, 1, s), dir).unwrap();
        assert!(t.is_equivalence());
        t.transport.unwrap()[0].clone()
    };
    // a → x ← b → y ← a
    let loop_map = h0("a<x", Direction::Forward)
        .then(&h0("b<x", Direction::Backward))
        .then(&h0("b<y", Direction::Forward))
        .then(&h0("a<y", Direction::Backward));
    let swap = fibcheck::homology::IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
    assert_eq!(loop_map.matrix, swap);
}

#[test]
fn transport_with_empty_end_is_flagged() {
    let d1 = delta(1);
    let p = classifying_map(&d1, cell(&d1, 0, "0"));
    let t = transport_homology(&p, cell(&d1, 1, "0,1"), Direction::Forward).unwrap();
    assert!(!t.leg_invertible);
    assert!(t.transport.is_none());
}
