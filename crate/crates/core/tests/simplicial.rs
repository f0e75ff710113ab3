use std::sync::Arc;

use fibcheck::category::{nerve, pseudo_circle, DEFAULT_NERVE_CAP};
use fibcheck::corpus;
use fibcheck::homology::pi0;
use fibcheck::simplicial::ssx::{emit_smap, emit_sset, parse_smap, parse_sset};
use fibcheck::simplicial::standard::subset_of;
use fibcheck::simplicial::*;
use proptest::prelude::*;

fn delta(n: usize) -> Arc<SimplicialSet> {
    Arc::new(standard_simplex(n))
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Checks `d_i d_j = d_{j-1} d_i` on every simplex up to `top`, degenerate
/// ones included.
fn identities_hold(x: &SimplicialSet, top: usize) -> bool {
    (2..=top).all(|n| {
        x.simplices(n).into_iter().all(|s| {
            (0..=n).all(|j| (0..j).all(|i| x.face(x.face(s, j), i) == x.face(x.face(s, i), j - 1)))
        })
    })
}

#[test]
fn product_counts() {
    assert_eq!(product(&delta(1), &delta(1)).unwrap().object.counts(), vec![4, 5, 2]);
    assert_eq!(product(&delta(2), &delta(1)).unwrap().object.cell_count(3), 3);
    for p in 0..=6 {
        for q in 0..=6 - p {
            let x = product(&delta(p), &delta(q)).unwrap().object;
            assert_eq!(x.dimension(), Some(p + q));
            assert_eq!(x.cell_count(p + q), binomial(p + q, p), "Δ^{p}×Δ^{q}");
        }
    }
}

#[test]
fn product_with_point_is_simplex() {
    for n in 0..=4 {
        let fp = product(&delta(n), &point()).unwrap();
        assert!(fp.left.is_isomorphism());
    }
}

#[test]
fn product_rejects_semi_simplicial() {
    let mut b = SimplicialSetBuilder::new(Kind::SemiSimplicial);
    b.vertex("v");
    let semi = Arc::new(b.build().unwrap());
    assert!(product(&semi, &delta(1)).is_err());
}

#[test]
fn product_universal_property() {
    let x = Arc::new(corpus::circle());
    let y = Arc::new(nerve(&pseudo_circle(), DEFAULT_NERVE_CAP));
    for (a, b) in [(x.clone(), delta(1)), (delta(2), y.clone()), (x, y)] {
        let fp = product(&a, &b).unwrap();
        for k in 0..=3 {
            let simplices = fp.object.simplices(k);
            let mut seen = std::collections::HashSet::new();
            for sa in a.simplices(k) {
                for sb in b.simplices(k) {
                    let s = fp.pair(sa, sb).expect("every pair is a simplex");
                    assert_eq!((fp.left.apply(s), fp.right.apply(s)), (sa, sb));
                    assert!(seen.insert(s));
                }
            }
            assert_eq!(seen.len(), simplices.len(), "degree {k}");
        }
    }
}

#[test]
fn constructions_satisfy_identities() {
    let c4 = Arc::new(nerve(&pseudo_circle(), DEFAULT_NERVE_CAP));
    let sets = vec![
        product(&delta(2), &delta(1)).unwrap().object,
        product(&c4, &Arc::new(corpus::circle())).unwrap().object,
        Arc::new(c4.opposite()),
        pullback(&classifying_map(&c4, Simplex::cell(1, 0)), &corpus::double_cover()).unwrap().object,
    ];
    for x in sets {
        assert!(identities_hold(&x, 3));
        x.validate().unwrap();
    }
}

#[test]
fn pullback_squares_commute() {
    let p = corpus::double_cover();
    let y = p.target().clone();
    let maps = vec![SMap::identity(y.clone()), classifying_map(&y, Simplex::cell(0, 0)), classifying_map(&y, Simplex::cell(1, 2))];
    for f in maps {
        let fp = pullback(&f, &p).unwrap();
        for n in 0..=2 {
            for s in fp.object.simplices(n) {
                assert_eq!(f.apply(fp.left.apply(s)), p.apply(fp.right.apply(s)));
            }
        }
    }
}

#[test]
fn pullback_examples() {
    let p = corpus::double_cover();
    let y = p.target().clone();
    let id = pullback(&SMap::identity(y.clone()), &SMap::identity(y.clone())).unwrap();
    assert!(id.left.is_isomorphism());
    let a = y.find(0, "a").unwrap();
    let over_a = pullback(&classifying_map(&y, Simplex::cell(0, a)), &p).unwrap();
    assert_eq!(over_a.object.counts(), vec![2]);
    let q = corpus::c4_times_interval();
    let fiber = pullback(&classifying_map(q.target(), Simplex::cell(0, 1)), &q).unwrap();
    assert!(fiber.right.then(&product(&Arc::new(nerve(&pseudo_circle(), 4)), &delta(1)).unwrap().left).unwrap().is_isomorphism());
}

#[test]
fn restriction_examples() {
    let p = corpus::double_cover();
    let y = p.target();
    let e = Simplex::cell(1, y.find(1, "b<y").unwrap());
    let r = restrict_over_simplex(&p, e).unwrap();
    assert_eq!(r.object.counts(), vec![4, 2]);
    assert_eq!(pi0(&r.object).count, 2);
    let d1 = delta(1);
    let r = restrict_over_simplex(&SMap::identity(d1.clone()), Simplex::cell(1, 0)).unwrap();
    assert!(r.to_simplex.is_isomorphism());
    // over a vertex the restriction is the pullback along that vertex
    for v in 0..y.cell_count(0) {
        let s = Simplex::cell(0, v);
        let r = restrict_over_simplex(&p, s).unwrap();
        let fp = pullback(&classifying_map(y, s), &p).unwrap();
        assert_eq!(*r.object, *fp.object);
    }
    // over a degenerate edge: Δ^1 × (two points)
    let s = Simplex::cell(0, 0).degeneracy(0);
    assert_eq!(restrict_over_simplex(&p, s).unwrap().object.counts(), vec![4, 2]);
}

#[test]
fn opposite_examples() {
    for n in 0..=4 {
        let d = standard_simplex(n);
        assert_eq!(d.opposite().counts(), d.counts());
        assert_eq!(d.opposite().opposite(), d);
    }
    let c = corpus::double_cover_poset();
    let a = nerve(&c, DEFAULT_NERVE_CAP).opposite();
    let b = nerve(&c.opposite(), DEFAULT_NERVE_CAP);
    assert_eq!(a.counts(), b.counts());
    for e in 0..a.cell_count(1) {
        let id = a.cell_id(1, e);
        let f = b.find(1, id).unwrap_or_else(|| panic!("{id} missing"));
        for i in 0..2 {
            assert_eq!(a.describe(a.face(Simplex::cell(1, e), i)), b.describe(b.face(Simplex::cell(1, f), i)));
        }
    }
    let p = corpus::double_cover();
    assert_eq!(opposite_map(&opposite_map(&p)), p);
}

#[test]
fn skeleton_examples() {
    let d2 = delta(2);
    let (sk, _) = skeleton(&d2, 1).unwrap();
    assert_eq!(*sk, boundary(2));
    let c4 = Arc::new(nerve(&pseudo_circle(), DEFAULT_NERVE_CAP));
    assert_eq!(skeleton(&c4, 0).unwrap().0.counts(), vec![4]);
    assert_eq!(*skeleton(&c4, 1).unwrap().0, *c4);
    assert!(skeleton(&c4, -1).unwrap().0.is_empty());
}

#[test]
fn standard_objects() {
    assert_eq!(standard_simplex(2).counts(), vec![3, 3, 1]);
    assert_eq!(boundary(2).counts(), vec![3, 3]);
    assert_eq!(horn(2, 1).unwrap().counts(), vec![3, 2]);
    assert!(boundary(0).is_empty());
    assert_eq!(horn(1, 0).unwrap().counts(), vec![1]);
    assert!(horn(2, 3).is_err());
}

#[test]
fn corpus_round_trips() {
    for p in [corpus::double_cover(), corpus::c4_times_interval(), corpus::boundary_to_vertex(), corpus::circle_terminal()] {
        let text = emit_smap(&p);
        let back = parse_smap(&text).unwrap();
        assert_eq!(back, p);
        assert_eq!(emit_smap(&back), text);
    }
}

#[test]
fn invalid_documents_are_rejected() {
    let bad_degree = r#"{"kind":"sset","simplicial":true,"cells":{"0":[{"id":"v"}],"1":[{"id":"e","faces":[["","e"],["","v"]]}]}}"#;
    assert!(parse_sset(bad_degree).is_err());
    let bad_word = r#"{"kind":"sset","simplicial":true,"cells":{"0":[{"id":"v"}],"1":[{"id":"e","faces":[["","v"],["","v"]]}],"2":[{"id":"t","faces":[["0,1","v"],["","e"],["","e"]]}]}}"#;
    assert!(parse_sset(bad_word).is_err());
    let err = parse_sset("{\"kind\":").unwrap_err();
    assert!(err.to_string().contains("line 1"), "{err}");
}

/// A simplicial complex on the vertices of Δ^5 generated by `tops`,
/// optionally multiplied by Δ^1 to introduce degenerate faces.
fn complex(tops: &[Vec<usize>], with_interval: bool) -> SimplicialSet {
    let d5 = standard_simplex(5);
    let x = sub_object(&d5, |s| {
        let vs = subset_of(&d5, s);
        tops.iter().any(|t| vs.iter().all(|v| t.contains(v)))
    })
    .unwrap();
    if with_interval {
        product(&Arc::new(x), &delta(1)).unwrap().object.as_ref().clone()
    } else {
        x
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn ssx_round_trip(
        tops in prop::collection::vec(prop::collection::btree_set(0usize..6, 1..4), 1..5),
        with_interval in any::<bool>(),
    ) {
        let tops: Vec<Vec<usize>> = tops.into_iter().map(|t| t.into_iter().collect()).collect();
        let x = complex(&tops, with_interval);
        let text = emit_sset(&x);
        let back = parse_sset(&text).unwrap();
        prop_assert_eq!(&back, &x);
        prop_assert_eq!(emit_sset(&back), text);
        prop_assert!(identities_hold(&x, 3));
    }
}
