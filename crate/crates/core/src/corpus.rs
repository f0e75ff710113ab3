//! Builders for the bundled example inputs. The files under `corpus/` are
//! the SSX and CAT renderings of these.

use std::collections::HashMap;
use std::sync::Arc;

use crate::category::{nerve, nerve_functor, pseudo_circle, FiniteCategory, Functor, DEFAULT_NERVE_CAP};
use crate::simplicial::{
    boundary, classifying_map, product, standard_simplex, FaceSpec, Kind, SMap, Simplex, SimplicialSet,
    SimplicialSetBuilder,
};

/// The connected 8-element poset covering C4 twice: `a_i < x_i`,
/// `a_i < y_i`, `b_i < x_i`, `b_i < y_{1-i}`.
pub fn double_cover_poset() -> FiniteCategory {
    FiniteCategory::from_poset(
        &["a0", "a1", "b0", "b1", "x0", "x1", "y0", "y1"],
        &[
            ("a0", "x0"),
            ("a0", "y0"),
            ("a1", "x1"),
            ("a1", "y1"),
            ("b0", "x0"),
            ("b0", "y1"),
            ("b1", "x1"),
            ("b1", "y0"),
        ],
    )
    .expect("valid poset")
}

/// The covering map onto C4, forgetting the sheet index.
pub fn double_cover_functor() -> Functor {
    let cover = Arc::new(double_cover_poset());
    let base = Arc::new(pseudo_circle());
    let strip = |s: &str| s.trim_end_matches(['0', '1']).to_string();
    let objects: HashMap<String, String> = cover.objects().iter().map(|o| (o.clone(), strip(o))).collect();
    let morphisms: HashMap<String, String> = cover
        .morphisms()
        .iter()
        .map(|m| {
            let image = match m.id.split_once('<') {
                Some((s, t)) => format!("{}<{}", strip(s), strip(t)),
                None => format!("id_{}", strip(m.id.trim_start_matches("id_"))),
            };
            (m.id.clone(), image)
        })
        .collect();
    Functor::from_ids(cover, base, &objects, &morphisms).expect("covering is a functor")
}

/// `N(cover) → N(C4)`.
pub fn double_cover() -> SMap {
    nerve_functor(&double_cover_functor(), DEFAULT_NERVE_CAP)
}

pub fn identity_c4() -> Functor {
    Functor::identity(Arc::new(pseudo_circle()))
}

/// The functor from the point picking out `a` in C4.
pub fn point_at_a() -> Functor {
    Functor::point_at(Arc::new(pseudo_circle()), "a").expect("a is an object of C4")
}

/// One vertex `v` and one edge `e` with both faces `v`.
pub fn circle() -> SimplicialSet {
    let mut b = SimplicialSetBuilder::new(Kind::Simplicial);
    b.vertex("v");
    b.cell(1, "e", vec![FaceSpec::cell("v"), FaceSpec::cell("v")]);
    b.build().expect("circle")
}

/// The terminal map from the one-edge circle.
pub fn circle_terminal() -> SMap {
    SMap::terminal(Arc::new(circle()))
}

pub fn boundary3() -> SimplicialSet {
    boundary(3)
}

/// The projection `X × Δ^1 → Δ^1`.
pub fn product_projection(x: SimplicialSet) -> SMap {
    product(&Arc::new(x), &Arc::new(standard_simplex(1))).expect("product").right
}

/// `N(C4) × Δ^1 → Δ^1`.
pub fn c4_times_interval() -> SMap {
    product_projection(nerve(&pseudo_circle(), DEFAULT_NERVE_CAP))
}

/// `∂Δ^2 → Δ^0 → Δ^1`, landing on vertex 0; the fiber over vertex 1 is
/// empty.
pub fn boundary_to_vertex() -> SMap {
    let interval = Arc::new(standard_simplex(1));
    let v0 = Simplex::cell(0, interval.find(0, "0").expect("vertex 0"));
    let x = Arc::new(boundary(2));
    let images = (0..x.counts().len())
        .map(|d| {
            let constant: Vec<usize> = vec![0; d + 1];
            vec![v0.degenerate_by(&constant); x.cell_count(d)]
        })
        .collect();
    SMap::new(x, interval, images).expect("constant map")
}

/// A pair of maps with a common target.
#[derive(Clone, Debug)]
pub struct Cospan {
    pub name: &'static str,
    pub f: SMap,
    pub p: SMap,
}

/// The three pullback examples: a vertex of Δ^1 against `N(C4)×Δ^1`, the
/// vertex `a` of `N(C4)` against the double cover, and the identity of
/// `N(C4)` against the double cover.
pub fn ltg_cospans() -> Vec<Cospan> {
    let product = c4_times_interval();
    let interval = product.target().clone();
    let vertex = classifying_map(&interval, Simplex::cell(0, interval.find(0, "0").expect("vertex 0")));
    let cover = double_cover();
    let base = cover.target().clone();
    let a = classifying_map(&base, Simplex::cell(0, base.find(0, "a").expect("vertex a")));
    vec![
        Cospan { name: "product_vertex", f: vertex, p: product },
        Cospan { name: "cover_vertex", f: a, p: cover.clone() },
        Cospan { name: "cover_identity", f: SMap::identity(base), p: cover },
    ]
}
