//! Products, pullbacks, fiber restriction and opposites.

use std::collections::HashMap;
use std::sync::Arc;

use super::simplex::{simplex_from_mask, Simplex};
use super::smap::SMap;
use super::sset::{FaceSpec, SimplicialSet, SimplicialSetBuilder};
use super::standard::{classifying_map, standard_simplex};
use super::SimplicialError;

/// A fiber product with its two projections.
#[derive(Clone, Debug)]
pub struct FiberProduct {
    pub object: Arc<SimplicialSet>,
    pub left: SMap,
    pub right: SMap,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct PairKey {
    a: Simplex,
    b: Simplex,
}

/// Masks `r` of `count` positions among `0..n`, avoiding `forbidden`.
fn masks_avoiding(n: usize, count: usize, forbidden: u64) -> Vec<u64> {
    let mut out = Vec::new();
    fn rec(pos: usize, n: usize, left: usize, forbidden: u64, acc: u64, out: &mut Vec<u64>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for t in pos..n {
            if forbidden & (1 << t) == 0 {
                rec(t + 1, n, left - 1, forbidden, acc | (1 << t), out);
            }
        }
    }
    rec(0, n, count, forbidden, 0, &mut out);
    out
}

/// Splits a pair of simplices into the common degeneracy and the
/// nondegenerate pair underneath it.
fn normalize_pair(a: Simplex, b: Simplex) -> (Vec<usize>, PairKey) {
    let n = a.degree();
    let common = a.repeat_mask() & b.repeat_mask();
    let eps = simplex_from_mask(n, common, n - common.count_ones() as usize, 0).surjection();
    let m = *eps.last().unwrap();
    let ea = a.surjection();
    let eb = b.surjection();
    let mut va = vec![0; m + 1];
    let mut vb = vec![0; m + 1];
    for t in 0..=n {
        va[eps[t]] = ea[t];
        vb[eps[t]] = eb[t];
    }
    let a2 = Simplex::from_surjection(&va, a.cell_dim(), a.cell_index());
    let b2 = Simplex::from_surjection(&vb, b.cell_dim(), b.cell_index());
    (eps, PairKey { a: a2, b: b2 })
}

fn pair_id(x: &SimplicialSet, y: &SimplicialSet, key: &PairKey) -> String {
    format!("({}|{})", x.describe(key.a), y.describe(key.b))
}

/// Nondegenerate simplices of `x × y` satisfying `keep`, assembled by
/// shuffle enumeration.
pub fn fiber_product(
    x: &Arc<SimplicialSet>,
    y: &Arc<SimplicialSet>,
    keep: impl Fn(Simplex, Simplex) -> bool,
) -> Result<FiberProduct, SimplicialError> {
    if !x.is_simplicial() || !y.is_simplicial() {
        return Err(SimplicialError::NeedsSimplicial);
    }
    let truncated = match (x.truncated_at(), y.truncated_at()) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    };
    let (dx, dy) = match (x.dimension(), y.dimension()) {
        (Some(a), Some(b)) => (a, b),
        _ => {
            let empty = Arc::new(SimplicialSet::empty(x.kind()));
            let left = SMap::new(empty.clone(), x.clone(), Vec::new())?;
            let right = SMap::new(empty.clone(), y.clone(), Vec::new())?;
            return Ok(FiberProduct { object: empty, left, right });
        }
    };
    let mut keys: Vec<PairKey> = Vec::new();
    for n in 0..=(dx + dy) {
        for p in 0..=dx.min(n) {
            for q in 0..=dy.min(n) {
                if p + q < n {
                    continue;
                }
                for ra in masks_avoiding(n, n - p, 0) {
                    for rb in masks_avoiding(n, n - q, ra) {
                        for ia in 0..x.cell_count(p) {
                            let a = simplex_from_mask(n, ra, p, ia);
                            for ib in 0..y.cell_count(q) {
                                let b = simplex_from_mask(n, rb, q, ib);
                                if keep(a, b) {
                                    keys.push(PairKey { a, b });
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let mut builder = SimplicialSetBuilder::new(x.kind()).truncated_at(truncated);
    for key in &keys {
        let n = key.a.degree();
        let faces = if n == 0 {
            Vec::new()
        } else {
            (0..=n)
                .map(|i| {
                    let (eps, inner) = normalize_pair(x.face(key.a, i), y.face(key.b, i));
                    let word = simplex_from_mask(
                        eps.len() - 1,
                        mask_of(&eps),
                        *eps.last().unwrap(),
                        0,
                    )
                    .word();
                    FaceSpec::degenerate(word, pair_id(x, y, &inner))
                })
                .collect()
        };
        builder.cell(n, pair_id(x, y, key), faces);
    }
    let object = Arc::new(builder.build_unchecked()?);
    let mut by_id: HashMap<(usize, String), PairKey> = HashMap::with_capacity(keys.len());
    for key in keys {
        by_id.insert((key.a.degree(), pair_id(x, y, &key)), key);
    }
    let lookup = |s: Simplex| by_id[&(s.cell_dim(), object.cell_id(s.cell_dim(), s.cell_index()).to_string())];
    let left = SMap::from_fn(object.clone(), x.clone(), |s| lookup(s).a)?;
    let right = SMap::from_fn(object.clone(), y.clone(), |s| lookup(s).b)?;
    Ok(FiberProduct { object, left, right })
}

impl FiberProduct {
    /// The simplex `(a, b)` of the product, if it lies in it.
    pub fn pair(&self, a: Simplex, b: Simplex) -> Option<Simplex> {
        if a.degree() != b.degree() {
            return None;
        }
        let (x, y) = (self.left.target(), self.right.target());
        let (eps, key) = normalize_pair(a, b);
        let dim = key.a.degree();
        let idx = self.object.find(dim, &pair_id(x, y, &key))?;
        Some(Simplex::from_surjection(&eps, dim, idx))
    }
}

fn mask_of(values: &[usize]) -> u64 {
    (0..values.len() - 1).filter(|&t| values[t] == values[t + 1]).fold(0, |acc, t| acc | (1 << t))
}

/// The categorical product with its projections.
pub fn product(x: &Arc<SimplicialSet>, y: &Arc<SimplicialSet>) -> Result<FiberProduct, SimplicialError> {
    fiber_product(x, y, |_, _| true)
}

/// `Y' ×_Y X` for `f: Y' → Y` and `p: X → Y`; `left` projects to `Y'`,
/// `right` to `X`.
pub fn pullback(f: &SMap, p: &SMap) -> Result<FiberProduct, SimplicialError> {
    if !Arc::ptr_eq(f.target(), p.target()) && **f.target() != **p.target() {
        return Err(SimplicialError::CospanMismatch);
    }
    fiber_product(f.source(), p.source(), |a, b| f.apply(a) == p.apply(b))
}

/// `X|_σ = Δ^n ×_Y X` with its projection to Δ^n and its map to `X`.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub object: Arc<SimplicialSet>,
    pub to_simplex: SMap,
    pub to_total: SMap,
}

pub fn restrict_over_simplex(p: &SMap, sigma: Simplex) -> Result<Restriction, SimplicialError> {
    let c = classifying_map(p.target(), sigma);
    let fp = pullback(&c, p)?;
    Ok(Restriction { object: fp.object, to_simplex: fp.left, to_total: fp.right })
}

/// Restriction of a fiber over Δ^n further along the vertex `k`, together
/// with its inclusion into that fiber.
pub fn vertex_subfiber(over_simplex: &SMap, k: usize) -> Result<(Arc<SimplicialSet>, SMap), SimplicialError> {
    let delta = over_simplex.target().clone();
    let n = delta.dimension().unwrap_or(0);
    let top = Simplex::cell(n, 0);
    debug_assert_eq!(delta.cell_count(n), 1);
    let vertex = classifying_map(&delta, delta.vertex(top, k));
    let fp = pullback(&vertex, over_simplex)?;
    Ok((fp.object, fp.right))
}

impl SimplicialSet {
    /// Reverses vertex order: `d_i ↦ d_{n-i}`, `s_j ↦ s_{n-j}`. Identifiers
    /// are unchanged.
    pub fn opposite(&self) -> SimplicialSet {
        let mut b = SimplicialSetBuilder::new(self.kind()).truncated_at(self.truncated_at());
        for s in self.nondegenerate() {
            let n = s.cell_dim();
            let cell = &self.cells(n)[s.cell_index()];
            let faces = (0..cell.faces.len())
                .map(|i| {
                    let f = cell.faces[n - i].opposite();
                    FaceSpec::degenerate(f.word(), self.cell_id(f.cell_dim(), f.cell_index()))
                })
                .collect();
            b.cell(n, cell.id.clone(), faces);
        }
        b.build_unchecked().expect("opposite of a valid set is valid")
    }
}

/// The opposite of a map; cell indices carry over because identifiers do.
pub fn opposite_map(f: &SMap) -> SMap {
    let source = Arc::new(f.source().opposite());
    let target = Arc::new(f.target().opposite());
    let images = f.images().iter().map(|level| level.iter().map(|s| s.opposite()).collect()).collect();
    SMap::new_unchecked(source, target, images).expect("opposite preserves shape")
}

impl SMap {
    /// Bijective on nondegenerate cells, with nondegenerate images.
    pub fn is_isomorphism(&self) -> bool {
        let s = self.source().counts();
        let t = self.target().counts();
        s == t && self.is_injective()
    }
}

/// Δ^0.
pub fn point() -> Arc<SimplicialSet> {
    Arc::new(standard_simplex(0))
}
