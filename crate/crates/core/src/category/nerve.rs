use std::sync::Arc;

use super::{FiniteCategory, Functor};
use crate::simplicial::{DegeneracyWord, FaceSpec, Kind, SMap, Simplex, SimplicialSet, SimplicialSetBuilder};

/// Degree cap applied to nerves of categories with non-identity cycles.
pub const DEFAULT_NERVE_CAP: usize = 4;

/// Identifier of the nerve cell for a string of composable non-identity
/// morphisms starting at `start`: the object for the empty string, the
/// morphism ids joined by `;` otherwise.
pub fn string_id(c: &FiniteCategory, start: usize, string: &[usize]) -> String {
    if string.is_empty() {
        c.object_id(start).to_string()
    } else {
        string.iter().map(|&m| c.morphism_id(m)).collect::<Vec<_>>().join(";")
    }
}

fn strings(c: &FiniteCategory, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = c.non_identity().map(|m| vec![m]).collect();
    stack.reverse();
    while let Some(s) = stack.pop() {
        if s.len() < max_len {
            let last = c.tgt(*s.last().unwrap());
            let mut next: Vec<Vec<usize>> = c
                .non_identity()
                .filter(|&m| c.src(m) == last)
                .map(|m| {
                    let mut t = s.clone();
                    t.push(m);
                    t
                })
                .collect();
            next.reverse();
            stack.extend(next);
        }
        out.push(s);
    }
    out
}

/// The nerve: nondegenerate n-cells are strings of n composable non-identity
/// morphisms. Inner faces compose; an identity composite becomes a
/// degeneracy. Categories with non-identity cycles are cut off above `cap`.
pub fn nerve(c: &FiniteCategory, cap: usize) -> SimplicialSet {
    let cyclic = c.has_nonidentity_cycle();
    let max_len = if cyclic { cap } else { c.object_count() };
    let mut b = SimplicialSetBuilder::new(Kind::Simplicial).truncated_at(cyclic.then_some(cap));
    for o in 0..c.object_count() {
        b.vertex(c.object_id(o));
    }
    for s in strings(c, max_len) {
        let n = s.len();
        let start = c.src(s[0]);
        let faces: Vec<FaceSpec> = if n == 1 {
            vec![FaceSpec::cell(c.object_id(c.tgt(s[0]))), FaceSpec::cell(c.object_id(start))]
        } else {
            (0..=n)
                .map(|i| {
                    if i == 0 {
                        FaceSpec::cell(string_id(c, c.tgt(s[0]), &s[1..]))
                    } else if i == n {
                        FaceSpec::cell(string_id(c, start, &s[..n - 1]))
                    } else {
                        let h = c.compose(s[i], s[i - 1]).expect("composable string");
                        if c.is_identity(h) {
                            let rest: Vec<usize> = s[..i - 1].iter().chain(&s[i + 1..]).copied().collect();
                            let word = DegeneracyWord::new(vec![i - 1]).expect("single index");
                            FaceSpec::degenerate(word, string_id(c, start, &rest))
                        } else {
                            let mut t = s.clone();
                            t.splice(i - 1..=i, [h]);
                            FaceSpec::cell(string_id(c, start, &t))
                        }
                    }
                })
                .collect()
        };
        b.cell(n, string_id(c, start, &s), faces);
    }
    b.build_unchecked().expect("nerve is well formed")
}

/// The simplex of `N(D)` for a string of arbitrary composable morphisms,
/// identities becoming degeneracies.
pub(crate) fn string_simplex(d: &FiniteCategory, nd: &SimplicialSet, start: usize, string: &[usize]) -> Simplex {
    let kept: Vec<usize> = string.iter().copied().filter(|&m| !d.is_identity(m)).collect();
    let mut values = vec![0usize];
    for &m in string {
        let v = *values.last().unwrap();
        values.push(if d.is_identity(m) { v } else { v + 1 });
    }
    let id = string_id(d, start, &kept);
    let idx = nd.find(kept.len(), &id).expect("string lies in the nerve");
    Simplex::from_surjection(&values, kept.len(), idx)
}

/// `N(F)` between the nerves built with the same cap.
pub fn nerve_functor(f: &Functor, cap: usize) -> SMap {
    let (c, d) = (f.source(), f.target());
    let nc = Arc::new(nerve(c, cap));
    let nd = Arc::new(nerve(d, cap));
    nerve_map(f, nc, nd)
}

pub(crate) fn nerve_map(f: &Functor, nc: Arc<SimplicialSet>, nd: Arc<SimplicialSet>) -> SMap {
    let (c, d) = (f.source(), f.target());
    let levels = nc.dimension().map_or(0, |x| x + 1);
    let mut images = Vec::with_capacity(levels);
    for n in 0..levels {
        let level = nc
            .cells(n)
            .iter()
            .map(|cell| {
                if n == 0 {
                    let o = c.object(&cell.id).expect("vertex is an object");
                    let t = d.object_id(f.on_object(o));
                    Simplex::cell(0, nd.find(0, t).expect("object of the target"))
                } else {
                    let s: Vec<usize> = cell.id.split(';').map(|m| c.morphism(m).expect("morphism id")).collect();
                    let image: Vec<usize> = s.iter().map(|&m| f.on_morphism(m)).collect();
                    string_simplex(d, &nd, f.on_object(c.src(s[0])), &image)
                }
            })
            .collect();
        images.push(level);
    }
    // A target truncated below the source would lose cells; both use one cap.
    SMap::new_unchecked(nc, nd, images).expect("nerve of a functor is well formed")
}
