//! Δ^n, its boundary and horns, sub-objects, skeleta and classifying maps.

use std::sync::Arc;

use super::simplex::Simplex;
use super::smap::SMap;
use super::sset::{FaceSpec, Kind, SimplicialSet, SimplicialSetBuilder};
use super::SimplicialError;

/// Identifier of the face of Δ^n spanned by a vertex subset.
pub fn subset_id(vertices: &[usize]) -> String {
    vertices.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..=n {
            if n + 1 - v < k - cur.len() {
                break;
            }
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn simplex_filtered(n: usize, keep: impl Fn(&[usize]) -> bool) -> SimplicialSet {
    let mut b = SimplicialSetBuilder::new(Kind::Simplicial);
    for k in 0..=n {
        for s in subsets(n, k + 1) {
            if !keep(&s) {
                continue;
            }
            let faces = if k == 0 {
                Vec::new()
            } else {
                (0..=k)
                    .map(|i| {
                        let mut f = s.clone();
                        f.remove(i);
                        FaceSpec::cell(subset_id(&f))
                    })
                    .collect()
            };
            b.cell(k, subset_id(&s), faces);
        }
    }
    b.build_unchecked().expect("standard simplex is well formed")
}

/// Δ^n: one nondegenerate k-cell per (k+1)-element vertex subset.
pub fn standard_simplex(n: usize) -> SimplicialSet {
    simplex_filtered(n, |_| true)
}

/// ∂Δ^n; empty for n = 0.
pub fn boundary(n: usize) -> SimplicialSet {
    if n == 0 {
        return SimplicialSet::empty(Kind::Simplicial);
    }
    simplex_filtered(n, |s| s.len() < n + 1)
}

/// Λ^n_i: the boundary without the face opposite vertex `i`.
pub fn horn(n: usize, i: usize) -> Result<SimplicialSet, SimplicialError> {
    if n == 0 || i > n {
        return Err(SimplicialError::BadHorn { n, i });
    }
    Ok(simplex_filtered(n, |s| s.len() < n + 1 && !(s.len() == n && !s.contains(&i))))
}

/// The vertex subset of a cell of Δ^n (parsed back from its identifier).
pub fn subset_of(x: &SimplicialSet, s: Simplex) -> Vec<usize> {
    x.cell_id(s.cell_dim(), s.cell_index()).split(',').map(|p| p.parse().expect("Δ^n identifier")).collect()
}

/// Inclusion of a sub-object into `ambient`, matching cells by identifier.
pub fn inclusion(sub: Arc<SimplicialSet>, ambient: Arc<SimplicialSet>) -> Result<SMap, SimplicialError> {
    let mut missing = None;
    let map = SMap::from_fn(sub.clone(), ambient.clone(), |s| {
        let id = sub.cell_id(s.cell_dim(), s.cell_index());
        match ambient.find(s.cell_dim(), id) {
            Some(idx) => Simplex::cell(s.cell_dim(), idx),
            None => {
                missing.get_or_insert_with(|| id.to_string());
                Simplex::cell(0, 0)
            }
        }
    });
    if let Some(id) = missing {
        return Err(SimplicialError::UnknownCell(id));
    }
    map
}

/// The sub-object on cells selected by `keep`, which must be closed under
/// faces.
pub fn sub_object(x: &SimplicialSet, keep: impl Fn(Simplex) -> bool) -> Result<SimplicialSet, SimplicialError> {
    let mut b = SimplicialSetBuilder::new(x.kind()).truncated_at(x.truncated_at());
    for s in x.nondegenerate() {
        if !keep(s) {
            continue;
        }
        let cell = &x.cells(s.cell_dim())[s.cell_index()];
        let faces = cell
            .faces
            .iter()
            .map(|f| FaceSpec::degenerate(f.word(), x.cell_id(f.cell_dim(), f.cell_index())))
            .collect();
        b.cell(s.cell_dim(), cell.id.clone(), faces);
    }
    b.build_unchecked()
}

/// The n-skeleton with its inclusion; n = -1 gives the empty set.
pub fn skeleton(y: &Arc<SimplicialSet>, n: isize) -> Result<(Arc<SimplicialSet>, SMap), SimplicialError> {
    let sk = Arc::new(sub_object(y, |s| (s.cell_dim() as isize) <= n)?);
    let incl = inclusion(sk.clone(), y.clone())?;
    Ok((sk, incl))
}

/// The map Δ^n → X classifying an n-simplex of X.
pub fn classifying_map(x: &Arc<SimplicialSet>, s: Simplex) -> SMap {
    let n = s.degree();
    let delta = Arc::new(standard_simplex(n));
    let images: Vec<Vec<Simplex>> = (0..=n)
        .map(|k| {
            (0..delta.cell_count(k))
                .map(|idx| {
                    let vs = subset_of(&delta, Simplex::cell(k, idx));
                    x.apply(s, &vs)
                })
                .collect()
        })
        .collect();
    SMap::new_unchecked(delta, x.clone(), images).expect("classifying map has correct shape")
}

/// The map Δ^k → Δ^n sending vertex j to `vertices[j]` (monotone).
pub fn simplex_operator_map(k: usize, n: usize, vertices: &[usize]) -> SMap {
    let target = Arc::new(standard_simplex(n));
    let top = target.find(n, &subset_id(&(0..=n).collect::<Vec<_>>())).unwrap();
    let s = target.apply(Simplex::cell(n, top), vertices);
    debug_assert_eq!(s.degree(), k);
    classifying_map(&target, s)
}
