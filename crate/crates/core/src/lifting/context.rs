use std::collections::HashMap;

use crate::simplicial::{SMap, Simplex, SimplicialSet};

/// All simplices of a set up to some degree, in canonical order, with face
/// indices precomputed.
pub(crate) struct Table {
    pub simplices: Vec<Vec<Simplex>>,
    pub index: Vec<HashMap<Simplex, u32>>,
    /// `faces[n][k][i]`: index of `d_i` of simplex `k` of degree `n`.
    pub faces: Vec<Vec<Vec<u32>>>,
}

impl Table {
    pub fn new(x: &SimplicialSet, top: usize) -> Self {
        let mut simplices = Vec::with_capacity(top + 1);
        let mut index = Vec::with_capacity(top + 1);
        let mut faces: Vec<Vec<Vec<u32>>> = Vec::with_capacity(top + 1);
        for n in 0..=top {
            let level = x.simplices(n);
            let idx: HashMap<Simplex, u32> = level.iter().enumerate().map(|(k, &s)| (s, k as u32)).collect();
            let f = if n == 0 {
                vec![Vec::new(); level.len()]
            } else {
                let below: &HashMap<Simplex, u32> = &index[n - 1];
                level.iter().map(|&s| (0..=n).map(|i| below[&x.face(s, i)]).collect()).collect()
            };
            simplices.push(level);
            index.push(idx);
            faces.push(f);
        }
        Self { simplices, index, faces }
    }

    pub fn lookup(&self, s: Simplex) -> u32 {
        self.index[s.degree()][&s]
    }
}

/// Precomputed data for lifting problems against `p: X → Y` up to degree
/// `top`.
pub(crate) struct LiftContext<'a> {
    pub p: &'a SMap,
    pub x: Table,
    pub y: Table,
    /// `image[n][k]`: index of `p(x_k)` among the n-simplices of Y.
    pub image: Vec<Vec<u32>>,
    /// `over[n][k]`: n-simplices of X over simplex `k` of Y, ascending.
    pub over: Vec<Vec<Vec<u32>>>,
}

impl<'a> LiftContext<'a> {
    pub fn new(p: &'a SMap, top: usize) -> Self {
        let x = Table::new(p.source(), top);
        let y = Table::new(p.target(), top);
        let mut image = Vec::with_capacity(top + 1);
        let mut over = Vec::with_capacity(top + 1);
        for n in 0..=top {
            let img: Vec<u32> = x.simplices[n].iter().map(|&s| y.lookup(p.apply(s))).collect();
            let mut o = vec![Vec::new(); y.simplices[n].len()];
            for (k, &t) in img.iter().enumerate() {
                o[t as usize].push(k as u32);
            }
            image.push(img);
            over.push(o);
        }
        Self { p, x, y, image, over }
    }

    pub fn xset(&self) -> &SimplicialSet {
        self.p.source()
    }

    pub fn yset(&self) -> &SimplicialSet {
        self.p.target()
    }

    /// Visits every horn `Λ^n_i → X` over the n-simplex `sigma` of Y, faces
    /// chosen in ascending canonical order. `first_filter` restricts the
    /// first face placed. The visitor returns `false` to stop.
    pub fn for_each_horn(
        &self,
        n: usize,
        i: usize,
        sigma: u32,
        first_filter: Option<&dyn Fn(u32) -> bool>,
        visit: &mut dyn FnMut(&[Option<u32>]) -> bool,
    ) -> bool {
        let positions: Vec<usize> = (0..=n).filter(|&j| j != i).collect();
        let mut chosen: Vec<Option<u32>> = vec![None; n + 1];
        self.horn_rec(n, sigma, &positions, 0, &mut chosen, first_filter, visit)
    }

    #[allow(clippy::too_many_arguments)]
    fn horn_rec(
        &self,
        n: usize,
        sigma: u32,
        positions: &[usize],
        depth: usize,
        chosen: &mut Vec<Option<u32>>,
        first_filter: Option<&dyn Fn(u32) -> bool>,
        visit: &mut dyn FnMut(&[Option<u32>]) -> bool,
    ) -> bool {
        if depth == positions.len() {
            return visit(chosen);
        }
        let j = positions[depth];
        let target = self.y.faces[n][sigma as usize][j];
        let xf = &self.x.faces[n - 1];
        for &cand in &self.over[n - 1][target as usize] {
            if depth == 0 {
                if let Some(f) = first_filter {
                    if !f(cand) {
                        continue;
                    }
                }
            }
            // d_k y_j = d_{j-1} y_k for every placed k < j
            let compatible = positions[..depth].iter().all(|&k| {
                let yk = chosen[k].unwrap();
                xf[cand as usize][k] == xf[yk as usize][j - 1]
            });
            if !compatible {
                continue;
            }
            chosen[j] = Some(cand);
            if !self.horn_rec(n, sigma, positions, depth + 1, chosen, first_filter, visit) {
                chosen[j] = None;
                return false;
            }
            chosen[j] = None;
        }
        true
    }

    /// The least n-simplex of X over `sigma` with the given faces.
    pub fn solve(&self, n: usize, sigma: u32, faces: &[Option<u32>]) -> Option<u32> {
        self.over[n][sigma as usize].iter().copied().find(|&x| {
            let xf = &self.x.faces[n][x as usize];
            faces.iter().enumerate().all(|(j, f)| f.is_none_or(|f| xf[j] == f))
        })
    }
}
