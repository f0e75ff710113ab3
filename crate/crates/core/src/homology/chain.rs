use super::matrix::IntMatrix;
use crate::simplicial::{SMap, SimplicialSet};

/// Normalized chains: one generator per nondegenerate cell.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    ranks: Vec<usize>,
    /// `boundaries[k]` is `∂_k: C_k → C_{k-1}`; `∂_0` has zero rows.
    boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, k: usize) -> usize {
        self.ranks.get(k).copied().unwrap_or(0)
    }

    /// `∂_k` as a `rank(k-1) × rank(k)` matrix.
    pub fn boundary(&self, k: usize) -> IntMatrix {
        match self.boundaries.get(k) {
            Some(m) => m.clone(),
            None => IntMatrix::zeros(if k == 0 { 0 } else { self.rank(k - 1) }, self.rank(k)),
        }
    }

    pub fn top_degree(&self) -> Option<usize> {
        self.ranks.len().checked_sub(1)
    }

    /// `∂_{k} ∘ ∂_{k+1} = 0` for all k.
    pub fn is_complex(&self) -> bool {
        (2..self.ranks.len()).all(|k| (&self.boundary(k - 1) * &self.boundary(k)).is_zero())
    }
}

/// The normalized chain complex; degenerate faces contribute zero. For
/// semi-simplicial input every cell is a generator and no face is degenerate.
pub fn chain_complex(x: &SimplicialSet) -> ChainComplex {
    let ranks = x.counts();
    let mut boundaries = Vec::with_capacity(ranks.len());
    for k in 0..ranks.len() {
        if k == 0 {
            boundaries.push(IntMatrix::zeros(0, ranks[0]));
            continue;
        }
        let mut m = IntMatrix::zeros(ranks[k - 1], ranks[k]);
        for (j, cell) in x.cells(k).iter().enumerate() {
            for (i, f) in cell.faces.iter().enumerate() {
                if f.is_degenerate() {
                    continue;
                }
                m.add_to(f.cell_index(), j, if i % 2 == 0 { 1 } else { -1 });
            }
        }
        boundaries.push(m);
    }
    ChainComplex { ranks, boundaries }
}

/// The chain map in degree `k`: nondegenerate images map to their cell,
/// degenerate images to zero.
pub fn chain_map(f: &SMap, k: usize) -> IntMatrix {
    let rows = f.target().cell_count(k);
    let cols = f.source().cell_count(k);
    let mut m = IntMatrix::zeros(rows, cols);
    for j in 0..cols {
        let img = f.cell_image(k, j);
        if !img.is_degenerate() {
            m.add_to(img.cell_index(), j, 1);
        }
    }
    m
}
