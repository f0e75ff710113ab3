use std::sync::Arc;

use super::simplex::Simplex;
use super::sset::{SimplexRef, SimplicialSet};
use super::SimplicialError;

/// A map of simplicial sets, given by the image of every nondegenerate cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SMap {
    source: Arc<SimplicialSet>,
    target: Arc<SimplicialSet>,
    images: Vec<Vec<Simplex>>,
}

impl SMap {
    /// Builds a map and checks that it commutes with all face operators.
    pub fn new(
        source: Arc<SimplicialSet>,
        target: Arc<SimplicialSet>,
        images: Vec<Vec<Simplex>>,
    ) -> Result<Self, SimplicialError> {
        let map = Self::new_unchecked(source, target, images)?;
        map.validate()?;
        Ok(map)
    }

    /// Only checks shapes and degrees.
    pub fn new_unchecked(
        source: Arc<SimplicialSet>,
        target: Arc<SimplicialSet>,
        mut images: Vec<Vec<Simplex>>,
    ) -> Result<Self, SimplicialError> {
        let levels = source.dimension().map_or(0, |d| d + 1);
        images.resize(levels, Vec::new());
        for (n, level) in images.iter().enumerate() {
            if level.len() != source.cell_count(n) {
                return Err(SimplicialError::MapShape { degree: n });
            }
            for (i, s) in level.iter().enumerate() {
                if s.degree() != n
                    || s.cell_dim() >= target.counts().len()
                    || s.cell_index() >= target.cell_count(s.cell_dim())
                {
                    return Err(SimplicialError::MapDegree { cell: source.cell_id(n, i).to_string() });
                }
                if !target.is_simplicial() && s.is_degenerate() {
                    return Err(SimplicialError::MapDegree { cell: source.cell_id(n, i).to_string() });
                }
            }
        }
        Ok(Self { source, target, images })
    }

    /// Builds a map from a function on nondegenerate cells.
    pub fn from_fn(
        source: Arc<SimplicialSet>,
        target: Arc<SimplicialSet>,
        mut f: impl FnMut(Simplex) -> Simplex,
    ) -> Result<Self, SimplicialError> {
        let levels = source.dimension().map_or(0, |d| d + 1);
        let images = (0..levels)
            .map(|n| (0..source.cell_count(n)).map(|i| f(Simplex::cell(n, i))).collect())
            .collect();
        Self::new(source, target, images)
    }

    pub fn identity(x: Arc<SimplicialSet>) -> Self {
        let levels = x.dimension().map_or(0, |d| d + 1);
        let images = (0..levels).map(|n| (0..x.cell_count(n)).map(|i| Simplex::cell(n, i)).collect()).collect();
        Self { source: x.clone(), target: x, images }
    }

    /// The map from `x` to the one-point set.
    pub fn terminal(x: Arc<SimplicialSet>) -> Self {
        let point = Arc::new(super::standard::standard_simplex(0));
        let levels = x.dimension().map_or(0, |d| d + 1);
        let images = (0..levels)
            .map(|n| {
                let collapse: Vec<usize> = vec![0; n + 1];
                (0..x.cell_count(n)).map(|_| Simplex::from_surjection(&collapse, 0, 0)).collect()
            })
            .collect();
        Self { source: x, target: point, images }
    }

    pub fn source(&self) -> &Arc<SimplicialSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SimplicialSet> {
        &self.target
    }

    pub fn cell_image(&self, degree: usize, idx: usize) -> Simplex {
        self.images[degree][idx]
    }

    /// Image of an arbitrary simplex of the source.
    pub fn apply(&self, s: Simplex) -> Simplex {
        let img = self.images[s.cell_dim()][s.cell_index()];
        if s.is_degenerate() {
            img.degenerate_by(&s.surjection())
        } else {
            img
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SMap) -> Result<SMap, SimplicialError> {
        if *self.target != *other.source {
            return Err(SimplicialError::Incomposable);
        }
        let images = self
            .images
            .iter()
            .map(|level| level.iter().map(|&s| other.apply(s)).collect())
            .collect();
        Ok(SMap { source: self.source.clone(), target: other.target.clone(), images })
    }

    /// Whether the map is injective on nondegenerate cells and sends them to
    /// nondegenerate cells.
    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.images.iter().flatten().all(|s| !s.is_degenerate() && seen.insert(*s))
    }

    pub fn image_ref(&self, s: Simplex) -> SimplexRef {
        self.target.to_ref(self.apply(s))
    }

    /// Checks `f(d_i x) = d_i f(x)` for every cell and face.
    pub fn validate(&self) -> Result<(), SimplicialError> {
        for n in 1..self.images.len() {
            for idx in 0..self.images[n].len() {
                let x = Simplex::cell(n, idx);
                let fx = self.images[n][idx];
                for i in 0..=n {
                    let lhs = self.apply(self.source.face(x, i));
                    let rhs = self.target.face(fx, i);
                    if lhs != rhs {
                        return Err(SimplicialError::NotSimplicial {
                            cell: self.source.cell_id(n, idx).to_string(),
                            face: i,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub(crate) fn images(&self) -> &[Vec<Simplex>] {
        &self.images
    }
}
