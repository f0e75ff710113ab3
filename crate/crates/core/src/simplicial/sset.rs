use std::collections::HashMap;

use super::simplex::{epi_mono, simplex_from_mask, surjection_masks, DegeneracyWord, Simplex, MAX_DEGREE};
use super::SimplicialError;

/// Whether degeneracies exist.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Simplicial,
    SemiSimplicial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub id: String,
    /// `d_0, ..., d_n`; empty for vertices.
    pub faces: Vec<Simplex>,
}

/// A finite simplicial (or semi-simplicial) set presented by its
/// nondegenerate cells.
///
/// Cells of each degree are kept sorted by identifier, so cell indices agree
/// with lexicographic identifier order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialSet {
    kind: Kind,
    cells: Vec<Vec<Cell>>,
    index: Vec<HashMap<String, usize>>,
    truncated_at: Option<usize>,
}

impl SimplicialSet {
    pub fn empty(kind: Kind) -> Self {
        Self { kind, cells: Vec::new(), index: Vec::new(), truncated_at: None }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn is_simplicial(&self) -> bool {
        self.kind == Kind::Simplicial
    }

    /// Highest degree with a cell; `None` for the empty set.
    pub fn dimension(&self) -> Option<usize> {
        self.cells.iter().rposition(|c| !c.is_empty())
    }

    pub fn is_empty(&self) -> bool {
        self.dimension().is_none()
    }

    /// Degree above which a nerve was cut off, if it was.
    pub fn truncated_at(&self) -> Option<usize> {
        self.truncated_at
    }

    pub fn with_truncation(mut self, degree: Option<usize>) -> Self {
        self.truncated_at = degree;
        self
    }

    pub fn cells(&self, degree: usize) -> &[Cell] {
        self.cells.get(degree).map(|c| c.as_slice()).unwrap_or(&[])
    }

    pub fn cell_count(&self, degree: usize) -> usize {
        self.cells(degree).len()
    }

    /// Nondegenerate cell counts in degrees `0..=dimension`.
    pub fn counts(&self) -> Vec<usize> {
        match self.dimension() {
            None => Vec::new(),
            Some(d) => (0..=d).map(|k| self.cell_count(k)).collect(),
        }
    }

    pub fn cell_id(&self, degree: usize, idx: usize) -> &str {
        &self.cells[degree][idx].id
    }

    pub fn find(&self, degree: usize, id: &str) -> Option<usize> {
        self.index.get(degree)?.get(id).copied()
    }

    /// Looks up an identifier in any degree; errors on ambiguity.
    pub fn find_any(&self, id: &str) -> Result<Simplex, SimplicialError> {
        let hits: Vec<(usize, usize)> =
            self.index.iter().enumerate().filter_map(|(d, m)| m.get(id).map(|&i| (d, i))).collect();
        match hits.as_slice() {
            [(d, i)] => Ok(Simplex::cell(*d, *i)),
            [] => Err(SimplicialError::UnknownCell(id.to_string())),
            _ => Err(SimplicialError::AmbiguousCell(id.to_string())),
        }
    }

    /// The stored face `d_i` of a nondegenerate cell.
    pub fn cell_face(&self, degree: usize, idx: usize, i: usize) -> Simplex {
        self.cells[degree][idx].faces[i]
    }

    /// Iterates nondegenerate cells as simplices, degree by degree.
    pub fn nondegenerate(&self) -> impl Iterator<Item = Simplex> + '_ {
        self.cells
            .iter()
            .enumerate()
            .flat_map(|(d, cells)| (0..cells.len()).map(move |i| Simplex::cell(d, i)))
    }

    /// Applies the simplicial operator `θ: [k] → [n]` (given by its values)
    /// to an n-simplex.
    pub fn apply(&self, s: Simplex, theta: &[usize]) -> Simplex {
        let eta = s.surjection();
        let values: Vec<usize> = theta.iter().map(|&t| eta[t]).collect();
        self.apply_to_cell(s.cell_dim(), s.cell_index(), values)
    }

    fn apply_to_cell(&self, dim: usize, cell: usize, values: Vec<usize>) -> Simplex {
        let (surj, image) = epi_mono(&values);
        if image.len() == dim + 1 {
            return Simplex::from_surjection(&surj, dim, cell);
        }
        // Peel off the largest missing vertex through a stored face.
        let missing = (0..=dim).rev().find(|v| image.binary_search(v).is_err()).unwrap();
        let face = self.cell_face(dim, cell, missing);
        let shifted: Vec<usize> = values.iter().map(|&v| if v > missing { v - 1 } else { v }).collect();
        self.apply(face, &shifted)
    }

    /// The face `d_i` of any simplex.
    pub fn face(&self, s: Simplex, i: usize) -> Simplex {
        let n = s.degree();
        assert!(n > 0 && i <= n, "d_{i} of a simplex of degree {n}");
        let theta: Vec<usize> = (0..n).map(|t| if t < i { t } else { t + 1 }).collect();
        self.apply(s, &theta)
    }

    /// The vertex `k` of a simplex.
    pub fn vertex(&self, s: Simplex, k: usize) -> Simplex {
        self.apply(s, &[k])
    }

    /// The edge between vertices `a < b`.
    pub fn edge(&self, s: Simplex, a: usize, b: usize) -> Simplex {
        self.apply(s, &[a, b])
    }

    /// All simplices of a degree, including degenerate ones, in canonical
    /// order: word length, then word, then cell identifier.
    pub fn simplices(&self, degree: usize) -> Vec<Simplex> {
        let mut out = Vec::new();
        if degree > MAX_DEGREE {
            return out;
        }
        let top = match self.kind {
            Kind::Simplicial => 0,
            Kind::SemiSimplicial => degree,
        };
        for cell_dim in (top..=degree).rev() {
            if cell_dim >= self.cells.len() {
                continue;
            }
            for mask in surjection_masks(degree, cell_dim) {
                for idx in 0..self.cells[cell_dim].len() {
                    out.push(simplex_from_mask(degree, mask, cell_dim, idx));
                }
            }
        }
        out
    }

    /// Readable rendering: the cell id, prefixed by `s[word]` when degenerate.
    pub fn describe(&self, s: Simplex) -> String {
        let id = self.cell_id(s.cell_dim(), s.cell_index());
        if s.is_degenerate() {
            format!("s[{}]{}", s.word(), id)
        } else {
            id.to_string()
        }
    }

    /// `(word, id)` pair as used in documents and witnesses.
    pub fn to_ref(&self, s: Simplex) -> SimplexRef {
        SimplexRef { word: s.word(), id: self.cell_id(s.cell_dim(), s.cell_index()).to_string(), degree: s.degree() }
    }

    pub fn resolve(&self, r: &SimplexRef) -> Result<Simplex, SimplicialError> {
        let cell_dim = r
            .degree
            .checked_sub(r.word.len())
            .ok_or_else(|| SimplicialError::BadWord(r.word.to_string()))?;
        let idx = self
            .find(cell_dim, &r.id)
            .ok_or_else(|| SimplicialError::UnknownCell(format!("{} (degree {})", r.id, cell_dim)))?;
        Simplex::from_word(&r.word, cell_dim, idx)
    }

    /// Checks face references and the simplicial identities on every cell.
    pub fn validate(&self) -> Result<(), SimplicialError> {
        for (n, cells) in self.cells.iter().enumerate() {
            for cell in cells {
                let expected = if n == 0 { 0 } else { n + 1 };
                if cell.faces.len() != expected {
                    return Err(SimplicialError::FaceCount { cell: cell.id.clone(), expected, found: cell.faces.len() });
                }
                for (i, f) in cell.faces.iter().enumerate() {
                    if f.degree() != n - 1 || f.cell_dim() >= self.cells.len() || f.cell_index() >= self.cells[f.cell_dim()].len() {
                        return Err(SimplicialError::FaceDegree { cell: cell.id.clone(), face: i });
                    }
                    if self.kind == Kind::SemiSimplicial && f.is_degenerate() {
                        return Err(SimplicialError::DegenerateInSemi { cell: cell.id.clone(), face: i });
                    }
                }
            }
        }
        for (n, cells) in self.cells.iter().enumerate().skip(2) {
            for (idx, cell) in cells.iter().enumerate() {
                let x = Simplex::cell(n, idx);
                for j in 1..=n {
                    for i in 0..j {
                        let lhs = self.face(self.face(x, j), i);
                        let rhs = self.face(self.face(x, i), j - 1);
                        if lhs != rhs {
                            return Err(SimplicialError::Identity { cell: cell.id.clone(), i, j });
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// A simplex named by identifier: degree, degeneracy word and cell id.
#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct SimplexRef {
    pub degree: usize,
    pub word: DegeneracyWord,
    pub id: String,
}

impl SimplexRef {
    pub fn nondegenerate(degree: usize, id: impl Into<String>) -> Self {
        Self { degree, word: DegeneracyWord::empty(), id: id.into() }
    }

    pub fn as_pair(&self) -> (String, String) {
        (self.word.to_string(), self.id.clone())
    }
}

impl std::fmt::Display for SimplexRef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.word.is_empty() {
            f.write_str(&self.id)
        } else {
            write!(f, "s[{}]{}", self.word, self.id)
        }
    }
}

/// Face reference used while building: word plus cell id, resolved at the end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceSpec {
    pub word: DegeneracyWord,
    pub id: String,
}

impl FaceSpec {
    pub fn cell(id: impl Into<String>) -> Self {
        Self { word: DegeneracyWord::empty(), id: id.into() }
    }

    pub fn degenerate(word: DegeneracyWord, id: impl Into<String>) -> Self {
        Self { word, id: id.into() }
    }
}

/// Accumulates cells by identifier and produces a validated set.
#[derive(Clone, Debug)]
pub struct SimplicialSetBuilder {
    kind: Kind,
    cells: Vec<Vec<(String, Vec<FaceSpec>)>>,
    truncated_at: Option<usize>,
}

impl SimplicialSetBuilder {
    pub fn new(kind: Kind) -> Self {
        Self { kind, cells: Vec::new(), truncated_at: None }
    }

    pub fn truncated_at(mut self, degree: Option<usize>) -> Self {
        self.truncated_at = degree;
        self
    }

    pub fn vertex(&mut self, id: impl Into<String>) -> &mut Self {
        self.cell(0, id, Vec::new())
    }

    pub fn cell(&mut self, degree: usize, id: impl Into<String>, faces: Vec<FaceSpec>) -> &mut Self {
        while self.cells.len() <= degree {
            self.cells.push(Vec::new());
        }
        self.cells[degree].push((id.into(), faces));
        self
    }

    /// Resolves faces and validates; does not re-check simplicial identities.
    pub fn build_unchecked(self) -> Result<SimplicialSet, SimplicialError> {
        let mut cells: Vec<Vec<(String, Vec<FaceSpec>)>> = self.cells;
        while cells.last().is_some_and(|c| c.is_empty()) {
            cells.pop();
        }
        let mut index: Vec<HashMap<String, usize>> = Vec::with_capacity(cells.len());
        for (d, level) in cells.iter_mut().enumerate() {
            level.sort_by(|a, b| a.0.cmp(&b.0));
            let mut map = HashMap::with_capacity(level.len());
            for (i, (id, _)) in level.iter().enumerate() {
                if map.insert(id.clone(), i).is_some() {
                    return Err(SimplicialError::DuplicateId { degree: d, id: id.clone() });
                }
            }
            index.push(map);
        }
        let mut out_cells: Vec<Vec<Cell>> = Vec::with_capacity(cells.len());
        for (n, level) in cells.iter().enumerate() {
            let mut out = Vec::with_capacity(level.len());
            for (id, faces) in level {
                let expected = if n == 0 { 0 } else { n + 1 };
                if faces.len() != expected {
                    return Err(SimplicialError::FaceCount { cell: id.clone(), expected, found: faces.len() });
                }
                let mut resolved = Vec::with_capacity(faces.len());
                for (i, f) in faces.iter().enumerate() {
                    let cell_dim = (n - 1)
                        .checked_sub(f.word.len())
                        .ok_or_else(|| SimplicialError::FaceDegree { cell: id.clone(), face: i })?;
                    if self.kind == Kind::SemiSimplicial && !f.word.is_empty() {
                        return Err(SimplicialError::DegenerateInSemi { cell: id.clone(), face: i });
                    }
                    let idx = index
                        .get(cell_dim)
                        .and_then(|m| m.get(&f.id))
                        .copied()
                        .ok_or_else(|| SimplicialError::MissingFace { cell: id.clone(), face: i, target: f.id.clone(), degree: cell_dim })?;
                    resolved.push(Simplex::from_word(&f.word, cell_dim, idx)?);
                }
                out.push(Cell { id: id.clone(), faces: resolved });
            }
            out_cells.push(out);
        }
        Ok(SimplicialSet { kind: self.kind, cells: out_cells, index, truncated_at: self.truncated_at })
    }

    pub fn build(self) -> Result<SimplicialSet, SimplicialError> {
        let s = self.build_unchecked()?;
        s.validate()?;
        Ok(s)
    }
}
