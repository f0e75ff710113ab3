//! Simplices in Eilenberg–Zilber normal form.
//!
//! Every simplex of a simplicial set is uniquely `s_{j_1} ... s_{j_k} x` with
//! `j_1 > ... > j_k` and `x` nondegenerate. The degeneracy part is the
//! monotone surjection `η: [n] → [m]` with `X(η)(x)` equal to the simplex, and
//! `η(t) = η(t+1)` exactly when `t` is one of the `j`s. We store that repeat
//! set as a bitmask.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::SimplicialError;

/// Highest simplex degree the bitmask encoding supports.
pub const MAX_DEGREE: usize = 63;

/// A strictly decreasing sequence of degeneracy indices, e.g. `s_2 s_0`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct DegeneracyWord(Vec<usize>);

impl DegeneracyWord {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// Builds a word, rejecting sequences that are not strictly decreasing.
    pub fn new(indices: Vec<usize>) -> Result<Self, SimplicialError> {
        if indices.windows(2).any(|w| w[0] <= w[1]) {
            return Err(SimplicialError::BadWord(
                indices.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(","),
            ));
        }
        Ok(Self(indices))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for DegeneracyWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl From<DegeneracyWord> for String {
    fn from(w: DegeneracyWord) -> String {
        w.to_string()
    }
}

impl TryFrom<String> for DegeneracyWord {
    type Error = SimplicialError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl FromStr for DegeneracyWord {
    type Err = SimplicialError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim().is_empty() {
            return Ok(Self::empty());
        }
        let indices = s
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| SimplicialError::BadWord(s.to_string()))?;
        Self::new(indices)
    }
}

/// A simplex of some simplicial set: a degeneracy operator applied to a
/// nondegenerate cell.
///
/// `cell` indexes the cells of degree `cell_dim` in the owning set. The
/// encoding is only meaningful together with that set.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Simplex {
    degree: u8,
    cell_dim: u8,
    repeats: u64,
    cell: u32,
}

impl Simplex {
    /// The nondegenerate simplex given by a cell.
    pub fn cell(cell_dim: usize, cell: usize) -> Self {
        Self { degree: cell_dim as u8, cell_dim: cell_dim as u8, repeats: 0, cell: cell as u32 }
    }

    /// A simplex from a degeneracy word; degree is `cell_dim + word.len()`.
    pub fn from_word(word: &DegeneracyWord, cell_dim: usize, cell: usize) -> Result<Self, SimplicialError> {
        let degree = cell_dim + word.len();
        if degree > MAX_DEGREE {
            return Err(SimplicialError::DegreeTooLarge(degree));
        }
        let mut repeats = 0u64;
        for &j in word.indices() {
            // s_j on a simplex of degree d requires j <= d; the outermost
            // operator acts on degree `degree - 1`, so every index is < degree.
            if j >= degree {
                return Err(SimplicialError::BadWord(word.to_string()));
            }
            repeats |= 1 << j;
        }
        // Normal form: applying s_{j_k} first to a cell of degree m needs
        // j_k <= m; the decreasing order keeps every later index valid.
        let mut d = cell_dim;
        for &j in word.indices().iter().rev() {
            if j > d {
                return Err(SimplicialError::BadWord(word.to_string()));
            }
            d += 1;
        }
        Ok(Self { degree: degree as u8, cell_dim: cell_dim as u8, repeats, cell: cell as u32 })
    }

    /// Builds the simplex `X(η)(cell)` from the values of a monotone
    /// surjection `η: [n] → [cell_dim]`.
    pub fn from_surjection(values: &[usize], cell_dim: usize, cell: usize) -> Self {
        debug_assert!(!values.is_empty());
        debug_assert_eq!(values[0], 0);
        debug_assert_eq!(*values.last().unwrap(), cell_dim);
        let mut repeats = 0u64;
        for t in 0..values.len() - 1 {
            debug_assert!(values[t + 1] == values[t] || values[t + 1] == values[t] + 1);
            if values[t] == values[t + 1] {
                repeats |= 1 << t;
            }
        }
        Self {
            degree: (values.len() - 1) as u8,
            cell_dim: cell_dim as u8,
            repeats,
            cell: cell as u32,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    pub fn cell_dim(&self) -> usize {
        self.cell_dim as usize
    }

    pub fn cell_index(&self) -> usize {
        self.cell as usize
    }

    pub fn is_degenerate(&self) -> bool {
        self.repeats != 0
    }

    pub fn repeat_mask(&self) -> u64 {
        self.repeats
    }

    /// The degeneracy word, largest index first.
    pub fn word(&self) -> DegeneracyWord {
        let mut idx: Vec<usize> = (0..self.degree()).filter(|&t| self.repeats & (1 << t) != 0).collect();
        idx.reverse();
        DegeneracyWord(idx)
    }

    /// Values of the degeneracy surjection `η: [degree] → [cell_dim]`.
    pub fn surjection(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.degree() + 1);
        let mut v = 0;
        out.push(0);
        for t in 0..self.degree() {
            if self.repeats & (1 << t) == 0 {
                v += 1;
            }
            out.push(v);
        }
        out
    }

    /// `X(η ∘ μ)(x)`: precompose the degeneracy part with a further
    /// surjection `μ` given by its values.
    pub fn degenerate_by(&self, mu: &[usize]) -> Self {
        let eta = self.surjection();
        let values: Vec<usize> = mu.iter().map(|&t| eta[t]).collect();
        Self::from_surjection(&values, self.cell_dim(), self.cell_index())
    }

    /// Applies the degeneracy `s_j`.
    pub fn degeneracy(&self, j: usize) -> Self {
        assert!(j <= self.degree(), "s_{} on a simplex of degree {}", j, self.degree());
        let mu: Vec<usize> = (0..=self.degree() + 1).map(|t| if t <= j { t } else { t - 1 }).collect();
        self.degenerate_by(&mu)
    }

    /// The same degeneracy word reindexed for the opposite simplicial set.
    pub fn opposite(&self) -> Self {
        let n = self.degree();
        let mut repeats = 0u64;
        for t in 0..n {
            if self.repeats & (1 << t) != 0 {
                repeats |= 1 << (n - 1 - t);
            }
        }
        Self { repeats, ..*self }
    }

    /// Retargets the cell index, keeping the degeneracy part.
    pub fn with_cell(&self, cell_dim: usize, cell: usize) -> Self {
        debug_assert_eq!(cell_dim, self.cell_dim());
        Self { cell: cell as u32, ..*self }
    }

    /// Ordering key for deterministic enumeration: word length, then word.
    pub fn word_key(&self) -> (usize, Vec<usize>) {
        let w = self.word();
        (w.len(), w.0)
    }
}

/// Compares two simplices by `(word length, word, cell index)`.
///
/// Cell indices follow identifier order in every [`super::SimplicialSet`].
pub fn canonical_cmp(a: &Simplex, b: &Simplex) -> Ordering {
    a.degree
        .cmp(&b.degree)
        .then_with(|| a.word_key().cmp(&b.word_key()))
        .then_with(|| a.cell_dim.cmp(&b.cell_dim))
        .then_with(|| a.cell.cmp(&b.cell))
}

/// All monotone surjections `[n] → [m]`, as repeat masks, in degeneracy-word
/// lexicographic order.
pub fn surjection_masks(n: usize, m: usize) -> Vec<u64> {
    if m > n {
        return Vec::new();
    }
    let k = n - m;
    // Words are decreasing sequences of k distinct indices from 0..n.
    let mut words: Vec<Vec<usize>> = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, upper: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let remaining = k - cur.len();
        for j in (remaining - 1)..upper {
            cur.push(j);
            rec(n, k, j, cur, out);
            cur.pop();
        }
    }
    rec(n, k, n, &mut current, &mut words);
    words.sort();
    words.into_iter().map(|w| w.iter().fold(0u64, |acc, &j| acc | (1 << j))).collect()
}

/// Builds a simplex from a repeat mask (see [`surjection_masks`]).
pub fn simplex_from_mask(degree: usize, mask: u64, cell_dim: usize, cell: usize) -> Simplex {
    debug_assert_eq!(degree - mask.count_ones() as usize, cell_dim);
    Simplex { degree: degree as u8, cell_dim: cell_dim as u8, repeats: mask, cell: cell as u32 }
}

/// Factors a monotone map `[k] → [m]` (given by values) as an injection after a
/// surjection. Returns `(surjection values, image)`, the image listed in
/// increasing order.
pub fn epi_mono(values: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut image: Vec<usize> = Vec::new();
    let mut surj = Vec::with_capacity(values.len());
    for &v in values {
        if image.last() != Some(&v) {
            image.push(v);
        }
        surj.push(image.len() - 1);
    }
    (surj, image)
}
