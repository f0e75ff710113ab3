//! Homology groups with explicit generators, induced maps and the
//! isomorphism test used as the weak-equivalence proxy.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::chain::{chain_complex, chain_map};
use super::matrix::IntMatrix;
use super::snf::{smith_normal_form, solve_integral};
use crate::simplicial::{SMap, SimplicialSet};

/// `H_k ≅ ⊕ Z/t_i ⊕ Z^betti`, with generators listed torsion first.
#[derive(Clone, Debug)]
pub struct HomologyGroup {
    pub degree: usize,
    pub betti: usize,
    pub torsion: Vec<BigInt>,
    generators: Vec<Vec<BigInt>>,
    coords: IntMatrix,
}

impl HomologyGroup {
    fn zero(degree: usize, chain_rank: usize) -> Self {
        Self { degree, betti: 0, torsion: Vec::new(), generators: Vec::new(), coords: IntMatrix::zeros(0, chain_rank) }
    }

    pub fn generator_count(&self) -> usize {
        self.torsion.len() + self.betti
    }

    /// Generating cycles as vectors over the nondegenerate cells.
    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    /// Modulus of generator `i`, zero for free generators.
    pub fn modulus(&self, i: usize) -> BigInt {
        self.torsion.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Coordinates of a cycle in the generator basis, torsion parts reduced.
    pub fn coordinates(&self, cycle: &[BigInt]) -> Vec<BigInt> {
        let mut c = self.coords.mul_vec(cycle);
        for (i, v) in c.iter_mut().enumerate() {
            let m = self.modulus(i);
            if !m.is_zero() {
                *v = v.mod_floor(&m);
            }
        }
        c
    }

    pub fn is_trivial(&self) -> bool {
        self.generator_count() == 0
    }

    /// `(betti, torsion)`, the isomorphism type.
    pub fn signature(&self) -> (usize, Vec<BigInt>) {
        (self.betti, self.torsion.clone())
    }
}

/// Integral homology in degrees `0..=dim`.
#[derive(Clone, Debug)]
pub struct HomologyProfile {
    pub groups: Vec<HomologyGroup>,
    /// Groups in this degree and above are not reliable (truncated nerve).
    pub truncated_at: Option<usize>,
}

impl HomologyProfile {
    pub fn group(&self, k: usize) -> Option<&HomologyGroup> {
        self.groups.get(k)
    }

    pub fn betti(&self, k: usize) -> usize {
        self.group(k).map_or(0, |g| g.betti)
    }

    pub fn torsion(&self, k: usize) -> Vec<BigInt> {
        self.group(k).map_or_else(Vec::new, |g| g.torsion.clone())
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.betti).collect()
    }

    /// Degrees whose groups are trustworthy.
    pub fn reliable_degrees(&self) -> usize {
        match self.truncated_at {
            Some(t) => t.min(self.groups.len()),
            None => self.groups.len(),
        }
    }

    /// Isomorphism types in reliable degrees, trailing zero groups dropped.
    pub fn signature(&self) -> Vec<(usize, Vec<BigInt>)> {
        let mut sig: Vec<_> = self.groups.iter().take(self.reliable_degrees()).map(|g| g.signature()).collect();
        while sig.last().is_some_and(|(b, t)| *b == 0 && t.is_empty()) {
            sig.pop();
        }
        sig
    }

    /// Homology of a point: Z in degree 0, nothing else.
    pub fn is_point_like(&self) -> bool {
        self.signature() == vec![(1, Vec::new())]
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.groups
                .iter()
                .map(|g| json!({"degree": g.degree, "betti": g.betti, "torsion": g.torsion.iter().map(big_json).collect::<Vec<_>>()}))
                .collect(),
        )
    }

    /// Renders as `(Z, Z/2, 0, Z^2)`.
    pub fn render(&self) -> String {
        render_groups(&self.groups)
    }

    /// Like [`render`](Self::render), restricted to reliable degrees and
    /// without trailing zero groups.
    pub fn render_reduced(&self) -> String {
        let keep = self.signature().len();
        render_groups(&self.groups[..keep])
    }
}

fn render_groups(groups: &[HomologyGroup]) -> String {
    if groups.is_empty() {
        return "(0)".into();
    }
    let parts: Vec<String> = groups
        .iter()
        .map(|g| {
            let mut terms: Vec<String> = g.torsion.iter().map(|t| format!("Z/{t}")).collect();
            match g.betti {
                0 => {}
                1 => terms.push("Z".into()),
                b => terms.push(format!("Z^{b}")),
            }
            if terms.is_empty() {
                "0".into()
            } else {
                terms.join("+")
            }
        })
        .collect();
    format!("({})", parts.join(", "))
}

pub(crate) fn big_json(v: &BigInt) -> Value {
    match i64::try_from(v) {
        Ok(x) => json!(x),
        Err(_) => json!(v.to_string()),
    }
}

pub fn homology(x: &SimplicialSet) -> HomologyProfile {
    let cc = chain_complex(x);
    let top = match cc.top_degree() {
        None => return HomologyProfile { groups: Vec::new(), truncated_at: x.truncated_at() },
        Some(t) => t,
    };
    let mut groups = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let n_k = cc.rank(k);
        let d_k = cc.boundary(k);
        let snf = smith_normal_form(&d_k);
        let r = snf.rank();
        // Cycle coordinates: rows r.. of V^{-1}; cycle basis: columns r.. of V.
        let cycle_coords = snf.v_inv.rows_from(r);
        let cycle_basis = snf.v.cols_from(r);
        let z = n_k - r;
        if z == 0 {
            groups.push(HomologyGroup::zero(k, n_k));
            continue;
        }
        let next = cc.boundary(k + 1);
        let image = &cycle_coords * &next;
        let s2 = smith_normal_form(&image);
        let factors = s2.invariant_factors();
        let ones = factors.iter().take_while(|d| d.is_one()).count();
        let torsion: Vec<BigInt> = factors[ones..].to_vec();
        let betti = z - factors.len();
        let generators: Vec<Vec<BigInt>> = (ones..z)
            .map(|i| {
                let c = s2.u_inv.column(i);
                cycle_basis.mul_vec(&c)
            })
            .collect();
        let coords = (&s2.u * &cycle_coords).rows_from(ones);
        groups.push(HomologyGroup { degree: k, betti, torsion, generators, coords });
    }
    HomologyProfile { groups, truncated_at: x.truncated_at() }
}

/// A homomorphism between finitely generated abelian groups, written in
/// generator coordinates.
#[derive(Clone, Debug)]
pub struct GroupMap {
    pub matrix: IntMatrix,
    pub source_moduli: Vec<BigInt>,
    pub target_moduli: Vec<BigInt>,
}

impl GroupMap {
    fn relations(&self) -> IntMatrix {
        let rows = self.target_moduli.len();
        let cols: Vec<Vec<BigInt>> = self
            .target_moduli
            .iter()
            .enumerate()
            .filter(|(_, m)| !m.is_zero())
            .map(|(i, m)| {
                let mut c = vec![BigInt::zero(); rows];
                c[i] = m.clone();
                c
            })
            .collect();
        IntMatrix::from_columns(rows, &cols)
    }

    fn same_type(&self) -> bool {
        let mut a: Vec<BigInt> = self.source_moduli.clone();
        let mut b: Vec<BigInt> = self.target_moduli.clone();
        a.sort();
        b.sort();
        a == b
    }

    pub fn is_surjective(&self) -> bool {
        let rows = self.target_moduli.len();
        if rows == 0 {
            return true;
        }
        let n = self.matrix.hcat(&self.relations());
        let snf = smith_normal_form(&n);
        let f = snf.invariant_factors();
        f.len() == rows && f.iter().all(One::is_one)
    }

    /// Isomorphism: same isomorphism type and surjective (finitely generated
    /// abelian groups are Hopfian).
    pub fn is_iso(&self) -> bool {
        self.same_type() && self.is_surjective()
    }

    /// The inverse of an isomorphism.
    pub fn inverse(&self) -> Option<GroupMap> {
        if !self.is_iso() {
            return None;
        }
        let rows = self.target_moduli.len();
        let n = self.matrix.hcat(&self.relations());
        let mut cols = Vec::with_capacity(rows);
        for t in 0..rows {
            let mut e = vec![BigInt::zero(); rows];
            e[t] = BigInt::one();
            let x = solve_integral(&n, &e)?;
            let mut v: Vec<BigInt> = x[..self.matrix.cols()].to_vec();
            reduce(&mut v, &self.source_moduli);
            cols.push(v);
        }
        Some(GroupMap {
            matrix: IntMatrix::from_columns(self.source_moduli.len(), &cols),
            source_moduli: self.target_moduli.clone(),
            target_moduli: self.source_moduli.clone(),
        })
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupMap) -> GroupMap {
        let mut m = &other.matrix * &self.matrix;
        for i in 0..m.rows() {
            let md = &other.target_moduli[i];
            if !md.is_zero() {
                for j in 0..m.cols() {
                    let v = m.get(i, j).mod_floor(md);
                    m.set(i, j, v);
                }
            }
        }
        GroupMap { matrix: m, source_moduli: self.source_moduli.clone(), target_moduli: other.target_moduli.clone() }
    }

    pub fn identity(moduli: &[BigInt]) -> GroupMap {
        GroupMap {
            matrix: IntMatrix::identity(moduli.len()),
            source_moduli: moduli.to_vec(),
            target_moduli: moduli.to_vec(),
        }
    }
}

fn reduce(v: &mut [BigInt], moduli: &[BigInt]) {
    for (x, m) in v.iter_mut().zip(moduli) {
        if !m.is_zero() {
            *x = x.mod_floor(m);
        }
    }
}

fn moduli_of(g: Option<&HomologyGroup>) -> Vec<BigInt> {
    match g {
        None => Vec::new(),
        Some(g) => (0..g.generator_count()).map(|i| g.modulus(i)).collect(),
    }
}

/// The map induced on homology in every degree, plus the isomorphism flags.
#[derive(Clone, Debug)]
pub struct InducedMap {
    pub degrees: Vec<GroupMap>,
    pub iso_per_degree: Vec<bool>,
    pub pi0_bijection: bool,
}

impl InducedMap {
    /// Invertible in every degree and a bijection on components.
    pub fn is_iso(&self) -> bool {
        self.pi0_bijection && self.iso_per_degree.iter().all(|&b| b)
    }
}

pub fn induced_map(f: &SMap, source: &HomologyProfile, target: &HomologyProfile) -> InducedMap {
    let mut degrees_n = source.groups.len().max(target.groups.len());
    for cap in [source.truncated_at, target.truncated_at].into_iter().flatten() {
        degrees_n = degrees_n.min(cap);
    }
    let mut maps = Vec::with_capacity(degrees_n);
    for k in 0..degrees_n {
        let sg = source.group(k);
        let tg = target.group(k);
        let src_mod = moduli_of(sg);
        let tgt_mod = moduli_of(tg);
        let mut matrix = IntMatrix::zeros(tgt_mod.len(), src_mod.len());
        if let (Some(sg), Some(tg)) = (sg, tg) {
            let cm = chain_map(f, k);
            for (j, gen) in sg.generators().iter().enumerate() {
                let image = cm.mul_vec(gen);
                for (i, v) in tg.coordinates(&image).into_iter().enumerate() {
                    matrix.set(i, j, v);
                }
            }
        }
        maps.push(GroupMap { matrix, source_moduli: src_mod, target_moduli: tgt_mod });
    }
    let iso_per_degree = maps.iter().map(GroupMap::is_iso).collect();
    InducedMap { degrees: maps, iso_per_degree, pi0_bijection: pi0_bijection(f) }
}

pub fn induced_homology(f: &SMap) -> InducedMap {
    let hs = homology(f.source());
    let ht = homology(f.target());
    induced_map(f, &hs, &ht)
}

/// Connected components via union-find on vertices and edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    pub count: usize,
    /// Component label of each vertex, numbered by first appearance.
    pub labels: Vec<usize>,
}

pub fn pi0(x: &SimplicialSet) -> Components {
    let n = x.cell_count(0);
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for cell in x.cells(1) {
        let a = find(&mut parent, cell.faces[0].cell_index());
        let b = find(&mut parent, cell.faces[1].cell_index());
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut label_of_root = vec![usize::MAX; n];
    let mut labels = Vec::with_capacity(n);
    let mut count = 0;
    for v in 0..n {
        let r = find(&mut parent, v);
        if label_of_root[r] == usize::MAX {
            label_of_root[r] = count;
            count += 1;
        }
        labels.push(label_of_root[r]);
    }
    Components { count, labels }
}

pub fn pi0_bijection(f: &SMap) -> bool {
    let cs = pi0(f.source());
    let ct = pi0(f.target());
    if cs.count != ct.count {
        return false;
    }
    let mut image: Vec<Option<usize>> = vec![None; cs.count];
    for v in 0..f.source().cell_count(0) {
        let tv = f.cell_image(0, v).cell_index();
        let c = ct.labels[tv];
        match image[cs.labels[v]] {
            None => image[cs.labels[v]] = Some(c),
            Some(prev) if prev != c => return false,
            _ => {}
        }
    }
    let mut hit = vec![false; ct.count];
    for c in image.into_iter().flatten() {
        if hit[c] {
            return false;
        }
        hit[c] = true;
    }
    hit.into_iter().all(|h| h)
}

/// Alternating sum of nondegenerate cell counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EulerCharacteristic {
    Exact(i64),
    /// Sum over the cells present; the nerve was cut off at `cap`.
    Truncated { partial: i64, cap: usize },
}

impl EulerCharacteristic {
    pub fn exact(&self) -> Option<i64> {
        match self {
            Self::Exact(v) => Some(*v),
            Self::Truncated { .. } => None,
        }
    }
}

pub fn euler_characteristic(x: &SimplicialSet) -> EulerCharacteristic {
    let v: i64 = x.counts().iter().enumerate().map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) }).sum();
    match x.truncated_at() {
        Some(cap) => EulerCharacteristic::Truncated { partial: v, cap },
        None => EulerCharacteristic::Exact(v),
    }
}
