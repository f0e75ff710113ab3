//! Finite categories, functors, nerves and comma categories.

mod cat;
mod comma;
mod grothendieck;
mod nerve;
pub mod theorem_b;

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

pub use cat::{cat_to_value, emit_cat, functor_to_value, parse_cat, parse_cat_document, parse_functor, CatDocument};
pub use comma::{comma_category, slice, CommaCategory};
pub use grothendieck::{
    cartesian_lift_failure, cocartesian_lift_failure, is_cartesian_morphism, is_grothendieck_fibration,
    is_grothendieck_opfibration, LiftFailure,
};
pub use nerve::{nerve, nerve_functor, string_id, DEFAULT_NERVE_CAP};
pub use theorem_b::{theorem_b_report, TheoremBReport};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CategoryError {
    #[error("duplicate object \"{0}\"")]
    DuplicateObject(String),
    #[error("duplicate morphism \"{0}\"")]
    DuplicateMorphism(String),
    #[error("unknown object \"{0}\"")]
    UnknownObject(String),
    #[error("unknown morphism \"{0}\"")]
    UnknownMorphism(String),
    #[error("identifier \"{0}\" may not contain ';'")]
    BadIdentifier(String),
    #[error("object \"{0}\" has no identity")]
    MissingIdentity(String),
    #[error("identity \"{morphism}\" of \"{object}\" is not an endomorphism of it")]
    BadIdentity { object: String, morphism: String },
    #[error("composite {g}∘{f} is not defined")]
    MissingComposite { g: String, f: String },
    #[error("{g}∘{f} is not composable")]
    NotComposable { g: String, f: String },
    #[error("composite {g}∘{f} = {h} has the wrong source or target")]
    CompositeShape { g: String, f: String, h: String },
    #[error("identity law fails for \"{0}\"")]
    IdentityLaw(String),
    #[error("associativity fails for {h}∘{g}∘{f}")]
    Associativity { h: String, g: String, f: String },
    #[error("relation {0} <= {1} together with its converse makes the order cyclic")]
    NotAntisymmetric(String, String),
    #[error("functor does not preserve {0}")]
    NotFunctorial(String),
    #[error("functor is missing the image of \"{0}\"")]
    MissingImage(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

/// A finite category with a total composition table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    /// `compose[g * m + f] = g ∘ f` when `tgt f = src g`.
    compose: Vec<Option<usize>>,
    object_index: HashMap<String, usize>,
    morphism_index: HashMap<String, usize>,
}

impl FiniteCategory {
    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn object(&self, id: &str) -> Option<usize> {
        self.object_index.get(id).copied()
    }

    pub fn morphism(&self, id: &str) -> Option<usize> {
        self.morphism_index.get(id).copied()
    }

    pub fn object_id(&self, o: usize) -> &str {
        &self.objects[o]
    }

    pub fn morphism_id(&self, m: usize) -> &str {
        &self.morphisms[m].id
    }

    pub fn src(&self, m: usize) -> usize {
        self.morphisms[m].src
    }

    pub fn tgt(&self, m: usize) -> usize {
        self.morphisms[m].tgt
    }

    pub fn identity(&self, o: usize) -> usize {
        self.identities[o]
    }

    pub fn is_identity(&self, m: usize) -> bool {
        self.identities[self.morphisms[m].src] == m
    }

    /// `g ∘ f`, if `tgt f = src g`.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.compose[g * self.morphisms.len() + f]
    }

    /// Morphisms `a → b` in table order.
    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.morphisms.len()).filter(|&m| self.morphisms[m].src == a && self.morphisms[m].tgt == b).collect()
    }

    pub fn non_identity(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.morphisms.len()).filter(|&m| !self.is_identity(m))
    }

    /// Whether non-identity morphisms form a directed cycle, in which case
    /// the nerve has nondegenerate simplices in every degree.
    pub fn has_nonidentity_cycle(&self) -> bool {
        let n = self.objects.len();
        let mut adj = vec![BTreeSet::new(); n];
        for m in self.non_identity() {
            adj[self.src(m)].insert(self.tgt(m));
        }
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut state = vec![0u8; n];
        fn visit(v: usize, adj: &[BTreeSet<usize>], state: &mut [u8]) -> bool {
            state[v] = 1;
            for &w in &adj[v] {
                if state[w] == 1 || (state[w] == 0 && visit(w, adj, state)) {
                    return true;
                }
            }
            state[v] = 2;
            false
        }
        (0..n).any(|v| state[v] == 0 && visit(v, &adj, &mut state))
    }

    pub fn opposite(&self) -> FiniteCategory {
        let m = self.morphisms.len();
        let morphisms = self.morphisms.iter().map(|f| Morphism { id: f.id.clone(), src: f.tgt, tgt: f.src }).collect();
        let mut compose = vec![None; m * m];
        for g in 0..m {
            for f in 0..m {
                // g ∘op f = f ∘ g
                compose[g * m + f] = self.compose(f, g);
            }
        }
        FiniteCategory {
            objects: self.objects.clone(),
            morphisms,
            identities: self.identities.clone(),
            compose,
            object_index: self.object_index.clone(),
            morphism_index: self.morphism_index.clone(),
        }
    }

    /// The subcategory on the selected objects and morphisms. The selection
    /// must contain identities and be closed under composition.
    pub fn subcategory(&self, keep_object: impl Fn(usize) -> bool, keep_morphism: impl Fn(usize) -> bool) -> FiniteCategory {
        let mut b = CategoryBuilder::new();
        for (o, id) in self.objects.iter().enumerate() {
            if keep_object(o) {
                b.object(id);
            }
        }
        let kept: Vec<usize> = (0..self.morphisms.len())
            .filter(|&f| keep_object(self.src(f)) && keep_object(self.tgt(f)) && (self.is_identity(f) || keep_morphism(f)))
            .collect();
        for &f in &kept {
            let mf = &self.morphisms[f];
            b.morphism(&mf.id, &self.objects[mf.src], &self.objects[mf.tgt]);
            if self.is_identity(f) {
                b.identity(&self.objects[mf.src], &mf.id);
            }
        }
        for &g in &kept {
            for &f in &kept {
                if let Some(h) = self.compose(g, f) {
                    if !self.is_identity(g) && !self.is_identity(f) {
                        b.compose(self.morphism_id(g), self.morphism_id(f), self.morphism_id(h));
                    }
                }
            }
        }
        b.build().expect("subcategory of a valid category")
    }

    /// Checks identity laws and associativity exhaustively.
    pub fn validate(&self) -> Result<(), CategoryError> {
        let m = self.morphisms.len();
        for f in 0..m {
            let (s, t) = (self.src(f), self.tgt(f));
            if self.compose(f, self.identity(s)) != Some(f) || self.compose(self.identity(t), f) != Some(f) {
                return Err(CategoryError::IdentityLaw(self.morphisms[f].id.clone()));
            }
        }
        for f in 0..m {
            for g in 0..m {
                if self.tgt(f) != self.src(g) {
                    continue;
                }
                let gf = self.compose(g, f).expect("composites are total");
                for h in 0..m {
                    if self.tgt(g) != self.src(h) {
                        continue;
                    }
                    let hg = self.compose(h, g).expect("composites are total");
                    if self.compose(h, gf) != self.compose(hg, f) {
                        return Err(CategoryError::Associativity {
                            h: self.morphisms[h].id.clone(),
                            g: self.morphisms[g].id.clone(),
                            f: self.morphisms[f].id.clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// The poset on `elements` generated by `relations` (pairs `a ≤ b`).
    /// Morphisms are named `a<b`, identities `id_a`.
    pub fn from_poset(elements: &[&str], relations: &[(&str, &str)]) -> Result<FiniteCategory, CategoryError> {
        let n = elements.len();
        let index: HashMap<&str, usize> = elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut le = vec![vec![false; n]; n];
        for (i, row) in le.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in relations {
            let ia = *index.get(a).ok_or_else(|| CategoryError::UnknownObject(a.to_string()))?;
            let ib = *index.get(b).ok_or_else(|| CategoryError::UnknownObject(b.to_string()))?;
            le[ia][ib] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if le[i][k] {
                    for j in 0..n {
                        if le[k][j] {
                            le[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && le[i][j] && le[j][i] {
                    return Err(CategoryError::NotAntisymmetric(elements[i].to_string(), elements[j].to_string()));
                }
            }
        }
        let name = |i: usize, j: usize| {
            if i == j {
                format!("id_{}", elements[i])
            } else {
                format!("{}<{}", elements[i], elements[j])
            }
        };
        let mut b = CategoryBuilder::new();
        for e in elements {
            b.object(e);
        }
        for i in 0..n {
            for j in 0..n {
                if le[i][j] {
                    b.morphism(&name(i, j), elements[i], elements[j]);
                }
            }
            b.identity(elements[i], &name(i, i));
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if i != j && j != k && le[i][j] && le[j][k] {
                        b.compose(&name(j, k), &name(i, j), &name(i, k));
                    }
                }
            }
        }
        b.build()
    }

    /// Whether every hom-set has at most one element.
    pub fn is_thin(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.morphisms.iter().all(|f| seen.insert((f.src, f.tgt)))
    }
}

/// Collects objects, morphisms and non-trivial composites. Composites with
/// an identity are filled in automatically.
#[derive(Clone, Debug, Default)]
pub struct CategoryBuilder {
    objects: Vec<String>,
    morphisms: Vec<(String, String, String)>,
    identities: Vec<(String, String)>,
    composites: Vec<(String, String, String)>,
}

impl CategoryBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(&mut self, id: &str) -> &mut Self {
        self.objects.push(id.to_string());
        self
    }

    pub fn morphism(&mut self, id: &str, src: &str, tgt: &str) -> &mut Self {
        self.morphisms.push((id.to_string(), src.to_string(), tgt.to_string()));
        self
    }

    pub fn identity(&mut self, object: &str, morphism: &str) -> &mut Self {
        self.identities.push((object.to_string(), morphism.to_string()));
        self
    }

    /// Records `g ∘ f = h`.
    pub fn compose(&mut self, g: &str, f: &str, h: &str) -> &mut Self {
        self.composites.push((g.to_string(), f.to_string(), h.to_string()));
        self
    }

    pub fn build(&self) -> Result<FiniteCategory, CategoryError> {
        let mut object_index = HashMap::new();
        for (i, o) in self.objects.iter().enumerate() {
            if o.contains(';') {
                return Err(CategoryError::BadIdentifier(o.clone()));
            }
            if object_index.insert(o.clone(), i).is_some() {
                return Err(CategoryError::DuplicateObject(o.clone()));
            }
        }
        let obj = |id: &str| object_index.get(id).copied().ok_or_else(|| CategoryError::UnknownObject(id.to_string()));
        let mut morphism_index = HashMap::new();
        let mut morphisms = Vec::with_capacity(self.morphisms.len());
        for (i, (id, s, t)) in self.morphisms.iter().enumerate() {
            if id.contains(';') {
                return Err(CategoryError::BadIdentifier(id.clone()));
            }
            if morphism_index.insert(id.clone(), i).is_some() {
                return Err(CategoryError::DuplicateMorphism(id.clone()));
            }
            morphisms.push(Morphism { id: id.clone(), src: obj(s)?, tgt: obj(t)? });
        }
        let mor = |id: &str| morphism_index.get(id).copied().ok_or_else(|| CategoryError::UnknownMorphism(id.to_string()));
        let mut identities = vec![usize::MAX; self.objects.len()];
        for (o, m) in &self.identities {
            let (oi, mi) = (obj(o)?, mor(m)?);
            if morphisms[mi].src != oi || morphisms[mi].tgt != oi {
                return Err(CategoryError::BadIdentity { object: o.clone(), morphism: m.clone() });
            }
            identities[oi] = mi;
        }
        if let Some(o) = identities.iter().position(|&m| m == usize::MAX) {
            return Err(CategoryError::MissingIdentity(self.objects[o].clone()));
        }
        let m = morphisms.len();
        let mut compose = vec![None; m * m];
        for f in 0..m {
            compose[f * m + identities[morphisms[f].src]] = Some(f);
            compose[identities[morphisms[f].tgt] * m + f] = Some(f);
        }
        for (g, f, h) in &self.composites {
            let (gi, fi, hi) = (mor(g)?, mor(f)?, mor(h)?);
            if morphisms[fi].tgt != morphisms[gi].src {
                return Err(CategoryError::NotComposable { g: g.clone(), f: f.clone() });
            }
            if morphisms[hi].src != morphisms[fi].src || morphisms[hi].tgt != morphisms[gi].tgt {
                return Err(CategoryError::CompositeShape { g: g.clone(), f: f.clone(), h: h.clone() });
            }
            let slot = &mut compose[gi * m + fi];
            if slot.is_some_and(|x| x != hi) {
                return Err(CategoryError::IdentityLaw(h.clone()));
            }
            *slot = Some(hi);
        }
        for f in 0..m {
            for g in 0..m {
                if morphisms[f].tgt == morphisms[g].src && compose[g * m + f].is_none() {
                    return Err(CategoryError::MissingComposite { g: morphisms[g].id.clone(), f: morphisms[f].id.clone() });
                }
            }
        }
        let cat = FiniteCategory {
            objects: self.objects.clone(),
            morphisms,
            identities,
            compose,
            object_index,
            morphism_index,
        };
        cat.validate()?;
        Ok(cat)
    }
}

/// A functor between finite categories.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functor {
    source: Arc<FiniteCategory>,
    target: Arc<FiniteCategory>,
    objects: Vec<usize>,
    morphisms: Vec<usize>,
}

impl Functor {
    /// Checks preservation of sources, targets, identities and composites.
    pub fn new(
        source: Arc<FiniteCategory>,
        target: Arc<FiniteCategory>,
        objects: Vec<usize>,
        morphisms: Vec<usize>,
    ) -> Result<Functor, CategoryError> {
        let f = Functor { source, target, objects, morphisms };
        f.validate()?;
        Ok(f)
    }

    /// Builds a functor from identifier maps.
    pub fn from_ids(
        source: Arc<FiniteCategory>,
        target: Arc<FiniteCategory>,
        objects: &HashMap<String, String>,
        morphisms: &HashMap<String, String>,
    ) -> Result<Functor, CategoryError> {
        let obj = source
            .objects()
            .iter()
            .map(|o| {
                let t = objects.get(o).ok_or_else(|| CategoryError::MissingImage(o.clone()))?;
                target.object(t).ok_or_else(|| CategoryError::UnknownObject(t.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mor = (0..source.morphism_count())
            .map(|m| {
                let id = source.morphism_id(m);
                match morphisms.get(id) {
                    Some(t) => target.morphism(t).ok_or_else(|| CategoryError::UnknownMorphism(t.clone())),
                    // identities may be left implicit
                    None if source.is_identity(m) => Ok(target.identity(obj[source.src(m)])),
                    None => Err(CategoryError::MissingImage(id.to_string())),
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Functor::new(source, target, obj, mor)
    }

    pub fn identity(c: Arc<FiniteCategory>) -> Functor {
        let objects = (0..c.object_count()).collect();
        let morphisms = (0..c.morphism_count()).collect();
        Functor { source: c.clone(), target: c, objects, morphisms }
    }

    /// The functor from the one-object category picking out `object`.
    pub fn point_at(target: Arc<FiniteCategory>, object: &str) -> Result<Functor, CategoryError> {
        let o = target.object(object).ok_or_else(|| CategoryError::UnknownObject(object.to_string()))?;
        let point = Arc::new(FiniteCategory::from_poset(&["*"], &[]).expect("point category"));
        let id = target.identity(o);
        Functor::new(point, target, vec![o], vec![id])
    }

    pub fn source(&self) -> &Arc<FiniteCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteCategory> {
        &self.target
    }

    pub fn on_object(&self, o: usize) -> usize {
        self.objects[o]
    }

    pub fn on_morphism(&self, m: usize) -> usize {
        self.morphisms[m]
    }

    pub fn object_images(&self) -> &[usize] {
        &self.objects
    }

    pub fn morphism_images(&self) -> &[usize] {
        &self.morphisms
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Functor) -> Result<Functor, CategoryError> {
        if *self.target != *other.source {
            return Err(CategoryError::NotFunctorial("composability".to_string()));
        }
        let objects = self.objects.iter().map(|&o| other.objects[o]).collect();
        let morphisms = self.morphisms.iter().map(|&m| other.morphisms[m]).collect();
        Functor::new(self.source.clone(), other.target.clone(), objects, morphisms)
    }

    pub fn opposite(&self) -> Functor {
        Functor {
            source: Arc::new(self.source.opposite()),
            target: Arc::new(self.target.opposite()),
            objects: self.objects.clone(),
            morphisms: self.morphisms.clone(),
        }
    }

    pub fn validate(&self) -> Result<(), CategoryError> {
        let (c, d) = (&self.source, &self.target);
        if self.objects.len() != c.object_count() || self.morphisms.len() != c.morphism_count() {
            return Err(CategoryError::NotFunctorial("shape".to_string()));
        }
        if self.objects.iter().any(|&o| o >= d.object_count()) || self.morphisms.iter().any(|&m| m >= d.morphism_count()) {
            return Err(CategoryError::NotFunctorial("shape".to_string()));
        }
        for f in 0..c.morphism_count() {
            let g = self.morphisms[f];
            if d.src(g) != self.objects[c.src(f)] || d.tgt(g) != self.objects[c.tgt(f)] {
                return Err(CategoryError::NotFunctorial(format!("source and target of \"{}\"", c.morphism_id(f))));
            }
        }
        for o in 0..c.object_count() {
            if self.morphisms[c.identity(o)] != d.identity(self.objects[o]) {
                return Err(CategoryError::NotFunctorial(format!("the identity of \"{}\"", c.object_id(o))));
            }
        }
        for g in 0..c.morphism_count() {
            for f in 0..c.morphism_count() {
                if let Some(h) = c.compose(g, f) {
                    if d.compose(self.morphisms[g], self.morphisms[f]) != Some(self.morphisms[h]) {
                        return Err(CategoryError::NotFunctorial(format!(
                            "the composite {}∘{}",
                            c.morphism_id(g),
                            c.morphism_id(f)
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// The pseudo-circle poset: `a, b` below `x, y`.
pub fn pseudo_circle() -> FiniteCategory {
    FiniteCategory::from_poset(&["a", "b", "x", "y"], &[("a", "x"), ("a", "y"), ("b", "x"), ("b", "y")])
        .expect("valid poset")
}

/// `[n]`, the totally ordered poset `0 < 1 < ... < n`.
pub fn ordinal(n: usize) -> FiniteCategory {
    let names: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let rel: Vec<(&str, &str)> = (0..n).map(|i| (refs[i], refs[i + 1])).collect();
    FiniteCategory::from_poset(&refs, &rel).expect("valid poset")
}

/// The one-object category of a cyclic group of order `n`, with elements
/// `e, g1, ..., g{n-1}`.
pub fn cyclic_group(n: usize) -> FiniteCategory {
    let name = |k: usize| if k == 0 { "e".to_string() } else { format!("g{k}") };
    let mut b = CategoryBuilder::new();
    b.object("*");
    for k in 0..n {
        b.morphism(&name(k), "*", "*");
    }
    b.identity("*", "e");
    for i in 1..n {
        for j in 1..n {
            b.compose(&name(i), &name(j), &name((i + j) % n));
        }
    }
    b.build().expect("valid group")
}
