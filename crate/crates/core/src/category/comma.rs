use std::collections::HashMap;
use std::sync::Arc;

use super::{CategoryBuilder, CategoryError, FiniteCategory, Functor};

/// `F/D` with its projections to `C` and `D`.
#[derive(Clone, Debug)]
pub struct CommaCategory {
    pub category: Arc<FiniteCategory>,
    pub to_source: Functor,
    pub to_target: Functor,
    /// `(c, u)` for every object, `u: F(c) → d`.
    pub object_data: Vec<(usize, usize)>,
    /// `(h, v)` for every morphism.
    pub morphism_data: Vec<(usize, usize)>,
}

impl CommaCategory {
    /// The object `d` that an object of `F/D` lives over.
    pub fn base_object(&self, o: usize) -> usize {
        self.to_target.on_object(o)
    }
}

/// Objects are pairs `(c, u: F(c) → d)`; a morphism `(c,u) → (c',u')` is a
/// pair `(h: c → c', v: d → d')` with `v∘u = u'∘F(h)`.
pub fn comma_category(f: &Functor) -> Result<CommaCategory, CategoryError> {
    let (c, d) = (f.source().clone(), f.target().clone());
    let mut objects: Vec<(usize, usize)> = Vec::new();
    for co in 0..c.object_count() {
        for u in 0..d.morphism_count() {
            if d.src(u) == f.on_object(co) {
                objects.push((co, u));
            }
        }
    }
    let obj_id = |&(co, u): &(usize, usize)| format!("({},{})", c.object_id(co), d.morphism_id(u));
    let mut morphisms: Vec<(usize, usize, usize, usize)> = Vec::new();
    for (si, &(c1, u1)) in objects.iter().enumerate() {
        for (ti, &(c2, u2)) in objects.iter().enumerate() {
            for h in c.hom(c1, c2) {
                let fh = f.on_morphism(h);
                let lhs = d.compose(u2, fh).expect("composable");
                for v in d.hom(d.tgt(u1), d.tgt(u2)) {
                    if d.compose(v, u1) == Some(lhs) {
                        morphisms.push((si, ti, h, v));
                    }
                }
            }
        }
    }
    let base_id = |h: usize, v: usize| format!("({},{})", c.morphism_id(h), d.morphism_id(v));
    let mut id_count: HashMap<String, usize> = HashMap::new();
    for &(_, _, h, v) in &morphisms {
        *id_count.entry(base_id(h, v)).or_default() += 1;
    }
    let mor_id = |&(s, t, h, v): &(usize, usize, usize, usize)| {
        let id = base_id(h, v);
        if id_count[&id] > 1 {
            format!("{id}[{}->{}]", obj_id(&objects[s]), obj_id(&objects[t]))
        } else {
            id
        }
    };
    let index: HashMap<(usize, usize, usize, usize), usize> = morphisms.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let mut b = CategoryBuilder::new();
    for o in &objects {
        b.object(&obj_id(o));
    }
    for m in &morphisms {
        b.morphism(&mor_id(m), &obj_id(&objects[m.0]), &obj_id(&objects[m.1]));
    }
    for (oi, o) in objects.iter().enumerate() {
        let key = (oi, oi, c.identity(o.0), d.identity(d.tgt(o.1)));
        b.identity(&obj_id(o), &mor_id(&morphisms[index[&key]]));
    }
    for g in &morphisms {
        for f1 in &morphisms {
            if f1.1 != g.0 {
                continue;
            }
            let h = c.compose(g.2, f1.2).expect("composable");
            let v = d.compose(g.3, f1.3).expect("composable");
            let composite = &morphisms[index[&(f1.0, g.1, h, v)]];
            b.compose(&mor_id(g), &mor_id(f1), &mor_id(composite));
        }
    }
    let category = Arc::new(b.build()?);
    let to_source = Functor::new(
        category.clone(),
        c.clone(),
        objects.iter().map(|o| o.0).collect(),
        morphisms.iter().map(|m| m.2).collect(),
    )?;
    let to_target = Functor::new(
        category.clone(),
        d.clone(),
        objects.iter().map(|o| d.tgt(o.1)).collect(),
        morphisms.iter().map(|m| m.3).collect(),
    )?;
    Ok(CommaCategory {
        category,
        to_source,
        to_target,
        object_data: objects,
        morphism_data: morphisms.iter().map(|m| (m.2, m.3)).collect(),
    })
}

/// The translation category `F/d`: objects `(c, u: F(c) → d)`, morphisms
/// `h` with `u'∘F(h) = u`. Identifiers are those of the comma category.
pub fn slice(f: &Functor, d: &str) -> Result<FiniteCategory, CategoryError> {
    let target = f.target();
    let dobj = target.object(d).ok_or_else(|| CategoryError::UnknownObject(d.to_string()))?;
    let comma = comma_category(f)?;
    Ok(slice_of(&comma, dobj))
}

pub(crate) fn slice_of(comma: &CommaCategory, d: usize) -> FiniteCategory {
    let id_d = comma.to_target.target().identity(d);
    comma.category.subcategory(|o| comma.base_object(o) == d, |m| comma.morphism_data[m].1 == id_d)
}
