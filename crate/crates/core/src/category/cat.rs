//! The CAT document format for finite categories and functors.
//!
//! ```json
//! {"kind":"cat","objects":["p","q"],
//!  "morphisms":[{"id":"1p","src":"p","tgt":"p"},{"id":"1q","src":"q","tgt":"q"},{"id":"f","src":"p","tgt":"q"}],
//!  "identities":{"p":"1p","q":"1q"},"compose":{}}
//! ```
//!
//! `compose` maps keys `"g∘f"` to the composite; composites with an
//! identity may be omitted. Functor documents have kind `"functor"`, embed
//! `source` and `target`, and map `objects` and `morphisms` by id; images of
//! identities may be omitted.

use std::collections::HashMap;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use super::{CategoryBuilder, FiniteCategory, Functor};
use crate::simplicial::ssx::{field, parse_json, FormatError};

#[derive(Clone, Debug, PartialEq)]
pub enum CatDocument {
    Category(FiniteCategory),
    Functor(Functor),
}

pub fn parse_cat_document(text: &str) -> Result<CatDocument, FormatError> {
    let value = parse_json(text)?;
    let kind = value.get("kind").and_then(Value::as_str);
    match kind {
        Some("cat") => Ok(CatDocument::Category(cat_from_value(&value, "$")?)),
        Some("functor") => Ok(CatDocument::Functor(functor_from_value(&value, "$")?)),
        Some(other) => Err(field("$.kind", format!("unknown kind \"{other}\""))),
        None => Err(field("$.kind", "missing string field")),
    }
}

pub fn parse_cat(text: &str) -> Result<FiniteCategory, FormatError> {
    match parse_cat_document(text)? {
        CatDocument::Category(c) => Ok(c),
        CatDocument::Functor(_) => Err(field("$.kind", "expected \"cat\", found \"functor\"")),
    }
}

pub fn parse_functor(text: &str) -> Result<Functor, FormatError> {
    match parse_cat_document(text)? {
        CatDocument::Functor(f) => Ok(f),
        CatDocument::Category(_) => Err(field("$.kind", "expected \"functor\", found \"cat\"")),
    }
}

fn str_at<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a str, FormatError> {
    obj.get(key).and_then(Value::as_str).ok_or_else(|| field(format!("{path}.{key}"), "missing string field"))
}

fn string_map(value: Option<&Value>, path: &str) -> Result<HashMap<String, String>, FormatError> {
    let obj = value.and_then(Value::as_object).ok_or_else(|| field(path, "missing object field"))?;
    obj.iter()
        .map(|(k, v)| {
            let s = v.as_str().ok_or_else(|| field(format!("{path}.{k}"), "expected a string"))?;
            Ok((k.clone(), s.to_string()))
        })
        .collect()
}

fn cat_from_value(value: &Value, path: &str) -> Result<FiniteCategory, FormatError> {
    let obj = value.as_object().ok_or_else(|| field(path, "expected an object"))?;
    if obj.get("kind").and_then(Value::as_str) != Some("cat") {
        return Err(field(format!("{path}.kind"), "expected \"cat\""));
    }
    let mut b = CategoryBuilder::new();
    let objects = obj
        .get("objects")
        .and_then(Value::as_array)
        .ok_or_else(|| field(format!("{path}.objects"), "missing array field"))?;
    for (i, o) in objects.iter().enumerate() {
        b.object(o.as_str().ok_or_else(|| field(format!("{path}.objects[{i}]"), "expected a string"))?);
    }
    let morphisms = obj
        .get("morphisms")
        .and_then(Value::as_array)
        .ok_or_else(|| field(format!("{path}.morphisms"), "missing array field"))?;
    for (i, m) in morphisms.iter().enumerate() {
        let mpath = format!("{path}.morphisms[{i}]");
        let mobj = m.as_object().ok_or_else(|| field(&mpath, "expected an object"))?;
        let id = str_at(mobj, "id", &mpath)?;
        if id.contains('∘') {
            return Err(field(format!("{mpath}.id"), "morphism ids may not contain '∘'"));
        }
        b.morphism(id, str_at(mobj, "src", &mpath)?, str_at(mobj, "tgt", &mpath)?);
    }
    for (o, m) in string_map(obj.get("identities"), &format!("{path}.identities"))? {
        b.identity(&o, &m);
    }
    let compose = obj
        .get("compose")
        .and_then(Value::as_object)
        .ok_or_else(|| field(format!("{path}.compose"), "missing object field"))?;
    for (key, h) in compose {
        let kpath = format!("{path}.compose.{key}");
        let (g, f) = key.split_once('∘').ok_or_else(|| field(&kpath, "key must have the form \"g∘f\""))?;
        let h = h.as_str().ok_or_else(|| field(&kpath, "expected a morphism id"))?;
        b.compose(g, f, h);
    }
    b.build().map_err(|e| FormatError::Category { path: path.to_string(), source: e })
}

fn functor_from_value(value: &Value, path: &str) -> Result<Functor, FormatError> {
    let obj = value.as_object().ok_or_else(|| field(path, "expected an object"))?;
    let source = Arc::new(cat_from_value(
        obj.get("source").ok_or_else(|| field(format!("{path}.source"), "missing"))?,
        &format!("{path}.source"),
    )?);
    let target = Arc::new(cat_from_value(
        obj.get("target").ok_or_else(|| field(format!("{path}.target"), "missing"))?,
        &format!("{path}.target"),
    )?);
    let objects = string_map(obj.get("objects"), &format!("{path}.objects"))?;
    let morphisms = string_map(obj.get("morphisms"), &format!("{path}.morphisms"))?;
    Functor::from_ids(source, target, &objects, &morphisms)
        .map_err(|e| FormatError::Category { path: path.to_string(), source: e })
}

pub fn cat_to_value(c: &FiniteCategory) -> Value {
    let morphisms: Vec<Value> = c
        .morphisms()
        .iter()
        .map(|m| json!({"id": m.id, "src": c.object_id(m.src), "tgt": c.object_id(m.tgt)}))
        .collect();
    let mut identities = Map::new();
    for o in 0..c.object_count() {
        identities.insert(c.object_id(o).to_string(), json!(c.morphism_id(c.identity(o))));
    }
    let mut compose = Map::new();
    for f in c.non_identity() {
        for g in c.non_identity() {
            if let Some(h) = c.compose(g, f) {
                compose.insert(format!("{}∘{}", c.morphism_id(g), c.morphism_id(f)), json!(c.morphism_id(h)));
            }
        }
    }
    json!({
        "kind": "cat",
        "objects": c.objects(),
        "morphisms": morphisms,
        "identities": identities,
        "compose": compose,
    })
}

pub fn functor_to_value(f: &Functor) -> Value {
    let (c, d) = (f.source(), f.target());
    let mut objects = Map::new();
    for o in 0..c.object_count() {
        objects.insert(c.object_id(o).to_string(), json!(d.object_id(f.on_object(o))));
    }
    let mut morphisms = Map::new();
    for m in 0..c.morphism_count() {
        morphisms.insert(c.morphism_id(m).to_string(), json!(d.morphism_id(f.on_morphism(m))));
    }
    json!({
        "kind": "functor",
        "source": cat_to_value(c),
        "target": cat_to_value(d),
        "objects": objects,
        "morphisms": morphisms,
    })
}

/// Pretty JSON with a trailing newline.
pub fn emit_cat(doc: &CatDocument) -> String {
    let value = match doc {
        CatDocument::Category(c) => cat_to_value(c),
        CatDocument::Functor(f) => functor_to_value(f),
    };
    let mut s = serde_json::to_string_pretty(&value).expect("JSON values serialize");
    s.push('\n');
    s
}
