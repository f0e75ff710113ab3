//! The SSX document format: JSON encodings of simplicial sets and maps.
//!
//! ```json
//! {"kind":"sset","simplicial":true,"cells":{"0":[{"id":"v0"}],
//!  "1":[{"id":"e0","faces":[["","v1"],["","v0"]]}]}}
//! ```
//!
//! A face entry is `[word, cell-id]`; the word lists degeneracy indices in
//! decreasing order, comma separated, and is empty for nondegenerate faces.
//! Map documents embed their source and target and give an `assignment`
//! per degree from source cell id to `[word, target-cell-id]`.

use std::sync::Arc;

use serde_json::{json, Map, Value};

use super::simplex::{DegeneracyWord, Simplex};
use super::smap::SMap;
use super::sset::{FaceSpec, Kind, SimplicialSet, SimplicialSetBuilder};
use super::SimplicialError;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("at {path}: {message}")]
    Field { path: String, message: String },
    #[error("invalid {path}: {source}")]
    Invalid {
        path: String,
        #[source]
        source: SimplicialError,
    },
    #[error("invalid {path}: {source}")]
    Category {
        path: String,
        #[source]
        source: crate::category::CategoryError,
    },
}

pub(crate) fn field(path: impl Into<String>, message: impl Into<String>) -> FormatError {
    FormatError::Field { path: path.into(), message: message.into() }
}

/// A parsed SSX document.
#[derive(Clone, Debug, PartialEq)]
pub enum SsxDocument {
    Set(SimplicialSet),
    Map(SMap),
}

pub(crate) fn parse_json(text: &str) -> Result<Value, FormatError> {
    serde_json::from_str(text).map_err(|e| FormatError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn parse_ssx(text: &str) -> Result<SsxDocument, FormatError> {
    let value = parse_json(text)?;
    parse_value(&value, "$")
}

pub fn parse_sset(text: &str) -> Result<SimplicialSet, FormatError> {
    match parse_ssx(text)? {
        SsxDocument::Set(s) => Ok(s),
        SsxDocument::Map(_) => Err(field("$.kind", "expected \"sset\", found \"smap\"")),
    }
}

pub fn parse_smap(text: &str) -> Result<SMap, FormatError> {
    match parse_ssx(text)? {
        SsxDocument::Map(m) => Ok(m),
        SsxDocument::Set(_) => Err(field("$.kind", "expected \"smap\", found \"sset\"")),
    }
}

fn parse_value(value: &Value, path: &str) -> Result<SsxDocument, FormatError> {
    let obj = value.as_object().ok_or_else(|| field(path, "expected an object"))?;
    match obj.get("kind").and_then(Value::as_str) {
        Some("sset") => Ok(SsxDocument::Set(sset_from_value(value, path)?)),
        Some("smap") => Ok(SsxDocument::Map(smap_from_value(value, path)?)),
        Some(other) => Err(field(format!("{path}.kind"), format!("unknown kind \"{other}\""))),
        None => Err(field(format!("{path}.kind"), "missing string field")),
    }
}

fn degree_key(key: &str, path: &str) -> Result<usize, FormatError> {
    key.parse::<usize>().map_err(|_| field(format!("{path}.{key}"), "degree keys must be non-negative integers"))
}

fn word_at(v: &Value, path: &str) -> Result<DegeneracyWord, FormatError> {
    let s = v.as_str().ok_or_else(|| field(path, "degeneracy word must be a string"))?;
    s.parse().map_err(|e: SimplicialError| field(path, e.to_string()))
}

fn pair_at(v: &Value, path: &str) -> Result<(DegeneracyWord, String), FormatError> {
    let arr = v.as_array().filter(|a| a.len() == 2).ok_or_else(|| field(path, "expected [word, cell-id]"))?;
    let word = word_at(&arr[0], &format!("{path}[0]"))?;
    let id = arr[1].as_str().ok_or_else(|| field(format!("{path}[1]"), "cell id must be a string"))?;
    Ok((word, id.to_string()))
}

fn sset_from_value(value: &Value, path: &str) -> Result<SimplicialSet, FormatError> {
    let obj = value.as_object().ok_or_else(|| field(path, "expected an object"))?;
    if obj.get("kind").and_then(Value::as_str) != Some("sset") {
        return Err(field(format!("{path}.kind"), "expected \"sset\""));
    }
    let simplicial = obj
        .get("simplicial")
        .and_then(Value::as_bool)
        .ok_or_else(|| field(format!("{path}.simplicial"), "missing boolean field"))?;
    let kind = if simplicial { Kind::Simplicial } else { Kind::SemiSimplicial };
    let truncated = match obj.get("truncated") {
        None | Some(Value::Null) => None,
        Some(v) => Some(
            v.as_u64().ok_or_else(|| field(format!("{path}.truncated"), "expected a non-negative integer"))? as usize,
        ),
    };
    let cells = obj
        .get("cells")
        .and_then(Value::as_object)
        .ok_or_else(|| field(format!("{path}.cells"), "missing object field"))?;
    let mut builder = SimplicialSetBuilder::new(kind).truncated_at(truncated);
    for (key, level) in cells {
        let n = degree_key(key, &format!("{path}.cells"))?;
        let lpath = format!("{path}.cells.{key}");
        let level = level.as_array().ok_or_else(|| field(&lpath, "expected an array of cells"))?;
        for (ci, cell) in level.iter().enumerate() {
            let cpath = format!("{lpath}[{ci}]");
            let cobj = cell.as_object().ok_or_else(|| field(&cpath, "expected an object"))?;
            let id = cobj
                .get("id")
                .and_then(Value::as_str)
                .ok_or_else(|| field(format!("{cpath}.id"), "missing string field"))?;
            let faces = match cobj.get("faces") {
                None if n == 0 => Vec::new(),
                None => return Err(field(format!("{cpath}.faces"), "missing for a positive-degree cell")),
                Some(f) => {
                    let arr = f.as_array().ok_or_else(|| field(format!("{cpath}.faces"), "expected an array"))?;
                    let mut out = Vec::with_capacity(arr.len());
                    for (fi, entry) in arr.iter().enumerate() {
                        let (word, target) = pair_at(entry, &format!("{cpath}.faces[{fi}]"))?;
                        out.push(FaceSpec::degenerate(word, target));
                    }
                    out
                }
            };
            builder.cell(n, id, faces);
        }
    }
    builder.build().map_err(|e| FormatError::Invalid { path: format!("{path}.cells"), source: e })
}

fn smap_from_value(value: &Value, path: &str) -> Result<SMap, FormatError> {
    let obj = value.as_object().ok_or_else(|| field(path, "expected an object"))?;
    let source = Arc::new(sset_from_value(
        obj.get("source").ok_or_else(|| field(format!("{path}.source"), "missing"))?,
        &format!("{path}.source"),
    )?);
    let target = Arc::new(sset_from_value(
        obj.get("target").ok_or_else(|| field(format!("{path}.target"), "missing"))?,
        &format!("{path}.target"),
    )?);
    let assignment = obj
        .get("assignment")
        .and_then(Value::as_object)
        .ok_or_else(|| field(format!("{path}.assignment"), "missing object field"))?;
    let levels = source.dimension().map_or(0, |d| d + 1);
    let mut images: Vec<Vec<Option<Simplex>>> = (0..levels).map(|n| vec![None; source.cell_count(n)]).collect();
    for (key, level) in assignment {
        let n = degree_key(key, &format!("{path}.assignment"))?;
        let lpath = format!("{path}.assignment.{key}");
        let level = level.as_object().ok_or_else(|| field(&lpath, "expected an object"))?;
        for (id, img) in level {
            let ipath = format!("{lpath}.{id}");
            let idx = source.find(n, id).ok_or_else(|| field(&ipath, "no such source cell"))?;
            let (word, tid) = pair_at(img, &ipath)?;
            let cell_dim = n.checked_sub(word.len()).ok_or_else(|| field(&ipath, "degeneracy word too long"))?;
            let tidx = target
                .find(cell_dim, &tid)
                .ok_or_else(|| field(&ipath, format!("no target cell \"{tid}\" in degree {cell_dim}")))?;
            let s = Simplex::from_word(&word, cell_dim, tidx).map_err(|e| field(&ipath, e.to_string()))?;
            images[n][idx] = Some(s);
        }
    }
    let mut resolved = Vec::with_capacity(levels);
    for (n, level) in images.into_iter().enumerate() {
        let mut out = Vec::with_capacity(level.len());
        for (i, s) in level.into_iter().enumerate() {
            out.push(s.ok_or_else(|| {
                field(format!("{path}.assignment.{n}"), format!("no image for cell \"{}\"", source.cell_id(n, i)))
            })?);
        }
        resolved.push(out);
    }
    SMap::new(source, target, resolved).map_err(|e| FormatError::Invalid { path: format!("{path}.assignment"), source: e })
}

fn pair_value(x: &SimplicialSet, s: Simplex) -> Value {
    json!([s.word().to_string(), x.cell_id(s.cell_dim(), s.cell_index())])
}

pub fn sset_to_value(x: &SimplicialSet) -> Value {
    let mut doc = Map::new();
    doc.insert("kind".into(), json!("sset"));
    doc.insert("simplicial".into(), json!(x.is_simplicial()));
    if let Some(t) = x.truncated_at() {
        doc.insert("truncated".into(), json!(t));
    }
    let mut cells = Map::new();
    for n in 0..x.counts().len() {
        let level: Vec<Value> = x
            .cells(n)
            .iter()
            .map(|c| {
                let mut o = Map::new();
                o.insert("id".into(), json!(c.id));
                if n > 0 {
                    o.insert("faces".into(), Value::Array(c.faces.iter().map(|&f| pair_value(x, f)).collect()));
                }
                Value::Object(o)
            })
            .collect();
        cells.insert(n.to_string(), Value::Array(level));
    }
    doc.insert("cells".into(), Value::Object(cells));
    Value::Object(doc)
}

pub fn smap_to_value(f: &SMap) -> Value {
    let mut doc = Map::new();
    doc.insert("kind".into(), json!("smap"));
    doc.insert("source".into(), sset_to_value(f.source()));
    doc.insert("target".into(), sset_to_value(f.target()));
    let mut assignment = Map::new();
    let src = f.source();
    for n in 0..src.counts().len() {
        let mut level = Map::new();
        for (i, c) in src.cells(n).iter().enumerate() {
            level.insert(c.id.clone(), pair_value(f.target(), f.cell_image(n, i)));
        }
        assignment.insert(n.to_string(), Value::Object(level));
    }
    doc.insert("assignment".into(), Value::Object(assignment));
    Value::Object(doc)
}

fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

pub fn emit_sset(x: &SimplicialSet) -> String {
    render(&sset_to_value(x))
}

pub fn emit_smap(f: &SMap) -> String {
    render(&smap_to_value(f))
}

pub fn emit_ssx(doc: &SsxDocument) -> String {
    match doc {
        SsxDocument::Set(x) => emit_sset(x),
        SsxDocument::Map(f) => emit_smap(f),
    }
}
