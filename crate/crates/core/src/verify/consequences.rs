use std::sync::Arc;

use serde::Serialize;

use crate::homology::{euler_characteristic, homology, pi0};
use crate::simplicial::{restrict_over_simplex, SMap, Simplex, SimplicialError, SimplicialSet};

/// `Δ^0 ×_Y X` for a vertex of Y.
pub fn vertex_fiber(p: &SMap, v: Simplex) -> Result<Arc<SimplicialSet>, SimplicialError> {
    Ok(restrict_over_simplex(p, v)?.object)
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentConstancy {
    pub component: usize,
    pub vertices: Vec<String>,
    /// Rendered homology of the fiber over the first vertex.
    pub fiber: String,
    pub constant: bool,
    /// First vertex whose fiber differs, if any.
    pub differs_at: Option<String>,
}

/// Fiber homology over the vertices of each path component of Y.
pub fn fiber_constancy(p: &SMap) -> Result<Vec<ComponentConstancy>, SimplicialError> {
    let y = p.target();
    let comps = pi0(y);
    let mut out: Vec<ComponentConstancy> = Vec::with_capacity(comps.count);
    let mut reference = Vec::with_capacity(comps.count);
    for v in 0..y.cell_count(0) {
        let c = comps.labels[v];
        let h = homology(&*vertex_fiber(p, Simplex::cell(0, v))?);
        let id = y.cell_id(0, v).to_string();
        if c == out.len() {
            out.push(ComponentConstancy {
                component: c,
                vertices: vec![id],
                fiber: h.render_reduced(),
                constant: true,
                differs_at: None,
            });
            reference.push(h.signature());
        } else {
            let entry = &mut out[c];
            if entry.constant && h.signature() != reference[c] {
                entry.constant = false;
                entry.differs_at = Some(id.clone());
            }
            entry.vertices.push(id);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct EulerCheck {
    pub total: i64,
    pub fiber: i64,
    pub base: i64,
    pub holds: bool,
}

impl EulerCheck {
    pub fn describe(&self) -> String {
        format!("χ(X) = {}, χ(fiber)·χ(Y) = {}·{} = {}", self.total, self.fiber, self.base, self.fiber * self.base)
    }
}

/// `χ(X) = χ(F)·χ(Y)` for connected, untruncated Y; `None` otherwise.
pub fn euler_multiplicativity(p: &SMap) -> Result<Option<EulerCheck>, SimplicialError> {
    let (x, y) = (p.source(), p.target());
    if pi0(y).count != 1 {
        return Ok(None);
    }
    let fiber = vertex_fiber(p, Simplex::cell(0, 0))?;
    let (Some(total), Some(f), Some(base)) = (
        euler_characteristic(x).exact(),
        euler_characteristic(&fiber).exact(),
        euler_characteristic(y).exact(),
    ) else {
        return Ok(None);
    };
    Ok(Some(EulerCheck { total, fiber: f, base, holds: total == f * base }))
}
