use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use crate::homology::{homology, induced_map, GroupMap, HomologyProfile, InducedMap};
use crate::simplicial::{restrict_over_simplex, vertex_subfiber, SMap, Simplex, SimplexRef, SimplicialSet};

use super::LiftError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// `H(X|_c) → H(X|_{c'})`, inverting the leg from `X|_{c'}`.
    Forward,
    /// `H(X|_{c'}) → H(X|_c)`, inverting the leg from `X|_c`.
    Backward,
}

/// The zigzag `X|_c → X|_f ← X|_{c'}` over an edge `f: c → c'` of Y, on
/// homology.
#[derive(Clone, Debug)]
pub struct TransportResult {
    pub edge: SimplexRef,
    pub direction: Direction,
    pub source_fiber: Arc<SimplicialSet>,
    pub middle_fiber: Arc<SimplicialSet>,
    pub target_fiber: Arc<SimplicialSet>,
    pub source_homology: HomologyProfile,
    pub middle_homology: HomologyProfile,
    pub target_homology: HomologyProfile,
    /// Induced by `X|_c → X|_f`.
    pub source_leg: InducedMap,
    /// Induced by `X|_{c'} → X|_f`.
    pub target_leg: InducedMap,
    /// Whether the leg that has to be inverted is a homology isomorphism and
    /// a π0 bijection.
    pub leg_invertible: bool,
    /// The transport matrices per degree, when defined.
    pub transport: Option<Vec<GroupMap>>,
    pub iso_per_degree: Vec<bool>,
}

impl TransportResult {
    /// Both legs are homology isomorphisms and π0 bijections.
    pub fn is_equivalence(&self) -> bool {
        self.source_leg.is_iso() && self.target_leg.is_iso()
    }

    pub fn to_json(&self) -> Value {
        let maps = |m: &[GroupMap]| -> Value {
            m.iter()
                .map(|g| {
                    json!({
                        "matrix": g.matrix.to_i64_rows(),
                        "source_moduli": g.source_moduli.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                        "target_moduli": g.target_moduli.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                    })
                })
                .collect()
        };
        json!({
            "edge": self.edge,
            "direction": self.direction,
            "source_fiber": self.source_homology.to_json(),
            "middle_fiber": self.middle_homology.to_json(),
            "target_fiber": self.target_homology.to_json(),
            "source_leg_iso": self.source_leg.iso_per_degree,
            "target_leg_iso": self.target_leg.iso_per_degree,
            "leg_invertible": self.leg_invertible,
            "transport": self.transport.as_deref().map(maps),
            "iso_per_degree": self.iso_per_degree,
            "equivalence": self.is_equivalence(),
        })
    }
}

/// Fibers over the two vertices and over the edge, the maps induced by the
/// fiber inclusions, and the composite with the inverted leg.
pub fn transport_homology(p: &SMap, edge: Simplex, direction: Direction) -> Result<TransportResult, LiftError> {
    if edge.degree() != 1 {
        return Err(LiftError::Precondition(format!("expected an edge, got a simplex of degree {}", edge.degree())));
    }
    let r = restrict_over_simplex(p, edge)?;
    let (f0, i0) = vertex_subfiber(&r.to_simplex, 0)?;
    let (f1, i1) = vertex_subfiber(&r.to_simplex, 1)?;
    let (h0, hm, h1) = (homology(&f0), homology(&r.object), homology(&f1));
    let source_leg = induced_map(&i0, &h0, &hm);
    let target_leg = induced_map(&i1, &h1, &hm);
    let (along, back) = match direction {
        Direction::Forward => (&source_leg, &target_leg),
        Direction::Backward => (&target_leg, &source_leg),
    };
    let leg_invertible = back.is_iso();
    let degrees = along.degrees.len().min(back.degrees.len());
    let transport = if leg_invertible {
        let mut out = Vec::with_capacity(degrees);
        for k in 0..degrees {
            let inv = back.degrees[k].inverse().expect("leg is invertible");
            out.push(along.degrees[k].then(&inv));
        }
        Some(out)
    } else {
        None
    };
    let iso_per_degree = match &transport {
        Some(t) => t.iter().map(GroupMap::is_iso).collect(),
        None => vec![false; degrees],
    };
    Ok(TransportResult {
        edge: p.target().to_ref(edge),
        direction,
        source_fiber: f0,
        middle_fiber: r.object,
        target_fiber: f1,
        source_homology: h0,
        middle_homology: hm,
        target_homology: h1,
        source_leg,
        target_leg,
        leg_invertible,
        transport,
        iso_per_degree,
    })
}
