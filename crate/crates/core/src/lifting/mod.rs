//! Horn lifting, fibration certificates, homotopy lifting and fiber
//! transport.

mod certify;
mod context;
mod homotopy;
mod horn;
mod transport;

use serde::Serialize;
use serde_json::Value;

use crate::simplicial::{SimplexRef, SimplicialError};

pub use certify::{
    certify_fibration_class, certify_inner_fibration, default_cap, is_cartesian_edge, is_cocartesian_edge,
    FibrationClass,
};
pub use homotopy::{audit_homotopy_lift, last_vertex_contraction, lift_homotopy, prism, HomotopyLift, Prism};
pub use horn::{horn_fillers, recheck, solve_horn_lift, solve_horn_problem, HornProblem};
pub use transport::{transport_homology, Direction, TransportResult};

#[derive(Debug, thiserror::Error)]
pub enum LiftError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("inconclusive: {reason}")]
    Inconclusive { reason: String, problem: Box<LiftingProblem> },
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Certified,
    Refuted,
    Inconclusive,
}

impl Verdict {
    /// `certified` only if both are; `refuted` dominates `inconclusive`.
    pub fn and(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Refuted, _) | (_, Refuted) => Refuted,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Certified,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Certified => "certified",
            Verdict::Refuted => "refuted",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// A single lifting problem: the horn `Λ^n_i → X` given by its faces, and
/// the base simplex `Δ^n → Y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftingProblem {
    pub n: usize,
    pub i: usize,
    pub base: SimplexRef,
    /// `(j, d_j)` for every `j ≠ i`.
    pub faces: Vec<(usize, SimplexRef)>,
    /// Stated for the opposite map (cocartesian checks).
    pub opposite: bool,
}

impl LiftingProblem {
    pub fn describe(&self) -> String {
        let faces: Vec<String> = self.faces.iter().map(|(j, r)| format!("d{j}={r}")).collect();
        format!(
            "({},{})-horn{} over {}: {}",
            self.n,
            self.i,
            if self.opposite { " in the opposite map" } else { "" },
            self.base,
            faces.join(", ")
        )
    }
}

/// Evidence attached to a refutation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Witness {
    /// A lifting problem with no solution.
    Horn { problem: LiftingProblem },
    /// No edge over `base_edge` ending (cartesian) or starting
    /// (cocartesian) at `vertex` passes the edge test.
    MissingLift {
        base_edge: SimplexRef,
        vertex: SimplexRef,
        candidates: usize,
        /// First failing problem of the least candidate, if there was one.
        stuck: Option<LiftingProblem>,
        opposite: bool,
    },
}

impl Witness {
    pub fn describe(&self) -> String {
        match self {
            Witness::Horn { problem } => format!("no lift for the {}", problem.describe()),
            Witness::MissingLift { base_edge, vertex, candidates, opposite, .. } => format!(
                "edge {base_edge} has no {} lift {} {vertex} ({candidates} candidate edges)",
                if *opposite { "cocartesian" } else { "cartesian" },
                if *opposite { "starting at" } else { "ending at" },
            ),
        }
    }
}

/// Outcome of a fibration or edge check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub verdict: Verdict,
    pub cap: usize,
    pub problems_checked: u64,
    pub witness: Option<Witness>,
    pub notes: Vec<String>,
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        self.verdict == Verdict::Certified
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("certificate serializes")
    }
}
