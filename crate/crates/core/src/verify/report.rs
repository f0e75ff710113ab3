use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use crate::lifting::{Certificate, FibrationClass, Verdict};
use crate::simplicial::ssx::emit_smap;
use crate::simplicial::SMap;

pub const QUALIFIER: &str = "homological proxy certificate";

/// SHA-256 of the canonical SSX rendering.
pub fn digest(f: &SMap) -> String {
    hex::encode(Sha256::digest(emit_smap(f).as_bytes()))
}

#[derive(Clone, Debug, Serialize)]
pub struct InputDigest {
    pub name: String,
    pub sha256: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct NamedCertificate {
    pub name: String,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberComparison {
    pub simplex: String,
    /// `X|_{i(σ)} → X|_σ` is a homology isomorphism and π0 bijection.
    pub initial_iso: bool,
    /// `X|_{ℓ(σ)} → X|_σ`.
    pub last_iso: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SkeletonGroup {
    pub degree: usize,
    pub simplices: Vec<FiberComparison>,
}

/// One consequence check; `passed = None` means skipped.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: Option<bool>,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, passed: Option<bool>, detail: String) -> Self {
        Self { name: name.into(), passed, detail }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub kind: String,
    pub qualifier: &'static str,
    pub verdict: Verdict,
    pub inputs: Vec<InputDigest>,
    pub cap: Option<usize>,
    pub certificates: Vec<NamedCertificate>,
    pub fiber_comparisons: Vec<SkeletonGroup>,
    pub checks: Vec<Check>,
    pub details: Map<String, Value>,
    pub witness: Option<String>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(kind: &str) -> Self {
        Self {
            kind: kind.into(),
            qualifier: QUALIFIER,
            verdict: Verdict::Inconclusive,
            inputs: Vec::new(),
            cap: None,
            certificates: Vec::new(),
            fiber_comparisons: Vec::new(),
            checks: Vec::new(),
            details: Map::new(),
            witness: None,
            notes: Vec::new(),
        }
    }

    pub fn add_digest(&mut self, name: &str, f: &SMap) {
        self.inputs.push(InputDigest { name: name.into(), sha256: digest(f) });
    }

    pub fn add_certificate(&mut self, name: &str, c: &Certificate) {
        self.certificates.push(NamedCertificate { name: name.into(), certificate: c.clone() });
    }

    pub fn add_class(&mut self, prefix: &str, class: &FibrationClass) {
        self.add_certificate(&format!("{prefix} inner"), &class.inner);
        self.add_certificate(&format!("{prefix} cartesian"), &class.cartesian);
        self.add_certificate(&format!("{prefix} cocartesian"), &class.cocartesian);
    }

    /// Certified iff every check ran and passed; a failed check refutes.
    pub fn checks_verdict(&self) -> Verdict {
        self.checks.iter().fold(Verdict::Certified, |v, c| {
            v.and(match c.passed {
                Some(true) => Verdict::Certified,
                Some(false) => Verdict::Refuted,
                None => Verdict::Certified,
            })
        })
    }

    /// A certified verdict over truncated input is downgraded.
    pub fn surface_truncation(&mut self, f: &SMap) {
        for (side, t) in [("source", f.source().truncated_at()), ("target", f.target().truncated_at())] {
            if let Some(t) = t {
                self.notes.push(format!("{side} is truncated at degree {t}"));
                if self.verdict == Verdict::Certified {
                    self.verdict = Verdict::Inconclusive;
                }
            }
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Verdict::Certified => 0,
            Verdict::Refuted => 1,
            Verdict::Inconclusive => 2,
        }
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}: {} ({})", self.kind, self.verdict.as_str(), self.qualifier);
        for d in &self.inputs {
            let _ = writeln!(out, "  input {} sha256 {}", d.name, d.sha256);
        }
        if let Some(cap) = self.cap {
            let _ = writeln!(out, "  cap {cap}");
        }
        for c in &self.certificates {
            let _ = writeln!(
                out,
                "  {}: {} ({} problems)",
                c.name,
                c.certificate.verdict.as_str(),
                c.certificate.problems_checked
            );
        }
        for g in &self.fiber_comparisons {
            let _ = writeln!(out, "  degree {}:", g.degree);
            for row in &g.simplices {
                let _ = writeln!(out, "    {}  initial {}  last {}", row.simplex, mark(row.initial_iso), mark(row.last_iso));
            }
        }
        for c in &self.checks {
            let status = match c.passed {
                Some(true) => "pass",
                Some(false) => "FAIL",
                None => "skipped",
            };
            let _ = writeln!(out, "  [{status}] {}: {}", c.name, c.detail);
        }
        if let Some(w) = &self.witness {
            let _ = writeln!(out, "  witness: {w}");
        }
        for n in &self.notes {
            let _ = writeln!(out, "  note: {n}");
        }
        out
    }
}

fn mark(b: bool) -> &'static str {
    if b {
        "iso"
    } else {
        "not iso"
    }
}
