//! Named verifications, each replaying one computation end to end and
//! producing a report with the constraints, tables and membership
//! certificates it relied on.

mod ansatz;
mod checks;
pub mod rewrite;
mod rigidity;

use std::fmt::{self, Write as _};
use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::graded::GradedError;
use crate::linalg::{ConstraintSet, LinalgError};
use crate::morphism::MorphismError;
use crate::presentation::PresentationError;
use crate::spanning::{Certificate, SpanningError};

pub use ansatz::{cyclic_symmetrizer, equivariant_candidates};
pub use rigidity::{rigidity_steps, RigiditySteps, StepOne, StepTwo};

#[derive(Debug, Error)]
pub enum ProofError {
    #[error("unknown verification `{0}`")]
    Unknown(String),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Spanning(#[from] SpanningError),
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// `(name, optional tier)` in the order `verify all` reports them.
pub const VERIFICATIONS: &[(&str, bool)] = &[
    ("ll-flatness", false),
    ("ll-assoc-iso", false),
    ("ap-dims", false),
    ("poisson-classify", false),
    ("ap-rigidity-symbolic", false),
    ("ap-rigidity-dims", false),
    ("kokoris-iso", false),
    ("star-trivial", false),
    ("flexible", false),
    ("kokoris-remark", false),
    ("alt-warning", true),
];

#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    /// Include arity 5 where a verification supports it.
    pub allow_big: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub name: String,
    pub checks: Vec<Check>,
    pub constraints: Vec<(String, ConstraintSet)>,
    pub tables: Vec<(String, Vec<usize>)>,
    pub certificates: Vec<(String, Certificate)>,
    pub elapsed: Duration,
}

impl VerificationReport {
    fn new(name: &str) -> Self {
        VerificationReport {
            name: name.to_string(),
            checks: Vec::new(),
            constraints: Vec::new(),
            tables: Vec::new(),
            certificates: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    fn check(&mut self, label: impl Into<String>, passed: bool, detail: impl Into<String>) -> bool {
        self.checks.push(Check {
            label: label.into(),
            passed,
            detail: detail.into(),
        });
        passed
    }

    fn table(&mut self, label: impl Into<String>, values: Vec<usize>) {
        self.tables.push((label.into(), values));
    }

    fn constraint(&mut self, label: impl Into<String>, c: ConstraintSet) {
        self.constraints.push((label.into(), c));
    }

    fn certificate(&mut self, label: impl Into<String>, c: Certificate) {
        self.certificates.push((label.into(), c));
    }

    /// Human-readable report; wall time only when asked for, so that
    /// reruns are byte-identical.
    pub fn render_text(&self, timings: bool) -> String {
        let mut s = String::new();
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let _ = write!(s, "{}: {verdict}", self.name);
        if timings {
            let _ = write!(s, " ({:.3} s)", self.elapsed.as_secs_f64());
        }
        s.push('\n');
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            let _ = writeln!(s, "  [{mark}] {}", c.label);
            for line in c.detail.lines() {
                let _ = writeln!(s, "         {line}");
            }
        }
        for (k, c) in &self.constraints {
            let _ = writeln!(s, "  constraints {k}: {c}");
        }
        for (k, t) in &self.tables {
            let vals: Vec<String> = t.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(s, "  table {k}: ({})", vals.join(", "));
        }
        for (k, c) in &self.certificates {
            let _ = writeln!(s, "  certificate {k}: {}", certificate_text(c));
        }
        s
    }

    pub fn record(&self, timings: bool) -> serde_json::Value {
        let certs: Vec<serde_json::Value> = self
            .certificates
            .iter()
            .map(|(k, c)| {
                serde_json::json!({
                    "label": k,
                    "target": c.target.to_string(),
                    "member": c.member,
                    "verified": c.verified,
                    "coordinates": c
                        .coordinates
                        .iter()
                        .map(|(a, g)| serde_json::json!([a.to_string(), g]))
                        .collect::<Vec<_>>(),
                    "residue": c.residue.to_string(),
                })
            })
            .collect();
        let mut v = serde_json::json!({
            "record": "verification",
            "name": self.name,
            "passed": self.passed(),
            "checks": self.checks,
            "constraints": self
                .constraints
                .iter()
                .map(|(k, c)| serde_json::json!({
                    "label": k,
                    "equations": c.constraints.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
                    "satisfiable": c.satisfiable,
                }))
                .collect::<Vec<_>>(),
            "tables": self
                .tables
                .iter()
                .map(|(k, t)| serde_json::json!({"label": k, "values": t}))
                .collect::<Vec<_>>(),
            "certificates": certs,
        });
        if timings {
            v["seconds"] = serde_json::json!(self.elapsed.as_secs_f64());
        }
        v
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_text(false))
    }
}

fn certificate_text(c: &Certificate) -> String {
    if !c.member {
        return format!("not a member; residue {}", c.residue);
    }
    if c.coordinates.is_empty() {
        return "member (zero)".to_string();
    }
    let terms: Vec<String> = c.coordinates.iter().map(|(a, g)| format!("{a}*{g}")).collect();
    let tag = if c.verified { "verified" } else { "unverified" };
    format!("member = {} ({tag})", terms.join(" + "))
}

pub fn is_known(name: &str) -> bool {
    VERIFICATIONS.iter().any(|(n, _)| *n == name)
}

pub fn run(name: &str, opts: &Options) -> Result<VerificationReport, ProofError> {
    let start = Instant::now();
    let mut report = match name {
        "ll-flatness" => checks::ll_flatness(opts)?,
        "ll-assoc-iso" => checks::ll_assoc_iso()?,
        "ap-dims" => checks::ap_dims(opts)?,
        "poisson-classify" => checks::poisson_classify()?,
        "ap-rigidity-symbolic" => rigidity::ap_rigidity_symbolic()?,
        "ap-rigidity-dims" => rigidity::ap_rigidity_dims()?,
        "kokoris-iso" => checks::kokoris_iso()?,
        "star-trivial" => checks::star_trivial()?,
        "flexible" => checks::flexible()?,
        "kokoris-remark" => checks::kokoris_remark()?,
        "alt-warning" => checks::alt_warning()?,
        _ => return Err(ProofError::Unknown(name.to_string())),
    };
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Runs the selected verifications on separate threads; results come back
/// in the order of `names`.
pub fn run_many(names: &[&str], opts: &Options) -> Vec<(String, Result<VerificationReport, ProofError>)> {
    std::thread::scope(|s| {
        let handles: Vec<_> = names
            .iter()
            .map(|n| (n.to_string(), s.spawn(move || run(n, opts))))
            .collect();
        handles
            .into_iter()
            .map(|(n, h)| (n, h.join().expect("verification thread panicked")))
            .collect()
    })
}

#[cfg(test)]
mod tests;
