//! Structured verification reports.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::camera::{Arrangement, Predicates};
use crate::poly::{Polynomial, Rational};

/// What the theorem predicts for a check on the given input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    Holds,
    Fails,
    /// Hypotheses are not met, so the theorem says nothing.
    Unknown,
}

impl Expectation {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Expectation::Holds
        } else {
            Expectation::Fails
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    /// Every predicted identity holds.
    Confirmed,
    /// Every prediction matched, including at least one predicted failure.
    ConfirmedCounterexample,
    /// Nothing was predicted; results are informational.
    NoPrediction,
    /// Some check disagrees with its prediction.
    Unexpected,
    /// The verification could not be run on this input.
    PreconditionViolated,
}

impl Outcome {
    pub fn is_success(self) -> bool {
        matches!(self, Outcome::Confirmed | Outcome::ConfirmedCounterexample | Outcome::NoPrediction)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A polynomial lying in one ideal but not the other.
    Polynomial { role: String, poly: String },
    /// An image tuple.
    Point { role: String, coords: Vec<Vec<String>> },
    /// A kernel vector `(q, -lambda)`.
    Kernel { role: String, vector: Vec<String> },
}

impl Witness {
    pub fn polynomial(role: &str, p: &Polynomial) -> Self {
        Witness::Polynomial {
            role: role.into(),
            poly: p.canonical().to_string(),
        }
    }

    pub fn point(role: &str, pts: &[Vec<Rational>]) -> Self {
        Witness::Point {
            role: role.into(),
            coords: pts.iter().map(|p| p.iter().map(|c| c.to_string()).collect()).collect(),
        }
    }

    pub fn kernel(role: &str, v: &[Rational]) -> Self {
        Witness::Kernel {
            role: role.into(),
            vector: v.iter().map(|c| c.to_string()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
    pub expected: Expectation,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Witness>,
}

impl Check {
    pub fn new(name: &str, holds: bool, expected: Expectation) -> Self {
        Check {
            name: name.into(),
            holds,
            expected,
            witnesses: Vec::new(),
        }
    }

    pub fn with(mut self, w: Witness) -> Self {
        self.witnesses.push(w);
        self
    }

    pub fn with_all(mut self, ws: impl IntoIterator<Item = Witness>) -> Self {
        self.witnesses.extend(ws);
        self
    }

    pub fn matches(&self) -> bool {
        match self.expected {
            Expectation::Holds => self.holds,
            Expectation::Fails => !self.holds,
            Expectation::Unknown => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub statement: String,
    pub arrangement: String,
    pub predicates: Predicates,
    pub hypotheses: Vec<Hypothesis>,
    /// Conjunction of all checks.
    pub holds: bool,
    pub outcome: Outcome,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// Groebner basis sizes of the ideals involved.
    pub gb_sizes: BTreeMap<String, usize>,
    /// Wall-clock milliseconds per stage; omitted from JSON unless requested.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub timings_ms: BTreeMap<String, u64>,
}

impl VerificationReport {
    pub(crate) fn start(theorem: &str, statement: &str, arr: &Arrangement) -> Self {
        VerificationReport {
            theorem: theorem.into(),
            statement: statement.into(),
            arrangement: arr.fingerprint(),
            predicates: arr.predicates(),
            hypotheses: Vec::new(),
            holds: false,
            outcome: Outcome::NoPrediction,
            checks: Vec::new(),
            note: None,
            gb_sizes: BTreeMap::new(),
            timings_ms: BTreeMap::new(),
        }
    }

    pub(crate) fn hypothesis(&mut self, name: &str, holds: bool) -> bool {
        self.hypotheses.push(Hypothesis {
            name: name.into(),
            holds,
        });
        holds
    }

    /// Marks the report as not runnable and explains why.
    pub(crate) fn violated(mut self, why: String) -> Self {
        self.outcome = Outcome::PreconditionViolated;
        self.note = Some(why);
        self.holds = false;
        self
    }

    pub(crate) fn finish(&mut self) {
        if self.outcome == Outcome::PreconditionViolated {
            self.holds = false;
            return;
        }
        self.holds = self.checks.iter().all(|c| c.holds);
        self.outcome = if self.checks.iter().any(|c| !c.matches()) {
            Outcome::Unexpected
        } else if self.checks.iter().all(|c| c.expected == Expectation::Unknown) {
            Outcome::NoPrediction
        } else if self.checks.iter().any(|c| c.expected == Expectation::Fails) {
            Outcome::ConfirmedCounterexample
        } else {
            Outcome::Confirmed
        };
    }

    /// Human-readable multi-line summary.
    pub fn render(&self) -> String {
        let mut s = format!("{} [{}]: {}\n", self.theorem, outcome_label(self.outcome), self.statement);
        for h in &self.hypotheses {
            s += &format!("  hypothesis {}: {}\n", h.name, if h.holds { "yes" } else { "no" });
        }
        for c in &self.checks {
            let exp = match c.expected {
                Expectation::Holds => "expected to hold",
                Expectation::Fails => "expected to fail",
                Expectation::Unknown => "no prediction",
            };
            s += &format!("  {} {} ({exp})\n", if c.holds { "holds" } else { "fails" }, c.name);
            for w in &c.witnesses {
                s += &format!("    witness {}\n", render_witness(w));
            }
        }
        if let Some(n) = &self.note {
            s += &format!("  note: {n}\n");
        }
        for (k, v) in &self.timings_ms {
            s += &format!("  time {k}: {v} ms\n");
        }
        s
    }
}

fn outcome_label(o: Outcome) -> &'static str {
    match o {
        Outcome::Confirmed => "confirmed",
        Outcome::ConfirmedCounterexample => "confirmed counterexample",
        Outcome::NoPrediction => "no prediction",
        Outcome::Unexpected => "UNEXPECTED",
        Outcome::PreconditionViolated => "precondition violated",
    }
}

fn render_witness(w: &Witness) -> String {
    match w {
        Witness::Polynomial { role, poly } => format!("{role}: {poly}"),
        Witness::Point { role, coords } => {
            let pts: Vec<String> = coords.iter().map(|p| format!("({})", p.join(","))).collect();
            format!("{role}: ({})", pts.join(","))
        }
        Witness::Kernel { role, vector } => format!("{role}: ({})", vector.join(",")),
    }
}
