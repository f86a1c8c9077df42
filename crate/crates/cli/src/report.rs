//! Verdict reports in text and machine-readable (JSON) form.
//!
//! Both renderings depend only on the spec, the flags and the seed: no
//! timings, no host information, fixed key order.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::spec::BoxEntry;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Tight,
    NotTight,
    Orthogonal,
    NotOrthogonal,
    NoCriterion,
    InputError,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Tight => "tight",
            Verdict::NotTight => "not-tight",
            Verdict::Orthogonal => "orthogonal",
            Verdict::NotOrthogonal => "not-orthogonal",
            Verdict::NoCriterion => "no-criterion",
            Verdict::InputError => "input-error",
        }
    }

    pub fn holds(&self) -> Option<bool> {
        match self {
            Verdict::Tight | Verdict::Orthogonal => Some(true),
            Verdict::NotTight | Verdict::NotOrthogonal => Some(false),
            Verdict::NoCriterion | Verdict::InputError => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleStatus {
    Agree,
    Disagree,
    Inconclusive,
}

impl OracleStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            OracleStatus::Agree => "agree",
            OracleStatus::Disagree => "disagree",
            OracleStatus::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticeLine {
    pub index: usize,
    /// `|det A_j|^{-1}`.
    pub density: String,
    /// Per-lattice orthogonality (unshifted orthogonality only).
    pub orthogonal: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    /// `dual-point`, `translate` or `integer-shift`.
    pub kind: String,
    pub lattice: Option<usize>,
    pub alpha: Option<Vec<String>>,
    pub z: Option<Vec<String>>,
    pub k: Option<Vec<String>>,
    pub m: Option<Vec<String>>,
    /// Shift difference shared by the failing class.
    pub q: Option<Vec<String>>,
    pub members: Option<Vec<usize>>,
    pub overlap: Option<Vec<BoxEntry>>,
    pub sum: Option<String>,
    /// `[re, im]` of the sum.
    pub sum_value: Option<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    /// Expected `K` (tightness only).
    pub expected: Option<f64>,
    /// `max |K̂ - K| / K`.
    pub deviation: Option<f64>,
    /// `(max K̂ - min K̂) / mean K̂`.
    pub spread: Option<f64>,
    /// Largest normalized cross-correlation magnitude.
    pub magnitude: Option<f64>,
    /// Normalized magnitude for indicator spectra.
    pub indicator_magnitude: Option<f64>,
    /// Largest relative truncation-tail estimate over trials.
    pub tail: f64,
    pub status: OracleStatus,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConfigReport {
    pub radius: u64,
    pub trials: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub resolution: usize,
    pub numeric_tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub name: Option<String>,
    pub question: Option<String>,
    pub verdict: Verdict,
    pub mode: Option<String>,
    pub criterion: Option<String>,
    #[serde(rename = "K")]
    pub k: Option<String>,
    pub per_lattice: Vec<LatticeLine>,
    pub witness: Option<WitnessReport>,
    pub oracle: Option<OracleReport>,
    pub config: Option<ConfigReport>,
    pub error: Option<String>,
    pub exit_code: i32,
}

/// 0 property holds, 1 property fails, 2 input error or no criterion,
/// 3 criteria and oracle disagree.
pub fn exit_code(report: &Report) -> i32 {
    if report
        .oracle
        .as_ref()
        .is_some_and(|o| o.status == OracleStatus::Disagree)
    {
        return 3;
    }
    match report.verdict.holds() {
        Some(true) => 0,
        Some(false) => 1,
        None => 2,
    }
}

fn opt_vec(v: &Option<Vec<String>>) -> Option<String> {
    v.as_ref().map(|v| format!("({})", v.join(", ")))
}

fn sci(x: f64) -> String {
    format!("{x:.6e}")
}

impl Report {
    pub fn to_machine(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut line = |label: &str, value: &str| {
            let _ = writeln!(out, "{label:<10} {value}");
        };
        if let Some(n) = &self.name {
            line("name:", n);
        }
        if let Some(q) = &self.question {
            line("question:", q);
        }
        line("verdict:", self.verdict.as_str());
        if let Some(m) = &self.mode {
            line("mode:", m);
        }
        if let Some(c) = &self.criterion {
            line("criterion:", c);
        }
        if let Some(k) = &self.k {
            line("K:", k);
        }
        if let Some(e) = &self.error {
            line("error:", e);
        }
        for l in &self.per_lattice {
            let extra = match l.orthogonal {
                Some(true) => ", orthogonal",
                Some(false) => ", not orthogonal",
                None => "",
            };
            let _ = writeln!(out, "lattice {}: K_j = {}{}", l.index, l.density, extra);
        }
        if let Some(w) = &self.witness {
            let _ = writeln!(out, "witness ({}):", w.kind);
            let fields = [
                ("lattice", w.lattice.map(|j| j.to_string())),
                ("alpha", opt_vec(&w.alpha)),
                ("z", opt_vec(&w.z)),
                ("k", opt_vec(&w.k)),
                ("m", opt_vec(&w.m)),
                ("q", opt_vec(&w.q)),
                (
                    "members",
                    w.members.as_ref().map(|m| {
                        format!(
                            "{{{}}}",
                            m.iter()
                                .map(|j| j.to_string())
                                .collect::<Vec<_>>()
                                .join(", ")
                        )
                    }),
                ),
                (
                    "overlap",
                    w.overlap.as_ref().map(|boxes| {
                        boxes
                            .iter()
                            .map(|b| format!("[{}; {})", b.lower.join(", "), b.upper.join(", ")))
                            .collect::<Vec<_>>()
                            .join(" u ")
                    }),
                ),
                ("sum", w.sum.clone()),
                (
                    "sum value",
                    w.sum_value
                        .map(|[re, im]| format!("{} + {}i", sci(re), sci(im))),
                ),
            ];
            for (label, value) in fields {
                if let Some(v) = value {
                    let _ = writeln!(out, "  {label}: {v}");
                }
            }
        }
        if let Some(o) = &self.oracle {
            let _ = writeln!(out, "oracle ({}):", o.status.as_str());
            let fields = [
                ("expected K", o.expected),
                ("max relative deviation", o.deviation),
                ("spread", o.spread),
                ("max magnitude", o.magnitude),
                ("indicator magnitude", o.indicator_magnitude),
                ("tail estimate", Some(o.tail)),
            ];
            for (label, value) in fields {
                if let Some(v) = value {
                    let _ = writeln!(out, "  {label}: {}", sci(v));
                }
            }
        }
        if let Some(c) = &self.config {
            let _ = writeln!(
                out,
                "config: radius {} trials {} seed {} tolerance {} resolution {} numeric tolerance {}",
                c.radius, c.trials, c.seed, c.tolerance, c.resolution, c.numeric_tolerance
            );
        }
        let _ = writeln!(out, "exit code: {}", self.exit_code);
        out
    }
}
