//! Problem specification files.
//!
//! A spec is a JSON document. Rationals are strings (`"p/q"` or `"p"`);
//! floats are rejected everywhere except `numeric_shift`, which accepts
//! decimals for irrational shifts and makes the verdict numeric.
//!
//! ```json
//! {
//!   "dimension": 1,
//!   "question": "tight",
//!   "band_e": [{ "lower": ["-1/2"], "upper": ["1/2"] }],
//!   "system_a": [
//!     { "matrix": [["2"]], "shift": ["0"] },
//!     { "matrix": [["2"]], "shift": ["1"] }
//!   ]
//! }
//! ```

use std::fmt;
use std::path::Path;

use lattice_sampling::geometry::{Band, RatBox};
use lattice_sampling::lattice::{LatticeSystem, Shift, ShiftedLattice};
use lattice_sampling::rational::{parse_rational, RatMatrix, Rational};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Question {
    Tight,
    Orthogonal,
}

impl fmt::Display for Question {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Question::Tight => "tight",
            Question::Orthogonal => "orthogonal",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoxEntry {
    pub lower: Vec<String>,
    pub upper: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeEntry {
    pub matrix: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shift: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub numeric_shift: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleOverrides {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resolution: Option<usize>,
}

/// The file as written, before validation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub dimension: usize,
    pub question: Question,
    pub band_e: Vec<BoxEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub band_f: Option<Vec<BoxEntry>>,
    pub system_a: Vec<LatticeEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub system_b: Option<Vec<LatticeEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleOverrides>,
}

/// A validated problem.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    pub name: Option<String>,
    pub note: Option<String>,
    pub dimension: usize,
    pub question: Question,
    pub band_e: Band,
    pub band_f: Option<Band>,
    pub system_a: LatticeSystem,
    pub system_b: Option<LatticeSystem>,
    pub oracle: OracleOverrides,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpecError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{location}: {message}")]
    Invalid { location: String, message: String },
}

impl SpecError {
    fn at(location: impl Into<String>, message: impl fmt::Display) -> Self {
        SpecError::Invalid {
            location: location.into(),
            message: message.to_string(),
        }
    }

    /// Field path or `line:column` of the problem.
    pub fn location(&self) -> String {
        match self {
            SpecError::Io { path, .. } => path.clone(),
            SpecError::Syntax { line, column, .. } => format!("{line}:{column}"),
            SpecError::Invalid { location, .. } => location.clone(),
        }
    }
}

fn rational(text: &str, location: &str) -> Result<Rational, SpecError> {
    parse_rational(text).map_err(|e| SpecError::at(location, e))
}

fn rational_vector(
    items: &[String],
    dim: usize,
    location: &str,
) -> Result<Vec<Rational>, SpecError> {
    if items.len() != dim {
        return Err(SpecError::at(
            location,
            format!("expected {dim} entries, found {}", items.len()),
        ));
    }
    items
        .iter()
        .enumerate()
        .map(|(i, s)| rational(s, &format!("{location}[{i}]")))
        .collect()
}

fn band(entries: &[BoxEntry], dim: usize, field: &str) -> Result<Band, SpecError> {
    if entries.is_empty() {
        return Err(SpecError::at(field, "empty band"));
    }
    let mut boxes = Vec::with_capacity(entries.len());
    for (i, b) in entries.iter().enumerate() {
        let loc = format!("{field}[{i}]");
        let lower = rational_vector(&b.lower, dim, &format!("{loc}.lower"))?;
        let upper = rational_vector(&b.upper, dim, &format!("{loc}.upper"))?;
        boxes.push(RatBox::new(lower, upper).map_err(|e| SpecError::at(&loc, e))?);
    }
    Band::new(dim, boxes).map_err(|e| SpecError::at(field, e))
}

fn system(entries: &[LatticeEntry], dim: usize, field: &str) -> Result<LatticeSystem, SpecError> {
    if entries.is_empty() {
        return Err(SpecError::at(field, "empty lattice system"));
    }
    let mut lattices = Vec::with_capacity(entries.len());
    for (j, entry) in entries.iter().enumerate() {
        let loc = format!("{field}[{j}]");
        if entry.matrix.len() != dim {
            return Err(SpecError::at(
                format!("{loc}.matrix"),
                format!("expected {dim} rows, found {}", entry.matrix.len()),
            ));
        }
        let rows = entry
            .matrix
            .iter()
            .enumerate()
            .map(|(r, row)| rational_vector(row, dim, &format!("{loc}.matrix[{r}]")))
            .collect::<Result<Vec<_>, _>>()?;
        let matrix =
            RatMatrix::from_rows(rows).map_err(|e| SpecError::at(format!("{loc}.matrix"), e))?;
        let shift = match (&entry.shift, &entry.numeric_shift) {
            (Some(_), Some(_)) => {
                return Err(SpecError::at(
                    &loc,
                    "give either shift or numeric_shift, not both",
                ));
            }
            (Some(s), None) => Shift::Exact(rational_vector(s, dim, &format!("{loc}.shift"))?),
            (None, Some(v)) => {
                if v.len() != dim {
                    return Err(SpecError::at(
                        format!("{loc}.numeric_shift"),
                        format!("expected {dim} entries, found {}", v.len()),
                    ));
                }
                if let Some(i) = v.iter().position(|x| !x.is_finite()) {
                    return Err(SpecError::at(
                        format!("{loc}.numeric_shift[{i}]"),
                        "not a finite number",
                    ));
                }
                Shift::Numeric(v.clone())
            }
            (None, None) => Shift::zero(dim),
        };
        lattices.push(
            ShiftedLattice::new(matrix, shift)
                .map_err(|e| SpecError::at(format!("{loc}.matrix"), e))?,
        );
    }
    LatticeSystem::new(lattices).map_err(|e| SpecError::at(field, e))
}

impl SpecFile {
    pub fn validate(&self) -> Result<ProblemSpec, SpecError> {
        let d = self.dimension;
        if d == 0 {
            return Err(SpecError::at("dimension", "must be at least 1"));
        }
        if let Some(o) = &self.oracle {
            if o.radius == Some(0) {
                return Err(SpecError::at("oracle.radius", "must be at least 1"));
            }
            if o.resolution == Some(0) {
                return Err(SpecError::at("oracle.resolution", "must be at least 1"));
            }
            if let Some(t) = o.tolerance {
                if !(t.is_finite() && t > 0.0) {
                    return Err(SpecError::at(
                        "oracle.tolerance",
                        "must be a positive number",
                    ));
                }
            }
        }
        let band_e = band(&self.band_e, d, "band_e")?;
        let system_a = system(&self.system_a, d, "system_a")?;
        let (band_f, system_b) = match self.question {
            Question::Tight => {
                if self.band_f.is_some() {
                    return Err(SpecError::at(
                        "band_f",
                        "only used by orthogonality questions",
                    ));
                }
                if self.system_b.is_some() {
                    return Err(SpecError::at(
                        "system_b",
                        "only used by orthogonality questions",
                    ));
                }
                (None, None)
            }
            Question::Orthogonal => {
                let f = self.band_f.as_ref().ok_or_else(|| {
                    SpecError::at("band_f", "required for orthogonality questions")
                })?;
                let b = self.system_b.as_ref().ok_or_else(|| {
                    SpecError::at("system_b", "required for orthogonality questions")
                })?;
                let f = band(f, d, "band_f")?;
                let b = system(b, d, "system_b")?;
                if b.len() != system_a.len() {
                    return Err(SpecError::at(
                        "system_b",
                        format!(
                            "has {} lattices but system_a has {}",
                            b.len(),
                            system_a.len()
                        ),
                    ));
                }
                (Some(f), Some(b))
            }
        };
        Ok(ProblemSpec {
            name: self.name.clone(),
            note: self.note.clone(),
            dimension: d,
            question: self.question,
            band_e,
            band_f,
            system_a,
            system_b,
            oracle: self.oracle.unwrap_or_default(),
        })
    }
}

pub fn parse_str(text: &str) -> Result<ProblemSpec, SpecError> {
    let file: SpecFile = serde_json::from_str(text).map_err(|e| SpecError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    file.validate()
}

pub fn parse_spec(path: &Path) -> Result<ProblemSpec, SpecError> {
    let text = std::fs::read_to_string(path).map_err(|e| SpecError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_str(&text)
}

fn box_entries(b: &Band) -> Vec<BoxEntry> {
    b.boxes()
        .iter()
        .map(|x| BoxEntry {
            lower: x.lower().iter().map(|r| r.to_string()).collect(),
            upper: x.upper().iter().map(|r| r.to_string()).collect(),
        })
        .collect()
}

fn lattice_entries(sys: &LatticeSystem) -> Vec<LatticeEntry> {
    sys.iter()
        .map(|l| {
            let (shift, numeric_shift) = match l.shift() {
                Shift::Exact(v) => (Some(v.iter().map(|r| r.to_string()).collect()), None),
                Shift::Numeric(v) => (None, Some(v.clone())),
            };
            LatticeEntry {
                matrix: l
                    .matrix()
                    .rows()
                    .iter()
                    .map(|row| row.iter().map(|r| r.to_string()).collect())
                    .collect(),
                shift,
                numeric_shift,
            }
        })
        .collect()
}

impl ProblemSpec {
    /// Canonical file form (bands in canonical box order, explicit shifts).
    pub fn to_file(&self) -> SpecFile {
        SpecFile {
            name: self.name.clone(),
            note: self.note.clone(),
            dimension: self.dimension,
            question: self.question,
            band_e: box_entries(&self.band_e),
            band_f: self.band_f.as_ref().map(box_entries),
            system_a: lattice_entries(&self.system_a),
            system_b: self.system_b.as_ref().map(lattice_entries),
            oracle: (self.oracle != OracleOverrides::default()).then_some(self.oracle),
        }
    }

    pub fn emit(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("spec serializes") + "\n"
    }
}
