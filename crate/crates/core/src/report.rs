//! Human-readable and JSON reports for a classification.
//!
//! Every scalar in the JSON form is a string in the field syntax (`n`, `n/d`
//! or `a + b*sqrt(D)`), so the report is exact. Keys appear in this order:
//!
//! | key                  | value                                                     |
//! |----------------------|-----------------------------------------------------------|
//! | `input`              | `{ "h0", "r0", "p0" }` as rationals                        |
//! | `case`               | `DrinfeldJimbo`, `Jordanian`, `Classical` or `Degenerate` |
//! | `discriminant`       | `{ "value", "is_perfect_square" }`                        |
//! | `extension`          | radicand `D` of `Q(sqrt(D))`                              |
//! | `transform`          | `[m11, m12, m21, m22]` or `null`                          |
//! | `q`, `p`             | Drinfeld-Jimbo parameters or `null`                       |
//! | `h`, `h_prime`       | Jordanian parameters or `null`                            |
//! | `p_reciprocal`       | `1/p` when defined, else `null`                           |
//! | `verified`           | exact re-expansion reproduced the canonical plane         |
//! | `similarity_checked` | the quantum-matrix similarity check was run               |
//! | `similarity_holds`   | its outcome, `null` when not run                          |
//! | `notes`              | list of strings                                           |

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::{CaseTag, Classification};
use crate::field::{Rational, Scalar};
use crate::matrixalg::SimilarityReport;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("invalid report JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid value `{value}` for `{field}`")]
    Value { field: &'static str, value: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputTriple {
    pub h0: String,
    pub r0: String,
    pub p0: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscriminantInfo {
    pub value: String,
    pub is_perfect_square: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub input: InputTriple,
    pub case: String,
    pub discriminant: DiscriminantInfo,
    pub extension: String,
    pub transform: Option<[String; 4]>,
    pub q: Option<String>,
    pub p: Option<String>,
    pub h: Option<String>,
    pub h_prime: Option<String>,
    pub p_reciprocal: Option<String>,
    pub verified: bool,
    pub similarity_checked: bool,
    pub similarity_holds: Option<bool>,
    pub notes: Vec<String>,
}

fn text(s: &Scalar) -> String {
    s.to_string()
}

impl Report {
    pub fn new(c: &Classification, similarity: Option<&SimilarityReport>) -> Self {
        let (q, p, h, h_prime) = match c.case_tag {
            CaseTag::DrinfeldJimbo => (Some(&c.q), c.p.as_ref(), None, None),
            CaseTag::Jordanian => (None, None, Some(&c.h), c.h_prime.as_ref()),
            CaseTag::Classical => (Some(&c.q), c.p.as_ref(), Some(&c.h), c.h_prime.as_ref()),
            CaseTag::Degenerate => (None, None, None, None),
        };
        let mut notes = c.notes.clone();
        if let Some(sim) = similarity.filter(|s| !s.holds) {
            notes.push(format!("similarity check failed: {sim}"));
        }
        Report {
            input: InputTriple {
                h0: c.params.h0.to_string(),
                r0: c.params.r0.to_string(),
                p0: c.params.p0.to_string(),
            },
            case: c.case_tag.to_string(),
            discriminant: DiscriminantInfo {
                value: text(&c.discriminant),
                is_perfect_square: c.extension.is_trivial(),
            },
            extension: c.extension.radicand().to_string(),
            transform: c.transform.as_ref().map(|s| s.entries().map(text)),
            q: q.map(text),
            p: p.map(text),
            h: h.map(text),
            h_prime: h_prime.map(text),
            p_reciprocal: c.reciprocal_p().as_ref().map(text),
            verified: c.verified,
            similarity_checked: similarity.is_some(),
            similarity_holds: similarity.map(|s| s.holds),
            notes,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Parses a JSON report and checks that every value is well-formed.
    pub fn from_json(json: &str) -> Result<Self, ReportError> {
        let report: Report = serde_json::from_str(json)?;
        report.validate()?;
        Ok(report)
    }

    fn validate(&self) -> Result<(), ReportError> {
        let rational = |field: &'static str, v: &str| {
            v.parse::<Rational>().map(drop).map_err(|_| ReportError::Value { field, value: v.to_string() })
        };
        let scalar = |field: &'static str, v: &str| {
            v.parse::<Scalar>().map(drop).map_err(|_| ReportError::Value { field, value: v.to_string() })
        };
        rational("input.h0", &self.input.h0)?;
        rational("input.r0", &self.input.r0)?;
        rational("input.p0", &self.input.p0)?;
        rational("discriminant.value", &self.discriminant.value)?;
        rational("extension", &self.extension)?;
        self.case.parse::<CaseTag>().map_err(|_| ReportError::Value { field: "case", value: self.case.clone() })?;
        for entry in self.transform.iter().flatten() {
            scalar("transform", entry)?;
        }
        for (field, value) in [
            ("q", &self.q),
            ("p", &self.p),
            ("h", &self.h),
            ("h_prime", &self.h_prime),
            ("p_reciprocal", &self.p_reciprocal),
        ] {
            if let Some(v) = value {
                scalar(field, v)?;
            }
        }
        Ok(())
    }

    pub fn case_tag(&self) -> CaseTag {
        self.case.parse().expect("validated case")
    }

    /// Multi-line summary for terminals.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if self.discriminant.is_perfect_square {
            let _ = writeln!(out, "extension: Q");
        } else {
            let _ = writeln!(out, "extension: Q(sqrt({}))", self.extension);
        }
        let _ = writeln!(out, "input: h0 = {}, r0 = {}, p0 = {}", self.input.h0, self.input.r0, self.input.p0);
        let _ = writeln!(
            out,
            "discriminant: {} ({})",
            self.discriminant.value,
            if self.discriminant.is_perfect_square { "perfect square" } else { "not a square" }
        );
        let _ = writeln!(out, "case: {}", self.case);
        if let Some([m11, m12, m21, m22]) = &self.transform {
            let _ = writeln!(out, "transform: xi' = ({m11}) xi + ({m12}) eta");
            let _ = writeln!(out, "           eta' = ({m21}) xi + ({m22}) eta");
        }
        match self.case_tag() {
            CaseTag::DrinfeldJimbo => {
                let _ = writeln!(out, "family: GL_{{q,p}}(2) with q = {}, p = {}", opt(&self.q), opt(&self.p));
                if let Some(r) = &self.p_reciprocal {
                    let _ = writeln!(out, "equivalent: p -> 1/p = {r} under root exchange");
                }
            }
            CaseTag::Jordanian => {
                let _ = writeln!(out, "family: GL_{{h,h'}}(2) with h = {}, h' = {}", opt(&self.h), opt(&self.h_prime));
            }
            CaseTag::Classical => {
                let _ = writeln!(out, "family: classical GL(2) (q = p = 1, h = h' = 0)");
            }
            CaseTag::Degenerate => {
                let _ = writeln!(out, "family: none reachable by a linear change of generators");
            }
        }
        let _ = writeln!(out, "verified: {}", self.verified);
        if self.similarity_checked {
            let _ = writeln!(out, "similarity: {}", self.similarity_holds.unwrap_or(false));
        }
        for note in &self.notes {
            let _ = writeln!(out, "note: {note}");
        }
        out
    }
}

fn opt(v: &Option<String>) -> &str {
    v.as_deref().unwrap_or("-")
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
