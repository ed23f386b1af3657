//! File formats: form documents, census CSV and check-report JSON.

use std::io::Write;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use sparse_thue_core::census::checks::CheckReport;
use sparse_thue_core::{FormError, SolutionCensus, SolutionRecord, SparseForm};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed form document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("coefficient {0:?} is not a signed decimal integer")]
    Coefficient(String),
    #[error("invalid form: {0}")]
    Form(#[from] FormError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermDoc {
    coeff: String,
    exp: u32,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FormDoc {
    terms: Vec<TermDoc>,
}

fn parse_coeff(s: &str) -> Result<BigInt, FormatError> {
    let t = s.trim();
    let digits = t.strip_prefix(['+', '-']).unwrap_or(t);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(FormatError::Coefficient(s.to_string()));
    }
    t.parse::<BigInt>().map_err(|_| FormatError::Coefficient(s.to_string()))
}

/// Parses `{"terms":[{"coeff":"-2","exp":0},{"coeff":"1","exp":3}]}`.
pub fn parse_form(text: &str) -> Result<SparseForm, FormatError> {
    let doc: FormDoc = serde_json::from_str(text)?;
    let mut terms = Vec::with_capacity(doc.terms.len());
    for t in doc.terms {
        terms.push((parse_coeff(&t.coeff)?, t.exp));
    }
    Ok(SparseForm::from_terms(terms)?)
}

pub fn form_to_json(form: &SparseForm) -> String {
    let doc = FormDoc {
        terms: form
            .terms()
            .iter()
            .map(|t| TermDoc {
                coeff: t.coeff.to_string(),
                exp: t.exp,
            })
            .collect(),
    };
    serde_json::to_string(&doc).expect("form document serializes")
}

/// Human-readable `f(z)`, highest exponent first.
pub fn form_display(form: &SparseForm) -> String {
    let mut out = String::new();
    for (k, t) in form.terms().iter().rev().enumerate() {
        let neg = t.coeff.sign() == num_bigint::Sign::Minus;
        let mag = t.coeff.magnitude().to_string();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let unit = mag == "1" && t.exp > 0;
        if !unit {
            out.push_str(&mag);
        }
        match t.exp {
            0 => {}
            1 => out.push('z'),
            e => {
                out.push_str("z^");
                out.push_str(&e.to_string());
            }
        }
    }
    out
}

#[derive(Serialize)]
struct CsvRow<'a> {
    x: i64,
    y: i64,
    value: String,
    primitive: bool,
    log_height: String,
    class: String,
    nearest_root: &'a str,
    log_distance: String,
}

fn nearest_columns(rec: &SolutionRecord) -> (String, String) {
    if let Some(d) = rec.nearest {
        (d.nearest.to_string(), format!("{:.12}", d.ln_value.mid()))
    } else if let Some(d) = rec.nearest_star {
        (format!("*{}", d.nearest), format!("{:.12}", d.ln_value.mid()))
    } else {
        (String::new(), String::new())
    }
}

/// CSV export. `nearest_root` is a root index of `f(z)`, or `*k` for a root
/// of `F(1, z)` on rows with `y = 0`; distances are natural logs.
pub fn write_census_csv<W: Write>(census: &SolutionCensus, w: W) -> Result<(), FormatError> {
    let mut wr = csv::Writer::from_writer(w);
    for rec in &census.records {
        let (root, dist) = nearest_columns(rec);
        let log_height = if rec.height() == 0 {
            String::new()
        } else {
            format!("{:.12}", (rec.height() as f64).ln())
        };
        wr.serialize(CsvRow {
            x: rec.x,
            y: rec.y,
            value: rec.value.to_string(),
            primitive: rec.primitive,
            log_height,
            class: rec.class.to_string(),
            nearest_root: &root,
            log_distance: dist,
        })?;
    }
    wr.flush()?;
    Ok(())
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ViolationJson {
    pub point: Option<(i64, i64)>,
    pub root: Option<usize>,
    pub detail: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct CheckReportJson {
    pub lemma: String,
    pub hypotheses_met: usize,
    pub checked: usize,
    pub violations: Vec<ViolationJson>,
    pub precision_bits: u32,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl From<&CheckReport> for CheckReportJson {
    fn from(r: &CheckReport) -> Self {
        CheckReportJson {
            lemma: r.kind.name().to_string(),
            hypotheses_met: r.hypotheses_met,
            checked: r.checked,
            violations: r
                .violations
                .iter()
                .map(|v| ViolationJson {
                    point: v.point,
                    root: v.root,
                    detail: v.detail.clone(),
                })
                .collect(),
            precision_bits: r.precision_bits,
            notes: r.notes.clone(),
        }
    }
}
