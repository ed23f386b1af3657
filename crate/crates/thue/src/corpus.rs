//! The bundled standard corpus of twenty forms.

use sparse_thue_core::SparseForm;

use crate::format::parse_form;

pub struct CorpusEntry {
    pub name: &'static str,
    pub form: SparseForm,
    /// Inequality bound used by `verify --corpus`.
    pub h: u64,
}

macro_rules! entries {
    ($($name:literal => $h:expr),* $(,)?) => {
        [$(($name, include_str!(concat!("../corpus/", $name, ".json")), $h)),*]
    };
}

const SOURCES: [(&str, &str, u64); 20] = entries![
    "cube-root-two" => 100,
    "selmer-3" => 100,
    "selmer-5" => 100,
    "selmer-7" => 100,
    "selmer-11" => 100,
    "selmer-16" => 100,
    "selmer-20" => 100,
    "quartic-two" => 100,
    "quartic-five-three" => 100,
    "quintic-eisenstein" => 100,
    "quintic-lead-two" => 100,
    "sextic-eisenstein" => 100,
    "nonic-eisenstein" => 100,
    "dodecic-four-term" => 100,
    "pm1-8" => 100,
    "pm1-10" => 100,
    "pm1-15" => 100,
    "gapped-14" => 100,
    "gapped-17" => 100,
    "gapped-19" => 100,
];

pub fn standard_corpus() -> Vec<CorpusEntry> {
    SOURCES
        .iter()
        .map(|&(name, text, h)| CorpusEntry {
            name,
            form: parse_form(text).unwrap_or_else(|e| panic!("corpus form {name}: {e}")),
            h,
        })
        .collect()
}
