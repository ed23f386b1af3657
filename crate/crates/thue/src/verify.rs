//! The verification suite over one form: census, precision ladder, summary.

use serde::{Deserialize, Serialize};
use sparse_thue_core::analysis::verify_with_ladder;
use sparse_thue_core::census::checks::{self_test_reports, CheckKind};
use sparse_thue_core::{AnalysisParams, Error, SparseForm};

use crate::format::{form_to_json, CheckReportJson};
use crate::parallel::enumerate_parallel;

/// Overrides the precision ceiling (bits) when set.
pub const CEILING_ENV: &str = "THUE_PRECISION_CEILING";

/// Height searched for rational roots when flagging reducible forms.
pub const LINEAR_FACTOR_TRIAL: i64 = 32;

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct CheckFailure {
    pub lemma: String,
    pub error: String,
    pub precision_exhausted: bool,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct CountsJson {
    pub total: usize,
    pub primitive: usize,
    pub large: usize,
    pub medium: usize,
    pub small: usize,
    pub unsplit: usize,
    pub boundary: usize,
    pub partition_holds: bool,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct VerifySummary {
    pub form: serde_json::Value,
    pub h: u64,
    pub bound: u64,
    pub precision_start: u32,
    pub precision_ceiling: u32,
    pub precision_final: u32,
    pub naive_scan: bool,
    /// A rational zero `(x, y)` found by trial: the form is reducible.
    pub linear_factor: Option<(i64, i64)>,
    pub counts: Option<CountsJson>,
    pub reports: Vec<CheckReportJson>,
    pub failures: Vec<CheckFailure>,
    pub violations: usize,
    pub passed: bool,
}

pub struct VerifyConfig<'a> {
    pub h: u64,
    pub bound: u64,
    pub params: AnalysisParams,
    pub ceiling: u32,
    pub kinds: &'a [CheckKind],
    pub workers: usize,
}

fn failure(lemma: &str, e: &Error) -> CheckFailure {
    CheckFailure {
        lemma: lemma.to_string(),
        error: e.to_string(),
        precision_exhausted: matches!(e, Error::PrecisionExhausted { .. }),
    }
}

pub fn verify_form(form: &SparseForm, cfg: &VerifyConfig<'_>) -> VerifySummary {
    let census = enumerate_parallel(form, cfg.h, cfg.bound, cfg.workers);
    let mut summary = VerifySummary {
        form: serde_json::from_str(&form_to_json(form)).expect("form json"),
        h: cfg.h,
        bound: cfg.bound,
        precision_start: cfg.params.precision,
        precision_ceiling: cfg.ceiling,
        precision_final: cfg.params.precision,
        naive_scan: census.naive_scan,
        linear_factor: form.small_rational_root(LINEAR_FACTOR_TRIAL),
        counts: None,
        reports: Vec::new(),
        failures: Vec::new(),
        violations: 0,
        passed: false,
    };
    match verify_with_ladder(form, census, cfg.params, cfg.ceiling, cfg.kinds) {
        Ok((analysis, outcomes)) => {
            let c = analysis.census.counts();
            summary.counts = Some(CountsJson {
                total: c.total,
                primitive: c.primitive,
                large: c.large,
                medium: c.medium,
                small: c.small,
                unsplit: c.unsplit,
                boundary: c.boundary,
                partition_holds: c.partition_holds(analysis.census.boundary_multiplicity()),
            });
            summary.precision_final = analysis.precision();
            for o in outcomes {
                match o.result {
                    Ok(rep) => summary.reports.push(CheckReportJson::from(&rep)),
                    Err(e) => summary.failures.push(failure(o.kind.name(), &e)),
                }
            }
        }
        Err(e) => summary.failures.push(failure("setup", &e)),
    }
    summary.violations = summary.reports.iter().map(|r| r.violations.len()).sum();
    let partition_ok = summary.counts.as_ref().is_some_and(|c| c.partition_holds);
    summary.passed = summary.violations == 0 && summary.failures.is_empty() && partition_ok;
    summary
}

/// Reports with one injected violation per predicate; never passes.
pub fn self_test_summary() -> VerifySummary {
    let reports: Vec<CheckReportJson> = self_test_reports().iter().map(CheckReportJson::from).collect();
    let violations = reports.iter().map(|r| r.violations.len()).sum();
    VerifySummary {
        form: serde_json::Value::Null,
        h: 0,
        bound: 0,
        precision_start: 0,
        precision_ceiling: 0,
        precision_final: 0,
        naive_scan: false,
        linear_factor: None,
        counts: None,
        reports,
        failures: Vec::new(),
        violations,
        passed: violations == 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn self_test_fails() {
        let s = self_test_summary();
        assert!(!s.passed);
        assert_eq!(s.violations, 3);
    }

    #[test]
    fn single_check_on_cube_root_two() {
        let f = SparseForm::from_i64_terms(&[(-2, 0), (1, 3)]).unwrap();
        let cfg = VerifyConfig {
            h: 10,
            bound: 500,
            params: AnalysisParams::default(),
            ceiling: 1024,
            kinds: &[CheckKind::LewisMahler],
            workers: 1,
        };
        let s = verify_form(&f, &cfg);
        assert!(s.passed, "{s:?}");
        assert_eq!(s.reports.len(), 1);
        assert_eq!(s.reports[0].lemma, "lewis-mahler");
    }
}
