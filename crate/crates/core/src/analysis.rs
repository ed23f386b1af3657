//! Everything derived from one `(F, h)` at one working precision, and the
//! precision ladder that reruns checks until their comparisons resolve.

use alloc::vec::Vec;

use crate::bounds::{SiegelParameters, ThresholdSet, DEFAULT_A, DEFAULT_B};
use crate::census::checks::{self, CheckKind, CheckReport};
use crate::census::SolutionCensus;
use crate::error::Error;
use crate::forms::{SparseForm, SparsityProfile};
use crate::polygon::NewtonPolygon;
use crate::roots::{AmplifierSubset, RootSet};
use crate::DEFAULT_PRECISION;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnalysisParams {
    pub precision: u32,
    pub a: f64,
    pub b: f64,
}

impl Default for AnalysisParams {
    fn default() -> Self {
        AnalysisParams {
            precision: DEFAULT_PRECISION,
            a: DEFAULT_A,
            b: DEFAULT_B,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Analysis {
    pub form: SparseForm,
    pub h: u64,
    pub params: AnalysisParams,
    pub profile: SparsityProfile,
    pub polygon: NewtonPolygon,
    /// Roots of `F(z, 1)`.
    pub roots: RootSet,
    /// Roots of `F(1, z)`.
    pub roots_star: RootSet,
    pub s2: AmplifierSubset,
    pub s2_star: AmplifierSubset,
    pub siegel: SiegelParameters,
    pub thresholds: ThresholdSet,
    /// Records carry distances and class labels.
    pub census: SolutionCensus,
}

impl Analysis {
    pub fn new(form: &SparseForm, census: SolutionCensus, params: AnalysisParams) -> Result<Self, Error> {
        let profile = form.sparsity_profile();
        let polygon = NewtonPolygon::build(form);
        let roots = RootSet::find(form, params.precision)?;
        let roots_star = RootSet::find(&form.reciprocal(), params.precision)?;
        let siegel = SiegelParameters::new(form.degree(), roots.ln_mahler(), params.a, params.b)?;
        let thresholds = ThresholdSet::compute(form, &roots, census.h, &siegel, profile.psi)?;
        let mut census = census;
        census.attach_distances(&roots, &roots_star);
        census.classify(Some(&thresholds), form.is_straight_line());
        Ok(Analysis {
            form: form.clone(),
            h: census.h,
            params,
            s2: roots.build_s2(),
            s2_star: roots_star.build_s2(),
            profile,
            polygon,
            roots,
            roots_star,
            siegel,
            thresholds,
            census,
        })
    }

    pub fn precision(&self) -> u32 {
        self.roots.precision()
    }

    /// Same inputs at another precision.
    pub fn at_precision(&self, precision: u32) -> Result<Self, Error> {
        Analysis::new(
            &self.form,
            self.census.clone(),
            AnalysisParams {
                precision,
                ..self.params
            },
        )
    }

    pub fn run(&self, kind: CheckKind) -> Result<CheckReport, Error> {
        checks::run(self, kind)
    }
}

/// Outcome of one check after climbing the precision ladder.
#[derive(Clone, Debug)]
pub struct LadderOutcome {
    pub kind: CheckKind,
    pub result: Result<CheckReport, Error>,
}

/// Runs each check, doubling the precision from `params.precision` up to
/// `ceiling` whenever a comparison straddles. The last analysis built is
/// returned alongside the outcomes.
pub fn verify_with_ladder(
    form: &SparseForm,
    census: SolutionCensus,
    params: AnalysisParams,
    ceiling: u32,
    kinds: &[CheckKind],
) -> Result<(Analysis, Vec<LadderOutcome>), Error> {
    let mut precision = params.precision;
    let mut analysis = loop {
        match Analysis::new(form, census.clone(), AnalysisParams { precision, ..params }) {
            Ok(a) => break a,
            Err(e) if e.is_retryable() && precision.saturating_mul(2) <= ceiling => precision *= 2,
            Err(e) if e.is_retryable() => return Err(Error::PrecisionExhausted { bits: precision }),
            Err(e) => return Err(e),
        }
    };
    let mut outcomes = Vec::with_capacity(kinds.len());
    for &kind in kinds {
        let result = loop {
            match analysis.run(kind) {
                Err(e) if e.is_retryable() => {
                    let next = analysis.precision().saturating_mul(2);
                    if next > ceiling {
                        break Err(Error::PrecisionExhausted {
                            bits: analysis.precision(),
                        });
                    }
                    match analysis.at_precision(next) {
                        Ok(a) => analysis = a,
                        Err(e) if e.is_retryable() => {
                            break Err(Error::PrecisionExhausted { bits: next });
                        }
                        Err(e) => break Err(e),
                    }
                }
                other => break other,
            }
        };
        outcomes.push(LadderOutcome { kind, result });
    }
    Ok((analysis, outcomes))
}
