//! Counting reports: observed counts next to formula values, plus the exact
//! scaling identities between censuses that can be asserted.

use alloc::vec::Vec;
use alloc::collections::BTreeSet;

use num_integer::Integer;

use crate::bounds::ThresholdSet;
use crate::forms::SparseForm;
use crate::interval::Interval;

use super::{SolutionCensus, SolutionClass};

#[derive(Clone, Copy, Debug)]
pub struct SmallFormulaReport {
    /// Primitive solutions labelled small (boundary records included).
    pub observed: usize,
    /// `ln Y` of the threshold used.
    pub ln_y: Interval,
    /// `ln((r s^2)^{2s/r} h^{2/r} + s Y)`
    pub ln_formula: Interval,
}

impl SmallFormulaReport {
    /// The formula value, or `inf` when it does not fit in `f64`.
    pub fn formula(&self) -> f64 {
        libm::exp(self.ln_formula.mid())
    }
}

/// `ln((r s^2)^{2s/r} h^{2/r} + s e^{ln_y})`
pub fn ln_small_formula(r: u32, s: usize, h: u64, ln_y: Interval) -> Interval {
    let ri = Interval::from_i64(r as i64);
    let rs2 = Interval::from_i64(r as i64 * (s * s) as i64).ln();
    let ln_h = Interval::ln_biguint(&h.into());
    let first = (rs2.scale(2.0 * s as f64) + ln_h.scale(2.0)) / ri;
    first.ln_add_exp(Interval::from_i64(s as i64).ln() + ln_y)
}

/// Observed small solutions against the formula with `Y` the small threshold.
/// `None` when the threshold is absent.
pub fn small_formula_report(
    census: &SolutionCensus,
    thresholds: &ThresholdSet,
    straight_line: bool,
) -> Option<SmallFormulaReport> {
    let ln_y = thresholds.ln_small_threshold(straight_line)?;
    let observed = census
        .primitive()
        .filter(|r| match r.class {
            SolutionClass::Small => true,
            SolutionClass::Boundary(set) => set.small,
            _ => false,
        })
        .count();
    Some(SmallFormulaReport {
        observed,
        ln_y,
        ln_formula: ln_small_formula(thresholds.r, thresholds.s, thresholds.h, ln_y),
    })
}

#[derive(Clone, Debug)]
pub struct PartialSummationReport {
    pub h: u64,
    pub bound: u64,
    /// `N_F(h)` within the box.
    pub total: usize,
    /// `P(n)` within the box for `n = 0..=h`.
    pub primitive_by_h: Vec<usize>,
    /// `1 + Σ_{d >= 1} P(⌊h/d^r⌋, ⌊X/d⌋)`
    pub identity_rhs: usize,
    /// `P(h) + h^{1/r} r^{-1} Σ_{n=1}^{h-1} P(n) n^{-1-1/r}`
    pub summation_rhs: f64,
}

impl PartialSummationReport {
    pub fn identity_holds(&self) -> bool {
        self.total == self.identity_rhs
    }
}

fn primitive_count(census: &SolutionCensus, bound: u64) -> usize {
    census
        .primitive()
        .filter(|r| r.height() <= bound)
        .count()
}

/// Enumerates once per `n <= h` and compares `N_F(h)` with the primitive
/// counts. Meant for small `h`.
pub fn partial_summation_report(form: &SparseForm, h: u64, bound: u64) -> PartialSummationReport {
    let r = form.degree();
    let full = SolutionCensus::enumerate(form, h, bound);
    let mut by_h = Vec::with_capacity(h as usize + 1);
    let mut censuses = Vec::with_capacity(h as usize + 1);
    for n in 0..=h {
        let c = SolutionCensus::enumerate(form, n, bound);
        by_h.push(primitive_count(&c, bound));
        censuses.push(c);
    }
    let mut identity_rhs = 1usize;
    let mut d = 1u64;
    while d <= bound {
        let dr = (d as u128).pow(r);
        let n = (h as u128 / dr) as usize;
        identity_rhs += primitive_count(&censuses[n], bound / d);
        d += 1;
    }
    let rf = r as f64;
    let tail: f64 = (1..h)
        .map(|n| by_h[n as usize] as f64 * libm::pow(n as f64, -1.0 - 1.0 / rf))
        .sum();
    let summation_rhs = by_h[h as usize] as f64 + libm::pow(h as f64, 1.0 / rf) / rf * tail;
    PartialSummationReport {
        h,
        bound,
        total: full.total(),
        primitive_by_h: by_h,
        identity_rhs,
        summation_rhs,
    }
}

/// Every `(x, y)` with `gcd = d > 1` satisfies `|F(x/d, y/d)| <= ⌊h/d^r⌋`.
pub fn imprimitive_scaling_holds(form: &SparseForm, census: &SolutionCensus) -> bool {
    let r = form.degree();
    census.records.iter().all(|rec| {
        let d = rec.x.gcd(&rec.y);
        if d <= 1 {
            return true;
        }
        let reduced = form.evaluate_i64(rec.x / d, rec.y / d);
        let dr = num_bigint::BigUint::from(d as u64).pow(r);
        let cap = num_bigint::BigUint::from(census.h) / dr;
        reduced.magnitude() <= &cap
    })
}

/// The points of `big` (at `h 2^r`, box `2X`) with both coordinates even are
/// exactly twice the points of `small` (at `h`, box `X`).
pub fn doubling_identity_holds(small: &SolutionCensus, big: &SolutionCensus) -> bool {
    let halved: BTreeSet<(i64, i64)> = big
        .records
        .iter()
        .filter(|r| r.x % 2 == 0 && r.y % 2 == 0)
        .map(|r| (r.x / 2, r.y / 2))
        .collect();
    let base: BTreeSet<(i64, i64)> = small.records.iter().map(|r| (r.x, r.y)).collect();
    halved == base
}
