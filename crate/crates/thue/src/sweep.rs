//! Seeded random form families and the aggregate sweep report.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::thread;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use sparse_thue_core::census::checks::CheckKind;
use sparse_thue_core::{AnalysisParams, Error, RootSet, SparseForm};

use crate::format::form_to_json;
use crate::verify::{verify_form, VerifyConfig, VerifySummary};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Coefficients `±1` at random exponents.
    Pm1,
    /// Consecutive exponents at least `gap` apart, coefficients in `[-9, 9]`.
    Gapped { gap: u32 },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Pm1 => "pm1",
            Family::Gapped { .. } => "gapped",
        }
    }
}

const MAX_INNER: usize = 4;

fn nonzero_coeff(rng: &mut ChaCha8Rng, family: Family) -> i64 {
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    match family {
        Family::Pm1 => sign,
        Family::Gapped { .. } => sign * rng.gen_range(1..=9),
    }
}

fn exponents(rng: &mut ChaCha8Rng, family: Family, r: u32) -> Vec<u32> {
    match family {
        Family::Pm1 => {
            let inner = rng.gen_range(0..=MAX_INNER.min(r as usize - 1));
            let picked: BTreeSet<u32> = sample(rng, r as usize - 1, inner)
                .into_iter()
                .map(|i| i as u32 + 1)
                .collect();
            let mut e = vec![0];
            e.extend(picked);
            e.push(r);
            e
        }
        Family::Gapped { gap } => {
            let gap = gap.clamp(1, r);
            let max_s = ((r / gap) as usize).clamp(1, MAX_INNER + 1);
            let s = rng.gen_range(1..=max_s);
            let mut steps = vec![gap; s];
            for _ in 0..(r - gap * s as u32) {
                let k = rng.gen_range(0..s);
                steps[k] += 1;
            }
            let mut e = vec![0];
            let mut acc = 0;
            for st in steps {
                acc += st;
                e.push(acc);
            }
            e
        }
    }
}

/// `count` squarefree forms of degree `r` drawn deterministically from `seed`.
pub fn generate(family: Family, count: usize, seed: u64, r: u32) -> Vec<SparseForm> {
    assert!(r >= 3, "degree must be at least 3");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let exps = exponents(&mut rng, family, r);
        let terms: Vec<(i64, u32)> = exps.iter().map(|&e| (nonzero_coeff(&mut rng, family), e)).collect();
        let f = SparseForm::from_i64_terms(&terms).expect("generated form is valid");
        match RootSet::find(&f, 64) {
            Err(Error::NotSquarefree) => continue,
            _ => out.push(f),
        }
    }
    out
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub id: usize,
    pub family: &'static str,
    pub form: String,
    pub r: u32,
    pub s: usize,
    pub straight_line: bool,
    pub reducible: bool,
    pub solutions: usize,
    pub primitive: usize,
    pub checks: usize,
    pub violations: usize,
    pub failures: usize,
    pub precision_bits: u32,
    pub passed: bool,
}

pub struct SweepConfig {
    pub family: Family,
    pub count: usize,
    pub seed: u64,
    pub r: u32,
    pub h: u64,
    pub bound: u64,
    pub params: AnalysisParams,
    pub ceiling: u32,
    pub workers: usize,
}

pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    pub summaries: Vec<VerifySummary>,
}

impl SweepResult {
    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }
}

fn row(id: usize, family: Family, f: &SparseForm, s: &VerifySummary) -> SweepRow {
    SweepRow {
        id,
        family: family.name(),
        form: form_to_json(f),
        r: f.degree(),
        s: f.sparsity(),
        straight_line: f.is_straight_line(),
        reducible: s.linear_factor.is_some(),
        solutions: s.counts.as_ref().map_or(0, |c| c.total),
        primitive: s.counts.as_ref().map_or(0, |c| c.primitive),
        checks: s.reports.len(),
        violations: s.violations,
        failures: s.failures.len(),
        precision_bits: s.precision_final,
        passed: s.passed,
    }
}

/// Generates the family and verifies every form, `workers` forms at a time.
/// Rows come back sorted by id whatever the scheduling.
pub fn run(cfg: &SweepConfig) -> SweepResult {
    let forms = generate(cfg.family, cfg.count, cfg.seed, cfg.r);
    let vc = VerifyConfig {
        h: cfg.h,
        bound: cfg.bound,
        params: cfg.params,
        ceiling: cfg.ceiling,
        kinds: &CheckKind::ALL,
        workers: 1,
    };
    let next = AtomicUsize::new(0);
    let mut done: Vec<(usize, VerifySummary)> = thread::scope(|scope| {
        let handles: Vec<_> = (0..cfg.workers.clamp(1, forms.len().max(1)))
            .map(|_| {
                scope.spawn(|| {
                    let mut mine = Vec::new();
                    loop {
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        if i >= forms.len() {
                            break;
                        }
                        mine.push((i, verify_form(&forms[i], &vc)));
                    }
                    mine
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("sweep worker panicked"))
            .collect()
    });
    done.sort_by_key(|d| d.0);
    let rows = done.iter().map(|(i, s)| row(*i, cfg.family, &forms[*i], s)).collect();
    SweepResult {
        rows,
        summaries: done.into_iter().map(|d| d.1).collect(),
    }
}

pub fn write_csv<W: std::io::Write>(rows: &[SweepRow], w: W) -> Result<(), csv::Error> {
    let mut wr = csv::Writer::from_writer(w);
    for r in rows {
        wr.serialize(r)?;
    }
    wr.flush()?;
    Ok(())
}
