//! Solution census for `|F(x, y)| <= h` inside a box, with per-solution
//! diagnostics and size classes.

pub mod checks;
pub mod enumerate;
pub mod gap;
pub mod reports;

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::bounds::ThresholdSet;
use crate::forms::SparseForm;
use crate::interval::Interval;
use crate::roots::{Distance, RootSet};

pub use enumerate::{enumerate, RawSolution, RowEnumerator, MAX_BOUND};

/// A set of the three size classes, used for solutions whose class depends
/// on a comparison that could not be decided.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct ClassSet {
    pub large: bool,
    pub medium: bool,
    pub small: bool,
}

impl ClassSet {
    pub fn len(&self) -> usize {
        self.large as usize + self.medium as usize + self.small as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SolutionClass {
    Large,
    Medium,
    Small,
    /// Thresholds unavailable for this form and parameters.
    Unsplit,
    /// Straddles a threshold; counted in every listed class.
    Boundary(ClassSet),
}

impl fmt::Display for SolutionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolutionClass::Large => f.write_str("large"),
            SolutionClass::Medium => f.write_str("medium"),
            SolutionClass::Small => f.write_str("small"),
            SolutionClass::Unsplit => f.write_str("unsplit"),
            SolutionClass::Boundary(set) => {
                f.write_str("boundary(")?;
                let mut first = true;
                for (on, name) in [(set.large, "large"), (set.medium, "medium"), (set.small, "small")] {
                    if on {
                        if !first {
                            f.write_str("|")?;
                        }
                        f.write_str(name)?;
                        first = false;
                    }
                }
                f.write_str(")")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolutionRecord {
    pub x: i64,
    pub y: i64,
    pub value: BigInt,
    pub primitive: bool,
    pub class: SolutionClass,
    /// `d(S, x/y)` and the nearest root of `f`, when `y != 0`.
    pub nearest: Option<Distance>,
    /// `d(S*, y/x)` and the nearest root of `F(1, Z)`, when `x != 0`.
    pub nearest_star: Option<Distance>,
}

impl SolutionRecord {
    /// `max(|x|, |y|)`
    pub fn height(&self) -> u64 {
        self.x.unsigned_abs().max(self.y.unsigned_abs())
    }

    pub fn ln_height(&self) -> Interval {
        ln_u64(self.height())
    }

    /// `ln min(|x|, |y|)`, `-inf` on the axes.
    pub fn ln_min(&self) -> Interval {
        ln_u64(self.x.unsigned_abs().min(self.y.unsigned_abs()))
    }
}

pub(crate) fn ln_u64(n: u64) -> Interval {
    if n == 0 {
        Interval::NEG_INFINITY
    } else {
        Interval::ln_biguint(&n.into())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CensusCounts {
    /// `N_F(h, X)`, including `(0, 0)`.
    pub total: usize,
    /// Primitive solutions, `P(h)` restricted to the box.
    pub primitive: usize,
    pub large: usize,
    pub medium: usize,
    pub small: usize,
    pub unsplit: usize,
    pub boundary: usize,
}

impl CensusCounts {
    /// `P_lar + P_med + P_sma` accounts for every primitive solution, with
    /// boundary solutions counted once per listed class.
    pub fn partition_holds(&self, extra_multiplicity: usize) -> bool {
        let split = self.large + self.medium + self.small;
        if self.unsplit > 0 {
            return split == 0 && self.unsplit == self.primitive;
        }
        split == self.primitive + extra_multiplicity
    }
}

#[derive(Clone, Debug)]
pub struct SolutionCensus {
    pub h: u64,
    pub bound: u64,
    /// Sorted by `(y, x)`.
    pub records: Vec<SolutionRecord>,
    /// Roots were not certified and every row was scanned point by point.
    pub naive_scan: bool,
}

impl SolutionCensus {
    pub fn from_raw(h: u64, bound: u64, raw: Vec<RawSolution>, naive_scan: bool) -> Self {
        let records = raw
            .into_iter()
            .map(|s| SolutionRecord {
                primitive: s.x.gcd(&s.y) == 1,
                x: s.x,
                y: s.y,
                value: s.value,
                class: SolutionClass::Unsplit,
                nearest: None,
                nearest_star: None,
            })
            .collect();
        SolutionCensus {
            h,
            bound,
            records,
            naive_scan,
        }
    }

    pub fn enumerate(form: &SparseForm, h: u64, bound: u64) -> Self {
        let engine = RowEnumerator::new(form, h, bound);
        Self::from_raw(h, bound, engine.enumerate_all(), engine.is_naive())
    }

    /// Fills `nearest` from the roots of `f` and `nearest_star` from the roots
    /// of the reciprocal form.
    pub fn attach_distances(&mut self, roots: &RootSet, roots_star: &RootSet) {
        for rec in &mut self.records {
            let x = BigInt::from(rec.x);
            let y = BigInt::from(rec.y);
            rec.nearest = (rec.y != 0).then(|| roots.distance(&x, &y));
            rec.nearest_star = (rec.x != 0).then(|| roots_star.distance(&y, &x));
        }
    }

    /// Labels every record. Without both thresholds all records are `Unsplit`.
    pub fn classify(&mut self, thresholds: Option<&ThresholdSet>, straight_line: bool) {
        let (y_w, y_s) = match thresholds {
            Some(t) => (t.ln_y_w, t.ln_small_threshold(straight_line)),
            None => (None, None),
        };
        for rec in &mut self.records {
            rec.class = match (y_w, y_s) {
                (Some(w), Some(s)) => classify_one(rec.ln_height(), rec.ln_min(), w, s),
                _ => SolutionClass::Unsplit,
            };
        }
    }

    pub fn total(&self) -> usize {
        self.records.len()
    }

    pub fn primitive(&self) -> impl Iterator<Item = &SolutionRecord> {
        self.records.iter().filter(|r| r.primitive)
    }

    pub fn counts(&self) -> CensusCounts {
        let mut c = CensusCounts {
            total: self.records.len(),
            ..CensusCounts::default()
        };
        for rec in self.primitive() {
            c.primitive += 1;
            match rec.class {
                SolutionClass::Large => c.large += 1,
                SolutionClass::Medium => c.medium += 1,
                SolutionClass::Small => c.small += 1,
                SolutionClass::Unsplit => c.unsplit += 1,
                SolutionClass::Boundary(set) => {
                    c.boundary += 1;
                    c.large += set.large as usize;
                    c.medium += set.medium as usize;
                    c.small += set.small as usize;
                }
            }
        }
        c
    }

    /// Sum over boundary records of `(classes listed - 1)`.
    pub fn boundary_multiplicity(&self) -> usize {
        self.primitive()
            .filter_map(|r| match r.class {
                SolutionClass::Boundary(set) => Some(set.len() - 1),
                _ => None,
            })
            .sum()
    }

    /// Solutions with `F(x, y) = 0` other than the origin: their presence
    /// means `F` has a rational linear factor.
    pub fn zero_values(&self) -> impl Iterator<Item = &SolutionRecord> {
        self.records
            .iter()
            .filter(|r| (r.x, r.y) != (0, 0) && r.value.bits() == 0)
    }
}

/// Large: `max > Y_W`. Small: `min < Y_small` and not large. Medium: the rest.
pub fn classify_one(
    ln_max: Interval,
    ln_min: Interval,
    ln_y_w: Interval,
    ln_y_small: Interval,
) -> SolutionClass {
    // L: "max(|x|,|y|) > Y_W", S: "min(|x|,|y|) < Y_small"
    let l = tri(ln_max.certainly_gt(&ln_y_w), ln_max.certainly_le(&ln_y_w));
    let s = tri(ln_min.certainly_lt(&ln_y_small), ln_min.certainly_ge(&ln_y_small));
    let set = ClassSet {
        large: l != Tri::No,
        small: l != Tri::Yes && s != Tri::No,
        medium: l != Tri::Yes && s != Tri::Yes,
    };
    match (set.large, set.medium, set.small) {
        (true, false, false) => SolutionClass::Large,
        (false, true, false) => SolutionClass::Medium,
        (false, false, true) => SolutionClass::Small,
        _ => SolutionClass::Boundary(set),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Tri {
    Yes,
    No,
    Maybe,
}

fn tri(yes: bool, no: bool) -> Tri {
    match (yes, no) {
        (true, _) => Tri::Yes,
        (_, true) => Tri::No,
        _ => Tri::Maybe,
    }
}
