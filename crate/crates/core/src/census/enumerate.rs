//! Integer points with `|F(x, y)| <= h` in the box `max(|x|, |y|) <= X`.
//!
//! For fixed `y > 0` the condition reads `|f(t)| <= h / y^r` with `t = x / y`.
//! Writing `|f(t)| = |a_r| prod |t - α_i|` and replacing each factor by the
//! distance from a segment of the real line to the certified disk around
//! `α_i` gives a lower bound for `|f|` on the whole segment. Segments whose
//! bound exceeds `h / y^r` are discarded, the rest are bisected down to a few
//! dozen integers, and every survivor is confirmed by exact evaluation.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;

use crate::forms::SparseForm;
use crate::roots::RootSet;

/// One solution before diagnostics are attached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawSolution {
    pub x: i64,
    pub y: i64,
    pub value: BigInt,
}

/// Largest box edge accepted; keeps `x / y` exactly representable.
pub const MAX_BOUND: u64 = 1 << 53;

const SCAN_WIDTH: i64 = 32;
const ROOT_PRECISION: u32 = 64;
// Safety margin (in log space) for the pruning test.
const LOG_SLACK: f64 = 1e-9;

#[derive(Clone, Debug)]
struct RealDisk {
    cx: f64,
    cy: f64,
    rho: f64,
}

/// Per-row enumerator; build once per `(F, h, X)` and share across threads.
#[derive(Clone, Debug)]
pub struct RowEnumerator {
    form: SparseForm,
    h: u64,
    h_big: BigUint,
    bound: i64,
    ln_h: f64,
    ln_lead: f64,
    disks: Vec<RealDisk>,
    naive: bool,
}

impl RowEnumerator {
    /// Panics if `bound > MAX_BOUND`.
    pub fn new(form: &SparseForm, h: u64, bound: u64) -> Self {
        assert!(bound <= MAX_BOUND, "box edge above 2^53");
        let s = form.sparsity();
        let ln_lead = libm::log(libm::fabs(form.coeff(s).to_f64().unwrap_or(f64::MAX)));
        let (disks, naive) = match RootSet::find(form, ROOT_PRECISION) {
            Ok(rs) => {
                let disks = rs
                    .disks()
                    .iter()
                    .map(|d| {
                        let c = d.center_f64();
                        let modulus = libm::hypot(c.re, c.im);
                        RealDisk {
                            cx: c.re,
                            cy: libm::fabs(c.im),
                            rho: d.radius_f64() + 8.0 * f64::EPSILON * modulus,
                        }
                    })
                    .collect();
                (disks, false)
            }
            Err(_) => (Vec::new(), true),
        };
        RowEnumerator {
            form: form.clone(),
            h,
            h_big: BigUint::from(h),
            bound: bound as i64,
            ln_h: if h == 0 { f64::NEG_INFINITY } else { libm::log(h as f64) },
            ln_lead,
            disks,
            naive,
        }
    }

    /// `true` when the roots could not be certified and rows are scanned
    /// point by point.
    pub fn is_naive(&self) -> bool {
        self.naive
    }

    pub fn h(&self) -> u64 {
        self.h
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    fn accept(&self, x: i64, y: i64, out: &mut Vec<RawSolution>) {
        let v = self.form.evaluate_i64(x, y);
        if v.magnitude() <= &self.h_big {
            out.push(RawSolution { x, y, value: v });
        }
    }

    /// Solutions with `y = 0`: `|a_r| |x|^r <= h`.
    pub fn axis_row(&self, out: &mut Vec<RawSolution>) {
        out.push(RawSolution {
            x: 0,
            y: 0,
            value: BigInt::from(0),
        });
        let mut x = 1i64;
        while x <= self.bound {
            let v = self.form.evaluate_i64(x, 0);
            if v.magnitude() > &self.h_big {
                break;
            }
            out.push(RawSolution { x: -x, y: 0, value: self.form.evaluate_i64(-x, 0) });
            out.push(RawSolution { x, y: 0, value: v });
            x += 1;
        }
    }

    /// Lower bound for `ln |f(t)|` over `t` in `[ta, tb]`.
    fn ln_lower_bound(&self, ta: f64, tb: f64) -> f64 {
        let tol = 4.0 * f64::EPSILON * (libm::fabs(ta) + libm::fabs(tb));
        let mut mant = 1.0f64;
        let mut exp = 0i32;
        for d in &self.disks {
            let dx = if ta > d.cx {
                ta - d.cx
            } else if tb < d.cx {
                d.cx - tb
            } else {
                0.0
            };
            let dist = libm::hypot(dx, d.cy) * (1.0 - 4.0 * f64::EPSILON) - d.rho - tol;
            if dist <= 0.0 {
                return f64::NEG_INFINITY;
            }
            mant *= dist;
            if !(1e-200..=1e200).contains(&mant) {
                let (m, e) = libm::frexp(mant);
                mant = m;
                exp += e;
            }
        }
        self.ln_lead + libm::log(mant) + exp as f64 * core::f64::consts::LN_2
    }

    /// Solutions with the given `y > 0`, in increasing `x`.
    pub fn row(&self, y: i64, out: &mut Vec<RawSolution>) {
        assert!(y > 0);
        let start = out.len();
        if self.naive {
            for x in -self.bound..=self.bound {
                self.accept(x, y, out);
            }
            return;
        }
        let r = self.form.degree() as f64;
        let yf = y as f64;
        let ln_eps = self.ln_h - r * libm::log(yf) + LOG_SLACK * (1.0 + r);
        let mut stack: Vec<(i64, i64)> = alloc::vec![(-self.bound, self.bound)];
        while let Some((a, b)) = stack.pop() {
            if b - a < SCAN_WIDTH {
                for x in a..=b {
                    let t = x as f64 / yf;
                    if self.ln_lower_bound(t, t) <= ln_eps {
                        self.accept(x, y, out);
                    }
                }
                continue;
            }
            if self.ln_lower_bound(a as f64 / yf, b as f64 / yf) > ln_eps {
                continue;
            }
            let mid = a + (b - a) / 2;
            stack.push((mid + 1, b));
            stack.push((a, mid));
        }
        out[start..].sort_by_key(|s| s.x);
    }

    /// Every solution in the box, sorted by `(y, x)`.
    pub fn enumerate_all(&self) -> Vec<RawSolution> {
        let mut upper = Vec::new();
        for y in 1..=self.bound {
            self.row(y, &mut upper);
        }
        assemble(self.axis_only(), upper, self.form.degree() % 2 == 1)
    }

    fn axis_only(&self) -> Vec<RawSolution> {
        let mut v = Vec::new();
        self.axis_row(&mut v);
        v
    }

    /// Solutions with `y` in `[y_lo, y_hi]` (both positive).
    pub fn rows(&self, y_lo: i64, y_hi: i64) -> Vec<RawSolution> {
        let mut out = Vec::new();
        for y in y_lo.max(1)..=y_hi {
            self.row(y, &mut out);
        }
        out
    }

    /// Merges the axis row with rows for positive `y`, adds the mirror images
    /// `(-x, -y)` and sorts by `(y, x)`.
    pub fn assemble(&self, upper: Vec<RawSolution>) -> Vec<RawSolution> {
        assemble(self.axis_only(), upper, self.form.degree() % 2 == 1)
    }
}

fn assemble(axis: Vec<RawSolution>, upper: Vec<RawSolution>, odd: bool) -> Vec<RawSolution> {
    let mut all = Vec::with_capacity(axis.len() + 2 * upper.len());
    all.extend(axis);
    for s in &upper {
        all.push(RawSolution {
            x: -s.x,
            y: -s.y,
            value: if odd { -&s.value } else { s.value.clone() },
        });
    }
    all.extend(upper);
    all.sort_by_key(|s| (s.y, s.x));
    all
}

/// All solutions of `|F(x, y)| <= h` with `max(|x|, |y|) <= bound`, sorted by `(y, x)`.
pub fn enumerate(form: &SparseForm, h: u64, bound: u64) -> Vec<RawSolution> {
    RowEnumerator::new(form, h, bound).enumerate_all()
}
