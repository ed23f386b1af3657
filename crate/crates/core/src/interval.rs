//! Closed real intervals with outward rounding.
//!
//! Endpoints are `f64`. Every arithmetic result is widened by at least one ulp
//! in each direction, and results of `libm` transcendentals by a few ulps, so
//! the true value of any expression built from exact inputs stays enclosed.
//! Infinite endpoints are allowed; `-inf` is how `ln 0` is represented.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

#[derive(Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

fn down(x: f64) -> f64 {
    if x.is_finite() {
        x.next_down()
    } else {
        x
    }
}

fn up(x: f64) -> f64 {
    if x.is_finite() {
        x.next_up()
    } else {
        x
    }
}

fn down_n(mut x: f64, n: u32) -> f64 {
    for _ in 0..n {
        x = down(x);
    }
    x
}

fn up_n(mut x: f64, n: u32) -> f64 {
    for _ in 0..n {
        x = up(x);
    }
    x
}

// 0 * inf shows up when a zero-width factor meets an unbounded one; the
// interval convention takes it as 0.
fn mul_or_zero(a: f64, b: f64) -> f64 {
    let p = a * b;
    if p.is_nan() {
        0.0
    } else {
        p
    }
}

const LIBM_ULPS: u32 = 3;

impl Interval {
    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };
    pub const ONE: Interval = Interval { lo: 1.0, hi: 1.0 };
    pub const NEG_INFINITY: Interval = Interval {
        lo: f64::NEG_INFINITY,
        hi: f64::NEG_INFINITY,
    };
    pub const ENTIRE: Interval = Interval {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };

    /// Panics if `lo > hi` or either endpoint is NaN.
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "bad interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    /// The degenerate interval `[x, x]`. Use only for exactly representable values.
    pub fn point(x: f64) -> Self {
        Interval::new(x, x)
    }

    /// An enclosure of a value known to within one rounding of `x`.
    pub fn approx(x: f64) -> Self {
        Interval::new(down(x), up(x))
    }

    pub fn from_i64(n: i64) -> Self {
        let x = n as f64;
        if x as i128 == n as i128 {
            Interval::point(x)
        } else {
            Interval::approx(x)
        }
    }

    pub fn ln2() -> Self {
        Interval::approx(core::f64::consts::LN_2)
    }

    pub fn ln3() -> Self {
        Interval::from_i64(3).ln()
    }

    pub fn pi() -> Self {
        Interval::approx(core::f64::consts::PI)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn mid(&self) -> f64 {
        if self.lo == self.hi {
            return self.lo;
        }
        if self.lo.is_infinite() || self.hi.is_infinite() {
            if self.hi.is_finite() {
                return self.hi;
            }
            if self.lo.is_finite() {
                return self.lo;
            }
            return 0.0;
        }
        self.lo * 0.5 + self.hi * 0.5
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn is_finite(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn hull(self, other: Interval) -> Self {
        Interval::new(self.lo.min(other.lo), self.hi.max(other.hi))
    }

    pub fn max(self, other: Interval) -> Self {
        Interval::new(self.lo.max(other.lo), self.hi.max(other.hi))
    }

    pub fn min(self, other: Interval) -> Self {
        Interval::new(self.lo.min(other.lo), self.hi.min(other.hi))
    }

    /// Widen both ends by `n` ulps.
    pub fn widen(self, n: u32) -> Self {
        Interval::new(down_n(self.lo, n), up_n(self.hi, n))
    }

    /// Multiply by a nonnegative exact scalar.
    pub fn scale(self, k: f64) -> Self {
        debug_assert!(k >= 0.0);
        if k == 0.0 {
            return Interval::ZERO;
        }
        Interval::new(down(mul_or_zero(self.lo, k)), up(mul_or_zero(self.hi, k)))
    }

    /// Multiply by an integer exactly representable in `f64` (sign allowed).
    pub fn scale_int(self, k: i64) -> Self {
        self * Interval::from_i64(k)
    }

    pub fn ln(self) -> Self {
        let lo = if self.lo <= 0.0 {
            f64::NEG_INFINITY
        } else {
            down_n(libm::log(self.lo), LIBM_ULPS)
        };
        let hi = if self.hi <= 0.0 {
            f64::NEG_INFINITY
        } else {
            up_n(libm::log(self.hi), LIBM_ULPS)
        };
        Interval::new(lo, hi)
    }

    pub fn exp(self) -> Self {
        let lo = down_n(libm::exp(self.lo), LIBM_ULPS).max(0.0);
        let hi = up_n(libm::exp(self.hi), LIBM_ULPS);
        Interval::new(lo, hi)
    }

    pub fn sqrt(self) -> Self {
        let lo = if self.lo <= 0.0 {
            0.0
        } else {
            down(libm::sqrt(self.lo)).max(0.0)
        };
        let hi = up(libm::sqrt(self.hi.max(0.0)));
        Interval::new(lo, hi)
    }

    pub fn recip(self) -> Self {
        Interval::ONE / self
    }

    /// `ln(e^self + e^other)`, monotone in both arguments.
    pub fn ln_add_exp(self, other: Interval) -> Self {
        fn f(a: f64, b: f64) -> f64 {
            let (m, n) = if a >= b { (a, b) } else { (b, a) };
            if m == f64::NEG_INFINITY {
                return f64::NEG_INFINITY;
            }
            if m == f64::INFINITY {
                return f64::INFINITY;
            }
            m + libm::log1p(libm::exp(n - m))
        }
        Interval::new(
            down_n(f(self.lo, other.lo), 4),
            up_n(f(self.hi, other.hi), 4),
        )
    }

    /// `ln(e^self - e^other)`. Where the difference may be nonpositive the
    /// lower end is `-inf`; where it is certainly nonpositive the result is
    /// `NEG_INFINITY` (the caller should treat it as "no positive lower bound").
    pub fn ln_sub_exp(self, other: Interval) -> Self {
        fn g(a: f64, b: f64) -> f64 {
            if b >= a || a == f64::NEG_INFINITY {
                return f64::NEG_INFINITY;
            }
            if b == f64::NEG_INFINITY {
                return a;
            }
            if a == f64::INFINITY {
                return f64::INFINITY;
            }
            let d = b - a;
            if d > -core::f64::consts::LN_2 {
                a + libm::log(-libm::expm1(d))
            } else {
                a + libm::log1p(-libm::exp(d))
            }
        }
        let lo = g(self.lo, other.hi);
        let hi = g(self.hi, other.lo);
        let lo = if lo == f64::NEG_INFINITY {
            lo
        } else {
            let slack = 1e-15 * (1.0 + libm::fabs(lo));
            down_n(lo - slack, 4)
        };
        let hi = if hi == f64::NEG_INFINITY {
            hi
        } else {
            let slack = 1e-15 * (1.0 + libm::fabs(hi));
            up_n(hi + slack, 4)
        };
        Interval::new(lo, hi.max(lo))
    }

    /// Sum of the intervals in log space: `ln Σ e^{x_i}`.
    pub fn ln_sum_exp<I: IntoIterator<Item = Interval>>(items: I) -> Self {
        items
            .into_iter()
            .fold(Interval::NEG_INFINITY, |acc, x| acc.ln_add_exp(x))
    }

    /// `Some(ordering)` when the intervals are disjoint (or both the same point).
    pub fn certain_cmp(&self, other: &Interval) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if self.lo > other.hi {
            Some(Ordering::Greater)
        } else if self.lo == self.hi && other.lo == other.hi && self.lo == other.lo {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn certainly_lt(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }

    pub fn certainly_le(&self, other: &Interval) -> bool {
        self.hi <= other.lo
    }

    pub fn certainly_gt(&self, other: &Interval) -> bool {
        self.lo > other.hi
    }

    pub fn certainly_ge(&self, other: &Interval) -> bool {
        self.lo >= other.hi
    }

    /// Natural log of a positive integer. `ln 0` is `NEG_INFINITY`.
    pub fn ln_biguint(n: &BigUint) -> Self {
        if n.is_zero() {
            return Interval::NEG_INFINITY;
        }
        let bits = n.bits();
        if bits <= 53 {
            let x = n.to_u64().unwrap() as f64;
            return Interval::point(x).ln();
        }
        let shift = bits - 53;
        let top: BigUint = n >> shift;
        let t = top.to_u64().unwrap();
        let lo_mant = t as f64;
        let hi_mant = (t + 1) as f64;
        let k = Interval::ln2().scale(shift as f64);
        Interval::new(Interval::point(lo_mant).ln().lo, Interval::point(hi_mant).ln().hi) + k
    }

    /// Natural log of `|n|`.
    pub fn ln_abs_bigint(n: &BigInt) -> Self {
        Interval::ln_biguint(n.magnitude())
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, o: Interval) -> Interval {
        let lo = self.lo + o.lo;
        let hi = self.hi + o.hi;
        // inf + (-inf) cannot be decided; give up on that end.
        let lo = if lo.is_nan() { f64::NEG_INFINITY } else { down(lo) };
        let hi = if hi.is_nan() { f64::INFINITY } else { up(hi) };
        Interval::new(lo, hi)
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, o: Interval) -> Interval {
        self + (-o)
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval::new(-self.hi, -self.lo)
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, o: Interval) -> Interval {
        let pairs = [(self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi)];
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for (x, y) in pairs {
            let p = mul_or_zero(x, y);
            if x == 0.0 || y == 0.0 {
                lo = lo.min(p);
                hi = hi.max(p);
            } else {
                lo = lo.min(down(p));
                hi = hi.max(up(p));
            }
        }
        Interval::new(lo, hi)
    }
}

impl Div for Interval {
    type Output = Interval;
    /// Panics if the divisor contains zero.
    fn div(self, o: Interval) -> Interval {
        assert!(o.lo > 0.0 || o.hi < 0.0, "division by an interval containing 0");
        let c = [self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi];
        let lo = c.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = c.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Interval::new(down(lo), up(hi))
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn ln_of_powers_of_two_brackets_exact_value() {
        for k in [1u32, 10, 60, 64, 65, 200, 5000] {
            let n = BigUint::one() << k;
            let iv = Interval::ln_biguint(&n);
            let exact = k as f64 * core::f64::consts::LN_2;
            assert!(iv.contains(exact), "k={k} {iv:?} {exact}");
            assert!(iv.width() < 1e-9 * (1.0 + exact));
        }
    }

    #[test]
    fn ln_of_big_odd_number_is_tight() {
        let n = BigUint::from(10u32).pow(40) + BigUint::one();
        let iv = Interval::ln_biguint(&n);
        assert!(iv.contains(40.0 * core::f64::consts::LN_10));
        assert!(iv.width() < 1e-12);
    }

    #[test]
    fn ln_add_exp_matches_direct_sum() {
        let a = Interval::point(2.0).ln();
        let b = Interval::point(3.0).ln();
        let s = a.ln_add_exp(b);
        assert!(s.contains(libm::log(5.0)));
        let d = b.ln_sub_exp(a);
        assert!(d.contains(0.0));
        assert!(a.ln_sub_exp(b).hi() == f64::NEG_INFINITY);
    }

    #[test]
    fn sub_exp_straddle_gives_unbounded_lower_end() {
        let a = Interval::new(1.0, 1.1);
        let b = Interval::new(1.05, 1.06);
        let d = a.ln_sub_exp(b);
        assert_eq!(d.lo(), f64::NEG_INFINITY);
        assert!(d.hi().is_finite());
    }

    #[test]
    fn certain_comparisons() {
        let a = Interval::new(0.0, 1.0);
        let b = Interval::new(1.5, 2.0);
        assert_eq!(a.certain_cmp(&b), Some(Ordering::Less));
        assert_eq!(b.certain_cmp(&a), Some(Ordering::Greater));
        assert_eq!(a.certain_cmp(&Interval::new(0.5, 3.0)), None);
    }

    #[test]
    fn infinite_times_zero_is_zero() {
        let z = Interval::ZERO;
        let n = Interval::NEG_INFINITY;
        assert_eq!((z * n).lo(), 0.0);
        assert_eq!(n.scale(0.0), Interval::ZERO);
    }
}
