//! Exact dyadic rationals `m * 2^e` and complex numbers built from them.
//!
//! Ring operations are exact. Precision is only lost through the explicit
//! [`Dyadic::truncate`] and [`Dyadic::div_approx`] calls, which is what the root
//! refinement uses; certification then re-evaluates exactly.

use alloc::string::String;
use core::cmp::Ordering;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::interval::Interval;

#[derive(Clone, Debug)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic::from_bigint(BigInt::one())
    }

    pub fn new(mant: BigInt, exp: i64) -> Self {
        Dyadic { mant, exp }
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Dyadic { mant: n, exp: 0 }
    }

    pub fn from_i64(n: i64) -> Self {
        Dyadic::from_bigint(BigInt::from(n))
    }

    /// Exact conversion; `None` for NaN or infinities.
    pub fn from_f64(x: f64) -> Option<Self> {
        if !x.is_finite() {
            return None;
        }
        if x == 0.0 {
            return Some(Dyadic::zero());
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        Some(Dyadic::new(BigInt::from(m as i64 * sign), e))
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Dyadic::new(self.mant.abs(), self.exp)
    }

    /// `|self| < 2^magnitude()`; `i64::MIN` for zero.
    pub fn magnitude(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.exp + self.mant.bits() as i64
        }
    }

    /// Drop trailing zero bits of the mantissa.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return Dyadic::zero();
        }
        let tz = self.mant.trailing_zeros().unwrap_or(0);
        Dyadic::new(&self.mant >> tz, self.exp + tz as i64)
    }

    /// Keep at most `prec` significant bits (rounding toward zero).
    pub fn truncate(&self, prec: u64) -> Self {
        let bits = self.mant.bits();
        if bits <= prec {
            return self.clone();
        }
        let shift = bits - prec;
        let m = shift_right_toward_zero(&self.mant, shift);
        Dyadic::new(m, self.exp + shift as i64)
    }

    /// `self * 2^k`, exact.
    pub fn shl(&self, k: i64) -> Self {
        Dyadic::new(self.mant.clone(), self.exp + k)
    }

    pub fn mul_bigint(&self, n: &BigInt) -> Self {
        Dyadic::new(&self.mant * n, self.exp)
    }

    /// `self / other` to about `prec` significant bits. Panics on division by zero.
    pub fn div_approx(&self, other: &Dyadic, prec: u64) -> Self {
        assert!(!other.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let a_bits = self.mant.bits() as i64;
        let b_bits = other.mant.bits() as i64;
        let shift = (prec as i64 + b_bits - a_bits + 2).max(0);
        let num = &self.mant << shift as usize;
        let q = num.div_floor(&other.mant);
        Dyadic::new(q, self.exp - other.exp - shift).truncate(prec)
    }

    pub fn cmp_value(&self, other: &Dyadic) -> Ordering {
        (self - other).mant.sign().cmp(&Sign::NoSign)
    }

    /// Closest `f64` (within a couple of ulps); saturates to infinities.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits();
        let (m, e) = if bits > 60 {
            let shift = bits - 60;
            (shift_right_toward_zero(&self.mant, shift), self.exp + shift as i64)
        } else {
            (self.mant.clone(), self.exp)
        };
        let mf = m.to_i64().unwrap() as f64;
        let e = e.clamp(-3000, 3000) as i32;
        libm::scalbn(mf, e)
    }

    /// Natural log of `|self|`.
    pub fn ln_abs(&self) -> Interval {
        if self.is_zero() {
            return Interval::NEG_INFINITY;
        }
        Interval::ln_abs_bigint(&self.mant) + ln2_times(self.exp)
    }

    /// Decimal rendering truncated to `digits` fractional digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        if self.exp >= 0 {
            return (&self.mant << self.exp as usize).to_str_radix(10);
        }
        let scale = num_traits::pow(BigInt::from(10), digits);
        let neg = self.mant.is_negative();
        let scaled = (self.mant.abs() * scale) >> (-self.exp) as usize;
        let s = scaled.to_str_radix(10);
        let s = if s.len() <= digits {
            let mut pad = String::from("0");
            for _ in 0..(digits + 1 - s.len() - 1) {
                pad.push('0');
            }
            pad.push_str(&s);
            pad
        } else {
            s
        };
        let (int, frac) = s.split_at(s.len() - digits);
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        out.push_str(int);
        if digits > 0 {
            out.push('.');
            out.push_str(frac);
        }
        out
    }
}

pub(crate) fn ln2_times(k: i64) -> Interval {
    if k == 0 {
        return Interval::ZERO;
    }
    Interval::ln2() * Interval::from_i64(k)
}

fn shift_right_toward_zero(m: &BigInt, shift: u64) -> BigInt {
    let mag = m.magnitude() >> shift;
    BigInt::from_biguint(m.sign(), mag)
}

fn align(a: &Dyadic, b: &Dyadic) -> (BigInt, BigInt, i64) {
    if a.is_zero() {
        return (BigInt::zero(), b.mant.clone(), b.exp);
    }
    if b.is_zero() {
        return (a.mant.clone(), BigInt::zero(), a.exp);
    }
    match a.exp.cmp(&b.exp) {
        Ordering::Equal => (a.mant.clone(), b.mant.clone(), a.exp),
        Ordering::Less => (a.mant.clone(), &b.mant << (b.exp - a.exp) as usize, a.exp),
        Ordering::Greater => (&a.mant << (a.exp - b.exp) as usize, b.mant.clone(), b.exp),
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, o: &Dyadic) -> Dyadic {
        let (x, y, e) = align(self, o);
        Dyadic::new(x + y, e)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, o: &Dyadic) -> Dyadic {
        let (x, y, e) = align(self, o);
        Dyadic::new(x - y, e)
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, o: &Dyadic) -> Dyadic {
        if self.is_zero() || o.is_zero() {
            return Dyadic::zero();
        }
        Dyadic::new(&self.mant * &o.mant, self.exp + o.exp)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic::new(-&self.mant, self.exp)
    }
}

impl PartialEq for Dyadic {
    fn eq(&self, other: &Dyadic) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}

impl Eq for Dyadic {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyComplex {
    pub re: Dyadic,
    pub im: Dyadic,
}

impl DyComplex {
    pub fn new(re: Dyadic, im: Dyadic) -> Self {
        DyComplex { re, im }
    }

    pub fn zero() -> Self {
        DyComplex::new(Dyadic::zero(), Dyadic::zero())
    }

    pub fn one() -> Self {
        DyComplex::new(Dyadic::one(), Dyadic::zero())
    }

    pub fn real(x: Dyadic) -> Self {
        DyComplex::new(x, Dyadic::zero())
    }

    pub fn from_f64(re: f64, im: f64) -> Option<Self> {
        Some(DyComplex::new(Dyadic::from_f64(re)?, Dyadic::from_f64(im)?))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        DyComplex::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> Dyadic {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    /// `|self| < 2^magnitude()`; `i64::MIN` for zero.
    pub fn magnitude(&self) -> i64 {
        let m = self.re.magnitude().max(self.im.magnitude());
        if m == i64::MIN {
            m
        } else {
            m + 1
        }
    }

    pub fn ln_abs(&self) -> Interval {
        if self.is_zero() {
            return Interval::NEG_INFINITY;
        }
        self.norm_sqr().ln_abs().scale(0.5)
    }

    pub fn truncate(&self, prec: u64) -> Self {
        // Truncate both parts relative to the larger one so a tiny imaginary
        // part does not keep a huge mantissa alive.
        let mag = self.magnitude();
        if mag == i64::MIN {
            return DyComplex::zero();
        }
        let floor = mag - prec as i64;
        DyComplex::new(cut_below(&self.re, floor), cut_below(&self.im, floor))
    }

    pub fn mul_bigint(&self, n: &BigInt) -> Self {
        DyComplex::new(self.re.mul_bigint(n), self.im.mul_bigint(n))
    }

    pub fn mul_real(&self, x: &Dyadic) -> Self {
        DyComplex::new(&self.re * x, &self.im * x)
    }

    /// `self / other` to about `prec` bits relative to `|self / other|`.
    pub fn div_approx(&self, other: &DyComplex, prec: u64) -> Self {
        let n = other.norm_sqr();
        let num = self * &other.conj();
        let guard = prec + 8;
        let q = DyComplex::new(num.re.div_approx(&n, guard), num.im.div_approx(&n, guard));
        q.truncate(prec)
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = DyComplex::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

fn cut_below(x: &Dyadic, floor_exp: i64) -> Dyadic {
    if x.is_zero() || x.exp >= floor_exp {
        return x.clone();
    }
    let shift = (floor_exp - x.exp) as u64;
    Dyadic::new(shift_right_toward_zero(&x.mant, shift), floor_exp)
}

impl Add for &DyComplex {
    type Output = DyComplex;
    fn add(self, o: &DyComplex) -> DyComplex {
        DyComplex::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub for &DyComplex {
    type Output = DyComplex;
    fn sub(self, o: &DyComplex) -> DyComplex {
        DyComplex::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul for &DyComplex {
    type Output = DyComplex;
    fn mul(self, o: &DyComplex) -> DyComplex {
        let re = &(&self.re * &o.re) - &(&self.im * &o.im);
        let im = &(&self.re * &o.im) + &(&self.im * &o.re);
        DyComplex::new(re, im)
    }
}

impl Neg for &DyComplex {
    type Output = DyComplex;
    fn neg(self) -> DyComplex {
        DyComplex::new(-&self.re, -&self.im)
    }
}
