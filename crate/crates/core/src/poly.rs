//! Dense integer polynomials: resultants, discriminants and evaluation.
//!
//! Coefficient vectors are indexed by power, `c[i]` multiplying `z^i`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::dyadic::{DyComplex, Dyadic};
use crate::linalg::det_bareiss;

pub fn degree(c: &[BigInt]) -> usize {
    c.iter().rposition(|x| !x.is_zero()).unwrap_or(0)
}

pub fn derivative(c: &[BigInt]) -> Vec<BigInt> {
    if c.len() <= 1 {
        return vec![BigInt::zero()];
    }
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(i, a)| a * BigInt::from(i))
        .collect()
}

/// `Res(f, g)` as the determinant of the Sylvester matrix.
pub fn sylvester_resultant(f: &[BigInt], g: &[BigInt]) -> BigInt {
    let m = degree(f);
    let n = degree(g);
    let size = m + n;
    if size == 0 {
        return BigInt::one();
    }
    let mut rows = Vec::with_capacity(size);
    // Rows list coefficients from the leading one down.
    for i in 0..n {
        let mut row = vec![BigInt::zero(); size];
        for k in 0..=m {
            row[i + k] = f[m - k].clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![BigInt::zero(); size];
        for k in 0..=n {
            row[i + k] = g[n - k].clone();
        }
        rows.push(row);
    }
    det_bareiss(&rows)
}

/// `disc(f) = (-1)^{n(n-1)/2} Res(f, f') / a_n`.
pub fn discriminant(f: &[BigInt]) -> BigInt {
    let n = degree(f);
    let res = sylvester_resultant(&f[..=n], &derivative(&f[..=n]));
    let d = res / &f[n];
    if (n * (n.saturating_sub(1)) / 2) % 2 == 1 {
        -d
    } else {
        d
    }
}

pub fn eval_rational(c: &[BigInt], z: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for a in c.iter().rev() {
        acc = acc * z + BigRational::from_integer(a.clone());
    }
    acc
}

pub fn eval_dyadic(c: &[BigInt], z: &DyComplex) -> DyComplex {
    let mut acc = DyComplex::zero();
    for a in c.iter().rev() {
        acc = &acc * z;
        acc.re = &acc.re + &Dyadic::from_bigint(a.clone());
    }
    acc
}

/// Horner evaluation with truncation to `prec` bits after every step.
pub fn eval_dyadic_truncated(c: &[BigInt], z: &DyComplex, prec: u64) -> DyComplex {
    let mut acc = DyComplex::zero();
    for a in c.iter().rev() {
        acc = (&acc * z).truncate(prec);
        acc.re = &acc.re + &Dyadic::from_bigint(a.clone());
    }
    acc
}

/// `f(z)` and `f'(z)` in one Horner pass.
pub fn eval_with_derivative(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}
