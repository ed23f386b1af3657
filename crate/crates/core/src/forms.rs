//! Sparse binary forms `F(X, Y) = sum a_i X^{r_i} Y^{r - r_i}`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::interval::Interval;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: BigInt,
    pub exp: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("exponent {0} appears more than once")]
    DuplicateExponent(u32),
    #[error("coefficient of X^{0} is zero")]
    ZeroCoefficient(u32),
    #[error("lowest exponent is {0}, expected 0 (a_0 must be nonzero)")]
    MissingConstantTerm(u32),
    #[error("degree {0} is below 3")]
    DegreeTooSmall(u32),
    #[error("form has no terms")]
    Empty,
}

/// An integer binary form with `s + 1` nonzero terms.
///
/// Terms are stored by increasing exponent; the first exponent is 0 and the
/// last is the degree `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseForm {
    terms: Vec<Term>,
}

#[derive(Clone, Debug)]
pub struct SparsityProfile {
    /// `Ψ`
    pub psi: Interval,
    /// `Φ`
    pub phi: Interval,
    /// `sum_{w < i} 1/(r_i - r_w)` for each `i`.
    pub left: Vec<Interval>,
    /// `sum_{w > i} 1/(r_w - r_i)` for each `i`.
    pub right: Vec<Interval>,
}

impl SparseForm {
    /// Validates and normalizes `(coeff, exp)` pairs given in any order.
    pub fn from_terms<I>(terms: I) -> Result<Self, FormError>
    where
        I: IntoIterator<Item = (BigInt, u32)>,
    {
        let mut terms: Vec<Term> = terms
            .into_iter()
            .map(|(coeff, exp)| Term { coeff, exp })
            .collect();
        if terms.is_empty() {
            return Err(FormError::Empty);
        }
        terms.sort_by_key(|t| t.exp);
        for w in terms.windows(2) {
            if w[0].exp == w[1].exp {
                return Err(FormError::DuplicateExponent(w[0].exp));
            }
        }
        if let Some(t) = terms.iter().find(|t| t.coeff.is_zero()) {
            return Err(FormError::ZeroCoefficient(t.exp));
        }
        if terms[0].exp != 0 {
            return Err(FormError::MissingConstantTerm(terms[0].exp));
        }
        let r = terms.last().unwrap().exp;
        if r < 3 {
            return Err(FormError::DegreeTooSmall(r));
        }
        Ok(SparseForm { terms })
    }

    pub fn from_i64_terms(terms: &[(i64, u32)]) -> Result<Self, FormError> {
        SparseForm::from_terms(terms.iter().map(|&(c, e)| (BigInt::from(c), e)))
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// `r`
    pub fn degree(&self) -> u32 {
        self.terms.last().unwrap().exp
    }

    /// `s`: one less than the number of terms.
    pub fn sparsity(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.terms[i].coeff
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.terms[i].exp
    }

    pub fn exponents(&self) -> Vec<u32> {
        self.terms.iter().map(|t| t.exp).collect()
    }

    pub fn abs_coeffs(&self) -> Vec<BigUint> {
        self.terms.iter().map(|t| t.coeff.magnitude().clone()).collect()
    }

    /// `F(x, y)`, exactly.
    pub fn evaluate(&self, x: &BigInt, y: &BigInt) -> BigInt {
        // Horner in x from the top term, carrying the matching power of y.
        let s = self.sparsity();
        let mut acc = self.terms[s].coeff.clone();
        let mut ypow = BigInt::one();
        for i in (0..s).rev() {
            let gap = self.terms[i + 1].exp - self.terms[i].exp;
            ypow *= num_traits::pow(y.clone(), gap as usize);
            acc = acc * num_traits::pow(x.clone(), gap as usize) + &self.terms[i].coeff * &ypow;
        }
        acc
    }

    pub fn evaluate_i64(&self, x: i64, y: i64) -> BigInt {
        self.evaluate(&BigInt::from(x), &BigInt::from(y))
    }

    /// `H = max |a_i|`.
    pub fn height(&self) -> BigInt {
        self.terms
            .iter()
            .map(|t| t.coeff.abs())
            .max()
            .unwrap()
    }

    pub fn sparsity_profile(&self) -> SparsityProfile {
        let s = self.sparsity();
        let r: Vec<i64> = self.terms.iter().map(|t| t.exp as i64).collect();
        let recip = |d: i64| Interval::ONE / Interval::from_i64(d);
        let mut left = vec![Interval::ZERO; s + 1];
        let mut right = vec![Interval::ZERO; s + 1];
        for i in 0..=s {
            for w in 0..i {
                left[i] = left[i] + recip(r[i] - r[w]);
            }
            for w in i + 1..=s {
                right[i] = right[i] + recip(r[w] - r[i]);
            }
        }
        let psi = left
            .iter()
            .zip(&right)
            .map(|(l, r)| l.max(*r))
            .fold(Interval::ZERO, Interval::max);
        let phi = if s >= 3 {
            let lnln = Interval::from_i64(s as i64).ln().ln().scale(3.0);
            psi.max(lnln)
        } else {
            psi
        };
        SparsityProfile {
            psi,
            phi,
            left,
            right,
        }
    }

    /// Whether the Newton polygon of `f` is the single segment from `P_0` to `P_s`,
    /// decided by `|a_s|^{r_i} |a_0|^{r - r_i} >= |a_i|^r` for `0 < i < s`.
    pub fn is_straight_line(&self) -> bool {
        let s = self.sparsity();
        let r = self.degree() as usize;
        let a0 = self.terms[0].coeff.magnitude();
        let as_ = self.terms[s].coeff.magnitude();
        (1..s).all(|i| {
            let ri = self.terms[i].exp as usize;
            let lhs = num_traits::pow(as_.clone(), ri) * num_traits::pow(a0.clone(), r - ri);
            let rhs = num_traits::pow(self.terms[i].coeff.magnitude().clone(), r);
            lhs >= rhs
        })
    }

    /// `F(Y, X)`, whose dehomogenization is `F(1, Z)`.
    pub fn reciprocal(&self) -> SparseForm {
        let r = self.degree();
        let mut terms: Vec<Term> = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: t.coeff.clone(),
                exp: r - t.exp,
            })
            .collect();
        terms.reverse();
        SparseForm { terms }
    }

    /// Coefficients of `f(z) = F(z, 1)` indexed by power.
    pub fn dense_coefficients(&self) -> Vec<BigInt> {
        let mut c = vec![BigInt::zero(); self.degree() as usize + 1];
        for t in &self.terms {
            c[t.exp as usize] = t.coeff.clone();
        }
        c
    }

    /// A zero `(x, y)` of `F` with `0 < y <= max_height` and `|x| <= max_height`,
    /// i.e. a linear factor over `Q`. `None` does not prove irreducibility.
    pub fn small_rational_root(&self, max_height: i64) -> Option<(i64, i64)> {
        let lead = self.terms[self.sparsity()].coeff.clone();
        let constant = self.terms[0].coeff.clone();
        for y in 1..=max_height {
            if !(&lead % BigInt::from(y)).is_zero() {
                continue;
            }
            for x in (-max_height..=max_height).filter(|&x| x != 0) {
                if x.gcd(&y) != 1 || !(&constant % BigInt::from(x)).is_zero() {
                    continue;
                }
                if self.evaluate_i64(x, y).is_zero() {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// Every coefficient multiplied by `c`.
    pub fn scaled(&self, c: &BigInt) -> SparseForm {
        assert!(!c.is_zero());
        SparseForm {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: &t.coeff * c,
                    exp: t.exp,
                })
                .collect(),
        }
    }
}

impl core::fmt::Display for SparseForm {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let r = self.degree();
        for (k, t) in self.terms.iter().rev().enumerate() {
            let neg = t.coeff.is_negative();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mag = t.coeff.magnitude();
            let x = t.exp;
            let y = r - t.exp;
            let unit = mag.is_one() && (x > 0 || y > 0);
            if !unit {
                write!(f, "{mag}")?;
            }
            if x > 0 {
                write!(f, "X")?;
                if x > 1 {
                    write!(f, "^{x}")?;
                }
            }
            if y > 0 {
                write!(f, "Y")?;
                if y > 1 {
                    write!(f, "^{y}")?;
                }
            }
        }
        Ok(())
    }
}
