//! Falling factorials, Vandermonde-type determinants, and large derivatives of
//! `f` at its roots.
//!
//! For a tuple `a_1, ..., a_{t+1}` the matrix with columns
//! `((a_j)_0, (a_j)_1, ..., (a_j)_t)` has determinant `prod_{i<j} (a_j - a_i)`.
//! Expanding along the last column with `a_{t+1} = e` gives
//! `sum_u (e)_u E_u = D(b, e)` with the signed minors `E_u`.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::dyadic::DyComplex;
use crate::error::Error;
use crate::forms::SparseForm;
use crate::interval::Interval;
use crate::linalg::det_bareiss;
use crate::poly;
use crate::polygon::NewtonPolygon;
use crate::roots::RootSet;

/// `(e)_h = e (e - 1) ... (e - h + 1)`, with `(e)_0 = 1` for every `e`.
pub fn pochhammer(e: u64, h: u64) -> BigInt {
    if h > e {
        return BigInt::zero();
    }
    let mut p = BigInt::one();
    for k in 0..h {
        p *= BigInt::from(e - k);
    }
    p
}

/// Rows `h = 0..=t`, one column per entry of `cols`.
pub fn falling_factorial_matrix(cols: &[u64], t: usize) -> Vec<Vec<BigInt>> {
    (0..=t)
        .map(|h| cols.iter().map(|&c| pochhammer(c, h as u64)).collect())
        .collect()
}

/// `D(b_1, ..., b_t, e) = prod_{i<j} (a_j - a_i)` over `a = (b_1, ..., b_t, e)`.
pub fn vandermonde_d(b: &[u64], e: u64) -> BigInt {
    let mut a: Vec<i64> = b.iter().map(|&x| x as i64).collect();
    a.push(e as i64);
    let mut p = BigInt::one();
    for j in 0..a.len() {
        for i in 0..j {
            p *= BigInt::from(a[j] - a[i]);
        }
    }
    p
}

/// The same quantity as [`vandermonde_d`], as a determinant of falling factorials.
pub fn falling_factorial_det(b: &[u64], e: u64) -> BigInt {
    let mut cols = b.to_vec();
    cols.push(e);
    det_bareiss(&falling_factorial_matrix(&cols, b.len()))
}

/// `E_u^{(t)} = (-1)^{t+u}` times the minor of the falling-factorial matrix of
/// `b` with row `u` removed.
pub fn cofactor_e(b: &[u64], u: usize) -> BigInt {
    let t = b.len();
    assert!(u <= t, "cofactor index out of range");
    let full = falling_factorial_matrix(b, t);
    let minor: Vec<Vec<BigInt>> = full
        .into_iter()
        .enumerate()
        .filter(|&(h, _)| h != u)
        .map(|(_, row)| row)
        .collect();
    let d = det_bareiss(&minor);
    if (t + u) % 2 == 1 {
        -d
    } else {
        d
    }
}

pub fn cofactors(b: &[u64]) -> Vec<BigInt> {
    (0..=b.len()).map(|u| cofactor_e(b, u)).collect()
}

fn dense_from_terms(terms: &[(BigInt, u32)]) -> Vec<BigInt> {
    let deg = terms.iter().map(|t| t.1).max().unwrap_or(0) as usize;
    let mut c = alloc::vec![BigInt::zero(); deg + 1];
    for (a, e) in terms {
        c[*e as usize] += a;
    }
    c
}

/// Both sides of `sum_u E_u z^u P^(u)(z) = sum_i p_i z^{e_i} D(b, e_i)` at a
/// rational point. The left side differentiates the dense expansion of `P`;
/// the right side uses the product formula.
pub fn derivative_combination_sides(
    terms: &[(BigInt, u32)],
    b: &[u64],
    z: &BigRational,
) -> (BigRational, BigRational) {
    let e = cofactors(b);
    let mut deriv = dense_from_terms(terms);
    let mut lhs = BigRational::zero();
    let mut zu = BigRational::one();
    for eu in &e {
        let term = poly::eval_rational(&deriv, z) * &zu * BigRational::from_integer(eu.clone());
        lhs += term;
        deriv = poly::derivative(&deriv);
        zu = zu * z;
    }
    let mut rhs = BigRational::zero();
    for (p, ex) in terms {
        let zp = num_traits::pow(z.clone(), *ex as usize);
        rhs += zp * BigRational::from_integer(p * vandermonde_d(b, *ex as u64));
    }
    (lhs, rhs)
}

pub fn derivative_combination_check(terms: &[(BigInt, u32)], b: &[u64], z: &BigRational) -> bool {
    let (l, r) = derivative_combination_sides(terms, b, z);
    l == r
}

/// The same identity at a dyadic complex point, evaluated exactly.
pub fn derivative_combination_check_complex(
    terms: &[(BigInt, u32)],
    b: &[u64],
    z: &DyComplex,
) -> bool {
    let e = cofactors(b);
    let mut deriv = dense_from_terms(terms);
    let mut lhs = DyComplex::zero();
    let mut zu = DyComplex::one();
    for eu in &e {
        let v = poly::eval_dyadic(&deriv, z);
        lhs = &lhs + &(&v * &zu).mul_bigint(eu);
        deriv = poly::derivative(&deriv);
        zu = &zu * z;
    }
    let mut rhs = DyComplex::zero();
    for (p, ex) in terms {
        rhs = &rhs + &z.pow(*ex).mul_bigint(&(p * vandermonde_d(b, *ex as u64)));
    }
    lhs == rhs
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DerivativeSide {
    /// Orders `1 <= u <= i(K)`, bound through `a_{i(K)}`.
    Upper,
    /// Orders `1 <= v <= s - i(k)`, bound through `a_{i(k)}`.
    Lower,
}

#[derive(Clone, Debug)]
pub struct LargeDerivativeWitness {
    pub root: usize,
    pub side: DerivativeSide,
    pub order: usize,
    /// `ln( (1/4s) (2 s^2 r)^{1-s} |a_c| |α|^{r_c - order} )`
    pub ln_lower_bound: Interval,
    /// Enclosure of `ln |f^(order)(α)|`.
    pub ln_achieved: Interval,
}

/// `f^(u)(z)` exactly, for `f` given by the form.
pub fn derivative_at(form: &SparseForm, u: u32, z: &DyComplex) -> DyComplex {
    let mut acc = DyComplex::zero();
    let mut zpow = DyComplex::one();
    let mut cur = 0u32;
    for t in form.terms() {
        if t.exp < u {
            continue;
        }
        let e = t.exp - u;
        zpow = &zpow * &z.pow(e - cur);
        cur = e;
        let c = &t.coeff * pochhammer(t.exp as u64, u as u64);
        acc = &acc + &zpow.mul_bigint(&c);
    }
    acc
}

/// Upper bound for `ln sup |f^(u)|` on the closed disk `|w| <= e^{ln_rho}`.
fn ln_derivative_sup(form: &SparseForm, u: u32, ln_rho: Interval) -> Interval {
    Interval::ln_sum_exp(form.terms().iter().filter(|t| t.exp >= u).map(|t| {
        let c = Interval::ln_abs_bigint(&t.coeff)
            + Interval::ln_abs_bigint(&pochhammer(t.exp as u64, u as u64));
        c + ln_rho.scale((t.exp - u) as f64)
    }))
}

/// Searches the orders allowed on `side` for one where `|f^(order)(α)|` meets
/// the large-derivative lower bound, using the certified disk of `root`.
pub fn large_derivative_witness(
    form: &SparseForm,
    polygon: &NewtonPolygon,
    roots: &RootSet,
    root: usize,
    side: DerivativeSide,
    psi: Interval,
) -> Result<LargeDerivativeWitness, Error> {
    let disk = &roots.disks()[root];
    let idx = polygon.indices_for_root(psi, disk.ln_modulus)?;
    let s = form.sparsity();
    let r = form.degree() as i64;
    let (c, max_order) = match side {
        DerivativeSide::Upper => {
            let c = polygon.vertex(idx.upper);
            (c, c)
        }
        DerivativeSide::Lower => {
            let c = polygon.vertex(idx.lower);
            (c, s - c)
        }
    };
    let s_i = s as i64;
    let constant = -Interval::from_i64(4 * s_i).ln()
        + Interval::from_i64(2 * s_i * s_i * r).ln().scale_int(1 - s_i)
        + Interval::ln_abs_bigint(form.coeff(c));
    let rc = form.exponent(c) as i64;
    let ln_z = disk.center.ln_abs();
    let rad = Interval::point(disk.ln_radius);
    let ln_outer = ln_z.ln_add_exp(rad);
    let mut ambiguous = false;
    for order in 1..=max_order {
        let bound = constant + disk.ln_modulus.scale_int(rc - order as i64);
        let fz = derivative_at(form, order as u32, &disk.center);
        let ln_fz = fz.ln_abs();
        let achieved = if disk.ln_radius == f64::NEG_INFINITY {
            ln_fz
        } else {
            let err = rad + ln_derivative_sup(form, order as u32 + 1, ln_outer);
            Interval::new(ln_fz.ln_sub_exp(err).lo(), ln_fz.ln_add_exp(err).hi())
        };
        if achieved.lo() >= bound.hi() {
            return Ok(LargeDerivativeWitness {
                root,
                side,
                order,
                ln_lower_bound: bound,
                ln_achieved: achieved,
            });
        }
        if achieved.hi() >= bound.lo() {
            ambiguous = true;
        }
    }
    if ambiguous {
        Err(Error::PrecisionExhausted {
            bits: roots.precision(),
        })
    } else {
        Err(Error::NoWitness { root })
    }
}

/// Rational `num/den` from small integers, for tests and fixtures.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `true` when every `E_u` and `D` value is consistent with the expansion
/// identity for this `b` and `e`.
pub fn expansion_identity_holds(b: &[u64], e: u64) -> bool {
    let cof = cofactors(b);
    let lhs: BigInt = cof
        .iter()
        .enumerate()
        .map(|(u, c)| pochhammer(e, u as u64) * c)
        .sum();
    lhs == vandermonde_d(b, e)
}
