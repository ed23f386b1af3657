//! Explicit constants and solution-height thresholds, all in natural-log space.
//!
//! `R_1 = e^{800 ln^3 r}` already overflows `f64` at `r = 3`, so nothing here
//! is ever exponentiated except for report columns.

use num_bigint::{BigInt, BigUint};

use crate::error::Error;
use crate::forms::SparseForm;
use crate::interval::Interval;
use crate::roots::RootSet;

/// Default Siegel parameters `(a, b)`.
pub const DEFAULT_A: f64 = 0.5;
pub const DEFAULT_B: f64 = 0.9;

#[derive(Clone, Copy, Debug)]
pub struct SiegelParameters {
    pub a: f64,
    pub b: f64,
    /// `t = sqrt(2 / (r + a^2))`
    pub t: Interval,
    /// `λ = 2 / ((1 - b) t)`
    pub lambda: Interval,
    /// `δ = ((r + b^2) t^2 - 2) / (r - 1)`
    pub delta: Interval,
    /// `A = (ln M + r/2) / a^2`
    pub big_a: Interval,
}

impl SiegelParameters {
    pub fn new(r: u32, ln_mahler: Interval, a: f64, b: f64) -> Result<Self, Error> {
        if !(a > 0.0 && a < b && b < 1.0) {
            return Err(Error::InvalidParameters("need 0 < a < b < 1"));
        }
        if r < 3 {
            return Err(Error::InvalidParameters("degree below 3"));
        }
        if ln_mahler.hi() < 0.0 {
            return Err(Error::InvalidParameters("Mahler measure below 1"));
        }
        let ri = Interval::from_i64(r as i64);
        let ai = Interval::point(a);
        let bi = Interval::point(b);
        let a2 = ai * ai;
        let b2 = bi * bi;
        let r_a2 = ri + a2;
        let t = (Interval::point(2.0) / r_a2).sqrt();
        let lambda = Interval::point(2.0) / ((Interval::ONE - bi) * t);
        // (r + b^2) t^2 - 2 = 2 (b^2 - a^2) / (r + a^2), which avoids cancellation.
        let delta = Interval::point(2.0) * (b2 - a2) / (r_a2 * (ri - Interval::ONE));
        let big_a = (ln_mahler + ri / Interval::point(2.0)) / a2;
        Ok(SiegelParameters {
            a,
            b,
            t,
            lambda,
            delta,
            big_a,
        })
    }

    /// `ln(4 e^A)`
    pub fn ln_4ea(&self) -> Interval {
        Interval::ln2().scale(2.0) + self.big_a
    }
}

/// The thresholds for one `(F, h)`; `None` marks a threshold whose formula
/// degenerates (`r <= λ` or `r <= 2s`).
#[derive(Clone, Debug)]
pub struct ThresholdSet {
    pub r: u32,
    pub s: usize,
    pub h: u64,
    pub ln_h: Interval,
    pub psi: Interval,
    pub ln_mahler: Interval,
    pub ln_height: Interval,
    pub ln_abs_disc: Interval,
    pub ln_b: Interval,
    pub ln_r1: Interval,
    pub ln_r2: Interval,
    pub ln_delta: Interval,
    pub ln_y_g: Interval,
    pub ln_y_e: Option<Interval>,
    pub ln_y_w: Option<Interval>,
    pub ln_y_s: Option<Interval>,
    pub ln_y_s_prime: Option<Interval>,
    pub ln_k1: Interval,
    pub ln_k2: Interval,
    pub c1: Interval,
}

pub fn ln_r1(r: u32) -> Interval {
    let l = Interval::from_i64(r as i64).ln();
    (l * l * l).scale(800.0)
}

/// `C_1(r, h) = h^{2/r} (1 + ln h^{1/r})`
pub fn c1(r: u32, h: u64) -> Interval {
    let ln_h = Interval::ln_biguint(&BigUint::from(h));
    let ri = Interval::from_i64(r as i64);
    (ln_h.scale(2.0) / ri).exp() * (Interval::ONE + ln_h / ri)
}

impl ThresholdSet {
    pub fn compute(
        form: &SparseForm,
        roots: &RootSet,
        h: u64,
        sp: &SiegelParameters,
        psi: Interval,
    ) -> Result<Self, Error> {
        if h == 0 {
            return Err(Error::InvalidParameters("h must be positive"));
        }
        let r = form.degree();
        let s = form.sparsity();
        let ri = Interval::from_i64(r as i64);
        let si = Interval::from_i64(s as i64);
        let ln_r = ri.ln();
        let ln_h = Interval::ln_biguint(&BigUint::from(h));
        let ln_m = roots.ln_mahler();
        let ln_d = Interval::ln_abs_bigint(roots.discriminant());
        let height: BigInt = form.height();
        let ln_height = Interval::ln_biguint(height.magnitude());
        let ln2 = Interval::ln2();

        let ln_b = ln2.scale_int(r as i64) + ln_r * ri / Interval::point(2.0) + ln_m * ri + ln_h
            - ln_d.scale(0.5);
        let ln_r1 = ln_r1(r);
        let ln_2b = ln2 + ln_b;
        let ln_y_g = (Interval::ONE / (ri - Interval::point(2.0)) + Interval::ONE / (ri * ri)) * ln_2b;

        let (ln_y_e, ln_y_w) = if sp.lambda.hi() < r as f64 {
            let gap = ri - sp.lambda;
            let ye = (ln_2b + ln_d.scale(0.5) + sp.lambda * sp.ln_4ea()) / gap;
            let yw = ye + ln_r1 / gap;
            (Some(ye), Some(yw))
        } else {
            (None, None)
        };

        let ln12 = Interval::from_i64(12).ln();
        let ln8 = ln2.scale(3.0);
        let (ln_y_s, ln_y_s_prime) = if r as usize > 2 * s {
            let gap = Interval::from_i64(r as i64 - 2 * s as i64);
            let ys = ((ln12 + psi) * ri + ln_r1.scale(2.0 * s as f64) + ln_h) / gap;
            let s2r = Interval::from_i64((s * s) as i64 * r as i64).ln();
            let ysp = (ln8 * ri + ln_r1 * si + s2r.scale(3.0 * s as f64) + ln_h) / gap;
            (Some(ys), Some(ysp))
        } else {
            (None, None)
        };

        let ln_rs = Interval::from_i64(r as i64 * s as i64).ln();
        let r_over_s = ri / si;
        let ln_k1 = ln2
            + ln_r1
            + ln_rs.scale(2.0)
            + (ln12 + psi) * r_over_s
            + ln_h / si
            + ln_height * (Interval::ONE / ri - Interval::ONE / si);
        let ln_k2 = ln_r1 + ln8 * r_over_s + (si.ln() + ln_h) / si + ln_rs.scale(2.0) - ln_height / ri;

        Ok(ThresholdSet {
            r,
            s,
            h,
            ln_h,
            psi,
            ln_mahler: ln_m,
            ln_height,
            ln_abs_disc: ln_d,
            ln_b,
            ln_r1,
            ln_r2: roots.ln_r2(),
            ln_delta: roots.ln_separation_bound(),
            ln_y_g,
            ln_y_e,
            ln_y_w,
            ln_y_s,
            ln_y_s_prime,
            ln_k1,
            ln_k2,
            c1: c1(r, h),
        })
    }

    /// The small-solution threshold used for classification: `Y_S'` for
    /// straight-line forms with `r >= 4s`, `Y_S` otherwise.
    pub fn ln_small_threshold(&self, straight_line: bool) -> Option<Interval> {
        if straight_line && self.r as usize >= 4 * self.s {
            self.ln_y_s_prime
        } else {
            self.ln_y_s
        }
    }
}

/// Theorem-level counting formulas evaluated without their implicit constants.
#[derive(Clone, Copy, Debug)]
pub struct TheoreticalReport {
    /// `s e^Φ C_1(r, h)`
    pub s_exp_phi_c1: f64,
    /// `s ln s h^{2/r}`, present for straight-line forms with `r >= s ln^3 s`.
    pub s_ln_s_h: Option<f64>,
    /// `sqrt(r s) C_1(r, h)`
    pub sqrt_rs_c1: f64,
}

pub fn theoretical_report(form: &SparseForm, h: u64, phi: Interval) -> TheoreticalReport {
    let r = form.degree() as f64;
    let s = form.sparsity() as f64;
    let c = c1(form.degree(), h).mid();
    let h_2r = libm::pow(h as f64, 2.0 / r);
    let ln_s = libm::log(s);
    let s_ln_s_h = if form.is_straight_line() && r >= s * ln_s * ln_s * ln_s {
        Some(s * ln_s * h_2r)
    } else {
        None
    };
    TheoreticalReport {
        s_exp_phi_c1: s * libm::exp(phi.mid()) * c,
        s_ln_s_h,
        sqrt_rs_c1: libm::sqrt(r * s) * c,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn siegel_example_r3() {
        let sp = SiegelParameters::new(3, Interval::point(2.0).ln(), 0.5, 0.9).unwrap();
        assert!((sp.t.mid() - 0.784_464_540_552_736).abs() < 1e-12);
        assert!((sp.lambda.mid() - 25.495_097_567_963_9).abs() < 1e-9);
        assert!((sp.big_a.mid() - 4.0 * (core::f64::consts::LN_2 + 1.5)).abs() < 1e-12);
        assert!((sp.delta.mid() - 0.172_307_692_307_692).abs() < 1e-12);
        // direct form of δ
        let direct = ((3.0 + 0.81) * sp.t.mid() * sp.t.mid() - 2.0) / 2.0;
        assert!((direct - sp.delta.mid()).abs() < 1e-12);
    }

    #[test]
    fn siegel_rejects_bad_order() {
        assert!(SiegelParameters::new(3, Interval::ZERO, 0.9, 0.5).is_err());
        assert!(SiegelParameters::new(3, Interval::ZERO, 0.5, 1.0).is_err());
    }

    #[test]
    fn r1_at_three() {
        let l = ln_r1(3);
        let exact = 800.0 * libm::pow(libm::log(3.0), 3.0);
        assert!((l.mid() - exact).abs() < 1e-9);
        assert!((l.mid() - 1060.775).abs() < 0.01);
    }

    #[test]
    fn c1_at_h_one() {
        assert!(c1(3, 1).contains(1.0));
        assert!(c1(17, 1).contains(1.0));
    }

    #[test]
    fn first_report_column_for_binomial() {
        let f = SparseForm::from_i64_terms(&[(-2, 0), (1, 3)]).unwrap();
        let p = f.sparsity_profile();
        let rep = theoretical_report(&f, 1, p.phi);
        assert!((rep.s_exp_phi_c1 - libm::exp(1.0 / 3.0)).abs() < 1e-12);
    }
}
