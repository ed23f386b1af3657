//! Certified complex roots of `f(z) = F(z, 1)`.
//!
//! Roots are seeded by a double-precision Aberth iteration started on circles
//! read off the Newton polygon, polished by Aberth steps in truncated dyadic
//! arithmetic, and certified a posteriori: with Weierstrass corrections
//! `W_i = f(z_i) / (a_r prod_{j != i} (z_i - z_j))`, the disks `D(z_i, r|W_i|)`
//! contain the Gershgorin disks of a companion-type matrix whose
//! characteristic polynomial is `f / a_r`, so pairwise disjointness puts
//! exactly one root in each. `f(z_i)` is evaluated exactly.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::dyadic::{DyComplex, Dyadic};
use crate::error::Error;
use crate::forms::SparseForm;
use crate::interval::Interval;
use crate::poly;
use crate::polygon::NewtonPolygon;

#[derive(Clone, Debug)]
pub struct RootDisk {
    pub center: DyComplex,
    /// Upper bound for the log of the radius; `-inf` when the center is a root.
    pub ln_radius: f64,
    /// Enclosure of `ln|α|`.
    pub ln_modulus: Interval,
}

impl RootDisk {
    pub fn center_f64(&self) -> Complex64 {
        let (re, im) = self.center.to_f64_pair();
        Complex64::new(re, im)
    }

    pub fn radius_f64(&self) -> f64 {
        libm::exp(self.ln_radius) * (1.0 + 1e-12)
    }

    /// Enclosure of `ln|α - w|` given an enclosure of `ln|z - w|` for the center `z`.
    fn widen_log_distance(&self, ln_center_dist: Interval) -> Interval {
        let rad = Interval::point(self.ln_radius);
        let lo = ln_center_dist.ln_sub_exp(rad).lo();
        let hi = ln_center_dist.ln_add_exp(rad).hi();
        Interval::new(lo, hi)
    }
}

#[derive(Clone, Debug)]
pub struct RootSet {
    disks: Vec<RootDisk>,
    precision: u32,
    degree: u32,
    ln_mahler: Interval,
    exact_mahler: Option<BigUint>,
    discriminant: BigInt,
    ln_delta: Interval,
}

/// Closest root to a point and the enclosure of the distance to the set.
#[derive(Clone, Copy, Debug)]
pub struct Distance {
    pub nearest: usize,
    pub ln_value: Interval,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    FullSet,
    MignotteSector,
    User,
}

/// A subset `S'` of the roots with a claimed factor `R` such that
/// `d(S', ξ) <= R d(S, ξ)` for real `ξ`.
#[derive(Clone, Debug)]
pub struct AmplifierSubset {
    pub members: Vec<usize>,
    pub ln_factor: Interval,
    pub provenance: Provenance,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AmplificationMeasurement {
    /// Upper bound for `max ln(d(S', ξ) / d(S, ξ))` over the evaluated points.
    pub ln_max_ratio: f64,
    pub evaluated: usize,
    pub skipped: usize,
}

impl AmplificationMeasurement {
    pub fn max_ratio(&self) -> f64 {
        libm::exp(self.ln_max_ratio)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Membership {
    Inside,
    Outside,
    Unknown,
}

const F64_SLACK: f64 = 1e-12;

impl RootSet {
    /// Certified roots with radius at most `2^-precision * max(1, |center|)`.
    pub fn find(form: &SparseForm, precision: u32) -> Result<Self, Error> {
        let coeffs = form.dense_coefficients();
        let disc = poly::discriminant(&coeffs);
        if disc.is_zero() {
            return Err(Error::NotSquarefree);
        }
        let seeds = seed_roots(form, &coeffs);
        let mut z: Vec<DyComplex> = seeds
            .iter()
            .map(|c| DyComplex::from_f64(c.re, c.im).unwrap_or_else(DyComplex::zero))
            .collect();
        let dcoeffs = poly::derivative(&coeffs);
        let target = precision as i64 + 24;
        let mut wp = precision as u64 + 64;
        for _ in 0..5 {
            refine(&coeffs, &dcoeffs, &mut z, wp, target);
            if let Some(disks) = certify(&coeffs, &z, precision) {
                return Ok(RootSet::assemble(form, disks, disc, precision));
            }
            wp *= 2;
        }
        Err(Error::PrecisionExhausted { bits: precision })
    }

    fn assemble(form: &SparseForm, disks: Vec<RootDisk>, disc: BigInt, precision: u32) -> Self {
        let s = form.sparsity();
        let r = form.degree();
        let a0 = form.coeff(0).magnitude().clone();
        let ar = form.coeff(s).magnitude().clone();
        let mut ln_m = Interval::ln_biguint(&ar);
        for d in &disks {
            ln_m = ln_m + d.ln_modulus.max(Interval::ZERO);
        }
        let exact_mahler = if disks.iter().all(|d| d.ln_modulus.lo() > 0.0) {
            Some(a0)
        } else if disks.iter().all(|d| d.ln_modulus.hi() < 0.0) {
            Some(ar)
        } else {
            None
        };
        if let Some(m) = &exact_mahler {
            ln_m = Interval::ln_biguint(m);
        }
        let rr = r as i64;
        let ln_r = Interval::from_i64(rr).ln();
        let ln_delta = Interval::ln3().scale(0.5) + Interval::ln_abs_bigint(&disc).scale(0.5)
            - Interval::ln2()
            - ln_r * (Interval::from_i64(rr + 2) / Interval::point(2.0))
            - ln_m.scale_int(rr - 1);
        RootSet {
            disks,
            precision,
            degree: r,
            ln_mahler: ln_m,
            exact_mahler,
            discriminant: disc,
            ln_delta,
        }
    }

    pub fn disks(&self) -> &[RootDisk] {
        &self.disks
    }

    pub fn len(&self) -> usize {
        self.disks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.disks.is_empty()
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Enclosure of `ln M`.
    pub fn ln_mahler(&self) -> Interval {
        self.ln_mahler
    }

    /// `M` when it is certified to equal `|a_0|` or `|a_r|`.
    pub fn exact_mahler(&self) -> Option<&BigUint> {
        self.exact_mahler.as_ref()
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.discriminant
    }

    /// Enclosure of `ln Δ` with `Δ = sqrt(3|D|) / (2 r^{(r+2)/2} M^{r-1})`.
    pub fn ln_separation_bound(&self) -> Interval {
        self.ln_delta
    }

    /// Enclosure of `ln R_2` with `R_2 = 1 + M r / (2Δ)`.
    pub fn ln_r2(&self) -> Interval {
        let t = self.ln_mahler + Interval::from_i64(self.degree as i64).ln()
            - Interval::ln2()
            - self.ln_delta;
        Interval::ZERO.ln_add_exp(t)
    }

    /// Enclosures of `ln|ξ - α_i|` for `ξ = num / den`.
    pub fn ln_distances(&self, num: &BigInt, den: &BigInt) -> Vec<Interval> {
        assert!(!den.is_zero(), "distance to x/0");
        let xi = DyComplex::real(Dyadic::from_bigint(num.clone()));
        let ln_den = Interval::ln_abs_bigint(den);
        self.disks
            .iter()
            .map(|d| {
                let diff = &xi - &d.center.mul_bigint(den);
                d.widen_log_distance(diff.ln_abs() - ln_den)
            })
            .collect()
    }

    /// `d(S, num / den)` in log space, with the index of the nearest root.
    pub fn distance(&self, num: &BigInt, den: &BigInt) -> Distance {
        nearest_of(&self.ln_distances(num, den), None)
    }

    /// `d(S', num / den)` restricted to `members`.
    pub fn distance_within(&self, members: &[usize], num: &BigInt, den: &BigInt) -> Distance {
        nearest_of(&self.ln_distances(num, den), Some(members))
    }

    fn sector_membership(&self, i: usize, bisector: f64, theta: f64) -> Membership {
        if theta >= 1.0 {
            return Membership::Inside;
        }
        let d = &self.disks[i];
        let c = d.center_f64();
        let modulus = c.norm();
        let rho = d.radius_f64() + 4.0 * f64::EPSILON * modulus;
        if modulus <= rho * (1.0 + F64_SLACK) {
            return Membership::Unknown;
        }
        let spread = libm::asin((rho / modulus).min(1.0)) + F64_SLACK;
        let mut delta = libm::atan2(c.im, c.re) - bisector;
        while delta > PI {
            delta -= 2.0 * PI;
        }
        while delta < -PI {
            delta += 2.0 * PI;
        }
        let delta = libm::fabs(delta);
        let half = PI * theta;
        if delta + spread < half {
            Membership::Inside
        } else if delta - spread > half {
            Membership::Outside
        } else {
            Membership::Unknown
        }
    }

    /// Number of roots in the sector of central angle `2π θ` bisected by the
    /// ray at angle `bisector`.
    pub fn sector_count(&self, theta: f64, bisector: f64) -> Result<usize, Error> {
        let mut n = 0;
        for i in 0..self.len() {
            match self.sector_membership(i, bisector, theta) {
                Membership::Inside => n += 1,
                Membership::Outside => {}
                Membership::Unknown => return Err(Error::AmbiguousMembership { root: i }),
            }
        }
        Ok(n)
    }

    /// Roots in the two sectors of central angle `4π/r` around the real axis
    /// or in the disk of radius `Δ`, with factor `R_2`.
    ///
    /// Roots whose membership cannot be decided are included: adding roots
    /// to the subset only lowers `d(S_2, ξ)`.
    pub fn build_s2(&self) -> AmplifierSubset {
        let theta = 2.0 / self.degree as f64;
        let mut members = Vec::new();
        for i in 0..self.len() {
            let disk = match self.disks[i].ln_modulus.certain_cmp(&self.ln_delta) {
                Some(core::cmp::Ordering::Less) => Membership::Inside,
                Some(_) => Membership::Outside,
                None => Membership::Unknown,
            };
            let m = [
                self.sector_membership(i, 0.0, theta),
                self.sector_membership(i, PI, theta),
                disk,
            ];
            if m.iter().any(|&x| x != Membership::Outside) {
                members.push(i);
            }
        }
        if members.is_empty() {
            let best = (0..self.len())
                .min_by(|&a, &b| {
                    let ia = libm::fabs(self.disks[a].center_f64().im);
                    let ib = libm::fabs(self.disks[b].center_f64().im);
                    ia.partial_cmp(&ib).unwrap()
                })
                .unwrap();
            members.push(best);
        }
        AmplifierSubset {
            members,
            ln_factor: self.ln_r2(),
            provenance: Provenance::MignotteSector,
        }
    }

    pub fn full_subset(&self) -> AmplifierSubset {
        AmplifierSubset {
            members: (0..self.len()).collect(),
            ln_factor: Interval::ZERO,
            provenance: Provenance::FullSet,
        }
    }

    /// `max d(S', ξ) / d(S, ξ)` over the given points, as an upper bound.
    /// Points where `d(S, ξ)` may vanish are skipped.
    pub fn amplification_factor(
        &self,
        sub: &AmplifierSubset,
        xis: &[(BigInt, BigInt)],
    ) -> AmplificationMeasurement {
        assert!(!sub.members.is_empty(), "empty amplifier subset");
        let mut worst = 0.0f64;
        let mut evaluated = 0;
        let mut skipped = 0;
        for (num, den) in xis {
            let ds = self.ln_distances(num, den);
            let all = nearest_of(&ds, None);
            if all.ln_value.lo() == f64::NEG_INFINITY {
                skipped += 1;
                continue;
            }
            evaluated += 1;
            if sub.members.contains(&all.nearest) {
                continue;
            }
            let part = nearest_of(&ds, Some(&sub.members));
            worst = worst.max(part.ln_value.hi() - all.ln_value.lo());
        }
        AmplificationMeasurement {
            ln_max_ratio: worst,
            evaluated,
            skipped,
        }
    }
}

fn nearest_of(ds: &[Interval], members: Option<&[usize]>) -> Distance {
    let mut best: Option<usize> = None;
    let mut lo = f64::INFINITY;
    let mut hi = f64::INFINITY;
    let idx: Vec<usize> = match members {
        Some(m) => m.to_vec(),
        None => (0..ds.len()).collect(),
    };
    for &i in &idx {
        let d = ds[i];
        lo = lo.min(d.lo());
        hi = hi.min(d.hi());
        match best {
            None => best = Some(i),
            Some(b) => {
                let (mb, mi) = (ds[b].mid(), d.mid());
                if mi < mb || (mi == mb && i < b) {
                    best = Some(i);
                }
            }
        }
    }
    Distance {
        nearest: best.expect("no roots"),
        ln_value: Interval::new(lo, hi),
    }
}

fn bigint_to_f64_scaled(n: &BigInt, shift: i64) -> f64 {
    Dyadic::from_bigint(n.clone()).shl(-shift).to_f64()
}

/// Double-precision starting points: Aberth iteration from circles whose radii
/// are the exponentials of the Newton polygon slopes.
fn seed_roots(form: &SparseForm, coeffs: &[BigInt]) -> Vec<Complex64> {
    let r = coeffs.len() - 1;
    let max_bits = coeffs.iter().map(|c| c.bits()).max().unwrap_or(0) as i64;
    let shift = (max_bits - 900).max(0);
    let cf: Vec<f64> = coeffs.iter().map(|c| bigint_to_f64_scaled(c, shift)).collect();
    let rev: Vec<f64> = cf.iter().rev().copied().collect();

    let polygon = NewtonPolygon::build(form);
    let mut z = Vec::with_capacity(r);
    for (k, slope) in polygon.slopes().iter().enumerate() {
        let rho = libm::exp(slope.value().mid().clamp(-600.0, 600.0));
        let w = slope.run as usize;
        let offset = 0.4 + 0.7 * k as f64;
        for j in 0..w {
            let ang = 2.0 * PI * (j as f64 + 0.5) / w as f64 + offset;
            z.push(Complex64::from_polar(rho, ang));
        }
    }
    debug_assert_eq!(z.len(), r);

    let newton = |x: Complex64| -> Complex64 {
        let n = if x.norm() <= 1.0 {
            let (p, dp) = poly::eval_with_derivative(&cf, x);
            if p == Complex64::new(0.0, 0.0) {
                return Complex64::new(0.0, 0.0);
            }
            p / dp
        } else {
            // f'/f = w (r - w g'(w)/g(w)) with w = 1/z and g the reversed polynomial.
            let w = x.inv();
            let (g, dg) = poly::eval_with_derivative(&rev, w);
            if g == Complex64::new(0.0, 0.0) {
                return Complex64::new(0.0, 0.0);
            }
            (w * (Complex64::new(r as f64, 0.0) - w * dg / g)).inv()
        };
        if n.re.is_finite() && n.im.is_finite() {
            n
        } else {
            Complex64::new(0.0, 0.0)
        }
    };

    let mut frozen = vec![false; r];
    for _ in 0..800 {
        let mut done = true;
        for i in 0..r {
            if frozen[i] {
                continue;
            }
            let n = newton(z[i]);
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..r {
                if j != i {
                    let d = z[i] - z[j];
                    if d.norm_sqr() > 0.0 {
                        s += d.inv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - n * s;
            let step = if denom.norm_sqr() > 0.0 { n / denom } else { n };
            if !(step.re.is_finite() && step.im.is_finite()) {
                continue;
            }
            z[i] -= step;
            if step.norm() <= 1e-15 * z[i].norm().max(1e-300) {
                frozen[i] = true;
            } else {
                done = false;
            }
        }
        if done {
            break;
        }
    }
    z
}

/// Aberth iteration in truncated dyadic arithmetic until every step is below
/// `2^-target` relative to `max(1, |z|)`.
fn refine(coeffs: &[BigInt], dcoeffs: &[BigInt], z: &mut [DyComplex], wp: u64, target: i64) {
    let r = z.len();
    let one = DyComplex::one();
    for _ in 0..200 {
        let mut worst = i64::MIN;
        for i in 0..r {
            let p = poly::eval_dyadic_truncated(coeffs, &z[i], wp);
            if p.is_zero() {
                continue;
            }
            let dp = poly::eval_dyadic_truncated(dcoeffs, &z[i], wp);
            if dp.is_zero() {
                // Nudge off a critical point.
                let eps = Dyadic::new(BigInt::one(), z[i].magnitude().max(0) - 40);
                z[i].im = &z[i].im + &eps;
                worst = i64::MAX;
                continue;
            }
            let n = p.div_approx(&dp, wp);
            let mut s = DyComplex::zero();
            for j in 0..r {
                if j != i {
                    let d = &z[i] - &z[j];
                    if !d.is_zero() {
                        s = &s + &one.div_approx(&d, wp);
                    }
                }
            }
            let denom = (&one - &(&n * &s)).truncate(wp);
            let step = if denom.is_zero() {
                n
            } else {
                n.div_approx(&denom, wp)
            };
            z[i] = (&z[i] - &step).truncate(wp);
            let rel = step.magnitude() - z[i].magnitude().max(0);
            worst = worst.max(rel);
        }
        if worst < -target {
            return;
        }
    }
}

fn certify(coeffs: &[BigInt], z: &[DyComplex], precision: u32) -> Option<Vec<RootDisk>> {
    let r = z.len();
    let lead = coeffs.last().unwrap();
    let ln_lead = Interval::ln_abs_bigint(lead);
    let ln_r = Interval::from_i64(r as i64).ln();
    let mut dist = vec![vec![Interval::ZERO; r]; r];
    for i in 0..r {
        for j in i + 1..r {
            let d = &z[i] - &z[j];
            if d.is_zero() {
                return None;
            }
            let l = d.ln_abs();
            dist[i][j] = l;
            dist[j][i] = l;
        }
    }
    let limit = -(precision as f64) * core::f64::consts::LN_2;
    let mut disks = Vec::with_capacity(r);
    for i in 0..r {
        let fz = poly::eval_dyadic(coeffs, &z[i]);
        let ln_mod_center = z[i].ln_abs();
        let ln_radius = if fz.is_zero() {
            f64::NEG_INFINITY
        } else {
            let mut ln_w = fz.ln_abs() - ln_lead;
            for j in 0..r {
                if j != i {
                    ln_w = ln_w - dist[i][j];
                }
            }
            (ln_r + ln_w).hi()
        };
        let allowed = limit + ln_mod_center.lo().max(0.0);
        if ln_radius > allowed - 1e-9 {
            return None;
        }
        let rad = Interval::point(ln_radius);
        let ln_modulus = Interval::new(
            ln_mod_center.ln_sub_exp(rad).lo(),
            ln_mod_center.ln_add_exp(rad).hi(),
        );
        disks.push(RootDisk {
            center: z[i].clone(),
            ln_radius,
            ln_modulus,
        });
    }
    for i in 0..r {
        for j in i + 1..r {
            let sum = Interval::point(disks[i].ln_radius).ln_add_exp(Interval::point(disks[j].ln_radius));
            if !(dist[i][j].lo() > sum.hi()) {
                return None;
            }
        }
    }
    Some(disks)
}
