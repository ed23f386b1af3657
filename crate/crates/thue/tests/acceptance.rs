//! Acceptance suite. Each criterion prints one `PASS`/`FAIL` line; the
//! process exits nonzero if any enforced criterion fails.
//!
//! `cargo test --test acceptance -- 3 7` runs only criteria 3 and 7.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sparse_thue::corpus::standard_corpus;
use sparse_thue::parallel::{available_workers, enumerate_rows};
use sparse_thue::verify::{verify_form, VerifyConfig};
use sparse_thue_core::analysis::Analysis;
use sparse_thue_core::bounds::{ln_r1, SiegelParameters, ThresholdSet};
use sparse_thue_core::census::checks::CheckKind;
use sparse_thue_core::census::enumerate::RowEnumerator;
use sparse_thue_core::census::gap::{gap_bound_i, gap_bound_i_ln, gap_step_holds};
use sparse_thue_core::census::reports::{doubling_identity_holds, imprimitive_scaling_holds};
use sparse_thue_core::census::SolutionClass;
use sparse_thue_core::determinants::{
    cofactors, derivative_at, derivative_combination_sides, falling_factorial_det, large_derivative_witness,
    vandermonde_d, DerivativeSide,
};
use sparse_thue_core::{
    AnalysisParams, DyComplex, Dyadic, Error, Interval, NewtonPolygon, RootSet, SolutionCensus, SparseForm,
};

struct Outcome {
    id: &'static str,
    title: &'static str,
    pass: bool,
    /// A failing criterion only fails the run when enforced.
    enforced: bool,
    detail: String,
}

impl Outcome {
    fn new(id: &'static str, title: &'static str, pass: bool, detail: String) -> Self {
        Outcome {
            id,
            title,
            pass,
            enforced: true,
            detail,
        }
    }
}

fn secs(d: Duration) -> f64 {
    d.as_secs_f64()
}

// ---------------------------------------------------------------------------
// independent oracles

fn falling(e: i128, h: usize) -> i128 {
    (0..h as i128).map(|k| e - k).product()
}

/// Leibniz expansion; fine for the tiny matrices used here.
fn det_leibniz(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = 0i128;
    permute(&mut perm, 0, m, &mut total);
    total
}

fn permute(p: &mut Vec<usize>, k: usize, m: &[Vec<i128>], total: &mut i128) {
    let n = p.len();
    if k == n {
        let mut inv = 0;
        for i in 0..n {
            for j in i + 1..n {
                if p[i] > p[j] {
                    inv += 1;
                }
            }
        }
        let prod: i128 = (0..n).map(|i| m[i][p[i]]).product();
        *total += if inv % 2 == 0 { prod } else { -prod };
        return;
    }
    for i in k..n {
        p.swap(k, i);
        permute(p, k + 1, m, total);
        p.swap(k, i);
    }
}

/// `E_u`: signed minor of the falling-factorial matrix of `b` without row `u`.
fn cofactor_oracle(b: &[u64], u: usize) -> i128 {
    let t = b.len();
    let rows: Vec<Vec<i128>> = (0..=t)
        .filter(|&h| h != u)
        .map(|h| b.iter().map(|&c| falling(c as i128, h)).collect())
        .collect();
    let d = if t == 0 { 1 } else { det_leibniz(&rows) };
    if (t + u) % 2 == 1 {
        -d
    } else {
        d
    }
}

/// `|F(x, y)| <= h` by a double-precision screen with a rigorous error
/// allowance, then exact evaluation for anything the screen cannot reject.
struct NaiveOracle {
    terms: Vec<(f64, i32, BigInt, u32)>,
    r: u32,
    slack: f64,
    h: u64,
}

impl NaiveOracle {
    fn new(form: &SparseForm, h: u64) -> Self {
        let r = form.degree();
        let terms = form
            .terms()
            .iter()
            .map(|t| (t.coeff.to_string().parse::<f64>().unwrap(), t.exp as i32, t.coeff.clone(), t.exp))
            .collect::<Vec<_>>();
        let slack = (2.0 * r as f64 + terms.len() as f64 + 8.0) * f64::EPSILON;
        NaiveOracle { terms, r, slack, h }
    }

    fn exact(&self, x: i64, y: i64) -> BigInt {
        let (bx, by) = (BigInt::from(x), BigInt::from(y));
        self.terms
            .iter()
            .map(|(_, _, c, e)| c * num_traits::pow(bx.clone(), *e as usize) * num_traits::pow(by.clone(), (self.r - e) as usize))
            .sum()
    }

    fn is_solution(&self, x: i64, y: i64) -> bool {
        let (xf, yf) = (x as f64, y as f64);
        let mut sum = 0.0;
        let mut mag = 0.0;
        for (c, e, _, _) in &self.terms {
            let t = c * xf.powi(*e) * yf.powi(self.r as i32 - e);
            sum += t;
            mag += t.abs();
        }
        if sum.abs() - mag * self.slack > self.h as f64 + 1.0 {
            return false;
        }
        self.exact(x, y).magnitude() <= &num_bigint::BigUint::from(self.h)
    }

    fn row(&self, y: i64, bound: i64, out: &mut Vec<(i64, i64)>) {
        for x in -bound..=bound {
            if self.is_solution(x, y) {
                out.push((x, y));
            }
        }
    }

    fn all(&self, bound: i64) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        for y in -bound..=bound {
            self.row(y, bound, &mut out);
        }
        out
    }
}

/// Exact `f^(u)(z)` by Horner on the dense derivative coefficients.
fn derivative_horner(form: &SparseForm, u: u32, z: &DyComplex) -> DyComplex {
    let r = form.degree();
    let mut dense = vec![BigInt::from(0); r as usize + 1];
    for t in form.terms() {
        dense[t.exp as usize] = t.coeff.clone();
    }
    let mut acc = DyComplex::zero();
    for k in (u..=r).rev() {
        let c = &dense[k as usize] * BigInt::from(falling(k as i128, u as usize));
        acc = &(&acc * z) + &DyComplex::real(Dyadic::from_bigint(c));
    }
    acc
}

// ---------------------------------------------------------------------------
// random forms

fn random_form(rng: &mut ChaCha8Rng, r_max: u32, max_inner: usize, coeff_max: i64, pm1: bool) -> SparseForm {
    loop {
        let r = rng.gen_range(3..=r_max);
        let inner = rng.gen_range(0..=max_inner.min(r as usize - 1));
        let mut exps = vec![0u32];
        let picked: BTreeSet<u32> = sample(rng, r as usize - 1, inner).into_iter().map(|i| i as u32 + 1).collect();
        exps.extend(picked);
        exps.push(r);
        let terms: Vec<(i64, u32)> = exps
            .iter()
            .map(|&e| {
                let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
                let mag = if pm1 { 1 } else { rng.gen_range(1..=coeff_max) };
                (sign * mag, e)
            })
            .collect();
        let f = SparseForm::from_i64_terms(&terms).unwrap();
        if !matches!(RootSet::find(&f, 64), Err(Error::NotSquarefree)) {
            return f;
        }
    }
}

fn random_straight_line(rng: &mut ChaCha8Rng) -> SparseForm {
    loop {
        let r = rng.gen_range(3..=30u32);
        let inner = rng.gen_range(0..=4usize.min(r as usize - 1));
        let a0 = rng.gen_range(1..=60i64);
        let ar = rng.gen_range(1..=60i64);
        let picked: BTreeSet<u32> = sample(rng, r as usize - 1, inner).into_iter().map(|i| i as u32 + 1).collect();
        let mut terms = vec![(if rng.gen_bool(0.5) { a0 } else { -a0 }, 0u32)];
        for &e in &picked {
            // |a_i| <= |a_r|^{e/r} |a_0|^{1 - e/r}
            let cap = ((ar as f64).ln() * e as f64 / r as f64 + (a0 as f64).ln() * (r - e) as f64 / r as f64).exp();
            let mag = rng.gen_range(1..=(cap.floor() as i64).max(1));
            terms.push((if rng.gen_bool(0.5) { mag } else { -mag }, e));
        }
        terms.push((if rng.gen_bool(0.5) { ar } else { -ar }, r));
        let f = SparseForm::from_i64_terms(&terms).unwrap();
        if f.is_straight_line() && !matches!(RootSet::find(&f, 64), Err(Error::NotSquarefree)) {
            return f;
        }
    }
}

fn roots_with_ladder(form: &SparseForm) -> Result<RootSet, Error> {
    let mut p = 96;
    loop {
        match RootSet::find(form, p) {
            Err(e) if e.is_retryable() && p < 2048 => p *= 2,
            other => return other,
        }
    }
}

// ---------------------------------------------------------------------------
// criteria

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut cases = 0usize;
    let mut mismatches = Vec::new();
    for t in 0..=4usize {
        for combo in sample_subsets(13, t) {
            let b: Vec<u64> = combo.iter().map(|&x| x as u64).collect();
            let core_cof = cofactors(&b);
            let oracle_cof: Vec<i128> = (0..=t).map(|u| cofactor_oracle(&b, u)).collect();
            let cof_ok = core_cof.iter().zip(&oracle_cof).all(|(c, o)| c == &BigInt::from(*o));
            for e in 0..=12u64 {
                cases += 1;
                let mut cols: Vec<i128> = b.iter().map(|&x| x as i128).collect();
                cols.push(e as i128);
                let m: Vec<Vec<i128>> = (0..=t).map(|h| cols.iter().map(|&c| falling(c, h)).collect()).collect();
                let brute = BigInt::from(det_leibniz(&m));
                let d = vandermonde_d(&b, e);
                let expansion: BigInt = core_cof
                    .iter()
                    .enumerate()
                    .map(|(u, c)| c * BigInt::from(falling(e as i128, u)))
                    .sum();
                if !cof_ok || expansion != d || d != brute || falling_factorial_det(&b, e) != brute {
                    mismatches.push((b.clone(), e));
                }
            }
        }
    }
    let el = start.elapsed();
    let pass = mismatches.is_empty() && el < Duration::from_secs(10);
    Outcome::new(
        "1",
        "determinant identity",
        pass,
        format!("{cases} cases, {} mismatches, {:.2} s (limit 10 s)", mismatches.len(), secs(el)),
    )
}

/// Increasing `k`-subsets of `0..n`.
fn sample_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(n: usize, k: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in from..n {
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let mut mismatches = 0usize;
    let mut evaluations = 0usize;
    for _ in 0..200 {
        let deg = rng.gen_range(1..=30u32);
        let count = rng.gen_range(1..=6usize.min(deg as usize + 1));
        let mut exps: BTreeSet<u32> = sample(&mut rng, deg as usize, count - 1).into_iter().map(|i| i as u32).collect();
        exps.insert(deg);
        let terms: Vec<(BigInt, u32)> = exps
            .iter()
            .map(|&e| {
                let c = rng.gen_range(1..=50i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
                (BigInt::from(c), e)
            })
            .collect();
        let t = rng.gen_range(1..=5usize);
        let b: Vec<u64> = sample(&mut rng, 31, t).into_iter().map(|x| x as u64).collect();
        let e_oracle: Vec<BigInt> = (0..=t).map(|u| BigInt::from(cofactor_oracle(&b, u))).collect();
        let points = deg as i64 + 2;
        for j in 0..points {
            let z = BigRational::new(BigInt::from(j - points / 2), BigInt::from(3));
            let (lhs, rhs) = derivative_combination_sides(&terms, &b, &z);
            // z^u P^(u)(z) = sum_i p_i (e_i)_u z^{e_i}
            let mut oracle = BigRational::from_integer(BigInt::from(0));
            for (p, ex) in &terms {
                let zp = num_traits::pow(z.clone(), *ex as usize);
                let weight: BigInt = e_oracle
                    .iter()
                    .enumerate()
                    .map(|(u, eu)| eu * BigInt::from(falling(*ex as i128, u)))
                    .sum();
                oracle += zp * BigRational::from_integer(p * weight);
            }
            evaluations += 1;
            if lhs != rhs || lhs != oracle {
                mismatches += 1;
            }
        }
    }
    let el = start.elapsed();
    Outcome::new(
        "2",
        "derivative-combination polynomial identity",
        mismatches == 0 && el < Duration::from_secs(30),
        format!("200 polynomials, {evaluations} exact evaluations, {mismatches} mismatches, {:.2} s (limit 30 s)", secs(el)),
    )
}

fn witness_failures(form: &SparseForm) -> (usize, usize, Vec<String>) {
    let polygon = NewtonPolygon::build(form);
    let psi = form.sparsity_profile().psi;
    let mut precision = 96;
    let mut roots = roots_with_ladder(form).expect("roots certify");
    let mut witnesses = 0;
    let mut failures = Vec::new();
    let mut i = 0;
    let mut side_idx = 0;
    let sides = [DerivativeSide::Upper, DerivativeSide::Lower];
    while i < roots.len() {
        let side = sides[side_idx];
        match large_derivative_witness(form, &polygon, &roots, i, side, psi) {
            Ok(w) => {
                let exact = derivative_at(form, w.order as u32, &roots.disks()[i].center);
                let horner = derivative_horner(form, w.order as u32, &roots.disks()[i].center);
                if exact != horner {
                    failures.push(format!("root {i}: derivative routes disagree"));
                } else if !(w.ln_achieved.lo() >= w.ln_lower_bound.hi()) {
                    failures.push(format!("root {i}: witness below bound"));
                }
                witnesses += 1;
            }
            Err(e) if e.is_retryable() && precision < 2048 => {
                precision *= 2;
                roots = RootSet::find(form, precision).expect("roots certify");
                continue;
            }
            Err(e) => failures.push(format!("root {i} {side:?}: {e}")),
        }
        side_idx += 1;
        if side_idx == 2 {
            side_idx = 0;
            i += 1;
        }
    }
    (roots.len(), witnesses, failures)
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let mut forms = Vec::new();
    for _ in 0..50 {
        forms.push(random_form(&mut rng, 24, 4, 1, true));
    }
    for _ in 0..20 {
        forms.push(random_form(&mut rng, 24, 4, 40, false));
    }
    let (mut roots, mut witnesses, mut failures) = (0, 0, Vec::new());
    for f in &forms {
        let (n, w, fails) = witness_failures(f);
        roots += n;
        witnesses += w;
        failures.extend(fails.into_iter().map(|s| format!("{f}: {s}")));
    }
    Outcome::new(
        "3",
        "large-derivative witnesses",
        failures.is_empty(),
        format!(
            "70 forms, {roots} roots, {witnesses} witnesses on both sides, {} failures{}",
            failures.len(),
            failures.first().map(|s| format!(" (first: {s})")).unwrap_or_default()
        ),
    )
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let mut failures = 0usize;
    let mut checked = 0usize;
    for _ in 0..200 {
        let f = random_straight_line(&mut rng);
        let polygon = NewtonPolygon::build(&f);
        if polygon.edge_count() != 1 {
            failures += 1;
            continue;
        }
        let sigma = polygon.slopes()[0].value();
        let s = f.sparsity();
        let a0: f64 = f.coeff(0).to_string().parse::<f64>().unwrap().abs();
        let ar: f64 = f.coeff(s).to_string().parse::<f64>().unwrap().abs();
        let sigma_f64 = (a0.ln() - ar.ln()) / f.degree() as f64;
        if (sigma.mid() - sigma_f64).abs() > 1e-12 {
            failures += 1;
        }
        let roots = roots_with_ladder(&f).expect("roots certify");
        let ln2 = Interval::ln2();
        for d in roots.disks() {
            checked += 1;
            let lower = sigma - ln2;
            let upper = sigma + ln2;
            if !(d.ln_modulus.certainly_gt(&lower) && d.ln_modulus.certainly_lt(&upper)) {
                failures += 1;
            }
        }
    }
    Outcome::new(
        "4",
        "annulus for straight-line forms",
        failures == 0,
        format!("200 forms, {checked} roots, {failures} failures"),
    )
}

fn xi_grid(roots: &RootSet, rng: &mut ChaCha8Rng) -> Vec<(BigInt, BigInt)> {
    const DEN_BITS: i32 = 24;
    let scale = 2f64.powi(DEN_BITS);
    let den = BigInt::from(1u64 << DEN_BITS);
    let rho = roots
        .disks()
        .iter()
        .map(|d| d.center_f64().norm())
        .fold(1.0f64, f64::max);
    let mut pts = BTreeSet::new();
    let span = 2.0 * rho + 1.0;
    for k in 0..600 {
        let x = -span + 2.0 * span * k as f64 / 599.0;
        pts.insert((x * scale).round() as i64);
    }
    let centers: Vec<f64> = roots.disks().iter().map(|d| d.center_f64().re).collect();
    let mut k = 0usize;
    while pts.len() < 1000 {
        let c = centers[k % centers.len()];
        let off = 2f64.powf(-rng.gen_range(0.0..18.0)) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        pts.insert(((c + off) * scale).round() as i64);
        k += 1;
    }
    pts.into_iter().map(|n| (BigInt::from(n), den.clone())).collect()
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let (mut failures, mut points, mut pairs) = (0usize, 0usize, 0usize);
    let mut worst = f64::NEG_INFINITY;
    for k in 0..50 {
        let f = random_form(&mut rng, 20, 4, if k % 2 == 0 { 1 } else { 25 }, k % 2 == 0);
        let roots = roots_with_ladder(&f).expect("roots certify");
        let s2 = roots.build_s2();
        let ln_r2 = roots.ln_r2();
        let grid = xi_grid(&roots, &mut rng);
        points += grid.len();
        let m = roots.amplification_factor(&s2, &grid);
        if !(m.ln_max_ratio <= ln_r2.lo()) {
            failures += 1;
        }
        // double-precision route
        let centers: Vec<_> = roots.disks().iter().map(|d| d.center_f64()).collect();
        for (num, den) in &grid {
            let xi = num.to_string().parse::<f64>().unwrap() / den.to_string().parse::<f64>().unwrap();
            let dist = |i: usize| ((centers[i].re - xi).powi(2) + centers[i].im.powi(2)).sqrt();
            let all = (0..centers.len()).map(dist).fold(f64::INFINITY, f64::min);
            let sub = s2.members.iter().map(|&i| dist(i)).fold(f64::INFINITY, f64::min);
            if all > 0.0 {
                let ratio = (sub / all).ln();
                worst = worst.max(ratio - ln_r2.mid());
                if ratio > ln_r2.hi() + 1e-9 {
                    failures += 1;
                }
            }
        }
        let two_delta = Interval::ln2() + roots.ln_separation_bound();
        for i in 0..centers.len() {
            for j in 0..i {
                pairs += 1;
                let d = roots.disks();
                let gap = (centers[i] - centers[j]).norm() - d[i].radius_f64() - d[j].radius_f64();
                if !(gap > 0.0 && gap.ln() > two_delta.hi()) {
                    failures += 1;
                }
            }
        }
    }
    Outcome::new(
        "5",
        "amplification d(S2, xi) <= R2 d(S, xi) and separation > 2 Delta",
        failures == 0,
        format!(
            "50 forms, {points} grid points, {pairs} root pairs, {failures} failures, max ln(ratio / R2) = {worst:.3}"
        ),
    )
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let (mut violations, mut failures, mut met, mut checked) = (0usize, 0usize, 0usize, 0usize);
    let mut total = 0usize;
    for e in standard_corpus() {
        let cfg = VerifyConfig {
            h: 1000,
            bound: 100_000,
            params: AnalysisParams::default(),
            ceiling: 2048,
            kinds: &[CheckKind::LewisMahler],
            workers: available_workers(),
        };
        let s = verify_form(&e.form, &cfg);
        violations += s.violations;
        failures += s.failures.len();
        total += s.counts.as_ref().map_or(0, |c| c.total);
        for r in &s.reports {
            met += r.hypotheses_met;
            checked += r.checked;
        }
    }
    let el = start.elapsed();
    Outcome::new(
        "6",
        "Lewis-Mahler on the bundled corpus",
        violations == 0 && failures == 0 && el < Duration::from_secs(300),
        format!(
            "20 forms, h = 1000, box 1e5, {total} solutions, {met} in hypothesis, {checked} inequalities, {violations} violations, {failures} unresolved, {:.1} s (limit 300 s)",
            secs(el)
        ),
    )
}

fn criterion_7() -> Outcome {
    let bound = gap_bound_i(1.0, 2.0, 1, 4.0, 65536.0);
    let chain = [4.0f64, 16.0, 256.0, 65536.0];
    let steps_ok = chain.windows(2).all(|w| gap_step_holds(0.0, 2.0, w[0].ln(), w[1].ln()));
    let attained = bound == Ok(chain.len() as u64) && steps_ok;

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let (mut exceeded, mut tight) = (0usize, 0usize);
    for _ in 0..10_000 {
        let gamma = rng.gen_range(2.0..4.0);
        let (ln_beta, kappa) = if rng.gen_bool(0.5) {
            (-rng.gen_range(0.0..3.0), 1)
        } else {
            (rng.gen_range(0.01..3.0), 2)
        };
        // need ln A_1 + ln β / (κ(γ - 1)) > 0
        let floor = (-ln_beta / (kappa as f64 * (gamma - 1.0))).max(0.0);
        let ln_a1 = floor + rng.gen_range(0.05..4.0);
        let ln_b1 = ln_a1 * rng.gen_range(1.0f64..1e6);
        let b = gap_bound_i_ln(ln_beta, gamma, kappa, ln_a1, ln_b1).expect("valid parameters");
        let slack: f64 = if rng.gen_bool(0.3) { 0.0 } else { rng.gen_range(0.0..2.0) };
        let mut h = ln_a1 + if slack == 0.0 { 0.0 } else { rng.gen_range(0.0..1.0) };
        let mut n = 0u64;
        while h <= ln_b1 {
            n += 1;
            let next = ln_beta + gamma * h + slack * rng.gen::<f64>();
            h = if next > h { next } else { h + 1e-9 };
        }
        if n > b {
            exceeded += 1;
        }
        if n == b {
            tight += 1;
        }
    }
    Outcome::new(
        "7",
        "gap principle tightness and chain fuzzing",
        attained && exceeded == 0,
        format!(
            "bound(1, 2, 1, 4, 65536) = {bound:?}, chain 4, 16, 256, 65536 valid = {steps_ok}; 10000 fuzzed chains, {exceeded} above the bound, {tight} attaining it"
        ),
    )
}

fn criterion_8() -> Outcome {
    let f = SparseForm::from_i64_terms(&[(-2, 0), (1, 3)]).unwrap();
    let roots = RootSet::find(&f, 96).unwrap();
    let sp = SiegelParameters::new(3, roots.ln_mahler(), 0.5, 0.9).unwrap();
    let t = ThresholdSet::compute(&f, &roots, 10, &sp, f.sparsity_profile().psi).unwrap();
    let ln320 = 320f64.ln();
    let b_err = (t.ln_b.mid() - ln320).abs();
    let b_ok = b_err <= 1e-12 && t.ln_b.lo() <= ln320 + 1e-12 && ln320 - 1e-12 <= t.ln_b.hi();
    let want = 800.0 * 3f64.ln().powi(3);
    let r1 = ln_r1(3);
    let r1_err = (r1.mid() - want).abs();
    Outcome::new(
        "8",
        "exact thresholds",
        b_ok && r1_err <= 1e-9,
        format!("|ln B - ln 320| = {b_err:.2e} (tol 1e-12), |ln R1(3) - 800 ln^3 3| = {r1_err:.2e} (tol 1e-9), ln R1(3) = {:.6}", r1.mid()),
    )
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let bound = 1000u64;
    let params = AnalysisParams {
        a: 0.1,
        b: 0.2,
        ..AnalysisParams::default()
    };
    let mut mismatched = Vec::new();
    let mut partition_bad = Vec::new();
    let mut scaling_bad = Vec::new();
    let (mut solutions, mut split) = (0usize, 0usize);
    for e in standard_corpus() {
        let h = e.h.min(100);
        let census = SolutionCensus::enumerate(&e.form, h, bound);
        let oracle = NaiveOracle::new(&e.form, h).all(bound as i64);
        let got: Vec<(i64, i64)> = census.records.iter().map(|r| (r.x, r.y)).collect();
        if got != oracle {
            mismatched.push(e.name);
        }
        solutions += got.len();

        let a = Analysis::new(&e.form, census, params).expect("analysis");
        let c = a.census.counts();
        let (mut classes, mut extra, mut prim) = (0usize, 0usize, 0usize);
        for r in a.census.primitive() {
            prim += 1;
            classes += match r.class {
                SolutionClass::Boundary(set) => {
                    extra += set.len() - 1;
                    set.len()
                }
                _ => 1,
            };
        }
        if c.unsplit == 0 {
            split += 1;
        }
        if !(c.partition_holds(a.census.boundary_multiplicity()) && classes == prim + extra) {
            partition_bad.push(e.name);
        }

        let r = e.form.degree();
        let big_h = h * (1u64 << r);
        let big = SolutionCensus::enumerate(&e.form, big_h, 2 * bound);
        let halved: BTreeSet<(i64, i64)> = big
            .records
            .iter()
            .filter(|p| p.x % 2 == 0 && p.y % 2 == 0)
            .map(|p| (p.x / 2, p.y / 2))
            .collect();
        let base: BTreeSet<(i64, i64)> = got.iter().copied().collect();
        if halved != base || !doubling_identity_holds(&a.census, &big) || !imprimitive_scaling_holds(&e.form, &big) {
            scaling_bad.push(e.name);
        }
    }
    let el = start.elapsed();
    Outcome::new(
        "9",
        "census oracle equivalence and identities",
        mismatched.is_empty() && partition_bad.is_empty() && scaling_bad.is_empty(),
        format!(
            "20 instances, box 1000, {solutions} solutions; oracle mismatches {mismatched:?}, partition failures {partition_bad:?} ({split} with a class split), scaling failures {scaling_bad:?}, {:.1} s",
            secs(el)
        ),
    )
}

fn criterion_10a() -> Outcome {
    let bound: i64 = 100_000;
    let h = 100u64;
    let names = ["cube-root-two", "selmer-11", "gapped-19", "selmer-20"];
    let corpus = standard_corpus();
    let mut parts = Vec::new();
    let mut min_speedup = f64::INFINITY;
    for name in names {
        let e = corpus.iter().find(|e| e.name == name).unwrap();
        let engine = RowEnumerator::new(&e.form, h, bound as u64);
        let t0 = Instant::now();
        let fast = engine.rows(1, bound);
        let fast_t = t0.elapsed();

        let oracle = NaiveOracle::new(&e.form, h);
        let sample_rows: Vec<i64> = (0..8).map(|k| 1 + k * (bound - 1) / 7).collect();
        let t1 = Instant::now();
        let mut naive_hits = Vec::new();
        for &y in &sample_rows {
            oracle.row(y, bound, &mut naive_hits);
        }
        let naive_per_row = t1.elapsed().as_secs_f64() / sample_rows.len() as f64;
        let naive_t = naive_per_row * bound as f64;
        let fast_hits: Vec<(i64, i64)> = fast
            .iter()
            .filter(|s| sample_rows.contains(&s.y))
            .map(|s| (s.x, s.y))
            .collect();
        let agree = fast_hits == naive_hits;
        let speedup = naive_t / fast_t.as_secs_f64();
        min_speedup = min_speedup.min(if agree { speedup } else { 0.0 });
        parts.push(format!("r = {} {:.0}x", e.form.degree(), speedup));
    }
    Outcome::new(
        "10a",
        "per-row enumeration vs naive oracle, single worker",
        min_speedup >= 10.0,
        format!(
            "box 1e5, h = 100, naive time extrapolated from 8 full rows: {} (min {:.0}x, need 10x)",
            parts.join(", "),
            min_speedup
        ),
    )
}

fn criterion_10b() -> Outcome {
    let cpus = available_workers();
    let e = standard_corpus().into_iter().find(|e| e.name == "selmer-11").unwrap();
    let engine = RowEnumerator::new(&e.form, 100, 200_000);
    let stripe = 2_000;
    let time = |w: usize| {
        let t = Instant::now();
        let out = enumerate_rows(&engine, w, stripe);
        (t.elapsed().as_secs_f64(), out.len())
    };
    let _ = time(1);
    let (t1, n1) = time(1);
    let (t4, n4) = time(4);
    let speedup = t1 / t4;
    let pass = speedup >= 3.0 && n1 == n4;
    Outcome {
        id: "10b",
        title: "stripe speedup on 4 workers",
        pass,
        enforced: cpus >= 4,
        detail: format!(
            "1 worker {t1:.3} s, 4 workers {t4:.3} s, speedup {speedup:.2}x (need 3x), {cpus} CPU(s) available{}",
            if cpus >= 4 { "" } else { "; not enforced below 4 CPUs" }
        ),
    }
}

fn main() {
    let filters: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let all: [(&str, fn() -> Outcome); 11] = [
        ("1", criterion_1),
        ("2", criterion_2),
        ("3", criterion_3),
        ("4", criterion_4),
        ("5", criterion_5),
        ("6", criterion_6),
        ("7", criterion_7),
        ("8", criterion_8),
        ("9", criterion_9),
        ("10a", criterion_10a),
        ("10b", criterion_10b),
    ];
    let mut failed = Vec::new();
    for (id, run) in all {
        let selected = filters.is_empty() || filters.iter().any(|f| id == f || id.trim_end_matches(['a', 'b']) == f);
        if !selected {
            continue;
        }
        let o = run();
        println!(
            "acceptance {:<3} {} : {} ({})",
            o.id,
            if o.pass { "PASS" } else { "FAIL" },
            o.title,
            o.detail
        );
        if !o.pass && o.enforced {
            failed.push(o.id);
        }
    }
    if !failed.is_empty() {
        eprintln!("acceptance failures: {failed:?}");
        std::process::exit(1);
    }
}
