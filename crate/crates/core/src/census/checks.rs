//! Verification predicates. Each one evaluates a proven inequality on the
//! certified data of an [`Analysis`]; a violation means a bug in this crate.
//!
//! A comparison whose enclosures overlap returns
//! [`Error::AmbiguousComparison`] so the caller can retry at a higher
//! precision. Hypotheses that cannot be decided are treated as unmet.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::analysis::Analysis;
use crate::census::gap;
use crate::census::SolutionRecord;
use crate::determinants::{large_derivative_witness, DerivativeSide};
use crate::error::Error;
use crate::interval::Interval;
use crate::roots::{AmplifierSubset, RootSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckKind {
    PolygonIndices,
    Annulus,
    LargeDerivative,
    Separation,
    MignotteAmplification,
    LewisMahler,
    ThueSiegel,
    GapPrinciple,
    MediumApproximation,
}

impl CheckKind {
    pub const ALL: [CheckKind; 9] = [
        CheckKind::PolygonIndices,
        CheckKind::Annulus,
        CheckKind::LargeDerivative,
        CheckKind::Separation,
        CheckKind::MignotteAmplification,
        CheckKind::LewisMahler,
        CheckKind::ThueSiegel,
        CheckKind::GapPrinciple,
        CheckKind::MediumApproximation,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            CheckKind::PolygonIndices => "polygon-indices",
            CheckKind::Annulus => "annulus",
            CheckKind::LargeDerivative => "large-derivative",
            CheckKind::Separation => "separation",
            CheckKind::MignotteAmplification => "mignotte-amplification",
            CheckKind::LewisMahler => "lewis-mahler",
            CheckKind::ThueSiegel => "thue-siegel",
            CheckKind::GapPrinciple => "gap-principle",
            CheckKind::MediumApproximation => "medium-approximation",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|k| k.name() == name)
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    /// The solution involved, if any.
    pub point: Option<(i64, i64)>,
    pub root: Option<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub kind: CheckKind,
    /// Items (solutions, roots, pairs) whose hypotheses were met.
    pub hypotheses_met: usize,
    /// Inequalities evaluated.
    pub checked: usize,
    pub violations: Vec<Violation>,
    pub precision_bits: u32,
    pub notes: Vec<String>,
}

impl CheckReport {
    fn new(kind: CheckKind, precision_bits: u32) -> Self {
        CheckReport {
            kind,
            hypotheses_met: 0,
            checked: 0,
            violations: Vec::new(),
            precision_bits,
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn violation(&mut self, point: Option<(i64, i64)>, root: Option<usize>, detail: String) {
        self.violations.push(Violation { point, root, detail });
    }
}

pub fn run(a: &Analysis, kind: CheckKind) -> Result<CheckReport, Error> {
    match kind {
        CheckKind::PolygonIndices => polygon_indices(a),
        CheckKind::Annulus => annulus(a),
        CheckKind::LargeDerivative => large_derivative(a),
        CheckKind::Separation => separation(a),
        CheckKind::MignotteAmplification => amplification(a),
        CheckKind::LewisMahler => lewis_mahler(a),
        CheckKind::ThueSiegel => thue_siegel(a),
        CheckKind::GapPrinciple => gap_principle(a),
        CheckKind::MediumApproximation => medium(a),
    }
}

/// `Ok(true)` if `lhs <= rhs` for sure, `Ok(false)` if `lhs > rhs` for sure.
pub fn certainly_le(lhs: Interval, rhs: Interval) -> Result<bool, Error> {
    if lhs.certainly_le(&rhs) {
        Ok(true)
    } else if lhs.certainly_gt(&rhs) {
        Ok(false)
    } else {
        Err(Error::AmbiguousComparison)
    }
}

fn either(p: Result<bool, Error>, q: Result<bool, Error>) -> Result<bool, Error> {
    match (p, q) {
        (Ok(true), _) | (_, Ok(true)) => Ok(true),
        (Err(e), _) | (_, Err(e)) => Err(e),
        _ => Ok(false),
    }
}

/// `ln d <= ln B - r ln H`
pub fn lewis_mahler_holds(ln_d: Interval, ln_b: Interval, r: u32, ln_h: Interval) -> Result<bool, Error> {
    certainly_le(ln_d, ln_b - ln_h.scale_int(r as i64))
}

/// `ln(4e^A) + ln H' <= δ^{-1} (ln(4e^A) + ln H)`
pub fn thue_siegel_pair_holds(
    ln_4ea: Interval,
    delta: Interval,
    ln_h: Interval,
    ln_h_prime: Interval,
) -> Result<bool, Error> {
    certainly_le(ln_4ea + ln_h_prime, (ln_4ea + ln_h) / delta)
}

/// `ln H_{j+1} >= (r - 1) ln H_j - ln(2BR)`
pub fn gap_step_ok(ln_prev: Interval, ln_next: Interval, r: u32, ln_2br: Interval) -> Result<bool, Error> {
    certainly_le(ln_prev.scale_int(r as i64 - 1) - ln_2br, ln_next)
}

fn polygon_indices(a: &Analysis) -> Result<CheckReport, Error> {
    let mut rep = CheckReport::new(CheckKind::PolygonIndices, a.precision());
    let straight = a.form.is_straight_line();
    for (i, d) in a.roots.disks().iter().enumerate() {
        let idx = a.polygon.indices_for_root(a.profile.psi, d.ln_modulus)?;
        rep.hypotheses_met += 1;
        rep.checked += 1;
        if idx.lower >= idx.upper {
            rep.violation(None, Some(i), format!("k = {} not below K = {}", idx.lower, idx.upper));
        }
        if straight && (idx.lower, idx.upper) != (0, 1) {
            rep.violation(
                None,
                Some(i),
                format!("straight-line form but (k, K) = ({}, {})", idx.lower, idx.upper),
            );
        }
    }
    Ok(rep)
}

fn annulus(a: &Analysis) -> Result<CheckReport, Error> {
    let mut rep = CheckReport::new(CheckKind::Annulus, a.precision());
    if !a.form.is_straight_line() {
        rep.notes.push("form is not straight-line; nothing to check".into());
        return Ok(rep);
    }
    let sigma = a.polygon.slope_into(1).value();
    let inner = sigma - Interval::ln2();
    let outer = sigma + Interval::ln2();
    for (i, d) in a.roots.disks().iter().enumerate() {
        rep.hypotheses_met += 1;
        rep.checked += 1;
        let m = d.ln_modulus;
        if m.certainly_gt(&inner) && m.certainly_lt(&outer) {
            continue;
        }
        if m.certainly_le(&inner) || m.certainly_ge(&outer) {
            rep.violation(None, Some(i), format!("ln|α| = {m} outside ({inner}, {outer})"));
        } else {
            return Err(Error::AmbiguousComparison);
        }
    }
    Ok(rep)
}

fn large_derivative(a: &Analysis) -> Result<CheckReport, Error> {
    let mut rep = CheckReport::new(CheckKind::LargeDerivative, a.precision());
    for i in 0..a.roots.len() {
        for side in [DerivativeSide::Upper, DerivativeSide::Lower] {
            rep.hypotheses_met += 1;
            rep.checked += 1;
            match large_derivative_witness(&a.form, &a.polygon, &a.roots, i, side, a.profile.psi) {
                Ok(_) => {}
                Err(Error::NoWitness { .. }) => {
                    rep.violation(None, Some(i), format!("no derivative order on the {side:?} side"));
                }
                Err(e) => return Err(e),
            }
        }
    }
    Ok(rep)
}

fn separation(a: &Analysis) -> Result<CheckReport, Error> {
    let mut rep = CheckReport::new(CheckKind::Separation, a.precision());
    let ln_2delta = Interval::ln2() + a.roots.ln_separation_bound();
    let disks = a.roots.disks();
    for i in 0..disks.len() {
        for j in i + 1..disks.len() {
            rep.hypotheses_met += 1;
            rep.checked += 1;
            let diff = &disks[i].center - &disks[j].center;
            let ln_c = diff.ln_abs();
            let rad = Interval::point(disks[i].ln_radius).ln_add_exp(Interval::point(disks[j].ln_radius));
            let dist = Interval::new(ln_c.ln_sub_exp(rad).lo(), ln_c.ln_add_exp(rad).hi());
            if dist.certainly_gt(&ln_2delta) {
                continue;
            }
            if dist.certainly_le(&ln_2delta) {
                rep.violation(None, Some(i), format!("roots {i} and {j} closer than 2Δ"));
            } else {
                return Err(Error::AmbiguousComparison);
            }
        }
    }
    Ok(rep)
}

/// Real test points: a uniform grid over the root range and clusters around
/// the real part of every root.
pub fn amplification_grid(roots: &RootSet) -> Vec<(BigInt, BigInt)> {
    const DEN: i64 = 1 << 12;
    let reach = roots
        .disks()
        .iter()
        .map(|d| d.center_f64().norm())
        .fold(1.0f64, f64::max);
    let edge = 2.0 * reach + 1.0;
    let mut pts = Vec::new();
    let steps = 400;
    for k in 0..=steps {
        let x = -edge + 2.0 * edge * k as f64 / steps as f64;
        pts.push(((libm::round(x * DEN as f64)) as i64, DEN));
    }
    for d in roots.disks() {
        let c = libm::round(d.center_f64().re * DEN as f64) as i64;
        for off in [-64i64, -8, -1, 0, 1, 8, 64] {
            pts.push((c + off, DEN));
        }
    }
    pts.sort_unstable();
    pts.dedup();
    pts.into_iter()
        .map(|(n, d)| (BigInt::from(n), BigInt::from(d)))
        .collect()
}

fn amplification_side(
    rep: &mut CheckReport,
    roots: &RootSet,
    sub: &AmplifierSubset,
    extra: &[(BigInt, BigInt)],
    label: &str,
) -> Result<(), Error> {
    let mut pts = amplification_grid(roots);
    pts.extend_from_slice(extra);
    let m = roots.amplification_factor(sub, &pts);
    rep.hypotheses_met += m.evaluated;
    rep.checked += m.evaluated;
    if m.ln_max_ratio <= sub.ln_factor.lo() {
        return Ok(());
    }
    if m.ln_max_ratio > sub.ln_factor.hi() {
        rep.violation(
            None,
            None,
            format!(
                "{label}: ratio e^{} exceeds the amplification factor e^{}",
                m.ln_max_ratio,
                sub.ln_factor.hi()
            ),
        );
        Ok(())
    } else {
        Err(Error::AmbiguousComparison)
    }
}

fn amplification(a: &Analysis) -> Result<CheckReport, Error> {
    let mut rep = CheckReport::new(CheckKind::MignotteAmplification, a.precision());
    let direct: Vec<_> = a
        .census
        .records
        .iter()
        .filter(|r| r.y != 0)
        .map(|r| (BigInt::from(r.x), BigInt::from(r.y)))
        .collect();
    let star: Vec<_> = a
        .census
        .records
        .iter()
        .filter(|r| r.x != 0)
        .map(|r| (BigInt::from(r.y), BigInt::from(r.x)))
        .collect();
    amplification_side(&mut rep, &a.roots, &a.s2, &direct, "F(z,1)")?;
    amplification_side(&mut rep, &a.roots_star, &a.s2_star, &star, "F(1,z)")?;
    rep.notes.push(format!(
        "|S2| = {} of {}, |S2*| = {} of {}",
        a.s2.members.len(),
        a.roots.len(),
        a.s2_star.members.len(),
        a.roots_star.len()
    ));
    Ok(rep)
}

fn point(rec: &SolutionRecord) -> Option<(i64, i64)> {
    Some((rec.x, rec.y))
}

fn lewis_mahler(a: &Analysis) -> Result<CheckReport, Error> {
    let mut rep = CheckReport::new(CheckKind::LewisMahler, a.precision());
    let ts = &a.thresholds;
    let r = ts.r;
    let gate = ts.ln_b / Interval::from_i64(r as i64);
    for rec in &a.census.records {
        if rec.y == 0 {
            continue;
        }
        let ln_h = rec.ln_height();
        if !ln_h.certainly_gt(&gate) {
            continue;
        }
        rep.hypotheses_met += 1;
        let near = rec.nearest.expect("distances attached");
        rep.checked += 1;
        if !lewis_mahler_holds(near.ln_value, ts.ln_b, r, ln_h)? {
            rep.violation(point(rec), Some(near.nearest), format!("ln d(S, x/y) = {}", near.ln_value));
        }
        let x = BigInt::from(rec.x);
        let y = BigInt::from(rec.y);
        let d2 = a.roots.distance_within(&a.s2.members, &x, &y);
        rep.checked += 1;
        if !lewis_mahler_holds(d2.ln_value, ts.ln_b + a.s2.ln_factor, r, ln_h)? {
            rep.violation(point(rec), Some(d2.nearest), format!("ln d(S2, x/y) = {}", d2.ln_value));
        }
    }
    Ok(rep)
}

fn thue_siegel(a: &Analysis) -> Result<CheckReport, Error> {
    let mut rep = CheckReport::new(CheckKind::ThueSiegel, a.precision());
    let ln_4ea = a.siegel.ln_4ea();
    let lambda = a.siegel.lambda;
    let mut tagged: Vec<Vec<(Interval, (i64, i64))>> = alloc::vec![Vec::new(); a.roots.len()];
    for rec in a.census.primitive() {
        if rec.y == 0 {
            continue;
        }
        let ln_h = rec.ln_height();
        let thr = -(lambda * (ln_4ea + ln_h));
        let ds = a.roots.ln_distances(&BigInt::from(rec.x), &BigInt::from(rec.y));
        for (i, d) in ds.iter().enumerate() {
            if d.certainly_lt(&thr) {
                tagged[i].push((ln_h, (rec.x, rec.y)));
            } else if !d.certainly_ge(&thr) {
                return Err(Error::AmbiguousComparison);
            }
        }
    }
    for (i, list) in tagged.iter_mut().enumerate() {
        rep.hypotheses_met += list.len();
        list.sort_by(|p, q| p.0.mid().partial_cmp(&q.0.mid()).unwrap());
        for j in 0..list.len() {
            for k in j + 1..list.len() {
                rep.checked += 1;
                if !thue_siegel_pair_holds(ln_4ea, a.siegel.delta, list[j].0, list[k].0)? {
                    rep.violation(
                        Some(list[k].1),
                        Some(i),
                        format!("pair with {:?} breaks the height gap", list[j].1),
                    );
                }
            }
        }
    }
    Ok(rep)
}

/// Root indices whose distance to `num/den` may be the minimum over `members`.
fn nearest_candidates(ds: &[Interval], members: &[usize]) -> Vec<usize> {
    let best_hi = members
        .iter()
        .map(|&i| ds[i].hi())
        .fold(f64::INFINITY, f64::min);
    members
        .iter()
        .copied()
        .filter(|&i| ds[i].lo() <= best_hi)
        .collect()
}

fn gap_variant(
    a: &Analysis,
    rep: &mut CheckReport,
    members: &[usize],
    ln_factor: Interval,
    label: &str,
) -> Result<(), Error> {
    let ts = &a.thresholds;
    let r = ts.r;
    let ri = Interval::from_i64(r as i64);
    let ln_2br = Interval::ln2() + ts.ln_b + ln_factor;
    let expo = Interval::ONE / (ri - Interval::point(2.0)) + Interval::ONE / (ri * ri);
    let ln_start = ln_2br * expo;

    let mut chains: Vec<Vec<(Interval, (i64, i64))>> = alloc::vec![Vec::new(); a.roots.len()];
    for rec in a.census.primitive() {
        if rec.y <= 0 {
            continue;
        }
        let ln_y = crate::census::ln_u64(rec.y as u64);
        if ln_y.certainly_le(&ln_start) {
            continue;
        }
        if !ln_y.certainly_gt(&ln_start) {
            return Err(Error::AmbiguousComparison);
        }
        let ds = a.roots.ln_distances(&BigInt::from(rec.x), &BigInt::from(rec.y));
        for i in nearest_candidates(&ds, members) {
            chains[i].push((rec.ln_height(), (rec.x, rec.y)));
        }
    }

    let lambda = a.siegel.lambda;
    let ln_4ea = a.siegel.ln_4ea();
    let gamma = (r - 1) as f64;
    for (i, chain) in chains.iter_mut().enumerate() {
        if chain.is_empty() {
            continue;
        }
        rep.hypotheses_met += chain.len();
        chain.sort_by(|p, q| {
            p.0.mid()
                .partial_cmp(&q.0.mid())
                .unwrap()
                .then(p.1 .1.cmp(&q.1 .1))
        });
        for w in chain.windows(2) {
            rep.checked += 1;
            if !gap_step_ok(w[0].0, w[1].0, r, ln_2br)? {
                rep.violation(
                    Some(w[1].1),
                    Some(i),
                    format!("{label}: step from {:?} too short", w[0].1),
                );
            }
        }
        if ts.ln_y_w.is_none() {
            continue;
        }
        // Elements between the chain start and B_1 = (2BR)^{(1 + λ/a^2)/(r - λ)}.
        let a2 = Interval::point(a.params.a) * Interval::point(a.params.a);
        let gap = ri - lambda;
        let ln_b1 = ln_2br * (Interval::ONE + lambda / a2) / gap;
        let n2 = chain.iter().filter(|e| e.0.mid() <= ln_b1.mid()).count() as u64;
        match gap::gap_bound_i_ln(-ln_2br.mid(), gamma, 1, ln_start.mid(), ln_b1.mid()) {
            Ok(bound) => {
                rep.checked += 1;
                if n2 > bound {
                    rep.violation(None, Some(i), format!("{label}: {n2} elements below B1, bound {bound}"));
                }
            }
            Err(e) => rep.notes.push(format!("{label}: first length bound not applicable ({e})")),
        }
        // Elements above (2BR)^{1/(r-λ)} (4e^A)^{λ/(r-λ)}: very good approximations.
        let ln_a1 = (ln_2br + lambda * ln_4ea) / gap;
        let n1 = chain.iter().filter(|e| e.0.mid() >= ln_a1.mid()).count() as u64;
        let eta2 = 1.0 / a.siegel.delta.mid();
        let mu = lambda.mid();
        match gap::gap_bound_ii_ln(-ln_2br.mid(), gamma, ln_4ea.mid(), eta2, mu, r as f64 - mu, ln_a1.mid()) {
            Ok(bound) => {
                rep.checked += 1;
                let eta_ok = n1 >= 1 && libm::log(eta2) <= (n1 - 1) as f64 * libm::log(gamma);
                if n1 > bound && eta_ok {
                    rep.violation(None, Some(i), format!("{label}: {n1} very good elements, bound {bound}"));
                }
            }
            Err(e) => rep.notes.push(format!("{label}: second length bound not applicable ({e})")),
        }
    }
    Ok(())
}

fn gap_principle(a: &Analysis) -> Result<CheckReport, Error> {
    let mut rep = CheckReport::new(CheckKind::GapPrinciple, a.precision());
    let all: Vec<usize> = (0..a.roots.len()).collect();
    gap_variant(a, &mut rep, &all, Interval::ZERO, "S")?;
    gap_variant(a, &mut rep, &a.s2.members, a.s2.ln_factor, "S2")?;
    rep.notes.sort();
    rep.notes.dedup();
    Ok(rep)
}

#[derive(Clone, Copy)]
struct Orders {
    /// `(K, u)` from the upper side.
    upper: Option<(usize, usize)>,
    /// `(k, v)` from the lower side.
    lower: Option<(usize, usize)>,
}

fn orders_for(a: &Analysis, root: usize) -> Result<Orders, Error> {
    let idx = a
        .polygon
        .indices_for_root(a.profile.psi, a.roots.disks()[root].ln_modulus)?;
    let mut out = Orders {
        upper: None,
        lower: None,
    };
    for side in [DerivativeSide::Upper, DerivativeSide::Lower] {
        match large_derivative_witness(&a.form, &a.polygon, &a.roots, root, side, a.profile.psi) {
            Ok(w) => match side {
                DerivativeSide::Upper => out.upper = Some((idx.upper, w.order)),
                DerivativeSide::Lower => out.lower = Some((idx.lower, w.order)),
            },
            Err(Error::NoWitness { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// Right-hand side, in logs, of
/// `d <= H^{-(1/u - 1/r)} ((rs)^{2s} (c e^Ψ)^r h / |z|^r)^{1/u}`.
fn medium_rhs(a: &Analysis, u: usize, ln_c: Interval, ln_z: Interval) -> Interval {
    let ts = &a.thresholds;
    let ri = Interval::from_i64(ts.r as i64);
    let ui = Interval::from_i64(u as i64);
    let rs = Interval::from_i64(ts.r as i64 * ts.s as i64).ln();
    let core = rs.scale(2.0 * ts.s as f64) + (ln_c + ts.psi) * ri + ts.ln_h - ln_z * ri;
    core / ui - ts.ln_height * (Interval::ONE / ui - Interval::ONE / ri)
}

fn medium(a: &Analysis) -> Result<CheckReport, Error> {
    let mut rep = CheckReport::new(CheckKind::MediumApproximation, a.precision());
    let ts = &a.thresholds;
    let r = ts.r;
    let s = ts.s;
    let ri = Interval::from_i64(r as i64);
    let q = a.polygon.q();
    let ln6 = Interval::from_i64(6).ln();
    let ln12 = Interval::from_i64(12).ln();
    let ln_rs = Interval::from_i64(r as i64 * s as i64).ln();
    let common = ln_rs.scale(2.0 * s as f64) / ri + ts.ln_h / ri;
    let y_gate = Interval::ln2() + common;
    let min_gate = ln12 + ts.psi + common;

    let mut cache: Vec<Option<Orders>> = alloc::vec![None; a.roots.len()];
    let all: Vec<usize> = (0..a.roots.len()).collect();

    for rec in &a.census.records {
        if rec.y == 0 {
            continue;
        }
        let x = BigInt::from(rec.x);
        let y = BigInt::from(rec.y);
        let ln_y = crate::census::ln_u64(rec.y.unsigned_abs());
        let ln_x = crate::census::ln_u64(rec.x.unsigned_abs());
        let near = rec.nearest.expect("distances attached");
        let ds = a.roots.ln_distances(&x, &y);
        let cands = nearest_candidates(&ds, &all);
        for &c in &cands {
            if cache[c].is_none() {
                cache[c] = Some(orders_for(a, c)?);
            }
        }
        let d2 = a.roots.distance_within(&a.s2.members, &x, &y);

        // Upper-side form: q < i(K), order u from the upper witness.
        let upper: Vec<usize> = cands
            .iter()
            .filter_map(|&c| {
                let (k_up, u) = cache[c].unwrap().upper?;
                (q < a.polygon.vertex(k_up)).then_some(u)
            })
            .collect();
        if !upper.is_empty() && upper.len() == cands.len() {
            rep.hypotheses_met += 1;
            let mut full_ok = false;
            let mut sub_ok = false;
            for &u in &upper {
                let rhs = medium_rhs(a, u, ln6, ln_y);
                full_ok |= certainly_le(near.ln_value, rhs)?;
                sub_ok |= certainly_le(d2.ln_value, rhs + a.s2.ln_factor)?;
            }
            rep.checked += 2;
            if !full_ok {
                rep.violation(point(rec), Some(near.nearest), "upper-side bound on d(S, x/y) fails".into());
            }
            if !sub_ok {
                rep.violation(point(rec), Some(d2.nearest), "upper-side bound on d(S2, x/y) fails".into());
            }
        }

        // Lower-side form on the reciprocal roots: x != 0, |y| large, i(k) < q.
        if rec.x != 0 && ln_y.certainly_ge(&y_gate) {
            let lower: Vec<usize> = cands
                .iter()
                .filter_map(|&c| {
                    let (k_lo, v) = cache[c].unwrap().lower?;
                    (a.polygon.vertex(k_lo) < q).then_some(v)
                })
                .collect();
            if !lower.is_empty() && lower.len() == cands.len() {
                rep.hypotheses_met += 1;
                let star = rec.nearest_star.expect("distances attached");
                let d2s = a.roots_star.distance_within(&a.s2_star.members, &y, &x);
                let mut full_ok = false;
                let mut sub_ok = false;
                for &v in &lower {
                    let rhs = medium_rhs(a, v, ln12, ln_x);
                    full_ok |= certainly_le(star.ln_value, rhs)?;
                    sub_ok |= certainly_le(d2s.ln_value, rhs + a.s2_star.ln_factor)?;
                }
                rep.checked += 2;
                if !full_ok {
                    rep.violation(point(rec), Some(star.nearest), "lower-side bound on d(S*, y/x) fails".into());
                }
                if !sub_ok {
                    rep.violation(point(rec), Some(d2s.nearest), "lower-side bound on d(S2*, y/x) fails".into());
                }
            }
        }

        // Combined form with u = v = s once both coordinates are large.
        if rec.x != 0 && rec.ln_min().certainly_ge(&min_gate) {
            rep.hypotheses_met += 1;
            rep.checked += 2;
            let star = rec.nearest_star.expect("distances attached");
            let d2s = a.roots_star.distance_within(&a.s2_star.members, &y, &x);
            let rhs_y = medium_rhs(a, s, ln12, ln_y);
            let rhs_x = medium_rhs(a, s, ln12, ln_x);
            let full = either(certainly_le(near.ln_value, rhs_y), certainly_le(star.ln_value, rhs_x))?;
            if !full {
                rep.violation(point(rec), None, "neither combined bound holds on S".into());
            }
            let sub = either(
                certainly_le(d2.ln_value, rhs_y + a.s2.ln_factor),
                certainly_le(d2s.ln_value, rhs_x + a.s2_star.ln_factor),
            )?;
            if !sub {
                rep.violation(point(rec), None, "neither combined bound holds on S2".into());
            }
        }
    }
    Ok(rep)
}

/// Synthetic inputs that break each predicate, for exercising the reporting
/// path end to end.
pub fn self_test_reports() -> Vec<CheckReport> {
    let mut out = Vec::new();

    let mut lm = CheckReport::new(CheckKind::LewisMahler, 0);
    lm.hypotheses_met = 1;
    lm.checked = 1;
    // d = 1, B = e, r = 3, H = e^2: the bound is e^{-5}.
    if lewis_mahler_holds(Interval::ZERO, Interval::ONE, 3, Interval::point(2.0)) == Ok(false) {
        lm.violation(Some((0, 1)), Some(0), "injected: distance above B / H^r".into());
    }
    out.push(lm);

    let mut ts = CheckReport::new(CheckKind::ThueSiegel, 0);
    ts.hypotheses_met = 2;
    ts.checked = 1;
    let ln4 = Interval::ln2().scale(2.0);
    let h = Interval::from_i64(10).ln();
    let h2 = Interval::from_i64(1_000_000).ln();
    if thue_siegel_pair_holds(ln4, Interval::point(0.5), h, h2) == Ok(false) {
        ts.violation(Some((1_000_000, 1)), Some(0), "injected: second approximation too high".into());
    }
    out.push(ts);

    let mut gp = CheckReport::new(CheckKind::GapPrinciple, 0);
    gp.hypotheses_met = 2;
    gp.checked = 1;
    let prev = Interval::from_i64(10).ln();
    let next = Interval::from_i64(11).ln();
    if gap_step_ok(prev, next, 5, Interval::ln2()) == Ok(false) {
        gp.violation(Some((11, 1)), Some(0), "injected: chain step 10 -> 11 at r = 5".into());
    }
    out.push(gp);

    out
}
