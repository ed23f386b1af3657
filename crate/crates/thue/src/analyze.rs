//! The `analyze` report: polygon, sparsity, roots and thresholds for one form.

use serde::Serialize;
use sparse_thue_core::bounds::{theoretical_report, SiegelParameters, ThresholdSet};
use sparse_thue_core::{AnalysisParams, Error, Interval, NewtonPolygon, RootSet, SparseForm};

use crate::format::{form_display, form_to_json};
use crate::verify::LINEAR_FACTOR_TRIAL;

const LN_10: f64 = std::f64::consts::LN_10;
const ROOT_DIGITS: usize = 30;

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct LogValue {
    pub ln: f64,
    pub ln_lo: f64,
    pub ln_hi: f64,
    pub log10: f64,
    /// `exp(ln)` when it fits in an `f64`.
    pub value: Option<f64>,
}

impl From<Interval> for LogValue {
    fn from(i: Interval) -> Self {
        let ln = i.mid();
        let value = if ln < 700.0 { Some(ln.exp()) } else { None };
        LogValue {
            ln,
            ln_lo: i.lo(),
            ln_hi: i.hi(),
            log10: ln / LN_10,
            value,
        }
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct VertexJson {
    pub index: usize,
    pub exp: u32,
    pub coeff: String,
}

#[derive(Serialize, Debug, Clone)]
pub struct SlopeJson {
    /// The slope is `ln(left / right) / run`.
    pub left: String,
    pub right: String,
    pub run: u32,
    pub value: f64,
}

#[derive(Serialize, Debug, Clone)]
pub struct PolygonJson {
    pub vertices: Vec<VertexJson>,
    pub slopes: Vec<SlopeJson>,
    pub edges: usize,
    pub q: usize,
}

#[derive(Serialize, Debug, Clone)]
pub struct RootJson {
    pub re: String,
    pub im: String,
    pub radius: f64,
    pub log_modulus: f64,
    /// `K(α)`, absent when the comparison could not be decided.
    pub upper_index: Option<usize>,
    /// `k(α)`
    pub lower_index: Option<usize>,
    pub in_s2: bool,
}

#[derive(Serialize, Debug, Clone)]
pub struct SiegelJson {
    pub a: f64,
    pub b: f64,
    pub t: f64,
    pub lambda: f64,
    pub delta: f64,
    pub big_a: f64,
}

#[derive(Serialize, Debug, Clone)]
pub struct ThresholdsJson {
    pub b: LogValue,
    pub r1: LogValue,
    pub r2: LogValue,
    pub separation: LogValue,
    pub y_g: LogValue,
    pub y_e: Option<LogValue>,
    pub y_w: Option<LogValue>,
    pub y_s: Option<LogValue>,
    pub y_s_prime: Option<LogValue>,
    pub k1: LogValue,
    pub k2: LogValue,
    pub c1: f64,
}

#[derive(Serialize, Debug, Clone)]
pub struct TheoreticalJson {
    pub s_exp_phi_c1: f64,
    pub s_ln_s_h: Option<f64>,
    pub sqrt_rs_c1: f64,
}

#[derive(Serialize, Debug, Clone)]
pub struct AnalysisReport {
    pub form: serde_json::Value,
    pub display: String,
    pub r: u32,
    pub s: usize,
    pub h: u64,
    pub height: String,
    pub psi: f64,
    pub phi: f64,
    pub straight_line: bool,
    pub linear_factor: Option<(i64, i64)>,
    pub polygon: PolygonJson,
    pub precision_bits: u32,
    pub roots: Vec<RootJson>,
    pub mahler: LogValue,
    pub mahler_exact: Option<String>,
    pub discriminant: String,
    pub siegel: SiegelJson,
    pub thresholds: ThresholdsJson,
    pub theoretical: TheoreticalJson,
}

fn opt(i: Option<Interval>) -> Option<LogValue> {
    i.map(LogValue::from)
}

pub fn analyze(form: &SparseForm, h: u64, params: AnalysisParams) -> Result<AnalysisReport, Error> {
    let profile = form.sparsity_profile();
    let polygon = NewtonPolygon::build(form);
    let roots = RootSet::find(form, params.precision)?;
    let siegel = SiegelParameters::new(form.degree(), roots.ln_mahler(), params.a, params.b)?;
    let t = ThresholdSet::compute(form, &roots, h, &siegel, profile.psi)?;
    let s2 = roots.build_s2();
    let theory = theoretical_report(form, h, profile.phi);

    let vertices = polygon
        .vertices()
        .iter()
        .map(|&i| VertexJson {
            index: i,
            exp: form.exponent(i),
            coeff: form.coeff(i).to_string(),
        })
        .collect();
    let slopes = polygon
        .slopes()
        .iter()
        .map(|sl| SlopeJson {
            left: sl.left.to_string(),
            right: sl.right.to_string(),
            run: sl.run,
            value: sl.value().mid(),
        })
        .collect();

    let root_rows = roots
        .disks()
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let idx = polygon.indices_for_root(profile.psi, d.ln_modulus).ok();
            RootJson {
                re: d.center.re.to_decimal(ROOT_DIGITS),
                im: d.center.im.to_decimal(ROOT_DIGITS),
                radius: d.radius_f64(),
                log_modulus: d.ln_modulus.mid(),
                upper_index: idx.map(|x| x.upper),
                lower_index: idx.map(|x| x.lower),
                in_s2: s2.members.contains(&i),
            }
        })
        .collect();

    Ok(AnalysisReport {
        form: serde_json::from_str(&form_to_json(form)).expect("form json"),
        display: form_display(form),
        r: form.degree(),
        s: form.sparsity(),
        h,
        height: form.height().to_string(),
        psi: profile.psi.mid(),
        phi: profile.phi.mid(),
        straight_line: form.is_straight_line(),
        linear_factor: form.small_rational_root(LINEAR_FACTOR_TRIAL),
        polygon: PolygonJson {
            vertices,
            slopes,
            edges: polygon.edge_count(),
            q: polygon.q(),
        },
        precision_bits: roots.precision(),
        roots: root_rows,
        mahler: roots.ln_mahler().into(),
        mahler_exact: roots.exact_mahler().map(|m| m.to_string()),
        discriminant: roots.discriminant().to_string(),
        siegel: SiegelJson {
            a: siegel.a,
            b: siegel.b,
            t: siegel.t.mid(),
            lambda: siegel.lambda.mid(),
            delta: siegel.delta.mid(),
            big_a: siegel.big_a.mid(),
        },
        thresholds: ThresholdsJson {
            b: t.ln_b.into(),
            r1: t.ln_r1.into(),
            r2: t.ln_r2.into(),
            separation: t.ln_delta.into(),
            y_g: t.ln_y_g.into(),
            y_e: opt(t.ln_y_e),
            y_w: opt(t.ln_y_w),
            y_s: opt(t.ln_y_s),
            y_s_prime: opt(t.ln_y_s_prime),
            k1: t.ln_k1.into(),
            k2: t.ln_k2.into(),
            c1: t.c1.mid(),
        },
        theoretical: TheoreticalJson {
            s_exp_phi_c1: theory.s_exp_phi_c1,
            s_ln_s_h: theory.s_ln_s_h,
            sqrt_rs_c1: theory.sqrt_rs_c1,
        },
    })
}
