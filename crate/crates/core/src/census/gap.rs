//! Length bounds for chains of integers that grow at least geometrically in
//! the exponent: `A_1 <= H_1 < H_2 < ...` with `H_{j+1} >= β H_j^γ`.

use core::fmt;

// Added before flooring so that a bound sitting on an integer is not lost to
// rounding.
const FLOOR_EPS: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GapError {
    GammaBelowTwo,
    NonPositiveBeta,
    /// `κ` must be 1 when `β <= 1` and 2 otherwise.
    WrongKappa,
    /// `A_1 β^{1/(κ(γ-1))} <= 1`
    StartTooSmall,
    EndBelowStart,
    BetaAboveOne,
    EtaNotAboveOne,
    /// Needs `1 <= μ < ν < γ - 1`.
    ExponentOrder,
    /// `A_1 < (η_1^μ / β)^{1/ν}`
    StartBelowThreshold,
}

impl fmt::Display for GapError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            GapError::GammaBelowTwo => "gamma must be at least 2",
            GapError::NonPositiveBeta => "beta must be positive",
            GapError::WrongKappa => "kappa must be 1 for beta <= 1 and 2 for beta > 1",
            GapError::StartTooSmall => "A1 * beta^(1/(kappa(gamma-1))) must exceed 1",
            GapError::EndBelowStart => "B1 must be at least A1",
            GapError::BetaAboveOne => "beta must be at most 1",
            GapError::EtaNotAboveOne => "eta1 and eta2 must exceed 1",
            GapError::ExponentOrder => "need 1 <= mu < nu < gamma - 1",
            GapError::StartBelowThreshold => "A1 must be at least (eta1^mu / beta)^(1/nu)",
        };
        f.write_str(msg)
    }
}

fn floor_count(x: f64) -> u64 {
    let v = libm::floor(x + FLOOR_EPS);
    if v <= 0.0 {
        0
    } else {
        v as u64
    }
}

/// Bound on the number of chain elements in `[A_1, B_1]`, log inputs.
pub fn gap_bound_i_ln(ln_beta: f64, gamma: f64, kappa: u32, ln_a1: f64, ln_b1: f64) -> Result<u64, GapError> {
    if !(gamma >= 2.0) {
        return Err(GapError::GammaBelowTwo);
    }
    if !ln_beta.is_finite() {
        return Err(GapError::NonPositiveBeta);
    }
    let expected = if ln_beta <= 0.0 { 1 } else { 2 };
    if kappa != expected {
        return Err(GapError::WrongKappa);
    }
    let base = ln_a1 + ln_beta / (kappa as f64 * (gamma - 1.0));
    if !(base > 0.0) {
        return Err(GapError::StartTooSmall);
    }
    if ln_b1 < ln_a1 {
        return Err(GapError::EndBelowStart);
    }
    Ok(floor_count(1.0 + libm::log(ln_b1 / base) / libm::log(gamma)))
}

/// `1 + ln( ln B_1 / ln(A_1 β^{1/(κ(γ-1))}) ) / ln γ`, floored.
pub fn gap_bound_i(beta: f64, gamma: f64, kappa: u32, a1: f64, b1: f64) -> Result<u64, GapError> {
    if !(beta > 0.0) {
        return Err(GapError::NonPositiveBeta);
    }
    gap_bound_i_ln(libm::log(beta), gamma, kappa, libm::log(a1), libm::log(b1))
}

/// Bound on the chain length when the last element also satisfies
/// `H_n <= (η_1 H_1)^{η_2}` and `η_2 <= γ^{n-1}`; log inputs except for `η_2`.
#[allow(clippy::too_many_arguments)]
pub fn gap_bound_ii_ln(
    ln_beta: f64,
    gamma: f64,
    ln_eta1: f64,
    eta2: f64,
    mu: f64,
    nu: f64,
    ln_a1: f64,
) -> Result<u64, GapError> {
    if !(gamma >= 2.0) {
        return Err(GapError::GammaBelowTwo);
    }
    if !ln_beta.is_finite() {
        return Err(GapError::NonPositiveBeta);
    }
    if ln_beta > 0.0 {
        return Err(GapError::BetaAboveOne);
    }
    if !(ln_eta1 > 0.0 && eta2 > 1.0) {
        return Err(GapError::EtaNotAboveOne);
    }
    if !(1.0 <= mu && mu < nu && nu < gamma - 1.0) {
        return Err(GapError::ExponentOrder);
    }
    let need = (mu * ln_eta1 - ln_beta) / nu;
    if ln_a1 < need - 1e-12 * need.abs().max(1.0) {
        return Err(GapError::StartBelowThreshold);
    }
    let m = ((mu + nu) / mu).max(1.0 / (1.0 - nu / (gamma - 1.0)));
    Ok(floor_count(1.0 + libm::log(eta2 * m) / libm::log(gamma)))
}

/// `1 + ln(η_2 max((μ+ν)/μ, 1/(1 - ν/(γ-1)))) / ln γ`, floored.
pub fn gap_bound_ii(beta: f64, gamma: f64, eta1: f64, eta2: f64, mu: f64, nu: f64, a1: f64) -> Result<u64, GapError> {
    if !(beta > 0.0) {
        return Err(GapError::NonPositiveBeta);
    }
    if !(eta1 > 1.0) {
        return Err(GapError::EtaNotAboveOne);
    }
    gap_bound_ii_ln(libm::log(beta), gamma, libm::log(eta1), eta2, mu, nu, libm::log(a1))
}

/// `ln H_{j+1} >= ln β + γ ln H_j`, up to a relative tolerance.
pub fn gap_step_holds(ln_beta: f64, gamma: f64, ln_prev: f64, ln_next: f64) -> bool {
    let rhs = ln_beta + gamma * ln_prev;
    ln_next >= rhs - 1e-12 * rhs.abs().max(1.0)
}
