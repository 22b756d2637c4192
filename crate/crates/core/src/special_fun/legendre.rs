//! Ferrers 𝖯_{α−1/2}^{1/2−α−β} on (−1,1) and Olver 𝐐_{α−1/2}^{1/2−α−β} on (1,∞).

use super::gamma::{gamma, gamma_reciprocal, pochhammer, sinpi};
use super::hypergeometric::hyp2f1_reg;
use super::jacobi::jacobi_poly;
use super::{Params, SpecialError};
use std::f64::consts::PI;

/// Which evaluation formula a Legendre value came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LegendrePath {
    Generic,
    Ultraspherical,
    ZeroLine,
    AlphaMinusHalf,
    HalfInteger,
    PositiveIntegerBeta,
}

/// 𝖯(y) for −1 < y < 1.
pub fn ferrers_p(params: &Params, y: f64) -> Result<f64, SpecialError> {
    if !(y > -1.0 && y < 1.0) {
        return Err(SpecialError::Domain(format!("ferrers_p requires -1 < y < 1, got {y}")));
    }
    Ok(ferrers_p_parts(params, 1.0 - y, 1.0 + y).0)
}

/// 𝖯 from the accurate complements omy = 1 − y and opy = 1 + y.
pub fn ferrers_p_parts(params: &Params, omy: f64, opy: f64) -> (f64, LegendrePath) {
    let a = params.alpha();
    let b = params.beta();
    let y = 0.5 * (opy - omy);
    if let Some(n) = params.beta_nonpositive_integer() {
        let nf = n as f64;
        let g = a - nf - 0.5;
        let v = (nf - a + 0.5).exp2() * gamma(nf + 1.0) * gamma_reciprocal(a + 0.5)
            * (omy * opy).powf(0.5 * g)
            * jacobi_poly(n, g, g, y);
        return (v, LegendrePath::Ultraspherical);
    }
    if params.two_alpha_plus_beta_zero() {
        let v = (a + 0.5).exp2() * gamma_reciprocal(0.5 - a) * (omy * opy).powf(-0.5 * (a + 0.5));
        return (v, LegendrePath::ZeroLine);
    }
    if params.alpha_minus_half() {
        let v = gamma_reciprocal(b) * (opy / omy).powf(0.5 * (1.0 - b));
        return (v, LegendrePath::AlphaMinusHalf);
    }
    if let Some(n) = params.alpha_positive_half_integer() {
        let nf = n as f64;
        let v = gamma(nf + 1.0) * gamma_reciprocal(2.0 * nf + b + 1.0) * (opy / omy).powf(-0.5 * (nf + b))
            * jacobi_poly(n, nf + b, -nf - b, y);
        return (v, LegendrePath::HalfInteger);
    }
    (p_generic(a, b, omy, opy), LegendrePath::Generic)
}

fn p_generic(a: f64, b: f64, omy: f64, opy: f64) -> f64 {
    let e = 0.5 * (0.5 - a - b);
    (opy / omy).powf(e) * hyp2f1_reg(a + 0.5, 0.5 - a, a + b + 0.5, 0.5 * omy, 0.5 * opy)
}

/// 𝐐(y) for y > 1.
pub fn olver_q(params: &Params, y: f64) -> Result<f64, SpecialError> {
    if !(y > 1.0) || !y.is_finite() {
        return Err(SpecialError::Domain(format!("olver_q requires y > 1, got {y}")));
    }
    Ok(olver_q_parts(params, y - 1.0, y + 1.0).0)
}

/// 𝐐 from the accurate quantities ym1 = y − 1 and yp1 = y + 1.
pub fn olver_q_parts(params: &Params, ym1: f64, yp1: f64) -> (f64, LegendrePath) {
    let a = params.alpha();
    let b = params.beta();
    if params.two_alpha_plus_beta_zero() {
        let v = PI.sqrt() * (-(a + 0.5)).exp2() * gamma_reciprocal(a + 1.0)
            * (yp1 * ym1).powf(-0.5 * (a + 0.5));
        return (v, LegendrePath::ZeroLine);
    }
    if params.alpha_minus_half() {
        return (q_alpha_minus_half(b, ym1, yp1), LegendrePath::AlphaMinusHalf);
    }
    if let Some(m) = params.beta_exact_integer().filter(|&m| m >= 1) {
        let mf = m as f64;
        let g = 0.5 - a - mf;
        let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
        let y = 1.0 + ym1;
        let v = PI.sqrt() * sign * gamma(mf) / pochhammer(2.0 * a + 1.0, (m - 1) as u32)
            * (mf - a - 1.5).exp2()
            * gamma_reciprocal(a + 1.0)
            * (yp1 * ym1).powf(0.5 * g)
            * jacobi_poly((m - 1) as u32, g, g, y);
        return (v, LegendrePath::PositiveIntegerBeta);
    }
    if let Some(n) = params.alpha_positive_half_integer() {
        if params.beta_exact_integer().is_none() && ym1 <= 1.0 {
            let nf = n as f64;
            let y = 1.0 + ym1;
            let e = 0.5 * (nf + b);
            let r = yp1 / ym1;
            let pre = PI * gamma(nf + 1.0) / (2.0 * sinpi(nf + b))
                * gamma_reciprocal(1.0 - b)
                * gamma_reciprocal(2.0 * nf + b + 1.0);
            let v = pre
                * (r.powf(e) * jacobi_poly(n, -nf - b, nf + b, y)
                    - r.powf(-e) * jacobi_poly(n, nf + b, -nf - b, y));
            return (v, LegendrePath::HalfInteger);
        }
    }
    if a == -0.5 {
        return (q_alpha_minus_half(b, ym1, yp1), LegendrePath::Generic);
    }
    (q_generic(a, b, ym1, yp1), LegendrePath::Generic)
}

fn q_alpha_minus_half(b: f64, ym1: f64, yp1: f64) -> f64 {
    let e = 0.5 * (1.0 - b);
    let r = yp1 / ym1;
    0.5 * (r.powf(e) + r.powf(-e))
}

fn q_generic(a: f64, b: f64, ym1: f64, yp1: f64) -> f64 {
    let w = 2.0 / yp1;
    let wc = ym1 / yp1;
    (a - 0.5).exp2()
        * gamma(a + 0.5)
        * yp1.powf(-0.5 * (3.0 * a + b + 0.5))
        * ym1.powf(0.5 * (a + b - 0.5))
        * hyp2f1_reg(a + 0.5, 2.0 * a + b, 2.0 * a + 1.0, w, wc)
}
