//! Comparability envelopes for the kernel and its time norms, with the
//! oracles used to audit them.

mod audit;
mod integrals;
mod time_norm;

pub use audit::{
    sharpness_audit, time_norm_audit, truncation_growth, GrowthReport, SharpnessReport, TimeNormAudit, TimeNormRow,
};

pub use integrals::{int_i_envelope, int_i_oracle, int_j_envelope, int_j_oracle, lemma_a, lemma_a_oracle};
pub use time_norm::{
    aux_kernel, aux_kernel_with_distance, norm_conditions, time_norm_branches, time_norm_envelope, time_norm_numeric, time_norm_truncated,
    NON_COMPARABLE_RATIO,
};

use crate::kernel::{KernelError, KernelPoint, Regime};
use crate::quad::QuadError;
use crate::special_fun::{rat, Params};
use num_traits::ToPrimitive;
use serde::Serialize;
use std::cmp::Ordering;

pub const DEFAULT_TUBE_EPS: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EnvelopeError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("integral diverges")]
    Divergent,
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

impl From<QuadError> for EnvelopeError {
    fn from(e: QuadError) -> Self {
        EnvelopeError::Kernel(e.into())
    }
}

/// Which display of the pointwise or time-norm estimate produced a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EnvelopeItem {
    Vanishing,
    InteriorZeroLine,
    InteriorHalfInteger,
    InteriorGeneric,
    ExteriorVanishing,
    ExteriorZeroLine,
    ExteriorBetaOne,
    ExteriorGeneric,
    TimeNorm,
}

impl EnvelopeItem {
    pub fn tag(&self) -> &'static str {
        match self {
            EnvelopeItem::Vanishing => "1",
            EnvelopeItem::InteriorZeroLine => "2a",
            EnvelopeItem::InteriorHalfInteger => "2b",
            EnvelopeItem::InteriorGeneric => "2c",
            EnvelopeItem::ExteriorVanishing => "3a",
            EnvelopeItem::ExteriorZeroLine => "3b",
            EnvelopeItem::ExteriorBetaOne => "3c",
            EnvelopeItem::ExteriorGeneric => "3d",
            EnvelopeItem::TimeNorm => "norm",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EnvelopeValue {
    /// Non-negative, possibly +∞.
    pub value: f64,
    /// |K| ≃ value (not merely ≲).
    pub sharp: bool,
    /// sign·K ≃ value without the absolute value.
    pub sign_suppressible: bool,
    pub sign: i8,
    pub item: EnvelopeItem,
}

/// (−1)^{⌊β ∧ 0⌋}
fn exterior_sign(params: &Params) -> i8 {
    let floor = match params.exact_values() {
        Some((_, b)) => b.floor().to_i128().unwrap_or(0).min(0),
        None => params.beta().floor().min(0.0) as i128,
    };
    if floor % 2 == 0 {
        1
    } else {
        -1
    }
}

fn lt(o: Ordering) -> bool {
    o == Ordering::Less
}

fn gt(o: Ordering) -> bool {
    o == Ordering::Greater
}

/// α > 1/2 and β < 0
fn alpha_big_beta_negative(p: &Params) -> bool {
    gt(p.sign_affine(rat(-1, 2), rat(1, 1), rat(0, 1))) && lt(p.sign_affine(rat(0, 1), rat(0, 1), rat(1, 1)))
}

/// α < −1/2 and β < −2α
fn alpha_small_below_line(p: &Params) -> bool {
    lt(p.sign_affine(rat(1, 2), rat(1, 1), rat(0, 1))) && lt(p.sign_affine(rat(0, 1), rat(2, 1), rat(1, 1)))
}

/// 1 < β < −2α
pub(crate) fn in_q_zero_triangle(p: &Params) -> bool {
    gt(p.sign_affine(rat(-1, 1), rat(0, 1), rat(1, 1))) && lt(p.sign_affine(rat(0, 1), rat(2, 1), rat(1, 1)))
}

/// Pointwise envelope with the default tube width.
pub fn pointwise_envelope(params: &Params, t: f64, x: f64, z: f64) -> Result<EnvelopeValue, EnvelopeError> {
    pointwise_envelope_with(params, t, x, z, DEFAULT_TUBE_EPS)
}

pub fn pointwise_envelope_with(params: &Params, t: f64, x: f64, z: f64, eps: f64) -> Result<EnvelopeValue, EnvelopeError> {
    crate::kernel::classify_regime(t, x, z)?;
    let kp = KernelPoint::new(t, x, z);
    if kp.regime().is_boundary() {
        return Err(KernelError::SingularSurface(kp.regime()).into());
    }
    Ok(pointwise_at(params, &kp, eps))
}

/// Envelope at a prepared point; boundary points give NaN.
pub fn pointwise_at(params: &Params, kp: &KernelPoint, eps: f64) -> EnvelopeValue {
    let a = params.alpha();
    let b = params.beta();
    let s = params.s();
    let ord = params.cmp_sum_half();
    let xz = kp.x * kp.z;
    let dl = kp.delta_lower();
    let du = kp.delta_upper();
    let root = xz.sqrt();
    let near = kp.gap_lower.abs() < eps * root || kp.gap_upper.abs() < eps * root || kp.t > root / eps;
    let mk = |value: f64, global: bool, sign_ok: bool, sign: i8, item| EnvelopeValue {
        value,
        sharp: global || near,
        sign_suppressible: sign_ok,
        sign,
        item,
    };
    match kp.regime() {
        Regime::Vanishing => mk(0.0, true, true, 1, EnvelopeItem::Vanishing),
        Regime::BoundaryLower | Regime::BoundaryUpper => mk(f64::NAN, false, false, 1, EnvelopeItem::Vanishing),
        Regime::Interior => {
            let common = xz.powf(-a - 0.5) * kp.t.powf(-2.0 * (a + b)) * dl.powf(s);
            let (item, factor) = if params.beta_nonpositive_integer().is_some() || params.two_alpha_plus_beta_zero() {
                (EnvelopeItem::InteriorZeroLine, (du / xz).powf(s))
            } else if params.alpha_exact_half_integer().is_some() {
                (EnvelopeItem::InteriorHalfInteger, 1.0)
            } else {
                let f = match ord {
                    Ordering::Less => (du / xz).powf(s),
                    Ordering::Equal => 1.0 + (4.0 * xz / du).ln(),
                    Ordering::Greater => 1.0,
                };
                (EnvelopeItem::InteriorGeneric, f)
            };
            let global = !alpha_big_beta_negative(params) && !alpha_small_below_line(params);
            mk(common * factor, global, global, 1, item)
        }
        Regime::Exterior => {
            if params.beta_nonpositive_integer().is_some() {
                return mk(0.0, true, true, 1, EnvelopeItem::ExteriorVanishing);
            }
            let ep = -du;
            let common = kp.t.powf(-2.0 * (a + b)) * dl.powf(b - 1.0);
            let sign = exterior_sign(params);
            if params.two_alpha_plus_beta_zero() {
                return mk(common * (ep / dl).powf(s), true, true, sign, EnvelopeItem::ExteriorZeroLine);
            }
            if params.beta_exact_integer() == Some(1) {
                return mk(common, true, true, sign, EnvelopeItem::ExteriorBetaOne);
            }
            let f = match ord {
                Ordering::Less => (ep / dl).powf(s),
                Ordering::Equal => 1.0 + (dl / ep).ln(),
                Ordering::Greater => 1.0,
            };
            let global = !in_q_zero_triangle(params);
            mk(common * f, global, global, sign, EnvelopeItem::ExteriorGeneric)
        }
    }
}

fn require_positive_case(params: &Params) -> Result<(), EnvelopeError> {
    if !(params.alpha() > -0.5 && params.beta() > 0.0) {
        return Err(EnvelopeError::Domain(format!("requires alpha > -1/2 and beta > 0, got {params}")));
    }
    Ok(())
}

/// Two-branch estimate for α > −1/2, β > 0.
pub fn est_ker_envelope(params: &Params, t: f64, x: f64, z: f64) -> Result<f64, EnvelopeError> {
    require_positive_case(params)?;
    crate::kernel::classify_regime(t, x, z)?;
    let kp = KernelPoint::new(t, x, z);
    let (a, b, s) = (params.alpha(), params.beta(), params.s());
    let ord = params.cmp_sum_half();
    let xz = x * z;
    let (dl, du) = (kp.delta_lower(), kp.delta_upper());
    Ok(match kp.regime() {
        Regime::Vanishing => 0.0,
        Regime::Interior => {
            let f = match ord {
                Ordering::Less => (du / xz).powf(s),
                Ordering::Equal => 1.0 + (4.0 * xz / du).ln(),
                Ordering::Greater => 1.0,
            };
            xz.powf(-a - 0.5) * t.powf(-2.0 * (a + b)) * dl.powf(s) * f
        }
        Regime::Exterior => {
            let ep = -du;
            let f = match ord {
                Ordering::Less => (ep / dl).powf(s),
                Ordering::Equal => 1.0 + (dl / ep).ln(),
                Ordering::Greater => 1.0,
            };
            t.powf(-2.0 * (a + b)) * dl.powf(b - 1.0) * f
        }
        r => return Err(KernelError::SingularSurface(r).into()),
    })
}

/// The single-formula version of [`est_ker_envelope`].
pub fn compact_envelope(params: &Params, t: f64, x: f64, z: f64) -> Result<f64, EnvelopeError> {
    require_positive_case(params)?;
    crate::kernel::classify_regime(t, x, z)?;
    let kp = KernelPoint::new(t, x, z);
    match kp.regime() {
        Regime::Vanishing => return Ok(0.0),
        r if r.is_boundary() => return Err(KernelError::SingularSurface(r).into()),
        _ => {}
    }
    let (a, b, s) = (params.alpha(), params.beta(), params.s());
    let dl = kp.delta_lower();
    let de = kp.delta_upper().abs();
    let (big, small) = (dl.max(de), dl.min(de));
    let f = match params.cmp_sum_half() {
        Ordering::Less => small.powf(s),
        Ordering::Equal => 1.0 + (dl / small).ln(),
        Ordering::Greater => dl.powf(s),
    };
    Ok(t.powf(-2.0 * (a + b)) * big.powf(-a - 0.5) * f)
}

/// Spread of a family of ratios value/envelope.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BandStats {
    pub samples: usize,
    pub min_ratio: f64,
    pub max_ratio: f64,
    /// The smallest C with all ratios in [κ/C, κC] for the best κ: √(max/min).
    pub band_constant: f64,
    pub one_signed: bool,
}

impl BandStats {
    pub fn from_ratios(ratios: impl IntoIterator<Item = f64>) -> Self {
        let mut samples = 0;
        let mut lo = f64::INFINITY;
        let mut hi = 0.0f64;
        let mut pos = false;
        let mut neg = false;
        for r in ratios {
            samples += 1;
            pos |= r > 0.0;
            neg |= r < 0.0;
            let m = r.abs();
            lo = lo.min(m);
            hi = hi.max(m);
        }
        BandStats {
            samples,
            min_ratio: lo,
            max_ratio: hi,
            band_constant: (hi / lo).sqrt(),
            one_signed: !(pos && neg),
        }
    }
}

/// t-values for a sharpness audit at fixed (x,z): both surface tubes, the
/// bulk of both regimes and the far field.
pub fn audit_times(x: f64, z: f64, eps: f64) -> Vec<f64> {
    let lo = (x - z).abs();
    let hi = x + z;
    let root = (x * z).sqrt();
    let mut ts = Vec::new();
    for k in 1..=12 {
        let d = eps * root * 10f64.powf(-(k as f64) / 2.0);
        ts.push(lo + d);
        ts.push(hi - d);
        ts.push(hi + d);
    }
    for k in 1..20 {
        ts.push(lo + (hi - lo) * k as f64 / 20.0);
    }
    for k in 0..=12 {
        ts.push(hi * 1.05 + root * 10f64.powf(k as f64 / 3.0));
    }
    ts.retain(|&t| t > 0.0 && t != lo && t != hi);
    ts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::kernel_legendre;

    fn ex(an: i128, ad: i128, bn: i128, bd: i128) -> Params {
        Params::exact(rat(an, ad), rat(bn, bd)).unwrap()
    }

    #[test]
    fn explicit_kernel_ratio_is_constant() {
        let p = ex(1, 2, 0, 1);
        let mut ratios = Vec::new();
        for &z in &[0.3, 1.0, 4.0] {
            for t in audit_times(1.0, z, 0.1) {
                let kp = KernelPoint::new(t, 1.0, z);
                if kp.regime() != Regime::Interior {
                    continue;
                }
                let e = pointwise_envelope(&p, t, 1.0, z).unwrap();
                assert_eq!(e.item, EnvelopeItem::InteriorZeroLine);
                ratios.push(kernel_legendre(&p, t, 1.0, z).unwrap() / e.value);
            }
        }
        let b = BandStats::from_ratios(ratios);
        assert!((b.max_ratio - 0.5).abs() < 1e-12 && (b.min_ratio - 0.5).abs() < 1e-12);
    }

    #[test]
    fn vanishing_and_log_row() {
        let p = Params::new(0.3, 0.2).unwrap();
        let e = pointwise_envelope(&p, 1.0, 3.0, 1.0).unwrap();
        assert_eq!(e.value, 0.0);
        assert!(e.sharp);
        let p = ex(3, 10, 1, 5);
        let (t, x, z) = (1.7, 1.0, 1.2);
        let e = pointwise_envelope(&p, t, x, z).unwrap();
        let du = (x + z) * (x + z) - t * t;
        let want = (x * z).powf(-0.8) * t.powf(-1.0) * (1.0 + (4.0 * x * z / du).ln());
        assert_eq!(e.item, EnvelopeItem::InteriorGeneric);
        assert!((e.value - want).abs() < 1e-12 * want);
    }

    #[test]
    fn sharp_flags() {
        let p = Params::new(0.8, -0.3).unwrap();
        let e = pointwise_envelope(&p, 1.7, 1.0, 1.2).unwrap();
        assert!(!e.sharp && !e.sign_suppressible);
        let e = pointwise_envelope(&p, 0.2 + 1e-3, 1.0, 1.2).unwrap();
        assert!(e.sharp && !e.sign_suppressible);
        let p = Params::new(-0.8, 1.2).unwrap();
        let e = pointwise_envelope(&p, 3.5, 1.0, 1.2).unwrap();
        assert!(!e.sharp);
        let p = Params::new(0.3, -0.4).unwrap();
        let e = pointwise_envelope(&p, 3.5, 1.0, 1.2).unwrap();
        assert!(e.sharp && e.sign == -1);
    }

    #[test]
    fn compact_form_matches_two_branch() {
        let mut ratios = Vec::new();
        for &(a, b) in &[(0.3, 0.1), (0.2, 0.3), (1.0, 0.7)] {
            let p = Params::new(a, b).unwrap();
            for &z in &[0.1, 0.5, 1.0, 3.0] {
                for t in audit_times(1.0, z, 0.1) {
                    let c = compact_envelope(&p, t, 1.0, z).unwrap();
                    let e = est_ker_envelope(&p, t, 1.0, z).unwrap();
                    if e > 0.0 {
                        ratios.push(c / e);
                    }
                }
            }
        }
        assert!(BandStats::from_ratios(ratios).band_constant < 10.0);
    }
}
