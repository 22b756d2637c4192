//! Oracle-vs-envelope audits: pointwise sharpness bands, time-norm bands and
//! growth of truncated norms when the norm is infinite.

use super::{audit_times, pointwise_at, time_norm_envelope, time_norm_numeric, time_norm_truncated, BandStats, EnvelopeError};
use crate::kernel::{kernel_at, predicted_zeros, KernelPoint, Regime, ZeroPrediction};
use crate::quad::QuadSpec;
use crate::special_fun::{rat_to_f64, LegendreFunction, Params, Rational};
use serde::Serialize;

/// Result of [`sharpness_audit`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SharpnessReport {
    /// Ratios |K|/envelope over points flagged sharp.
    pub band: BandStats,
    /// Every sharp point with a sign-suppressible flag had sign·K > 0.
    pub sign_consistent: bool,
    /// `Some(one_signed)` when the Interior kernel is predicted zero-free.
    pub interior_one_signed: Option<bool>,
    pub exterior_one_signed: Option<bool>,
    /// K vanished exactly wherever the envelope is 0.
    pub zeros_respected: bool,
    pub points: usize,
}

/// Compares K with its pointwise envelope at x = 1 and each z, over
/// [`audit_times`].
pub fn sharpness_audit(params: &Params, zs: &[f64], eps: f64) -> SharpnessReport {
    let x = 1.0;
    let mut ratios = Vec::new();
    let mut sign_consistent = true;
    let mut zeros_respected = true;
    let mut interior = (false, false);
    let mut exterior = (false, false);
    let mut points = 0;
    for &z in zs {
        for t in audit_times(x, z, eps) {
            let kp = KernelPoint::new(t, x, z);
            if kp.regime().is_boundary() {
                continue;
            }
            points += 1;
            let k = kernel_at(params, &kp);
            let env = pointwise_at(params, &kp, eps);
            let seen = match kp.regime() {
                Regime::Interior => Some(&mut interior),
                Regime::Exterior => Some(&mut exterior),
                _ => None,
            };
            if let Some(s) = seen {
                s.0 |= k > 0.0;
                s.1 |= k < 0.0;
            }
            if env.value == 0.0 {
                zeros_respected &= k == 0.0;
                continue;
            }
            if !env.sharp {
                continue;
            }
            ratios.push(k / env.value);
            if env.sign_suppressible {
                sign_consistent &= f64::from(env.sign) * k > 0.0;
            }
        }
    }
    let zero_free = |which| predicted_zeros(params, which) == ZeroPrediction::Exactly(0);
    let interior_one_signed = zero_free(LegendreFunction::FerrersP).then_some(!(interior.0 && interior.1));
    let exterior_one_signed = zero_free(LegendreFunction::OlverQ).then_some(!(exterior.0 && exterior.1));
    SharpnessReport {
        band: BandStats::from_ratios(ratios),
        sign_consistent,
        interior_one_signed,
        exterior_one_signed,
        zeros_respected,
        points,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TimeNormRow {
    pub x: f64,
    pub z: f64,
    pub numeric: f64,
    pub envelope: f64,
    pub sharp: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TimeNormAudit {
    pub rows: Vec<TimeNormRow>,
    pub band: BandStats,
}

/// Numeric time norms against the envelope at x = 1, z = 2^k for each k;
/// points where the envelope is infinite (x = z poles) are skipped.
pub fn time_norm_audit(
    params: &Params,
    r: &Rational,
    rho: &Rational,
    exponents: &[i32],
    spec: &QuadSpec,
) -> Result<TimeNormAudit, EnvelopeError> {
    let (rf, rhof) = (rat_to_f64(r), rat_to_f64(rho));
    let mut rows = Vec::new();
    for &k in exponents {
        let (x, z) = (1.0, 2f64.powi(k));
        let env = time_norm_envelope(params, r, rho, x, z)?;
        if !env.value.is_finite() {
            continue;
        }
        let numeric = time_norm_numeric(params, rf, rhof, x, z, spec)?;
        rows.push(TimeNormRow { x, z, numeric, envelope: env.value, sharp: env.sharp });
    }
    let band = BandStats::from_ratios(rows.iter().map(|r| r.numeric / r.envelope));
    Ok(TimeNormAudit { rows, band })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthReport {
    /// Truncated integrals at levels 0..=levels.
    pub values: Vec<f64>,
    pub monotone: bool,
    /// Increments shrink geometrically, as for a convergent integral.
    pub stabilizing: bool,
}

impl GrowthReport {
    pub fn from_values(values: Vec<f64>) -> Self {
        let inc: Vec<f64> = values.windows(2).map(|w| w[1] - w[0]).collect();
        let monotone = inc.iter().all(|&d| d > 0.0);
        let stabilizing = inc.windows(2).any(|w| w[1] < GROWTH_FLOOR * w[0]);
        GrowthReport { values, monotone, stabilizing }
    }

    pub fn unbounded(&self) -> bool {
        self.monotone && !self.stabilizing
    }
}

/// Truncated ∫|K|^r t^ρ dt over `levels` doublings of the truncation.
pub fn truncation_growth(
    params: &Params,
    r: f64,
    rho: f64,
    x: f64,
    z: f64,
    levels: u32,
    spec: &QuadSpec,
) -> Result<GrowthReport, EnvelopeError> {
    let values = (0..=levels)
        .map(|k| time_norm_truncated(params, r, rho, x, z, k, spec))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GrowthReport::from_values(values))
}

/// Successive increments of a divergent truncation stay above this fraction
/// of the previous one.
const GROWTH_FLOOR: f64 = 0.7;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special_fun::rat;

    #[test]
    fn generic_positive_case_is_sharp_everywhere() {
        let p = Params::new(0.3, 0.6).unwrap();
        let rep = sharpness_audit(&p, &[0.25, 1.0, 4.0], 0.1);
        assert!(rep.band.band_constant < 50.0, "{rep:?}");
        assert!(rep.sign_consistent && rep.zeros_respected);
        assert_eq!(rep.interior_one_signed, Some(true));
        assert_eq!(rep.exterior_one_signed, Some(true));
    }

    #[test]
    fn violating_tuple_grows() {
        let p = Params::new(0.1, 0.2).unwrap();
        let g = truncation_growth(&p, 4.0, 0.0, 1.0, 2.0, 4, &QuadSpec::default()).unwrap();
        assert!(g.unbounded(), "{g:?}");
        let p = Params::new(0.3, 0.6).unwrap();
        let g = truncation_growth(&p, 1.0, 0.0, 1.0, 2.0, 4, &QuadSpec::default()).unwrap();
        assert!(!g.unbounded(), "{g:?}");
    }

    #[test]
    fn time_norm_band() {
        let p = Params::new(0.3, 0.4).unwrap();
        let a = time_norm_audit(&p, &rat(1, 1), &rat(1, 2), &(-6..=6).collect::<Vec<_>>(), &QuadSpec::default()).unwrap();
        assert_eq!(a.rows.len(), 13);
        assert!(a.band.band_constant < 50.0, "{:?}", a.band);
    }
}
