//! The kernel K_t^{α,β}(x,z): regimes, Legendre representation, closed forms,
//! and an independent oscillatory-quadrature oracle.

mod closed;
mod oracle;
mod zeros;

pub use closed::kernel_closed_form;
pub use oracle::kernel_oracle_quadrature;
pub use zeros::{count_legendre_zeros, predicted_zeros, ZeroCount, ZeroPrediction};

use crate::quad::QuadError;
use crate::special_fun::gamma::{gamma_ln, gamma_reciprocal, ln_gamma_pos};
use crate::special_fun::legendre::{ferrers_p_parts, olver_q_parts};
use crate::special_fun::{in_exceptional_p, in_exceptional_q, Params, SpecialError};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum KernelError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("point lies on a singular surface ({0:?})")]
    SingularSurface(Regime),
    #[error("oracle did not converge: estimate {estimate:e}, error {error:e}")]
    Convergence { estimate: f64, error: f64 },
    #[error(transparent)]
    Special(#[from] SpecialError),
}

impl From<QuadError> for KernelError {
    fn from(e: QuadError) -> Self {
        match e {
            QuadError::NoConvergence { estimate, error } => KernelError::Convergence { estimate, error },
            QuadError::BadSpec(s) => KernelError::Domain(s),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Regime {
    Vanishing,
    Interior,
    Exterior,
    BoundaryLower,
    BoundaryUpper,
}

impl Regime {
    pub fn name(&self) -> &'static str {
        match self {
            Regime::Vanishing => "vanishing",
            Regime::Interior => "interior",
            Regime::Exterior => "exterior",
            Regime::BoundaryLower => "boundary_lower",
            Regime::BoundaryUpper => "boundary_upper",
        }
    }

    pub fn is_boundary(&self) -> bool {
        matches!(self, Regime::BoundaryLower | Regime::BoundaryUpper)
    }
}

fn check_positive(t: f64, x: f64, z: f64) -> Result<(), KernelError> {
    if !(t > 0.0 && x > 0.0 && z > 0.0) || !(t.is_finite() && x.is_finite() && z.is_finite()) {
        return Err(KernelError::Domain(format!("t, x, z must be positive and finite, got ({t}, {x}, {z})")));
    }
    Ok(())
}

pub fn classify_regime(t: f64, x: f64, z: f64) -> Result<Regime, KernelError> {
    check_positive(t, x, z)?;
    Ok(KernelPoint::new(t, x, z).regime())
}

/// A space-time point with the signed gaps to both singular surfaces.
///
/// `gap_lower = t − |x−z|` and `gap_upper = (x+z) − t`; callers that know
/// these more accurately than the subtraction (quadrature near a surface)
/// pass them in through [`KernelPoint::with_gaps`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelPoint {
    pub t: f64,
    pub x: f64,
    pub z: f64,
    pub gap_lower: f64,
    pub gap_upper: f64,
}

impl KernelPoint {
    pub fn new(t: f64, x: f64, z: f64) -> Self {
        let d = (x - z).abs();
        let s = x + z;
        KernelPoint { t, x, z, gap_lower: t - d, gap_upper: s - t }
    }

    pub fn with_gaps(t: f64, x: f64, z: f64, gap_lower: f64, gap_upper: f64) -> Self {
        KernelPoint { t, x, z, gap_lower, gap_upper }
    }

    pub fn regime(&self) -> Regime {
        if self.gap_lower < 0.0 {
            Regime::Vanishing
        } else if self.gap_lower == 0.0 {
            Regime::BoundaryLower
        } else if self.gap_upper > 0.0 {
            Regime::Interior
        } else if self.gap_upper == 0.0 {
            Regime::BoundaryUpper
        } else {
            Regime::Exterior
        }
    }

    /// t² − (x−z)², from the lower gap.
    pub fn delta_lower(&self) -> f64 {
        self.gap_lower * (self.t + (self.x - self.z).abs())
    }

    /// (x+z)² − t², from the upper gap (negative in the Exterior).
    pub fn delta_upper(&self) -> f64 {
        self.gap_upper * (self.t + self.x + self.z)
    }

    pub fn cos_v(&self) -> f64 {
        (self.x * self.x + self.z * self.z - self.t * self.t) / (2.0 * self.x * self.z)
    }

    pub fn cosh_u(&self) -> f64 {
        (self.t * self.t - self.x * self.x - self.z * self.z) / (2.0 * self.x * self.z)
    }

    /// ln(|Δ₋Δ₊|/(2xz)²), equal to ln sin²v or ln sinh²u.
    fn ln_delta_product(&self) -> f64 {
        let d = (self.x - self.z).abs();
        self.gap_lower.ln() + (self.t + d).ln() + self.gap_upper.abs().ln() + (self.t + self.x + self.z).ln()
            - 2.0 * (2.0 * self.x * self.z).ln()
    }

    /// (1 − cos v, 1 + cos v) in the Interior.
    pub fn one_minus_plus_cos_v(&self) -> (f64, f64) {
        let p = 2.0 * self.x * self.z;
        let d = (self.x - self.z).abs();
        (self.gap_lower / p * (self.t + d), self.gap_upper / p * (self.t + self.x + self.z))
    }

    /// (cosh u − 1, cosh u + 1) in the Exterior.
    pub fn cosh_u_minus_plus_one(&self) -> (f64, f64) {
        let p = 2.0 * self.x * self.z;
        let d = (self.x - self.z).abs();
        (-self.gap_upper / p * (self.t + self.x + self.z), self.gap_lower / p * (self.t + d))
    }
}

/// ln(2^{α+β} Γ(α+β+1)/√(2π)); α+β+1 > 1/2 always.
fn ln_prefactor(params: &Params) -> f64 {
    let nu = params.alpha() + params.beta();
    nu * std::f64::consts::LN_2 + ln_gamma_pos(nu + 1.0) - 0.5 * (2.0 * std::f64::consts::PI).ln()
}

/// K_t^{α,β}(x,z) by the Legendre representation.
pub fn kernel_legendre(params: &Params, t: f64, x: f64, z: f64) -> Result<f64, KernelError> {
    check_positive(t, x, z)?;
    let kp = KernelPoint::new(t, x, z);
    let regime = kp.regime();
    if regime.is_boundary() {
        return Err(KernelError::SingularSurface(regime));
    }
    Ok(kernel_at(params, &kp))
}

/// Legendre-path kernel at a prepared point; boundary points give NaN.
pub fn kernel_at(params: &Params, kp: &KernelPoint) -> f64 {
    let a = params.alpha();
    let b = params.beta();
    let s = a + b - 0.5;
    match kp.regime() {
        Regime::Vanishing => 0.0,
        Regime::BoundaryLower | Regime::BoundaryUpper => f64::NAN,
        Regime::Interior => {
            let (omy, opy) = kp.one_minus_plus_cos_v();
            let p = ferrers_p_parts(params, omy.max(f64::MIN_POSITIVE), opy).0;
            let ln_mag = ln_prefactor(params) + (b - 1.0) * (kp.x * kp.z).ln() - 2.0 * (a + b) * kp.t.ln()
                + 0.5 * s * kp.ln_delta_product();
            ln_mag.exp() * p
        }
        Regime::Exterior => {
            let rg = gamma_reciprocal(b);
            if rg == 0.0 {
                return 0.0;
            }
            let (ym1, yp1) = kp.cosh_u_minus_plus_one();
            let q = olver_q_parts(params, ym1, yp1).0;
            let ln_mag = ln_prefactor(params) + (b - 1.0) * (kp.x * kp.z).ln() - 2.0 * (a + b) * kp.t.ln()
                + 0.5 * s * kp.ln_delta_product();
            2.0 * rg * ln_mag.exp() * q
        }
    }
}

/// Which explicit parameter line (α,β) lies on, by exactness flags.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ExplicitLine {
    BetaNonPositiveInteger(u32),
    TwoAlphaPlusBetaZero,
    AlphaMinusHalf,
    AlphaHalfInteger(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub in_e_p: bool,
    pub in_e_q: bool,
    pub explicit_line: Option<ExplicitLine>,
}

pub fn explicit_line(params: &Params) -> Option<ExplicitLine> {
    if let Some(n) = params.beta_nonpositive_integer() {
        Some(ExplicitLine::BetaNonPositiveInteger(n))
    } else if params.two_alpha_plus_beta_zero() {
        Some(ExplicitLine::TwoAlphaPlusBetaZero)
    } else if params.alpha_minus_half() {
        Some(ExplicitLine::AlphaMinusHalf)
    } else {
        params.alpha_positive_half_integer().map(ExplicitLine::AlphaHalfInteger)
    }
}

pub fn exceptional_membership(params: &Params) -> Membership {
    Membership {
        in_e_p: in_exceptional_p(params),
        in_e_q: in_exceptional_q(params),
        explicit_line: explicit_line(params),
    }
}

/// 2^{α+β} Γ(α+β+1), the normalisation m_{α,β}(0) = 1.
pub fn normalisation(params: &Params) -> f64 {
    let nu = params.alpha() + params.beta();
    (nu * std::f64::consts::LN_2 + gamma_ln(nu + 1.0).unwrap_or(f64::NAN)).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special_fun::rat;

    #[test]
    fn regimes() {
        assert_eq!(classify_regime(1.0, 3.0, 1.0).unwrap(), Regime::Vanishing);
        assert_eq!(classify_regime(2.0, 1.0, 1.5).unwrap(), Regime::Interior);
        assert_eq!(classify_regime(4.0, 1.0, 1.0).unwrap(), Regime::Exterior);
        assert_eq!(classify_regime(2.0, 3.0, 1.0).unwrap(), Regime::BoundaryLower);
        assert_eq!(classify_regime(4.0, 3.0, 1.0).unwrap(), Regime::BoundaryUpper);
        assert!(classify_regime(0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn explicit_anchors() {
        let p = Params::exact(rat(1, 2), rat(0, 1)).unwrap();
        let k = kernel_legendre(&p, 2.0, 1.0, 1.5).unwrap();
        assert!((k - 1.0 / 6.0).abs() < 1e-15);
        assert_eq!(kernel_legendre(&p, 4.0, 1.0, 1.5).unwrap(), 0.0);
        let p = Params::exact(rat(-1, 2), rat(1, 1)).unwrap();
        assert!((kernel_legendre(&p, 4.0, 1.0, 1.0).unwrap() - 0.25).abs() < 1e-15);
        assert!((kernel_legendre(&p, 1.5, 1.0, 1.0).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(kernel_legendre(&p, 0.5, 3.0, 1.0).unwrap(), 0.0);
        assert!(matches!(kernel_legendre(&p, 2.0, 1.0, 1.0), Err(KernelError::SingularSurface(_))));
    }

    #[test]
    fn point_identities() {
        let kp = KernelPoint::new(1.7, 1.0, 1.2);
        let (omy, opy) = kp.one_minus_plus_cos_v();
        assert!((1.0 - kp.cos_v() - omy).abs() < 1e-12);
        assert!((1.0 + kp.cos_v() - opy).abs() < 1e-12);
        let kp = KernelPoint::new(3.1, 1.0, 1.2);
        let (ym1, yp1) = kp.cosh_u_minus_plus_one();
        assert!((kp.cosh_u() - 1.0 - ym1).abs() < 1e-12);
        assert!((kp.cosh_u() + 1.0 - yp1).abs() < 1e-12);
    }

    #[test]
    fn membership_examples() {
        let m = exceptional_membership(&Params::exact(rat(1, 2), rat(-3, 5)).unwrap());
        assert!(m.in_e_p);
        assert_eq!(m.explicit_line, Some(ExplicitLine::AlphaHalfInteger(0)));
        let m = exceptional_membership(&Params::exact(rat(1, 4), rat(-1, 2)).unwrap());
        assert!(!m.in_e_p && !m.in_e_q);
        assert_eq!(m.explicit_line, Some(ExplicitLine::TwoAlphaPlusBetaZero));
        let m = exceptional_membership(&Params::new(0.4, 0.7).unwrap());
        assert_eq!(m.explicit_line, None);
    }
}
