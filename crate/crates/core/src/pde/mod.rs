//! Radial solutions of the Euler–Poisson–Darboux, wave and Bessel-type
//! Cauchy problems as means M_t^{α,β}, with finite-difference residuals and
//! Strichartz-ratio experiments.

mod strichartz;

pub use strichartz::{
    data_norm, fit_slope, mixed_norm, predicted_slope, strichartz_ratio, strichartz_ratio_exchanged, NormOrder,
};

use crate::quad::{QuadError, QuadSpec};
use crate::regions::RegionError;
use crate::special_fun::{rat, Params, Rational};
use crate::transforms::{mean_kernel_side, RadialProfile, TransformError};
use serde::Serialize;
use std::f64::consts::FRAC_PI_2;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PdeError {
    #[error("invalid problem: {0}")]
    Invalid(String),
    #[error("excluded case: {0}")]
    Excluded(String),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error(transparent)]
    Quadrature(#[from] QuadError),
    #[error(transparent)]
    Region(#[from] RegionError),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Problem {
    /// Δu − u_tt − ((n+2β−1)/t) u_t = 0 in ℝⁿ.
    Epd { n: u32, beta: Rational },
    /// Δu = u_tt in ℝⁿ.
    Wave { n: u32 },
    /// L_α u − u_tt − ((2α+2β+1)/t) u_t = 0.
    BesselEpd { alpha: Rational, beta: Rational },
    /// L_α u = u_tt.
    BesselWave { alpha: Rational },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DataRole {
    InitialPosition,
    InitialSpeed,
}

#[derive(Clone, Debug)]
pub struct CauchySpec {
    pub problem: Problem,
    pub data: RadialProfile,
    pub role: DataRole,
    params: Params,
}

impl CauchySpec {
    pub fn new(problem: Problem, data: RadialProfile, role: DataRole) -> Result<Self, PdeError> {
        let half = rat(1, 2);
        if let Problem::Epd { n: 0, .. } | Problem::Wave { n: 0 } = problem {
            return Err(PdeError::Invalid("dimension must be positive".into()));
        }
        let (alpha, beta) = match problem {
            Problem::Epd { n, beta } => (dim_alpha(n), beta),
            Problem::Wave { n } => {
                let alpha = dim_alpha(n);
                (alpha, wave_beta(alpha, role))
            }
            Problem::BesselEpd { alpha, beta } => (alpha, beta),
            Problem::BesselWave { alpha } => (alpha, wave_beta(alpha, role)),
        };
        let is_wave = matches!(problem, Problem::Wave { .. } | Problem::BesselWave { .. });
        if alpha <= rat(-1, 1) {
            return Err(PdeError::Invalid(format!("alpha must exceed -1, got {alpha}")));
        }
        if alpha + beta == -half {
            return Err(PdeError::Excluded(
                "alpha + beta = -1/2 (initial-position wave data) is not covered by the mean representation".into(),
            ));
        }
        if alpha + beta < -half {
            return Err(PdeError::Invalid(format!("need alpha + beta > -1/2, got ({alpha}, {beta})")));
        }
        if !is_wave && role == DataRole::InitialSpeed {
            return Err(PdeError::Invalid("EPD problems take the data as initial position".into()));
        }
        let params = Params::exact(alpha, beta).map_err(|e| PdeError::Invalid(e.to_string()))?;
        Ok(CauchySpec { problem, data, role, params })
    }

    /// (α, β) of the mean that solves the problem.
    pub fn params(&self) -> &Params {
        &self.params
    }

    /// The solution is t·M_t f rather than M_t f.
    pub fn times_t(&self) -> bool {
        self.role == DataRole::InitialSpeed
    }

    /// c in L_α u − u_tt − (c/t) u_t.
    pub fn damping(&self) -> f64 {
        if self.times_t() {
            0.0
        } else {
            2.0 * self.params.alpha() + 2.0 * self.params.beta() + 1.0
        }
    }
}

fn dim_alpha(n: u32) -> Rational {
    rat(n as i128, 2) - 1
}

/// Speed data gives β = 1/2 − α; position data would need β = −1/2 − α.
fn wave_beta(alpha: Rational, role: DataRole) -> Rational {
    match role {
        DataRole::InitialSpeed => rat(1, 2) - alpha,
        DataRole::InitialPosition => -rat(1, 2) - alpha,
    }
}

pub fn solve(spec: &CauchySpec, x: f64, t: f64, quad: &QuadSpec) -> Result<f64, PdeError> {
    let m = mean_kernel_side(&spec.params, &spec.data, t, x, quad)?;
    Ok(if spec.times_t() { t * m } else { m })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Residual {
    pub h: f64,
    /// L_α u − u_tt − (c/t) u_t by centered differences.
    pub value: f64,
    /// max |u| over the stencil.
    pub scale: f64,
    /// The stencil straddles t = x, where the exterior part of the kernel switches on.
    pub unreliable: bool,
}

impl Residual {
    pub fn relative(&self) -> f64 {
        if self.scale == 0.0 {
            self.value.abs()
        } else {
            self.value.abs() / self.scale
        }
    }
}

pub fn epd_residual(spec: &CauchySpec, x: f64, t: f64, h: f64, quad: &QuadSpec) -> Result<Residual, PdeError> {
    if !(h > 0.0 && t > 2.0 * h && x > 2.0 * h) {
        return Err(PdeError::Invalid(format!("stencil step {h} too large for (x, t) = ({x}, {t})")));
    }
    let u = |x: f64, t: f64| solve(spec, x, t, quad);
    let c = u(x, t)?;
    let (xp, xm) = (u(x + h, t)?, u(x - h, t)?);
    let (tp, tm) = (u(x, t + h)?, u(x, t - h)?);
    let h2 = h * h;
    let a = spec.params.alpha();
    let lx = (xp - 2.0 * c + xm) / h2 + (2.0 * a + 1.0) / x * (xp - xm) / (2.0 * h);
    let lt = (tp - 2.0 * c + tm) / h2 + spec.damping() / t * (tp - tm) / (2.0 * h);
    let scale = [c, xp, xm, tp, tm].iter().fold(0.0f64, |m, v| m.max(v.abs()));
    Ok(Residual { h, value: lx - lt, scale, unreliable: (x - t).abs() <= 2.0 * h })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Richardson {
    pub coarse: Residual,
    pub fine: Residual,
    /// coarse / fine; about 4 for a second-order stencil.
    pub ratio: f64,
}

pub fn richardson(spec: &CauchySpec, x: f64, t: f64, h: f64, quad: &QuadSpec) -> Result<Richardson, PdeError> {
    let coarse = epd_residual(spec, x, t, h, quad)?;
    let fine = epd_residual(spec, x, t, 0.5 * h, quad)?;
    Ok(Richardson { coarse, fine, ratio: coarse.value / fine.value })
}

/// ½∫_{x−t}^{x+t} e^{−y²/2} dy, the one-dimensional wave solution with
/// Gaussian initial speed.
pub fn dalembert_gaussian(x: f64, t: f64) -> f64 {
    let big_f = |y: f64| FRAC_PI_2.sqrt() * libm::erf(y / std::f64::consts::SQRT_2);
    0.5 * (big_f(x + t) - big_f(x - t))
}

/// Tricomi value β = 2/3 − n/2 for EPD in dimension n.
pub fn tricomi_beta(n: u32) -> Rational {
    rat(2, 3) - rat(n as i128, 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian(problem: Problem, role: DataRole) -> CauchySpec {
        CauchySpec::new(problem, RadialProfile::gaussian(), role).unwrap()
    }

    #[test]
    fn spec_validation() {
        let g = RadialProfile::gaussian();
        let err = CauchySpec::new(Problem::Wave { n: 3 }, g.clone(), DataRole::InitialPosition).unwrap_err();
        assert!(matches!(err, PdeError::Excluded(_)));
        let err = CauchySpec::new(Problem::BesselWave { alpha: rat(1, 3) }, g.clone(), DataRole::InitialPosition);
        assert!(matches!(err, Err(PdeError::Excluded(_))));
        let err = CauchySpec::new(Problem::Epd { n: 3, beta: rat(-1, 1) }, g.clone(), DataRole::InitialPosition);
        assert!(matches!(err, Err(PdeError::Excluded(_))));
        let err = CauchySpec::new(Problem::Epd { n: 3, beta: rat(-2, 1) }, g.clone(), DataRole::InitialPosition);
        assert!(matches!(err, Err(PdeError::Invalid(_))));
        let s = gaussian(Problem::Wave { n: 3 }, DataRole::InitialSpeed);
        assert_eq!(s.params().exact_values(), Some((rat(1, 2), rat(0, 1))));
        assert_eq!(s.damping(), 0.0);
    }

    #[test]
    fn spherical_mean_of_constant() {
        let spec = CauchySpec::new(
            Problem::Epd { n: 3, beta: rat(0, 1) },
            RadialProfile::constant_on(1.0, 0.0, 10.0),
            DataRole::InitialPosition,
        )
        .unwrap();
        for (x, t) in [(2.0, 1.0), (1.0, 3.0), (5.0, 4.5)] {
            let v = solve(&spec, x, t, &QuadSpec::default()).unwrap();
            assert!((v - 1.0).abs() < 1e-10, "{v}");
        }
    }

    #[test]
    fn speed_data_at_small_time() {
        let spec = CauchySpec::new(
            Problem::BesselWave { alpha: rat(1, 2) },
            RadialProfile::plateau(0.5, 3.0, 0.5),
            DataRole::InitialSpeed,
        )
        .unwrap();
        for t in [0.05, 0.1] {
            let u = solve(&spec, 1.7, t, &QuadSpec::default()).unwrap();
            assert!((u - t).abs() < 1e-10, "{u}");
        }
    }

    #[test]
    fn one_dimensional_wave() {
        let spec = gaussian(Problem::Wave { n: 1 }, DataRole::InitialSpeed);
        let quad = QuadSpec::with_tol(1e-10);
        for (x, t) in [(0.7, 0.3), (1.0, 2.5), (2.0, 2.0), (0.2, 4.0)] {
            let u = solve(&spec, x, t, &quad).unwrap();
            let want = dalembert_gaussian(x, t);
            assert!((u - want).abs() < 1e-9, "({x},{t}) {u} vs {want}");
        }
    }

    #[test]
    fn residual_is_second_order() {
        let quad = QuadSpec::with_tol(1e-12);
        let cases = [
            gaussian(Problem::BesselEpd { alpha: rat(1, 2), beta: rat(1, 1) }, DataRole::InitialPosition),
            gaussian(Problem::Epd { n: 2, beta: tricomi_beta(2) }, DataRole::InitialPosition),
            gaussian(Problem::BesselWave { alpha: rat(1, 1) }, DataRole::InitialSpeed),
        ];
        for spec in &cases {
            let r = richardson(spec, 1.2, 0.6, 0.1, &quad).unwrap();
            assert!(!r.coarse.unreliable);
            assert!((3.0..=5.0).contains(&r.ratio), "{:?}: {r:?}", spec.problem);
        }
    }

    #[test]
    fn constant_data_has_no_residual() {
        let spec = CauchySpec::new(
            Problem::Epd { n: 2, beta: rat(1, 3) },
            RadialProfile::constant_on(1.0, 0.0, 20.0),
            DataRole::InitialPosition,
        )
        .unwrap();
        let r = epd_residual(&spec, 3.0, 1.0, 0.1, &QuadSpec::with_tol(1e-12)).unwrap();
        assert!(r.value.abs() < 1e-6, "{r:?}");
        assert!(epd_residual(&spec, 0.1, 1.0, 0.1, &QuadSpec::default()).is_err());
    }
}
