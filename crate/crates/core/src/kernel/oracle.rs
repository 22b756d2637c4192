//! Direct quadrature of the triple-Bessel kernel integral.
//!
//! The integral over [0, Y₀] is summed over one-period panels. Beyond Y₀ each
//! J is split into H⁺ + H⁻ and the four distinct frequencies
//! ω = t ± x ± z are integrated along rays Y₀ + i·sign(ω)·s, where the
//! oscillation turns into exponential decay.

use super::{check_positive, KernelError, KernelPoint};
use crate::quad::{adaptive, exp_sinh, gk15, tanh_sinh, Neumaier, QuadSpec};
use crate::special_fun::bessel::{hankel_series_complex, j_scaled};
use crate::special_fun::gamma::ln_gamma_pos;
use crate::special_fun::Params;
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

/// K_t^{α,β}(x,z) from its defining integral.
pub fn kernel_oracle_quadrature(params: &Params, t: f64, x: f64, z: f64, spec: &QuadSpec) -> Result<f64, KernelError> {
    check_positive(t, x, z)?;
    spec.validate()?;
    let regime = KernelPoint::new(t, x, z).regime();
    if regime.is_boundary() {
        return Err(KernelError::SingularSurface(regime));
    }
    let a = params.alpha();
    let nu = a + params.beta();
    let norm = (nu * std::f64::consts::LN_2 + ln_gamma_pos(nu + 1.0)).exp();

    let w_min = 30.0 + 1.5 * nu.abs().max(a.abs()).powi(2);
    let y0 = (40.0 / t.max(x).max(z).max(1.0)).max(w_min / t.min(x).min(z));

    let head = head_integral(a, nu, t, x, z, y0, spec)?;
    let tail = tail_integral(a, nu, t, x, z, y0, spec)?;
    Ok(norm * (head + tail))
}

fn head_integral(a: f64, nu: f64, t: f64, x: f64, z: f64, y0: f64, spec: &QuadSpec) -> Result<f64, KernelError> {
    let f = |y: f64| y.powf(2.0 * a + 1.0) * j_scaled(nu, t * y) * j_scaled(a, x * y) * j_scaled(a, z * y);
    let period = 2.0 * PI / (t + x + z);
    let n = ((y0 / period).ceil() as usize).max(1);
    if n > spec.max_panels {
        return Err(KernelError::Convergence { estimate: f64::NAN, error: f64::INFINITY });
    }
    let h = y0 / n as f64;
    let mut scale = 0.0;
    for i in 1..n {
        scale += gk15(&f, i as f64 * h, (i + 1) as f64 * h).0.abs();
    }
    let panel_tol = 0.1 * spec.tol * scale / n as f64;
    let mut sum = Neumaier::default();
    // y^{2α+1} may be singular at the origin
    let first = tanh_sinh(|y, _, _| f(y), 0.0, h, 1e-3 * spec.tol)?;
    sum.add(first.value);
    for i in 1..n {
        let r = adaptive(&f, i as f64 * h, (i + 1) as f64 * h, panel_tol, 0.0, 200)?;
        sum.add(r.value);
    }
    Ok(sum.value())
}

fn tail_integral(a: f64, nu: f64, t: f64, x: f64, z: f64, y0: f64, spec: &QuadSpec) -> Result<f64, KernelError> {
    let pre = (t.powf(-nu - 0.5) * (x * z).powf(-a - 0.5)) * (2.0 / PI).powf(1.5) / 8.0;
    let mut total = Complex64::new(0.0, 0.0);
    for (e2, e3) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
        let omega = t + e2 * x + e3 * z;
        let phase = (nu * FRAC_PI_2 + FRAC_PI_4) + e2 * (a * FRAC_PI_2 + FRAC_PI_4) + e3 * (a * FRAC_PI_2 + FRAC_PI_4);
        let sigma = if omega < 0.0 { -1.0 } else { 1.0 };
        let rate = omega.abs();
        let g = |y: Complex64| -> Complex64 {
            y.powf(-nu - 0.5)
                * hankel_series_complex(nu, y * t, true)
                * hankel_series_complex(a, y * x, e2 > 0.0)
                * hankel_series_complex(a, y * z, e3 > 0.0)
        };
        let ray = |s: f64| g(Complex64::new(y0, sigma * s)) * (-rate * s).exp();
        let r = exp_sinh(|r, _| ray(r / rate), 0.0, 0.1 * spec.tol)?;
        let integral = r.value / rate * Complex64::new(0.0, sigma);
        total += integral * Complex64::from_polar(1.0, omega * y0 - phase);
    }
    Ok(pre * 2.0 * total.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::kernel_legendre;
    use crate::special_fun::rat;

    #[test]
    fn explicit_values() {
        let spec = QuadSpec::with_tol(1e-10);
        let p = Params::exact(rat(1, 2), rat(0, 1)).unwrap();
        let k = kernel_oracle_quadrature(&p, 2.0, 1.0, 1.5, &spec).unwrap();
        assert!((k - 1.0 / 6.0).abs() < 1e-8, "{k}");
        let p = Params::exact(rat(-1, 2), rat(1, 1)).unwrap();
        let k = kernel_oracle_quadrature(&p, 1.5, 1.0, 1.0, &spec).unwrap();
        assert!((k - 1.0 / 3.0).abs() < 1e-7, "{k}");
        let k = kernel_oracle_quadrature(&p, 4.0, 1.0, 1.0, &spec).unwrap();
        assert!((k - 0.25).abs() < 1e-7, "{k}");
        let k = kernel_oracle_quadrature(&p, 0.5, 3.0, 1.0, &spec).unwrap();
        assert!(k.abs() < 1e-9, "{k}");
    }

    #[test]
    fn generic_cross_validation() {
        let spec = QuadSpec::default();
        for (a, b, t, x, z) in [(0.3, 0.6, 1.7, 1.0, 1.2), (0.3, 1.4, 5.0, 0.7, 0.9), (-0.3, 0.1, 1.1, 0.8, 0.6)] {
            let p = Params::new(a, b).unwrap();
            let o = kernel_oracle_quadrature(&p, t, x, z, &spec).unwrap();
            let l = kernel_legendre(&p, t, x, z).unwrap();
            assert!((o - l).abs() <= 1e-6 * l.abs(), "({a},{b}) at ({t},{x},{z}): {o} vs {l}");
        }
    }
}
