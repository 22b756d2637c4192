//! Elementary kernel formulas on the explicit parameter lines, written
//! directly in t, x, z through Δ₋ = t²−(x−z)² and Δ₊ = (x+z)²−t².

use super::{check_positive, explicit_line, ExplicitLine, KernelError, KernelPoint, Regime};
use crate::special_fun::gamma::{gamma, gamma_reciprocal, ln_gamma_pos, pochhammer};
use crate::special_fun::jacobi::jacobi_poly;
use crate::special_fun::Params;
use std::f64::consts::PI;

/// Closed-form K_t^{α,β}(x,z), or `None` off the explicit lines.
pub fn kernel_closed_form(params: &Params, t: f64, x: f64, z: f64) -> Result<Option<f64>, KernelError> {
    check_positive(t, x, z)?;
    let line = match explicit_line(params) {
        Some(l) => l,
        None => return Ok(None),
    };
    let kp = KernelPoint::new(t, x, z);
    let regime = kp.regime();
    if regime.is_boundary() {
        return Err(KernelError::SingularSurface(regime));
    }
    if regime == Regime::Vanishing {
        return Ok(Some(0.0));
    }
    Ok(Some(closed_at(params, line, &kp)))
}

fn closed_at(params: &Params, line: ExplicitLine, kp: &KernelPoint) -> f64 {
    let a = params.alpha();
    let b = params.beta();
    let (t, xz) = (kp.t, kp.x * kp.z);
    let dl = kp.delta_lower();
    let du = kp.delta_upper();
    let interior = kp.regime() == Regime::Interior;
    let sqrt_pi = PI.sqrt();
    match line {
        ExplicitLine::BetaNonPositiveInteger(0) => {
            if !interior {
                return 0.0;
            }
            let c = ln_gamma_pos(a + 1.0) - ln_gamma_pos(a + 0.5) - 0.5 * PI.ln() - (2.0 * a - 1.0) * std::f64::consts::LN_2;
            (c - 2.0 * a * (t * xz).ln() + (a - 0.5) * (dl * du).ln()).exp()
        }
        ExplicitLine::BetaNonPositiveInteger(n) => {
            if !interior {
                return 0.0;
            }
            let nf = n as f64;
            let g = a - nf - 0.5;
            let nu = a - nf;
            let c = nu.exp2() * gamma(nu + 1.0) / (2.0 * PI).sqrt()
                * (nf - a + 0.5).exp2()
                * gamma(nf + 1.0)
                * gamma_reciprocal(a + 0.5);
            let pi2 = 2.0 * xz;
            c * xz.powf(-nf - 1.0) * t.powf(-2.0 * nu) * ((dl * du).powf(g) * pi2.powf(-2.0 * g))
                * jacobi_poly(n, g, g, kp.cos_v())
        }
        ExplicitLine::TwoAlphaPlusBetaZero => {
            let c = (2.0 * a + 1.0).exp2() * gamma(1.0 - a) / sqrt_pi;
            if interior {
                c * gamma_reciprocal(0.5 - a) * t.powf(2.0 * a) * (dl * du).powf(-a - 0.5)
            } else {
                let ep = -du;
                2.0 * gamma(1.0 - a) * gamma_reciprocal(-2.0 * a) * gamma_reciprocal(a + 1.0)
                    * t.powf(2.0 * a)
                    * (ep * dl).powf(-a - 0.5)
            }
        }
        ExplicitLine::AlphaMinusHalf => {
            let c = gamma(b + 0.5) * gamma_reciprocal(b) / sqrt_pi * t.powf(1.0 - 2.0 * b);
            if interior {
                c * dl.powf(b - 1.0)
            } else {
                c * ((-du).powf(b - 1.0) + dl.powf(b - 1.0))
            }
        }
        ExplicitLine::AlphaHalfInteger(n) => {
            let nf = n as f64;
            let e = nf + b;
            let c = gamma(nf + 1.0) * gamma(e + 1.5) * gamma_reciprocal(2.0 * nf + b + 1.0) / sqrt_pi
                * xz.powf(-nf - 1.0)
                * t.powf(-2.0 * e - 1.0);
            if interior {
                return c * dl.powf(e) * jacobi_poly(n, e, -e, kp.cos_v());
            }
            match params.beta_exact_integer() {
                Some(m) if m <= 0 => 0.0,
                Some(m) => exterior_positive_integer_beta(a, m as u32, kp),
                None => {
                    let y = kp.cosh_u();
                    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                    let (pa, pb) = (jacobi_poly(n, -e, e, y), jacobi_poly(n, e, -e, y));
                    let ep = -du;
                    let diff = if n == 0 {
                        // Δ₋^β − E₊^β with Δ₋ − E₊ = 4xz
                        -dl.powf(e) * (e * (-4.0 * xz / dl).ln_1p()).exp_m1()
                    } else {
                        dl.powf(e) * pa - ep.powf(e) * pb
                    };
                    sign * c * diff
                }
            }
        }
    }
}

/// Exterior kernel for β = m ≥ 1, a polynomial in cosh u.
fn exterior_positive_integer_beta(a: f64, m: u32, kp: &KernelPoint) -> f64 {
    let mf = m as f64;
    let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
    let g = 0.5 - a - mf;
    let c = sign * (2.0 * mf - 1.0).exp2() * gamma(a + mf + 1.0) * gamma_reciprocal(a + 1.0)
        / pochhammer(2.0 * a + 1.0, m - 1);
    c * (kp.x * kp.z).powf(mf - 1.0) * kp.t.powf(-2.0 * a - 2.0 * mf) * jacobi_poly(m - 1, g, g, kp.cosh_u())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::kernel_legendre;
    use crate::special_fun::rat;

    fn ex(an: i128, ad: i128, bn: i128, bd: i128) -> Params {
        Params::exact(rat(an, ad), rat(bn, bd)).unwrap()
    }

    #[test]
    fn kera0_example() {
        let p = ex(1, 1, 0, 1);
        let (t, x, z): (f64, f64, f64) = (1.7, 1.0, 1.2);
        let dl = t * t - (x - z) * (x - z);
        let du = (x + z) * (x + z) - t * t;
        let want = 1.0 / (PI.sqrt() * 2.0 * gamma(1.5)) * (t * x * z).powi(-2) * (dl * du).sqrt();
        let got = kernel_closed_form(&p, t, x, z).unwrap().unwrap();
        assert!((got - want).abs() < 1e-14 * want);
        assert_eq!(kernel_closed_form(&p, 3.0, x, z).unwrap(), Some(0.0));
    }

    #[test]
    fn absent_off_lines() {
        let p = Params::new(0.4, 0.7).unwrap();
        assert_eq!(kernel_closed_form(&p, 1.7, 1.0, 1.2).unwrap(), None);
        let p = Params::new(0.5, 0.0).unwrap();
        assert_eq!(kernel_closed_form(&p, 1.7, 1.0, 1.2).unwrap(), None);
    }

    #[test]
    fn agrees_with_legendre_on_every_line() {
        let lines = [
            ex(1, 2, 0, 1),
            ex(1, 1, 0, 1),
            ex(7, 5, -1, 1),
            ex(5, 2, -2, 1),
            ex(1, 4, -1, 2),
            ex(-1, 3, 2, 3),
            ex(-3, 4, 3, 2),
            ex(-1, 2, 1, 1),
            ex(-1, 2, 7, 3),
            ex(-1, 2, 3, 10),
            ex(1, 2, 2, 5),
            ex(3, 2, -3, 5),
            ex(5, 2, 7, 3),
            ex(1, 2, 1, 1),
            ex(3, 2, 2, 1),
            ex(5, 2, 3, 1),
        ];
        let pts = [(1.7, 1.0, 1.2), (0.4, 1.0, 1.3), (2.15, 1.0, 1.2), (3.1, 1.0, 1.2), (9.0, 0.5, 2.0), (1.5, 2.0, 0.6)];
        for p in &lines {
            for &(t, x, z) in &pts {
                let l = kernel_legendre(p, t, x, z).unwrap();
                let c = kernel_closed_form(p, t, x, z).unwrap().unwrap();
                assert!((l - c).abs() <= 1e-9 * l.abs().max(1e-300), "{p} at ({t},{x},{z}): {l} vs {c}");
            }
        }
    }
}
