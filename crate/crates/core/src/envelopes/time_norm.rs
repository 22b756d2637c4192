//! ‖K_t(x,z)‖ in L^r(t^ρ dt): envelope, numeric norm and truncated integrals.

use super::{alpha_big_beta_negative, alpha_small_below_line, in_q_zero_triangle, EnvelopeError, EnvelopeItem, EnvelopeValue};
use crate::kernel::{kernel_at, KernelPoint};
use crate::quad::{tanh_sinh, QuadSpec};
use crate::special_fun::{rat, rat_to_f64, Params, Rational};
use num_traits::{One, Zero};
use std::cmp::Ordering;

/// x and z count as non-comparable when max(x/z, z/x) reaches this.
pub const NON_COMPARABLE_RATIO: f64 = 8.0;

/// Decades of t beyond √2(x+z) integrated numerically before the
/// t^{−(2α+2)r+ρ} remainder is added in closed form.
const TAIL_DECADES: f64 = 60.0;

fn check_r(r: &Rational) -> Result<(), EnvelopeError> {
    if *r < Rational::one() {
        return Err(EnvelopeError::Domain(format!("r must be at least 1, got {r}")));
    }
    Ok(())
}

/// α+β > 1/2 − 1/r, and (ρ+1)/r < 2α+2 unless β ∈ −ℕ₀.
pub fn norm_conditions(params: &Params, r: &Rational, rho: &Rational) -> bool {
    let inv = r.recip();
    let first = params.sign_affine(inv - rat(1, 2), rat(1, 1), rat(1, 1)) == Ordering::Greater;
    let second = params.beta_nonpositive_integer().is_some()
        || params.sign_affine((rho + 1) * inv - rat(2, 1), rat(-2, 1), rat(0, 1)) == Ordering::Less;
    first && second
}

/// Comparison of (ρ+1)/r with 1 and of β+1/r with 1, selecting the branch of
/// each factor of the envelope.
pub fn time_norm_branches(params: &Params, r: &Rational, rho: &Rational) -> (Ordering, Ordering) {
    let inv = r.recip();
    let first = ((rho + 1) * inv).cmp(&Rational::one());
    let second = params.sign_affine(inv - 1, rat(0, 1), rat(1, 1));
    (first, second)
}

pub fn time_norm_envelope(
    params: &Params,
    r: &Rational,
    rho: &Rational,
    x: f64,
    z: f64,
) -> Result<EnvelopeValue, EnvelopeError> {
    check_r(r)?;
    if !(x > 0.0 && z > 0.0) {
        return Err(EnvelopeError::Domain(format!("x, z must be positive, got ({x}, {z})")));
    }
    let mk = |value: f64, sharp: bool| EnvelopeValue {
        value,
        sharp,
        sign_suppressible: true,
        sign: 1,
        item: EnvelopeItem::TimeNorm,
    };
    if !norm_conditions(params, r, rho) {
        return Ok(mk(f64::INFINITY, true));
    }
    let value = aux_kernel(params, r, rho, x, z);
    let (first_case, _) = time_norm_branches(params, r, rho);
    let ratio = (x / z).max(z / x);
    let excluded = in_q_zero_triangle(params) || params.beta_nonpositive_integer().is_some();
    let sharp = !(alpha_small_below_line(params) || alpha_big_beta_negative(params))
        || (!excluded && ratio >= NON_COMPARABLE_RATIO)
        || (!excluded && first_case == Ordering::Greater);
    Ok(mk(value, sharp))
}

/// The three-factor kernel K_{r,ρ}(x,z) comparable to the time norm when
/// the norm is finite.
pub fn aux_kernel(params: &Params, r: &Rational, rho: &Rational, x: f64, z: f64) -> f64 {
    aux_kernel_with_distance(params, r, rho, x, z, (x - z).abs())
}

/// [`aux_kernel`] with |x − z| supplied by the caller.
pub fn aux_kernel_with_distance(params: &Params, r: &Rational, rho: &Rational, x: f64, z: f64, d: f64) -> f64 {
    let rf = rat_to_f64(r);
    let q = rat_to_f64(&((rho + 1) / r));
    let s = x + z;
    let (first_case, second_case) = time_norm_branches(params, r, rho);
    let first = match first_case {
        Ordering::Less => d.powf(q - 1.0),
        Ordering::Equal => 1.0 + (s / d).ln().powf(1.0 / rf),
        Ordering::Greater => s.powf(q - 1.0),
    };
    let ratio = (x / z).max(z / x);
    let second = match second_case {
        Ordering::Greater => 1.0,
        Ordering::Equal => {
            let beta_zero = params.sign_affine(Rational::zero(), Rational::zero(), Rational::one()) == Ordering::Equal;
            if beta_zero {
                1.0
            } else {
                1.0 + ratio.ln().powf(1.0 / rf)
            }
        }
        Ordering::Less => (1.0 / ratio).powf(params.beta() + 1.0 / rf - 1.0),
    };
    s.powf(-2.0 * params.alpha() - 1.0) * first * second
}

/// (∫₀^∞ |K_t(x,z)|^r t^ρ dt)^{1/r}; the integral must converge.
pub fn time_norm_numeric(params: &Params, r: f64, rho: f64, x: f64, z: f64, spec: &QuadSpec) -> Result<f64, EnvelopeError> {
    if !(r >= 1.0) {
        return Err(EnvelopeError::Domain(format!("r must be at least 1, got {r}")));
    }
    let conds = params.alpha() + params.beta() > 0.5 - 1.0 / r
        && (params.beta_nonpositive_integer().is_some() || (rho + 1.0) / r < 2.0 * params.alpha() + 2.0);
    if !conds {
        return Err(EnvelopeError::Divergent);
    }
    Ok(integral(params, r, rho, x, z, None, spec)?.powf(1.0 / r))
}

/// ∫ |K_t(x,z)|^r t^ρ dt with tubes around both singular surfaces and the far
/// tail removed; tube widths shrink and the cut-off grows by
/// `spec.truncation_growth` per level.
pub fn time_norm_truncated(
    params: &Params,
    r: f64,
    rho: f64,
    x: f64,
    z: f64,
    level: u32,
    spec: &QuadSpec,
) -> Result<f64, EnvelopeError> {
    integral(params, r, rho, x, z, Some(level), spec)
}

fn integral(params: &Params, r: f64, rho: f64, x: f64, z: f64, level: Option<u32>, spec: &QuadSpec) -> Result<f64, EnvelopeError> {
    spec.validate()?;
    if !(x > 0.0 && z > 0.0) {
        return Err(EnvelopeError::Domain(format!("x, z must be positive, got ({x}, {z})")));
    }
    let lo = (x - z).abs();
    let s = x + z;
    let mid = (x * x + z * z).sqrt();
    let far = std::f64::consts::SQRT_2 * s;
    // mid − lo and s − mid without cancellation
    let mid_lo = 2.0 * x * z / (mid + lo);
    let s_mid = 2.0 * x * z / (s + mid);
    let (tube, cut) = match level {
        None => (0.0, f64::INFINITY),
        Some(k) => {
            let g = spec.truncation_growth.powi(k as i32);
            (0.5 * mid_lo.min(s_mid) / g, far * g)
        }
    };
    let f = |t: f64, gl: f64, gu: f64| {
        let k = kernel_at(params, &KernelPoint::with_gaps(t, x, z, gl, gu));
        if k == 0.0 {
            0.0
        } else {
            (r * k.abs().ln() + rho * t.ln()).exp()
        }
    };
    let tol = spec.tol;
    let mut total = 0.0;
    total += tanh_sinh(|t, da, db| f(t, da + tube, s_mid + db), lo + tube, mid, tol)?.value;
    total += tanh_sinh(|t, da, db| f(t, mid_lo + da, db + tube), mid, s - tube, tol)?.value;
    total += tanh_sinh(|t, da, _| f(t, t - lo, -(da + tube)), s + tube, far, tol)?.value;
    // t = far·e^u keeps the power-law tail smooth
    let g = |u: f64| {
        let t = far * u.exp();
        f(t, t - lo, s - t) * t
    };
    total += if cut.is_finite() {
        tanh_sinh(|u, _, _| g(u), 0.0, (cut / far).ln(), tol)?.value
    } else {
        let decay = (2.0 * params.alpha() + 2.0) * r - rho - 1.0;
        let u_max = TAIL_DECADES * std::f64::consts::LN_10;
        let body = tanh_sinh(|u, _, _| g(u), 0.0, u_max, tol)?.value;
        let end = g(u_max);
        body + if end == 0.0 { 0.0 } else { end / decay }
    };
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex(an: i128, ad: i128, bn: i128, bd: i128) -> Params {
        Params::exact(rat(an, ad), rat(bn, bd)).unwrap()
    }

    #[test]
    fn envelope_examples() {
        let p = ex(1, 2, 1, 1);
        let e = time_norm_envelope(&p, &rat(1, 1), &rat(0, 1), 2.0, 1.0).unwrap();
        assert!((e.value - (1.0 + 3f64.ln()) / 9.0).abs() < 1e-14);
        let p = ex(1, 5, 1, 5);
        let e = time_norm_envelope(&p, &rat(4, 1), &rat(-7, 5), 2.0, 1.0).unwrap();
        assert!(e.value.is_finite());
        let e = time_norm_envelope(&p, &rat(10, 1), &rat(-7, 5), 2.0, 1.0).unwrap();
        assert!(e.value.is_infinite());
        let p = Params::new(0.3, 0.4).unwrap();
        let e = time_norm_envelope(&p, &rat(2, 1), &rat(0, 1), 1.5, 1.5).unwrap();
        assert!(e.value.is_infinite());
    }

    #[test]
    fn exterior_tail_power_law() {
        // K = 3 t^{-3} beyond x+z for (1/2, 1)
        let p = ex(1, 2, 1, 1);
        let spec = QuadSpec::default();
        let (x, z) = (1.0, 1.5);
        let full = integral(&p, 1.0, 0.0, x, z, None, &spec).unwrap();
        let interior = tanh_sinh(|t, da, db| kernel_at(&p, &KernelPoint::with_gaps(t, x, z, da, db)), 0.5, 2.5, 1e-12).unwrap().value;
        assert!((full - interior - 3.0 / (2.0 * 2.5 * 2.5)).abs() < 1e-9, "{}", full - interior);
    }

    #[test]
    fn piecewise_constant_kernel_norm() {
        // K = 1/(2t) inside, 1/t outside for (−1/2, 1); r = 2, ρ = 0
        let p = ex(-1, 2, 1, 1);
        let (x, z) = (1.0, 2.5);
        let (lo, hi) = (1.5f64, 3.5f64);
        let want = (0.25 * (1.0 / lo - 1.0 / hi) + 1.0 / hi).sqrt();
        let got = time_norm_numeric(&p, 2.0, 0.0, x, z, &QuadSpec::default()).unwrap();
        assert!((got - want).abs() < 1e-8 * want, "{got} vs {want}");
    }

    #[test]
    fn homogeneity() {
        let p = Params::new(0.3, 0.4).unwrap();
        let spec = QuadSpec::default();
        let (r, rho) = (1.0, 0.5);
        let a = time_norm_numeric(&p, r, rho, 1.0, 2.0, &spec).unwrap();
        let b = time_norm_numeric(&p, r, rho, 3.0, 6.0, &spec).unwrap();
        let deg = -(2.0 * 0.3 + 2.0) + (rho + 1.0) / r;
        assert!((b / a - 3f64.powf(deg)).abs() < 1e-8 * 3f64.powf(deg));
    }
}
