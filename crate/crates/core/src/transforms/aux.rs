use super::{DecayClass, RadialProfile, TransformError};
use crate::envelopes::{aux_kernel_with_distance, time_norm_branches, GrowthReport};
use crate::quad::{exp_sinh, tanh_sinh, QuadSpec};
use crate::special_fun::{rat_to_f64, Params, Rational};
use num_traits::{One, Zero};
use serde::Serialize;
use std::cmp::Ordering;

/// The Hardy-type pieces of K_{r,ρ}.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum HardySelector {
    H0(f64),
    HInf(f64),
    H0Log,
    HInfLog,
    T,
    S,
}

struct Setup {
    a: f64,
    rf: f64,
    q: f64,
    /// (β + 1/r − 1) ∧ 0
    eta_min: f64,
    support: (f64, f64),
}

fn setup(params: &Params, r: &Rational, rho: &Rational, f: &RadialProfile, x: f64) -> Result<Setup, TransformError> {
    if *r < Rational::one() {
        return Err(TransformError::Domain(format!("r must be at least 1, got {r}")));
    }
    if *rho <= -Rational::one() {
        return Err(TransformError::Domain(format!("rho must exceed -1, got {rho}")));
    }
    if !(x > 0.0) {
        return Err(TransformError::Domain(format!("x must be positive, got {x}")));
    }
    let rf = rat_to_f64(r);
    let support = match (f.decay_class, f.support_hint) {
        (DecayClass::CompactSupport, Some(s)) => s,
        _ => (0.0, f64::INFINITY),
    };
    Ok(Setup {
        a: params.alpha(),
        rf,
        q: rat_to_f64(&((rho + 1) / r)),
        eta_min: (params.beta() + 1.0 / rf - 1.0).min(0.0),
        support,
    })
}

/// Exponent conditions for ∫₀ z^{e−1}|f| dz and ∫^∞ z^{e−1}|f| dz.
fn check_origin(f: &RadialProfile, support: (f64, f64), e: f64) -> Result<(), TransformError> {
    if support.0 == 0.0 && !(e - f.origin_order > 0.0) {
        return Err(TransformError::Divergent(format!("z^{e} f(z) is not integrable at the origin")));
    }
    Ok(())
}

fn check_infinity(f: &RadialProfile, e: f64) -> Result<(), TransformError> {
    if let DecayClass::Polynomial(rate) = f.decay_class {
        if !(e - rate < 0.0) {
            return Err(TransformError::Divergent(format!("z^{e} f(z) is not integrable at infinity")));
        }
    }
    Ok(())
}

/// ∫_lo^hi g(z, z−lo, hi−z) f(z) dz restricted to the support of f.
fn piece(
    f: &RadialProfile,
    support: (f64, f64),
    lo: f64,
    hi: f64,
    g: impl Fn(f64, f64, f64) -> f64,
    tol: f64,
) -> Result<f64, TransformError> {
    let (a, b) = (lo.max(support.0), hi.min(support.1));
    if !(b > a) {
        return Ok(0.0);
    }
    let (sa, sb) = (a - lo, hi - b);
    if b.is_finite() {
        Ok(tanh_sinh(|z, da, db| g(z, da + sa, db + sb) * f.eval(z), a, b, tol)?.value)
    } else {
        Ok(exp_sinh(|z, da| g(z, da + sa, f64::INFINITY) * f.eval(z), a, tol)?.value)
    }
}

/// K_{r,ρ} f(x) = ∫ K_{r,ρ}(x,z) f(z) dμ_α(z).
pub fn aux_k_operator(
    params: &Params,
    r: &Rational,
    rho: &Rational,
    f: &RadialProfile,
    x: f64,
    spec: &QuadSpec,
) -> Result<f64, TransformError> {
    spec.validate()?;
    let st = setup(params, r, rho, f, x)?;
    check_origin(f, st.support, 2.0 * st.a + 2.0 + st.eta_min)?;
    check_infinity(f, st.q - st.eta_min)?;
    let k = |z: f64, d: f64| aux_kernel_with_distance(params, r, rho, x, z, d) * z.powf(2.0 * st.a + 1.0);
    let tol = spec.tol;
    let mut total = 0.0;
    total += piece(f, st.support, 0.0, 0.5 * x, |z, _, _| k(z, x - z), tol)?;
    total += piece(f, st.support, 0.5 * x, x, |z, _, db| k(z, db), tol)?;
    total += piece(f, st.support, x, 2.0 * x, |z, da, _| k(z, da), tol)?;
    total += piece(f, st.support, 2.0 * x, f64::INFINITY, |z, _, _| k(z, z - x), tol)?;
    Ok(total)
}

/// K_{r,ρ} f(x) over [x/(4g^k), 4xg^k] less the tube |z−x| < x/(4g^k),
/// with g = `spec.truncation_growth`.
pub fn aux_k_truncated(
    params: &Params,
    r: &Rational,
    rho: &Rational,
    f: &RadialProfile,
    x: f64,
    level: u32,
    spec: &QuadSpec,
) -> Result<f64, TransformError> {
    spec.validate()?;
    let st = setup(params, r, rho, f, x)?;
    let g = spec.truncation_growth.powi(level as i32);
    let (lo, hi, tube) = (0.25 * x / g, 4.0 * x * g, 0.25 * x / g);
    let k = |z: f64, d: f64| aux_kernel_with_distance(params, r, rho, x, z, d) * z.powf(2.0 * st.a + 1.0);
    let tol = spec.tol;
    let left = piece(f, st.support, lo, x - tube, |z, _, db| k(z, db + tube), tol)?;
    let right = piece(f, st.support, x + tube, hi, |z, da, _| k(z, da + tube), tol)?;
    Ok(left + right)
}

pub fn aux_k_growth(
    params: &Params,
    r: &Rational,
    rho: &Rational,
    f: &RadialProfile,
    x: f64,
    levels: u32,
    spec: &QuadSpec,
) -> Result<GrowthReport, TransformError> {
    let values = (0..=levels)
        .map(|k| aux_k_truncated(params, r, rho, f, x, k, spec))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GrowthReport::from_values(values))
}

pub fn hardy_component(
    selector: HardySelector,
    params: &Params,
    r: &Rational,
    rho: &Rational,
    f: &RadialProfile,
    x: f64,
    spec: &QuadSpec,
) -> Result<f64, TransformError> {
    spec.validate()?;
    let st = setup(params, r, rho, f, x)?;
    let (a, q, inv, tol) = (st.a, st.q, 1.0 / st.rf, spec.tol);
    let sup = st.support;
    Ok(match selector {
        HardySelector::H0(eta) => {
            check_origin(f, sup, 2.0 * a + 2.0 + eta)?;
            let v = piece(f, sup, 0.0, x, |z, _, _| z.powf(2.0 * a + 1.0 + eta), tol)?;
            x.powf(-2.0 * a - 2.0 + q - eta) * v
        }
        HardySelector::HInf(eta) => {
            check_infinity(f, q - eta)?;
            x.powf(eta) * piece(f, sup, x, f64::INFINITY, |z, _, _| z.powf(q - 1.0 - eta), tol)?
        }
        HardySelector::H0Log => {
            check_origin(f, sup, 2.0 * a + 2.0)?;
            let v = piece(f, sup, 0.0, x, |z, _, _| (2.0 * x / z).ln().powf(inv) * z.powf(2.0 * a + 1.0), tol)?;
            x.powf(-2.0 * a - 2.0 + q) * v
        }
        HardySelector::HInfLog => {
            check_infinity(f, q)?;
            piece(f, sup, x, f64::INFINITY, |z, _, _| (2.0 * z / x).ln().powf(inv) * z.powf(q - 1.0), tol)?
        }
        HardySelector::T => {
            piece(f, sup, 0.5 * x, x, |_, _, db| db.powf(q - 1.0), tol)?
                + piece(f, sup, x, 2.0 * x, |_, da, _| da.powf(q - 1.0), tol)?
        }
        HardySelector::S => {
            piece(f, sup, 0.5 * x, x, |z, _, db| ((x + z) / db).ln().powf(inv), tol)?
                + piece(f, sup, x, 2.0 * x, |z, da, _| ((x + z) / da).ln().powf(inv), tol)?
        }
    })
}

/// The sum of Hardy-type pieces comparable to K_{r,ρ} f on f ≥ 0.
pub fn aux_decomposition(
    params: &Params,
    r: &Rational,
    rho: &Rational,
    f: &RadialProfile,
    x: f64,
    spec: &QuadSpec,
) -> Result<f64, TransformError> {
    let eta = params.beta() + 1.0 / rat_to_f64(r) - 1.0;
    let (first, second) = time_norm_branches(params, r, rho);
    let beta_zero = params.sign_affine(Rational::zero(), Rational::zero(), Rational::one()) == Ordering::Equal;
    let mut parts = vec![HardySelector::H0(eta), HardySelector::HInf(eta)];
    match second {
        Ordering::Greater => parts.extend([HardySelector::H0(0.0), HardySelector::HInf(0.0)]),
        Ordering::Equal if !beta_zero => parts.extend([HardySelector::H0Log, HardySelector::HInfLog]),
        _ => {}
    }
    match first {
        Ordering::Less => parts.push(HardySelector::T),
        Ordering::Equal => parts.push(HardySelector::S),
        Ordering::Greater => {}
    }
    parts.into_iter().map(|s| hardy_component(s, params, r, rho, f, x, spec)).sum()
}
