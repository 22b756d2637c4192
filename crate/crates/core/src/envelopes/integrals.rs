//! The elementary integrals I_{α,γ}(B), J_{α,β,γ}(D) and ∫₀^A w^γ(1−w)^δ dw.

use super::EnvelopeError;
use crate::quad::{tanh_sinh, QuadSpec};

/// Comparable size of ∫_{−1}^{1} (1−Bs)^γ (1−s²)^{α−1/2} ds.
pub fn int_i_envelope(alpha: f64, gamma: f64, b: f64) -> Result<f64, EnvelopeError> {
    check_i(alpha, b)?;
    let e = alpha + gamma + 0.5;
    Ok(if e < 0.0 {
        (1.0 - b).powf(e)
    } else if e == 0.0 {
        1.0 - (1.0 - b).ln()
    } else {
        1.0
    })
}

pub fn int_i_oracle(alpha: f64, gamma: f64, b: f64, spec: &QuadSpec) -> Result<f64, EnvelopeError> {
    check_i(alpha, b)?;
    if b == 1.0 && alpha + gamma + 0.5 <= 0.0 {
        return Ok(f64::INFINITY);
    }
    let f = |dl: f64, dr: f64| ((1.0 - b) + b * dr).powf(gamma) * (dl * dr).powf(alpha - 0.5);
    let lo = tanh_sinh(|s, dl, _| f(dl, 1.0 - s), -1.0, 0.0, spec.tol)?;
    let hi = tanh_sinh(|s, _, dr| f(1.0 + s, dr), 0.0, 1.0, spec.tol)?;
    Ok(lo.value + hi.value)
}

fn check_i(alpha: f64, b: f64) -> Result<(), EnvelopeError> {
    if !(alpha > -0.5) {
        return Err(EnvelopeError::Domain(format!("I requires alpha > -1/2, got {alpha}")));
    }
    if !(0.0..=1.0).contains(&b) {
        return Err(EnvelopeError::Domain(format!("I requires 0 <= B <= 1, got {b}")));
    }
    Ok(())
}

/// Comparable size of ∫₀¹ (D−s)^{α−1/2} (1−s)^{β−1} s^γ ds.
pub fn int_j_envelope(alpha: f64, beta: f64, gamma: f64, d: f64) -> Result<f64, EnvelopeError> {
    check_j(beta, gamma, d)?;
    if d >= 2.0 {
        return Ok(d.powf(alpha - 0.5));
    }
    let s = alpha + beta - 0.5;
    Ok(if s < 0.0 {
        (d - 1.0).powf(s)
    } else if s == 0.0 {
        1.0 - (d - 1.0).ln()
    } else {
        1.0
    })
}

pub fn int_j_oracle(alpha: f64, beta: f64, gamma: f64, d: f64, spec: &QuadSpec) -> Result<f64, EnvelopeError> {
    check_j(beta, gamma, d)?;
    if d == 1.0 && alpha + beta <= 0.5 {
        return Ok(f64::INFINITY);
    }
    let f = |ds: f64, dr: f64| ((d - 1.0) + dr).powf(alpha - 0.5) * dr.powf(beta - 1.0) * ds.powf(gamma);
    let lo = tanh_sinh(|s, ds, _| f(ds, 1.0 - s), 0.0, 0.5, spec.tol)?;
    let hi = tanh_sinh(|s, _, dr| f(s, dr), 0.5, 1.0, spec.tol)?;
    Ok(lo.value + hi.value)
}

fn check_j(beta: f64, gamma: f64, d: f64) -> Result<(), EnvelopeError> {
    if !(beta > 0.0) || !(gamma > -1.0) || !(d >= 1.0) {
        return Err(EnvelopeError::Domain(format!(
            "J requires beta > 0, gamma > -1, D >= 1, got ({beta}, {gamma}, {d})"
        )));
    }
    Ok(())
}

/// Comparable size of ∫₀^A w^γ (1−w)^δ dw, switching regimes at A = C.
pub fn lemma_a(gamma: f64, delta: f64, a: f64, c: f64) -> Result<f64, EnvelopeError> {
    if !(gamma > -1.0) {
        return Err(EnvelopeError::Divergent);
    }
    if !(a > 0.0 && a < 1.0) || !(c > 0.0 && c < 1.0) {
        return Err(EnvelopeError::Domain(format!("lemma A requires A, C in (0,1), got ({a}, {c})")));
    }
    if a <= c {
        return Ok(a.powf(gamma + 1.0));
    }
    Ok(if delta > -1.0 {
        1.0
    } else if delta == -1.0 {
        -(1.0 - a).ln()
    } else {
        (1.0 - a).powf(delta + 1.0)
    })
}

pub fn lemma_a_oracle(gamma: f64, delta: f64, a: f64, spec: &QuadSpec) -> Result<f64, EnvelopeError> {
    if !(gamma > -1.0) {
        return Err(EnvelopeError::Divergent);
    }
    let r = tanh_sinh(|_, w, dr| w.powf(gamma) * ((1.0 - a) + dr).powf(delta), 0.0, a, spec.tol)?;
    Ok(r.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special_fun::gamma::gamma;
    use std::f64::consts::PI;

    #[test]
    fn beta_function_identities() {
        let spec = QuadSpec::default();
        for &a in &[-0.3, 0.0, 0.5, 2.25] {
            let want = PI.sqrt() * gamma(a + 0.5) / gamma(a + 1.0);
            for &b in &[0.0, 0.4, 0.999, 1.0] {
                let got = int_i_oracle(a, 0.0, b, &spec).unwrap();
                assert!((got - want).abs() < 1e-10 * want, "{a} {b}: {got} vs {want}");
                assert_eq!(int_i_envelope(a, 0.0, b).unwrap(), 1.0);
            }
        }
        let j = int_j_oracle(0.5, 1.0, 0.0, 1.0, &spec).unwrap();
        assert!((j - 1.0).abs() < 1e-12);
        assert_eq!(int_j_envelope(0.5, 1.0, 0.0, 1.0).unwrap(), 1.0);
    }

    #[test]
    fn lemma_examples() {
        assert!(int_i_envelope(0.25, -1.0, 1.0).unwrap().is_infinite());
        assert!(int_i_oracle(0.25, -1.0, 1.0, &QuadSpec::default()).unwrap().is_infinite());
        let spec = QuadSpec::default();
        let env = int_i_envelope(0.5, -1.0, 0.999).unwrap();
        assert!((env - (1.0 + 1000f64.ln())).abs() < 1e-9);
        let ratio = int_i_oracle(0.5, -1.0, 0.999, &spec).unwrap() / env;
        assert!((0.1..=10.0).contains(&ratio));
        let env = int_j_envelope(0.2, 0.1, 0.0, 1.01).unwrap();
        assert!((env - 0.01f64.powf(-0.2)).abs() < 1e-12);
        let ratios: Vec<f64> = [1.01, 1.0001, 1.000001]
            .iter()
            .map(|&d| int_j_oracle(0.2, 0.1, 0.0, d, &spec).unwrap() / int_j_envelope(0.2, 0.1, 0.0, d).unwrap())
            .collect();
        assert!(ratios.iter().all(|r| (r / ratios[0] - 1.0).abs() < 0.2), "{ratios:?}");
        let env = int_j_envelope(-0.3, 0.5, 0.2, 10.0).unwrap();
        assert!((env - 10f64.powf(-0.8)).abs() < 1e-12);
        let ratio = int_j_oracle(-0.3, 0.5, 0.2, 10.0, &spec).unwrap() / env;
        assert!((0.1..=10.0).contains(&ratio));
    }

    #[test]
    fn lemma_a_cases() {
        assert!((lemma_a(0.0, 0.0, 0.3, 0.5).unwrap() - 0.3).abs() < 1e-15);
        assert!((lemma_a(0.0, -1.0, 0.99, 0.5).unwrap() - 100f64.ln()).abs() < 1e-12);
        assert_eq!(lemma_a(-1.0, 0.0, 0.3, 0.5), Err(EnvelopeError::Divergent));
        let spec = QuadSpec::default();
        let v = lemma_a_oracle(0.0, -1.0, 0.99, &spec).unwrap();
        assert!((v - 100f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn bands_are_uniform() {
        let spec = QuadSpec::default();
        for &(a, g) in &[(0.5, -1.0), (0.2, -1.5), (1.0, -0.5), (-0.2, 2.0)] {
            let mut lo = f64::INFINITY;
            let mut hi = 0.0f64;
            for k in 0..30 {
                let b = 1.0 - 10f64.powf(-(k as f64) / 3.0);
                let r = int_i_oracle(a, g, b, &spec).unwrap() / int_i_envelope(a, g, b).unwrap();
                lo = lo.min(r);
                hi = hi.max(r);
            }
            assert!(hi / lo < 50.0, "({a},{g}) band {lo}..{hi}");
        }
    }
}
