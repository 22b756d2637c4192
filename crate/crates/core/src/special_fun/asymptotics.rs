//! Leading endpoint behaviour of 𝖯 and 𝐐 and the exceptional sets.

use super::gamma::{gamma_reciprocal, sinpi};
use super::Params;
use serde::Serialize;
use std::cmp::Ordering;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LegendreFunction {
    FerrersP,
    OlverQ,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Endpoint {
    /// y → 1⁻ (𝖯)
    PlusOneMinus,
    /// y → −1⁺ (𝖯)
    MinusOnePlus,
    /// y → 1⁺ (𝐐)
    OnePlus,
    /// y → ∞ (𝐐)
    Infinity,
}

/// Leading-order form c·(local variable)^exponent, or c·log if logarithmic.
/// The local variable is 1−y, 1+y, y−1 or y respectively.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AsymptoticCase {
    pub function: LegendreFunction,
    pub endpoint: Endpoint,
    pub exceptional: bool,
    pub exponent: f64,
    pub logarithmic: bool,
    pub sign: i8,
}

/// (α,β) ∈ E^P, decided from exactness flags only.
pub fn in_exceptional_p(params: &Params) -> bool {
    if params.cmp_sum_half() != Ordering::Less {
        params.beta_nonpositive_integer().is_some() || params.two_alpha_plus_beta_zero()
    } else {
        params.alpha_exact_half_integer().is_some()
    }
}

/// (α,β) ∈ E^Q, decided from exactness flags only.
pub fn in_exceptional_q(params: &Params) -> bool {
    if params.cmp_sum_half() != Ordering::Less {
        params.two_alpha_plus_beta_zero()
    } else {
        params.beta_exact_integer() == Some(1)
    }
}

fn sign_of(v: f64) -> i8 {
    if v < 0.0 {
        -1
    } else {
        1
    }
}

pub fn endpoint_asymptotic(params: &Params, endpoint: Endpoint) -> AsymptoticCase {
    let a = params.alpha();
    let b = params.beta();
    let s = params.s();
    let ord = params.cmp_sum_half();
    let mk = |function, exceptional, exponent, logarithmic, sign| AsymptoticCase {
        function,
        endpoint,
        exceptional,
        exponent,
        logarithmic,
        sign,
    };
    use LegendreFunction::*;
    match endpoint {
        Endpoint::PlusOneMinus => mk(FerrersP, in_exceptional_p(params), 0.5 * s, false, 1),
        Endpoint::Infinity => {
            let c = if params.alpha_minus_half() || a == -0.5 {
                1.0
            } else {
                super::gamma::gamma(a + 0.5) * gamma_reciprocal(2.0 * a + 1.0)
            };
            mk(OlverQ, in_exceptional_q(params), -a - 0.5, false, sign_of(c))
        }
        Endpoint::MinusOnePlus => {
            if in_exceptional_p(params) {
                if ord != Ordering::Less {
                    let sign = match params.beta_nonpositive_integer() {
                        Some(n) if !params.two_alpha_plus_beta_zero() => {
                            if n % 2 == 0 {
                                1
                            } else {
                                -1
                            }
                        }
                        _ => 1,
                    };
                    mk(FerrersP, true, 0.5 * s, false, sign)
                } else {
                    let n = params.alpha_exact_half_integer().unwrap_or(0);
                    let sign = if n < 0 || n % 2 == 0 { 1 } else { -1 };
                    mk(FerrersP, true, -0.5 * s, false, sign)
                }
            } else {
                let sp = sinpi(0.5 - a);
                match ord {
                    Ordering::Greater => mk(
                        FerrersP,
                        false,
                        -0.5 * s,
                        false,
                        sign_of(gamma_reciprocal(2.0 * a + b) * gamma_reciprocal(b)),
                    ),
                    Ordering::Equal => mk(FerrersP, false, 0.0, true, sign_of(sp)),
                    Ordering::Less => mk(FerrersP, false, 0.5 * s, false, sign_of(sp)),
                }
            }
        }
        Endpoint::OnePlus => {
            if in_exceptional_q(params) {
                let e = if ord != Ordering::Less { 0.5 * s } else { -0.5 * s };
                mk(OlverQ, true, e, false, 1)
            } else {
                match ord {
                    Ordering::Greater => {
                        mk(OlverQ, false, -0.5 * s, false, sign_of(gamma_reciprocal(2.0 * a + b)))
                    }
                    Ordering::Equal => mk(OlverQ, false, 0.0, true, sign_of(gamma_reciprocal(a + 0.5))),
                    Ordering::Less => mk(OlverQ, false, 0.5 * s, false, sign_of(gamma_reciprocal(1.0 - b))),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special_fun::legendre::{ferrers_p, olver_q};
    use crate::special_fun::params::rat;

    #[test]
    fn spec_examples() {
        let p = Params::new(1.0, 1.0).unwrap();
        let c = endpoint_asymptotic(&p, Endpoint::PlusOneMinus);
        assert!((c.exponent - 0.75).abs() < 1e-15 && c.sign == 1);
        let p = Params::new(0.2, 0.3).unwrap();
        let c = endpoint_asymptotic(&p, Endpoint::MinusOnePlus);
        assert!(c.logarithmic && c.exponent == 0.0 && !c.exceptional);
        let p = Params::exact(rat(1, 2), rat(-2, 5)).unwrap();
        let c = endpoint_asymptotic(&p, Endpoint::MinusOnePlus);
        assert!(c.exceptional && (c.exponent - 0.2).abs() < 1e-15 && c.sign == 1);
    }

    #[test]
    fn membership_examples() {
        let p = Params::exact(rat(1, 2), rat(-3, 5)).unwrap();
        assert!(in_exceptional_p(&p));
        let p = Params::exact(rat(1, 4), rat(-1, 2)).unwrap();
        assert!(!in_exceptional_p(&p) && !in_exceptional_q(&p));
        let p = Params::exact(rat(-1, 5), rat(1, 1)).unwrap();
        assert!(!in_exceptional_q(&p));
        let p = Params::exact(rat(-4, 5), rat(1, 1)).unwrap();
        assert!(in_exceptional_q(&p));
    }

    /// Fit the local power law between two close points and compare.
    fn local_exponent(f: impl Fn(f64) -> f64, e1: f64, e2: f64) -> f64 {
        (f(e2).abs().ln() - f(e1).abs().ln()) / (e2.ln() - e1.ln())
    }

    #[test]
    fn exponents_match_numerics() {
        let cases: Vec<Params> = vec![
            Params::new(0.4, 0.9).unwrap(),
            Params::new(0.1, 0.1).unwrap(),
            Params::new(-0.7, 0.4).unwrap(),
            Params::new(0.8, -0.5).unwrap(),
            Params::exact(rat(3, 2), rat(-3, 5)).unwrap(),
            Params::exact(rat(1, 3), rat(-2, 3)).unwrap(),
            Params::exact(rat(-4, 5), rat(1, 1)).unwrap(),
            Params::exact(rat(2, 3), rat(-1, 1)).unwrap(),
        ];
        for p in &cases {
            let fp = |e: f64| ferrers_p(p, -1.0 + e).unwrap();
            let fq = |e: f64| olver_q(p, 1.0 + e).unwrap();
            for (endpoint, f) in [
                (Endpoint::MinusOnePlus, &fp as &dyn Fn(f64) -> f64),
                (Endpoint::OnePlus, &fq as &dyn Fn(f64) -> f64),
            ] {
                let c = endpoint_asymptotic(p, endpoint);
                if c.logarithmic {
                    continue;
                }
                let got = local_exponent(f, 1e-12, 1e-13);
                assert!((got - c.exponent).abs() < 0.02, "{p} {endpoint:?}: {got} vs {}", c.exponent);
                let v = f(1e-13);
                assert_eq!(v.signum() as i8, c.sign, "{p} {endpoint:?} sign");
            }
            let c = endpoint_asymptotic(p, Endpoint::Infinity);
            let got = local_exponent(|y| olver_q(p, y).unwrap(), 1e6, 1e7);
            assert!((got - c.exponent).abs() < 1e-3);
        }
    }
}
