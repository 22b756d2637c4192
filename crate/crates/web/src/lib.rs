//! wasm-bindgen bindings for the browser demo in `www/`. Every entry point
//! returns a JSON string; the `*_json` functions are the plain Rust versions.

use serde_json::{json, Value};
use sphmean::envelopes::pointwise_envelope;
use sphmean::kernel::{classify_regime, exceptional_membership, kernel_legendre, predicted_zeros, ExplicitLine, ZeroPrediction};
use sphmean::pde::{solve, CauchySpec, DataRole, Problem};
use sphmean::quad::QuadSpec;
use sphmean::regions::{admissible_set_scan, main_gate, scaling_exponent, ExactSet, ExtRational, MixedIndices};
use sphmean::special_fun::{parse_rational, LegendreFunction, Params, Rational};
use sphmean::transforms::RadialProfile;
use wasm_bindgen::prelude::*;

pub const MAX_SAMPLES: usize = 2000;

fn exact(name: &str, text: &str) -> Result<Rational, String> {
    parse_rational(text).ok_or_else(|| format!("{name}: '{text}' is not a rational number"))
}

fn num(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else {
        Value::Null
    }
}

fn line_text(line: Option<ExplicitLine>) -> Value {
    match line {
        None => Value::Null,
        Some(ExplicitLine::BetaNonPositiveInteger(0)) => json!("beta = 0"),
        Some(ExplicitLine::BetaNonPositiveInteger(n)) => json!(format!("beta = -{n}")),
        Some(ExplicitLine::TwoAlphaPlusBetaZero) => json!("2 alpha + beta = 0"),
        Some(ExplicitLine::AlphaMinusHalf) => json!("alpha = -1/2"),
        Some(ExplicitLine::AlphaHalfInteger(n)) => json!(format!("alpha = {n} + 1/2")),
    }
}

fn zeros(p: &Params, which: LegendreFunction) -> Value {
    match predicted_zeros(p, which) {
        ZeroPrediction::Exactly(n) => json!(n),
        ZeroPrediction::AtLeastOne => json!(">= 1"),
    }
}

/// K_t(x,z) and its envelope for `n` values of t in (0, t_max].
pub fn kernel_profile_json(alpha: &str, beta: &str, x: f64, z: f64, t_max: f64, n: usize) -> Result<String, String> {
    let p = Params::parse(alpha, beta).map_err(|e| e.to_string())?;
    if !(x > 0.0 && z > 0.0 && t_max > 0.0 && x.is_finite() && z.is_finite() && t_max.is_finite()) {
        return Err("x, z and t_max must be positive".into());
    }
    if !(2..=MAX_SAMPLES).contains(&n) {
        return Err(format!("sample count must lie in [2, {MAX_SAMPLES}]"));
    }
    let (mut ts, mut ks, mut envs, mut regimes) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for i in 1..=n {
        let t = t_max * i as f64 / n as f64;
        let regime = classify_regime(t, x, z).map_err(|e| e.to_string())?;
        ts.push(t);
        regimes.push(regime.name());
        ks.push(kernel_legendre(&p, t, x, z).map_or(Value::Null, num));
        envs.push(pointwise_envelope(&p, t, x, z).map_or(Value::Null, |e| num(e.value)));
    }
    let m = exceptional_membership(&p);
    Ok(json!({
        "alpha": p.alpha(),
        "beta": p.beta(),
        "exact": p.is_exact(),
        "explicit_line": line_text(m.explicit_line),
        "in_exceptional_p": m.in_e_p,
        "in_exceptional_q": m.in_e_q,
        "p_zeros": zeros(&p, LegendreFunction::FerrersP),
        "q_zeros": zeros(&p, LegendreFunction::OlverQ),
        "surfaces": [(x - z).abs(), x + z],
        "t": ts,
        "kernel": ks,
        "envelope": envs,
        "regime": regimes,
    })
    .to_string())
}

fn set_text(set: &ExactSet) -> String {
    match set {
        ExactSet::Empty => "empty".into(),
        ExactSet::Point(u, v) => format!("the single point (1/p, 1/q) = ({u}, {v})"),
        ExactSet::Pair([a, b]) => format!("the points ({}, {}) and ({}, {})", a.0, a.1, b.0, b.1),
        ExactSet::Segment { c, from, to, from_closed, to_closed } => format!(
            "1/q = 1/p {} {}, with 1/p in {}{from}, {to}{}",
            if *c < Rational::from_integer(0) { '-' } else { '+' },
            if *c < Rational::from_integer(0) { -*c } else { *c },
            if *from_closed { '[' } else { '(' },
            if *to_closed { ']' } else { ')' }
        ),
    }
}

/// Conditions (C1) to (C4), the remaining gates and the shape of the admissible set.
#[allow(clippy::too_many_arguments)]
pub fn region_verdict_json(alpha: &str, beta: &str, r: &str, rho: &str, a: &str, b: &str, p: &str, q: &str) -> Result<String, String> {
    let params = Params::parse(alpha, beta).map_err(|e| e.to_string())?;
    if !params.is_exact() {
        return Err("alpha and beta must be exact, as n/d".into());
    }
    let ext = |name: &str, t: &str| ExtRational::parse(t).ok_or_else(|| format!("{name}: '{t}' is neither rational nor inf"));
    let (r, rho, a, b) = (exact("r", r)?, exact("rho", rho)?, exact("A", a)?, exact("B", b)?);
    let idx = MixedIndices::new(ext("p", p)?, ext("q", q)?, r, rho, a, b).map_err(|e| e.to_string())?;
    let gate = main_gate(&params, &idx).map_err(|e| e.to_string())?;
    let delta = scaling_exponent(&params, &idx).map_err(|e| e.to_string())?;
    let scan = admissible_set_scan(&params, a, b, r, rho, 48).map_err(|e| e.to_string())?;
    let conditions: serde_json::Map<String, Value> =
        gate.verdict.per_condition.iter().map(|(k, s)| (k.to_string(), json!(s))).collect();
    Ok(json!({
        "conditions": conditions,
        "admissible": gate.verdict.admissible,
        "failure_witness": gate.verdict.failure_witness,
        "scaling_exponent": delta.to_string(),
        "norm_finite": gate.norm_finite,
        "domain_inclusion": gate.domain_inclusion,
        "exchange_valid": gate.exchange_valid,
        "estimate_holds": gate.estimate_holds(),
        "shape": scan.shape.to_string(),
        "exact_set": set_text(&scan.exact),
        "grid_points": scan.points.iter().map(|(u, v)| [u.to_string(), v.to_string()]).collect::<Vec<_>>(),
        "grid_denominator": 48,
    })
    .to_string())
}

/// u(x, t) on `n` points of (0, x_max] for Gaussian data.
/// `problem` is one of epd, wave, bessel-epd, bessel-wave.
pub fn solution_profile_json(problem: &str, alpha: &str, beta: &str, dim: u32, t: f64, x_max: f64, n: usize) -> Result<String, String> {
    if !(t > 0.0 && x_max > 0.0 && t.is_finite() && x_max.is_finite()) {
        return Err("t and x_max must be positive".into());
    }
    if !(2..=MAX_SAMPLES).contains(&n) {
        return Err(format!("sample count must lie in [2, {MAX_SAMPLES}]"));
    }
    let (prob, role) = match problem {
        "epd" => (Problem::Epd { n: dim, beta: exact("beta", beta)? }, DataRole::InitialPosition),
        "wave" => (Problem::Wave { n: dim }, DataRole::InitialSpeed),
        "bessel-epd" => (Problem::BesselEpd { alpha: exact("alpha", alpha)?, beta: exact("beta", beta)? }, DataRole::InitialPosition),
        "bessel-wave" => (Problem::BesselWave { alpha: exact("alpha", alpha)? }, DataRole::InitialSpeed),
        other => return Err(format!("unknown problem '{other}'")),
    };
    let spec = CauchySpec::new(prob, RadialProfile::gaussian(), role).map_err(|e| e.to_string())?;
    let quad = QuadSpec::with_tol(1e-8);
    let xs: Vec<f64> = (1..=n).map(|i| x_max * i as f64 / n as f64).collect();
    let us = xs.iter().map(|&x| solve(&spec, x, t, &quad).map(num)).collect::<Result<Vec<_>, _>>().map_err(|e| e.to_string())?;
    let data: Vec<Value> = xs.iter().map(|&x| num((-0.5 * x * x).exp())).collect();
    let mp = spec.params();
    Ok(json!({
        "alpha": mp.alpha(),
        "beta": mp.beta(),
        "times_t": spec.times_t(),
        "x": xs,
        "u": us,
        "data": data,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn kernel_profile(alpha: &str, beta: &str, x: f64, z: f64, t_max: f64, n: usize) -> Result<String, JsError> {
    kernel_profile_json(alpha, beta, x, z, t_max, n).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn region_verdict(alpha: &str, beta: &str, r: &str, rho: &str, a: &str, b: &str, p: &str, q: &str) -> Result<String, JsError> {
    region_verdict_json(alpha, beta, r, rho, a, b, p, q).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn solution_profile(problem: &str, alpha: &str, beta: &str, dim: u32, t: f64, x_max: f64, n: usize) -> Result<String, JsError> {
    solution_profile_json(problem, alpha, beta, dim, t, x_max, n).map_err(|e| JsError::new(&e))
}
