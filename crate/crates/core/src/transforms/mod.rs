//! The modified Hankel transform, the multiplier m_{α,β}, both forms of the
//! mean operator and the positive operators dominating its time norm.

mod aux;
mod mean;
mod profile;

pub use aux::{aux_decomposition, aux_k_growth, aux_k_operator, aux_k_truncated, hardy_component, HardySelector};
pub use mean::{mean_kernel_side, mean_multiplier_side, MultiplierSide};
pub use profile::{DecayClass, RadialProfile};

use crate::quad::{gauss_legendre, QuadError, QuadSpec};
use crate::special_fun::bessel::j_scaled;
use crate::special_fun::gamma::ln_gamma_pos;
use crate::special_fun::Params;
use serde::Serialize;
use std::f64::consts::{LN_2, PI};
use std::sync::OnceLock;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TransformError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("integral diverges: {0}")]
    Divergent(String),
    #[error(transparent)]
    Quadrature(#[from] QuadError),
}

/// m_{α,β}(s) = 2^ν Γ(ν+1) J_ν(s)/s^ν with ν = α+β; m(0) = 1.
pub fn multiplier(params: &Params, s: f64) -> f64 {
    let nu = params.alpha() + params.beta();
    multiplier_nu(nu, s)
}

fn multiplier_nu(nu: f64, s: f64) -> f64 {
    (nu * LN_2 + ln_gamma_pos(nu + 1.0)).exp() * j_scaled(nu, s)
}

fn check_alpha(alpha: f64) -> Result<(), TransformError> {
    if !(alpha > -1.0) {
        return Err(TransformError::Domain(format!("alpha must exceed -1, got {alpha}")));
    }
    Ok(())
}

fn gl16() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(16))
}

fn gl8() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(8))
}

/// Levels of geometric grading toward the origin, enough for the dropped
/// sliver to carry a relative weight of about 2^{−40}.
fn origin_levels(alpha: f64) -> i32 {
    (40.0 / (2.0 * alpha + 2.0)).ceil().clamp(8.0, 400.0) as i32
}

/// Fixed nodes and weights for ∫ g dμ_α on an interval.
#[derive(Clone, Debug, Default)]
pub struct MeasureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl MeasureRule {
    /// Gauss–Legendre panels no longer than `panel` on [a,b]. When a = 0 the
    /// first panel is graded geometrically and the last sliver [0,ε] is
    /// represented by one node carrying ε^{2α+2}/(2α+2).
    pub fn new(alpha: f64, a: f64, b: f64, panel: f64) -> Self {
        let mut rule = MeasureRule::default();
        if !(b > a) {
            return rule;
        }
        let n = ((b - a) / panel).ceil().max(1.0) as usize;
        let h = (b - a) / n as f64;
        let mut start = 0;
        if a == 0.0 {
            let (gx, gw) = gl8();
            let levels = origin_levels(alpha);
            for k in 0..levels {
                let hi = h * 0.5f64.powi(k);
                rule.push_panel(alpha, 0.5 * hi, hi, gx, gw);
            }
            let eps = h * 0.5f64.powi(levels);
            rule.nodes.push(eps);
            rule.weights.push(eps.powf(2.0 * alpha + 2.0) / (2.0 * alpha + 2.0));
            start = 1;
        }
        let (gx, gw) = gl16();
        for i in start..n {
            let lo = a + i as f64 * h;
            let hi = if i + 1 == n { b } else { a + (i + 1) as f64 * h };
            rule.push_panel(alpha, lo, hi, gx, gw);
        }
        rule
    }

    fn push_panel(&mut self, alpha: f64, lo: f64, hi: f64, gx: &[f64], gw: &[f64]) {
        let c = 0.5 * (lo + hi);
        let r = 0.5 * (hi - lo);
        for (x, w) in gx.iter().zip(gw) {
            let y = c + r * x;
            self.nodes.push(y);
            self.weights.push(w * r * y.powf(2.0 * alpha + 1.0));
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, g: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&y, &w)| w * g(y)).sum()
    }
}

/// Panel length resolving oscillation at frequency `freq` across a profile
/// of the given reach.
fn panel_for(freq: f64, reach: f64) -> f64 {
    (4.0 * PI / freq.max(1e-3)).min(reach / 16.0)
}

/// Profile values at the rule nodes; the rule must lie inside the support.
fn sampled(f: &RadialProfile, alpha: f64, freq: f64) -> Result<(MeasureRule, Vec<f64>), TransformError> {
    let (a, b) = f.reach().ok_or_else(|| TransformError::Domain("profile has no finite reach".into()))?;
    let rule = MeasureRule::new(alpha, a, b, panel_for(freq, b - a));
    let vals = rule.nodes.iter().map(|&y| f.eval(y)).collect();
    Ok((rule, vals))
}

/// H_α f at each of `xs`, for profiles of finite reach.
pub fn hankel_values(alpha: f64, f: &RadialProfile, xs: &[f64]) -> Result<Vec<f64>, TransformError> {
    check_alpha(alpha)?;
    let xmax = xs.iter().fold(0.0f64, |m, &x| m.max(x));
    let (rule, vals) = sampled(f, alpha, xmax)?;
    Ok(xs
        .iter()
        .map(|&x| {
            rule.nodes
                .iter()
                .zip(&rule.weights)
                .zip(&vals)
                .map(|((&y, &w), &v)| w * v * j_scaled(alpha, x * y))
                .sum()
        })
        .collect())
}

/// H_α f(x) = ∫₀^∞ f(y) J_α(xy)/(xy)^α dμ_α(y).
pub fn hankel(alpha: f64, f: &RadialProfile, x: f64, spec: &QuadSpec) -> Result<f64, TransformError> {
    check_alpha(alpha)?;
    spec.validate()?;
    if !(x > 0.0) {
        return Err(TransformError::Domain(format!("x must be positive, got {x}")));
    }
    match f.decay_class {
        DecayClass::Polynomial(rate) => hankel_polynomial(alpha, f, rate, x),
        _ => {
            let (a, b) = f.reach().ok_or_else(|| TransformError::Domain("profile has no finite reach".into()))?;
            let g = |y: f64| f.eval(y) * j_scaled(alpha, x * y);
            let mut panel = panel_for(x, b - a);
            let mut prev = MeasureRule::new(alpha, a, b, panel).integrate(g);
            for _ in 0..8 {
                panel *= 0.5;
                let rule = MeasureRule::new(alpha, a, b, panel);
                let cur = rule.integrate(g);
                let scale = rule.integrate(|y| g(y).abs());
                if (cur - prev).abs() <= spec.tol * scale {
                    return Ok(cur);
                }
                prev = cur;
            }
            Err(QuadError::NoConvergence { estimate: prev, error: f64::NAN }.into())
        }
    }
}

/// Half-period panels of the tail, summed and extrapolated.
const TAIL_PANELS: usize = 48;

fn hankel_polynomial(alpha: f64, f: &RadialProfile, rate: f64, x: f64) -> Result<f64, TransformError> {
    if !(rate > alpha + 0.5) {
        return Err(TransformError::Divergent(format!("decay rate {rate} does not beat y^(alpha+1/2)")));
    }
    if f.origin_order >= 2.0 * alpha + 2.0 {
        return Err(TransformError::Divergent("profile not integrable at the origin".into()));
    }
    let y0 = f.support_hint.map_or(0.0, |(_, b)| b).max(10.0 / x).max(1.0);
    let g = |y: f64| f.eval(y) * j_scaled(alpha, x * y);
    let head = MeasureRule::new(alpha, 0.0, y0, panel_for(x, y0)).integrate(g);
    let half = PI / x;
    let mut sums = Vec::with_capacity(TAIL_PANELS);
    let mut acc = 0.0;
    for k in 0..TAIL_PANELS {
        let lo = y0 + k as f64 * half;
        acc += MeasureRule::new(alpha, lo, lo + half, half).integrate(g);
        sums.push(acc);
    }
    Ok(head + wynn_epsilon(&sums, 10))
}

/// Wynn's ε-algorithm on partial sums, returning the last entry of the
/// deepest even column not exceeding `depth`.
fn wynn_epsilon(s: &[f64], depth: usize) -> f64 {
    let mut prev = vec![0.0; s.len() + 1];
    let mut cur = s.to_vec();
    let mut best = *s.last().unwrap_or(&0.0);
    for k in 1..=depth {
        if cur.len() < 2 {
            break;
        }
        let mut next = Vec::with_capacity(cur.len() - 1);
        for i in 0..cur.len() - 1 {
            let d = cur[i + 1] - cur[i];
            if d == 0.0 {
                return cur[i + 1];
            }
            next.push(prev[i + 1] + 1.0 / d);
        }
        if k % 2 == 0 {
            best = *next.last().unwrap();
        }
        prev = cur;
        cur = next;
    }
    best
}

/// H_α f tabulated on a fixed rule over [0, cutoff], where |H_α f(y)|·y^{α+1/2}
/// has fallen below tol·10⁻² of its peak.
#[derive(Clone, Debug)]
pub struct HankelTable {
    pub alpha: f64,
    pub rule: MeasureRule,
    pub values: Vec<f64>,
    pub cutoff: f64,
    max_freq: f64,
}

/// Largest cutoff tried before giving up.
const MAX_CUTOFF: f64 = 16384.0;

impl HankelTable {
    /// `max_freq` bounds the frequencies later paired against the table.
    pub fn build(alpha: f64, f: &RadialProfile, max_freq: f64, spec: &QuadSpec) -> Result<Self, TransformError> {
        check_alpha(alpha)?;
        spec.validate()?;
        if matches!(f.decay_class, DecayClass::Polynomial(_)) || !f.smooth {
            return Err(TransformError::Domain("tabulated transform needs a smooth profile of finite reach".into()));
        }
        let (_, b) = f.reach().ok_or_else(|| TransformError::Domain("profile has no finite reach".into()))?;
        let probe = |lo: f64, hi: f64| -> Result<f64, TransformError> {
            let n = ((hi - lo) * b).ceil().max(64.0) as usize;
            let ys: Vec<f64> = (0..=n).map(|i| lo + (hi - lo) * i as f64 / n as f64).collect();
            let vals = hankel_values(alpha, f, &ys)?;
            Ok(ys.iter().zip(vals).fold(0.0f64, |m, (&y, v)| m.max(v.abs() * y.powf(alpha + 0.5))))
        };
        let peak = probe(0.0, 4.0 / b)?;
        let threshold = spec.tol * 1e-2 * peak;
        let mut cutoff = 8.0 / b;
        while probe(0.5 * cutoff, cutoff)? > threshold {
            cutoff *= 2.0;
            if cutoff > MAX_CUTOFF {
                return Err(QuadError::NoConvergence { estimate: peak, error: threshold }.into());
            }
        }
        let rule = MeasureRule::new(alpha, 0.0, cutoff, panel_for(max_freq + b, cutoff));
        let values = hankel_values(alpha, f, &rule.nodes)?;
        Ok(HankelTable { alpha, rule, values, cutoff, max_freq })
    }

    /// ∫ g(y) H_α f(y) dμ_α(y) over the table.
    pub fn pair(&self, g: impl Fn(f64) -> f64) -> f64 {
        self.rule
            .nodes
            .iter()
            .zip(&self.rule.weights)
            .zip(&self.values)
            .map(|((&y, &w), &v)| w * v * g(y))
            .sum()
    }

    /// H_α(H_α f)(x).
    pub fn inverse_at(&self, x: f64) -> Result<f64, TransformError> {
        self.check_freq(x)?;
        Ok(self.pair(|y| j_scaled(self.alpha, x * y)))
    }

    pub fn check_freq(&self, freq: f64) -> Result<(), TransformError> {
        if freq > self.max_freq * (1.0 + 1e-12) {
            return Err(TransformError::Domain(format!(
                "frequency {freq} exceeds the table bound {}",
                self.max_freq
            )));
        }
        Ok(())
    }

    /// ‖H_α f‖² over the table.
    pub fn norm_sq(&self) -> f64 {
        self.rule.integrate_values(&self.values)
    }
}

impl MeasureRule {
    fn integrate_values(&self, v: &[f64]) -> f64 {
        self.weights.iter().zip(v).map(|(w, v)| w * v * v).sum()
    }
}

/// Relative L²(dμ_α) errors of H_α H_α f against f and of ‖H_α f‖ against ‖f‖.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HankelIdentities {
    pub roundtrip: f64,
    pub plancherel: f64,
}

pub fn hankel_identities(alpha: f64, f: &RadialProfile, spec: &QuadSpec) -> Result<HankelIdentities, TransformError> {
    let (_, b) = f.reach().ok_or_else(|| TransformError::Domain("profile has no finite reach".into()))?;
    let xmax = 1.5 * b;
    let table = HankelTable::build(alpha, f, xmax, spec)?;
    let xr = MeasureRule::new(alpha, 0.0, xmax, panel_for(0.0, xmax));
    let mut diff = 0.0;
    let mut norm = 0.0;
    for (&x, &w) in xr.nodes.iter().zip(&xr.weights) {
        let fx = f.eval(x);
        let back = table.inverse_at(x)?;
        diff += w * (back - fx).powi(2);
        norm += w * fx * fx;
    }
    let hf = table.norm_sq();
    Ok(HankelIdentities { roundtrip: (diff / norm).sqrt(), plancherel: ((hf / norm).sqrt() - 1.0).abs() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special_fun::{bessel_j, rat};

    #[test]
    fn multiplier_examples() {
        let p = Params::new(0.3, 0.4).unwrap();
        assert_eq!(multiplier(&p, 0.0), 1.0);
        let p = Params::exact(rat(0, 1), rat(1, 2)).unwrap();
        assert!(multiplier(&p, PI).abs() < 1e-15);
        let p = Params::new(0.0, 0.0).unwrap();
        assert!((multiplier(&p, 5.0) - bessel_j(0.0, 5.0).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn gaussian_is_fixed() {
        let f = RadialProfile::gaussian();
        let spec = QuadSpec::default();
        for &a in &[-0.75, -0.5, 0.0, 0.5, 1.5, 4.0] {
            for &x in &[0.1, 1.0, 2.5, 6.0] {
                let h = hankel(a, &f, x, &spec).unwrap();
                assert!((h - (-0.5 * x * x).exp()).abs() < 1e-8, "{a} {x}: {h}");
            }
        }
    }

    #[test]
    fn bump_matches_brute_force() {
        let f = RadialProfile::bump(1.0, 2.0);
        let (a, x) = (0.5, 3.0);
        let got = hankel(a, &f, x, &QuadSpec::default()).unwrap();
        let n = 200_000;
        let h = 1.0 / n as f64;
        let g = |y: f64| f.eval(y) * j_scaled(a, x * y) * y.powf(2.0 * a + 1.0);
        let mut s = g(1.0) + g(2.0);
        for i in 1..n {
            s += g(1.0 + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        let brute = s * h / 3.0;
        assert!((got - brute).abs() < 1e-7, "{got} vs {brute}");
    }

    #[test]
    fn polynomial_tail() {
        // ∫₀^∞ J₀(xy) y/(1+y²)^{3/2} dy = e^{−x}
        let f = RadialProfile::new(|y| (1.0 + y * y).powf(-1.5), None, DecayClass::Polynomial(3.0), true);
        for &x in &[0.5, 1.0, 3.0] {
            let got = hankel(0.0, &f, x, &QuadSpec::default()).unwrap();
            let want = (-x).exp();
            assert!((got - want).abs() < 1e-7, "{x}: {got} vs {want}");
        }
    }

    #[test]
    fn identities_for_bumps() {
        let spec = QuadSpec::with_tol(1e-6);
        for f in [RadialProfile::bump(1.0, 2.0), RadialProfile::bump(0.5, 3.0), RadialProfile::gaussian()] {
            for &a in &[-0.5, 1.5] {
                let id = hankel_identities(a, &f, &spec).unwrap();
                assert!(id.roundtrip < 1e-6 && id.plancherel < 1e-6, "{a}: {id:?}");
            }
        }
    }
}
