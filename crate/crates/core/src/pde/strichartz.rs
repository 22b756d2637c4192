use super::PdeError;
use crate::quad::{gauss_legendre, Neumaier, QuadSpec};
use crate::regions::{scaling_exponent, ExtRational, MixedIndices};
use crate::special_fun::{rat_to_f64, Params};
use crate::transforms::{mean_kernel_side, RadialProfile};
use serde::Serialize;

/// Which variable carries the outer norm.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NormOrder {
    /// ‖‖M_t f(x)‖_{L^r(t^ρdt)} x^{−B}‖_{L^q(dμ_α)}.
    XOuter,
    /// ‖‖M_t f(x) x^{−B}‖_{L^q(dμ_α)}‖_{L^r(t^ρdt)}.
    TOuter,
}

/// Composite rule for the half-line: Gauss–Legendre panels between the
/// breaks, and in log y on the two ends, so that every node moves with a
/// dilation of the breaks.
#[derive(Clone, Copy, Debug)]
struct HalfLineRule {
    order: usize,
    log_width: f64,
    log_reach: f64,
}

impl HalfLineRule {
    fn for_tol(tol: f64) -> Self {
        let order = if tol >= 1e-4 { 8 } else if tol >= 1e-7 { 12 } else { 16 };
        HalfLineRule { order, log_width: 3.0, log_reach: (2.0 * (1.0 / tol).ln()).max(18.0) }
    }

    /// Nodes and weights for ∫_start^∞ given the ordered breaks above start.
    fn nodes(&self, start: f64, breaks: &[f64]) -> Vec<(f64, f64)> {
        let (gx, gw) = gauss_legendre(self.order);
        let mut out = Vec::new();
        let linear = |p: f64, q: f64, out: &mut Vec<(f64, f64)>| {
            let h = 0.5 * (q - p) / LINEAR_PANELS as f64;
            for k in 0..LINEAR_PANELS {
                let c = p + (2 * k + 1) as f64 * h;
                out.extend(gx.iter().zip(&gw).map(|(x, w)| (c + h * x, h * w)));
            }
        };
        let logarithmic = |anchor: f64, from: f64, to: f64, out: &mut Vec<(f64, f64)>| {
            let panels = ((to - from) / self.log_width).ceil().max(1.0) as usize;
            let h = 0.5 * (to - from) / panels as f64;
            for k in 0..panels {
                let c = from + (2 * k + 1) as f64 * h;
                for (x, w) in gx.iter().zip(&gw) {
                    let y = anchor * (c + h * x).exp();
                    out.push((y, y * h * w));
                }
            }
        };
        let mut cuts: Vec<f64> = breaks.iter().copied().filter(|&b| b > start).collect();
        if cuts.is_empty() {
            return out;
        }
        if start > 0.0 {
            cuts.insert(0, start);
        } else {
            logarithmic(cuts[0], -self.log_reach.min(ORIGIN_REACH), 0.0, &mut out);
        }
        for w in cuts.windows(2) {
            linear(w[0], w[1], &mut out);
        }
        logarithmic(*cuts.last().unwrap(), 0.0, self.log_reach, &mut out);
        out
    }
}

/// The kernel loses its relative accuracy for x or z below ~1e−10 of the other.
const ORIGIN_REACH: f64 = 20.0;
const LINEAR_PANELS: usize = 4;
const SUP_SAMPLES_PER_OCTAVE: i32 = 8;
const SUP_OCTAVES: i32 = 8;

/// (∫_start^∞ (|g(y)| y^c)^p y^m dy)^{1/p}, or sup |g(y)| y^c when p = ∞.
/// `breaks` are the kinks of g; the last one starts the tail.
fn weighted_norm(
    g: &dyn Fn(f64) -> Result<f64, PdeError>,
    c: f64,
    m: f64,
    p: Option<f64>,
    start: f64,
    breaks: &[f64],
    tol: f64,
) -> Result<f64, PdeError> {
    let tail = breaks.last().copied().unwrap_or(start).max(start);
    if tail <= 0.0 {
        return Err(PdeError::Invalid("norm over an empty range".into()));
    }
    let pointwise = |y: f64| g(y).map(|v| v.abs() * y.powf(c));
    let Some(p) = p else {
        let mut sup = 0.0f64;
        let lo = if start > 0.0 { start } else { tail * 0.5f64.powi(SUP_OCTAVES) };
        let n = SUP_SAMPLES_PER_OCTAVE * SUP_OCTAVES * 2;
        let ratio = (tail * 2.0f64.powi(SUP_OCTAVES) / lo).powf(1.0 / n as f64);
        for k in 0..=n {
            sup = sup.max(pointwise(lo * ratio.powi(k))?);
        }
        for &b in breaks {
            sup = sup.max(pointwise(b)?);
        }
        return Ok(sup);
    };
    let mut total = Neumaier::default();
    for (y, w) in HalfLineRule::for_tol(tol).nodes(start, breaks) {
        total.add(w * pointwise(y)?.powf(p) * y.powf(m));
    }
    Ok(total.value().powf(1.0 / p))
}

fn exponent(e: &ExtRational) -> Option<f64> {
    match e {
        ExtRational::Finite(v) => Some(rat_to_f64(v)),
        ExtRational::Infinity => None,
    }
}

fn support(f: &RadialProfile) -> Result<(f64, f64), PdeError> {
    match f.reach() {
        Some((a, b)) if b > a => Ok((a, b)),
        Some(_) => Err(PdeError::Invalid("zero data".into())),
        None => Err(PdeError::Invalid("Strichartz ratios need data with bounded reach".into())),
    }
}

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.retain(|b| *b > 0.0);
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

/// The mixed norm of M_t f, the t-integrals in L^r(t^ρdt) and the
/// x-integrals in L^q(x^{−Bq}dμ_α).
pub fn mixed_norm(params: &Params, idx: &MixedIndices, f: &RadialProfile, order: NormOrder, quad: &QuadSpec) -> Result<f64, PdeError> {
    let (a, b) = support(f)?;
    let r = Some(rat_to_f64(&idx.r));
    let rho = rat_to_f64(&idx.rho);
    let q = exponent(&idx.q);
    let bw = -rat_to_f64(&idx.b);
    let mx = 2.0 * params.alpha() + 1.0;
    let inner_tol = 0.1 * quad.tol;
    let mean_spec = QuadSpec { tol: inner_tol, ..*quad };
    let m = |t: f64, x: f64| -> Result<f64, PdeError> { Ok(mean_kernel_side(params, f, t, x, &mean_spec)?) };
    let outer_breaks = sorted(vec![a, b]);
    match order {
        NormOrder::XOuter => {
            let inner = |x: f64| {
                let start = if x < a { a - x } else if x > b { x - b } else { 0.0 };
                let breaks = sorted(vec![(x - a).abs(), (x - b).abs(), x + a, x, x + b]);
                weighted_norm(&|t| m(t, x), 0.0, rho, r, start, &breaks, inner_tol)
            };
            weighted_norm(&inner, bw, mx, q, 0.0, &outer_breaks, quad.tol)
        }
        NormOrder::TOuter => {
            if q.is_none() {
                return Err(PdeError::Invalid("the exchanged order needs q finite".into()));
            }
            let inner = |t: f64| {
                let start = if t < a { a - t } else { 0.0 };
                let breaks = sorted(vec![(a - t).abs(), a + t, (b - t).abs(), t, b + t]);
                weighted_norm(&|x| m(t, x), bw, mx, q, start, &breaks, inner_tol)
            };
            weighted_norm(&inner, 0.0, rho, r, 0.0, &outer_breaks, quad.tol)
        }
    }
}

/// ‖x^A f‖_{L^p(dμ_α)}.
pub fn data_norm(params: &Params, idx: &MixedIndices, f: &RadialProfile, quad: &QuadSpec) -> Result<f64, PdeError> {
    let (a, b) = support(f)?;
    let g = |y: f64| Ok(if y > b { 0.0 } else { f.eval(y) });
    let breaks = sorted(vec![a, b]);
    weighted_norm(&g, rat_to_f64(&idx.a), 2.0 * params.alpha() + 1.0, exponent(&idx.p), 0.0, &breaks, quad.tol)
}

fn ratios(params: &Params, idx: &MixedIndices, f: &RadialProfile, scales: &[f64], order: NormOrder, quad: &QuadSpec) -> Result<Vec<(f64, f64)>, PdeError> {
    scales
        .iter()
        .map(|&s| {
            if !(s > 0.0) {
                return Err(PdeError::Invalid(format!("scale must be positive, got {s}")));
            }
            let fs = f.dilate(s);
            let rhs = data_norm(params, idx, &fs, quad)?;
            if !(rhs > 0.0) {
                return Err(PdeError::Invalid("data norm vanishes, the ratio is undefined".into()));
            }
            Ok((s, mixed_norm(params, idx, &fs, order, quad)? / rhs))
        })
        .collect()
}

/// LHS/RHS of the mixed-norm estimate for the dilates f(·/s).
pub fn strichartz_ratio(params: &Params, idx: &MixedIndices, f: &RadialProfile, scales: &[f64], quad: &QuadSpec) -> Result<Vec<(f64, f64)>, PdeError> {
    ratios(params, idx, f, scales, NormOrder::XOuter, quad)
}

/// As `strichartz_ratio` with the t-norm outside.
pub fn strichartz_ratio_exchanged(params: &Params, idx: &MixedIndices, f: &RadialProfile, scales: &[f64], quad: &QuadSpec) -> Result<Vec<(f64, f64)>, PdeError> {
    ratios(params, idx, f, scales, NormOrder::TOuter, quad)
}

/// Least-squares slope of log ratio against log scale.
pub fn fit_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// The exponent δ with ratio(s) ∝ s^δ.
pub fn predicted_slope(params: &Params, idx: &MixedIndices) -> Result<f64, PdeError> {
    Ok(rat_to_f64(&scaling_exponent(params, idx)?))
}
