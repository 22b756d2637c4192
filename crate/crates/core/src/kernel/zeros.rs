//! Zero census of 𝖯 on (−1,1) and 𝐐 on (1,∞).

use crate::quad::QuadSpec;
use crate::special_fun::legendre::{ferrers_p_parts, olver_q_parts};
use crate::special_fun::{rat, LegendreFunction, Params};
use serde::Serialize;
use std::cmp::Ordering;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ZeroPrediction {
    Exactly(usize),
    AtLeastOne,
}

impl ZeroPrediction {
    pub fn admits(&self, observed: usize) -> bool {
        match *self {
            ZeroPrediction::Exactly(n) => observed == n,
            ZeroPrediction::AtLeastOne => observed >= 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZeroCount {
    pub predicted: ZeroPrediction,
    pub observed: usize,
    /// y-coordinates of the located sign changes.
    pub locations: Vec<f64>,
    /// Set when the scan met non-finite values and cannot vouch for the count.
    pub inconclusive: bool,
}

impl ZeroCount {
    pub fn agrees(&self) -> bool {
        !self.inconclusive && self.predicted.admits(self.observed)
    }
}

pub fn predicted_zeros(params: &Params, which: LegendreFunction) -> ZeroPrediction {
    let z = rat(0, 1);
    let one = rat(1, 1);
    let half = rat(1, 2);
    // sign of α + 1/2, β, 2α + β, α − 1/2, β − 1
    let a_plus = params.sign_affine(half, one, z);
    let b_sign = params.sign_affine(z, z, one);
    let line = params.sign_affine(z, rat(2, 1), one);
    let a_minus = params.sign_affine(-half, one, z);
    let b_minus_one = params.sign_affine(-one, z, one);
    match which {
        LegendreFunction::FerrersP => {
            let free = (a_plus != Ordering::Less && b_sign != Ordering::Less)
                || (a_plus == Ordering::Less && line != Ordering::Less)
                || (a_minus != Ordering::Greater && b_sign == Ordering::Less);
            if free {
                ZeroPrediction::Exactly(0)
            } else {
                ZeroPrediction::AtLeastOne
            }
        }
        LegendreFunction::OlverQ => {
            if a_plus == Ordering::Less && b_minus_one == Ordering::Greater && line == Ordering::Less {
                ZeroPrediction::Exactly(1)
            } else {
                ZeroPrediction::Exactly(0)
            }
        }
    }
}

/// Scan nodes as (small complement, large complement) pairs, ordered along the interval.
fn ferrers_nodes() -> Vec<(f64, f64)> {
    let mut omy: Vec<f64> = Vec::new();
    for k in (8..=120).rev() {
        omy.push(2.0 - 2.0 * 10f64.powf(-(k as f64) / 8.0));
    }
    for j in (1..400).rev() {
        omy.push(2.0 * j as f64 / 400.0);
    }
    for k in 8..=120 {
        omy.push(2.0 * 10f64.powf(-(k as f64) / 8.0));
    }
    omy.sort_by(|a, b| b.total_cmp(a));
    omy.dedup();
    omy.into_iter()
        .map(|o| {
            // keep the small side exact near y = −1
            if o > 1.0 {
                let opy = 2.0 - o;
                (2.0 - opy, opy)
            } else {
                (o, 2.0 - o)
            }
        })
        .collect()
}

fn olver_nodes() -> Vec<(f64, f64)> {
    (-160..=240).map(|k| {
        let ym1 = 1e-4 * (k as f64 / 4.0).exp2();
        (ym1, ym1 + 2.0)
    })
    .collect()
}

pub fn count_legendre_zeros(params: &Params, which: LegendreFunction, spec: &QuadSpec) -> ZeroCount {
    let predicted = predicted_zeros(params, which);
    let (nodes, eval): (Vec<(f64, f64)>, Box<dyn Fn(f64, f64) -> f64 + '_>) = match which {
        LegendreFunction::FerrersP => (ferrers_nodes(), Box::new(|o, p| ferrers_p_parts(params, o, p).0)),
        LegendreFunction::OlverQ => (olver_nodes(), Box::new(|m, p| olver_q_parts(params, m, p).0)),
    };
    let coordinate = |pair: (f64, f64)| match which {
        LegendreFunction::FerrersP => 1.0 - pair.0,
        LegendreFunction::OlverQ => 1.0 + pair.0,
    };
    let mut inconclusive = false;
    let mut locations = Vec::new();
    let mut last: Option<((f64, f64), f64)> = None;
    for &node in &nodes {
        let v = eval(node.0, node.1);
        if !v.is_finite() {
            inconclusive = true;
            continue;
        }
        if v == 0.0 {
            continue;
        }
        if let Some((prev, pv)) = last {
            if pv.signum() != v.signum() {
                locations.push(coordinate(bisect(&*eval, prev, node, pv, spec)));
            }
        }
        last = Some((node, v));
    }
    ZeroCount { predicted, observed: locations.len(), locations, inconclusive }
}

fn bisect(eval: &dyn Fn(f64, f64) -> f64, mut lo: (f64, f64), mut hi: (f64, f64), flo: f64, spec: &QuadSpec) -> (f64, f64) {
    for _ in 0..200 {
        let mid = (0.5 * (lo.0 + hi.0), 0.5 * (lo.1 + hi.1));
        if (hi.0 - lo.0).abs() <= spec.tol * mid.0.abs().max(1e-300) || mid.0 == lo.0 || mid.0 == hi.0 {
            return mid;
        }
        let fm = eval(mid.0, mid.1);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == flo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (0.5 * (lo.0 + hi.0), 0.5 * (lo.1 + hi.1))
}
