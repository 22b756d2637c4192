//! Olver's regularized Gauss hypergeometric function 𝐅(a,b;c;z) = ₂F₁(a,b;c;z)/Γ(c).

use super::gamma::{gamma_reciprocal, sinpi};
use super::SpecialError;
use std::f64::consts::PI;

/// 𝐅(a,b;c;y) for real y < 1.
pub fn olver_2f1(a: f64, b: f64, c: f64, y: f64) -> Result<f64, SpecialError> {
    if !(y < 1.0) {
        return Err(SpecialError::Domain(format!("olver_2f1 requires y < 1, got {y}")));
    }
    Ok(hyp2f1_reg(a, b, c, y, 1.0 - y))
}

pub(crate) fn is_nonpos_int(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// 1/Γ(c+n) for n = 0, 1, 2, ... without 0/0 at the poles.
struct RgammaSeq {
    c: f64,
    n: u32,
    cur: f64,
    pole_run: Option<u32>,
}

impl RgammaSeq {
    fn new(c: f64) -> Self {
        let pole_run = if is_nonpos_int(c) { Some((-c) as u32) } else { None };
        RgammaSeq { c, n: 0, cur: gamma_reciprocal(c), pole_run }
    }

    fn value(&self) -> f64 {
        self.cur
    }

    fn advance(&mut self) {
        let cn = self.c + self.n as f64;
        self.n += 1;
        match self.pole_run {
            Some(m) if self.n <= m => self.cur = 0.0,
            Some(m) if self.n == m + 1 => self.cur = 1.0,
            _ => self.cur /= cn,
        }
    }
}

/// 𝐅(a,b;c;z) with the complement zc = 1 − z supplied by the caller to full accuracy.
pub(crate) fn hyp2f1_reg(a: f64, b: f64, c: f64, z: f64, zc: f64) -> f64 {
    let ta = is_nonpos_int(a);
    let tb = is_nonpos_int(b);
    if ta || tb {
        let (n, other) = if ta && (!tb || a >= b) { (a, b) } else { (b, a) };
        return terminating(n, other, c, z);
    }
    if z == 0.0 {
        return gamma_reciprocal(c);
    }
    if z.abs() <= 0.5 {
        return series(a, b, c, z);
    }
    if z < 0.0 {
        // Pfaff: 𝐅(a,b;c;z) = (1−z)^{−a} 𝐅(a, c−b; c; z/(z−1))
        let w = -z / zc;
        return zc.powf(-a) * hyp2f1_reg(a, c - b, c, w, 1.0 / zc);
    }
    near_one(a, b, c, z, zc)
}

fn terminating(n: f64, b: f64, c: f64, z: f64) -> f64 {
    let m = (-n) as u32;
    let mut rg = RgammaSeq::new(c);
    let mut p = 1.0;
    let mut sum = rg.value();
    for k in 0..m {
        let kf = k as f64;
        p *= (n + kf) * (b + kf) * z / (kf + 1.0);
        rg.advance();
        sum += p * rg.value();
    }
    sum
}

fn series(a: f64, b: f64, c: f64, z: f64) -> f64 {
    let mut rg = RgammaSeq::new(c);
    let mut p = 1.0;
    let mut sum = rg.value();
    let guard = if is_nonpos_int(c) { (-c) as u32 + 1 } else { 0 };
    let mut small = 0;
    for k in 0..3000u32 {
        let kf = k as f64;
        p *= (a + kf) * (b + kf) * z / (kf + 1.0);
        rg.advance();
        let term = p * rg.value();
        sum += term;
        if k >= guard {
            if term.abs() <= 1e-17 * sum.abs() || term == 0.0 && p == 0.0 {
                small += 1;
                if small >= 2 {
                    break;
                }
            } else {
                small = 0;
            }
        }
    }
    sum
}

fn near_one(a: f64, b: f64, c: f64, z: f64, zc: f64) -> f64 {
    let s = c - a - b;
    if (s - s.round()).abs() > 0.05 {
        let t1 = gamma_reciprocal(c - a) * gamma_reciprocal(c - b) * series_or_self(a, b, 1.0 - s, zc);
        let t2 = zc.powf(s)
            * gamma_reciprocal(a)
            * gamma_reciprocal(b)
            * series_or_self(c - a, c - b, s + 1.0, zc);
        return PI / sinpi(s) * (t1 - t2);
    }
    ode_continue(a, b, c, z, zc)
}

fn series_or_self(a: f64, b: f64, c: f64, z: f64) -> f64 {
    if is_nonpos_int(a) || is_nonpos_int(b) {
        let (n, other) = if is_nonpos_int(a) { (a, b) } else { (b, a) };
        terminating(n, other, c, z)
    } else {
        series(a, b, c, z)
    }
}

/// Analytic continuation from z = 1/2 toward 1 by Taylor stepping the
/// hypergeometric equation written in ζ = 1 − z.
fn ode_continue(a: f64, b: f64, c: f64, _z: f64, zc: f64) -> f64 {
    let mut zeta = 0.5;
    let mut g = series(a, b, c, 0.5);
    let mut dg = -a * b * series(a + 1.0, b + 1.0, c + 1.0, 0.5);
    let cp = a + b - c + 1.0;
    let ab = a * b;
    let apb1 = a + b + 1.0;
    while zeta > zc {
        let h = -(0.5 * zeta).min(zeta - zc);
        let a0 = zeta * (1.0 - zeta);
        let a1 = 1.0 - 2.0 * zeta;
        let b0 = cp - apb1 * zeta;
        let b1 = -apb1;
        // u_n = c_n h^n, the Taylor terms of the step
        let mut u0 = g;
        let mut u1 = dg * h;
        let mut val = u0 + u1;
        let mut der = u1;
        let scale = g.abs().max(u1.abs()).max(f64::MIN_POSITIVE);
        let mut small = 0;
        for n in 0..400usize {
            let nf = n as f64;
            let u2 = -((a1 * nf + b0) * (nf + 1.0) * u1 * h + (-nf * (nf - 1.0) + b1 * nf - ab) * u0 * h * h)
                / (a0 * (nf + 2.0) * (nf + 1.0));
            val += u2;
            der += (nf + 2.0) * u2;
            u0 = u1;
            u1 = u2;
            if u2.abs() < 1e-17 * val.abs().max(scale) && ((nf + 2.0) * u2).abs() < 1e-17 * der.abs().max(scale) {
                small += 1;
                if small >= 3 {
                    break;
                }
            } else {
                small = 0;
            }
        }
        g = val;
        dg = der / h;
        zeta += h;
        if (zeta - zc).abs() <= 1e-300 {
            break;
        }
    }
    g
}
