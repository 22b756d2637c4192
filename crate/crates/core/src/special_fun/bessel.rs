//! Bessel functions of the first kind, real order ν > −1 and real x ≥ 0.

use super::gamma::{gamma_reciprocal, ln_gamma_pos};
use super::SpecialError;
use num_complex::Complex64;
use std::f64::consts::PI;

const SERIES_MAX: f64 = 8.0;

/// J_ν(x) for ν > −1, x ≥ 0.
pub fn bessel_j(nu: f64, x: f64) -> Result<f64, SpecialError> {
    if !(nu > -1.0) {
        return Err(SpecialError::Domain(format!("bessel_j requires nu > -1, got {nu}")));
    }
    if !(x >= 0.0) {
        return Err(SpecialError::Domain(format!("bessel_j requires x >= 0, got {x}")));
    }
    Ok(j_unchecked(nu, x))
}

/// J_ν(x) without argument validation.
pub fn j_unchecked(nu: f64, x: f64) -> f64 {
    if x == 0.0 {
        return if nu == 0.0 {
            1.0
        } else if nu > 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
    }
    if x <= SERIES_MAX {
        return x.powf(nu) * series_scaled(nu, x);
    }
    if x >= hankel_threshold(nu) {
        return hankel_asymptotic(nu, x);
    }
    if nu >= 0.0 {
        steed(nu, x).0
    } else {
        let (j1, jp1) = steed(nu + 1.0, x);
        jp1 + (nu + 1.0) / x * j1
    }
}

/// J_ν(x)/x^ν, finite at x = 0 where it equals 1/(2^ν Γ(ν+1)).
pub fn j_scaled(nu: f64, x: f64) -> f64 {
    if x <= SERIES_MAX {
        series_scaled(nu, x)
    } else {
        j_unchecked(nu, x) * x.powf(-nu)
    }
}

fn hankel_threshold(nu: f64) -> f64 {
    30.0 + 1.5 * nu * nu
}

fn series_scaled(nu: f64, x: f64) -> f64 {
    let q = -0.25 * x * x;
    let lead = (-nu * std::f64::consts::LN_2).exp();
    let mut term = lead * gamma_reciprocal(nu + 1.0);
    if nu + 1.0 > 170.0 {
        term = (-nu * std::f64::consts::LN_2 - ln_gamma_pos(nu + 1.0)).exp();
    }
    let mut sum = term;
    let mut k = 1.0;
    loop {
        term *= q / (k * (nu + k));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() || k > 200.0 {
            break;
        }
        k += 1.0;
    }
    sum
}

/// Coefficients a_k(ν) of the Hankel expansion, iterated lazily.
fn hankel_terms(nu: f64, x: f64) -> (f64, f64) {
    let mu = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0;
    let mut prev = f64::INFINITY;
    for k in 1..60 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        term *= (mu - odd * odd) / (kf * 8.0 * x);
        let a = term.abs();
        if a > prev {
            break;
        }
        prev = a;
        // (−1)^{k/2} pattern: P takes even k, Q odd k
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        if a < 1e-17 * p.abs().max(q.abs()) {
            break;
        }
    }
    (p, q)
}

fn hankel_asymptotic(nu: f64, x: f64) -> f64 {
    let (p, q) = hankel_terms(nu, x);
    // χ = x − (ν/2 + 1/4)π, evaluated without large-angle reduction error in the offset
    let c = (0.5 * nu + 0.25) * PI;
    let (sx, cx) = x.sin_cos();
    let (sc, cc) = c.sin_cos();
    let cos_chi = cx * cc + sx * sc;
    let sin_chi = sx * cc - cx * sc;
    (2.0 / (PI * x)).sqrt() * (p * cos_chi - q * sin_chi)
}

/// J_ν and J'_ν for ν ≥ 0, x ≥ 2, by continued fractions (Steed's method).
fn steed(nu: f64, x: f64) -> (f64, f64) {
    const EPS: f64 = 1e-16;
    const FPMIN: f64 = 1e-300;
    const MAXIT: usize = 100_000;
    let nl = ((nu - x + 1.5).max(0.0)) as usize;
    let xmu = nu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;
    let mut isign = 1.0;
    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    for _ in 0..MAXIT {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() < EPS {
            break;
        }
    }
    let mut rjl = isign * 1e-30;
    let mut rjpl = h * rjl;
    let mut rjl1 = rjl;
    let mut rjp1 = rjpl;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
        if rjl.abs() > 1e250 {
            rjl *= 1e-250;
            rjpl *= 1e-250;
            rjl1 *= 1e-250;
            rjp1 *= 1e-250;
        }
    }
    if rjl == 0.0 {
        rjl = EPS;
    }
    let f = rjpl / rjl;
    let mut a = 0.25 - xmu2;
    let mut p = -0.5 * xi;
    let mut q = 1.0;
    let br = 2.0 * x;
    let mut bi = 2.0;
    let mut fct = a * xi / (p * p + q * q);
    let mut cr = br + q * fct;
    let mut ci = bi + p * fct;
    let mut den = br * br + bi * bi;
    let mut dr = br / den;
    let mut di = -bi / den;
    let mut dlr = cr * dr - ci * di;
    let mut dli = cr * di + ci * dr;
    let mut temp = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = temp;
    for i in 2..MAXIT {
        a += 2.0 * (i as f64 - 1.0);
        bi += 2.0;
        dr = a * dr + br;
        di = a * di + bi;
        if dr.abs() + di.abs() < FPMIN {
            dr = FPMIN;
        }
        fct = a / (cr * cr + ci * ci);
        cr = br + cr * fct;
        ci = bi - ci * fct;
        if cr.abs() + ci.abs() < FPMIN {
            cr = FPMIN;
        }
        den = dr * dr + di * di;
        dr /= den;
        di = -di / den;
        dlr = cr * dr - ci * di;
        dli = cr * di + ci * dr;
        temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        if (dlr - 1.0).abs() + dli.abs() < EPS {
            break;
        }
    }
    let gam = (p - f) / q;
    let rjmu = (w / ((p - f) * gam + q)).sqrt().copysign(rjl);
    let scale = rjmu / rjl;
    (rjl1 * scale, rjp1 * scale)
}

/// Hankel-type asymptotic factor S^±_ν(w) = Σ (±i)^k a_k(ν)/w^k at complex w,
/// so that H^±_ν(w) = √(2/(πw)) e^{±i(w − νπ/2 − π/4)} S^±_ν(w).
pub fn hankel_series_complex(nu: f64, w: Complex64, plus: bool) -> Complex64 {
    let mu = 4.0 * nu * nu;
    let unit = if plus { Complex64::i() } else { -Complex64::i() };
    let step = unit / (8.0 * w);
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut prev = f64::INFINITY;
    for k in 1..60 {
        let odd = 2.0 * k as f64 - 1.0;
        let next = term * step * ((mu - odd * odd) / k as f64);
        let a = next.norm();
        if a > prev {
            break;
        }
        prev = a;
        term = next;
        sum += term;
        if a < 1e-17 * sum.norm() {
            break;
        }
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half_integer_closed(n: i32, x: f64) -> f64 {
        // spherical Bessel via upward recurrence in closed form for small orders
        let s = x.sin();
        let c = x.cos();
        let pre = (2.0 / (PI * x)).sqrt();
        match n {
            -1 => pre * c,
            0 => pre * s,
            1 => pre * (s / x - c),
            2 => pre * ((3.0 / (x * x) - 1.0) * s - 3.0 * c / x),
            _ => unreachable!(),
        }
    }

    #[test]
    fn half_integer_orders_all_ranges() {
        for &x in &[0.01, 0.5, 1.0, 3.0, 7.9, 8.1, 12.0, 17.2, 29.0, 31.0, 49.0, 120.0, 1e4] {
            for n in -1..=2 {
                let nu = n as f64 + 0.5;
                let exact = half_integer_closed(n, x);
                let got = bessel_j(nu, x).unwrap();
                let scale = if x > 50.0 { x.powf(-0.5) * 1e-10 } else { 1e-12 };
                assert!((got - exact).abs() <= scale, "nu={nu} x={x} got={got} exact={exact}");
            }
        }
    }

    #[test]
    fn special_values() {
        assert_eq!(bessel_j(0.0, 0.0).unwrap(), 1.0);
        assert!(bessel_j(0.5, PI).unwrap().abs() < 1e-15);
        assert!(bessel_j(-1.0, 1.0).is_err());
        // J_0 first zero
        assert!(bessel_j(0.0, 2.404_825_557_695_773).unwrap().abs() < 1e-15);
    }

    #[test]
    fn reference_values() {
        // mpmath besselj at 30 digits
        let cases = [
            (1.3, 17.2, -0.052_714_501_600_452_99),
            (0.0, 10.0, -0.245_935_764_451_348_3),
            (2.7, 9.5, 0.034_716_780_302_658_25),
            (0.3, 40.0, 0.063_616_304_779_135_65),
            (-0.4, 12.5, 0.219_853_006_062_089_5),
            (4.25, 26.0, 0.157_441_997_891_488_6),
        ];
        for (nu, x, v) in cases {
            let got = bessel_j(nu, x).unwrap();
            assert!((got - v).abs() < 1e-12, "nu={nu} x={x} got={got} want={v}");
        }
    }

    #[test]
    fn series_overlap_with_continued_fraction() {
        for &nu in &[0.0, 0.3, 1.7, 3.0] {
            for &x in &[8.5, 10.0, 12.0] {
                let cf = steed(nu, x).0;
                let ser = x.powf(nu) * series_scaled(nu, x);
                assert!((cf - ser).abs() < 1e-11, "nu={nu} x={x} {cf} {ser}");
            }
        }
    }

    #[test]
    fn scaled_limit() {
        let v = j_scaled(0.7, 0.0);
        assert!((v - gamma_reciprocal(1.7) * 2f64.powf(-0.7)).abs() < 1e-15);
    }
}
