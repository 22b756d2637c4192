use super::{check_alpha, multiplier_nu, DecayClass, HankelTable, RadialProfile, TransformError};
use crate::kernel::{kernel_at, KernelPoint};
use crate::quad::{tanh_sinh, QuadSpec};
use crate::special_fun::bessel::j_scaled;
use crate::special_fun::Params;

fn check_tx(t: f64, x: f64) -> Result<(), TransformError> {
    if !(t > 0.0 && x > 0.0) {
        return Err(TransformError::Domain(format!("t and x must be positive, got ({t}, {x})")));
    }
    Ok(())
}

/// M_t f(x) = ∫ K_t(x,z) f(z) dμ_α(z).
///
/// The Interior (|x−t|, x+t) is split at x and the Exterior (0, t−x) is added
/// when t > x; tanh-sinh hands exact distances to both singular surfaces.
pub fn mean_kernel_side(params: &Params, f: &RadialProfile, t: f64, x: f64, spec: &QuadSpec) -> Result<f64, TransformError> {
    spec.validate()?;
    check_tx(t, x)?;
    let a = params.alpha();
    if t >= x && f.origin_order >= 2.0 * a + 2.0 {
        return Err(TransformError::Domain(format!(
            "profile of order {} at the origin is not locally integrable against dmu_alpha",
            f.origin_order
        )));
    }
    if f.is_zero() {
        return Ok(0.0);
    }
    let support = match (f.decay_class, f.support_hint) {
        (DecayClass::CompactSupport, Some(s)) => s,
        _ => (0.0, f64::INFINITY),
    };
    let zl = (x - t).abs();
    let zu = x + t;
    let weight = |z: f64| f.eval(z) * z.powf(2.0 * a + 1.0);
    let mut total = 0.0;

    let mut cuts = vec![zl, zu];
    if zl < x && x < zu {
        cuts.push(x);
    }
    for (p, q) in windows(cuts, support) {
        let g = |z: f64, da: f64, db: f64| {
            let mut gl = t - (x - z).abs();
            let mut gu = x + z - t;
            if p == zl {
                if x >= t {
                    gl = da;
                }
                if x <= t {
                    gu = da;
                }
            }
            if q == zu {
                gl = db;
            }
            kernel_at(params, &KernelPoint::with_gaps(t, x, z, gl, gu)) * weight(z)
        };
        total += tanh_sinh(g, p, q, spec.tol)?.value;
    }
    if t > x {
        for (p, q) in windows(vec![0.0, zl], support) {
            let g = |z: f64, _: f64, db: f64| {
                let gl = t - (x - z).abs();
                let gu = if q == zl { -db } else { x + z - t };
                kernel_at(params, &KernelPoint::with_gaps(t, x, z, gl, gu)) * weight(z)
            };
            total += tanh_sinh(g, p, q, spec.tol)?.value;
        }
    }
    Ok(total)
}

/// Consecutive intervals between the cuts (support endpoints added) that lie
/// inside the support.
fn windows(mut cuts: Vec<f64>, (sa, sb): (f64, f64)) -> Vec<(f64, f64)> {
    let (lo, hi) = (cuts.iter().cloned().fold(f64::INFINITY, f64::min), cuts.iter().cloned().fold(0.0, f64::max));
    for e in [sa, sb] {
        if e > lo && e < hi {
            cuts.push(e);
        }
    }
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    cuts.windows(2)
        .map(|w| (w[0], w[1]))
        .filter(|&(p, q)| {
            let m = 0.5 * (p + q);
            m > sa && m < sb
        })
        .collect()
}

/// H_α(m(t·) H_α f), with H_α f tabulated once and reused across (t, x).
#[derive(Clone, Debug)]
pub struct MultiplierSide {
    nu: f64,
    table: HankelTable,
}

impl MultiplierSide {
    /// Accepts later evaluations with t + x ≤ `max_freq`.
    pub fn new(params: &Params, f: &RadialProfile, max_freq: f64, spec: &QuadSpec) -> Result<Self, TransformError> {
        check_alpha(params.alpha())?;
        if matches!(f.decay_class, DecayClass::Polynomial(_)) || !f.smooth {
            return Err(TransformError::Domain("multiplier side needs a smooth, rapidly decaying profile".into()));
        }
        let table = HankelTable::build(params.alpha(), f, max_freq, spec)?;
        Ok(MultiplierSide { nu: params.alpha() + params.beta(), table })
    }

    pub fn eval(&self, t: f64, x: f64) -> Result<f64, TransformError> {
        check_tx(t, x)?;
        self.table.check_freq(t + x)?;
        let a = self.table.alpha;
        Ok(self.table.pair(|y| multiplier_nu(self.nu, t * y) * j_scaled(a, x * y)))
    }

    pub fn table(&self) -> &HankelTable {
        &self.table
    }
}

pub fn mean_multiplier_side(params: &Params, f: &RadialProfile, t: f64, x: f64, spec: &QuadSpec) -> Result<f64, TransformError> {
    check_tx(t, x)?;
    MultiplierSide::new(params, f, t + x, spec)?.eval(t, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special_fun::rat;

    #[test]
    fn explicit_kernels() {
        let spec = QuadSpec::default();
        let p = Params::exact(rat(1, 2), rat(0, 1)).unwrap();
        let one = RadialProfile::constant_on(1.0, 0.0, 10.0);
        let v = mean_kernel_side(&p, &one, 1.0, 2.0, &spec).unwrap();
        assert!((v - 1.0).abs() < 1e-12, "{v}");
        assert_eq!(mean_kernel_side(&p, &RadialProfile::zero(), 1.0, 2.0, &spec).unwrap(), 0.0);
        // (−1/2, 1): average over (|x−t|, x+t) plus twice the mass of (0, t−x)
        let p = Params::exact(rat(-1, 2), rat(1, 1)).unwrap();
        let sq = RadialProfile::new(|z| z * z, None, DecayClass::Polynomial(-2.0), true);
        for (t, x) in [(0.5f64, 2.0f64), (3.0, 1.0), (1.0, 1.0)] {
            let cube = |a: f64, b: f64| (b * b * b - a * a * a) / 3.0;
            let mut want = cube((x - t).abs(), x + t) / (2.0 * t);
            if t > x {
                want += cube(0.0, t - x) / t;
            }
            let got = mean_kernel_side(&p, &sq, t, x, &spec).unwrap();
            assert!((got - want).abs() < 1e-8 * want, "({t},{x}): {got} vs {want}");
        }
    }

    #[test]
    fn constants_are_preserved() {
        let spec = QuadSpec::default();
        let one = RadialProfile::constant_on(1.0, 0.0, 50.0);
        for (a, b) in [(0.3, 0.6), (1.5, 0.25), (-0.3, 1.5), (0.0, 2.0)] {
            let p = Params::new(a, b).unwrap();
            for (t, x) in [(0.7, 2.0), (2.0, 0.5), (1.0, 1.0)] {
                let v = mean_kernel_side(&p, &one, t, x, &spec).unwrap();
                assert!((v - 1.0).abs() < 1e-8, "({a},{b}) ({t},{x}): {v}");
            }
        }
    }

    #[test]
    fn both_sides_agree() {
        let spec = QuadSpec::with_tol(1e-8);
        let f = RadialProfile::bump(0.5, 2.5);
        for (a, b) in [(0.5, 0.0), (0.3, 0.6), (-0.3, 0.1)] {
            let p = Params::new(a, b).unwrap();
            let ms = MultiplierSide::new(&p, &f, 6.0, &spec).unwrap();
            for (t, x) in [(0.5, 1.5), (2.0, 1.0), (1.3, 3.0)] {
                let k = mean_kernel_side(&p, &f, t, x, &spec).unwrap();
                let m = ms.eval(t, x).unwrap();
                assert!((k - m).abs() < 1e-6, "({a},{b}) ({t},{x}): {k} vs {m}");
            }
        }
    }

    #[test]
    fn small_time_limit() {
        let spec = QuadSpec::default();
        let f = RadialProfile::bump(0.5, 2.5);
        let p = Params::new(0.2, 0.7).unwrap();
        let fx = f.eval(1.2);
        let e1 = (mean_kernel_side(&p, &f, 0.02, 1.2, &spec).unwrap() - fx).abs();
        let e2 = (mean_kernel_side(&p, &f, 0.01, 1.2, &spec).unwrap() - fx).abs();
        assert!(e1 < 1e-2 && (e1 / e2 - 4.0).abs() < 0.5, "{e1} {e2}");
    }
}
