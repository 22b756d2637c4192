use serde::Serialize;
use std::fmt;
use std::sync::Arc;

/// How a profile behaves at infinity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum DecayClass {
    CompactSupport,
    Gaussian,
    /// |f(y)| ≲ y^{−rate} for large y.
    Polynomial(f64),
}

/// Beyond this many widths a Gaussian is below 1e−300.
const GAUSSIAN_REACH: f64 = 37.5;

/// A function on (0,∞) together with what the quadratures need to know about it.
#[derive(Clone)]
pub struct RadialProfile {
    eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    /// Exact support for `CompactSupport`; for `Gaussian` the interval outside
    /// which the profile is numerically zero.
    pub support_hint: Option<(f64, f64)>,
    pub decay_class: DecayClass,
    pub smooth: bool,
    /// a with |f(y)| ≲ y^{−a} near 0.
    pub origin_order: f64,
}

impl fmt::Debug for RadialProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RadialProfile")
            .field("support_hint", &self.support_hint)
            .field("decay_class", &self.decay_class)
            .field("smooth", &self.smooth)
            .field("origin_order", &self.origin_order)
            .finish()
    }
}

impl RadialProfile {
    pub fn new(
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
        support_hint: Option<(f64, f64)>,
        decay_class: DecayClass,
        smooth: bool,
    ) -> Self {
        RadialProfile { eval: Arc::new(eval), support_hint, decay_class, smooth, origin_order: 0.0 }
    }

    pub fn eval(&self, y: f64) -> f64 {
        if self.decay_class == DecayClass::CompactSupport {
            if let Some((a, b)) = self.support_hint {
                if y < a || y > b {
                    return 0.0;
                }
            }
        }
        (self.eval)(y)
    }

    /// Interval carrying all of the profile, when finite.
    pub fn reach(&self) -> Option<(f64, f64)> {
        match self.decay_class {
            DecayClass::Polynomial(_) => None,
            _ => self.support_hint,
        }
    }

    /// e^{−y²/2}.
    pub fn gaussian() -> Self {
        Self::new(|y| (-0.5 * y * y).exp(), Some((0.0, GAUSSIAN_REACH)), DecayClass::Gaussian, true)
    }

    /// The C_c^∞ bump exp(1 − 1/(1−u²)) on [a,b], u the affine image in (−1,1).
    pub fn bump(a: f64, b: f64) -> Self {
        let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
        Self::new(
            move |y| {
                let u = (y - c) / h;
                let w = 1.0 - u * u;
                if w <= 0.0 {
                    0.0
                } else {
                    (1.0 - 1.0 / w).exp()
                }
            },
            Some((a, b)),
            DecayClass::CompactSupport,
            true,
        )
    }

    /// Smooth, equal to 1 on [a+ramp, b−ramp] and supported in [a,b].
    pub fn plateau(a: f64, b: f64, ramp: f64) -> Self {
        let step = |s: f64| {
            if s <= 0.0 {
                0.0
            } else if s >= 1.0 {
                1.0
            } else {
                let p = (-1.0 / s).exp();
                p / (p + (-1.0 / (1.0 - s)).exp())
            }
        };
        Self::new(
            move |y| step((y - a) / ramp) * step((b - y) / ramp),
            Some((a, b)),
            DecayClass::CompactSupport,
            true,
        )
    }

    /// c on [a,b], 0 elsewhere.
    pub fn constant_on(c: f64, a: f64, b: f64) -> Self {
        Self::new(move |_| c, Some((a, b)), DecayClass::CompactSupport, false)
    }

    /// y^{−a} on all of (0,∞).
    pub fn power(a: f64) -> Self {
        let mut p = Self::new(move |y| y.powf(-a), None, DecayClass::Polynomial(a), true);
        p.origin_order = a;
        p
    }

    pub fn zero() -> Self {
        Self::new(|_| 0.0, Some((0.0, 0.0)), DecayClass::CompactSupport, true)
    }

    /// y ↦ f(y/s).
    pub fn dilate(&self, s: f64) -> Self {
        let inner = self.eval.clone();
        RadialProfile {
            eval: Arc::new(move |y| inner(y / s)),
            support_hint: self.support_hint.map(|(a, b)| (a * s, b * s)),
            ..self.clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.support_hint, Some((a, b)) if a == b) && self.decay_class == DecayClass::CompactSupport
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors() {
        let b = RadialProfile::bump(1.0, 2.0);
        assert_eq!(b.eval(1.5), 1.0);
        assert_eq!(b.eval(0.5), 0.0);
        assert_eq!(b.eval(2.0), 0.0);
        let p = RadialProfile::plateau(1.0, 3.0, 0.5);
        assert_eq!(p.eval(2.0), 1.0);
        assert!(p.eval(1.2) > 0.0 && p.eval(1.2) < 1.0);
        let d = b.dilate(2.0);
        assert_eq!(d.eval(3.0), 1.0);
        assert_eq!(d.support_hint, Some((2.0, 4.0)));
        assert!(RadialProfile::zero().is_zero());
        assert_eq!(RadialProfile::power(0.5).eval(4.0), 0.5);
    }
}
