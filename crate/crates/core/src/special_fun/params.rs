use super::SpecialError;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Exact rational used for parameters and region logic.
pub type Rational = Ratio<i128>;

pub fn rat(n: i128, d: i128) -> Rational {
    Ratio::new(n, d)
}

pub fn rat_to_f64(q: &Rational) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

/// Parse "n", "n/d", or a plain decimal such as "-0.375" into an exact rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let s = text.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: i128 = n.trim().parse().ok()?;
        let d: i128 = d.trim().parse().ok()?;
        if d == 0 {
            return None;
        }
        return Some(Ratio::new(n, d));
    }
    if let Ok(n) = s.parse::<i128>() {
        return Some(Ratio::from_integer(n));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.')?;
    if frac.len() > 30 || !frac.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let int: i128 = if int.is_empty() { 0 } else { int.parse().ok()? };
    let frac_val: i128 = if frac.is_empty() { 0 } else { frac.parse().ok()? };
    let den = 10i128.checked_pow(frac.len() as u32)?;
    let v = Ratio::new(int.checked_mul(den)?.checked_add(frac_val)?, den);
    Some(if neg { -v } else { v })
}

/// The parameter pair (α, β) with exactness flags.
#[derive(Clone, Debug, PartialEq)]
pub struct Params {
    alpha: f64,
    beta: f64,
    alpha_exact_half_integer: Option<i64>,
    beta_exact_integer: Option<i64>,
    two_alpha_plus_beta_zero: bool,
    exact: Option<(Rational, Rational)>,
}

impl Params {
    /// Floating parameters; never sets exactness flags.
    pub fn new(alpha: f64, beta: f64) -> Result<Self, SpecialError> {
        if !(alpha > -1.0) || !(alpha + beta > -0.5) || !beta.is_finite() || !alpha.is_finite() {
            return Err(SpecialError::Domain(format!(
                "parameters require alpha > -1 and alpha + beta > -1/2, got ({alpha}, {beta})"
            )));
        }
        Ok(Params {
            alpha,
            beta,
            alpha_exact_half_integer: None,
            beta_exact_integer: None,
            two_alpha_plus_beta_zero: false,
            exact: None,
        })
    }

    /// Exact rational parameters; flags are derived from the rationals.
    pub fn exact(alpha: Rational, beta: Rational) -> Result<Self, SpecialError> {
        let half = rat(1, 2);
        if alpha <= rat(-1, 1) || alpha + beta <= -half {
            return Err(SpecialError::Domain(format!(
                "parameters require alpha > -1 and alpha + beta > -1/2, got ({alpha}, {beta})"
            )));
        }
        let ah = alpha - half;
        let alpha_exact_half_integer = ah.is_integer().then(|| *ah.numer() as i64);
        let beta_exact_integer = beta.is_integer().then(|| *beta.numer() as i64);
        let two_alpha_plus_beta_zero = (alpha * 2 + beta).is_zero();
        Ok(Params {
            alpha: rat_to_f64(&alpha),
            beta: rat_to_f64(&beta),
            alpha_exact_half_integer,
            beta_exact_integer,
            two_alpha_plus_beta_zero,
            exact: Some((alpha, beta)),
        })
    }

    /// Parse textual parameters; "n/d" and integer forms are exact, decimals are not.
    pub fn parse(alpha: &str, beta: &str) -> Result<Self, SpecialError> {
        let is_decimal = |s: &str| s.contains(['.', 'e', 'E']);
        if !is_decimal(alpha) && !is_decimal(beta) {
            if let (Some(a), Some(b)) = (parse_rational(alpha), parse_rational(beta)) {
                return Params::exact(a, b);
            }
        }
        let a: f64 = parse_f64(alpha)?;
        let b: f64 = parse_f64(beta)?;
        Params::new(a, b)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn alpha_exact_half_integer(&self) -> Option<i64> {
        self.alpha_exact_half_integer
    }

    pub fn beta_exact_integer(&self) -> Option<i64> {
        self.beta_exact_integer
    }

    pub fn two_alpha_plus_beta_zero(&self) -> bool {
        self.two_alpha_plus_beta_zero
    }

    pub fn exact_values(&self) -> Option<(Rational, Rational)> {
        self.exact
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    /// β ∈ −ℕ₀ (exact).
    pub fn beta_nonpositive_integer(&self) -> Option<u32> {
        self.beta_exact_integer.filter(|&m| m <= 0).map(|m| (-m) as u32)
    }

    /// α = n + 1/2 with n ≥ 0 (exact).
    pub fn alpha_positive_half_integer(&self) -> Option<u32> {
        self.alpha_exact_half_integer.filter(|&n| n >= 0).map(|n| n as u32)
    }

    /// α = −1/2 (exact).
    pub fn alpha_minus_half(&self) -> bool {
        self.alpha_exact_half_integer == Some(-1)
    }

    /// Compare α+β with 1/2, exactly when possible.
    pub fn cmp_sum_half(&self) -> Ordering {
        match &self.exact {
            Some((a, b)) => (a + b).cmp(&rat(1, 2)),
            None => (self.alpha + self.beta).partial_cmp(&0.5).unwrap_or(Ordering::Equal),
        }
    }

    /// α + β − 1/2.
    pub fn s(&self) -> f64 {
        match &self.exact {
            Some((a, b)) => rat_to_f64(&(a + b - rat(1, 2))),
            None => self.alpha + self.beta - 0.5,
        }
    }

    /// Exact sign of an affine form c0 + ca·α + cb·β when rationals are known.
    pub fn sign_affine(&self, c0: Rational, ca: Rational, cb: Rational) -> Ordering {
        match &self.exact {
            Some((a, b)) => {
                let v = c0 + ca * a + cb * b;
                if v.is_positive() {
                    Ordering::Greater
                } else if v.is_negative() {
                    Ordering::Less
                } else {
                    Ordering::Equal
                }
            }
            None => {
                let v = rat_to_f64(&c0) + rat_to_f64(&ca) * self.alpha + rat_to_f64(&cb) * self.beta;
                v.partial_cmp(&0.0).unwrap_or(Ordering::Equal)
            }
        }
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exact {
            Some((a, b)) => write!(f, "alpha={a} beta={b}"),
            None => write!(f, "alpha={} beta={}", self.alpha, self.beta),
        }
    }
}

fn parse_f64(s: &str) -> Result<f64, SpecialError> {
    s.trim()
        .parse::<f64>()
        .ok()
        .or_else(|| parse_rational(s).map(|q| rat_to_f64(&q)))
        .ok_or_else(|| SpecialError::Domain(format!("cannot parse number '{s}'")))
}
