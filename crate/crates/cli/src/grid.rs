use crate::CliError;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use sphmean::special_fun::{parse_rational, rat_to_f64, Rational};

pub const MAX_POINTS: usize = 1_000_000;

/// One axis: `v` for a single value, or `min:max:count[:log]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub log: bool,
}

impl Axis {
    pub fn parse(name: &str, text: &str) -> Result<Self, CliError> {
        let bad = |why: &str| CliError::Config(format!("--grid-{name} '{text}': {why}"));
        let parts: Vec<&str> = text.split(':').collect();
        let num = |s: &str| parse_number(s).ok_or_else(|| bad("not a number"));
        let axis = match parts.as_slice() {
            [v] => {
                let v = num(v)?;
                Axis { min: v, max: v, count: 1, log: false }
            }
            [a, b, n] | [a, b, n, _] => {
                let log = match parts.get(3) {
                    None | Some(&"lin") => false,
                    Some(&"log") => true,
                    Some(_) => return Err(bad("the fourth field must be 'log' or 'lin'")),
                };
                let count = n.parse::<usize>().map_err(|_| bad("count must be a positive integer"))?;
                Axis { min: num(a)?, max: num(b)?, count, log }
            }
            _ => return Err(bad("expected v or min:max:count[:log]")),
        };
        if axis.count == 0 {
            return Err(bad("empty grid"));
        }
        if !(axis.min.is_finite() && axis.max.is_finite()) || axis.min > axis.max {
            return Err(bad("need finite min <= max"));
        }
        if axis.log && axis.min <= 0.0 {
            return Err(bad("log grids need min > 0"));
        }
        if axis.count > 1 && axis.min == axis.max {
            return Err(bad("min = max with several points"));
        }
        Ok(axis)
    }

    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.min];
        }
        let n = (self.count - 1) as f64;
        (0..self.count)
            .map(|k| {
                let s = k as f64 / n;
                if self.log {
                    (self.min.ln() + s * (self.max.ln() - self.min.ln())).exp()
                } else {
                    self.min + s * (self.max - self.min)
                }
            })
            .collect()
    }

    /// A uniform (or log-uniform) draw from [min, max].
    pub fn sample(&self, rng: &mut ChaCha8Rng) -> f64 {
        if self.count == 1 {
            return self.min;
        }
        if self.log {
            rng.random_range(self.min.ln()..=self.max.ln()).exp()
        } else {
            rng.random_range(self.min..=self.max)
        }
    }
}

/// Rational axis `v` or `min:max:count`, evenly spaced with exact steps.
pub fn rational_axis(name: &str, text: &str) -> Result<Vec<Rational>, CliError> {
    let bad = |why: &str| CliError::Config(format!("--grid-{name} '{text}': {why}"));
    let exact = |s: &str| parse_rational(s).ok_or_else(|| bad("not a rational"));
    match text.split(':').collect::<Vec<_>>().as_slice() {
        [v] => Ok(vec![exact(v)?]),
        [a, b, n] => {
            let (a, b) = (exact(a)?, exact(b)?);
            let n: i128 = n.parse().map_err(|_| bad("count must be a positive integer"))?;
            if n < 1 || a > b || (n > 1 && a == b) {
                return Err(bad("need min < max and count >= 1"));
            }
            if n == 1 {
                return Ok(vec![a]);
            }
            let step = (b - a) / (n - 1);
            Ok((0..n).map(|k| a + step * k).collect())
        }
        _ => Err(bad("expected v or min:max:count")),
    }
}

pub fn parse_number(s: &str) -> Option<f64> {
    let s = s.trim();
    match s {
        "inf" | "infinity" => Some(f64::INFINITY),
        _ => s.parse::<f64>().ok().or_else(|| parse_rational(s).map(|q| rat_to_f64(&q))),
    }
}

pub fn check_size(sizes: &[usize]) -> Result<usize, CliError> {
    sizes
        .iter()
        .try_fold(1usize, |acc, &n| acc.checked_mul(n))
        .filter(|&n| n <= MAX_POINTS)
        .ok_or_else(|| CliError::Config(format!("grid has more than {MAX_POINTS} points")))
}
