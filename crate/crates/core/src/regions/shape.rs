use super::{eta, evaluate, exact, ExtRational, MixedIndices, RegionError};
use crate::special_fun::{rat, Params, Rational};
use num_traits::{One, Zero};
use serde::Serialize;
use std::fmt;

pub const MAX_GRID: i128 = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Shape {
    S1,
    S2,
    S3,
    S4,
    S5,
    Unclassified,
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// The admissible pairs (1/p, 1/q), which lie on the line 1/q = 1/p + c.
/// Segments are parametrised by 1/p.
#[derive(Clone, Debug, PartialEq)]
pub enum ExactSet {
    Empty,
    Point(Rational, Rational),
    Segment {
        c: Rational,
        from: Rational,
        to: Rational,
        from_closed: bool,
        to_closed: bool,
    },
    /// Two isolated points; never produced by the conditions as stated.
    Pair([(Rational, Rational); 2]),
}

impl ExactSet {
    pub fn contains(&self, u: Rational, v: Rational) -> bool {
        match self {
            ExactSet::Empty => false,
            ExactSet::Point(pu, pv) => *pu == u && *pv == v,
            ExactSet::Pair(pts) => pts.contains(&(u, v)),
            ExactSet::Segment { c, from, to, from_closed, to_closed } => {
                v == u + c
                    && (u > *from || (*from_closed && u == *from))
                    && (u < *to || (*to_closed && u == *to))
            }
        }
    }
}

fn on_boundary(u: Rational, v: Rational) -> bool {
    let (zero, one) = (Rational::zero(), Rational::one());
    u == zero || u == one || v == zero || v == one
}

/// The exact admissible set for fixed (α, β, r, ρ, A, B).
pub fn exact_set(params: &Params, a: Rational, b: Rational, r: Rational, rho: Rational) -> Result<ExactSet, RegionError> {
    let (alpha, beta) = exact(params)?;
    let k = alpha * 2 + 2;
    let tq = (rho + 1) / r;
    let c = (a + b - tq) / k;
    let zero = Rational::zero();
    let one = Rational::one();
    if c > zero || c < -one {
        return Ok(ExactSet::Empty);
    }
    let at = |u: Rational| {
        let idx = MixedIndices {
            p: ExtRational::from_recip(u),
            q: ExtRational::from_recip(u + c),
            r,
            rho,
            a,
            b,
        };
        evaluate(alpha, beta, &idx).status.iter().all(|s| s.holds())
    };
    // The chord runs from v = 0 (q = ∞) to u = 1 (p = 1); only its ends
    // carry the endpoint allowances, inside it (C3) is strict and (C4) is c ≥ −Q.
    let (lo, hi) = (-c, one);
    let (lo_in, hi_in) = (at(lo), at(hi));
    if lo == hi {
        return Ok(if lo_in { ExactSet::Point(lo, lo + c) } else { ExactSet::Empty });
    }
    let m = eta(beta, r).min(zero);
    let lower = lo.max((b - m) / k - c);
    let upper = hi.min(one - (a - m) / k);
    let interior = c >= -tq && lower < upper;
    if !interior {
        let pts: Vec<_> = [(lo, lo_in), (hi, hi_in)].iter().filter(|p| p.1).map(|p| (p.0, p.0 + c)).collect();
        return Ok(match pts.as_slice() {
            [] => ExactSet::Empty,
            [p] => ExactSet::Point(p.0, p.1),
            _ => ExactSet::Pair([pts[0], pts[1]]),
        });
    }
    Ok(ExactSet::Segment {
        c,
        from: lower,
        to: upper,
        from_closed: lower == lo && lo_in,
        to_closed: upper == hi && hi_in,
    })
}

pub fn classify_exact(set: &ExactSet) -> Shape {
    let (zero, one) = (Rational::zero(), Rational::one());
    match set {
        ExactSet::Empty => Shape::S5,
        ExactSet::Point(u, v) if *u == one && *v == zero => Shape::S4,
        ExactSet::Point(..) | ExactSet::Pair(_) => Shape::Unclassified,
        ExactSet::Segment { c, from, to, from_closed, to_closed } => {
            let ends = [(*from, *from_closed), (*to, *to_closed)];
            if ends.iter().any(|&(u, closed)| closed && !on_boundary(u, u + c)) {
                return Shape::Unclassified;
            }
            let full = *from == -*c && *to == one;
            if *c < zero {
                if full && *from_closed && *to_closed {
                    Shape::S1
                } else {
                    Shape::S2
                }
            } else if full {
                Shape::Unclassified
            } else {
                Shape::S3
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanReport {
    /// Admissible grid points (1/p, 1/q).
    pub points: Vec<(Rational, Rational)>,
    pub shape: Shape,
    pub exact: ExactSet,
    /// Whether every grid point agrees with the exact set.
    pub consistent: bool,
}

/// Evaluates (C1)–(C4) on the grid {i/N} × {j/N} and classifies the exact set.
pub fn admissible_set_scan(
    params: &Params,
    a: Rational,
    b: Rational,
    r: Rational,
    rho: Rational,
    grid_denominator: i128,
) -> Result<ScanReport, RegionError> {
    if !(1..=MAX_GRID).contains(&grid_denominator) {
        return Err(RegionError::Indices(format!("grid denominator must lie in [1, {MAX_GRID}]")));
    }
    if r < Rational::one() {
        return Err(RegionError::Indices(format!("r must lie in [1, inf), got {r}")));
    }
    let (alpha, beta) = exact(params)?;
    let exact = exact_set(params, a, b, r, rho)?;
    let n = grid_denominator;
    let mut points = Vec::new();
    let mut consistent = true;
    for i in 0..=n {
        let u = rat(i, n);
        for j in 0..=n {
            let v = rat(j, n);
            let idx = MixedIndices { p: ExtRational::from_recip(u), q: ExtRational::from_recip(v), r, rho, a, b };
            let ok = evaluate(alpha, beta, &idx).status.iter().all(|s| s.holds());
            consistent &= ok == exact.contains(u, v);
            if ok {
                points.push((u, v));
            }
        }
    }
    Ok(ScanReport { points, shape: classify_exact(&exact), exact, consistent })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scan(ab: (Rational, Rational), r: Rational, rho: Rational, a: Rational, b: Rational) -> ScanReport {
        let p = Params::exact(ab.0, ab.1).unwrap();
        admissible_set_scan(&p, a, b, r, rho, 24).unwrap()
    }

    #[test]
    fn one_tuple_per_shape() {
        let cases = [
            ((rat(1, 1), rat(1, 1)), rat(2, 1), rat(1, 1), rat(-1, 2), rat(-1, 2), Shape::S1),
            ((rat(0, 1), rat(1, 1)), rat(2, 1), rat(1, 1), rat(0, 1), rat(0, 1), Shape::S2),
            ((rat(0, 1), rat(1, 1)), rat(2, 1), rat(1, 1), rat(1, 2), rat(1, 2), Shape::S3),
            ((rat(0, 1), rat(1, 1)), rat(1, 1), rat(1, 2), rat(-1, 4), rat(-1, 4), Shape::S4),
            ((rat(0, 1), rat(1, 1)), rat(1, 1), rat(0, 1), rat(1, 1), rat(1, 1), Shape::S5),
        ];
        for (ab, r, rho, a, b, want) in cases {
            let rep = scan(ab, r, rho, a, b);
            assert_eq!(rep.shape, want, "{:?}", rep.exact);
            assert!(rep.consistent);
            assert_eq!(rep.points.is_empty(), want == Shape::S5);
        }
    }

    #[test]
    fn open_segment_example() {
        let rep = scan((rat(0, 1), rat(1, 1)), rat(2, 1), rat(1, 1), rat(0, 1), rat(0, 1));
        let want = ExactSet::Segment { c: rat(-1, 2), from: rat(1, 2), to: rat(1, 1), from_closed: false, to_closed: false };
        assert_eq!(rep.exact, want);
        assert_eq!(rep.points.len(), 11);
        assert!(rep.points.iter().all(|&(u, v)| v == u - rat(1, 2)));
    }

    #[test]
    fn guards() {
        let p = Params::exact(rat(0, 1), rat(1, 1)).unwrap();
        assert!(admissible_set_scan(&p, rat(0, 1), rat(0, 1), rat(2, 1), rat(1, 1), 1001).is_err());
        let f = Params::new(0.1, 1.0).unwrap();
        assert_eq!(admissible_set_scan(&f, rat(0, 1), rat(0, 1), rat(2, 1), rat(1, 1), 8).unwrap_err(), RegionError::NotExact);
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(200))]
        #[test]
        fn scan_agrees_with_exact_set(
            al in -3i128..8, be in -2i128..8, rn in 4i128..16, rho in -3i128..8, a in -8i128..8, b in -8i128..8,
        ) {
            let (alpha, beta) = (rat(al, 4), rat(be, 4));
            proptest::prop_assume!(beta > -alpha - rat(1, 2));
            let p = Params::exact(alpha, beta).unwrap();
            let rep = admissible_set_scan(&p, rat(a, 4), rat(b, 4), rat(rn, 4), rat(rho, 4), 12).unwrap();
            proptest::prop_assert!(rep.consistent, "{:?}", rep.exact);
            proptest::prop_assert!(rep.shape != Shape::Unclassified, "{:?}", rep.exact);
            if rep.exact == ExactSet::Empty {
                proptest::prop_assert!(rep.points.is_empty());
            }
        }
    }
}
