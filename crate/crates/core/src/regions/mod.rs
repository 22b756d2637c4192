//! Exact admissibility logic for the mixed-norm estimates: finiteness of the
//! time norm, the domain of K_{r,ρ}, conditions (C1)–(C4), the Hardy lemma
//! and the shape of the admissible set in the (1/p, 1/q) square.

mod shape;

pub use shape::{admissible_set_scan, classify_exact, exact_set, ExactSet, ScanReport, Shape, MAX_GRID};

use crate::envelopes::norm_conditions;
use crate::special_fun::{parse_rational, rat, Params, Rational};
use num_traits::{One, Zero};
use serde::Serialize;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RegionError {
    #[error("region logic needs exact rational parameters")]
    NotExact,
    #[error("invalid indices: {0}")]
    Indices(String),
}

/// An exponent in [1, ∞].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtRational {
    Finite(Rational),
    Infinity,
}

impl ExtRational {
    /// 1/p, with 1/∞ = 0.
    pub fn recip(&self) -> Rational {
        match self {
            ExtRational::Finite(p) => p.recip(),
            ExtRational::Infinity => Rational::zero(),
        }
    }

    /// 1/p′ = 1 − 1/p.
    pub fn conj_recip(&self) -> Rational {
        Rational::one() - self.recip()
    }

    /// The exponent whose reciprocal is `u`.
    pub fn from_recip(u: Rational) -> Self {
        if u.is_zero() {
            ExtRational::Infinity
        } else {
            ExtRational::Finite(u.recip())
        }
    }

    pub fn is_one(&self) -> bool {
        *self == ExtRational::Finite(Rational::one())
    }

    pub fn is_infinite(&self) -> bool {
        *self == ExtRational::Infinity
    }

    pub fn parse(text: &str) -> Option<Self> {
        match text.trim() {
            "inf" | "infinity" | "∞" | "Inf" => Some(ExtRational::Infinity),
            s => parse_rational(s).map(ExtRational::Finite),
        }
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::Finite(p) => write!(f, "{p}"),
            ExtRational::Infinity => write!(f, "inf"),
        }
    }
}

/// Exponents of the mixed-norm estimate
/// ‖x^{−B} ‖M_t f(x)‖_{L^r(t^ρdt)}‖_{L^q(dμ_α)} ≲ ‖x^A f‖_{L^p(dμ_α)}.
#[derive(Clone, Debug, PartialEq)]
pub struct MixedIndices {
    pub p: ExtRational,
    pub q: ExtRational,
    pub r: Rational,
    pub rho: Rational,
    pub a: Rational,
    pub b: Rational,
}

impl MixedIndices {
    pub fn new(p: ExtRational, q: ExtRational, r: Rational, rho: Rational, a: Rational, b: Rational) -> Result<Self, RegionError> {
        for (name, e) in [("p", p), ("q", q)] {
            if let ExtRational::Finite(v) = e {
                if v < Rational::one() {
                    return Err(RegionError::Indices(format!("{name} must lie in [1, inf], got {v}")));
                }
            }
        }
        if r < Rational::one() {
            return Err(RegionError::Indices(format!("r must lie in [1, inf), got {r}")));
        }
        Ok(MixedIndices { p, q, r, rho, a, b })
    }

    /// (ρ+1)/r.
    pub fn time_exponent(&self) -> Rational {
        (self.rho + 1) / self.r
    }

    /// p = 1 and q = ∞.
    fn endpoint_pair(&self) -> bool {
        self.p.is_one() && self.q.is_infinite()
    }
}

/// Outcome of one condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CondStatus {
    Holds,
    Fails,
    /// Holds only because equality is permitted in this case.
    HoldsWithEquality,
}

impl CondStatus {
    pub fn holds(&self) -> bool {
        *self != CondStatus::Fails
    }

    /// `lhs > rhs`, or `lhs ≥ rhs` when `weak`.
    fn greater(lhs: Rational, rhs: Rational, weak: bool) -> Self {
        match lhs.cmp(&rhs) {
            Ordering::Greater => CondStatus::Holds,
            Ordering::Equal if weak => CondStatus::HoldsWithEquality,
            _ => CondStatus::Fails,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub admissible: bool,
    pub per_condition: BTreeMap<&'static str, CondStatus>,
    pub failure_witness: Option<String>,
}

fn exact(params: &Params) -> Result<(Rational, Rational), RegionError> {
    params.exact_values().ok_or(RegionError::NotExact)
}

/// α + β > 1/2 − 1/r, and (ρ+1)/r < 2α+2 unless −β ∈ ℕ₀.
pub fn norm_finite(params: &Params, r: &Rational, rho: &Rational) -> bool {
    norm_conditions(params, r, rho)
}

/// δ = (2α+2)(1/q − 1/p) − A − B + (ρ+1)/r.
pub fn scaling_exponent(params: &Params, idx: &MixedIndices) -> Result<Rational, RegionError> {
    let (alpha, _) = exact(params)?;
    let k = alpha * 2 + 2;
    Ok(k * (idx.q.recip() - idx.p.recip()) - idx.a - idx.b + idx.time_exponent())
}

/// β + 1/r − 1.
fn eta(beta: Rational, r: Rational) -> Rational {
    beta + r.recip() - 1
}

/// Statuses of (C1)–(C4), in order, with the threshold values for witnesses.
struct Evaluation {
    status: [CondStatus; 4],
    delta: Rational,
    c3_lhs: Rational,
    m: Rational,
}

fn evaluate(alpha: Rational, beta: Rational, idx: &MixedIndices) -> Evaluation {
    let k = alpha * 2 + 2;
    let (u, v) = (idx.p.recip(), idx.q.recip());
    let e = eta(beta, idx.r);
    let m = e.min(Rational::zero());
    let c1 = CondStatus::greater(u, v, true);
    let delta = k * (v - u) - idx.a - idx.b + idx.time_exponent();
    let c2 = if delta.is_zero() { CondStatus::Holds } else { CondStatus::Fails };
    let c3_lhs = (idx.a - k * idx.p.conj_recip()).max(idx.b - k * v);
    let c3 = CondStatus::greater(m, c3_lhs, idx.endpoint_pair() && (beta.is_zero() || !e.is_zero()));
    let strict4 = idx.p.is_one() || idx.q.is_infinite();
    let c4 = CondStatus::greater(v, u - idx.time_exponent(), !strict4);
    Evaluation { status: [c1, c2, c3, c4], delta, c3_lhs, m }
}

pub const CONDITION_NAMES: [&str; 4] = ["C1", "C2", "C3", "C4"];

pub fn conditions_c1_c4(params: &Params, idx: &MixedIndices) -> Result<Verdict, RegionError> {
    let (alpha, beta) = exact(params)?;
    let ev = evaluate(alpha, beta, idx);
    let failed = ev.status.iter().position(|s| *s == CondStatus::Fails);
    let failure_witness = failed.map(|i| match i {
        0 => format!("C1: p = {} exceeds q = {}", idx.p, idx.q),
        1 => format!("C2: scaling exponent {} is not 0", ev.delta),
        2 => format!("C3: max(A - (2a+2)/p', B - (2a+2)/q) = {} is not below {}", ev.c3_lhs, ev.m),
        _ => format!("C4: 1/q = {} is below 1/p - (rho+1)/r = {}", idx.q.recip(), idx.p.recip() - idx.time_exponent()),
    });
    Ok(Verdict {
        admissible: failed.is_none(),
        per_condition: CONDITION_NAMES.iter().copied().zip(ev.status).collect(),
        failure_witness,
    })
}

/// (C4′): A + B ≥ (2α+1)(1/q − 1/p), strict when p = 1 or q = ∞.
pub fn condition_c4_prime(params: &Params, idx: &MixedIndices) -> Result<CondStatus, RegionError> {
    let (alpha, _) = exact(params)?;
    let strict = idx.p.is_one() || idx.q.is_infinite();
    let rhs = (alpha * 2 + 1) * (idx.q.recip() - idx.p.recip());
    Ok(CondStatus::greater(idx.a + idx.b, rhs, !strict))
}

/// L^p(x^{Ap}dμ_α) ⊂ dom K_{r,ρ}: ρ > −1 and A strictly inside its window,
/// both ends closed when p = 1 and [β = 0 or β + 1/r ≠ 1].
pub fn domain_inclusion(params: &Params, idx: &MixedIndices) -> Result<bool, RegionError> {
    let (alpha, beta) = exact(params)?;
    if idx.rho <= -Rational::one() {
        return Ok(false);
    }
    let k = alpha * 2 + 2;
    let e = eta(beta, idx.r);
    let m = e.min(Rational::zero());
    let lower = idx.time_exponent() - k * idx.p.recip() - m;
    let upper = k * idx.p.conj_recip() + m;
    let weak = idx.p.is_one() && (beta.is_zero() || !e.is_zero());
    Ok(if weak { lower <= idx.a && idx.a <= upper } else { lower < idx.a && idx.a < upper })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum HardyKind {
    Hardy,
    DualHardy,
}

/// Two-power-weight L^p → L^q bounds for g ↦ ∫₀^x g (Hardy) and g ↦ ∫_x^∞ g
/// (dual), with weights x^a on the data and x^b on the output.
pub fn hardy_admissible(a: Rational, b: Rational, p: ExtRational, q: ExtRational, which: HardyKind) -> bool {
    let (u, v) = (p.recip(), q.recip());
    if u < v || a - p.conj_recip() != b + v {
        return false;
    }
    let weak = p.is_one() && q.is_infinite();
    match which {
        HardyKind::Hardy => a < p.conj_recip() || (weak && a == p.conj_recip()),
        HardyKind::DualHardy => b > -v || (weak && b == -v),
    }
}

/// q ≤ r, when the t-norm may be taken outside by Minkowski's inequality.
pub fn exchange_valid(idx: &MixedIndices) -> bool {
    idx.q.recip() >= idx.r.recip()
}

/// Every gate of the main estimate for one tuple.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GateReport {
    pub norm_finite: bool,
    pub domain_inclusion: bool,
    pub verdict: Verdict,
    pub exchange_valid: bool,
}

impl GateReport {
    /// The hypothesis of the Strichartz-type estimate.
    pub fn estimate_holds(&self) -> bool {
        self.norm_finite && self.verdict.admissible
    }
}

pub fn main_gate(params: &Params, idx: &MixedIndices) -> Result<GateReport, RegionError> {
    Ok(GateReport {
        norm_finite: norm_finite(params, &idx.r, &idx.rho),
        domain_inclusion: domain_inclusion(params, idx)?,
        verdict: conditions_c1_c4(params, idx)?,
        exchange_valid: exchange_valid(idx),
    })
}

/// Shorthand for tests and callers working with small fractions.
pub fn indices(p: &str, q: &str, r: (i128, i128), rho: (i128, i128), a: (i128, i128), b: (i128, i128)) -> MixedIndices {
    let ext = |s: &str| ExtRational::parse(s).expect("exponent");
    MixedIndices::new(ext(p), ext(q), rat(r.0, r.1), rat(rho.0, rho.1), rat(a.0, a.1), rat(b.0, b.1)).expect("indices")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex(an: i128, ad: i128, bn: i128, bd: i128) -> Params {
        Params::exact(rat(an, ad), rat(bn, bd)).unwrap()
    }

    #[test]
    fn norm_finite_examples() {
        let p = ex(1, 5, 1, 5);
        assert!(norm_finite(&p, &rat(4, 1), &rat(0, 1)));
        assert!(!norm_finite(&p, &rat(10, 1), &rat(0, 1)));
        // β = 0 waives the second clause
        assert!(norm_finite(&ex(0, 1, 0, 1), &rat(1, 1), &rat(5, 1)));
        assert!(!norm_finite(&ex(0, 1, 1, 10), &rat(1, 1), &rat(5, 1)));
    }

    #[test]
    fn scaling_examples() {
        let p = ex(0, 1, 1, 1);
        assert_eq!(scaling_exponent(&p, &indices("2", "2", (2, 1), (1, 1), (0, 1), (0, 1))).unwrap(), rat(1, 1));
        let idx = indices("4/3", "4", (2, 1), (1, 1), (0, 1), (0, 1));
        assert_eq!(scaling_exponent(&p, &idx).unwrap(), rat(0, 1));
        assert_eq!(scaling_exponent(&Params::new(0.0, 1.0).unwrap(), &idx), Err(RegionError::NotExact));
    }

    #[test]
    fn verdict_examples() {
        let p = ex(0, 1, 1, 1);
        let v = conditions_c1_c4(&p, &indices("4/3", "4", (2, 1), (1, 1), (0, 1), (0, 1))).unwrap();
        assert!(v.admissible, "{v:?}");
        assert_eq!(v.failure_witness, None);
        // (ρ+1)/r = 1 at (p,q) = (1,∞): (C4) needs strict inequality
        let v = conditions_c1_c4(&p, &indices("1", "inf", (1, 1), (0, 1), (0, 1), (0, 1))).unwrap();
        assert_eq!(v.per_condition["C4"], CondStatus::Fails);
        // β = 0, p = 1, q = ∞, A on the boundary of (C3)
        let p = ex(1, 2, 0, 1);
        let idx = indices("1", "inf", (2, 1), (1, 2), (-1, 2), (-1, 2));
        let v = conditions_c1_c4(&p, &idx).unwrap();
        assert_eq!(v.per_condition["C3"], CondStatus::HoldsWithEquality);
    }

    #[test]
    fn domain_examples() {
        let p = ex(0, 1, 1, 1);
        assert!(!domain_inclusion(&p, &indices("2", "2", (1, 1), (-1, 1), (0, 1), (0, 1))).unwrap());
        // the lower bound (ρ+1)/r − (2α+2)/p − 0 is exactly 0, so A = 0 sits on it
        assert!(!domain_inclusion(&p, &indices("2", "2", (1, 1), (0, 1), (0, 1), (0, 1))).unwrap());
        assert!(domain_inclusion(&p, &indices("2", "2", (1, 1), (0, 1), (1, 2), (0, 1))).unwrap());
        // p = 1, β = 0, A at the lower end: (ρ+1)/r − (2α+2) − (1/r − 1)
        let p = ex(0, 1, 0, 1);
        assert!(domain_inclusion(&p, &indices("1", "2", (2, 1), (1, 1), (-1, 2), (0, 1))).unwrap());
        assert!(!domain_inclusion(&p, &indices("2", "2", (2, 1), (1, 1), (-1, 2), (0, 1))).unwrap());
    }

    #[test]
    fn hardy_examples() {
        let one = ExtRational::Finite(rat(1, 1));
        let two = ExtRational::Finite(rat(2, 1));
        // q = 1 means q′ = ∞, so the weak case does not apply
        assert!(!hardy_admissible(rat(0, 1), rat(-1, 1), one, one, HardyKind::Hardy));
        assert!(!hardy_admissible(rat(1, 1), rat(0, 1), two, two, HardyKind::Hardy));
        assert!(hardy_admissible(rat(0, 1), rat(0, 1), one, ExtRational::Infinity, HardyKind::DualHardy));
        assert!(hardy_admissible(rat(0, 1), rat(0, 1), one, ExtRational::Infinity, HardyKind::Hardy));
        assert!(hardy_admissible(rat(1, 4), rat(-3, 4), two, two, HardyKind::Hardy));
    }

    #[test]
    fn exchange_flag() {
        assert!(exchange_valid(&indices("1", "2", (2, 1), (0, 1), (0, 1), (0, 1))));
        assert!(!exchange_valid(&indices("1", "4", (2, 1), (0, 1), (0, 1), (0, 1))));
    }

    #[test]
    fn c4_equivalence_under_c2() {
        let n = 24;
        let grid: Vec<Rational> = (0..=n).map(|i| rat(i, n)).collect();
        let mut checked = 0;
        for (an, ad) in [(-1, 2), (0, 1), (1, 3), (3, 2)] {
            let p = ex(an, ad, 1, 1);
            let k = rat(an, ad) * 2 + 2;
            for (r, rho) in [(rat(1, 1), rat(0, 1)), (rat(2, 1), rat(1, 1)), (rat(3, 1), rat(-1, 2))] {
                let tq = (rho + 1) / r;
                for u in &grid {
                    for v in &grid {
                        let a = rat(1, 4);
                        let b = k * (v - u) + tq - a;
                        let idx = MixedIndices::new(ExtRational::from_recip(*u), ExtRational::from_recip(*v), r, rho, a, b).unwrap();
                        let c4 = conditions_c1_c4(&p, &idx).unwrap().per_condition["C4"];
                        assert_eq!(c4, condition_c4_prime(&p, &idx).unwrap(), "{idx:?}");
                        checked += 1;
                    }
                }
            }
        }
        assert_eq!(checked, 4 * 3 * 625);
    }
}
