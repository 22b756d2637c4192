use super::tnorm::{exact, exact_params};
use crate::grid::{check_size, rational_axis};
use crate::table::{Cell, Report};
use crate::{CliError, Common, Output};
use clap::Args;
use serde::Serialize;
use serde_json::json;
use sphmean::kernel::{count_legendre_zeros, exceptional_membership, ExplicitLine, ZeroCount, ZeroPrediction};
use sphmean::quad::QuadSpec;
use sphmean::regions::{
    admissible_set_scan, conditions_c1_c4, main_gate, scaling_exponent, CondStatus, ExactSet, ExtRational, MixedIndices,
};
use sphmean::special_fun::{LegendreFunction, Params, Rational};

#[derive(Args, Debug, Clone, Serialize)]
pub struct RegionsArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    #[arg(long, default_value = "2")]
    pub r: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub rho: String,
    #[arg(long = "A", default_value = "0", allow_hyphen_values = true)]
    #[serde(rename = "A")]
    pub a: String,
    #[arg(long = "B", default_value = "0", allow_hyphen_values = true)]
    #[serde(rename = "B")]
    pub b: String,
    /// Evaluate a single (p, q) pair instead of scanning the grid.
    #[arg(long)]
    pub p: Option<String>,
    #[arg(long)]
    pub q: Option<String>,
    /// Grid denominator N of the (1/p, 1/q) scan.
    #[arg(long = "grid-den", default_value_t = 24)]
    pub grid_den: i128,
    /// Tag the (alpha, beta) plane instead: explicit lines, exceptional sets, zero counts.
    #[arg(long)]
    pub plane: bool,
    #[arg(long = "grid-alpha", default_value = "-1:2:13", allow_hyphen_values = true)]
    pub grid_alpha: String,
    #[arg(long = "grid-beta", default_value = "-2:3:21", allow_hyphen_values = true)]
    pub grid_beta: String,
    #[command(flatten)]
    pub common: Common,
}

fn status(s: CondStatus) -> &'static str {
    match s {
        CondStatus::Holds => "holds",
        CondStatus::Fails => "fails",
        CondStatus::HoldsWithEquality => "holds-with-equality",
    }
}

fn exact_set_text(set: &ExactSet) -> String {
    let bracket = |closed: bool, open: char, shut: char| if closed { shut } else { open };
    match set {
        ExactSet::Empty => "empty".into(),
        ExactSet::Point(u, v) => format!("{{({u}, {v})}}"),
        ExactSet::Pair([a, b]) => format!("{{({}, {}), ({}, {})}}", a.0, a.1, b.0, b.1),
        ExactSet::Segment { c, from, to, from_closed, to_closed } => format!(
            "1/q = 1/p {} {}, 1/p in {}{from}, {to}{}",
            if *c < Rational::from_integer(0) { '-' } else { '+' },
            if *c < Rational::from_integer(0) { -*c } else { *c },
            bracket(*from_closed, '(', '['),
            bracket(*to_closed, ')', ']')
        ),
    }
}

fn region_params(args: &RegionsArgs) -> Result<Params, CliError> {
    match (&args.alpha, &args.beta) {
        (Some(a), Some(b)) => exact_params(a, b),
        _ => Err(CliError::Config("--alpha and --beta are required unless --plane is given".into())),
    }
}

pub fn run(args: &RegionsArgs) -> Result<Output, CliError> {
    if args.plane {
        return plane(args);
    }
    let p = region_params(args)?;
    let (r, rho, a, b) = (exact("r", &args.r)?, exact("rho", &args.rho)?, exact("A", &args.a)?, exact("B", &args.b)?);
    match (&args.p, &args.q) {
        (Some(pt), Some(qt)) => {
            let ext = |flag: &str, t: &str| ExtRational::parse(t).ok_or_else(|| CliError::Config(format!("--{flag} '{t}' is not rational or inf")));
            let idx = MixedIndices::new(ext("p", pt)?, ext("q", qt)?, r, rho, a, b)?;
            single(&p, &idx)
        }
        (None, None) => scan(&p, r, rho, a, b, args.grid_den),
        _ => Err(CliError::Config("--p and --q go together".into())),
    }
}

const CONDS: [&str; 4] = ["C1", "C2", "C3", "C4"];

fn single(p: &Params, idx: &MixedIndices) -> Result<Output, CliError> {
    let gate = main_gate(p, idx)?;
    let delta = scaling_exponent(p, idx)?;
    let mut header = vec!["p", "q"];
    header.extend(CONDS);
    header.extend(["admissible", "scaling_exponent", "norm_finite", "domain_inclusion", "exchange_valid", "estimate_holds", "failure_witness"]);
    let mut report = Report::new(header);
    let mut row: Vec<Cell> = vec![idx.p.to_string().into(), idx.q.to_string().into()];
    row.extend(CONDS.iter().map(|c| Cell::from(status(gate.verdict.per_condition[c]))));
    row.extend([
        gate.verdict.admissible.into(),
        delta.to_string().into(),
        gate.norm_finite.into(),
        gate.domain_inclusion.into(),
        gate.exchange_valid.into(),
        gate.estimate_holds().into(),
        gate.verdict.failure_witness.clone().into(),
    ]);
    report.push(row);
    Ok(report.into())
}

fn scan(p: &Params, r: Rational, rho: Rational, a: Rational, b: Rational, n: i128) -> Result<Output, CliError> {
    let rep = admissible_set_scan(p, a, b, r, rho, n)?;
    let mut header = vec!["inv_p", "inv_q"];
    header.extend(CONDS);
    header.extend(["admissible", "shape"]);
    let mut report = Report::new(header);
    let shape = rep.shape.to_string();
    for i in 0..=n {
        for j in 0..=n {
            let (u, v) = (Rational::new(i, n), Rational::new(j, n));
            let idx = MixedIndices::new(ExtRational::from_recip(u), ExtRational::from_recip(v), r, rho, a, b)?;
            let verdict = conditions_c1_c4(p, &idx)?;
            let mut row: Vec<Cell> = vec![u.to_string().into(), v.to_string().into()];
            row.extend(CONDS.iter().map(|c| Cell::from(status(verdict.per_condition[c]))));
            row.extend([verdict.admissible.into(), shape.clone().into()]);
            report.push(row);
        }
    }
    eprintln!("shape {shape}: {}", exact_set_text(&rep.exact));
    report.summary = Some(json!({
        "shape": shape,
        "exact_set": exact_set_text(&rep.exact),
        "admissible_grid_points": rep.points.len(),
        "grid_consistent": rep.consistent,
    }));
    Ok(report.into())
}

fn line_text(line: Option<ExplicitLine>) -> String {
    match line {
        None => String::new(),
        Some(ExplicitLine::BetaNonPositiveInteger(0)) => "beta=0".into(),
        Some(ExplicitLine::BetaNonPositiveInteger(n)) => format!("beta=-{n}"),
        Some(ExplicitLine::TwoAlphaPlusBetaZero) => "2alpha+beta=0".into(),
        Some(ExplicitLine::AlphaMinusHalf) => "alpha=-1/2".into(),
        Some(ExplicitLine::AlphaHalfInteger(n)) => format!("alpha={n}+1/2"),
    }
}

fn prediction(z: &ZeroCount) -> String {
    match z.predicted {
        ZeroPrediction::Exactly(n) => n.to_string(),
        ZeroPrediction::AtLeastOne => ">=1".into(),
    }
}

fn plane(args: &RegionsArgs) -> Result<Output, CliError> {
    let (alphas, betas) = (rational_axis("alpha", &args.grid_alpha)?, rational_axis("beta", &args.grid_beta)?);
    check_size(&[alphas.len(), betas.len()])?;
    let spec = QuadSpec::default();
    let mut report = Report::new(vec![
        "alpha",
        "beta",
        "explicit_line",
        "in_exceptional_p",
        "in_exceptional_q",
        "p_zeros_predicted",
        "p_zeros_observed",
        "q_zeros_predicted",
        "q_zeros_observed",
        "census_agrees",
    ]);
    let pairs: Vec<(Rational, Rational)> = alphas.iter().flat_map(|&a| betas.iter().map(move |&b| (a, b))).collect();
    let rows = crate::par_map(&pairs, |&(a, b)| {
        let p = Params::exact(a, b).ok()?;
        let m = exceptional_membership(&p);
        let zp = count_legendre_zeros(&p, LegendreFunction::FerrersP, &spec);
        let zq = count_legendre_zeros(&p, LegendreFunction::OlverQ, &spec);
        Some(vec![
            a.to_string().into(),
            b.to_string().into(),
            line_text(m.explicit_line).into(),
            m.in_e_p.into(),
            m.in_e_q.into(),
            prediction(&zp).into(),
            Cell::Int(zp.observed as i64),
            prediction(&zq).into(),
            Cell::Int(zq.observed as i64),
            (zp.agrees() && zq.agrees()).into(),
        ])
    });
    for row in rows.into_iter().flatten() {
        report.push(row);
    }
    Ok(report.into())
}
