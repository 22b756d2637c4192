use crate::grid::{check_size, Axis};
use crate::table::{Cell, Report};
use crate::{par_map, CliError, Common, Output, ParamArgs};
use clap::Args;
use serde::Serialize;
use sphmean::envelopes::{norm_conditions, time_norm_branches, time_norm_envelope, time_norm_numeric, truncation_growth};
use sphmean::special_fun::{parse_rational, rat_to_f64, Params, Rational};
use std::cmp::Ordering;

#[derive(Args, Debug, Clone, Serialize)]
pub struct TnormArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, default_value = "2")]
    pub r: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub rho: String,
    #[arg(long = "grid-x", default_value = "1")]
    pub grid_x: String,
    #[arg(long = "grid-z", default_value = "1/64:64:13:log")]
    pub grid_z: String,
    /// Truncation doublings reported when the norm diverges.
    #[arg(long, default_value_t = 4)]
    pub levels: u32,
    #[command(flatten)]
    pub common: Common,
}

pub fn exact(flag: &str, text: &str) -> Result<Rational, CliError> {
    parse_rational(text).ok_or_else(|| CliError::Config(format!("--{flag} '{text}' is not a rational number")))
}

/// α and β in "n/d" or integer form; decimals never count as exact.
pub fn exact_params(alpha: &str, beta: &str) -> Result<Params, CliError> {
    let p = Params::parse(alpha, beta)?;
    if !p.is_exact() {
        return Err(CliError::Config(format!("exact (alpha, beta) needed; give them as n/d, not ({alpha}, {beta})")));
    }
    Ok(p)
}

fn ord(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "lt",
        Ordering::Equal => "eq",
        Ordering::Greater => "gt",
    }
}

pub fn run(args: &TnormArgs) -> Result<Output, CliError> {
    let p = args.params.params()?;
    let quad = args.common.quad()?;
    let (r, rho) = (exact("r", &args.r)?, exact("rho", &args.rho)?);
    if r < Rational::from_integer(1) {
        return Err(CliError::Config(format!("--r must be at least 1, got {r}")));
    }
    if !(1..=12).contains(&args.levels) {
        return Err(CliError::Config("--levels must lie in 1..=12".into()));
    }
    let (xa, za) = (Axis::parse("x", &args.grid_x)?, Axis::parse("z", &args.grid_z)?);
    if xa.min <= 0.0 || za.min <= 0.0 {
        return Err(CliError::Config("x and z must be positive".into()));
    }
    check_size(&[xa.count, za.count])?;
    let finite = norm_conditions(&p, &r, &rho);
    let (b1, b2) = time_norm_branches(&p, &r, &rho);
    let branch = format!("{}/{}", ord(b1), ord(b2));
    let (rf, rhof) = (rat_to_f64(&r), rat_to_f64(&rho));
    let points: Vec<(f64, f64)> = xa.points().into_iter().flat_map(|x| za.points().into_iter().map(move |z| (x, z))).collect();
    let rows = par_map(&points, |&(x, z)| -> Result<Vec<Cell>, CliError> {
        let env = time_norm_envelope(&p, &r, &rho, x, z)?;
        let (numeric, truncs, growth) = if finite {
            (Some(time_norm_numeric(&p, rf, rhof, x, z, &quad)?), Cell::Empty, Cell::Empty)
        } else {
            let g = truncation_growth(&p, rf, rhof, x, z, args.levels, &quad)?;
            let label = if g.unbounded() { "unbounded" } else { "inconclusive" };
            (None, Cell::List(g.values), label.into())
        };
        let ratio = numeric.filter(|_| env.value.is_finite() && env.value > 0.0).map(|n| n / env.value);
        Ok(vec![
            x.into(),
            z.into(),
            r.to_string().into(),
            rho.to_string().into(),
            numeric.into(),
            env.value.into(),
            ratio.into(),
            finite.into(),
            env.sharp.into(),
            branch.clone().into(),
            truncs,
            growth,
        ])
    });
    let mut report = Report::new(vec![
        "x",
        "z",
        "r",
        "rho",
        "numeric",
        "envelope",
        "ratio",
        "finite",
        "sharp",
        "branch",
        "truncations",
        "growth",
    ]);
    for row in rows {
        report.push(row?);
    }
    Ok(report.into())
}
