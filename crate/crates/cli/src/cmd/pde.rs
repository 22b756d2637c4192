use super::tnorm::{exact, exact_params};
use crate::grid::{check_size, parse_number, Axis};
use crate::table::{Cell, Report};
use crate::{par_map, CliError, Common, Output};
use clap::{Args, ValueEnum};
use serde::Serialize;
use serde_json::json;
use sphmean::pde::{
    fit_slope, predicted_slope, richardson, solve, strichartz_ratio, strichartz_ratio_exchanged, tricomi_beta, CauchySpec, DataRole, PdeError,
    Problem,
};
use sphmean::regions::{ExtRational, MixedIndices};
use sphmean::transforms::RadialProfile;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProblemKind {
    Epd,
    Wave,
    BesselEpd,
    BesselWave,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Role {
    Position,
    Speed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Order {
    XOuter,
    TOuter,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct PdeArgs {
    #[arg(long, value_enum, default_value_t = ProblemKind::Epd)]
    pub problem: ProblemKind,
    /// Space dimension for epd and wave.
    #[arg(long, default_value_t = 3)]
    pub n: u32,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    /// Use the Tricomi value beta = 2/3 - n/2 for epd.
    #[arg(long)]
    pub tricomi: bool,
    #[arg(long, value_enum, default_value_t = Role::Position)]
    pub role: Role,
    /// gaussian, bump:a:b or plateau:a:b:ramp
    #[arg(long, default_value = "gaussian")]
    pub data: String,
    #[arg(long = "grid-x", default_value = "1.2")]
    pub grid_x: String,
    #[arg(long = "grid-t", default_value = "0.6")]
    pub grid_t: String,
    /// Stencil step of the residual; halved once for the Richardson ratio.
    #[arg(long, default_value_t = 0.1)]
    pub h: f64,
    /// Strichartz scaling sweep of ||M_t f|| / ||f|| instead of solution values.
    #[arg(long)]
    pub strichartz: bool,
    #[arg(long)]
    pub p: Option<String>,
    #[arg(long)]
    pub q: Option<String>,
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
    #[arg(long = "grid-s", default_value = "1/16:16:9:log")]
    pub grid_s: String,
    #[arg(long, value_enum, default_value_t = Order::XOuter)]
    pub order: Order,
    #[command(flatten)]
    pub common: Common,
}

pub fn parse_profile(text: &str) -> Result<RadialProfile, CliError> {
    let bad = || CliError::Config(format!("--data '{text}': expected gaussian, bump:a:b or plateau:a:b:ramp"));
    let parts: Vec<&str> = text.split(':').collect();
    let nums: Vec<f64> = parts[1..].iter().map(|s| parse_number(s).ok_or_else(bad)).collect::<Result<_, _>>()?;
    let ordered = |a: f64, b: f64| a >= 0.0 && a < b && b.is_finite();
    match (parts[0], nums.as_slice()) {
        ("gaussian", []) => Ok(RadialProfile::gaussian()),
        ("bump", &[a, b]) if ordered(a, b) => Ok(RadialProfile::bump(a, b)),
        ("plateau", &[a, b, ramp]) if ordered(a, b) && ramp > 0.0 && 2.0 * ramp < b - a => Ok(RadialProfile::plateau(a, b, ramp)),
        _ => Err(bad()),
    }
}

fn problem(args: &PdeArgs) -> Result<Problem, CliError> {
    let need = |flag: &str, v: &Option<String>| {
        v.as_deref().ok_or_else(|| CliError::Config(format!("--{flag} is required for {:?}", args.problem))).and_then(|s| exact(flag, s))
    };
    Ok(match args.problem {
        ProblemKind::Epd => {
            let beta = if args.tricomi { tricomi_beta(args.n) } else { need("beta", &args.beta)? };
            Problem::Epd { n: args.n, beta }
        }
        ProblemKind::Wave => Problem::Wave { n: args.n },
        ProblemKind::BesselEpd => Problem::BesselEpd { alpha: need("alpha", &args.alpha)?, beta: need("beta", &args.beta)? },
        ProblemKind::BesselWave => Problem::BesselWave { alpha: need("alpha", &args.alpha)? },
    })
}

fn problem_text(p: &Problem) -> String {
    match p {
        Problem::Epd { n, beta } => format!("epd(n={n};beta={beta})"),
        Problem::Wave { n } => format!("wave(n={n})"),
        Problem::BesselEpd { alpha, beta } => format!("bessel-epd(alpha={alpha};beta={beta})"),
        Problem::BesselWave { alpha } => format!("bessel-wave(alpha={alpha})"),
    }
}

pub fn run(args: &PdeArgs) -> Result<Output, CliError> {
    if args.strichartz {
        return sweep(args);
    }
    let quad = args.common.quad()?;
    let role = match args.role {
        Role::Position => DataRole::InitialPosition,
        Role::Speed => DataRole::InitialSpeed,
    };
    let prob = problem(args)?;
    let spec = CauchySpec::new(prob, parse_profile(&args.data)?, role)?;
    if !(args.h > 0.0 && args.h.is_finite()) {
        return Err(CliError::Config(format!("--h must be positive, got {}", args.h)));
    }
    let (xa, ta) = (Axis::parse("x", &args.grid_x)?, Axis::parse("t", &args.grid_t)?);
    if xa.min <= 0.0 || ta.min <= 0.0 {
        return Err(CliError::Config("x and t must be positive".into()));
    }
    check_size(&[xa.count, ta.count])?;
    let label = problem_text(&prob);
    let points: Vec<(f64, f64)> = xa.points().into_iter().flat_map(|x| ta.points().into_iter().map(move |t| (x, t))).collect();
    let rows = par_map(&points, |&(x, t)| -> Result<Vec<Cell>, CliError> {
        let u = solve(&spec, x, t, &quad)?;
        let rich = match richardson(&spec, x, t, args.h, &quad) {
            Ok(r) => Some(r),
            Err(PdeError::Invalid(_)) => None,
            Err(e) => return Err(e.into()),
        };
        Ok(vec![
            label.clone().into(),
            x.into(),
            t.into(),
            u.into(),
            rich.map(|r| r.coarse.value).into(),
            rich.map(|r| r.coarse.relative()).into(),
            args.h.into(),
            rich.map(|r| r.ratio).into(),
            rich.map(|r| r.coarse.unreliable).into(),
        ])
    });
    let mut report =
        Report::new(vec!["problem", "x", "t", "u", "residual", "residual_relative", "h", "richardson_ratio", "unreliable"]);
    for row in rows {
        report.push(row?);
    }
    Ok(report.into())
}

fn sweep(args: &PdeArgs) -> Result<Output, CliError> {
    let quad = args.common.quad()?;
    let (Some(alpha), Some(beta)) = (&args.alpha, &args.beta) else {
        return Err(CliError::Config("--strichartz needs --alpha and --beta".into()));
    };
    let params = exact_params(alpha, beta)?;
    let ext = |flag: &str, t: &Option<String>| {
        t.as_deref()
            .and_then(ExtRational::parse)
            .ok_or_else(|| CliError::Config(format!("--strichartz needs --{flag} as a rational or inf")))
    };
    let idx = MixedIndices::new(
        ext("p", &args.p)?,
        ext("q", &args.q)?,
        exact("r", &args.r)?,
        exact("rho", &args.rho)?,
        exact("A", &args.a)?,
        exact("B", &args.b)?,
    )?;
    let data = parse_profile(&args.data)?;
    let sa = Axis::parse("s", &args.grid_s)?;
    if sa.min <= 0.0 {
        return Err(CliError::Config("scales must be positive".into()));
    }
    check_size(&[sa.count])?;
    let scales = sa.points();
    let pts = match args.order {
        Order::XOuter => strichartz_ratio(&params, &idx, &data, &scales, &quad)?,
        Order::TOuter => strichartz_ratio_exchanged(&params, &idx, &data, &scales, &quad)?,
    };
    let slope = (pts.len() > 1).then(|| fit_slope(&pts));
    let predicted = predicted_slope(&params, &idx)?;
    let mut report = Report::new(vec!["scale", "ratio", "slope", "predicted_slope"]);
    for &(s, r) in &pts {
        report.push(vec![s.into(), r.into(), slope.into(), predicted.into()]);
    }
    report.summary = Some(json!({ "slope": slope, "predicted_slope": predicted }));
    Ok(report.into())
}
