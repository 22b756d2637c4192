use crate::grid::{check_size, Axis};
use crate::table::{Cell, Report};
use crate::{par_map, CliError, Common, Output, ParamArgs};
use clap::Args;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use sphmean::envelopes::{pointwise_envelope_with, DEFAULT_TUBE_EPS};
use sphmean::kernel::{classify_regime, kernel_closed_form, kernel_legendre, kernel_oracle_quadrature, KernelError};
use sphmean::quad::QuadSpec;
use sphmean::special_fun::Params;

#[derive(Args, Debug, Clone, Serialize)]
pub struct KernelArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long = "grid-t", default_value = "0.1:4:40")]
    pub grid_t: String,
    #[arg(long = "grid-x", default_value = "1")]
    pub grid_x: String,
    #[arg(long = "grid-z", default_value = "1.5")]
    pub grid_z: String,
    /// Also evaluate the quadrature oracle.
    #[arg(long)]
    pub oracle: bool,
    /// Draw this many random points from the grid box instead of the full grid.
    #[arg(long)]
    pub sample: Option<usize>,
    /// Tube width for the envelope.
    #[arg(long, default_value_t = DEFAULT_TUBE_EPS)]
    pub eps: f64,
    #[command(flatten)]
    pub common: Common,
}

struct Row {
    cells: Vec<Cell>,
    diff: Option<f64>,
}

fn optional(r: Result<f64, KernelError>) -> Result<Option<f64>, CliError> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(KernelError::SingularSurface(_)) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn row(p: &Params, (t, x, z): (f64, f64, f64), oracle: Option<&QuadSpec>, eps: f64) -> Result<Row, CliError> {
    let regime = classify_regime(t, x, z)?;
    let k = optional(kernel_legendre(p, t, x, z))?;
    let closed = if regime.is_boundary() { None } else { kernel_closed_form(p, t, x, z)? };
    let orc = match oracle {
        Some(spec) if !regime.is_boundary() => optional(kernel_oracle_quadrature(p, t, x, z, spec))?,
        _ => None,
    };
    let env = pointwise_envelope_with(p, t, x, z, eps).ok();
    let ratio = match (k, env) {
        (Some(k), Some(e)) if e.value > 0.0 && e.value.is_finite() => Some(k.abs() / e.value),
        _ => None,
    };
    let mut paths = vec!["legendre"];
    if closed.is_some() {
        paths.push("closed");
    }
    if orc.is_some() {
        paths.push("oracle");
    }
    let diff = k.zip(orc).map(|(a, b)| a - b);
    Ok(Row {
        cells: vec![
            t.into(),
            x.into(),
            z.into(),
            regime.name().into(),
            k.into(),
            closed.into(),
            orc.into(),
            env.map(|e| e.value).into(),
            ratio.into(),
            env.map(|e| e.sharp).into(),
            env.map(|e| e.item.tag()).into(),
            paths.join("+").into(),
            diff.into(),
        ],
        diff,
    })
}

pub fn run(args: &KernelArgs) -> Result<Output, CliError> {
    let p = args.params.params()?;
    let quad = args.common.quad()?;
    if !(args.eps > 0.0 && args.eps < 1.0) {
        return Err(CliError::Config(format!("--eps must lie in (0, 1), got {}", args.eps)));
    }
    let (ta, xa, za) = (Axis::parse("t", &args.grid_t)?, Axis::parse("x", &args.grid_x)?, Axis::parse("z", &args.grid_z)?);
    if ta.min <= 0.0 || xa.min <= 0.0 || za.min <= 0.0 {
        return Err(CliError::Config("t, x and z must be positive".into()));
    }
    let points: Vec<(f64, f64, f64)> = match args.sample {
        Some(n) => {
            check_size(&[n])?;
            let mut rng = ChaCha8Rng::seed_from_u64(args.common.seed);
            (0..n).map(|_| (ta.sample(&mut rng), xa.sample(&mut rng), za.sample(&mut rng))).collect()
        }
        None => {
            check_size(&[ta.count, xa.count, za.count])?;
            let mut pts = Vec::new();
            for &x in &xa.points() {
                for &z in &za.points() {
                    pts.extend(ta.points().into_iter().map(|t| (t, x, z)));
                }
            }
            pts
        }
    };
    let oracle = args.oracle.then_some(&quad);
    let rows = par_map(&points, |&pt| row(&p, pt, oracle, args.eps)).into_iter().collect::<Result<Vec<_>, _>>()?;
    let mut report = Report::new(vec![
        "t",
        "x",
        "z",
        "regime",
        "K_legendre",
        "K_closed",
        "K_oracle",
        "envelope",
        "ratio",
        "sharp",
        "envelope_item",
        "paths",
        "legendre_minus_oracle",
    ]);
    let max_diff = rows.iter().filter_map(|r| r.diff).fold(None, |m: Option<f64>, d| Some(m.unwrap_or(0.0).max(d.abs())));
    for r in rows {
        report.push(r.cells);
    }
    if let Some(d) = max_diff {
        eprintln!("max |legendre - oracle| = {d:e}");
        report.summary = Some(serde_json::json!({ "max_abs_legendre_minus_oracle": d }));
    }
    Ok(report.into())
}
