use crate::table::{Cell, Report};
use crate::{CliError, Common, Output};
use clap::Args;
use serde::Serialize;
use serde_json::json;
use sphmean::verify::{check_list, run_check, VerifyConfig};

#[derive(Args, Debug, Clone, Serialize)]
pub struct VerifyArgs {
    /// Multiplies every tolerance of the suite; values below 1 tighten it.
    #[arg(long = "tol-scale", default_value_t = 1.0)]
    pub tol_scale: f64,
    /// Comma-separated criterion numbers to run; all by default.
    #[arg(long, value_delimiter = ',')]
    pub only: Option<Vec<u32>>,
    #[command(flatten)]
    pub common: Common,
}

pub fn run(args: &VerifyArgs) -> Result<Output, CliError> {
    if !(args.tol_scale > 0.0 && args.tol_scale.is_finite()) {
        return Err(CliError::Config(format!("--tol-scale must be positive, got {}", args.tol_scale)));
    }
    let known: Vec<u32> = check_list().iter().map(|c| c.0).collect();
    if let Some(bad) = args.only.iter().flatten().find(|id| !known.contains(id)) {
        return Err(CliError::Config(format!("no check numbered {bad}; known checks are 1 to {}", known.len())));
    }
    let cfg = VerifyConfig { tol_scale: args.tol_scale, seed: args.common.seed, only: args.only.clone() };
    let mut report = Report::new(vec!["id", "name", "passed", "achieved", "tolerance", "detail"]);
    let mut outcomes = Vec::new();
    for (id, _) in check_list() {
        if cfg.only.as_ref().is_some_and(|o| !o.contains(&id)) {
            continue;
        }
        let o = run_check(id, &cfg).expect("listed check");
        eprintln!("[{}] {:>2} {} ({:.1} s)", if o.passed { "pass" } else { "FAIL" }, o.id, o.name, o.seconds);
        report.push(vec![
            Cell::Int(o.id as i64),
            o.name.into(),
            o.passed.into(),
            o.achieved.into(),
            o.tolerance.into(),
            o.detail.clone().into(),
        ]);
        outcomes.push(o);
    }
    let first = outcomes.iter().find(|o| !o.passed);
    report.summary = Some(json!({
        "all_passed": first.is_none(),
        "checks_run": outcomes.len(),
        "failed": outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect::<Vec<_>>(),
        "first_failure": first.map(|o| json!({
            "id": o.id,
            "name": o.name,
            "achieved": if o.achieved.is_finite() { json!(o.achieved) } else { json!(o.achieved.to_string()) },
            "tolerance": if o.tolerance.is_finite() { json!(o.tolerance) } else { json!(o.tolerance.to_string()) },
            "detail": o.detail,
        })),
    }));
    let failure = first.map(|o| CliError::Verification(format!("check {} ({}) achieved {:e} against {:e}", o.id, o.name, o.achieved, o.tolerance)));
    Ok(Output { report, failure })
}
