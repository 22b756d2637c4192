use sphmean::verify::{check_list, run_check, VerifyConfig};
use std::process::{Command, ExitCode};
use std::time::Instant;

fn sphmean(args: &[&str]) -> (Option<i32>, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_sphmean")).args(args).output().expect("binary runs");
    (out.status.code(), out.stdout)
}

/// Same configuration and seed twice, in both formats; then the exit status
/// of `verify` with the default and a tightened tolerance.
fn reproducibility() -> (bool, String) {
    let runs: [&[&str]; 4] = [
        &["kernel", "--alpha", "0.3", "--beta", "7/5", "--grid-t", "0.1:4:7", "--grid-z", "0.5:3:3:log", "--sample", "40", "--seed", "7"],
        &["tnorm", "--alpha", "3/10", "--beta", "2/5", "--r", "2", "--format", "json"],
        &["regions", "--alpha", "0", "--beta", "1", "--r", "2", "--rho", "1", "--format", "json"],
        &["pde", "--problem", "bessel-epd", "--alpha", "1/2", "--beta", "1", "--grid-x", "0.6:1.8:4"],
    ];
    let mut notes = Vec::new();
    let mut ok = true;
    for args in runs {
        let (c1, a) = sphmean(args);
        let (c2, b) = sphmean(args);
        let same = c1 == Some(0) && c2 == Some(0) && a == b && !a.is_empty();
        ok &= same;
        notes.push(format!("{} {}", args[0], if same { "identical" } else { "DIFFERS" }));
    }
    let (pass, _) = sphmean(&["verify", "--only", "3,9", "--format", "json"]);
    let (fail, out) = sphmean(&["verify", "--only", "3", "--tol-scale", "1e-6", "--format", "json"]);
    let reported = String::from_utf8_lossy(&out).contains("\"first_failure\"");
    ok &= pass == Some(0) && fail == Some(4) && reported;
    notes.push(format!("verify exit {pass:?} default, {fail:?} tightened"));
    (ok, notes.join(", "))
}

fn main() -> ExitCode {
    let cfg = VerifyConfig::default();
    let mut all = true;
    for (id, _) in check_list() {
        let o = run_check(id, &cfg).expect("listed check");
        all &= o.passed;
        println!(
            "criterion {:>2} {:<42} {}  achieved {:.3e} / tol {:.3e}  ({:.1} s)  {}",
            o.id,
            o.name,
            if o.passed { "PASS" } else { "FAIL" },
            o.achieved,
            o.tolerance,
            o.seconds,
            o.detail
        );
    }
    let start = Instant::now();
    let (ok, detail) = reproducibility();
    all &= ok;
    println!(
        "criterion 12 {:<42} {}  ({:.1} s)  {detail}",
        "cli reproducibility and exit codes",
        if ok { "PASS" } else { "FAIL" },
        start.elapsed().as_secs_f64()
    );
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
