use serde_json::Value;
use std::process::Command;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_sphmean")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf-8 output"))
}

fn csv(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    (header, lines.map(|l| l.split(',').map(String::from).collect()).collect())
}

fn column(text: &str, name: &str) -> Vec<String> {
    let (header, rows) = csv(text);
    let i = header.iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"));
    rows.into_iter().map(|r| r[i].clone()).collect()
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn explicit_line_ratio_is_constant() {
    let (code, out) = run(&["kernel", "--alpha", "1/2", "--beta", "0", "--grid-t", "0.6:2.4:10", "--grid-z", "1.5"]);
    assert_eq!(code, 0);
    assert!(out.ends_with('\n') && !out.contains('\r'));
    let regimes = column(&out, "regime");
    let ratios = column(&out, "ratio");
    for (reg, r) in regimes.iter().zip(&ratios) {
        if reg == "interior" {
            assert!((num(r) - 0.5).abs() < 1e-12, "{r}");
        }
    }
    assert!(column(&out, "paths").iter().all(|p| p.contains("closed")));
}

#[test]
fn vanishing_rows() {
    let (code, out) = run(&["kernel", "--alpha", "0.3", "--beta", "0.6", "--grid-t", "0.1:0.4:4", "--grid-x", "1", "--grid-z", "2"]);
    assert_eq!(code, 0);
    for (k, e) in column(&out, "K_legendre").iter().zip(column(&out, "envelope")) {
        assert_eq!(num(k), 0.0);
        assert_eq!(num(&e), 0.0);
    }
    assert!(column(&out, "regime").iter().all(|r| r == "vanishing"));
}

#[test]
fn oracle_difference_is_reported() {
    let (code, out) = run(&["kernel", "--alpha", "3/10", "--beta", "3/5", "--grid-t", "0.7:2.9:5", "--oracle", "--format", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["config_echo"]["command"], "kernel");
    let d = v["summary"]["max_abs_legendre_minus_oracle"].as_f64().unwrap();
    assert!(d < 1e-8, "{d}");
    assert!(v["rows"][0]["paths"].as_str().unwrap().contains("oracle"));
}

#[test]
fn seventeen_significant_digits() {
    let (_, out) = run(&["kernel", "--alpha", "0", "--beta", "0", "--grid-t", "1", "--grid-z", "1.5"]);
    let k = &column(&out, "K_legendre")[0];
    let mantissa = k.split('e').next().unwrap().replace(['-', '.'], "");
    assert_eq!(mantissa.len(), 17, "{k}");
}

#[test]
fn divergent_time_norm_grows() {
    let (code, out) = run(&["tnorm", "--alpha", "1/10", "--beta", "1/10", "--r", "4", "--rho", "0", "--grid-z", "1/2:2:3:log"]);
    assert_eq!(code, 0);
    assert!(column(&out, "finite").iter().all(|f| f == "false"));
    assert!(column(&out, "growth").iter().all(|g| g == "unbounded"));
    for t in column(&out, "truncations") {
        let v: Vec<f64> = t.split(';').map(num).collect();
        assert_eq!(v.len(), 5);
        assert!(v.windows(2).all(|w| w[1] > w[0]));
    }
}

#[test]
fn time_norm_matches_piecewise_integral() {
    // K = 1/(2t) inside, 1/t outside; ∫ K t^{-1/2} dt in closed form
    let (code, out) = run(&["tnorm", "--alpha", "-1/2", "--beta", "1", "--r", "1", "--rho", "-1/2", "--grid-z", "1/4:4:5:log"]);
    assert_eq!(code, 0);
    for (z, n) in column(&out, "z").iter().zip(column(&out, "numeric")) {
        let z = num(z);
        let want = (1.0 - z).abs().powf(-0.5) + (1.0 + z).powf(-0.5);
        if z != 1.0 {
            assert!((num(&n) - want).abs() < 1e-8 * want, "{z}: {n} vs {want}");
        }
    }
}

#[test]
fn time_norm_band_recorded() {
    let (code, out) = run(&["tnorm", "--alpha", "3/10", "--beta", "2/5", "--r", "2", "--grid-z", "1/64:64:13:log"]);
    assert_eq!(code, 0);
    let ratios: Vec<f64> = column(&out, "ratio").iter().filter(|r| !r.is_empty()).map(|r| num(r)).collect();
    assert!(ratios.len() >= 12);
    let (lo, hi) = ratios.iter().fold((f64::MAX, 0.0f64), |(a, b), &r| (a.min(r), b.max(r)));
    assert!(lo > 1.0 / 50.0 && hi < 50.0, "{lo} {hi}");
}

#[test]
fn regions_outputs() {
    let (code, out) = run(&["regions", "--alpha", "0", "--beta", "1", "--r", "1", "--rho", "0", "--A", "1", "--B", "1", "--format", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["summary"]["shape"], "S5");
    assert_eq!(v["rows"].as_array().unwrap().len(), 25 * 25);

    let (_, out) = run(&["regions", "--alpha", "0", "--beta", "1", "--r", "2", "--rho", "1", "--p", "2", "--q", "2"]);
    assert_eq!(column(&out, "C2"), vec!["fails"]);
    assert_eq!(column(&out, "scaling_exponent"), vec!["1"]);

    let (code, out) = run(&["regions", "--plane", "--grid-alpha", "-4/5:-7/10:2", "--grid-beta", "5/4"]);
    assert_eq!(code, 0);
    assert_eq!(column(&out, "q_zeros_predicted"), vec!["1", "1"]);
    assert!(column(&out, "census_agrees").iter().all(|c| c == "true"));

    let (_, out) = run(&["regions", "--plane", "--grid-alpha", "1:2:2", "--grid-beta", "-1"]);
    let lines = column(&out, "explicit_line");
    assert_eq!(lines, vec!["beta=-1", "beta=-1"]);
    let (_, out) = run(&["regions", "--plane", "--grid-alpha", "-1/2:3/2:2", "--grid-beta", "1/3:1/3:1"]);
    assert_eq!(column(&out, "explicit_line"), vec!["alpha=-1/2", "alpha=1+1/2"]);
}

#[test]
fn pde_tricomi_residual_is_second_order() {
    let (code, out) = run(&["pde", "--problem", "epd", "--n", "2", "--tricomi", "--grid-x", "1.2:1.8:2", "--grid-t", "0.6"]);
    assert_eq!(code, 0);
    assert!(column(&out, "problem")[0].contains("beta=-1/3"));
    for r in column(&out, "richardson_ratio") {
        assert!((3.0..=5.0).contains(&num(&r)), "{r}");
    }
}

#[test]
fn pde_strichartz_sweep() {
    let admissible = ["--alpha", "0", "--beta", "1", "--r", "2", "--rho", "1", "--p", "4/3", "--q", "4"];
    let mut args = vec!["pde", "--strichartz", "--data", "bump:1:2", "--tol", "1e-3", "--grid-s", "1/4:4:3:log", "--format", "json"];
    args.extend(admissible);
    let (code, out) = run(&args);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v["summary"]["slope"].as_f64().unwrap().abs() < 0.02);

    let (_, out) = run(&[
        "pde", "--strichartz", "--data", "bump:1:2", "--tol", "1e-3", "--grid-s", "1/2:2:2:log", "--alpha", "0", "--beta", "1", "--r", "2", "--rho",
        "1", "--p", "2", "--q", "4",
    ]);
    assert!((num(&column(&out, "slope")[0]) - 0.5).abs() < 0.02);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["kernel", "--alpha", "-2", "--beta", "0"]).0, 2);
    assert_eq!(run(&["kernel", "--alpha", "0", "--beta", "0", "--grid-t", "1:0:3"]).0, 2);
    assert_eq!(run(&["kernel", "--alpha", "0", "--beta", "0", "--grid-t", "0.1:1:1000", "--grid-x", "0.1:1:1000", "--grid-z", "1:2:2"]).0, 2);
    assert_eq!(run(&["regions", "--alpha", "0.1", "--beta", "1"]).0, 2);
    assert_eq!(run(&["pde", "--problem", "wave", "--n", "3"]).0, 2);
    assert_eq!(run(&["verify", "--only", "99"]).0, 2);
    assert_eq!(run(&["bogus"]).0, 2);
}

#[test]
fn verify_reports_first_failure() {
    let (code, out) = run(&["verify", "--only", "3,9", "--tol-scale", "1e-6", "--format", "json"]);
    assert_eq!(code, 4);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["summary"]["first_failure"]["id"], 3);
    assert!(v["summary"]["first_failure"]["achieved"].as_f64().unwrap() > 0.0);
    assert_eq!(v["summary"]["failed"], serde_json::json!([3]));
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("sphmean-cli-{}.csv", std::process::id()));
    let (code, out) = run(&["kernel", "--alpha", "0", "--beta", "1", "--grid-t", "0.5:1:2", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(text.lines().count(), 3);
}
