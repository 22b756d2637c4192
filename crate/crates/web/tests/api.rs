use serde_json::Value;
use sphmean_web::{kernel_profile_json, region_verdict_json, solution_profile_json};

fn parse(s: Result<String, String>) -> Value {
    serde_json::from_str(&s.expect("call succeeds")).expect("valid json")
}

#[test]
fn kernel_profile_on_explicit_line() {
    let v = parse(kernel_profile_json("1/2", "0", 1.0, 1.5, 3.0, 30));
    assert_eq!(v["explicit_line"], "beta = 0");
    let (ts, ks) = (v["t"].as_array().unwrap(), v["kernel"].as_array().unwrap());
    assert_eq!(ts.len(), 30);
    for ((t, k), reg) in ts.iter().zip(ks).zip(v["regime"].as_array().unwrap()) {
        let t = t.as_f64().unwrap();
        match reg.as_str().unwrap() {
            "interior" => assert!((k.as_f64().unwrap() - 1.0 / (3.0 * t)).abs() < 1e-12),
            "vanishing" | "exterior" => assert_eq!(k.as_f64().unwrap(), 0.0),
            _ => assert!(k.is_null()),
        }
    }
}

#[test]
fn kernel_profile_rejects_bad_input() {
    assert!(kernel_profile_json("-2", "0", 1.0, 1.0, 1.0, 10).is_err());
    assert!(kernel_profile_json("0", "0", -1.0, 1.0, 1.0, 10).is_err());
    assert!(kernel_profile_json("0", "0", 1.0, 1.0, 1.0, 1).is_err());
}

#[test]
fn region_verdicts() {
    let v = parse(region_verdict_json("0", "1", "2", "1", "0", "0", "4/3", "4"));
    assert_eq!(v["admissible"], true);
    assert_eq!(v["shape"], "S2");
    assert_eq!(v["scaling_exponent"], "0");
    let v = parse(region_verdict_json("0", "1", "2", "1", "0", "0", "2", "2"));
    assert_eq!(v["admissible"], false);
    assert_eq!(v["conditions"]["C2"], "fails");
    let v = parse(region_verdict_json("0", "1", "1", "0", "1", "1", "2", "2"));
    assert_eq!(v["shape"], "S5");
    assert!(v["grid_points"].as_array().unwrap().is_empty());
    assert!(region_verdict_json("0.1", "1", "2", "1", "0", "0", "2", "2").is_err());
}

#[test]
fn solution_profiles() {
    let v = parse(solution_profile_json("wave", "", "", 1, 0.8, 3.0, 12));
    let xs = v["x"].as_array().unwrap();
    for (x, u) in xs.iter().zip(v["u"].as_array().unwrap()) {
        let (x, u) = (x.as_f64().unwrap(), u.as_f64().unwrap());
        let want = sphmean::pde::dalembert_gaussian(x, 0.8);
        assert!((u - want).abs() < 1e-7, "{x}: {u} vs {want}");
    }
    let v = parse(solution_profile_json("bessel-epd", "1/2", "1", 0, 0.5, 2.0, 8));
    assert_eq!(v["times_t"], false);
    assert!(solution_profile_json("wave", "", "", 3, 0.0, 1.0, 4).is_err());
    assert!(solution_profile_json("heat", "", "", 3, 1.0, 1.0, 4).is_err());
}
