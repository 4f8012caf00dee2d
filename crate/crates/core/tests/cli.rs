use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubicgauss")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json_lines(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).expect("json line")).collect()
}

fn schema() -> Value {
    serde_json::from_str(include_str!("../schema/report-v1.json")).unwrap()
}

fn type_ok(v: &Value, ty: &str) -> bool {
    match ty {
        "string" => v.is_string(),
        "integer" => v.is_u64() || v.is_i64(),
        "boolean" => v.is_boolean(),
        "array" => v.is_array(),
        "object" => v.is_object(),
        _ => false,
    }
}

/// Checks `required`, `type`, `const` and `$ref`'d array items: the subset the schema uses.
fn validate(v: &Value, s: &Value, root: &Value) -> Result<(), String> {
    if let Some(r) = s.get("$ref").and_then(Value::as_str) {
        let name = r.trim_start_matches("#/$defs/");
        return validate(v, &root["$defs"][name], root);
    }
    if let Some(ty) = s.get("type").and_then(Value::as_str) {
        if !type_ok(v, ty) {
            return Err(format!("expected {ty}, got {v}"));
        }
    }
    if let Some(c) = s.get("const") {
        if v != c {
            return Err(format!("expected {c}, got {v}"));
        }
    }
    for key in s.get("required").and_then(Value::as_array).into_iter().flatten() {
        let k = key.as_str().unwrap();
        if v.get(k).is_none() {
            return Err(format!("missing {k}"));
        }
    }
    if let Some(props) = s.get("properties").and_then(Value::as_object) {
        for (k, ps) in props {
            if let Some(x) = v.get(k) {
                validate(x, ps, root).map_err(|e| format!("{k}: {e}"))?;
            }
        }
    }
    if let (Some(items), Some(arr)) = (s.get("items"), v.as_array()) {
        for x in arr {
            validate(x, items, root)?;
        }
    }
    Ok(())
}

#[test]
fn schema_version() {
    let o = run(&["schema-version"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["verify", "euler", "--bogus"],
        vec!["verify", "nonexistent-suite"],
        vec!["verify", "euler", "--field", "p=15"],
        vec!["verify", "euler", "--seed", "minus-one"],
        vec!["frobnicate"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn euler_sweep_passes() {
    let o = run(&["verify", "euler", "--trials", "100", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let lines = json_lines(&o);
    let summary = lines.last().unwrap();
    assert_eq!(summary["failures"].as_array().unwrap().len(), 0);
    assert_eq!(summary["instances_run"], 1 + 100 + 100 + 1);
    assert_eq!(lines.len(), 1 + summary["instances_run"].as_u64().unwrap() as usize);
}

#[test]
fn tau_tilde_zero_over_the_default_prime() {
    let o = run(&["verify", "tau-tilde-zero", "--trials", "50", "--field", "p=4611686018427388039", "--text"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("PASS [tau-tilde-zero] field=p=4611686018427388039"));
}

#[test]
fn reports_validate_against_the_schema() {
    let s = schema();
    for suite in ["discriminant", "alpha", "mu2-injectivity"] {
        let out = std::env::temp_dir().join(format!("cubicgauss-{suite}-{}.jsonl", std::process::id()));
        let o = run(&["verify", suite, "--trials", "3", "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        let text = std::fs::read_to_string(&out).unwrap();
        std::fs::remove_file(&out).ok();
        let lines: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        let (summary, records) = lines.split_last().unwrap();
        validate(summary, &s, &s).unwrap();
        for r in records {
            validate(r, &s["$defs"]["instance"], &s).unwrap();
        }
    }
    // A malformed report is rejected.
    let bad: Value = serde_json::json!({ "schema_version": "2", "suite": "x" });
    assert!(validate(&bad, &s, &s).is_err());
}

#[test]
fn sweeps_are_deterministic_and_rerunnable() {
    let strip = |v: &Value| {
        let mut v = v.clone();
        if let Some(o) = v.as_object_mut() {
            o.remove("wall_time_ms");
        }
        v
    };
    let args = ["verify", "mu2-injectivity", "--trials", "6", "--seed", "11"];
    let a: Vec<Value> = json_lines(&run(&args)).iter().map(strip).collect();
    let b: Vec<Value> = json_lines(&run(&args)).iter().map(strip).collect();
    assert_eq!(a, b);
    let one = json_lines(&run(&["verify", "mu2-injectivity", "--trials", "6", "--seed", "11", "--only", "4"]));
    assert_eq!(one.len(), 2);
    assert_eq!(one[0], a[4]);
}

#[test]
fn confirm_rational_reruns_over_q() {
    let o = run(&["verify", "mu2-membership", "--trials", "6", "--confirm-rational", "2", "--text"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("rational=4"), "{}", stdout(&o));
}

#[test]
fn discriminant_golden_klein() {
    let cubic = "x0^2*x1 + x0*x4^2 + x1^2*x2 - x1^2*x3 + x2^2*x3 - x2*x3^2 + x3^2*x4";
    let o = run(&["discriminant", cubic]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    // 4·Q = 4x³yz + 2εx³y² − xy⁴ − ε²x⁵ − z⁵ − εz⁴y at ε = −1.
    assert_eq!(v["quintic"], "-1/4*x^5 - 1/2*x^3*y^2 + x^3*y*z - 1/4*x*y^4 + 1/4*y*z^4 - 1/4*z^5");
    assert_eq!(v["conic"], "-x*y + x*z");
}

#[test]
fn triple_points_golden_klein() {
    let cubic = "x0^2*x1 + x0*x4^2 + x1^2*x2 - x1^2*x3 + x2^2*x3 - x2*x3^2 + x3^2*x4";
    let o = run(&["triple-points", cubic]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rational"], true);
    let mut pts: Vec<(String, u64)> = v["rational_points"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| (p["point"].as_str().unwrap().to_string(), p["mult"].as_u64().unwrap()))
        .collect();
    pts.sort();
    assert_eq!(pts, [("[0:1:0]".into(), 2), ("[0:1:1]".into(), 1), ("[1:-1:-1]".into(), 1), ("[1:1:1]".into(), 1)]);
}

#[test]
fn ring_and_family_commands() {
    let o = run(&["ring", "x^5 + y^5 + z^5", "--text"]);
    assert_eq!(stdout(&o).trim(), "[1,3,6,10,12,12,10,6,3,1]");
    let o = run(&["ring", "x^2*y + y^3"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["smooth"], false);
    let o = run(&["ring", "a^3 + b^3 + c^3 + d^3", "--vars", "a,b,c,d", "--text"]);
    assert_eq!(stdout(&o).trim(), "[1,4,6,4,1]");
    let o = run(&["family", "u8", "--params", "1,2,3,4,5,6,7,8,9,10,11", "--field", "p=1000003"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["configuration"]["conic"], "y*z");
    assert_eq!(v["alpha_accepted"], true);
    let o = run(&["family", "klein", "--params", "1"]);
    assert_eq!(o.status.code(), Some(2), "ε = 1 has no rational D");
    let o = run(&["family", "random", "--seed", "3", "--field", "p=1000003"]);
    assert!(o.status.success());
}

#[test]
fn gauss_and_lift_commands() {
    let o = run(&["gauss", "mu2", "random", "--seed", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = run(&["lift", "verify", "random", "--seed", "2", "--text"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["v4m_minus_q"], 6);
    assert_eq!(v["r4_f"], 5);
}
