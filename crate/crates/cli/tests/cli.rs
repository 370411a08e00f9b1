//! End-to-end tests of the `vp-approx` binary: exit codes, determinism of the
//! emitted artifacts, and the documented example values.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;
use vp_cli::table::split_csv_line;

fn vp_approx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vp-approx"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_config(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn verify_passes_with_exit_zero() {
    let out = vp_approx(&["verify"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let stdout = String::from_utf8(out.stdout).unwrap();
    for id in ["a", "b1", "b2", "b3", "b4", "c1", "d", "e", "f5", "g", "h"] {
        assert!(
            stdout
                .lines()
                .any(|l| l.contains("[pass]") && l.contains(&format!(" {id} "))),
            "missing pass line for item {id}:\n{stdout}"
        );
    }
}

#[test]
fn verify_csv_output() {
    let dir = TempDir::new().unwrap();
    let out_path = dir.path().join("verify.csv");
    let out = vp_approx(&["verify", "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&out_path).unwrap();
    assert!(text.starts_with("id,computed,bound,quad_error,status,label\n"));
    assert_eq!(text.lines().count(), 1 + 18); // a, b1-4, c1-4, d, e, f1-5, g, h
    assert!(!text.contains('\r'));
}

#[test]
fn approximate_is_deterministic_and_constants_have_zero_deviation() {
    let dir = TempDir::new().unwrap();
    let config = write_config(
        dir.path(),
        "run.json",
        r#"{
            "functions": [
                {"family": "constant", "value": 3.0},
                {"family": "random_trig", "seed": 7, "degree": 5}
            ],
            "n_values": [8],
            "p_policy": "half_n",
            "seed": 42
        }"#,
    );
    let out1 = dir.path().join("a.csv");
    let out2 = dir.path().join("b.csv");
    let r1 = vp_approx(&[
        "approximate",
        "--config",
        &config,
        "--out",
        out1.to_str().unwrap(),
    ]);
    assert_eq!(
        r1.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&r1.stderr)
    );
    let r2 = vp_approx(&[
        "approximate",
        "--config",
        &config,
        "--out",
        out2.to_str().unwrap(),
    ]);
    assert_eq!(r2.status.code(), Some(0));
    let bytes1 = fs::read(&out1).unwrap();
    let bytes2 = fs::read(&out2).unwrap();
    assert_eq!(bytes1, bytes2, "same config + seed must be byte-identical");

    let text = String::from_utf8(bytes1).unwrap();
    let mut saw_constant_rows = false;
    for line in text.lines().skip(1) {
        let cells = split_csv_line(line);
        if cells[0].starts_with("constant") {
            saw_constant_rows = true;
            let rho: f64 = cells[6].parse().unwrap();
            assert!(
                rho.abs() < 1e-12,
                "constant corpus must have zero deviation: {line}"
            );
        }
    }
    assert!(saw_constant_rows);
}

#[test]
fn approximate_holder_summary_below_class_bound() {
    let dir = TempDir::new().unwrap();
    let config = write_config(
        dir.path(),
        "run.json",
        r#"{
            "functions": [{"family": "holder_alpha", "alpha": 1.0}],
            "n_values": [16],
            "output": {"format": "json"}
        }"#,
    );
    let out_path = dir.path().join("run.json.out");
    let r = vp_approx(&[
        "approximate",
        "--config",
        &config,
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(
        r.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&r.stderr)
    );
    let rows: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&out_path).unwrap()).unwrap();
    let sup = rows[0]["sup_abs"].as_f64().unwrap();
    assert!(sup < 1.443 * std::f64::consts::PI / 16.0, "sup_abs = {sup}");
    assert!(sup > 0.0);
}

#[test]
fn bounds_rows_ordered_and_clean() {
    let dir = TempDir::new().unwrap();
    let config = write_config(
        dir.path(),
        "run.json",
        r#"{
            "functions": [
                {"family": "holder_alpha", "alpha": 0.5},
                {"family": "lipschitz_sawtooth_smoothed", "amplitude": 1.0},
                {"family": "constant", "value": 2.0}
            ],
            "n_values": [8, 16]
        }"#,
    );
    let out_path = dir.path().join("bounds.csv");
    let r = vp_approx(&[
        "bounds",
        "--config",
        &config,
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(
        r.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&r.stderr)
    );
    let text = fs::read_to_string(&out_path).unwrap();
    let mut rows = 0;
    for line in text.lines().skip(1) {
        rows += 1;
        let cells = split_csv_line(line);
        let sup: f64 = cells[3].parse().unwrap();
        let three_term: f64 = cells[4].parse().unwrap();
        let general: f64 = cells[5].parse().unwrap();
        if cells[0].starts_with("constant") {
            // every bound is zero and so is the measured deviation
            assert!(sup < 1e-12 && three_term == 0.0 && general == 0.0, "{line}");
        } else {
            assert!(
                sup < three_term,
                "measured sup below the three-term bound: {line}"
            );
            assert!(
                three_term < general,
                "three-term bound below the Lebesgue-route bound: {line}"
            );
        }
        assert_eq!(cells.last().unwrap(), "", "no violations expected: {line}");
    }
    assert_eq!(rows, 6);
}

#[test]
fn holder_command_reproduces_example_rows() {
    let dir = TempDir::new().unwrap();
    let config = write_config(
        dir.path(),
        "run.json",
        r#"{
            "functions": [
                {"family": "holder_alpha", "alpha": 0.5},
                {"family": "holder_alpha", "alpha": 1.0}
            ],
            "n_values": [16]
        }"#,
    );
    let out_path = dir.path().join("holder.csv");
    let r = vp_approx(&[
        "holder",
        "--config",
        &config,
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(
        r.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&r.stderr)
    );
    let text = fs::read_to_string(&out_path).unwrap();
    let mut seen = 0;
    for line in text.lines().skip(1) {
        let cells = split_csv_line(line);
        let alpha: f64 = cells[0].parse().unwrap();
        let lower: f64 = cells[2].parse().unwrap();
        let upper: f64 = cells[3].parse().unwrap();
        let empirical: f64 = cells[4].parse().unwrap();
        if alpha == 1.0 {
            assert!((lower - std::f64::consts::PI / 32.0).abs() < 1e-12);
            assert!((upper - 0.2833).abs() < 5e-4, "upper = {upper}");
        } else {
            assert!((upper - 0.6887).abs() < 5e-4, "upper = {upper}");
        }
        assert!(empirical <= upper);
        assert!(lower < upper);
        seen += 1;
    }
    assert_eq!(seen, 2);
}

#[test]
fn constants_json_reports_closed_forms() {
    let dir = TempDir::new().unwrap();
    let out_path = dir.path().join("constants.json");
    let config = write_config(dir.path(), "c.json", r#"{"output": {"format": "json"}}"#);
    let r = vp_approx(&[
        "constants",
        "--config",
        &config,
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(
        r.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&r.stderr)
    );
    let reports: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&out_path).unwrap()).unwrap();
    let find = |name: &str| {
        reports
            .as_array()
            .unwrap()
            .iter()
            .find(|r| r["name"] == name)
            .unwrap_or_else(|| panic!("missing {name}"))
            .clone()
    };
    let norm = find("vp_half_operator_norm");
    assert!((norm["value"].as_f64().unwrap() - 1.4359911241769174).abs() < 1e-8);
    let sum = find("three_term_coefficient_sum");
    assert!(sum["value"].as_f64().unwrap() < sum["inputs"]["comparison"].as_f64().unwrap());
    let tau1 = find("tau_1");
    let root = tau1["value"].as_f64().unwrap();
    assert!(root > 2.657 && root < 2.66);
}

#[test]
fn plot_is_written_for_approximate() {
    let dir = TempDir::new().unwrap();
    let config = write_config(
        dir.path(),
        "run.json",
        r#"{
            "functions": [{"family": "random_trig", "seed": 3, "degree": 6}],
            "n_values": [8]
        }"#,
    );
    let out_path = dir.path().join("table.csv");
    let plot_path = dir.path().join("plot.svg");
    let r = vp_approx(&[
        "approximate",
        "--config",
        &config,
        "--out",
        out_path.to_str().unwrap(),
        "--plot",
        plot_path.to_str().unwrap(),
    ]);
    assert_eq!(
        r.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&r.stderr)
    );
    let svg = fs::read_to_string(&plot_path).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains("<polyline"));
}

#[test]
fn config_errors_exit_three_with_field_paths() {
    let dir = TempDir::new().unwrap();
    // odd n under half_n
    let bad_n = write_config(
        dir.path(),
        "bad_n.json",
        r#"{"functions": [{"family": "constant", "value": 1.0}], "n_values": [7]}"#,
    );
    let r = vp_approx(&["approximate", "--config", &bad_n]);
    assert_eq!(r.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&r.stderr).contains("n_values[0]"));

    // explicit p exceeding n
    let bad_p = write_config(
        dir.path(),
        "bad_p.json",
        r#"{
            "functions": [{"family": "constant", "value": 1.0}],
            "n_values": [4],
            "p_policy": {"explicit": [5]}
        }"#,
    );
    let r = vp_approx(&["approximate", "--config", &bad_p]);
    assert_eq!(r.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&r.stderr).contains("p_policy.explicit[0]"));

    // invalid function spec
    let bad_f = write_config(
        dir.path(),
        "bad_f.json",
        r#"{"functions": [{"family": "holder_alpha", "alpha": 2.0}], "n_values": [4]}"#,
    );
    let r = vp_approx(&["approximate", "--config", &bad_f]);
    assert_eq!(r.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&r.stderr).contains("functions[0]"));

    // malformed JSON
    let broken = write_config(dir.path(), "broken.json", "{not json");
    let r = vp_approx(&["approximate", "--config", &broken]);
    assert_eq!(r.status.code(), Some(3));

    // missing config file
    let r = vp_approx(&["approximate", "--config", "/nonexistent/nope.json"]);
    assert_eq!(r.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_three() {
    let r = vp_approx(&["frobnicate"]);
    assert_eq!(r.status.code(), Some(3));
    let r = vp_approx(&["approximate"]); // missing --config
    assert_eq!(r.status.code(), Some(3));
}

#[test]
fn declared_command_must_match_subcommand() {
    let dir = TempDir::new().unwrap();
    let config = write_config(
        dir.path(),
        "c.json",
        r#"{
            "command": "bounds",
            "functions": [{"family": "constant", "value": 1.0}],
            "n_values": [4]
        }"#,
    );
    let r = vp_approx(&["approximate", "--config", &config]);
    assert_eq!(r.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&r.stderr).contains("declares 'bounds'"));
    let r = vp_approx(&["bounds", "--config", &config]);
    assert_eq!(
        r.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&r.stderr)
    );
}
