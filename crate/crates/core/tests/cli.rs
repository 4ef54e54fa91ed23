use std::path::Path;
use std::process::{Command, Output};

use fracdec::mesh::io::load_mesh;

fn fracdec(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fracdec"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn data_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn gen_mesh_counts_and_formats() {
    let dir = tempfile::tempdir().unwrap();
    let out = fracdec(&["gen-mesh", "interval", "--a", "0", "--b", "1", "--edges", "64", "-o", "mesh.json"], dir.path());
    assert!(out.status.success());
    assert_eq!(load_mesh(dir.path().join("mesh.json")).unwrap().num_vertices(), 65);

    let out = fracdec(&["gen-mesh", "square", "--n", "8", "-o", "sq.off"], dir.path());
    assert!(out.status.success());
    let mesh = load_mesh(dir.path().join("sq.off")).unwrap();
    assert_eq!(mesh.count(2), 128);
    assert!(String::from_utf8_lossy(&out.stdout).contains("81 208 128"));
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["gen-mesh", "square", "--n", "8"][..],
        &["convergence", "--edges", ""],
        &["frac-deriv", "--interval", "8", "--family", "sine"],
        &["frac-deriv", "--interval", "8"],
        &["no-such-command"],
        &["--s", "0", "field2d"],
    ] {
        let out = fracdec(args, dir.path());
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn data_errors_exit_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let out = fracdec(&["frac-deriv", "--square", "3", "--family", "poly", "--sidedness", "left"], dir.path());
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unsupported"));

    std::fs::write(dir.path().join("plain.csv"), "n,l2_error\n2,1.0\n").unwrap();
    assert_eq!(fracdec(&["rerun", "plain.csv"], dir.path()).status.code(), Some(3));

    std::fs::write(dir.path().join("quad.off"), "OFF\n4 1 0\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n4 0 1 2 3\n").unwrap();
    let out = fracdec(&["frac-deriv", "--mesh", "quad.off", "--family", "saddle_2d"], dir.path());
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("quad.off:7"));
}

#[test]
fn integer_order_gives_plain_differences() {
    let dir = tempfile::tempdir().unwrap();
    let out = fracdec(&["--s", "1", "frac-deriv", "--interval", "4", "--family", "cubic"], dir.path());
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("# fracdec-config: "));
    let values: Vec<f64> = data_rows(&text).iter().map(|r| r.last().unwrap().parse().unwrap()).collect();
    let x: Vec<f64> = (0..=4).map(|i| i as f64 / 4.0).collect();
    for (i, v) in values.iter().enumerate() {
        assert_eq!(*v, x[i + 1].powi(3) - x[i].powi(3));
    }
}

#[test]
fn cubic_run_has_one_value_per_edge() {
    let dir = tempfile::tempdir().unwrap();
    let out = fracdec(&["frac-deriv", "--interval", "64", "--family", "cubic", "--right-sign", "minus"], dir.path());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 64);
    assert_eq!(text.lines().nth(1).unwrap(), "index,vertices,x,value");
    assert!(text.lines().next().unwrap().contains(r#""right_sign":"minus""#));
}

#[test]
fn values_file_input_matches_family_input() {
    let dir = tempfile::tempdir().unwrap();
    let values: String = (0..=8).map(|i| format!("{}\n", (i as f64 / 8.0).exp())).collect();
    std::fs::write(dir.path().join("v.csv"), format!("value\n{values}")).unwrap();
    let from_file = fracdec(&["frac-deriv", "--interval", "8", "--values", "v.csv"], dir.path());
    let from_family = fracdec(&["frac-deriv", "--interval", "8", "--family", "exp_x"], dir.path());
    let a = data_rows(&String::from_utf8(from_file.stdout).unwrap());
    let b = data_rows(&String::from_utf8(from_family.stdout).unwrap());
    assert_eq!(a, b);
}

#[test]
fn convergence_table_and_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let out = fracdec(&["convergence", "--edges", "2,4,8"], dir.path());
    let rows = data_rows(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0][2], "");
    assert!((rows[0][1].parse::<f64>().unwrap() - 1.5619).abs() < 1e-4);

    let out = fracdec(&["convergence", "--sweep", "--edges", "16", "--orders", "0.25,0.5"], dir.path());
    let rows = data_rows(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[1][1], "0.5");
}

#[test]
fn field2d_reports_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out = fracdec(&["field2d", "--family", "shifted_min_2d", "--n", "4", "-o", "f.csv"], dir.path());
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("summary: min="));
    let text = std::fs::read_to_string(dir.path().join("f.csv")).unwrap();
    assert_eq!(data_rows(&text).len(), 32);
    assert!(text.lines().last().unwrap().starts_with("# summary:"));
}

#[test]
fn json_output_carries_config() {
    let dir = tempfile::tempdir().unwrap();
    let out = fracdec(&["oracle-sample", "--family", "exp", "--sidedness", "left", "--points", "3", "--format", "json"], dir.path());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["fracdec_config"]["command"]["family"], "exp_x");
    assert_eq!(doc["rows"].as_array().unwrap().len(), 3);
}
