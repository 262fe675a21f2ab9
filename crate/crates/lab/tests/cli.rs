use std::path::Path;
use std::process::{Command, Output};

fn lab(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dlpp-lab"))
        .current_dir(dir)
        .args(args)
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn branch_example_has_one_row_per_replica() {
    let dir = tempfile::tempdir().unwrap();
    let out = lab(dir.path(), &["branch", "--t", "100", "--nu", "0.667", "--replicas", "10", "--seed", "7"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# dlpp-lab v1"));
    let header = lines.next().unwrap();
    assert!(header.contains("d_line"), "{header}");
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 10);
    let cols = header.split(',').count();
    assert!(rows.iter().all(|r| r.split(',').count() == cols));
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&lab(dir.path(), &["branch", "--bogus"])), 2);
    assert_eq!(code(&lab(dir.path(), &["frobnicate"])), 2);
}

#[test]
fn malformed_config_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.json"), "{ \"replicas\": ").unwrap();
    std::fs::write(dir.path().join("unknown.json"), "{ \"colour\": 1 }").unwrap();
    assert_eq!(code(&lab(dir.path(), &["--config", "bad.json", "cdf", "--t", "2"])), 3);
    assert_eq!(code(&lab(dir.path(), &["--config", "unknown.json", "cdf", "--t", "2"])), 3);
}

#[test]
fn config_file_is_honoured() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("cfg.json"),
        r#"{ "master_seed": 7, "t_list": [100], "replicas": 3, "nu": 0.667 }"#,
    )
    .unwrap();
    let out = lab(dir.path(), &["--config", "cfg.json", "branch"]);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 5);
}

#[test]
fn unwritable_output_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let out = lab(dir.path(), &["cdf", "--t", "2", "--out", "missing/dir/cdf.csv"]);
    assert_eq!(code(&out), 4);
}

#[test]
fn rejected_parameters_exit_5() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&lab(dir.path(), &["branch", "--t=-3"])), 5);
    assert_eq!(code(&lab(dir.path(), &["branch", "--t", "100", "--replicas", "0"])), 5);
    assert_eq!(code(&lab(dir.path(), &["render", "--t", "10", "--window", "1,0,0,1"])), 5);
    assert_eq!(code(&lab(dir.path(), &["network", "--t", "10,20"])), 5);
}

#[test]
fn missing_or_malformed_input_exits_6() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&lab(dir.path(), &["length", "--input", "nope.csv"])), 6);
    std::fs::write(dir.path().join("junk.csv"), "a,b\n1,2\n").unwrap();
    assert_eq!(code(&lab(dir.path(), &["length", "--input", "junk.csv"])), 6);
    assert_eq!(code(&lab(dir.path(), &["exponent", "--input", "nope.csv"])), 6);
}

#[test]
fn sampled_points_round_trip_through_length() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&lab(dir.path(), &["sample", "--t", "30", "--seed", "5", "--out", "p.csv"])), 0);
    assert!(dir.path().join("p.json").exists());
    let a = lab(dir.path(), &["length", "--input", "p.csv"]);
    assert_eq!(code(&a), 0);
    let b = lab(dir.path(), &["length", "--input", "p.csv", "--end", "30,30"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn network_and_render_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let net = lab(dir.path(), &["network", "--t", "15", "--seed", "2"]);
    assert_eq!(code(&net), 0);
    let text = String::from_utf8(net.stdout).unwrap();
    assert!(text.contains("apex_ray"));
    let svg = lab(dir.path(), &["render", "--t", "15", "--seed", "2", "--window", "0,1,-0.5,0.5", "--width", "300"]);
    assert_eq!(code(&svg), 0);
    let svg = String::from_utf8(svg.stdout).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
}

#[test]
fn density_feeds_exponent() {
    let dir = tempfile::tempdir().unwrap();
    let d = lab(
        dir.path(),
        &["density", "--t", "50,100,200", "--mu", "0.5", "--replicas", "4", "--seed", "1", "--out", "d.csv"],
    );
    assert_eq!(code(&d), 0);
    let e = lab(dir.path(), &["exponent", "--input", "d.csv"]);
    assert_eq!(code(&e), 0);
    let text = String::from_utf8(e.stdout).unwrap();
    let row: Vec<f64> = text.lines().last().unwrap().split(',').map(|x| x.parse().unwrap()).collect();
    assert_eq!(row.len(), 3);
    assert!(row[0].is_finite());
}
