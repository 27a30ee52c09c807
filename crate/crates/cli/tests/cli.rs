use std::process::{Command, Output};

fn mgroups(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mgroups"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data_rows(text: &str) -> Vec<Vec<String>> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    reader
        .records()
        .map(|r| r.unwrap().iter().map(str::to_string).collect())
        .collect()
}

#[test]
fn check_accepts_bs23() {
    let o = mgroups(&["check", "--group", "bs:2,3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("conditions: pass pass pass"));
}

#[test]
fn check_rejects_non_generating_pair() {
    let o = mgroups(&["check", "--group", "bs:2,4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("conditions: pass fail pass"));
    // any other command refuses to run on the same group
    let o = mgroups(&["growth", "--group", "bs:2,4", "--n", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn alpha_seq_table() {
    let o = mgroups(&["alpha-seq", "--group", "bs:2,3", "--i", "0..3", "--r", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("# mgroups alpha-seq"));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[1],
        "group,i,r,lambda_min,bound_sqrt,bound_refined,iterations,residual,r_star,equals_limit,nonincreasing"
    );
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 4);
    let first: f64 = rows[0][5].parse().unwrap();
    let last: f64 = rows[3][5].parse().unwrap();
    assert!(last <= first);
    assert_eq!(rows[3][9], "true");
}

#[test]
fn reruns_are_byte_identical() {
    let args = ["alpha", "--group", "limit:bs:2,3", "--radius", "2..4", "--seed", "7"];
    let a = mgroups(&args);
    let b = mgroups(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).lines().next().unwrap().ends_with("seed=7"));
}

#[test]
fn config_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let exported = mgroups(&["export", "--group", "limit:hnn:2,0;0,2/3,0;0,3", "--format", "config"]);
    assert_eq!(exported.status.code(), Some(0));
    let path = dir.path().join("group.toml");
    std::fs::write(&path, &exported.stdout).unwrap();
    let again = mgroups(&["export", "--config", path.to_str().unwrap(), "--format", "config"]);
    assert_eq!(again.stdout, exported.stdout);
    let check = mgroups(&["check", "--config", path.to_str().unwrap()]);
    assert_eq!(check.status.code(), Some(0));
}

#[test]
fn malformed_inputs_exit_four() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    std::fs::write(&path, "kind = \"bs\"\nm = 2\nn = [3]\n").unwrap();
    let o = mgroups(&["check", "--config", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    assert_eq!(mgroups(&["check", "--group", "bs:2"]).status.code(), Some(4));
    assert_eq!(mgroups(&["frobnicate"]).status.code(), Some(4));
    assert_eq!(mgroups(&["check"]).status.code(), Some(4));
    let o = mgroups(&["free-cert", "--group", "bs:2,3", "--u", "q", "--length", "2"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn budgets_exit_three() {
    let o = mgroups(&["ball", "--group", "free:2", "--radius", "6", "--max-vertices", "50"]);
    assert_eq!(o.status.code(), Some(3));
    let o = mgroups(&["growth", "--group", "free:2", "--n", "9"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn compare_and_converge() {
    let o = mgroups(&["compare", "--group", "free:2", "--against", "bs:2,3", "--radius", "4"]);
    let rows = data_rows(&stdout(&o));
    let iso: Vec<&str> = rows.iter().map(|r| r[1].as_str()).collect();
    assert_eq!(iso, ["true", "true", "true", "false", "false"]);
    let o = mgroups(&["converge", "--group", "bs:2,3", "--i", "0,1", "--radius", "4"]);
    let rows = data_rows(&stdout(&o));
    assert_eq!(rows[0][1], "3");
    assert_eq!(rows[1][1], "4");
}

#[test]
fn growth_walk_and_certificate() {
    let rows = data_rows(&stdout(&mgroups(&["growth", "--group", "free:2", "--n", "4"])));
    assert_eq!(rows[3][1], "161");
    let rows = data_rows(&stdout(&mgroups(&["walk", "--group", "free:2", "--k", "2"])));
    assert_eq!(rows[0][1], "1/4");
    assert_eq!(rows[1][1], "7/64");
    let rows = data_rows(&stdout(&mgroups(&["free-cert", "--group", "bs:2,3", "--length", "4"])));
    assert_eq!(rows[0][4], "true");
    let rows = data_rows(&stdout(&mgroups(&[
        "free-cert", "--group", "bs:2,3", "--u", "a", "--w", "a^2", "--length", "3",
    ])));
    assert_eq!(rows[0][4], "false");
}

#[test]
fn dot_export_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ball.dot");
    let o = mgroups(&[
        "export", "--group", "bs:2,3", "--radius", "1", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let dot = std::fs::read_to_string(&path).unwrap();
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("doublecircle"));
    assert_eq!(dot.matches(" -> ").count(), 4);
}

#[test]
fn symmetric_marking_keeps_the_refined_bound() {
    let plain = data_rows(&stdout(&mgroups(&["alpha", "--group", "bs:2,3", "--radius", "3"])));
    let sym = data_rows(&stdout(&mgroups(&[
        "alpha", "--group", "bs:2,3", "--radius", "3", "--symmetric",
    ])));
    let a: f64 = plain[0][5].parse().unwrap();
    let b: f64 = sym[0][5].parse().unwrap();
    // ‖s⁻¹v − v‖ = ‖sv − v‖, and doubling the marking doubles the form
    assert!((a - b).abs() < 1e-9);
    let la: f64 = plain[0][3].parse().unwrap();
    let lb: f64 = sym[0][3].parse().unwrap();
    assert!((2.0 * la - lb).abs() < 1e-9);
}
