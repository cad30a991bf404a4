use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_sopq");
const HEADER: &str = "p,q,sigma_re,sigma_im,nu,s,r,alpha,method,value_re,value_im,terms,tail";

fn sopq(args: &[&str]) -> Output {
    Command::new(BIN).args(args).env_remove("SOPQ_TOL").env_remove("SOPQ_NODES").env_remove("SOPQ_QUAD_TOL").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Rows of a CSV table as field vectors, header checked.
fn rows(o: &Output) -> Vec<Vec<String>> {
    let text = stdout(o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(HEADER));
    lines.map(|l| l.split(',').map(str::to_owned).collect()).collect()
}

fn field(row: &[String], name: &str) -> String {
    let i = HEADER.split(',').position(|h| h == name).unwrap();
    row[i].clone()
}

fn real(row: &[String], name: &str) -> f64 {
    field(row, name).parse().unwrap()
}

#[test]
fn zonal_matches_quadrature_value() {
    // quad_zonal at 96/192 nodes
    let want = 9.2023825158441985e-1;
    let o = sopq(&["zonal", "--p", "3", "--q", "2", "--sigma", "-1.5+2i", "--alpha", "0.4"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let r = rows(&o);
    assert_eq!(r.len(), 1);
    assert_eq!(field(&r[0], "method"), "series");
    assert!((real(&r[0], "value_re") - want).abs() < 1e-12);
    assert!(real(&r[0], "value_im").abs() < 1e-12);
}

#[test]
fn sigma_zero_gives_one() {
    let o = sopq(&["zonal", "--p", "3", "--q", "2", "--sigma", "0", "--alpha", "0.5"]);
    assert!(o.status.success());
    let r = rows(&o);
    assert_eq!(field(&r[0], "value_re"), "1.0000000000000000e0");
    assert_eq!(field(&r[0], "value_im"), "0.0000000000000000e0");
}

#[test]
fn reals_carry_seventeen_digits() {
    let o = sopq(&["zonal", "--p", "4", "--q", "3", "--sigma", "-2.5+1i", "--alpha", "0.3"]);
    for name in ["sigma_re", "alpha", "value_re", "value_im", "tail"] {
        let f = field(&rows(&o)[0], name);
        let mantissa = f.split('e').next().unwrap().trim_start_matches('-');
        assert_eq!(mantissa.chars().filter(char::is_ascii_digit).count(), 17, "{name}={f}");
    }
}

#[test]
fn verify_example_passes() {
    let o = sopq(&["verify", "--p", "4", "--q", "3", "--sigma", "-2.5", "--alpha", "0.1:0.8:0.1", "--tol", "1e-8"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stderr(&o).starts_with("PASS"));
    let r = rows(&o);
    assert_eq!(r.len(), 24);
    let methods: Vec<String> = r.iter().take(3).map(|row| field(row, "method")).collect();
    assert_eq!(methods, ["series", "horn", "quadrature"]);
}

#[test]
fn verify_associated_passes() {
    let o = sopq(&["verify", "--p", "3", "--q", "2", "--sigma", "-1.5+i", "--nu", "1", "--s", "1", "--r", "0", "--alpha", "0.2,0.5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(field(&rows(&o)[0], "nu"), "1");
}

#[test]
fn verify_fails_with_status_5_below_rounding() {
    let o = sopq(&["verify", "--p", "4", "--q", "3", "--sigma", "-2.5+0.3i", "--alpha", "0.5", "--tol", "1e-30"]);
    assert_eq!(o.status.code(), Some(5));
    assert!(stderr(&o).contains("FAIL"));
    assert_eq!(rows(&o).len(), 3);
}

#[test]
fn exit_codes() {
    let usage = sopq(&["zonal", "--p", "3", "--sigma", "-1", "--alpha", "0.3"]);
    assert_eq!(usage.status.code(), Some(2));
    let bad_sigma = sopq(&["zonal", "--p", "3", "--q", "2", "--sigma", "1+x", "--alpha", "0.3"]);
    assert_eq!(bad_sigma.status.code(), Some(2));
    let bad_range = sopq(&["zonal", "--p", "3", "--q", "2", "--sigma", "-1", "--alpha", "0.5:0.1:0.1"]);
    assert_eq!(bad_range.status.code(), Some(2));
    let domain = sopq(&["zonal", "--p", "2", "--q", "3", "--sigma", "-1", "--alpha", "0.3"]);
    assert_eq!(domain.status.code(), Some(3));
    let parity = sopq(&["zonal", "--p", "3", "--q", "2", "--sigma", "-1", "--epsilon", "1", "--alpha", "0.3"]);
    assert_eq!(parity.status.code(), Some(3));
    let negative = sopq(&["zonal", "--p", "3", "--q", "2", "--sigma", "-1", "--alpha", "-0.3"]);
    assert_eq!(negative.status.code(), Some(3));
    let guard = sopq(&["zonal", "--p", "3", "--q", "2", "--sigma", "-1", "--alpha", "1.0"]);
    assert_eq!(guard.status.code(), Some(4));
    assert!(stdout(&guard).is_empty());
    let budget = sopq(&["assoc", "--p", "3", "--q", "3", "--sigma", "-2+i", "--s", "1", "--r", "1", "--alpha", "0.6", "--max-terms", "3"]);
    assert_eq!(budget.status.code(), Some(4), "{}", stderr(&budget));
}

#[test]
fn lifted_guard_reaches_alpha_one() {
    let series = sopq(&["zonal", "--p", "3", "--q", "2", "--sigma", "-1.5", "--alpha", "1.0", "--guard", "0.99"]);
    assert!(series.status.success(), "{}", stderr(&series));
    let quad = sopq(&["zonal", "--p", "3", "--q", "2", "--sigma", "-1.5", "--alpha", "1.0", "--method", "quadrature"]);
    let (a, b) = (real(&rows(&series)[0], "value_re"), real(&rows(&quad)[0], "value_re"));
    assert!((a - b).abs() <= 1e-9 * b.abs());
}

#[test]
fn env_overrides_nodes() {
    let o = Command::new(BIN)
        .args(["zonal", "--p", "3", "--q", "2", "--sigma", "-1.5", "--alpha", "0.4", "--method", "quadrature"])
        .env("SOPQ_NODES", "8")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(4), "8 nodes should fail the doubling check");
    let o = Command::new(BIN)
        .args(["zonal", "--p", "3", "--q", "2", "--sigma", "-1.5", "--alpha", "0.4", "--method", "quadrature"])
        .env("SOPQ_NODES", "40")
        .output()
        .unwrap();
    assert!(o.status.success());
    assert_eq!(field(&rows(&o)[0], "terms"), "80");
}

#[test]
fn env_overrides_tolerance() {
    let o = Command::new(BIN)
        .args(["verify", "--p", "4", "--q", "3", "--sigma", "-2.5", "--alpha", "0.5"])
        .env("SOPQ_TOL", "1e-30")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(5));
}

#[test]
fn output_is_deterministic_and_ordered() {
    let args = ["scan", "--p", "4", "--q", "3", "--sigma", "-2.5,-2.5+1i", "--alpha", "0.1:0.6:0.1"];
    let a = sopq(&args);
    let b = sopq(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let r = rows(&a);
    assert_eq!(r.len(), 12);
    let alphas: Vec<f64> = r[..6].iter().map(|row| real(row, "alpha")).collect();
    assert!(alphas.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(real(&r[0], "sigma_im"), 0.0);
    assert_eq!(real(&r[6], "sigma_im"), 1.0);
}

#[test]
fn out_flag_writes_the_same_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z.json");
    let args = ["zonal", "--p", "5", "--q", "2", "--sigma", "-2.5+1i", "--alpha", "0.2,0.4", "--format", "json"];
    let direct = sopq(&args);
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap()]);
    let o = sopq(&with_out);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
}

#[test]
fn json_mirrors_csv() {
    let args = ["assoc", "--p", "4", "--q", "3", "--sigma", "-1+i", "--nu", "1", "--s", "1", "--r", "0", "--alpha", "0.2,0.5"];
    let csv = sopq(&args);
    let mut j = args.to_vec();
    j.extend(["--format", "json"]);
    let json = sopq(&j);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    let arr = v.as_array().unwrap();
    let r = rows(&csv);
    assert_eq!(arr.len(), r.len());
    for (obj, row) in arr.iter().zip(&r) {
        let keys: Vec<&str> = obj.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys, HEADER.split(',').collect::<Vec<_>>());
        assert_eq!(obj["value_re"].to_string().parse::<f64>().unwrap(), real(row, "value_re"));
        assert_eq!(obj["method"], "series");
    }
}

#[test]
fn methods_agree_for_associated() {
    let run = |m: &str| {
        let o = sopq(&["assoc", "--p", "3", "--q", "3", "--sigma", "-2+i", "--nu", "0", "--s", "2", "--r", "1", "--alpha", "0.5", "--method", m]);
        assert!(o.status.success(), "{}", stderr(&o));
        let r = rows(&o);
        (real(&r[0], "value_re"), real(&r[0], "value_im"))
    };
    let (s, h, q) = (run("series"), run("horn"), run("quadrature"));
    let scale = s.0.hypot(s.1);
    for other in [h, q] {
        assert!((s.0 - other.0).hypot(s.1 - other.1) <= 1e-9 * scale);
    }
}

#[test]
fn gram_is_identity() {
    let o = sopq(&["gram", "--p", "3", "--q", "2", "--max-label", "2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("p,q,lambda_i,mu_i,lambda_j,mu_j,value_re,value_im"));
    let body: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|f| f.parse().unwrap()).collect()).collect();
    // 5 circle labels times 3 sphere labels
    assert_eq!(body.len(), 15 * 15);
    for row in &body {
        let want = if row[2] == row[4] && row[3] == row[5] { 1.0 } else { 0.0 };
        assert!((row[6] - want).abs() < 1e-12 && row[7].abs() < 1e-12, "{row:?}");
    }
    assert!(stderr(&o).contains("max off-diagonal"));
}

#[test]
fn expand_residual_decreases() {
    let o = sopq(&["expand", "--p", "2", "--q", "2", "--sigma", "-1+0.5i", "--alpha", "0.3", "--n", "4,8"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let res: Vec<f64> = text.lines().skip(1).map(|l| l.rsplit(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(res.len(), 2);
    assert!(res[1] < 0.01 * res[0]);
}

#[test]
fn single_sigma_commands_reject_lists() {
    let o = sopq(&["zonal", "--p", "3", "--q", "2", "--sigma", "-1,-2", "--alpha", "0.3"]);
    assert_eq!(o.status.code(), Some(2));
}
