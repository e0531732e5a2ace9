use std::process::{Command, Output};

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sumfree-lab"))
        .args(args)
        .env_remove("SUMFREE_LAB_LIMIT")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = lab(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn mu_examples() {
    assert!(stdout(&["mu", "10"]).starts_with("type=I(2) mu=1/2"));
    assert!(stdout(&["mu", "9"]).starts_with("type=II mu=1/3"));
    assert!(stdout(&["mu", "7"]).starts_with("type=III mu=2/7"));
    assert!(stdout(&["mu", "3,3"]).starts_with("type=II mu=1/3"));
}

#[test]
fn classify_and_maxsf() {
    assert_eq!(
        stdout(&["classify", "6,2"]),
        "group=2,6 order=12 exponent=6 type=I(2)\n"
    );
    assert_eq!(
        stdout(&["maxsf", "10"]),
        "size=5 density=1/2 witness=0x2aa members=1,3,5,7,9\n"
    );
}

#[test]
fn census_examples_and_limit() {
    let z4 = stdout(&["census", "4"]);
    assert!(
        z4.contains("sf_count=5\n") && z4.contains("sigma=0.580482"),
        "{z4}"
    );
    let out = lab(&["census", "50"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("enumeration limit 48"));
    let raised = Command::new(env!("CARGO_BIN_EXE_sumfree-lab"))
        .args(["census", "2,2,2,2,2,2"])
        .env("SUMFREE_LAB_LIMIT", "30")
        .output()
        .unwrap();
    assert!(!raised.status.success());
    assert!(String::from_utf8_lossy(&raised.stderr).contains("enumeration limit 30"));
}

#[test]
fn schur_examples() {
    assert!(stdout(&["schur", "10", "1,2,3"]).starts_with("T=3 delta=3/100"));
    assert!(stdout(&["schur", "10", ""]).starts_with("T=0 "));
    assert!(stdout(&["schur", "10", "all"]).starts_with("T=100 "));
    assert_eq!(lab(&["schur", "10", "1,99"]).status.code(), Some(2));
}

#[test]
fn extremal_examples() {
    let e = stdout(&[
        "extremal", "--q", "7", "--l", "0", "--cap", "1", "--mass", "0", "--oracle",
    ]);
    assert!(
        e.contains("E=-2.246979603717") && e.contains("agree=true"),
        "{e}"
    );
    let full = stdout(&[
        "extremal", "--q", "7", "--l", "0", "--cap", "1", "--mass", "7",
    ]);
    let value: f64 = full.lines().next().unwrap()["E=".len()..].parse().unwrap();
    assert!(value.abs() < 1e-9);
    let bad = lab(&[
        "extremal", "--q", "7", "--l", "0", "--cap", "1/2", "--mass", "4",
    ]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("infeasible"));
}

#[test]
fn verify_middle_sum_equality_row() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("z7.csv");
    let o = out.to_str().unwrap();
    stdout(&[
        "verify",
        "--min-order",
        "7",
        "--max-order",
        "7",
        "--checks",
        "middle_sum",
        "--out",
        o,
    ]);
    let text = std::fs::read_to_string(&out).unwrap();
    // {2, 3} is mask 0b1100 = 0xc; along the character a = 1
    assert!(
        text.contains("middle_sum,7,0xc,1,delta=0,2,2.0,true\n"),
        "{text}"
    );
}

#[test]
fn verify_exit_status_and_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.jsonl");
    let o = out.to_str().unwrap();
    let ok = lab(&[
        "verify",
        "--max-order",
        "6",
        "--format",
        "jsonl",
        "--out",
        o,
    ]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("hard_failures=0"));
    let bad = lab(&[
        "verify",
        "--max-order",
        "6",
        "--checks",
        "nonsense",
        "--out",
        o,
    ]);
    assert_eq!(bad.status.code(), Some(2));
    let missing = dir.path().join("no/such/dir/r.csv");
    let io = lab(&[
        "verify",
        "--max-order",
        "4",
        "--out",
        missing.to_str().unwrap(),
    ]);
    assert_eq!(io.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&io.stderr).contains("no/such/dir"));
    assert!(!missing.exists());
}

#[test]
fn verify_reads_config_file_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.conf");
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    std::fs::write(
        &cfg,
        format!(
            "# small sweep\nmax_order = 14\nsamples = 3\nseed = 5\nexhaustive_order = 8\nout = {}\n",
            a.display()
        ),
    )
    .unwrap();
    let c = cfg.to_str().unwrap();
    stdout(&["verify", "--config", c]);
    stdout(&["verify", "--config", c, "--out", b.to_str().unwrap()]);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let other = dir.path().join("c.csv");
    stdout(&[
        "verify",
        "--config",
        c,
        "--seed",
        "6",
        "--out",
        other.to_str().unwrap(),
    ]);
    assert_ne!(std::fs::read(&a).unwrap(), std::fs::read(&other).unwrap());
}
