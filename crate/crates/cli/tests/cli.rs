use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let Output { status, stdout, stderr } =
        Command::new(env!("CARGO_BIN_EXE_fupdate")).args(args).output().unwrap();
    (
        status.code().unwrap(),
        String::from_utf8(stdout).unwrap(),
        String::from_utf8(stderr).unwrap(),
    )
}

fn value<'a>(out: &'a str, key: &str) -> &'a str {
    let prefix = format!("{key}: ");
    out.lines().find_map(|l| l.strip_prefix(prefix.as_str())).unwrap_or_else(|| panic!("no {key} in {out}"))
}

#[test]
fn validate_example1() {
    for enc in ["example1_S.mat", "example1_H.mat"] {
        let (code, out, _) = run(&["validate", "--problem", &fixture("example1.toml"), "--encoder", &fixture(enc)]);
        assert_eq!(code, 0);
        assert_eq!(value(&out, "verdict"), "valid, l=4");
    }
}

#[test]
fn validate_reports_witness() {
    let dir = tempfile::tempdir().unwrap();
    let s = dir.path().join("bad.mat");
    fs::write(&s, "2 5 2\n1 0 0 0 0\n0 1 0 0 0\n").unwrap();
    let (code, out, _) = run(&["validate", "--problem", &fixture("example1.toml"), "--encoder", s.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(value(&out, "verdict"), "invalid, l=2");
    assert_eq!(value(&out, "witness").split(' ').count(), 8);
    assert_eq!(value(&out, "syndrome").split(' ').count(), 5);
}

#[test]
fn bounds_example3() {
    let (code, out, _) = run(&["bounds", "--problem", &fixture("example3_gf2.toml")]);
    assert_eq!(code, 0);
    assert_eq!((value(&out, "lower"), value(&out, "upper")), ("3", "3"));
    assert_eq!(value(&out, "eta"), "2");
    assert_eq!(value(&out, "saving_possible"), "true");
}

#[test]
fn construct_companion_writes_example5_matrices() {
    let dir = tempfile::tempdir().unwrap();
    let s = dir.path().join("S.mat");
    let h = dir.path().join("H.mat");
    let (code, out, _) = run(&[
        "construct",
        "--problem",
        &fixture("example5.toml"),
        "--method",
        "companion",
        "--s-out",
        s.to_str().unwrap(),
        "--h-out",
        h.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(value(&out, "l"), "12");
    assert_eq!(fs::read(&s).unwrap(), fs::read(fixture("example5_S.mat")).unwrap());
    let (code, out, _) = run(&["validate", "--problem", &fixture("example5.toml"), "--encoder", h.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(value(&out, "verdict"), "valid, l=12");
}

#[test]
fn construct_subspace_with_target() {
    let (code, out, _) = run(&[
        "construct",
        "--problem",
        &fixture("example4.toml"),
        "--method",
        "subspace",
        "--target-l",
        "6",
    ]);
    assert_eq!(code, 0);
    assert_eq!(value(&out, "method"), "subspace");
    let text = out.split("S:\n").nth(1).unwrap();
    let want = fs::read_to_string(fixture("example4_S.mat")).unwrap();
    assert!(text.starts_with(&want));
}

#[test]
fn optimal_and_budget_exit_codes() {
    let (code, out, _) = run(&["optimal", "--problem", &fixture("example3_gf4.toml")]);
    assert_eq!(code, 0);
    assert_eq!((value(&out, "l_opt"), value(&out, "certified")), ("2", "true"));

    let (code, _, err) = run(&["--budget", "10", "bounds", "--problem", &fixture("example1.toml")]);
    assert_eq!(code, 3);
    assert!(err.contains("budget"));
}

#[test]
fn decode_round_trip() {
    // x = 0, e = e_2: stale A·x = 0 and the codeword is H·e_2.
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("c.vec");
    let ax = dir.path().join("ax.vec");
    fs::write(&c, "1 4 2\n0 0 0 0\n").unwrap();
    fs::write(&ax, "1 5 2\n0 0 0 0 0\n").unwrap();
    let args = |c: &str| {
        run(&[
            "decode",
            "--problem",
            &fixture("example1.toml"),
            "--encoder",
            &fixture("example1_S.mat"),
            "--codeword",
            c,
            "--stale",
            ax.to_str().unwrap(),
        ])
    };
    let (code, out, _) = args(c.to_str().unwrap());
    assert_eq!((code, value(&out, "updated")), (0, "0 0 0 0 0"));
    // H·e_3 = column 3 of H = (0 1 0 0); A·e_3 = (0 1 0 1 1).
    fs::write(&c, "1 4 2\n0 1 0 0\n").unwrap();
    let (code, out, _) = args(c.to_str().unwrap());
    assert_eq!((code, value(&out, "updated")), (0, "0 1 0 1 1"));
}

#[test]
fn simulate_valid_and_invalid() {
    let (code, out, _) = run(&[
        "simulate",
        "--problem",
        &fixture("example1.toml"),
        "--encoder",
        &fixture("example1_S.mat"),
        "--trials",
        "300",
        "--seed",
        "5",
    ]);
    assert_eq!(code, 0);
    assert_eq!((value(&out, "trials"), value(&out, "failures")), ("300", "0"));

    let dir = tempfile::tempdir().unwrap();
    let s = dir.path().join("bad.mat");
    fs::write(&s, "2 4 2\n1 0 0 1\n0 1 0 1\n").unwrap();
    let (code, out, _) = run(&[
        "simulate",
        "--problem",
        &fixture("example3_gf2.toml"),
        "--encoder",
        s.to_str().unwrap(),
        "--exhaustive",
    ]);
    assert_eq!(code, 1);
    assert_ne!(value(&out, "failures"), "0");
    value(&out, "first_failure_outcome");
}

#[test]
fn fic_export() {
    let (code, out, _) = run(&["fic-export", "--problem", &fixture("example1.toml")]);
    assert_eq!(code, 0);
    assert!(out.contains("users = 28"));
    assert_eq!(out.matches("[[user]]").count(), 28);
}

#[test]
fn covering_radius() {
    let (code, out, _) = run(&["covering-radius", "--matrix", &fixture("example1_H.mat"), "--role", "parity"]);
    assert_eq!(code, 0);
    value(&out, "covering_radius");
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("rep.mat");
    fs::write(&g, "1 3 2\n1 1 1\n").unwrap();
    let (code, out, _) = run(&["covering-radius", "--matrix", g.to_str().unwrap(), "--role", "generator"]);
    assert_eq!((code, value(&out, "covering_radius")), (0, "1"));
}

#[test]
fn parse_and_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    fs::write(&bad, "epsilon = 1\nA = [[1, 1], [1, 1]]\n[field]\np = 2\nk = 1\nmodulus = [0, 1]\n").unwrap();
    let (code, _, err) = run(&["bounds", "--problem", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("rank"));
    let (code, _, _) = run(&["bounds", "--problem", "/nonexistent.toml"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["construct", "--problem", &fixture("example1.toml"), "--method", "magic"]);
    assert_eq!(code, 2);
    let (code, _, _) =
        run(&["validate", "--problem", &fixture("example1.toml"), "--encoder", &fixture("example4_S.mat")]);
    assert_eq!(code, 2);
}
