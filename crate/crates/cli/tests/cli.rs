use std::path::Path;
use std::process::{Command, Output};

fn irratio(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_irratio"))
        .args(args)
        .output()
        .expect("binary runs")
}

/// Runs a whitespace-separated command line.
fn run(line: &str) -> Output {
    irratio(&line.split_whitespace().collect::<Vec<_>>())
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn gen_to(path: &Path, args: &[&str]) -> Output {
    let mut all = vec!["gen"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--out", path.to_str().unwrap()]);
    irratio(&all)
}

fn edit(path: &Path, f: impl FnOnce(&mut serde_json::Value)) {
    let mut v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    f(&mut v);
    std::fs::write(path, serde_json::to_string_pretty(&v).unwrap()).unwrap();
}

#[test]
fn gen_then_check_over_the_grid() {
    let dir = tempfile::tempdir().unwrap();
    for n in 2..=4usize {
        for r in 1..=(1usize << n) - 2 {
            for d in [n + 2, n + 3] {
                let path = dir.path().join(format!("w-{n}-{r}-{d}.json"));
                let (n, r, d) = (n.to_string(), r.to_string(), d.to_string());
                let out = gen_to(&path, &["--n", &n, "--r", &r, "--d", &d, "--samples", "40"]);
                assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
                let out = irratio(&["check", path.to_str().unwrap()]);
                assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
            }
        }
    }
}

#[test]
fn output_is_deterministic() {
    let a = irratio(&["gen", "--n", "3", "--r", "4", "--d", "6"]);
    let b = irratio(&["gen", "--n", "3", "--r", "4", "--d", "6"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let c = irratio(&["gen", "--n", "3", "--r", "4", "--d", "6", "--seed", "7"]);
    assert_ne!(a.stdout, c.stdout);
    let v: serde_json::Value = serde_json::from_slice(&c.stdout).unwrap();
    assert_eq!(v["oracle"]["seed"], 7);
}

#[test]
fn variants_generate() {
    for line in [
        "gen --double-cover --n 2 --r 2 --d 6",
        "gen --conic --dim 4",
        "gen --conic --n 3",
        "gen --n 2 --r 2 --d 4 --g-variant finite-field --p 7",
        "gen --n 2 --r 1 --d 5 --g-variant integral --p0 3",
    ] {
        let out = run(line);
        assert_eq!(
            code(&out),
            0,
            "{line}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let custom_h = irratio(&[
        "gen",
        "--n",
        "2",
        "--r",
        "1",
        "--d",
        "4",
        "--h",
        "x0 + x1 + x2",
    ]);
    assert_eq!(code(&custom_h), 0);
}

#[test]
fn infeasible_parameters_are_usage_errors() {
    let out = irratio(&["gen", "--n", "2", "--r", "3", "--d", "4"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("r ≤ 2^n − 2 violated"));
    let out = irratio(&["gen", "--n", "3", "--r", "1", "--d", "4"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("d ≥ n + 2 violated"));
    assert_eq!(code(&irratio(&["gen", "--n", "2", "--r", "1"])), 1);
    let missing_p = run("gen --g-variant finite-field --n 2 --r 2 --d 4");
    assert_eq!(code(&missing_p), 1);
    assert_eq!(code(&irratio(&["frobnicate"])), 1);
    assert_eq!(code(&irratio(&["--help"])), 0);
}

#[test]
fn check_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.json");
    assert_eq!(
        code(&gen_to(&path, &["--n", "2", "--r", "2", "--d", "6"])),
        0
    );
    let text = std::fs::read_to_string(&path).unwrap();

    let mutated = dir.path().join("mutated.json");
    std::fs::write(&mutated, &text).unwrap();
    edit(&mutated, |v| {
        let e1 = v["polynomials"]["e"][1].as_str().unwrap().to_string();
        v["polynomials"]["e"][1] = format!("x0*{e1}").into();
    });
    let out = irratio(&["check", mutated.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stdout).contains("failed: q_similar_to_e_form"));

    let tampered = dir.path().join("tampered.json");
    std::fs::write(&tampered, &text).unwrap();
    edit(&tampered, |v| v["oracle"]["accepted"] = 199.into());
    assert_eq!(code(&irratio(&["check", tampered.to_str().unwrap()])), 3);

    let truncated = dir.path().join("truncated.json");
    std::fs::write(&truncated, &text[..text.len() / 2]).unwrap();
    assert_eq!(code(&irratio(&["check", truncated.to_str().unwrap()])), 1);

    let missing = dir.path().join("missing.json");
    assert_eq!(code(&irratio(&["check", missing.to_str().unwrap()])), 1);
}

#[test]
fn bounds_command() {
    let out = irratio(&["bounds", "--dim", "5"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        String::from_utf8_lossy(&out.stdout),
        "n=3 r=2 min-degree 5\n"
    );
    let out = irratio(&["bounds", "--max-dim", "18", "--rows"]);
    assert_eq!(
        String::from_utf8_lossy(&out.stdout),
        "2 4 4\n3 9 5\n4 18 6\n"
    );
    assert_eq!(code(&irratio(&["bounds", "--dim", "2"])), 1);
    assert_eq!(code(&irratio(&["bounds"])), 1);
}

#[test]
fn residue_command() {
    let out = irratio(&["residue", "--alpha", "4"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.ends_with("along x2: (x0*x1)\nNONZERO\n"), "{text}");
    let out = run("residue --n 2 --entry x1 --entry x2 --along 2");
    assert_eq!(String::from_utf8_lossy(&out.stdout), "(x0*x1)\n");
    let out = irratio(&["residue", "--n", "2", "--entry", "b", "--along", "1"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn oracle_command() {
    let out = run("oracle --n 2 --r 2 --d 6 --samples 50");
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["accepted"], 50);
    assert_eq!(v["failures"], 0);
}
