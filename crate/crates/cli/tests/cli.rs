use std::process::{Command, Output};

fn sce(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sce"))
        .args(args)
        .env_remove("SCE_SEED")
        .output()
        .expect("run sce")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn apply_reproduces_examples() {
    let o = sce(&[
        "apply",
        "--m",
        "5",
        "--k",
        "1",
        "--convention",
        "unital",
        "--poly",
        "x^5",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "160 a^2 - 32 b^2\n");
    let o = sce(&[
        "apply",
        "--m",
        "9",
        "--k",
        "2",
        "--convention",
        "unital",
        "--poly",
        "x^5",
    ]);
    assert_eq!(stdout(&o), "-1536\n");
}

#[test]
fn apply_defaults_to_half_convention() {
    let o = sce(&["apply", "--m", "5", "--k", "1", "--poly", "x^5"]);
    assert_eq!(stdout(&o), "80 a^2 - 16 b^2\n");
}

#[test]
fn apply_json_output() {
    let o = sce(&[
        "apply", "--m", "3", "--k", "0", "--poly", "x^2 e1", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    // ∂̄(x² e1) = -2α e1 for m = 3
    assert_eq!(v["terms"][0]["a"], 1);
    assert_eq!(v["terms"][0]["b"], 0);
    assert_eq!(v["terms"][0]["coef"]["1"], "-2");
}

#[test]
fn apply_flags_trivial_zero() {
    let o = sce(&["apply", "--m", "5", "--k", "3", "--poly", "x^9 + e12"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "0\n");
    assert!(stderr(&o).contains("trivially zero via prefactor"));
}

#[test]
fn repro_examples_table() {
    let o = sce(&["repro-examples"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("note: "));
    assert_eq!(
        &lines[1..],
        [
            "m=5 f=x^5",
            "  F_0 f = -20 a^4 + 40 a^2 b^2 - 4 b^4",
            "  F_1 f = 160 a^2 - 32 b^2",
            "  F_2 f = 0",
            "m=9 f=x^5",
            "  F_0 f = -40 a^4 + 80 a^2 b^2 - 8 b^4",
            "  F_1 f = 960 a^2 - 192 b^2",
            "  F_2 f = -1536",
            "  F_3 f = 0",
        ]
    );
}

#[test]
fn coeffs_line() {
    let o = sce(&["coeffs", "--k", "3"]);
    assert_eq!(stdout(&o), "a(3,1)=3 a(3,2)=-3 a(3,3)=1\n");
}

#[test]
fn identities_pass() {
    let o = sce(&["identities"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("130/130"));
}

#[test]
fn verify_exit_code_matches_failures() {
    let o = sce(&[
        "verify", "--m", "5", "--k", "1", "--trials", "3", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
    assert_eq!(v["seed"], 0);
}

#[test]
fn verify_seed_precedence() {
    let run = |args: &[&str], env: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_sce"));
        c.args(["verify", "--m", "3", "--k", "0", "--trials", "2"])
            .args(args);
        match env {
            Some(s) => c.env("SCE_SEED", s),
            None => c.env_remove("SCE_SEED"),
        };
        stdout(&c.output().unwrap())
    };
    assert!(run(&[], None).starts_with("seed=0 "));
    assert!(run(&[], Some("17")).starts_with("seed=17 "));
    assert!(run(&["--seed", "5"], Some("17")).starts_with("seed=5 "));
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        &[
            "verify", "--m", "7", "--k", "1", "--trials", "4", "--seed", "9",
        ][..],
        &["repro-examples"][..],
        &[
            "apply",
            "--m",
            "5",
            "--k",
            "0",
            "--poly",
            "x^3 (1/2 + e13) - e2 x",
        ][..],
    ] {
        let a = sce(args);
        let b = sce(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn invalid_flags_exit_2_and_name_the_flag() {
    let cases: [(&[&str], &str); 5] = [
        (&["apply", "--m", "4", "--k", "0", "--poly", "x"], "--m"),
        (&["apply", "--m", "5", "--k", "0", "--poly", "x^"], "--poly"),
        (&["verify", "--m", "5", "--k", "2"], "--k"),
        (
            &["verify", "--m", "5", "--k", "1", "--deg-max", "2"],
            "--deg-max",
        ),
        (
            &["apply", "--m", "3", "--k", "0", "--poly", "x e4"],
            "--poly",
        ),
    ];
    for (args, flag) in cases {
        let o = sce(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(stderr(&o).contains(flag), "{args:?}: {}", stderr(&o));
    }
    let o = Command::new(env!("CARGO_BIN_EXE_sce"))
        .args(["verify", "--m", "3", "--k", "0"])
        .env("SCE_SEED", "nope")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("SCE_SEED"));
}
