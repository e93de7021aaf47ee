use std::path::Path;
use std::process::{Command, Output};

use garside_core::syntax::parse_word;
use garside_core::{BraidWord, Kind, Structure};

fn garside(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_garside"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn rational_form_of_the_worked_example() {
    let out = garside(&[
        "nf",
        "--structure",
        "artin",
        "--strands",
        "3",
        "--form",
        "rational",
        "s2 s2 s1^-1 s1^-1",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "neg (s1 s2)(s2 s1)\npos (s2 s1)(s1 s2)\n");
}

#[test]
fn lengths_and_oracle() {
    let out = garside(&[
        "len",
        "--metric",
        "rational-bkl",
        "--strands",
        "3",
        "s2 s2 s1^-1 s1^-1",
    ]);
    assert_eq!((code(&out), stdout(&out).trim()), (0, "4"));
    let out = garside(&[
        "len",
        "--metric",
        "rational-artin",
        "--strands",
        "3",
        "s2 s2 s1^-1 s1^-1",
    ]);
    assert_eq!(stdout(&out).trim(), "8");
    let out = garside(&[
        "oracle",
        "--structure",
        "artin",
        "--strands",
        "3",
        "--max",
        "6",
        "",
    ]);
    assert_eq!((code(&out), stdout(&out).trim()), (0, "0"));
    let out = garside(&[
        "oracle",
        "--structure",
        "bkl",
        "--strands",
        "3",
        "--max",
        "6",
        "s2 s2 s1^-1 s1^-1",
    ]);
    assert_eq!((code(&out), stdout(&out).trim()), (0, "4"));
}

#[test]
fn exit_codes() {
    let cases: &[(&[&str], i32)] = &[
        (&["nf", "--strands", "3", "s1"], 0),
        (&["nf", "--strands", "4", "s5"], 2),
        (&["nf", "--structure", "bkl", "--strands", "3", "a(1,3)"], 2),
        (&["nf", "--strands", "3", "t1"], 2),
        (&["nf", "--strands", "1", ""], 2),
        (&["len", "--metric", "shortest", "--strands", "3", "s1"], 2),
        (&["oracle", "--strands", "3", "--max", "2", "s1 s1 s1"], 1),
        (&["oracle", "--strands", "3", "--max", "11", "s1"], 2),
        (&["frobnicate"], 2),
        (&[], 2),
    ];
    for (args, expected) in cases {
        assert_eq!(code(&garside(args)), *expected, "{args:?}");
    }
}

#[test]
fn printed_forms_parse_back_to_the_same_element() {
    let words = ["s2 s2 s1^-1 s1^-1", "s1^-1", "s3 s1 s2^-1 s3^-1 s1", ""];
    for kind in ["artin", "bkl"] {
        let k: Kind = kind.parse().unwrap();
        let st = Structure::new(k, 4).unwrap();
        for w in words {
            let input = parse_word(w, Kind::Artin, 4).unwrap().to_kind(k);
            let text = input.to_string();
            let out = garside(&["nf", "--structure", kind, "--strands", "4", &text]);
            assert_eq!(code(&out), 0);
            let printed = stdout(&out);
            let back = parse_word(printed.trim(), k, 4).unwrap();
            assert!(
                st.equals(&back, &input).unwrap(),
                "{kind}: {w} -> {printed}"
            );

            let out = garside(&[
                "nf",
                "--structure",
                kind,
                "--strands",
                "4",
                "--form",
                "rational",
                &text,
            ]);
            let printed = stdout(&out);
            let mut lines = printed.lines();
            let neg = lines.next().unwrap().strip_prefix("neg").unwrap().trim();
            let pos = lines.next().unwrap().strip_prefix("pos").unwrap().trim();
            let neg = parse_word(neg, k, 4).unwrap();
            let pos = parse_word(pos, k, 4).unwrap();
            let whole = neg.inverse().concat(&pos).unwrap();
            assert!(st.equals(&whole, &input).unwrap());
        }
    }
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn solve_conjugacy_and_report_unsolved() {
    let dir = tempfile::tempdir().unwrap();
    let eq = write(
        dir.path(),
        "conj.json",
        r#"{"template": ["x1","p1","x1^-1"], "generators": {"x1": ["s1 s1", "s2 s2"]}, "parameters": {"p1": "s2"}, "target": "s1 s1 s2 s1^-1 s1^-1"}"#,
    );
    let out = garside(&[
        "solve",
        &eq,
        "-n",
        "1",
        "-m",
        "8",
        "--metric",
        "rational-artin",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let value = text.lines().find_map(|l| l.strip_prefix("x1 = ")).unwrap();
    let x = parse_word(value, Kind::Artin, 3).unwrap();
    let a = BraidWord::artin(3, &[2]).unwrap();
    let b = parse_word("s1 s1 s2 s1^-1 s1^-1", Kind::Artin, 3).unwrap();
    let lhs = x.concat(&a).unwrap().concat(&x.inverse()).unwrap();
    assert!(Structure::artin(3).equals(&lhs, &b).unwrap());

    let hopeless = write(
        dir.path(),
        "hopeless.json",
        r#"{"template": ["x1"], "generators": {"x1": ["s1 s1"]}, "target": "s2"}"#,
    );
    let out = garside(&[
        "solve",
        &hopeless,
        "-n",
        "2",
        "--max-length",
        "3",
        "-m",
        "4",
    ]);
    assert_eq!(code(&out), 1);

    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"template": ["x1","x1^-1"], "generators": {"x1": ["s1"]}, "target": ""}"#,
    );
    assert_eq!(code(&garside(&["solve", &bad, "-n", "1"])), 2);
    assert_eq!(
        code(&garside(&["solve", "/nonexistent.json", "-n", "1"])),
        2
    );
}

#[test]
fn solve_timeout_is_reported_as_no_solution() {
    let dir = tempfile::tempdir().unwrap();
    let gens: Vec<String> = (0..12)
        .map(|i| {
            format!(
                "\"s{} s{} s{}^-1 s{}\"",
                1 + i % 15,
                1 + (i * 7) % 15,
                1 + (i * 3) % 15,
                1 + (i * 5) % 15
            )
        })
        .collect();
    let eq = write(
        dir.path(),
        "big.json",
        &format!(
            r#"{{"template": ["x1"], "generators": {{"x1": [{}]}}, "target": "s1 s2 s3 s4 s5 s6 s7 s8 s9 s10 s11 s12 s13 s14 s15"}}"#,
            gens.join(",")
        ),
    );
    let out = garside(&["solve", &eq, "-n", "12", "-m", "4096", "--timeout", "0.2"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("no solution within 0.2 s"));
}

#[test]
fn experiment_and_compare_write_files() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "cfg.json",
        r#"{"ns": 6, "wl": 6, "ng": 4, "sl": 4, "samples": 20, "metric": "rational-bkl", "seed": 3}"#,
    );
    let csv = dir.path().join("res.csv");
    let svg = dir.path().join("res.svg");
    let out = garside(&[
        "experiment",
        &cfg,
        "--csv",
        csv.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(
        text.lines().next().unwrap(),
        "position,count,probability,cumulative"
    );
    assert_eq!(text.lines().count(), 2 * 4 + 1);
    assert!(std::fs::read_to_string(&svg).unwrap().contains("<polyline"));

    let cmp = dir.path().join("cmp.csv");
    let out = garside(&[
        "compare",
        &cfg,
        "--csv",
        cmp.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(dir.path().join("cmp-rational-bkl.csv").exists());
    assert!(dir.path().join("cmp-rational-artin.csv").exists());
    assert_eq!(
        std::fs::read_to_string(&svg)
            .unwrap()
            .matches("<polyline")
            .count(),
        2
    );

    let again = dir.path().join("again.csv");
    garside(&["experiment", &cfg, "--csv", again.to_str().unwrap()]);
    assert_eq!(std::fs::read(&csv).unwrap(), std::fs::read(&again).unwrap());

    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"ns": 1, "wl": 6, "ng": 4, "sl": 4, "samples": 20, "metric": "rational-bkl", "seed": 3}"#,
    );
    assert_eq!(
        code(&garside(&[
            "experiment",
            &bad,
            "--csv",
            csv.to_str().unwrap()
        ])),
        2
    );
}
