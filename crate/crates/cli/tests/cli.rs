use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_composita"))
        .args(args)
        .env_remove("COMPOSITA_MAX_ORDER")
        .output()
        .expect("failed to start composita")
}

fn stdout_lines(args: &[&str]) -> Vec<String> {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(String::from)
        .collect()
}

#[test]
fn composita_expm1_matches_stirling_form() {
    let lines = stdout_lines(&["composita", "--series", "expm1", "--order", "5"]);
    assert_eq!(lines[0], "n,k,value");
    assert_eq!(lines.len(), 1 + 15);
    assert!(lines.contains(&"4,2,7/12".to_string()));
    assert!(lines.contains(&"5,3,5/4".to_string()));
}

#[test]
fn composita_identity_is_diagonal() {
    let lines = stdout_lines(&["composita", "--series", "x", "--order", "3"]);
    assert_eq!(
        lines,
        [
            "n,k,value",
            "1,1,1",
            "2,1,0",
            "2,2,1",
            "3,1,0",
            "3,2,0",
            "3,3,1"
        ]
    );
}

#[test]
fn composita_poly3_matches_closed_form() {
    use composita_core::composita::poly3_composita;
    let lines = stdout_lines(&["composita", "--series", "poly3", "--order", "8"]);
    for line in &lines[1..] {
        let parts: Vec<&str> = line.split(',').collect();
        let (n, k): (usize, usize) = (parts[0].parse().unwrap(), parts[1].parse().unwrap());
        assert_eq!(parts[2], poly3_composita(n, k).to_string(), "({n},{k})");
    }
}

#[test]
fn compose_examples() {
    assert_eq!(
        stdout_lines(&["compose", "--outer", "exp", "--inner", "expm1", "--order", "7"]),
        ["1", "1", "2", "5", "15", "52", "203", "877"]
    );
    // 1/(1 − sin x) = Σ E(n+1) x^n/n!
    assert_eq!(
        stdout_lines(&["compose", "--outer", "geom", "--inner", "sin", "--order", "8"]),
        ["1", "1", "2", "5", "16", "61", "272", "1385", "7936"]
    );
    assert_eq!(
        stdout_lines(&["compose", "--outer", "exp", "--inner", "artanh", "--order", "9"]),
        ["1", "1", "1", "3", "9", "45", "225", "1575", "11025", "99225"]
    );
}

#[test]
fn compose_rejects_inner_with_constant_term() {
    let out = run(&[
        "compose", "--outer", "exp", "--inner", "exp", "--order", "4",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("constant term"));
}

#[test]
fn scan_touchard_witnesses_only_composites() {
    let lines = stdout_lines(&[
        "scan",
        "--family",
        "touchard_k0",
        "--from",
        "2",
        "--to",
        "30",
    ]);
    let mut certified = Vec::new();
    for line in &lines {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        if let Some(c) = v.get("certificate") {
            certified.push(c["n"].as_u64().unwrap() as usize);
        } else if let Some(s) = v.get("summary") {
            assert_eq!(s["reports"], 29);
            assert_eq!(s["witnesses"].as_u64().unwrap() as usize, certified.len());
        }
    }
    assert!(!certified.is_empty());
    assert!(certified
        .iter()
        .all(|&n| !composita_core::congruence::is_prime(n)));
}

#[test]
fn scan_poly3_fraction_list() {
    let lines = stdout_lines(&["scan", "--family", "poly3", "--from", "3", "--to", "13"]);
    let reports: Vec<serde_json::Value> = lines
        .iter()
        .map(|l| serde_json::from_str(l).unwrap())
        .filter(|v: &serde_json::Value| v.get("n").is_some())
        .collect();
    let values: Vec<&str> = reports
        .iter()
        .map(|r| r["value"].as_str().unwrap())
        .collect();
    assert_eq!(
        values,
        [
            "1", "13/4", "9", "55/2", "93", "2779/8", "12643/9", "12227/2", "28425", "560197/4",
            "728283"
        ]
    );
    let witnesses: Vec<u64> = reports
        .iter()
        .filter(|r| r["verdict"] == "composite_witness")
        .map(|r| r["n"].as_u64().unwrap())
        .collect();
    assert_eq!(witnesses, [4, 6, 8, 9, 10, 12]);
}

#[test]
fn scan_single_point_range() {
    let lines = stdout_lines(&["scan", "--family", "euler", "--from", "2", "--to", "2"]);
    assert_eq!(lines.len(), 2);
    assert!(lines[0].contains(r#""n":2"#));
    assert!(lines[1].contains(r#""reports":1"#));
}

#[test]
fn scan_with_user_supplied_egf() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bell.txt");
    // e(n) = 1 for n ≥ 1, i.e. e^x − 1
    std::fs::write(&path, "1\n".repeat(12)).unwrap();
    let p = path.to_str().unwrap();
    let via_file = stdout_lines(&[
        "scan",
        "--family",
        "corollary1",
        "--inner",
        p,
        "--from",
        "3",
        "--to",
        "12",
        "--format",
        "csv",
    ]);
    let builtin = stdout_lines(&[
        "scan", "--family", "expm1", "--from", "3", "--to", "12", "--format", "csv",
    ]);
    let strip = |l: &String| l.split_once(',').map(|x| x.1.to_string()).unwrap();
    assert_eq!(
        via_file.iter().map(strip).collect::<Vec<_>>(),
        builtin.iter().map(strip).collect::<Vec<_>>()
    );

    let out = run(&[
        "scan",
        "--family",
        "corollary1",
        "--inner",
        p,
        "--from",
        "3",
        "--to",
        "20",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn scan_family_argument_errors() {
    assert_eq!(
        run(&["scan", "--family", "corollary1", "--from", "3", "--to", "5"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["scan", "--family", "nope", "--from", "3", "--to", "5"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["scan", "--family", "euler", "--from", "9", "--to", "5"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&[
            "scan",
            "--family",
            "touchard_k0",
            "--from",
            "1",
            "--to",
            "5"
        ])
        .status
        .code(),
        Some(1)
    );
}

#[test]
fn seq_examples() {
    assert_eq!(
        stdout_lines(&["seq", "bell", "8"]),
        ["1", "1", "2", "5", "15", "52", "203", "877"]
    );
    assert_eq!(
        stdout_lines(&["seq", "euler_zigzag", "10"]),
        ["1", "1", "1", "2", "5", "16", "61", "272", "1385", "7936"]
    );
    assert_eq!(
        stdout_lines(&["seq", "a000246_style", "10"]),
        ["1", "1", "1", "3", "9", "45", "225", "1575", "11025", "99225"]
    );
    assert_eq!(
        stdout_lines(&["seq", "a001680_style", "9"]),
        ["1", "1", "2", "5", "14", "46", "166", "652", "2780"]
    );
    assert_eq!(
        stdout_lines(&["seq", "stirling2_row", "4"]),
        ["0", "1", "7", "6", "1"]
    );
    assert_eq!(
        stdout_lines(&["seq", "stirling1_row", "4"]),
        ["0", "6", "11", "6", "1"]
    );
    assert_eq!(run(&["seq", "fibonacci", "5"]).status.code(), Some(1));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["--no-such-flag"]).status.code(), Some(1));
    assert_eq!(
        run(&["composita", "--series", "x", "--order", "-3"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["composita", "--series", "nosuch", "--order", "3"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(run(&["--help"]).status.code(), Some(0));

    let capped = Command::new(env!("CARGO_BIN_EXE_composita"))
        .args([
            "scan",
            "--family",
            "touchard_k0",
            "--from",
            "2",
            "--to",
            "40",
        ])
        .env("COMPOSITA_MAX_ORDER", "30")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("30"));

    assert_eq!(
        run(&["compose", "--outer", "exp", "--inner", "sin", "--order", "5000"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn series_file_round_trip_and_output_flag() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("artanh.series");
    let p = path.to_str().unwrap();
    assert!(
        run(&["series", "--name", "artanh", "--order", "11", "--output", p])
            .status
            .success()
    );
    let written = std::fs::read_to_string(&path).unwrap();
    let parsed = composita_core::text::parse_series(&written).unwrap();
    assert_eq!(parsed, composita_core::Builtin::Artanh.series(11));

    let from_file = stdout_lines(&["compose", "--outer", "exp", "--inner", p, "--order", "11"]);
    let builtin = stdout_lines(&[
        "compose", "--outer", "exp", "--inner", "artanh", "--order", "11",
    ]);
    assert_eq!(from_file, builtin);
}

#[test]
fn output_is_deterministic() {
    let args = ["scan", "--family", "poly3", "--from", "1", "--to", "40"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = [
        "composita",
        "--series",
        "sin",
        "--order",
        "12",
        "--format",
        "jsonl",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}
