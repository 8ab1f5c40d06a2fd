use std::path::Path;
use std::process::{Command, Output};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

fn prdna(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prdna"))
        .args(args)
        .env_remove("PRDNA_SEED")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

#[test]
fn capacity_of_the_unit_menu() {
    let o = prdna(&["capacity", "--menu", "1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let line = stdout(&o).lines().next().unwrap().to_string();
    let value: f64 = line
        .strip_prefix("capacity_bits_per_time ")
        .unwrap()
        .parse()
        .unwrap();
    assert!((value - 3f64.log2()).abs() < 1e-8);

    let o = prdna(&["capacity", "--menu", "1,2", "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let expected = ((3.0 + 21f64.sqrt()) / 2.0).log2();
    assert!((v["capacity"].as_f64().unwrap() - expected).abs() < 1e-8);
}

#[test]
fn design_json_and_table() {
    let o = prdna(&[
        "design", "binomial", "--p", "0.5", "--delta", "0.02", "--N", "5", "--M", "10",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["t"], serde_json::json!([2.0, 6.0]));
    assert!(stderr(&o).contains("tau"));

    let dir = tempfile::tempdir().unwrap();
    let file = path(dir.path(), "d.json");
    let o = prdna(&[
        "design", "poisson", "--delta", "0.02", "--N", "3", "--ell", "4", "--out", &file,
    ]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(v["t"].as_array().unwrap().len(), 4);
    assert!(!stdout(&o).is_empty());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(prdna(&["capacity"]).status.code(), Some(2));
    assert_eq!(
        prdna(&["design", "binomial", "--p", "1.5", "--delta", "0.1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(prdna(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(prdna(&["--help"]).status.code(), Some(0));
}

#[test]
fn encode_decode_random_payloads() {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(64);
    for round in 0..3 {
        let bytes: [u8; 8] = rng.random();
        let input = path(dir.path(), &format!("in{round}"));
        std::fs::write(&input, bytes).unwrap();
        let strand = path(dir.path(), &format!("s{round}"));
        let o = prdna(&[
            "encode", "--menu", "1,2", "--input", &input, "--out", &strand, "--start", "T",
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
        assert!(stderr(&o).contains("encoded 64 bits"));

        let back = path(dir.path(), &format!("out{round}"));
        let o = prdna(&[
            "decode", "--menu", "1,2", "--input", &strand, "--out", &back,
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
        assert_eq!(std::fs::read(&back).unwrap(), bytes);

        let o = prdna(&["decode", "--menu", "1,2", "--input", &strand]);
        let hex: String = bytes.iter().map(|b| format!("{b:02x}")).collect();
        assert_eq!(stdout(&o).trim(), hex);
    }
}

#[test]
fn corrupted_strand_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let strand = path(dir.path(), "s");
    let o = prdna(&[
        "encode",
        "--menu",
        "1,2",
        "--hex",
        "0123456789abcdef",
        "--out",
        &strand,
    ]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&strand).unwrap();
    let flipped: String = text
        .lines()
        .map(|l| match l.split_once(' ') {
            Some((a, "1")) if !l.starts_with('#') => format!("{a} 2\n"),
            Some((a, "2")) if !l.starts_with('#') => format!("{a} 1\n"),
            _ => format!("{l}\n"),
        })
        .collect();
    std::fs::write(&strand, flipped).unwrap();
    let o = prdna(&["decode", "--menu", "1,2", "--input", &strand]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));

    std::fs::write(&strand, "not a strand\n").unwrap();
    assert_eq!(
        prdna(&["decode", "--menu", "1,2", "--input", &strand])
            .status
            .code(),
        Some(2)
    );
}

fn design_file(dir: &Path) -> String {
    let file = path(dir, "design.json");
    let o = prdna(&[
        "design", "binomial", "--p", "0.5", "--delta", "0.02", "--N", "5", "--out", &file,
        "--quiet",
    ]);
    assert!(o.status.success());
    file
}

#[test]
fn simulate_reports_and_reproduces_seeds() {
    let dir = tempfile::tempdir().unwrap();
    let design = design_file(dir.path());
    let args = [
        "simulate", "--design", &design, "--rounds", "60", "--trials", "8", "--jobs", "1",
    ];

    let o = prdna(&args);
    assert!(o.status.success(), "{}", stderr(&o));
    let seed: u64 = stderr(&o)
        .lines()
        .find_map(|l| l.strip_prefix("seed "))
        .unwrap()
        .parse()
        .unwrap();
    let first: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(first["seed"], seed);

    let run_env = |s: &str| {
        Command::new(env!("CARGO_BIN_EXE_prdna"))
            .args(args)
            .env("PRDNA_SEED", s)
            .output()
            .unwrap()
    };
    let a = run_env(&seed.to_string());
    assert!(!stderr(&a).contains("seed "));
    assert_eq!(serde_json::from_slice::<Value>(&a.stdout).unwrap(), first);
    let b = run_env("7");
    let c = run_env("7");
    assert_eq!(b.stdout, c.stdout);
    let report: Value = serde_json::from_slice(&b.stdout).unwrap();
    assert_eq!(report["trials"], 8);

    let trace = path(dir.path(), "trace.json");
    let mut with_trace = args.to_vec();
    with_trace.extend(["--seed", "7", "--trace", &trace]);
    assert!(prdna(&with_trace).status.success());
    let t: Value = serde_json::from_str(&std::fs::read_to_string(&trace).unwrap()).unwrap();
    assert_eq!(t["copies"].as_array().unwrap().len(), 5);
}

#[test]
fn rate_curve_csv() {
    let dir = tempfile::tempdir().unwrap();
    let lambda = path(dir.path(), "l.csv");
    let o = prdna(&[
        "rate-curve",
        "binomial",
        "--N",
        "5",
        "--range",
        "0.5:0.9:0.2",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = stdout(&o);
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), prdna::sim::CSV_HEADER);
    assert_eq!(lines.count(), 3);

    let o = prdna(&[
        "rate-curve",
        "poisson",
        "--values",
        "1,2,4",
        "--lambda1-out",
        &lambda,
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let table = std::fs::read_to_string(&lambda).unwrap();
    let values: Vec<f64> = table
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(values.len(), 3);
    assert!((values[0] - 100f64.ln()).abs() < 1e-7);
    assert!(values.windows(2).all(|w| w[0] > w[1]));

    assert_eq!(
        prdna(&["rate-curve", "binomial", "--lambda1-out", &lambda])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn json_files_feed_other_commands() {
    let dir = tempfile::tempdir().unwrap();
    let design = design_file(dir.path());
    let o = prdna(&["capacity", "--design", &design, "--json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let by_design: Value = serde_json::from_slice(&o.stdout).unwrap();
    let by_menu: Value =
        serde_json::from_slice(&prdna(&["capacity", "--menu", "2,6", "--json"]).stdout).unwrap();
    assert_eq!(by_design["capacity"], by_menu["capacity"]);

    let strand_json = path(dir.path(), "s.json");
    let o = prdna(&[
        "encode",
        "--design",
        &design,
        "--hex",
        "ff00",
        "--json",
        &strand_json,
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&strand_json).unwrap()).unwrap();
    assert_eq!(v["header"]["payload_bits"], 16);
    assert_eq!(v["header"]["ell"], 2);
}
