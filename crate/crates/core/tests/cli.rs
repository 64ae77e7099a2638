use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const BIN: &str = env!("CARGO_BIN_EXE_polyring");

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn polyring(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_string_lossy().into_owned()
}

#[test]
fn ring_lists_invariants() {
    let o = polyring(&["ring", "--a", "2", "--b", "7", "--m-max", "16", "--n-max", "8"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("(8,4) I=2 J=2"), "{text}");
    assert!(text.contains("(15,7) I=4 J=18"), "{text}");
    assert!(!text.contains("(4,"), "{text}");
}

#[test]
fn ring_reports_empty_image() {
    let o = polyring(&["ring", "--a", "4", "--b", "8", "--m-max", "64", "--n-max", "64"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains(" I="), "{}", stdout(&o));
}

#[test]
fn params_lists_classes() {
    let o = polyring(&["params", "--m", "7", "--n", "3", "--b-max", "22"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for class in ["(5,6)", "(9,18)", "(11,22)"] {
        assert!(text.contains(class), "{class} missing from {text}");
    }
}

#[test]
fn decrypt_golden_sum_ciphertext() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "plain.txt");
    let report = path(&dir, "report.txt");
    let key = golden("sum_example.prk");
    let input = golden("sum_example.prc");
    let o = polyring(&[
        "decrypt", "--mode", "sum", "--key", key.to_str().unwrap(), "--in", input.to_str().unwrap(),
        "--out", &out, "--report", &report,
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(fs::read_to_string(&out).unwrap(), "15\n18\n43\n");
    let report = fs::read_to_string(&report).unwrap();
    assert!(report.contains("entry 0 OK a=5 b=7 m=15 n=13 I=10 J=174386160"), "{report}");
}

#[test]
fn decrypt_golden_mult_ciphertext() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "plain.txt");
    let key = golden("mult_example.prk");
    let input = golden("mult_example.prc");
    let o = polyring(&["decrypt", "--mode", "mult", "--key", key.to_str().unwrap(), "--in", input.to_str().unwrap(), "--out", &out]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(fs::read_to_string(&out).unwrap(), "11\n27\n17\n7\n28\n");
}

#[test]
fn tampered_check_bit_exits_5() {
    let dir = TempDir::new().unwrap();
    let bytes = fs::read_to_string(golden("sum_example.prc")).unwrap();
    // entry 1 really has n = 5; 5^4 - 5 = 620 is not a multiple of 17
    let tampered = bytes.replacen("\"check_arity\":5}", "\"check_arity\":4}", 1);
    assert_ne!(tampered, bytes);
    let input = path(&dir, "bad.prc");
    fs::write(&input, tampered).unwrap();
    let key = golden("sum_example.prk");
    let o = polyring(&["decrypt", "--mode", "sum", "--key", key.to_str().unwrap(), "--in", &input, "--out", &path(&dir, "p")]);
    assert_eq!(o.status.code(), Some(5));
    assert!(stderr(&o).contains("entry 1"), "{}", stderr(&o));
    assert!(!dir.path().join("p").exists());
}

#[test]
fn unsolvable_entry_exits_3() {
    let dir = TempDir::new().unwrap();
    let input = path(&dir, "junk.prc");
    fs::write(&input, r#"{"entries":[{"amplitudes":["1","1","1"],"check_arity":3}],"mode":"sum","version":1}"#).unwrap();
    let key = golden("sum_example.prk");
    let o = polyring(&["decrypt", "--mode", "sum", "--key", key.to_str().unwrap(), "--in", &input, "--out", &path(&dir, "p")]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

#[test]
fn malformed_inputs_exit_2() {
    let dir = TempDir::new().unwrap();
    let key = golden("sum_example.prk");
    let cases = [
        "not json",
        r#"{"entries":[],"mode":"sum","version":2}"#,
        r#"{"entries":[{"amplitudes":["007","1","1"],"check_arity":3}],"mode":"sum","version":1}"#,
        r#"{"entries":[],"extra":1,"mode":"sum","version":1}"#,
    ];
    for (i, case) in cases.iter().enumerate() {
        let input = path(&dir, &format!("c{i}.prc"));
        fs::write(&input, case).unwrap();
        let o = polyring(&["decrypt", "--mode", "sum", "--key", key.to_str().unwrap(), "--in", &input, "--out", &path(&dir, "p")]);
        assert_eq!(o.status.code(), Some(2), "case {i}: {}", stderr(&o));
    }
    // a mult key where a sum key is expected
    let mult_key = golden("mult_example.prk");
    let o = polyring(&[
        "decrypt", "--mode", "sum", "--key", mult_key.to_str().unwrap(), "--in", golden("sum_example.prc").to_str().unwrap(),
        "--out", &path(&dir, "p"),
    ]);
    assert_ne!(o.status.code(), Some(0));
    assert_eq!(polyring(&["ring", "--a", "x", "--b", "7"]).status.code(), Some(2));
}

fn round_trip(mode: &str, text: bool, threads: Option<&str>) -> (Vec<u8>, Vec<u8>) {
    let dir = TempDir::new().unwrap();
    let (key, rings, cipher, back) = (path(&dir, "k.prk"), path(&dir, "r.prr"), path(&dir, "c.prc"), path(&dir, "back"));
    let plain = path(&dir, "plain");
    if text {
        fs::write(&plain, "polyadic!").unwrap();
    } else {
        fs::write(&plain, "15\n18\n43\n8\n").unwrap();
    }
    let flag: &[&str] = if text { &["--text"] } else { &[] };
    let run = |args: Vec<&str>| {
        let mut cmd = Command::new(BIN);
        cmd.args(&args);
        if let Some(t) = threads {
            cmd.env("POLYRING_THREADS", t);
        }
        let o = cmd.output().unwrap();
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
    };
    run(vec!["keygen", "--mode", mode, "--seed", "11", "--out", &key]);
    run([vec!["rings", "--mode", mode, "--plaintext", &plain, "--key", &key, "--seed", "3", "--out", &rings], flag.to_vec()].concat());
    run([vec!["encrypt", "--mode", mode, "--key", &key, "--rings", &rings, "--in", &plain, "--out", &cipher], flag.to_vec()].concat());
    run([vec!["decrypt", "--mode", mode, "--key", &key, "--in", &cipher, "--out", &back], flag.to_vec()].concat());
    assert_eq!(fs::read(&back).unwrap(), fs::read(&plain).unwrap(), "{mode} text={text}");
    (fs::read(&key).unwrap(), fs::read(&cipher).unwrap())
}

#[test]
fn sum_round_trip_is_deterministic() {
    let first = round_trip("sum", false, None);
    assert_eq!(round_trip("sum", false, Some("1")), first);
}

#[test]
fn mult_round_trip_is_deterministic() {
    let first = round_trip("mult", false, None);
    assert_eq!(round_trip("mult", false, Some("2")), first);
}

#[test]
fn text_mode_round_trips() {
    round_trip("sum", true, None);
    round_trip("mult", true, None);
}

#[test]
fn signal_writes_exact_samples() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "s.csv");
    let o = polyring(&["signal", "--species", "triangular", "--amplitude", "5", "--rate", "4", "--duration", "1", "--out", &out]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(fs::read_to_string(&out).unwrap(), "time,value\n0,0\n1/4,5\n1/2,0\n3/4,-5\n");
    let o = polyring(&["signal", "--species", "sine", "--amplitude", "5", "--rate", "1", "--duration", "1", "--out", &out]);
    assert_eq!(o.status.code(), Some(1));
    let o = polyring(&["signal", "--species", "sine", "--amplitude", "5", "--rate", "8", "--duration", "1", "--out", &out]);
    assert_eq!(o.status.code(), Some(1));
}
