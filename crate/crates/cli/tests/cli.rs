use std::io::Write;
use std::process::{Command, Output, Stdio};

use ascent_dyck::{enumerate_021_avoiding, enumerate_dyck_paths};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ascent-dyck"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(format!(
        "{}/tests/golden/{name}",
        env!("CARGO_MANIFEST_DIR")
    ))
    .unwrap()
}

#[test]
fn goldens() {
    let cases: [(&[&str], &str); 7] = [
        (&["map", "0,1,0,1,2,2,0,3", "--trace"], "map_trace.txt"),
        (&["unmap", "UDUUUDUDUUDDUDDD", "--trace"], "unmap_trace.txt"),
        (&["render", "UD"], "render_ud.txt"),
        (&["render", "UUDD"], "render_uudd.txt"),
        (&["render", "UDUUDD"], "render_uduudd.txt"),
        (&["stats", "--seq", "0,0,0,0"], "stats_seq_0000.txt"),
        (
            &["enumerate", "3", "--side", "pairs"],
            "enumerate_3_pairs.txt",
        ),
    ];
    for (args, file) in cases {
        let o = run(args);
        assert!(o.status.success(), "{args:?}");
        assert_eq!(stdout(&o), golden(file), "{args:?}");
    }
}

#[test]
fn unmap_of_map_is_identity_through_stdin() {
    for n in 1..=8 {
        let seqs: Vec<String> = enumerate_021_avoiding(n)
            .unwrap()
            .map(|s| s.to_string())
            .collect();
        let mapped = run_stdin(&["map", "-"], &seqs.join("\n"));
        assert!(mapped.status.success());
        let back = run_stdin(&["unmap", "-"], &stdout(&mapped));
        assert!(back.status.success());
        let got: Vec<String> = stdout(&back).lines().map(String::from).collect();
        assert_eq!(got, seqs, "n = {n}");
    }
}

#[test]
fn enumerate_sides_agree_with_library() {
    let o = run(&["enumerate", "5", "--side", "path"]);
    let expected: Vec<String> = enumerate_dyck_paths(5)
        .unwrap()
        .map(|p| p.to_string())
        .collect();
    assert_eq!(stdout(&o).lines().collect::<Vec<_>>(), expected);
    assert_eq!(stdout(&run(&["enumerate", "6"])).lines().count(), 132);
    let stats = stdout(&run(&["enumerate", "4", "--side", "pairs", "--stats"]));
    for line in stats.lines() {
        let cols: Vec<&str> = line.split('\t').collect();
        assert_eq!(cols.len(), 4);
        assert_eq!(cols[2], cols[3], "{line}");
    }
}

#[test]
fn json_formats() {
    let o = run(&["map", "0,1,1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["sequence"], serde_json::json!([0, 1, 1]));
    assert_eq!(v["path"], "UUDUDD");
    let o = run(&["map", "0,1,0,1,2,2,0,3", "--trace", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let cases: Vec<u64> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["case"].as_u64().unwrap())
        .collect();
    assert_eq!(cases, [3, 1, 4, 4, 2, 1, 4]);
    assert_eq!(
        stdout(&run(&["map", "0,1,1", "--format", "paren"])).trim(),
        "(()())"
    );
    let o = run(&["verify", "4", "--json", "--checks", "counts,roundtrip"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["n"], 4);
}

#[test]
fn exit_codes() {
    let input_errors: [&[&str]; 9] = [
        &["map", "0,2"],
        &["map", "1"],
        &["map", "0,x"],
        &["unmap", "UUD"],
        &["unmap", "DU"],
        &["render", "UXD"],
        &["enumerate", "0"],
        &["verify", "13"],
        &["frobnicate"],
    ];
    for args in input_errors {
        let o = run(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    let o = run(&["map", "0,1,0,2,1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not 021-avoiding"));
    assert_eq!(
        run(&["verify", "13", "--extended", "--checks", "counts"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        run(&["verify", "5", "--checks", "nope"]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}

#[test]
fn stats_for_paths() {
    let o = run(&["stats", "--path", "UDUUUDUDUUDDUDDD"]);
    let s = stdout(&o);
    assert!(s.contains("valleys"));
    let seq = stdout(&run(&["stats", "--seq", "0,1,0,1,2,2,0,3"]));
    let values = |t: &str| {
        t.lines()
            .map(|l| l.split_whitespace().last().unwrap().to_string())
            .collect::<Vec<_>>()
    };
    assert_eq!(values(&s), values(&seq));
}
