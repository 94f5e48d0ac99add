use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn thomschur(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thomschur"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

#[test]
fn compute_i22_json() {
    let o = thomschur(&["compute", "I22", "--r", "2", "--format", "json"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["r"], 2);
    assert_eq!(v["name"], "I22");
    let terms: Vec<(Value, String)> = v["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| {
            (
                t["partition"].clone(),
                t["coeff"].as_str().unwrap().to_string(),
            )
        })
        .collect();
    assert_eq!(
        terms,
        vec![
            (serde_json::json!([1, 3, 3]), "1".to_string()),
            (serde_json::json!([3, 4]), "3".to_string()),
        ]
    );
}

#[test]
fn compute_text_and_ranges() {
    let o = thomschur(&["compute", "A", "--i", "2", "--r", "2"]);
    assert_eq!(stdout(&o), "2S_{13}+S_{22}+4S_{4}\n");
    let o = thomschur(&["compute", "Ho", "--max-r", "5"]);
    assert_eq!(
        stdout(&o),
        "r=2  5S_{33}\nr=3  24S_{45}\nr=4  89S_{57}+24S_{66}\nr=5  300S_{69}+113S_{78}\n"
    );
    let upper = stdout(&thomschur(&["compute", "I_{2,2}", "--r", "3"]));
    assert_eq!(stdout(&thomschur(&["compute", "i22", "--r", "3"])), upper);
    assert_eq!(upper, "3S_{145}+S_{244}+7S_{46}+3S_{55}\n");
}

#[test]
fn table_d_text() {
    let o = thomschur(&["table", "d", "--rows", "7", "--format", "text"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let last = text.lines().last().unwrap();
    let cells: Vec<&str> = last.split_whitespace().collect();
    assert_eq!(cells, ["127", "119", "91", "35", "0", "..."]);
    assert_eq!(text.lines().count(), 7);
}

#[test]
fn verify_a3_passes() {
    let o = thomschur(&["verify", "A3", "--r", "3"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let text = stdout(&o);
    assert_eq!(text.matches("PASS").count(), 5);
    assert!(text.contains("III22: P("));
}

#[test]
fn verify_reports_the_a4_defect() {
    let o = thomschur(&[
        "verify",
        "A4",
        "--r",
        "1",
        "--expr",
        "S[1,1,1,1]+9S[1,1,2]+26S[1,3]+24S[4]",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    let fails: Vec<&Value> = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["status"] == "FAIL")
        .collect();
    assert_eq!(fails.len(), 1);
    assert!(fails[0]["equation_label"]
        .as_str()
        .unwrap()
        .starts_with("I22"));
    assert!(!fails[0]["residual"].as_str().unwrap().is_empty());
}

#[test]
fn verify_reads_an_input_file() {
    let dir = std::env::temp_dir().join(format!("thomschur-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("iii22.json");
    std::fs::write(&path, r#"{"terms":[{"partition":[3,3],"coeff":"1"}]}"#).unwrap();
    let o = thomschur(&[
        "verify",
        "III22",
        "--r",
        "2",
        "--input",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stdout(&o));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn eval_s22() {
    let o = thomschur(&["eval", "S[2,2]", "--at", "X2 - [2x1] - [2x2]"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "-2*x1^3*x2 + 5*x1^2*x2^2 - 2*x1*x2^3\n");
}

#[test]
fn solve_json_and_failures() {
    let o = thomschur(&["solve", "I22", "--r", "2", "--format", "json"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["kernel_dim"], 0);
    assert_eq!(v["heuristic"], false);
    assert_eq!(v["expansion"]["terms"].as_array().unwrap().len(), 2);

    let o = thomschur(&[
        "solve",
        "I22",
        "--r",
        "1",
        "--candidates",
        "all",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["kernel_dim"], 1);

    let o = thomschur(&["solve", "A", "--i", "2", "--r", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("S_{11}+2S_{2}"));
}

#[test]
fn checks_report_their_outcome() {
    let o = thomschur(&["verify", "uv", "--r", "4"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let o = thomschur(&["verify", "porteous", "--i", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["compute", "Q", "--r", "1"][..],
        &["compute", "I22"],
        &["compute", "F", "--r", "2"],
        &["compute", "III22", "--r", "1"],
        &["table", "z"],
        &["eval", "S[2,2", "--at", "X2"],
        &["frobnicate"],
        &[],
    ] {
        let o = thomschur(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["compute", "H", "--max-r", "6", "--format", "json"];
    assert_eq!(thomschur(&args).stdout, thomschur(&args).stdout);
    let args = ["verify", "I22", "--r", "3", "--format", "json"];
    assert_eq!(thomschur(&args).stdout, thomschur(&args).stdout);
}

#[test]
fn golden_files_match() {
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("golden");
    let cases = [
        ("i22.json", "compute I22 --max-r 6 --format json"),
        ("i22_two_row.json", "compute Po --max-r 6 --format json"),
        ("h.json", "compute H --max-r 7 --format json"),
        ("h_two_row.json", "compute Ho --max-r 7 --format json"),
        ("d_table.json", "table d --rows 7 --format json"),
        ("e_table.json", "table e --rows 8 --format json"),
        ("a3_r2.json", "compute A3 --r 2 --format json"),
        ("f3_r1.json", "compute F --i 3 --r 1 --format json"),
        ("a4_r1.json", "compute A4 --r 1 --format json"),
    ];
    for (file, cmd) in cases {
        let args: Vec<&str> = cmd.split_whitespace().collect();
        let want = std::fs::read_to_string(golden.join(file)).unwrap();
        assert_eq!(stdout(&thomschur(&args)), want, "{file}");
    }
}

#[test]
fn selftest_passes() {
    let o = thomschur(&["selftest"]);
    let text = stdout(&o);
    assert!(o.status.success(), "{text}");
    assert_eq!(text.matches("criterion").count(), 13);
    assert!(text.ends_with("selftest passed\n"));
}
