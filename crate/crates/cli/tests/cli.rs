use std::process::{Command, Output};

use serde_json::Value;
use wallkit::fixtures::EMBEDDED;

fn wallkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wallkit"))
        .args(args)
        .env_remove("WALLKIT_FIXTURES")
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn labels(report: &Value) -> Vec<String> {
    report["chambers"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["model_label"].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn malformed_input_exits_2() {
    for args in [
        &["walls", "--chern", "1,0,-4"][..],
        &["walls", "--chern", "1,0,x,8"],
        &["walls", "--chern", "1,0,-4,8/0"],
        &["chambers", "--chern", "1,0,-4,8", "--epsilon", "abc"],
        &["classify", "--chern", "1,1,1/2,1/6", "--beta", "1/2"],
        &["walls"],
        &["frobnicate"],
    ] {
        assert_eq!(wallkit(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn uncertified_list_exits_3_unless_allowed() {
    let args = ["walls", "--chern", "2,-1,-3/2,2"];
    let out = wallkit(&args);
    assert_eq!(out.status.code(), Some(3));
    // The list is still printed.
    assert_eq!(serde_json::from_slice::<Value>(&out.stdout).unwrap()["certified"], false);
    assert!(wallkit(&[&args[..], &["--allow-bounded"]].concat()).status.success());

    let capped = wallkit(&["walls", "--chern", "1,0,-4,8", "--rmax", "1"]);
    assert_eq!(capped.status.code(), Some(3));
    assert_eq!(serde_json::from_slice::<Value>(&capped.stdout).unwrap()["truncated"], true);
}

#[test]
fn walls_json_is_byte_identical() {
    let a = wallkit(&["walls", "--chern", "1,0,-4,8"]);
    let b = wallkit(&["walls", "--chern", "1,0,-4,8"]);
    assert_eq!(a.stdout, b.stdout);
    let report = json(&a);
    assert_eq!(report["walls"].as_array().unwrap().len(), 3);
    assert_eq!(report["walls"][0]["center"], "-9/2");
}

#[test]
fn table_output() {
    let out = stdout(&wallkit(&["walls", "--chern", "1,0,-4,8", "--format", "table"]));
    assert!(out.contains("49/4"), "{out}");
    assert!(out.contains("I_L(-1)"), "{out}");
}

#[test]
fn chi_of_a_pair() {
    let out = wallkit(&["chi", "--pair", "1,0,-4,8", "1,0,-4,8"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "-15");
    // chi(O(1)) = 4.
    let out = wallkit(&["chi", "--chern", "1,1,1/2,1/6"]);
    assert!(stdout(&out).starts_with("chi = 4\n"), "{}", stdout(&out));
}

#[test]
fn classify_ideal_of_a_line() {
    let out = wallkit(&["classify", "--chern", "1,1,-1/2,1/6", "--beta", "-2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("I_L(-1)"), "{}", stdout(&out));
}

#[test]
fn chambers_are_labeled_from_fixtures() {
    let report = json(&wallkit(&["chambers", "--chern", "1,0,-4,8"]));
    assert_eq!(labels(&report), ["∅", "G(1,9)", "M₂", "M₃", "M₄", "Hilb"]);
    let inward = json(&wallkit(&["chambers", "--chern", "1,0,-4,8", "--direction", "inward"]));
    assert_eq!(labels(&inward).first().unwrap(), "Hilb");

    let unknown = json(&wallkit(&["chambers", "--chern", "1,0,-3,5"]));
    assert!(labels(&unknown).iter().all(|l| l == "unlabeled"));
}

fn edited_fixtures(edit: impl FnOnce(&mut Value)) -> tempfile::NamedTempFile {
    let mut value: Value = serde_json::from_str(EMBEDDED).unwrap();
    edit(&mut value);
    let file = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(file.path(), serde_json::to_string(&value).unwrap()).unwrap();
    file
}

#[test]
fn fixture_file_from_flag_and_environment() {
    let file = edited_fixtures(|v| {
        for entry in v["model_labels"].as_array_mut().unwrap() {
            let n = entry["labels"].as_array().unwrap().len();
            entry["labels"] = (0..n).map(|i| Value::from(format!("C{i}"))).collect();
        }
    });
    let path = file.path().to_str().unwrap();
    let report = json(&wallkit(&["chambers", "--chern", "1,0,-4,8", "--fixtures", path]));
    assert_eq!(labels(&report), ["C0", "C1", "C2", "C3", "C4", "C5"]);

    let out = Command::new(env!("CARGO_BIN_EXE_wallkit"))
        .args(["chambers", "--chern", "1,0,-4,8"])
        .env("WALLKIT_FIXTURES", path)
        .output()
        .unwrap();
    assert_eq!(labels(&json(&out)).last().unwrap(), "C5");
    assert!(String::from_utf8_lossy(&out.stderr).contains("using fixtures from"));
}

#[test]
fn ledger_passes_and_fails() {
    let ok = wallkit(&["ledger"]);
    assert!(ok.status.success());
    assert!(!stdout(&ok).contains("FAIL"), "{}", stdout(&ok));

    let broken = edited_fixtures(|v| {
        let e = &mut v["ext1_table"][0]["ext1"];
        *e = Value::from(e.as_u64().unwrap() + 7);
    });
    let out = wallkit(&["ledger", "--fixtures", broken.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"), "{}", stdout(&out));

    let garbage = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(garbage.path(), "{").unwrap();
    assert_eq!(wallkit(&["ledger", "--fixtures", garbage.path().to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn plot_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.svg");
    let out = wallkit(&["plot", "--chern", "1,0,-4,8", "-o", path.to_str().unwrap()]);
    assert!(out.status.success());
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("class=\"wall\"").count(), 3);
    assert_eq!(svg.matches("class=\"crossing\"").count(), 5);
}
