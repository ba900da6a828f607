use std::process::Command;

use serde_json::Value;

fn h3(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_h3")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn hweights_at_one_third() {
    let (code, out, _) = h3(&["hweights", "--c", "1/3"]);
    assert_eq!(code, 0);
    let vals: Vec<&str> = out.lines().map(|l| l.split_whitespace().nth(1).unwrap()).collect();
    assert_eq!(vals, ["-7/2", "13/2", "19/6", "-1/6", "19/6", "-1/6", "3/2", "3/2", "1/2", "5/2"]);
}

#[test]
fn solve_half_trivial() {
    let (code, out, _) = h3(&["--json", "solve", "--c", "1/2", "--tau", "1+"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let want = [("1+", 1), ("3-", -1), ("3~-", -1), ("5+", 1), ("5-", -1), ("3+", 1), ("3~+", 1), ("1-", -1)];
    for (l, n) in want {
        assert_eq!(v["coeffs"][l], n, "{l}");
    }
    assert_eq!(v["coeffs"].as_object().unwrap().len(), 8);
    assert_eq!(v["finite"], true);
    assert_eq!(v["dim"], 115);
    assert!(!v["certificate"].as_array().unwrap().is_empty());
}

#[test]
fn formula_semisimple() {
    let (code, out, _) = h3(&["formula", "--c", "0", "--tau", "5-"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("L_0(5-) = M(5-)"), "{out}");
}

#[test]
fn text_and_json_agree() {
    let (_, text, _) = h3(&["formula", "--c", "1/5"]);
    let (_, json, _) = h3(&["--json", "formula", "--c", "1/5"]);
    let rows: Vec<Value> = serde_json::from_str(&json).unwrap();
    for (line, row) in text.lines().zip(&rows) {
        let tau = row["tau"].as_str().unwrap();
        assert!(line.starts_with(&format!("L_1/5({tau}) = ")));
        for (l, n) in row["coeffs"].as_object().unwrap() {
            let n = n.as_i64().unwrap();
            let term = match n.abs() {
                1 => format!("M({l})"),
                k => format!("{k}M({l})"),
            };
            assert!(line.contains(&term), "{line} lacks {term}");
        }
    }
}

#[test]
fn usage_errors() {
    for args in [&["hweights", "--c", "one"][..], &["formula", "--c", "1/2", "--tau", "6+"], &["solve"], &["--bogus", "group"]] {
        let (code, _, err) = h3(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(!err.is_empty());
    }
}

#[test]
fn verify_exit_code_and_file() {
    let dir = std::env::temp_dir().join(format!("h3-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let (code, out, _) = h3(&["verify", "--filter", "tables", "--json", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.ends_with("14 passed, 0 failed, 0 skipped\n"), "{out}");
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["summary"]["pass"], 14);
    std::fs::remove_dir_all(dir).unwrap();
}
