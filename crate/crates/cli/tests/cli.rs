use std::process::{Command, Output};

fn macposet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_macposet"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn check_box_with_lex() {
    let o = macposet(&["check", "box(3,4)", "--order", "lex(x,y)"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains(": ok"));
}

#[test]
fn heart_example_has_no_order() {
    let dir = tempfile::tempdir().unwrap();
    let rep = dir.path().join("r.json");
    let o = macposet(&["reproduce", "heart-example", "--report", rep.to_str().unwrap()]);
    assert_eq!(code(&o), 1, "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&rep).unwrap()).unwrap();
    assert_eq!(v["verdict"], "no Macaulay order");
    for key in ["command", "input", "verdict", "witness", "rows", "timings", "version"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn y_product_has_no_order() {
    let o = macposet(&["search-order", "cart(path(1), explicit{Y})"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("no Macaulay order"));
}

#[test]
fn found_order_exits_zero() {
    let o = macposet(&["search-order", "wedge(box(2,3), box(2,3))"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("level 1:"));
}

#[test]
fn usage_and_input_errors_exit_two() {
    assert_eq!(code(&macposet(&["check", "box(3,4)"])), 2);
    assert_eq!(code(&macposet(&["frobnicate"])), 2);
    let o = macposet(&["show", "diamond(path(3), box(2,3)"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("end of input"));
    assert_eq!(code(&macposet(&["check", "box(2,2)", "--order", "lex(q)"])), 2);
    assert_eq!(code(&macposet(&["reproduce", "no-such-target"])), 2);
    assert_eq!(code(&macposet(&["search-order", "box(5,5,5)", "--level-cap", "8"])), 2);
}

#[test]
fn budget_exit_three() {
    let o = macposet(&["search-order", "diamond(box(2,2,3), box(3,3))", "--budget", "1"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn violation_exit_one() {
    let o = macposet(&["check", "heart(4,1,3,3)", "--order", "lex(y,x)"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("violation"));
    let o = macposet(&["additive", "spider(1,2)", "--order", "id"]);
    assert_eq!(code(&o), 1, "{}", stdout(&o));
}

#[test]
fn build_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("w.poset");
    let fs = f.to_str().unwrap();
    assert_eq!(code(&macposet(&["build", "wedge(box(2,2), path(2))", "--out", fs])), 0);
    let text = std::fs::read_to_string(&f).unwrap();
    assert!(text.starts_with("macposet 1\n"));
    assert!(text.contains("provenance 2"));
    let o = macposet(&["show", fs]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("level sizes [1, 3, 2]"), "{}", stdout(&o));
    let o = macposet(&["search-order", fs]);
    assert_eq!(code(&o), 0);
    std::fs::write(&f, "macposet 1\nelements 2\nranks 0 2\ncovers\n0 1\n").unwrap();
    let o = macposet(&["show", fs]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 5"));
}

#[test]
fn shadow_and_show() {
    let o = macposet(&["shadow", "box(3,3)", "--set", "1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("upper shadow (2)"), "{}", stdout(&o));
    let o = macposet(&["show", "path(2)", "--dot"]);
    assert!(stdout(&o).contains("0 -> 1;"));
    let o = macposet(&["table", "box(2,2)"]);
    assert!(stdout(&o).contains("level 1: [0, 1, 1]"));
}

#[test]
fn family_grid_agrees() {
    let o = macposet(&["verify-family", "heart", "--lo", "1", "--hi", "3"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("81 rows, 0 disagreements"));
}

#[test]
fn reports_identical_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    for target in ["prop61-ring-product", "diamond-not-wedge", "thmB-wedge-grid"] {
        let mut reports = Vec::new();
        for t in ["1", "4"] {
            let rep = dir.path().join(format!("{target}-{t}.json"));
            macposet(&["reproduce", target, "--threads", t, "--report", rep.to_str().unwrap()]);
            reports.push(std::fs::read(&rep).unwrap());
        }
        assert_eq!(reports[0], reports[1], "{target}");
    }
}

#[test]
fn list_targets() {
    let o = macposet(&["reproduce", "list"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 12);
}
