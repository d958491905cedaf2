use std::process::{Command, Output};

use wonderful::QPoly;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wonderful")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn poincare_text() {
    let o = run(&["poincare", "--kind", "A", "--n", "5", "--s", "2", "--output", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "q^3+26*q^2+26*q+1");
}

#[test]
fn poincare_text_parses_back() {
    let o = run(&["poincare", "--kind", "B", "--n", "5", "--s", "1"]);
    let text = stdout(&o);
    let q: QPoly = text.trim().parse().unwrap();
    assert_eq!(q.to_string(), text.trim());
}

#[test]
fn poincare_json_round_trips() {
    let o = run(&["poincare", "--kind", "D", "--n", "4", "--output", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let q = QPoly::from_json(&v["poincare"]).unwrap();
    assert_eq!(q, "q^3+59*q^2+59*q+1".parse().unwrap());
    assert_eq!(v["text"], q.to_string());
}

#[test]
fn poincare_with_oracle() {
    let o = run(&["poincare", "--kind", "D", "--n", "4", "--s", "1", "--oracle"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn antichain_family() {
    let o = run(&["poincare", "--kind", "A", "--n", "6", "--lambda", "(3,3)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "q^4+52*q^3+147*q^2+52*q+1");
}

#[test]
fn classify_count() {
    let o = run(&["classify", "--kind", "A", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("2 invariant building sets"));
    let o = run(&["classify", "--kind", "B", "--n", "3", "--output", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["count"], 2);
}

#[test]
fn euler_report() {
    let o = run(&["euler", "--kind", "A", "--n", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.ends_with(" 360")).count(), 3);
    assert!(text.contains("all methods agree"));
}

#[test]
fn poset_formats() {
    let o = run(&["poset", "--kind", "A", "--n", "8"]);
    assert_eq!(stdout(&o).lines().next(), Some("15 building partitions"));
    let dot = stdout(&run(&["poset", "--kind", "B", "--n", "3", "--output", "dot"]));
    assert!(dot.starts_with("digraph") && dot.contains("->"));
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&run(&["poset", "--kind", "D", "--n", "4", "--output", "json"]))).unwrap();
    assert!(!v["elements"].as_array().unwrap().is_empty());
}

#[test]
fn series_table() {
    let o = run(&["series", "--which", "phi", "--order", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["4", "2", "4*q"]));
    let o = run(&["series", "--which", "phi-d", "--order", "5", "--reading", "printed-lambda-b", "--output", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(serde_json::from_str::<serde_json::Value>(&stdout(&o)).unwrap().is_array());
}

#[test]
fn oracle_lists_monomials() {
    let o = run(&["oracle", "--kind", "A", "--n", "4", "--list", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("oracle  q^2+8*q+1"));
    assert!(text.contains(": degree 1"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["poincare", "--kind", "Q", "--n", "5"][..],
        &["poincare", "--kind", "A", "--n", "5", "--output", "dot"],
        &["poincare", "--kind", "A", "--n", "5", "--family", "tilde"],
        &["poincare", "--kind", "A", "--n", "6", "--lambda", "(4,1,1)"],
        &["euler", "--kind", "D", "--n", "4"],
        &["frobnicate"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_quick_is_deterministic() {
    let a = run(&["verify", "--tier", "quick"]);
    let b = run(&["verify", "--tier", "quick"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).ends_with("0 failed\n"));
}
