use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/data").join(name)
}

fn betakc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_betakc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &PathBuf) -> &str {
    p.to_str().unwrap()
}

#[test]
fn count_methods_agree_on_fstar() {
    let f = data("fstar.cnf");
    for method in ["compile", "dpll", "brute"] {
        let o = betakc(&["count", path(&f), "--method", method]);
        assert_eq!(o.status.code(), Some(0), "{method}");
        assert_eq!(stdout(&o), "13\n", "{method}");
    }
}

#[test]
fn empty_formula_has_one_model() {
    let f = data("empty.cnf");
    for method in ["compile", "dpll", "brute"] {
        let o = betakc(&["count", path(&f), "--method", method]);
        assert_eq!(stdout(&o), "1\n", "{method}");
    }
}

#[test]
fn unused_declared_variables_double_the_count() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("wide.cnf");
    fs::write(&f, "p cnf 4 1\n1 2 0\n").unwrap();
    for method in ["compile", "dpll", "brute"] {
        let o = betakc(&["count", f.to_str().unwrap(), "--method", method]);
        assert_eq!(stdout(&o), "12\n", "{method}");
    }
}

#[test]
fn triangle_is_rejected() {
    let o = betakc(&["check", path(&data("triangle.cnf"))]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("not β-acyclic"));
    let o = betakc(&["compile", path(&data("triangle.cnf"))]);
    assert_eq!(o.status.code(), Some(1));
    // DPLL still counts it with the lexicographic fallback
    let o = betakc(&["count", path(&data("triangle.cnf")), "--method", "dpll"]);
    assert_eq!(stdout(&o), "4\n");
}

#[test]
fn check_and_order_print_the_greedy_order() {
    let o = betakc(&["check", path(&data("fstar.cnf"))]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "β-acyclic\norder: 1 2 3 4 5\n");
    let o = betakc(&["order", path(&data("fstar.cnf"))]);
    assert_eq!(stdout(&o), "1\n2\n3\n4\n5\n");
}

#[test]
fn explicit_orders_are_checked() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.txt");
    fs::write(&good, "1\n2\n3\n4\n5\n").unwrap();
    let bad = dir.path().join("bad.txt");
    // 5 first: edges {2,5}, {4,5}, {2,4,5} do not form a chain at 5
    fs::write(&bad, "5\n1\n2\n3\n4\n").unwrap();
    let f = data("fstar.cnf");
    assert_eq!(betakc(&["check", path(&f), "--order", good.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(betakc(&["check", path(&f), "--order", bad.to_str().unwrap()]).status.code(), Some(1));
    let o = betakc(&["count", path(&f), "--order", good.to_str().unwrap()]);
    assert_eq!(stdout(&o), "13\n");
}

#[test]
fn compile_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let nnf = dir.path().join("fstar.nnf");
    let o = betakc(&["compile", path(&data("fstar.cnf")), "-o", nnf.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert!(report["nnf_size"].as_u64().unwrap() <= 77);
    assert!(report["max_and_fanin"].as_u64().unwrap() <= 5);
    let o = betakc(&["verify", nnf.to_str().unwrap(), "--against", path(&data("fstar.cnf"))]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    // the same circuit is not equivalent to the triangle
    let o = betakc(&["verify", nnf.to_str().unwrap(), "--against", path(&data("triangle.cnf"))]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("equivalent: FAILED"));
}

#[test]
fn verify_rejects_non_decision_circuits() {
    let dir = tempfile::tempdir().unwrap();
    let nnf = dir.path().join("or.nnf");
    // x1 ∨ x2 as a plain ∨-gate: not deterministic
    fs::write(&nnf, "nnf 3 2 2\nL 1\nL 2\nO 2 0 1\n").unwrap();
    let cnf = dir.path().join("or.cnf");
    fs::write(&cnf, "p cnf 2 1\n1 2 0\n").unwrap();
    let o = betakc(&["verify", nnf.to_str().unwrap(), "--against", cnf.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("equivalent: ok"));
}

#[test]
fn dpll_trace_is_a_circuit() {
    let dir = tempfile::tempdir().unwrap();
    let nnf = dir.path().join("trace.nnf");
    let o = betakc(&["dpll", path(&data("fstar.cnf")), "-o", nnf.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let line: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(line["count"], "13");
    let stats = &line["stats"];
    assert!(stats["cache_hits"].as_u64().is_some());
    let o = betakc(&["verify", nnf.to_str().unwrap(), "--against", path(&data("fstar.cnf"))]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn refusals_exit_three() {
    let o = betakc(&["count", path(&data("fstar.cnf")), "--method", "brute", "--cap-vars", "4"]);
    assert_eq!(o.status.code(), Some(3));
    let o = betakc(&["dpll", path(&data("fstar.cnf")), "--budget", "2"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(betakc(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(betakc(&["count", "/nonexistent/file.cnf"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let junk = dir.path().join("junk.cnf");
    fs::write(&junk, "p cnf 2 1\n1 x 0\n").unwrap();
    let o = betakc(&["count", junk.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(!o.stderr.is_empty());
}

#[test]
fn hat_widens_each_clause() {
    let o = betakc(&["hat", path(&data("fstar.cnf"))]);
    assert_eq!(stdout(&o), "p cnf 10 5\n1 2 6 0\n3 4 7 0\n2 5 8 0\n4 5 9 0\n2 4 5 10 0\n");
    let o = betakc(&["hat", "--check", path(&data("fstar.cnf"))]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("order: 6 7 8 9 10 1 2 3 4 5\n"));
    assert_eq!(betakc(&["hat", "--check", path(&data("triangle.cnf"))]).status.code(), Some(1));
}

#[test]
fn mimw_of_the_four_cycle_with_chord() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.txt");
    fs::write(&g, "1 2\n2 3\n3 4\n4 1\n1 3\n").unwrap();
    let t = dir.path().join("t.txt");
    fs::write(&t, "((1 2) (3 4))\n").unwrap();
    let o = betakc(&["mimw", g.to_str().unwrap(), "--tree", t.to_str().unwrap()]);
    assert_eq!(stdout(&o), "1\n");
    let o = betakc(&["mimw", g.to_str().unwrap()]);
    assert_eq!(stdout(&o).lines().next(), Some("1"));
    let o = betakc(&["mimw", "--cnf", path(&data("fstar.cnf"))]);
    assert_eq!(o.status.code(), Some(3), "10 vertices exceed the exact-search cap");
}

#[test]
fn rectangle_covers_of_matchings() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("m2.cnf");
    fs::write(&f, "p cnf 4 2\n1 3 0\n2 4 0\n").unwrap();
    let o = betakc(&["rectcover", f.to_str().unwrap(), "--y", "1,2", "--z", "3,4"]);
    assert_eq!(stdout(&o), "4\n");
    let o = betakc(&["rectcover", f.to_str().unwrap(), "--y", "1,3"]);
    assert_eq!(stdout(&o), "1\n");
}

#[test]
fn bench_is_deterministic() {
    let a = betakc(&["bench", "--count", "20", "--seed", "5", "--json"]);
    let b = betakc(&["bench", "--count", "20", "--seed", "5", "--json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 20);
    let chain = betakc(&["bench", "--family", "chain", "--count", "30"]);
    assert_eq!(chain.status.code(), Some(0));
    assert_eq!(stdout(&chain).lines().count(), 3);
}
