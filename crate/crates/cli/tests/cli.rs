use std::path::PathBuf;
use std::process::{Command, Output};

fn rbalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rbalg"))
        .args(args)
        .env_remove("RBALG_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("rbalg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn verify_exit_codes() {
    let one = scratch("one.op", "dim 1\n1\n");
    let o = rbalg(&["verify", "@D1", one.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));

    let d = scratch("d10.op", "dim 2\n1 0\n0 0\n");
    let o = rbalg(&["verify", "@B6", d.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("residual at (e2,e2): e1"), "{}", stdout(&o));

    let zero = scratch("zero.op", "dim 3\n0 0 0\n0 0 0\n0 0 0\n");
    assert_eq!(rbalg(&["verify", "@T6", zero.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn input_errors_exit_2() {
    let bad = scratch("bad.alg", "dim 2\n1 1 3 1\n");
    let one = scratch("one2.op", "dim 1\n1\n");
    let o = rbalg(&["verify", bad.to_str().unwrap(), one.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    assert_eq!(rbalg(&["verify", "@D1", "/nonexistent/op"]).status.code(), Some(2));
    assert_eq!(rbalg(&["catalog", "show", "Z9"]).status.code(), Some(2));
    assert_eq!(rbalg(&["reproduce", "prop9.9"]).status.code(), Some(2));
}

#[test]
fn solve_reports_points() {
    let o = rbalg(&["solve", "@D1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("solutions: 2 solution point(s)\n  [[0]]\n  [[1]]\n"), "{}", text);

    let text = stdout(&rbalg(&["solve", "@A4", "--symbolic"]));
    assert!(text.contains("solutions: not zero-dimensional"), "{}", text);

    let text = stdout(&rbalg(&["solve", "@B6"]));
    assert!(text.contains("solutions: 8 solution point(s)"), "{}", text);
    assert!(text.contains("[[1, 0], [i, 0]]"));
}

#[test]
fn solve_grid_and_cover() {
    let o = rbalg(&["solve", "@A1", "--grid", "-1,0,1"]);
    assert!(stdout(&o).contains("grid solutions: 12"), "{}", stdout(&o));
    let o = rbalg(&["solve", "@A2", "--families", "A2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("cover: complete"));

    let partial = scratch("a2.fam", "[family only-zero]\ndim 2\n0 0\n0 0\n");
    let o = rbalg(&["solve", "@A2", "--families", partial.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("cover: incomplete"));
}

#[test]
fn budget_exceeded_exits_3() {
    let o = rbalg(&["--budget", "1", "solve", "@T6"]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
    let o = Command::new(env!("CARGO_BIN_EXE_rbalg"))
        .args(["solve", "@T6"])
        .env("RBALG_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn induce_rescaled_idempotents() {
    let r = scratch("ex.op", "dim 2\n1 0\n2 0\n");
    let o = rbalg(&["induce", "@type-II(2)", r.to_str().unwrap(), "--construction", "prelie"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("1 1 1 -1\n2 2 2 2\n"), "{}", text);
    assert!(text.contains("# label: A1 via"), "{}", text);

    let out = std::env::temp_dir().join(format!("rbalg-cli-{}-induced.alg", std::process::id()));
    let o = rbalg(&[
        "induce",
        "@type-II(2)",
        r.to_str().unwrap(),
        "--construction",
        "prelie",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let written = std::fs::read_to_string(&out).unwrap();
    assert!(written.starts_with("dim 2; field gaussian-rational\n"));
}

#[test]
fn induce_zero_operator_negates() {
    let zero = scratch("zero2.op", "dim 2\n0 0\n0 0\n");
    let text = stdout(&rbalg(&["induce", "@A2", zero.to_str().unwrap(), "--construction", "prelie"]));
    assert!(text.contains("1 2 1 -1\n2 1 1 -1\n2 2 2 -1\n"), "{}", text);
}

#[test]
fn induce_t4_row_is_t5() {
    let r = scratch("t4.op", "dim 3\n1 1 0\n0 1 0\n0 0 1\n");
    let text = stdout(&rbalg(&["induce", "@T4", r.to_str().unwrap(), "--construction", "prelie"]));
    assert!(text.contains("# label: T5 via"), "{}", text);
}

#[test]
fn induce_requires_rota_baxter() {
    let d = scratch("d10b.op", "dim 2\n1 0\n0 0\n");
    let o = rbalg(&["induce", "@B6", d.to_str().unwrap(), "--construction", "double"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn iterate_and_dendriform() {
    let text = stdout(&rbalg(&["iterate", "@D1", "@D1.2", "--steps", "2"]));
    assert!(text.contains("step 2: e1e1=e1"), "{}", text);
    let o = rbalg(&["dendriform", "@A1", "@A1.4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("# dendriform axioms: hold"));
}

#[test]
fn classify_names_or_describes() {
    let text = stdout(&rbalg(&["classify", "@N10"]));
    assert!(text.contains("label: N3") && text.contains("label: N10"), "{}", text);
    let odd = scratch("odd.alg", "dim 1\n1 1 1 i\n");
    let text = stdout(&rbalg(&["classify", odd.to_str().unwrap()]));
    assert!(text.starts_with("label: D1"), "{}", text);
}

#[test]
fn reproduce_small_tables() {
    let o = rbalg(&["reproduce", "prop3.1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for l in ["[A1]", "[A2]", "[A3]", "[A4]", "[A5]"] {
        assert!(text.contains(l));
    }
    assert!(text.contains("summary: 27 pass, 0 fail, 0 documented"), "{}", text);

    let csv = stdout(&rbalg(&["reproduce", "cor4.5", "--csv"]));
    assert!(csv.starts_with("table,section,row,check,outcome,detail\n"));
    assert_eq!(csv.lines().filter(|l| l.contains(",lie,PASS")).count(), 10, "{}", csv);
}

#[test]
fn reproduce_is_deterministic() {
    let a = stdout(&rbalg(&["reproduce", "rb-b1"]));
    let b = stdout(&rbalg(&["reproduce", "rb-b1"]));
    assert_eq!(a, b);
}

#[test]
fn corrupted_catalog_names_row() {
    let cat = "[entry A1]\ndim 2; field gaussian-rational\nkind associative\n1 1 1 1\n2 2 2 1\n\n\
               [family A1.1]\ndim 2\n0 0\n0 0\n\n\
               [family A1.4]\ndim 2\n1 0\n2 1\n";
    let p = scratch("bad.cat", cat);
    let o = rbalg(&["reproduce", "prop3.1", "--catalog", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    let line = text.lines().find(|l| l.contains("A1.4")).expect("row named");
    assert!(line.contains("FAIL") && line.contains("reduced residual"), "{}", text);
}

#[test]
fn catalog_listing() {
    let text = stdout(&rbalg(&["catalog", "list"]));
    assert!(text.lines().any(|l| l.starts_with("B6 ")));
    let text = stdout(&rbalg(&["catalog", "show", "T3_lambda"]));
    assert!(text.starts_with("[entry T3]"));
    assert!(text.contains("# rejected:"), "{}", text);
}
