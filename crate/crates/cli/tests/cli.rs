use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arrowform"))
        .args(args)
        .env_remove("ARROWFORM_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const KNOT: &str = "gauss K=4 n=3\n\
tail=0 head=3 sign=+ mark=1\n\
tail=2 head=5 sign=- mark=2\n\
tail=4 head=1 sign=+ mark=3\n";

#[test]
fn solve_writes_basis_and_dimension() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("b.txt");
    let o = run(&["solve", "--degree", "2", "--markings", "1..3", "--K", "4", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let dim: usize = text.lines().find_map(|l| l.strip_prefix("dimension=")).unwrap().parse().unwrap();
    assert!(dim > 0);
    let basis = arrowform_core::format::parse_basis_text(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(basis.len(), dim);
    assert!(basis.iter().all(|(k, _)| *k == 4));
}

#[test]
fn outputs_do_not_depend_on_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    let base = ["solve", "--degree", "2", "--markings", "1,2,3", "--K", "4", "--out"];
    let oa = run(&[&base[..], &[a.to_str().unwrap(), "--threads", "1"]].concat());
    let ob = run(&[&base[..], &[b.to_str().unwrap(), "--threads", "4"]].concat());
    assert!(oa.status.success() && ob.status.success());
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());

    let basis = fs::read_to_string(&a).unwrap();
    let first = basis.split("===\n").next().unwrap();
    let f = write(dir.path(), "f.txt", first);
    let knot = write(dir.path(), "k.txt", KNOT);
    let walk = |threads: &str| run(&["verify", &f, &knot, "--trials", "40", "--length", "15", "--seed", "9", "--threads", threads]);
    let (w1, w4) = (walk("1"), walk("4"));
    assert!(w1.status.success(), "{}", stdout(&w1));
    assert_eq!(w1.stdout, w4.stdout);
    assert!(stdout(&w1).contains("constant"));
}

#[test]
fn gv_accepts_repeated_gamma() {
    let o = run(&["gv", "--gamma", "1,1,-2"]);
    assert!(o.status.success(), "{}{}", stdout(&o), stderr(&o));
    assert!(stdout(&o).starts_with("formula K=0\n"));
}

#[test]
fn zero_formula_evaluates_to_zero() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "zero.txt", "formula K=4\n");
    let k = write(dir.path(), "k.txt", KNOT);
    let o = run(&["eval", &f, &k]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "0\n");
}

#[test]
fn malformed_knot_reports_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "zero.txt", "formula K=4\n");
    let k = write(dir.path(), "k.txt", "gauss K=4 n=2\ntail=0 head=1 sign=+ mark=1\ntail=2 head=3 sign=* mark=1\n");
    let o = run(&["eval", &f, &k]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn k_mismatch_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f.txt", "formula K=5\ncoef=1\narrow K=5 n=1\ntail=0 head=1 mark=2\n");
    let k = write(dir.path(), "k.txt", KNOT);
    let o = run(&["eval", &f, &k]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains('K'), "{}", stderr(&o));
}

#[test]
fn check_names_the_first_failure() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f.txt", "formula K=5\ncoef=1\narrow K=5 n=2\ntail=0 head=2 mark=1\ntail=1 head=3 mark=2\n");
    let o = run(&["check", &f]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("first failing"), "{}", stdout(&o));
    let b = run(&["boundary", &f]);
    assert!(b.status.success());
    assert!(stdout(&b).ends_with("zero=false\n"));
}

#[test]
fn enumerate_counts() {
    let o = run(&["enumerate", "--degree", "0", "--markings", "1..3", "--K", "4"]);
    assert!(stdout(&o).ends_with("count=1\n"));
    let o = run(&["enumerate", "--degree", "1", "--markings", "2", "--K", "4"]);
    assert!(stdout(&o).ends_with("count=1\n"));
    let o = run(&["enumerate", "--degree", "1", "--markings", "2", "--K", "4", "--species", "gauss"]);
    assert!(stdout(&o).ends_with("count=2\n"));
}

#[test]
fn selftest_passes() {
    let o = run(&["selftest"]);
    assert!(o.status.success(), "{}", stdout(&o));
}
