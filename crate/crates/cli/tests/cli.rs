//! End-to-end tests of the `coc` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn coc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coc")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Fresh scratch directory per test.
fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("coc-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(dir: &Path, file: &str, text: &str) -> String {
    let path = dir.join(file);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

const P4: &str = "p coc 4 1 2\ne 0 1\ne 1 2\ne 2 3\n";

#[test]
fn solve_prints_answer_and_sets_exit_code() {
    let dir = scratch("solve");
    let yes = write(&dir, "yes.coc", P4);
    let no = write(&dir, "no.coc", &P4.replace("p coc 4 1 2", "p coc 4 1 1"));
    let out = coc(&["solve", "--method", "brute", &yes]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("YES\nopt: 2"));
    let out = coc(&["solve", "--method", "caterpillar", &no]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("NO"));
    assert_eq!(coc(&["solve", "--exit-code", &no]).status.code(), Some(1));
    assert_eq!(coc(&["solve", "--exit-code", &yes]).status.code(), Some(0));
}

#[test]
fn branching_solver_needs_a_vertex_cover_modulator() {
    let dir = scratch("branch");
    let good = write(&dir, "good.coc", "p coc 4 1 2\nm 1 2\ne 0 1\ne 1 2\ne 2 3\n");
    let out = coc(&["solve", "--method", "branch-vc", &good]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("YES\nsolution: "));
    let bad = write(&dir, "bad.coc", "p coc 4 1 2\nm 1\ne 0 1\ne 1 2\ne 2 3\n");
    assert_eq!(coc(&["solve", "--method", "branch-vc", &bad]).status.code(), Some(3));
}

#[test]
fn exit_codes_for_usage_and_input_errors() {
    assert_eq!(coc(&["solve"]).status.code(), Some(2));
    assert_eq!(coc(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(coc(&["gen", "random"]).status.code(), Some(2), "--seed is mandatory");
    assert_eq!(coc(&["solve", "/nonexistent/x.coc"]).status.code(), Some(3));
    let dir = scratch("errors");
    let bad = write(&dir, "bad.coc", "p coc 2 1 0\ne 0 0\n");
    let out = coc(&["solve", &bad]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("loop"));
    let big =
        write(&dir, "big.coc", &format!("p coc 30 1 0\n{}", (1..30).map(|i| format!("e 0 {i}\n")).collect::<String>()));
    assert_eq!(coc(&["solve", &big]).status.code(), Some(3));
    assert_eq!(coc(&["solve", "--max-brute-n", "30", &big]).status.code(), Some(0));
}

#[test]
fn kernelize_then_verify_passes() {
    let dir = scratch("kernel");
    for seed in 0..8 {
        let input = dir.join(format!("in{seed}.coc"));
        let kernel = dir.join(format!("out{seed}.coc"));
        let report = dir.join(format!("report{seed}.txt"));
        let trace = dir.join(format!("trace{seed}.txt"));
        let (input, kernel, report, trace) =
            (input.to_str().unwrap(), kernel.to_str().unwrap(), report.to_str().unwrap(), trace.to_str().unwrap());
        let k = (seed % 4).to_string();
        let gen = coc(&["gen", "random", "--seed", &seed.to_string(), "--d", "2", "--k", &k, "-o", input]);
        assert_eq!(gen.status.code(), Some(0));
        let out = coc(&["kernelize", input, "-o", kernel, "--report", report, "--trace", trace]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        let text = std::fs::read_to_string(report).unwrap();
        for key in ["outcome: ", "spine_bound: ", "component_bound: ", "k: "] {
            assert!(text.contains(key), "missing {key}");
        }
        let out = coc(&["verify", "--kernel", kernel, "--against", input, "--oracle", "brute", "--exit-code"]);
        assert_eq!(out.status.code(), Some(0));
        assert!(stdout(&out).ends_with("YES\n"));
    }
    let out = coc(&["verify", "--suite", dir.to_str().unwrap(), "--exit-code"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn kernelize_rule_selection() {
    let dir = scratch("rules");
    let input = write(
        &dir,
        "in.coc",
        &format!(
            "p coc 31 1 20\nm 30\ne 30 0\ne 30 17\n{}",
            (1..30).map(|i| format!("e {} {i}\n", i - 1)).collect::<String>()
        ),
    );
    let out = coc(&["kernelize", &input, "--rule", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let reduced = stdout(&out);
    let n: usize = reduced.split_whitespace().nth(2).unwrap().parse().unwrap();
    assert!(n < 31);
    assert_eq!(coc(&["kernelize", &input, "--rule", "1"]).status.code(), Some(0));
    assert_eq!(coc(&["kernelize", &input, "--rule", "3"]).status.code(), Some(2));
    assert_eq!(coc(&["kernelize", &input, "--rule", "1", "--deg2"]).status.code(), Some(2));
    assert_eq!(coc(&["kernelize", &input, "--deg2"]).status.code(), Some(0));
}

#[test]
fn essence_verbs() {
    let out = coc(&["essence", "decompose", "--d", "2", "--table", "0,2,3,3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.lines().nth(1).unwrap().starts_with("verified: "));
    assert_eq!(coc(&["essence", "decompose", "--d", "2", "--table", "0,3,2,3"]).status.code(), Some(3));

    let dir = scratch("essence");
    let synth = dir.join("synth.coc");
    let out = coc(&["essence", "synth", "--d", "2", "--table", "0,2,3,3", "-o", synth.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(std::fs::read_to_string(&synth).unwrap().starts_with("# essence 0,2,3,3"));

    let path = write(&dir, "p3.coc", "p coc 3 2 1\ne 0 1\ne 1 2\n");
    let out = coc(&["essence", "compute", &path]);
    assert_eq!(stdout(&out), "0,1,2,3\n");
    let out = coc(&["essence", "pack", &path]);
    assert_eq!(stdout(&out), "0 graph 0..2 0 1 2\nsize: 1\n");
}

#[test]
fn generators() {
    let dir = scratch("gen");
    let a = coc(&["gen", "random", "--seed", "5"]);
    let b = coc(&["gen", "random", "--seed", "5"]);
    assert_eq!(a.stdout, b.stdout);

    let k3 = write(&dir, "k3.coc", "p coc 3 1 2\ne 0 1\ne 1 2\ne 0 2\n");
    let out = coc(&["gen", "vc2coc", &k3, "--d", "2"]);
    assert!(stdout(&out).starts_with("p coc 15 2 5\n"));

    let xsc = write(&dir, "x.xsc", "xsc 2 1 2\nf 0\nf 1\n");
    let acoc = dir.join("x.acoc");
    assert_eq!(coc(&["gen", "xsc2acoc", &xsc, "-o", acoc.to_str().unwrap()]).status.code(), Some(0));
    let out = coc(&["gen", "acoc2coc", acoc.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("p coc "));

    let umrss = write(&dir, "u.umrss", "umrss 1 0\nt 1\ns 1\n");
    let out = coc(&["gen", "umrss2coc", &umrss]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("p coc "));
}
