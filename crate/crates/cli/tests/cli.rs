//! End-to-end tests of the command line tool: exit codes, report formats,
//! artifact round trips and the structure diff.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use cograded::crossed::{build_hg, GroupAction};
use cograded::exactlin::{rat, Mat};
use cograded::group::FiniteGroup;
use cograded::io;
use cograded::whq::{group_algebra, groupoid_algebra};
use cograded::yd::yd_adjoint;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cograded"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

struct Workspace {
    dir: tempfile::TempDir,
}

impl Workspace {
    fn new() -> Workspace {
        Workspace { dir: tempfile::tempdir().expect("tempdir") }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn write(&self, name: &str, contents: String) -> PathBuf {
        let p = self.path(name);
        fs::write(&p, contents).expect("write");
        p
    }

    fn arg(&self, name: &str) -> String {
        self.path(name).display().to_string()
    }
}

fn z(n: usize) -> FiniteGroup {
    FiniteGroup::cyclic(n).unwrap()
}

fn kz3_setup(ws: &Workspace) -> (PathBuf, PathBuf, PathBuf, PathBuf) {
    let base = group_algebra(&z(3));
    let g2 = z(2);
    let mut inv = Mat::zeros(3, 3);
    *inv.at_mut(0, 0) = rat(1);
    *inv.at_mut(2, 1) = rat(1);
    *inv.at_mut(1, 2) = rat(1);
    let action = GroupAction { mats: vec![Mat::identity(3), inv] };
    let crossed = build_hg(&base, &g2, &action).unwrap();
    (
        ws.write("base.json", io::whq_to_json(&base)),
        ws.write("group.json", io::group_to_json(&g2)),
        ws.write("action.json", io::action_to_json(&g2, &action.mats)),
        ws.write("hg.json", io::crossed_to_json(&crossed)),
    )
}

#[test]
fn check_gcwhq_passes_on_certified_instance() {
    let ws = Workspace::new();
    let (_, _, _, hg) = kz3_setup(&ws);
    let out = run(&["check-gcwhq", hg.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("PASSED"));
}

#[test]
fn perturbed_file_exits_one_and_names_the_failure() {
    let ws = Workspace::new();
    let (_, _, _, hg) = kz3_setup(&ws);
    let mut h = io::crossed_from_json(&fs::read_to_string(&hg).unwrap()).unwrap();
    let mut d = h.gcwhq.delta[0].clone();
    *d.at_mut(0, 0) += rat(1);
    h.gcwhq.delta[0] = d;
    let bad = ws.write("bad.json", io::crossed_to_json(&h));
    let out = run(&["check-gcwhq", bad.to_str().unwrap(), "--format", "machine"]);
    assert_eq!(code(&out), 1);
    let text = String::from_utf8_lossy(&out.stdout);
    let first_fail = text.lines().find(|l| l.contains("\"pass\":false")).expect("a failing record");
    assert!(first_fail.contains("\"identity\":\""));
    assert!(first_fail.contains("\"instantiation\":\""));
}

#[test]
fn parse_and_kind_errors_exit_two() {
    let ws = Workspace::new();
    let missing = ws.arg("nope.json");
    assert_eq!(code(&run(&["check-base", &missing])), 2);
    let not_json = ws.write("junk.json", "not json".into());
    assert_eq!(code(&run(&["check-base", not_json.to_str().unwrap()])), 2);
    let (_, group, _, _) = kz3_setup(&ws);
    assert_eq!(code(&run(&["check-base", group.to_str().unwrap()])), 2);
}

#[test]
fn mirror_matches_tilde_builder_via_diff() {
    let ws = Workspace::new();
    let (base, group, action, hg) = kz3_setup(&ws);
    let tilde = ws.arg("tilde.json");
    let out = run(&[
        "build",
        "tilde",
        "--base",
        base.to_str().unwrap(),
        "--group",
        group.to_str().unwrap(),
        "--action",
        action.to_str().unwrap(),
        "-o",
        &tilde,
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));

    let mirrored = ws.arg("mirror.json");
    let out = run(&["mirror", hg.to_str().unwrap(), "-o", &mirrored]);
    assert_eq!(code(&out), 0);

    let out = run(&["check-crossed", &mirrored]);
    assert_eq!(code(&out), 0);

    let out = run(&["diff", &mirrored, &tilde]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("identical"));
}

#[test]
fn diff_detects_the_bar_twist() {
    let ws = Workspace::new();
    let (base, group, action, hg) = kz3_setup(&ws);
    let bar = ws.arg("bar.json");
    let out = run(&[
        "build",
        "bar",
        "--base",
        base.to_str().unwrap(),
        "--group",
        group.to_str().unwrap(),
        "--action",
        action.to_str().unwrap(),
        "-o",
        &bar,
    ]);
    assert_eq!(code(&out), 0);
    let out = run(&["diff", hg.to_str().unwrap(), &bar]);
    assert_eq!(code(&out), 1);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("delta"), "{text}");
}

#[test]
fn diff_kind_mismatch_exits_two() {
    let ws = Workspace::new();
    let (base, _, _, hg) = kz3_setup(&ws);
    let out = run(&["diff", base.to_str().unwrap(), hg.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn yd_pipeline_adjoint_tensor_conjugate_braiding_laws() {
    let ws = Workspace::new();
    let (_, _, _, hg) = kz3_setup(&ws);

    let adj_e = ws.arg("adj_e.json");
    let adj_s = ws.arg("adj_s.json");
    for (grade, path) in [("0", &adj_e), ("1", &adj_s)] {
        let out = run(&["yd-adjoint", "--ambient", hg.to_str().unwrap(), "-p", grade, "-o", path]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    }

    let out = run(&["check-yd", &adj_s, "--module"]);
    assert_eq!(code(&out), 0);

    let tensored = ws.arg("tensor.json");
    let out = run(&["tensor", &adj_e, &adj_s, "-o", &tensored]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let out = run(&["check-yd", &tensored, "--module"]);
    assert_eq!(code(&out), 0);

    let conj = ws.arg("conj.json");
    let out = run(&["conjugate", &adj_s, "-q", "1", "-o", &conj]);
    assert_eq!(code(&out), 0);

    let braid = ws.arg("braid.json");
    let out = run(&["braiding", &adj_e, &adj_s, "-o", &braid]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(fs::read_to_string(&braid).unwrap().contains("braid-map"));

    let out = run(&["check-laws", &adj_e, &adj_s, &adj_s]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));

    let out = run(&["qybe", &adj_e]);
    assert_eq!(code(&out), 0);
}

#[test]
fn full_space_tensor_exposes_weak_counitarity_failure() {
    let ws = Workspace::new();
    let base = groupoid_algebra(&[z(1), z(1)]).unwrap();
    let g2 = z(2);
    let swap = Mat::from_int_rows(&[&[0, 1], &[1, 0]]);
    let action = GroupAction { mats: vec![Mat::identity(2), swap] };
    let crossed = build_hg(&base, &g2, &action).unwrap();
    let hg = ws.write("hg.json", io::crossed_to_json(&crossed));
    let adj = yd_adjoint(&crossed, 0).unwrap();
    let adj_path = ws.write("adj.json", io::yd_to_json(&crossed, &adj, "hg.json"));

    // truncated semantics validate
    let truncated = ws.arg("t.json");
    let out = run(&["tensor", adj_path.to_str().unwrap(), adj_path.to_str().unwrap(), "-o", &truncated]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));

    // full-space semantics fail counitarity on this genuinely weak instance
    let full = ws.arg("f.json");
    let out = run(&[
        "tensor",
        adj_path.to_str().unwrap(),
        adj_path.to_str().unwrap(),
        "-o",
        &full,
        "--full-space",
    ]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stdout).contains("yd_counit"));
    let _ = hg;
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let ws = Workspace::new();
    let (_, _, _, hg) = kz3_setup(&ws);
    let first = run(&["check-crossed", hg.to_str().unwrap(), "--format", "machine"]);
    let second = run(&["check-crossed", hg.to_str().unwrap(), "--format", "machine"]);
    assert_eq!(first.stdout, second.stdout);
    assert!(!first.stdout.is_empty());
}

#[test]
fn report_flag_writes_to_file() {
    let ws = Workspace::new();
    let (base, _, _, _) = kz3_setup(&ws);
    let report = ws.arg("report.jsonl");
    let out = run(&["check-base", base.to_str().unwrap(), "--format", "machine", "--report", &report]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let text = fs::read_to_string(Path::new(&report)).unwrap();
    assert!(text.lines().all(|l| l.starts_with('{')));
}
