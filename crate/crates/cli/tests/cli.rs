use std::path::PathBuf;
use std::process::Command;

use dirfib::dump::write_samples;
use dirfib::explain::explain;
use dirfib::{run_scenario, Report, RunOptions, Scenario, TaskResult};
use dirfib_core::{DPath, DSpace, Point, SampleGrid, StandardKind, Verdict};
use proptest::prelude::*;

const SPACES: &str = r#"
  "spaces": {
    "up_i": { "kind": "standard", "standard": "directed_In", "dim": 1 },
    "nat_r": { "kind": "standard", "standard": "natural_Rn", "dim": 1 }
  },
  "witnesses": {
    "product": { "constructor": "product", "base": "up_i", "fiber": "nat_r" },
    "wedge": { "constructor": "wedge" }
  }"#;

fn scenario(tasks: &str) -> String {
    format!(r#"{{ "version": 1, "seed": 5, {SPACES}, "tasks": [{tasks}] }}"#)
}

fn write_temp(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dirfib-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run_cli(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_dirfib")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn run(text: &str) -> Vec<TaskResult> {
    run_scenario(&Scenario::parse(text).unwrap(), &RunOptions::default()).unwrap()
}

#[test]
fn empty_task_list_exits_zero() {
    let p = write_temp("empty.json", &scenario(""));
    let (code, out, _) = run_cli(&["run", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["tasks"].as_array().unwrap().len(), 0);
    assert_eq!(v["summary"]["total"], 0);
}

#[test]
fn product_weak_lift_passes() {
    let r = run(&scenario(r#"{ "name": "lift", "kind": "weak_lift", "witness": "product", "problems": 1 }"#));
    assert_eq!(r.len(), 1);
    assert_eq!(r[0].verdict(), Verdict::Pass, "{}", explain(&r[0]));
}

#[test]
fn expected_infeasible_is_green_and_unexpected_is_red() {
    let ok = scenario(r#"{ "name": "s", "kind": "strict_lift", "witness": "wedge", "start": [0, -1], "expect": "INFEASIBLE" }"#);
    let p = write_temp("infeasible.json", &ok);
    let (code, out, _) = run_cli(&["run", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("\"verdict\": \"INFEASIBLE\""));

    let bad = ok.replace(r#", "expect": "INFEASIBLE""#, "");
    let p = write_temp("unexpected.json", &bad);
    let (code, out, _) = run_cli(&["run", p.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("\"unexpected\": 1"));
}

#[test]
fn parse_errors_exit_two_with_position() {
    let p = write_temp("broken.json", "{ \"version\": 1,\n  \"tasks\": [ { \"name\": 3 } ] }");
    let (code, _, err) = run_cli(&["run", p.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2"), "{err}");

    let p = write_temp("ctor.json", r#"{ "version": 1, "witnesses": { "w": { "constructor": "torus" } } }"#);
    let (code, _, err) = run_cli(&["run", p.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("torus"), "{err}");

    let (code, _, _) = run_cli(&["run", p.to_str().unwrap(), "--grid", "x"]);
    assert_eq!(code, 2);
    let (code, _, _) = run_cli(&["frobnicate"]);
    assert_eq!(code, 2);
}

#[test]
fn tol_override_applies_to_every_task() {
    let text = scenario(
        r#"{ "name": "a", "kind": "axioms", "space": "up_i", "probes": 2 },
           { "name": "t", "kind": "warp", "eps": [0.5] }"#,
    );
    let s = Scenario::parse(&text).unwrap();
    let r = run_scenario(&s, &RunOptions { grid: Some(11), tol: Some(1e-3), parallel: false }).unwrap();
    assert!(r.iter().all(|t| t.tol == 1e-3 && t.grid == 11));
    assert!(run_scenario(&s, &RunOptions { tol: Some(-1.0), ..RunOptions::default() }).is_err());
}

#[test]
fn failures_do_not_abort_and_explain_shows_witness() {
    let text = format!(
        r#"{{ "version": 1,
          "spaces": {{
            "up_i": {{ "kind": "standard", "standard": "directed_In", "dim": 1 }},
            "down_i": {{ "kind": "opposite", "of": "up_i" }}
          }},
          "witnesses": {{ "wedge": {{ "constructor": "wedge" }} }},
          "tasks": [
            {{ "name": "bad", "kind": "fhe", "base": "up_i", "fiber": "down_i", "exponent": 2, "probes": 3 }},
            {{ "name": "s", "kind": "strict_lift", "witness": "wedge", "start": [0, -1], "expect": "INFEASIBLE" }},
            {{ "name": "after", "kind": "warp", "eps": [0.25] }}
          ] }}"#
    );
    let r = run(&text);
    assert_eq!(r.len(), 3);
    assert_eq!(r[0].verdict(), Verdict::Fail);
    assert_eq!(r[2].verdict(), Verdict::Pass);
    let e = explain(&r[0]);
    assert!(e.contains("UNEXPECTED") && e.contains("witness:") && e.contains("parameters"), "{e}");
    let e = explain(&r[1]);
    assert!(e.contains("INFEASIBLE") && e.contains("forces y"), "{e}");
    let report = Report::new(&r);
    assert_eq!(report.summary.unexpected, 1);
    assert_eq!(report.summary.infeasible, 1);
}

#[test]
fn task_errors_become_failures() {
    let r = run(&scenario(r#"{ "name": "s", "kind": "strict_lift", "witness": "product", "start": [0, 0] }"#));
    assert_eq!(r[0].verdict(), Verdict::Fail);
    assert!(explain(&r[0]).contains("wedge witness only"));
}

#[test]
fn diagonal_wedge_lift_dump() {
    let r = run(&scenario(r#"{ "name": "d", "kind": "weak_lift", "witness": "wedge", "start": [0, -1] }"#));
    let mut buf = vec![];
    write_samples(&r[0], &SampleGrid::new(101).unwrap(), &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("object_id,t,coord_0,coord_1"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    let lift: Vec<_> = rows.iter().filter(|r| r[0] == "lift0_x0").collect();
    assert_eq!(lift.len(), SampleGrid::new(101).unwrap().points().len());
    for row in lift {
        assert_eq!(row[2], row[3]);
    }
}

#[test]
fn constant_path_dump_rows_are_identical() {
    let s = DSpace::standard(StandardKind::NaturalRn, 3).unwrap();
    let r = TaskResult {
        name: "c".into(),
        tag: "test",
        expect: Verdict::Pass,
        certificate: dirfib_core::Certificate::pass("test", 1e-9),
        ms: 0.0,
        grid: 5,
        tol: 1e-9,
        provenance: String::new(),
        objects: vec![("c".into(), DPath::constant(&s, Point::from_slice(&[1.0, -2.0, 0.5])))],
    };
    let mut buf = vec![];
    write_samples(&r, &SampleGrid::new(5).unwrap(), &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let coords: std::collections::BTreeSet<String> =
        text.lines().skip(1).map(|l| l.splitn(3, ',').nth(2).unwrap().to_string()).collect();
    assert_eq!(coords.len(), 1);
    assert_eq!(coords.into_iter().next().unwrap(), "1,-2,0.5");
}

#[test]
fn face_rows_match_initial_map() {
    let r = run(&scenario(r#"{ "name": "l", "kind": "weak_lift", "witness": "product", "problems": 3 }"#));
    let r = &r[0];
    assert_eq!(r.verdict(), Verdict::Pass);
    let lifts: Vec<&(String, DPath)> = r.objects.iter().filter(|(id, _)| id.starts_with("lift")).collect();
    assert_eq!(lifts.len(), 15);
    for (id, path) in lifts {
        let k: usize = id[4..id.find('_').unwrap()].parse().unwrap();
        let chain = r.objects.iter().find(|(c, _)| c == &format!("chain{k}_{}_step0", &id[id.find('_').unwrap() + 1..])).unwrap();
        let (a0, a1) = (path.eval(0.0), path.eval(1.0));
        let (c0, c1) = (chain.1.eval(0.0), chain.1.eval(1.0));
        assert!(a0.distance(&c1) < 1e-12 || a1.distance(&c0) < 1e-12, "{id}");
    }
}

#[test]
fn bundled_scenario_parses() {
    let p = concat!(env!("CARGO_MANIFEST_DIR"), "/scenarios/all_features.json");
    let s = Scenario::load(std::path::Path::new(p)).unwrap();
    assert!(s.tasks.len() >= 20);
}

#[test]
fn parallel_matches_sequential() {
    let text = scenario(
        r#"{ "name": "a", "kind": "axioms", "space": "up_i", "probes": 3 },
           { "name": "p", "kind": "lifting_pair", "witness": "wedge", "probes": 4 },
           { "name": "l", "kind": "weak_lift", "witness": "product", "problems": 2 }"#,
    );
    let s = Scenario::parse(&text).unwrap();
    let a = Report::new(&run_scenario(&s, &RunOptions::default()).unwrap()).without_timing();
    let b = Report::new(&run_scenario(&s, &RunOptions { parallel: true, ..RunOptions::default() }).unwrap()).without_timing();
    assert_eq!(a.to_json(), b.to_json());
    assert_eq!(a.tasks.len(), 3);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn random_seeds_keep_axioms_and_pairs_green(seed in any::<u64>()) {
        let text = format!(
            r#"{{ "version": 1, "seed": {seed}, {SPACES}, "tasks": [
                {{ "name": "a", "kind": "axioms", "space": "up_i", "probes": 4 }},
                {{ "name": "p", "kind": "lifting_pair", "witness": "wedge", "probes": 4 }},
                {{ "name": "q", "kind": "lifting_pair", "witness": "product", "probes": 4, "eps": 0.3 }}
            ] }}"#
        );
        let r = run(&text);
        prop_assert_eq!(r.len(), 3);
        for t in &r {
            prop_assert_eq!(t.verdict(), Verdict::Pass, "{}", explain(t));
        }
    }
}
