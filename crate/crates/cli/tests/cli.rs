use std::path::PathBuf;
use std::process::Command as Proc;

use ks_cli::{parse_summands, run, t_lattice, CliError, Command, JobSpec, PointSpec, Report};
use lattice::LatticeSpec;

fn manifest(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(rel)
}

fn example_job() -> JobSpec {
    JobSpec::parse(&std::fs::read_to_string(manifest("jobs/paper-example.json")).unwrap()).unwrap()
}

/// Compares against tests/golden/<name>.json; UPDATE_GOLDEN=1 rewrites it.
fn golden(name: &str, report: &Report) {
    let path = manifest(&format!("tests/golden/{name}.json"));
    let text = report.to_json();
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &text).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden {}", path.display()));
    assert!(text == want, "report for {name} differs from its golden file");
}

fn data<'a>(r: &'a Report, c: Command) -> &'a serde_json::Value {
    &r.stage(c).unwrap().data
}

#[test]
fn clifford_info_on_u() {
    let r = run(&JobSpec::new(parse_summands("U").unwrap(), vec![Command::CliffordInfo])).unwrap();
    assert!(r.ok());
    let d = data(&r, Command::CliffordInfo);
    assert_eq!((d["dim"].as_u64(), d["even_dim"].as_u64()), (Some(4), Some(2)));
    golden("clifford-info-u", &r);
}

#[test]
fn clifford_info_dimension_law() {
    for (spec, n) in [("U(2)", 2), ("D4minus", 4), ("U + U(2)", 4), ("U, U(2), D4minus", 8)] {
        let r = run(&JobSpec::new(parse_summands(spec).unwrap(), vec![Command::CliffordInfo, Command::Glue])).unwrap();
        assert!(r.ok(), "{spec}: {:?}", r.failed_checks());
        let d = data(&r, Command::CliffordInfo);
        assert_eq!(d["dim"].as_u64(), Some(1 << n));
        assert_eq!(d["even_dim"].as_u64(), Some(1 << (n - 1)));
    }
}

#[test]
fn explicit_gram() {
    let spec = LatticeSpec::Gram(vec![vec!["2".into(), "1".into()], vec!["1".into(), "-2".into()]]);
    let r = run(&JobSpec::new(spec.clone(), vec![Command::CliffordInfo])).unwrap();
    assert!(r.ok());
    assert_eq!(data(&r, Command::CliffordInfo)["signature"], serde_json::json!([1, 1, 0]));
    let e = run(&JobSpec::new(spec, vec![Command::Glue])).unwrap_err();
    assert!(matches!(e, CliError::Stage { stage: Command::Glue, .. }));
}

#[test]
fn t_only_stages_reject_other_lattices() {
    let e = run(&JobSpec::new(parse_summands("U, U(2)").unwrap(), vec![Command::Decompose])).unwrap_err();
    assert!(matches!(e, CliError::Stage { stage: Command::Decompose, .. }), "{e}");
    assert!(e.to_string().starts_with("stage decompose:"));
}

#[test]
fn parse_errors() {
    assert!(matches!(parse_summands("U, E8"), Err(CliError::Parse(_))));
    assert!(matches!(JobSpec::parse("{\"commands\": []}"), Err(CliError::Parse(_))));
    let short = PointSpec { label: "p".into(), e1: vec!["1".into()], e2: vec![] };
    assert!(short.to_point().is_err());
    let job = JobSpec { elements: vec!["f1 +".into()], ..JobSpec::new(t_lattice(), vec![Command::Rep]) };
    assert!(matches!(run(&job), Err(CliError::Stage { stage: Command::Rep, .. })));
}

#[test]
fn commands_run_in_dependency_order() {
    let job = JobSpec::new(parse_summands("U").unwrap(), vec![Command::Glue, Command::CliffordInfo, Command::Glue]);
    let r = run(&job).unwrap();
    let order: Vec<Command> = r.stages.iter().map(|s| s.stage).collect();
    assert_eq!(order, [Command::CliffordInfo, Command::Glue]);
    assert_eq!(r.job.commands, order);
}

#[test]
fn rep_dump() {
    let job = JobSpec { elements: vec!["f1*f2".into(), "h1".into(), "1 + f1".into()], ..JobSpec::new(t_lattice(), vec![Command::Rep]) };
    let r = run(&job).unwrap();
    assert!(r.ok());
    let d = data(&r, Command::Rep);
    assert_eq!(d[0]["matrix"].as_array().unwrap().len(), 8);
    assert!(d[0]["split"].is_array());
    assert!(d[1]["split"].is_null());
    assert!(d[2]["parity"].is_null());
    assert_eq!(r.stage(Command::Rep).unwrap().checks.len(), 2);
}

#[test]
fn attributes_report() {
    let r = run(&JobSpec::new(t_lattice(), vec![Command::Attributes])).unwrap();
    assert!(r.ok(), "{:?}", r.failed_checks());
    let d = data(&r, Command::Attributes);
    let names: Vec<&str> = d["blocks"].as_array().unwrap().iter().map(|b| b["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["I6", "I12", "I12", "I6"]);
    assert_eq!(d["t_canonical"][0][1], "256");
    assert_eq!(d["t_canonical"][2][3], "-512");
    assert_eq!(d["order"], serde_json::json!([1, 4, 2, 3]));
    golden("attributes", &r);
}

#[test]
fn shipped_example_job() {
    let job = example_job();
    let r = run(&job).unwrap();
    assert_eq!(r.failed_checks(), ["period.expected_ab"]);
    assert!(r.stage(Command::Attributes).unwrap().checks.iter().any(|c| c.name == "expected_t" && c.pass));
    let p = data(&r, Command::Period);
    assert_eq!(p["natural_branch"], "omega");
    assert_eq!(p["runs"][0]["a"], "3 + (-2)*sqrt2");
    assert_eq!(p["runs"][0]["b"], "-9/7 + (4/7)*sqrt2");
    let scan = data(&r, Command::Rank18Scan);
    let ab: Vec<(&str, &str)> =
        scan.as_array().unwrap().iter().map(|x| (x["a"].as_str().unwrap(), x["b"].as_str().unwrap())).collect();
    assert_eq!(ab, [("1/3", "-1/3"), ("9/7 + (-4/7)*sqrt2", "-3 + (2)*sqrt2"), ("3/5", "0")]);
    let rc = data(&r, Command::RankCheck);
    let ones: Vec<u64> = rc["complex_ranks"].as_array().unwrap().iter().flat_map(|p| p.as_array().unwrap().iter().map(|x| x.as_u64().unwrap())).collect();
    assert_eq!(ones, [1; 8]);
    golden("paper-example", &r);
}

#[test]
fn report_reproduces_from_its_echoed_job() {
    let r = run(&example_job()).unwrap();
    let echoed = JobSpec::parse(&serde_json::to_string(&r.job).unwrap()).unwrap();
    assert_eq!(run(&echoed).unwrap().to_json(), r.to_json());
    let back: Report = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(back, r);
}

#[test]
fn both_branches() {
    let job = JobSpec { branch: ks_cli::BranchChoice::Both, ..JobSpec::new(t_lattice(), vec![Command::Period]) };
    let r = run(&job).unwrap();
    assert!(r.ok());
    let runs = data(&r, Command::Period)["runs"].as_array().unwrap();
    assert_eq!(runs[1]["branch"], "omega_bar");
    assert_eq!(runs[1]["a"], "-33/31 + (8/31)*sqrt2");
    assert_eq!(runs[1]["b"], "-3 + (2)*sqrt2");
}

#[test]
fn expectation_matches_computed_values() {
    let expect = ks_cli::Expectations { t: None, a: Some("-3 + 2*sqrt2".into()), b: Some("(9 - 4*sqrt2)/7".into()) };
    let job = JobSpec { expect, ..JobSpec::new(t_lattice(), vec![Command::Period]) };
    assert!(run(&job).unwrap().ok());
}

#[test]
fn rank18_rejects_points_outside_t_prime() {
    let p = PointSpec {
        label: "off".into(),
        e1: ["1/2", "1", "0", "0", "0", "0", "0", "0"].map(String::from).to_vec(),
        e2: ["0", "0", "-1/2", "-1/2", "1", "0", "0", "0"].map(String::from).to_vec(),
    };
    let job = JobSpec { points: vec![p], ..JobSpec::new(t_lattice(), vec![Command::Rank18Scan]) };
    let r = run(&job).unwrap();
    assert_eq!(r.failed_checks(), ["rank18-scan.off.inside_t_prime"]);
}

fn bin() -> Proc {
    let mut c = Proc::new(env!("CARGO_BIN_EXE_kuga-satake"));
    c.env("KUGA_SATAKE_VERBOSITY", "quiet");
    c
}

#[test]
fn binary_exit_codes() {
    let out = bin().args(["clifford-info", "--lattice", "U"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let r: Report = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r.passed, 3);

    let job = manifest("jobs/paper-example.json");
    let out = bin().arg("run-job").arg(&job).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let r: Report = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r.to_json(), run(&example_job()).unwrap().to_json());

    let out = bin().args(["run-job", "/nonexistent.json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["clifford-info", "--lattice", "E8"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn binary_subcommands() {
    let pts = manifest("jobs/rank18-points.json");
    let out = bin().arg("rank18-scan").arg("--points").arg(&pts).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let omega = manifest("jobs/omega.json");
    let out = bin().arg("period").arg("--omega").arg(&omega).args(["--branch", "both"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = bin().arg("rank-check").arg("--omega").arg(&omega).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = bin().args(["rep", "f1*h1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = bin().arg("glue").arg("--lattice-file").arg(manifest("jobs/lattice-t.json")).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = bin().args(["--verbosity", "summary", "decompose"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stderr).unwrap().contains("ok   decompose.eps_split_units"));
}
