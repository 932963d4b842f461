use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use dgla_holonomy::algebra::rat;
use dgla_holonomy::bundle::{parse_model, BundleError, ModelBundle};
use dgla_holonomy::catalog::{tensor_model, LieFamily};
use dgla_holonomy::checks::{
    run_campaign, CampaignParams, CheckKind, CheckStatus, Format, InstanceReport,
    VerificationReport,
};
use dgla_holonomy::hinich::{generate_mc, SigmaSimplex};
use dgla_holonomy::lie::{BasisElement, DGLAModel, LieError, ModelFile};
use dgla_holonomy::report::Report;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dgla-cli-{}-{name}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dgla-holonomy"))
        .args(args)
        .output()
        .unwrap()
}

fn write_h3(dir: &std::path::Path) -> PathBuf {
    let path = dir.join("h3.json");
    let model = tensor_model(&LieFamily::Heisenberg.structure(), &rat(1, 1)).unwrap();
    fs::write(&path, model.to_json()).unwrap();
    path
}

#[test]
fn h3_model_file_loads_with_class_two() {
    let dir = scratch("h3");
    let path = write_h3(&dir);
    let m = parse_model(&path).unwrap();
    assert_eq!(m.class(), 2);
    assert_eq!(m.lower_central_class(), 2);
}

#[test]
fn jacobi_violation_names_the_triple() {
    let dir = scratch("jacobi");
    let b = |n: &str| BasisElement {
        name: n.into(),
        degree: 0,
    };
    let file = ModelFile {
        basis: vec![b("a"), b("b"), b("c")],
        differential: vec![],
        brackets: vec![(0, 1, 2, "1".into()), (0, 2, 0, "1".into())],
        class: 5,
    };
    let path = dir.join("bad.json");
    fs::write(&path, serde_json::to_string(&file).unwrap()).unwrap();
    match parse_model(&path) {
        Err(BundleError::Model {
            source: LieError::Jacobi { i, j, k },
            ..
        }) => assert_eq!((i, j, k), (0, 1, 2)),
        other => panic!("{other:?}"),
    }
    let out = cli(&["check-model", "--model", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("(0, 1, 2)"));
}

#[test]
fn empty_algebra_is_a_valid_bundle() {
    let dir = scratch("empty");
    let path = dir.join("empty.json");
    let empty = DGLAModel::new(vec![], vec![], vec![], 0).unwrap();
    fs::write(&path, empty.to_json()).unwrap();
    let bundle = ModelBundle::load(&path, None, None).unwrap();
    assert!(bundle.model.is_empty());
    assert_eq!(
        cli(&["check-model", "--model", path.to_str().unwrap()])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn parse_errors_report_line_and_column() {
    let dir = scratch("syntax");
    let path = dir.join("broken.json");
    fs::write(
        &path,
        "{\n  \"basis\": [\n    {\"name\": \"x\", \"degree\": }\n",
    )
    .unwrap();
    let err = parse_model(&path).unwrap_err().to_string();
    assert!(err.contains("line 3"), "{err}");
    assert_eq!(
        cli(&["check-model", "--model", path.to_str().unwrap()])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn sigma_files_round_trip() {
    let m = tensor_model(&LieFamily::Filiform4.structure(), &rat(-1, 2)).unwrap();
    let mu = generate_mc(&mut ChaCha8Rng::seed_from_u64(3), &m, 3, 2);
    assert_eq!(SigmaSimplex::from_json(&m, &mu.to_json()).unwrap(), mu);
}

#[test]
fn check_mc_integrate_and_validate() {
    let dir = scratch("pipeline");
    let model = write_h3(&dir);
    let (model, sigma, nerve) = (
        model.to_str().unwrap().to_string(),
        dir.join("s.json").to_str().unwrap().to_string(),
        dir.join("nerve.json").to_str().unwrap().to_string(),
    );
    let gen = cli(&[
        "generate", "--model", &model, "-n", "2", "--seed", "5", "--degree", "2", "--out", &sigma,
    ]);
    assert_eq!(gen.status.code(), Some(0));

    let mc = cli(&[
        "--format", "json", "check-mc", "--model", &model, "--sigma", &sigma,
    ]);
    assert_eq!(mc.status.code(), Some(0));
    let report = VerificationReport::parse(&String::from_utf8(mc.stdout).unwrap()).unwrap();
    assert_eq!(report.instances[0].checks.len(), 4);

    let int = cli(&[
        "integrate",
        "--model",
        &model,
        "--sigma",
        &sigma,
        "-n",
        "2",
        "--out",
        &nerve,
    ]);
    assert_eq!(
        int.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&int.stdout)
    );
    assert_eq!(
        cli(&["validate-nerve", "--model", &model, "--nerve", &nerve])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        cli(&[
            "check-model",
            "--model",
            &model,
            "--sigma",
            &sigma,
            "--nerve",
            &nerve
        ])
        .status
        .code(),
        Some(0)
    );
    let wrong_n = cli(&["integrate", "--model", &model, "--sigma", &sigma, "-n", "3"]);
    assert_eq!(wrong_n.status.code(), Some(3));

    // doubling a non-constant simplex breaks the Maurer-Cartan equation
    let text = fs::read_to_string(&sigma).unwrap();
    let m = parse_model(std::path::Path::new(&model)).unwrap();
    let mu = SigmaSimplex::from_json(&m, &text).unwrap();
    let doubled = SigmaSimplex {
        n: 2,
        mu: mu.mu.scale(&rat(2, 1)),
    };
    let bad = dir.join("bad.json");
    fs::write(&bad, doubled.to_json()).unwrap();
    let out = cli(&[
        "check-mc",
        "--model",
        &model,
        "--sigma",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("defect"));
    let out = cli(&[
        "integrate",
        "--model",
        &model,
        "--sigma",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(cli(&["verify", "no-such-check"]).status.code(), Some(2));
    assert_eq!(cli(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        cli(&["verify", "green", "--dim", "9"]).status.code(),
        Some(2)
    );
    assert_eq!(cli(&["catalog", "sl2"]).status.code(), Some(2));
}

#[test]
fn list_checks_covers_every_suite() {
    let out = String::from_utf8(cli(&["--list-checks"]).stdout).unwrap();
    for kind in CheckKind::all() {
        assert!(out.contains(kind.name()), "{kind}");
    }
}

#[test]
fn verify_is_deterministic_and_round_trips() {
    let args = [
        "--format", "json", "verify", "green", "--seed", "7", "--count", "3", "--class", "3",
        "--degree", "1",
    ];
    let a = cli(&args);
    let b = cli(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let report = VerificationReport::parse(&text).unwrap();
    assert_eq!(report.instances.len(), 3);
    assert_eq!(report.emit(Format::Structured).trim(), text.trim());
}

#[test]
fn campaigns_do_not_depend_on_the_thread_count() {
    let params = CampaignParams {
        seed: 11,
        count: 4,
        class: 4,
        dim: 6,
        degree: 2,
    };
    let parallel = run_campaign(CheckKind::DlogIdentities, &params);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let serial = pool.install(|| run_campaign(CheckKind::DlogIdentities, &params));
    assert_eq!(parallel, serial);
}

#[test]
fn failing_report_prints_residuals_exactly() {
    let mut report = Report::default();
    report.push("lhs - rhs", "[1/2*t1^2, 0]");
    let r = VerificationReport {
        command: "verify green".into(),
        seed: 1,
        instances: vec![InstanceReport {
            index: 0,
            descriptor: "h3".into(),
            checks: vec![CheckStatus::from_report("green", report)],
            shrunk: None,
        }],
        wall_time_ms: Some(12),
    };
    assert!(!r.pass());
    let human = r.emit(Format::Human);
    assert!(human.contains("FAIL") && human.contains("[1/2*t1^2, 0]"));
    assert_eq!(
        VerificationReport::parse(&r.emit(Format::Structured)).unwrap(),
        r
    );
    let passing = VerificationReport {
        instances: vec![InstanceReport {
            checks: vec![CheckStatus::from_report("green", Report::default())],
            ..r.instances[0].clone()
        }],
        ..r
    };
    assert!(passing.pass());
    assert!(!passing.emit(Format::Human).contains("failed"));
}
