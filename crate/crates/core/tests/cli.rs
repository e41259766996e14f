use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_defect-pt"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn schema() -> serde_json::Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json");
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn validate(doc: &serde_json::Value) {
    let schema = schema();
    let compiled = jsonschema::JSONSchema::compile(&schema).expect("schema compiles");
    let msgs: Vec<String> = match compiled.validate(doc) {
        Ok(()) => Vec::new(),
        Err(errors) => errors.map(|e| e.to_string()).collect(),
    };
    assert!(msgs.is_empty(), "schema violations: {msgs:?}");
}

#[test]
fn profile_csv_to_stdout() {
    let out = run(&["profile", "--ymin", "-5", "--ymax", "5", "--n", "11", "--k", "0,1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "k,y,field,derivative,energy_density,potential");
    assert_eq!(lines.len(), 1 + 2 * 11);
    assert_eq!(lines.iter().filter(|l| l.starts_with("k,")).count(), 1);
    // k = 0 block, y = 0 row: field 0, density 1
    let center: Vec<f64> = lines[6].split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(center[1], 0.0);
    assert_eq!(center[2], 0.0);
    assert!((center[4] - 1.0).abs() < 1e-15);
}

#[test]
fn every_command_emits_schema_valid_json() {
    let cases: &[&[&str]] = &[
        &["profile", "--n", "41"],
        &["mass", "--k", "0,0.5,1"],
        &["qm-potential", "--family", "sg", "--n", "41"],
        &["pt-modes", "--n", "41"],
        &["perturb", "--q-steps", "3"],
        &["solve", "--family", "chi4", "--k", "0,1", "--n", "801"],
        &["continuum", "--n", "21", "--q-steps", "3"],
    ];
    for args in cases {
        let mut full = args.to_vec();
        full.extend(["--format", "json"]);
        let out = run(&full);
        assert!(
            out.status.success(),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        validate(&doc);
        assert_eq!(doc["command"], args[0]);
    }
}

#[test]
fn solve_writes_sibling_surface_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spec.csv");
    let out = run(&["solve", "--k", "0", "--n", "801", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let spectrum = fs::read_to_string(&path).unwrap();
    assert!(spectrum.starts_with("k,level,omega2_numerical,box_artifact,omega2_closed,difference\n"));
    assert_eq!(spectrum.lines().count(), 1 + 3);
    let surfaces = fs::read_to_string(dir.path().join("spec.surfaces.csv")).unwrap();
    assert!(surfaces.starts_with("k,y,v_qm,psi0\n"));
    assert_eq!(surfaces.lines().count(), 1 + 801);
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let out = run(&["mass", "--k", "0,0.3,2", "--out", p.to_str().unwrap()]);
        assert!(out.status.success());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn config_errors_exit_with_2() {
    for args in [
        vec!["profile", "--family", "phi6"],
        vec!["profile", "--format", "xml"],
        vec!["profile", "--n", "2"],
        vec!["profile", "--ymin", "3", "--ymax", "1"],
        vec!["continuum", "--L", "-1"],
        vec!["solve", "--levels", "0"],
        vec!["mass", "--tol", "-1"],
        vec!["frobnicate"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn unwritable_output_path_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing/dir/out.csv");
    let out = run(&["profile", "--n", "5", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn numerical_failure_exits_with_3() {
    // a tolerance far below rounding cannot be met
    let out = run(&["mass", "--k", "0.5", "--tol", "1e-30"]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn sweep_writes_every_product() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "sweep",
        "--out",
        dir.path().to_str().unwrap(),
        "--n",
        "801",
        "--q-steps",
        "5",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    for stem in [
        "profile_phi4",
        "profile_chi4",
        "profile_sg",
        "qm_potential_phi4",
        "spectrum_phi4",
        "spectrum_phi4.surfaces",
        "spectrum_sg",
        "mass",
        "pt_modes",
        "perturb",
        "perturb.continuum_factor",
        "continuum",
    ] {
        let p = dir.path().join(format!("{stem}.csv"));
        assert!(p.exists(), "missing {}", p.display());
        let text = fs::read_to_string(&p).unwrap();
        let header = text.lines().next().unwrap();
        assert!(!header.is_empty() && !header.contains(' '));
        assert!(text.lines().skip(1).all(|l| !l.starts_with(header)));
    }
}
