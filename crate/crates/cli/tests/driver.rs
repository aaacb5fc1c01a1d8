//! End-to-end checks of the command-line driver: dataset shape, config
//! handling, preset resolution, and process exit codes.

use std::io::Write;
use std::process::Command;

use sqres_cli::config::{ConfigFile, RunConfig};
use sqres_cli::figures::{preset, FIGURE_IDS};
use sqres_cli::observables;
use sqres_cli::runs::run_evolve;
use sqres_cli::CliError;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sqres"))
}

#[test]
fn evolve_dataset_shape() {
    let config = RunConfig {
        samples: 20,
        ..RunConfig::default()
    };
    let dataset = run_evolve(&config).unwrap();
    assert_eq!(dataset.header[0], "t");
    assert_eq!(dataset.rows.len(), 21);
    for row in &dataset.rows {
        assert_eq!(row.len(), dataset.header.len());
        assert!(row.iter().all(|v| v.is_finite()));
    }
    let text = dataset.render();
    assert!(text.starts_with("# sqres "));
    let header_line = text.lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(header_line, dataset.header.join(","));
}

#[test]
fn config_file_overrides() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, r#"{{"alpha": 0.5, "samples": 10, "family": "epr"}}"#).unwrap();
    let mut config = RunConfig::default();
    ConfigFile::load(file.path()).unwrap().apply(&mut config).unwrap();
    assert_eq!(config.alpha, 0.5);
    assert_eq!(config.samples, 10);
    assert_eq!(config.family, sqres_core::fock::StateFamily::Epr);
}

#[test]
fn config_file_rejects_unknown_keys() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, r#"{{"alpa": 0.5}}"#).unwrap();
    match ConfigFile::load(file.path()) {
        Err(CliError::Usage(_)) => {}
        other => panic!("expected usage error, got {other:?}"),
    }
}

#[test]
fn unknown_observable_is_rejected() {
    assert!(observables::parse_list("concurrence,bogus").is_err());
    assert!(observables::parse_list("concurrence,trace").is_ok());
}

#[test]
fn figure_presets_resolve() {
    for id in FIGURE_IDS {
        preset(id).unwrap();
    }
    assert!(preset("1z").is_err());
}

#[test]
fn selftest_reports_ok() {
    let out = bin().arg("selftest").output().unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = stdout.lines().collect();
    assert!(!lines.is_empty());
    assert!(lines.iter().all(|l| l.starts_with("ok - ")));
}

#[test]
fn unphysical_parameters_exit_with_usage_code() {
    let out = bin()
        .args(["evolve", "--N", "0.1", "--M", "0.9"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().starts_with("error:"));
}

#[test]
fn evolve_writes_csv_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.csv");
    let out = bin()
        .args(["evolve", "--samples", "5", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("# sqres "));
    let data: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(data.len(), 7); // header plus six samples
    let first_cell = data[1].split(',').next().unwrap();
    assert_eq!(first_cell.parse::<f64>().unwrap(), 0.0);
}

#[test]
fn steady_report_names_the_regime() {
    let out = bin().args(["steady", "--N", "0.1"]).output().unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("# regime = thermal"));
    assert!(stdout.contains("n,P_n,R_n"));
}
