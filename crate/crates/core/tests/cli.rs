use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn satlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_satlab")).args(args).output().expect("binary runs")
}

fn report_value(dir: &Path, key: &str) -> String {
    let text = fs::read_to_string(dir.join("solve_report.csv")).unwrap();
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key},")).map(str::to_string))
        .unwrap_or_else(|| panic!("{key} missing from report"))
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

const BASE: &str = r#"
[domain]
lower = -1.0
upper = 1.0
nodes = 65
boundary = "dirichlet"
[coefficients]
a = 1.0
b = 1.0
[forcing]
kind = "constant"
value = 2.0
"#;

#[test]
fn null_solution_preset_succeeds() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("null");
    let o = satlab(&["solve", "--preset", "null_solution", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    for f in ["solve_report.csv", "stages.csv", "field.csv", "run_manifest.txt"] {
        assert!(out.join(f).exists(), "{f}");
    }
    assert!(report_value(&out, "h1").parse::<f64>().unwrap() <= 1e-6);
    assert!(report_value(&out, "max_abs_U_minus_F_over_a").parse::<f64>().unwrap() <= 1e-6);
    let manifest = fs::read_to_string(out.join("run_manifest.txt")).unwrap();
    assert!(manifest.contains("exercises = null-solution regime"));
    assert!(manifest.contains("exit_code = 0"));
}

#[test]
fn malformed_config_exits_with_two_and_names_the_field() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(tmp.path(), "bad.toml", &BASE.replace("nodes = 65", "nodes = 65\nspacing = 0.1"));
    let o = satlab(&["solve", "--config", &cfg, "--out", tmp.path().join("o").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("spacing"));

    let cfg = write(tmp.path(), "bad2.toml", &BASE.replace("value = 2.0", "value = \"two\""));
    let o = satlab(&["solve", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("value"));

    let cfg = write(tmp.path(), "bad3.toml", &BASE.replace("nodes = 65", "nodes = 1"));
    let o = satlab(&["solve", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("domain.nodes"));

    let o = satlab(&["solve", "--preset", "no_such_preset"]);
    assert_eq!(o.status.code(), Some(2));
    let o = satlab(&["solve", "--config", "/nonexistent/file.toml"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn inadmissible_regime_exits_with_four() {
    let tmp = tempfile::tempdir().unwrap();
    let text = BASE.replace("a = 1.0", "a = -1.0").to_string() + "[analysis]\nrequire_admissible = true\n";
    let cfg = write(tmp.path(), "regime.toml", &text);
    let out = tmp.path().join("o");
    let o = satlab(&["solve", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("a∉𝔸"));
    assert!(fs::read_to_string(out.join("run_manifest.txt")).unwrap().contains("exit_code = 4"));
    // the same coefficients without the requirement are attempted
    let cfg = write(tmp.path(), "classify.toml", &BASE.replace("a = 1.0", "a = -1.0"));
    let o = satlab(&["classify", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(fs::read_to_string(out.join("classify.csv")).unwrap().contains("existence,false"));
}

#[test]
fn non_convergence_exits_with_three_and_keeps_partial_artifacts() {
    let tmp = tempfile::tempdir().unwrap();
    let text = BASE.to_string() + "[solver]\nmax_iter = 1\ntol_fp = 1e-14\n";
    let cfg = write(tmp.path(), "stall.toml", &text);
    let out = tmp.path().join("o");
    let o = satlab(&["solve", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(out.join("field.csv").exists());
    assert!(out.join("history.csv").exists());
    assert!(fs::read_to_string(out.join("run_manifest.txt")).unwrap().contains("exit_code = 3"));
}

#[test]
fn reruns_are_bit_identical() {
    let tmp = tempfile::tempdir().unwrap();
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    for dir in [&a, &b] {
        let o = satlab(&["profile", "--preset", "compact_support", "--out", dir.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    let mut names: Vec<_> = fs::read_dir(&a).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert!(names.len() >= 7);
    for name in names {
        let left = fs::read(a.join(&name)).unwrap();
        let right = fs::read(b.join(&name)).unwrap();
        if name == "run_manifest.txt" {
            // the manifest records the output directory nowhere, so it matches too
            assert_eq!(left, right);
        }
        assert_eq!(left, right, "{name:?} differs");
    }
}

#[test]
fn refine_flag_halves_the_spacing() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("o");
    let o = satlab(&["classify", "--preset", "null_solution", "--refine", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let cfg = write(tmp.path(), "c.toml", BASE);
    let o = satlab(&["solve", "--config", &cfg, "--refine", "1", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let manifest = fs::read_to_string(out.join("run_manifest.txt")).unwrap();
    assert!(manifest.contains("domain_nodes = [129]"), "{manifest}");
    assert!(manifest.contains("refine = 1"));
}

#[test]
fn every_subcommand_writes_its_table() {
    let tmp = tempfile::tempdir().unwrap();
    for (cmd, preset, file) in [
        ("scan", "scan", "scan.csv"),
        ("soliton", "soliton", "soliton.csv"),
        ("sp", "null_solution", "sp_history.csv"),
        ("profile", "compact_support", "localization.csv"),
    ] {
        let out = tmp.path().join(cmd);
        let o = satlab(&[cmd, "--preset", preset, "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{cmd}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(out.join(file).exists(), "{cmd} {file}");
    }
    let o = satlab(&["soliton", "--preset", "null_solution"]);
    assert_eq!(o.status.code(), Some(2));
}
