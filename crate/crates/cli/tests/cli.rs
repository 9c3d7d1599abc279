use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const WORKED: &str = r#"
schema_version = 1
t_max = 6.0

[data]
n = 2
radius = 1.0
rho_l = 1.0
u_l = 1.0
rho_r = 1.0
u_r = -1.0

[grid]
r = [0.25, 1.0, 3.0]
t = [0.5, 2.0]

[oracle]
cells = [1000, 10000]
r_max = 8.0
times = [0.5, 2.0, 3.9]
"#;

const CONTACT: &str = r#"
schema_version = 1
t_max = 2.0

[data]
n = 3
radius = 1.0
rho_l = 2.0
u_l = 0.5
rho_r = 1.0
u_r = 0.5

[grid]
r = [0.5, 2.0]
t = [0.0]
"#;

const VACUUM: &str = r#"
schema_version = 1
t_max = 1.0

[data]
n = 2
radius = 1.0
rho_l = 0.0
u_l = 0.0
rho_r = 0.0
u_r = 0.0
"#;

struct Run {
    dir: TempDir,
    output: Output,
}

impl Run {
    fn code(&self) -> i32 {
        self.output.status.code().unwrap()
    }

    fn out(&self) -> PathBuf {
        self.dir.path().join("out")
    }

    fn read(&self, name: &str) -> String {
        fs::read_to_string(self.out().join(name)).unwrap()
    }

    fn json(&self, name: &str) -> Value {
        serde_json::from_str(&self.read(name)).unwrap()
    }

    fn csv(&self, name: &str) -> Vec<Vec<String>> {
        self.read(name)
            .lines()
            .map(|l| l.split(',').map(str::to_owned).collect())
            .collect()
    }
}

fn invoke(root: &Path, command: &str, config: &str, env: &[(&str, &str)]) -> Output {
    let path = root.join("scenario.toml");
    fs::write(&path, config).unwrap();
    Command::new(env!("CARGO_BIN_EXE_radial-sw"))
        .args([command, "--config"])
        .arg(&path)
        .arg("--out")
        .arg(root.join("out"))
        .envs(env.iter().copied())
        .output()
        .unwrap()
}

fn run(command: &str, config: &str) -> Run {
    let dir = TempDir::new().unwrap();
    let output = invoke(dir.path(), command, config, &[]);
    Run { dir, output }
}

fn num(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

#[test]
fn solve_worked_example_lists_constants_and_events() {
    let r = run("solve", WORKED);
    assert_eq!(r.code(), 0);
    let plan = r.json("plan.json");
    assert_eq!(plan["case"]["kind"], "delta_shock");
    assert_eq!(num(&plan["v0"]), 0.0);
    assert!((num(&plan["events"]["t_in"]) - 1.0).abs() < 1e-12);
    assert!((num(&plan["events"]["t_sw0"]) - 4.0).abs() < 1e-12);
    let c = &plan["constants"];
    assert!((num(&c["C"]) - 1.0).abs() < 1e-12);
    assert!(num(&c["D"]).abs() < 1e-12 && num(&c["E"]).abs() < 1e-12);
    let jump: f64 = plan["phases"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| num(&p["origin_jump_mass"]))
        .sum();
    assert!((jump - 8.0 * std::f64::consts::PI).abs() < 1e-9);
}

#[test]
fn solve_contact_has_a_single_contact_front() {
    let r = run("solve", CONTACT);
    assert_eq!(r.code(), 0);
    let plan = r.json("plan.json");
    let phases = plan["phases"].as_array().unwrap();
    assert_eq!(phases.len(), 1);
    let fronts = phases[0]["fronts"].as_array().unwrap();
    // u > 0 also opens a vacuum at the origin
    let kinds: Vec<_> = fronts.iter().map(|f| f["kind"].as_str().unwrap()).collect();
    assert_eq!(kinds, ["vacuum_edge", "contact"]);
    assert_eq!(num(&phases[0]["end"]), 2.0);
}

#[test]
fn solve_all_vacuum_reports_empty_plan() {
    let r = run("solve", VACUUM);
    assert_eq!(r.code(), 0);
    let plan = r.json("plan.json");
    assert!(plan["notice"].as_str().unwrap().contains("empty plan"));
    assert!(String::from_utf8_lossy(&r.output.stdout).contains("empty plan"));
}

#[test]
fn sample_rows_cover_vacuum_atoms_and_power_laws() {
    let r = run("sample", WORKED);
    assert_eq!(r.code(), 0);
    let rows = r.csv("samples.csv");
    assert_eq!(
        rows[0].join(","),
        "r,t,rho,u,is_vacuum,m0,atom_radius,atom_sigma,atom_total_mass"
    );
    assert_eq!(rows.len(), 1 + 3 * 2);
    // t = 0.5: vacuum near the origin, the front at r = 1, outer state beyond
    let vac = &rows[1];
    assert_eq!((vac[2].as_str(), vac[4].as_str()), ("0", "1"));
    let front = &rows[2];
    assert_eq!(front[6].parse::<f64>().unwrap(), 1.0);
    assert!(front[8].parse::<f64>().unwrap() > 0.0);
    let outer = &rows[3];
    assert!((outer[2].parse::<f64>().unwrap() - 1.0 / 3.0).abs() < 1e-15);
    assert!(outer[6].is_empty());

    let r = run("sample", CONTACT);
    let rows = r.csv("samples.csv");
    // coeff r^(1-n) with n = 3
    assert_eq!(rows[1][2].parse::<f64>().unwrap(), 2.0 / 0.25);
    assert_eq!(rows[2][2].parse::<f64>().unwrap(), 1.0 / 4.0);
}

#[test]
fn verify_worked_example_passes_with_order_at_least_one() {
    let r = run("verify", WORKED);
    assert_eq!(r.code(), 0, "{}", String::from_utf8_lossy(&r.output.stdout));
    let doc = r.json("verify.json");
    for c in doc["checks"].as_array().unwrap() {
        assert_eq!(c["status"], "PASS", "{c}");
    }
    assert!(num(&doc["ladder"]["mass_order"]) >= 1.0);
    assert!(num(&doc["conservation"]["max_mass_drift"]) <= 1e-9);
}

#[test]
fn verify_contact_is_trivially_clean() {
    let r = run("verify", CONTACT);
    assert_eq!(r.code(), 0);
    let stdout = String::from_utf8_lossy(&r.output.stdout);
    assert_eq!(stdout.lines().filter(|l| l.starts_with("PASS")).count(), 3);
}

#[test]
fn example64_flags_entropy_unless_expected() {
    let base = "schema_version = 1\n";
    let r = run("example64", base);
    assert_eq!(r.code(), 1);
    let doc = r.json("example64.json");
    let status = |doc: &Value, name: &str| {
        doc["checks"]
            .as_array()
            .unwrap()
            .iter()
            .find(|c| c["name"] == name)
            .unwrap()["status"]
            .clone()
    };
    assert_eq!(status(&doc, "entropy"), "FAIL");
    assert_eq!(status(&doc, "ode_residual"), "PASS");
    assert_eq!(status(&doc, "reference_values"), "PASS");
    assert!(num(&doc["weak_entropy_limit"]) > 0.0);

    let r = run("example64", &format!("{base}[verify]\nexpect_fail = [\"entropy\"]\n"));
    assert_eq!(r.code(), 0);
    assert_eq!(status(&r.json("example64.json"), "entropy"), "EXPECTED_FAIL");
    assert_eq!(r.csv("example64.csv").len(), 1 + 491);
}

#[test]
fn oracle_errors_shrink_with_resolution() {
    let r = run("oracle", WORKED);
    assert_eq!(r.code(), 0);
    let rows = r.csv("oracle.csv");
    assert_eq!(
        rows[0].join(","),
        "t,N,pos_exact,pos_oracle,mass_exact,mass_oracle,m0_exact,m0_oracle"
    );
    assert_eq!(rows.len(), 1 + 3 * 2);
    for pair in rows[1..].chunks(2) {
        let err = |row: &Vec<String>| (row[2].parse::<f64>().unwrap() - row[3].parse::<f64>().unwrap()).abs();
        assert!(err(&pair[1]) <= err(&pair[0]) + 1e-12);
        assert!(err(&pair[1]) <= 0.02);
    }
}

fn snapshot(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (
                e.file_name().to_string_lossy().into_owned(),
                fs::read(e.path()).unwrap(),
            )
        })
        .collect();
    files.sort();
    files
}

#[test]
fn outputs_are_byte_identical_across_runs_and_thread_counts() {
    let snaps: Vec<_> = ["1", "4", "4"]
        .iter()
        .map(|threads| {
            let dir = TempDir::new().unwrap();
            for cmd in ["solve", "sample", "verify", "oracle"] {
                let out = invoke(dir.path(), cmd, WORKED, &[("RADIAL_SW_THREADS", threads)]);
                assert_eq!(out.status.code(), Some(0));
            }
            snapshot(&dir.path().join("out"))
        })
        .collect();
    assert_eq!(snaps[0].len(), 4);
    assert_eq!(snaps[0], snaps[1]);
    assert_eq!(snaps[1], snaps[2]);
}

#[test]
fn config_errors_exit_with_two() {
    let unsorted = WORKED.replace("r = [0.25, 1.0, 3.0]", "r = [1.0, 0.25]");
    for bad in [
        "schema_version = 9\n",
        "not toml at all",
        unsorted.as_str(),
        "schema_version = 1\n",
    ] {
        let r = run("solve", bad);
        assert_eq!(r.code(), 2, "{bad}");
        assert!(String::from_utf8_lossy(&r.output.stderr).contains("config error"));
    }

    let dir = TempDir::new().unwrap();
    let out = invoke(dir.path(), "solve", WORKED, &[("RADIAL_SW_THREADS", "0")]);
    assert_eq!(out.status.code(), Some(2));

    let missing = Command::new(env!("CARGO_BIN_EXE_radial-sw"))
        .args(["solve", "--config"])
        .arg(dir.path().join("absent.toml"))
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn evaluation_beyond_the_horizon_is_a_hard_failure() {
    let late = WORKED.replace("t = [0.5, 2.0]", "t = [0.5, 7.0]");
    let r = run("sample", &late);
    assert_eq!(r.code(), 1);
    assert!(String::from_utf8_lossy(&r.output.stderr).contains("horizon"));
}
