use std::path::Path;
use std::process::Command;

use vstates::cli::SolutionFile;
use vstates::solver::recheck;

const BIN: &str = env!("CARGO_BIN_EXE_vstates");

fn config(dir: &Path, body: &str) -> std::path::PathBuf {
    let p = dir.join("run.toml");
    std::fs::write(&p, body).unwrap();
    p
}

fn base(eps: &str, extra: &str) -> String {
    format!(
        "[patch]\nalpha = 0.0\nn_fold = 2\ngamma = 0.5\nb = 0.5\nd = 1.0\neps = {eps}\nmode = \"corotating\"\n{extra}\n\
         [solver]\norder_j = 12\ngrid_m = 96\ntol = 1e-10\nmax_iter = 20\nfd_step = 1e-7\n"
    )
}

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(BIN).args(args).env("VSTATES_CACHE_DIR", std::env::temp_dir()).output().unwrap();
    let text = String::from_utf8_lossy(&out.stdout).to_string() + &String::from_utf8_lossy(&out.stderr);
    (out.status.code().unwrap_or(-1), text)
}

#[test]
fn solve_writes_files_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), &base("0.04", ""));
    let out = dir.path().join("out");
    let (code, text) = run(&["solve", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap(), "--svg"]);
    assert_eq!(code, 0, "{text}");
    for f in ["solution.toml", "solution_outer.csv", "solution_inner.csv", "solution.svg"] {
        assert!(out.join(f).exists(), "missing {f}");
    }
    let csv = std::fs::read_to_string(out.join("solution_outer.csv")).unwrap();
    assert!(csv.starts_with("component,copy,x,y\n"));
    assert_eq!(csv.lines().count(), 1 + 2 * 96);

    let file = SolutionFile::read(&out.join("solution.toml")).unwrap();
    let (sol, opts) = file.to_solution().unwrap();
    let again = recheck(&sol, opts.grid_m).unwrap();
    assert!((again - sol.residual_norm).abs() <= 1e-12);
    let rewritten = dir.path().join("copy.toml");
    file.write(&rewritten).unwrap();
    let copy = SolutionFile::read(&rewritten).unwrap();
    assert_eq!(copy.coefficients, file.coefficients);
    assert_eq!(copy.scalars.speed.to_bits(), file.scalars.speed.to_bits());

    let (code, text) = run(&["verify", "--solution", out.join("solution.toml").to_str().unwrap()]);
    assert_eq!(code, 0, "{text}");
    assert!(text.contains("PASS stationarity"), "{text}");
}

#[test]
fn config_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let degenerate = base("0.04", "").replace("gamma = 0.5", "gamma = -3.0");
    let (code, text) = run(&["solve", "--config", config(dir.path(), &degenerate).to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(text.contains("patch.gamma"), "{text}");
    let euler_annulus = base("0.04", "").replace("gamma = 0.5", "gamma = 0.0");
    let (code, text) = run(&["solve", "--config", config(dir.path(), &euler_annulus).to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(text.contains("isomorphism"), "{text}");
    let (code, _) = run(&["sweep", "--config", config(dir.path(), &base("[]", "")).to_str().unwrap()]);
    assert_eq!(code, 1);
    let (code, _) = run(&["solve"]);
    assert_eq!(code, 1);
    let (code, text) = run(&["solve", "--config", config(dir.path(), &base("0.04", "bogus = 1")).to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(text.contains("bogus"), "{text}");
}

#[test]
fn non_convergence_exits_two_with_partial_record() {
    let dir = tempfile::tempdir().unwrap();
    let body = base("0.04", "").replace("max_iter = 20", "max_iter = 1").replace("tol = 1e-10", "tol = 1e-15");
    let out = dir.path().join("out");
    let (code, text) = run(&["solve", "--config", config(dir.path(), &body).to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code, 2, "{text}");
    let file = SolutionFile::read(&out.join("solution.toml")).unwrap();
    assert!(!file.scalars.converged);
}

#[test]
fn sweep_reports_order() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let cfg = config(dir.path(), &base("[0.0125, 0.025, 0.05]", ""));
    let (code, text) = run(&["sweep", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0, "{text}");
    let csv = std::fs::read_to_string(out.join("sweep.csv")).unwrap();
    assert!(csv.starts_with("eps,speed,speed_error,fitted_order\n"));
    assert_eq!(csv.lines().count(), 4);
    let order: f64 = text.lines().find_map(|l| l.strip_prefix("fitted order of |speed - speed*|: ")).unwrap().parse().unwrap();
    assert!(order >= 0.9, "{order}");
}

#[test]
fn regions_and_identities() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let body = base("0.04", "").replace("gamma = 0.5", "gamma = 2.0") + "[regions]\nb_min = 0.01\nb_max = 0.99\nb_step = 0.001\n";
    let (code, text) = run(&["regions", "--config", config(dir.path(), &body).to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0, "{text}");
    assert!(text.contains("admissible b in [0.01, 0.99"), "{text}");
    let csv = std::fs::read_to_string(out.join("regions.csv")).unwrap();
    assert!(csv.starts_with("b,min_det,admissible,certified\n"));

    let body = base("0.04", "").replace("gamma = 0.5", "gamma = 0.0") + "[regions]\nb_min = 0.01\nb_max = 0.5\n";
    let (code, text) = run(&["regions", "--config", config(dir.path(), &body).to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0, "{text}");
    assert!(text.contains("no admissible b"), "{text}");

    let (code, text) = run(&["identities", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0, "{text}");
    assert!(out.join("identities.csv").exists());
}
