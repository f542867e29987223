use std::fs;
use std::path::Path;

use serde_json::Value;
use wigsmooth::cli::main_with_args;
use wigsmooth::io::{read_field, write_field_csv, write_file};
use wigsmooth::phase_space::{Axis, DistributionField};

const SMALL_WELL: &[&str] = &["--set", "well.q_points=385", "--set", "well.p_points=257"];

fn run(args: &[&str]) -> i32 {
    main_with_args(std::iter::once("wigsmooth").chain(args.iter().copied()))
}

fn run_in(dir: &Path, sub: &str, extra: &[&str]) -> i32 {
    let out = dir.to_str().unwrap();
    let mut args = vec![sub, "--out", out];
    args.extend_from_slice(extra);
    run(&args)
}

fn manifest(dir: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(dir.join("manifest.json")).unwrap()).unwrap()
}

fn summary_rows(dir: &Path) -> Vec<Vec<String>> {
    fs::read_to_string(dir.join("summary.csv"))
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn well_run_writes_fields_and_labels_regimes() {
    let tmp = tempfile::tempdir().unwrap();
    let mut args = SMALL_WELL.to_vec();
    args.extend([
        "--set",
        "smoothing.widths=2.236:1,0.1:0.1",
        "--set",
        "smoothing.husimi=1.58",
    ]);
    assert_eq!(run_in(tmp.path(), "well", &args), 0);
    for f in [
        "manifest.json",
        "summary.csv",
        "timing.txt",
        "wigner.csv",
        "wigner_contours.csv",
        "wigner_contours.svg",
    ] {
        assert!(tmp.path().join(f).is_file(), "missing {f}");
    }
    let rows = summary_rows(tmp.path());
    let regimes: Vec<&str> = rows.iter().map(|r| r[4].as_str()).collect();
    assert_eq!(regimes, ["physical", "unphysical", "physical"]);
    let raw = read_field(&tmp.path().join("wigner.csv")).unwrap();
    for k in 0..3 {
        let smoothed = read_field(&tmp.path().join(format!("width_{k:03}/smoothed.csv"))).unwrap();
        assert!(smoothed.same_axes(&raw));
    }
    let m = manifest(tmp.path());
    assert_eq!(m["raw"]["axis1"]["n"], 385);
    assert_eq!(m["scenario"], "well");
    assert!(m["raw"]["min"].as_f64().unwrap() < 0.0);
    assert_eq!(m["raw"]["min"].as_f64().unwrap(), raw.min());
}

#[test]
fn width_flags_replace_the_configured_list() {
    let tmp = tempfile::tempdir().unwrap();
    let mut args = SMALL_WELL.to_vec();
    args.extend([
        "--set",
        "smoothing.husimi=1.58",
        "--sigma-q",
        "3",
        "--sigma-p",
        "0.5",
    ]);
    assert_eq!(run_in(tmp.path(), "well", &args), 0);
    let rows = summary_rows(tmp.path());
    assert_eq!(rows.len(), 1);
    assert_eq!((rows[0][1].as_str(), rows[0][2].as_str()), ("3", "0.5"));
    assert_eq!(run_in(tmp.path(), "well", &["--sigma-q", "3"]), 2);
}

#[test]
fn step_run_smooths_the_tapered_state() {
    let tmp = tempfile::tempdir().unwrap();
    let code = run_in(
        tmp.path(),
        "step",
        &[
            "--set",
            "step.p_points=257",
            "--sigma-q",
            "2.236",
            "--sigma-p",
            "1",
            "--formats",
            "csv,binary",
        ],
    );
    assert_eq!(code, 0);
    let rows = summary_rows(tmp.path());
    assert_eq!(rows[0][4], "physical");
    let csv = read_field(&tmp.path().join("width_000/smoothed.csv")).unwrap();
    let bin = read_field(&tmp.path().join("width_000/smoothed.bin")).unwrap();
    assert_eq!(csv.values(), bin.values());
    assert_eq!(manifest(tmp.path())["scenario"], "step");
}

#[test]
fn sweep_needs_widths_and_drops_duplicates() {
    let tmp = tempfile::tempdir().unwrap();
    assert_eq!(run_in(tmp.path(), "sweep", SMALL_WELL), 2);

    let mut args = SMALL_WELL.to_vec();
    args.extend([
        "--set",
        "smoothing.widths=1:1,2:0.5,1:1",
        "--set",
        "sweep.sigma1=2",
        "--set",
        "sweep.sigma2=0.5",
    ]);
    assert_eq!(run_in(tmp.path(), "sweep", &args), 0);
    assert_eq!(summary_rows(tmp.path()).len(), 2);
    let notes = manifest(tmp.path())["notes"].as_array().unwrap().clone();
    assert_eq!(notes.len(), 2, "{notes:?}");
    assert!(notes[0].as_str().unwrap().contains("#2"));
}

#[test]
fn configuration_errors_exit_with_code_two() {
    let tmp = tempfile::tempdir().unwrap();
    assert_eq!(
        run_in(tmp.path(), "well", &["--set", "well.colour=blue"]),
        2
    );
    assert_eq!(
        run_in(tmp.path(), "well", &["--set", "well.q_points=two"]),
        2
    );
    assert_eq!(run_in(tmp.path(), "well", &["--set", "missing_equals"]), 2);
    assert_eq!(run(&["frobnicate"]), 2);
    assert_eq!(run(&["--help"]), 0);

    let cfg = tmp.path().join("run.cfg");
    fs::write(&cfg, "[well]\nn = 3\nn = 4\n").unwrap();
    assert_eq!(
        run_in(tmp.path(), "well", &["--config", cfg.to_str().unwrap()]),
        2
    );
    fs::write(&cfg, "[well\nn = 3\n").unwrap();
    assert_eq!(
        run_in(tmp.path(), "well", &["--config", cfg.to_str().unwrap()]),
        2
    );
    assert_eq!(
        run_in(tmp.path(), "well", &["--config", "/nonexistent/run.cfg"]),
        2
    );
}

#[test]
fn config_file_is_applied_before_overrides() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("run.cfg");
    fs::write(
        &cfg,
        "# small grid\n[well]\nn = 3\nq_points = 257\np_points = 129\n[smoothing]\nwidths = 1:1\n",
    )
    .unwrap();
    let out = tmp.path().join("out");
    let code = run(&[
        "well",
        "--config",
        cfg.to_str().unwrap(),
        "--set",
        "well.n=2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let m = manifest(&out);
    assert_eq!(m["config"]["well"]["n"], 2);
    assert_eq!(m["config"]["well"]["q_points"], 257);
    assert_eq!(summary_rows(&out).len(), 1);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let tmp = tempfile::tempdir().unwrap();
    let mut args = SMALL_WELL.to_vec();
    args.extend(["--set", "smoothing.widths=2:0.4,1:1"]);
    let files = [
        "manifest.json",
        "summary.csv",
        "wigner.csv",
        "width_000/smoothed.csv",
        "width_001/smoothed_contours.csv",
    ];
    assert_eq!(run_in(tmp.path(), "well", &args), 0);
    let first: Vec<Vec<u8>> = files
        .iter()
        .map(|f| fs::read(tmp.path().join(f)).unwrap())
        .collect();
    assert_eq!(run_in(tmp.path(), "well", &args), 0);
    for (f, bytes) in files.iter().zip(&first) {
        assert_eq!(&fs::read(tmp.path().join(f)).unwrap(), bytes, "{f} changed");
    }
}

#[test]
fn classical_run_writes_the_emission_map() {
    let tmp = tempfile::tempdir().unwrap();
    let code = run_in(
        tmp.path(),
        "hhg-classical",
        &[
            "--set",
            "hhg.births_per_cycle=200",
            "--set",
            "smoothing.widths=1:1",
        ],
    );
    assert_eq!(code, 0);
    let text = fs::read_to_string(tmp.path().join("emission_scaled.csv")).unwrap();
    assert!(text.lines().count() > 100);
    assert!(tmp.path().join("emission.svg").is_file());
    let m = manifest(tmp.path());
    assert!(m["notes"][0].as_str().unwrap().contains("ignored"));
}

#[test]
fn quantum_run_writes_dipole_spectrum_and_maps() {
    let tmp = tempfile::tempdir().unwrap();
    let args = [
        "--set",
        "hhg.total_cycles=2",
        "--set",
        "hhg.ramp_cycles=0.5",
        "--set",
        "hhg.x_extent=80",
        "--set",
        "hhg.x_points=801",
        "--set",
        "hhg.dt=0.1",
        "--set",
        "hhg.t_stride=4",
        "--set",
        "hhg.lag_period=2048",
        "--set",
        "hhg.omega_max_orders=30",
        "--sigma-t",
        "2.236",
        "--sigma-omega",
        "0.224",
    ];
    assert_eq!(run_in(tmp.path(), "hhg-quantum", &args), 0);
    for f in [
        "dipole.csv",
        "spectrum.csv",
        "wigner.csv",
        "width_000/smoothed.csv",
    ] {
        assert!(tmp.path().join(f).is_file(), "missing {f}");
    }
    let m = manifest(tmp.path());
    assert!(m["details"]["norm_final"].as_f64().unwrap() <= 1.0);
    assert!(m["details"]["predicted_cutoff_order"].as_f64().unwrap() > 10.0);
}

#[test]
fn smooth_and_contour_subcommands_work_on_stored_fields() {
    let tmp = tempfile::tempdir().unwrap();
    let axis = Axis::symmetric(6.0, 121).unwrap();
    let field =
        DistributionField::from_fn(axis, axis, |x, y| (-(x * x + y * y) / 2.0).exp()).unwrap();
    let input = tmp.path().join("in.csv");
    write_file(&input, |w| write_field_csv(&field, w)).unwrap();
    let output = tmp.path().join("out.bin");
    let (i, o) = (input.to_str().unwrap(), output.to_str().unwrap());
    assert_eq!(
        run(&["smooth", "--input", i, "--output", o, "--sigma1", "1", "--sigma2", "1"]),
        0
    );
    let smoothed = read_field(&output).unwrap();
    // two unit Gaussians convolve to variance 2 with peak 1/2
    assert!(
        (smoothed.max() - 0.5).abs() < 1e-3,
        "peak {}",
        smoothed.max()
    );

    let (svg, csv) = (tmp.path().join("c.svg"), tmp.path().join("c.csv"));
    let code = run(&[
        "contour",
        "--input",
        o,
        "--levels",
        "0.25",
        "--svg",
        svg.to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(fs::read_to_string(&svg).unwrap().contains("<svg"));
    assert!(fs::read_to_string(&csv).unwrap().lines().count() > 10);

    assert_eq!(
        run(&[
            "smooth",
            "--input",
            "/nonexistent.csv",
            "--output",
            o,
            "--sigma1",
            "1",
            "--sigma2",
            "1"
        ]),
        1
    );
    assert_eq!(run(&["contour", "--input", i, "--levels", "a,b"]), 2);
}
