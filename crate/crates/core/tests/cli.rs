use std::path::PathBuf;
use std::process::Command;

use proptest::prelude::*;

use spin_decoherence::runner::{
    run_config, run_fig1, run_validate, run_validate_with, Figure, Mode, ScenarioConfig,
    ValidateSettings,
};
use spin_decoherence::transport::LorentzGenerator;
use spin_decoherence::Error;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_spindecoh"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("spindecoh-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn valid_config() -> impl Strategy<Value = ScenarioConfig> {
    (
        "[a-z][a-z0-9_-]{0,11}",
        prop_oneof![Just(Figure::Fig1), Just(Figure::Fig2)],
        (1e-6f64..0.999_999, 0.0f64..0.999_999, 0.0f64..1.0),
        (0.0f64..50.0, 1e-3f64..50.0, 2usize..5000),
        (0usize..200, 1usize..100_000),
        prop_oneof![Just(Mode::Approx), Just(Mode::Exact), Just(Mode::Both)],
        (2usize..5000, 0.0f64..0.5),
    )
        .prop_map(
            |(name, figure, (x, v, w), (t0, span, count), (half_nodes, steps), mode, (sc, ex))| {
                ScenarioConfig {
                    name,
                    figure,
                    r_s_over_r: x,
                    v_over_c: v,
                    w_over_mc: w,
                    tau_min: t0,
                    tau_max: t0 + span,
                    tau_count: count,
                    grid_nodes: 2 * half_nodes + 1,
                    integrator_steps: steps,
                    mode,
                    sweep_count: sc,
                    sweep_exclusion: ex,
                }
            },
        )
}

proptest! {
    #[test]
    fn config_round_trips(cfg in valid_config()) {
        cfg.validate().unwrap();
        prop_assert_eq!(ScenarioConfig::parse(&cfg.serialize()).unwrap(), cfg);
    }
}

#[test]
fn csv_header_reproduces_the_config() {
    let cfg = ScenarioConfig {
        w_over_mc: 0.05,
        tau_count: 11,
        ..ScenarioConfig::fig1()
    };
    let csv = run_config(&cfg).unwrap().to_csv(None);
    assert_eq!(ScenarioConfig::from_csv_header(&csv).unwrap(), cfg);
}

#[test]
fn fig1_output_is_deterministic_and_reports_the_gap() {
    let cfg = ScenarioConfig::fig1();
    let a = run_fig1(&cfg).unwrap();
    let b = run_fig1(&cfg).unwrap();
    assert_eq!(a.to_csv(None), b.to_csv(None));
    let gap: f64 = a.meta("max_abs_diff_S").unwrap().parse().unwrap();
    assert!(gap < 0.02);
    let tail = a.rows().last().unwrap();
    assert_eq!(tail[0], 10.0);
}

#[test]
fn degenerate_tau_range_is_rejected() {
    let cfg = ScenarioConfig {
        tau_min: 0.0,
        tau_max: 0.0,
        tau_count: 2,
        ..ScenarioConfig::fig1()
    };
    match run_fig1(&cfg) {
        Err(Error::Config { field, .. }) => assert_eq!(field, "tau_max"),
        other => panic!("expected a config error, got {other:?}"),
    }
}

#[test]
fn validate_passes_on_a_clean_build() {
    let report = run_validate();
    assert!(report.all_passed(), "{}", report.render());
    assert_eq!(report.exit_code(), 0);
}

#[test]
fn validate_catches_a_flipped_generator() {
    fn flip(g: &LorentzGenerator) -> LorentzGenerator {
        g.scale(-1.0)
    }
    let report = run_validate_with(&ValidateSettings {
        generator_hook: Some(flip),
        ..ValidateSettings::default()
    });
    let failed: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
    assert!(
        failed.iter().any(|n| n.contains("Wigner angle")),
        "{failed:?}"
    );
    assert_eq!(report.exit_code(), 2);
}

#[test]
fn binary_writes_identical_files() {
    let (a, b) = (scratch("a.csv"), scratch("b.csv"));
    for path in [&a, &b] {
        let status = bin().arg("fig2").arg("--out").arg(path).status().unwrap();
        assert!(status.success());
    }
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let text = String::from_utf8(ta).unwrap();
    assert!(text.contains("\nr_s_over_r,abs_B_times_tau_s\n"));
    assert!(!text.contains("timestamp"));
}

#[test]
fn binary_timestamp_is_opt_in() {
    let out = bin().args(["fig2", "--timestamp"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().nth(1).unwrap().starts_with("# timestamp = "));
}

#[test]
fn binary_runs_a_config_file() {
    let cfg = scratch("short.cfg");
    std::fs::write(
        &cfg,
        "name = short\nfigure = fig1\nw_over_mc = 0.05\ntau_count = 5\nmode = exact\n",
    )
    .unwrap();
    let out = bin().arg("run").arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\ntau_over_tau_s,S_exact\n"));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 6);
}

#[test]
fn binary_reports_config_errors_with_exit_one() {
    let cfg = scratch("bad.cfg");
    std::fs::write(&cfg, "r_s_over_r = 1.5\n").unwrap();
    let out = bin().arg("run").arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("r_s_over_r"));

    let missing = bin()
        .args(["run", "/nonexistent/spindecoh.cfg"])
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn binary_validate_exits_zero() {
    let out = bin().arg("validate").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().all(|l| l.starts_with("PASS")));
}
