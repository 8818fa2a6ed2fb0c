use std::path::Path;
use std::process::Command;

use nediff_cli::config::{ConfigError, EngineKind};
use nediff_cli::presets::{preset, PRESET_NAMES};
use nediff_cli::{parse_config, run_scenario, RunOptions};
use nediff_core::analysis::momentum_density;
use proptest::prelude::*;

const SMALL: &str = r#"
name = "small"
[electron]
energy_ev = 100.0
fwhm_x_nm = 20.0
fwhm_y_nm = 10.0
[laser]
wavelength_nm = 2000.0
field_v_per_nm = 0.2
[model]
kind = "wire"
radius_nm = 10.0
response = 0.5
[grid]
nx = 256
ny = 128
dx_nm = 0.5
dy_nm = 0.5
[engine]
kind = "both"
t_start_fs = -4.0
t_end_fs = 4.0
"#;

fn nediff(args: &[&str], env_out: Option<&Path>) -> std::process::Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_nediff"));
    c.args(args).env("RUST_LOG", "warn");
    match env_out {
        Some(p) => c.env("NEDIFF_OUT", p),
        None => c.env_remove("NEDIFF_OUT"),
    };
    c.output().expect("binary runs")
}

#[test]
fn preset_reference_resolves_exactly() {
    for name in PRESET_NAMES {
        let cfg = parse_config(&format!("preset = \"{name}\"")).unwrap();
        assert_eq!(cfg, preset(name).unwrap());
    }
    let cfg = parse_config("preset = \"fig1\"\n[laser]\nfield_v_per_nm = 0.4\n").unwrap();
    assert_eq!(cfg.laser.field_v_per_nm, 0.4);
    assert_eq!(cfg.laser.wavelength_nm, 2000.0);
    assert!(matches!(parse_config("preset = \"fig9\""), Err(ConfigError::UnknownPreset(_))));
}

#[test]
fn presets_round_trip_through_toml() {
    for name in PRESET_NAMES {
        let cfg = preset(name).unwrap();
        assert_eq!(parse_config(&cfg.to_toml()).unwrap(), cfg);
    }
}

#[test]
fn schema_violations_are_reported() {
    let no_laser = SMALL.replace("[laser]\nwavelength_nm = 2000.0\nfield_v_per_nm = 0.2\n", "");
    let e = parse_config(&no_laser).unwrap_err().to_string();
    assert!(e.contains("laser"), "{e}");

    let both = SMALL.replace("fwhm_x_nm = 20.0", "fwhm_x_nm = 20.0\nbandwidth_ev = 2.0");
    let e = parse_config(&both).unwrap_err().to_string();
    assert!(e.contains("fwhm_x_nm") && e.contains("bandwidth_ev"), "{e}");

    let unknown = SMALL.replace("response = 0.5", "response = 0.5\nradius = 3.0");
    let e = parse_config(&unknown).unwrap_err().to_string();
    assert!(e.contains("radius"), "{e}");

    let negative = SMALL.replace("energy_ev = 100.0", "energy_ev = -1.0");
    assert!(parse_config(&negative).unwrap_err().to_string().contains("energy_ev"));

    let odd_grid = SMALL.replace("nx = 256", "nx = 300");
    assert!(parse_config(&odd_grid).unwrap_err().to_string().contains("grid.nx"));

    let stripe_numeric = "preset = \"fig1\"\n[model]\nkind = \"uniform-stripe\"\ncoupling_rad = 1.0\n";
    assert!(parse_config(stripe_numeric).unwrap_err().to_string().contains("engine"));
}

#[test]
fn zero_field_leaves_the_spectrum_unchanged() {
    let mut cfg = parse_config(SMALL).unwrap();
    cfg.laser.field_v_per_nm = 0.0;
    let out = run_scenario(&cfg, &RunOptions { engine: Some(EngineKind::Analytic), snapshot_stride: None }).unwrap();
    let a = momentum_density(&out.initial);
    let b = momentum_density(out.analytic.as_ref().unwrap());
    assert_eq!(a.values(), b.values());
}

#[test]
fn runs_are_byte_identical_and_compare_reports_l2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("small.toml");
    std::fs::write(&cfg, SMALL).unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for out in [&a, &b] {
        let o = nediff(&["run", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()], None);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let mut names: Vec<_> = std::fs::read_dir(&a).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert!(names.iter().any(|n| n == "trace.csv") && names.iter().any(|n| n == "numeric.grid"));
    for n in &names {
        assert_eq!(std::fs::read(a.join(n)).unwrap(), std::fs::read(b.join(n)).unwrap(), "{n:?} differs");
    }
    let o = nediff(&["compare", a.join("numeric.grid").to_str().unwrap(), a.join("analytic.grid").to_str().unwrap()], None);
    assert!(o.status.success());
    let text = String::from_utf8_lossy(&o.stdout);
    let l2: f64 = text.lines().find_map(|l| l.strip_prefix("relative_l2 = ")).unwrap().parse().unwrap();
    assert!(l2 > 0.0 && l2 < 0.5, "{text}");

    let o = nediff(&["render", a.join("analytic.grid").to_str().unwrap(), "--colormap", "linear"], None);
    assert!(o.status.success());
    let pgm = std::fs::read(a.join("analytic.pgm")).unwrap();
    assert!(pgm.starts_with(b"P5\n256 128\n65535\n"));
    assert_eq!(pgm.len(), "P5\n256 128\n65535\n".len() + 2 * 256 * 128);
    assert!(a.join("analytic.txt").exists());
}

#[test]
fn output_root_comes_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("s.toml");
    std::fs::write(&cfg, SMALL.replace("kind = \"both\"", "kind = \"analytic\"")).unwrap();
    let o = nediff(&["run", cfg.to_str().unwrap()], Some(dir.path()));
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(dir.path().join("small").join("summary.txt").exists());
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(nediff(&["frobnicate"], None).status.code(), Some(1));
    assert_eq!(nediff(&["run"], None).status.code(), Some(1));
    assert_eq!(nediff(&["preset", "fig9", "--print"], None).status.code(), Some(1));
    assert_eq!(nediff(&["preset", "fig1", "--print"], None).status.code(), Some(0));

    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, SMALL.replace("dx_nm = 0.5", "dx_nm = 0.0")).unwrap();
    assert_eq!(nediff(&["run", bad.to_str().unwrap()], None).status.code(), Some(1));

    // a narrow transverse focus spreads into the grid edges during a long window
    let spreading = SMALL
        .replace("fwhm_y_nm = 10.0", "fwhm_y_nm = 2.0")
        .replace("ny = 128", "ny = 64")
        .replace("kind = \"both\"", "kind = \"numeric\"")
        .replace("t_start_fs = -4.0", "t_start_fs = 0.0")
        .replace("t_end_fs = 4.0", "t_end_fs = 200.0")
        .replace("field_v_per_nm = 0.2", "field_v_per_nm = 0.0");
    let cfg = dir.path().join("spread.toml");
    std::fs::write(&cfg, spreading).unwrap();
    let o = nediff(&["run", cfg.to_str().unwrap(), "--out", dir.path().join("o").to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(2), "{}", String::from_utf8_lossy(&o.stderr));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn arbitrary_configs_round_trip(
        e in 1.0f64..1e5,
        fx in 1.0f64..1e3,
        fy in 1.0f64..1e3,
        field in 0.0f64..10.0,
        r in 0.1f64..100.0,
        dx in 0.01f64..5.0,
        t in -1e3f64..0.0,
    ) {
        let mut cfg = parse_config(SMALL).unwrap();
        cfg.electron.energy_ev = e;
        cfg.electron.fwhm_x_nm = Some(fx);
        cfg.electron.fwhm_y_nm = Some(fy);
        cfg.laser.field_v_per_nm = field;
        cfg.model = nediff_cli::config::ModelConfig::Wire { radius_nm: r, response: 0.5, center_nm: [t, -t] };
        cfg.grid.dx_nm = dx;
        cfg.engine.t_start_fs = t;
        prop_assert_eq!(parse_config(&cfg.to_toml()).unwrap(), cfg);
    }
}
