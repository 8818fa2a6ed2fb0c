use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use nediff_cli::config::EngineKind;
use nediff_cli::heatmap::{render_heatmap, Colormap, DEFAULT_CLIP};
use nediff_cli::output::{sweep_csv, write_artifacts};
use nediff_cli::presets::{preset, PRESET_NAMES};
use nediff_cli::sweep::run_config_sweep;
use nediff_cli::{parse_config, run_scenario, ConfigError, RunOptions, ScenarioConfig};
use nediff_core::analysis::{momentum_density, MomentumDensity};
use nediff_core::io::read_raw_grid;

#[derive(Parser)]
#[command(name = "nediff", version, about = "Electron diffraction by optical near fields")]
struct Cli {
    /// Worker threads (default: number of cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Accepted for compatibility; every run is deterministic.
    #[arg(long, global = true)]
    seedless: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario described by a TOML file.
    Run {
        config: PathBuf,
        #[arg(long)]
        engine: Option<EngineKind>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        snapshot_stride: Option<usize>,
    },
    /// Run the [sweep] section of a TOML file and write sweep.csv.
    Sweep {
        config: PathBuf,
        #[arg(long)]
        engine: Option<EngineKind>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Highest photon order reported in the CSV.
        #[arg(long, default_value_t = 6)]
        orders: i32,
    },
    /// Run a built-in figure preset (or print its configuration).
    Preset {
        name: String,
        #[arg(long)]
        engine: Option<EngineKind>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        snapshot_stride: Option<usize>,
        /// Print the preset configuration instead of running it.
        #[arg(long)]
        print: bool,
    },
    /// Compare the momentum densities of two raw grids.
    Compare { a: PathBuf, b: PathBuf },
    /// Render the momentum density of a raw grid as a 16-bit PGM.
    Render {
        grid: PathBuf,
        #[arg(long, default_value = "log")]
        colormap: Colormap,
        #[arg(long, default_value_t = DEFAULT_CLIP)]
        clip: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn output_dir(flag: Option<PathBuf>, name: &str) -> PathBuf {
    flag.unwrap_or_else(|| {
        let root = std::env::var_os("NEDIFF_OUT").map(PathBuf::from).unwrap_or_else(|| PathBuf::from("out"));
        root.join(name)
    })
}

fn load_config(path: &Path) -> anyhow::Result<ScenarioConfig> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_config(&text).with_context(|| format!("in {}", path.display()))
}

fn load_density(path: &Path) -> anyhow::Result<MomentumDensity> {
    let f = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let psi = read_raw_grid(BufReader::new(f)).with_context(|| format!("reading {}", path.display()))?;
    Ok(momentum_density(&psi))
}

fn run_and_write(cfg: &ScenarioConfig, opts: RunOptions, out: Option<PathBuf>) -> anyhow::Result<()> {
    let dir = output_dir(out, &cfg.name);
    log::info!("running {} ({:?})", cfg.name, opts.apply(cfg).engine.kind);
    let outcome = run_scenario(cfg, &opts)?;
    if let Some(r) = outcome.engine_distance() {
        println!("relative L2 (numeric vs analytic) = {:.6e}", r?);
    }
    for p in write_artifacts(&outcome, &dir)? {
        println!("wrote {}", p.display());
    }
    Ok(())
}

fn execute(cli: Cli) -> anyhow::Result<()> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("configuring worker threads")?;
    }
    match cli.command {
        Command::Run { config, engine, out, snapshot_stride } => {
            let cfg = load_config(&config)?;
            run_and_write(&cfg, RunOptions { engine, snapshot_stride }, out)
        }
        Command::Preset { name, engine, out, snapshot_stride, print } => {
            let cfg = preset(&name).ok_or_else(|| ConfigError::UnknownPreset(name.clone()))?;
            if print {
                print!("{}", cfg.to_toml());
                return Ok(());
            }
            run_and_write(&cfg, RunOptions { engine, snapshot_stride }, out)
        }
        Command::Sweep { config, engine, out, orders } => {
            let mut cfg = load_config(&config)?;
            if let Some(e) = engine {
                cfg.engine.kind = e;
            }
            let result = run_config_sweep(&cfg)?;
            let dir = output_dir(out, &cfg.name);
            std::fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
            let path = dir.join("sweep.csv");
            std::fs::write(&path, sweep_csv(&result, orders))?;
            for p in result.points.iter().filter(|p| p.outcome.is_err()) {
                log::warn!("point {} failed: {}", p.value, p.outcome.as_ref().unwrap_err());
            }
            if let Some((v, d)) = result.depletion_minimum() {
                println!("depletion minimum {d:.4e} at {} = {v}", result.axis.name());
            }
            println!("wrote {}", path.display());
            Ok(())
        }
        Command::Compare { a, b } => {
            let (da, db) = (load_density(&a)?, load_density(&b)?);
            let l2 = da.relative_l2(&db)?;
            let peak = db.max();
            let max_diff = da.values().iter().zip(db.values()).fold(0.0_f64, |m, (x, y)| m.max((x - y).abs()));
            println!("relative_l2 = {l2:.6e}");
            println!("max_abs_diff_relative = {:.6e}", max_diff / peak);
            Ok(())
        }
        Command::Render { grid, colormap, clip, out } => {
            if !(clip > 0.0 && clip < 1.0) {
                bail!(ConfigError::Invalid { key: "clip".into(), message: "must lie in (0, 1)".into() });
            }
            let d = load_density(&grid)?;
            let h = render_heatmap(&d, colormap, clip);
            if let Some(w) = &h.warning {
                log::warn!("{w}");
            }
            let pgm = out.unwrap_or_else(|| grid.with_extension("pgm"));
            std::fs::write(&pgm, &h.pgm)?;
            std::fs::write(pgm.with_extension("txt"), &h.sidecar)?;
            println!("wrote {}", pgm.display());
            Ok(())
        }
    }
}

/// 2 for numerical failures, 1 for everything else.
fn exit_code(err: &anyhow::Error) -> u8 {
    let numerical = err
        .chain()
        .filter_map(|e| e.downcast_ref::<nediff_core::Error>())
        .any(nediff_core::Error::is_numerical);
    if numerical {
        2
    } else {
        1
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if let Some(name) = e.downcast_ref::<ConfigError>().and_then(|c| match c {
                ConfigError::UnknownPreset(_) => Some(PRESET_NAMES.join(", ")),
                _ => None,
            }) {
                eprintln!("presets: {name}");
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
