//! Command-line front end: scenario configs in, CSV/JSON out.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use dmsfi::propagator::ModelVariant;
use dmsfi::rates::{self, RateKind};
use dmsfi::scenario::{self, Config};
use dmsfi::{MoleculeModel, Result};

#[derive(Parser)]
#[command(
    name = "dmsfi",
    version,
    about = "Subcycle ionization rates and ionic density-matrix propagation"
)]
struct Cli {
    /// Scenario TOML (required by all subcommands except `molecules`).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory (created if missing).
    #[arg(long, global = true, default_value = "out")]
    out_dir: PathBuf,

    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Override the model variant from the config (TIC1, TIC0, TIC1-D0).
    #[arg(long, global = true)]
    variant: Option<String>,

    /// Override the rate model from the config (na, adk).
    #[arg(long, global = true)]
    rate: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Per-channel subcycle rate w(t) vs ADK on a 10-as grid.
    Rate {
        /// Channel label (default: first channel).
        #[arg(long)]
        channel: Option<String>,
    },
    /// Single-channel pulse yield over an intensity sweep, NA vs ADK.
    Yield,
    /// Saddle-point kinematics and actions across the central half-cycle.
    Kinematics,
    /// Propagate the ionic density matrix; time series + summary per angle.
    Propagate,
    /// One propagation per sweep value (wavelength / intensity / angle).
    Scan,
    /// Cross-check the propagator against the wave-function-sum oracle.
    Verify,
    /// List bundled molecule models and their channels.
    Molecules,
}

fn load_config(cli: &Cli) -> Result<Config> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| dmsfi::Error::Config("--config is required".into()))?;
    let mut cfg = Config::from_path(path)?;
    if let Some(v) = &cli.variant {
        cfg.model.variant = match v.as_str() {
            "TIC1" => ModelVariant::Tic1,
            "TIC0" => ModelVariant::Tic0,
            "TIC1-D0" => ModelVariant::Tic1D0,
            other => {
                return Err(dmsfi::Error::Config(format!(
                    "unknown variant '{other}' (TIC1, TIC0, TIC1-D0)"
                )))
            }
        };
    }
    if let Some(r) = &cli.rate {
        cfg.model.rate = match r.as_str() {
            "na" | "nonadiabatic" => RateKind::Na,
            "adk" => RateKind::Adk,
            other => {
                return Err(dmsfi::Error::Config(format!(
                    "unknown rate '{other}' (na, adk)"
                )))
            }
        };
    }
    Ok(cfg)
}

fn print_molecules() -> Result<()> {
    for name in MoleculeModel::builtin_names() {
        let m = MoleculeModel::builtin(name)?;
        println!("{} ({})", name, m.name);
        for c in &m.channels {
            let partner = c
                .degeneracy_partner
                .as_deref()
                .map(|p| format!(", partner {p}"))
                .unwrap_or_default();
            println!(
                "  {:<4} E = {:>7.4} a.u. ({:>6.3} eV), parity {:+}, Z = {}{}",
                c.label,
                c.e_ip,
                dmsfi::units::au_to_ev(c.e_ip),
                c.parity,
                c.z,
                partner
            );
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<()> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| dmsfi::Error::Config(format!("thread pool: {e}")))?;
    }
    match &cli.command {
        Command::Molecules => print_molecules(),
        Command::Rate { channel } => {
            let cfg = load_config(cli)?;
            // surface PPT-matching validity diagnostics up front
            let field = cfg.laser.build()?;
            let molecule = cfg.molecule.load()?;
            for ch in &molecule.channels {
                if let Some(warn) = rates::validity_warning(ch, &field) {
                    eprintln!("warning: {warn}");
                }
            }
            let path = scenario::run_rate(&cfg, channel.as_deref(), &cli.out_dir)?;
            println!("wrote {}", path.display());
            Ok(())
        }
        Command::Yield => {
            let cfg = load_config(cli)?;
            let path = scenario::run_yield(&cfg, &cli.out_dir)?;
            println!("wrote {}", path.display());
            Ok(())
        }
        Command::Kinematics => {
            let cfg = load_config(cli)?;
            let path = scenario::run_kinematics(&cfg, &cli.out_dir)?;
            println!("wrote {}", path.display());
            Ok(())
        }
        Command::Propagate => {
            let cfg = load_config(cli)?;
            for path in scenario::run_propagate(&cfg, &cli.out_dir)? {
                println!("wrote {}", path.display());
            }
            Ok(())
        }
        Command::Scan => {
            let cfg = load_config(cli)?;
            let path = scenario::run_scan(&cfg, &cli.out_dir)?;
            println!("wrote {}", path.display());
            Ok(())
        }
        Command::Verify => {
            let cfg = load_config(cli)?;
            let table = scenario::run_verify(&cfg, &cli.out_dir)?;
            println!("birth_steps  trace_distance");
            for (nsteps, d) in &table {
                println!("{nsteps:>11}  {d:.6e}");
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
