use std::path::PathBuf;
use std::process::ExitCode;

use atomsurf::commands;
use atomsurf::config::{Overrides, RunConfig};
use atomsurf::grid::Grid;
use atomsurf::{selftest, thread_pool, CliError, Result};
use clap::{Args, Parser, Subcommand};

/// Dispersive atom-surface interactions: plane potential, corrugation
/// response and condensate-probe estimates.
#[derive(Parser)]
#[command(name = "atomsurf", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Plane potential, force and eta_F on a z_A grid.
    Plane(Common),
    /// Response function g(k, z_A) on a (k, z_A) grid.
    Response(Common),
    /// Geometry factor rho(k z_A).
    Rho(Common),
    /// Force reduction eta_F(z_A).
    Eta(Common),
    /// First-order potential and lateral force over a corrugated surface,
    /// with a detectability report.
    Corrugation(Common),
    /// Real-axis Im eps(omega) to eps(i xi) via the dispersion relation.
    IngestOptical(Ingest),
    /// Fast checks against closed forms.
    Selftest,
}

#[derive(Args)]
struct Common {
    /// JSON run configuration; flags below override its keys.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Atom preset: rb87, rb87-static.
    #[arg(long)]
    atom: Option<String>,
    /// Surface preset: perfect, gold, silicon.
    #[arg(long)]
    surface: Option<String>,
    /// Atom-surface separations, m: `a,b,..`, `log:from:to:n` or `lin:from:to:n`.
    #[arg(long)]
    z: Option<String>,
    /// Corrugation wavelengths, m (same grid syntax).
    #[arg(long)]
    wavelength: Option<String>,
    /// Corrugation wavenumbers, 1/m.
    #[arg(long)]
    k: Option<String>,
    /// Dimensionless k z_A values.
    #[arg(long)]
    kz: Option<String>,
    /// Relative tolerance of the quadrature.
    #[arg(long)]
    rel_tol: Option<f64>,
    /// CSV output file (stdout by default).
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON report file for `corrugation` (stderr by default).
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct Ingest {
    /// CSV with columns omega_rad_s,eps_imag.
    input: PathBuf,
    #[arg(long)]
    config: Option<PathBuf>,
    /// Imaginary frequencies, rad/s (grid syntax as for --z).
    #[arg(long)]
    xi: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn load(common: &Common) -> Result<RunConfig> {
    let mut cfg = match &common.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    cfg.apply(&Overrides {
        atom: common.atom.clone(),
        surface: common.surface.clone(),
        z: common.z.clone(),
        wavelength: common.wavelength.clone(),
        k: common.k.clone(),
        kz: common.kz.clone(),
        rel_tol: common.rel_tol,
        out: common.out.clone(),
        report: common.report.clone(),
    })?;
    Ok(cfg)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Plane(c) => {
            let cfg = load(&c)?;
            commands::cmd_plane(&cfg)?.write_to(cfg.output.csv.as_deref())
        }
        Command::Response(c) => {
            let cfg = load(&c)?;
            commands::cmd_response(&cfg)?.write_to(cfg.output.csv.as_deref())
        }
        Command::Rho(c) => {
            let cfg = load(&c)?;
            commands::cmd_rho(&cfg)?.write_to(cfg.output.csv.as_deref())
        }
        Command::Eta(c) => {
            let cfg = load(&c)?;
            commands::cmd_eta(&cfg)?.write_to(cfg.output.csv.as_deref())
        }
        Command::Corrugation(c) => {
            let cfg = load(&c)?;
            let (table, report) = commands::cmd_corrugation(&cfg)?;
            table.write_to(cfg.output.csv.as_deref())?;
            let json = serde_json::to_string_pretty(&report).expect("report serializes");
            match &cfg.output.report {
                Some(p) => std::fs::write(p, json + "\n").map_err(|source| CliError::Io {
                    path: p.clone(),
                    source,
                }),
                None => {
                    eprintln!("{json}");
                    Ok(())
                }
            }
        }
        Command::IngestOptical(i) => {
            let mut cfg = match &i.config {
                Some(p) => RunConfig::load(p)?,
                None => RunConfig::default(),
            };
            if let Some(x) = &i.xi {
                cfg.xi_rad_s = Some(Grid::parse(x)?);
            }
            if let Some(o) = &i.out {
                cfg.output.csv = Some(o.clone());
            }
            commands::cmd_ingest_optical(&cfg, &i.input)?.write_to(cfg.output.csv.as_deref())
        }
        Command::Selftest => {
            let checks = selftest::run();
            for c in &checks {
                println!("{}", c.line());
            }
            match checks.iter().filter(|c| !c.passed()).count() {
                0 => Ok(()),
                n => Err(CliError::SelfTest(n)),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = thread_pool().and_then(|pool| pool.install(|| run(cli)));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("atomsurf: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
