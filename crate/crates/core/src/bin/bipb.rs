use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use bipb::app::{self, ChargeSpec, InputSource, OutputFormat, RunConfig};
use bipb::gmres::GmresOptions;
use bipb::kernels::{kappa_from_ionic_strength, PbParams};
use bipb::{Error, Vec3};

/// Linearized Poisson-Boltzmann solvation energy by boundary integrals.
#[derive(Parser, Debug)]
#[command(version)]
struct Cli {
    /// Solute charges (PQR); needs --vert and --face.
    #[arg(long, value_name = "PATH", requires_all = ["vert", "face"], conflicts_with = "sphere")]
    pqr: Option<PathBuf>,
    /// MSMS vertex file.
    #[arg(long, value_name = "PATH", requires = "pqr")]
    vert: Option<PathBuf>,
    /// MSMS face file.
    #[arg(long, value_name = "PATH", requires = "pqr")]
    face: Option<PathBuf>,

    /// Use an icosphere of this radius (Å) instead of a mesh file.
    #[arg(long, value_name = "R")]
    sphere: Option<f64>,
    #[arg(long, value_name = "X,Y,Z", default_value = "0,0,0", value_parser = parse_point)]
    center: Vec3,
    /// Icosphere subdivision level (20·4^L triangles).
    #[arg(long, value_name = "L", default_value_t = 3)]
    level: u32,
    /// PQR path, builtin:helix or builtin:center.
    #[arg(long, value_name = "SPEC", default_value = "builtin:helix")]
    charges: String,

    #[arg(long, value_name = "F", default_value_t = 1.0)]
    eps1: f64,
    #[arg(long, value_name = "F", default_value_t = 80.0)]
    eps2: f64,
    /// Inverse Debye length (1/Å).
    #[arg(long, value_name = "F", conflicts_with = "istrength")]
    kappa: Option<f64>,
    /// Ionic strength (M); default 0.15 when --kappa is absent.
    #[arg(long, value_name = "F")]
    istrength: Option<f64>,

    #[arg(long, value_name = "F", default_value_t = GmresOptions::default().tol)]
    tol: f64,
    #[arg(long, value_name = "M", default_value_t = GmresOptions::default().restart)]
    restart: usize,
    #[arg(long, value_name = "K", default_value_t = GmresOptions::default().max_iters)]
    max_iters: usize,
    #[arg(long, value_name = "W", env = "BIPB_WORKERS")]
    workers: Option<usize>,

    #[arg(long, value_name = "FMT", default_value = "human")]
    format: String,
    /// Write output here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Run a convergence study over these icosphere levels.
    #[arg(long, value_name = "L1,L2,...", value_delimiter = ',', requires = "sphere")]
    study: Option<Vec<u32>>,
}

fn parse_point(s: &str) -> Result<Vec3, String> {
    let parts: Vec<f64> =
        s.split(',').map(|t| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}"))).collect::<Result<_, _>>()?;
    match parts[..] {
        [x, y, z] => Ok(Vec3::new(x, y, z)),
        _ => Err(format!("expected X,Y,Z, got {s:?}")),
    }
}

fn config(cli: &Cli) -> Result<RunConfig, Error> {
    let input = match (&cli.sphere, &cli.pqr, &cli.vert, &cli.face) {
        (&Some(radius), None, None, None) => InputSource::Sphere {
            radius,
            center: cli.center,
            level: cli.level,
            charges: cli.charges.parse::<ChargeSpec>()?,
        },
        (None, Some(pqr), Some(vert), Some(face)) => {
            InputSource::Files { pqr: pqr.clone(), vert: vert.clone(), face: face.clone() }
        }
        _ => return Err(Error::Config("give either --sphere or all of --pqr, --vert and --face".into())),
    };
    let kappa = match (cli.kappa, cli.istrength) {
        (Some(k), _) => k,
        (None, i) => {
            let i = i.unwrap_or(0.15);
            if i.is_nan() || i < 0.0 {
                return Err(Error::Config(format!("ionic strength must be >= 0, got {i}")));
            }
            kappa_from_ionic_strength(i, cli.eps2)
        }
    };
    let params = PbParams { eps1: cli.eps1, eps2: cli.eps2, kappa, ..PbParams::default() };
    let config = RunConfig {
        input,
        params,
        solver: GmresOptions { restart: cli.restart, tol: cli.tol, max_iters: cli.max_iters },
        workers: cli.workers,
    };
    config.validate()?;
    Ok(config)
}

fn write(out: &Option<PathBuf>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| Error::Io { path: path.clone(), source }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<i32, Error> {
    let format: OutputFormat = cli.format.parse()?;
    let config = config(cli)?;
    if let Some(levels) = &cli.study {
        let table = app::run_convergence_study(&config, levels)?;
        write(&cli.out, &app::emit_study(&table, format))?;
        let all = table.rows.iter().all(|r| r.converged);
        return Ok(if all { app::EXIT_OK } else { app::EXIT_NOT_CONVERGED });
    }
    let report = app::run_solve(&config)?;
    write(&cli.out, &app::emit_report(&report, format))?;
    Ok(if report.converged { app::EXIT_OK } else { app::EXIT_NOT_CONVERGED })
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(app::EXIT_INPUT as u8);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(app::exit_code(&e) as u8)
        }
    }
}
