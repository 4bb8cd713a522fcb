//! Command-line driver: direct and inverse solves, the stability sweep,
//! and ad-hoc special-function / transform evaluation.

mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use dunkl_spectral::{
    io, mittag_leffler, solve_forward_spectral, solve_isp, spectral_ode_residual,
    spectral_to_field, stability_table, Error, MLParams, PhysicalFunction, ProblemParams,
    Result, SpectralEvolution, SpectralFunction, SpectralGrid, TransformPlan,
};

use config::{DataSpec, RunConfig};

#[derive(Parser)]
#[command(name = "dunkl-isp", version, about = "Spectral solver for the Dunkl pseudo-parabolic equation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the direct Cauchy problem from data.g and data.f
    Forward {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recover (u, f) from data.phi and data.psi
    Inverse {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Perturbation sweep with the pinned sample case
    /// (T = m = a = gamma = 1, alpha = -1/2, phi = 0, psi = eps exp(-x^2))
    StabilityTest {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Comma-separated perturbation amplitudes
        #[arg(long, value_delimiter = ',', default_values_t = [1.0, 0.5, 0.1])]
        epsilons: Vec<f64>,
        /// Also write the recovered source and state profiles at eps = 1
        #[arg(long)]
        emit_profiles: bool,
    },
    /// Evaluate the Mittag-Leffler function E_{gamma,beta}(z), z <= 0
    #[command(allow_negative_numbers = true)]
    Mlf { gamma: f64, beta: f64, z: f64 },
    /// Transform data.input between physical and spectral space
    Transform {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Direction::Forward)]
        direction: Direction,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Direction {
    Forward,
    Inverse,
}

const EXIT_CONFIG: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;

fn exit_for(err: &Error) -> u8 {
    match err {
        Error::Parse(_) | Error::InvalidParameter(_) | Error::Domain(_) | Error::Io(_) => {
            EXIT_CONFIG
        }
        _ => EXIT_NUMERICAL,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_for(&err))
        }
    }
}

fn load_config(path: &Option<PathBuf>, out: &Option<PathBuf>) -> Result<RunConfig> {
    let mut cfg = match path {
        Some(p) => RunConfig::from_file(p)?,
        None => RunConfig::default(),
    };
    if let Some(dir) = out {
        cfg.output_dir = dir.clone();
    }
    Ok(cfg)
}

/// Formats with 6 significant digits for the on-screen table.
fn sig6(x: f64) -> String {
    if x == 0.0 {
        return "0.00000".into();
    }
    let exp = x.abs().log10().floor() as i32;
    let prec = (5 - exp).clamp(0, 12) as usize;
    format!("{x:.prec$}")
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Forward { config, out } => cmd_forward(&load_config(&config, &out)?),
        Command::Inverse { config, out } => cmd_inverse(&load_config(&config, &out)?),
        Command::StabilityTest {
            config,
            out,
            epsilons,
            emit_profiles,
        } => cmd_stability_test(&load_config(&config, &out)?, &epsilons, emit_profiles),
        Command::Mlf { gamma, beta, z } => cmd_mlf(gamma, beta, z),
        Command::Transform {
            config,
            out,
            direction,
        } => cmd_transform(&load_config(&config, &out)?, direction),
    }
}

fn cmd_forward(cfg: &RunConfig) -> Result<()> {
    let pgrid = cfg.physical_grid()?;
    let sgrid = cfg.spectral_grid()?;
    let tgrid = cfg.time_grid()?;
    let plan = TransformPlan::new(cfg.params.alpha, &pgrid, &sgrid)?;

    let g = cfg.data_spec("g").realize(&pgrid)?;
    let f = cfg.data_spec("f").realize(&pgrid)?;
    let ghat = plan.forward(&g)?;
    let fhat = plan.forward(&f)?;
    let fhat_t = SpectralEvolution::constant(&tgrid, &fhat);
    let uhat = solve_forward_spectral(&cfg.params, &ghat, &fhat_t, &tgrid)?;
    let field = spectral_to_field(&uhat, &plan)?;

    let mut max_residual = 0.0f64;
    let stride = (sgrid.len() / 16).max(1);
    for k in (0..sgrid.len()).step_by(stride) {
        let f_series = vec![fhat.values[k]; tgrid.len()];
        let r = spectral_ode_residual(
            &cfg.params,
            sgrid.nodes[k],
            &uhat.lambda_series(k),
            &f_series,
            &tgrid,
        )?;
        max_residual = max_residual.max(r);
    }

    std::fs::create_dir_all(&cfg.output_dir)?;
    io::write_solution_field(cfg.output_dir.join("u.csv"), &field)?;
    let diag = serde_json::json!({
        "max_ode_residual": max_residual,
        "truncation_warning": ghat.truncation_warning || fhat.truncation_warning,
    });
    io::write_field_metadata(
        cfg.output_dir.join("u_meta.json"),
        &cfg.params,
        &field,
        Some(&diag),
    )?;
    println!(
        "forward solve: {} time nodes x {} space nodes, max ODE residual {:.3e}",
        tgrid.len(),
        pgrid.len(),
        max_residual
    );
    println!("wrote {}", cfg.output_dir.join("u.csv").display());
    Ok(())
}

fn cmd_inverse(cfg: &RunConfig) -> Result<()> {
    let pgrid = cfg.physical_grid()?;
    let sgrid = cfg.spectral_grid()?;
    let tgrid = cfg.time_grid()?;
    let plan = TransformPlan::new(cfg.params.alpha, &pgrid, &sgrid)?;

    let phi = cfg.data_spec("phi").realize(&pgrid)?;
    let psi = cfg.data_spec("psi").realize(&pgrid)?;
    let pair = solve_isp(&cfg.params, &phi, &psi, &plan, &tgrid)?;

    std::fs::create_dir_all(&cfg.output_dir)?;
    io::write_solution_field(cfg.output_dir.join("u.csv"), &pair.u)?;
    io::write_physical_function(cfg.output_dir.join("f.csv"), cfg.params.alpha, &pair.f)?;
    let diag = serde_json::to_value(&pair.diagnostics)
        .map_err(|e| Error::Parse(format!("diagnostics serialization: {e}")))?;
    io::write_field_metadata(
        cfg.output_dir.join("u_meta.json"),
        &cfg.params,
        &pair.u,
        Some(&diag),
    )?;
    println!(
        "inverse solve: conditioning {:.4}, max ODE residual {:.3e}, boundary errors {:.2e} / {:.2e}",
        pair.diagnostics.conditioning,
        pair.diagnostics.max_ode_residual,
        pair.diagnostics.initial_error,
        pair.diagnostics.final_error
    );
    if pair.diagnostics.truncation_warning {
        eprintln!("warning: transformed data did not decay before the spectral cutoff");
    }
    println!("wrote {}", cfg.output_dir.join("f.csv").display());
    println!("wrote {}", cfg.output_dir.join("u.csv").display());
    Ok(())
}

fn cmd_stability_test(cfg: &RunConfig, epsilons: &[f64], emit_profiles: bool) -> Result<()> {
    // the sample case pins the parameters; grids still come from the config
    let params = ProblemParams::new(-0.5, 1.0, 1.0, 1.0, 1.0)?;
    let pgrid = dunkl_spectral::PhysicalGrid::gauss_legendre(
        params.alpha,
        cfg.physical_extent,
        cfg.physical_n,
    )?;
    let sgrid =
        SpectralGrid::gauss_legendre(params.alpha, cfg.spectral_extent, cfg.spectral_n)?;
    let tgrid = dunkl_spectral::TimeGrid::uniform(params.final_time, cfg.time_n)?;
    let plan = TransformPlan::new(params.alpha, &pgrid, &sgrid)?;

    let zero = PhysicalFunction::zero(&pgrid);
    let shape = PhysicalFunction::from_real_fn(&pgrid, |x| (-x * x).exp());
    let rows = stability_table(&params, epsilons, &zero, &shape, &plan, &tgrid)?;

    println!("epsilon      psi_diff     f_diff       u_diff");
    for r in &rows {
        println!(
            "{:<12} {:<12} {:<12} {}",
            sig6(r.epsilon),
            sig6(r.psi_diff),
            sig6(r.f_diff),
            sig6(r.u_diff)
        );
    }

    std::fs::create_dir_all(&cfg.output_dir)?;
    io::write_stability_csv(cfg.output_dir.join("table1.csv"), &rows)?;
    println!("wrote {}", cfg.output_dir.join("table1.csv").display());

    if emit_profiles {
        let psi_d = PhysicalFunction::from_real_fn(&pgrid, |x| (-x * x).exp());
        let pair = solve_isp(&params, &zero, &psi_d, &plan, &tgrid)?;
        io::write_physical_function(
            cfg.output_dir.join("f_profile.csv"),
            params.alpha,
            &pair.f,
        )?;
        io::write_solution_field(cfg.output_dir.join("u_profile.csv"), &pair.u)?;
        println!("wrote {}", cfg.output_dir.join("f_profile.csv").display());
        println!("wrote {}", cfg.output_dir.join("u_profile.csv").display());
    }
    Ok(())
}

fn cmd_mlf(gamma: f64, beta: f64, z: f64) -> Result<()> {
    let params = MLParams::new(gamma, beta)?;
    let value = mittag_leffler(params, z)?;
    println!("{value}");
    Ok(())
}

fn cmd_transform(cfg: &RunConfig, direction: Direction) -> Result<()> {
    let pgrid = cfg.physical_grid()?;
    let sgrid = cfg.spectral_grid()?;
    let plan = TransformPlan::new(cfg.params.alpha, &pgrid, &sgrid)?;
    std::fs::create_dir_all(&cfg.output_dir)?;
    let out_path = cfg.output_dir.join("transformed.csv");
    match direction {
        Direction::Forward => {
            let f = cfg.data_spec("input").realize(&pgrid)?;
            let fhat = plan.forward(&f)?;
            if fhat.truncation_warning {
                eprintln!("warning: input did not decay before the physical grid ends");
            }
            io::write_spectral_function(&out_path, cfg.params.alpha, &fhat)?;
        }
        Direction::Inverse => {
            let fhat = realize_spectral(&cfg.data_spec("input"), &sgrid)?;
            let f = plan.inverse(&fhat)?;
            io::write_physical_function(&out_path, cfg.params.alpha, &f)?;
        }
    }
    println!("wrote {}", out_path.display());
    Ok(())
}

/// Samples a data spec on spectral nodes for the inverse transform path.
fn realize_spectral(spec: &DataSpec, sgrid: &SpectralGrid) -> Result<SpectralFunction> {
    match spec {
        DataSpec::Zero => Ok(SpectralFunction::zero(sgrid)),
        DataSpec::Gaussian {
            sigma,
            center,
            amplitude,
        } => Ok(SpectralFunction::from_fn(sgrid, |l| {
            let u = (l - center) / sigma;
            Complex64::new(amplitude * (-u * u).exp(), 0.0)
        })),
        DataSpec::Csv(path) => {
            let csv = io::read_function_csv(path)?;
            if csv.coordinates.len() != sgrid.len() {
                return Err(Error::Parse(format!(
                    "{}: {} rows, configured spectral grid has {} nodes",
                    path.display(),
                    csv.coordinates.len(),
                    sgrid.len()
                )));
            }
            for (a, b) in csv.coordinates.iter().zip(&sgrid.nodes) {
                if (a - b).abs() > 1e-9 * (1.0 + b.abs()) {
                    return Err(Error::Parse(format!(
                        "{}: coordinates do not match the configured spectral grid",
                        path.display()
                    )));
                }
            }
            SpectralFunction::new(sgrid.clone(), csv.values)
        }
    }
}
