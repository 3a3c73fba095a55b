//! Thin command-line front end; all logic lives in the library.

use clap::{Parser, Subcommand};
use interp_lab::cli::{self, CliError, DfoArgs, ProblemFile, SweepSpec};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "interp-lab",
    about = "Sharp error bounds for multivariate linear interpolation and extrapolation",
    version
)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report every applicable error bound at a query point
    Bound {
        /// Problem file (JSON with nu, theta, optional x)
        #[arg(long)]
        problem: PathBuf,
        /// Query point override, comma-separated coordinates
        #[arg(long)]
        x: Option<String>,
        /// Lipschitz-constant override
        #[arg(long)]
        nu: Option<f64>,
        /// Also solve the error estimation problem numerically
        #[arg(long)]
        eep: bool,
        /// Solver tolerance on the duality-gap surrogate
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Write the report as JSON to this path
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate bounds over a grid of query points, emitting CSV
    Sweep {
        #[arg(long)]
        problem: PathBuf,
        /// Grid as x1min,x1max,x2min,x2max,nx,ny
        #[arg(long, default_value = "-2.5,2.5,-1.5,2.5,20,20")]
        grid: String,
        /// Output CSV path
        #[arg(long)]
        out: PathBuf,
        /// Also solve the error estimation problem at every grid point
        #[arg(long)]
        eep: bool,
        #[arg(long)]
        nu: Option<f64>,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Compute the mu sharpness certificate at a query point
    Certify {
        #[arg(long)]
        problem: PathBuf,
        #[arg(long)]
        x: Option<String>,
        #[arg(long)]
        nu: Option<f64>,
    },
    /// Solve the error estimation problem (numerical sharp bound)
    Eep {
        #[arg(long)]
        problem: PathBuf,
        #[arg(long)]
        x: Option<String>,
        #[arg(long)]
        nu: Option<f64>,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Run the reflection-only simplex optimizer on a built-in function
    Dfo {
        /// Objective name: sphere, quad-aniso, smooth-abs
        #[arg(long)]
        function: String,
        /// Dimension
        #[arg(long)]
        n: usize,
        /// Start point, comma-separated (default: distance 2 from origin)
        #[arg(long)]
        start: Option<String>,
        /// Target gradient norm for the stopping rule
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
        /// Lipschitz constant override (default: the suite value)
        #[arg(long)]
        nu: Option<f64>,
        /// gradient-stop or fixed-budget
        #[arg(long, default_value = "gradient-stop")]
        mode: String,
        #[arg(long, default_value_t = 100_000)]
        max_iter: usize,
        /// Fixed simplex size (default: the 2eps/(5 n nu) rule)
        #[arg(long)]
        delta: Option<f64>,
        /// Known minimum value enabling the complexity budget check
        #[arg(long)]
        fstar: Option<f64>,
        /// Write the per-iteration trace as CSV to this path
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample random instances and report mu sign patterns vs. vertex angles
    ProbeConjecture {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        #[arg(long, default_value_t = 3)]
        n_max: usize,
    },
}

fn load_problem(path: &Path) -> Result<ProblemFile, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
    ProblemFile::parse(&text)
}

fn parse_x(x: &Option<String>) -> Result<Option<Vec<f64>>, CliError> {
    x.as_deref().map(cli::parse_coords).transpose()
}

fn run(args: Args) -> Result<(), CliError> {
    let mut stdout = std::io::stdout().lock();
    match args.command {
        Command::Bound {
            problem,
            x,
            nu,
            eep,
            tol,
            out,
        } => {
            let p = load_problem(&problem)?;
            let x = parse_x(&x)?;
            let json = cli::cmd_bound(&p, x.as_deref(), nu, eep, tol, &mut stdout)?;
            if let Some(path) = out {
                let mut file = fs::File::create(&path)?;
                cli::write_json(&json, &mut file)?;
            }
        }
        Command::Sweep {
            problem,
            grid,
            out,
            eep,
            nu,
            tol,
        } => {
            let p = load_problem(&problem)?;
            let spec = SweepSpec::parse(&grid)?;
            let outcome = cli::run_sweep(&p, &spec, nu, eep, tol)?;
            let mut file = fs::File::create(&out)?;
            outcome.write_csv(&mut file)?;
            file.flush()?;
            if outcome.failures > 0 {
                eprintln!(
                    "{} of {} grid points failed; their fields are empty",
                    outcome.failures,
                    outcome.rows.len()
                );
                return Err(CliError::Solver(format!(
                    "{} grid points failed",
                    outcome.failures
                )));
            }
            writeln!(
                stdout,
                "wrote {} rows to {}",
                outcome.rows.len(),
                out.display()
            )?;
        }
        Command::Certify { problem, x, nu } => {
            let p = load_problem(&problem)?;
            let x = parse_x(&x)?;
            cli::cmd_certify(&p, x.as_deref(), nu, &mut stdout)?;
        }
        Command::Eep {
            problem,
            x,
            nu,
            tol,
        } => {
            let p = load_problem(&problem)?;
            let x = parse_x(&x)?;
            cli::cmd_eep(&p, x.as_deref(), nu, tol, &mut stdout)?;
        }
        Command::Dfo {
            function,
            n,
            start,
            epsilon,
            nu,
            mode,
            max_iter,
            delta,
            fstar,
            out,
        } => {
            let dfo_args = DfoArgs {
                function,
                n,
                start: parse_x(&start)?,
                epsilon,
                nu,
                mode,
                max_iter,
                delta,
                fstar,
            };
            let csv = cli::cmd_dfo(&dfo_args, &mut stdout)?;
            if let Some(path) = out {
                fs::write(&path, csv)?;
                writeln!(stdout, "trace written to {}", path.display())?;
            }
        }
        Command::ProbeConjecture {
            seed,
            trials,
            n_min,
            n_max,
        } => {
            cli::cmd_probe_conjecture(seed, trials, n_min, n_max, &mut stdout)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
