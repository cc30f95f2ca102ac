//! Command-line stability checker: loads torus, graded and quiver data from
//! JSON, runs the exact decision procedures and emits a structured report.
//!
//! Exit codes: 0 on success, 1 on input or processing errors, 2 when
//! `--assert` is set and some check does not pass.

mod commands;
mod io;
mod regression;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use io::{CliError, CliResult};
use nrgit_core::QVector;
use report::Report;

#[derive(Parser)]
#[command(
    name = "nrgit",
    version,
    about = "Exact stability checks for torus, graded and quiver-with-multiplicity actions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write the JSON report to this path instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Seed for all sampled checks
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Print a human-readable table instead of JSON on stdout
    #[arg(long, global = true)]
    pretty: bool,

    /// Exit with status 2 if any check fails
    #[arg(long = "assert", global = true)]
    assert_pass: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Semistability checks for a diagonal torus action
    TorusCheck {
        /// Torus data file: {"rank", "weights", "points", "rho"}
        #[arg(long)]
        input: Option<PathBuf>,
        /// Inline weights, e.g. `"[[1,0],[0,1]]"`
        #[arg(long)]
        weights: Option<String>,
        /// Inline point, e.g. `"[1,1]"` (rationals as strings allowed)
        #[arg(long)]
        point: Option<String>,
        /// Inline twisting character, e.g. `"[1,1]"`
        #[arg(long)]
        rho: Option<String>,
        /// Also run the bounded cocharacter enumeration at this box size
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Minimal twisting degrees for a torus action, with the uniform bound
    HalicDegree {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        weights: Option<String>,
        #[arg(long)]
        point: Option<String>,
        #[arg(long)]
        rho: Option<String>,
    },
    /// Checks for a graded representation: {"gm_weights", "lieU"}
    GradedCheck {
        #[arg(long)]
        input: PathBuf,
        /// Point of the full space, e.g. `"[1,0,2,0]"`
        #[arg(long)]
        point: Option<String>,
        /// Integer twist of the grading
        #[arg(long, allow_negative_numbers = true)]
        rho: Option<i64>,
        /// Sample size for the stabilizer check
        #[arg(long, default_value_t = 50)]
        trials: usize,
    },
    /// The two-by-two worked fixtures, on a supplied matrix or the goldens
    BorelDemo {
        /// Inline 2x2 matrix, e.g. `"[[1,2],[3,4]]"`
        #[arg(long)]
        mat: Option<String>,
    },
    /// Checks for a representation of a quiver with multiplicity
    QuiverCheck {
        /// Representation file: {"quiver", "m", "rank", "mats"}
        #[arg(long)]
        rep: PathBuf,
        /// Stability weights in vertex order, e.g. `"[1,-1]"`
        #[arg(long)]
        rho: Option<String>,
    },
    /// Enumerate toric representations over a coefficient grid
    QuiverEnumerate {
        /// Quiver file: {"vertices", "arrows"}
        #[arg(long)]
        quiver: PathBuf,
        /// Multiplicity of the enumerated representations
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Coefficient grid, e.g. `"[-1,0,1]"`
        #[arg(long)]
        grid: Option<String>,
        /// Stability weights in vertex order
        #[arg(long)]
        rho: String,
    },
    /// Run the built-in regression suite of worked examples
    PaperRegression,
}

fn main() -> ExitCode {
    // usage problems exit 1 (exit 2 is reserved for failed assertions)
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e)
            if matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            ) =>
        {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    let started = Instant::now();
    match run(&cli) {
        Ok(report) => {
            let json = report.to_json();
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &json) {
                    eprintln!("error: cannot write `{}`: {e}", path.display());
                    return ExitCode::from(1);
                }
            }
            if cli.pretty {
                print!("{}", report.to_table());
            } else if cli.out.is_none() {
                print!("{json}");
            }
            eprintln!("nrgit {}: done in {:?}", report.command, started.elapsed());
            if cli.assert_pass && report.any_failing() {
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> CliResult<Report> {
    match &cli.command {
        Command::TorusCheck {
            input,
            weights,
            point,
            rho,
            bound,
        } => {
            let (rep, points, rho_vec, digest) = torus_inputs(
                input.as_deref(),
                weights.as_deref(),
                point.as_deref(),
                rho.as_deref(),
            )?;
            let rows = commands::torus_check(&rep, &points, rho_vec.as_ref(), *bound)?;
            Ok(Report::new("torus-check", cli.seed, digest, rows))
        }
        Command::HalicDegree {
            input,
            weights,
            point,
            rho,
        } => {
            let (rep, points, rho_vec, digest) = torus_inputs(
                input.as_deref(),
                weights.as_deref(),
                point.as_deref(),
                rho.as_deref(),
            )?;
            let rho_vec = rho_vec
                .ok_or_else(|| CliError("halic-degree requires a twisting character".into()))?;
            let rows = commands::halic_degree(&rep, &points, &rho_vec)?;
            Ok(Report::new("halic-degree", cli.seed, digest, rows))
        }
        Command::GradedCheck {
            input,
            point,
            rho,
            trials,
        } => {
            let text = io::read_file(input)?;
            let file: io::GradedFile = io::parse_json("graded file", &text)?;
            let rep = file.build()?;
            let point = point.as_deref().map(io::parse_point).transpose()?;
            let rows = commands::graded_check(&rep, point.as_ref(), *rho, *trials, cli.seed)?;
            let digest = report::input_digest(&[&text, &format!("{point:?} {rho:?}")]);
            Ok(Report::new("graded-check", cli.seed, digest, rows))
        }
        Command::BorelDemo { mat } => {
            let mat2 = mat.as_deref().map(io::parse_mat2).transpose()?;
            let digest = report::input_digest(&[mat.as_deref().unwrap_or("goldens")]);
            let rows = commands::borel_demo(mat2)?;
            Ok(Report::new("borel-demo", cli.seed, digest, rows))
        }
        Command::QuiverCheck { rep, rho } => {
            let text = io::read_file(rep)?;
            let file: io::RepFile = io::parse_json("representation file", &text)?;
            let base = rep.parent().unwrap_or_else(|| std::path::Path::new("."));
            let phi = file.build(base)?;
            let rho_vals = rho.as_deref().map(io::parse_int_row).transpose()?;
            let rows = commands::quiver_check(&phi, rho_vals.as_deref())?;
            let digest = report::input_digest(&[&text, rho.as_deref().unwrap_or("")]);
            Ok(Report::new("quiver-check", cli.seed, digest, rows))
        }
        Command::QuiverEnumerate {
            quiver,
            m,
            grid,
            rho,
        } => {
            let text = io::read_file(quiver)?;
            let file: io::QuiverFile = io::parse_json("quiver file", &text)?;
            let shape = file.build()?;
            let grid_vals = match grid.as_deref() {
                Some(g) => io::parse_int_row(g)?,
                None => vec![-1, 0, 1],
            };
            let rho_vals = io::parse_int_row(rho)?;
            let rows = commands::quiver_enumerate(&shape, *m, &grid_vals, &rho_vals)?;
            let digest = report::input_digest(&[&text, &format!("{m} {grid_vals:?} {rho_vals:?}")]);
            Ok(Report::new("quiver-enumerate", cli.seed, digest, rows))
        }
        Command::PaperRegression => {
            let rows = regression::run(cli.seed)?;
            let digest = report::input_digest(&["builtin-regression"]);
            Ok(Report::new("paper-regression", cli.seed, digest, rows))
        }
    }
}

type TorusInputs = (
    nrgit_core::torus::TorusRep,
    Vec<QVector>,
    Option<QVector>,
    String,
);

fn torus_inputs(
    input: Option<&std::path::Path>,
    weights: Option<&str>,
    point: Option<&str>,
    rho: Option<&str>,
) -> CliResult<TorusInputs> {
    if let Some(path) = input {
        let text = io::read_file(path)?;
        let file: io::TorusFile = io::parse_json("torus file", &text)?;
        let rep = io::torus_rep_from(&file)?;
        let mut points: Vec<QVector> = file.points.iter().cloned().map(QVector::new).collect();
        if let Some(p) = point {
            points.push(io::parse_point(p)?);
        }
        let rho_vec = match rho {
            Some(r) => Some(QVector::from_ints(&io::parse_int_row(r)?)),
            None => file.rho.as_ref().map(|r| QVector::from_ints(r)),
        };
        let digest = report::input_digest(&[&text, point.unwrap_or(""), rho.unwrap_or("")]);
        Ok((rep, points, rho_vec, digest))
    } else {
        let weights_arg =
            weights.ok_or_else(|| CliError("either --input or --weights is required".into()))?;
        let rows = io::parse_int_rows(weights_arg)?;
        let rank = rows.first().map_or(0, Vec::len);
        let rep = nrgit_core::torus::TorusRep::new(
            rank,
            rows.iter().map(|w| QVector::from_ints(w)).collect(),
        )?;
        let point_arg =
            point.ok_or_else(|| CliError("--point is required with inline weights".into()))?;
        let points = vec![io::parse_point(point_arg)?];
        let rho_vec = rho
            .map(|r| -> CliResult<QVector> { Ok(QVector::from_ints(&io::parse_int_row(r)?)) })
            .transpose()?;
        let digest = report::input_digest(&[weights_arg, point_arg, rho.unwrap_or("")]);
        Ok((rep, points, rho_vec, digest))
    }
}
