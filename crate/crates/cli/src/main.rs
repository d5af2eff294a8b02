use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use rheokit_cli::commands::{self, CompareParams};
use rheokit_cli::document::{model_to_json, parse_model, parse_simulation};
use rheokit_cli::output::write_csv;
use rheokit_cli::CliError;

/// Viscoplastic rheology curves, comparisons and 0D simulations.
///
/// Exit codes: 0 success, 2 invalid input or I/O failure, 3 solver or
/// integrator failure, 4 equivalence regression.
#[derive(Parser)]
#[command(name = "rheokit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Effective viscosity and stress of a model over a strain-rate range.
    Curve(CurveArgs),
    /// Rigorous vs. empirical serial diffusion/dislocation creep.
    Compare(CompareArgs),
    /// Three-element equivalence report (JSON).
    Equivalence(EquivalenceArgs),
    /// Time-integrate a generalized Maxwell model.
    Simulate(SimulateArgs),
    /// Convex conjugate of a single-element model.
    Conjugate(ConjugateArgs),
}

#[derive(Args)]
struct Output {
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CurveArgs {
    #[arg(long)]
    model: PathBuf,
    #[arg(long, default_value_t = 0.01)]
    eps_min: f64,
    #[arg(long, default_value_t = 3.4)]
    eps_max: f64,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    /// Print the parsed model as JSON instead of sampling it.
    #[arg(long)]
    dump_model: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    Fig6,
}

#[derive(Args)]
struct CompareArgs {
    /// Named parameter set; `fig6` is D_dif = D_dsl = 1, n = 2, 3, inf on (0, 3.4].
    #[arg(long, value_enum, conflicts_with_all = ["d_dif", "d_dsl", "n", "eps_min", "eps_max", "samples"])]
    preset: Option<Preset>,
    #[arg(long)]
    d_dif: Option<f64>,
    #[arg(long)]
    d_dsl: Option<f64>,
    /// Comma-separated exponents; `inf` selects the plastic limit.
    #[arg(long, value_delimiter = ',', value_parser = parse_exponent)]
    n: Option<Vec<f64>>,
    #[arg(long)]
    eps_min: Option<f64>,
    #[arg(long)]
    eps_max: Option<f64>,
    #[arg(long)]
    samples: Option<usize>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct EquivalenceArgs {
    #[arg(long, default_value_t = 1.0)]
    sigma_a: f64,
    #[arg(long, default_value_t = 1.0)]
    d2: f64,
    #[arg(long, default_value_t = 1.0)]
    d3: f64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct SimulateArgs {
    /// Simulation document.
    #[arg(long)]
    model: PathBuf,
    #[arg(long)]
    dt: f64,
    #[arg(long)]
    t_end: f64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct ConjugateArgs {
    #[arg(long)]
    model: PathBuf,
    #[arg(long, default_value_t = 10.0)]
    sigma_max: f64,
    #[arg(long, default_value_t = 2048)]
    samples: usize,
    #[command(flatten)]
    output: Output,
}

fn parse_exponent(s: &str) -> Result<f64, String> {
    let n = match s.trim() {
        "inf" => f64::INFINITY,
        t => t.parse::<f64>().map_err(|e| format!("`{t}`: {e}"))?,
    };
    if n > 0.0 {
        Ok(n)
    } else {
        Err(format!("exponent must be positive, got {s}"))
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn sink(out: &Output) -> Result<Box<dyn Write>, CliError> {
    Ok(match &out.out {
        Some(p) => Box::new(io::BufWriter::new(
            fs::File::create(p).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn header(cols: &[&str]) -> Vec<String> {
    cols.iter().map(|s| s.to_string()).collect()
}

fn compare_params(a: &CompareArgs) -> CompareParams {
    let fig6 = CompareParams::fig6();
    if a.preset.is_some() {
        return fig6;
    }
    let eps = match (a.eps_min, a.eps_max, a.samples) {
        (None, None, None) => fig6.eps,
        (lo, hi, n) => commands::linspace(lo.unwrap_or(0.017), hi.unwrap_or(3.4), n.unwrap_or(200).max(1)),
    };
    CompareParams {
        d_dif: a.d_dif.unwrap_or(fig6.d_dif),
        d_dsl: a.d_dsl.unwrap_or(fig6.d_dsl),
        exponents: a.n.clone().unwrap_or(fig6.exponents),
        eps,
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Curve(a) => {
            let model =
                parse_model(&read(&a.model)?).map_err(|e| CliError::Input(format!("{}: {e}", a.model.display())))?;
            if a.dump_model {
                let mut w = sink(&a.output)?;
                let text = serde_json::to_string_pretty(&model_to_json(&model)?)
                    .map_err(|e| CliError::Input(e.to_string()))?;
                writeln!(w, "{text}")?;
                return Ok(w.flush()?);
            }
            let rows = commands::curve(&model, a.eps_min, a.eps_max, a.samples)?;
            write_csv(sink(&a.output)?, &header(&commands::CURVE_HEADER), &rows)
        }
        Command::Compare(a) => {
            let p = compare_params(&a);
            let rows = commands::compare(&p)?;
            write_csv(sink(&a.output)?, &commands::compare_header(&p.exponents), &rows)
        }
        Command::Equivalence(a) => {
            let report = commands::equivalence(a.sigma_a, a.d2, a.d3)?;
            let mut w = sink(&a.output)?;
            let text = serde_json::to_string_pretty(&report).map_err(|e| CliError::Input(e.to_string()))?;
            writeln!(w, "{text}")?;
            w.flush()?;
            if !report.rigorous_equivalent {
                return Err(CliError::Equivalence(format!(
                    "rigorous three-element bodies deviate by {:e} (tolerance {:e})",
                    report.rigorous_max_deviation, report.tolerance
                )));
            }
            Ok(())
        }
        Command::Simulate(a) => {
            let doc = parse_simulation(&read(&a.model)?)
                .map_err(|e| CliError::Input(format!("{}: {e}", a.model.display())))?;
            let rows = commands::simulate(&doc, a.dt, a.t_end)?;
            write_csv(sink(&a.output)?, &header(&commands::SIMULATE_HEADER), &rows)
        }
        Command::Conjugate(a) => {
            let model =
                parse_model(&read(&a.model)?).map_err(|e| CliError::Input(format!("{}: {e}", a.model.display())))?;
            let rows = commands::conjugate(&model, a.sigma_max, a.samples)?;
            write_csv(sink(&a.output)?, &header(&commands::CONJUGATE_HEADER), &rows)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("rheokit: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
