//! `fringelab`: run interferometry scenarios and emit plot-ready CSV/JSON.
//!
//! Exit codes: 0 success, 1 usage error, 2 validation or runtime failure.

mod verify;

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fringelab_core::coherence::{first_harmonic, phi_grid, DEFAULT_PHI_POINTS};
use fringelab_core::report::{
    compare_to_csv, fig2_to_csv, pattern_to_csv, CompareRow,
};
use fringelab_core::scenarios::{
    classical_channel_model, classical_visibility, fig2_curve, interpolation_scenario,
    linear_grid, phased_interpolation_scenario, prepare_interpolation_state,
    quantum_visibility, young_scenario, ScenarioResult,
};
use num_complex::Complex64;

#[derive(Parser)]
#[command(name = "fringelab", version, about = "Two-mode interferometry laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write to this path instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Scan the interference pattern of a named scenario over phi.
    Scan {
        /// Scenario name: interp | noon | classical (see `list`).
        #[arg(long)]
        scenario: String,
        /// Pair-fraction eta in [0, 1] (interp).
        #[arg(long)]
        eta: Option<f64>,
        /// Relative phase beta on the pair component (interp).
        #[arg(long)]
        beta: Option<f64>,
        /// Relative phase between the coherent channels (classical).
        #[arg(long)]
        phi12: Option<f64>,
        /// Real part of the coherent amplitude alpha (classical).
        #[arg(long)]
        alpha_re: Option<f64>,
        /// Imaginary part of the coherent amplitude alpha (classical).
        #[arg(long)]
        alpha_im: Option<f64>,
        /// Number of phi samples on [0, 2 pi].
        #[arg(long, default_value_t = DEFAULT_PHI_POINTS)]
        phi_points: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Emit the first-order coherence suppression curve |g1|(eta).
    Fig2 {
        /// Number of eta samples on [0, 1].
        #[arg(long, default_value_t = 101)]
        points: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the four-mode post-selected preparation protocol.
    Prep {
        /// Mixing angle in radians, in [0, pi/2].
        #[arg(long)]
        eta: f64,
        /// Number of phi samples for the attached pattern (csv output).
        #[arg(long, default_value_t = DEFAULT_PHI_POINTS)]
        phi_points: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Scan a conventional single-port input with arbitrary coefficients.
    Young {
        /// Comma-separated coefficients c_0,c_1,... each as `re` or `re:im`;
        /// must be normalized.
        #[arg(long)]
        coeffs: String,
        /// Number of phi samples on [0, 2 pi].
        #[arg(long, default_value_t = DEFAULT_PHI_POINTS)]
        phi_points: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compare quantum and classical visibilities over an (eta, beta) sweep.
    Compare {
        /// Fix eta instead of sweeping it over [0, 1].
        #[arg(long)]
        eta: Option<f64>,
        /// Fix beta instead of sweeping it over [0, 2 pi].
        #[arg(long)]
        beta: Option<f64>,
        /// Number of samples along each swept axis.
        #[arg(long, default_value_t = 11)]
        points: usize,
        /// Number of phi samples for each simulated fringe.
        #[arg(long, default_value_t = DEFAULT_PHI_POINTS)]
        phi_points: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the invariant suite and print a pass/fail table.
    Verify {
        /// Truncation cutoff for the coherent-state cross-check.
        #[arg(long, default_value_t = 24)]
        cutoff: u32,
    },
    /// List the available scenarios and their parameter domains.
    List,
}

fn parse_complex(token: &str) -> Result<Complex64, String> {
    let (re, im) = match token.split_once(':') {
        Some((re, im)) => (re, im),
        None => (token, "0"),
    };
    let re: f64 = re
        .trim()
        .parse()
        .map_err(|_| format!("invalid real part in `{token}`"))?;
    let im: f64 = im
        .trim()
        .parse()
        .map_err(|_| format!("invalid imaginary part in `{token}`"))?;
    Ok(Complex64::new(re, im))
}

fn parse_coeffs(list: &str) -> Result<Vec<Complex64>, String> {
    list.split(',').map(parse_complex).collect()
}

fn emit(output: &OutputArgs, content: String) -> Result<(), String> {
    match &output.out {
        Some(path) => fs::write(path, content).map_err(|e| format!("cannot write {path}: {e}")),
        None => {
            use std::io::Write as _;
            match std::io::stdout().write_all(content.as_bytes()) {
                // A closed pipe (e.g. piping into `head`) is not an error.
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                other => other.map_err(|e| e.to_string()),
            }
        }
    }
}

fn scenario_output(output: &OutputArgs, result: &ScenarioResult) -> Result<(), String> {
    let content = match output.format {
        Format::Json => {
            let mut text =
                serde_json::to_string_pretty(result).map_err(|e| e.to_string())?;
            text.push('\n');
            text
        }
        Format::Csv => {
            let channel = result
                .quantum
                .as_ref()
                .or(result.classical.as_ref())
                .ok_or("scenario produced no channel data")?;
            pattern_to_csv(&channel.pattern)
        }
    };
    emit(output, content)
}

fn run_scan(
    scenario: &str,
    eta: Option<f64>,
    beta: Option<f64>,
    phi12: Option<f64>,
    alpha_re: Option<f64>,
    alpha_im: Option<f64>,
    phi_points: usize,
    output: &OutputArgs,
) -> Result<(), String> {
    let phis = phi_grid(phi_points);
    let result = match scenario {
        "interp" => {
            let eta = eta.ok_or("scenario `interp` requires --eta")?;
            match beta {
                Some(beta) => {
                    phased_interpolation_scenario(eta, beta, &phis).map_err(|e| e.to_string())?
                }
                None => interpolation_scenario(eta, &phis).map_err(|e| e.to_string())?,
            }
        }
        "noon" => interpolation_scenario(0.0, &phis).map_err(|e| e.to_string())?,
        "classical" => {
            let alpha = Complex64::new(alpha_re.unwrap_or(1.0), alpha_im.unwrap_or(0.0));
            classical_channel_model(alpha, phi12.unwrap_or(0.0), &phis)
                .map_err(|e| e.to_string())?
        }
        other => return Err(format!("unknown scenario `{other}`; see `fringelab list`")),
    };
    scenario_output(output, &result)
}

fn run_fig2(points: usize, output: &OutputArgs) -> Result<(), String> {
    if points == 0 {
        return Err("--points must be at least 1".into());
    }
    let rows = fig2_curve(&linear_grid(0.0, 1.0, points)).map_err(|e| e.to_string())?;
    let content = match output.format {
        Format::Csv => fig2_to_csv(&rows),
        Format::Json => {
            let mut text = serde_json::to_string_pretty(&rows).map_err(|e| e.to_string())?;
            text.push('\n');
            text
        }
    };
    emit(output, content)
}

fn run_prep(eta: f64, _phi_points: usize, output: &OutputArgs) -> Result<(), String> {
    if !(0.0..=std::f64::consts::FRAC_PI_2).contains(&eta) {
        return Err(format!("--eta must lie in [0, pi/2], got {eta}"));
    }
    let outcome = prepare_interpolation_state(eta).map_err(|e| e.to_string())?;
    match output.format {
        Format::Json => {
            let mut text =
                serde_json::to_string_pretty(&outcome).map_err(|e| e.to_string())?;
            text.push('\n');
            emit(output, text)
        }
        Format::Csv => scenario_output(output, &outcome.result),
    }
}

fn run_young(coeffs: &str, phi_points: usize, output: &OutputArgs) -> Result<(), String> {
    let coefficients = parse_coeffs(coeffs)?;
    let phis = phi_grid(phi_points);
    let result = young_scenario(&coefficients, &phis).map_err(|e| e.to_string())?;
    scenario_output(output, &result)
}

fn run_compare(
    eta: Option<f64>,
    beta: Option<f64>,
    points: usize,
    phi_points: usize,
    output: &OutputArgs,
) -> Result<(), String> {
    if points == 0 {
        return Err("--points must be at least 1".into());
    }
    let etas = match eta {
        Some(eta) => vec![eta],
        None => linear_grid(0.0, 1.0, points),
    };
    let betas = match beta {
        Some(beta) => vec![beta],
        None => linear_grid(0.0, std::f64::consts::TAU, points),
    };
    let phis = phi_grid(phi_points);
    let mut rows = Vec::with_capacity(etas.len() * betas.len());
    for &eta in &etas {
        for &beta in &betas {
            let result =
                phased_interpolation_scenario(eta, beta, &phis).map_err(|e| e.to_string())?;
            let extract = |series: &[f64]| -> Result<f64, String> {
                let (mean, c, s) = first_harmonic(&phis, series).map_err(|e| e.to_string())?;
                Ok((c * c + s * s).sqrt() / mean)
            };
            let quantum = result.quantum.as_ref().expect("quantum channel");
            let classical = result.classical.as_ref().expect("classical channel");
            rows.push(CompareRow {
                eta,
                beta,
                v_q_simulated: extract(&quantum.pattern.intensity_a)?,
                v_q_closed_form: quantum_visibility(eta, beta),
                v_c_simulated: extract(&classical.pattern.intensity_a)?,
                v_c_closed_form: classical_visibility(eta, beta),
            });
        }
    }
    let content = match output.format {
        Format::Csv => compare_to_csv(&rows),
        Format::Json => {
            let mut text = serde_json::to_string_pretty(&rows).map_err(|e| e.to_string())?;
            text.push('\n');
            text
        }
    };
    emit(output, content)
}

fn run_list() {
    println!("scenarios:");
    println!("  interp     pair-fraction family; --eta in [0, 1], optional --beta in [0, 2 pi]");
    println!("             eta = 1: single-port two-photon input, full fringe visibility");
    println!("             eta = 0: balanced pair state, first-order fringes vanish");
    println!("  noon       shorthand for interp at eta = 0 (two-photon path-entangled state)");
    println!("  classical  coherent channel pair; --alpha-re/--alpha-im, --phi12");
    println!();
    println!("other commands:");
    println!("  fig2       |g1|(eta) curve over [0, 1]; --points");
    println!("  prep       four-mode post-selected preparation; --eta (angle) in [0, pi/2]");
    println!("  young      single-port input from a coefficient list; --coeffs re:im,...");
    println!("  compare    quantum vs classical visibility sweep; --eta, --beta, --points");
    println!("  verify     invariant suite with pass/fail table");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests are successful exits; everything else
            // is a usage error (exit 1).
            let _ = err.print();
            return if err.exit_code() == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
        }
    };
    let outcome = match &cli.command {
        Command::Scan {
            scenario,
            eta,
            beta,
            phi12,
            alpha_re,
            alpha_im,
            phi_points,
            output,
        } => run_scan(
            scenario, *eta, *beta, *phi12, *alpha_re, *alpha_im, *phi_points, output,
        ),
        Command::Fig2 { points, output } => run_fig2(*points, output),
        Command::Prep {
            eta,
            phi_points,
            output,
        } => run_prep(*eta, *phi_points, output),
        Command::Young {
            coeffs,
            phi_points,
            output,
        } => run_young(coeffs, *phi_points, output),
        Command::Compare {
            eta,
            beta,
            points,
            phi_points,
            output,
        } => run_compare(*eta, *beta, *points, *phi_points, output),
        Command::Verify { cutoff } => {
            return if verify::run(*cutoff) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Command::List => {
            run_list();
            return ExitCode::SUCCESS;
        }
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
