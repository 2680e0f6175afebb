//! The `svl` command line.
//!
//! Exit codes: 0 success, 2 bad arguments or unreadable input, 3 a request
//! outside a function's domain (unnormalized coefficients, wrong arity, a
//! relation that does not apply to the state), 4 an optimization that did not
//! reach a stationary point (unless `--allow-unconverged`).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::correlations::{chsh_max, correlation_matrix, correlation_tensor, svetlichny_upper_bound};
use crate::error::Error;
use crate::qstate::{DensityMatrix, PureState, StateSpec};
use crate::svetlichny::{maximize_svetlichny, OptimizerOptions};
use crate::tradeoff::{format_f64, sweep_figure, verify_theorem, Figure, Theorem, Variant, DEFAULT_GRID_POINTS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_UNCONVERGED: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "svl", version, about = "Svetlichny values of three-qubit reductions and trade-off bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    global: GlobalArgs,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Seed of the optimizer's random starts.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Number of optimizer restarts.
    #[arg(long, global = true, default_value_t = 64)]
    restarts: usize,

    /// Nelder–Mead iteration cap per restart.
    #[arg(long, global = true, default_value_t = 2000)]
    max_iter: usize,

    /// Simplex diameter at which Nelder–Mead stops.
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol: f64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Reading of the W-class formulas with mixed-power terms.
    #[arg(long, global = true, value_enum, default_value_t = VariantArg::Verbatim)]
    variant: VariantArg,

    /// Interpret `theta` in state specifications as degrees.
    #[arg(long, global = true)]
    degrees: bool,

    /// Exit 0 even when an optimization did not converge.
    #[arg(long, global = true)]
    allow_unconverged: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Verbatim,
    Corrected,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Verbatim => Variant::Verbatim,
            VariantArg::Corrected => Variant::Corrected,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BoundKind {
    /// `4λ₁` of a three-qubit state.
    Svetlichny,
    /// Horodecki maximum of a two-qubit state.
    Chsh,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TheoremArg {
    Theorem1,
    Theorem2,
    Theorem3,
    Eqn3p,
    Corollary1,
    Corollary2,
}

impl From<TheoremArg> for Theorem {
    fn from(t: TheoremArg) -> Self {
        match t {
            TheoremArg::Theorem1 => Theorem::Theorem1,
            TheoremArg::Theorem2 => Theorem::Theorem2,
            TheoremArg::Theorem3 => Theorem::Theorem3,
            TheoremArg::Eqn3p => Theorem::Eqn3p,
            TheoremArg::Corollary1 => Theorem::Corollary1,
            TheoremArg::Corollary2 => Theorem::Corollary2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FigureArg {
    #[value(name = "FIG1", alias = "fig1")]
    Fig1,
    #[value(name = "FIG2", alias = "fig2")]
    Fig2,
    #[value(name = "FIG3", alias = "fig3")]
    Fig3,
    #[value(name = "FIG4", alias = "fig4")]
    Fig4,
}

impl From<FigureArg> for Figure {
    fn from(f: FigureArg) -> Self {
        match f {
            FigureArg::Fig1 => Figure::Fig1,
            FigureArg::Fig2 => Figure::Fig2,
            FigureArg::Fig3 => Figure::Fig3,
            FigureArg::Fig4 => Figure::Fig4,
        }
    }
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct StateSource {
    /// State as JSON, e.g. '{"family":"GGHZ","n":4,"theta":0.5}'.
    #[arg(long)]
    state: Option<String>,

    /// File holding a state JSON or the output of `svl state`.
    #[arg(long)]
    state_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct Subsystem {
    /// Comma-separated qubits to keep, 0-based, qubit 0 most significant.
    #[arg(long, alias = "reduce", value_delimiter = ',')]
    keep: Option<Vec<usize>>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the amplitudes of a state.
    State {
        #[command(flatten)]
        source: StateSource,
    },
    /// Print a reduced density matrix.
    Reduce {
        #[command(flatten)]
        source: StateSource,
        #[command(flatten)]
        subsystem: Subsystem,
    },
    /// Print `4λ₁` (three qubits) or the CHSH maximum (two qubits).
    Bound {
        #[command(flatten)]
        source: StateSource,
        #[command(flatten)]
        subsystem: Subsystem,
        #[arg(long, value_enum, default_value_t = BoundKind::Svetlichny)]
        kind: BoundKind,
    },
    /// Numerically maximize the Svetlichny value of a three-qubit state.
    Maximize {
        #[command(flatten)]
        source: StateSource,
        #[command(flatten)]
        subsystem: Subsystem,
    },
    /// Check a trade-off relation on every three-qubit reduction.
    Tradeoff {
        #[arg(value_enum)]
        theorem: TheoremArg,
        #[command(flatten)]
        source: StateSource,
    },
    /// Emit the data table behind one figure.
    Figure {
        #[arg(value_enum)]
        figure: FigureArg,
        #[arg(long, default_value_t = DEFAULT_GRID_POINTS)]
        points: usize,
    },
}

/// Output of `svl state`, accepted back by `--state-file`.
#[derive(Debug, Serialize, Deserialize)]
struct StateDocument {
    spec: StateSpec,
    num_qubits: usize,
    amplitudes: Vec<[f64; 2]>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum StateInput {
    Document(StateDocument),
    Spec(StateSpec),
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

struct Output {
    text: String,
    converged: bool,
}

impl Output {
    fn done(text: String) -> Self {
        Output { text, converged: true }
    }
}

fn read_spec(source: &StateSource, degrees: bool) -> Result<StateSpec, Failure> {
    let (text, origin) = match (&source.state, &source.state_file) {
        (Some(s), _) => (s.clone(), "--state".to_string()),
        (None, Some(path)) => (
            std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
            path.display().to_string(),
        ),
        (None, None) => return Err(Failure::Usage("a state is required".into())),
    };
    let input: StateInput =
        serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{origin}: not a state: {e}")))?;
    let mut spec = match input {
        StateInput::Document(doc) => doc.spec,
        StateInput::Spec(spec) => spec,
    };
    if degrees {
        if let StateSpec::Gghz { theta, .. } | StateSpec::Ms { theta, .. } = &mut spec {
            *theta = theta.to_radians();
        }
    }
    Ok(spec)
}

fn reduced(psi: &PureState, keep: &Option<Vec<usize>>) -> Result<(Vec<usize>, DensityMatrix), Failure> {
    let keep = keep.clone().unwrap_or_else(|| (0..psi.num_qubits()).collect());
    let rho = psi.reduce(&keep)?;
    Ok((keep, rho))
}

fn complex_pairs(z: &[crate::linalg::C64]) -> Vec<[f64; 2]> {
    z.iter().map(|c| [c.re, c.im]).collect()
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

fn execute(cli: &Cli) -> Result<Output, Failure> {
    let g = &cli.global;
    let opts = OptimizerOptions {
        restarts: g.restarts,
        max_iter: g.max_iter,
        tol: g.tol,
        seed: g.seed,
    };
    let csv = g.format == Format::Csv;
    match &cli.command {
        Command::State { source } => {
            let spec = read_spec(source, g.degrees)?;
            let psi = spec.build()?;
            if csv {
                let mut out = String::from("index,re,im\n");
                for (i, z) in psi.amplitudes().iter().enumerate() {
                    let _ = writeln!(out, "{i},{},{}", format_f64(z.re), format_f64(z.im));
                }
                return Ok(Output::done(out));
            }
            Ok(Output::done(to_json(&StateDocument {
                num_qubits: psi.num_qubits(),
                amplitudes: complex_pairs(psi.amplitudes()),
                spec,
            })))
        }
        Command::Reduce { source, subsystem } => {
            let psi = read_spec(source, g.degrees)?.build()?;
            let (keep, rho) = reduced(&psi, &subsystem.keep)?;
            let dim = rho.entries().dim();
            if csv {
                let mut out = String::from("row,col,re,im\n");
                for r in 0..dim {
                    for c in 0..dim {
                        let z = rho.entries()[(r, c)];
                        let _ = writeln!(out, "{r},{c},{},{}", format_f64(z.re), format_f64(z.im));
                    }
                }
                return Ok(Output::done(out));
            }
            let rows: Vec<Vec<[f64; 2]>> = (0..dim)
                .map(|r| complex_pairs(&rho.entries().as_slice()[r * dim..(r + 1) * dim]))
                .collect();
            Ok(Output::done(to_json(&json!({
                "qubits": keep,
                "num_qubits": rho.num_qubits(),
                "purity": rho.purity(),
                "density": rows,
            }))))
        }
        Command::Bound {
            source,
            subsystem,
            kind,
        } => {
            let psi = read_spec(source, g.degrees)?.build()?;
            let (keep, rho) = reduced(&psi, &subsystem.keep)?;
            match kind {
                BoundKind::Svetlichny => {
                    let t = correlation_tensor(&rho)?;
                    let value = svetlichny_upper_bound(&rho)?;
                    if csv {
                        let mut out = String::from("i,j,k,value\n");
                        for i in 0..3 {
                            for j in 0..3 {
                                for k in 0..3 {
                                    let _ = writeln!(out, "{},{},{},{}", i + 1, j + 1, k + 1, format_f64(t.m[i][j][k]));
                                }
                            }
                        }
                        return Ok(Output::done(out));
                    }
                    Ok(Output::done(to_json(&json!({
                        "kind": "svetlichny",
                        "qubits": keep,
                        "value": value,
                        "singular_values": t.singular_values(),
                        "tensor": t.m,
                    }))))
                }
                BoundKind::Chsh => {
                    let t = correlation_matrix(&rho)?;
                    let value = chsh_max(&rho)?;
                    if csv {
                        let mut out = String::from("i,j,value\n");
                        for i in 0..3 {
                            for j in 0..3 {
                                let _ = writeln!(out, "{},{},{}", i + 1, j + 1, format_f64(t.t[i][j]));
                            }
                        }
                        return Ok(Output::done(out));
                    }
                    Ok(Output::done(to_json(&json!({
                        "kind": "chsh",
                        "qubits": keep,
                        "value": value,
                        "matrix": t.t,
                    }))))
                }
            }
        }
        Command::Maximize { source, subsystem } => {
            let psi = read_spec(source, g.degrees)?.build()?;
            let (keep, rho) = reduced(&psi, &subsystem.keep)?;
            let max = maximize_svetlichny(&rho, &opts)?;
            let bound = svetlichny_upper_bound(&rho)?;
            let text = if csv {
                let a = max.settings.angles();
                let mut out = String::from("value,upper_bound,converged,best_restart");
                for label in ["a", "a_p", "b", "b_p", "c", "c_p"] {
                    let _ = write!(out, ",{label}_theta,{label}_phi");
                }
                out.push('\n');
                let _ = write!(
                    out,
                    "{},{},{},{}",
                    format_f64(max.value),
                    format_f64(bound),
                    max.converged,
                    max.best_restart
                );
                for x in a {
                    let _ = write!(out, ",{}", format_f64(x));
                }
                out.push('\n');
                out
            } else {
                to_json(&json!({
                    "qubits": keep,
                    "value": max.value,
                    "upper_bound": bound,
                    "converged": max.converged,
                    "best_restart": max.best_restart,
                    "settings": max.settings,
                    "options": opts,
                }))
            };
            Ok(Output {
                text,
                converged: max.converged,
            })
        }
        Command::Tradeoff { theorem, source } => {
            let spec = read_spec(source, g.degrees)?;
            let report = verify_theorem(&spec, (*theorem).into(), g.variant.into(), &opts)?;
            let text = if csv {
                let mut out = String::from("qubits,value,upper_bound,converged\n");
                for r in &report.per_reduction {
                    let q = r.qubits.map(|i| i.to_string()).join(" ");
                    let _ = writeln!(out, "{q},{},{},{}", format_f64(r.value), format_f64(r.upper_bound), r.converged);
                }
                out
            } else {
                to_json(&report)
            };
            Ok(Output {
                text,
                converged: report.converged,
            })
        }
        Command::Figure { figure, points } => {
            let table = sweep_figure((*figure).into(), *points, &opts)?;
            Ok(Output::done(if csv { table.to_csv() } else { to_json(&table) }))
        }
    }
}

/// Parses `argv` (program name first), runs the command and returns the exit
/// code. Results go to stdout or `--output`; diagnostics go to stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let output = match execute(&cli) {
        Ok(o) => o,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            return EXIT_DOMAIN;
        }
    };
    match &cli.global.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &output.text) {
                eprintln!("error: {}: {e}", path.display());
                return EXIT_USAGE;
            }
        }
        None => print!("{}", output.text),
    }
    if !output.converged && !cli.global.allow_unconverged {
        eprintln!("error: optimization did not reach a stationary point (use --allow-unconverged to accept)");
        return EXIT_UNCONVERGED;
    }
    EXIT_OK
}
