//! `bbasis`: compute, enumerate, optimize and verify border bases.

mod input;
mod report;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use border_basis::{
    bbasis_prepared, enumerate_admissible, prepare, verify_border_basis, Chooser, CliqueSolver,
    Error, Field, OrderIdeal, Prepared, TermOrdering,
};
use clap::{Args, Parser, Subcommand};

use input::InputError;
use report::{BasisDoc, CliqueDoc, EnumerationDoc, VerificationDoc};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_NOT_ZERO_DIM: u8 = 3;
const EXIT_INADMISSIBLE: u8 = 4;
const EXIT_INTERNAL: u8 = 5;

#[derive(Parser)]
#[command(
    name = "bbasis",
    version,
    about = "Border bases of zero-dimensional ideals"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Print a JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Largest degree tried while saturating the system.
    #[arg(long, global = true, value_name = "INT")]
    degree_cap: Option<u32>,
    /// Coefficient field, overriding the system file (Q or GF(p)).
    #[arg(long, global = true, value_name = "FIELD")]
    field: Option<Field>,
    /// Solver threads; the output does not depend on it.
    #[arg(long, global = true, default_value_t = 1, value_name = "INT")]
    threads: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a border basis and verify it.
    Compute {
        system: PathBuf,
        /// Use this order ideal (comma-separated monomials).
        #[arg(long, value_name = "CSV", conflicts_with = "preference")]
        order_ideal: Option<String>,
        /// Pick the order ideal maximizing the weights in this file.
        #[arg(long, value_name = "FILE")]
        preference: Option<PathBuf>,
    },
    /// List every admissible order ideal.
    Enumerate { system: PathBuf },
    /// Find an order ideal of maximum score and its border basis.
    Optimize {
        system: PathBuf,
        preference: PathBuf,
    },
    /// Decide whether a graph has a k-clique through the order ideal reduction.
    Clique {
        graph: PathBuf,
        #[arg(short = 'k', value_name = "INT")]
        k: usize,
    },
    /// Check a claimed border basis against a system.
    Verify { system: PathBuf, basis: PathBuf },
}

enum Failure {
    Input(InputError),
    Library(Error),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => EXIT_INPUT,
            Failure::Library(e) => match e {
                Error::NotZeroDimensional { .. } => EXIT_NOT_ZERO_DIM,
                Error::Inadmissible(_) => EXIT_INADMISSIBLE,
                Error::Internal(_)
                | Error::NotStabilized(_)
                | Error::MissingTopDegree(_)
                | Error::CardinalityMismatch { .. } => EXIT_INTERNAL,
                _ => EXIT_INPUT,
            },
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Input(e) => e.message.clone(),
            Failure::Library(e) => e.to_string(),
        }
    }
}

/// Text written to stdout plus the exit status.
struct Outcome {
    output: String,
    code: u8,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, code: 0 }
    }
}

fn load_system(path: &Path, g: &Global) -> Result<input::System, Failure> {
    let sys = input::parse_system(path, &input::read(path)?, g.field)?;
    if let Some(cap) = g.degree_cap {
        let top = sys
            .polynomials
            .iter()
            .filter_map(|p| p.degree())
            .max()
            .unwrap_or(0);
        if cap < top {
            return Err(InputError::new(format!(
                "--degree-cap {cap} is below the input degree {top}"
            ))
            .into());
        }
    }
    Ok(sys)
}

fn prepare_system(sys: &input::System, g: &Global) -> Result<Prepared, Failure> {
    Ok(prepare(&sys.polynomials, g.degree_cap)?)
}

fn run_basis(sys: &input::System, chooser: Chooser, g: &Global) -> Result<Outcome, Failure> {
    let prep = prepare_system(sys, g)?;
    let c = bbasis_prepared(&prep, &chooser, g.threads)?;
    let report = c.basis.verify(&sys.polynomials, g.degree_cap);
    let doc = BasisDoc::new(sys.arity, sys.field, &c, &report);
    let output = if g.json {
        report::json(&doc)
    } else {
        doc.text()
    };
    let code = if report.passed() {
        0
    } else {
        EXIT_VERIFY_FAILED
    };
    Ok(Outcome { output, code })
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let g = &cli.global;
    match &cli.command {
        Command::Compute {
            system,
            order_ideal,
            preference,
        } => {
            let sys = load_system(system, g)?;
            let chooser = if let Some(csv) = order_ideal {
                let list = input::parse_order_ideal(csv, sys.arity)?;
                let o = OrderIdeal::new(sys.arity, list)
                    .map_err(|e| InputError::new(format!("--order-ideal: {e}")))?;
                Chooser::Fixed(o)
            } else if let Some(path) = preference {
                Chooser::Preference(input::parse_preference(
                    path,
                    &input::read(path)?,
                    sys.arity,
                )?)
            } else {
                Chooser::Default(TermOrdering::degrevlex(sys.arity))
            };
            run_basis(&sys, chooser, g)
        }
        Command::Enumerate { system } => {
            let sys = load_system(system, g)?;
            let prep = prepare_system(&sys, g)?;
            let all = enumerate_admissible(prep.instance());
            let doc = EnumerationDoc::new(sys.arity, sys.field, prep.dimension(), &all);
            Ok(Outcome::ok(if g.json {
                report::json(&doc)
            } else {
                doc.text()
            }))
        }
        Command::Optimize { system, preference } => {
            let sys = load_system(system, g)?;
            let c = input::parse_preference(preference, &input::read(preference)?, sys.arity)?;
            run_basis(&sys, Chooser::Preference(c), g)
        }
        Command::Clique { graph, k } => {
            let graph = input::parse_graph(graph, &input::read(graph)?)?;
            let n = graph.vertex_count();
            if *k == 0 || *k > n {
                return Err(InputError::new(format!("-k must lie in 1..={n}")).into());
            }
            let field = g.field.unwrap_or(Field::Rational);
            let out = CliqueSolver::new(n, *k, field)?.solve(&graph, g.threads)?;
            let doc = CliqueDoc {
                n,
                k: *k,
                has_clique: out.has_clique,
                witness: out.witness,
                score: out.score,
                order_ideal: report::strings(out.order_ideal.iter()),
            };
            Ok(Outcome::ok(if g.json {
                report::json(&doc)
            } else {
                doc.text()
            }))
        }
        Command::Verify { system, basis } => {
            let sys = load_system(system, g)?;
            let claimed = input::parse_basis(basis, &input::read(basis)?, &sys)?;
            let report = verify_border_basis(
                &claimed.order_ideal,
                &claimed.generators,
                &sys.polynomials,
                g.degree_cap,
            );
            let doc = VerificationDoc::from(&report);
            let output = if g.json {
                report::json(&doc)
            } else {
                report::verification_text(&doc)
            };
            let code = if report.passed() {
                0
            } else {
                EXIT_VERIFY_FAILED
            };
            Ok(Outcome { output, code })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.output.as_bytes()).is_err() {
                return ExitCode::from(EXIT_INTERNAL);
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
