use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use endosplit_cli::{commands, corpus, CliError, Exit, Options, Outcome};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Parser)]
#[command(name = "endosplit", version, about = "Splittable subalgebras of rational algebras, with certificates")]
struct Cli {
    /// Seed for everything random
    #[arg(long, global = true, env = "ENDOSPLIT_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    output: Format,
    /// Worker threads for independent factors
    #[arg(long, global = true, default_value_t = 0)]
    parallel: usize,
    /// Refuse algebras of larger dimension
    #[arg(long, global = true, default_value_t = 64)]
    max_dim: usize,
    /// Include wall-clock time in reports (makes them nondeterministic)
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Associativity, unit and semisimplicity diagnostics
    Check { algebra: PathBuf },
    /// Splittable subalgebra containing 1 and an element, with certificate
    Split {
        algebra: PathBuf,
        #[arg(long)]
        element: String,
        /// Also write the bare certificate here
        #[arg(long)]
        cert_out: Option<PathBuf>,
    },
    /// Rational matrix M(u) on Q^(2g) and its characteristic polynomial
    Tate {
        algebra: PathBuf,
        #[arg(long)]
        element: String,
        #[arg(long)]
        g: Option<usize>,
        /// Copies of each factor's standard module, comma separated
        #[arg(long, value_delimiter = ',')]
        plan: Option<Vec<usize>>,
        /// Claim that the element is integral (an endomorphism)
        #[arg(long)]
        integral: bool,
    },
    /// Generate an algebra document
    Gen {
        /// matrix:N, group:NAME, quaternion:A,B, field:c0,c1,..., sum:K1+K2+...
        kind: String,
        /// Rewrite in a random basis
        #[arg(long)]
        conjugate: bool,
        /// Number of random elements f0, f1, ... to add
        #[arg(long, default_value_t = 0)]
        elements: usize,
    },
    /// Recheck a certificate (or split report) against an algebra
    Verify { certificate: PathBuf, algebra: PathBuf },
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn emit(out: &Outcome, format: Format) -> ExitCode {
    match format {
        Format::Json => print!("{}", out.report.to_json()),
        Format::Text => print!("{}", out.report.to_text()),
    }
    ExitCode::from(out.exit.code() as u8)
}

fn fail(e: CliError) -> ExitCode {
    eprintln!("endosplit: {e}");
    ExitCode::from(e.exit().code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = Options {
        seed: cli.seed,
        parallel: cli.parallel,
        max_dim: cli.max_dim,
        timing: cli.timing,
    };
    match cli.command {
        Command::Check { algebra } => match read(&algebra) {
            Ok(text) => emit(&commands::run_check(&text, &opts), cli.output),
            Err(e) => fail(e),
        },
        Command::Split {
            algebra,
            element,
            cert_out,
        } => {
            let text = match read(&algebra) {
                Ok(t) => t,
                Err(e) => return fail(e),
            };
            let out = commands::run_split(&text, &element, &opts);
            if let (Some(path), Some(cert)) = (cert_out, out.report.outputs.get("certificate")) {
                let mut s = serde_json::to_string_pretty(cert).expect("serializable");
                s.push('\n');
                if let Err(e) = fs::write(&path, s) {
                    return fail(CliError::Input(format!("{}: {e}", path.display())));
                }
            }
            emit(&out, cli.output)
        }
        Command::Tate {
            algebra,
            element,
            g,
            plan,
            integral,
        } => match read(&algebra) {
            Ok(text) => emit(&commands::run_tate(&text, &element, g, plan, integral, &opts), cli.output),
            Err(e) => fail(e),
        },
        Command::Gen {
            kind,
            conjugate,
            elements,
        } => match corpus::generate(&kind, conjugate, elements, opts.seed) {
            Ok(doc) => {
                print!("{}", doc.to_json());
                ExitCode::from(Exit::Ok.code() as u8)
            }
            Err(e) => fail(e),
        },
        Command::Verify { certificate, algebra } => match (read(&certificate), read(&algebra)) {
            (Ok(c), Ok(a)) => emit(&commands::run_verify(&c, &a, &opts), cli.output),
            (Err(e), _) | (_, Err(e)) => fail(e),
        },
    }
}
