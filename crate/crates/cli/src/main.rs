use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use heckeprod::l1l1;
use heckeprod::parse::{parse_element, parse_polynomial};
use heckeprod::suites::{self, Suite, SuiteConfig};
use heckeprod::Mutation;

#[derive(Parser)]
#[command(name = "heckeprod", version, about = "Exact nil-Hecke and product model computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the normal form of an element.
    NormalForm {
        expr: String,
        /// Number of strands; inferred from the expression when omitted.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Apply an element to a polynomial.
    Act {
        expr: String,
        #[arg(long)]
        on: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Graded dimensions of a component up to a degree.
    Hilbert {
        #[arg(long)]
        component: String,
        #[arg(long, default_value_t = 12)]
        max_degree: u32,
    },
    /// Run the verification suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        cases: u64,
        #[arg(long, default_value_t = 6)]
        max_degree: u32,
        #[arg(long, default_value_t = 12)]
        degree_bound: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Run under a deliberate convention mutation.
        #[arg(long, hide = true)]
        debug_mutation: Option<Mutation>,
    },
}

/// A failure that maps to exit code 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn execute(command: Command) -> Result<bool, UsageError> {
    match command {
        Command::NormalForm { expr, n } => {
            println!("{}", parse_element(&expr, n)?);
            Ok(true)
        }
        Command::Act { expr, on, n } => {
            let v = parse_polynomial(&on)?;
            let h = parse_element(&expr, n)?;
            println!("{}", h.act(&v)?);
            Ok(true)
        }
        Command::Hilbert {
            component,
            max_degree,
        } => {
            let rows = l1l1::hilbert(&component, max_degree)?;
            let cells: Vec<String> = rows.iter().map(|(d, k)| format!("{d}:{k}")).collect();
            println!("{}", cells.join(" "));
            Ok(true)
        }
        Command::Verify {
            suite,
            seed,
            cases,
            max_degree,
            degree_bound,
            format,
            debug_mutation,
        } => {
            let config = SuiteConfig {
                seed,
                cases: cases as usize,
                max_degree,
                degree_bound,
                mutation: debug_mutation.map(|m| m.name().to_string()),
            };
            let report = suites::run(suite, &config).map_err(UsageError)?;
            match format {
                Format::Text => print!("{}", report.to_text()),
                Format::Json => println!("{}", report.to_json()),
            }
            Ok(report.all_passed())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    // Property failures that panic are caught and reported; keep stderr quiet.
    std::panic::set_hook(Box::new(|_| {}));
    match execute(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
