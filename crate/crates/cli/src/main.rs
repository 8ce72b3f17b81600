use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use modkit::commands;
use modkit::suite::{render_machine, render_text, run_suite};
use modkit::system::{parse_system_spec, spec_level};
use modkit::{CliError, Outcome, OutputFormat};
use modkit_core::fusion::BraidedSystem;
use modkit_core::invariant::EnumOptions;
use modkit_core::modular::Tolerances;

#[derive(Parser)]
#[command(name = "modkit", version, about = "Fusion rules, modular data, modular invariants and ADE nimreps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// output format
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    format: OutputFormat,
    /// write the output to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SystemArgs {
    /// su2 | su2:K | cyclic:N | cyclic:N:P/Q | A*B | file.json
    #[arg(long)]
    system: String,
    /// level for `--system su2`
    #[arg(long)]
    level: Option<usize>,
}

impl SystemArgs {
    fn build(&self) -> Result<BraidedSystem, CliError> {
        parse_system_spec(&self.system, self.level)
    }
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in systems and graphs, or export one as JSON
    Catalog {
        #[arg(long)]
        system: Option<String>,
        #[arg(long)]
        level: Option<usize>,
        /// ADE name such as A17, D10, E7; prints the graph and its affine extension
        #[arg(long)]
        graph: Option<String>,
    },
    /// Build S and T and verify the modular relations
    Modular {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        /// digits printed for S and T
        #[arg(long, default_value_t = 6)]
        precision: usize,
    },
    /// Enumerate all modular invariants
    Enum {
        #[command(flatten)]
        sys: SystemArgs,
        /// maximum number of search nodes
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        #[arg(long, default_value_t = 1e-6)]
        tolerance: f64,
    },
    /// Build the SU(2) nimrep on an ADE graph and compare spectra with an invariant
    Nimrep {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        level: Option<usize>,
        /// catalog JSON; invariants whose trace equals the vertex count are compared
        #[arg(long, alias = "invariant")]
        against: Option<String>,
    },
    /// McKay series of an affine graph and its Kostant polynomials
    Kostant {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        truncation: Option<usize>,
    },
    /// Global indices and chiral identities for each invariant
    Chiral {
        #[command(flatten)]
        sys: SystemArgs,
        /// catalog JSON; enumerated when omitted
        #[arg(long, alias = "invariant")]
        against: Option<String>,
        #[arg(long, default_value_t = 1e-8)]
        tolerance: f64,
    },
    /// Invariant built from a degenerate subsystem
    Degenerate {
        #[command(flatten)]
        sys: SystemArgs,
        /// comma-separated labels of the closed subsystem (default: all)
        #[arg(long)]
        gamma: Option<String>,
        /// comma-separated labels of its degenerate part (default: computed)
        #[arg(long)]
        theta: Option<String>,
        #[arg(long, default_value_t = 1e-6)]
        tolerance: f64,
    },
    /// Ising partition function on an M x N torus: brute force vs transfer matrix.
    ///
    /// Bonds join (r, c) to (r+1 mod M, c) and to (r, c+1 mod N), so a width or
    /// length of 1 gives self-bonds. The transfer matrix acts column to column
    /// and splits each column's internal energy evenly between the two factors
    /// of T it touches: T(s,s') = exp(beta J [E(s)/2 + E(s')/2 + s.s']).
    Ising {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 1.0)]
        j: f64,
    },
    /// Run every acceptance check
    VerifyAll,
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let format = cli.format;
    match &cli.command {
        Command::Catalog { system, level, graph } => {
            let sys = system.as_deref().map(|s| parse_system_spec(s, *level)).transpose()?;
            commands::catalog(sys.as_ref(), graph.as_deref(), format)
        }
        Command::Modular { sys, tolerance, precision } => {
            commands::modular(&sys.build()?, Tolerances::with_matrix(*tolerance), *precision, format)
        }
        Command::Enum { sys, budget, tolerance } => {
            let opts = EnumOptions { budget: *budget, tolerance: *tolerance, ..Default::default() };
            commands::enumerate_cmd(&sys.build()?, spec_level(&sys.system, sys.level), &opts, format)
        }
        Command::Nimrep { graph, level, against } => {
            commands::nimrep(graph, *level, against.as_deref(), format)
        }
        Command::Kostant { graph, truncation } => commands::kostant(graph, *truncation, format),
        Command::Chiral { sys, against, tolerance } => {
            commands::chiral(&sys.build()?, against.as_deref(), *tolerance, format)
        }
        Command::Degenerate { sys, gamma, theta, tolerance } => {
            commands::degenerate(&sys.build()?, gamma.as_deref(), theta.as_deref(), *tolerance, format)
        }
        Command::Ising { m, n, beta, j } => commands::ising(*m, *n, *beta, *j, format),
        Command::VerifyAll => {
            let results = run_suite();
            let passed = results.iter().all(|c| c.passed);
            let output = match format {
                OutputFormat::Text => render_text(&results),
                OutputFormat::Machine => render_machine(&results),
            };
            Ok(Outcome { output, passed })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &outcome.output) {
                    eprintln!("cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{}", outcome.output);
            }
            ExitCode::from(if outcome.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
