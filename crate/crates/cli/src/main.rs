mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use orient_core::benchmark::Family;
use orient_core::reductions::{Flavor, GadgetName};
use orient_core::Alphabet;

use report::{Report, Status};

#[derive(Parser, Debug)]
#[command(name = "orient", version, about = "Semi-proper orientations of graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Semi-proper orientation number with an optimal witness.
    Solve {
        /// Edge-list file, or `-` for stdin.
        #[arg(long)]
        graph: String,
    },
    /// Is there a semi-proper orientation with every in-sum at most `k`?
    Decide {
        #[arg(long)]
        graph: String,
        #[arg(short)]
        k: u32,
        /// `1`, `1,2` or `1..W`.
        #[arg(long, default_value = "1,2")]
        alphabet: Alphabet,
    },
    /// Proper orientation number (unit weights).
    ProperNumber {
        #[arg(long)]
        graph: String,
    },
    /// Brute-force minimum over weights `1..=W`.
    Oracle {
        #[arg(long)]
        graph: String,
        #[arg(short = 'W')]
        w: u32,
    },
    /// Rewrite a semi-proper orientation to weights in {1, 2}.
    Normalize {
        #[arg(long)]
        graph: String,
        /// Orientation file (`a <tail> <head> <weight>` lines).
        #[arg(long)]
        orientation: String,
    },
    /// Layered orientation of a tree or forest.
    Tree {
        #[arg(long)]
        graph: String,
        /// Also run the exact solver and compare.
        #[arg(long)]
        exact: bool,
    },
    /// Build the graph for a CNF instance.
    Reduce {
        #[arg(long)]
        flavor: Flavor,
        /// DIMACS CNF file.
        #[arg(long)]
        cnf: String,
        /// Also decide whether in-sums at most 2 are reachable.
        #[arg(long)]
        solve: bool,
    },
    /// Read a satisfying assignment off an orientation of a construction.
    Extract {
        #[arg(long)]
        flavor: Flavor,
        #[arg(long)]
        cnf: String,
        #[arg(long)]
        orientation: String,
    },
    /// Check a gadget against its contracts.
    VerifyGadget {
        #[arg(long)]
        name: GadgetName,
        /// Also delete each edge in turn and report which deletions break a contract.
        #[arg(long)]
        mutations: bool,
    },
    /// Gap between the proper and semi-proper numbers on a random family.
    Benchmark {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        min_n: usize,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        /// Edge probability for the random families.
        #[arg(long, default_value_t = 0.5)]
        p: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, input, outcome) = commands::run(cli.command);
    let (status, report) = match outcome {
        Ok(o) => (
            o.status,
            Report { command: name, input, result: o.result, witness: o.witness, diagnostics: o.diagnostics },
        ),
        Err(f) => (
            f.status,
            Report { command: name, input, result: serde_json::Value::Null, witness: None, diagnostics: vec![f.message] },
        ),
    };
    match serde_json::to_string_pretty(&report) {
        Ok(text) => {
            // A closed pipe (`orient ... | head`) is not worth a panic.
            let _ = writeln!(std::io::stdout().lock(), "{text}");
        }
        Err(e) => {
            eprintln!("cannot serialize report: {e}");
            return Status::InputError.into();
        }
    }
    status.into()
}
