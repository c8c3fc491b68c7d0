use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser, Debug)]
#[command(
    name = "grc",
    version,
    about = "Reduced norms, adjoints and integrality in rational group rings"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,
    /// Also write the output to this file.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct GroupArg {
    /// Built-in name (S3, D8, SL2_3, Aff5, C3xS3, …) or @path to a group file.
    #[arg(long, short)]
    pub group: String,
}

#[derive(Args, Debug, Clone)]
pub struct Operand {
    /// Group-ring element, e.g. `a` or `1:1, -2:a^2*x`.
    #[arg(long, short, conflicts_with = "matrix")]
    pub element: Option<String>,
    /// Square matrix: rows split by `|`, entries by `;`.
    #[arg(long, short)]
    pub matrix: Option<String>,
    /// Comma-separated class representative words fixing the printed class order.
    #[arg(long)]
    pub class_order: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum ChartabAction {
    /// Compute and print the character table.
    Compute,
    /// Compute the table and write it in the chartab text format.
    Save { path: PathBuf },
    /// Read a saved table, verify it, and compare with a fresh computation.
    Load { path: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Conjugacy classes with sizes, element orders and representatives.
    Classes(GroupArg),
    /// Character table.
    Chartab {
        #[command(flatten)]
        group: GroupArg,
        #[command(subcommand)]
        action: ChartabAction,
    },
    /// Reduced norm of an element or matrix.
    Nr {
        #[command(flatten)]
        group: GroupArg,
        #[command(flatten)]
        operand: Operand,
    },
    /// Generalised adjoint H*.
    Adjoint {
        #[command(flatten)]
        group: GroupArg,
        #[command(flatten)]
        operand: Operand,
        /// Use the zero matrix.
        #[arg(long, conflicts_with_all = ["element", "matrix"])]
        zero: bool,
        /// Size of the zero matrix.
        #[arg(long, default_value_t = 1, requires = "zero")]
        size: usize,
    },
    /// Central primitive idempotents e_χ.
    Idempotents(GroupArg),
    /// E_d, the sum of e_χ over characters of degree d.
    Ed {
        #[command(flatten)]
        group: GroupArg,
        d: u64,
    },
    /// Random probe of the denominators of nr(H) and H*.
    Probe {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        bound: i64,
        /// Comma-separated matrix sizes.
        #[arg(long, default_value = "1,2")]
        sizes: String,
        /// Generators of a normal subgroup N ⊇ G′ for the refined check.
        #[arg(long)]
        normal: Option<String>,
        /// Skip the nr(AB) = nr(A)nr(B) check.
        #[arg(long)]
        no_multiplicativity: bool,
        /// Also check the p-local criterion for this prime.
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Search for an element with non-integral reduced norm.
    Witness {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, default_value_t = 2)]
        bound: i64,
    },
    /// Compare both computations of nr_U(H|_U) on random H.
    RestrictCheck {
        #[command(flatten)]
        group: GroupArg,
        /// Comma-separated generators of U.
        gens: String,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        bound: i64,
        #[arg(long, default_value = "1,2")]
        sizes: String,
    },
    /// Clifford-theory identities relative to a normal subgroup.
    CliffordCheck {
        #[command(flatten)]
        group: GroupArg,
        /// Comma-separated generators of N; `derived` for G′.
        gens: String,
        /// Only this character (1-based row of the character table).
        #[arg(long)]
        chi: Option<usize>,
    },
    /// Frobenius kernel and complement, if any.
    Frobenius(GroupArg),
    /// A(n) = Σ n^{χ(1)} χ(1)² modulo primes, from a degree file.
    Amodp {
        #[arg(long)]
        degrees: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        /// Comma-separated primes.
        #[arg(long)]
        p: String,
    },
    /// Run every worked example and print a pass/fail table.
    ReproPaper {
        /// Degree file for the Monster residue row.
        #[arg(long)]
        monster_degrees: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(&cli) {
        Ok(out) => {
            let body = match cli.format {
                Format::Text => out.text,
                Format::Json => serde_json::to_string_pretty(&out.json).expect("json value") + "\n",
            };
            print!("{body}");
            if let Some(path) = &cli.output {
                if let Err(e) = std::fs::write(path, &body) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            if out.violation {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
