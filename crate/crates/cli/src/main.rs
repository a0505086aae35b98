//! `psc-moduli`: exact eta invariants of flip-spun lens spaces and
//! wall-crossing bookkeeping, as JSON documents on stdout.

mod commands;
mod document;
mod error;
mod svg;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "psc-moduli",
    version,
    about = "Exact eta invariants and wall-crossing bookkeeping"
)]
pub struct Cli {
    /// Add `*_approx` decimal renderings next to exact values.
    #[arg(long, global = true)]
    pub approx: bool,
    /// Allow inputs outside the proven range (even p in `distinguish`).
    #[arg(long, global = true)]
    pub experimental: bool,
    /// Print compact JSON on one line.
    #[arg(long, global = true)]
    pub compact: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rho invariants of the lens space L(n, q).
    Rho {
        #[arg(long)]
        order: u32,
        #[arg(long, allow_negative_numbers = true)]
        q: i64,
        /// A single character index; all of 0..n when omitted.
        #[arg(long, allow_negative_numbers = true)]
        s: Option<i64>,
    },
    /// Pin^c eta invariants of X(p) with the metric g_{p,q}.
    Eta {
        #[arg(long)]
        p: u32,
        #[arg(long, allow_negative_numbers = true)]
        q: i64,
        #[arg(long, allow_negative_numbers = true)]
        s: Option<i64>,
        #[arg(long, value_enum, default_value_t = Formula::Direct)]
        formula: Formula,
        /// Also report the Fourier coefficients and their closed forms (odd p).
        #[arg(long)]
        fourier: bool,
    },
    /// Whether eta invariants separate g_{p,q} and g_{p,q'}.
    Distinguish {
        #[arg(long)]
        p: u32,
        #[arg(long, allow_negative_numbers = true)]
        q: i64,
        #[arg(long = "qprime", allow_negative_numbers = true)]
        q_prime: i64,
    },
    /// Pairwise comparison table over all admissible q.
    Sweep {
        #[arg(long)]
        p: u32,
    },
    /// Classes of q that eta invariants cannot separate.
    Components {
        #[arg(long)]
        p: u32,
    },
    /// SW_tot of a scenario's diffeomorphism as a signed wall-crossing count.
    Swtot {
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// Use f^d instead of f.
        #[arg(long, allow_negative_numbers = true)]
        power: Option<i64>,
    },
    /// Orbit points, wall values and crossings in a window of steps.
    Orbit {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[arg(long, default_value_t = -5, allow_negative_numbers = true)]
        from: i64,
        #[arg(long, default_value_t = 5, allow_negative_numbers = true)]
        to: i64,
    },
    /// Check or search for a metabolizer of the scenario's isometric structure.
    Metabolizer {
        #[arg(long, default_value = psc_moduli::scenario::PAPER_DEFAULT)]
        scenario: String,
        /// Vectors to check, `;`-separated, entries `,`-separated.
        #[arg(long)]
        vectors: Option<String>,
        /// Coefficient bound for the search.
        #[arg(long, default_value_t = 1)]
        bound: i64,
        /// Candidate trials allowed; defaults to PSC_MODULI_SEARCH_BUDGET.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Formal dimension (c1^2 - 2 chi - 3 sigma) / 4.
    Dimension {
        #[arg(long = "c1-square", allow_negative_numbers = true)]
        c1_square: i64,
        #[arg(long, allow_negative_numbers = true)]
        euler: i64,
        #[arg(long, allow_negative_numbers = true)]
        signature: i64,
    },
    /// Poincaré disc figure of the wall and an orbit segment, as SVG.
    PlotDisc {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[arg(long, default_value_t = -5, allow_negative_numbers = true)]
        from: i64,
        #[arg(long, default_value_t = 5, allow_negative_numbers = true)]
        to: i64,
        /// Write the SVG here; the JSON document then records the path.
        /// Without it the SVG goes to stdout instead of JSON.
        #[arg(long)]
        output: Option<std::path::PathBuf>,
    },
}

#[derive(Debug, Clone, Args)]
pub struct ScenarioArgs {
    /// `paper-default` or a path to a TOML scenario file.
    #[arg(long, default_value = psc_moduli::scenario::PAPER_DEFAULT)]
    pub scenario: String,
    /// Override the starting ray, e.g. `1,1/5,1/3`.
    #[arg(long)]
    pub omega0: Option<String>,
    #[arg(long)]
    pub n_max: Option<u32>,
    #[arg(long)]
    pub window: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Formula {
    /// Difference of lens-space rho invariants.
    Direct,
    /// Sum over the odd powers of a primitive 2p-th root.
    HalfRoots,
    /// Sum over the p-th roots of unity (odd p only).
    OddP,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error ({}): {e}", e.kind());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
