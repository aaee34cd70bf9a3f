//! `reciprocity-lab`: evaluates symbols on k(t) and k(s,t) and verifies
//! their reciprocity laws.
//!
//! Exit codes: 0 when the report is ok, 1 when an identity fails, 2 for
//! parse and usage errors, 3 for domain errors, 4 when a hypothesis of the
//! general reciprocity engine fails.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use reciprocity_core::arith::DEFAULT_SEED;
use reciprocity_core::Error;

#[derive(Parser, Debug)]
#[command(name = "reciprocity-lab", version, about = "Exact symbols and reciprocity laws on k(t) and k(s,t)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Clone, Debug)]
pub struct Common {
    /// Ground field: `Q` or `Fp:<prime>`.
    #[arg(long, default_value = "Q")]
    pub field: String,
    /// Print the report as JSON.
    #[arg(long)]
    pub json: bool,
    /// Seed for randomized polynomial factorization.
    #[arg(long, env = "RECIPROCITY_LAB_SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Args, Clone, Debug)]
pub struct CurvePair {
    #[arg(long)]
    pub f: String,
    #[arg(long)]
    pub g: String,
}

#[derive(Args, Clone, Debug)]
pub struct SurfaceArgs {
    #[arg(long)]
    pub f: String,
    #[arg(long)]
    pub g: String,
    /// Local parameter of the curve t = 0; must vanish to order one there.
    #[arg(long, default_value = "t")]
    pub z: String,
    /// Place of the curve, a polynomial in s or `inf`.
    #[arg(long)]
    pub place: Option<String>,
    /// Run the product over all places of the curve.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Tame symbol at a place of k(t).
    Tame {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        pair: CurvePair,
        #[arg(long)]
        place: String,
        /// Cross-check with the Milnor-style formula (degree-one places).
        #[arg(long)]
        oracle: bool,
    },
    /// Product of tame symbols over all places.
    Weil {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        pair: CurvePair,
    },
    /// Sum of degree-weighted valuations of a function.
    Sumval {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        f: String,
    },
    /// Traced residue of f dg at a place.
    Residue {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        pair: CurvePair,
        #[arg(long)]
        place: String,
        /// Cross-check with the commutator-trace residue.
        #[arg(long)]
        oracle: bool,
    },
    /// Sum of traced residues of f dg over all places.
    Restheorem {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        pair: CurvePair,
        /// Cross-check each term with the commutator-trace residue.
        #[arg(long)]
        oracle: bool,
    },
    /// Hilbert norm-residue symbol with values in the m-th roots of unity.
    Hilbert {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        pair: CurvePair,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        place: Option<String>,
        #[arg(long)]
        verify: bool,
    },
    /// Intersection index of two surface functions along t = 0.
    Nu {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        surface: SurfaceArgs,
    },
    /// Horozov symbol of three surface functions.
    Horozov {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long)]
        h: String,
    },
    /// Parshin symbol of three surface functions.
    Parshin {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long)]
        h: String,
    },
    /// Horozov-Kerr symbol of four surface functions.
    Hk4 {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long)]
        h: String,
        /// The fourth function.
        #[arg(long)]
        k: String,
    },
    /// Segal-Wilson cocycle in Q[z]/(z^(order+1)).
    Sw {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        pair: CurvePair,
        #[arg(long, default_value_t = 12)]
        order: usize,
        /// Report the local cocycle at this place instead of the product.
        #[arg(long)]
        place: Option<String>,
    },
    /// Axioms and the general reciprocity engine for a symbol on monomial lattices.
    Xsymbol {
        #[command(flatten)]
        common: Common,
        /// `index:<m>`, `tame:<c>,<m>:<d>,<n>`, `residue` or `cocycle`.
        #[arg(long)]
        symbol: String,
        /// Family members; slots separated by `|`.
        #[arg(long = "family", visible_alias = "member", num_args = 1.., required = true)]
        family: Vec<String>,
        /// B_I, the lattice attached to the whole index set (default zero).
        #[arg(long)]
        base: Option<String>,
        #[arg(long, value_enum, default_value_t = Check::Reciprocity)]
        check: Check,
        /// Residue and cocycle data.
        #[arg(long)]
        f: Option<String>,
        #[arg(long)]
        g: Option<String>,
        /// One place per slot, or a single place used for every slot.
        #[arg(long)]
        place: Vec<String>,
        #[arg(long, default_value_t = 12)]
        order: usize,
    },
    /// Index of the shift u^m on a monomial lattice.
    Index {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        lattice: String,
        #[arg(long, allow_hyphen_values = true)]
        shift: i64,
        /// Second lattice for the additivity check.
        #[arg(long)]
        other: Option<String>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    /// Triviality, commensurability invariance and additivity on member pairs.
    Tanri,
    /// Hypotheses and both sides of the general reciprocity law.
    Reciprocity,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } => 2,
        Error::Hypothesis { .. } => 4,
        Error::OracleMismatch { .. } | Error::SupportEscape(_) => 1,
        Error::MixedField(..)
        | Error::MixedVariable(..)
        | Error::ZeroInput(_)
        | Error::DivisionByZero
        | Error::NotAUnit(..)
        | Error::UncertifiedFactor(_)
        | Error::InsufficientPrecision { .. }
        | Error::WindowTooSmall { .. }
        | Error::NotStabilized(_)
        | Error::Domain(_) => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(output) => {
            println!("{}", output.text);
            ExitCode::from(if output.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
