//! `braidcat`: build braid group representations from pointed, twisted double
//! and Tambara–Yamagami data, check them, and enumerate their images.

mod commands;
mod parse;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use braidcat::closure::DEFAULT_CAP;
use braidcat::cyclotomic::ScalarInput;
use braidcat::group::GroupSpec;
use clap::{Args, Parser, Subcommand};
use parse::ScalarTable;

#[derive(Parser, Debug)]
#[command(name = "braidcat", version, about = "Exact braid group representations and their images")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    /// Write the JSON certificate here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct Cap {
    /// Element cap for closures and point enumeration.
    #[arg(long, env = "BRAIDCAT_CAP", default_value_t = DEFAULT_CAP)]
    pub cap: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Tambara–Yamagami representation on |A|^m.
    TyRep {
        /// Invariant factors of A, comma separated.
        #[arg(long = "A", value_delimiter = ',', required = true)]
        a: Vec<u32>,
        /// Values q(0), q(1), … in element order.
        #[arg(long, value_parser = parse::scalar, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        q: Vec<ScalarInput>,
        /// Gram matrix of χ, rows separated by `;`. Recovered from q when omitted.
        #[arg(long, allow_hyphen_values = true)]
        chi: Option<ScalarTable>,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        tau_sign: i8,
        #[arg(long, default_value_t = 0)]
        delta_choice: u8,
        #[arg(long, conflicts_with = "strands")]
        m: Option<usize>,
        #[arg(long)]
        strands: Option<usize>,
        #[arg(long)]
        conductor: Option<u32>,
        #[arg(long)]
        check_relations: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Pointed braided category representation on A^n.
    PointedRep {
        #[arg(long = "A", value_delimiter = ',', required = true)]
        a: Vec<u32>,
        /// Full braiding table c(a,b), rows separated by `;`.
        #[arg(long, required_unless_present = "gram", allow_hyphen_values = true)]
        c: Option<ScalarTable>,
        /// Values of c on pairs of generators of A.
        #[arg(long, conflicts_with = "c", allow_hyphen_values = true)]
        gram: Option<ScalarTable>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        conductor: Option<u32>,
        #[arg(long)]
        check_relations: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Twisted double representation on tuples of G with product conjugate to x.
    DoubleRep {
        /// `cyclic:4`, `symmetric:3`, `cyclic:2*cyclic:2`, inline JSON or a JSON file.
        #[arg(long, value_parser = parse::group_spec)]
        group: GroupSpec,
        /// Builtin cocycle class on a cyclic group.
        #[arg(long, conflicts_with = "alpha")]
        builtin_j: Option<i64>,
        /// Cocycle file; its group must match `--group`.
        #[arg(long)]
        alpha: Option<PathBuf>,
        #[arg(long)]
        x: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        conductor: Option<u32>,
        #[arg(long)]
        check_relations: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Check the braid and far-commutation relations of a representation file.
    CheckRelations {
        #[arg(long)]
        rep: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Order of the image of the braid group, with its scalar subgroup.
    Closure {
        #[arg(long)]
        rep: PathBuf,
        #[command(flatten)]
        cap: Cap,
        /// Exponent for the scalar check; defaults per family.
        #[arg(long)]
        bound: Option<u64>,
        /// Skip the scalar report and do not keep the element list.
        #[arg(long)]
        no_scalars: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Order of the image in the projective linear group.
    ProjectiveClosure {
        #[arg(long)]
        rep: PathBuf,
        #[command(flatten)]
        cap: Cap,
        #[command(flatten)]
        out: Output,
    },
    /// Scalar matrices in the image and their orders.
    ScalarReport {
        #[arg(long)]
        rep: PathBuf,
        #[command(flatten)]
        cap: Cap,
        #[arg(long)]
        bound: Option<u64>,
        #[command(flatten)]
        out: Output,
    },
    /// Order of the permutation image of B_n on pairs of G.
    PiOrder {
        #[arg(long, value_parser = parse::group_spec)]
        group: GroupSpec,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        cap: Cap,
        #[command(flatten)]
        out: Output,
    },
    /// Whether a braid word acts trivially on pairs of G.
    InKernel {
        #[arg(long, value_parser = parse::group_spec)]
        group: GroupSpec,
        #[arg(long)]
        n: usize,
        /// Letters such as `s1 s2^-1 s1`.
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[command(flatten)]
        cap: Cap,
        /// Sample this many random points when the point set exceeds the cap.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Replace a cocycle by a cohomologous one with |G|-th root values.
    NormalizeCocycle {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Push a cocycle forward to G/N.
    Pushforward {
        #[arg(long = "in")]
        input: PathBuf,
        /// Elements of the normal subgroup N.
        #[arg(long, value_delimiter = ',', required = true)]
        normal: Vec<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Build μ, γ, c for a cocycle and check every identity exhaustively.
    CrossedStructureVerify {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        out: Output,
    },
}

/// Result of one command: the certificate, a report for humans and an exit code.
pub struct Outcome {
    pub json: serde_json::Value,
    pub report: String,
    pub code: u8,
}

impl Command {
    fn output(&self) -> Option<&PathBuf> {
        match self {
            Command::TyRep { out, .. }
            | Command::PointedRep { out, .. }
            | Command::DoubleRep { out, .. }
            | Command::CheckRelations { out, .. }
            | Command::Closure { out, .. }
            | Command::ProjectiveClosure { out, .. }
            | Command::ScalarReport { out, .. }
            | Command::PiOrder { out, .. }
            | Command::InKernel { out, .. }
            | Command::NormalizeCocycle { out, .. }
            | Command::Pushforward { out, .. }
            | Command::CrossedStructureVerify { out, .. } => out.out.as_ref(),
        }
    }
}

fn main() -> ExitCode {
    // Usage errors exit 1; exit 2 is reserved for inconclusive runs.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let outcome = match commands::run(&cli.command) {
        Ok(o) => o,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    let mut text = serde_json::to_string_pretty(&outcome.json).expect("certificate serializes");
    text.push('\n');
    match cli.command.output() {
        Some(path) => {
            if let Err(e) = fs::write(path, &text) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{text}"),
    }
    eprint!("{}", outcome.report);
    ExitCode::from(outcome.code)
}
