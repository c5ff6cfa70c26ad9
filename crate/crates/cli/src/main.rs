mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use extenders::SearchLimits;

#[derive(Parser, Debug)]
#[command(
    name = "extenders",
    version,
    about = "Partition and Cohen-Macaulay extenders of simplicial complexes"
)]
pub struct Cli {
    /// Emit canonical JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Field characteristic for homology (0 or a prime).
    #[arg(long = "char", value_name = "P", default_value_t = 0, global = true)]
    pub characteristic: u32,

    /// Largest family the partition search will accept.
    #[arg(long, value_name = "N", default_value_t = SearchLimits::default().max_members, global = true)]
    pub max_faces: usize,

    /// Largest facet count the shelling search will accept.
    #[arg(long, value_name = "N", default_value_t = SearchLimits::default().max_facets, global = true)]
    pub max_facets: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dimension, purity, f- and h-vectors and triangles.
    Info {
        complex: PathBuf,
        #[arg(long, value_name = "FILE")]
        relative_to: Option<PathBuf>,
    },
    /// Search for a partitioning.
    Partitionable {
        complex: PathBuf,
        #[arg(long, value_name = "FILE")]
        relative_to: Option<PathBuf>,
    },
    /// Check a partitioning. With a single argument, re-verify every certificate in a JSON report.
    VerifyPartition {
        complex: PathBuf,
        partition: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        relative_to: Option<PathBuf>,
    },
    /// Build a partition extender together with its certificates.
    BuildExtender {
        complex: PathBuf,
        /// Use the construction for nonpure complexes.
        #[arg(long)]
        nonpure: bool,
    },
    /// Depth of the face ring.
    Depth { complex: PathBuf },
    /// Is the complex Cohen-Macaulay?
    CmCheck { complex: PathBuf },
    /// Is the pair relatively Cohen-Macaulay?
    RelCmCheck {
        complex: PathBuf,
        subcomplex: PathBuf,
    },
    /// Find a Cohen-Macaulay extender or an obstruction.
    CmExtender { complex: PathBuf },
    /// Check a facet order for being a shelling.
    ShellingCheck {
        complex: PathBuf,
        order: PathBuf,
        #[arg(long, value_name = "FILE")]
        relative_to: Option<PathBuf>,
    },
    /// Search for a shelling order.
    Shellable {
        complex: PathBuf,
        #[arg(long, value_name = "FILE")]
        relative_to: Option<PathBuf>,
    },
    /// Size of the (d, d-k)-partition extender.
    EstimateSize {
        #[arg(allow_negative_numbers = true)]
        d: i32,
        #[arg(allow_negative_numbers = true)]
        k: i32,
        /// Also build the extender and count it.
        #[arg(long)]
        measure: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", out.json(&cli));
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
