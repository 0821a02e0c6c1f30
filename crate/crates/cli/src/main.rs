//! `vcm`: Cohen–Macaulay and virtual Cohen–Macaulay checks on simplicial
//! complexes read from JSON documents. Prints a JSON verdict; exit code 0
//! for pass, 1 for fail, refuted or unknown, 2 for input errors.

mod commands;
mod fixtures;
mod input;
mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use vcm_core::Field;

use crate::report::Report;

#[derive(Parser, Debug)]
#[command(name = "vcm", version, about = "Cohen–Macaulay and virtual Cohen–Macaulay checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(Args, Clone, Debug)]
pub struct Options {
    /// `q` or `gf:<p>`.
    #[arg(long, global = true, default_value = "q")]
    pub field: Field,
    /// Document with `blocks` (and optionally `vertices`) describing the
    /// product of projective spaces.
    #[arg(long, global = true)]
    pub toric: Option<PathBuf>,
    /// Complex on the input's vertices: the subcomplex `𝒞` for the
    /// `vshelling` commands, an explicit irrelevant complex otherwise.
    #[arg(long, global = true)]
    pub irrelevant: Option<PathBuf>,
    /// Facet order as comma-separated positions in the file's facet list.
    #[arg(long, global = true, value_delimiter = ',')]
    pub order: Option<Vec<usize>>,
    #[arg(long, global = true)]
    pub vertex: Option<String>,
    /// Writes the emitted certificate or ideal (or the verdict) here.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Reisner's criterion.
    CheckCm { input: PathBuf },
    /// Betti numbers of the Stanley–Reisner ring via Hochster's formula.
    Betti { input: PathBuf },
    Codim { input: PathBuf },
    /// Minimal non-faces of a complex.
    SrIdeal { input: PathBuf },
    /// Saturation of an ideal by `B_X` or by the ideal in a file.
    Saturate {
        input: PathBuf,
        #[arg(long, default_value = "B_X")]
        by: String,
        /// Ideal the saturation must equal.
        #[arg(long)]
        equals: Option<PathBuf>,
    },
    /// Reduced homology over the chosen field.
    Homology { input: PathBuf },
    /// Integer homology relative to the irrelevant part of the complex.
    RelHomologyZ { input: PathBuf },
    #[command(subcommand)]
    Shelling(ShellingCmd),
    #[command(subcommand)]
    Vshelling(VshellingCmd),
    #[command(subcommand)]
    Cover(CoverCmd),
    /// Splits the link of `--vertex` along its preimages in the cover.
    LinkDecompose { input: PathBuf },
    #[command(subcommand)]
    Corollary(CorollaryCmd),
    #[command(subcommand)]
    Fixtures(FixturesCmd),
}

#[derive(Subcommand, Debug)]
pub enum ShellingCmd {
    Verify { input: PathBuf },
    Find { input: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum VshellingCmd {
    /// Ξ-set conditions along an order.
    CheckProp { input: PathBuf },
    /// Builds a cover along an order that passes `check-prop`.
    Construct { input: PathBuf },
    /// Checks a virtual-shelling certificate.
    Verify { input: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum CoverCmd {
    /// Checks a Cohen–Macaulay cover certificate.
    Verify { input: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum CorollaryCmd {
    /// Dual-graph tree test and traversal order.
    Order { input: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum FixturesCmd {
    /// Recomputes every documented fixture value.
    Run {
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

fn write_out(report: &Report, path: &PathBuf) -> anyhow::Result<()> {
    let text = match &report.document {
        Some(doc) => serde_json::to_string_pretty(doc)?,
        None => serde_json::to_string_pretty(report)?,
    };
    fs::write(path, text + "\n")?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut report = commands::run(&cli.command, &cli.opts);
    if let Some(path) = &cli.opts.out {
        if let Err(e) = write_out(&report, path) {
            report = Report::error(&report.command, &e.context(format!("writing {}", path.display())));
        }
    }
    if cli.opts.pretty {
        print!("{}", report.pretty());
    } else {
        println!("{}", report.to_json());
    }
    ExitCode::from(report.status.exit_code())
}
