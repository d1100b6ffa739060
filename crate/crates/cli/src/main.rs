use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use multifilter::Peak;
use multifilter_cli::{run, Command, RunConfig};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Cmd {
    /// Decompose an image into a pyramid container
    Decompose,
    /// Rebuild a PGM image from a pyramid container
    Reconstruct,
    /// Per-level PSNR after dropping all detail subbands (CSV)
    Bench,
    /// Frequency response of a multifilter bank (CSV)
    Freq,
    /// Check orthogonality of every shipped filter
    Verify,
}

/// Multiwavelet and wavelet decomposition of astronomical plate images.
#[derive(Debug, Parser)]
#[command(name = "multifilter", version)]
struct Args {
    command: Cmd,

    /// Input image (FITS or PGM), or pyramid container for `reconstruct`
    #[arg(long)]
    input: Option<PathBuf>,

    /// haar, db4, haar-multi, db4-multi, ghm (bench/verify accept a
    /// comma-separated list or `all`)
    #[arg(long, value_delimiter = ',')]
    filter: Vec<String>,

    /// Decomposition depth
    #[arg(long)]
    levels: Option<usize>,

    /// Peak value used for PSNR
    #[arg(long, default_value = "255", value_parser = ["255", "65535"])]
    peak: String,

    /// Output path; CSV commands print to stdout when omitted
    #[arg(long)]
    output: Option<PathBuf>,

    /// Drop a trailing row/column when the input has odd dimensions
    #[arg(long)]
    crop_even: bool,

    /// Number of frequency samples on [0, π]
    #[arg(long, default_value_t = 512)]
    points: usize,

    #[arg(long, hide = true)]
    perturb_h0: Option<f64>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let cfg = RunConfig {
        command: match args.command {
            Cmd::Decompose => Command::Decompose,
            Cmd::Reconstruct => Command::Reconstruct,
            Cmd::Bench => Command::Bench,
            Cmd::Freq => Command::Freq,
            Cmd::Verify => Command::Verify,
        },
        input: args.input,
        filters: args.filter,
        levels: args.levels,
        peak: if args.peak == "65535" {
            Peak::Sixteen
        } else {
            Peak::Eight
        },
        output: args.output,
        crop_even: args.crop_even,
        points: args.points,
        perturb: args.perturb_h0,
    };
    match run(&cfg) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            if outcome.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
