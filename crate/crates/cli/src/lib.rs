//! Command implementations behind the `multifilter` binary.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use multifilter::filterbank::{verify_orthogonality, ScalarFilter};
use multifilter::image2d::container::{read_pyramid, write_pyramid};
use multifilter::imageio::{pgm, read_image};
use multifilter::{
    approx_only, decompose2d, frequency_response, reconstruct2d, ImageBuffer, MetricsReport, Peak,
    Wavelet, FILTER_NAMES,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Decompose,
    Reconstruct,
    Bench,
    Freq,
    Verify,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub input: Option<PathBuf>,
    /// Requested filter names; empty means "command default".
    pub filters: Vec<String>,
    pub levels: Option<usize>,
    pub peak: Peak,
    pub output: Option<PathBuf>,
    pub crop_even: bool,
    pub points: usize,
    /// Scales the first lowpass tap of every checked filter (verify only).
    pub perturb: Option<f64>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            input: None,
            filters: Vec::new(),
            levels: None,
            peak: Peak::Eight,
            output: None,
            crop_even: false,
            points: 512,
            perturb: None,
        }
    }

    fn input(&self) -> Result<&Path> {
        self.input.as_deref().context("--input is required")
    }

    fn output(&self) -> Result<&Path> {
        self.output.as_deref().context("--output is required")
    }

    fn levels(&self) -> Result<usize> {
        match self.levels {
            Some(0) => bail!("--levels must be at least 1"),
            Some(n) => Ok(n),
            None => bail!("--levels is required"),
        }
    }

    fn single_filter(&self) -> Result<Wavelet> {
        match self.filters.as_slice() {
            [name] => Ok(Wavelet::from_name(name)?),
            [] => bail!(
                "--filter is required; valid names: {}",
                FILTER_NAMES.join(", ")
            ),
            _ => bail!("exactly one --filter is expected for this command"),
        }
    }

    fn filter_list(&self) -> Result<Vec<Wavelet>> {
        if self.filters.is_empty() || self.filters.iter().any(|f| f == "all") {
            return Ok(Wavelet::all());
        }
        self.filters
            .iter()
            .map(|n| Wavelet::from_name(n).map_err(Into::into))
            .collect()
    }
}

/// Text produced by a command and whether it counts as success.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub success: bool,
}

pub fn run(cfg: &RunConfig) -> Result<Outcome> {
    match cfg.command {
        Command::Decompose => cmd_decompose(cfg),
        Command::Reconstruct => cmd_reconstruct(cfg),
        Command::Bench => cmd_bench(cfg),
        Command::Freq => cmd_freq(cfg),
        Command::Verify => Ok(cmd_verify(cfg)),
    }
}

/// Reads a FITS or PGM image, optionally dropping a trailing odd row/column.
pub fn load_image(path: &Path, crop_even: bool) -> Result<ImageBuffer> {
    let img = read_image(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(if crop_even { img.crop_even() } else { img })
}

fn emit(cfg: &RunConfig, text: String) -> Result<Outcome> {
    match &cfg.output {
        Some(path) => {
            fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
            Ok(Outcome {
                stdout: String::new(),
                success: true,
            })
        }
        None => Ok(Outcome {
            stdout: text,
            success: true,
        }),
    }
}

pub fn cmd_decompose(cfg: &RunConfig) -> Result<Outcome> {
    let wavelet = cfg.single_filter()?;
    let levels = cfg.levels()?;
    let img = load_image(cfg.input()?, cfg.crop_even)?;
    let pyr = decompose2d(&img, &wavelet, levels).context("decompose")?;
    let out = cfg.output()?;
    write_pyramid(&pyr, out).with_context(|| format!("writing {}", out.display()))?;
    Ok(Outcome {
        stdout: format!(
            "decomposed {}x{} with {} into {} levels ({} blocks)\n",
            pyr.width(),
            pyr.height(),
            pyr.filter(),
            pyr.levels(),
            pyr.channel_map().blocks().len()
        ),
        success: true,
    })
}

pub fn cmd_reconstruct(cfg: &RunConfig) -> Result<Outcome> {
    let input = cfg.input()?;
    let pyr =
        read_pyramid(input).with_context(|| format!("reading pyramid {}", input.display()))?;
    let wavelet = if cfg.filters.is_empty() {
        Wavelet::from_name(pyr.filter())?
    } else {
        cfg.single_filter()?
    };
    if let Some(levels) = cfg.levels {
        if levels != pyr.levels() {
            bail!(
                "--levels {levels} does not match the {} levels stored in {}",
                pyr.levels(),
                input.display()
            );
        }
    }
    let img = reconstruct2d(&pyr, &wavelet).context("reconstruct")?;
    let out = cfg.output()?;
    let report = pgm::write_pgm(&img, out).with_context(|| format!("writing {}", out.display()))?;
    Ok(Outcome {
        stdout: format!(
            "reconstructed {}x{} from {} ({} clamped samples)\n",
            img.width(),
            img.height(),
            pyr.filter(),
            report.clamped
        ),
        success: true,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub level: usize,
    pub filter: String,
    pub report: MetricsReport,
}

/// For each level `L = 1..=levels`: decompose to `L`, drop every detail
/// block, reconstruct, quantize to the image's integer grid and measure.
pub fn bench_image(
    img: &ImageBuffer,
    wavelets: &[Wavelet],
    levels: usize,
    peak: f64,
) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::with_capacity(wavelets.len() * levels);
    for wavelet in wavelets {
        let name = wavelet.name();
        for level in 1..=levels {
            let stage = |what: &str| format!("bench: {what} with {name} at level {level}");
            let pyr = decompose2d(img, wavelet, level).with_context(|| stage("decompose"))?;
            let truncated = approx_only(&pyr, level).with_context(|| stage("truncate"))?;
            let rec = reconstruct2d(&truncated, wavelet).with_context(|| stage("reconstruct"))?;
            let (rec, _) = rec.quantized();
            let report =
                MetricsReport::compare(img, &rec, peak).with_context(|| stage("measure"))?;
            rows.push(BenchRow {
                level,
                filter: name.to_string(),
                report,
            });
        }
    }
    Ok(rows)
}

pub fn bench_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(MetricsReport::CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.report.csv_row(row.level, &row.filter));
        out.push('\n');
    }
    out
}

pub fn cmd_bench(cfg: &RunConfig) -> Result<Outcome> {
    let wavelets = cfg.filter_list()?;
    let levels = cfg.levels()?;
    let img = load_image(cfg.input()?, cfg.crop_even)?;
    let rows = bench_image(&img, &wavelets, levels, cfg.peak.value())?;
    emit(cfg, bench_csv(&rows))
}

pub fn cmd_freq(cfg: &RunConfig) -> Result<Outcome> {
    let bank = match cfg.single_filter()? {
        Wavelet::Multi(bank) => bank,
        Wavelet::Scalar(f) => bail!(
            "'{}' is a scalar filter; freq needs a multifilter bank: haar-multi, db4-multi, ghm",
            f.name()
        ),
    };
    let response = frequency_response(&bank, cfg.points)?;
    let mut buf = Vec::new();
    response.write_csv(&mut buf)?;
    emit(cfg, String::from_utf8(buf).expect("csv is ascii"))
}

fn perturbed(w: Wavelet, factor: Option<f64>) -> Wavelet {
    match (w, factor) {
        (w, None) => w,
        (Wavelet::Multi(b), Some(f)) => Wavelet::Multi(b.with_scaled_lowpass_tap(0, f)),
        (Wavelet::Scalar(s), Some(f)) => {
            let mut c = s.lowpass().to_vec();
            c[0] *= f;
            Wavelet::Scalar(ScalarFilter::from_lowpass(s.name(), c))
        }
    }
}

/// Tolerance for the orthogonality gate.
pub const VERIFY_TOLERANCE: f64 = 1e-10;

pub fn cmd_verify(cfg: &RunConfig) -> Outcome {
    let mut out = String::new();
    let mut all_passed = true;
    let wavelets = cfg.filter_list().unwrap_or_else(|_| Wavelet::all());
    for w in wavelets.into_iter().map(|w| perturbed(w, cfg.perturb)) {
        match &w {
            Wavelet::Scalar(f) => {
                let passed = f.max_residual() <= VERIFY_TOLERANCE;
                all_passed &= passed;
                let _ = writeln!(
                    out,
                    "scalar {} (L={}, tolerance {:e}): {}",
                    f.name(),
                    f.len(),
                    VERIFY_TOLERANCE,
                    verdict(passed)
                );
                let _ = writeln!(
                    out,
                    "  orthonormality {:.3e}  highpass {:.3e}  cross {:.3e}  dc-gain {:.3e}",
                    f.orthonormality_residual(),
                    f.highpass_orthonormality_residual(),
                    f.cross_residual(),
                    f.dc_gain_residual()
                );
            }
            Wavelet::Multi(bank) => {
                let report = verify_orthogonality(bank, VERIFY_TOLERANCE);
                all_passed &= report.passed;
                let _ = writeln!(
                    out,
                    "bank {} (M={}, tolerance {:e}): {}",
                    bank.name(),
                    bank.taps(),
                    report.tolerance,
                    verdict(report.passed)
                );
                for s in &report.shifts {
                    let _ = writeln!(
                        out,
                        "  l={:+}  HH {:.3e}  GG {:.3e}  HG {:.3e}",
                        s.shift, s.hh, s.gg, s.hg
                    );
                }
                let _ = writeln!(
                    out,
                    "  max  HH {:.3e}  GG {:.3e}  HG {:.3e}",
                    report.max_residual_hh, report.max_residual_gg, report.max_residual_hg
                );
            }
        }
    }
    let _ = writeln!(
        out,
        "{}",
        if all_passed {
            "all checks passed"
        } else {
            "FAILED"
        }
    );
    Outcome {
        stdout: out,
        success: all_passed,
    }
}

fn verdict(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}
