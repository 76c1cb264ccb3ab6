//! End-to-end experiments: seeded repeats over a code, summary statistics,
//! and CSV / SVG / JSON artifacts.
//!
//! Repeat `r` of a run draws its codewords from stream `(seed, r)`, so a run
//! is reproducible from its configuration alone and repeats can execute in
//! parallel without changing any output.

mod artifacts;

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

pub use artifacts::{
    histogram, histogram_csv, plot_range, sha256_hex, spectrum_svg, write_artifact, Artifact,
    Histogram,
};

use crate::codes::{
    code_report, make_even_weight, make_gold, make_rm1, CodeReport, LinearCode,
    DEFAULT_EXHAUSTIVE_LIMIT,
};
use crate::error::{Error, Result};
use crate::laws::{sc_moment, LawSpec};
use crate::paths::{paths_audit, PathsAudit};
use crate::rng::SeedContract;
use crate::signal::{sample_codewords, SampleMode};
use crate::spectra::{
    center_scale, eig_hermitian, eigenvalues_csv, gram, identity_residuals, ks_statistic, median,
    trace_moments, IdentityResiduals,
};

pub const DEFAULT_SEED: u64 = 20_240_601;
pub const DEFAULT_REPEATS: usize = 10;
pub const DEFAULT_BINS: usize = 40;
pub const DEFAULT_LMAX: u32 = 4;
pub const MAX_LMAX: u32 = 12;

/// Factor turning the unconstanted error scale of the moment estimates into a gate.
pub const MOMENT_GATE_MULTIPLIER: f64 = 3.0;

/// Gold-code `(m, p)` pairs of the semicircle ladder: `(n, p)` =
/// `(31, 8), (127, 20), (511, 35), (2047, 50)`.
pub const SEMICIRCLE_LADDER: [(u32, usize); 4] = [(5, 8), (7, 20), (9, 35), (11, 50)];

/// Calibrated bound on the median KS distance at the last ladder rung.
pub const LADDER_FINAL_GATE: f64 = 0.15;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum CodeSelector {
    Gold { m: u32 },
    Rm1 { m: u32 },
    Even { n: usize },
    File { path: PathBuf },
}

impl CodeSelector {
    /// Resolve `--code` with its companion `--m`, `--n` or `--file`.
    pub fn from_flags(
        code: &str,
        m: Option<u32>,
        n: Option<usize>,
        file: Option<&Path>,
    ) -> Result<Self> {
        let need_m = || m.ok_or_else(|| Error::param(format!("--code {code} needs --m")));
        match code {
            "gold" => Ok(CodeSelector::Gold { m: need_m()? }),
            "rm1" => Ok(CodeSelector::Rm1 { m: need_m()? }),
            "even" => Ok(CodeSelector::Even {
                n: n.ok_or_else(|| Error::param("--code even needs --n"))?,
            }),
            "file" => Ok(CodeSelector::File {
                path: file
                    .ok_or_else(|| Error::param("--code file needs --file"))?
                    .to_path_buf(),
            }),
            other => Err(Error::param(format!(
                "unknown code `{other}` (expected gold, rm1, even or file)"
            ))),
        }
    }

    pub fn build(&self) -> Result<LinearCode> {
        match self {
            CodeSelector::Gold { m } => make_gold(*m),
            CodeSelector::Rm1 { m } => make_rm1(*m),
            CodeSelector::Even { n } => make_even_weight(*n),
            CodeSelector::File { path } => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    Error::param(format!(
                        "cannot read generator file {}: {e}",
                        path.display()
                    ))
                })?;
                let label = path
                    .file_name()
                    .map_or_else(|| "file".to_string(), |s| s.to_string_lossy().into_owned());
                LinearCode::from_text(&text, label)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Spectrum,
    Mp,
    Moments,
    CodeInfo,
    PathsAudit,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Spectrum => "spectrum",
            Command::Mp => "mp",
            Command::Moments => "moments",
            Command::CodeInfo => "code_info",
            Command::PathsAudit => "paths_audit",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LawKind {
    Sc,
    Mp,
}

/// Everything that determines a run's output.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub command: Command,
    pub code: CodeSelector,
    /// Number of codewords; for `mp` derived from `y` as `round(y·n)`.
    pub p: Option<usize>,
    pub y: Option<f64>,
    pub law: Option<LawKind>,
    pub mode: SampleMode,
    pub seed: u64,
    pub repeats: usize,
    pub bins: usize,
    /// Highest trace moment; the path length for `paths-audit`.
    pub lmax: u32,
    /// Artifacts are written here when set.
    pub out: Option<PathBuf>,
}

impl ExperimentConfig {
    /// Defaults: semicircle with distinct codewords for `spectrum` and
    /// `moments`, Marchenko–Pastur with independent draws for `mp`.
    pub fn new(command: Command, code: CodeSelector) -> Self {
        let (law, mode) = match command {
            Command::Spectrum | Command::Moments => (Some(LawKind::Sc), SampleMode::Distinct),
            Command::Mp => (Some(LawKind::Mp), SampleMode::WithReplacement),
            Command::CodeInfo | Command::PathsAudit => (None, SampleMode::Distinct),
        };
        Self {
            command,
            code,
            p: None,
            y: None,
            law,
            mode,
            seed: DEFAULT_SEED,
            repeats: DEFAULT_REPEATS,
            bins: DEFAULT_BINS,
            lmax: DEFAULT_LMAX,
            out: None,
        }
    }

    pub fn with_p(mut self, p: usize) -> Self {
        self.p = Some(p);
        self
    }

    pub fn with_y(mut self, y: f64) -> Self {
        self.y = Some(y);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_repeats(mut self, repeats: usize) -> Self {
        self.repeats = repeats;
        self
    }

    pub fn with_mode(mut self, mode: SampleMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_lmax(mut self, lmax: u32) -> Self {
        self.lmax = lmax;
        self
    }

    pub fn with_out(mut self, out: impl Into<PathBuf>) -> Self {
        self.out = Some(out.into());
        self
    }

    fn check_common(&self) -> Result<()> {
        if self.repeats == 0 {
            return Err(Error::param("repeats must be at least 1"));
        }
        if self.bins == 0 {
            return Err(Error::param("bins must be at least 1"));
        }
        if self.lmax == 0 || self.lmax > MAX_LMAX {
            return Err(Error::param(format!(
                "lmax must lie in [1, {MAX_LMAX}], got {}",
                self.lmax
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CodeSummary {
    pub label: String,
    pub n: usize,
    pub k: usize,
    #[serde(rename = "N")]
    pub big_n: f64,
    pub q: u32,
}

impl CodeSummary {
    fn of(code: &LinearCode) -> Self {
        Self {
            label: code.label().to_string(),
            n: code.n(),
            k: code.k(),
            big_n: code.num_codewords_f64(),
            q: code.q(),
        }
    }
}

/// Statistics of one repeat; the eigenvalues themselves go to CSV.
#[derive(Clone, Debug, Serialize)]
pub struct RepeatRecord {
    pub repeat: usize,
    pub stream_index: u64,
    pub ks: f64,
    pub moments: Vec<(u32, f64)>,
    pub lambda_min: f64,
    pub lambda_max: f64,
    /// `Σλ` against the trace and `Σλ²` against `‖H‖_F²`.
    pub residuals: IdentityResiduals,
    pub eigenvalue_sum: f64,
    #[serde(skip)]
    pub eigenvalues: Vec<f64>,
}

/// Sample `p` codewords on stream `(seed, repeat)`, form `G` (or `G_I` for
/// the semicircle) and summarise its spectrum against `law`.
pub fn analyse_repeat(
    code: &LinearCode,
    p: usize,
    mode: SampleMode,
    law: &LawSpec,
    seed: u64,
    repeat: usize,
    lmax: u32,
) -> Result<RepeatRecord> {
    let contract = SeedContract::new(seed, repeat as u64);
    let phi = sample_codewords(code, p, mode, contract)?;
    let g = gram(&phi);
    let h = match law {
        LawSpec::Semicircle => center_scale(&g, code.n(), p)?,
        LawSpec::MarchenkoPastur { .. } => g,
    };
    let eigs = eig_hermitian(&h)?;
    Ok(RepeatRecord {
        repeat,
        stream_index: contract.stream_index,
        ks: ks_statistic(&eigs, law),
        moments: trace_moments(&eigs, lmax)?,
        lambda_min: eigs[0],
        lambda_max: eigs[eigs.len() - 1],
        residuals: identity_residuals(&h, &eigs),
        eigenvalue_sum: eigs.iter().sum(),
        eigenvalues: eigs,
    })
}

/// Output of `spectrum` and `mp`.
#[derive(Clone, Debug, Serialize)]
pub struct SpectrumRun {
    pub config: ExperimentConfig,
    pub code: CodeSummary,
    pub law: LawSpec,
    pub p: usize,
    pub repeats: Vec<RepeatRecord>,
    pub ks_values: Vec<f64>,
    pub median_ks: f64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    pub artifacts: Vec<Artifact>,
}

fn run_repeats(
    config: &ExperimentConfig,
    code: &LinearCode,
    p: usize,
    law: &LawSpec,
) -> Result<Vec<RepeatRecord>> {
    (0..config.repeats)
        .into_par_iter()
        .map(|r| analyse_repeat(code, p, config.mode, law, config.seed, r, config.lmax))
        .collect()
}

fn prepare_out(config: &ExperimentConfig) -> Result<Option<&Path>> {
    match &config.out {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            Ok(Some(dir.as_path()))
        }
        None => Ok(None),
    }
}

fn write_summary<T: Serialize>(dir: Option<&Path>, name: &str, value: &T) -> Result<()> {
    if let Some(dir) = dir {
        std::fs::write(dir.join(name), to_json(value)?)?;
    }
    Ok(())
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn spectral_run(
    config: &ExperimentConfig,
    code: &LinearCode,
    p: usize,
    law: LawSpec,
    warnings: Vec<String>,
) -> Result<SpectrumRun> {
    let repeats = run_repeats(config, code, p, &law)?;
    let dir = prepare_out(config)?;
    let mut artifacts = Vec::new();
    if let Some(dir) = dir {
        let prefix = config.command.name();
        for rec in &repeats {
            let stem = format!("{prefix}_r{:02}", rec.repeat);
            let hist = histogram(
                &rec.eigenvalues,
                config.bins,
                plot_range(&rec.eigenvalues, &law),
            );
            let title = format!(
                "{} p={} repeat {} vs {}",
                code.label(),
                p,
                rec.repeat,
                law.name()
            );
            artifacts.push(write_artifact(
                dir,
                &format!("{stem}_eigenvalues.csv"),
                &eigenvalues_csv(&rec.eigenvalues),
            )?);
            artifacts.push(write_artifact(
                dir,
                &format!("{stem}_histogram.csv"),
                &histogram_csv(&hist),
            )?);
            artifacts.push(write_artifact(
                dir,
                &format!("{stem}.svg"),
                &spectrum_svg(&hist, &law, &title),
            )?);
        }
    }
    let ks_values: Vec<f64> = repeats.iter().map(|r| r.ks).collect();
    let run = SpectrumRun {
        config: config.clone(),
        code: CodeSummary::of(code),
        law,
        p,
        median_ks: median(&ks_values),
        ks_values,
        repeats,
        warnings,
        artifacts,
    };
    write_summary(
        dir,
        &format!("{}_summary.json", config.command.name()),
        &run,
    )?;
    Ok(run)
}

/// ESD of `G_I` from distinct codewords against the semicircle.
pub fn run_spectrum(config: &ExperimentConfig) -> Result<SpectrumRun> {
    config.check_common()?;
    if config.mode != SampleMode::Distinct {
        return Err(Error::param(
            "the semicircle experiment samples distinct codewords (--mode distinct)",
        ));
    }
    let p = config.p.ok_or_else(|| Error::param("spectrum needs --p"))?;
    let code = config.code.build()?;
    let mut config = config.clone();
    config.law = Some(LawKind::Sc);
    spectral_run(&config, &code, p, LawSpec::Semicircle, Vec::new())
}

/// ESD of the uncentred `G` against Marchenko–Pastur, with `p = round(y·n)`.
///
/// The reference law uses the realised ratio `p/n`, which differs from the
/// requested `y` by at most `1/(2n)`.
pub fn run_mp(config: &ExperimentConfig) -> Result<SpectrumRun> {
    config.check_common()?;
    let y = config.y.ok_or_else(|| Error::param("mp needs --y"))?;
    if !(y > 0.0 && y < 1.0) {
        return Err(Error::param(format!("--y must lie in (0,1), got {y}")));
    }
    if config.p.is_some() {
        return Err(Error::param("mp derives p from --y; do not pass --p"));
    }
    let code = config.code.build()?;
    let p = (y * code.n() as f64).round() as usize;
    if p < 2 {
        return Err(Error::param(format!(
            "round(y·n) = {p}; need at least 2 rows"
        )));
    }
    let law = LawSpec::marchenko_pastur(p as f64 / code.n() as f64)?;
    let mut warnings = Vec::new();
    if config.mode == SampleMode::Distinct {
        warnings.push("distinct sampling: rows are not independent draws as the Marchenko–Pastur limit assumes".to_string());
    }
    let mut config = config.clone();
    config.p = Some(p);
    config.law = Some(LawKind::Mp);
    spectral_run(&config, &code, p, law, warnings)
}

#[derive(Clone, Debug, Serialize)]
pub struct MomentRow {
    pub ell: u32,
    pub mean: f64,
    pub variance: f64,
    pub sc_moment: f64,
    /// `c^ℓ/p + n/N + p/n` for even `ℓ`, `c^ℓ/√p + √(p/n)` for odd `ℓ`.
    pub error_scale: f64,
    pub deviation: f64,
    pub gate: f64,
    pub within_gate: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MomentsRun {
    pub config: ExperimentConfig,
    pub code: CodeSummary,
    pub p: usize,
    pub coherence_constant: f64,
    pub gate_multiplier: f64,
    pub rows: Vec<MomentRow>,
    pub repeats: Vec<RepeatRecord>,
    pub artifacts: Vec<Artifact>,
}

/// Error scale of the moment estimate `A_{ℓ,I}`.
pub fn moment_error_scale(ell: u32, c: f64, n: usize, big_n: f64, p: usize) -> f64 {
    let (n, p) = (n as f64, p as f64);
    let cl = c.powi(ell as i32);
    if ell.is_multiple_of(2) {
        cl / p + n / big_n + p / n
    } else {
        cl / p.sqrt() + (p / n).sqrt()
    }
}

/// Mean and unbiased variance, summed in sorted order.
pub fn mean_and_variance(values: &[f64]) -> (f64, f64) {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let k = v.len() as f64;
    let mean = v.iter().sum::<f64>() / k;
    let mut dev: Vec<f64> = v.iter().map(|x| (x - mean) * (x - mean)).collect();
    dev.sort_by(f64::total_cmp);
    let var = if v.len() > 1 {
        dev.iter().sum::<f64>() / (k - 1.0)
    } else {
        f64::NAN
    };
    (mean, var)
}

/// Mean and variance of `A_{ℓ,I} = (1/p) Tr G_I^ℓ` across repeats, against
/// the semicircle moments and the error scale built from the code report.
pub fn run_moments(config: &ExperimentConfig) -> Result<MomentsRun> {
    config.check_common()?;
    if config.repeats < 2 {
        return Err(Error::param("moments needs at least 2 repeats"));
    }
    if config.mode != SampleMode::Distinct {
        return Err(Error::param(
            "the moment experiment samples distinct codewords (--mode distinct)",
        ));
    }
    let p = config.p.ok_or_else(|| Error::param("moments needs --p"))?;
    let code = config.code.build()?;
    let report = code_report(&code, DEFAULT_EXHAUSTIVE_LIMIT)?;
    let c = report.coherence_constant;
    let repeats = run_repeats(config, &code, p, &LawSpec::Semicircle)?;
    let rows = (1..=config.lmax)
        .map(|ell| {
            let values: Vec<f64> = repeats
                .iter()
                .map(|r| r.moments[ell as usize - 1].1)
                .collect();
            let (mean, variance) = mean_and_variance(&values);
            let target = sc_moment(ell);
            let error_scale = moment_error_scale(ell, c, code.n(), code.num_codewords_f64(), p);
            let gate = MOMENT_GATE_MULTIPLIER * error_scale;
            let deviation = (mean - target).abs();
            MomentRow {
                ell,
                mean,
                variance,
                sc_moment: target,
                error_scale,
                deviation,
                gate,
                within_gate: deviation <= gate,
            }
        })
        .collect();
    let dir = prepare_out(config)?;
    let run = MomentsRun {
        config: config.clone(),
        code: CodeSummary::of(&code),
        p,
        coherence_constant: c,
        gate_multiplier: MOMENT_GATE_MULTIPLIER,
        rows,
        repeats,
        artifacts: Vec::new(),
    };
    write_summary(dir, "moments_summary.json", &run)?;
    Ok(run)
}

#[derive(Clone, Debug, Serialize)]
pub struct CodeInfoRun {
    pub config: ExperimentConfig,
    #[serde(flatten)]
    pub report: CodeReport,
    pub artifacts: Vec<Artifact>,
}

pub fn run_code_info(config: &ExperimentConfig) -> Result<CodeInfoRun> {
    let code = config.code.build()?;
    let report = code_report(&code, DEFAULT_EXHAUSTIVE_LIMIT)?;
    let run = CodeInfoRun {
        config: config.clone(),
        report,
        artifacts: Vec::new(),
    };
    write_summary(prepare_out(config)?, "code_info.json", &run)?;
    Ok(run)
}

#[derive(Clone, Debug, Serialize)]
pub struct PathsAuditRun {
    pub config: ExperimentConfig,
    #[serde(flatten)]
    pub audit: PathsAudit,
    pub artifacts: Vec<Artifact>,
}

/// Audit of all simple classes of length `config.lmax`.
pub fn run_paths_audit(config: &ExperimentConfig) -> Result<PathsAuditRun> {
    let code = config.code.build()?;
    let audit = paths_audit(&code, config.lmax as usize)?;
    let run = PathsAuditRun {
        config: config.clone(),
        audit,
        artifacts: Vec::new(),
    };
    write_summary(prepare_out(config)?, "paths_audit.json", &run)?;
    Ok(run)
}

#[derive(Clone, Debug, Serialize)]
pub struct LadderRung {
    pub m: u32,
    pub n: usize,
    pub p: usize,
    pub ks_values: Vec<f64>,
    pub median_ks: f64,
    pub lambda_min: f64,
    pub lambda_max: f64,
    #[serde(skip)]
    pub run: SpectrumRun,
}

#[derive(Clone, Debug, Serialize)]
pub struct LadderReport {
    pub seed: u64,
    pub repeats: usize,
    pub rungs: Vec<LadderRung>,
    pub strictly_decreasing: bool,
    pub final_gate: f64,
    pub final_median_ks: f64,
    pub final_below_gate: bool,
}

/// Median KS distance to the semicircle along the Gold-code ladder.
pub fn semicircle_ladder(seed: u64, repeats: usize) -> Result<LadderReport> {
    let rungs = SEMICIRCLE_LADDER
        .iter()
        .map(|&(m, p)| {
            let config = ExperimentConfig::new(Command::Spectrum, CodeSelector::Gold { m })
                .with_p(p)
                .with_seed(seed)
                .with_repeats(repeats);
            let run = run_spectrum(&config)?;
            Ok(LadderRung {
                m,
                n: run.code.n,
                p,
                ks_values: run.ks_values.clone(),
                median_ks: run.median_ks,
                lambda_min: run
                    .repeats
                    .iter()
                    .map(|r| r.lambda_min)
                    .fold(f64::INFINITY, f64::min),
                lambda_max: run
                    .repeats
                    .iter()
                    .map(|r| r.lambda_max)
                    .fold(f64::NEG_INFINITY, f64::max),
                run,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let strictly_decreasing = rungs.windows(2).all(|w| w[1].median_ks < w[0].median_ks);
    let final_median_ks = rungs.last().map_or(f64::NAN, |r| r.median_ks);
    Ok(LadderReport {
        seed,
        repeats,
        rungs,
        strictly_decreasing,
        final_gate: LADDER_FINAL_GATE,
        final_median_ks,
        final_below_gate: final_median_ks < LADDER_FINAL_GATE,
    })
}
