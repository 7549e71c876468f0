//! End-to-end workflows behind the command-line subcommands.
//!
//! [`cmd_analyze`] runs the whole chain: load and deflate prices, slice a
//! region, build the return panel, fit `(q, β)` at delay 1, fit `β(t)` at
//! that `q` for every delay, test each fit, and fit the diffusion models to
//! `β̂(t)`. Results go to a directory as `summary.json`, `beta.csv`,
//! `gof.csv`, `pdf_compare_<t>.csv` and, optionally, `branches.csv`.
//!
//! Output is a pure function of the configuration, the input files and the
//! seed: per-delay work runs in parallel, but each delay draws from its own
//! random stream and results are collected in delay order.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use chrono::{Datelike, NaiveDate, Weekday};
use rayon::prelude::*;
use serde::Serialize;

use crate::diffusion::{superdiffusion_exponent, BetaSeries, CurvePoint, DiffusionFit};
use crate::distribution::{tail_index, QGaussianParams};
use crate::error::{Error, Result};
use crate::estimation::{
    estimate_beta_fixed_q, estimate_beta_fixed_q_seeded, estimate_branches, estimate_q_beta,
    BoundaryHit, EstimationResult, SampleSet, Q_MAX,
};
use crate::fisher::{measured_fisher, standard_errors_q_beta};
use crate::gof::{goodness_of_fit, GofOptions};
use crate::pipeline::{
    build_return_panel_with, cpi_detrend, load_cpi_series, load_price_series, slice_region,
    PriceSeries, RegionPreset, ReturnPanel, StartSpacing, YearMonth,
};
use crate::sampling::{q_gaussian_walk, sample_q_gaussian, SeededStream};

pub const SCHEMA_VERSION: u32 = 1;

/// Delays written to `pdf_compare_<t>.csv` when present in the run.
pub const DEFAULT_PDF_DELAYS: [u32; 6] = [1, 5, 10, 20, 40, 60];

const MAX_GAMMA: f64 = 0.2;

/// Positive-side bins per `pdf_compare` table.
const PDF_BINS_PER_SIDE: usize = 24;
/// Minimum expected count for a `pdf_compare` bin to be kept.
const PDF_MIN_EXPECTED: f64 = 5.0;

/// Whether `q` is estimated at delay 1 or supplied.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QMode {
    Estimate,
    Fixed(f64),
}

impl FromStr for QMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "estimate" {
            return Ok(QMode::Estimate);
        }
        let v = s
            .strip_prefix("fixed:")
            .ok_or_else(|| format!("expected `estimate` or `fixed:<q>`, got {s:?}"))?;
        v.parse::<f64>()
            .map(QMode::Fixed)
            .map_err(|_| format!("bad q value {v:?}"))
    }
}

/// Date window: a named preset or an explicit inclusive range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    Preset(RegionPreset),
    Range(NaiveDate, NaiveDate),
}

impl Region {
    pub fn bounds(self) -> (NaiveDate, NaiveDate) {
        match self {
            Region::Preset(p) => p.bounds(),
            Region::Range(s, e) => (s, e),
        }
    }
}

impl FromStr for Region {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "region1" => return Ok(Region::Preset(RegionPreset::Region1)),
            "region2" => return Ok(Region::Preset(RegionPreset::Region2)),
            _ => {}
        }
        let (a, b) = s
            .split_once(':')
            .ok_or_else(|| format!("expected region1, region2 or START:END, got {s:?}"))?;
        let d = |x: &str| {
            NaiveDate::parse_from_str(x, "%Y-%m-%d").map_err(|e| format!("bad date {x:?}: {e}"))
        };
        let (start, end) = (d(a)?, d(b)?);
        if start >= end {
            return Err(format!("region start {start} is not before end {end}"));
        }
        Ok(Region::Range(start, end))
    }
}

/// Parse `a..b` (inclusive) or a comma-separated list such as `1,5,10`.
pub fn parse_delays(s: &str) -> std::result::Result<Vec<u32>, String> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let num = |x: &str| {
        x.trim()
            .parse::<u32>()
            .map_err(|_| format!("bad delay {x:?}"))
    };
    if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
        if a > b {
            return Err(format!("empty delay range {s:?}"));
        }
        return Ok((a..=b).collect());
    }
    s.split(',').map(num).collect()
}

/// Everything a run needs.
#[derive(Debug, Clone)]
pub struct AnalysisConfig {
    pub input: PathBuf,
    pub cpi: Option<PathBuf>,
    /// Month whose money prices are expressed in; defaults to the month of
    /// the last price.
    pub cpi_base: Option<YearMonth>,
    /// `None` keeps the whole series.
    pub region: Option<Region>,
    pub delays: Vec<u32>,
    pub q_mode: QMode,
    pub gamma: f64,
    pub seed: u64,
    pub syn_factor: f64,
    pub out_dir: PathBuf,
    pub branches: bool,
    pub weighted: bool,
    pub restandardize_synthetic: bool,
    pub spacing: StartSpacing,
    pub pdf_delays: Vec<u32>,
}

impl AnalysisConfig {
    pub fn new(input: impl Into<PathBuf>, out_dir: impl Into<PathBuf>) -> Self {
        Self {
            input: input.into(),
            cpi: None,
            cpi_base: None,
            region: None,
            delays: (1..=60).collect(),
            q_mode: QMode::Estimate,
            gamma: 0.05,
            seed: 0,
            syn_factor: 1.0,
            out_dir: out_dir.into(),
            branches: false,
            weighted: false,
            restandardize_synthetic: false,
            spacing: StartSpacing::Overlapping,
            pdf_delays: DEFAULT_PDF_DELAYS.to_vec(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.delays.is_empty() {
            return Err(Error::Config("delay list is empty".into()));
        }
        if self.delays[0] < 1 {
            return Err(Error::Config("delays must be >= 1".into()));
        }
        if self.delays.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config("delays must be strictly increasing".into()));
        }
        if !(self.gamma > 0.0 && self.gamma <= MAX_GAMMA) {
            return Err(Error::Config(format!(
                "significance {} outside (0, {MAX_GAMMA}]",
                self.gamma
            )));
        }
        if !(self.syn_factor.is_finite() && self.syn_factor > 0.0) {
            return Err(Error::Config(format!(
                "synthetic factor {} must be positive",
                self.syn_factor
            )));
        }
        if let QMode::Fixed(q) = self.q_mode {
            if !(1.0..=Q_MAX).contains(&q) {
                return Err(Error::Config(format!("fixed q = {q} outside [1, {Q_MAX}]")));
            }
        }
        Ok(())
    }

    fn gof_options(&self) -> GofOptions {
        GofOptions {
            significance: self.gamma,
            synthetic_factor: self.syn_factor,
            restandardize_synthetic: self.restandardize_synthetic,
        }
    }

    /// Requested delays plus delay 1, which anchors `q` and the model curves.
    fn panel_delays(&self) -> Vec<u32> {
        let mut d = self.delays.clone();
        if d.first() != Some(&1) {
            d.insert(0, 1);
        }
        d
    }
}

/// Prices after deflation and slicing, with their return panel.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub prices: PriceSeries,
    pub panel: ReturnPanel,
}

pub fn prepare(cfg: &AnalysisConfig) -> Result<Prepared> {
    let mut prices = load_price_series(&cfg.input).map_err(|e| e.at_stage("load"))?;
    if let Some(cpi_path) = &cfg.cpi {
        let cpi = load_cpi_series(cpi_path).map_err(|e| e.at_stage("cpi"))?;
        let base = match (cfg.cpi_base, prices.dates().last()) {
            (Some(b), _) => b,
            (None, Some(&d)) => YearMonth::of(d),
            (None, None) => return Err(Error::EmptySample.at_stage("cpi")),
        };
        prices = cpi_detrend(&prices, &cpi, base).map_err(|e| e.at_stage("cpi"))?;
    }
    if let Some(region) = cfg.region {
        let (s, e) = region.bounds();
        prices = slice_region(&prices, s, e).map_err(|e| e.at_stage("region"))?;
    }
    let panel = build_return_panel_with(&prices, &cfg.panel_delays(), cfg.spacing)
        .map_err(|e| e.at_stage("returns"))?;
    Ok(Prepared { prices, panel })
}

/// A fit with its Fisher standard errors from both information matrices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitRecord {
    pub delay: u32,
    pub n: usize,
    pub q: f64,
    pub beta: f64,
    pub stderr_q: Option<f64>,
    pub stderr_beta: f64,
    pub stderr_q_measured: Option<f64>,
    pub stderr_beta_measured: Option<f64>,
    pub boundary_hit: BoundaryHit,
    pub log_likelihood: f64,
    pub gradient_norm: f64,
}

impl FitRecord {
    fn new(delay: u32, s: &SampleSet, r: &EstimationResult) -> Result<Self> {
        let measured = match r.stderr_q {
            Some(_) => Some(measured_errors(s, &r.params)?),
            None => None,
        };
        Ok(Self {
            delay,
            n: r.n,
            q: r.params.q(),
            beta: r.params.beta(),
            stderr_q: r.stderr_q,
            stderr_beta: r.stderr_beta,
            stderr_q_measured: measured.map(|m| m.0),
            stderr_beta_measured: measured.map(|m| m.1),
            boundary_hit: r.boundary_hit,
            log_likelihood: r.objective,
            gradient_norm: r.gradient_norm,
        })
    }

    pub fn params(&self) -> Result<QGaussianParams> {
        QGaussianParams::new(self.q, self.beta)
    }
}

fn measured_errors(s: &SampleSet, p: &QGaussianParams) -> Result<(f64, f64)> {
    let m = measured_fisher(s.values(), p)?;
    standard_errors_q_beta(p, s.len(), &m)
}

fn fit_one(panel: &ReturnPanel, delay: u32, q_mode: QMode) -> Result<FitRecord> {
    let s = panel.sample_set(delay)?;
    let r = match q_mode {
        QMode::Estimate => estimate_q_beta(&s)?,
        QMode::Fixed(q) => estimate_beta_fixed_q(&s, q)?,
    };
    FitRecord::new(delay, &s, &r)
}

/// `β̂(t)` at fixed `q` for each delay, seeding each search at `β̂(1)/t`.
fn beta_curve(panel: &ReturnPanel, delays: &[u32], q: f64, beta1: f64) -> Result<Vec<FitRecord>> {
    delays
        .par_iter()
        .map(|&t| {
            let s = panel.sample_set(t)?;
            let r = estimate_beta_fixed_q_seeded(&s, q, Some(beta1 / t as f64))?;
            FitRecord::new(t, &s, &r)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GofRow {
    pub delay: u32,
    pub q: f64,
    pub beta: f64,
    pub d_max: f64,
    pub d_crit: f64,
    pub p_close: f64,
    pub pass_d: bool,
    pub pass_p: bool,
    pub n_empirical: usize,
    pub n_synthetic: usize,
}

fn gof_rows(
    panel: &ReturnPanel,
    fits: &[FitRecord],
    opts: &GofOptions,
    seed: u64,
) -> Result<Vec<GofRow>> {
    let root = SeededStream::new(seed);
    fits.par_iter()
        .map(|f| {
            let omega = panel
                .omega(f.delay)
                .ok_or_else(|| Error::Config(format!("delay {} not in panel", f.delay)))?;
            let model = f.params()?;
            let mut stream = root.split(f.delay as u64);
            let g = goodness_of_fit(omega, &model, opts, &mut stream)?;
            Ok(GofRow {
                delay: f.delay,
                q: f.q,
                beta: f.beta,
                d_max: g.d_max,
                d_crit: g.d_crit,
                p_close: g.p_close,
                pass_d: g.pass_d,
                pass_p: g.pass_p,
                n_empirical: g.n_empirical,
                n_synthetic: g.n_synthetic,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BranchRow {
    pub delay: u32,
    pub q: f64,
    pub n_left: usize,
    pub beta_left: f64,
    pub stderr_left: f64,
    pub n_right: usize,
    pub beta_right: f64,
    pub stderr_right: f64,
}

fn branch_rows(panel: &ReturnPanel, delays: &[u32], q: f64) -> Result<Vec<BranchRow>> {
    delays
        .par_iter()
        .map(|&t| {
            let (l, r) = estimate_branches(&panel.sample_set(t)?, q)?;
            Ok(BranchRow {
                delay: t,
                q,
                n_left: l.n,
                beta_left: l.params.beta(),
                stderr_left: l.stderr_beta,
                n_right: r.n,
                beta_right: r.params.beta(),
                stderr_right: r.stderr_beta,
            })
        })
        .collect()
}

/// One bin of a binned density comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PdfBin {
    pub bin_lo: f64,
    pub bin_hi: f64,
    pub count: usize,
    pub expected_count: f64,
    pub empirical_density: f64,
    pub qgauss_density: f64,
    pub gaussian_density: f64,
}

/// Bin `omega` on log-spaced edges mirrored about zero, plus one central
/// bin, and compare with the bin-averaged densities of `model` and of the
/// Gaussian maximum-likelihood fit. Bins expecting fewer than five counts
/// under `model` are dropped. For plotting only.
pub fn pdf_compare(omega: &[f64], model: &QGaussianParams) -> Result<Vec<PdfBin>> {
    let s = SampleSet::new(omega.to_vec())?;
    let gauss = estimate_beta_fixed_q(&s, 1.0)?.params;
    let mut sorted = omega.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    let rms = (sorted.iter().map(|v| v * v).sum::<f64>() / n as f64).sqrt();
    let top = sorted[0].abs().max(sorted[n - 1].abs()) * (1.0 + 1e-12);
    let inner = 0.05 * rms;
    if !(top > inner) {
        return Err(Error::DegenerateSample("too little spread to bin".into()));
    }

    let ratio = (top / inner).ln() / PDF_BINS_PER_SIDE as f64;
    let pos: Vec<f64> = (0..=PDF_BINS_PER_SIDE)
        .map(|k| inner * (ratio * k as f64).exp())
        .collect();
    let mut edges: Vec<f64> = pos.iter().rev().map(|x| -x).collect();
    edges.extend_from_slice(&pos);

    let below = |x: f64| sorted.partition_point(|&v| v < x);
    let mut bins = Vec::new();
    for w in edges.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let width = hi - lo;
        let mass = model.cdf(hi) - model.cdf(lo);
        let expected = n as f64 * mass;
        if expected < PDF_MIN_EXPECTED {
            continue;
        }
        let count = below(hi) - below(lo);
        bins.push(PdfBin {
            bin_lo: lo,
            bin_hi: hi,
            count,
            expected_count: expected,
            empirical_density: count as f64 / (n as f64 * width),
            qgauss_density: mass / width,
            gaussian_density: (gauss.cdf(hi) - gauss.cdf(lo)) / width,
        });
    }
    Ok(bins)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiffusionSummary {
    pub lambda: f64,
    pub lambda_stderr: f64,
    pub intercept: f64,
    pub weighted: bool,
    pub superdiffusion_exponent: f64,
    pub b: f64,
    pub d: f64,
    pub tau: f64,
    pub b_at_lower_bound: bool,
}

impl DiffusionSummary {
    fn new(fit: &DiffusionFit, q: f64, weighted: bool) -> Self {
        Self {
            lambda: fit.lambda,
            lambda_stderr: fit.lambda_stderr,
            intercept: fit.intercept,
            weighted,
            superdiffusion_exponent: superdiffusion_exponent(q),
            b: fit.dd.b,
            d: fit.dd.d,
            tau: fit.dd.tau,
            b_at_lower_bound: fit.dd.b_at_lower_bound,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GofSummary {
    pub significance: f64,
    pub synthetic_factor: f64,
    pub restandardized: bool,
    pub seed: u64,
    pub delays: usize,
    pub passed_distance: usize,
    pub passed_closeness: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub schema_version: u32,
    pub rows: usize,
    pub first_date: NaiveDate,
    pub last_date: NaiveDate,
    pub deflated: bool,
    pub sigma1: f64,
    pub q_estimated: bool,
    pub q_hat: f64,
    pub stderr_q: Option<f64>,
    pub stderr_q_measured: Option<f64>,
    pub beta1: f64,
    pub stderr_beta1: f64,
    pub stderr_beta1_measured: Option<f64>,
    pub boundary_hit: BoundaryHit,
    pub log_likelihood: f64,
    pub samples_delay1: usize,
    pub tail_index: Option<f64>,
    pub diffusion: DiffusionSummary,
    pub gof: GofSummary,
}

/// Everything [`cmd_analyze`] computes.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisReport {
    pub summary: Summary,
    pub delay_one: FitRecord,
    pub curves: Vec<CurvePoint>,
    pub gof: Vec<GofRow>,
    pub pdf: Vec<(u32, Vec<PdfBin>)>,
    pub branches: Option<Vec<BranchRow>>,
}

fn delay_one_fit(panel: &ReturnPanel, q_mode: QMode) -> Result<FitRecord> {
    fit_one(panel, 1, q_mode).map_err(|e| e.at_stage("fit"))
}

fn diffusion_fit(fits: &[FitRecord], q: f64, weighted: bool) -> Result<DiffusionFit> {
    let series = BetaSeries::new(
        fits.iter().map(|f| f.delay).collect(),
        fits.iter().map(|f| f.beta).collect(),
        fits.iter().map(|f| f.stderr_beta).collect(),
    )?;
    DiffusionFit::fit(&series, q, weighted)
}

/// Compute the full report without writing anything.
pub fn run_analysis(cfg: &AnalysisConfig) -> Result<AnalysisReport> {
    cfg.validate()?;
    let Prepared { prices, panel } = prepare(cfg)?;
    let one = delay_one_fit(&panel, cfg.q_mode)?;
    let q = one.q;

    let delays = cfg.panel_delays();
    let fits = beta_curve(&panel, &delays, q, one.beta).map_err(|e| e.at_stage("beta"))?;
    let gof = gof_rows(&panel, &fits, &cfg.gof_options(), cfg.seed)
        .map_err(|e| e.at_stage("gof"))?;
    let dfit = diffusion_fit(&fits, q, cfg.weighted).map_err(|e| e.at_stage("diffusion"))?;

    let pdf = fits
        .iter()
        .filter(|f| cfg.pdf_delays.contains(&f.delay))
        .map(|f| {
            let omega = panel.omega(f.delay).expect("delay in panel");
            Ok((f.delay, pdf_compare(omega, &f.params()?)?))
        })
        .collect::<Result<Vec<_>>>()
        .map_err(|e| e.at_stage("pdf"))?;

    let branches = if cfg.branches {
        Some(branch_rows(&panel, &delays, q).map_err(|e| e.at_stage("branches"))?)
    } else {
        None
    };

    let summary = Summary {
        schema_version: SCHEMA_VERSION,
        rows: prices.len(),
        first_date: prices.dates()[0],
        last_date: prices.dates()[prices.len() - 1],
        deflated: prices.is_deflated(),
        sigma1: panel.sigma1(),
        q_estimated: cfg.q_mode == QMode::Estimate,
        q_hat: q,
        stderr_q: one.stderr_q,
        stderr_q_measured: one.stderr_q_measured,
        beta1: one.beta,
        stderr_beta1: one.stderr_beta,
        stderr_beta1_measured: one.stderr_beta_measured,
        boundary_hit: one.boundary_hit,
        log_likelihood: one.log_likelihood,
        samples_delay1: one.n,
        tail_index: tail_index(q).ok(),
        diffusion: DiffusionSummary::new(&dfit, q, cfg.weighted),
        gof: GofSummary {
            significance: cfg.gamma,
            synthetic_factor: cfg.syn_factor,
            restandardized: cfg.restandardize_synthetic,
            seed: cfg.seed,
            delays: gof.len(),
            passed_distance: gof.iter().filter(|g| g.pass_d).count(),
            passed_closeness: gof.iter().filter(|g| g.pass_p).count(),
        },
    };
    Ok(AnalysisReport {
        summary,
        delay_one: one,
        curves: dfit.curves,
        gof,
        pdf,
        branches,
    })
}

fn out_path(dir: &Path, name: &str) -> PathBuf {
    dir.join(name)
}

fn io_at(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).map_err(io_at(path))
}

fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    let csv_err = |e: csv::Error| Error::Io {
        path: path.to_path_buf(),
        source: std::io::Error::other(e.to_string()),
    };
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    for r in rows {
        w.serialize(r).map_err(csv_err)?;
    }
    w.flush().map_err(io_at(path))
}

fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(io_at(dir))
}

/// Write a report bundle; returns the files written.
pub fn write_report(report: &AnalysisReport, dir: &Path) -> Result<Vec<PathBuf>> {
    ensure_dir(dir)?;
    let mut files = Vec::new();
    let mut emit = |name: String| {
        let p = out_path(dir, &name);
        files.push(p.clone());
        p
    };
    write_json(&emit("summary.json".into()), &report.summary)?;
    write_csv(&emit("beta.csv".into()), &report.curves)?;
    write_csv(&emit("gof.csv".into()), &report.gof)?;
    for (t, bins) in &report.pdf {
        write_csv(&emit(format!("pdf_compare_{t}.csv")), bins)?;
    }
    if let Some(rows) = &report.branches {
        write_csv(&emit("branches.csv".into()), rows)?;
    }
    Ok(files)
}

/// Run the full workflow and write its outputs to `cfg.out_dir`.
pub fn cmd_analyze(cfg: &AnalysisConfig) -> Result<AnalysisReport> {
    let report = run_analysis(cfg)?;
    write_report(&report, &cfg.out_dir).map_err(|e| e.at_stage("write"))?;
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitReport {
    pub schema_version: u32,
    pub sigma1: f64,
    pub fits: Vec<FitRecord>,
}

/// Fit every requested delay independently (`q` estimated per delay in
/// estimate mode) and write `fit.json`, plus `branches.csv` when enabled.
pub fn cmd_fit(cfg: &AnalysisConfig) -> Result<FitReport> {
    cfg.validate()?;
    let Prepared { panel, .. } = prepare(cfg)?;
    let fits = cfg
        .delays
        .par_iter()
        .map(|&t| fit_one(&panel, t, cfg.q_mode))
        .collect::<Result<Vec<_>>>()
        .map_err(|e| e.at_stage("fit"))?;
    let report = FitReport {
        schema_version: SCHEMA_VERSION,
        sigma1: panel.sigma1(),
        fits,
    };
    let write = || -> Result<()> {
        ensure_dir(&cfg.out_dir)?;
        write_json(&out_path(&cfg.out_dir, "fit.json"), &report)?;
        if cfg.branches {
            let q = match cfg.q_mode {
                QMode::Fixed(q) => q,
                QMode::Estimate => delay_one_fit(&panel, QMode::Estimate)?.q,
            };
            let rows = branch_rows(&panel, &cfg.delays, q).map_err(|e| e.at_stage("branches"))?;
            write_csv(&out_path(&cfg.out_dir, "branches.csv"), &rows)?;
        }
        Ok(())
    };
    write()?;
    Ok(report)
}

/// Fit `q` at delay 1 and `β(t)` at that `q`, then test every delay.
/// Writes `gof.csv`.
pub fn cmd_gof(cfg: &AnalysisConfig) -> Result<Vec<GofRow>> {
    cfg.validate()?;
    let Prepared { panel, .. } = prepare(cfg)?;
    let one = delay_one_fit(&panel, cfg.q_mode)?;
    let fits = beta_curve(&panel, &cfg.delays, one.q, one.beta).map_err(|e| e.at_stage("beta"))?;
    let rows = gof_rows(&panel, &fits, &cfg.gof_options(), cfg.seed)
        .map_err(|e| e.at_stage("gof"))?;
    ensure_dir(&cfg.out_dir)?;
    write_csv(&out_path(&cfg.out_dir, "gof.csv"), &rows)?;
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiffusionReport {
    pub schema_version: u32,
    pub q: f64,
    pub beta1: f64,
    pub diffusion: DiffusionSummary,
}

/// Fit `β̂(t)` and both diffusion models. Writes `beta.csv` and
/// `diffusion.json`.
pub fn cmd_diffusion(cfg: &AnalysisConfig) -> Result<DiffusionReport> {
    cfg.validate()?;
    let Prepared { panel, .. } = prepare(cfg)?;
    let one = delay_one_fit(&panel, cfg.q_mode)?;
    let fits = beta_curve(&panel, &cfg.panel_delays(), one.q, one.beta)
        .map_err(|e| e.at_stage("beta"))?;
    let dfit = diffusion_fit(&fits, one.q, cfg.weighted).map_err(|e| e.at_stage("diffusion"))?;
    let report = DiffusionReport {
        schema_version: SCHEMA_VERSION,
        q: one.q,
        beta1: one.beta,
        diffusion: DiffusionSummary::new(&dfit, one.q, cfg.weighted),
    };
    ensure_dir(&cfg.out_dir)?;
    write_csv(&out_path(&cfg.out_dir, "beta.csv"), &dfit.curves)?;
    write_json(&out_path(&cfg.out_dir, "diffusion.json"), &report)?;
    Ok(report)
}

/// Settings for [`cmd_sample`].
#[derive(Debug, Clone)]
pub struct SampleConfig {
    pub q: f64,
    pub beta: f64,
    pub n: usize,
    pub seed: u64,
    /// Write a price walk (`date,close`) instead of raw deviates.
    pub walk: bool,
    pub start_date: NaiveDate,
    pub start_price: f64,
    pub out_dir: PathBuf,
}

impl SampleConfig {
    pub fn new(q: f64, beta: f64, n: usize, out_dir: impl Into<PathBuf>) -> Self {
        Self {
            q,
            beta,
            n,
            seed: 0,
            walk: false,
            start_date: NaiveDate::from_ymd_opt(1990, 1, 1).expect("valid date"),
            start_price: 100.0,
            out_dir: out_dir.into(),
        }
    }
}

/// `n` consecutive weekdays starting at or after `start`.
pub fn weekdays_from(start: NaiveDate, n: usize) -> Vec<NaiveDate> {
    start
        .iter_days()
        .filter(|d| !matches!(d.weekday(), Weekday::Sat | Weekday::Sun))
        .take(n)
        .collect()
}

/// Render a walk as `date,close` CSV text.
pub fn walk_csv(dates: &[NaiveDate], closes: &[f64]) -> String {
    let mut out = String::from("date,close\n");
    for (d, c) in dates.iter().zip(closes) {
        out.push_str(&format!("{d},{c}\n"));
    }
    out
}

/// Draw deviates (`samples.csv`) or an i.i.d.-increment price walk on
/// weekday dates (`walk.csv`). Returns the file written.
pub fn cmd_sample(cfg: &SampleConfig) -> Result<PathBuf> {
    if cfg.n == 0 {
        return Err(Error::Config("sample size must be positive".into()));
    }
    let p = QGaussianParams::new(cfg.q, cfg.beta).map_err(|e| Error::Config(e.to_string()))?;
    let mut stream = SeededStream::new(cfg.seed);
    ensure_dir(&cfg.out_dir)?;
    if cfg.walk {
        if !(cfg.start_price.is_finite() && cfg.start_price > 0.0) {
            return Err(Error::Config("start price must be positive".into()));
        }
        let closes = q_gaussian_walk(&p, cfg.n, cfg.start_price, &mut stream)?;
        let dates = weekdays_from(cfg.start_date, cfg.n);
        let path = out_path(&cfg.out_dir, "walk.csv");
        fs::write(&path, walk_csv(&dates, &closes)).map_err(io_at(&path))?;
        Ok(path)
    } else {
        let xs = sample_q_gaussian(&p, cfg.n, &mut stream)?;
        let mut text = String::from("value\n");
        for x in xs {
            text.push_str(&format!("{x}\n"));
        }
        let path = out_path(&cfg.out_dir, "samples.csv");
        fs::write(&path, text).map_err(io_at(&path))?;
        Ok(path)
    }
}
