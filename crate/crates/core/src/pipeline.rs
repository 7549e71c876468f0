//! Price and CPI ingestion, inflation adjustment, date slicing and the
//! standardized log-return panel
//!
//! ```text
//! y(t, t₀) = ln S(t₀ + t) - ln S(t₀)
//! Ω(t, t₀) = (y(t, t₀) - μ_t) / σ₁
//! ```
//!
//! where `μ_t` is the mean of the delay-`t` log returns and `σ₁` the
//! standard deviation of the one-row log returns. Delays count rows, not
//! calendar days.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use chrono::{Datelike, NaiveDate};
use log::warn;

use crate::error::{Error, Result};
use crate::estimation::SampleSet;

/// Daily closing prices.
#[derive(Debug, Clone, PartialEq)]
pub struct PriceSeries {
    dates: Vec<NaiveDate>,
    closes: Vec<f64>,
    deflated: bool,
}

impl PriceSeries {
    pub fn new(dates: Vec<NaiveDate>, closes: Vec<f64>) -> Result<Self> {
        if dates.len() != closes.len() {
            return Err(Error::InvalidSeries(format!(
                "{} dates but {} closes",
                dates.len(),
                closes.len()
            )));
        }
        if let Some(i) = closes.iter().position(|c| !(c.is_finite() && *c > 0.0)) {
            return Err(Error::InvalidSeries(format!(
                "row {i}: close {} is not a positive price",
                closes[i]
            )));
        }
        if let Some(i) = dates.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSeries(format!(
                "row {}: date {} does not follow {}",
                i + 1,
                dates[i + 1],
                dates[i]
            )));
        }
        Ok(Self {
            dates,
            closes,
            deflated: false,
        })
    }

    pub fn dates(&self) -> &[NaiveDate] {
        &self.dates
    }

    pub fn closes(&self) -> &[f64] {
        &self.closes
    }

    pub fn is_deflated(&self) -> bool {
        self.deflated
    }

    pub fn len(&self) -> usize {
        self.closes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.closes.is_empty()
    }
}

/// Calendar month, ordered chronologically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct YearMonth {
    pub year: i32,
    pub month: u32,
}

impl YearMonth {
    pub fn new(year: i32, month: u32) -> Result<Self> {
        if !(1..=12).contains(&month) {
            return Err(Error::domain(format!("month {month} out of range")));
        }
        Ok(Self { year, month })
    }

    pub fn of(date: NaiveDate) -> Self {
        Self {
            year: date.year(),
            month: date.month(),
        }
    }
}

impl FromStr for YearMonth {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (y, m) = s
            .split_once('-')
            .ok_or_else(|| format!("expected YYYY-MM, got {s:?}"))?;
        if y.len() != 4 || m.len() != 2 {
            return Err(format!("expected YYYY-MM, got {s:?}"));
        }
        let year = y.parse().map_err(|_| format!("bad year in {s:?}"))?;
        let month = m.parse().map_err(|_| format!("bad month in {s:?}"))?;
        YearMonth::new(year, month).map_err(|e| e.to_string())
    }
}

impl fmt::Display for YearMonth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04}-{:02}", self.year, self.month)
    }
}

/// Monthly consumer price index.
#[derive(Debug, Clone, PartialEq)]
pub struct CpiSeries {
    index: BTreeMap<YearMonth, f64>,
}

impl CpiSeries {
    pub fn new(months: Vec<YearMonth>, index: Vec<f64>) -> Result<Self> {
        if months.len() != index.len() {
            return Err(Error::InvalidSeries("CPI columns differ in length".into()));
        }
        if let Some(i) = months.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSeries(format!(
                "CPI month {} does not follow {}",
                months[i + 1],
                months[i]
            )));
        }
        if let Some(i) = index.iter().position(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::InvalidSeries(format!(
                "CPI for {} is not positive",
                months[i]
            )));
        }
        Ok(Self {
            index: months.into_iter().zip(index).collect(),
        })
    }

    pub fn get(&self, m: YearMonth) -> Option<f64> {
        self.index.get(&m).copied()
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Records of a strict two-column CSV with the given header, as
/// `(line number, first, second)`.
fn read_two_columns(
    path: &Path,
    expected: [&str; 2],
) -> Result<Vec<(usize, String, String)>> {
    let file = std::fs::File::open(path).map_err(io_err(path))?;
    read_two_columns_from(file, path, expected)
}

fn read_two_columns_from<R: std::io::Read>(
    reader: R,
    path: &Path,
    expected: [&str; 2],
) -> Result<Vec<(usize, String, String)>> {
    let parse_err = |line: usize, msg: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        msg,
    };
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let header = rdr.headers().map_err(|e| parse_err(1, e.to_string()))?;
    if header.len() != 2 || header.get(0) != Some(expected[0]) || header.get(1) != Some(expected[1])
    {
        return Err(parse_err(
            1,
            format!(
                "expected header `{},{}`, got `{}`",
                expected[0],
                expected[1],
                header.iter().collect::<Vec<_>>().join(",")
            ),
        ));
    }
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            parse_err(line, e.to_string())
        })?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        if rec.len() != 2 {
            return Err(parse_err(line, format!("expected 2 fields, got {}", rec.len())));
        }
        rows.push((line, rec[0].to_string(), rec[1].to_string()));
    }
    Ok(rows)
}

fn parse_price_rows(rows: Vec<(usize, String, String)>, path: &Path) -> Result<PriceSeries> {
    let mut dates = Vec::with_capacity(rows.len());
    let mut closes = Vec::with_capacity(rows.len());
    for (line, d, c) in rows {
        let date = NaiveDate::parse_from_str(&d, "%Y-%m-%d").map_err(|e| Error::Parse {
            path: path.to_path_buf(),
            line,
            msg: format!("bad date {d:?}: {e}"),
        })?;
        let close: f64 = c.parse().map_err(|_| Error::Parse {
            path: path.to_path_buf(),
            line,
            msg: format!("bad close {c:?}"),
        })?;
        let invalid = |msg: String| Error::Validation {
            path: path.to_path_buf(),
            line,
            msg,
        };
        if !(close.is_finite() && close > 0.0) {
            return Err(invalid(format!("close {close} is not a positive price")));
        }
        if let Some(&prev) = dates.last() {
            if date == prev {
                return Err(invalid(format!("duplicate date {date}")));
            }
            if date < prev {
                return Err(invalid(format!("date {date} is earlier than {prev}")));
            }
        }
        dates.push(date);
        closes.push(close);
    }
    PriceSeries::new(dates, closes)
}

/// Load a `date,close` CSV with ISO-8601 dates.
pub fn load_price_series(path: impl AsRef<Path>) -> Result<PriceSeries> {
    let path = path.as_ref();
    parse_price_rows(read_two_columns(path, ["date", "close"])?, path)
}

/// As [`load_price_series`] from any reader; `label` names the source in
/// error messages.
pub fn read_price_series<R: std::io::Read>(reader: R, label: &str) -> Result<PriceSeries> {
    let path = PathBuf::from(label);
    parse_price_rows(read_two_columns_from(reader, &path, ["date", "close"])?, &path)
}

fn parse_cpi_rows(rows: Vec<(usize, String, String)>, path: &Path) -> Result<CpiSeries> {
    let mut months = Vec::with_capacity(rows.len());
    let mut values = Vec::with_capacity(rows.len());
    for (line, m, v) in rows {
        let month: YearMonth = m.parse().map_err(|msg| Error::Parse {
            path: path.to_path_buf(),
            line,
            msg,
        })?;
        let value: f64 = v.parse().map_err(|_| Error::Parse {
            path: path.to_path_buf(),
            line,
            msg: format!("bad index {v:?}"),
        })?;
        let invalid = |msg: String| Error::Validation {
            path: path.to_path_buf(),
            line,
            msg,
        };
        if !(value.is_finite() && value > 0.0) {
            return Err(invalid(format!("index {value} is not positive")));
        }
        if months.last().is_some_and(|&prev| month <= prev) {
            return Err(invalid(format!("month {month} out of order or repeated")));
        }
        months.push(month);
        values.push(value);
    }
    CpiSeries::new(months, values)
}

/// Load a `month,index` CSV with `YYYY-MM` months.
pub fn load_cpi_series(path: impl AsRef<Path>) -> Result<CpiSeries> {
    let path = path.as_ref();
    parse_cpi_rows(read_two_columns(path, ["month", "index"])?, path)
}

pub fn read_cpi_series<R: std::io::Read>(reader: R, label: &str) -> Result<CpiSeries> {
    let path = PathBuf::from(label);
    parse_cpi_rows(read_two_columns_from(reader, &path, ["month", "index"])?, &path)
}

/// Express prices in `base_month` money: `close · CPI(base) / CPI(month)`,
/// with each month's CPI applied to every trading day in it.
pub fn cpi_detrend(p: &PriceSeries, c: &CpiSeries, base_month: YearMonth) -> Result<PriceSeries> {
    let base = c
        .get(base_month)
        .ok_or_else(|| Error::CpiCoverage(format!("base month {base_month}")))?;
    let closes = p
        .dates
        .iter()
        .zip(&p.closes)
        .map(|(&d, &close)| {
            let m = YearMonth::of(d);
            c.get(m)
                .map(|cpi| close * base / cpi)
                .ok_or_else(|| Error::CpiCoverage(format!("{m} (price date {d})")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PriceSeries {
        dates: p.dates.clone(),
        closes,
        deflated: true,
    })
}

/// Named analysis windows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionPreset {
    /// 1991-11-11 to 2002-07-29, the dot-com era.
    Region1,
    /// 2002-07-30 to 2013-09-04, including the 2008 crash.
    Region2,
}

impl RegionPreset {
    pub fn bounds(self) -> (NaiveDate, NaiveDate) {
        let d = |y, m, d| NaiveDate::from_ymd_opt(y, m, d).expect("valid preset date");
        match self {
            RegionPreset::Region1 => (d(1991, 11, 11), d(2002, 7, 29)),
            RegionPreset::Region2 => (d(2002, 7, 30), d(2013, 9, 4)),
        }
    }
}

/// Inclusive date window `[start, end]`. Bounds outside the series are
/// clamped to it with a warning; an empty result is an error.
pub fn slice_region(p: &PriceSeries, start: NaiveDate, end: NaiveDate) -> Result<PriceSeries> {
    let empty = || Error::EmptySlice {
        start: start.to_string(),
        end: end.to_string(),
    };
    if start > end || p.is_empty() {
        return Err(empty());
    }
    let (first, last) = (p.dates[0], p.dates[p.len() - 1]);
    if start < first {
        warn!("region start {start} precedes series start {first}; clamping");
    }
    if end > last {
        warn!("region end {end} follows series end {last}; clamping");
    }
    let lo = p.dates.partition_point(|&d| d < start);
    let hi = p.dates.partition_point(|&d| d <= end);
    if lo >= hi {
        return Err(empty());
    }
    Ok(PriceSeries {
        dates: p.dates[lo..hi].to_vec(),
        closes: p.closes[lo..hi].to_vec(),
        deflated: p.deflated,
    })
}

pub fn slice_preset(p: &PriceSeries, preset: RegionPreset) -> Result<PriceSeries> {
    let (s, e) = preset.bounds();
    slice_region(p, s, e)
}

/// How start times `t₀` are spaced for each delay.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StartSpacing {
    /// Every row is a start time (`L - t` samples at delay `t`).
    #[default]
    Overlapping,
    /// Start times step by the delay itself.
    NonOverlapping,
}

/// Standardized log returns for each delay.
#[derive(Debug, Clone, PartialEq)]
pub struct ReturnPanel {
    omega: BTreeMap<u32, Vec<f64>>,
    mu: BTreeMap<u32, f64>,
    sigma1: f64,
}

impl ReturnPanel {
    pub fn sigma1(&self) -> f64 {
        self.sigma1
    }

    pub fn delays(&self) -> impl Iterator<Item = u32> + '_ {
        self.omega.keys().copied()
    }

    /// Standardized returns at `delay`.
    pub fn omega(&self, delay: u32) -> Option<&[f64]> {
        self.omega.get(&delay).map(Vec::as_slice)
    }

    /// Mean raw log return `μ_t` at `delay`.
    pub fn mu(&self, delay: u32) -> Option<f64> {
        self.mu.get(&delay).copied()
    }

    pub fn sample_set(&self, delay: u32) -> Result<SampleSet> {
        let v = self
            .omega(delay)
            .ok_or_else(|| Error::Config(format!("delay {delay} not in panel")))?;
        SampleSet::new(v.to_vec())
    }
}

fn log_returns(log_prices: &[f64], delay: usize, spacing: StartSpacing) -> Vec<f64> {
    let step = match spacing {
        StartSpacing::Overlapping => 1,
        StartSpacing::NonOverlapping => delay,
    };
    (0..log_prices.len() - delay)
        .step_by(step)
        .map(|t0| log_prices[t0 + delay] - log_prices[t0])
        .collect()
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

/// Build `Ω(t, ·)` for every requested delay with overlapping start times.
pub fn build_return_panel(p: &PriceSeries, delays: &[u32]) -> Result<ReturnPanel> {
    build_return_panel_with(p, delays, StartSpacing::Overlapping)
}

pub fn build_return_panel_with(
    p: &PriceSeries,
    delays: &[u32],
    spacing: StartSpacing,
) -> Result<ReturnPanel> {
    if delays.is_empty() {
        return Err(Error::Config("no delays requested".into()));
    }
    if delays.contains(&0) {
        return Err(Error::Config("delays must be >= 1".into()));
    }
    let max_delay = *delays.iter().max().expect("nonempty") as usize;
    if p.len() <= max_delay {
        return Err(Error::DegenerateSeries(format!(
            "{} rows cannot support delay {max_delay}",
            p.len()
        )));
    }
    let log_prices: Vec<f64> = p.closes.iter().map(|c| c.ln()).collect();

    let y1 = log_returns(&log_prices, 1, StartSpacing::Overlapping);
    let mu1 = mean(&y1);
    let sigma1 = (y1.iter().map(|y| (y - mu1).powi(2)).sum::<f64>() / y1.len() as f64).sqrt();
    // a pure exponential still leaves rounding noise in its log returns
    let scale = y1.iter().map(|y| y.abs()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    if !(sigma1 > 1e-12 * scale) {
        return Err(Error::DegenerateSeries(
            "one-row log returns have zero spread (sigma1 = 0)".into(),
        ));
    }

    let mut omega = BTreeMap::new();
    let mut mus = BTreeMap::new();
    for &t in delays {
        let y = log_returns(&log_prices, t as usize, spacing);
        let mu = mean(&y);
        let mut w: Vec<f64> = y.iter().map(|v| (v - mu) / sigma1).collect();
        // remove the rounding residue so the sample mean is zero to ~1e-16
        let resid = mean(&w);
        w.iter_mut().for_each(|v| *v -= resid);
        omega.insert(t, w);
        mus.insert(t, mu);
    }
    Ok(ReturnPanel {
        omega,
        mu: mus,
        sigma1,
    })
}
