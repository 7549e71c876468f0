use std::path::PathBuf;
use std::process::ExitCode;

use chrono::NaiveDate;
use clap::{Args, Parser, Subcommand};

use qgauss::analysis::{
    cmd_analyze, cmd_diffusion, cmd_fit, cmd_gof, cmd_sample, parse_delays, AnalysisConfig,
    QMode, Region, SampleConfig,
};
use qgauss::pipeline::{StartSpacing, YearMonth};
use qgauss::{Error, Result};

#[derive(Parser)]
#[command(name = "qgauss", version, about = "q-Gaussian analysis of price return series")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Full workflow: fits, goodness of fit, diffusion, plot data.
    Analyze(Common),
    /// Fit each delay independently.
    Fit(Common),
    /// Goodness of fit for every delay.
    Gof(Common),
    /// beta(t) and the diffusion model fits.
    Diffusion(Common),
    /// Draw q-Gaussian deviates or a price walk.
    Sample(SampleArgs),
}

#[derive(Args)]
struct Common {
    /// Price CSV with header `date,close`.
    #[arg(long)]
    input: PathBuf,
    /// Monthly CPI CSV with header `month,index`.
    #[arg(long)]
    cpi: Option<PathBuf>,
    /// CPI base month (YYYY-MM); defaults to the last price's month.
    #[arg(long)]
    cpi_base: Option<YearMonth>,
    /// `region1`, `region2` or `YYYY-MM-DD:YYYY-MM-DD`.
    #[arg(long)]
    region: Option<Region>,
    /// `a..b` or a comma-separated list.
    #[arg(long, default_value = "1..60")]
    delays: String,
    /// `estimate` or `fixed:<q>`.
    #[arg(long, default_value = "estimate")]
    q: QMode,
    #[arg(long, default_value_t = 0.05)]
    gamma: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Synthetic sample size relative to the empirical one.
    #[arg(long, default_value_t = 1.0)]
    syn_factor: f64,
    #[arg(long)]
    branches: bool,
    /// Weight the power-law fit by the inverse variance of log beta.
    #[arg(long)]
    weighted: bool,
    #[arg(long)]
    restandardize_synthetic: bool,
    /// Step start times by the delay instead of by one row.
    #[arg(long)]
    non_overlapping: bool,
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

impl Common {
    fn into_config(self) -> Result<AnalysisConfig> {
        let delays = parse_delays(&self.delays).map_err(Error::Config)?;
        let mut c = AnalysisConfig::new(self.input, self.out);
        c.cpi = self.cpi;
        c.cpi_base = self.cpi_base;
        c.region = self.region;
        c.delays = delays;
        c.q_mode = self.q;
        c.gamma = self.gamma;
        c.seed = self.seed;
        c.syn_factor = self.syn_factor;
        c.branches = self.branches;
        c.weighted = self.weighted;
        c.restandardize_synthetic = self.restandardize_synthetic;
        if self.non_overlapping {
            c.spacing = StartSpacing::NonOverlapping;
        }
        Ok(c)
    }
}

#[derive(Args)]
struct SampleArgs {
    /// `fixed:<q>`.
    #[arg(long)]
    q: QMode,
    #[arg(long, default_value_t = 1.0)]
    beta: f64,
    #[arg(long, default_value_t = 10_000)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Emit a `date,close` price walk instead of deviates.
    #[arg(long)]
    walk: bool,
    #[arg(long, default_value = "1990-01-01")]
    start_date: NaiveDate,
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

fn run(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::Analyze(a) => {
            let cfg = a.into_config()?;
            let r = cmd_analyze(&cfg)?;
            let s = &r.summary;
            println!(
                "q = {:.4}  beta1 = {:.4}  lambda = {:.4}  tau = {:.2}  -> {}",
                s.q_hat,
                s.beta1,
                s.diffusion.lambda,
                s.diffusion.tau,
                cfg.out_dir.display()
            );
        }
        Cmd::Fit(a) => {
            let r = cmd_fit(&a.into_config()?)?;
            for f in &r.fits {
                println!("t = {:>3}  q = {:.4}  beta = {:.6}", f.delay, f.q, f.beta);
            }
        }
        Cmd::Gof(a) => {
            for g in cmd_gof(&a.into_config()?)? {
                println!(
                    "t = {:>3}  D = {:.4} (crit {:.4})  P = {:.3}",
                    g.delay, g.d_max, g.d_crit, g.p_close
                );
            }
        }
        Cmd::Diffusion(a) => {
            let r = cmd_diffusion(&a.into_config()?)?;
            let d = &r.diffusion;
            println!(
                "lambda = {:.4} +/- {:.4}  b = {:.5}  D = {:.5}  tau = {:.2}",
                d.lambda, d.lambda_stderr, d.b, d.d, d.tau
            );
        }
        Cmd::Sample(a) => {
            let QMode::Fixed(q) = a.q else {
                return Err(Error::Config("sample needs --q fixed:<q>".into()));
            };
            let mut c = SampleConfig::new(q, a.beta, a.n, a.out);
            c.seed = a.seed;
            c.walk = a.walk;
            c.start_date = a.start_date;
            println!("{}", cmd_sample(&c)?.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.class().exit_code() as u8)
        }
    }
}
