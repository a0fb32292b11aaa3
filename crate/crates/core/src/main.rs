//! Command-line front end for the estimation campaigns.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use wiener_linf::experiments::{
    lemma1_campaign, oracle_campaign, ratio_campaign, run_campaign, write_campaign, write_lemma1,
    write_oracle, ExperimentConfig, Lemma1Config, OracleCampaignConfig,
};
use wiener_linf::{Error, Result};

#[derive(Parser)]
#[command(name = "wiener-linf", version)]
#[command(about = "Worst-case estimation error of Wiener filters on mixture signals in AWGN")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a Monte Carlo estimation campaign from a config file.
    Simulate(CommonArgs),
    /// Normalized maxima of i.i.d. Gaussian sequences across dimensions.
    Lemma1(CommonArgs),
    /// Wiener-to-genie worst-case risk ratios across dimensions.
    Ratio(CommonArgs),
    /// Small-N comparison of the sampled min-ℓ∞ oracle against the
    /// Wiener filter and the posterior mean.
    Oracle(OracleArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// JSON config file; unknown keys are rejected.
    #[arg(long)]
    config: PathBuf,
    /// Override the config seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Override the config trial count.
    #[arg(long)]
    trials: Option<usize>,
    /// Override the config output path stem (writes <out>.csv, <out>.json).
    #[arg(long)]
    out: Option<String>,
    /// Permit dimensions up to 10^7 instead of 10^6.
    #[arg(long)]
    allow_large: bool,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Override the number of posterior samples.
    #[arg(long)]
    posterior_samples: Option<usize>,
    /// Override the subgradient iteration count.
    #[arg(long)]
    iterations: Option<usize>,
    /// Override the step scale (step at iteration t is step_scale/√t).
    #[arg(long)]
    step_scale: Option<f64>,
}

fn read_config(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })
}

fn output_base(cli_out: &Option<String>, cfg_out: &Option<String>) -> Result<PathBuf> {
    cli_out
        .clone()
        .or_else(|| cfg_out.clone())
        .map(PathBuf::from)
        .ok_or_else(|| {
            Error::Config("no output path: set output_path in the config or pass --out".into())
        })
}

fn run_simulate(args: &CommonArgs, ratio_mode: bool) -> Result<()> {
    let mut cfg = ExperimentConfig::from_json(&read_config(&args.config)?)?;
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(trials) = args.trials {
        cfg.trials = trials;
    }
    if args.allow_large {
        cfg.allow_large = true;
    }
    if args.out.is_some() {
        cfg.output_path = args.out.clone();
    }
    let base = output_base(&args.out, &cfg.output_path)?;

    let output = if ratio_mode {
        ratio_campaign(&cfg)?
    } else {
        run_campaign(&cfg)?
    };
    let (csv_path, json_path) = write_campaign(&output, &base)?;

    for per_n in &output.summary.per_n {
        for cell in &per_n.estimators {
            println!(
                "n={:<9} {:<15} linf {:.6} ± {:.6}  normalized {:.6} ± {:.6}  localization {:.3}",
                per_n.n,
                cell.estimator.name(),
                cell.linf_mean,
                cell.linf_se,
                cell.normalized_linf_mean,
                cell.normalized_linf_se,
                cell.localization_frequency,
            );
        }
        if let (Some(ratio), Some(se)) = (per_n.wiener_to_genie_ratio, per_n.wiener_to_genie_se) {
            println!("n={:<9} wiener/genie ratio {ratio:.6} ± {se:.6}", per_n.n);
        }
    }
    println!("wrote {} and {}", csv_path.display(), json_path.display());
    Ok(())
}

fn run_lemma1(args: &CommonArgs) -> Result<()> {
    let mut cfg = Lemma1Config::from_json(&read_config(&args.config)?)?;
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(trials) = args.trials {
        cfg.trials = trials;
    }
    if args.allow_large {
        cfg.allow_large = true;
    }
    if args.out.is_some() {
        cfg.output_path = args.out.clone();
    }
    let base = output_base(&args.out, &cfg.output_path)?;

    let output = lemma1_campaign(&cfg)?;
    let (csv_path, json_path) = write_lemma1(&output, &cfg, &base)?;
    for cell in &output.cells {
        println!(
            "n={:<9} normalized max {:.6} ± {:.6} over {} trials",
            cell.n, cell.mean, cell.se, cell.trials
        );
    }
    println!("wrote {} and {}", csv_path.display(), json_path.display());
    Ok(())
}

fn run_oracle(args: &OracleArgs) -> Result<()> {
    let mut cfg = OracleCampaignConfig::from_json(&read_config(&args.common.config)?)?;
    if let Some(seed) = args.common.seed {
        cfg.seed = seed;
    }
    if let Some(trials) = args.common.trials {
        cfg.trials = trials;
    }
    if let Some(samples) = args.posterior_samples {
        cfg.posterior_samples = samples;
    }
    if let Some(iterations) = args.iterations {
        cfg.iterations = iterations;
    }
    if let Some(step_scale) = args.step_scale {
        cfg.step_scale = step_scale;
    }
    if args.common.out.is_some() {
        cfg.output_path = args.common.out.clone();
    }
    let base = output_base(&args.common.out, &cfg.output_path)?;

    let output = oracle_campaign(&cfg)?;
    let (csv_path, json_path) = write_oracle(&output, &cfg, &base)?;
    for cell in &output.cells {
        println!(
            "{:<15} linf {:.6} ± {:.6} over {} trials",
            cell.estimator, cell.linf_mean, cell.linf_se, cell.trials
        );
    }
    println!("wrote {} and {}", csv_path.display(), json_path.display());
    Ok(())
}

fn run() -> Result<()> {
    let cli = Cli::parse();
    match &cli.command {
        Command::Simulate(args) => run_simulate(args, false),
        Command::Lemma1(args) => run_lemma1(args),
        Command::Ratio(args) => run_simulate(args, true),
        Command::Oracle(args) => run_oracle(args),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Io(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}
