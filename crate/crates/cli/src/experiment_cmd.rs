//! `experiment`: the four random-ensemble probes. Each echoes its full
//! configuration into a JSON report (single results) and its sweep table into
//! CSV, both atomically and byte-stable across reruns and worker counts.

use std::path::PathBuf;

use clap::{Args, Subcommand, ValueEnum};
use serde::Serialize;

use platjones::experiments::{
    amplitude_ensemble, anticoncentration_fraction, calibrate_lambda, estimate_design_moments,
    paley_zygmund_check, BetaVector, CalibrationReport, MomentOperator,
};
use platjones::ExperimentConfig;

use crate::output::{to_json_bytes, RunContext};
use crate::{CliError, CliResult};

#[derive(Clone, Copy, ValueEnum)]
pub enum BetaArg {
    /// The distinguished cap basis state.
    Cap,
    /// A fixed random unit vector drawn from the run seed.
    SeededRandom,
}

impl From<BetaArg> for BetaVector {
    fn from(arg: BetaArg) -> Self {
        match arg {
            BetaArg::Cap => BetaVector::Cap,
            BetaArg::SeededRandom => BetaVector::SeededRandom,
        }
    }
}

#[derive(Args)]
pub struct ConfigArgs {
    /// Cap pairs; braids live in B_{2n}.
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// Root order.
    #[arg(long, default_value_t = 5)]
    pub k: u32,
    /// Design order t: moment orders 1..=t are reported.
    #[arg(long, default_value_t = 2)]
    pub t: u32,
    /// Design accuracy target in (0, 1).
    #[arg(long, default_value_t = 0.1)]
    pub epsilon: f64,
    /// Anti-concentration threshold parameter in (0, 1 - epsilon).
    #[arg(long, default_value_t = 0.5)]
    pub gamma: f64,
    /// Length multiplier; at t = 2 the braid length is
    /// ceil(lambda * n * (n + ln(1/epsilon))).
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    /// Monte-Carlo sample count.
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    /// Base seed for every random draw in the run.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Reference state in the sampled amplitude <cap|rho(b)|beta>.
    #[arg(long, value_enum, default_value_t = BetaArg::SeededRandom)]
    pub beta: BetaArg,
    /// Write the JSON report here; a `<name>.manifest.json` sibling records
    /// the run.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write the sweep table as CSV here.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

impl ConfigArgs {
    fn config(&self) -> ExperimentConfig {
        ExperimentConfig {
            n: self.n,
            k: self.k,
            t: self.t,
            epsilon: self.epsilon,
            gamma: self.gamma,
            lambda: self.lambda,
            samples: self.samples,
            seed: self.seed,
        }
    }
}

#[derive(Subcommand)]
pub enum ExperimentKind {
    /// Monte-Carlo moments of |<cap|rho(b)|beta>|^2 against the Haar values
    /// 1/binom(k_moment + d - 1, d - 1).
    Moments(MomentsArgs),
    /// Fraction of output probabilities above gamma/d against the bound
    /// (1 - epsilon - gamma)^2 / (2(1 + epsilon)).
    Anticoncentration(AnticoncentrationArgs),
    /// Exact moment-operator gap by braid length, plus lambda calibration.
    Gap(GapArgs),
    /// Paley-Zygmund tail check on the sampled output probabilities.
    Pz(PzArgs),
}

#[derive(Args)]
pub struct MomentsArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
}

#[derive(Args)]
pub struct AnticoncentrationArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    /// Comma-separated gamma sweep; defaults to the single --gamma.
    #[arg(long, value_delimiter = ',')]
    pub gammas: Vec<f64>,
}

#[derive(Args)]
pub struct PzArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    /// Comma-separated theta sweep for the tail check.
    #[arg(long, value_delimiter = ',', default_value = "0.25,0.5,0.75")]
    pub thetas: Vec<f64>,
}

#[derive(Args)]
pub struct GapArgs {
    /// Cap pairs; the operator averages over B_{2n} generators.
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// Root order.
    #[arg(long, default_value_t = 5)]
    pub k: u32,
    /// Design order (1 or 2).
    #[arg(long, default_value_t = 2)]
    pub t: u32,
    /// Largest braid length reported; rows cover 0..=length.
    #[arg(long, visible_alias = "L", default_value_t = 0)]
    pub length: u64,
    /// Accuracy target for the calibration section.
    #[arg(long, default_value_t = 0.1)]
    pub epsilon: f64,
    /// Write the JSON report here; a `<name>.manifest.json` sibling records
    /// the run.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write the (length, gap) table as CSV here.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

pub fn run(kind: ExperimentKind) -> CliResult {
    match kind {
        ExperimentKind::Moments(args) => run_moments(args),
        ExperimentKind::Anticoncentration(args) => run_anticoncentration(args),
        ExperimentKind::Gap(args) => run_gap(args),
        ExperimentKind::Pz(args) => run_pz(args),
    }
}

#[derive(Serialize)]
struct ExperimentDocument<R: Serialize> {
    #[serde(skip_serializing_if = "Option::is_none")]
    manifest: Option<String>,
    command: String,
    config: ExperimentConfig,
    braid_length: u64,
    beta: BetaVector,
    results: Vec<R>,
}

/// Writes the JSON document and/or CSV table, then the manifest; the manifest
/// anchors to whichever output comes first.
#[allow(clippy::too_many_arguments)]
fn emit<R: Serialize>(
    command: &str,
    cfg: &ExperimentConfig,
    braid_length: u64,
    beta: BetaVector,
    results: Vec<R>,
    csv_header: &str,
    csv_rows: &[String],
    out: Option<&PathBuf>,
    csv: Option<&PathBuf>,
) -> CliResult {
    let primary = out.or(csv).map(PathBuf::as_path);
    let mut ctx = RunContext::new(
        command,
        serde_json::json!({
            "config": cfg,
            "braid_length": braid_length,
            "beta": beta,
        }),
        Some(cfg.seed),
        primary,
    );
    let manifest = ctx.manifest_name();
    if let Some(path) = out {
        let doc = ExperimentDocument {
            manifest: manifest.clone(),
            command: command.to_string(),
            config: cfg.clone(),
            braid_length,
            beta,
            results,
        };
        ctx.write(path, &to_json_bytes(&doc)?)?;
        println!("wrote {}", path.display());
    }
    if let Some(path) = csv {
        let mut text = String::new();
        if let Some(name) = &manifest {
            text.push_str(&format!("# manifest: {name}\n"));
        }
        text.push_str(csv_header);
        text.push('\n');
        for row in csv_rows {
            text.push_str(row);
            text.push('\n');
        }
        ctx.write(path, text.as_bytes())?;
        println!("wrote {}", path.display());
    }
    ctx.finish()
}

fn run_moments(args: MomentsArgs) -> CliResult {
    let cfg = args.config.config();
    let beta = BetaVector::from(args.config.beta);
    let braid_length = cfg.braid_length()?;
    let reports = estimate_design_moments(&cfg, beta)?;
    for r in &reports {
        println!(
            "k_moment {}: empirical {:.6} vs haar {:.6} (ratio {:.4}, stderr {:.3e}, N = {})",
            r.k_moment, r.empirical, r.haar_value, r.ratio, r.stderr, r.n_samples
        );
    }
    let rows: Vec<String> = reports
        .iter()
        .map(|r| format!("{},{},{},{},{}", r.k_moment, r.empirical, r.haar_value, r.ratio, r.stderr))
        .collect();
    emit(
        "experiment moments",
        &cfg,
        braid_length,
        beta,
        reports,
        "k_moment,empirical,haar_value,ratio,stderr",
        &rows,
        args.config.out.as_ref(),
        args.config.csv.as_ref(),
    )
}

fn run_anticoncentration(args: AnticoncentrationArgs) -> CliResult {
    let base = args.config.config();
    let beta = BetaVector::from(args.config.beta);
    let braid_length = base.braid_length()?;
    let gammas = if args.gammas.is_empty() { vec![base.gamma] } else { args.gammas };

    let mut reports = Vec::with_capacity(gammas.len());
    for gamma in gammas {
        let cfg = ExperimentConfig { gamma, ..base.clone() };
        let report = anticoncentration_fraction(&cfg, beta)?;
        println!(
            "gamma {:.4}: fraction {:.4} above threshold {:.4} vs bound {:.4} (slack {:+.4}, stderr {:.3e})",
            report.gamma,
            report.empirical_fraction,
            report.threshold,
            report.bound,
            report.slack,
            report.stderr
        );
        reports.push(report);
    }

    let rows: Vec<String> = reports
        .iter()
        .map(|r| format!("{},{},{},{}", r.gamma, r.bound, r.empirical_fraction, r.stderr))
        .collect();
    let violation = reports
        .iter()
        .find(|r| r.slack < -3.0 * r.stderr)
        .map(|r| {
            format!(
                "anticoncentration bound violated at gamma {}: fraction {:.4} < bound {:.4} - 3*stderr",
                r.gamma, r.empirical_fraction, r.bound
            )
        });
    emit(
        "experiment anticoncentration",
        &base,
        braid_length,
        beta,
        reports,
        "gamma,bound,empirical,stderr",
        &rows,
        args.config.out.as_ref(),
        args.config.csv.as_ref(),
    )?;
    match violation {
        Some(message) => Err(CliError::contract(message)),
        None => Ok(()),
    }
}

fn run_pz(args: PzArgs) -> CliResult {
    let cfg = args.config.config();
    let beta = BetaVector::from(args.config.beta);
    cfg.validate()?;
    let braid_length = cfg.braid_length()?;
    let probs =
        amplitude_ensemble(cfg.n, cfg.k, braid_length as usize, cfg.samples, cfg.seed, beta)?;

    let mut reports = Vec::with_capacity(args.thetas.len());
    for &theta in &args.thetas {
        let report = paley_zygmund_check(&probs, theta)?;
        println!(
            "theta {:.4}: Pr[Z > theta*mean] = {:.4} vs bound {:.4} (slack {:+.4}, stderr {:.3e})",
            report.theta, report.empirical_probability, report.bound, report.slack, report.stderr
        );
        reports.push(report);
    }

    let rows: Vec<String> = reports
        .iter()
        .map(|r| format!("{},{},{},{}", r.theta, r.bound, r.empirical_probability, r.stderr))
        .collect();
    let violation = reports
        .iter()
        .find(|r| r.slack < -3.0 * r.stderr)
        .map(|r| {
            format!(
                "Paley-Zygmund bound violated at theta {}: Pr {:.4} < bound {:.4} - 3*stderr",
                r.theta, r.empirical_probability, r.bound
            )
        });
    emit(
        "experiment pz",
        &cfg,
        braid_length,
        beta,
        reports,
        "theta,bound,empirical,stderr",
        &rows,
        args.config.out.as_ref(),
        args.config.csv.as_ref(),
    )?;
    match violation {
        Some(message) => Err(CliError::contract(message)),
        None => Ok(()),
    }
}

#[derive(Serialize)]
struct GapRow {
    length: u64,
    gap: f64,
}

#[derive(Serialize)]
struct GapDocument {
    #[serde(skip_serializing_if = "Option::is_none")]
    manifest: Option<String>,
    command: String,
    n: usize,
    k: u32,
    t: u32,
    dim: usize,
    mu_star: f64,
    epsilon: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    calibration: Option<CalibrationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    calibration_note: Option<String>,
    results: Vec<GapRow>,
}

fn run_gap(args: GapArgs) -> CliResult {
    let op = MomentOperator::new(args.n, args.k, args.t)?;
    let mu_star = op.subleading_norm();
    println!(
        "n = {}, k = {}, t = {}: rep dim {}, subleading norm mu* = {:.12}",
        args.n,
        args.k,
        args.t,
        op.dim(),
        mu_star
    );
    let rows: Vec<GapRow> =
        (0..=args.length).map(|length| GapRow { length, gap: op.gap(length) }).collect();
    for row in &rows {
        println!("length {}: gap {:.6e}", row.length, row.gap);
    }
    let (calibration, calibration_note) = match calibrate_lambda(args.n, args.k, args.epsilon) {
        Ok(report) => {
            println!(
                "calibration at epsilon {}: lambda {}, length {}, gap {:.4e}",
                args.epsilon, report.lambda, report.length, report.gap_at_length
            );
            (Some(report), None)
        }
        Err(err) => {
            println!("calibration unavailable: {err}");
            (None, Some(err.to_string()))
        }
    };

    let primary = args.out.as_deref().or(args.csv.as_deref());
    let mut ctx = RunContext::new(
        "experiment gap",
        serde_json::json!({
            "n": args.n,
            "k": args.k,
            "t": args.t,
            "length": args.length,
            "epsilon": args.epsilon,
        }),
        None,
        primary,
    );
    let manifest = ctx.manifest_name();
    if let Some(path) = &args.out {
        let doc = GapDocument {
            manifest: manifest.clone(),
            command: "experiment gap".to_string(),
            n: args.n,
            k: args.k,
            t: args.t,
            dim: op.dim(),
            mu_star,
            epsilon: args.epsilon,
            calibration,
            calibration_note,
            results: rows.iter().map(|r| GapRow { length: r.length, gap: r.gap }).collect(),
        };
        ctx.write(path, &to_json_bytes(&doc)?)?;
        println!("wrote {}", path.display());
    }
    if let Some(path) = &args.csv {
        let mut text = String::new();
        if let Some(name) = &manifest {
            text.push_str(&format!("# manifest: {name}\n"));
        }
        text.push_str("length,gap\n");
        for row in &rows {
            text.push_str(&format!("{},{}\n", row.length, row.gap));
        }
        ctx.write(path, text.as_bytes())?;
        println!("wrote {}", path.display());
    }
    ctx.finish()
}
