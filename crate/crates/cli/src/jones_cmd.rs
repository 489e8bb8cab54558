//! `jones`: evaluate one braid's plat closure along the exact bracket oracle,
//! the unitary path-model representation, or both.

use std::path::PathBuf;

use clap::{Args, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use platjones::jones::cross_check_with;
use platjones::laurent::evaluate_at;
use platjones::skein::{jones_polynomial_with_budget, DEFAULT_ORACLE_BUDGET};
use platjones::{
    format_braid_word, jones_via_path_model, parse_braid_word, plat_components, writhe,
    LaurentPolynomial, PathRep, RootOfUnity,
};

use crate::output::{to_json_bytes, RunContext};
use crate::{CliError, CliResult};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Exact Kauffman-bracket state sum, evaluated at the root.
    Oracle,
    /// Unitary path-model representation (value only, no polynomial).
    Path,
    /// Both routes plus their relative error (contract: <= 1e-9).
    Both,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Oracle => "oracle",
            Method::Path => "path",
            Method::Both => "both",
        }
    }
}

#[derive(Args)]
pub struct JonesArgs {
    /// Braid word: signed generator indices separated by whitespace
    /// (e.g. "1 -2 1"); "" is the empty word.
    #[arg(long, allow_hyphen_values = true)]
    pub braid: String,
    /// Even strand count of the plat diagram.
    #[arg(long)]
    pub strands: usize,
    /// Root order: values are taken at omega = exp(2*pi*i/k), k >= 3.
    #[arg(long)]
    pub k: u32,
    #[arg(long, value_enum, default_value_t = Method::Both)]
    pub method: Method,
    /// Crossing limit for the exact oracle
    /// (default: PLATJONES_ORACLE_BUDGET or 24).
    #[arg(long)]
    pub budget: Option<usize>,
    /// Write the report as JSON; a `<name>.manifest.json` sibling records the
    /// run.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Serialize)]
struct JonesReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    manifest: Option<String>,
    braid: String,
    strands: usize,
    k: u32,
    method: &'static str,
    writhe: i64,
    components: usize,
    universal_regime: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    polynomial: Option<LaurentPolynomial>,
    #[serde(skip_serializing_if = "Option::is_none")]
    via_oracle: Option<Complex64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    via_path_model: Option<Complex64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    abs_error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rel_error: Option<f64>,
}

/// Flag wins over the PLATJONES_ORACLE_BUDGET environment variable, which
/// wins over the built-in default.
pub fn resolve_budget(flag: Option<usize>) -> CliResult<usize> {
    if let Some(budget) = flag {
        return Ok(budget);
    }
    match std::env::var("PLATJONES_ORACLE_BUDGET") {
        Ok(raw) => raw.trim().parse().map_err(|_| {
            CliError::config(format!(
                "PLATJONES_ORACLE_BUDGET = {raw:?} is not a nonnegative integer"
            ))
        }),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_ORACLE_BUDGET),
        Err(err) => Err(CliError::config(format!("PLATJONES_ORACLE_BUDGET: {err}"))),
    }
}

fn fmt_complex(z: Complex64) -> String {
    format!("{:+.12}{:+.12}i", z.re, z.im)
}

pub fn run(args: JonesArgs) -> CliResult {
    let word = parse_braid_word(&args.braid, args.strands)?;
    let root = RootOfUnity::new(args.k)?;
    let budget = resolve_budget(args.budget)?;
    let braid_text = format_braid_word(&word);

    println!(
        "braid {braid_text:?} in B_{} | writhe {} | plat components {} | omega = exp(2*pi*i/{})",
        args.strands,
        writhe(&word),
        plat_components(&word),
        args.k
    );
    if !root.universal_regime() {
        println!(
            "note: k = {} is a lattice root; the evaluation stays exact, but only k = 5 or k >= 7 give dense (universal) representations",
            args.k
        );
    }

    let mut report = JonesReport {
        manifest: None,
        braid: braid_text,
        strands: args.strands,
        k: args.k,
        method: args.method.name(),
        writhe: writhe(&word),
        components: plat_components(&word),
        universal_regime: root.universal_regime(),
        polynomial: None,
        via_oracle: None,
        via_path_model: None,
        abs_error: None,
        rel_error: None,
    };

    match args.method {
        Method::Oracle => {
            let poly = jones_polynomial_with_budget(&word, budget)?;
            let value = evaluate_at(&poly, args.k)?;
            println!("jones polynomial: {poly}");
            println!("oracle value:     {}", fmt_complex(value));
            report.via_oracle = Some(value);
            report.polynomial = Some(poly);
        }
        Method::Path => {
            let value = jones_via_path_model(&word, args.k)?;
            println!("path-model value: {}", fmt_complex(value));
            report.via_path_model = Some(value);
        }
        Method::Both => {
            let rep = PathRep::new(args.strands / 2, args.k)?;
            let comparison = cross_check_with(&rep, &word, budget)?;
            let poly = jones_polynomial_with_budget(&word, budget)?;
            println!("jones polynomial: {poly}");
            println!("oracle value:     {}", fmt_complex(comparison.via_oracle));
            println!("path-model value: {}", fmt_complex(comparison.via_path_model));
            println!("rel error:        {:.3e}", comparison.rel_error);
            report.via_oracle = Some(comparison.via_oracle);
            report.via_path_model = Some(comparison.via_path_model);
            report.abs_error = Some(comparison.abs_error);
            report.rel_error = Some(comparison.rel_error);
            report.polynomial = Some(poly);
        }
    }

    if let Some(out) = &args.out {
        let mut ctx = RunContext::new(
            "jones",
            serde_json::json!({
                "braid": report.braid.clone(),
                "strands": args.strands,
                "k": args.k,
                "method": report.method,
                "budget": budget,
            }),
            None,
            Some(out.as_path()),
        );
        report.manifest = ctx.manifest_name();
        ctx.write(out, &to_json_bytes(&report)?)?;
        ctx.finish()?;
        println!("wrote {}", out.display());
    }

    // Contract: when both routes ran they must agree.
    if let Some(rel) = report.rel_error {
        if rel > 1e-9 {
            return Err(CliError::contract(format!(
                "oracle and path-model values disagree: rel error {rel:.3e} > 1e-9"
            )));
        }
    }
    Ok(())
}
