//! `sample`: draw uniform random braid words into a byte-stable file, one
//! word per line, optionally with each word's plat cap-outcome probability.

use std::path::PathBuf;

use clap::Args;
use rayon::prelude::*;

use platjones::braid::random_braid_indexed;
use platjones::{design_length, format_braid_word, BraidWord, PathRep};

use crate::output::RunContext;
use crate::{CliError, CliResult};

#[derive(Args)]
pub struct SampleArgs {
    /// Even strand count (plats of n = strands/2 cap pairs).
    #[arg(long)]
    pub strands: usize,
    /// Word length, or "auto" for the design-length formula with
    /// --epsilon/--lambda/--t.
    #[arg(long, default_value = "auto")]
    pub length: String,
    /// Accuracy target for --length auto.
    #[arg(long, default_value_t = 0.1)]
    pub epsilon: f64,
    /// Length multiplier for --length auto.
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    /// Design order for --length auto.
    #[arg(long, default_value_t = 2)]
    pub t: u32,
    /// How many words to draw.
    #[arg(long)]
    pub count: usize,
    /// Base seed; word i is drawn from the independent stream (seed, i), so
    /// the file is identical for any worker count.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file, one word per line; a `<name>.manifest.json` sibling
    /// records the run.
    #[arg(long)]
    pub out: PathBuf,
    /// Also write per-word cap-outcome probabilities |<cap|rho(b)|cap>|^2 as
    /// CSV here.
    #[arg(long)]
    pub probs: Option<PathBuf>,
    /// Root order used for --probs amplitudes.
    #[arg(long, default_value_t = 5)]
    pub k: u32,
}

pub fn run(args: SampleArgs) -> CliResult {
    let length: u64 = if args.length == "auto" {
        design_length(args.strands / 2, args.epsilon, args.t, args.lambda, 2)?
    } else {
        args.length.parse().map_err(|_| {
            CliError::usage(format!(
                "--length must be a nonnegative integer or \"auto\", got {:?}",
                args.length
            ))
        })?
    };

    let words: Vec<BraidWord> = (0..args.count)
        .map(|i| random_braid_indexed(args.strands, length as usize, args.seed, i as u64))
        .collect::<Result<_, _>>()?;

    let mut ctx = RunContext::new(
        "sample",
        serde_json::json!({
            "strands": args.strands,
            "length": length,
            "count": args.count,
            "seed": args.seed,
            "k": args.k,
            "probs": args.probs.is_some(),
        }),
        Some(args.seed),
        Some(args.out.as_path()),
    );

    let mut text = String::new();
    for word in &words {
        text.push_str(&format_braid_word(word));
        text.push('\n');
    }
    ctx.write(&args.out, text.as_bytes())?;
    println!(
        "wrote {} words of length {length} in B_{} to {}",
        words.len(),
        args.strands,
        args.out.display()
    );

    if let Some(probs_path) = &args.probs {
        let rep = PathRep::new(args.strands / 2, args.k)?;
        let probabilities: Vec<f64> = words
            .par_iter()
            .map(|word| rep.amplitude(word).map(|amp| amp.norm_sqr()))
            .collect::<Result<_, _>>()?;

        let mut csv = String::new();
        if let Some(name) = ctx.manifest_name() {
            csv.push_str(&format!("# manifest: {name}\n"));
        }
        csv.push_str("index,word,cap_probability\n");
        for (i, (word, p)) in words.iter().zip(&probabilities).enumerate() {
            csv.push_str(&format!("{i},{:?},{p}\n", format_braid_word(word)));
        }
        ctx.write(probs_path, csv.as_bytes())?;
        println!("wrote {}", probs_path.display());

        if !probabilities.is_empty() {
            let n = probabilities.len() as f64;
            let mean = probabilities.iter().sum::<f64>() / n;
            let var = if probabilities.len() > 1 {
                probabilities.iter().map(|p| (p - mean).powi(2)).sum::<f64>() / (n - 1.0)
            } else {
                0.0
            };
            println!(
                "cap-outcome probability at k = {}: mean {:.6} ± {:.6} over {} words",
                args.k,
                mean,
                (var / n).sqrt(),
                probabilities.len()
            );
        }
    }
    ctx.finish()
}
