//! Median KS distance to the semicircle along the Gold ladder
//! (31,8) → (127,20) → (511,35) → (2047,50), with per-repeat artifacts.
//!
//! cargo run --release --example semicircle_ladder [out-dir]

use codeword_spectra::experiment::{
    run_spectrum, semicircle_ladder, to_json, CodeSelector, Command, ExperimentConfig, DEFAULT_SEED,
};

fn main() -> codeword_spectra::Result<()> {
    let out = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "target/semicircle_ladder".to_string());
    let ladder = semicircle_ladder(DEFAULT_SEED, 10)?;
    for rung in &ladder.rungs {
        println!(
            "n = {:4}, p = {:2}: median KS {:.4}, eigenvalues in [{:.3}, {:.3}]",
            rung.n, rung.p, rung.median_ks, rung.lambda_min, rung.lambda_max
        );
    }
    println!(
        "strictly decreasing: {}; final median {:.4} (gate {})",
        ladder.strictly_decreasing, ladder.final_median_ks, ladder.final_gate
    );

    std::fs::create_dir_all(&out)?;
    std::fs::write(format!("{out}/ladder.json"), to_json(&ladder)?)?;
    // histograms and SVGs for the largest rung
    let config = ExperimentConfig::new(Command::Spectrum, CodeSelector::Gold { m: 11 })
        .with_p(50)
        .with_out(format!("{out}/gold11_p50"));
    let run = run_spectrum(&config)?;
    println!(
        "wrote {} artifacts under {out}/gold11_p50",
        run.artifacts.len()
    );
    Ok(())
}
