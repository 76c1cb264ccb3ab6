//! Trace moments A_ℓ = (1/p) Tr G_I^ℓ against the Catalan numbers, and the
//! variance of A_2 across repeats as the code grows at fixed p.
//!
//! cargo run --release --example moment_convergence

use codeword_spectra::experiment::{run_moments, CodeSelector, Command, ExperimentConfig};

fn main() -> codeword_spectra::Result<()> {
    let config = ExperimentConfig::new(Command::Moments, CodeSelector::Gold { m: 11 })
        .with_p(50)
        .with_repeats(32)
        .with_lmax(8);
    let run = run_moments(&config)?;
    println!(
        "{} p = {}, c = {:.4}",
        run.code.label, run.p, run.coherence_constant
    );
    println!(
        "{:>3} {:>10} {:>10} {:>8} {:>10} {:>8}",
        "ℓ", "mean", "variance", "target", "gate", "within"
    );
    for row in &run.rows {
        println!(
            "{:>3} {:>10.4} {:>10.5} {:>8} {:>10.4} {:>8}",
            row.ell, row.mean, row.variance, row.sc_moment, row.gate, row.within_gate
        );
    }

    println!("\nvariance of A_2 at p = 8:");
    for m in [5u32, 7, 9, 11] {
        let config = ExperimentConfig::new(Command::Moments, CodeSelector::Gold { m })
            .with_p(8)
            .with_repeats(32)
            .with_lmax(2);
        let run = run_moments(&config)?;
        println!("  n = {:4}: {:.5}", run.code.n, run.rows[1].variance);
    }
    Ok(())
}
