//! Gram matrices of independently drawn codewords against Marchenko–Pastur:
//! a Gold code (d⊥ = 5) next to a first-order Reed–Muller code (d⊥ = 4).
//!
//! cargo run --release --example marchenko_pastur_contrast [out-dir]

use codeword_spectra::experiment::{run_mp, CodeSelector, Command, ExperimentConfig};

fn main() -> codeword_spectra::Result<()> {
    let out = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "target/marchenko_pastur".to_string());
    for y in [0.1, 0.5, 0.9] {
        for (name, sel) in [
            ("gold5", CodeSelector::Gold { m: 5 }),
            ("rm1_5", CodeSelector::Rm1 { m: 5 }),
        ] {
            let config = ExperimentConfig::new(Command::Mp, sel)
                .with_y(y)
                .with_out(format!("{out}/{name}_y{y}"));
            let run = run_mp(&config)?;
            let (a, b) = run.law.support();
            println!(
                "{:<18} y = {y}: p = {:2}, support [{a:.3}, {b:.3}], median KS {:.4}",
                run.code.label, run.p, run.median_ks
            );
        }
    }
    // larger Gold codes approach the law
    for m in [7u32, 9] {
        let config = ExperimentConfig::new(Command::Mp, CodeSelector::Gold { m }).with_y(0.5);
        let run = run_mp(&config)?;
        println!(
            "{:<18} y = 0.5: p = {:3}, median KS {:.4}",
            run.code.label, run.p, run.median_ks
        );
    }
    Ok(())
}
