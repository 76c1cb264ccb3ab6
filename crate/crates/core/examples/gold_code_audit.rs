//! Audit the shipped code families: dual distance, weights and coherence.
//!
//! cargo run --release --example gold_code_audit

use codeword_spectra::codes::{make_even_weight, make_gold, make_rm1, DEFAULT_EXHAUSTIVE_LIMIT};
use codeword_spectra::{code_report, LinearCode};

fn main() -> codeword_spectra::Result<()> {
    let codes: Vec<LinearCode> = vec![
        make_gold(5)?,
        make_gold(7)?,
        make_gold(9)?,
        make_gold(11)?,
        make_rm1(3)?,
        make_rm1(5)?,
        make_even_weight(5)?,
    ];
    println!(
        "{:<22} {:>6} {:>4} {:>6} {:>10} {:>8} {:>11}  weights",
        "code", "n", "k", "d⊥", "coherence", "c", "source"
    );
    for code in &codes {
        let r = code_report(code, DEFAULT_EXHAUSTIVE_LIMIT)?;
        let weights: Vec<String> = r.weight_set.iter().map(usize::to_string).collect();
        println!(
            "{:<22} {:>6} {:>4} {:>6} {:>10.1} {:>8.4} {:>11}  {{{}}}",
            r.label,
            r.n,
            r.k,
            r.dual_distance_status.to_string(),
            r.coherence,
            r.coherence_constant,
            format!("{:?}", r.weight_source).to_lowercase(),
            weights.join(",")
        );
        for note in &r.notes {
            println!("{:<22} note: {note}", "");
        }
    }

    // a custom [6,3] code given in the generator file format
    let custom = LinearCode::from_text(
        "2 6 3\n1 0 0 1 1 0\n0 1 0 1 0 1\n0 0 1 0 1 1\n",
        "custom [6,3]",
    )?;
    let r = code_report(&custom, DEFAULT_EXHAUSTIVE_LIMIT)?;
    println!("\n{}", serde_json::to_string_pretty(&r)?);
    Ok(())
}
