//! Densities, distribution functions and moments of the reference laws.
//!
//! cargo run --example spectral_laws

use codeword_spectra::laws::{mp_moment, sc_moment};
use codeword_spectra::LawSpec;

fn main() -> codeword_spectra::Result<()> {
    let laws = [
        LawSpec::Semicircle,
        LawSpec::marchenko_pastur(0.1)?,
        LawSpec::marchenko_pastur(0.5)?,
        LawSpec::marchenko_pastur(0.9)?,
    ];
    for law in &laws {
        let (a, b) = law.support();
        println!("{} on [{a:.4}, {b:.4}]", law.name());
        for i in 0..=4 {
            let x = a + (b - a) * i as f64 / 4.0;
            println!(
                "  x = {x:7.4}: pdf {:.6}, cdf {:.6}",
                law.pdf(x),
                law.cdf(x)
            );
        }
    }
    println!(
        "\n{:>2} {:>8} {:>12} {:>12}",
        "ℓ", "SC", "MP(0.5)", "MP(0.9)"
    );
    for l in 0..=8 {
        println!(
            "{l:>2} {:>8} {:>12.6} {:>12.6}",
            sc_moment(l),
            mp_moment(l, 0.5)?,
            mp_moment(l, 0.9)?
        );
    }
    Ok(())
}
