//! The expectation of ω_γ over maps into the code equals W_γ; restricting to
//! injective maps moves it by an amount that shrinks as the code grows.
//!
//! cargo run --release --example character_sums

use codeword_spectra::codes::make_even_weight;
use codeword_spectra::paths::{count_w, enumerate_closed_classes, expect_omega, MapMode};

fn main() -> codeword_spectra::Result<()> {
    for n in [5usize, 7] {
        let code = make_even_weight(n)?;
        println!("{}", code.label());
        for l in 2..=4 {
            for g in enumerate_closed_classes(l, true)? {
                let all = expect_omega(&code, &g, MapMode::AllMaps)?;
                let inj = expect_omega(&code, &g, MapMode::Injective)?;
                println!(
                    "  {g:<12} W = {:4}  E_all = {:9.4}{:+.1e}i  E_inj = {:9.4}  gap = {:.4}",
                    count_w(&code, &g)?,
                    all.re,
                    all.im,
                    inj.re,
                    (all - inj).norm()
                );
            }
        }
    }
    Ok(())
}
