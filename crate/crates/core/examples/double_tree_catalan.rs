//! Closed paths up to relabeling, double trees, and the solution counts W_γ.
//!
//! cargo run --release --example double_tree_catalan

use codeword_spectra::codes::make_even_weight;
use codeword_spectra::laws::catalan;
use codeword_spectra::paths::{
    count_double_tree_classes, count_w, enumerate_closed_classes, paths_audit,
};

fn main() -> codeword_spectra::Result<()> {
    for l in (2..=10).step_by(2) {
        let classes = enumerate_closed_classes(l, true)?;
        println!(
            "ℓ = {l:2}: {:6} simple classes, {:3} double trees (Catalan {})",
            classes.len(),
            count_double_tree_classes(l)?,
            catalan(l as u32 / 2)
        );
    }

    let code = make_even_weight(5)?;
    println!("\nW_γ on {} for simple classes of length 4:", code.label());
    for g in enumerate_closed_classes(4, true)? {
        let v = g.vertex_count();
        println!(
            "  {g:<12} v = {v}  double tree = {:<5}  W = {:4}  n^(ℓ−v+1) = {}",
            g.is_double_tree(),
            count_w(&code, &g)?,
            (code.n() as u64).pow((g.len() + 1 - v) as u32)
        );
    }

    let audit = paths_audit(&code, 4)?;
    println!("\n{}", serde_json::to_string_pretty(&audit.checks)?);
    Ok(())
}
