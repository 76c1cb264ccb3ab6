//! Arithmetic in GF(2^m) and the trace map behind the Gold construction.
//!
//! cargo run --example field_arithmetic

use codeword_spectra::field::{is_primitive_poly, primitive_modulus, ExtField, PrimeField};

fn main() -> codeword_spectra::Result<()> {
    let f = PrimeField::new(7)?;
    println!(
        "F_7: 3·5 = {}, 3⁻¹ = {:?}, 3^6 = {}",
        f.mul(3, 5),
        f.inv(3),
        f.pow(3, 6)
    );

    for m in [5u32, 7, 9, 11] {
        let modulus = primitive_modulus(m)?;
        println!("m = {m:2}: primitive modulus {modulus:#b}");
    }
    // x^5 + x^4 + x^3 + x^2 + x + 1 = (x + 1)(x^2 + x + 1)^2 is reducible
    println!(
        "x^5+x^4+x^3+x^2+x+1 primitive: {}",
        is_primitive_poly(0b111111, 5)?
    );

    let gf = ExtField::with_default_modulus(5)?;
    let a = gf.alpha();
    let mut order = 1;
    let mut x = a;
    while x != gf.one() {
        x = x.mul(&a)?;
        order += 1;
    }
    println!("GF(32): α has multiplicative order {order}");
    println!("α^4·α = {:#07b}", a.pow(4).mul(&a)?.bits);

    let ones = gf.elements().filter(|e| e.trace().value == 1).count();
    println!("elements with trace 1: {ones} of {}", gf.size());
    Ok(())
}
