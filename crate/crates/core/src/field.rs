//! Prime fields `F_q` and binary extension fields `GF(2^m)`.
//!
//! Code alphabets are prime fields. The binary extension fields only appear
//! inside the Gold construction, where codeword coordinates are traces of
//! field elements.

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest admissible prime modulus (exclusive).
pub const MAX_PRIME: u64 = 1 << 31;

/// Largest supported extension degree for `GF(2^m)`.
pub const MAX_EXT_DEGREE: u32 = 32;

/// Primitive moduli shipped for the Gold code lengths used in experiments.
const SHIPPED_MODULI: &[(u32, u64)] = &[
    (5, 0b10_0101),         // x^5 + x^2 + 1
    (7, 0b1000_0011),       // x^7 + x + 1
    (9, 0b10_0001_0001),    // x^9 + x^4 + 1
    (11, 0b1000_0000_0101), // x^11 + x^2 + 1
];

fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The prime field `F_q`, `q < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PrimeField {
    q: u64,
}

/// An element of a prime field, stored as its canonical residue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PrimeFieldElement {
    pub value: u64,
    pub q: u64,
}

impl PrimeField {
    pub fn new(q: u64) -> Result<Self> {
        if q >= MAX_PRIME {
            return Err(Error::param(format!("field size {q} exceeds 2^31")));
        }
        if !is_prime(q) {
            return Err(Error::param(format!("field size {q} is not prime")));
        }
        Ok(Self { q })
    }

    pub fn binary() -> Self {
        Self { q: 2 }
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn element(&self, value: u64) -> PrimeFieldElement {
        PrimeFieldElement {
            value: value % self.q,
            q: self.q,
        }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.q
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.q - b) % self.q
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        (self.q - a % self.q) % self.q
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        (a * b) % self.q
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.q;
        a %= self.q;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via Fermat; `None` for zero.
    pub fn inv(&self, a: u64) -> Option<u64> {
        if a.is_multiple_of(self.q) {
            None
        } else {
            Some(self.pow(a, self.q - 2))
        }
    }
}

impl PrimeFieldElement {
    fn check(&self, other: &Self) -> Result<()> {
        if self.q != other.q {
            return Err(Error::param(format!(
                "mismatched prime fields F_{} and F_{}",
                self.q, other.q
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            value: (self.value + other.value) % self.q,
            q: self.q,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            value: (self.value * other.value) % self.q,
            q: self.q,
        })
    }
}

/// Degree of a nonzero polynomial over `F_2` stored as a bit mask.
fn poly_degree(f: u64) -> Option<u32> {
    if f == 0 {
        None
    } else {
        Some(63 - f.leading_zeros())
    }
}

/// `a · b mod modulus` in `F_2[x]`; `a`, `b` must already be reduced.
#[inline]
fn mulmod(mut a: u64, mut b: u64, modulus: u64, m: u32) -> u64 {
    let top = 1u64 << m;
    let mut acc = 0u64;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a & top != 0 {
            a ^= modulus;
        }
    }
    acc
}

fn powmod(mut base: u64, mut e: u64, modulus: u64, m: u32) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, base, modulus, m);
        }
        base = mulmod(base, base, modulus, m);
        e >>= 1;
    }
    acc
}

fn prime_factors(mut v: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= v {
        if v.is_multiple_of(d) {
            out.push(d);
            while v.is_multiple_of(d) {
                v /= d;
            }
        }
        d += 1;
    }
    if v > 1 {
        out.push(v);
    }
    out
}

/// True iff `x` generates the multiplicative group of `F_2[x]/(modulus)`,
/// i.e. has order exactly `2^m − 1`.
///
/// An element of order `2^m − 1` forces the quotient ring to be a field, so a
/// `true` answer also certifies irreducibility.
pub fn is_primitive_poly(modulus: u64, m: u32) -> Result<bool> {
    if !(2..=MAX_EXT_DEGREE).contains(&m) {
        return Err(Error::param(format!(
            "extension degree {m} outside [2, {MAX_EXT_DEGREE}]"
        )));
    }
    if poly_degree(modulus) != Some(m) {
        return Err(Error::param(format!(
            "modulus {modulus:#b} does not have degree {m}"
        )));
    }
    if modulus & 1 == 0 {
        // x divides the modulus, so x is not a unit
        return Ok(false);
    }
    let order = (1u64 << m) - 1;
    let x = 0b10 % modulus;
    if powmod(x, order, modulus, m) != 1 {
        return Ok(false);
    }
    Ok(prime_factors(order)
        .into_iter()
        .all(|r| powmod(x, order / r, modulus, m) != 1))
}

/// The shipped primitive modulus for `m`, or the numerically smallest
/// primitive polynomial of degree `m` when none is shipped.
pub fn primitive_modulus(m: u32) -> Result<u64> {
    if let Some(&(_, f)) = SHIPPED_MODULI.iter().find(|(d, _)| *d == m) {
        return Ok(f);
    }
    if !(2..=MAX_EXT_DEGREE).contains(&m) {
        return Err(Error::param(format!(
            "extension degree {m} outside [2, {MAX_EXT_DEGREE}]"
        )));
    }
    let lead = 1u64 << m;
    (0..lead)
        .map(|low| lead | low | 1)
        .find(|&f| is_primitive_poly(f, m).unwrap_or(false))
        .ok_or_else(|| Error::param(format!("no primitive polynomial of degree {m}")))
}

/// `GF(2^m)` in polynomial basis modulo an irreducible polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ExtField {
    m: u32,
    modulus: u64,
}

/// An element of `GF(2^m)`; carries its field parameters so mixed-field
/// arithmetic is rejected at run time.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ExtFieldElement {
    pub bits: u64,
    pub m: u32,
    pub modulus: u64,
}

impl ExtField {
    /// Field defined by a primitive modulus. Non-primitive moduli are rejected,
    /// which also rules out reducible ones.
    pub fn new(modulus: u64, m: u32) -> Result<Self> {
        if !is_primitive_poly(modulus, m)? {
            return Err(Error::param(format!(
                "modulus {modulus:#b} is not primitive of degree {m}"
            )));
        }
        Ok(Self { m, modulus })
    }

    /// Field over the shipped (validated) primitive modulus for `m`.
    pub fn with_default_modulus(m: u32) -> Result<Self> {
        Self::new(primitive_modulus(m)?, m)
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Number of elements, `2^m`.
    pub fn size(&self) -> u64 {
        1u64 << self.m
    }

    pub fn element(&self, bits: u64) -> Result<ExtFieldElement> {
        if bits >> self.m != 0 {
            return Err(Error::param(format!(
                "{bits:#b} has more than {} bits",
                self.m
            )));
        }
        Ok(ExtFieldElement {
            bits,
            m: self.m,
            modulus: self.modulus,
        })
    }

    pub fn zero(&self) -> ExtFieldElement {
        ExtFieldElement {
            bits: 0,
            m: self.m,
            modulus: self.modulus,
        }
    }

    pub fn one(&self) -> ExtFieldElement {
        ExtFieldElement {
            bits: 1,
            m: self.m,
            modulus: self.modulus,
        }
    }

    /// The class of `x`, a primitive element for the moduli accepted by [`ExtField::new`].
    pub fn alpha(&self) -> ExtFieldElement {
        ExtFieldElement {
            bits: 0b10,
            m: self.m,
            modulus: self.modulus,
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = ExtFieldElement> + '_ {
        (0..self.size()).map(move |bits| ExtFieldElement {
            bits,
            m: self.m,
            modulus: self.modulus,
        })
    }
}

impl ExtFieldElement {
    fn check(&self, other: &Self) -> Result<()> {
        if self.m != other.m || self.modulus != other.modulus {
            return Err(Error::param(format!(
                "mismatched extension fields (m={}, f={:#b}) and (m={}, f={:#b})",
                self.m, self.modulus, other.m, other.modulus
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            bits: self.bits ^ other.bits,
            ..*self
        })
    }

    /// Carry-less product reduced by the modulus.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            bits: mulmod(self.bits, other.bits, self.modulus, self.m),
            ..*self
        })
    }

    pub fn square(&self) -> Self {
        Self {
            bits: mulmod(self.bits, self.bits, self.modulus, self.m),
            ..*self
        }
    }

    pub fn pow(&self, e: u64) -> Self {
        Self {
            bits: powmod(self.bits, e, self.modulus, self.m),
            ..*self
        }
    }

    /// Inverse as `a^(2^m − 2)`; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.bits == 0 {
            None
        } else {
            Some(self.pow((1u64 << self.m) - 2))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// Absolute trace `a + a^2 + a^4 + … + a^(2^(m−1))`, an element of `F_2`.
    pub fn trace(&self) -> PrimeFieldElement {
        let mut acc = 0u64;
        let mut cur = self.bits;
        for _ in 0..self.m {
            acc ^= cur;
            cur = mulmod(cur, cur, self.modulus, self.m);
        }
        debug_assert!(acc <= 1, "trace must land in the prime subfield");
        PrimeFieldElement { value: acc, q: 2 }
    }
}
