//! Exact coefficient arithmetic: arbitrary-precision rationals and prime fields.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Descriptor of the coefficient field of a ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldKind {
    /// The rational numbers.
    Q,
    /// The prime field with `p` elements.
    Fp(u64),
}

impl FieldKind {
    pub fn validate(&self) -> Result<()> {
        match self {
            FieldKind::Q => Ok(()),
            FieldKind::Fp(p) => {
                if is_prime(*p) {
                    Ok(())
                } else {
                    Err(Error::invalid(format!("{p} is not prime")))
                }
            }
        }
    }

    pub fn zero(&self) -> FieldElement {
        match self {
            FieldKind::Q => FieldElement::Rat(BigRational::zero()),
            FieldKind::Fp(p) => FieldElement::Mod { value: 0, modulus: *p },
        }
    }

    pub fn one(&self) -> FieldElement {
        match self {
            FieldKind::Q => FieldElement::Rat(BigRational::one()),
            FieldKind::Fp(p) => FieldElement::Mod { value: 1 % *p, modulus: *p },
        }
    }

    pub fn from_integer(&self, n: i64) -> FieldElement {
        match self {
            FieldKind::Q => FieldElement::Rat(BigRational::from(BigInt::from(n))),
            FieldKind::Fp(p) => {
                let m = n.rem_euclid(*p as i64) as u64;
                FieldElement::Mod { value: m, modulus: *p }
            }
        }
    }

    /// `num/den` as a field element; in `Fp` the denominator is inverted.
    pub fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<FieldElement> {
        if den.is_zero() {
            return Err(Error::invalid("zero denominator in coefficient"));
        }
        match self {
            FieldKind::Q => Ok(FieldElement::Rat(BigRational::new(num.clone(), den.clone()))),
            FieldKind::Fp(p) => {
                let reduce = |x: &BigInt| -> u64 {
                    let m = x % BigInt::from(*p);
                    let m = if m.is_negative() { m + BigInt::from(*p) } else { m };
                    u64::try_from(m).expect("reduced residue fits u64")
                };
                let n = reduce(num);
                let d = reduce(den);
                if d == 0 {
                    return Err(Error::invalid(format!(
                        "denominator {den} vanishes modulo {p}"
                    )));
                }
                let inv = mod_inverse(d, *p);
                Ok(FieldElement::Mod { value: mul_mod(n, inv, *p), modulus: *p })
            }
        }
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Q => write!(f, "Q"),
            FieldKind::Fp(p) => write!(f, "F{p}"),
        }
    }
}

/// An element of the coefficient field. Rationals are kept in lowest terms
/// with positive denominator (enforced by `BigRational`); residues lie in
/// `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rat(BigRational),
    Mod { value: u64, modulus: u64 },
}

impl FieldElement {
    pub fn kind(&self) -> FieldKind {
        match self {
            FieldElement::Rat(_) => FieldKind::Q,
            FieldElement::Mod { modulus, .. } => FieldKind::Fp(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rat(r) => r.is_zero(),
            FieldElement::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rat(r) => r.is_one(),
            FieldElement::Mod { value, .. } => *value == 1,
        }
    }

    pub fn add(&self, other: &FieldElement) -> FieldElement {
        match (self, other) {
            (FieldElement::Rat(a), FieldElement::Rat(b)) => FieldElement::Rat(a + b),
            (
                FieldElement::Mod { value: a, modulus: p },
                FieldElement::Mod { value: b, modulus: q },
            ) => {
                assert_eq!(p, q, "mixed moduli");
                FieldElement::Mod { value: (a + b) % p, modulus: *p }
            }
            _ => panic!("mixed field kinds"),
        }
    }

    pub fn sub(&self, other: &FieldElement) -> FieldElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FieldElement {
        match self {
            FieldElement::Rat(a) => FieldElement::Rat(-a),
            FieldElement::Mod { value, modulus } => FieldElement::Mod {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }

    pub fn mul(&self, other: &FieldElement) -> FieldElement {
        match (self, other) {
            (FieldElement::Rat(a), FieldElement::Rat(b)) => FieldElement::Rat(a * b),
            (
                FieldElement::Mod { value: a, modulus: p },
                FieldElement::Mod { value: b, modulus: q },
            ) => {
                assert_eq!(p, q, "mixed moduli");
                FieldElement::Mod { value: mul_mod(*a, *b, *p), modulus: *p }
            }
            _ => panic!("mixed field kinds"),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> FieldElement {
        match self {
            FieldElement::Rat(a) => {
                assert!(!a.is_zero(), "inverse of zero");
                FieldElement::Rat(a.recip())
            }
            FieldElement::Mod { value, modulus } => {
                assert!(*value != 0, "inverse of zero");
                FieldElement::Mod { value: mod_inverse(*value, *modulus), modulus: *modulus }
            }
        }
    }

    pub fn div(&self, other: &FieldElement) -> FieldElement {
        self.mul(&other.inv())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rat(r) => write!(f, "{r}"),
            FieldElement::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // extended Euclid on (a, p), p prime
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert!(r == 1, "element not invertible");
    t.rem_euclid(p as i128) as u64
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}
