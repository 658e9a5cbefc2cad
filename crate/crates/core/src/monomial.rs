//! Monomials as exponent vectors and total monomial orders.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

/// Exponent vector of fixed length (one entry per ring variable).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller must ensure divisibility.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(
            other
                .0
                .iter()
                .zip(&self.0)
                .map(|(b, a)| b - a)
                .collect(),
        )
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Total monomial order. `Weight` compares a weighted degree first and falls
/// back to grevlex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    GrevLex,
    Lex,
    Weight(Vec<u64>),
}

impl MonomialOrder {
    /// Compare under the order; errors on mismatched exponent lengths.
    pub fn try_cmp(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.nvars() != b.nvars() {
            return Err(Error::invalid(format!(
                "monomial length mismatch: {} vs {}",
                a.nvars(),
                b.nvars()
            )));
        }
        if let MonomialOrder::Weight(w) = self {
            if w.len() != a.nvars() {
                return Err(Error::invalid("weight vector length mismatch"));
            }
        }
        Ok(self.cmp_mono(a, b))
    }

    /// Compare under the order; panics on length mismatch.
    pub fn cmp_mono(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), b.nvars());
        match self {
            MonomialOrder::GrevLex => grevlex(a, b),
            MonomialOrder::Lex => lex(a, b),
            MonomialOrder::Weight(w) => {
                let wa: u64 = a.0.iter().zip(w).map(|(e, w)| *e as u64 * w).sum();
                let wb: u64 = b.0.iter().zip(w).map(|(e, w)| *e as u64 * w).sum();
                wa.cmp(&wb).then_with(|| grevlex(a, b))
            }
        }
    }
}

fn grevlex(a: &Monomial, b: &Monomial) -> Ordering {
    let da = a.total_degree();
    let db = b.total_degree();
    if da != db {
        return da.cmp(&db);
    }
    // equal total degree: a > b iff the last nonzero entry of a - b is negative
    for i in (0..a.nvars()).rev() {
        match a.0[i].cmp(&b.0[i]) {
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
            Ordering::Equal => {}
        }
    }
    Ordering::Equal
}

fn lex(a: &Monomial, b: &Monomial) -> Ordering {
    for i in 0..a.nvars() {
        match a.0[i].cmp(&b.0[i]) {
            Ordering::Less => return Ordering::Less,
            Ordering::Greater => return Ordering::Greater,
            Ordering::Equal => {}
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial(e.to_vec())
    }

    #[test]
    fn grevlex_examples() {
        // in (x,y,z): x^2 > x*y
        let o = MonomialOrder::GrevLex;
        assert_eq!(o.cmp_mono(&m(&[2, 0, 0]), &m(&[1, 1, 0])), Ordering::Greater);
        // degree dominates
        assert_eq!(o.cmp_mono(&m(&[0, 0, 3]), &m(&[1, 1, 0])), Ordering::Greater);
        // x*z vs y^2: last difference at z is positive, so x*z < y^2
        assert_eq!(o.cmp_mono(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
    }

    #[test]
    fn lex_examples() {
        let o = MonomialOrder::Lex;
        // in (x,y): y^3 < x
        assert_eq!(o.cmp_mono(&m(&[0, 3]), &m(&[1, 0])), Ordering::Less);
        assert_eq!(o.cmp_mono(&m(&[1, 0]), &m(&[1, 0])), Ordering::Equal);
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let o = MonomialOrder::GrevLex;
        assert!(o.try_cmp(&m(&[1]), &m(&[1, 0])).is_err());
    }

    #[test]
    fn multiplicative_compatibility() {
        // a < b implies ac < bc, sampled exhaustively on small exponents
        for order in [MonomialOrder::GrevLex, MonomialOrder::Lex] {
            for a0 in 0..3u32 {
                for a1 in 0..3u32 {
                    for b0 in 0..3u32 {
                        for b1 in 0..3u32 {
                            let a = m(&[a0, a1]);
                            let b = m(&[b0, b1]);
                            let c = m(&[1, 2]);
                            assert_eq!(
                                order.cmp_mono(&a, &b),
                                order.cmp_mono(&a.mul(&c), &b.mul(&c))
                            );
                        }
                    }
                }
            }
        }
    }
}
