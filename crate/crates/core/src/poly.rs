//! Sparse multivariate polynomials over an exact coefficient field.
//!
//! A polynomial owns a handle to its ring; binary operations check ring
//! equality and the operator impls panic on mismatch (the checked variants
//! return errors). Terms are kept strictly decreasing in the ring's monomial
//! order with no zero coefficients, so structural equality is semantic
//! equality.

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldKind};
use crate::monomial::{Monomial, MonomialOrder};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

/// A polynomial ring: named variables over `Q` or `F_p` with a fixed
/// monomial order. Under the graded-local convention the maximal ideal is
/// generated by all the variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyRing {
    vars: Vec<String>,
    field: FieldKind,
    order: MonomialOrder,
}

impl PolyRing {
    pub fn new(vars: Vec<String>, field: FieldKind, order: MonomialOrder) -> Result<Arc<Self>> {
        field.validate()?;
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty() || !v.chars().next().unwrap().is_ascii_alphabetic() {
                return Err(Error::invalid(format!("bad variable name {v:?}")));
            }
            if vars[..i].contains(v) {
                return Err(Error::invalid(format!("duplicate variable name {v:?}")));
            }
        }
        if let MonomialOrder::Weight(w) = &order {
            if w.len() != vars.len() {
                return Err(Error::invalid("weight vector length must match variable count"));
            }
        }
        Ok(Arc::new(PolyRing { vars, field, order }))
    }

    /// `Q[vars]` with grevlex, the default everywhere in the tests.
    pub fn rational(vars: &[&str]) -> Arc<Self> {
        PolyRing::new(
            vars.iter().map(|s| s.to_string()).collect(),
            FieldKind::Q,
            MonomialOrder::GrevLex,
        )
        .expect("valid ring")
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn field(&self) -> &FieldKind {
        &self.field
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn with_order(&self, order: MonomialOrder) -> Result<Arc<Self>> {
        PolyRing::new(self.vars.clone(), self.field.clone(), order)
    }
}

impl fmt::Display for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field, self.vars.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: FieldElement,
    pub mono: Monomial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Polynomial::constant(ring, ring.field.one())
    }

    pub fn constant(ring: &Arc<PolyRing>, c: FieldElement) -> Self {
        if c.is_zero() {
            return Polynomial::zero(ring);
        }
        Polynomial {
            ring: ring.clone(),
            terms: vec![Term { coeff: c, mono: Monomial::one(ring.nvars()) }],
        }
    }

    pub fn from_int(ring: &Arc<PolyRing>, n: i64) -> Self {
        Polynomial::constant(ring, ring.field.from_integer(n))
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        assert!(i < ring.nvars());
        Polynomial {
            ring: ring.clone(),
            terms: vec![Term {
                coeff: ring.field.one(),
                mono: Monomial::var(ring.nvars(), i),
            }],
        }
    }

    pub fn from_terms(ring: &Arc<PolyRing>, terms: Vec<Term>) -> Self {
        Polynomial { ring: ring.clone(), terms: normalize(ring, terms) }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].mono.is_one() && self.terms[0].coeff.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|t| t.mono.is_one())
    }

    /// True for a single-term polynomial (a scalar multiple of a monomial).
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn constant_term(&self) -> FieldElement {
        self.terms
            .iter()
            .find(|t| t.mono.is_one())
            .map(|t| t.coeff.clone())
            .unwrap_or_else(|| self.ring.field.zero())
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.mono.total_degree()).max()
    }

    /// All terms share one total degree (the zero polynomial qualifies).
    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(t0) => {
                let d = t0.mono.total_degree();
                self.terms.iter().all(|t| t.mono.total_degree() == d)
            }
        }
    }

    pub fn same_ring(&self, other: &Polynomial) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring
    }

    fn require_same_ring(&self, other: &Polynomial) -> Result<()> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!("{} vs {}", self.ring, other.ring)))
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.require_same_ring(other)?;
        let order = &self.ring.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let a = &self.terms[i];
            let b = &other.terms[j];
            match order.cmp_mono(&a.mono, &b.mono) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b.clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = a.coeff.add(&b.coeff);
                    if !c.is_zero() {
                        out.push(Term { coeff: c, mono: a.mono.clone() });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Ok(Polynomial { ring: self.ring.clone(), terms: out })
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.checked_add(&other.negate())
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.require_same_ring(other)?;
        let mut acc = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                acc.push(Term { coeff: a.coeff.mul(&b.coeff), mono: a.mono.mul(&b.mono) });
            }
        }
        Ok(Polynomial { ring: self.ring.clone(), terms: normalize(&self.ring, acc) })
    }

    pub fn negate(&self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term { coeff: t.coeff.neg(), mono: t.mono.clone() })
                .collect(),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term { coeff: t.coeff.mul(c), mono: t.mono.clone() })
                .collect(),
        }
    }

    /// Multiply by `c * mono` in one pass; preserves term order.
    pub fn mul_term(&self, c: &FieldElement, mono: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term { coeff: t.coeff.mul(c), mono: t.mono.mul(mono) })
                .collect(),
        }
    }

    /// Divide every coefficient so the leading coefficient becomes 1.
    pub fn monic(&self) -> Polynomial {
        match self.leading_term() {
            None => self.clone(),
            Some(lt) => self.scale(&lt.coeff.inv()),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::one(&self.ring);
        for _ in 0..e {
            out = out.checked_mul(self).expect("same ring");
        }
        out
    }

    pub fn eval(&self, point: &[FieldElement]) -> FieldElement {
        assert_eq!(point.len(), self.ring.nvars());
        let mut acc = self.ring.field.zero();
        for t in &self.terms {
            let mut v = t.coeff.clone();
            for (i, &e) in t.mono.0.iter().enumerate() {
                for _ in 0..e {
                    v = v.mul(&point[i]);
                }
            }
            acc = acc.add(&v);
        }
        acc
    }
}

fn normalize(ring: &Arc<PolyRing>, mut terms: Vec<Term>) -> Vec<Term> {
    let order = ring.order.clone();
    terms.sort_by(|a, b| order.cmp_mono(&b.mono, &a.mono));
    let mut out: Vec<Term> = Vec::with_capacity(terms.len());
    for t in terms {
        if let Some(last) = out.last_mut() {
            if last.mono == t.mono {
                last.coeff = last.coeff.add(&t.coeff);
                continue;
            }
        }
        out.push(t);
    }
    out.retain(|t| !t.coeff.is_zero());
    out
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("ring mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("ring mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("ring mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.negate()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, t) in self.terms.iter().enumerate() {
            let coeff_str = t.coeff.to_string();
            let (neg, mag) = match coeff_str.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, coeff_str),
            };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if mag != "1" || t.mono.is_one() {
                factors.push(mag);
            }
            for (i, &e) in t.mono.0.iter().enumerate() {
                if e == 1 {
                    factors.push(self.ring.vars[i].clone());
                } else if e > 1 {
                    factors.push(format!("{}^{}", self.ring.vars[i], e));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring2() -> Arc<PolyRing> {
        PolyRing::rational(&["x", "y"])
    }

    #[test]
    fn add_cancellation() {
        let r = ring2();
        let x = Polynomial::var(&r, 0);
        let one = Polynomial::one(&r);
        let f = &x + &one; // x + 1
        let g = x.negate(); // -x
        assert_eq!(&f + &g, one);
    }

    #[test]
    fn add_identity() {
        let r = ring2();
        let f = &Polynomial::var(&r, 0) + &Polynomial::var(&r, 1);
        assert_eq!(&f + &Polynomial::zero(&r), f);
    }

    #[test]
    fn char_two_doubling() {
        let r = PolyRing::new(
            vec!["x".into()],
            FieldKind::Fp(2),
            MonomialOrder::GrevLex,
        )
        .unwrap();
        let x = Polynomial::var(&r, 0);
        assert!((&x + &x).is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let r = ring2();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let lhs = &(&x + &y) * &(&x - &y);
        let rhs = &x.pow(2) - &y.pow(2);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn mul_identity() {
        let r = ring2();
        let f = &(&Polynomial::var(&r, 0) + &Polynomial::one(&r)).pow(3);
        assert_eq!(f * &Polynomial::one(&r), *f);
    }

    #[test]
    fn frobenius_in_char_two() {
        let r = PolyRing::new(
            vec!["x".into(), "y".into()],
            FieldKind::Fp(2),
            MonomialOrder::GrevLex,
        )
        .unwrap();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let sq = (&x + &y).pow(2);
        assert_eq!(sq, &x.pow(2) + &y.pow(2));
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let r = ring2();
        let s = PolyRing::rational(&["x", "z"]);
        let f = Polynomial::var(&r, 0);
        let g = Polynomial::var(&s, 0);
        assert!(matches!(f.checked_add(&g), Err(Error::RingMismatch(_))));
    }

    #[test]
    fn display_round_shape() {
        let r = ring2();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let f = &(&x.pow(2) - &y) + &Polynomial::from_int(&r, 3);
        assert_eq!(f.to_string(), "x^2 - y + 3");
    }

    #[test]
    fn normalization_is_idempotent() {
        let r = ring2();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let f = &(&x * &y) + &y.pow(3);
        let renorm = Polynomial::from_terms(&r, f.terms().to_vec());
        assert_eq!(f, renorm);
    }
}
