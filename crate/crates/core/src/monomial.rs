//! The graded polynomial algebra Z2[w1,...,wn] with deg wi = i.
//!
//! Monomials are exponent vectors; polynomials are mod-2 sets of
//! monomials (addition is symmetric difference). The canonical monomial
//! order is degree first, then exponent vectors compared from the
//! highest generator downward, so within a fixed degree the monomial
//! built from small generators comes first: w1^3 < w1*w2 < w3.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("arity mismatch: {left} vs {right} generators")]
    ArityMismatch { left: usize, right: usize },
    #[error("generator index {index} out of range 1..={arity}")]
    GeneratorOutOfRange { index: usize, arity: usize },
}

/// A monomial in w1..wn: the exponent vector (e1,...,en), with
/// weighted degree sum(i * ei).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u8>,
}

impl Monomial {
    /// The unit monomial over `n` generators (all exponents zero).
    pub fn unit(n: usize) -> Self {
        Monomial { exps: vec![0; n] }
    }

    /// The generator w_i (1-based), as a monomial over `n` generators.
    pub fn generator(n: usize, i: usize) -> Self {
        assert!(
            (1..=n).contains(&i),
            "generator index {i} out of range 1..={n}"
        );
        let mut exps = vec![0; n];
        exps[i - 1] = 1;
        Monomial { exps }
    }

    pub fn from_exponents(exps: Vec<u8>) -> Self {
        Monomial { exps }
    }

    /// Number of generators of the ambient algebra.
    pub fn arity(&self) -> usize {
        self.exps.len()
    }

    /// Exponent of w_i (1-based).
    pub fn exponent(&self, i: usize) -> u8 {
        self.exps[i - 1]
    }

    pub fn exponents(&self) -> &[u8] {
        &self.exps
    }

    /// Weighted degree sum(i * ei).
    pub fn degree(&self) -> u32 {
        self.exps
            .iter()
            .enumerate()
            .map(|(idx, &e)| (idx as u32 + 1) * e as u32)
            .sum()
    }

    pub fn is_unit(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Whether w_i divides this monomial.
    pub fn involves(&self, i: usize) -> bool {
        i >= 1 && i <= self.exps.len() && self.exps[i - 1] > 0
    }

    /// Exponentwise product, checking that both factors live in the
    /// same algebra.
    pub fn checked_mul(&self, rhs: &Monomial) -> Result<Monomial, AlgebraError> {
        if self.arity() != rhs.arity() {
            return Err(AlgebraError::ArityMismatch {
                left: self.arity(),
                right: rhs.arity(),
            });
        }
        let exps = self
            .exps
            .iter()
            .zip(&rhs.exps)
            .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow"))
            .collect();
        Ok(Monomial { exps })
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.arity(), other.arity(), "comparing across arities");
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.iter().rev().cmp(other.exps.iter().rev()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mul for &Monomial {
    type Output = Monomial;
    fn mul(self, rhs: &Monomial) -> Monomial {
        self.checked_mul(rhs).expect("arity mismatch")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        let mut first = true;
        for (idx, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "w{}", idx + 1)?;
            } else {
                write!(f, "w{}^{}", idx + 1, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A polynomial over Z2: a finite set of monomials, each with
/// coefficient 1. Addition is symmetric difference.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyZ2 {
    arity: usize,
    terms: BTreeSet<Monomial>,
}

impl PolyZ2 {
    pub fn zero(n: usize) -> Self {
        PolyZ2 {
            arity: n,
            terms: BTreeSet::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::from_monomial(Monomial::unit(n))
    }

    /// The generator w_i as a polynomial.
    pub fn generator(n: usize, i: usize) -> Self {
        Self::from_monomial(Monomial::generator(n, i))
    }

    pub fn from_monomial(m: Monomial) -> Self {
        let arity = m.arity();
        let mut terms = BTreeSet::new();
        terms.insert(m);
        PolyZ2 { arity, terms }
    }

    pub fn from_monomials(n: usize, monos: impl IntoIterator<Item = Monomial>) -> Self {
        let mut p = PolyZ2::zero(n);
        for m in monos {
            assert_eq!(m.arity(), n, "arity mismatch");
            p.toggle(m);
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical ascending order.
    pub fn terms(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.terms.contains(m)
    }

    /// The subset of terms of weighted degree `d`.
    pub fn homogeneous_component(&self, d: u32) -> PolyZ2 {
        PolyZ2 {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .filter(|m| m.degree() == d)
                .cloned()
                .collect(),
        }
    }

    /// Degrees in which this polynomial has at least one term.
    pub fn degrees(&self) -> BTreeSet<u32> {
        self.terms.iter().map(|m| m.degree()).collect()
    }

    /// Mod-2 add a single monomial (insert, or cancel a duplicate).
    fn toggle(&mut self, m: Monomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn checked_add(&self, rhs: &PolyZ2) -> Result<PolyZ2, AlgebraError> {
        if self.arity != rhs.arity {
            return Err(AlgebraError::ArityMismatch {
                left: self.arity,
                right: rhs.arity,
            });
        }
        Ok(PolyZ2 {
            arity: self.arity,
            terms: self
                .terms
                .symmetric_difference(&rhs.terms)
                .cloned()
                .collect(),
        })
    }

    /// Distributive product with mod-2 cancellation of repeated monomials.
    pub fn checked_mul(&self, rhs: &PolyZ2) -> Result<PolyZ2, AlgebraError> {
        if self.arity != rhs.arity {
            return Err(AlgebraError::ArityMismatch {
                left: self.arity,
                right: rhs.arity,
            });
        }
        let mut out = PolyZ2::zero(self.arity);
        for a in &self.terms {
            for b in &rhs.terms {
                out.toggle(a * b);
            }
        }
        Ok(out)
    }
}

impl Add for &PolyZ2 {
    type Output = PolyZ2;
    fn add(self, rhs: &PolyZ2) -> PolyZ2 {
        self.checked_add(rhs).expect("arity mismatch")
    }
}

impl Mul for &PolyZ2 {
    type Output = PolyZ2;
    fn mul(self, rhs: &PolyZ2) -> PolyZ2 {
        self.checked_mul(rhs).expect("arity mismatch")
    }
}

impl fmt::Display for PolyZ2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, m) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PolyZ2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All monomials of weighted degree `d` over `n` generators, in
/// canonical ascending order. The count equals the number of
/// partitions of `d` into parts of size at most `n`.
pub fn enumerate_monomials(n: usize, d: u32) -> Vec<Monomial> {
    assert!(n >= 1, "need at least one generator");
    let mut out = Vec::new();
    let mut exps = vec![0u8; n];
    // Choose exponents from w_n down to w_2; w_1 absorbs the remainder.
    // Ascending loops produce exactly the canonical order.
    fn go(i: usize, remaining: u32, exps: &mut Vec<u8>, out: &mut Vec<Monomial>) {
        if i == 1 {
            exps[0] = u8::try_from(remaining).expect("degree too large for u8 exponents");
            out.push(Monomial::from_exponents(exps.clone()));
            return;
        }
        for e in 0..=remaining / i as u32 {
            exps[i - 1] = e as u8;
            go(i - 1, remaining - e * i as u32, exps, out);
        }
        exps[i - 1] = 0;
    }
    go(n, d, &mut exps, &mut out);
    out
}

/// The binomial coefficient C(a, b) mod 2, by the Lucas criterion:
/// odd exactly when every binary digit of b is covered by a.
pub fn binom_mod2(a: u64, b: u64) -> bool {
    b & !a == 0
}
