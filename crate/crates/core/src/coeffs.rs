//! Coefficient rings of characteristic two and the Frobenius algebra
//! `A = R[X]/(X(X+h))` with counit `ε(1) = 0`, `ε(X) = 1`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoeffError {
    #[error("valuation of zero")]
    ValuationOfZero,
    #[error("division by zero")]
    DivisionByZero,
    #[error("word length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
}

/// The three supported pairs `(R, h)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RingSpec {
    /// `(𝔽₂, 0)`: Khovanov homology.
    F2H0,
    /// `(𝔽₂, 1)`: filtered, treated as ungraded.
    F2H1,
    /// `(𝔽₂[H], H)` with `deg H = −2`.
    F2HH,
}

impl RingSpec {
    pub fn h(self) -> Poly {
        match self {
            RingSpec::F2H0 => Poly::zero(),
            RingSpec::F2H1 => Poly::one(),
            RingSpec::F2HH => Poly::monomial(1),
        }
    }

    pub fn h_is_invertible(self) -> bool {
        self == RingSpec::F2H1
    }

    pub fn is_graded(self) -> bool {
        self != RingSpec::F2H1
    }

    pub fn name(self) -> &'static str {
        match self {
            RingSpec::F2H0 => "F2_h0",
            RingSpec::F2H1 => "F2_h1",
            RingSpec::F2HH => "F2H_hH",
        }
    }
}

/// Element of `𝔽₂[H]`, bit-packed, little-endian in the exponent.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    words: Vec<u64>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { words: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::monomial(0)
    }

    pub fn monomial(k: usize) -> Self {
        let mut words = vec![0u64; k / 64 + 1];
        words[k / 64] = 1 << (k % 64);
        Poly { words }
    }

    /// Builds from coefficient bits indexed by exponent.
    pub fn from_bits(bits: &[bool]) -> Self {
        let mut p = Poly::zero();
        for (k, &b) in bits.iter().enumerate() {
            if b {
                p += Poly::monomial(k);
            }
        }
        p
    }

    fn trim(mut self) -> Self {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words == [1]
    }

    pub fn coeff(&self, k: usize) -> bool {
        self.words.get(k / 64).is_some_and(|w| w >> (k % 64) & 1 == 1)
    }

    pub fn degree(&self) -> Option<usize> {
        let top = self.words.last()?;
        Some((self.words.len() - 1) * 64 + 63 - top.leading_zeros() as usize)
    }

    /// Largest `k` with `Hᵏ | p`.
    pub fn valuation(&self) -> Result<usize, CoeffError> {
        let (i, w) = self
            .words
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .ok_or(CoeffError::ValuationOfZero)?;
        Ok(i * 64 + w.trailing_zeros() as usize)
    }

    /// `Some(k)` if `p = Hᵏ`.
    pub fn as_monomial(&self) -> Option<usize> {
        let v = self.valuation().ok()?;
        (self.degree() == Some(v)).then_some(v)
    }

    pub fn shl(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let (q, r) = (k / 64, k % 64);
        let mut words = vec![0u64; self.words.len() + q + 1];
        for (i, &w) in self.words.iter().enumerate() {
            words[i + q] ^= w << r;
            if r > 0 {
                words[i + q + 1] ^= w >> (64 - r);
            }
        }
        Poly { words }.trim()
    }

    /// Euclidean division: `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly), CoeffError> {
        let dd = d.degree().ok_or(CoeffError::DivisionByZero)?;
        let mut q = Poly::zero();
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            q += Poly::monomial(rd - dd);
            r += d.shl(rd - dd);
        }
        Ok((q, r))
    }

    /// Evaluates at `H = 1`.
    pub fn eval_one(&self) -> bool {
        self.words.iter().fold(0u32, |acc, w| acc ^ (w.count_ones() & 1)) == 1
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs.clone();
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self += rhs;
        self
    }
}

impl AddAssign for Poly {
    fn add_assign(&mut self, rhs: Poly) {
        if self.words.len() < rhs.words.len() {
            self.words.resize(rhs.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(rhs.words) {
            *a ^= b;
        }
        let t = std::mem::take(self).trim();
        *self = t;
    }
}

impl Mul for &Poly {
    type Output = Poly;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        let Some(deg) = rhs.degree() else {
            return out;
        };
        for k in 0..=deg {
            if rhs.coeff(k) {
                out += self.shl(k);
            }
        }
        out
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(deg) = self.degree() else {
            return write!(f, "0");
        };
        let terms: Vec<String> = (0..=deg)
            .rev()
            .filter(|&k| self.coeff(k))
            .map(|k| match k {
                0 => "1".to_string(),
                1 => "H".to_string(),
                _ => format!("H^{k}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// Basis letter of `A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    One,
    X,
}

impl Letter {
    /// Quantum degree: `deg 1 = +1`, `deg X = −1`.
    pub fn degree(self) -> i32 {
        match self {
            Letter::One => 1,
            Letter::X => -1,
        }
    }
}

/// Formal sum of tensor words with polynomial coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct AlgElem {
    len: usize,
    terms: BTreeMap<Vec<Letter>, Poly>,
}

impl AlgElem {
    pub fn zero(len: usize) -> Self {
        AlgElem { len, terms: BTreeMap::new() }
    }

    pub fn word(word: Vec<Letter>) -> Self {
        Self::term(word, Poly::one())
    }

    pub fn letter(l: Letter) -> Self {
        Self::word(vec![l])
    }

    pub fn term(word: Vec<Letter>, c: Poly) -> Self {
        let mut e = AlgElem::zero(word.len());
        e.add_term(word, c);
        e
    }

    /// `Y = X + h·1`.
    pub fn y(ring: RingSpec) -> Self {
        let mut e = AlgElem::letter(Letter::X);
        e.add_term(vec![Letter::One], ring.h());
        e
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Letter>, &Poly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, word: &[Letter]) -> Poly {
        self.terms.get(word).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, word: Vec<Letter>, c: Poly) {
        assert_eq!(word.len(), self.len, "word length mismatch");
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(word).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &AlgElem) -> Result<AlgElem, CoeffError> {
        if self.len != other.len {
            return Err(CoeffError::LengthMismatch(self.len, other.len));
        }
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Poly) -> AlgElem {
        let mut out = AlgElem::zero(self.len);
        for (w, d) in &self.terms {
            out.add_term(w.clone(), c * d);
        }
        out
    }

    pub fn tensor(&self, other: &AlgElem) -> AlgElem {
        let mut out = AlgElem::zero(self.len + other.len);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_term(w, c1 * c2);
            }
        }
        out
    }

    /// Product in `A` of two single-letter elements.
    pub fn mul(&self, other: &AlgElem, ring: RingSpec) -> Result<AlgElem, CoeffError> {
        if self.len != 1 || other.len != 1 {
            return Err(CoeffError::LengthMismatch(self.len, other.len));
        }
        let mut out = AlgElem::zero(1);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let p = alg_multiply(w1[0], w2[0], ring).scale(&(c1 * c2));
                out = out.add(&p)?;
            }
        }
        Ok(out)
    }

    /// Applies `ε` to a single-letter element.
    pub fn epsilon(&self) -> Poly {
        assert_eq!(self.len, 1, "counit takes a single letter");
        self.coeff(&[Letter::X])
    }
}

impl fmt::Debug for AlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let word: Vec<&str> = w
                    .iter()
                    .map(|l| match l {
                        Letter::One => "1",
                        Letter::X => "X",
                    })
                    .collect();
                format!("({c})·{}", word.join("⊗"))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn poly_valuation(p: &Poly) -> Result<usize, CoeffError> {
    p.valuation()
}

pub fn alg_multiply(x: Letter, y: Letter, ring: RingSpec) -> AlgElem {
    use Letter::*;
    match (x, y) {
        (One, l) | (l, One) => AlgElem::letter(l),
        (X, X) => AlgElem::term(vec![X], ring.h()),
    }
}

pub fn alg_comultiply(x: Letter, ring: RingSpec) -> AlgElem {
    use Letter::*;
    match x {
        X => AlgElem::word(vec![X, X]),
        One => {
            let mut e = AlgElem::word(vec![One, X]);
            e.add_term(vec![X, One], Poly::one());
            e.add_term(vec![One, One], ring.h());
            e
        }
    }
}

/// Letterwise `1 ↦ 1`, `X ↦ X + h`.
pub fn alg_sigma(x: &AlgElem, ring: RingSpec) -> AlgElem {
    let mut out = AlgElem::zero(x.len());
    for (w, c) in x.terms() {
        let mut acc = AlgElem::term(Vec::new(), c.clone());
        for &l in w {
            let img = match l {
                Letter::One => AlgElem::letter(Letter::One),
                Letter::X => AlgElem::y(ring),
            };
            acc = acc.tensor(&img);
        }
        out = out.add(&acc).expect("lengths agree");
    }
    out
}

/// `⟨x, y⟩ = ε(xy)`.
pub fn alg_pair(x: Letter, y: Letter, ring: RingSpec) -> Poly {
    alg_multiply(x, y, ring).epsilon()
}

/// Bilinear extension of the pairing to single-letter elements.
pub fn alg_pair_elems(x: &AlgElem, y: &AlgElem, ring: RingSpec) -> Result<Poly, CoeffError> {
    Ok(x.mul(y, ring)?.epsilon())
}
