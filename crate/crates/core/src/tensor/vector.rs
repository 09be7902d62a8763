//! Sparse vectors over tensor-word bases.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::exactnum::{ExactError, FieldElement, FieldRef};

use super::TensorError;

/// Ordered, distinct single-character generator labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    letters: Vec<char>,
}

impl Alphabet {
    pub fn new(letters: &[char]) -> Result<Self, TensorError> {
        if letters.is_empty() {
            return Err(TensorError::Invalid("alphabet must be nonempty".into()));
        }
        for (i, c) in letters.iter().enumerate() {
            if letters[..i].contains(c) {
                return Err(TensorError::Invalid(format!("letter `{c}` appears twice")));
            }
            if c.is_whitespace() || "()|<>+,".contains(*c) {
                return Err(TensorError::Invalid(format!("`{c}` cannot be a letter")));
            }
        }
        Ok(Alphabet { letters: letters.to_vec() })
    }

    /// `{0, 1}` in that order.
    pub fn qubit() -> Self {
        Alphabet { letters: vec!['0', '1'] }
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn position(&self, c: char) -> Option<usize> {
        self.letters.iter().position(|&l| l == c)
    }

    pub fn reversed(&self) -> Self {
        Alphabet { letters: self.letters.iter().rev().copied().collect() }
    }

    /// Rank of `w` among all words, by length and then lexicographically in
    /// the alphabet's order. `None` on overflow or foreign letters.
    pub fn rank(&self, w: &BasisWord) -> Option<u64> {
        let a = self.letters.len() as u64;
        let mut offset: u64 = 0;
        let mut block: u64 = 1;
        for _ in 1..w.len() {
            block = block.checked_mul(a)?;
            offset = offset.checked_add(block)?;
        }
        let mut lex: u64 = 0;
        for c in w.letters().chars() {
            lex = lex.checked_mul(a)?.checked_add(self.position(c)? as u64)?;
        }
        offset.checked_add(lex)
    }

    /// The word of a given rank.
    pub fn word_at(&self, rank: u64) -> BasisWord {
        let a = self.letters.len() as u64;
        let mut len = 1usize;
        let mut rest = rank;
        let mut block = a;
        while rest >= block {
            rest -= block;
            len += 1;
            block = block.saturating_mul(a);
        }
        let mut out = vec![self.letters[0]; len];
        for slot in out.iter_mut().rev() {
            *slot = self.letters[(rest % a) as usize];
            rest /= a;
        }
        BasisWord(out.into_iter().collect())
    }
}

/// A nonempty word; stands for the right-nested product of its letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisWord(String);

impl BasisWord {
    pub fn new(s: &str) -> Result<Self, TensorError> {
        if s.is_empty() {
            return Err(TensorError::Invalid("basis words are nonempty".into()));
        }
        if let Some(c) = s.chars().find(|c| c.is_whitespace() || "()|<>+,".contains(*c)) {
            return Err(TensorError::Invalid(format!("`{c}` cannot appear in a basis word")));
        }
        Ok(BasisWord(s.to_string()))
    }

    pub fn letters(&self) -> &str {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.chars().count()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &BasisWord) -> BasisWord {
        BasisWord(format!("{}{}", self.0, other.0))
    }

    pub fn letter(&self, i: usize) -> Option<char> {
        self.0.chars().nth(i)
    }
}

/// Length first, then the letters' code points.
impl Ord for BasisWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for BasisWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BasisWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{}>", self.0)
    }
}

/// A finite combination of basis words with nonzero coefficients.
#[derive(Clone)]
pub struct TensorVector {
    field: FieldRef,
    terms: BTreeMap<BasisWord, FieldElement>,
}

impl TensorVector {
    pub fn zero(field: &FieldRef) -> Self {
        TensorVector { field: field.clone(), terms: BTreeMap::new() }
    }

    /// `1·w`.
    pub fn basis(field: &FieldRef, w: BasisWord) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w, FieldElement::one(field));
        TensorVector { field: field.clone(), terms }
    }

    /// Sums repeated words and drops zero coefficients.
    pub fn from_terms(
        field: &FieldRef,
        terms: impl IntoIterator<Item = (BasisWord, FieldElement)>,
    ) -> Result<Self, TensorError> {
        let mut v = TensorVector::zero(field);
        for (w, c) in terms {
            v.accumulate(w, &c)?;
        }
        Ok(v)
    }

    fn accumulate(&mut self, w: BasisWord, c: &FieldElement) -> Result<(), ExactError> {
        if !c.field().same_as(&self.field) {
            return Err(ExactError::FieldMismatch(self.field.name().into(), c.field().name().into()));
        }
        if c.is_zero() {
            return Ok(());
        }
        match self.terms.get(&w) {
            Some(old) => {
                let s = old.add(c)?;
                if s.is_zero() {
                    self.terms.remove(&w);
                } else {
                    self.terms.insert(w, s);
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
        Ok(())
    }

    fn check(&self, other: &TensorVector) -> Result<(), ExactError> {
        if self.field.same_as(&other.field) {
            Ok(())
        } else {
            Err(ExactError::FieldMismatch(self.field.name().into(), other.field.name().into()))
        }
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn terms(&self) -> &BTreeMap<BasisWord, FieldElement> {
        &self.terms
    }

    pub fn coefficient(&self, w: &BasisWord) -> FieldElement {
        self.terms.get(w).cloned().unwrap_or_else(|| FieldElement::zero(&self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &TensorVector) -> Result<TensorVector, ExactError> {
        self.check(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.accumulate(w.clone(), c)?;
        }
        Ok(out)
    }

    pub fn scale(&self, s: &FieldElement) -> Result<TensorVector, ExactError> {
        if !s.field().same_as(&self.field) {
            return Err(ExactError::FieldMismatch(self.field.name().into(), s.field().name().into()));
        }
        let mut out = TensorVector::zero(&self.field);
        if s.is_zero() {
            return Ok(out);
        }
        for (w, c) in &self.terms {
            out.terms.insert(w.clone(), c.mul(s)?);
        }
        Ok(out)
    }

    /// Bilinear extension of word concatenation.
    pub fn tensor(&self, other: &TensorVector) -> Result<TensorVector, ExactError> {
        self.check(other)?;
        let mut out = TensorVector::zero(&self.field);
        for (w, a) in &self.terms {
            for (x, b) in &other.terms {
                out.accumulate(w.concat(x), &a.mul(b)?)?;
            }
        }
        Ok(out)
    }

    pub fn tv_eq(&self, other: &TensorVector) -> Result<bool, ExactError> {
        self.check(other)?;
        if self.terms.len() != other.terms.len() {
            return Ok(false);
        }
        for ((w, a), (x, b)) in self.terms.iter().zip(&other.terms) {
            if w != x || !a.exact_eq(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Parses the text form `c|w> + c|w> …` (or `0`). Coefficients are
    /// coordinate tuples; missing trailing coordinates are zero.
    pub fn parse(field: &FieldRef, s: &str) -> Result<TensorVector, TensorError> {
        let s = s.trim();
        if s == "0" {
            return Ok(TensorVector::zero(field));
        }
        let mut terms = Vec::new();
        let mut rest = s;
        loop {
            let close =
                rest.find(')').ok_or_else(|| TensorError::Parse(format!("expected `(coefficients)` in `{rest}`")))?;
            let coeff = FieldElement::parse(field, &rest[..=close])?;
            let after = rest[close + 1..].trim_start();
            let after = after
                .strip_prefix('|')
                .ok_or_else(|| TensorError::Parse(format!("expected `|` after {}", &rest[..=close])))?;
            let end = after.find('>').ok_or_else(|| TensorError::Parse("unterminated ket".into()))?;
            let w = BasisWord::new(&after[..end])?;
            terms.push((w, coeff));
            rest = after[end + 1..].trim_start();
            if rest.is_empty() {
                break;
            }
            rest = rest
                .strip_prefix('+')
                .ok_or_else(|| TensorError::Parse(format!("expected `+` before `{rest}`")))?
                .trim_start();
        }
        TensorVector::from_terms(field, terms)
    }
}

impl fmt::Display for TensorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}{w}", c.to_trimmed_string())?;
        }
        Ok(())
    }
}

impl fmt::Debug for TensorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field.name(), self)
    }
}

pub fn tv_add(u: &TensorVector, v: &TensorVector) -> Result<TensorVector, ExactError> {
    u.add(v)
}

pub fn tv_scale(s: &FieldElement, v: &TensorVector) -> Result<TensorVector, ExactError> {
    v.scale(s)
}

pub fn tv_tensor(u: &TensorVector, v: &TensorVector) -> Result<TensorVector, ExactError> {
    u.tensor(v)
}

pub fn tv_eq(u: &TensorVector, v: &TensorVector) -> Result<bool, ExactError> {
    u.tv_eq(v)
}
