//! The term indexing of a tensor space.
//!
//! Sort 0 holds the scalars (numerals over a field indexing), sort 1 the
//! vectors. Canonical terms are `S^λ(0).w₀ + (S^λ(0).w₁ + …)` with the words
//! in rank order, each word a right-nested `⊗` of generator constants, and
//! each `λ` the least index of its coefficient.

use std::sync::Arc;

use crate::encoding::{cantor_pair, cantor_split, cantor_unpair, Nat, TermTree};
use crate::exactnum::{FieldElement, FieldRef};
use crate::indexing::{
    least_index, Constant, GeneratedSort, GenerativeSpec, IndexError, IndexedStructure, IndexingRef, NewOp,
    SearchBudget, TermIndexing, Value, ValueFn,
};

use super::{Alphabet, BasisWord, TensorError, TensorVector};

/// Sort of the vectors in a [`TensorSpace`]'s term indexing.
pub const TENSOR_SORT: usize = 1;

/// A tensor space with its term indexing; cheap to clone.
#[derive(Clone)]
pub struct TensorSpace(Arc<Space>);

struct Space {
    alphabet: Alphabet,
    field: FieldRef,
    scalars: IndexedStructure,
    ti: TermIndexing,
}

fn letter_symbol(c: char) -> String {
    format!("e_{c}")
}

/// The tensor space over `alphabet` whose scalars are indexed by the single
/// sort of `scalars`.
pub fn tensor_indexing(alphabet: &Alphabet, scalars: &IndexedStructure) -> Result<TensorSpace, TensorError> {
    if scalars.sorts.len() != 1 {
        return Err(TensorError::Invalid("the scalar structure must have exactly one sort".into()));
    }
    let field = scalars.sorts[0].decode(&scalars.sorts[0].enumerate(0)?)?.as_field()?.field().clone();
    let ti = build_term_indexing(alphabet, &field, scalars)?;
    Ok(TensorSpace(Arc::new(Space { alphabet: alphabet.clone(), field, scalars: scalars.clone(), ti })))
}

fn build_term_indexing(
    alphabet: &Alphabet,
    field: &FieldRef,
    scalars: &IndexedStructure,
) -> Result<TermIndexing, TensorError> {
    let sref: IndexingRef = scalars.sorts[0].clone();
    let canon = Canon { alphabet: alphabet.clone(), scalars: sref.clone() };

    let enumerate = {
        let (canon, field) = (canon.clone(), field.clone());
        Arc::new(move |z: u64| canon.term(&canon.vector_at(&field, z)?))
    };
    let represent = {
        let canon = canon.clone();
        Arc::new(move |v: &Value| canon.term(v.as_tensor()?))
    };
    let locate = {
        let canon = canon.clone();
        Arc::new(move |v: &Value| canon.locate(v.as_tensor().ok()?))
    };
    let recognize = {
        let canon = canon.clone();
        let field = field.clone();
        let sref = sref.clone();
        Arc::new(move |t: &TermTree| evaluate(t, &field, &sref).is_ok_and(|v| canon.term(&v).is_ok_and(|c| &c == t)))
    };
    let sort = GeneratedSort {
        tag: format!("T({}) over {}", alphabet.letters().iter().collect::<String>(), field.name()),
        enumerate,
        recognize,
        represent: Some(represent),
        locate: Some(locate),
    };
    let constants = alphabet
        .letters()
        .iter()
        .map(|&c| Constant {
            symbol: letter_symbol(c),
            sort: TENSOR_SORT,
            value: Value::Tensor(TensorVector::basis(field, BasisWord::new(&c.to_string()).expect("valid letter"))),
        })
        .collect();
    let tv = |v: &Value| v.as_tensor().cloned();
    let add: ValueFn = Arc::new(move |v| Ok(Value::Tensor(tv(&v[0])?.add(&tv(&v[1])?)?)));
    let smul: ValueFn = Arc::new(move |v| Ok(Value::Tensor(tv(&v[1])?.scale(v[0].as_field()?)?)));
    let tensor: ValueFn = Arc::new(move |v| Ok(Value::Tensor(tv(&v[0])?.tensor(&tv(&v[1])?)?)));
    let spec = GenerativeSpec {
        name: format!("tensor {}", alphabet.letters().iter().collect::<String>()),
        base: Some(scalars.clone()),
        sorts: vec![sort],
        constants,
        ops: vec![
            NewOp::rewrap("add", vec![1, 1], 1, add),
            NewOp::rewrap("smul", vec![0, 1], 1, smul),
            NewOp::rewrap("tensor", vec![1, 1], 1, tensor),
        ],
        label_order: None,
    };
    Ok(TermIndexing::build(spec)?)
}

/// Denotation of a tensor-sort term, without building the term indexing.
fn evaluate(t: &TermTree, field: &FieldRef, scalars: &IndexingRef) -> Result<TensorVector, IndexError> {
    match (t.symbol(), t.children()) {
        ("add", [a, b]) => Ok(evaluate(a, field, scalars)?.add(&evaluate(b, field, scalars)?)?),
        ("tensor", [a, b]) => Ok(evaluate(a, field, scalars)?.tensor(&evaluate(b, field, scalars)?)?),
        ("smul", [s, v]) => {
            let x = s
                .numeral_count("S", "0")
                .ok_or_else(|| IndexError::NotInDomain(format!("`{s}` is not a scalar numeral")))?;
            let c = scalars.decode(&x)?;
            Ok(evaluate(v, field, scalars)?.scale(c.as_field()?)?)
        }
        (sym, []) => {
            let letter = sym
                .strip_prefix("e_")
                .filter(|l| l.chars().count() == 1)
                .ok_or_else(|| IndexError::NotInDomain(format!("`{sym}` is not a generator")))?;
            Ok(TensorVector::basis(field, BasisWord::new(letter)?))
        }
        _ => Err(IndexError::NotInDomain(format!("`{t}` is not a tensor term"))),
    }
}

/// Canonical terms and the enumeration of vectors.
#[derive(Clone)]
struct Canon {
    alphabet: Alphabet,
    scalars: IndexingRef,
}

impl Canon {
    fn word_term(&self, w: &BasisWord) -> TermTree {
        let letters: Vec<char> = w.letters().chars().collect();
        let mut t = TermTree::leaf(&letter_symbol(letters[letters.len() - 1]));
        for &c in letters[..letters.len() - 1].iter().rev() {
            t = TermTree::node("tensor", vec![TermTree::leaf(&letter_symbol(c)), t]);
        }
        t
    }

    fn scalar_numeral(&self, c: &FieldElement) -> Result<TermTree, IndexError> {
        let x = least_index(self.scalars.as_ref(), &Value::Field(c.clone()), SearchBudget::default())?;
        Ok(TermIndexing::numeral_term(&x))
    }

    fn term(&self, v: &TensorVector) -> Result<TermTree, IndexError> {
        if v.is_zero() {
            let first = BasisWord::new(&self.alphabet.letters()[0].to_string())?;
            let z = self.scalar_numeral(&FieldElement::zero(v.field()))?;
            return Ok(TermTree::node("smul", vec![z, self.word_term(&first)]));
        }
        let mut ranked = Vec::with_capacity(v.len());
        for (w, c) in v.terms() {
            let r = self
                .alphabet
                .rank(w)
                .ok_or_else(|| IndexError::NotInDomain(format!("word {w} is not over the alphabet")))?;
            ranked.push((r, w, c));
        }
        ranked.sort_by_key(|(r, _, _)| *r);
        let mut summands = ranked.iter().rev().map(|(_, w, c)| -> Result<TermTree, IndexError> {
            Ok(TermTree::node("smul", vec![self.scalar_numeral(c)?, self.word_term(w)]))
        });
        let mut t = summands.next().expect("nonzero vector")?;
        for s in summands {
            t = TermTree::node("add", vec![s?, t]);
        }
        Ok(t)
    }

    /// `0` is the zero vector, odd `z` the unit vector of word rank
    /// `(z-1)/2`; an even `z ≥ 2` splits into a nonempty set of word ranks
    /// (a bit mask) and one scalar position per rank.
    fn vector_at(&self, field: &FieldRef, z: u64) -> Result<TensorVector, IndexError> {
        if z == 0 {
            return Ok(TensorVector::zero(field));
        }
        if z % 2 == 1 {
            return Ok(TensorVector::basis(field, self.alphabet.word_at((z - 1) / 2)));
        }
        let (code, rest) = cantor_unpair(z / 2 - 1);
        let mask = code + 1;
        let ranks: Vec<u64> = (0..64).filter(|b| mask >> b & 1 == 1).collect();
        let positions = cantor_split(rest, ranks.len());
        let mut terms = Vec::with_capacity(ranks.len());
        for (&r, &p) in ranks.iter().zip(&positions) {
            let c = self.scalars.decode(&self.scalars.enumerate(p)?)?;
            terms.push((self.alphabet.word_at(r), c.as_field()?.clone()));
        }
        Ok(TensorVector::from_terms(field, terms)?)
    }

    fn locate(&self, v: &TensorVector) -> Option<u64> {
        if v.is_zero() {
            return Some(0);
        }
        let mut ranks = Vec::with_capacity(v.len());
        for (w, c) in v.terms() {
            ranks.push((self.alphabet.rank(w)?, c));
        }
        ranks.sort_by_key(|(r, _)| *r);
        let unit =
            (ranks.len() == 1 && ranks[0].1.is_one()).then(|| ranks[0].0.checked_mul(2)?.checked_add(1)).flatten();
        let spread = || -> Option<u64> {
            let mask = ranks.iter().try_fold(0u64, |m, (r, _)| (*r < 64).then(|| m | 1 << r))?;
            let positions = ranks
                .iter()
                .map(|(_, c)| self.scalars.locate(&Value::Field((*c).clone())))
                .collect::<Option<Vec<_>>>()?;
            let mut rest = *positions.last()?;
            for &p in positions[..positions.len() - 1].iter().rev() {
                rest = cantor_pair(p, rest)?;
            }
            cantor_pair(mask - 1, rest)?.checked_add(1)?.checked_mul(2)
        };
        match (unit, spread()) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }
}

impl TensorSpace {
    /// The space over `alphabet` with scalars in `field`, indexed by
    /// coordinate terms over the canonical rational indexing.
    pub fn over_field(alphabet: &Alphabet, field: &FieldRef) -> Result<TensorSpace, TensorError> {
        let q = crate::indexing::registry::rationals();
        let scalars = crate::indexing::registry::field_indexing(field, &q).structure().restrict(&[1]);
        tensor_indexing(alphabet, &scalars)
    }

    /// Same scalars, generators ranked in the opposite order.
    pub fn reversed(&self) -> Result<TensorSpace, TensorError> {
        tensor_indexing(&self.0.alphabet.reversed(), &self.0.scalars)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.0.alphabet
    }

    pub fn field(&self) -> &FieldRef {
        &self.0.field
    }

    pub fn scalars(&self) -> &IndexingRef {
        &self.0.scalars.sorts[0]
    }

    pub fn indexing(&self) -> &TermIndexing {
        &self.0.ti
    }

    fn canon(&self) -> Canon {
        Canon { alphabet: self.0.alphabet.clone(), scalars: self.scalars().clone() }
    }

    pub fn word_term(&self, w: &BasisWord) -> TermTree {
        self.canon().word_term(w)
    }

    /// Index of the canonical term of `v`.
    pub fn index_of(&self, v: &TensorVector) -> Result<Nat, TensorError> {
        Ok(self.0.ti.encode(&tv_to_term(v, self)?)?)
    }

    /// Decodes an index of the vector sort.
    pub fn vector_of(&self, x: &Nat) -> Result<TensorVector, TensorError> {
        let v = self.0.ti.sort(TENSOR_SORT).decode(x)?;
        Ok(v.as_tensor()?.clone())
    }

    /// Decodes under this space's term table, without any value map.
    pub fn denote_index(&self, x: &Nat) -> Result<TensorVector, TensorError> {
        let t = self.0.ti.decode_term(x)?;
        term_to_tv(&t, self)
    }
}

/// The canonical term of `v`.
pub fn tv_to_term(v: &TensorVector, space: &TensorSpace) -> Result<TermTree, TensorError> {
    if !v.field().same_as(space.field()) {
        return Err(TensorError::Exact(crate::exactnum::ExactError::FieldMismatch(
            v.field().name().into(),
            space.field().name().into(),
        )));
    }
    Ok(space.canon().term(v)?)
}

/// The vector a tensor-sort term denotes.
pub fn term_to_tv(t: &TermTree, space: &TensorSpace) -> Result<TensorVector, TensorError> {
    Ok(evaluate(t, space.field(), space.scalars())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{sqrt2, zeta8};
    use crate::indexing::check_admissible;

    fn space() -> TensorSpace {
        TensorSpace::over_field(&Alphabet::qubit(), &zeta8()).unwrap()
    }

    #[test]
    fn enumerator_starts_with_zero_then_units() {
        let s = space();
        let sort = s.indexing().sort(TENSOR_SORT);
        let show = |z| sort.decode(&sort.enumerate(z).unwrap()).unwrap().to_string();
        assert_eq!(show(0), "0");
        assert_eq!(show(1), "(1)|0>");
        assert_eq!(show(3), "(1)|1>");
        assert_eq!(show(5), "(1)|00>");
    }

    #[test]
    fn locate_is_least_position() {
        let s = space();
        let sort = s.indexing().sort(TENSOR_SORT);
        let mut seen: Vec<TensorVector> = Vec::new();
        for z in 0..400u64 {
            let v = sort.decode(&sort.enumerate(z).unwrap()).unwrap();
            let tv = v.as_tensor().unwrap().clone();
            let first = seen.iter().position(|u| u.tv_eq(&tv).unwrap()).map_or(z, |p| p as u64);
            if first == z {
                seen.push(tv);
                assert_eq!(sort.locate(&v), Some(z), "at {z}: {v}");
            } else {
                seen.push(TensorVector::zero(&zeta8()));
            }
        }
    }

    #[test]
    fn canonical_term_round_trip() {
        let s = space();
        let f = zeta8();
        let v = TensorVector::parse(&f, "(0,1/2,0,-1/2)|00> + (3)|1> + (0,0,0,2)|11>").unwrap();
        let t = tv_to_term(&v, &s).unwrap();
        assert!(s.indexing().admits(TENSOR_SORT, &t));
        assert!(term_to_tv(&t, &s).unwrap().tv_eq(&v).unwrap());
        let zero = tv_to_term(&TensorVector::zero(&f), &s).unwrap();
        assert_eq!(zero.symbol(), "smul");
        assert!(term_to_tv(&zero, &s).unwrap().is_zero());
    }

    #[test]
    fn summand_order_does_not_matter() {
        let s = space();
        let ti = s.indexing();
        let a = s.index_of(&TensorVector::basis(&zeta8(), BasisWord::new("0").unwrap())).unwrap();
        let b = s.index_of(&TensorVector::basis(&zeta8(), BasisWord::new("11").unwrap())).unwrap();
        let ab = ti.rewrap("add", &[a.clone(), b.clone()]).unwrap();
        let ba = ti.rewrap("add", &[b, a]).unwrap();
        assert_ne!(ab, ba);
        assert!(ti.sort(TENSOR_SORT).equal(&ab, &ba).unwrap());
    }

    #[test]
    fn admissible_on_samples() {
        let s = TensorSpace::over_field(&Alphabet::qubit(), &sqrt2()).unwrap();
        let report = check_admissible(&s.indexing().structure(), 100);
        assert!(report.ok(), "{report}");
    }
}
