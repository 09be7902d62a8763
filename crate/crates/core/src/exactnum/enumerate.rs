//! Enumerating the indices of rationals inside an indexed extension of ℚ,
//! using only the extension's `+̂`, `×̂` and `equal`.

use std::collections::HashMap;

use crate::encoding::{cantor_split, Nat};
use crate::indexing::{
    derive_inverse_op, least_index, IndexError, IndexFn, IndexedStructure, IndexingRef, SearchBudget, Value,
};

use super::{FieldElement, Rational};

/// One yield of [`RationalIndices`]: the triple `(p, q, r)` and either the
/// index `(J(p) −̂ J(q)) /̂ (J(r) +̂ u)` with its decoded value, or the reason
/// the searches gave up.
#[derive(Clone, Debug)]
pub struct RationalItem {
    pub triple: (u64, u64, u64),
    pub outcome: Result<(Nat, Rational), IndexError>,
}

/// Stream of indices of rationals, visiting triples in diagonal order.
///
/// `J(0)` is an index of 0, `J(p+1) = J(p) +̂ u` with `u` an index of 1;
/// `−̂` and `/̂` are the least-solution searches over the domain's
/// enumeration, with `+̂` and `×̂` as forward operations.
pub struct RationalIndices {
    sort: IndexingRef,
    add: IndexFn,
    mul: IndexFn,
    u: Nat,
    budget: SearchBudget,
    next: u64,
    j: Vec<Nat>,
    differences: HashMap<(u64, u64), Result<Nat, IndexError>>,
    quotients: HashMap<(Nat, u64), Result<Nat, IndexError>>,
}

/// Enumerator over sort `sort` of `structure`, which must carry binary
/// operations named `add` and `mul` on that sort.
pub fn enumerate_rational_indices(
    structure: &IndexedStructure,
    sort: usize,
    budget: SearchBudget,
) -> Result<RationalIndices, IndexError> {
    let dom = structure.sorts.get(sort).ok_or_else(|| IndexError::Invalid(format!("no sort {sort}")))?.clone();
    let op = |name: &str| {
        structure
            .op(name)
            .filter(|o| o.args == [sort, sort] && o.result == sort)
            .map(|o| o.apply.clone())
            .ok_or_else(|| IndexError::Invalid(format!("missing binary operation `{name}` on sort {sort}")))
    };
    let (add, mul) = (op("add")?, op("mul")?);
    let field = dom.decode(&dom.enumerate(0)?)?.as_field()?.field().clone();
    let z = least_index(dom.as_ref(), &Value::Field(FieldElement::zero(&field)), budget)?;
    let u = least_index(dom.as_ref(), &Value::Field(FieldElement::one(&field)), budget)?;
    Ok(RationalIndices {
        sort: dom,
        add,
        mul,
        u,
        budget,
        next: 0,
        j: vec![z],
        differences: HashMap::new(),
        quotients: HashMap::new(),
    })
}

impl RationalIndices {
    fn j(&mut self, p: u64) -> Result<Nat, IndexError> {
        while self.j.len() as u64 <= p {
            let last = self.j.last().expect("J(0) is set").clone();
            let next = (self.add)(&[last, self.u.clone()])?;
            self.j.push(next);
        }
        Ok(self.j[p as usize].clone())
    }

    /// `(J(p) −̂ J(q)) /̂ (J(r) +̂ u)`.
    pub fn index_at(&mut self, p: u64, q: u64, r: u64) -> Result<Nat, IndexError> {
        let diff = match self.differences.get(&(p, q)) {
            Some(d) => d.clone(),
            None => {
                let (jp, jq) = (self.j(p)?, self.j(q)?);
                let d = derive_inverse_op(&self.add, self.sort.as_ref(), &jp, &jq, self.budget);
                self.differences.insert((p, q), d.clone());
                d
            }
        }?;
        let key = (diff.clone(), r);
        if let Some(x) = self.quotients.get(&key) {
            return x.clone();
        }
        let jr = self.j(r)?;
        let denom = (self.add)(&[jr, self.u.clone()])?;
        let x = derive_inverse_op(&self.mul, self.sort.as_ref(), &diff, &denom, self.budget);
        self.quotients.insert(key, x.clone());
        x
    }

    fn item(&mut self, p: u64, q: u64, r: u64) -> Result<(Nat, Rational), IndexError> {
        let x = self.index_at(p, q, r)?;
        let v = self.sort.decode(&x)?;
        let e = v.as_field()?;
        let q = e
            .as_rational()
            .cloned()
            .ok_or_else(|| IndexError::Invalid(format!("index {x} decodes to the irrational {e}")))?;
        Ok((x, q))
    }
}

impl Iterator for RationalIndices {
    type Item = RationalItem;

    fn next(&mut self) -> Option<RationalItem> {
        let t = self.next;
        self.next += 1;
        let v = cantor_split(t, 3);
        let (p, q, r) = (v[0], v[1], v[2]);
        Some(RationalItem { triple: (p, q, r), outcome: self.item(p, q, r) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::sqrt2;
    use crate::indexing::registry::{field_indexing, rationals};

    #[test]
    fn small_triples_decode_to_their_quotient() {
        let ti = field_indexing(&sqrt2(), &rationals());
        let mut it = enumerate_rational_indices(&ti.structure(), 1, SearchBudget::default()).unwrap();
        let (_, two) = it.item(3, 1, 0).unwrap();
        assert_eq!(two, Rational::from_int(2));
        let (_, zero) = it.item(4, 4, 2).unwrap();
        assert!(zero.is_zero());
        let (_, third) = it.item(0, 2, 5).unwrap();
        assert_eq!(third, Rational::new(-1, 3).unwrap());
    }
}
