//! Translators out of a term indexing, defined by induction on terms.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::encoding::{Nat, TermTree};

use super::{IndexError, IndexedStructure, MapFn, SearchBudget, TermIndexing, Translator, Value};

/// Maps indices of `source` to indices of an admissible `target`:
///
/// * a numeral `⌜S^x(0)⌝` of scalar sort `k` goes to `g_k(x)`;
/// * `⌜op(t₁ … t_l)⌝` goes to `õp(h(⌜t₁⌝) … h(⌜t_l⌝))`, using the target's
///   implementation of `op`;
/// * a constant, or a subterm whose head the source marks as not
///   translatable node by node, goes to the first index in the target's
///   enumeration that the target's `equal` identifies with (a reference
///   index of) its value.
pub struct TermTranslator {
    source: TermIndexing,
    target: IndexedStructure,
    scalar: Vec<MapFn>,
    budget: SearchBudget,
    atoms: Mutex<HashMap<(usize, Nat), Nat>>,
}

pub fn build_translator(
    source: &TermIndexing,
    target: &IndexedStructure,
    scalar: Vec<MapFn>,
    budget: SearchBudget,
) -> Result<Arc<TermTranslator>, IndexError> {
    if target.sorts.len() != source.sort_count() {
        return Err(IndexError::Invalid(format!(
            "source has {} sorts, target {}",
            source.sort_count(),
            target.sorts.len()
        )));
    }
    if scalar.len() != source.scalar_sorts() {
        return Err(IndexError::Invalid(format!(
            "expected {} scalar translators, got {}",
            source.scalar_sorts(),
            scalar.len()
        )));
    }
    let tr = Arc::new(TermTranslator {
        source: source.clone(),
        target: target.clone(),
        scalar,
        budget,
        atoms: Mutex::new(HashMap::new()),
    });
    for c in source.constants() {
        tr.translate(c.sort, &TermTree::leaf(&c.symbol))
            .map_err(|e| IndexError::Invalid(format!("no target index for constant `{}`: {e}", c.symbol)))?;
    }
    Ok(tr)
}

/// `x ↦ ⌜S^{inner(x)}(0)⌝` in a term-indexing target; `inner` defaults to
/// the identity (same base indexing on both sides).
pub fn numeral_sub_translator(target: &TermIndexing, inner: Option<MapFn>) -> MapFn {
    let target = target.clone();
    Arc::new(move |x: &Nat| {
        let y = match &inner {
            Some(f) => f(x)?,
            None => x.clone(),
        };
        Ok(target.wrap_numeral(&y))
    })
}

impl TermTranslator {
    pub fn source(&self) -> &TermIndexing {
        &self.source
    }

    pub fn target(&self) -> &IndexedStructure {
        &self.target
    }

    /// `h_k` on an index.
    pub fn translate_index(&self, k: usize, x: &Nat) -> Result<Nat, IndexError> {
        let t = self.source.decode_term(x)?;
        self.translate(k, &t)
    }

    /// `h_k` as a [`Translator`] between the two sort indexings.
    pub fn for_sort(self: &Arc<Self>, k: usize) -> Translator {
        let me = self.clone();
        Translator {
            source: self.source.sort(k),
            target: self.target.sorts[k].clone(),
            map: Arc::new(move |x: &Nat| me.translate_index(k, x)),
        }
    }

    fn node_by_node(&self, symbol: &str, arity: usize) -> Option<Vec<usize>> {
        let op = self.source.new_op(symbol)?;
        if !op.structural || op.args.len() != arity {
            return None;
        }
        let t = self.target.op(symbol)?;
        (t.args == op.args).then(|| op.args.clone())
    }

    pub fn translate(&self, k: usize, t: &TermTree) -> Result<Nat, IndexError> {
        if k < self.source.scalar_sorts() {
            let x = t
                .numeral_count("S", "0")
                .ok_or_else(|| IndexError::NotInDomain(format!("expected a numeral, found `{t}`")))?;
            return (self.scalar[k])(&x);
        }
        match t {
            TermTree::Numeral { succ, zero, count } if self.node_by_node(succ, 1).is_some() => {
                let steps = count
                    .as_u64()
                    .ok_or_else(|| IndexError::Unsupported(format!("`{succ}` iterated too often to translate")))?;
                let mut x = self.translate(k, &TermTree::leaf(zero))?;
                for _ in 0..steps {
                    x = self.target.apply(succ, std::slice::from_ref(&x))?;
                }
                Ok(x)
            }
            TermTree::Node { symbol, children } if !children.is_empty() => {
                match self.node_by_node(symbol, children.len()) {
                    Some(sorts) => {
                        let xs = sorts
                            .iter()
                            .zip(children)
                            .map(|(&s, c)| self.translate(s, c))
                            .collect::<Result<Vec<_>, _>>()?;
                        self.target.apply(symbol, &xs)
                    }
                    None => self.atom(k, t),
                }
            }
            _ => self.atom(k, t),
        }
    }

    fn atom(&self, k: usize, t: &TermTree) -> Result<Nat, IndexError> {
        let key = (k, self.source.encode(t)?);
        if let Some(x) = self.atoms.lock().unwrap_or_else(|e| e.into_inner()).get(&key) {
            return Ok(x.clone());
        }
        let value = self.source.value_of(k, t)?;
        let x = self.first_index_of(k, &value)?;
        self.atoms.lock().unwrap_or_else(|e| e.into_inner()).insert(key, x.clone());
        Ok(x)
    }

    fn first_index_of(&self, k: usize, value: &Value) -> Result<Nat, IndexError> {
        let target = &self.target.sorts[k];
        let reference = match target.represent(value) {
            Ok(r) => Some(r),
            Err(IndexError::Unsupported(_)) => None,
            Err(e) => return Err(e),
        };
        for z in 0..self.budget.max_steps() {
            let x = target.enumerate(z)?;
            let hit = match &reference {
                Some(r) => target.equal(&x, r)?,
                None => &target.decode(&x)? == value,
            };
            if hit {
                return Ok(x);
            }
        }
        Err(IndexError::BudgetExhausted {
            what: format!("looking for {value} in {}", target.tag()),
            steps: self.budget.max_steps(),
        })
    }
}
