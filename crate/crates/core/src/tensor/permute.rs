//! Indexings twisted by a permutation of the basis, and recovering the
//! permutation from a translator: `h(p) = C(g(B(p)))`.

use std::sync::Arc;

use crate::encoding::{Nat, TermTree};
use crate::exactnum::FieldElement;
use crate::indexing::{
    build_translator, least_index, numeral_sub_translator, IndexError, SearchBudget, TermIndexing, TermTranslator,
    Translator, Value, ValueMap,
};

use super::{TensorError, TensorSpace, TensorVector};

type RankMap = Arc<dyn Fn(u64) -> u64 + Send + Sync>;

/// A permutation of word ranks with its inverse.
#[derive(Clone)]
pub struct PermutationOracle {
    pub name: String,
    pub forward: RankMap,
    pub inverse: RankMap,
}

impl PermutationOracle {
    pub fn identity() -> Self {
        PermutationOracle { name: "identity".into(), forward: Arc::new(|p| p), inverse: Arc::new(|p| p) }
    }

    /// `2n ↔ 2n+1`.
    pub fn swap_adjacent() -> Self {
        PermutationOracle { name: "swap-adjacent".into(), forward: Arc::new(|p| p ^ 1), inverse: Arc::new(|p| p ^ 1) }
    }

    /// `p ↦ n-1-p` below `n`, the identity above.
    pub fn reverse_prefix(n: u64) -> Self {
        let f = move |p: u64| if p < n { n - 1 - p } else { p };
        PermutationOracle { name: format!("reverse{n}"), forward: Arc::new(f), inverse: Arc::new(f) }
    }

    /// `identity`, `swap-adjacent`, or `reverse<n>`.
    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "identity" => Some(Self::identity()),
            "swap-adjacent" => Some(Self::swap_adjacent()),
            _ => name.strip_prefix("reverse").and_then(|n| n.parse().ok()).map(Self::reverse_prefix),
        }
    }

    pub fn table(&self, range: u64) -> Vec<u64> {
        (0..range).map(|p| (self.forward)(p)).collect()
    }

    /// Whether the inverse undoes the forward map on `[0, range)`.
    pub fn check(&self, range: u64) -> bool {
        (0..range).all(|p| (self.inverse)((self.forward)(p)) == p)
    }
}

fn permute(space: &TensorSpace, f: &RankMap, v: &TensorVector) -> Result<TensorVector, TensorError> {
    let a = space.alphabet();
    let terms = v
        .terms()
        .iter()
        .map(|(w, c)| {
            let r = a.rank(w).ok_or_else(|| TensorError::Invalid(format!("{w} has no rank")))?;
            Ok((a.word_at(f(r)), c.clone()))
        })
        .collect::<Result<Vec<_>, TensorError>>()?;
    TensorVector::from_terms(v.field(), terms)
}

/// The base indexing with every vector sent through the linear extension of
/// `e_p ↦ e_{f(p)}`. `⊗` does not commute with such a map, so it is marked
/// opaque and left out of the permuted structure.
pub fn permuted_indexing(base: &TensorSpace, oracle: &PermutationOracle) -> TermIndexing {
    let map = |f: RankMap| {
        let space = base.clone();
        Arc::new(move |_: usize, v: &Value| Ok(Value::Tensor(permute(&space, &f, v.as_tensor()?)?)))
    };
    let vm = ValueMap { forward: map(oracle.forward.clone()), inverse: map(oracle.inverse.clone()) };
    base.indexing().with_value_map(&format!("{} permuted by {}", base.indexing().name(), oracle.name), vm, &["tensor"])
}

fn scalar_term(space: &TensorSpace, c: FieldElement) -> Result<TermTree, IndexError> {
    let x = least_index(space.scalars().as_ref(), &Value::Field(c), SearchBudget::default())?;
    Ok(TermIndexing::numeral_term(&x))
}

/// `B(p)`: the index of `0.e₀ + (0.e₁ + … + 1.e_p)`, which decodes to the
/// basis vector of rank `p`.
pub fn basis_index_term(p: u64, space: &TensorSpace) -> Result<Nat, TensorError> {
    let f = space.field();
    let zero = scalar_term(space, FieldElement::zero(f))?;
    let one = scalar_term(space, FieldElement::one(f))?;
    let a = space.alphabet();
    let summand = |q: u64, s: &TermTree| TermTree::node("smul", vec![s.clone(), space.word_term(&a.word_at(q))]);
    let mut t = summand(p, &one);
    for q in (0..p).rev() {
        t = TermTree::node("add", vec![summand(q, &zero), t]);
    }
    Ok(space.indexing().encode(&t)?)
}

/// `C(x)`: the rank `p` when `x` decodes to `e_p`.
pub fn which_basis(x: &Nat, space: &TensorSpace) -> Result<u64, TensorError> {
    let v = space.vector_of(x)?;
    let mut terms = v.terms().iter();
    match (terms.next(), terms.next()) {
        (Some((w, c)), None) if c.is_one() => {
            space.alphabet().rank(w).ok_or_else(|| TensorError::NotABasisVector(format!("{w} has no rank")))
        }
        _ => Err(TensorError::NotABasisVector(v.to_string())),
    }
}

/// The translator from a permuted indexing back to its base.
pub fn permutation_translator(
    base: &TensorSpace,
    permuted: &TermIndexing,
    budget: SearchBudget,
) -> Result<Arc<TermTranslator>, TensorError> {
    let target = base.indexing().structure();
    Ok(build_translator(permuted, &target, vec![numeral_sub_translator(base.indexing(), None)], budget)?)
}

/// `h(p) = C(g(B(p)))` for `p < range`, where `g` maps indices of the
/// permuted indexing to indices of `space`.
pub fn extract_permutation(g: &Translator, space: &TensorSpace, range: u64) -> Result<Vec<u64>, TensorError> {
    (0..range).map(|p| which_basis(&g.apply(&basis_index_term(p, space)?)?, space)).collect()
}
