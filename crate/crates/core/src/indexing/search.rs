//! Budgeted searches over an enumerated domain.

use std::sync::Arc;

use crate::encoding::Nat;

use super::{IndexError, IndexFn, Indexing, MapFn, SearchBudget, Translator, Value};

fn exhausted(what: impl Into<String>, budget: SearchBudget) -> IndexError {
    IndexError::BudgetExhausted { what: what.into(), steps: budget.max_steps() }
}

/// `g(z)` for the least `z` below the budget with `h(g(z)) = y`, where `g`
/// enumerates `domain`. Candidates on which `h` fails are skipped.
pub fn right_inverse(
    h: &dyn Fn(&Nat) -> Result<Nat, IndexError>,
    domain: &dyn Indexing,
    y: &Nat,
    budget: SearchBudget,
) -> Result<Nat, IndexError> {
    for z in 0..budget.max_steps() {
        let x = domain.enumerate(z)?;
        if h(&x).is_ok_and(|hx| &hx == y) {
            return Ok(x);
        }
    }
    Err(exhausted(format!("inverting at {y}"), budget))
}

/// Like [`right_inverse`], but compares `h(g(z))` with `y` through the
/// `equal` of the indexing `h` lands in.
pub fn right_inverse_eq(
    h: &dyn Fn(&Nat) -> Result<Nat, IndexError>,
    domain: &dyn Indexing,
    codomain: &dyn Indexing,
    y: &Nat,
    budget: SearchBudget,
) -> Result<Nat, IndexError> {
    for z in 0..budget.max_steps() {
        let x = domain.enumerate(z)?;
        let Ok(hx) = h(&x) else { continue };
        if codomain.equal(&hx, y)? {
            return Ok(x);
        }
    }
    Err(exhausted(format!("inverting at {y} up to equality"), budget))
}

/// The first enumerated index of `v`. Uses the indexing's own position
/// function when it has one, otherwise searches, comparing with `equal`
/// against a representative of `v` (or with decoded values when the
/// indexing cannot represent).
pub fn least_index(domain: &dyn Indexing, v: &Value, budget: SearchBudget) -> Result<Nat, IndexError> {
    if let Some(z) = domain.locate(v) {
        return domain.enumerate(z);
    }
    let reference = match domain.represent(v) {
        Ok(r) => Some(r),
        Err(IndexError::Unsupported(_)) => None,
        Err(e) => return Err(e),
    };
    for z in 0..budget.max_steps() {
        let x = domain.enumerate(z)?;
        let hit = match &reference {
            Some(r) => domain.equal(&x, r)?,
            None => &domain.decode(&x)? == v,
        };
        if hit {
            return Ok(x);
        }
    }
    Err(exhausted(format!("looking for an index of {v} in {}", domain.tag()), budget))
}

/// The inverse of a binary operation by search: `g(z)` for the least `z`
/// with `forward(p, g(z))` equal to `n`. With addition this is
/// subtraction `n - p`, with multiplication division `n / p`.
pub fn derive_inverse_op(
    forward: &IndexFn,
    domain: &dyn Indexing,
    n: &Nat,
    p: &Nat,
    budget: SearchBudget,
) -> Result<Nat, IndexError> {
    for z in 0..budget.max_steps() {
        let c = domain.enumerate(z)?;
        let Ok(out) = forward(&[p.clone(), c.clone()]) else {
            continue;
        };
        if domain.equal(&out, n)? {
            return Ok(c);
        }
    }
    Err(exhausted("inverting a binary operation", budget))
}

/// Moves an index-level function across indexings.
///
/// `f_hat` works on the domains of `i₁ … i_{m+1}`; `args[k]` maps
/// `dom(i′_k)` into `dom(i_k)` with `i′_k = i_k ∘ h_k`, and `result` does the
/// same for the codomain. The returned function works on the primed domains:
/// it translates its arguments, applies `f_hat`, and pulls the result back
/// through a searched right inverse of `result`.
pub fn transport_function(f_hat: IndexFn, args: Vec<Translator>, result: Translator, budget: SearchBudget) -> IndexFn {
    Arc::new(move |xs: &[Nat]| {
        if xs.len() != args.len() {
            return Err(IndexError::Invalid(format!("expected {} arguments, got {}", args.len(), xs.len())));
        }
        let ys = xs.iter().zip(&args).map(|(x, h)| h.apply(x)).collect::<Result<Vec<_>, _>>()?;
        let y = f_hat(&ys)?;
        let h: &MapFn = &result.map;
        right_inverse_eq(&|x| h(x), result.source.as_ref(), result.target.as_ref(), &y, budget)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indexing::registry::NatIdentity;

    #[test]
    fn right_inverse_of_doubling() {
        let double = |x: &Nat| Ok(Nat::from(x.as_u64().unwrap() * 2));
        let dom = NatIdentity::new();
        assert_eq!(right_inverse(&double, &dom, &Nat::from(6), SearchBudget::default()).unwrap(), Nat::from(3));
        let err = right_inverse(&double, &dom, &Nat::from(7), SearchBudget::new(1000).unwrap()).unwrap_err();
        assert!(matches!(err, IndexError::BudgetExhausted { steps: 1000, .. }));
    }

    #[test]
    fn zero_budget_rejected() {
        assert!(SearchBudget::new(0).is_err());
    }
}
