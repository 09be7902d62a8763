//! Sampled audit of the field axioms for a set of structure constants.

use std::fmt;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::{ExactError, FieldElement, FieldRef, Rational};

/// A random element with small coordinates, about a quarter of them zero.
pub fn random_element<R: Rng>(field: &FieldRef, rng: &mut R) -> FieldElement {
    let coords = (0..field.degree())
        .map(|_| {
            if rng.gen_bool(0.25) {
                Rational::zero()
            } else {
                Rational::new(rng.gen_range(-7i64..=7), rng.gen_range(1i64..=6)).expect("nonzero denominator")
            }
        })
        .collect();
    FieldElement::new(field, coords).expect("coordinate count matches degree")
}

#[derive(Clone, Debug)]
pub struct AxiomResult {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
    pub witness: Option<String>,
}

#[derive(Clone, Debug)]
pub struct FieldCheckReport {
    pub field: String,
    pub samples: usize,
    pub axioms: Vec<AxiomResult>,
}

impl FieldCheckReport {
    pub fn ok(&self) -> bool {
        self.axioms.iter().all(|a| a.failed == 0)
    }
}

impl fmt::Display for FieldCheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "field {} ({} samples)", self.field, self.samples)?;
        for a in &self.axioms {
            let verdict = if a.failed == 0 { "pass" } else { "FAIL" };
            write!(f, "  {:<24} {verdict} {}/{}", a.name, a.passed, a.passed + a.failed)?;
            if let Some(w) = &a.witness {
                write!(f, "  witness: {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

type Law = fn(&FieldElement, &FieldElement, &FieldElement) -> Result<bool, ExactError>;

fn laws(with_conj: bool) -> Vec<(&'static str, usize, Law)> {
    let mut v: Vec<(&'static str, usize, Law)> = vec![
        ("add-commutativity", 2, |a, b, _| a.add(b)?.exact_eq(&b.add(a)?)),
        ("add-associativity", 3, |a, b, c| a.add(b)?.add(c)?.exact_eq(&a.add(&b.add(c)?)?)),
        ("mul-commutativity", 2, |a, b, _| a.mul(b)?.exact_eq(&b.mul(a)?)),
        ("mul-associativity", 3, |a, b, c| a.mul(b)?.mul(c)?.exact_eq(&a.mul(&b.mul(c)?)?)),
        ("distributivity", 3, |a, b, c| a.mul(&b.add(c)?)?.exact_eq(&a.mul(b)?.add(&a.mul(c)?)?)),
        ("unit", 1, |a, _, _| FieldElement::one(a.field()).mul(a)?.exact_eq(a)),
        ("inverse", 1, |a, _, _| {
            if a.is_zero() {
                return Ok(true);
            }
            a.mul(&a.inverse()?)?.exact_eq(&FieldElement::one(a.field()))
        }),
    ];
    if with_conj {
        v.push(("conj-multiplicative", 2, |a, b, _| a.mul(b)?.conj()?.exact_eq(&a.conj()?.mul(&b.conj()?)?)));
        v.push(("conj-additive", 2, |a, b, _| a.add(b)?.conj()?.exact_eq(&a.conj()?.add(&b.conj()?)?)));
        v.push(("conj-involution", 1, |a, _, _| a.conj()?.conj()?.exact_eq(a)));
    }
    v
}

/// Checks every axiom on `samples` random tuples. An arithmetic error
/// (for instance a singular inverse) counts as a failure of that axiom.
pub fn check_field_axioms(field: &FieldRef, samples: usize, seed: u64) -> FieldCheckReport {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut axioms = Vec::new();
    for (name, arity, law) in laws(field.has_conjugation()) {
        let mut result = AxiomResult { name, passed: 0, failed: 0, witness: None };
        for _ in 0..samples {
            let xs: Vec<FieldElement> = (0..3).map(|_| random_element(field, &mut rng)).collect();
            let outcome = law(&xs[0], &xs[1], &xs[2]);
            if matches!(outcome, Ok(true)) {
                result.passed += 1;
                continue;
            }
            result.failed += 1;
            if result.witness.is_none() {
                let args: Vec<String> = xs[..arity].iter().map(|x| x.to_string()).collect();
                let mut w = args.join(", ");
                if let Err(e) = outcome {
                    w.push_str(&format!(" ({e})"));
                }
                result.witness = Some(w);
            }
        }
        axioms.push(result);
    }
    FieldCheckReport { field: field.name().to_string(), samples, axioms }
}
