use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use et_core::encoding::{decode_tree, encode_tree, pair, retranslate, unpair, LabelTable, Nat, TermTree};
use et_core::exactnum::{gaussian, random_element, sqrt2, zeta8, FieldElement, FieldRef, Rational};
use et_core::indexing::registry::nat_s;
use et_core::indexing::{right_inverse, SearchBudget};
use et_core::qsim::{gate_library, probabilities, run_state, Circuit};
use et_core::tensor::{BasisWord, TensorVector};

fn table() -> LabelTable {
    LabelTable::new(&[("a", 0), ("b", 0), ("f", 1), ("g", 2), ("h", 3)]).unwrap()
}

fn tree() -> impl Strategy<Value = TermTree> {
    let leaf = prop_oneof![Just(TermTree::leaf("a")), Just(TermTree::leaf("b"))];
    leaf.prop_recursive(6, 64, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(|t| TermTree::node("f", vec![t])),
            prop::collection::vec(inner.clone(), 2).prop_map(|c| TermTree::node("g", c)),
            prop::collection::vec(inner, 3).prop_map(|c| TermTree::node("h", c)),
        ]
    })
}

fn field() -> impl Strategy<Value = FieldRef> {
    prop_oneof![Just(et_core::exactnum::rationals()), Just(sqrt2()), Just(gaussian()), Just(zeta8())]
}

fn element(f: &FieldRef, seed: u64) -> FieldElement {
    random_element(f, &mut StdRng::seed_from_u64(seed))
}

/// A random vector over the 2-letter alphabet with words of length 1 to 3.
fn vector(seed: u64) -> TensorVector {
    use rand::Rng;
    let f = zeta8();
    let mut rng = StdRng::seed_from_u64(seed);
    let n = rng.gen_range(0..5);
    let terms: Vec<_> = (0..n)
        .map(|_| {
            let len = rng.gen_range(1..=3);
            let w: String = (0..len).map(|_| if rng.gen_bool(0.5) { '1' } else { '0' }).collect();
            (BasisWord::new(&w).unwrap(), random_element(&f, &mut rng))
        })
        .collect();
    TensorVector::from_terms(&f, terms).unwrap()
}

fn sparse(v: &TensorVector) -> bool {
    v.terms().values().all(|a| !a.is_zero())
}

proptest! {
    #[test]
    fn unpair_inverts_pair(n in 0u64..1 << 30, p in 0u64..1 << 30) {
        let z = pair(&Nat::from(n), &Nat::from(p));
        prop_assert!(!z.is_zero());
        let (a, b) = unpair(&z).unwrap();
        prop_assert_eq!((a, b), (Nat::from(n), Nat::from(p)));
    }

    #[test]
    fn nested_pairs_round_trip(n in 0u64..1000, p in 0u64..1000, q in 0u64..1000) {
        let inner = pair(&Nat::from(p), &Nat::from(q));
        let z = pair(&Nat::from(n), &inner);
        let (a, rest) = unpair(&z).unwrap();
        prop_assert_eq!(a, Nat::from(n));
        prop_assert_eq!(rest, inner);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn trees_round_trip(t in tree()) {
        let tab = table();
        let x = encode_tree(&tab, &t).unwrap();
        prop_assert_eq!(decode_tree(&tab, &x).unwrap(), t);
    }
}

proptest! {
    #[test]
    fn retranslation_is_decode_then_encode(t in tree()) {
        let from = table();
        let to = from.reversed();
        let x = encode_tree(&from, &t).unwrap();
        let y = retranslate(&from, &to, &x).unwrap();
        prop_assert_eq!(&y, &encode_tree(&to, &t).unwrap());
        prop_assert_eq!(retranslate(&to, &from, &y).unwrap(), x);
    }

    #[test]
    fn rationals_normalize(a in -1000i64..1000, b in 1i64..1000, k in 1i64..=20) {
        let r = Rational::new(a, b).unwrap();
        prop_assert_eq!(&Rational::new(k * a, k * b).unwrap(), &r);
        prop_assert_eq!(Rational::new(r.numer().clone(), r.denom().clone()).unwrap(), r);
    }

    #[test]
    fn field_laws(f in field(), s in any::<u64>()) {
        let a = element(&f, s);
        let b = element(&f, s ^ 0x5555);
        let c = element(&f, s ^ 0xaaaa);
        prop_assert!(a.mul(&b).unwrap().exact_eq(&b.mul(&a).unwrap()).unwrap());
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        prop_assert!(left.exact_eq(&a.mul(&b.mul(&c).unwrap()).unwrap()).unwrap());
        let dist = a.mul(&b.add(&c).unwrap()).unwrap();
        prop_assert!(dist.exact_eq(&a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()).unwrap());
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inverse().unwrap()).unwrap().is_one());
        }
    }

    #[test]
    fn conjugation_is_an_automorphism(f in field(), s in any::<u64>()) {
        let a = element(&f, s);
        let b = element(&f, s.wrapping_add(1));
        let prod = a.mul(&b).unwrap().conj().unwrap();
        prop_assert!(prod.exact_eq(&a.conj().unwrap().mul(&b.conj().unwrap()).unwrap()).unwrap());
        let sum = a.add(&b).unwrap().conj().unwrap();
        prop_assert!(sum.exact_eq(&a.conj().unwrap().add(&b.conj().unwrap()).unwrap()).unwrap());
    }

    #[test]
    fn field_text_round_trips(f in field(), s in any::<u64>()) {
        let a = element(&f, s);
        prop_assert!(FieldElement::parse(&f, &a.to_string()).unwrap().exact_eq(&a).unwrap());
        prop_assert!(FieldElement::parse(&f, &a.to_trimmed_string()).unwrap().exact_eq(&a).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn tensor_is_bilinear(s in any::<u64>()) {
        let (u, u2, v) = (vector(s), vector(s ^ 1), vector(s ^ 2));
        let left = u.add(&u2).unwrap().tensor(&v).unwrap();
        prop_assert!(left.tv_eq(&u.tensor(&v).unwrap().add(&u2.tensor(&v).unwrap()).unwrap()).unwrap());
        let right = v.tensor(&u.add(&u2).unwrap()).unwrap();
        prop_assert!(right.tv_eq(&v.tensor(&u).unwrap().add(&v.tensor(&u2).unwrap()).unwrap()).unwrap());
        let k = element(&zeta8(), s ^ 3);
        let scaled = u.scale(&k).unwrap().tensor(&v).unwrap();
        prop_assert!(scaled.tv_eq(&u.tensor(&v.scale(&k).unwrap()).unwrap()).unwrap());
    }

    #[test]
    fn operations_store_no_zeros(s in any::<u64>()) {
        let (u, v) = (vector(s), vector(s ^ 7));
        let neg = u.scale(&FieldElement::one(&zeta8()).neg()).unwrap();
        for w in [u.add(&v).unwrap(), u.add(&neg).unwrap(), u.tensor(&v).unwrap(), u.scale(&FieldElement::zero(&zeta8())).unwrap()] {
            prop_assert!(sparse(&w));
        }
        prop_assert!(u.add(&neg).unwrap().is_zero());
    }

    #[test]
    fn state_text_round_trips(s in any::<u64>()) {
        let u = vector(s);
        prop_assert!(TensorVector::parse(&zeta8(), &u.to_string()).unwrap().tv_eq(&u).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn tensor_is_associative(s in any::<u64>()) {
        let (u, v, w) = (vector(s), vector(s ^ 1), vector(s ^ 2));
        let left = u.tensor(&v).unwrap().tensor(&w).unwrap();
        prop_assert!(left.tv_eq(&u.tensor(&v.tensor(&w).unwrap()).unwrap()).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn norm_is_exactly_one_after_every_gate(
        steps in prop::collection::vec((0usize..6, 0usize..3, 1usize..3), 0..20),
        start in 0usize..8,
    ) {
        let lib = gate_library();
        let mut c = Circuit::new(3).unwrap();
        for (g, a, d) in steps {
            let name = ["h", "t", "s", "x", "z", "cnot"][g];
            let targets = if name == "cnot" { vec![a, (a + d) % 3] } else { vec![a] };
            c.push(&lib, name, &targets).unwrap();
        }
        let word: String = (0..3).map(|i| if start >> (2 - i) & 1 == 1 { '1' } else { '0' }).collect();
        let init = TensorVector::basis(&zeta8(), BasisWord::new(&word).unwrap());
        let mut ok = true;
        run_state(&c, &init, &lib, |_, st| ok &= probabilities(st).unwrap().total.is_one()).unwrap();
        prop_assert!(ok);
    }

    #[test]
    fn right_inverse_meets_its_postcondition(y in 0u64..40) {
        let n = nat_s();
        let dom = n.sort(0);
        let target = dom.enumerate(y).unwrap();
        let double = |x: &Nat| -> Result<Nat, et_core::indexing::IndexError> {
            let v = dom.decode(x)?;
            dom.represent(&et_core::indexing::Value::Natural(v.as_natural()? * 2u32))
        };
        match right_inverse(&double, dom.as_ref(), &target, SearchBudget::new(200).unwrap()) {
            Ok(x) => {
                prop_assert_eq!(double(&x).unwrap(), target);
                prop_assert_eq!(y % 2, 0);
            }
            Err(_) => prop_assert_eq!(y % 2, 1),
        }
    }
}
