//! Prebuilt indexed structures.

use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::encoding::{cantor_pair, cantor_split, Nat, TermTree};
use crate::exactnum::{FieldElement, FieldRef, Rational};

use super::term::CustomFn;
use super::{
    rational_at, rational_position, Constant, GeneratedSort, GenerativeSpec, IndexError, IndexedStructure, Indexing,
    IndexingRef, NewOp, Operation, TermIndexing, Value, ValueFn,
};

/// Longest unary term the registry will build.
const MAX_UNARY: u64 = 1 << 20;

fn value_fn(f: impl Fn(&[Value]) -> Result<Value, IndexError> + Send + Sync + 'static) -> ValueFn {
    Arc::new(f)
}

/// ⟨ℕ, S⟩ with terms `S^n(0)`.
pub fn nat_s() -> TermIndexing {
    let sort = GeneratedSort {
        tag: "N".into(),
        enumerate: Arc::new(|z| Ok(TermTree::numeral("S", "0", &Nat::from(z)))),
        recognize: Arc::new(|t| t.numeral_count("S", "0").is_some()),
        represent: Some(Arc::new(|v| Ok(TermTree::numeral("S", "0", &Nat::from_biguint(v.as_natural()?))))),
        locate: Some(Arc::new(|v| v.as_natural().ok()?.to_u64())),
    };
    let spec = GenerativeSpec {
        name: "nat-s".into(),
        base: None,
        sorts: vec![sort],
        constants: vec![Constant { symbol: "0".into(), sort: 0, value: Value::Natural(BigUint::zero()) }],
        ops: vec![NewOp::rewrap("S", vec![0], 0, value_fn(|v| Ok(Value::Natural(v[0].as_natural()? + 1u32))))],
        label_order: None,
    };
    TermIndexing::build(spec).expect("valid generators")
}

/// `1 + (1 + … (1 + 0))` with `n` ones.
fn unary(n: u64) -> Result<TermTree, IndexError> {
    if n > MAX_UNARY {
        return Err(IndexError::Unsupported(format!("unary term for {n} is too long")));
    }
    let mut t = TermTree::leaf("0");
    for _ in 0..n {
        t = TermTree::node("add", vec![TermTree::leaf("1"), t]);
    }
    Ok(t)
}

fn read_unary(t: &TermTree) -> Option<u64> {
    let mut n = 0;
    let mut cur = t;
    loop {
        match cur.symbol() {
            "0" if cur.children().is_empty() => return Some(n),
            "add" if cur.children().len() == 2 && cur.children()[0] == TermTree::leaf("1") => {
                n += 1;
                cur = &cur.children()[1];
            }
            _ => return None,
        }
    }
}

/// ⟨ℕ, +⟩ with terms `1 + (1 + … (1 + 0))`.
pub fn nat_plus() -> TermIndexing {
    let sort = GeneratedSort {
        tag: "N".into(),
        enumerate: Arc::new(unary),
        recognize: Arc::new(|t| read_unary(t).is_some()),
        represent: Some(Arc::new(|v| {
            let n = v.as_natural()?.to_u64().ok_or_else(|| IndexError::Unsupported("natural too large".into()))?;
            unary(n)
        })),
        locate: Some(Arc::new(|v| v.as_natural().ok()?.to_u64())),
    };
    let spec = GenerativeSpec {
        name: "nat-plus".into(),
        base: None,
        sorts: vec![sort],
        constants: vec![
            Constant { symbol: "0".into(), sort: 0, value: Value::Natural(BigUint::zero()) },
            Constant { symbol: "1".into(), sort: 0, value: Value::Natural(BigUint::one()) },
        ],
        ops: vec![NewOp::rewrap(
            "add",
            vec![0, 0],
            0,
            value_fn(|v| Ok(Value::Natural(v[0].as_natural()? + v[1].as_natural()?))),
        )],
        label_order: None,
    };
    TermIndexing::build(spec).expect("valid generators")
}

/// The identity indexing of ℕ: `n` is its own index.
pub struct NatIdentity;

impl NatIdentity {
    pub fn new() -> Self {
        NatIdentity
    }
}

impl Default for NatIdentity {
    fn default() -> Self {
        NatIdentity
    }
}

impl Indexing for NatIdentity {
    fn tag(&self) -> &str {
        "N (identity)"
    }

    fn enumerate(&self, z: u64) -> Result<Nat, IndexError> {
        Ok(Nat::from(z))
    }

    fn decode(&self, x: &Nat) -> Result<Value, IndexError> {
        x.to_biguint(1 << 16)
            .map(Value::Natural)
            .ok_or_else(|| IndexError::Unsupported("natural too large to materialize".into()))
    }

    fn equal(&self, x: &Nat, y: &Nat) -> Result<bool, IndexError> {
        Ok(x == y)
    }

    fn represent(&self, v: &Value) -> Result<Nat, IndexError> {
        Ok(Nat::from_biguint(v.as_natural()?))
    }

    fn locate(&self, v: &Value) -> Option<u64> {
        v.as_natural().ok()?.to_u64()
    }
}

/// ⟨ℕ, S⟩ under the identity indexing, with `S̃(x) = x + 1`.
pub fn nat_identity() -> IndexedStructure {
    IndexedStructure {
        name: "nat-identity".into(),
        sorts: vec![Arc::new(NatIdentity)],
        ops: vec![Operation {
            name: "S".into(),
            args: vec![0],
            result: 0,
            apply: Arc::new(|xs: &[Nat]| Ok(xs[0].succ()?)),
            semantic: value_fn(|v| Ok(Value::Natural(v[0].as_natural()? + 1u32))),
        }],
    }
}

/// `(p - q) / (1 + r)` for `x = (p - q)/(1 + r)` in lowest terms with one of
/// `p`, `q` zero.
pub fn rational_term(x: &Rational) -> Result<TermTree, IndexError> {
    let too_big = || IndexError::Unsupported(format!("{x} is too large for a unary term"));
    let n = x.numer().abs().to_u64().ok_or_else(too_big)?;
    let r = x.denom().to_u64().ok_or_else(too_big)? - 1;
    let (p, q) = if x.is_negative() { (0, n) } else { (n, 0) };
    Ok(TermTree::node(
        "div",
        vec![
            TermTree::node("sub", vec![unary(p)?, unary(q)?]),
            TermTree::node("add", vec![TermTree::leaf("1"), unary(r)?]),
        ],
    ))
}

fn is_rational_term(t: &TermTree) -> bool {
    let parts = || -> Option<(u64, u64, u64)> {
        if t.symbol() != "div" || t.children().len() != 2 {
            return None;
        }
        let (num, den) = (&t.children()[0], &t.children()[1]);
        if num.symbol() != "sub" || num.children().len() != 2 {
            return None;
        }
        if den.symbol() != "add" || den.children().len() != 2 || den.children()[0] != TermTree::leaf("1") {
            return None;
        }
        Some((read_unary(&num.children()[0])?, read_unary(&num.children()[1])?, read_unary(&den.children()[1])?))
    };
    match parts() {
        Some((0, 0, r)) => r == 0,
        Some((p, q, r)) => (p == 0 || q == 0) && (p + q).gcd(&(r + 1)) == 1,
        None => false,
    }
}

fn rational_op(f: fn(&Rational, &Rational) -> Result<Rational, IndexError>) -> ValueFn {
    value_fn(move |v| Ok(Value::Rational(f(v[0].as_rational()?, v[1].as_rational()?)?)))
}

/// ⟨ℚ, +, −, ×, /⟩ with the canonical terms `(p − q)/(1 + r)`, listed in
/// height order.
pub fn rationals() -> TermIndexing {
    let sort = GeneratedSort {
        tag: "Q".into(),
        enumerate: Arc::new(|z| rational_term(&rational_at(z))),
        recognize: Arc::new(is_rational_term),
        represent: Some(Arc::new(|v| rational_term(v.as_rational()?))),
        locate: Some(Arc::new(|v| rational_position(v.as_rational().ok()?))),
    };
    let spec = GenerativeSpec {
        name: "rationals".into(),
        base: None,
        sorts: vec![sort],
        constants: vec![
            Constant { symbol: "0".into(), sort: 0, value: Value::Rational(Rational::zero()) },
            Constant { symbol: "1".into(), sort: 0, value: Value::Rational(Rational::one()) },
        ],
        ops: vec![
            NewOp::rewrap("add", vec![0, 0], 0, rational_op(|a, b| Ok(a + b))),
            NewOp::rewrap("sub", vec![0, 0], 0, rational_op(|a, b| Ok(a - b))),
            NewOp::rewrap("mul", vec![0, 0], 0, rational_op(|a, b| Ok(a * b))),
            NewOp::rewrap("div", vec![0, 0], 0, rational_op(|a, b| Ok(a.checked_div(b)?))),
        ],
        label_order: None,
    };
    TermIndexing::build(spec).expect("valid generators")
}

fn basis_symbol(p: usize) -> String {
    format!("e_{p}")
}

/// Coordinate term `S^λ0(0).e_0 + (S^λ1(0).e_1 + … S^λ_{d-1}(0).e_{d-1})`.
fn coordinate_term(lambdas: &[Nat]) -> TermTree {
    let summand = |p: usize| {
        TermTree::node("smul", vec![TermIndexing::numeral_term(&lambdas[p]), TermTree::leaf(&basis_symbol(p))])
    };
    let d = lambdas.len();
    let mut t = summand(d - 1);
    for p in (0..d - 1).rev() {
        t = TermTree::node("add", vec![summand(p), t]);
    }
    t
}

/// The `λ` numerals of a coordinate term, or `None` if `t` has another shape.
fn coordinate_counts(t: &TermTree, d: usize) -> Option<Vec<Nat>> {
    let mut out = Vec::with_capacity(d);
    let mut cur = t;
    for p in 0..d {
        let summand = if p + 1 < d {
            if cur.symbol() != "add" || cur.children().len() != 2 {
                return None;
            }
            &cur.children()[0]
        } else {
            cur
        };
        if summand.symbol() != "smul" || summand.children().len() != 2 {
            return None;
        }
        if summand.children()[1] != TermTree::leaf(&basis_symbol(p)) {
            return None;
        }
        out.push(summand.children()[0].numeral_count("S", "0")?);
        if p + 1 < d {
            cur = &cur.children()[1];
        }
    }
    Some(out)
}

/// Coordinates of an index of the field sort, as indices of the base.
pub fn field_coordinates(ti: &TermIndexing, x: &Nat, degree: usize) -> Result<Vec<Nat>, IndexError> {
    let t = ti.decode_term(x)?;
    coordinate_counts(&t, degree).ok_or_else(|| IndexError::NotInDomain(format!("`{t}` is not a coordinate term")))
}

fn field_index(ti: &TermIndexing, lambdas: &[Nat]) -> Result<Nat, IndexError> {
    ti.encode(&coordinate_term(lambdas))
}

fn scalar_op(ti: &TermIndexing, name: &str, a: &Nat, b: &Nat) -> Result<Nat, IndexError> {
    ti.base().expect("field indexing has a base").apply(name, &[a.clone(), b.clone()])
}

/// Sort `1` of the result: a finite extension `L` of ℚ, indexed by
/// coordinate terms over a canonical ℚ indexing (sort `0`). Addition and
/// scalar multiplication act coordinatewise through the base operations;
/// multiplication uses the structure constants,
/// `λ''_r = Σ_{p,q} λ_p ×̂ λ'_q ×̂ μ_{p,q,r}` (terms with `m_{p,q,r} = 0` are
/// omitted).
pub fn field_indexing(field: &FieldRef, q: &TermIndexing) -> TermIndexing {
    let d = field.degree();
    let base = q.structure();
    let qsort: IndexingRef = base.sorts[0].clone();

    let enumerate = {
        let (field, qsort) = (field.clone(), qsort.clone());
        Arc::new(move |z: u64| {
            let positions = if z.is_multiple_of(2) {
                let mut v = vec![0u64; d];
                v[0] = z / 2;
                v
            } else {
                cantor_split((z - 1) / 2, field.degree())
            };
            let lambdas = positions.iter().map(|&p| qsort.enumerate(p)).collect::<Result<Vec<_>, _>>()?;
            Ok(coordinate_term(&lambdas))
        })
    };
    let represent = {
        let qsort = qsort.clone();
        Arc::new(move |v: &Value| {
            let e = v.as_field()?;
            let lambdas = e
                .coords()
                .iter()
                .map(|c| qsort.represent(&Value::Rational(c.clone())))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(coordinate_term(&lambdas))
        })
    };
    let locate = Arc::new(move |v: &Value| {
        let e = v.as_field().ok()?;
        let pos = e.coords().iter().map(rational_position).collect::<Option<Vec<u64>>>()?;
        let even = pos[1..].iter().all(|&p| p == 0).then(|| pos[0].checked_mul(2)).flatten();
        let mut rest = *pos.last()?;
        let mut joined = Some(rest);
        for &p in pos[..pos.len() - 1].iter().rev() {
            joined = cantor_pair(p, rest);
            match joined {
                Some(j) => rest = j,
                None => break,
            }
        }
        let odd = joined.and_then(|j| j.checked_mul(2)).and_then(|j| j.checked_add(1));
        match (even, odd) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    });
    let recognize = {
        let qsort = qsort.clone();
        Arc::new(move |t: &TermTree| {
            coordinate_counts(t, d).is_some_and(|ls| ls.iter().all(|l| qsort.decode(l).is_ok()))
        })
    };
    let sort = GeneratedSort {
        tag: field.name().to_string(),
        enumerate,
        recognize,
        represent: Some(represent),
        locate: Some(locate),
    };

    let constants = (0..d)
        .map(|p| Constant { symbol: basis_symbol(p), sort: 1, value: Value::Field(FieldElement::basis(field, p)) })
        .collect();

    let add: CustomFn = Arc::new(move |ti, xs| {
        let a = field_coordinates(ti, &xs[0], d)?;
        let b = field_coordinates(ti, &xs[1], d)?;
        let sum = a.iter().zip(&b).map(|(x, y)| scalar_op(ti, "add", x, y)).collect::<Result<Vec<_>, _>>()?;
        field_index(ti, &sum)
    });
    let smul: CustomFn = Arc::new(move |ti, xs| {
        let s = ti.numeral_count(&xs[0])?;
        let b = field_coordinates(ti, &xs[1], d)?;
        let out = b.iter().map(|y| scalar_op(ti, "mul", &s, y)).collect::<Result<Vec<_>, _>>()?;
        field_index(ti, &out)
    });
    let mu: Vec<Vec<Vec<Option<Nat>>>> = (0..d)
        .map(|p| {
            (0..d)
                .map(|qq| {
                    (0..d)
                        .map(|r| {
                            let m = field.constant(p, qq, r);
                            (!m.is_zero())
                                .then(|| qsort.represent(&Value::Rational(m.clone())).expect("ℚ represents constants"))
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let zero = qsort.represent(&Value::Rational(Rational::zero())).expect("ℚ represents 0");
    let mul: CustomFn = Arc::new(move |ti, xs| {
        let a = field_coordinates(ti, &xs[0], d)?;
        let b = field_coordinates(ti, &xs[1], d)?;
        let mut out = Vec::with_capacity(d);
        #[allow(clippy::needless_range_loop)]
        for r in 0..d {
            let mut acc: Option<Nat> = None;
            for p in 0..d {
                for qq in 0..d {
                    let Some(m) = &mu[p][qq][r] else { continue };
                    let term = scalar_op(ti, "mul", &scalar_op(ti, "mul", &a[p], &b[qq])?, m)?;
                    acc = Some(match acc {
                        None => term,
                        Some(s) => scalar_op(ti, "add", &s, &term)?,
                    });
                }
            }
            out.push(acc.unwrap_or_else(|| zero.clone()));
        }
        field_index(ti, &out)
    });

    let fe = |v: &Value| v.as_field().cloned();
    let ops = vec![
        NewOp::custom("add", vec![1, 1], 1, value_fn(move |v| Ok(Value::Field(fe(&v[0])?.add(&fe(&v[1])?)?))), add),
        NewOp::custom(
            "smul",
            vec![0, 1],
            1,
            value_fn(move |v| Ok(Value::Field(fe(&v[1])?.scale(v[0].as_rational()?)))),
            smul,
        ),
        NewOp::custom("mul", vec![1, 1], 1, value_fn(move |v| Ok(Value::Field(fe(&v[0])?.mul(&fe(&v[1])?)?))), mul),
    ];
    let spec = GenerativeSpec {
        name: format!("field {}", field.name()),
        base: Some(base),
        sorts: vec![sort],
        constants,
        ops,
        label_order: None,
    };
    TermIndexing::build(spec).expect("valid generators")
}

/// Names accepted by [`structure_by_name`].
pub const STRUCTURE_NAMES: &[&str] = &["nat-s", "nat-plus", "rationals", "q-sqrt2", "q-i", "q-zeta8"];

/// A registered term indexing and the sort its examples live in.
pub fn structure_by_name(name: &str) -> Option<(TermIndexing, usize)> {
    match name {
        "nat-s" => Some((nat_s(), 0)),
        "nat-plus" => Some((nat_plus(), 0)),
        "rationals" => Some((rationals(), 0)),
        _ => {
            let field = crate::exactnum::field_by_name(name)?;
            Some((field_indexing(&field, &rationals()), 1))
        }
    }
}

/// The same indexing with its label table in reverse order.
pub fn reversed_labels(ti: &TermIndexing) -> Result<TermIndexing, IndexError> {
    let symbols: Vec<String> = ti.table().labels().iter().rev().map(|l| l.symbol.to_string()).collect();
    let refs: Vec<&str> = symbols.iter().map(String::as_str).collect();
    ti.with_label_order(&refs)
}
