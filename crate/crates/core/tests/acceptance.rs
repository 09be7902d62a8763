//! Acceptance criteria. Each check prints one line and the target exits
//! nonzero when any of them fails.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use et_core::encoding::{pair, unpair, Nat};
use et_core::exactnum::{
    check_field_axioms, enumerate_rational_indices, gaussian, random_element, rationals as q_field, sqrt2, zeta8,
    FieldElement, FieldRef, Rational,
};
use et_core::indexing::registry::{field_indexing, nat_s, rationals, reversed_labels};
use et_core::indexing::{
    build_translator, derive_inverse_op, least_index, numeral_sub_translator, rational_at, MapFn, SearchBudget,
    TermIndexing, Value,
};
use et_core::qsim::{gate_library, probabilities, run_circuit, run_state, Circuit};
use et_core::tensor::{
    extract_permutation, permutation_translator, permuted_indexing, Alphabet, BasisWord, PermutationOracle,
    TensorSpace, TensorVector, TENSOR_SORT,
};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t <= limit, || format!("took {t:.2?}, limit {limit:?}"))
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

// ---------------------------------------------------------------- pairing

fn pairing_grid() -> Check {
    let start = Instant::now();
    let mut seen = HashSet::new();
    for n in 0..=200u64 {
        for p in 0..=200u64 {
            let z = pair(&Nat::from(n), &Nat::from(p));
            let closed = (n + p) * (n + p + 1) / 2 + n + 1;
            ensure(z.as_u64() == Some(closed), || format!("pair({n},{p}) = {z}, closed form {closed}"))?;
            ensure(closed >= 1, || format!("pair({n},{p}) is 0"))?;
            ensure(seen.insert(closed), || format!("pair({n},{p}) collides"))?;
            let (a, b) = unpair(&z).map_err(e)?;
            ensure(a.as_u64() == Some(n) && b.as_u64() == Some(p), || format!("unpair(pair({n},{p})) = ({a},{b})"))?;
        }
    }
    within(start, Duration::from_secs(1))?;
    Ok(format!("{} pairs", seen.len()))
}

// ---------------------------------------------------------------- fields

/// Multiplies coordinate polynomials and reduces modulo a monic
/// polynomial given constant coefficient first.
fn poly_mul_mod(a: &[BigRational], b: &[BigRational], monic: &[i64]) -> Vec<BigRational> {
    let d = monic.len() - 1;
    let mut prod = vec![BigRational::zero(); 2 * d];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            prod[i + j] += x * y;
        }
    }
    for k in (d..prod.len()).rev() {
        let c = std::mem::take(&mut prod[k]);
        for (i, &m) in monic[..d].iter().enumerate() {
            prod[k - d + i] -= &c * BigRational::from_integer(BigInt::from(m));
        }
    }
    prod.truncate(d);
    prod
}

fn big(x: &FieldElement) -> Vec<BigRational> {
    x.coords().iter().map(|r| r.as_big().clone()).collect()
}

fn field_axioms() -> Check {
    let start = Instant::now();
    let fields: [(FieldRef, &[i64]); 4] =
        [(q_field(), &[0, 1]), (sqrt2(), &[-2, 0, 1]), (gaussian(), &[1, 0, 1]), (zeta8(), &[1, 0, 0, 0, 1])];
    let mut rng = StdRng::seed_from_u64(7);
    for (f, poly) in &fields {
        let report = check_field_axioms(f, 500, 11);
        ensure(report.ok(), || format!("{}: {report}", f.name()))?;
        for _ in 0..500 {
            let (a, b) = (random_element(f, &mut rng), random_element(f, &mut rng));
            let got = big(&a.mul(&b).map_err(e)?);
            let want = poly_mul_mod(&big(&a), &big(&b), poly);
            ensure(got == want, || format!("{}: {a} * {b} = {got:?}, oracle {want:?}", f.name()))?;
        }
    }
    within(start, Duration::from_secs(5))?;
    Ok("4 fields, 500 samples each".into())
}

fn conjugation() -> Check {
    let f = zeta8();
    let mut rng = StdRng::seed_from_u64(3);
    for _ in 0..200 {
        let (a, b) = (random_element(&f, &mut rng), random_element(&f, &mut rng));
        let ca = a.conj().map_err(e)?;
        let cb = b.conj().map_err(e)?;
        let mul_law = a.mul(&b).map_err(e)?.conj().map_err(e)?.exact_eq(&ca.mul(&cb).map_err(e)?).map_err(e)?;
        let add_law = a.add(&b).map_err(e)?.conj().map_err(e)?.exact_eq(&ca.add(&cb).map_err(e)?).map_err(e)?;
        let twice = ca.conj().map_err(e)?.exact_eq(&a).map_err(e)?;
        let norm = a.mul(&ca).map_err(e)?;
        let real = norm.conj().map_err(e)?.exact_eq(&norm).map_err(e)?;
        ensure(mul_law && add_law && twice && real, || format!("conjugation law fails at a = {a}, b = {b}"))?;
    }
    let h = FieldElement::parse(&f, "(0,1/2,0,-1/2)").map_err(e)?;
    let hh = h.mul(&h.conj().map_err(e)?).map_err(e)?;
    ensure(hh.to_trimmed_string() == "(1/2)", || format!("|1/sqrt2|^2 = {hh}"))?;
    Ok("200 samples".into())
}

// ---------------------------------------------------------------- translators

fn law(source: &TermIndexing, target: &TermIndexing, sort: usize, budget: SearchBudget) -> Result<(), String> {
    let scalar: Vec<MapFn> = (0..source.scalar_sorts()).map(|_| numeral_sub_translator(target, None)).collect();
    let tr = build_translator(source, &target.structure(), scalar, budget).map_err(e)?;
    let report = tr.for_sort(sort).check_law(500);
    ensure(report.ok() && report.checked == 500, || {
        format!("{}: {} violations, first {:?}", source.name(), report.violations.len(), report.violations.first())
    })
}

fn qubit_space() -> Result<TensorSpace, String> {
    TensorSpace::over_field(&Alphabet::qubit(), &zeta8()).map_err(e)
}

fn translator_law() -> Check {
    let start = Instant::now();
    let budget = SearchBudget::from_env();
    let n = nat_s();
    law(&n, &reversed_labels(&n).map_err(e)?, 0, budget)?;
    let q = rationals();
    law(&q, &reversed_labels(&q).map_err(e)?, 0, budget)?;
    let t = qubit_space()?;
    law(t.indexing(), t.reversed().map_err(e)?.indexing(), TENSOR_SORT, budget)?;
    within(start, Duration::from_secs(30))?;
    Ok("naturals, rationals, 2-letter tensor space; 500 indices each".into())
}

fn permutation_recovery() -> Check {
    let space = qubit_space()?;
    let budget = SearchBudget::from_env();
    for (oracle, range) in [
        (PermutationOracle::identity(), 64),
        (PermutationOracle::swap_adjacent(), 64),
        (PermutationOracle::reverse_prefix(16), 16),
    ] {
        let j = permuted_indexing(&space, &oracle);
        let g = permutation_translator(&space, &j, budget).map_err(e)?.for_sort(TENSOR_SORT);
        let law = g.check_law(range);
        ensure(law.ok(), || format!("{}: translator law fails {:?}", oracle.name, law.violations.first()))?;
        let got = extract_permutation(&g, &space, range).map_err(e)?;
        ensure(got == oracle.table(range), || format!("{}: recovered {got:?}", oracle.name))?;
    }
    Ok("identity, swap-adjacent, reverse16".into())
}

// ---------------------------------------------------------------- rationals by search

fn rational_indices() -> Check {
    let f = sqrt2();
    let ti = field_indexing(&f, &rationals());
    let st = ti.structure();
    let items = enumerate_rational_indices(&st, 1, SearchBudget::from_env()).map_err(e)?;
    let mut skipped = 0;
    let mut seen = HashSet::new();
    for item in items.take(1000) {
        let (p, q, r) = item.triple;
        let Ok((x, _)) = item.outcome else {
            skipped += 1;
            continue;
        };
        let want = BigRational::new(BigInt::from(p as i64 - q as i64), BigInt::from(r + 1));
        let v = st.sorts[1].decode(&x).map_err(e)?;
        let got = v.as_field().map_err(e)?;
        let expected = FieldElement::from_rational(
            &f,
            Rational::from_bigint(want.numer().clone())
                .checked_div(&Rational::from_bigint(want.denom().clone()))
                .map_err(e)?,
        );
        ensure(got.exact_eq(&expected).map_err(e)?, || format!("({p},{q},{r}) decodes to {got}"))?;
        seen.insert(want);
    }
    for a in -5i64..=5 {
        for b in 1i64..=5 {
            let r = BigRational::new(a.into(), b.into());
            ensure(seen.contains(&r), || format!("{r} never produced"))?;
        }
    }
    ensure(skipped < 10, || format!("{skipped} of 1000 triples skipped"))?;
    Ok(format!("1000 triples over Q(sqrt2), {skipped} skipped, {} distinct", seen.len()))
}

fn derived_inverses() -> Check {
    let q = rationals();
    let st = q.structure();
    let dom = st.sorts[0].clone();
    let budget = SearchBudget::from_env();
    let add = st.op("add").ok_or("no add")?.apply.clone();
    let mul = st.op("mul").ok_or("no mul")?.apply.clone();
    let value = |x: &Nat| -> Result<BigRational, String> {
        Ok(dom.decode(x).map_err(e)?.as_rational().map_err(e)?.as_big().clone())
    };
    let index = |r: BigRational| -> Result<Nat, String> {
        let r = Rational::from_bigint(r.numer().clone())
            .checked_div(&Rational::from_bigint(r.denom().clone()))
            .map_err(e)?;
        least_index(dom.as_ref(), &Value::Rational(r), budget).map_err(e)
    };
    let mut pairs = 0;
    'outer: for i in 0..10u64 {
        for j in 1..8u64 {
            if pairs == 50 {
                break 'outer;
            }
            let a = rational_at(i).as_big().clone();
            let b = rational_at(j).as_big().clone();
            let (n, p) = (index(a.clone())?, index(b.clone())?);
            let diff = value(&derive_inverse_op(&add, dom.as_ref(), &n, &p, budget).map_err(e)?)?;
            ensure(diff == &a - &b, || format!("{a} - {b} gave {diff}"))?;
            if !b.is_zero() {
                let quot = value(&derive_inverse_op(&mul, dom.as_ref(), &n, &p, budget).map_err(e)?)?;
                ensure(quot == &a / &b, || format!("{a} / {b} gave {quot}"))?;
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs"))
}

// ---------------------------------------------------------------- simulation

/// Dense floating-point simulator used as an oracle. Qubit 0 is the most
/// significant bit, and so is the first target of a gate.
fn float_gate(name: &str) -> Vec<Vec<Complex64>> {
    let o = Complex64::zero();
    let l = Complex64::one();
    let r = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let diag = |d: Complex64| vec![vec![l, o], vec![o, d]];
    match name {
        "x" => vec![vec![o, l], vec![l, o]],
        "z" => diag(-l),
        "s" => diag(Complex64::i()),
        "t" => diag(Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4)),
        "h" => vec![vec![r, r], vec![r, -r]],
        "cnot" => vec![vec![l, o, o, o], vec![o, l, o, o], vec![o, o, o, l], vec![o, o, l, o]],
        _ => unreachable!(),
    }
}

fn float_apply(state: &[Complex64], n: usize, m: &[Vec<Complex64>], targets: &[usize]) -> Vec<Complex64> {
    let mut out = vec![Complex64::zero(); state.len()];
    let k = targets.len();
    for (idx, a) in state.iter().enumerate() {
        let bit = |t: usize, x: usize| x >> (n - 1 - t) & 1;
        let col = targets.iter().fold(0, |acc, &t| acc << 1 | bit(t, idx));
        for (row, mr) in m.iter().enumerate() {
            let mut j = idx;
            for (i, &t) in targets.iter().enumerate() {
                let mask = 1 << (n - 1 - t);
                j = if row >> (k - 1 - i) & 1 == 1 { j | mask } else { j & !mask };
            }
            out[j] += mr[col] * a;
        }
    }
    out
}

fn word_index(w: &BasisWord) -> usize {
    w.letters().chars().fold(0, |acc, c| acc << 1 | (c == '1') as usize)
}

fn simulation() -> Check {
    let start = Instant::now();
    let lib = gate_library();
    let f = zeta8();
    let ket = |s: &str| BasisWord::new(s).map_err(e);

    let bell = Circuit::parse("qubits 2\nh 0\ncnot 0 1\n", &lib).map_err(e)?;
    let s = run_circuit(&bell, &ket("00")?, &lib).map_err(e)?;
    let r = FieldElement::parse(&f, "(0,1/2,0,-1/2)").map_err(e)?;
    let want = TensorVector::from_terms(&f, vec![(ket("00")?, r.clone()), (ket("11")?, r)]).map_err(e)?;
    ensure(s.tv_eq(&want).map_err(e)?, || format!("Bell state {s}"))?;
    let report = probabilities(&s).map_err(e)?;
    ensure(report.entries.values().all(|(p, _)| p.to_trimmed_string() == "(1/2)") && report.total.is_one(), || {
        format!("Bell probabilities\n{report}")
    })?;

    for (text, words) in [
        ("qubits 1\nh 0\nh 0\n", &["0", "1"][..]),
        ("qubits 1\nt 0\nt 0\nt 0\nt 0\nt 0\nt 0\nt 0\nt 0\n", &["0", "1"][..]),
        ("qubits 2\ncnot 0 1\ncnot 0 1\n", &["00", "01", "10", "11"][..]),
    ] {
        let c = Circuit::parse(text, &lib).map_err(e)?;
        for w in words {
            let out = run_circuit(&c, &ket(w)?, &lib).map_err(e)?;
            ensure(out.tv_eq(&TensorVector::basis(&f, ket(w)?)).map_err(e)?, || {
                format!("{text:?} on |{w}> gives {out}")
            })?;
        }
    }

    let n = 8;
    let mut rng = StdRng::seed_from_u64(2024);
    let mut c = Circuit::new(n).map_err(e)?;
    let names = ["h", "t", "s", "x", "z", "cnot"];
    for _ in 0..60 {
        let g = names[rng.gen_range(0..names.len())];
        let a = rng.gen_range(0..n);
        let targets = if g == "cnot" {
            let b = (a + rng.gen_range(1..n)) % n;
            vec![a, b]
        } else {
            vec![a]
        };
        c.push(&lib, g, &targets).map_err(e)?;
    }
    let init = TensorVector::basis(&f, ket(&"0".repeat(n))?);
    let mut dense = vec![Complex64::zero(); 1 << n];
    dense[0] = Complex64::one();
    let mut failure = None;
    let mut worst = 0f64;
    run_state(&c, &init, &lib, |i, state| {
        if failure.is_some() {
            return;
        }
        let step = &c.steps[i];
        dense = float_apply(&dense, n, &float_gate(&step.gate), &step.targets);
        match probabilities(state) {
            Ok(r) if r.total.is_one() => {}
            Ok(r) => failure = Some(format!("norm {} after step {i}", r.total)),
            Err(err) => failure = Some(err.to_string()),
        }
        let mut exact = vec![Complex64::zero(); 1 << n];
        for (w, a) in state.terms() {
            exact[word_index(w)] = a.approx();
        }
        for (x, y) in exact.iter().zip(&dense) {
            worst = worst.max((x - y).norm());
        }
    })
    .map_err(e)?;
    if let Some(msg) = failure {
        return Err(msg);
    }
    ensure(worst <= 1e-10, || format!("float oracle differs by {worst:e}"))?;
    within(start, Duration::from_secs(10))?;
    Ok(format!("Bell, identities, 8-qubit 60-gate circuit (max deviation {worst:.1e})"))
}

fn circuit_equality() -> Check {
    let lib = gate_library();
    let f = zeta8();
    let mut rng = StdRng::seed_from_u64(99);
    let parse = |t: &str| Circuit::parse(t, &lib).map_err(e);
    let ss = parse("qubits 2\ns 0\ns 0\n")?;
    let z = parse("qubits 2\nz 0\n")?;
    let hxh = parse("qubits 2\nh 1\nx 1\nh 1\n")?;
    let z1 = parse("qubits 2\nz 1\n")?;
    let s = parse("qubits 2\ns 0\n")?;
    let mut distinguished = 0;
    for _ in 0..20 {
        let terms = ["00", "01", "10", "11"]
            .iter()
            .map(|w| Ok((BasisWord::new(w).map_err(e)?, random_element(&f, &mut rng))))
            .collect::<Result<Vec<_>, String>>()?;
        let init = TensorVector::from_terms(&f, terms).map_err(e)?;
        let run = |c: &Circuit| run_state(c, &init, &lib, |_, _| {}).map_err(e);
        ensure(run(&ss)?.tv_eq(&run(&z)?).map_err(e)?, || format!("S·S and Z differ on {init}"))?;
        ensure(run(&hxh)?.tv_eq(&run(&z1)?).map_err(e)?, || format!("H·X·H and Z differ on {init}"))?;
        if !run(&s)?.tv_eq(&run(&z)?).map_err(e)? {
            distinguished += 1;
        }
    }
    ensure(distinguished > 0, || "S and Z were never told apart".into())?;
    Ok(format!("20 random states, S vs Z told apart on {distinguished}"))
}

fn main() {
    let checks: [Criterion; 9] = [
        ("pairing bijection on [0,200]^2", pairing_grid),
        ("field axioms and polynomial oracle", field_axioms),
        ("conjugation in Q(zeta8)", conjugation),
        ("translator law", translator_law),
        ("permutation recovery", permutation_recovery),
        ("rational indices by search", rational_indices),
        ("subtraction and division by search", derived_inverses),
        ("exact circuit simulation", simulation),
        ("decidable state equality", circuit_equality),
    ];
    let mut failed = 0;
    for (i, (name, check)) in checks.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let t = start.elapsed();
        match result {
            Ok(detail) => println!("[PASS] {} {name}: {detail} ({t:.2?})", i + 1),
            Err(msg) => {
                failed += 1;
                println!("[FAIL] {} {name}: {msg} ({t:.2?})", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", checks.len() - failed, checks.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
