//! Arbitrary-precision naturals stored in their pairing decomposition.
//!
//! Every natural `m >= 1` is `pair(n, p)` for exactly one `(n, p)`, so a
//! natural is a binary tree whose leaves are small machine words. Values
//! that fit in a `u64` are kept as words; larger values are kept as the pair
//! of their (canonical) components. Long chains `pair(s, pair(v, 0))`, which
//! are the indices of unary numerals `S^x(0)`, are folded into a single
//! node carrying the iteration count, so `S^x(0)` costs O(1) space even when
//! `x` is itself an index with millions of decimal digits.
//!
//! The representation is canonical: two `Nat`s are equal exactly when the
//! numbers they denote are equal, so `Eq` and `Hash` are structural.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Roots;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

/// Values with more bits than this are printed in pair form.
const MAX_DECIMAL_BITS: u64 = 1024;

/// Step allowance for successor/predecessor on symbolic values.
const ARITH_FUEL: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PairingError {
    #[error("0 is not in the image of the pairing function")]
    NotInImage,
    #[error("value is too deeply nested to unfold")]
    TooDeep,
    #[error("cannot parse natural: {0}")]
    Parse(String),
}

/// An exact natural number.
#[derive(Clone)]
pub struct Nat(Repr);

#[derive(Clone)]
enum Repr {
    Small(u64),
    Pair(Arc<(Nat, Nat)>),
    Chain(Arc<Chain>),
}

/// `succ^count(zero)` under the tree encoding: `v_0 = pair(zero, 0)`,
/// `v_{k+1} = pair(succ, pair(v_k, 0))`. Only used for values above `u64`.
struct Chain {
    succ: u64,
    zero: u64,
    count: Nat,
}

impl PartialEq for Nat {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a == b,
            (Repr::Pair(a), Repr::Pair(b)) => Arc::ptr_eq(a, b) || (a.0 == b.0 && a.1 == b.1),
            (Repr::Chain(a), Repr::Chain(b)) => {
                Arc::ptr_eq(a, b) || (a.succ == b.succ && a.zero == b.zero && a.count == b.count)
            }
            _ => false,
        }
    }
}

impl Eq for Nat {}

impl std::hash::Hash for Nat {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small(v) => {
                0u8.hash(state);
                v.hash(state);
            }
            Repr::Pair(p) => {
                1u8.hash(state);
                p.0.hash(state);
                p.1.hash(state);
            }
            Repr::Chain(c) => {
                2u8.hash(state);
                c.succ.hash(state);
                c.zero.hash(state);
                c.count.hash(state);
            }
        }
    }
}

fn small_pair(n: u64, p: u64) -> Option<u64> {
    let s = n as u128 + p as u128;
    let t = s.checked_mul(s + 1)? / 2;
    let v = t.checked_add(n as u128 + 1)?;
    u64::try_from(v).ok()
}

/// Inverse of `small_pair`; `m` must be nonzero.
fn small_unpair(m: u64) -> (u64, u64) {
    let w = (m - 1) as u128;
    let r = (8 * w + 1).sqrt();
    let k = (r - 1) / 2;
    let n = w - k * (k + 1) / 2;
    let p = k - n;
    (n as u64, p as u64)
}

/// Cantor pairing on machine words, used for enumerating tuples of
/// positions. `cantor_pair(n, p) = pair(n, p) - 1`.
pub fn cantor_pair(n: u64, p: u64) -> Option<u64> {
    small_pair(n, p).map(|v| v - 1)
}

pub fn cantor_unpair(z: u64) -> (u64, u64) {
    small_unpair(z + 1)
}

/// Splits a position into `arity` positions, bijectively.
pub fn cantor_split(z: u64, arity: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(arity);
    let mut rest = z;
    for _ in 1..arity {
        let (a, b) = cantor_unpair(rest);
        out.push(a);
        rest = b;
    }
    if arity > 0 {
        out.push(rest);
    }
    out
}

/// `pair(n, p) = (n+p)(n+p+1)/2 + n + 1`.
pub fn pair(n: &Nat, p: &Nat) -> Nat {
    Nat::pair(n, p)
}

/// Inverse of [`pair`]; fails on 0.
pub fn unpair(m: &Nat) -> Result<(Nat, Nat), PairingError> {
    m.unpair()
}

impl Nat {
    pub const fn zero() -> Nat {
        Nat(Repr::Small(0))
    }

    pub const fn from_u64(v: u64) -> Nat {
        Nat(Repr::Small(v))
    }

    pub fn from_biguint(b: &BigUint) -> Nat {
        if let Some(v) = b.to_u64() {
            return Nat(Repr::Small(v));
        }
        let w = b - 1u32;
        let r = (&w * 8u32 + 1u32).sqrt();
        let k = (r - 1u32) / 2u32;
        let n = &w - &k * (&k + 1u32) / 2u32;
        let p = &k - &n;
        Nat::pair(&Nat::from_biguint(&n), &Nat::from_biguint(&p))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0))
    }

    pub fn as_u64(&self) -> Option<u64> {
        match self.0 {
            Repr::Small(v) => Some(v),
            _ => None,
        }
    }

    pub fn pair(n: &Nat, p: &Nat) -> Nat {
        if let (Repr::Small(a), Repr::Small(b)) = (&n.0, &p.0) {
            if let Some(v) = small_pair(*a, *b) {
                return Nat(Repr::Small(v));
            }
        }
        if let Repr::Small(s) = n.0 {
            if let Some((zero, count)) = p.chain_tail(s) {
                let count =
                    count.succ_fuel(&mut ARITH_FUEL.clone()).expect("numeral count too deeply nested to increment");
                return Nat(Repr::Chain(Arc::new(Chain { succ: s, zero, count })));
            }
        }
        Nat(Repr::Pair(Arc::new((n.clone(), p.clone()))))
    }

    /// If `self = pair(w, 0)` with `w` a chain over `succ`, returns that chain.
    fn chain_tail(&self, succ: u64) -> Option<(u64, Nat)> {
        match &self.0 {
            Repr::Small(0) => None,
            Repr::Small(v) => {
                let (w, c) = small_unpair(*v);
                if c != 0 {
                    return None;
                }
                Nat::from_u64(w).chain_of(succ)
            }
            Repr::Pair(pr) if pr.1.is_zero() => pr.0.chain_of(succ),
            _ => None,
        }
    }

    /// Reads `self` as `succ^count(zero)`, returning `(zero, count)`.
    fn chain_of(&self, succ: u64) -> Option<(u64, Nat)> {
        match &self.0 {
            Repr::Small(0) => None,
            Repr::Small(v) => {
                let (a, b) = small_unpair(*v);
                if b == 0 {
                    return Some((a, Nat::zero()));
                }
                if a != succ {
                    return None;
                }
                let (w, c) = small_unpair(b);
                if c != 0 {
                    return None;
                }
                let (zero, count) = Nat::from_u64(w).chain_of(succ)?;
                let k = count.as_u64()?;
                Some((zero, Nat::from_u64(k + 1)))
            }
            Repr::Pair(pr) => match (&pr.0 .0, pr.1.is_zero()) {
                (Repr::Small(z), true) => Some((*z, Nat::zero())),
                _ => None,
            },
            Repr::Chain(c) if c.succ == succ => Some((c.zero, c.count.clone())),
            Repr::Chain(_) => None,
        }
    }

    /// The index of `succ^count(zero)` where `succ` and `zero` are label
    /// indices of a unary and a nullary symbol.
    pub fn numeral(succ: u64, zero: u64, count: &Nat) -> Nat {
        let mut v = Nat::pair(&Nat::from_u64(zero), &Nat::zero());
        let mut k: u64 = 0;
        loop {
            if count.as_u64() == Some(k) {
                return v;
            }
            if !matches!(v.0, Repr::Small(_)) {
                // every further step stays above u64, so the folded form is canonical
                return Nat(Repr::Chain(Arc::new(Chain { succ, zero, count: count.clone() })));
            }
            v = Nat::pair(&Nat::from_u64(succ), &Nat::pair(&v, &Nat::zero()));
            k += 1;
        }
    }

    /// For a folded numeral node, `(succ, zero, count)`.
    pub fn as_numeral(&self) -> Option<(u64, u64, &Nat)> {
        match &self.0 {
            Repr::Chain(c) => Some((c.succ, c.zero, &c.count)),
            _ => None,
        }
    }

    /// First component of `unpair(self)`, without unfolding numerals.
    pub fn head(&self) -> Result<Nat, PairingError> {
        match &self.0 {
            Repr::Chain(c) => Ok(Nat::from_u64(c.succ)),
            _ => Ok(self.unpair()?.0),
        }
    }

    pub fn unpair(&self) -> Result<(Nat, Nat), PairingError> {
        self.unpair_fuel(&mut ARITH_FUEL.clone())
    }

    fn unpair_fuel(&self, fuel: &mut u64) -> Result<(Nat, Nat), PairingError> {
        match &self.0 {
            Repr::Small(0) => Err(PairingError::NotInImage),
            Repr::Small(v) => {
                let (n, p) = small_unpair(*v);
                Ok((Nat::from_u64(n), Nat::from_u64(p)))
            }
            Repr::Pair(pr) => Ok((pr.0.clone(), pr.1.clone())),
            Repr::Chain(c) => {
                let prev = c.count.pred_fuel(fuel)?.ok_or(PairingError::NotInImage)?;
                let below = Nat::numeral(c.succ, c.zero, &prev);
                Ok((Nat::from_u64(c.succ), Nat::pair(&below, &Nat::zero())))
            }
        }
    }

    fn burn(fuel: &mut u64) -> Result<(), PairingError> {
        if *fuel == 0 {
            return Err(PairingError::TooDeep);
        }
        *fuel -= 1;
        Ok(())
    }

    pub fn succ(&self) -> Result<Nat, PairingError> {
        self.succ_fuel(&mut ARITH_FUEL.clone())
    }

    fn succ_fuel(&self, fuel: &mut u64) -> Result<Nat, PairingError> {
        Nat::burn(fuel)?;
        if let Repr::Small(v) = self.0 {
            return Ok(match v.checked_add(1) {
                Some(w) => Nat::from_u64(w),
                None => Nat::from_biguint(&(BigUint::from(v) + 1u32)),
            });
        }
        let (n, p) = self.unpair_fuel(fuel)?;
        match p.pred_fuel(fuel)? {
            None => Ok(Nat::pair(&Nat::zero(), &n.succ_fuel(fuel)?)),
            Some(pp) => Ok(Nat::pair(&n.succ_fuel(fuel)?, &pp)),
        }
    }

    /// `self - 1`, or `None` for zero.
    pub fn pred(&self) -> Result<Option<Nat>, PairingError> {
        self.pred_fuel(&mut ARITH_FUEL.clone())
    }

    fn pred_fuel(&self, fuel: &mut u64) -> Result<Option<Nat>, PairingError> {
        Nat::burn(fuel)?;
        if let Repr::Small(v) = self.0 {
            return Ok(v.checked_sub(1).map(Nat::from_u64));
        }
        let (n, p) = self.unpair_fuel(fuel)?;
        match n.pred_fuel(fuel)? {
            Some(nn) => Ok(Some(Nat::pair(&nn, &p.succ_fuel(fuel)?))),
            None => match p.pred_fuel(fuel)? {
                Some(pp) => Ok(Some(Nat::pair(&pp, &Nat::zero()))),
                None => Ok(Some(Nat::zero())),
            },
        }
    }

    /// Materializes the value if it has at most `max_bits` bits.
    pub fn to_biguint(&self, max_bits: u64) -> Option<BigUint> {
        fn formula(n: &BigUint, p: &BigUint) -> BigUint {
            let s = n + p;
            &s * (&s + 1u32) / 2u32 + n + 1u32
        }
        let out = match &self.0 {
            Repr::Small(v) => BigUint::from(*v),
            Repr::Pair(pr) => {
                let n = pr.0.to_biguint(max_bits)?;
                let p = pr.1.to_biguint(max_bits)?;
                formula(&n, &p)
            }
            Repr::Chain(c) => {
                let steps = c.count.as_u64()?;
                let s = BigUint::from(c.succ);
                let mut v = formula(&BigUint::from(c.zero), &BigUint::zero());
                for _ in 0..steps {
                    v = formula(&s, &formula(&v, &BigUint::zero()));
                    if v.bits() > max_bits {
                        return None;
                    }
                }
                v
            }
        };
        (out.bits() <= max_bits).then_some(out)
    }

    /// Number of nodes in the stored representation.
    pub fn size(&self) -> usize {
        match &self.0 {
            Repr::Small(_) => 1,
            Repr::Pair(pr) => 1 + pr.0.size() + pr.1.size(),
            Repr::Chain(c) => 1 + c.count.size(),
        }
    }
}

impl From<u64> for Nat {
    fn from(v: u64) -> Self {
        Nat::from_u64(v)
    }
}

impl From<&BigUint> for Nat {
    fn from(v: &BigUint) -> Self {
        Nat::from_biguint(v)
    }
}

impl Default for Nat {
    fn default() -> Self {
        Nat::zero()
    }
}

impl fmt::Display for Nat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(b) = self.to_biguint(MAX_DECIMAL_BITS) {
            return write!(f, "{b}");
        }
        match &self.0 {
            Repr::Small(v) => write!(f, "{v}"),
            Repr::Pair(pr) => write!(f, "<{};{}>", pr.0, pr.1),
            Repr::Chain(c) => write!(f, "<{}^{}@{}>", c.succ, c.count, c.zero),
        }
    }
}

impl fmt::Debug for Nat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses decimal, `<n;p>` (a pair) and `<s^count@z>` (a folded numeral).
impl FromStr for Nat {
    type Err = PairingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parser = NatParser { src: s.as_bytes(), pos: 0 };
        let v = parser.nat()?;
        parser.skip_ws();
        if parser.pos != parser.src.len() {
            return Err(PairingError::Parse(format!("trailing input at byte {}", parser.pos)));
        }
        Ok(v)
    }
}

struct NatParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl NatParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), PairingError> {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(PairingError::Parse(format!("expected '{}' at byte {}", c as char, self.pos)))
        }
    }

    fn digits(&mut self) -> Result<BigUint, PairingError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(PairingError::Parse(format!("expected digits at byte {start}")));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("validated digits"))
    }

    fn word(&mut self) -> Result<u64, PairingError> {
        let at = self.pos;
        self.digits()?.to_u64().ok_or_else(|| PairingError::Parse(format!("label index too large at byte {at}")))
    }

    fn nat(&mut self) -> Result<Nat, PairingError> {
        self.skip_ws();
        if self.src.get(self.pos) != Some(&b'<') {
            return Ok(Nat::from_biguint(&self.digits()?));
        }
        self.pos += 1;
        let save = self.pos;
        // `<s^count@z>` starts with a word followed by '^'
        if let Ok(succ) = self.word() {
            self.skip_ws();
            if self.src.get(self.pos) == Some(&b'^') {
                self.pos += 1;
                let count = self.nat()?;
                self.expect(b'@')?;
                let zero = self.word()?;
                self.expect(b'>')?;
                if count.is_zero() {
                    return Err(PairingError::Parse("numeral count must be positive".into()));
                }
                return Ok(Nat::numeral(succ, zero, &count));
            }
        }
        self.pos = save;
        let n = self.nat()?;
        self.expect(b';')?;
        let p = self.nat()?;
        self.expect(b'>')?;
        Ok(Nat::pair(&n, &p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: &Nat) -> BigUint {
        n.to_biguint(1 << 16).unwrap()
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(pair(&0.into(), &0.into()), Nat::from(1));
        assert_eq!(pair(&0.into(), &1.into()), Nat::from(2));
        assert_eq!(pair(&1.into(), &1.into()), Nat::from(5));
        assert_eq!(unpair(&Nat::from(1)).unwrap(), (Nat::from(0), Nat::from(0)));
        assert_eq!(unpair(&Nat::from(5)).unwrap(), (Nat::from(1), Nat::from(1)));
        assert_eq!(unpair(&Nat::zero()), Err(PairingError::NotInImage));
    }

    #[test]
    fn large_values_match_formula() {
        let a = Nat::from(u64::MAX);
        let b = Nat::from(12345);
        let v = pair(&a, &b);
        let (ba, bb) = (BigUint::from(u64::MAX), BigUint::from(12345u32));
        let s = &ba + &bb;
        let expected = &s * (&s + 1u32) / 2u32 + &ba + 1u32;
        assert_eq!(big(&v), expected);
        assert_eq!(Nat::from_biguint(&expected), v);
        assert_eq!(v.unpair().unwrap(), (a, b));
    }

    #[test]
    fn numerals_fold_and_unfold() {
        // S = label 1, 0 = label 0
        let mut v = Nat::pair(&Nat::zero(), &Nat::zero());
        for k in 1..=12u64 {
            v = Nat::pair(&Nat::from(1), &Nat::pair(&v, &Nat::zero()));
            assert_eq!(v, Nat::numeral(1, 0, &Nat::from(k)), "k = {k}");
        }
        assert!(v.as_numeral().is_some());
        let (h, t) = v.unpair().unwrap();
        assert_eq!(h, Nat::from(1));
        let (below, z) = t.unpair().unwrap();
        assert!(z.is_zero());
        assert_eq!(below, Nat::numeral(1, 0, &Nat::from(11)));
        assert_eq!(Nat::numeral(1, 0, &Nat::from(1)), Nat::from(12));
    }

    #[test]
    fn decimal_round_trip_through_biguint() {
        let v = Nat::numeral(1, 0, &Nat::from(5));
        let b = big(&v);
        assert_eq!(Nat::from_biguint(&b), v);
    }

    #[test]
    fn succ_pred_agree_with_biguint() {
        for seed in [3u64, 77, 1 << 40, u64::MAX - 1, u64::MAX] {
            let n = pair(&Nat::from(seed), &Nat::from(seed / 3));
            let b = big(&n);
            assert_eq!(big(&n.succ().unwrap()), &b + 1u32);
            assert_eq!(big(&n.pred().unwrap().unwrap()), &b - 1u32);
        }
        assert_eq!(Nat::zero().pred().unwrap(), None);
    }

    #[test]
    fn text_round_trip() {
        let huge = Nat::numeral(1, 0, &Nat::numeral(1, 0, &Nat::from(9)));
        let text = huge.to_string();
        assert!(text.starts_with('<'));
        assert_eq!(text.parse::<Nat>().unwrap(), huge);
        assert_eq!("12".parse::<Nat>().unwrap(), Nat::from(12));
        assert_eq!("<1;1>".parse::<Nat>().unwrap(), Nat::from(5));
        assert!("<1;".parse::<Nat>().is_err());
    }

    #[test]
    fn cantor_split_is_bijective_on_prefix() {
        let mut seen = std::collections::HashSet::new();
        for z in 0..2000 {
            assert!(seen.insert(cantor_split(z, 3)));
        }
    }
}
