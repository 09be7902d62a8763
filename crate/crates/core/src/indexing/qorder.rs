//! A bijection between ℕ and ℚ listing rationals by height.
//!
//! The height of `a/b` in lowest terms is `max(|a|, b)` (0 has height 0).
//! Within a height `h > 1` the pairs `(h, b)` with `b < h` come first by
//! increasing `b`, then the pairs `(a, h)` with `a < h` by increasing `a`;
//! each pair is listed positive first. So the order starts
//! `0, 1, -1, 2, -2, 1/2, -1/2, 3, -3, 3/2, -3/2, 1/3, -1/3, 2/3, …`.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use crate::exactnum::Rational;

fn totient(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn height_count(h: u64) -> u64 {
    match h {
        0 => 1,
        1 => 2,
        _ => 4 * totient(h),
    }
}

/// `OFFSETS[h]` = number of rationals of height below `h`.
static OFFSETS: Mutex<Vec<u64>> = Mutex::new(Vec::new());

fn offset(h: u64) -> Option<u64> {
    let mut table = OFFSETS.lock().unwrap_or_else(|e| e.into_inner());
    if table.is_empty() {
        table.push(0);
    }
    while (table.len() as u64) <= h {
        let k = table.len() as u64 - 1;
        let next = table[k as usize].checked_add(height_count(k))?;
        table.push(next);
    }
    Some(table[h as usize])
}

/// The `k`-th (from 1) integer in `[1, h)` coprime to `h`.
fn kth_coprime(h: u64, k: u64) -> u64 {
    let mut seen = 0;
    for c in 1..h {
        if c.gcd(&h) == 1 {
            seen += 1;
            if seen == k {
                return c;
            }
        }
    }
    unreachable!("fewer than {k} residues coprime to {h}")
}

fn coprimes_below(h: u64, n: u64) -> u64 {
    (1..n).filter(|c| c.gcd(&h) == 1).count() as u64
}

pub fn rational_at(z: u64) -> Rational {
    if z == 0 {
        return Rational::zero();
    }
    // heights grow like sqrt(z), so a linear scan over heights is cheap
    let mut h = 1;
    while offset(h + 1).is_some_and(|o| o <= z) {
        h += 1;
    }
    let idx = z - offset(h).expect("offset computed above");
    let negative = idx % 2 == 1;
    let j = idx / 2;
    let (a, b) = if h == 1 {
        (1, 1)
    } else {
        let phi = totient(h);
        if j < phi {
            (h, kth_coprime(h, j + 1))
        } else {
            (kth_coprime(h, j - phi + 1), h)
        }
    };
    let a = if negative { -(a as i64) } else { a as i64 };
    Rational::new(a, b as i64).expect("positive denominator")
}

/// Inverse of [`rational_at`]; `None` when the position does not fit a `u64`.
pub fn rational_position(q: &Rational) -> Option<u64> {
    if q.is_zero() {
        return Some(0);
    }
    let a = q.numer().abs().to_u64()?;
    let b = q.denom().to_u64()?;
    let h = a.max(b);
    let j = if h == 1 {
        0
    } else if a == h {
        coprimes_below(h, b)
    } else {
        totient(h) + coprimes_below(h, a)
    };
    let neg = u64::from(q.numer() < &BigInt::from(0));
    offset(h)?.checked_add(2 * j + neg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn starts_as_documented() {
        let listed: Vec<String> = (0..14).map(|z| rational_at(z).to_string()).collect();
        assert_eq!(listed, ["0", "1", "-1", "2", "-2", "1/2", "-1/2", "3", "-3", "3/2", "-3/2", "1/3", "-1/3", "2/3"]);
    }

    #[test]
    fn bijective_on_a_prefix() {
        let mut seen = std::collections::HashSet::new();
        for z in 0..5000 {
            let q = rational_at(z);
            assert_eq!(rational_position(&q), Some(z), "{q}");
            assert!(seen.insert(q));
        }
    }

    #[test]
    fn every_small_fraction_is_listed() {
        for a in -9i64..=9 {
            for b in 1i64..=9 {
                let q = Rational::new(a, b).unwrap();
                let z = rational_position(&q).unwrap();
                assert_eq!(rational_at(z), q);
            }
        }
    }
}
