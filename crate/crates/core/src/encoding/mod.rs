//! The pairing function and the Gödel numbering of finite labeled trees.
//!
//! `⌜f(t₁,…,t_l)⌝ = pair(⌜f⌝, pair(⌜t₁⌝, … pair(⌜t_l⌝, 0)…))`, so a leaf
//! `f` is `pair(⌜f⌝, 0)` and decoding is a head/tail recursion.

mod nat;
mod tree;

pub use nat::{cantor_pair, cantor_split, cantor_unpair, pair, unpair, Nat, PairingError};
pub use tree::{Label, LabelTable, TermTree};

use std::fmt;

use thiserror::Error;

/// Position of a subtree: child indices from the root.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TreePath(pub Vec<usize>);

impl fmt::Display for TreePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("root");
        }
        f.write_str("child ")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EncodingError {
    #[error(transparent)]
    Pairing(#[from] PairingError),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("label `{symbol}` has arity {expected}, used with {found} children")]
    ArityMismatch { symbol: String, expected: usize, found: usize },
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("invalid symbol `{0}`")]
    InvalidSymbol(String),
    #[error("label order is not a permutation of the table")]
    BadPermutation,
    #[error("malformed index at {path}: {reason}")]
    Malformed { path: TreePath, reason: String },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub fn encode_tree(table: &LabelTable, t: &TermTree) -> Result<Nat, EncodingError> {
    match t {
        TermTree::Numeral { succ, zero, count } => {
            let s = table.id_with_arity(succ, 1)?;
            let z = table.id_with_arity(zero, 0)?;
            Ok(Nat::numeral(s, z, count))
        }
        TermTree::Node { symbol, children } => {
            let id = table.id_with_arity(symbol, children.len())?;
            let mut tail = Nat::zero();
            for child in children.iter().rev() {
                tail = pair(&encode_tree(table, child)?, &tail);
            }
            Ok(pair(&Nat::from_u64(id), &tail))
        }
    }
}

pub fn decode_tree(table: &LabelTable, x: &Nat) -> Result<TermTree, EncodingError> {
    decode_at(table, x, &mut Vec::new())
}

fn decode_at(table: &LabelTable, x: &Nat, path: &mut Vec<usize>) -> Result<TermTree, EncodingError> {
    let malformed =
        |path: &Vec<usize>, reason: String| EncodingError::Malformed { path: TreePath(path.clone()), reason };
    if let Some((s, z, count)) = x.as_numeral() {
        let succ = table
            .by_id(s)
            .filter(|l| l.arity == 1)
            .ok_or_else(|| malformed(path, format!("symbol id {s} is not a unary label")))?;
        let zero = table
            .by_id(z)
            .filter(|l| l.arity == 0)
            .ok_or_else(|| malformed(path, format!("symbol id {z} is not a nullary label")))?;
        return Ok(TermTree::numeral(&succ.symbol, &zero.symbol, count));
    }
    let (head, mut rest) = x.unpair().map_err(|e| malformed(path, e.to_string()))?;
    let label = head
        .as_u64()
        .and_then(|id| table.by_id(id))
        .ok_or_else(|| malformed(path, format!("unknown symbol id {head}")))?;
    let mut children = Vec::with_capacity(label.arity);
    for i in 0..label.arity {
        let (child, tail) = rest
            .unpair()
            .map_err(|_| malformed(path, format!("`{}` expects {} children, found {i}", label.symbol, label.arity)))?;
        path.push(i);
        children.push(decode_at(table, &child, path)?);
        path.pop();
        rest = tail;
    }
    if !rest.is_zero() {
        return Err(malformed(path, format!("trailing data after the {} children of `{}`", label.arity, label.symbol)));
    }
    Ok(TermTree::Node { symbol: label.symbol.clone(), children })
}

/// Re-indexes a tree index from one label table to another over the same
/// symbols: decode under `from`, encode under `to`.
pub fn retranslate(from: &LabelTable, to: &LabelTable, x: &Nat) -> Result<Nat, EncodingError> {
    encode_tree(to, &decode_tree(from, x)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat_table() -> LabelTable {
        LabelTable::new(&[("0", 0), ("S", 1)]).unwrap()
    }

    #[test]
    fn encodes_zero_and_successor() {
        let table = nat_table();
        assert_eq!(encode_tree(&table, &TermTree::leaf("0")).unwrap(), Nat::from(1));
        let s0: TermTree = "S(0)".parse().unwrap();
        assert_eq!(encode_tree(&table, &s0).unwrap(), Nat::from(12));
        assert_eq!(decode_tree(&table, &Nat::from(12)).unwrap(), s0);
        assert_eq!(decode_tree(&table, &Nat::from(1)).unwrap(), TermTree::leaf("0"));
    }

    #[test]
    fn zero_is_not_a_tree() {
        let err = decode_tree(&nat_table(), &Nat::zero()).unwrap_err();
        assert!(matches!(err, EncodingError::Malformed { .. }));
    }

    #[test]
    fn malformed_indices_name_the_position() {
        let table = LabelTable::new(&[("0", 0), ("S", 1), ("plus", 2)]).unwrap();
        // plus with a single child: pair(2, pair(⌜0⌝, 0))
        let one_child = pair(&Nat::from(2), &pair(&Nat::from(1), &Nat::zero()));
        let err = decode_tree(&table, &one_child).unwrap_err();
        assert!(err.to_string().contains("expects 2 children"), "{err}");
        // S(junk) where junk has an unknown head
        let bad = pair(&Nat::from(1), &pair(&pair(&Nat::from(9), &Nat::zero()), &Nat::zero()));
        match decode_tree(&table, &bad).unwrap_err() {
            EncodingError::Malformed { path, reason } => {
                assert_eq!(path, TreePath(vec![0]));
                assert!(reason.contains("unknown symbol id 9"));
            }
            e => panic!("unexpected {e}"),
        }
        // leaf 0 with trailing data
        let trailing = pair(&Nat::zero(), &Nat::from(3));
        assert!(decode_tree(&table, &trailing).unwrap_err().to_string().contains("trailing"));
    }

    #[test]
    fn unknown_label_and_arity_errors() {
        let table = nat_table();
        assert_eq!(encode_tree(&table, &TermTree::leaf("x")), Err(EncodingError::UnknownLabel("x".into())));
        assert!(matches!(encode_tree(&table, &"S(0,0)".parse().unwrap()), Err(EncodingError::ArityMismatch { .. })));
    }

    #[test]
    fn long_numerals_are_compact() {
        let table = nat_table();
        let t = TermTree::numeral("S", "0", &Nat::from(100_000));
        let x = encode_tree(&table, &t).unwrap();
        assert!(x.size() < 8);
        assert_eq!(decode_tree(&table, &x).unwrap(), t);
        assert_eq!(t.to_string(), "S^100000(0)");
        assert_eq!(t.to_string().parse::<TermTree>().unwrap(), t);
    }

    #[test]
    fn explicit_and_compact_numerals_agree() {
        let table = nat_table();
        let mut explicit = TermTree::leaf("0");
        for _ in 0..40 {
            explicit = TermTree::node("S", vec![explicit]);
        }
        let compact = TermTree::Numeral { succ: "S".into(), zero: "0".into(), count: Nat::from(40) };
        assert_eq!(explicit, compact);
        assert_eq!(encode_tree(&table, &explicit).unwrap(), encode_tree(&table, &compact).unwrap());
    }

    #[test]
    fn text_syntax() {
        let t: TermTree = " plus( x , S(y) )".parse().unwrap();
        assert_eq!(t.to_string(), "plus(x,S(y))");
        assert!("plus(x,".parse::<TermTree>().is_err());
        assert!("".parse::<TermTree>().is_err());
    }

    #[test]
    fn retranslation_between_tables() {
        let a = LabelTable::new(&[("0", 0), ("S", 1), ("plus", 2)]).unwrap();
        let b = a.reversed();
        let t: TermTree = "plus(S(0),S(S(0)))".parse().unwrap();
        let xa = encode_tree(&a, &t).unwrap();
        let xb = retranslate(&a, &b, &xa).unwrap();
        assert_ne!(xa, xb);
        assert_eq!(xb, encode_tree(&b, &t).unwrap());
        assert_eq!(retranslate(&b, &a, &xb).unwrap(), xa);
    }
}
