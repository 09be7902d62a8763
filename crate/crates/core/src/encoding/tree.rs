//! Finite labeled trees, label tables and their Gödel numbers.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::nat::{Nat, PairingError};
use super::EncodingError;

/// Symbols printed as nested applications when a numeral is at most this deep.
const EXPLICIT_NUMERAL_LIMIT: u64 = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Label {
    pub id: u64,
    pub symbol: Arc<str>,
    pub arity: usize,
}

/// A finite table of symbols, each with a fixed arity. The position of a
/// symbol in the table is its index.
#[derive(Clone, Debug)]
pub struct LabelTable {
    labels: Vec<Label>,
    by_symbol: HashMap<Arc<str>, usize>,
}

impl LabelTable {
    pub fn new<S: AsRef<str>>(entries: &[(S, usize)]) -> Result<Self, EncodingError> {
        let mut labels = Vec::with_capacity(entries.len());
        let mut by_symbol = HashMap::new();
        for (i, (sym, arity)) in entries.iter().enumerate() {
            let symbol: Arc<str> = Arc::from(sym.as_ref());
            if !valid_symbol(&symbol) {
                return Err(EncodingError::InvalidSymbol(symbol.to_string()));
            }
            if by_symbol.insert(symbol.clone(), i).is_some() {
                return Err(EncodingError::DuplicateLabel(symbol.to_string()));
            }
            labels.push(Label { id: i as u64, symbol, arity: *arity });
        }
        Ok(LabelTable { labels, by_symbol })
    }

    /// The same symbols listed in a different order.
    pub fn permuted(&self, order: &[usize]) -> Result<Self, EncodingError> {
        let mut seen = vec![false; self.labels.len()];
        let mut entries = Vec::with_capacity(order.len());
        for &i in order {
            let label = self.labels.get(i).ok_or(EncodingError::BadPermutation)?;
            if std::mem::replace(&mut seen[i], true) {
                return Err(EncodingError::BadPermutation);
            }
            entries.push((label.symbol.to_string(), label.arity));
        }
        if entries.len() != self.labels.len() {
            return Err(EncodingError::BadPermutation);
        }
        LabelTable::new(&entries)
    }

    pub fn reversed(&self) -> Self {
        let order: Vec<usize> = (0..self.labels.len()).rev().collect();
        self.permuted(&order).expect("reversal is a permutation")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn by_symbol(&self, symbol: &str) -> Option<&Label> {
        self.by_symbol.get(symbol).map(|&i| &self.labels[i])
    }

    pub fn by_id(&self, id: u64) -> Option<&Label> {
        usize::try_from(id).ok().and_then(|i| self.labels.get(i))
    }

    fn require(&self, symbol: &str) -> Result<&Label, EncodingError> {
        self.by_symbol(symbol).ok_or_else(|| EncodingError::UnknownLabel(symbol.to_string()))
    }

    /// Index of `symbol` checked against an expected arity.
    pub fn id_with_arity(&self, symbol: &str, arity: usize) -> Result<u64, EncodingError> {
        let label = self.require(symbol)?;
        if label.arity != arity {
            return Err(EncodingError::ArityMismatch {
                symbol: symbol.to_string(),
                expected: label.arity,
                found: arity,
            });
        }
        Ok(label.id)
    }
}

fn valid_symbol(s: &str) -> bool {
    !s.is_empty()
        && s.chars().all(|c| c.is_alphanumeric() || matches!(c, '_' | '.' | '\'' | '|' | '+' | '-' | '*' | '/'))
}

/// A finite tree whose nodes are labeled by symbols.
///
/// `Numeral` is a compact spelling of `succ(succ(...succ(zero)))` with
/// `count` applications; it denotes the same tree as the nested nodes and
/// compares equal to them.
#[derive(Clone)]
pub enum TermTree {
    Node { symbol: Arc<str>, children: Vec<TermTree> },
    Numeral { succ: Arc<str>, zero: Arc<str>, count: Nat },
}

impl TermTree {
    pub fn leaf(symbol: &str) -> TermTree {
        TermTree::Node { symbol: Arc::from(symbol), children: Vec::new() }
    }

    pub fn node(symbol: &str, children: Vec<TermTree>) -> TermTree {
        TermTree::Node { symbol: Arc::from(symbol), children }
    }

    /// `succ^count(zero)`, spelled out when short.
    pub fn numeral(succ: &str, zero: &str, count: &Nat) -> TermTree {
        match count.as_u64() {
            Some(k) if k <= EXPLICIT_NUMERAL_LIMIT => {
                let mut t = TermTree::leaf(zero);
                for _ in 0..k {
                    t = TermTree::node(succ, vec![t]);
                }
                t
            }
            _ => TermTree::Numeral { succ: Arc::from(succ), zero: Arc::from(zero), count: count.clone() },
        }
    }

    pub fn symbol(&self) -> &str {
        match self {
            TermTree::Node { symbol, .. } => symbol,
            TermTree::Numeral { succ, .. } => succ,
        }
    }

    /// Children of a node. A compact numeral reports no children; use
    /// [`TermTree::numeral_count`] to read it.
    pub fn children(&self) -> &[TermTree] {
        match self {
            TermTree::Node { children, .. } => children,
            TermTree::Numeral { .. } => &[],
        }
    }

    /// If this tree is `succ^k(zero)` for the given symbols, returns `k`.
    pub fn numeral_count(&self, succ: &str, zero: &str) -> Option<Nat> {
        match self {
            TermTree::Numeral { succ: s, zero: z, count } => (&**s == succ && &**z == zero).then(|| count.clone()),
            TermTree::Node { symbol, children } => {
                if children.is_empty() {
                    return (&**symbol == zero).then(Nat::zero);
                }
                if &**symbol != succ || children.len() != 1 {
                    return None;
                }
                let mut k = 1u64;
                let mut cur = &children[0];
                loop {
                    match cur {
                        TermTree::Node { symbol, children } if &**symbol == succ && children.len() == 1 => {
                            k += 1;
                            cur = &children[0];
                        }
                        TermTree::Node { symbol, children } if &**symbol == zero && children.is_empty() => {
                            return Some(Nat::from_u64(k));
                        }
                        TermTree::Numeral { .. } => {
                            let mut count = cur.numeral_count(succ, zero)?;
                            for _ in 0..k {
                                count = count.succ().ok()?;
                            }
                            return Some(count);
                        }
                        _ => return None,
                    }
                }
            }
        }
    }

    /// Unary chain view used for equality: `(op, base, count)`, count >= 1.
    fn chain_view(&self) -> Option<(&str, &str, Nat)> {
        match self {
            TermTree::Numeral { succ, zero, count } => Some((succ, zero, count.clone())),
            TermTree::Node { symbol, children } if children.len() == 1 => {
                let mut cur = &children[0];
                while let TermTree::Node { symbol: s, children: c } = cur {
                    if s != symbol || c.len() != 1 {
                        break;
                    }
                    cur = &c[0];
                }
                let base = match cur {
                    TermTree::Node { symbol: s, children: c } if c.is_empty() => s,
                    TermTree::Numeral { succ, zero, .. } if succ == symbol => zero,
                    _ => return None,
                };
                let count = self.numeral_count(symbol, base)?;
                Some((symbol, base, count))
            }
            TermTree::Node { .. } => None,
        }
    }

    /// Number of nodes, counting a compact numeral as one.
    pub fn size(&self) -> usize {
        match self {
            TermTree::Node { children, .. } => 1 + children.iter().map(TermTree::size).sum::<usize>(),
            TermTree::Numeral { .. } => 1,
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            TermTree::Node { children, .. } => 1 + children.iter().map(TermTree::depth).max().unwrap_or(0),
            TermTree::Numeral { count, .. } => count.as_u64().map_or(usize::MAX, |k| k as usize + 1),
        }
    }
}

impl PartialEq for TermTree {
    fn eq(&self, other: &Self) -> bool {
        match (self.chain_view(), other.chain_view()) {
            (Some(a), Some(b)) => a == b,
            (None, None) => match (self, other) {
                (TermTree::Node { symbol: s1, children: c1 }, TermTree::Node { symbol: s2, children: c2 }) => {
                    s1 == s2 && c1 == c2
                }
                _ => false,
            },
            _ => false,
        }
    }
}

impl Eq for TermTree {}

impl fmt::Display for TermTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermTree::Node { symbol, children } => {
                f.write_str(symbol)?;
                if !children.is_empty() {
                    f.write_str("(")?;
                    for (i, c) in children.iter().enumerate() {
                        if i > 0 {
                            f.write_str(",")?;
                        }
                        write!(f, "{c}")?;
                    }
                    f.write_str(")")?;
                }
                Ok(())
            }
            TermTree::Numeral { succ, zero, count } => match count.as_u64() {
                Some(k) if k <= EXPLICIT_NUMERAL_LIMIT => {
                    write!(f, "{}", TermTree::numeral(succ, zero, count))
                }
                _ => write!(f, "{succ}^{count}({zero})"),
            },
        }
    }
}

impl fmt::Debug for TermTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::str::FromStr for TermTree {
    type Err = EncodingError;

    /// Parses `S(S(0))`, `plus(x,y)` and compact numerals `S^1000(0)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = TreeParser { src: s, pos: 0 };
        let t = p.tree()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(p.error("trailing input"));
        }
        Ok(t)
    }
}

struct TreeParser<'a> {
    src: &'a str,
    pos: usize,
}

impl TreeParser<'_> {
    fn error(&self, msg: &str) -> EncodingError {
        EncodingError::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn ident(&mut self) -> Result<&str, EncodingError> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let len = rest
            .char_indices()
            .find(|&(_, c)| !(c.is_alphanumeric() || matches!(c, '_' | '.' | '\'' | '|' | '+' | '-' | '*' | '/')))
            .map_or(rest.len(), |(i, _)| i);
        if len == 0 {
            return Err(self.error("expected symbol"));
        }
        self.pos += len;
        Ok(&self.src[start..start + len])
    }

    fn tree(&mut self) -> Result<TermTree, EncodingError> {
        let symbol = self.ident()?.to_string();
        self.skip_ws();
        match self.peek() {
            Some('^') => {
                self.pos += 1;
                self.skip_ws();
                let start = self.pos;
                let mut depth = 0i32;
                while let Some(c) = self.peek() {
                    match c {
                        '<' => depth += 1,
                        '>' => depth -= 1,
                        '(' if depth == 0 => break,
                        _ => {}
                    }
                    self.pos += c.len_utf8();
                }
                let count: Nat =
                    self.src[start..self.pos].trim().parse().map_err(|e: PairingError| self.error(&e.to_string()))?;
                self.expect('(')?;
                let zero = self.ident()?.to_string();
                self.expect(')')?;
                Ok(TermTree::numeral(&symbol, &zero, &count))
            }
            Some('(') => {
                self.pos += 1;
                let mut children = vec![self.tree()?];
                loop {
                    self.skip_ws();
                    match self.peek() {
                        Some(',') => {
                            self.pos += 1;
                            children.push(self.tree()?);
                        }
                        Some(')') => {
                            self.pos += 1;
                            break;
                        }
                        _ => return Err(self.error("expected ',' or ')'")),
                    }
                }
                Ok(TermTree::node(&symbol, children))
            }
            _ => Ok(TermTree::leaf(&symbol)),
        }
    }

    fn expect(&mut self, c: char) -> Result<(), EncodingError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}'")))
        }
    }
}
