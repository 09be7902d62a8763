//! Term indexings of finitely generated structures.
//!
//! Sorts `0 … m-1` are scalar sorts inherited from an indexed base
//! structure; their terms are numerals `S^x(0)` with `x` an index of the
//! base, denoting the base's decoding of `x`. Sorts `m …` are generated:
//! their terms are built from constants and new operations, and denote by
//! evaluation. The domain of a generated sort is every well-sorted term, so
//! re-wrapping `⌜op⌝; x₁; …; x_l; 0` stays inside it; the enumerator lists
//! only the admitted terms `T_k` of the sort, which already reach every
//! element.

use std::fmt;
use std::sync::Arc;

use crate::encoding::{decode_tree, encode_tree, pair, LabelTable, Nat, TermTree};

use super::{IndexError, IndexFn, IndexedStructure, Indexing, IndexingRef, Operation, Value, ValueFn};

pub type TreeEnum = Arc<dyn Fn(u64) -> Result<TermTree, IndexError> + Send + Sync>;
pub type TreeRecognizer = Arc<dyn Fn(&TermTree) -> bool + Send + Sync>;
pub type TreeRepresent = Arc<dyn Fn(&Value) -> Result<TermTree, IndexError> + Send + Sync>;
pub type Locate = Arc<dyn Fn(&Value) -> Option<u64> + Send + Sync>;
pub type CustomFn = Arc<dyn Fn(&TermIndexing, &[Nat]) -> Result<Nat, IndexError> + Send + Sync>;
pub type SortedValueFn = Arc<dyn Fn(usize, &Value) -> Result<Value, IndexError> + Send + Sync>;

/// A generated sort: how to list its admitted terms, recognize them, and
/// produce the admitted term of a value.
#[derive(Clone)]
pub struct GeneratedSort {
    pub tag: String,
    pub enumerate: TreeEnum,
    pub recognize: TreeRecognizer,
    pub represent: Option<TreeRepresent>,
    pub locate: Option<Locate>,
}

#[derive(Clone)]
pub struct Constant {
    pub symbol: String,
    pub sort: usize,
    pub value: Value,
}

#[derive(Clone)]
pub enum OpImpl {
    /// `x₁ … x_l ↦ ⌜op⌝; x₁; …; x_l; 0`.
    Rewrap,
    /// An index-level implementation that keeps results in a normal shape.
    Custom(CustomFn),
}

#[derive(Clone)]
pub struct NewOp {
    pub symbol: String,
    pub args: Vec<usize>,
    pub result: usize,
    pub semantic: ValueFn,
    pub implementation: OpImpl,
    /// Whether translators may map this operation node by node.
    pub structural: bool,
}

impl NewOp {
    pub fn rewrap(symbol: &str, args: Vec<usize>, result: usize, semantic: ValueFn) -> Self {
        NewOp { symbol: symbol.into(), args, result, semantic, implementation: OpImpl::Rewrap, structural: true }
    }

    pub fn custom(symbol: &str, args: Vec<usize>, result: usize, semantic: ValueFn, f: CustomFn) -> Self {
        NewOp { symbol: symbol.into(), args, result, semantic, implementation: OpImpl::Custom(f), structural: true }
    }
}

/// A bijection applied to the values of generated sorts.
#[derive(Clone)]
pub struct ValueMap {
    pub forward: SortedValueFn,
    pub inverse: SortedValueFn,
}

#[derive(Clone)]
pub struct GenerativeSpec {
    pub name: String,
    pub base: Option<IndexedStructure>,
    pub sorts: Vec<GeneratedSort>,
    pub constants: Vec<Constant>,
    pub ops: Vec<NewOp>,
    /// Label table order; defaults to numerals, constants, operations.
    pub label_order: Option<Vec<String>>,
}

/// The indexing built from a [`GenerativeSpec`]; cheap to clone.
#[derive(Clone)]
pub struct TermIndexing(Arc<Core>);

struct Core {
    name: String,
    table: LabelTable,
    base: Option<IndexedStructure>,
    scalar: usize,
    sorts: Vec<GeneratedSort>,
    constants: Vec<Constant>,
    ops: Vec<NewOp>,
    map: Option<ValueMap>,
    succ_id: u64,
    zero_id: u64,
}

const SUCC: &str = "S";
const ZERO: &str = "0";

impl TermIndexing {
    /// Builds the indexing of every sort from its generators.
    pub fn build(spec: GenerativeSpec) -> Result<Self, IndexError> {
        let scalar = spec.base.as_ref().map_or(0, |b| b.sorts.len());
        let total = scalar + spec.sorts.len();
        let mut entries: Vec<(String, usize)> = Vec::new();
        if scalar > 0 {
            entries.push((ZERO.into(), 0));
            entries.push((SUCC.into(), 1));
        }
        for c in &spec.constants {
            if c.sort < scalar || c.sort >= total {
                return Err(IndexError::Invalid(format!("constant `{}` must have a generated sort", c.symbol)));
            }
            entries.push((c.symbol.clone(), 0));
        }
        for op in &spec.ops {
            if op.result < scalar || op.result >= total || op.args.iter().any(|&a| a >= total) {
                return Err(IndexError::Invalid(format!("operation `{}` has invalid sorts", op.symbol)));
            }
            entries.push((op.symbol.clone(), op.args.len()));
        }
        let mut table = LabelTable::new(&entries)?;
        if let Some(order) = &spec.label_order {
            let perm = order
                .iter()
                .map(|s| {
                    table
                        .by_symbol(s)
                        .map(|l| l.id as usize)
                        .ok_or_else(|| IndexError::Invalid(format!("label order names unknown symbol `{s}`")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            table = table.permuted(&perm)?;
        }
        let (succ_id, zero_id) = if scalar > 0 {
            (table.id_with_arity(SUCC, 1)?, table.id_with_arity(ZERO, 0)?)
        } else {
            (u64::MAX, u64::MAX)
        };
        Ok(TermIndexing(Arc::new(Core {
            name: spec.name,
            table,
            base: spec.base,
            scalar,
            sorts: spec.sorts,
            constants: spec.constants,
            ops: spec.ops,
            map: None,
            succ_id,
            zero_id,
        })))
    }

    fn rebuilt(&self, f: impl FnOnce(&mut Core)) -> TermIndexing {
        let c = &self.0;
        let mut core = Core {
            name: c.name.clone(),
            table: c.table.clone(),
            base: c.base.clone(),
            scalar: c.scalar,
            sorts: c.sorts.clone(),
            constants: c.constants.clone(),
            ops: c.ops.clone(),
            map: c.map.clone(),
            succ_id: c.succ_id,
            zero_id: c.zero_id,
        };
        f(&mut core);
        TermIndexing(Arc::new(core))
    }

    /// The same terms and denotations under a reordered label table.
    pub fn with_label_order(&self, order: &[&str]) -> Result<TermIndexing, IndexError> {
        let perm = order
            .iter()
            .map(|s| {
                self.0
                    .table
                    .by_symbol(s)
                    .map(|l| l.id as usize)
                    .ok_or_else(|| IndexError::Invalid(format!("unknown symbol `{s}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let table = self.0.table.permuted(&perm)?;
        let (succ_id, zero_id) = if self.0.scalar > 0 {
            (table.id_with_arity(SUCC, 1)?, table.id_with_arity(ZERO, 0)?)
        } else {
            (u64::MAX, u64::MAX)
        };
        Ok(self.rebuilt(|c| {
            c.table = table;
            c.succ_id = succ_id;
            c.zero_id = zero_id;
        }))
    }

    /// The same terms with every generated-sort value sent through `map`.
    /// Operations listed in `opaque` are no longer mapped node by node by
    /// translators, and are dropped from [`TermIndexing::structure`].
    pub fn with_value_map(&self, name: &str, map: ValueMap, opaque: &[&str]) -> TermIndexing {
        self.rebuilt(|c| {
            c.name = name.to_string();
            c.map = Some(map);
            for op in &mut c.ops {
                if opaque.contains(&op.symbol.as_str()) {
                    op.structural = false;
                }
            }
        })
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn table(&self) -> &LabelTable {
        &self.0.table
    }

    pub fn base(&self) -> Option<&IndexedStructure> {
        self.0.base.as_ref()
    }

    pub fn scalar_sorts(&self) -> usize {
        self.0.scalar
    }

    pub fn sort_count(&self) -> usize {
        self.0.scalar + self.0.sorts.len()
    }

    pub fn constants(&self) -> &[Constant] {
        &self.0.constants
    }

    pub fn new_op(&self, symbol: &str) -> Option<&NewOp> {
        self.0.ops.iter().find(|o| o.symbol == symbol)
    }

    pub fn constant(&self, symbol: &str) -> Option<&Constant> {
        self.0.constants.iter().find(|c| c.symbol == symbol)
    }

    pub fn has_value_map(&self) -> bool {
        self.0.map.is_some()
    }

    pub fn sort(&self, k: usize) -> IndexingRef {
        Arc::new(TermSort { ti: self.clone(), sort: k })
    }

    pub fn sort_tag(&self, k: usize) -> String {
        if k < self.0.scalar {
            let base = self.0.base.as_ref().expect("scalar sorts come from a base");
            format!("numerals of {}", base.sorts[k].tag())
        } else {
            format!("{}:{}", self.0.name, self.0.sorts[k - self.0.scalar].tag)
        }
    }

    pub fn encode(&self, t: &TermTree) -> Result<Nat, IndexError> {
        Ok(encode_tree(&self.0.table, t)?)
    }

    pub fn decode_term(&self, x: &Nat) -> Result<TermTree, IndexError> {
        Ok(decode_tree(&self.0.table, x)?)
    }

    /// `⌜S^x(0)⌝`.
    pub fn wrap_numeral(&self, x: &Nat) -> Nat {
        Nat::numeral(self.0.succ_id, self.0.zero_id, x)
    }

    /// `x` from `⌜S^x(0)⌝`.
    pub fn numeral_count(&self, y: &Nat) -> Result<Nat, IndexError> {
        if self.0.scalar == 0 {
            return Err(IndexError::Invalid(format!("{} has no scalar sorts", self.0.name)));
        }
        if let Some((s, z, c)) = y.as_numeral() {
            if s == self.0.succ_id && z == self.0.zero_id {
                return Ok(c.clone());
            }
        }
        self.decode_term(y)?
            .numeral_count(SUCC, ZERO)
            .ok_or_else(|| IndexError::NotInDomain(format!("{y} is not a numeral")))
    }

    pub fn numeral_term(x: &Nat) -> TermTree {
        TermTree::numeral(SUCC, ZERO, x)
    }

    /// `⌜op(x₁ … x_l)⌝` from the children's indices.
    pub fn rewrap(&self, symbol: &str, xs: &[Nat]) -> Result<Nat, IndexError> {
        let id = self.0.table.id_with_arity(symbol, xs.len())?;
        let mut tail = Nat::zero();
        for x in xs.iter().rev() {
            tail = pair(x, &tail);
        }
        Ok(pair(&Nat::from_u64(id), &tail))
    }

    /// Whether `t` is an admitted term of sort `k`.
    pub fn admits(&self, k: usize, t: &TermTree) -> bool {
        if k < self.0.scalar {
            return t.numeral_count(SUCC, ZERO).is_some();
        }
        self.0.sorts.get(k - self.0.scalar).is_some_and(|s| (s.recognize)(t))
    }

    /// Index of an admitted term; terms outside `T_k` are rejected.
    pub fn encode_admitted(&self, k: usize, t: &TermTree) -> Result<Nat, IndexError> {
        if !self.admits(k, t) {
            return Err(IndexError::NotInDomain(format!("`{t}` is not an admitted term of {}", self.sort_tag(k))));
        }
        self.encode(t)
    }

    /// Denotation of `t` at sort `k`, without the value map.
    pub fn denote(&self, k: usize, t: &TermTree) -> Result<Value, IndexError> {
        let c = &self.0;
        if k < c.scalar {
            let x = t.numeral_count(SUCC, ZERO).ok_or_else(|| {
                IndexError::NotInDomain(format!("expected a numeral of {}, found `{t}`", self.sort_tag(k)))
            })?;
            let base = c.base.as_ref().expect("scalar sorts come from a base");
            return base.sorts[k].decode(&x);
        }
        match t {
            TermTree::Numeral { succ, zero, count } => {
                let op = self.op_of_sort(succ, k)?;
                let mut v = self.denote(k, &TermTree::leaf(zero))?;
                let steps = count
                    .as_u64()
                    .ok_or_else(|| IndexError::Unsupported(format!("`{succ}` iterated too often to evaluate")))?;
                for _ in 0..steps {
                    v = (op.semantic)(std::slice::from_ref(&v))?;
                }
                Ok(v)
            }
            TermTree::Node { symbol, children } => {
                if children.is_empty() {
                    if let Some(cst) = self.constant(symbol) {
                        if cst.sort != k {
                            return Err(IndexError::NotInDomain(format!("constant `{symbol}` has another sort")));
                        }
                        return Ok(cst.value.clone());
                    }
                }
                let op = self.op_of_sort(symbol, k)?;
                if op.args.len() != children.len() {
                    return Err(IndexError::NotInDomain(format!("`{symbol}` applied to {} terms", children.len())));
                }
                let vals =
                    op.args.iter().zip(children).map(|(&a, ch)| self.denote(a, ch)).collect::<Result<Vec<_>, _>>()?;
                (op.semantic)(&vals)
            }
        }
    }

    fn op_of_sort(&self, symbol: &str, k: usize) -> Result<&NewOp, IndexError> {
        let op = self
            .new_op(symbol)
            .ok_or_else(|| IndexError::NotInDomain(format!("`{symbol}` is not an operation of {}", self.0.name)))?;
        if op.result != k {
            return Err(IndexError::NotInDomain(format!("`{symbol}` does not produce {}", self.sort_tag(k))));
        }
        Ok(op)
    }

    /// Denotation of `t` at sort `k` under this indexing (value map applied).
    pub fn value_of(&self, k: usize, t: &TermTree) -> Result<Value, IndexError> {
        let v = self.denote(k, t)?;
        match &self.0.map {
            Some(m) if k >= self.0.scalar => (m.forward)(k, &v),
            _ => Ok(v),
        }
    }

    fn unmap(&self, k: usize, v: &Value) -> Result<Value, IndexError> {
        match &self.0.map {
            Some(m) if k >= self.0.scalar => (m.inverse)(k, v),
            _ => Ok(v.clone()),
        }
    }

    /// Lifted base operations followed by the new operations. Operations
    /// made opaque by a value map are left out.
    pub fn structure(&self) -> IndexedStructure {
        let c = &self.0;
        let mut ops = Vec::new();
        if let Some(base) = &c.base {
            for op in &base.ops {
                let ti = self.clone();
                let inner = op.apply.clone();
                let apply: IndexFn = Arc::new(move |xs: &[Nat]| {
                    let counts = xs.iter().map(|x| ti.numeral_count(x)).collect::<Result<Vec<_>, _>>()?;
                    Ok(ti.wrap_numeral(&inner(&counts)?))
                });
                ops.push(Operation {
                    name: format!("scalar.{}", op.name),
                    args: op.args.clone(),
                    result: op.result,
                    apply,
                    semantic: op.semantic.clone(),
                });
            }
        }
        for op in &c.ops {
            if c.map.is_some() && !op.structural {
                continue;
            }
            let ti = self.clone();
            let apply: IndexFn = match &op.implementation {
                OpImpl::Rewrap => {
                    let symbol = op.symbol.clone();
                    Arc::new(move |xs: &[Nat]| ti.rewrap(&symbol, xs))
                }
                OpImpl::Custom(f) => {
                    let f = f.clone();
                    Arc::new(move |xs: &[Nat]| f(&ti, xs))
                }
            };
            ops.push(Operation {
                name: op.symbol.clone(),
                args: op.args.clone(),
                result: op.result,
                apply,
                semantic: op.semantic.clone(),
            });
        }
        IndexedStructure { name: c.name.clone(), sorts: (0..self.sort_count()).map(|k| self.sort(k)).collect(), ops }
    }
}

impl fmt::Debug for TermIndexing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TermIndexing({})", self.0.name)
    }
}

/// The indexing of one sort of a [`TermIndexing`].
pub struct TermSort {
    ti: TermIndexing,
    sort: usize,
}

impl TermSort {
    fn generated(&self) -> &GeneratedSort {
        &self.ti.0.sorts[self.sort - self.ti.0.scalar]
    }

    fn base_sort(&self) -> &IndexingRef {
        &self.ti.0.base.as_ref().expect("scalar sorts come from a base").sorts[self.sort]
    }

    fn is_scalar(&self) -> bool {
        self.sort < self.ti.0.scalar
    }
}

impl Indexing for TermSort {
    fn tag(&self) -> &str {
        if self.is_scalar() {
            self.base_sort().tag()
        } else {
            &self.generated().tag
        }
    }

    fn enumerate(&self, z: u64) -> Result<Nat, IndexError> {
        if self.is_scalar() {
            return Ok(self.ti.wrap_numeral(&self.base_sort().enumerate(z)?));
        }
        self.ti.encode(&(self.generated().enumerate)(z)?)
    }

    fn decode(&self, x: &Nat) -> Result<Value, IndexError> {
        if self.is_scalar() {
            return self.base_sort().decode(&self.ti.numeral_count(x)?);
        }
        let t = self.ti.decode_term(x)?;
        self.ti.value_of(self.sort, &t)
    }

    fn equal(&self, x: &Nat, y: &Nat) -> Result<bool, IndexError> {
        if self.is_scalar() {
            return self.base_sort().equal(&self.ti.numeral_count(x)?, &self.ti.numeral_count(y)?);
        }
        if x == y {
            return Ok(true);
        }
        Ok(self.decode(x)? == self.decode(y)?)
    }

    fn represent(&self, v: &Value) -> Result<Nat, IndexError> {
        if self.is_scalar() {
            return Ok(self.ti.wrap_numeral(&self.base_sort().represent(v)?));
        }
        let rep = self
            .generated()
            .represent
            .as_ref()
            .ok_or_else(|| IndexError::Unsupported(format!("{} has no canonical terms", self.tag())))?;
        let u = self.ti.unmap(self.sort, v)?;
        self.ti.encode(&rep(&u)?)
    }

    fn locate(&self, v: &Value) -> Option<u64> {
        if self.is_scalar() {
            return self.base_sort().locate(v);
        }
        let u = self.ti.unmap(self.sort, v).ok()?;
        self.generated().locate.as_ref().and_then(|l| l(&u))
    }
}
