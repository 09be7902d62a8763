//! Indexings of sets and structures, term indexings built from finite
//! generative sets, translators between indexings, and the budgeted
//! searches that realize right inverses and derived operations.

mod audit;
mod qorder;
pub mod registry;
mod search;
mod term;
mod translate;

pub use audit::{check_admissible, AdmissibilityReport, Violation};
pub use qorder::{rational_at, rational_position};
pub use search::{derive_inverse_op, least_index, right_inverse, right_inverse_eq, transport_function};
pub use term::{Constant, GeneratedSort, GenerativeSpec, NewOp, OpImpl, TermIndexing, TermSort, ValueMap};
pub use translate::{build_translator, numeral_sub_translator, TermTranslator};

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use thiserror::Error;

use crate::encoding::{EncodingError, Nat, PairingError};
use crate::exactnum::{ExactError, FieldElement, Rational};
use crate::tensor::TensorVector;

pub const DEFAULT_BUDGET: u64 = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IndexError {
    #[error(transparent)]
    Encoding(#[from] EncodingError),
    #[error(transparent)]
    Pairing(#[from] PairingError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("search budget of {steps} steps exhausted while {what}")]
    BudgetExhausted { what: String, steps: u64 },
    #[error("index not in the domain: {0}")]
    NotInDomain(String),
    #[error("value has the wrong kind: expected {expected}, found {found}")]
    WrongKind { expected: &'static str, found: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("{0}")]
    Invalid(String),
}

/// Maximum number of enumeration steps for a search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    max_steps: u64,
}

impl SearchBudget {
    pub fn new(max_steps: u64) -> Result<Self, IndexError> {
        if max_steps == 0 {
            return Err(IndexError::Invalid("search budget must be at least 1".into()));
        }
        Ok(SearchBudget { max_steps })
    }

    pub fn max_steps(&self) -> u64 {
        self.max_steps
    }

    /// `ET_BUDGET` when set and valid, otherwise the default.
    pub fn from_env() -> Self {
        std::env::var("ET_BUDGET")
            .ok()
            .and_then(|s| s.trim().parse::<u64>().ok())
            .and_then(|n| SearchBudget::new(n).ok())
            .unwrap_or_default()
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_steps: DEFAULT_BUDGET }
    }
}

/// Concrete carrier elements, used to audit indexings.
#[derive(Clone)]
pub enum Value {
    Natural(BigUint),
    Rational(Rational),
    Field(FieldElement),
    Tensor(TensorVector),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Natural(_) => "natural",
            Value::Rational(_) => "rational",
            Value::Field(_) => "field element",
            Value::Tensor(_) => "tensor vector",
        }
    }

    pub fn as_natural(&self) -> Result<&BigUint, IndexError> {
        match self {
            Value::Natural(n) => Ok(n),
            v => Err(IndexError::WrongKind { expected: "natural", found: v.kind().into() }),
        }
    }

    pub fn as_rational(&self) -> Result<&Rational, IndexError> {
        match self {
            Value::Rational(r) => Ok(r),
            v => Err(IndexError::WrongKind { expected: "rational", found: v.kind().into() }),
        }
    }

    pub fn as_field(&self) -> Result<&FieldElement, IndexError> {
        match self {
            Value::Field(f) => Ok(f),
            v => Err(IndexError::WrongKind { expected: "field element", found: v.kind().into() }),
        }
    }

    pub fn as_tensor(&self) -> Result<&TensorVector, IndexError> {
        match self {
            Value::Tensor(t) => Ok(t),
            v => Err(IndexError::WrongKind { expected: "tensor vector", found: v.kind().into() }),
        }
    }
}

impl PartialEq for Value {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Value::Natural(a), Value::Natural(b)) => a == b,
            (Value::Rational(a), Value::Rational(b)) => a == b,
            (Value::Field(a), Value::Field(b)) => a == b,
            (Value::Tensor(a), Value::Tensor(b)) => a.tv_eq(b).unwrap_or(false),
            _ => false,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Natural(n) => write!(f, "{n}"),
            Value::Rational(r) => write!(f, "{r}"),
            Value::Field(e) => write!(f, "{e}"),
            Value::Tensor(t) => write!(f, "{t}"),
        }
    }
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.kind(), self)
    }
}

/// A partial surjection from ℕ onto a carrier.
///
/// `enumerate` lists the domain (every `enumerate(z)` is in it, and every
/// element of the carrier is the decoding of some listed index); `equal` is
/// the equality of decodings, defined at least on the domain.
pub trait Indexing: Send + Sync {
    fn tag(&self) -> &str;

    fn enumerate(&self, z: u64) -> Result<Nat, IndexError>;

    fn decode(&self, x: &Nat) -> Result<Value, IndexError>;

    fn equal(&self, x: &Nat, y: &Nat) -> Result<bool, IndexError> {
        Ok(self.decode(x)? == self.decode(y)?)
    }

    /// Some index of `v`, when the indexing can produce one directly.
    fn represent(&self, v: &Value) -> Result<Nat, IndexError> {
        Err(IndexError::Unsupported(format!("{} cannot represent {}", self.tag(), v.kind())))
    }

    /// The least enumeration position whose index decodes to `v`, when it
    /// can be computed without searching.
    fn locate(&self, _v: &Value) -> Option<u64> {
        None
    }
}

pub type IndexingRef = Arc<dyn Indexing>;
pub type IndexFn = Arc<dyn Fn(&[Nat]) -> Result<Nat, IndexError> + Send + Sync>;
pub type ValueFn = Arc<dyn Fn(&[Value]) -> Result<Value, IndexError> + Send + Sync>;
pub type MapFn = Arc<dyn Fn(&Nat) -> Result<Nat, IndexError> + Send + Sync>;

/// An operation together with an index-level implementation of it.
#[derive(Clone)]
pub struct Operation {
    pub name: String,
    pub args: Vec<usize>,
    pub result: usize,
    pub apply: IndexFn,
    pub semantic: ValueFn,
}

impl fmt::Debug for Operation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {:?} -> {}", self.name, self.args, self.result)
    }
}

/// An indexing of each sort of a structure, with its operation table.
#[derive(Clone)]
pub struct IndexedStructure {
    pub name: String,
    pub sorts: Vec<IndexingRef>,
    pub ops: Vec<Operation>,
}

impl IndexedStructure {
    pub fn op(&self, name: &str) -> Option<&Operation> {
        self.ops.iter().find(|o| o.name == name)
    }

    pub fn apply(&self, name: &str, args: &[Nat]) -> Result<Nat, IndexError> {
        let op =
            self.op(name).ok_or_else(|| IndexError::Invalid(format!("{} has no operation `{name}`", self.name)))?;
        if op.args.len() != args.len() {
            return Err(IndexError::Invalid(format!("`{name}` takes {} arguments, got {}", op.args.len(), args.len())));
        }
        (op.apply)(args)
    }

    /// The same structure with the index-level implementation of `name`
    /// replaced.
    pub fn with_apply(mut self, name: &str, apply: IndexFn) -> Result<Self, IndexError> {
        let op = self
            .ops
            .iter_mut()
            .find(|o| o.name == name)
            .ok_or_else(|| IndexError::Invalid(format!("no operation `{name}`")))?;
        op.apply = apply;
        Ok(self)
    }

    pub fn without_op(mut self, name: &str) -> Self {
        self.ops.retain(|o| o.name != name);
        self
    }

    /// The substructure on the listed sorts, keeping the operations whose
    /// sorts all survive.
    pub fn restrict(&self, keep: &[usize]) -> IndexedStructure {
        let remap = |s: usize| keep.iter().position(|&k| k == s);
        let ops = self
            .ops
            .iter()
            .filter_map(|op| {
                let args = op.args.iter().map(|&a| remap(a)).collect::<Option<Vec<_>>>()?;
                let result = remap(op.result)?;
                Some(Operation { args, result, ..op.clone() })
            })
            .collect();
        IndexedStructure { name: self.name.clone(), sorts: keep.iter().map(|&k| self.sorts[k].clone()).collect(), ops }
    }
}

/// A map between the domains of two indexings of the same carrier.
#[derive(Clone)]
pub struct Translator {
    pub source: IndexingRef,
    pub target: IndexingRef,
    pub map: MapFn,
}

/// Outcome of checking `target ∘ map = source` on a prefix of the source
/// domain.
#[derive(Clone, Debug, Default)]
pub struct LawReport {
    pub checked: u64,
    pub violations: Vec<(u64, String)>,
}

impl LawReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl Translator {
    pub fn apply(&self, x: &Nat) -> Result<Nat, IndexError> {
        (self.map)(x)
    }

    /// Checks the translator law on the first `samples` enumerated source
    /// indices, both on decoded values and through the target's `equal`.
    pub fn check_law(&self, samples: u64) -> LawReport {
        let mut report = LawReport::default();
        for z in 0..samples {
            report.checked += 1;
            if let Err(msg) = self.check_one(z) {
                report.violations.push((z, msg));
            }
        }
        report
    }

    fn check_one(&self, z: u64) -> Result<(), String> {
        let x = self.source.enumerate(z).map_err(|e| e.to_string())?;
        let want = self.source.decode(&x).map_err(|e| e.to_string())?;
        let y = self.apply(&x).map_err(|e| format!("translation failed: {e}"))?;
        let got = self.target.decode(&y).map_err(|e| e.to_string())?;
        if got != want {
            return Err(format!("decodes to {got}, expected {want}"));
        }
        match self.target.represent(&want) {
            Ok(rep) => match self.target.equal(&y, &rep) {
                Ok(true) => Ok(()),
                Ok(false) => Err(format!("target eq rejects the image of {want}")),
                Err(e) => Err(e.to_string()),
            },
            Err(IndexError::Unsupported(_)) => Ok(()),
            Err(e) => Err(e.to_string()),
        }
    }
}
