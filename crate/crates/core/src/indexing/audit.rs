//! Finite-sample audit of admissibility.

use std::fmt;

use crate::encoding::{cantor_split, Nat};

use super::{IndexError, IndexedStructure};

#[derive(Clone, Debug)]
pub struct Violation {
    pub op: String,
    pub positions: Vec<u64>,
    pub args: Vec<Nat>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args: Vec<String> = self.args.iter().map(|a| a.to_string()).collect();
        write!(f, "{} at positions {:?} (indices {}): {}", self.op, self.positions, args.join(", "), self.detail)
    }
}

#[derive(Clone, Debug, Default)]
pub struct AdmissibilityReport {
    pub structure: String,
    /// `(operation, tuples checked, tuples skipped)`.
    pub per_op: Vec<(String, usize, usize)>,
    pub violations: Vec<Violation>,
}

impl AdmissibilityReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for AdmissibilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "structure {}", self.structure)?;
        for (op, checked, skipped) in &self.per_op {
            let bad = self.violations.iter().filter(|v| &v.op == op).count();
            let verdict = if bad == 0 { "pass" } else { "FAIL" };
            let tested = checked - skipped;
            write!(f, "  {op:<14} {verdict} {}/{tested}", tested - bad)?;
            if *skipped > 0 {
                write!(f, " ({skipped} outside the operation's domain)")?;
            }
            writeln!(f)?;
        }
        for v in &self.violations {
            writeln!(f, "  violation: {v}")?;
        }
        Ok(())
    }
}

/// For each operation and the first `samples` tuples of enumerated indices,
/// checks that the index-level result decodes to the operation applied to
/// the decoded arguments, and that the result sort's `equal` agrees with a
/// representative of that value. Tuples where the operation itself is
/// undefined (division by zero) are skipped.
pub fn check_admissible(structure: &IndexedStructure, samples: usize) -> AdmissibilityReport {
    let mut report = AdmissibilityReport { structure: structure.name.clone(), ..Default::default() };
    for op in &structure.ops {
        let mut skipped = 0;
        for t in 0..samples as u64 {
            let positions = cantor_split(t, op.args.len());
            let mut violation = |args: Vec<Nat>, detail: String| {
                report.violations.push(Violation { op: op.name.clone(), positions: positions.clone(), args, detail })
            };
            let args: Result<Vec<Nat>, _> =
                op.args.iter().zip(&positions).map(|(&s, &z)| structure.sorts[s].enumerate(z)).collect();
            let args = match args {
                Ok(a) => a,
                Err(e) => {
                    violation(Vec::new(), format!("enumeration failed: {e}"));
                    continue;
                }
            };
            let vals: Result<Vec<_>, _> =
                op.args.iter().zip(&args).map(|(&s, x)| structure.sorts[s].decode(x)).collect();
            let vals = match vals {
                Ok(v) => v,
                Err(e) => {
                    violation(args, format!("argument does not decode: {e}"));
                    continue;
                }
            };
            let expected = match (op.semantic)(&vals) {
                Ok(v) => v,
                Err(_) => {
                    skipped += 1;
                    continue;
                }
            };
            let out = match (op.apply)(&args) {
                Ok(o) => o,
                Err(e) => {
                    violation(args, format!("index-level operation failed: {e}"));
                    continue;
                }
            };
            let sort = &structure.sorts[op.result];
            match sort.decode(&out) {
                Ok(got) if got == expected => {}
                Ok(got) => {
                    violation(args, format!("result decodes to {got}, expected {expected}"));
                    continue;
                }
                Err(e) => {
                    violation(args, format!("result does not decode: {e}"));
                    continue;
                }
            }
            match sort.represent(&expected) {
                Ok(rep) => match sort.equal(&out, &rep) {
                    Ok(true) => {}
                    Ok(false) => violation(args, format!("eq rejects the result against {expected}")),
                    Err(e) => violation(args, format!("eq failed: {e}")),
                },
                Err(IndexError::Unsupported(_)) => {}
                Err(e) => violation(args, format!("cannot represent {expected}: {e}")),
            }
        }
        report.per_op.push((op.name.clone(), samples, skipped));
    }
    report
}
