use std::fmt;

use super::{GateLibrary, QsimError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub gate: String,
    pub targets: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    pub qubits: usize,
    pub steps: Vec<Step>,
}

impl Circuit {
    pub fn new(qubits: usize) -> Result<Circuit, QsimError> {
        if qubits == 0 {
            return Err(QsimError::BadTargets("a circuit needs at least one qubit".into()));
        }
        Ok(Circuit { qubits, steps: Vec::new() })
    }

    /// Appends a step after checking it against `lib`.
    pub fn push(&mut self, lib: &GateLibrary, gate: &str, targets: &[usize]) -> Result<(), QsimError> {
        let g = lib.get(gate).ok_or_else(|| QsimError::UnknownGate(gate.to_string()))?;
        check_targets(self.qubits, g.arity(), targets)?;
        self.steps.push(Step { gate: g.name().to_string(), targets: targets.to_vec() });
        Ok(())
    }

    /// Parses the text format: `qubits n`, then one `gate t₁ … t_k` per
    /// line; `#` starts a comment.
    pub fn parse(text: &str, lib: &GateLibrary) -> Result<Circuit, QsimError> {
        let mut circuit: Option<Circuit> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let err = |msg: String| QsimError::Parse { line, msg };
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let mut words = content.split_whitespace();
            let head = words.next().expect("nonempty line");
            let args: Vec<&str> = words.collect();
            match &mut circuit {
                None => {
                    if head != "qubits" || args.len() != 1 {
                        return Err(err(format!("expected `qubits <n>`, found `{content}`")));
                    }
                    let n: usize = args[0].parse().map_err(|_| err(format!("bad qubit count `{}`", args[0])))?;
                    circuit = Some(Circuit::new(n).map_err(|e| err(e.to_string()))?);
                }
                Some(c) => {
                    if head == "qubits" {
                        return Err(err("`qubits` given twice".into()));
                    }
                    let targets = args
                        .iter()
                        .map(|a| a.parse::<usize>().map_err(|_| err(format!("bad qubit `{a}`"))))
                        .collect::<Result<Vec<_>, _>>()?;
                    c.push(lib, head, &targets).map_err(|e| err(e.to_string()))?;
                }
            }
        }
        circuit.ok_or(QsimError::Parse { line: 0, msg: "missing `qubits <n>` header".into() })
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "qubits {}", self.qubits)?;
        for s in &self.steps {
            write!(f, "{}", s.gate)?;
            for t in &s.targets {
                write!(f, " {t}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub(crate) fn check_targets(qubits: usize, arity: usize, targets: &[usize]) -> Result<(), QsimError> {
    if targets.len() != arity {
        return Err(QsimError::BadTargets(format!("expected {arity} target(s), got {}", targets.len())));
    }
    for (i, &t) in targets.iter().enumerate() {
        if t >= qubits {
            return Err(QsimError::BadTargets(format!("qubit {t} out of range for {qubits} qubit(s)")));
        }
        if targets[..i].contains(&t) {
            return Err(QsimError::BadTargets(format!("qubit {t} targeted twice")));
        }
    }
    Ok(())
}
