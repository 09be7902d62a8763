use crate::exactnum::zeta8;
use crate::tensor::{BasisWord, TensorVector};

use super::circuit::check_targets;
use super::{Circuit, Gate, GateLibrary, QsimError};

fn bit(c: char) -> Result<usize, QsimError> {
    match c {
        '0' => Ok(0),
        '1' => Ok(1),
        _ => Err(QsimError::BadTargets(format!("`{c}` is not a qubit letter"))),
    }
}

/// Applies `gate` to the qubits `targets` of every summand, exactly.
pub fn apply_gate(state: &TensorVector, gate: &Gate, targets: &[usize]) -> Result<TensorVector, QsimError> {
    let Some(n) = state.terms().keys().next().map(BasisWord::len) else {
        return Ok(state.clone());
    };
    check_targets(n, gate.arity(), targets)?;
    let k = targets.len();
    let m = gate.matrix();
    let mut out = Vec::new();
    for (w, a) in state.terms() {
        let mut letters: Vec<char> = w.letters().chars().collect();
        if letters.len() != n {
            return Err(QsimError::WordLength { expected: n, found: letters.len() });
        }
        let mut col = 0;
        for &t in targets {
            col = col << 1 | bit(letters[t])?;
        }
        for (row, r) in m.iter().enumerate() {
            let entry = &r[col];
            if entry.is_zero() {
                continue;
            }
            for (i, &t) in targets.iter().enumerate() {
                letters[t] = if row >> (k - 1 - i) & 1 == 1 { '1' } else { '0' };
            }
            let word = BasisWord::new(&letters.iter().collect::<String>())?;
            out.push((word, a.mul(entry)?));
        }
    }
    Ok(TensorVector::from_terms(state.field(), out)?)
}

/// Runs `circuit` from an arbitrary state, calling `observe` after each
/// step with the step number and the state.
pub fn run_state(
    circuit: &Circuit,
    state: &TensorVector,
    lib: &GateLibrary,
    mut observe: impl FnMut(usize, &TensorVector),
) -> Result<TensorVector, QsimError> {
    if let Some(w) = state.terms().keys().find(|w| w.len() != circuit.qubits) {
        return Err(QsimError::WordLength { expected: circuit.qubits, found: w.len() });
    }
    let mut s = state.clone();
    for (i, step) in circuit.steps.iter().enumerate() {
        let g = lib.get(&step.gate).ok_or_else(|| QsimError::UnknownGate(step.gate.clone()))?;
        s = apply_gate(&s, g, &step.targets)?;
        observe(i, &s);
    }
    Ok(s)
}

/// Runs `circuit` from `1·initial`.
pub fn run_circuit(circuit: &Circuit, initial: &BasisWord, lib: &GateLibrary) -> Result<TensorVector, QsimError> {
    for c in initial.letters().chars() {
        bit(c)?;
    }
    run_state(circuit, &TensorVector::basis(&zeta8(), initial.clone()), lib, |_, _| {})
}
