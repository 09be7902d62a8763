use std::collections::BTreeMap;
use std::fmt;

use crate::exactnum::FieldElement;
use crate::tensor::{BasisWord, TensorVector};

use super::QsimError;

/// Outcome probabilities of a state, exact and approximate.
#[derive(Clone, Debug)]
pub struct MeasurementReport {
    pub entries: BTreeMap<BasisWord, (FieldElement, f64)>,
    pub total: FieldElement,
}

impl MeasurementReport {
    /// Whether every probability equals its conjugate and they sum to 1.
    pub fn is_consistent(&self) -> Result<bool, QsimError> {
        for (p, _) in self.entries.values() {
            if !p.conj()?.exact_eq(p)? {
                return Ok(false);
            }
        }
        Ok(self.total.is_one())
    }
}

/// `a_w · conj(a_w)` for each word `w` of the state.
pub fn probabilities(state: &TensorVector) -> Result<MeasurementReport, QsimError> {
    let mut entries = BTreeMap::new();
    let mut total = FieldElement::zero(state.field());
    for (w, a) in state.terms() {
        let p = a.mul(&a.conj()?)?;
        total = total.add(&p)?;
        let approx = p.approx().re;
        entries.insert(w.clone(), (p, approx));
    }
    Ok(MeasurementReport { entries, total })
}

impl fmt::Display for MeasurementReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.entries.keys().map(|w| w.to_string().len()).max().unwrap_or(7).max(7);
        writeln!(f, "{:<width$}  {:<20}  decimal", "outcome", "exact")?;
        for (w, (p, x)) in &self.entries {
            writeln!(f, "{:<width$}  {:<20}  {x:.10}", w.to_string(), p.to_trimmed_string())?;
        }
        write!(f, "{:<width$}  {:<20}  {:.10}", "total", self.total.to_trimmed_string(), self.total.approx().re)
    }
}
