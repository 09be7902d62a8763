use std::collections::BTreeMap;

use crate::exactnum::{zeta8, FieldElement, FieldRef, Rational};

use super::QsimError;

/// Square matrix of exact amplitudes.
pub type Matrix = Vec<Vec<FieldElement>>;

/// A `k`-qubit gate. Rows and columns are indexed by `k`-letter words over
/// `{0, 1}` in lexicographic order; the first target is the leading letter.
#[derive(Clone, Debug)]
pub struct Gate {
    name: String,
    arity: usize,
    matrix: Matrix,
}

impl Gate {
    /// Checks the shape, the field, and `U·U† = I` exactly.
    pub fn new(name: &str, arity: usize, matrix: Matrix) -> Result<Gate, QsimError> {
        if arity == 0 || arity > 8 {
            return Err(QsimError::NotUnitary(format!("{name}: arity must be between 1 and 8")));
        }
        let dim = 1usize << arity;
        if matrix.len() != dim || matrix.iter().any(|r| r.len() != dim) {
            return Err(QsimError::NotUnitary(format!("{name}: expected a {dim}x{dim} matrix")));
        }
        let f = zeta8();
        if matrix.iter().flatten().any(|e| !e.field().same_as(&f)) {
            return Err(QsimError::NotUnitary(format!("{name}: entries must lie in {}", f.name())));
        }
        let product = mat_mul(&matrix, &conj_transpose(&matrix)?)?;
        if !is_identity(&product) {
            return Err(QsimError::NotUnitary(name.to_string()));
        }
        Ok(Gate { name: name.to_string(), arity, matrix })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Result<Matrix, QsimError> {
    let n = a.len();
    let f = a[0][0].field().clone();
    let mut out = vec![vec![FieldElement::zero(&f); n]; n];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            for k in 0..n {
                if a[i][k].is_zero() || b[k][j].is_zero() {
                    continue;
                }
                *cell = cell.add(&a[i][k].mul(&b[k][j])?)?;
            }
        }
    }
    Ok(out)
}

pub fn conj_transpose(a: &Matrix) -> Result<Matrix, QsimError> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| Ok(a[j][i].conj()?)).collect()).collect()
}

pub fn is_identity(a: &Matrix) -> bool {
    a.iter()
        .enumerate()
        .all(|(i, row)| row.iter().enumerate().all(|(j, e)| if i == j { e.is_one() } else { e.is_zero() }))
}

pub fn mat_eq(a: &Matrix, b: &Matrix) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(r, s)| r == s)
}

pub fn mat_pow(a: &Matrix, k: u32) -> Result<Matrix, QsimError> {
    let f = a[0][0].field().clone();
    let n = a.len();
    let mut out: Matrix = (0..n)
        .map(|i| (0..n).map(|j| if i == j { FieldElement::one(&f) } else { FieldElement::zero(&f) }).collect())
        .collect();
    for _ in 0..k {
        out = mat_mul(&out, a)?;
    }
    Ok(out)
}

fn el(f: &FieldRef, coords: [(i64, i64); 4]) -> FieldElement {
    let coords = coords.iter().map(|&(n, d)| Rational::new(n, d).expect("nonzero denominator")).collect();
    FieldElement::new(f, coords).expect("four coordinates")
}

/// The gates available to circuits, by lowercase name.
#[derive(Clone, Debug)]
pub struct GateLibrary {
    gates: BTreeMap<String, Gate>,
}

impl GateLibrary {
    pub fn get(&self, name: &str) -> Option<&Gate> {
        self.gates.get(&name.to_ascii_lowercase())
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.gates.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn insert(&mut self, gate: Gate) {
        self.gates.insert(gate.name.to_ascii_lowercase(), gate);
    }
}

/// `x`, `z`, `s`, `t`, `h` and `cnot` over ℚ(ζ₈).
pub fn gate_library() -> GateLibrary {
    let f = zeta8();
    let o = FieldElement::zero(&f);
    let one = FieldElement::one(&f);
    let minus_one = el(&f, [(-1, 1), (0, 1), (0, 1), (0, 1)]);
    let i = el(&f, [(0, 1), (0, 1), (1, 1), (0, 1)]);
    let zeta = el(&f, [(0, 1), (1, 1), (0, 1), (0, 1)]);
    // 1/√2 = (ζ - ζ³)/2
    let h = el(&f, [(0, 1), (1, 2), (0, 1), (-1, 2)]);
    let diag = |a: &FieldElement, b: &FieldElement| vec![vec![a.clone(), o.clone()], vec![o.clone(), b.clone()]];
    let mut cnot = vec![vec![o.clone(); 4]; 4];
    cnot[0][0] = one.clone();
    cnot[1][1] = one.clone();
    cnot[2][3] = one.clone();
    cnot[3][2] = one.clone();
    let gates = [
        ("x", 1, vec![vec![o.clone(), one.clone()], vec![one.clone(), o.clone()]]),
        ("z", 1, diag(&one, &minus_one)),
        ("s", 1, diag(&one, &i)),
        ("t", 1, diag(&one, &zeta)),
        ("h", 1, vec![vec![h.clone(), h.clone()], vec![h.clone(), h.neg()]]),
        ("cnot", 2, cnot),
    ];
    let mut lib = GateLibrary { gates: BTreeMap::new() };
    for (name, arity, m) in gates {
        lib.insert(Gate::new(name, arity, m).expect("library gates are unitary"));
    }
    lib
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(lib: &GateLibrary, name: &str) -> Matrix {
        lib.get(name).unwrap().matrix().clone()
    }

    #[test]
    fn library_identities() {
        let lib = gate_library();
        assert_eq!(lib.len(), 6);
        assert!(is_identity(&mat_pow(&m(&lib, "h"), 2).unwrap()));
        assert!(is_identity(&mat_pow(&m(&lib, "t"), 8).unwrap()));
        assert!(!is_identity(&mat_pow(&m(&lib, "t"), 4).unwrap()));
        assert!(is_identity(&mat_pow(&m(&lib, "cnot"), 2).unwrap()));
        assert!(mat_eq(&mat_mul(&m(&lib, "t"), &m(&lib, "t")).unwrap(), &m(&lib, "s")));
        assert!(mat_eq(&mat_mul(&m(&lib, "s"), &m(&lib, "s")).unwrap(), &m(&lib, "z")));
    }

    #[test]
    fn rejects_non_unitary() {
        let f = zeta8();
        let two = FieldElement::from_ints(&f, &[2, 0, 0, 0]).unwrap();
        let o = FieldElement::zero(&f);
        let bad = vec![vec![two, o.clone()], vec![o, FieldElement::one(&f)]];
        assert!(matches!(Gate::new("bad", 1, bad), Err(QsimError::NotUnitary(_))));
    }
}
