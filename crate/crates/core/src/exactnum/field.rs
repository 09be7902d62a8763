//! Finite-degree extensions of ℚ given by structure constants.
//!
//! An element is its coordinate vector `(λ₀, …, λ_{d-1})` over a basis
//! `e₀ … e_{d-1}` with `e₀ = 1`, and `e_p × e_q = Σ_r m[p][q][r] e_r`.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_complex::Complex64;

use super::{ExactError, Rational};

#[derive(Debug)]
pub struct NumberField {
    name: String,
    degree: usize,
    /// `m[p][q][r]` flattened as `(p*d + q)*d + r`.
    constants: Vec<Rational>,
    /// Nonzero `(r, m[p][q][r])` for each `p*d + q`.
    sparse: Vec<Vec<(usize, Rational)>>,
    conj: Option<Vec<Vec<Rational>>>,
    embedding: Vec<Complex64>,
    min_poly: Option<Vec<Rational>>,
    conj_power: Option<u32>,
    overrides: Vec<(usize, usize, Vec<Rational>)>,
}

pub type FieldRef = Arc<NumberField>;

impl NumberField {
    /// A field from explicit constants. `conj[p]` is the image of `e_p`,
    /// `embedding[p]` a complex approximation of `e_p` (display only).
    pub fn from_constants(
        name: &str,
        degree: usize,
        constants: Vec<Rational>,
        conj: Option<Vec<Vec<Rational>>>,
        embedding: Vec<Complex64>,
    ) -> Result<NumberField, ExactError> {
        if degree == 0 {
            return Err(ExactError::InvalidField("degree must be at least 1".into()));
        }
        if constants.len() != degree * degree * degree {
            return Err(ExactError::InvalidField(format!(
                "expected {} structure constants, got {}",
                degree * degree * degree,
                constants.len()
            )));
        }
        if let Some(c) = &conj {
            if c.len() != degree || c.iter().any(|row| row.len() != degree) {
                return Err(ExactError::InvalidField("conjugation table has the wrong shape".into()));
            }
        }
        if embedding.len() != degree {
            return Err(ExactError::InvalidField("embedding has the wrong length".into()));
        }
        let mut field = NumberField {
            name: name.to_string(),
            degree,
            constants,
            sparse: Vec::new(),
            conj,
            embedding,
            min_poly: None,
            conj_power: None,
            overrides: Vec::new(),
        };
        field.rebuild_sparse();
        Ok(field)
    }

    fn rebuild_sparse(&mut self) {
        let d = self.degree;
        self.sparse = (0..d * d)
            .map(|pq| {
                (0..d)
                    .filter_map(|r| {
                        let m = &self.constants[pq * d + r];
                        (!m.is_zero()).then(|| (r, m.clone()))
                    })
                    .collect()
            })
            .collect();
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn constant(&self, p: usize, q: usize, r: usize) -> &Rational {
        let d = self.degree;
        &self.constants[(p * d + q) * d + r]
    }

    /// Coordinates of `e_p × e_q`.
    pub fn product_coords(&self, p: usize, q: usize) -> Vec<Rational> {
        (0..self.degree).map(|r| self.constant(p, q, r).clone()).collect()
    }

    pub fn has_conjugation(&self) -> bool {
        self.conj.is_some()
    }

    pub fn embedding(&self) -> &[Complex64] {
        &self.embedding
    }

    pub fn min_poly(&self) -> Option<&[Rational]> {
        self.min_poly.as_deref()
    }

    /// Replaces the coordinates of `e_p × e_q`. Used to describe (or to
    /// deliberately break) a field by hand.
    pub fn with_product(mut self, p: usize, q: usize, coords: Vec<Rational>) -> Result<Self, ExactError> {
        let d = self.degree;
        if p >= d || q >= d || coords.len() != d {
            return Err(ExactError::InvalidField(format!("bad product override for e{p} x e{q}")));
        }
        for (r, c) in coords.iter().enumerate() {
            self.constants[(p * d + q) * d + r] = c.clone();
        }
        self.overrides.retain(|(a, b, _)| (*a, *b) != (p, q));
        self.overrides.push((p, q, coords));
        self.rebuild_sparse();
        Ok(self)
    }

    pub fn same_as(&self, other: &NumberField) -> bool {
        std::ptr::eq(self, other) || (self.degree == other.degree && self.constants == other.constants)
    }

    /// Text description readable by [`parse_field_file`]. Only fields built
    /// from a minimal polynomial can be written.
    pub fn to_field_file(&self) -> Option<String> {
        let poly = self.min_poly.as_ref()?;
        let mut out = format!("name: {}\nminpoly:", self.name);
        for c in poly {
            out.push_str(&format!(" {c}"));
        }
        out.push('\n');
        if let Some(k) = self.conj_power {
            out.push_str(&format!("conj: {k}\n"));
        }
        for (p, q, coords) in &self.overrides {
            out.push_str(&format!("mult {p} {q}:"));
            for c in coords {
                out.push_str(&format!(" {c}"));
            }
            out.push('\n');
        }
        Some(out)
    }
}

/// Coordinates of `x^k mod poly` for a monic `poly` given constant-first.
fn reduce_power(poly: &[Rational], k: usize) -> Vec<Rational> {
    let d = poly.len() - 1;
    let mut v = vec![Rational::zero(); d];
    v[0] = Rational::one();
    for _ in 0..k {
        // multiply by x, then fold the x^d term back using x^d = -Σ c_i x^i
        let top = v[d - 1].clone();
        for i in (1..d).rev() {
            v[i] = v[i - 1].clone();
        }
        v[0] = Rational::zero();
        if !top.is_zero() {
            for i in 0..d {
                v[i] = &v[i] - &(&top * &poly[i]);
            }
        }
    }
    v
}

/// Roots of a monic polynomial (constant-first coefficients) by
/// Durand–Kerner iteration.
fn complex_roots(poly: &[Rational]) -> Vec<Complex64> {
    let d = poly.len() - 1;
    let c: Vec<f64> = poly.iter().map(Rational::to_f64).collect();
    if d == 1 {
        return vec![Complex64::new(-c[0], 0.0)];
    }
    let eval = |z: Complex64| c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a);
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..d).map(|i| seed.powu(i as u32)).collect();
    for _ in 0..500 {
        let mut delta = 0.0f64;
        for i in 0..d {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..d {
                if i != j {
                    denom *= roots[i] - roots[j];
                }
            }
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    roots
}

/// The root used as the numeric image of the generator: largest real part,
/// ties broken towards positive imaginary part.
fn principal_root(poly: &[Rational]) -> Complex64 {
    let roots = complex_roots(poly);
    let mut best = roots[0];
    for &r in &roots[1..] {
        let better = if (r.re - best.re).abs() > 1e-9 { r.re > best.re } else { r.im > best.im };
        if better {
            best = r;
        }
    }
    best
}

/// `ℚ[x]/(poly)` with basis `1, α, …, α^{d-1}`. `conj_power = k` adds the
/// automorphism `α ↦ α^k`.
pub fn build_field_from_min_poly(
    name: &str,
    coeffs: &[Rational],
    conj_power: Option<u32>,
) -> Result<FieldRef, ExactError> {
    Ok(Arc::new(field_from_min_poly(name, coeffs, conj_power)?))
}

fn field_from_min_poly(name: &str, coeffs: &[Rational], conj_power: Option<u32>) -> Result<NumberField, ExactError> {
    if coeffs.len() < 2 {
        return Err(ExactError::InvalidField("polynomial must have degree at least 1".into()));
    }
    if !coeffs.last().expect("nonempty").is_one() {
        return Err(ExactError::NonMonic);
    }
    let d = coeffs.len() - 1;
    let powers: Vec<Vec<Rational>> = (0..2 * d - 1).map(|k| reduce_power(coeffs, k)).collect();
    let mut constants = Vec::with_capacity(d * d * d);
    for p in 0..d {
        for q in 0..d {
            constants.extend(powers[p + q].iter().cloned());
        }
    }
    let conj = conj_power.map(|k| (0..d).map(|p| reduce_power(coeffs, k as usize * p)).collect());
    let alpha = principal_root(coeffs);
    let embedding = (0..d).map(|p| alpha.powu(p as u32)).collect();
    let mut field = NumberField::from_constants(name, d, constants, conj, embedding)?;
    field.min_poly = Some(coeffs.to_vec());
    field.conj_power = conj_power;
    Ok(field)
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from_int(x)).collect()
}

macro_rules! prebuilt {
    ($fn:ident, $name:expr, $poly:expr, $conj:expr) => {
        pub fn $fn() -> FieldRef {
            static CELL: OnceLock<FieldRef> = OnceLock::new();
            CELL.get_or_init(|| build_field_from_min_poly($name, &ints(&$poly), $conj).expect("valid field")).clone()
        }
    };
}

prebuilt!(rationals, "Q", [0, 1], Some(1));
prebuilt!(sqrt2, "Q(sqrt2)", [-2, 0, 1], Some(1));
prebuilt!(gaussian, "Q(i)", [1, 0, 1], Some(3));
prebuilt!(zeta8, "Q(zeta8)", [1, 0, 0, 0, 1], Some(7));

/// Looks up a prebuilt field by a short name.
pub fn field_by_name(name: &str) -> Option<FieldRef> {
    match name.to_ascii_lowercase().as_str() {
        "q" | "rationals" => Some(rationals()),
        "q-sqrt2" | "sqrt2" | "q(sqrt2)" => Some(sqrt2()),
        "q-i" | "gaussian" | "q(i)" => Some(gaussian()),
        "q-zeta8" | "zeta8" | "q(zeta8)" => Some(zeta8()),
        _ => None,
    }
}

/// Parses a field description:
///
/// ```text
/// name: Q(zeta8)
/// minpoly: 1 0 0 0 1     # constant coefficient first
/// conj: 7
/// mult 1 3: -1 0 0 0     # optional override of e1 x e3
/// ```
pub fn parse_field_file(text: &str) -> Result<FieldRef, ExactError> {
    let mut name = None;
    let mut poly = None;
    let mut conj = None;
    let mut overrides = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: &str| ExactError::Parse(format!("line {}: {msg}", lineno + 1));
        let (key, value) = line.split_once(':').ok_or_else(|| err("expected `key: value`"))?;
        let key = key.trim();
        let value = value.trim();
        let rationals = |s: &str| -> Result<Vec<Rational>, ExactError> {
            s.split_whitespace()
                .map(|t| t.parse::<Rational>().map_err(|_| err(&format!("invalid rational `{t}`"))))
                .collect()
        };
        match key {
            "name" => name = Some(value.to_string()),
            "minpoly" => poly = Some(rationals(value)?),
            "conj" => conj = Some(value.parse::<u32>().map_err(|_| err("conj expects a natural number"))?),
            _ if key.starts_with("mult") => {
                let idx: Vec<usize> = key["mult".len()..]
                    .split_whitespace()
                    .map(|t| t.parse::<usize>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| err("mult expects two basis indices"))?;
                if idx.len() != 2 {
                    return Err(err("mult expects two basis indices"));
                }
                overrides.push((idx[0], idx[1], rationals(value)?));
            }
            _ => return Err(err(&format!("unknown key `{key}`"))),
        }
    }
    let poly = poly.ok_or_else(|| ExactError::Parse("missing `minpoly:` line".into()))?;
    let name = name.unwrap_or_else(|| "field".to_string());
    let mut field = field_from_min_poly(&name, &poly, conj)?;
    for (p, q, coords) in overrides {
        field = field.with_product(p, q, coords)?;
    }
    Ok(Arc::new(field))
}

/// An element of a [`NumberField`] as exact coordinates.
#[derive(Clone)]
pub struct FieldElement {
    field: FieldRef,
    coords: Vec<Rational>,
}

impl FieldElement {
    pub fn new(field: &FieldRef, coords: Vec<Rational>) -> Result<Self, ExactError> {
        if coords.len() != field.degree {
            return Err(ExactError::InvalidField(format!(
                "expected {} coordinates, got {}",
                field.degree,
                coords.len()
            )));
        }
        Ok(FieldElement { field: field.clone(), coords })
    }

    pub fn from_ints(field: &FieldRef, coords: &[i64]) -> Result<Self, ExactError> {
        FieldElement::new(field, ints(coords))
    }

    pub fn zero(field: &FieldRef) -> Self {
        FieldElement { field: field.clone(), coords: vec![Rational::zero(); field.degree] }
    }

    pub fn one(field: &FieldRef) -> Self {
        FieldElement::from_rational(field, Rational::one())
    }

    pub fn from_rational(field: &FieldRef, r: Rational) -> Self {
        let mut e = FieldElement::zero(field);
        e.coords[0] = r;
        e
    }

    pub fn basis(field: &FieldRef, p: usize) -> Self {
        let mut e = FieldElement::zero(field);
        e.coords[p] = Rational::one();
        e
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rational::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Rational::is_zero)
    }

    /// The rational value when every coordinate but the first is zero.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.coords[1..].iter().all(Rational::is_zero).then(|| &self.coords[0])
    }

    fn check(&self, other: &FieldElement) -> Result<(), ExactError> {
        if self.field.same_as(&other.field) {
            Ok(())
        } else {
            Err(ExactError::FieldMismatch(self.field.name.clone(), other.field.name.clone()))
        }
    }

    fn zip(&self, other: &FieldElement, f: impl Fn(&Rational, &Rational) -> Rational) -> Result<Self, ExactError> {
        self.check(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| f(a, b)).collect();
        Ok(FieldElement { field: self.field.clone(), coords })
    }

    pub fn add(&self, other: &FieldElement) -> Result<Self, ExactError> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &FieldElement) -> Result<Self, ExactError> {
        self.zip(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        FieldElement { field: self.field.clone(), coords: self.coords.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        FieldElement { field: self.field.clone(), coords: self.coords.iter().map(|a| a * s).collect() }
    }

    /// `λ''_r = Σ_{p,q} λ_p λ'_q m[p][q][r]`.
    pub fn mul(&self, other: &FieldElement) -> Result<Self, ExactError> {
        self.check(other)?;
        let d = self.field.degree;
        let mut out = vec![Rational::zero(); d];
        for (p, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (q, b) in other.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (r, m) in &self.field.sparse[p * d + q] {
                    out[*r] = &out[*r] + &(&ab * m);
                }
            }
        }
        Ok(FieldElement { field: self.field.clone(), coords: out })
    }

    /// Multiplicative inverse by solving `a × x = 1` as a linear system.
    #[allow(clippy::needless_range_loop)]
    pub fn inverse(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let d = self.field.degree;
        // column q of the system is a × e_q
        let mut m: Vec<Vec<Rational>> = vec![vec![Rational::zero(); d + 1]; d];
        for q in 0..d {
            let col = self.mul(&FieldElement::basis(&self.field, q))?;
            for r in 0..d {
                m[r][q] = col.coords[r].clone();
            }
        }
        m[0][d] = Rational::one();
        for col in 0..d {
            let pivot = (col..d)
                .find(|&r| !m[r][col].is_zero())
                .ok_or_else(|| ExactError::InvalidField("multiplication map is singular".into()))?;
            m.swap(col, pivot);
            let inv = m[col][col].recip()?;
            for j in col..=d {
                m[col][j] = &m[col][j] * &inv;
            }
            for r in 0..d {
                if r != col && !m[r][col].is_zero() {
                    let factor = m[r][col].clone();
                    for j in col..=d {
                        let t = &factor * &m[col][j];
                        m[r][j] = &m[r][j] - &t;
                    }
                }
            }
        }
        let coords = m.into_iter().map(|row| row[d].clone()).collect();
        Ok(FieldElement { field: self.field.clone(), coords })
    }

    pub fn div(&self, other: &FieldElement) -> Result<Self, ExactError> {
        self.mul(&other.inverse()?)
    }

    /// Image under the field's distinguished automorphism.
    pub fn conj(&self) -> Result<Self, ExactError> {
        let table = self.field.conj.as_ref().ok_or(ExactError::MissingConjugation)?;
        let d = self.field.degree;
        let mut out = vec![Rational::zero(); d];
        for (p, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (r, c) in table[p].iter().enumerate() {
                if !c.is_zero() {
                    out[r] = &out[r] + &(a * c);
                }
            }
        }
        Ok(FieldElement { field: self.field.clone(), coords: out })
    }

    /// Exact equality; an error when the fields differ.
    pub fn exact_eq(&self, other: &FieldElement) -> Result<bool, ExactError> {
        self.check(other)?;
        Ok(self.coords == other.coords)
    }

    /// Numeric value under the field's embedding.
    pub fn approx(&self) -> Complex64 {
        self.coords.iter().zip(&self.field.embedding).fold(Complex64::new(0.0, 0.0), |acc, (a, e)| acc + e * a.to_f64())
    }

    /// Like `Display`, but with trailing zero coordinates dropped (at least
    /// one coordinate is always kept).
    pub fn to_trimmed_string(&self) -> String {
        let keep = self.coords.iter().rposition(|c| !c.is_zero()).map_or(1, |i| i + 1);
        format_coords(&self.coords[..keep])
    }

    /// Parses `(a, b, …)`; missing trailing coordinates are zero.
    pub fn parse(field: &FieldRef, s: &str) -> Result<Self, ExactError> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| ExactError::Parse(format!("expected a coordinate tuple, got `{s}`")))?;
        let mut coords: Vec<Rational> = inner.split(',').map(str::parse).collect::<Result<_, _>>()?;
        if coords.len() > field.degree {
            return Err(ExactError::Parse(format!(
                "`{s}` has {} coordinates, field has degree {}",
                coords.len(),
                field.degree
            )));
        }
        coords.resize(field.degree, Rational::zero());
        FieldElement::new(field, coords)
    }
}

fn format_coords(coords: &[Rational]) -> String {
    let parts: Vec<String> = coords.iter().map(Rational::to_string).collect();
    format!("({})", parts.join(","))
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_as(&other.field) && self.coords == other.coords
    }
}

impl Eq for FieldElement {}

impl std::hash::Hash for FieldElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_coords(&self.coords))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.field.name, self)
    }
}

pub fn nf_add(a: &FieldElement, b: &FieldElement) -> Result<FieldElement, ExactError> {
    a.add(b)
}

pub fn nf_sub(a: &FieldElement, b: &FieldElement) -> Result<FieldElement, ExactError> {
    a.sub(b)
}

pub fn nf_scale(a: &FieldElement, s: &Rational) -> FieldElement {
    a.scale(s)
}

pub fn nf_mul(a: &FieldElement, b: &FieldElement) -> Result<FieldElement, ExactError> {
    a.mul(b)
}

pub fn nf_inverse(a: &FieldElement) -> Result<FieldElement, ExactError> {
    a.inverse()
}

pub fn nf_conj(a: &FieldElement) -> Result<FieldElement, ExactError> {
    a.conj()
}

pub fn nf_eq(a: &FieldElement, b: &FieldElement) -> Result<bool, ExactError> {
    a.exact_eq(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(f: &FieldRef, s: &str) -> FieldElement {
        FieldElement::parse(f, s).unwrap()
    }

    #[test]
    fn sqrt2_constants_and_products() {
        let f = sqrt2();
        assert_eq!(f.product_coords(1, 1), ints(&[2, 0]));
        assert_eq!(el(&f, "(1,1)").mul(&el(&f, "(1,-1)")).unwrap(), el(&f, "(-1,0)"));
        assert_eq!(el(&f, "(0,1)").inverse().unwrap(), el(&f, "(0,1/2)"));
        assert_eq!(el(&f, "(1,1)").inverse().unwrap(), el(&f, "(-1,1)"));
        assert_eq!(FieldElement::zero(&f).inverse(), Err(ExactError::DivisionByZero));
        assert!((f.embedding()[1].re - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn gaussian_and_zeta8() {
        assert_eq!(gaussian().product_coords(1, 1), ints(&[-1, 0]));
        let z = zeta8();
        let zeta = FieldElement::basis(&z, 1);
        let mut p = FieldElement::one(&z);
        for _ in 0..4 {
            p = p.mul(&zeta).unwrap();
        }
        assert_eq!(p, FieldElement::from_ints(&z, &[-1, 0, 0, 0]).unwrap());
        assert_eq!(zeta.conj().unwrap(), FieldElement::from_ints(&z, &[0, 0, 0, -1]).unwrap());
        assert_eq!(el(&z, "(0,1,0,0)").mul(&el(&z, "(0,0,0,1)")).unwrap(), el(&z, "(-1,0,0,0)"));
        let e = z.embedding()[1];
        assert!((e.re - 0.5f64.sqrt()).abs() < 1e-12 && (e.im - 0.5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn conjugation_of_inverse_sqrt2() {
        let z = zeta8();
        let a = el(&z, "(0,1/2,0,-1/2)");
        assert_eq!(a.mul(&a.conj().unwrap()).unwrap(), el(&z, "(1/2,0,0,0)"));
        assert!((a.approx().re - 0.5f64.sqrt()).abs() < 1e-12);
        let v = el(&z, "(3,-1,2/3,5)");
        assert_eq!(v.conj().unwrap(), el(&z, "(3,-5,-2/3,1)"));
    }

    #[test]
    fn componentwise_ops() {
        let f = sqrt2();
        assert_eq!(el(&f, "(1,2)").add(&el(&f, "(3,-2)")).unwrap(), el(&f, "(4,0)"));
        assert!(el(&f, "(1,2)").sub(&el(&f, "(1,2)")).unwrap().is_zero());
        assert_eq!(el(&f, "(0,1)").scale(&"1/2".parse().unwrap()), el(&f, "(0,1/2)"));
        assert_eq!(el(&f, "(2/4,0)"), el(&f, "(1/2,0)"));
        assert!(matches!(el(&f, "(1,0)").add(&FieldElement::one(&gaussian())), Err(ExactError::FieldMismatch(..))));
    }

    #[test]
    fn non_monic_rejected() {
        assert_eq!(build_field_from_min_poly("bad", &ints(&[-2, 0, 2]), None).unwrap_err(), ExactError::NonMonic);
    }

    #[test]
    fn field_file_round_trip() {
        let text = "# eighth roots\nminpoly: 1 0 0 0 1\nconj: 7\n";
        let f = parse_field_file(text).unwrap();
        assert!(f.same_as(&zeta8()));
        let broken = parse_field_file(&format!("{text}mult 1 2: 0 0 0 2\n")).unwrap();
        assert!(!broken.same_as(&zeta8()));
        let again = parse_field_file(&broken.to_field_file().unwrap()).unwrap();
        assert!(again.same_as(&broken));
        assert!(parse_field_file("conj: 3").is_err());
        assert!(parse_field_file("minpoly: 1 x").is_err());
    }

    #[test]
    fn text_forms() {
        let z = zeta8();
        let a = el(&z, "( 0, 1/2 , 0,-1/2)");
        assert_eq!(a.to_string(), "(0,1/2,0,-1/2)");
        assert_eq!(FieldElement::one(&z).to_trimmed_string(), "(1)");
        assert_eq!(FieldElement::zero(&z).to_trimmed_string(), "(0)");
        assert_eq!(el(&z, "(1)"), FieldElement::one(&z));
    }
}
