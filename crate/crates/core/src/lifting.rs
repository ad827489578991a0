//! Lifting monomial ideals to reduced schemes in P3 with coordinates `x0..x3`.
//!
//! A three-variable monomial ideal in `k[x1,x2,x3]` lifts to points, a
//! two-variable ideal in `k[x2,x3]` lifts to lines through `[0:1:0:0]`, and a
//! monomial lifts to a product of planes `x_i - c_i(j) x0`.

use std::fmt;

use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::algebra::{mat_kernel, MatrixFp, Monomial, Polynomial, PrimeField};
use crate::monomial_ideal::MonomialIdeal;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftError {
    #[error("monomial ideal is not Artinian")]
    NotArtinian,
    #[error("expected a monomial ideal in {expected} variables, got {found}")]
    WrongArity { expected: usize, found: usize },
    #[error("prefix length {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("linear forms do not cut out a line")]
    DependentForms,
    #[error("line lies in the plane x0 = 0")]
    LineAtInfinity,
}

/// A point `[1 : a : b : c]`, coordinates reduced mod p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PointP3(pub [u64; 4]);

impl PointP3 {
    pub fn new(field: PrimeField, coords: [i64; 4]) -> Self {
        let p = coords.map(|c| field.from_i64(c));
        Self::normalized(field, p).expect("point with x0 = 0")
    }

    /// Scale so that `x0 = 1`; `None` for points on `x0 = 0`.
    pub fn normalized(field: PrimeField, p: [u64; 4]) -> Option<Self> {
        if p[0].is_multiple_of(field.modulus()) {
            return None;
        }
        let inv = field.inv(p[0] % field.modulus());
        Some(PointP3(p.map(|c| field.mul(c % field.modulus(), inv))))
    }

    pub fn coords(&self) -> &[u64; 4] {
        &self.0
    }
}

impl fmt::Display for PointP3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "[{a}:{b}:{c}:{d}]")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Lifted,
    SampledOnLine { line: usize },
    Loaded,
}

/// Distinct points with where each came from.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<PointP3>,
    provenance: Vec<Provenance>,
}

impl PointSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_points(points: impl IntoIterator<Item = PointP3>, tag: Provenance) -> Self {
        let mut s = Self::new();
        for p in points {
            s.push(p, tag);
        }
        s
    }

    /// Adds a point; returns false (and leaves the set alone) on a duplicate.
    pub fn push(&mut self, p: PointP3, tag: Provenance) -> bool {
        if self.points.contains(&p) {
            return false;
        }
        self.points.push(p);
        self.provenance.push(tag);
        true
    }

    pub fn extend(&mut self, other: &PointSet) {
        for (p, t) in other.points.iter().zip(&other.provenance) {
            self.push(*p, *t);
        }
    }

    pub fn points(&self) -> &[PointP3] {
        &self.points
    }

    pub fn provenance(&self) -> &[Provenance] {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn count_lifted(&self) -> usize {
        self.provenance.iter().filter(|t| **t == Provenance::Lifted).count()
    }

    /// Lines carrying at least one sampled point.
    pub fn lines_used(&self) -> usize {
        let mut lines: Vec<usize> = self
            .provenance
            .iter()
            .filter_map(|t| match t {
                Provenance::SampledOnLine { line } => Some(*line),
                _ => None,
            })
            .collect();
        lines.sort_unstable();
        lines.dedup();
        lines.len()
    }
}

impl Serialize for PointSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.points.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PointSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<[i64; 4]>::deserialize(d)?;
        let mut out = PointSet::new();
        for c in raw {
            if c[0] != 1 {
                return Err(serde::de::Error::custom("points must have x0 = 1"));
            }
            if c.iter().any(|&x| x < 0) {
                return Err(serde::de::Error::custom("coordinates must be non-negative residues"));
            }
            if !out.push(PointP3(c.map(|x| x as u64)), Provenance::Loaded) {
                return Err(serde::de::Error::custom("duplicate point"));
            }
        }
        Ok(out)
    }
}

/// Scalars `c_i(j)` used to lift `x_i^j`. The default is `c_i(j) = j`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scalars {
    per_variable: Option<Vec<Vec<i64>>>,
}

impl Scalars {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn custom(per_variable: Vec<Vec<i64>>) -> Self {
        Scalars { per_variable: Some(per_variable) }
    }

    /// `c_var(j)` for variable index `var` of the monomial ring.
    pub fn value(&self, var: usize, j: u32) -> i64 {
        match &self.per_variable {
            None => j as i64,
            Some(v) => v[var][j as usize],
        }
    }
}

/// A line in P3 as the zero locus of two linear forms, with an affine
/// parametrization `base + lambda * direction` in the chart `x0 = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Line {
    forms: [[u64; 4]; 2],
    base: [u64; 4],
    direction: [u64; 4],
}

impl Line {
    pub fn from_forms(field: PrimeField, a: [u64; 4], b: [u64; 4]) -> Result<Line, LiftError> {
        let p = field.modulus();
        let a = a.map(|x| x % p);
        let b = b.map(|x| x % p);
        let m = MatrixFp::from_row_vectors(field, 4, vec![a.to_vec(), b.to_vec()]);
        let k = mat_kernel(&m);
        if k.rows() != 2 {
            return Err(LiftError::DependentForms);
        }
        let (u, v) = (k.row(0).to_vec(), k.row(1).to_vec());
        let (base, other) = if u[0] != 0 { (u, v) } else if v[0] != 0 { (v, u) } else {
            return Err(LiftError::LineAtInfinity);
        };
        let inv = field.inv(base[0]);
        let base: Vec<u64> = base.iter().map(|&x| field.mul(x, inv)).collect();
        // other - other[0] * base has x0 = 0
        let direction: Vec<u64> = other
            .iter()
            .zip(&base)
            .map(|(&o, &b)| field.sub(o, field.mul(other[0], b)))
            .collect();
        Ok(Line {
            forms: [a, b],
            base: base.try_into().unwrap(),
            direction: direction.try_into().unwrap(),
        })
    }

    pub fn forms(&self) -> &[[u64; 4]; 2] {
        &self.forms
    }

    pub fn point_at(&self, field: PrimeField, lambda: u64) -> PointP3 {
        PointP3(std::array::from_fn(|k| field.add(self.base[k], field.mul(lambda, self.direction[k]))))
    }

    pub fn contains(&self, field: PrimeField, p: &PointP3) -> bool {
        self.forms.iter().all(|f| eval_linear(field, f, p) == 0)
    }
}

impl Serialize for Line {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.forms.serialize(s)
    }
}

pub fn eval_linear(field: PrimeField, f: &[u64; 4], p: &PointP3) -> u64 {
    (0..4).fold(0, |acc, k| field.add(acc, field.mul(f[k], p.0[k])))
}

/// Lines in prefix order: every initial segment is again a lifted monomial scheme.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct LinesUnion {
    lines: Vec<Line>,
}

impl LinesUnion {
    pub fn new(lines: Vec<Line>) -> Self {
        LinesUnion { lines }
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }
}

fn require_arity(j: &MonomialIdeal, n: usize) -> Result<(), LiftError> {
    if j.nvars() != n {
        return Err(LiftError::WrongArity { expected: n, found: j.nvars() });
    }
    Ok(())
}

/// One point `[1 : c1(a) : c2(b) : c3(c)]` per standard monomial `x1^a x2^b x3^c`.
pub fn lift_points(
    j: &MonomialIdeal,
    scalars: &Scalars,
    field: PrimeField,
) -> Result<PointSet, LiftError> {
    require_arity(j, 3)?;
    let standard = j.standard_monomials().map_err(|_| LiftError::NotArtinian)?;
    let mut out = PointSet::new();
    for m in standard {
        let e = m.exps();
        let p = PointP3::new(
            field,
            [1, scalars.value(0, e[0]), scalars.value(1, e[1]), scalars.value(2, e[2])],
        );
        let fresh = out.push(p, Provenance::Lifted);
        assert!(fresh, "scalars must be distinct per variable");
    }
    Ok(out)
}

/// The planes `x_i - c_i(j) x0` whose product lifts `m`, as coefficient vectors
/// in `x0..x3`. Variables of `m` are `x1..x(n)` with `n = m.nvars()`, placed at
/// the end of the coordinate list.
pub fn lift_generator_factors(m: &Monomial, scalars: &Scalars) -> Vec<[i64; 4]> {
    let offset = 4 - m.nvars();
    let mut out = Vec::new();
    for (i, &e) in m.exps().iter().enumerate() {
        for j in 0..e {
            let mut f = [0i64; 4];
            f[offset + i] = 1;
            f[0] = -scalars.value(i + 3 - m.nvars(), j);
            out.push(f);
        }
    }
    out
}

/// Product of the lifting planes of `m`, a form in `x0..x3`.
pub fn lift_generator(m: &Monomial, scalars: &Scalars, field: PrimeField) -> Polynomial {
    lift_generator_factors(m, scalars)
        .iter()
        .fold(Polynomial::constant(field, 4, 1), |acc, f| {
            let coeffs: Vec<u64> = f.iter().map(|&c| field.from_i64(c)).collect();
            acc.mul(&Polynomial::linear(field, &coeffs))
        })
}

/// One line `{x2 = c(a) x0, x3 = c(b) x0}` per standard monomial `x2^a x3^b`,
/// ordered by degree and then lex.
pub fn distract_lines(
    j2: &MonomialIdeal,
    scalars: &Scalars,
    field: PrimeField,
) -> Result<LinesUnion, LiftError> {
    require_arity(j2, 2)?;
    let standard = j2.standard_monomials().map_err(|_| LiftError::NotArtinian)?;
    let mut lines = Vec::new();
    for m in standard {
        let e = m.exps();
        let a = [field.from_i64(-scalars.value(1, e[0])), 0, 1, 0];
        let b = [field.from_i64(-scalars.value(2, e[1])), 0, 0, 1];
        lines.push(Line::from_forms(field, a, b)?);
    }
    Ok(LinesUnion::new(lines))
}

/// The first `i` lines.
pub fn prefix_union(u: &LinesUnion, i: usize) -> Result<LinesUnion, LiftError> {
    if i == 0 || i > u.len() {
        return Err(LiftError::IndexOutOfRange { index: i, len: u.len() });
    }
    Ok(LinesUnion::new(u.lines[..i].to_vec()))
}
