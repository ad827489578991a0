use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize, Serializer};

use super::PrimeField;

/// Exponent vector. Ordered lexicographically with the first variable largest.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: impl Into<Vec<u32>>) -> Self {
        Monomial(exps.into())
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn times_var(&self, i: usize) -> Monomial {
        let mut e = self.0.clone();
        e[i] += 1;
        Monomial(e)
    }

    /// `self / x_i`, if `x_i` divides.
    pub fn div_var(&self, i: usize) -> Option<Monomial> {
        (self.0[i] > 0).then(|| {
            let mut e = self.0.clone();
            e[i] -= 1;
            Monomial(e)
        })
    }

    /// 1-based index of the last variable occurring, 0 for the unit monomial.
    pub fn max_index(&self) -> usize {
        self.0.iter().rposition(|&e| e > 0).map_or(0, |i| i + 1)
    }

    pub fn eval(&self, field: PrimeField, point: &[u64]) -> u64 {
        self.0
            .iter()
            .zip(point)
            .fold(1, |acc, (&e, &x)| field.mul(acc, field.pow(x, e as u64)))
    }
}

/// All monomials of a degree, in decreasing lex order.
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == nvars {
            prefix.push(left);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            rec(nvars, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if degree == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    rec(nvars, degree, &mut Vec::with_capacity(nvars), &mut out);
    out
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            match e {
                1 => write!(f, "x{i}")?,
                _ => write!(f, "x{i}^{e}")?,
            }
        }
        Ok(())
    }
}

/// Polynomial over a prime field with no zero coefficients stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: PrimeField,
    nvars: usize,
    terms: BTreeMap<Monomial, u64>,
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (m, &c) in self.terms.iter().rev() {
            seq.serialize_element(&(c, m.exps()))?;
        }
        seq.end()
    }
}

impl Polynomial {
    pub fn zero(field: PrimeField, nvars: usize) -> Self {
        Polynomial {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: PrimeField, nvars: usize, c: u64) -> Self {
        Self::from_terms(field, nvars, [(Monomial::one(nvars), c)])
    }

    pub fn monomial(field: PrimeField, m: Monomial) -> Self {
        let nvars = m.nvars();
        Self::from_terms(field, nvars, [(m, 1)])
    }

    /// Linear form `sum c_i x_i`.
    pub fn linear(field: PrimeField, coeffs: &[u64]) -> Self {
        let n = coeffs.len();
        Self::from_terms(
            field,
            n,
            coeffs.iter().enumerate().map(|(i, &c)| (Monomial::var(n, i), c)),
        )
    }

    pub fn from_terms(
        field: PrimeField,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, u64)>,
    ) -> Self {
        let mut p = Self::zero(field, nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: u64) {
        assert_eq!(m.nvars(), self.nvars, "arity mismatch");
        let c = c % self.field.modulus();
        if c == 0 {
            return;
        }
        let f = self.field;
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = f.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coefficient(&self, m: &Monomial) -> u64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Degree of a homogeneous polynomial (`None` for zero or mixed degrees).
    pub fn degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(Monomial::degree);
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: u64) -> Polynomial {
        let f = self.field;
        Polynomial::from_terms(
            f,
            self.nvars,
            self.terms.iter().map(|(m, &a)| (m.clone(), f.mul(a, c % f.modulus()))),
        )
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, &c)| (t.mul(m), c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        poly_mul(self, other)
    }

    pub fn eval(&self, point: &[u64]) -> u64 {
        poly_eval(self, point)
    }
}

pub fn poly_mul(f: &Polynomial, g: &Polynomial) -> Polynomial {
    assert_eq!(f.nvars, g.nvars, "arity mismatch");
    assert_eq!(f.field, g.field, "field mismatch");
    let field = f.field;
    let mut out = Polynomial::zero(field, f.nvars);
    for (a, &ca) in &f.terms {
        for (b, &cb) in &g.terms {
            out.add_term(a.mul(b), field.mul(ca, cb));
        }
    }
    out
}

pub fn poly_eval(f: &Polynomial, point: &[u64]) -> u64 {
    assert_eq!(point.len(), f.nvars, "arity mismatch");
    let field = f.field;
    f.terms.iter().fold(0, |acc, (m, &c)| {
        field.add(acc, field.mul(c, m.eval(field, point)))
    })
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, &c) in self.terms.iter().rev() {
            let c = self.field.to_i64(c);
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (a, m.degree()) {
                (_, 0) => write!(f, "{a}")?,
                (1, _) => write!(f, "{m}")?,
                _ => write!(f, "{a}*{m}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field() -> PrimeField {
        PrimeField::new(32003).unwrap()
    }

    #[test]
    fn monomial_enumeration() {
        let m = monomials_of_degree(3, 2);
        let exps: Vec<&[u32]> = m.iter().map(Monomial::exps).collect();
        assert_eq!(
            exps,
            vec![&[2, 0, 0][..], &[1, 1, 0], &[1, 0, 1], &[0, 2, 0], &[0, 1, 1], &[0, 0, 2]]
        );
        assert_eq!(monomials_of_degree(4, 5).len(), 56);
        assert_eq!(monomials_of_degree(2, 0).len(), 1);
    }

    #[test]
    fn products() {
        let f = field();
        let x0 = Polynomial::monomial(f, Monomial::var(4, 0));
        let x3 = Polynomial::monomial(f, Monomial::var(4, 3));
        let a = x3.add(&x0.scale(f.neg(1)));
        let b = x3.add(&x0.scale(f.neg(2)));
        let prod = poly_mul(&a, &b);
        let expect = Polynomial::from_terms(
            f,
            4,
            [
                (Monomial::new([0, 0, 0, 2]), 1),
                (Monomial::new([1, 0, 0, 1]), f.neg(3)),
                (Monomial::new([2, 0, 0, 0]), 2),
            ],
        );
        assert_eq!(prod, expect);
        assert_eq!(prod.degree(), Some(2));
        let one = Polynomial::constant(f, 4, 1);
        assert_eq!(poly_mul(&a, &one), a);
        let x1 = Polynomial::monomial(f, Monomial::var(4, 1));
        let x2 = Polynomial::monomial(f, Monomial::var(4, 2));
        assert_eq!(poly_mul(&x1, &x2), Polynomial::monomial(f, Monomial::new([0, 1, 1, 0])));
    }

    #[test]
    fn evaluation() {
        let f = field();
        let l = Polynomial::linear(f, &[5, 0, 0, 0]);
        assert_eq!(poly_eval(&l, &[1, 0, 0, 0]), 5);
        let s = Polynomial::linear(f, &[0, 1, 1, 0]);
        assert_eq!(poly_eval(&s, &[1, 1, 1, 0]), 2);
        // x3 (x3 - x0)(x3 - 2x0)(x3 - 3x0)(x3 - 4x0) at [1:0:0:4]
        let mut lifted = Polynomial::constant(f, 4, 1);
        for j in 0..5 {
            lifted = lifted.mul(&Polynomial::linear(f, &[f.neg(j), 0, 0, 1]));
        }
        assert_eq!(poly_eval(&lifted, &[1, 0, 0, 4]), 0);
        assert_ne!(poly_eval(&lifted, &[1, 0, 0, 5]), 0);
    }

    #[test]
    fn json_and_display() {
        let f = field();
        let p = Polynomial::linear(f, &[f.neg(1), 0, 0, 1]);
        assert_eq!(serde_json::to_string(&p).unwrap(), "[[32002,[1,0,0,0]],[1,[0,0,0,1]]]");
        assert_eq!(p.to_string(), "-x0 + x3");
    }
}
