//! Graded Betti diagrams, predicted entries, consecutive cancellation and the
//! strong-incomparability decision.
//!
//! Diagrams are stored for the quotient `R/I`: `beta[0][0] = 1` and column `i`
//! holds `beta_{i,j}` for internal degree `j`. Points in P3 have projective
//! dimension at most 3, so cancellation only pairs columns `(0,1)`, `(1,2)` and
//! `(2,3)`; an entry in column 3 can never cancel.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::construction::ConstructionInvariants;

/// Highest column that can take part in a cancellation.
pub const LAST_COLUMN: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BettiError {
    #[error("diagrams have different Hilbert functions (alternating sums differ in degree {degree})")]
    HilbertMismatch { degree: u32 },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BettiDiagram {
    entries: BTreeMap<(usize, u32), u64>,
}

impl BettiDiagram {
    pub fn new() -> Self {
        Self::default()
    }

    /// The diagram of `R/R`-style unit: only `beta_{0,0} = 1`.
    pub fn unit() -> Self {
        let mut b = Self::new();
        b.set(0, 0, 1);
        b
    }

    pub fn from_entries(entries: impl IntoIterator<Item = ((usize, u32), u64)>) -> Self {
        let mut b = Self::new();
        for ((i, j), v) in entries {
            b.add(i, j, v);
        }
        b
    }

    pub fn get(&self, i: usize, j: u32) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, i: usize, j: u32, v: u64) {
        if v == 0 {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn add(&mut self, i: usize, j: u32, v: u64) {
        let cur = self.get(i, j);
        self.set(i, j, cur + v);
    }

    /// Non-zero entries `((i, j), beta_{i,j})`.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, u32), u64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max_column(&self) -> usize {
        self.entries.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    pub fn max_degree(&self) -> u32 {
        self.entries.keys().map(|&(_, j)| j).max().unwrap_or(0)
    }

    /// Largest row index `j - i` carrying an entry.
    pub fn max_row(&self) -> u32 {
        self.entries
            .keys()
            .map(|&(i, j)| j.saturating_sub(i as u32))
            .max()
            .unwrap_or(0)
    }

    /// Total count in column `i` restricted to internal degree `j`.
    pub fn column(&self, j: u32) -> Vec<u64> {
        let n = self.max_column().max(LAST_COLUMN) + 1;
        (0..n).map(|i| self.get(i, j)).collect()
    }

    /// `beta_{0,0} = 1` and nothing else in column 0.
    pub fn is_cyclic_quotient(&self) -> bool {
        self.get(0, 0) == 1 && self.entries.keys().filter(|&&(i, _)| i == 0).count() == 1
    }

    /// `sum_i (-1)^i beta_{i,j}` for every degree `j` carrying an entry.
    pub fn alternating_sums(&self) -> BTreeMap<u32, i64> {
        let mut out = BTreeMap::new();
        for (&(i, j), &v) in &self.entries {
            let s = if i % 2 == 0 { v as i64 } else { -(v as i64) };
            *out.entry(j).or_insert(0) += s;
        }
        out.retain(|_, v| *v != 0);
        out
    }

    /// Coefficients of `sum_{i,j} (-1)^i beta_{i,j} t^j` up to `t^max_degree`.
    pub fn k_polynomial(&self, max_degree: u32) -> Vec<i64> {
        let sums = self.alternating_sums();
        (0..=max_degree).map(|j| sums.get(&j).copied().unwrap_or(0)).collect()
    }

    /// Checks `sum (-1)^i beta_{i,j} t^j = (sum_d h(d) t^d)(1-t)^nvars` through
    /// `t^(h.len()-1)`; returns the first degree where the two sides differ.
    pub fn check_hilbert_identity(&self, h: &[u64], nvars: usize) -> Result<(), u32> {
        let n = h.len();
        if n == 0 {
            return Ok(());
        }
        let rhs = hilbert_numerator(h, nvars);
        let lhs = self.k_polynomial(n as u32 - 1);
        for d in 0..n {
            if lhs[d] != rhs[d] {
                return Err(d as u32);
            }
        }
        if self.max_degree() as usize >= n {
            // entries beyond the checked range are not covered by `h`
            return Err(n as u32);
        }
        Ok(())
    }

    /// Text table: one row per `r`, entry `beta_{i,i+r}` in column `i`, `-` for zero.
    pub fn render_table(&self) -> String {
        let ncols = self.max_column().max(LAST_COLUMN) + 1;
        let nrows = self.max_row() + 1;
        let width = self
            .entries
            .values()
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1)
            .max(1);
        let label = (nrows.saturating_sub(1)).to_string().len();
        let mut out = String::new();
        out.push_str(&" ".repeat(label + 2));
        for i in 0..ncols {
            out.push_str(&format!(" {:>width$}", i));
        }
        out.push('\n');
        for r in 0..nrows {
            out.push_str(&format!("{:>label$} :", r));
            for i in 0..ncols {
                let v = self.get(i, r + i as u32);
                let cell = if v == 0 { "-".to_string() } else { v.to_string() };
                out.push_str(&format!(" {:>width$}", cell));
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for BettiDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_table())
    }
}

/// `(sum_d h(d) t^d)(1 - t)^nvars`, truncated to `h.len()` coefficients.
pub fn hilbert_numerator(h: &[u64], nvars: usize) -> Vec<i64> {
    let mut coeffs: Vec<i64> = h.iter().map(|&v| v as i64).collect();
    for _ in 0..nvars {
        for d in (1..coeffs.len()).rev() {
            coeffs[d] -= coeffs[d - 1];
        }
    }
    coeffs
}

impl Serialize for BettiDiagram {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut nested: BTreeMap<String, BTreeMap<String, u64>> = BTreeMap::new();
        for (&(i, j), &v) in &self.entries {
            nested.entry(i.to_string()).or_default().insert(j.to_string(), v);
        }
        nested.serialize(s)
    }
}

impl<'de> Deserialize<'de> for BettiDiagram {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let nested: BTreeMap<String, BTreeMap<String, u64>> = BTreeMap::deserialize(d)?;
        let mut b = BettiDiagram::new();
        for (i, row) in nested {
            let i: usize = i.parse().map_err(D::Error::custom)?;
            for (j, v) in row {
                let j: u32 = j.parse().map_err(D::Error::custom)?;
                b.set(i, j, v);
            }
        }
        Ok(b)
    }
}

/// Entries a diagram is required to have.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramConstraints {
    pub required_values: Vec<((usize, u32), u64)>,
    pub required_zeros: Vec<(usize, u32)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintViolation {
    pub column: usize,
    pub degree: u32,
    pub expected: u64,
    pub found: u64,
}

impl fmt::Display for ConstraintViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "beta_{{{},{}}} = {}, expected {}",
            self.column, self.degree, self.found, self.expected
        )
    }
}

impl DiagramConstraints {
    pub fn require(&mut self, i: usize, j: u32, v: u64) {
        if v == 0 {
            self.require_zero(i, j);
        } else {
            self.required_zeros.retain(|&k| k != (i, j));
            self.required_values.push(((i, j), v));
        }
    }

    pub fn require_zero(&mut self, i: usize, j: u32) {
        if !self.required_zeros.contains(&(i, j)) {
            self.required_zeros.push((i, j));
        }
    }

    /// Whether some entry is demanded to be both zero and non-zero, or two values.
    pub fn is_consistent(&self) -> bool {
        let mut seen: BTreeMap<(usize, u32), u64> = BTreeMap::new();
        for &(k, v) in &self.required_values {
            if self.required_zeros.contains(&k) {
                return false;
            }
            if let Some(prev) = seen.insert(k, v) {
                if prev != v {
                    return false;
                }
            }
        }
        true
    }

    pub fn check(&self, b: &BettiDiagram) -> Vec<ConstraintViolation> {
        let mut out = Vec::new();
        for &((i, j), v) in &self.required_values {
            let found = b.get(i, j);
            if found != v {
                out.push(ConstraintViolation { column: i, degree: j, expected: v, found });
            }
        }
        for &(i, j) in &self.required_zeros {
            let found = b.get(i, j);
            if found != 0 {
                out.push(ConstraintViolation { column: i, degree: j, expected: 0, found });
            }
        }
        out
    }
}

/// Predicted entries for the witness on the ACM curve (first) and for the
/// witness built by liaison addition (second).
pub fn predict_constraints(
    inv: &ConstructionInvariants,
) -> (DiagramConstraints, DiagramConstraints) {
    let d = inv.d;
    let s = inv.s;
    let t = inv.t;
    let b = inv.first_tail_value();
    let mut curve_side = DiagramConstraints::default();
    for r in (t + 1)..=s {
        for i in 1..=LAST_COLUMN {
            curve_side.require_zero(i, r + i as u32);
        }
    }
    curve_side.require(1, s + 2, d - b);
    curve_side.require_zero(3, s + 2);

    let mut liaison_side = DiagramConstraints::default();
    for i in 1..=LAST_COLUMN {
        liaison_side.require_zero(i, s + i as u32);
    }
    liaison_side.require(3, s + 2, 1);
    liaison_side.require(1, s + 2, d - 1 - b);
    (curve_side, liaison_side)
}

/// Multiplicities `c_{i,j}` cancelled between columns `i` and `i + 1` in degree `j`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Cancellation {
    pub amounts: BTreeMap<(usize, u32), u64>,
}

impl Cancellation {
    pub fn is_empty(&self) -> bool {
        self.amounts.is_empty()
    }

    pub fn apply(&self, b: &BettiDiagram) -> Option<BettiDiagram> {
        let mut out = b.clone();
        for (&(i, j), &c) in &self.amounts {
            let lo = out.get(i, j).checked_sub(c)?;
            let hi = out.get(i + 1, j).checked_sub(c)?;
            out.set(i, j, lo);
            out.set(i + 1, j, hi);
        }
        Some(out)
    }
}

fn check_same_hilbert(a: &BettiDiagram, b: &BettiDiagram) -> Result<(), BettiError> {
    let sa = a.alternating_sums();
    let sb = b.alternating_sums();
    let degrees = sa.keys().chain(sb.keys());
    for &j in degrees {
        if sa.get(&j) != sb.get(&j) {
            return Err(BettiError::HilbertMismatch { degree: j });
        }
    }
    Ok(())
}

fn degrees_of(a: &BettiDiagram, b: &BettiDiagram) -> Vec<u32> {
    let mut js: Vec<u32> = a.entries().chain(b.entries()).map(|((_, j), _)| j).collect();
    js.sort_unstable();
    js.dedup();
    js
}

fn width(a: &BettiDiagram, b: &BettiDiagram) -> usize {
    a.max_column().max(b.max_column()).max(LAST_COLUMN) + 1
}

/// Signed multiplicities `delta` with `a - b = boundary(delta)` in degree `j`,
/// or `None` if no such vector exists.
fn telescope(a: &[u64], b: &[u64]) -> Option<[i64; LAST_COLUMN]> {
    let diff: Vec<i64> = a.iter().zip(b).map(|(&x, &y)| x as i64 - y as i64).collect();
    let mut delta = [0i64; LAST_COLUMN];
    let mut prev = 0;
    for i in 0..LAST_COLUMN {
        delta[i] = diff[i] - prev;
        prev = delta[i];
    }
    if diff[LAST_COLUMN] != prev {
        return None;
    }
    diff[LAST_COLUMN + 1..].iter().all(|&x| x == 0).then_some(delta)
}

/// Decides whether `to` is obtained from `from` by consecutive cancellations and
/// returns the (unique) multiplicities when it is.
pub fn cancellation_reachable(
    from: &BettiDiagram,
    to: &BettiDiagram,
) -> Result<Option<Cancellation>, BettiError> {
    check_same_hilbert(from, to)?;
    let n = width(from, to);
    let mut cert = Cancellation::default();
    for j in degrees_of(from, to) {
        let a: Vec<u64> = (0..n).map(|i| from.get(i, j)).collect();
        let b: Vec<u64> = (0..n).map(|i| to.get(i, j)).collect();
        let Some(delta) = telescope(&a, &b) else {
            return Ok(None);
        };
        for (i, &c) in delta.iter().enumerate() {
            if c < 0 {
                return Ok(None);
            }
            if c > 0 {
                cert.amounts.insert((i, j), c as u64);
            }
        }
    }
    Ok(Some(cert))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "meet", rename_all = "snake_case")]
pub enum Incomparability {
    /// No diagram is reachable by consecutive cancellation from both.
    StronglyIncomparable,
    /// The largest diagram reachable from both. Whether an ideal realizes it
    /// is not decided here.
    CommonDescendantExists(BettiDiagram),
}

impl Incomparability {
    pub fn is_strongly_incomparable(&self) -> bool {
        matches!(self, Incomparability::StronglyIncomparable)
    }
}

/// Searches for a common cancellation descendant of two diagrams.
///
/// In each degree the difference `a - b` fixes the difference of the two
/// cancellation vectors, so the smallest admissible cancellation on the `a`
/// side is the componentwise positive part; a common descendant exists iff
/// that one stays non-negative.
pub fn strongly_incomparable(
    a: &BettiDiagram,
    b: &BettiDiagram,
) -> Result<Incomparability, BettiError> {
    check_same_hilbert(a, b)?;
    let n = width(a, b);
    let mut meet = BettiDiagram::new();
    for j in degrees_of(a, b) {
        let col_a: Vec<u64> = (0..n).map(|i| a.get(i, j)).collect();
        let col_b: Vec<u64> = (0..n).map(|i| b.get(i, j)).collect();
        let Some(delta) = telescope(&col_a, &col_b) else {
            return Ok(Incomparability::StronglyIncomparable);
        };
        let c: Vec<u64> = delta.iter().map(|&x| x.max(0) as u64).collect();
        for i in 0..n {
            let mut cut = 0;
            if i < LAST_COLUMN {
                cut += c[i];
            }
            if i >= 1 && i - 1 < LAST_COLUMN {
                cut += c[i - 1];
            }
            match col_a[i].checked_sub(cut) {
                Some(v) => meet.set(i, j, v),
                None => return Ok(Incomparability::StronglyIncomparable),
            }
        }
    }
    Ok(Incomparability::CommonDescendantExists(meet))
}

/// `a <= b` entrywise.
pub fn dominated_by(a: &BettiDiagram, b: &BettiDiagram) -> bool {
    a.entries().all(|((i, j), v)| v <= b.get(i, j))
}
