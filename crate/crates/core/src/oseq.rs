//! Macaulay growth combinatorics.
//!
//! Sequences are indexed by degree starting at 0. An [`OSequence`] is a list of
//! values optionally followed by a constant tail; without a tail the sequence is
//! zero after its last listed entry. All predicates treat the tail analytically.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OSeqError {
    #[error("binomial expansion needs a >= 1 and i >= 1 (got a = {a}, i = {i})")]
    InvalidArgument { a: u64, i: u32 },
    #[error("integer overflow while computing binomial coefficients")]
    Overflow,
    #[error("difference is negative at degree {degree}")]
    NegativeDifference { degree: usize },
    #[error("cannot accumulate a sequence with non-zero constant tail {eventual}")]
    NotSummable { eventual: u64 },
    #[error("eventual value {eventual} does not match last listed entry {last}")]
    InconsistentTail { eventual: u64, last: u64 },
}

/// Binomial coefficient in 128-bit arithmetic; `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 0..k {
        // acc * (n - j) is divisible by (j + 1) after the multiplication
        acc = acc.checked_mul((n - j) as u128)? / (j as u128 + 1);
    }
    Some(acc)
}

/// The `i`-binomial expansion `a = C(m_i, i) + C(m_{i-1}, i-1) + ... + C(m_j, j)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinomialExpansion {
    /// Pairs `(top, bottom)` with strictly decreasing bottoms.
    pub terms: Vec<(u64, u32)>,
}

impl BinomialExpansion {
    pub fn value(&self) -> u128 {
        self.terms
            .iter()
            .map(|&(m, k)| binomial(m, k as u64).unwrap_or(u128::MAX))
            .sum()
    }
}

impl fmt::Display for BinomialExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, k)| format!("C({m},{k})"))
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// Largest `m >= k` with `C(m, k) <= a` (requires `a >= 1`).
fn largest_top(a: u128, k: u32) -> Result<u64, OSeqError> {
    let k64 = k as u64;
    let fits = |m: u64| binomial(m, k64).is_some_and(|c| c <= a);
    let mut lo = k64;
    let mut step = 1u64;
    let mut hi = k64 + 1;
    while fits(hi) {
        lo = hi;
        step = step.checked_mul(2).ok_or(OSeqError::Overflow)?;
        hi = k64.checked_add(step).ok_or(OSeqError::Overflow)?;
    }
    // invariant: fits(lo) && !fits(hi)
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if fits(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

pub fn binomial_expansion(a: u64, i: u32) -> Result<BinomialExpansion, OSeqError> {
    if a == 0 || i == 0 {
        return Err(OSeqError::InvalidArgument { a, i });
    }
    let mut rest = a as u128;
    let mut k = i;
    let mut terms = Vec::new();
    while rest > 0 {
        let m = largest_top(rest, k)?;
        rest -= binomial(m, k as u64).ok_or(OSeqError::Overflow)?;
        terms.push((m, k));
        if k == 1 {
            break;
        }
        k -= 1;
    }
    debug_assert_eq!(rest, 0);
    Ok(BinomialExpansion { terms })
}

/// Macaulay's bound `a^<i>`; the bound of 0 is 0.
pub fn macaulay_bound(a: u64, i: u32) -> Result<u64, OSeqError> {
    if a == 0 {
        return Ok(0);
    }
    let exp = binomial_expansion(a, i)?;
    let mut total: u128 = 0;
    for (m, k) in exp.terms {
        let top = m.checked_add(1).ok_or(OSeqError::Overflow)?;
        let c = binomial(top, k as u64 + 1).ok_or(OSeqError::Overflow)?;
        total = total.checked_add(c).ok_or(OSeqError::Overflow)?;
    }
    u64::try_from(total).map_err(|_| OSeqError::Overflow)
}

/// Outcome of [`is_o_sequence`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum OSeqVerdict {
    Pass,
    /// First degree whose value exceeds the allowed growth (0 if `a_0 != 1`).
    Fail { degree: usize },
}

impl OSeqVerdict {
    pub fn passed(self) -> bool {
        matches!(self, OSeqVerdict::Pass)
    }
}

/// A non-negative integer sequence, possibly eventually constant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSequence", into = "RawSequence")]
pub struct OSequence {
    values: Vec<u64>,
    eventual: Option<u64>,
}

#[derive(Serialize, Deserialize)]
struct RawSequence {
    values: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    eventual: Option<u64>,
}

impl TryFrom<RawSequence> for OSequence {
    type Error = OSeqError;
    fn try_from(raw: RawSequence) -> Result<Self, Self::Error> {
        match raw.eventual {
            Some(e) => OSequence::eventually(raw.values, e),
            None => Ok(OSequence::finite(raw.values)),
        }
    }
}

impl From<OSequence> for RawSequence {
    fn from(s: OSequence) -> Self {
        RawSequence {
            values: s.values,
            eventual: s.eventual,
        }
    }
}

impl OSequence {
    /// A sequence that is zero after the listed values.
    pub fn finite(values: impl Into<Vec<u64>>) -> Self {
        let mut values = values.into();
        while values.last() == Some(&0) {
            values.pop();
        }
        OSequence { values, eventual: None }
    }

    /// A sequence whose last listed value repeats forever.
    pub fn eventually(values: impl Into<Vec<u64>>, eventual: u64) -> Result<Self, OSeqError> {
        let mut values = values.into();
        match values.last() {
            Some(&last) if last != eventual => {
                return Err(OSeqError::InconsistentTail { eventual, last })
            }
            None => values.push(eventual),
            _ => {}
        }
        if eventual == 0 {
            return Ok(Self::finite(values));
        }
        while values.len() >= 2 && values[values.len() - 2] == eventual {
            values.pop();
        }
        Ok(OSequence {
            values,
            eventual: Some(eventual),
        })
    }

    /// Listed values, tail not included.
    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Value repeated after the listed entries (`None` means zero).
    pub fn eventual(&self) -> Option<u64> {
        self.eventual
    }

    pub fn tail_value(&self) -> u64 {
        self.eventual.unwrap_or(0)
    }

    pub fn get(&self, degree: usize) -> u64 {
        self.values.get(degree).copied().unwrap_or(self.tail_value())
    }

    /// Number of listed entries; every degree beyond has the tail value.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty() && self.tail_value() == 0
    }

    pub fn is_finite(&self) -> bool {
        self.tail_value() == 0
    }

    /// First `n` values.
    pub fn prefix(&self, n: usize) -> Vec<u64> {
        (0..n).map(|d| self.get(d)).collect()
    }

    /// Sum of all values (only for finite sequences).
    pub fn total(&self) -> Option<u64> {
        self.is_finite().then(|| self.values.iter().sum())
    }

    /// Pointwise minimum with `e`.
    pub fn truncate_at(&self, e: u64) -> OSequence {
        let values: Vec<u64> = self.values.iter().map(|&v| v.min(e)).collect();
        match self.eventual {
            Some(c) => OSequence::eventually(values, c.min(e)).expect("tail stays consistent"),
            None => OSequence::finite(values),
        }
    }

    pub fn difference(&self, k: usize) -> Result<OSequence, OSeqError> {
        difference(self, k, Direction::Difference)
    }

    pub fn accumulate(&self, k: usize) -> Result<OSequence, OSeqError> {
        difference(self, k, Direction::Accumulate)
    }
}

impl fmt::Display for OSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(u64::to_string).collect();
        write!(f, "({}", parts.join(","))?;
        match self.eventual {
            Some(_) => write!(f, ",...)"),
            None => write!(f, ")"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `b_i = a_i - a_{i-1}` with `a_{-1} = 0`.
    Difference,
    /// Inverse of [`Direction::Difference`].
    Accumulate,
}

/// `k`-fold first difference, or its inverse.
pub fn difference(s: &OSequence, k: usize, dir: Direction) -> Result<OSequence, OSeqError> {
    let mut cur = s.clone();
    for _ in 0..k {
        cur = match dir {
            Direction::Difference => first_difference(&cur)?,
            Direction::Accumulate => accumulate_once(&cur)?,
        };
    }
    Ok(cur)
}

fn first_difference(s: &OSequence) -> Result<OSequence, OSeqError> {
    // one extra slot so the drop to the tail value is captured
    let n = s.len() + 1;
    let mut out = Vec::with_capacity(n);
    let mut prev = 0u64;
    for d in 0..n {
        let v = s.get(d);
        out.push(v.checked_sub(prev).ok_or(OSeqError::NegativeDifference { degree: d })?);
        prev = v;
    }
    Ok(OSequence::finite(out))
}

fn accumulate_once(s: &OSequence) -> Result<OSequence, OSeqError> {
    if let Some(e) = s.eventual {
        return Err(OSeqError::NotSummable { eventual: e });
    }
    let mut acc = 0u64;
    let mut out = Vec::with_capacity(s.len());
    for &v in &s.values {
        acc = acc.checked_add(v).ok_or(OSeqError::Overflow)?;
        out.push(acc);
    }
    OSequence::eventually(out, acc)
}

/// Pass iff `s_0 = 1` and `s_{i+1} <= s_i^<i>` for every `i >= 1`.
pub fn is_o_sequence(s: &OSequence) -> Result<OSeqVerdict, OSeqError> {
    if s.get(0) != 1 {
        return Ok(OSeqVerdict::Fail { degree: 0 });
    }
    // constant tails always pass (a <= a^<i>), and so does the drop to a zero tail
    for i in 1..s.len() {
        let bound = macaulay_bound(s.get(i), i as u32)?;
        if s.get(i + 1) > bound {
            return Ok(OSeqVerdict::Fail { degree: i + 1 });
        }
    }
    Ok(OSeqVerdict::Pass)
}

/// `H` truncated at `e`: `e_i = min(h_i, e)`.
pub fn truncate_hf(h: &OSequence, e: u64) -> OSequence {
    h.truncate_at(e)
}

/// Whether a finite `h` is a unimodal O-sequence whose positive part of the
/// first difference is again an O-sequence.
pub fn wlp_feasible(h: &OSequence) -> Result<bool, OSeqError> {
    if !h.is_finite() {
        return Ok(false);
    }
    if !is_o_sequence(h)?.passed() {
        return Ok(false);
    }
    let vals = h.values();
    let peak = vals
        .iter()
        .enumerate()
        .max_by_key(|&(i, v)| (*v, std::cmp::Reverse(i)))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let rising = vals[..=peak].windows(2).all(|w| w[0] <= w[1]);
    let falling = vals[peak..].windows(2).all(|w| w[0] >= w[1]);
    if !(rising && falling) {
        return Ok(false);
    }
    let mut prev = 0i64;
    let positive: Vec<u64> = vals
        .iter()
        .map(|&v| {
            let diff = v as i64 - prev;
            prev = v as i64;
            diff.max(0) as u64
        })
        .collect();
    Ok(is_o_sequence(&OSequence::finite(positive))?.passed())
}
