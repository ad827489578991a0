//! Monomial ideals in two or three variables: lex-segment ideals with a given
//! Hilbert function, graded dimensions, socles, and Eliahou–Kervaire Betti
//! numbers for stable ideals.
//!
//! Lex order always has the first variable largest. In three variables the
//! variables are `x1 > x2 > x3`; a two-variable ideal lives in `k[x2, x3]`.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{monomials_of_degree, Monomial};
use crate::betti::BettiDiagram;
use crate::oseq::{binomial, is_o_sequence, OSeqError, OSeqVerdict, OSequence};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("not an O-sequence (first violation in degree {degree})")]
    NotOSequence { degree: usize },
    #[error("Hilbert function needs {needed} variables but only {nvars} are available")]
    TooManyVariablesRequired { needed: u64, nvars: usize },
    #[error("ideal is not stable")]
    NotStable,
    #[error("ideal is not Artinian")]
    NotArtinian,
    #[error(transparent)]
    Sequence(#[from] OSeqError),
}

/// Minimal monomial generators, sorted in decreasing lex order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Minimalizes and sorts the given generators.
    pub fn new(nvars: usize, gens: impl IntoIterator<Item = Monomial>) -> Self {
        let mut all: Vec<Monomial> = gens.into_iter().collect();
        for g in &all {
            assert_eq!(g.nvars(), nvars, "arity mismatch");
        }
        all.sort_by_key(|m| (m.degree(), std::cmp::Reverse(m.clone())));
        all.dedup();
        let mut minimal: Vec<Monomial> = Vec::new();
        for g in all {
            if !minimal.iter().any(|m| m.divides(&g)) {
                minimal.push(g);
            }
        }
        minimal.sort_by(|a, b| b.cmp(a));
        MonomialIdeal { nvars, gens: minimal }
    }

    pub fn from_exponents(nvars: usize, gens: &[&[u32]]) -> Self {
        Self::new(nvars, gens.iter().map(|e| Monomial::new(e.to_vec())))
    }

    pub fn zero(nvars: usize) -> Self {
        MonomialIdeal { nvars, gens: Vec::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn max_generator_degree(&self) -> u32 {
        self.gens.iter().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Generators of a given degree.
    pub fn gens_in_degree(&self, d: u32) -> impl Iterator<Item = &Monomial> {
        self.gens.iter().filter(move |g| g.degree() == d)
    }

    /// Every variable has a pure power among the generators.
    pub fn is_artinian(&self) -> bool {
        (0..self.nvars).all(|i| {
            self.gens
                .iter()
                .any(|g| g.exps().iter().enumerate().all(|(k, &e)| (k == i) == (e > 0)))
        })
    }

    /// Standard monomials of degree `d`, in decreasing lex order.
    pub fn standard_monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        monomials_of_degree(self.nvars, d)
            .into_iter()
            .filter(|m| !self.contains(m))
            .collect()
    }

    /// All standard monomials of an Artinian ideal, by degree then decreasing lex.
    pub fn standard_monomials(&self) -> Result<Vec<Monomial>, IdealError> {
        if !self.is_artinian() {
            return Err(IdealError::NotArtinian);
        }
        let mut out = Vec::new();
        for d in 0.. {
            let layer = self.standard_monomials_of_degree(d);
            if layer.is_empty() {
                break;
            }
            out.extend(layer);
        }
        Ok(out)
    }

    /// `J : x_n^infinity` for the last variable.
    pub fn saturate_last_variable(&self) -> MonomialIdeal {
        let last = self.nvars - 1;
        MonomialIdeal::new(
            self.nvars,
            self.gens.iter().map(|g| {
                let mut e = g.exps().to_vec();
                e[last] = 0;
                Monomial::new(e)
            }),
        )
    }

    /// Render with the variable names used for this arity.
    pub fn render(&self) -> String {
        let offset = 4 - self.nvars.min(4);
        let parts: Vec<String> = self.gens.iter().map(|g| render_monomial(g, offset)).collect();
        format!("({})", parts.join(", "))
    }
}

fn render_monomial(m: &Monomial, offset: usize) -> String {
    if m.degree() == 0 {
        return "1".into();
    }
    let mut parts = Vec::new();
    for (i, &e) in m.exps().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("x{}", i + offset)),
            _ => parts.push(format!("x{}^{}", i + offset, e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Number of monomials of degree `d` in `nvars` variables.
fn monomial_count(nvars: usize, d: u64) -> u64 {
    if nvars == 0 {
        return u64::from(d == 0);
    }
    binomial(d + nvars as u64 - 1, nvars as u64 - 1).map_or(u64::MAX, |c| c.min(u64::MAX as u128) as u64)
}

/// The lex-segment ideal whose quotient has Hilbert function `h`.
pub fn lex_ideal(h: &OSequence, nvars: usize) -> Result<MonomialIdeal, IdealError> {
    if let OSeqVerdict::Fail { degree } = is_o_sequence(h)? {
        return Err(IdealError::NotOSequence { degree });
    }
    if h.get(1) > nvars as u64 {
        return Err(IdealError::TooManyVariablesRequired { needed: h.get(1), nvars });
    }
    // Generators of a lex ideal with constant Hilbert polynomial c stop by degree c.
    let top = h.len().max(h.tail_value() as usize) + 1;
    let mut gens = Vec::new();
    let mut prev_standard: HashSet<Monomial> = HashSet::from([Monomial::one(nvars)]);
    for d in 1..=top as u32 {
        let want = h.get(d as usize);
        let count = monomial_count(nvars, d as u64);
        debug_assert!(want <= count, "O-sequence exceeds the polynomial ring");
        let all = monomials_of_degree(nvars, d);
        let cut = all.len() - want as usize;
        let standard: HashSet<Monomial> = all[cut..].iter().cloned().collect();
        for m in &all[..cut] {
            let has_ideal_divisor = (0..nvars)
                .filter_map(|i| m.div_var(i))
                .any(|q| !prev_standard.contains(&q));
            if !has_ideal_divisor {
                gens.push(m.clone());
            }
        }
        debug_assert!(standard.iter().all(|m| (0..nvars)
            .filter_map(|i| m.div_var(i))
            .all(|q| prev_standard.contains(&q))));
        prev_standard = standard;
    }
    Ok(MonomialIdeal::new(nvars, gens))
}

/// `dim (S/J)_d`.
pub fn graded_dimension(j: &MonomialIdeal, d: u32) -> u64 {
    monomials_of_degree(j.nvars, d)
        .iter()
        .filter(|m| !j.contains(m))
        .count() as u64
}

/// Quotient Hilbert function in degrees `0..n`.
pub fn hilbert_prefix(j: &MonomialIdeal, n: usize) -> Vec<u64> {
    (0..n as u32).map(|d| graded_dimension(j, d)).collect()
}

/// For every generator `u` and every `x_i | u`, `x_k u / x_i` lies in the ideal
/// for all `k < i`.
pub fn is_stable(j: &MonomialIdeal) -> bool {
    j.gens.iter().all(|u| {
        (0..j.nvars).all(|i| match u.div_var(i) {
            None => true,
            Some(q) => (0..i).all(|k| j.contains(&q.times_var(k))),
        })
    })
}

/// Betti numbers of `S/J` for a stable ideal (Eliahou–Kervaire):
/// each generator `u` contributes `C(max(u) - 1, i)` to `beta_{i+1, deg u + i}`.
pub fn ek_betti(j: &MonomialIdeal) -> Result<BettiDiagram, IdealError> {
    if !is_stable(j) {
        return Err(IdealError::NotStable);
    }
    let mut b = BettiDiagram::unit();
    for u in &j.gens {
        let m = u.max_index() as u64;
        for i in 0..m {
            let c = binomial(m - 1, i).expect("small binomial") as u64;
            b.add(i as usize + 1, u.degree() + i as u32, c);
        }
    }
    Ok(b)
}

/// Degrees of the standard monomials killed by every variable, with multiplicity.
/// For non-Artinian ideals only degrees up to the last generator degree are scanned.
pub fn socle_degrees(j: &MonomialIdeal) -> Vec<u32> {
    let top = if j.is_artinian() {
        // no standard monomial survives past this
        (j.max_generator_degree() - 1) * j.nvars as u32
    } else {
        j.max_generator_degree()
    };
    let mut out = Vec::new();
    for d in 0..=top {
        for m in j.standard_monomials_of_degree(d) {
            if (0..j.nvars).all(|i| j.contains(&m.times_var(i))) {
                out.push(d);
            }
        }
    }
    out
}
