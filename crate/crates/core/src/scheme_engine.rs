//! Exact graded computations for explicit schemes over a prime field.
//!
//! A [`GradedModel`] exposes `(R/I)_j` as a coordinate space together with the
//! four multiplication maps. Betti numbers come from the Koszul complex on
//! `x0..x3`, strand by strand.

use std::collections::HashMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{mat_rank, monomials_of_degree, MatrixFp, Monomial, Polynomial, PrimeField, Subspace};
use crate::betti::BettiDiagram;
use crate::lifting::PointP3;
use crate::oseq::OSequence;
use crate::rng::stream;

/// Variables of the coordinate ring of P3.
pub const NVARS: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemeError {
    #[error("model covers degrees up to {available}, window needs {needed}")]
    WindowTooNarrow { needed: u32, available: u32 },
    #[error("no linear form gave a valid Artinian reduction after {attempts} attempts")]
    DegenerateReduction { attempts: u32 },
    #[error("empty point set")]
    EmptyPointSet,
}

pub trait GradedModel {
    fn field(&self) -> PrimeField;

    fn nvars(&self) -> usize {
        NVARS
    }

    /// Largest degree `j` for which `dim(j)` is available; `mul(_, j)` needs `j < max_degree()`.
    fn max_degree(&self) -> u32;

    fn dim(&self, j: u32) -> usize;

    /// Matrix of `x_var : (R/I)_j -> (R/I)_{j+1}`, of size `dim(j+1) x dim(j)`.
    fn mul(&self, var: usize, j: u32) -> MatrixFp;

    /// Value of the Hilbert function in large degree, when known.
    fn eventual_dim(&self) -> Option<usize> {
        None
    }
}

/// `R/I_Z` for a point set with `x0 = 1` everywhere: degree-`j` forms are
/// identified with their value vectors on `Z`, so `x0` acts as the inclusion
/// `V_j ⊂ V_{j+1}`.
#[derive(Debug, Clone)]
pub struct EvaluationModel {
    field: PrimeField,
    coords: Vec<[u64; 4]>,
    spaces: Vec<Subspace>,
}

impl EvaluationModel {
    pub fn new(field: PrimeField, points: &[PointP3], max_degree: u32) -> Self {
        let n = points.len();
        let coords: Vec<[u64; 4]> = points.iter().map(|p| *p.coords()).collect();
        let mut start = Subspace::new(field, n);
        if n > 0 {
            start.insert(vec![1; n]);
        }
        EvaluationModel { field, coords, spaces: vec![start] }.extended(max_degree)
    }

    /// Builds degrees until `V_j` is all of `F_p^Z`, then `extra` more.
    pub fn until_saturated(field: PrimeField, points: &[PointP3], extra: u32) -> Self {
        let n = points.len();
        let mut top = 0;
        let mut m = Self::new(field, points, 0);
        while m.dim(top) < n {
            top += 1;
            m = m.extended(top);
        }
        m.extended(top + extra)
    }

    /// Same model, computed through degree `max_degree`.
    pub fn extended(mut self, max_degree: u32) -> Self {
        let n = self.coords.len();
        while self.max_degree() < max_degree {
            let prev = self.spaces.last().unwrap();
            let mut next = prev.clone();
            if next.dim() < n {
                for v in prev.basis() {
                    for k in 1..NVARS {
                        next.insert(scale_by_coordinate(self.field, &self.coords, k, v));
                    }
                }
            }
            self.spaces.push(next);
        }
        self
    }

    pub fn num_points(&self) -> usize {
        self.coords.len()
    }

    pub fn space(&self, j: u32) -> &Subspace {
        &self.spaces[j as usize]
    }

    pub fn coords(&self) -> &[[u64; 4]] {
        &self.coords
    }
}

fn scale_by_coordinate(field: PrimeField, coords: &[[u64; 4]], k: usize, v: &[u64]) -> Vec<u64> {
    v.iter().zip(coords).map(|(&a, c)| field.mul(a, c[k])).collect()
}

fn scale_by_values(field: PrimeField, values: &[u64], v: &[u64]) -> Vec<u64> {
    v.iter().zip(values).map(|(&a, &c)| field.mul(a, c)).collect()
}

impl GradedModel for EvaluationModel {
    fn field(&self) -> PrimeField {
        self.field
    }

    fn max_degree(&self) -> u32 {
        self.spaces.len() as u32 - 1
    }

    fn dim(&self, j: u32) -> usize {
        self.spaces[j as usize].dim()
    }

    fn mul(&self, var: usize, j: u32) -> MatrixFp {
        let src = &self.spaces[j as usize];
        let dst = &self.spaces[j as usize + 1];
        let mut m = MatrixFp::zeros(self.field, dst.dim(), src.dim());
        for (c, v) in src.basis().iter().enumerate() {
            let w = if var == 0 {
                v.clone()
            } else {
                scale_by_coordinate(self.field, &self.coords, var, v)
            };
            for (r, x) in dst.coordinates(&w).into_iter().enumerate() {
                m.set(r, c, x);
            }
        }
        m
    }

    fn eventual_dim(&self) -> Option<usize> {
        Some(self.coords.len())
    }
}

/// Monomials of `R_j` with their positions (decreasing lex).
#[derive(Debug, Clone)]
struct MonomialBasis {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl MonomialBasis {
    fn new(j: u32) -> Self {
        let monomials = monomials_of_degree(NVARS, j);
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        MonomialBasis { monomials, index }
    }

    fn vector(&self, f: &Polynomial) -> Vec<u64> {
        let mut v = vec![0; self.monomials.len()];
        for (m, c) in f.terms() {
            v[self.index[m]] = c;
        }
        v
    }
}

/// Reduced basis of `I_j` for the ideal generated by `generators`, as vectors
/// over the degree-`j` monomials in decreasing lex order.
pub fn ideal_piece(field: PrimeField, generators: &[Polynomial], j: u32) -> Subspace {
    let basis = MonomialBasis::new(j);
    ideal_piece_in(field, generators, j, &basis)
}

fn ideal_piece_in(field: PrimeField, generators: &[Polynomial], j: u32, basis: &MonomialBasis) -> Subspace {
    let mut space = Subspace::new(field, basis.monomials.len());
    for g in generators {
        let Some(dg) = g.degree() else { continue };
        if dg > j {
            continue;
        }
        for m in monomials_of_degree(NVARS, j - dg) {
            if space.dim() == basis.monomials.len() {
                return space;
            }
            space.insert(basis.vector(&g.mul_monomial(&m)));
        }
    }
    space
}

/// `dim I_j - dim (R_1 · I_{j-1})`: the number of minimal generators of the
/// ideal in degree `j`.
pub fn minimal_generators_in_degree(field: PrimeField, generators: &[Polynomial], j: u32) -> usize {
    let piece = ideal_piece(field, generators, j);
    if j == 0 {
        return piece.dim();
    }
    let lower = MonomialBasis::new(j - 1);
    let upper = MonomialBasis::new(j);
    let below = ideal_piece_in(field, generators, j - 1, &lower);
    let mut span = Subspace::new(field, upper.monomials.len());
    for v in below.basis() {
        for k in 0..NVARS {
            let mut w = vec![0; upper.monomials.len()];
            for (c, &x) in v.iter().enumerate() {
                if x != 0 {
                    w[upper.index[&lower.monomials[c].times_var(k)]] = x;
                }
            }
            span.insert(w);
        }
    }
    piece.dim() - span.dim()
}

/// `R/I` for `I` given by homogeneous generators; the quotient basis in each
/// degree is the set of non-pivot monomials of the reduced ideal piece.
#[derive(Debug, Clone)]
pub struct PresentationModel {
    field: PrimeField,
    generators: Vec<Polynomial>,
    bases: Vec<MonomialBasis>,
    pieces: Vec<Subspace>,
    standard: Vec<Vec<usize>>,
}

impl PresentationModel {
    pub fn new(field: PrimeField, generators: Vec<Polynomial>, max_degree: u32) -> Self {
        for g in &generators {
            assert!(g.nvars() == NVARS && g.is_homogeneous(), "generators must be forms in x0..x3");
        }
        let generators: Vec<Polynomial> = generators.into_iter().filter(|g| !g.is_zero()).collect();
        let mut bases = Vec::new();
        let mut pieces = Vec::new();
        let mut standard = Vec::new();
        for j in 0..=max_degree {
            let basis = MonomialBasis::new(j);
            let piece = ideal_piece_in(field, &generators, j, &basis);
            let mut is_pivot = vec![false; basis.monomials.len()];
            for &p in piece.pivots() {
                is_pivot[p] = true;
            }
            standard.push((0..is_pivot.len()).filter(|&c| !is_pivot[c]).collect());
            bases.push(basis);
            pieces.push(piece);
        }
        PresentationModel { field, generators, bases, pieces, standard }
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn piece(&self, j: u32) -> &Subspace {
        &self.pieces[j as usize]
    }
}

impl GradedModel for PresentationModel {
    fn field(&self) -> PrimeField {
        self.field
    }

    fn max_degree(&self) -> u32 {
        self.pieces.len() as u32 - 1
    }

    fn dim(&self, j: u32) -> usize {
        self.standard[j as usize].len()
    }

    fn mul(&self, var: usize, j: u32) -> MatrixFp {
        let src = &self.standard[j as usize];
        let dst = &self.standard[j as usize + 1];
        let basis = &self.bases[j as usize];
        let next = &self.bases[j as usize + 1];
        let piece = &self.pieces[j as usize + 1];
        let mut m = MatrixFp::zeros(self.field, dst.len(), src.len());
        for (c, &col) in src.iter().enumerate() {
            let mut v = vec![0; next.monomials.len()];
            v[next.index[&basis.monomials[col].times_var(var)]] = 1;
            piece.reduce(&mut v);
            for (r, &row) in dst.iter().enumerate() {
                m.set(r, c, v[row]);
            }
        }
        m
    }
}

/// Dimensions of `(R/I)_j` for `j = 0..=max_degree`. For point sets the value
/// `|Z|` is recorded as the eventual value once reached; otherwise only the
/// listed degrees carry information.
pub fn hilbert_function(model: &dyn GradedModel, max_degree: u32) -> OSequence {
    let top = max_degree.min(model.max_degree());
    let values: Vec<u64> = (0..=top).map(|j| model.dim(j) as u64).collect();
    match model.eventual_dim() {
        Some(n) if values.last() == Some(&(n as u64)) => {
            OSequence::eventually(values, n as u64).expect("last value is the eventual value")
        }
        _ => OSequence::finite(values),
    }
}

fn binomial_small(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Subsets of `{0..n}` of size `k`, each as a sorted list, in lex order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn dim_at(model: &dyn GradedModel, j: i64) -> usize {
    if j < 0 {
        0
    } else {
        model.dim(j as u32)
    }
}

/// Matrix of `d : K_{i,j} -> K_{i-1,j}` where `K_{i,j} = Λ^i k^n ⊗ (R/I)_{j-i}`.
fn koszul_differential(model: &dyn GradedModel, i: usize, j: u32) -> MatrixFp {
    let n = model.nvars();
    let field = model.field();
    let deg = j as i64 - i as i64;
    let a = dim_at(model, deg);
    let b = dim_at(model, deg + 1);
    let src = subsets(n, i);
    let dst = subsets(n, i - 1);
    let mut m = MatrixFp::zeros(field, dst.len() * b, src.len() * a);
    if a == 0 || b == 0 {
        return m;
    }
    let dst_index: HashMap<&Vec<usize>, usize> = dst.iter().enumerate().map(|(k, s)| (s, k)).collect();
    let muls: Vec<MatrixFp> = (0..n).map(|v| model.mul(v, deg as u32)).collect();
    for (c, set) in src.iter().enumerate() {
        for (pos, &v) in set.iter().enumerate() {
            let mut rest = set.clone();
            rest.remove(pos);
            let r = dst_index[&rest];
            m.put_block(r * b, c * a, &muls[v], pos % 2 == 1);
        }
    }
    m
}

/// `β_{i,j} = dim Tor_i(R/I, k)_j` for `0 <= j <= top`, via Koszul homology.
pub fn koszul_betti(model: &dyn GradedModel, top: u32) -> Result<BettiDiagram, SchemeError> {
    if model.max_degree() < top {
        return Err(SchemeError::WindowTooNarrow { needed: top, available: model.max_degree() });
    }
    let n = model.nvars();
    let mut b = BettiDiagram::new();
    for j in 0..=top {
        // ranks[i] = rank of d_i in this strand; d_0 = d_{n+1} = 0
        let mut ranks = vec![0usize; n + 2];
        for (i, r) in ranks.iter_mut().enumerate().take(n + 1).skip(1) {
            if (j as i64) - (i as i64) < 0 {
                continue;
            }
            *r = mat_rank(&koszul_differential(model, i, j));
        }
        for i in 0..=n {
            let deg = j as i64 - i as i64;
            let k = binomial_small(n, i) * dim_at(model, deg);
            let beta = k - ranks[i] - ranks[i + 1];
            b.set(i, j, beta as u64);
        }
    }
    Ok(b)
}

/// Minimal generators of `I_Z` in degrees `1..=max_degree`, as forms in `x0..x3`.
pub fn ideal_generators(field: PrimeField, points: &[PointP3], max_degree: u32) -> Vec<Polynomial> {
    let mut gens: Vec<Polynomial> = Vec::new();
    let mut prev: Option<(MonomialBasis, Subspace)> = None;
    for j in 1..=max_degree {
        let basis = MonomialBasis::new(j);
        let rows: Vec<Vec<u64>> = basis
            .monomials
            .iter()
            .map(|m| points.iter().map(|p| m.eval(field, p.coords())).collect())
            .collect();
        // I_j is the left kernel of the evaluation matrix
        let eval_t = MatrixFp::from_row_vectors(field, points.len(), rows).transpose();
        let kernel = crate::algebra::mat_kernel(&eval_t);
        let mut inherited = Subspace::new(field, basis.monomials.len());
        if let Some((pb, piece)) = &prev {
            for v in piece.basis() {
                for k in 0..NVARS {
                    let mut w = vec![0; basis.monomials.len()];
                    for (c, &x) in v.iter().enumerate() {
                        if x != 0 {
                            w[basis.index[&pb.monomials[c].times_var(k)]] = x;
                        }
                    }
                    inherited.insert(w);
                }
            }
        }
        let mut full = inherited.clone();
        for r in 0..kernel.rows() {
            let v = kernel.row(r).to_vec();
            if full.insert(v.clone()) {
                gens.push(Polynomial::from_terms(
                    field,
                    NVARS,
                    v.iter()
                        .enumerate()
                        .filter(|(_, &x)| x != 0)
                        .map(|(c, &x)| (basis.monomials[c].clone(), x)),
                ));
            }
        }
        prev = Some((basis, full));
    }
    gens
}

/// One degree of a Weak Lefschetz check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WlpDegree {
    pub degree: u32,
    pub dim: u64,
    pub dim_next: u64,
    pub rank: u64,
}

impl WlpDegree {
    pub fn expected(&self) -> u64 {
        self.dim.min(self.dim_next)
    }

    pub fn is_maximal(&self) -> bool {
        self.rank == self.expected()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum WlpVerdict {
    Holds,
    Fails { degrees: Vec<u32> },
}

/// A "holds" verdict is evidence from random forms; a failure persisting
/// over every trial is what the structural cross-check then explains.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WlpReport {
    pub degrees: Vec<WlpDegree>,
    pub verdict: WlpVerdict,
    pub seed: u64,
    pub trials: u32,
    /// `(L1, L2)` per trial, coefficients of `x0..x3`.
    pub forms: Vec<([u64; 4], [u64; 4])>,
    /// For a failure: whether every failing degree `i` has `β_{3,i+3} != 0`.
    pub socle_explained: Option<bool>,
}

impl WlpReport {
    pub fn holds(&self) -> bool {
        self.verdict == WlpVerdict::Holds
    }

    pub fn failing_degrees(&self) -> &[u32] {
        match &self.verdict {
            WlpVerdict::Holds => &[],
            WlpVerdict::Fails { degrees } => degrees,
        }
    }

    /// Records whether the Betti diagram shows last-column entries matching
    /// every failing degree.
    pub fn cross_check(&mut self, betti: &BettiDiagram) {
        self.socle_explained = match &self.verdict {
            WlpVerdict::Holds => None,
            WlpVerdict::Fails { degrees } => Some(degrees.iter().all(|&i| betti.get(3, i + 3) != 0)),
        };
    }
}

const REDUCTION_ATTEMPTS: u32 = 25;

fn random_form(rng: &mut ChaCha8Rng, field: PrimeField) -> [u64; 4] {
    let p = field.modulus();
    [(); 4].map(|_| rng.gen_range(1..p))
}

fn values_of(field: PrimeField, form: &[u64; 4], coords: &[[u64; 4]]) -> Vec<u64> {
    coords
        .iter()
        .map(|c| (0..4).fold(0, |acc, k| field.add(acc, field.mul(form[k], c[k]))))
        .collect()
}

/// Weak Lefschetz check on the Artinian reduction `R/(I_Z + L1)` with a second
/// general form `L2`, best ranks over `trials` random pairs.
pub fn wlp_check(
    field: PrimeField,
    points: &[PointP3],
    seed: u64,
    trials: u32,
) -> Result<WlpReport, SchemeError> {
    if points.is_empty() {
        return Err(SchemeError::EmptyPointSet);
    }
    let n = points.len();
    let model = EvaluationModel::until_saturated(field, points, 1);
    let top = model.max_degree() - 1;
    let delta: Vec<u64> = (0..=top + 1)
        .map(|j| (model.dim(j) - if j == 0 { 0 } else { model.dim(j - 1) }) as u64)
        .collect();
    let mut best: Vec<WlpDegree> = (0..=top)
        .map(|i| WlpDegree { degree: i, dim: delta[i as usize], dim_next: delta[i as usize + 1], rank: 0 })
        .collect();
    let mut forms = Vec::new();
    let mut rng = stream(seed, 0);
    let mut attempts = 0;
    while (forms.len() as u32) < trials {
        let l1 = random_form(&mut rng, field);
        let l2 = random_form(&mut rng, field);
        let v1 = values_of(field, &l1, model.coords());
        let v2 = values_of(field, &l2, model.coords());
        // L1 must be a unit on every point for R/(I_Z + L1) to have dims Δh
        if v1.contains(&0) {
            attempts += 1;
            if attempts >= REDUCTION_ATTEMPTS {
                return Err(SchemeError::DegenerateReduction { attempts });
            }
            continue;
        }
        for row in best.iter_mut() {
            let vi = model.space(row.degree);
            let l1v = Subspace::spanned_by(field, n, vi.basis().iter().map(|v| scale_by_values(field, &v1, v)));
            debug_assert_eq!(l1v.dim(), vi.dim());
            let mut both = l1v.clone();
            for v in vi.basis() {
                both.insert(scale_by_values(field, &v2, v));
            }
            let rank = (both.dim() - vi.dim()) as u64;
            row.rank = row.rank.max(rank);
        }
        forms.push((l1, l2));
    }
    let failing: Vec<u32> = best.iter().filter(|r| !r.is_maximal()).map(|r| r.degree).collect();
    let verdict = if failing.is_empty() {
        WlpVerdict::Holds
    } else {
        WlpVerdict::Fails { degrees: failing }
    };
    Ok(WlpReport { degrees: best, verdict, seed, trials, forms, socle_explained: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lifting::{lift_points, Scalars};
    use crate::monomial_ideal::{ek_betti, MonomialIdeal};

    fn f() -> PrimeField {
        PrimeField::new(32003).unwrap()
    }

    fn point(c: [u64; 4]) -> PointP3 {
        PointP3(c)
    }

    #[test]
    fn single_point() {
        let m = EvaluationModel::new(f(), &[point([1, 0, 0, 0])], 5);
        assert_eq!(hilbert_function(&m, 5), OSequence::eventually(vec![1], 1).unwrap());
        let b = koszul_betti(&m, 5).unwrap();
        assert_eq!(
            b,
            BettiDiagram::from_entries([((0, 0), 1), ((1, 1), 3), ((2, 2), 3), ((3, 3), 1)])
        );
        let w = wlp_check(f(), &[point([1, 0, 0, 0])], 1, 3).unwrap();
        assert!(w.holds());
    }

    #[test]
    fn window_must_fit() {
        let m = EvaluationModel::new(f(), &[point([1, 0, 0, 0])], 2);
        assert_eq!(
            koszul_betti(&m, 3),
            Err(SchemeError::WindowTooNarrow { needed: 3, available: 2 })
        );
    }

    #[test]
    fn lifted_points_of_small_lex_ideal() {
        let field = f();
        let j = MonomialIdeal::from_exponents(3, &[&[1, 0, 0], &[0, 2, 0], &[0, 1, 2], &[0, 0, 5]]);
        let pts = lift_points(&j, &Scalars::identity(), field).unwrap();
        let m = EvaluationModel::new(field, pts.points(), 8);
        assert_eq!(
            hilbert_function(&m, 8),
            OSequence::eventually(vec![1, 3, 5, 6, 7], 7).unwrap()
        );
        let b = koszul_betti(&m, 8).unwrap();
        assert_eq!(b, ek_betti(&j).unwrap());
    }

    #[test]
    fn presentation_pieces() {
        let field = f();
        let q = Polynomial::linear(field, &[1, 2, 3, 4]).mul(&Polynomial::linear(field, &[4, 3, 2, 1]));
        assert_eq!(ideal_piece(field, std::slice::from_ref(&q), 2).dim(), 1);
        assert_eq!(ideal_piece(field, &[], 3).dim(), 0);
        let m = PresentationModel::new(field, vec![q], 4);
        assert_eq!(hilbert_function(&m, 4).values(), &[1, 4, 9, 16, 25]);
    }

    #[test]
    fn complete_intersection_certificate() {
        let field = f();
        let a = Polynomial::linear(field, &[1, 2, 3, 4]);
        let b = Polynomial::linear(field, &[5, 1, 7, 2]);
        let q = a.mul(&b);
        let cubic = Polynomial::linear(field, &[0, 1, 0, 0])
            .mul(&Polynomial::linear(field, &[0, 0, 1, 0]))
            .mul(&Polynomial::linear(field, &[field.from_i64(-1), 0, 0, 1]));
        let m = PresentationModel::new(field, vec![cubic, q], 6);
        let betti = koszul_betti(&m, 6).unwrap();
        assert_eq!(
            betti,
            BettiDiagram::from_entries([((0, 0), 1), ((1, 2), 1), ((1, 3), 1), ((2, 5), 1)])
        );
    }

    #[test]
    fn backends_agree() {
        let field = f();
        let pts: Vec<PointP3> = [[1, 0, 0, 0], [1, 1, 0, 0], [1, 0, 1, 0], [1, 0, 0, 1], [1, 2, 3, 5], [1, 7, 1, 2]]
            .into_iter()
            .map(point)
            .collect();
        let eval = EvaluationModel::new(field, &pts, 5);
        let gens = ideal_generators(field, &pts, 4);
        let pres = PresentationModel::new(field, gens, 5);
        assert_eq!(hilbert_function(&eval, 5).prefix(6), hilbert_function(&pres, 5).prefix(6));
        assert_eq!(koszul_betti(&eval, 4).unwrap(), koszul_betti(&pres, 4).unwrap());
    }

    #[test]
    fn multiplication_maps_commute() {
        let field = f();
        let pts: Vec<PointP3> = [[1, 0, 0, 0], [1, 3, 0, 0], [1, 0, 5, 0], [1, 2, 2, 9]].into_iter().map(point).collect();
        let m = EvaluationModel::new(field, &pts, 4);
        for j in 0..3 {
            for a in 0..4 {
                for b in 0..4 {
                    let ab = m.mul(b, j + 1).mul(&m.mul(a, j));
                    let ba = m.mul(a, j + 1).mul(&m.mul(b, j));
                    assert_eq!(ab, ba);
                }
            }
        }
    }
}
