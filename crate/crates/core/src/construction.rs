//! The witness pipeline: hypothesis checks and the difference table, then the
//! two point sets with equal Hilbert functions.
//!
//! The curve side samples points on an ACM union of lines `C`; the liaison
//! side is `Y' ∪ V(F, Q)` with `I' = Q·I_{Y'} + (F)`, sampled on the `2s`
//! lines of `V(F, Q)`.

use std::fmt;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{monomials_of_degree, FieldError, Monomial, Polynomial, PrimeField, Subspace};
use crate::betti::{predict_constraints, strongly_incomparable, BettiDiagram, ConstraintViolation, Incomparability};
use crate::lifting::{
    distract_lines, eval_linear, lift_generator, lift_generator_factors, lift_points, LiftError, Line,
    LinesUnion, PointP3, PointSet, Provenance, Scalars,
};
use crate::monomial_ideal::{ek_betti, lex_ideal, IdealError, MonomialIdeal};
use crate::oseq::{is_o_sequence, OSeqError, OSeqVerdict, OSequence};
use crate::rng::stream;
use crate::scheme_engine::{
    hilbert_function, ideal_piece, koszul_betti, GradedModel, minimal_generators_in_degree, wlp_check, EvaluationModel,
    PresentationModel, SchemeError, WlpReport,
};

/// Fresh attempts for the regular-sequence search and for each sampling stage.
pub const MAX_ATTEMPTS: u32 = 25;
/// Random parameters tried for a single point before the attempt is abandoned.
const POINT_TRIES: u32 = 12;

const PURPOSE_Q: u64 = 1;
const PURPOSE_LIAISON: u64 = 2;
const PURPOSE_CURVE: u64 = 3;
const PURPOSE_LIAISON_TAIL: u64 = 4;
const PURPOSE_CURVE_TAIL: u64 = 5;

#[derive(Debug, Clone, Error)]
pub enum ConstructionError {
    #[error("plateau value d = {d} must be larger than 3")]
    PlateauTooSmall { d: u64 },
    #[error("key assumption t <= s - 1 fails (t = {t}, s = {s})")]
    KeyAssumptionViolated { t: u32, s: u32 },
    #[error("tail not admissible: {reason}")]
    TailNotAdmissible { reason: String },
    #[error("e-row not an O-sequence: growth fails in degree {degree}, row {row:?}")]
    NotOSequence { degree: usize, row: Vec<u64> },
    #[error("not a differentiable O-sequence (fails in degree {degree})")]
    NotDifferentiable { degree: usize },
    #[error("target Hilbert function must be eventually constant")]
    TargetNotStable,
    #[error("witnesses are built only for the complete intersection type (2, s)")]
    UnsupportedCiType,
    #[error("no quadric Q forming a regular sequence with F after {attempts} attempts")]
    RegularSequenceRetryExhausted { attempts: u32 },
    #[error("truncation sampling failed after {attempts} attempts")]
    TruncationSamplingExhausted { attempts: u32 },
    #[error("constraint checks failed: {}", failures.join("; "))]
    ConstraintCheckFailed { failures: Vec<String>, pair: Box<WitnessPair> },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Lift(#[from] LiftError),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Sequence(#[from] OSeqError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionInvariants {
    pub d: u64,
    pub t: u32,
    pub s: u32,
    pub parity: Parity,
    pub ci_type: (u32, u32),
    /// `(b_{s+2}, ..., b_r)`, empty without a tail.
    pub tail: Vec<u64>,
}

impl ConstructionInvariants {
    /// `b_{s+2}`, or 0 without a tail.
    pub fn first_tail_value(&self) -> u64 {
        self.tail.first().copied().unwrap_or(0)
    }

    /// Last degree with a non-zero entry of the h-vector.
    pub fn last_degree(&self) -> u32 {
        self.s + 1 + self.tail.len() as u32
    }

    pub fn is_even(&self) -> bool {
        self.parity == Parity::Even
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim3 {
    /// `J : x3^∞` for the lex ideal of the e-row.
    pub saturation: MonomialIdeal,
    /// The saturation is `(x1, x2^c)`, whose radical is `(x1, x2)`.
    pub radical_is_x1_x2: bool,
    /// Multiplicity `c` of that component; equals the eventual e-value.
    pub degree: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claims {
    pub b2_is_6: bool,
    pub e_is_o_sequence: bool,
    pub tail_component: Option<Claim3>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferenceTable {
    pub delta_h: OSequence,
    pub second_difference: OSequence,
    pub delta_ci: OSequence,
    /// `e_i` sits in degree `i + shift`.
    pub shift: u32,
    pub e: OSequence,
    pub e_prime: OSequence,
    pub claims: Claims,
}

impl DifferenceTable {
    fn columns(&self) -> usize {
        let shift = self.shift as usize;
        self.delta_h.len().max(self.delta_ci.len()).max(shift + self.e.len()) + 1
    }

    /// Three rows aligned by degree, the e-row shifted.
    pub fn render(&self) -> String {
        let n = self.columns();
        let shift = self.shift as usize;
        let cell = |v: Option<u64>| v.map_or(String::new(), |x| x.to_string());
        let rows: Vec<(&str, Vec<String>)> = vec![
            ("deg", (0..n).map(|k| k.to_string()).collect()),
            ("ΔH", (0..n).map(|k| cell(Some(self.delta_h.get(k)))).collect()),
            ("ΔCI", (0..n).map(|k| cell(Some(self.delta_ci.get(k)))).collect()),
            ("e", (0..n).map(|k| cell(k.checked_sub(shift).map(|i| self.e.get(i)))).collect()),
        ];
        let width = rows.iter().flat_map(|(_, r)| r.iter().map(String::len)).max().unwrap_or(1);
        let mut out = String::new();
        for (name, cells) in rows {
            out.push_str(&format!("{name:<4}|"));
            for c in cells {
                out.push_str(&format!(" {c:>width$}"));
            }
            out.push_str(" ...\n");
        }
        out
    }
}

impl fmt::Display for DifferenceTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn binom2(n: i64) -> i64 {
    if n < 2 {
        0
    } else {
        n * (n - 1) / 2
    }
}

/// First difference of the Hilbert function of a complete intersection of
/// type `(a, b)` in P3, i.e. the Hilbert function of `k[x,y,z]/(f_a, f_b)`.
pub fn ci_difference(a: u32, b: u32) -> OSequence {
    let (a, b) = (a as i64, b as i64);
    let value = |i: i64| binom2(i + 2) - binom2(i - a + 2) - binom2(i - b + 2) + binom2(i - a - b + 2);
    let values: Vec<u64> = (0..a + b).map(|i| value(i) as u64).collect();
    OSequence::eventually(values, (a * b) as u64).expect("complete intersection difference stabilizes at ab")
}

fn not_differentiable(e: OSeqError) -> ConstructionError {
    match e {
        OSeqError::NegativeDifference { degree } => ConstructionError::NotDifferentiable { degree },
        other => ConstructionError::Sequence(other),
    }
}

/// Reads `d, t, s` off an h-vector and builds the difference table.
///
/// A finite input is the h-vector of the points (plateau then optional tail);
/// an eventually constant input is `ΔH` of the curve itself.
pub fn analyze(
    delta_h: &OSequence,
    ci_override: Option<(u32, u32)>,
) -> Result<(ConstructionInvariants, DifferenceTable), ConstructionError> {
    let vals = delta_h.values();
    if vals.is_empty() {
        return Err(ConstructionError::NotDifferentiable { degree: 0 });
    }
    if let OSeqVerdict::Fail { degree } = is_o_sequence(delta_h)? {
        return Err(ConstructionError::NotDifferentiable { degree });
    }
    let d = delta_h.eventual().unwrap_or_else(|| *vals.iter().max().unwrap());
    if d <= 3 {
        return Err(ConstructionError::PlateauTooSmall { d });
    }
    let t = vals.iter().position(|&v| v == d).unwrap();
    let s = ((d - 1) / 2) as u32;
    if delta_h.eventual().is_some() {
        if let Some(k) = (t..vals.len()).find(|&k| vals[k] != d) {
            return Err(ConstructionError::NotDifferentiable { degree: k });
        }
    }
    let head = OSequence::eventually(vals[..=t].to_vec(), d)?;
    let second = head.difference(1).map_err(not_differentiable)?;
    if let OSeqVerdict::Fail { degree } = is_o_sequence(&second)? {
        return Err(ConstructionError::NotDifferentiable { degree });
    }
    if t as u32 + 1 > s {
        return Err(ConstructionError::KeyAssumptionViolated { t: t as u32, s });
    }
    let tail = if delta_h.is_finite() { check_tail(vals, d, t, s)? } else { Vec::new() };
    let parity = if d.is_multiple_of(2) { Parity::Even } else { Parity::Odd };
    let (a, b) = ci_override.unwrap_or((2, s));
    if a == 0 || b < a {
        return Err(ConstructionError::TailNotAdmissible {
            reason: format!("complete intersection type ({a}, {b}) needs 1 <= a <= b"),
        });
    }
    let delta_ci = ci_difference(a, b);

    // e-row: ΔH - ΔCI, starting in degree a
    let span = head.len().max(delta_ci.len()) + 1;
    let diffs: Vec<i64> = (0..span).map(|k| head.get(k) as i64 - delta_ci.get(k) as i64).collect();
    let shown = |upto: usize| -> Vec<u64> { diffs[a as usize..upto].iter().map(|&x| x.max(0) as u64).collect() };
    if let Some(k) = (0..span).find(|&k| diffs[k] < 0 || (k < a as usize && diffs[k] != 0)) {
        return Err(ConstructionError::NotOSequence { degree: k, row: shown(span.max(a as usize)) });
    }
    let e = OSequence::eventually(shown(span), d - (a as u64) * (b as u64))?;
    let e_ok = is_o_sequence(&e)?;
    if let OSeqVerdict::Fail { degree } = e_ok {
        return Err(ConstructionError::NotOSequence { degree: degree + a as usize, row: e.prefix(span) });
    }
    let e_prime = OSequence::finite(e.prefix(b as usize));

    let tail_component = lex_ideal(&e, 3).ok().map(|j| {
        let saturation = j.saturate_last_variable();
        let c = e.tail_value();
        let expected = MonomialIdeal::from_exponents(3, &[&[1, 0, 0], &[0, c as u32, 0]]);
        Claim3 { radical_is_x1_x2: saturation == expected && c > 0, degree: c, saturation }
    });
    let claims = Claims { b2_is_6: head.get(2) == 6, e_is_o_sequence: e_ok.passed(), tail_component };
    let inv = ConstructionInvariants { d, t: t as u32, s, parity, ci_type: (a, b), tail };
    let table = DifferenceTable {
        delta_h: head,
        second_difference: second,
        delta_ci,
        shift: a,
        e,
        e_prime,
        claims,
    };
    Ok((inv, table))
}

fn check_tail(vals: &[u64], d: u64, t: usize, s: u32) -> Result<Vec<u64>, ConstructionError> {
    let s = s as usize;
    if let Some(k) = (t..=s + 1).find(|&k| vals.get(k) != Some(&d)) {
        return Err(ConstructionError::TailNotAdmissible {
            reason: format!("the plateau at {d} must last through degree s + 1 = {}, but ends before degree {k}", s + 1),
        });
    }
    let tail: Vec<u64> = vals.get(s + 2..).unwrap_or(&[]).to_vec();
    if let Some(w) = tail.windows(2).position(|w| w[1] > w[0]) {
        return Err(ConstructionError::TailNotAdmissible {
            reason: format!("tail must be non-increasing (degree {})", s + 3 + w),
        });
    }
    let bound = if d.is_multiple_of(2) { d - 2 } else { d - 1 };
    if let Some(&first) = tail.first() {
        if first > bound {
            return Err(ConstructionError::TailNotAdmissible {
                reason: format!("b_(s+2) = {first} exceeds {bound}"),
            });
        }
    }
    Ok(tail)
}

/// Knobs shared by both builders.
#[derive(Debug, Clone)]
pub struct BuildConfig {
    pub field: PrimeField,
    pub seed: u64,
    pub wlp_trials: u32,
    pub scalars: Scalars,
}

impl Default for BuildConfig {
    fn default() -> Self {
        BuildConfig { field: PrimeField::default(), seed: 0, wlp_trials: 3, scalars: Scalars::identity() }
    }
}

impl BuildConfig {
    pub fn new(prime: u64, seed: u64) -> Result<Self, ConstructionError> {
        Ok(BuildConfig { field: PrimeField::new(prime)?, seed, ..Self::default() })
    }
}

/// `Z'` before any tail, with everything used to build it.
#[derive(Debug, Clone, Serialize)]
pub struct LiaisonSide {
    pub j_prime: MonomialIdeal,
    pub y_prime: PointSet,
    /// Monomial of `J'` whose lift is `F`.
    pub f_monomial: Monomial,
    pub f: Polynomial,
    pub q: Polynomial,
    pub q_factors: [[u64; 4]; 2],
    /// Koszul Betti diagram of `R/(F, Q)`.
    pub ci_betti: BettiDiagram,
    /// Generators of `I' = Q·I_{Y'} + (F)`.
    pub presentation: Vec<Polynomial>,
    /// The lines of `V(F, Q)`, in prefix order.
    pub lines: LinesUnion,
    pub line_degrees: Vec<u32>,
    pub points: PointSet,
    pub q_attempts: u32,
    pub sampling_attempts: u32,
}

/// `Z` before any tail.
#[derive(Debug, Clone, Serialize)]
pub struct CurveSide {
    pub ideal: MonomialIdeal,
    pub lines: LinesUnion,
    pub line_degrees: Vec<u32>,
    pub points: PointSet,
    pub sampling_attempts: u32,
}

fn eval_vector(field: PrimeField, monos: &[Monomial], p: &PointP3) -> Vec<u64> {
    monos.iter().map(|m| m.eval(field, p.coords())).collect()
}

/// Adds `counts[k]` random points on line `k`, each required to raise the
/// rank of evaluation on degree-`degree` forms.
fn sample_on_lines(
    field: PrimeField,
    set: &mut PointSet,
    lines: &LinesUnion,
    counts: &[usize],
    degree: u32,
    rng: &mut ChaCha8Rng,
) -> bool {
    let monos = monomials_of_degree(4, degree);
    let mut span = Subspace::new(field, monos.len());
    for p in set.points() {
        span.insert(eval_vector(field, &monos, p));
    }
    for (k, &count) in counts.iter().enumerate() {
        for _ in 0..count {
            let placed = (0..POINT_TRIES).any(|_| {
                let pt = lines.lines()[k].point_at(field, rng.gen_range(0..field.modulus()));
                if set.points().contains(&pt) || !span.insert(eval_vector(field, &monos, &pt)) {
                    return false;
                }
                set.push(pt, Provenance::SampledOnLine { line: k });
                true
            });
            if !placed {
                return false;
            }
        }
    }
    true
}

fn hilbert_matches(field: PrimeField, set: &PointSet, target: &OSequence) -> bool {
    let model = EvaluationModel::until_saturated(field, set.points(), 0);
    let h = hilbert_function(&model, model.max_degree());
    let n = h.len().max(target.len());
    h.eventual() == target.eventual() && (0..n).all(|k| h.get(k) == target.get(k))
}

/// Points per line for a truncation reached in degree `k`: a line whose
/// monomial has degree `δ` carries `k + 1 - δ` points.
fn counts_for(line_degrees: &[u32], k: u32) -> Vec<usize> {
    line_degrees.iter().map(|&delta| (k + 1).saturating_sub(delta) as usize).collect()
}

/// Samples `counts` points on `lines` over `base` until the Hilbert function
/// equals `target`.
#[allow(clippy::too_many_arguments)]
fn sample_until(
    field: PrimeField,
    base: &PointSet,
    lines: &LinesUnion,
    stages: &[(Vec<usize>, u32)],
    target: &OSequence,
    seed: u64,
    purpose: u64,
) -> Result<(PointSet, u32), ConstructionError> {
    for attempt in 0..MAX_ATTEMPTS {
        let mut rng = stream(seed, purpose * 1000 + attempt as u64);
        let mut set = base.clone();
        let placed = stages
            .iter()
            .all(|(counts, degree)| sample_on_lines(field, &mut set, lines, counts, *degree, &mut rng));
        if placed && hilbert_matches(field, &set, target) {
            return Ok((set, attempt + 1));
        }
    }
    Err(ConstructionError::TruncationSamplingExhausted { attempts: MAX_ATTEMPTS })
}

fn to_residues(field: PrimeField, f: &[i64; 4]) -> [u64; 4] {
    f.map(|c| field.from_i64(c))
}

fn expected_ci_betti(s: u32) -> BettiDiagram {
    BettiDiagram::from_entries([((0, 0), 1), ((1, 2), 1), ((1, s), 1), ((2, s + 2), 1)])
}

/// Why a candidate `Q = L1·L2` was turned down.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QRejection {
    VanishesOnY,
    DegenerateLine,
    NotRegularSequence,
}

/// Lines of `V(F, Q)` in prefix order, and their monomial degrees.
fn liaison_lines(
    field: PrimeField,
    l: [[u64; 4]; 2],
    planes: &[[u64; 4]],
) -> Result<(LinesUnion, Vec<u32>), LiftError> {
    let s = planes.len() as u32;
    let staircase = MonomialIdeal::from_exponents(2, &[&[2, 0], &[0, s]]);
    let mut lines = Vec::new();
    let mut degrees = Vec::new();
    for m in staircase.standard_monomials().expect("Artinian") {
        let (alpha, beta) = (m.exps()[0] as usize, m.exps()[1] as usize);
        lines.push(Line::from_forms(field, l[alpha], planes[beta])?);
        degrees.push(m.degree());
    }
    Ok((LinesUnion::new(lines), degrees))
}

/// Accepts `Q = L1·L2` when it misses every point of `Y'`, cuts `F` in `2s`
/// honest lines, and `(F, Q)` has the Koszul Betti diagram of a complete
/// intersection of type `(2, s)`.
pub fn certify_q(
    field: PrimeField,
    f: &Polynomial,
    planes: &[[u64; 4]],
    l: [[u64; 4]; 2],
    y_prime: &PointSet,
) -> Result<(Polynomial, LinesUnion, Vec<u32>, BettiDiagram), QRejection> {
    let s = planes.len() as u32;
    if y_prime.points().iter().any(|p| l.iter().any(|form| eval_linear(field, form, p) == 0)) {
        return Err(QRejection::VanishesOnY);
    }
    let (lines, degrees) = liaison_lines(field, l, planes).map_err(|_| QRejection::DegenerateLine)?;
    let q = Polynomial::linear(field, &l[0]).mul(&Polynomial::linear(field, &l[1]));
    let model = PresentationModel::new(field, vec![f.clone(), q.clone()], s + 2);
    let betti = koszul_betti(&model, s + 2).map_err(|_| QRejection::NotRegularSequence)?;
    if betti != expected_ci_betti(s) {
        return Err(QRejection::NotRegularSequence);
    }
    Ok((q, lines, degrees, betti))
}

/// Builds `Z'` for the plateau part of the h-vector.
pub fn build_zprime(
    inv: &ConstructionInvariants,
    table: &DifferenceTable,
    config: &BuildConfig,
) -> Result<LiaisonSide, ConstructionError> {
    if inv.ci_type != (2, inv.s) {
        return Err(ConstructionError::UnsupportedCiType);
    }
    let field = config.field;
    let s = inv.s;
    let j_prime = lex_ideal(&table.e_prime, 3)?;
    let y_prime = lift_points(&j_prime, &config.scalars, field)?;
    let f_monomial = j_prime
        .gens_in_degree(s)
        .next()
        .cloned()
        .ok_or(ConstructionError::NotOSequence { degree: s as usize, row: table.e_prime.values().to_vec() })?;
    let f = lift_generator(&f_monomial, &config.scalars, field);
    let planes: Vec<[u64; 4]> = lift_generator_factors(&f_monomial, &config.scalars)
        .iter()
        .map(|p| to_residues(field, p))
        .collect();

    let mut rng = stream(config.seed, PURPOSE_Q);
    let mut found = None;
    let mut q_attempts = 0;
    while found.is_none() && q_attempts < MAX_ATTEMPTS {
        q_attempts += 1;
        let p = field.modulus();
        let l = [[(); 4].map(|_| rng.gen_range(1..p)), [(); 4].map(|_| rng.gen_range(1..p))];
        found = certify_q(field, &f, &planes, l, &y_prime).ok().map(|r| (l, r));
    }
    let Some((q_factors, (q, lines, line_degrees, ci_betti))) = found else {
        return Err(ConstructionError::RegularSequenceRetryExhausted { attempts: q_attempts });
    };

    let mut presentation: Vec<Polynomial> = j_prime
        .gens()
        .iter()
        .map(|g| q.mul(&lift_generator(g, &config.scalars, field)))
        .collect();
    presentation.push(f.clone());

    let stages = vec![(counts_for(&line_degrees, s + 1), s + 1)];
    let target = plateau_target(inv, table);
    let (points, sampling_attempts) =
        sample_until(field, &y_prime, &lines, &stages, &target, config.seed, PURPOSE_LIAISON)?;
    Ok(LiaisonSide {
        j_prime,
        y_prime,
        f_monomial,
        f,
        q,
        q_factors,
        ci_betti,
        presentation,
        lines,
        line_degrees,
        points,
        q_attempts,
        sampling_attempts,
    })
}

/// Hilbert function of the curve truncated after degree `s + 1`.
pub fn plateau_target(inv: &ConstructionInvariants, table: &DifferenceTable) -> OSequence {
    OSequence::finite(table.delta_h.prefix(inv.s as usize + 2))
        .accumulate(1)
        .expect("finite sequences accumulate")
}

/// Builds `Z` on the ACM union of lines `C` with the given truncated Hilbert function.
pub fn build_z(
    inv: &ConstructionInvariants,
    table: &DifferenceTable,
    target: &OSequence,
    config: &BuildConfig,
) -> Result<CurveSide, ConstructionError> {
    let Some(n) = target.eventual() else {
        return Err(ConstructionError::TargetNotStable);
    };
    let field = config.field;
    let ideal = lex_ideal(&table.second_difference, 2)?;
    let lines = distract_lines(&ideal, &config.scalars, field)?;
    let line_degrees: Vec<u32> = ideal.standard_monomials()?.iter().map(Monomial::degree).collect();
    let k = (0..).find(|&k| target.get(k) == n).unwrap() as u32;
    let counts = counts_for(&line_degrees, k);
    if counts.iter().sum::<usize>() as u64 != n {
        return Err(ConstructionError::TargetNotStable);
    }
    let _ = inv;
    let (points, sampling_attempts) =
        sample_until(field, &PointSet::new(), &lines, &[(counts, k)], target, config.seed, PURPOSE_CURVE)?;
    Ok(CurveSide { ideal, lines, line_degrees, points, sampling_attempts })
}

/// Tail stages: in degree `s + 2 + i` one new point on each of the first
/// `b_{s+2+i}` lines.
fn tail_stages(inv: &ConstructionInvariants, nlines: usize) -> Result<Vec<(Vec<usize>, u32)>, ConstructionError> {
    inv.tail
        .iter()
        .enumerate()
        .map(|(i, &b)| {
            if b as usize > nlines {
                return Err(ConstructionError::TailNotAdmissible {
                    reason: format!("b = {b} exceeds the {nlines} available lines"),
                });
            }
            let counts = (0..nlines).map(|k| usize::from(k < b as usize)).collect();
            Ok((counts, inv.s + 2 + i as u32))
        })
        .collect()
}

/// One of the two witnesses with everything computed from it.
#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub name: String,
    pub points: PointSet,
    pub hilbert: OSequence,
    pub betti: BettiDiagram,
    pub constraint_violations: Vec<ConstraintViolation>,
    pub wlp: WlpReport,
    pub sampling_attempts: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed, detail: detail.into() }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessPair {
    pub h_vector: OSequence,
    pub target: OSequence,
    pub invariants: ConstructionInvariants,
    pub table: DifferenceTable,
    pub curve_side: Witness,
    pub liaison_side: Witness,
    pub curve: CurveSide,
    pub liaison: LiaisonSide,
    /// Dimension of `(R/I')_{s+1}`.
    pub liaison_codim_s_plus_1: u64,
    /// Minimal generators of `I'` in degree `s + 2`.
    pub liaison_generators_s_plus_2: u64,
    pub checks: Vec<Check>,
    pub incomparability: Incomparability,
    pub window: u32,
    pub prime: u64,
    pub seed: u64,
}

impl WitnessPair {
    pub fn failures(&self) -> Vec<String> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect()
    }
}

fn finish_witness(
    name: &str,
    field: PrimeField,
    points: PointSet,
    window: u32,
    config: &BuildConfig,
    sampling_attempts: u32,
) -> Result<Witness, ConstructionError> {
    let model = EvaluationModel::new(field, points.points(), window);
    let hilbert = hilbert_function(&model, window);
    let betti = koszul_betti(&model, window)?;
    let mut wlp = wlp_check(field, points.points(), config.seed, config.wlp_trials)?;
    wlp.cross_check(&betti);
    Ok(Witness {
        name: name.into(),
        points,
        hilbert,
        betti,
        constraint_violations: Vec::new(),
        wlp,
        sampling_attempts,
    })
}

/// Builds and certifies both witnesses for a finite h-vector.
pub fn build_witness_pair(delta_hbar: &OSequence, config: &BuildConfig) -> Result<WitnessPair, ConstructionError> {
    if !delta_hbar.is_finite() {
        return Err(ConstructionError::TargetNotStable);
    }
    let field = config.field;
    let (inv, table) = analyze(delta_hbar, None)?;
    let target = delta_hbar.accumulate(1)?;
    let s = inv.s;

    let liaison = build_zprime(&inv, &table, config)?;
    let curve = build_z(&inv, &table, &plateau_target(&inv, &table), config)?;
    let (w_prime, w, tail_attempts) = if inv.tail.is_empty() {
        (liaison.points.clone(), curve.points.clone(), (0, 0))
    } else {
        let a = sample_until(
            field,
            &liaison.points,
            &liaison.lines,
            &tail_stages(&inv, liaison.lines.len())?,
            &target,
            config.seed,
            PURPOSE_LIAISON_TAIL,
        )?;
        let b = sample_until(
            field,
            &curve.points,
            &curve.lines,
            &tail_stages(&inv, curve.lines.len())?,
            &target,
            config.seed,
            PURPOSE_CURVE_TAIL,
        )?;
        (a.0, b.0, (a.1, b.1))
    };
    let tail = !inv.tail.is_empty();
    let window = inv.last_degree() + 3;
    let (curve_name, liaison_name) = if tail { ("W", "W'") } else { ("Z", "Z'") };
    let mut curve_side =
        finish_witness(curve_name, field, w, window, config, curve.sampling_attempts + tail_attempts.1)?;
    let mut liaison_side =
        finish_witness(liaison_name, field, w_prime, window, config, liaison.sampling_attempts + tail_attempts.0)?;

    let (curve_constraints, liaison_constraints) = predict_constraints(&inv);
    curve_side.constraint_violations = curve_constraints.check(&curve_side.betti);
    liaison_side.constraint_violations = liaison_constraints.check(&liaison_side.betti);
    let incomparability = strongly_incomparable(&curve_side.betti, &liaison_side.betti)
        .unwrap_or(Incomparability::CommonDescendantExists(BettiDiagram::new()));

    let codim = {
        let piece = ideal_piece(field, &liaison.presentation, s + 1);
        (piece.ambient() - piece.dim()) as u64
    };
    let new_gens = minimal_generators_in_degree(field, &liaison.presentation, s + 2) as u64;

    let mut checks = Vec::new();
    for w in [&curve_side, &liaison_side] {
        let same = (0..=window as usize).all(|k| w.hilbert.get(k) == target.get(k))
            && w.hilbert.eventual() == target.eventual();
        checks.push(Check::new(
            &format!("{} Hilbert function", w.name),
            same,
            format!("{} vs target {}", w.hilbert, target),
        ));
        let identity = w.betti.check_hilbert_identity(&w.hilbert.prefix(window as usize + 1), 4);
        checks.push(Check::new(
            &format!("{} alternating sums", w.name),
            identity.is_ok(),
            match identity {
                Ok(()) => "K-polynomial matches the Hilbert series".to_string(),
                Err(j) => format!("mismatch in degree {j}"),
            },
        ));
        checks.push(Check::new(
            &format!("{} predicted entries", w.name),
            w.constraint_violations.is_empty(),
            w.constraint_violations.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "),
        ));
    }
    let ci = &curve_side.wlp;
    checks.push(Check::new(
        &format!("{curve_name} weak Lefschetz"),
        ci.holds(),
        format!("failing degrees {:?}", ci.failing_degrees()),
    ));
    let li = &liaison_side.wlp;
    checks.push(Check::new(
        &format!("{liaison_name} weak Lefschetz failure"),
        li.failing_degrees().contains(&(s - 1)) && li.socle_explained == Some(true),
        format!("failing degrees {:?}, must include {}", li.failing_degrees(), s - 1),
    ));
    checks.push(Check::new(
        "strong incomparability",
        incomparability.is_strongly_incomparable(),
        format!("{incomparability:?}"),
    ));
    let expected_new = u64::from(inv.is_even());
    checks.push(Check::new(
        "liaison ideal generators in degree s+2",
        new_gens == expected_new,
        format!("{new_gens} found, {expected_new} expected"),
    ));
    checks.push(Check::new(
        "liaison ideal codimension in degree s+1",
        codim == target.get(s as usize + 1),
        format!("{codim} vs {}", target.get(s as usize + 1)),
    ));
    let j_gens_in_s = ek_betti(&liaison.j_prime)?.get(1, s);
    let expected_gens = if inv.is_even() { 2 } else { 1 };
    checks.push(Check::new(
        "generators of J' in degree s",
        j_gens_in_s == expected_gens,
        format!("{j_gens_in_s} found, {expected_gens} expected"),
    ));
    checks.push(Check::new(
        "complete intersection (F, Q)",
        liaison.ci_betti == expected_ci_betti(s),
        liaison.ci_betti.render_table(),
    ));

    let pair = WitnessPair {
        h_vector: delta_hbar.clone(),
        target,
        invariants: inv,
        table,
        curve_side,
        liaison_side,
        curve,
        liaison,
        liaison_codim_s_plus_1: codim,
        liaison_generators_s_plus_2: new_gens,
        checks,
        incomparability,
        window,
        prime: field.modulus(),
        seed: config.seed,
    };
    let failures = pair.failures();
    if failures.is_empty() {
        Ok(pair)
    } else {
        Err(ConstructionError::ConstraintCheckFailed { failures, pair: Box::new(pair) })
    }
}
