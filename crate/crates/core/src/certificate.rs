//! JSON certificate for a witness pair. Text tables in it are renderings of
//! the JSON data, never computed separately.

use serde::Serialize;

use crate::betti::{BettiDiagram, ConstraintViolation, Incomparability, LAST_COLUMN};
use crate::construction::{Check, ConstructionInvariants, DifferenceTable, Witness, WitnessPair};
use crate::lifting::PointSet;
use crate::oseq::OSequence;
use crate::scheme_engine::WlpReport;

pub const SCHEMA: &str = "postulation-certificate/1";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Serialize)]
pub struct WitnessRecord {
    pub name: String,
    pub size: usize,
    pub points: PointSet,
    pub hilbert_function: OSequence,
    pub betti: BettiDiagram,
    pub betti_text: String,
    pub constraint_violations: Vec<ConstraintViolation>,
    pub wlp: WlpReport,
    pub sampling_attempts: u32,
}

impl From<&Witness> for WitnessRecord {
    fn from(w: &Witness) -> Self {
        WitnessRecord {
            name: w.name.clone(),
            size: w.points.len(),
            points: w.points.clone(),
            hilbert_function: w.hilbert.clone(),
            betti: w.betti.clone(),
            betti_text: w.betti.render_table(),
            constraint_violations: w.constraint_violations.clone(),
            wlp: w.wlp.clone(),
            sampling_attempts: w.sampling_attempts,
        }
    }
}

/// Data behind the two witnesses, rendered as text.
#[derive(Debug, Clone, Serialize)]
pub struct ConstructionRecord {
    /// Lex ideal in `k[x2, x3]` whose distraction is the curve `C`.
    pub curve_ideal: String,
    pub curve_lines: usize,
    /// Lex ideal in `k[x1, x2, x3]` lifted to `Y'`.
    pub j_prime: String,
    pub y_prime_size: usize,
    pub f: String,
    pub q: String,
    pub q_factors: [[u64; 4]; 2],
    pub q_attempts: u32,
    pub liaison_lines: usize,
    pub liaison_codim_s_plus_1: u64,
    pub liaison_generators_s_plus_2: u64,
}

/// A Betti number on which the two diagrams differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistinguishingEntry {
    pub column: usize,
    pub degree: u32,
    pub curve_side: u64,
    pub liaison_side: u64,
}

/// The same input rebuilt over another prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacteristicCheck {
    pub prime: u64,
    pub betti_agree: bool,
    /// Names of witnesses whose diagrams changed.
    pub flagged: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Timings {
    pub build_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub schema: String,
    pub tool_version: String,
    pub prime: u64,
    pub seed: u64,
    pub monomial_order: String,
    pub h_vector: OSequence,
    pub hilbert_function: OSequence,
    pub invariants: ConstructionInvariants,
    pub difference_table: DifferenceTable,
    pub difference_table_text: String,
    pub construction: ConstructionRecord,
    pub witnesses: Vec<WitnessRecord>,
    pub distinguishing_entries: Vec<DistinguishingEntry>,
    pub checks: Vec<Check>,
    pub incomparability: Incomparability,
    pub all_checks_passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub characteristic_check: Option<CharacteristicCheck>,
    pub caveats: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

fn distinguishing(a: &BettiDiagram, b: &BettiDiagram) -> Vec<DistinguishingEntry> {
    let top = a.max_degree().max(b.max_degree());
    let mut out = Vec::new();
    for degree in 0..=top {
        for column in 0..=LAST_COLUMN {
            let (x, y) = (a.get(column, degree), b.get(column, degree));
            if x != y {
                out.push(DistinguishingEntry { column, degree, curve_side: x, liaison_side: y });
            }
        }
    }
    out
}

impl Certificate {
    pub fn new(pair: &WitnessPair) -> Self {
        let caveats = vec![
            format!("all linear algebra is exact over F_{}; agreement with characteristic zero is not proved", pair.prime),
            "a WLP 'holds' verdict is evidence from random linear forms; a 'fails' verdict is a rank deficit in every trial".into(),
            "the uniform position property of the witnesses is not checked".into(),
        ];
        Certificate {
            schema: SCHEMA.into(),
            tool_version: TOOL_VERSION.into(),
            prime: pair.prime,
            seed: pair.seed,
            monomial_order: "lex, x1 > x2 > x3".into(),
            h_vector: pair.h_vector.clone(),
            hilbert_function: pair.target.clone(),
            invariants: pair.invariants.clone(),
            difference_table: pair.table.clone(),
            difference_table_text: pair.table.render(),
            construction: ConstructionRecord {
                curve_ideal: pair.curve.ideal.to_string(),
                curve_lines: pair.curve.lines.len(),
                j_prime: pair.liaison.j_prime.to_string(),
                y_prime_size: pair.liaison.y_prime.len(),
                f: pair.liaison.f.to_string(),
                q: pair.liaison.q.to_string(),
                q_factors: pair.liaison.q_factors,
                q_attempts: pair.liaison.q_attempts,
                liaison_lines: pair.liaison.lines.len(),
                liaison_codim_s_plus_1: pair.liaison_codim_s_plus_1,
                liaison_generators_s_plus_2: pair.liaison_generators_s_plus_2,
            },
            witnesses: vec![(&pair.curve_side).into(), (&pair.liaison_side).into()],
            distinguishing_entries: distinguishing(&pair.curve_side.betti, &pair.liaison_side.betti),
            checks: pair.checks.clone(),
            incomparability: pair.incomparability.clone(),
            all_checks_passed: pair.checks.iter().all(|c| c.passed),
            characteristic_check: None,
            caveats,
            timings: None,
        }
    }

    /// Compares against the same build over another prime.
    pub fn attach_characteristic_check(&mut self, other: &WitnessPair) {
        let mut flagged = Vec::new();
        for (mine, theirs) in self.witnesses.iter().zip([&other.curve_side, &other.liaison_side]) {
            if mine.betti != theirs.betti {
                flagged.push(mine.name.clone());
            }
        }
        self.characteristic_check =
            Some(CharacteristicCheck { prime: other.prime, betti_agree: flagged.is_empty(), flagged });
    }

    pub fn with_timings(mut self, timings: Timings) -> Self {
        self.timings = Some(timings);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    /// Human-readable summary for the terminal.
    pub fn render_text(&self) -> String {
        let inv = &self.invariants;
        let mut out = format!(
            "h-vector {}  (d = {}, t = {}, s = {}, prime {}, seed {})\n\n{}\n",
            self.h_vector, inv.d, inv.t, inv.s, self.prime, self.seed, self.difference_table_text
        );
        for w in &self.witnesses {
            out.push_str(&format!("{} ({} points), Hilbert function {}\n{}\n", w.name, w.size, w.hilbert_function, w.betti_text));
            let failing: Vec<String> = w
                .wlp
                .degrees
                .iter()
                .filter(|d| !d.is_maximal())
                .map(|d| format!("degree {} (rank {} vs {}/{})", d.degree, d.rank, d.dim, d.dim_next))
                .collect();
            if failing.is_empty() {
                out.push_str("  WLP: maximal rank in every degree\n\n");
            } else {
                out.push_str(&format!("  WLP fails in {}\n\n", failing.join(", ")));
            }
        }
        for e in &self.distinguishing_entries {
            out.push_str(&format!(
                "beta_{{{},{}}}: {} vs {}\n",
                e.column, e.degree, e.curve_side, e.liaison_side
            ));
        }
        out.push_str(&format!("verdict: {}\n", match &self.incomparability {
            Incomparability::StronglyIncomparable => "strongly incomparable".to_string(),
            Incomparability::CommonDescendantExists(_) => "a common descendant exists".to_string(),
        }));
        if let Some(c) = &self.characteristic_check {
            out.push_str(&format!(
                "over F_{}: {}\n",
                c.prime,
                if c.betti_agree { "identical Betti diagrams".to_string() } else { format!("diagrams differ for {}", c.flagged.join(", ")) }
            ));
        }
        for c in self.checks.iter().filter(|c| !c.passed) {
            out.push_str(&format!("FAILED {}: {}\n", c.name, c.detail));
        }
        out
    }
}
