//! Acceptance suite. Prints one PASS/FAIL line per criterion and fails if any
//! criterion fails.

use std::collections::BTreeSet;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use postulation_core::betti::{strongly_incomparable, BettiDiagram, Incomparability};
use postulation_core::construction::{analyze, ci_difference, ConstructionError};
use postulation_core::lifting::{lift_points, Scalars};
use postulation_core::monomial_ideal::{ek_betti, lex_ideal};
use postulation_core::oseq::{binomial_expansion, is_o_sequence, macaulay_bound, OSequence};
use postulation_core::scheme_engine::{hilbert_function, koszul_betti, EvaluationModel, GradedModel};
use postulation_core::{stream, PrimeField, SECOND_PRIME};
use rand::Rng;
use serde_json::Value;

const D11: &str = "1,3,6,9,11,11,11,0";
const D17: &str = "1,3,6,10,14,16,17,17,17,17,0";
const TAIL_A: &str = "1,3,6,9,11,11,11,9,6,3,1";
const TAIL_B: &str = "1,3,6,9,11,11,11,10,8,8,5,5,5,4,3,3,1";

struct Run {
    code: i32,
    stdout: String,
    json: String,
    elapsed: Duration,
}

impl Run {
    fn cert(&self) -> Value {
        serde_json::from_str(&self.json).expect("certificate is JSON")
    }
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_postulation")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn verify(dir: &Path, h: &str, prime: u64, tag: &str) -> Run {
    let path = dir.join(format!("{tag}.json"));
    let prime = prime.to_string();
    let start = Instant::now();
    let (code, stdout, _) = cli(&["verify", "--hvector", h, "--prime", &prime, "--json", path.to_str().unwrap()]);
    let elapsed = start.elapsed();
    let json = std::fs::read_to_string(&path).unwrap_or_default();
    Run { code, stdout, json, elapsed }
}

fn witness(cert: &Value, k: usize) -> &Value {
    &cert["witnesses"][k]
}

fn betti(w: &Value) -> BettiDiagram {
    serde_json::from_value(w["betti"].clone()).unwrap()
}

fn hilbert(w: &Value) -> OSequence {
    serde_json::from_value(w["hilbert_function"].clone()).unwrap()
}

fn strongly(cert: &Value) -> bool {
    cert["incomparability"]["verdict"] == "strongly_incomparable"
}

fn invariant(cert: &Value, key: &str) -> u64 {
    cert["invariants"][key].as_u64().unwrap()
}

fn wlp_failing(w: &Value) -> Vec<u64> {
    match w["wlp"]["verdict"]["status"].as_str() {
        Some("fails") => w["wlp"]["verdict"]["degrees"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect(),
        _ => Vec::new(),
    }
}

/// Outcome of one criterion.
struct Verdict {
    failures: Vec<String>,
}

impl Verdict {
    fn new() -> Self {
        Verdict { failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }
}

/// `ΔH` of an ACM curve from random choices: the second difference is a
/// Hilbert function of `k[x, y]` modulo an Artinian ideal.
fn random_admissible(rng: &mut impl Rng) -> OSequence {
    loop {
        let mut second = vec![1u64];
        for i in 0..rng.gen_range(1..10) {
            let prev = *second.last().unwrap();
            let bound = if prev == i as u64 + 1 { prev + 1 } else { prev };
            let next = rng.gen_range(0..=bound);
            if next == 0 {
                break;
            }
            second.push(next);
        }
        let d: u64 = second.iter().sum();
        let t = second.len() as u64 - 1;
        if d > 3 && t < (d - 1) / 2 {
            let vals: Vec<u64> = second.iter().scan(0, |a, &c| { *a += c; Some(*a) }).collect();
            return OSequence::eventually(vals, d).unwrap();
        }
    }
}

fn column_descendants(col: [u64; 4]) -> BTreeSet<[u64; 4]> {
    let mut seen = BTreeSet::new();
    let mut stack = vec![col];
    while let Some(x) = stack.pop() {
        if seen.insert(x) {
            for i in 0..3 {
                if x[i] > 0 && x[i + 1] > 0 {
                    let mut y = x;
                    y[i] -= 1;
                    y[i + 1] -= 1;
                    stack.push(y);
                }
            }
        }
    }
    seen
}

fn column(b: &BettiDiagram, j: u32) -> [u64; 4] {
    [b.get(0, j), b.get(1, j), b.get(2, j), b.get(3, j)]
}

/// Brute force: a common descendant exists iff every degree has a common reachable column.
fn brute_force_common(a: &BettiDiagram, b: &BettiDiagram) -> bool {
    let top = a.max_degree().max(b.max_degree());
    (0..=top).all(|j| column_descendants(column(a, j)).intersection(&column_descendants(column(b, j))).next().is_some())
}

fn random_pair(rng: &mut impl Rng) -> (BettiDiagram, BettiDiagram) {
    let window = rng.gen_range(1..=5u32);
    let mut a = BettiDiagram::new();
    for i in 0..4 {
        for j in 0..=window {
            a.set(i, j, rng.gen_range(0..=3));
        }
    }
    let mut b = a.clone();
    for _ in 0..rng.gen_range(0..6) {
        let (i, j) = (rng.gen_range(0..3), rng.gen_range(0..=window));
        if rng.gen_bool(0.5) {
            if b.get(i, j) < 3 && b.get(i + 1, j) < 3 {
                b.add(i, j, 1);
                b.add(i + 1, j, 1);
            }
        } else if b.get(i, j) > 0 && b.get(i + 1, j) > 0 {
            b.set(i, j, b.get(i, j) - 1);
            b.set(i + 1, j, b.get(i + 1, j) - 1);
        }
    }
    (a, b)
}

#[test]
fn acceptance() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let mut results: Vec<(usize, &str, Verdict)> = Vec::new();
    // every diagram seen, with the Hilbert function it must match
    let mut diagrams: Vec<(String, BettiDiagram, OSequence, usize)> = Vec::new();

    // 1
    let mut v = Verdict::new();
    let start = Instant::now();
    let expansion = binomial_expansion(76, 5).unwrap().to_string();
    let bound = macaulay_bound(76, 5).unwrap();
    let elapsed = start.elapsed();
    v.check(expansion == "C(8,5)+C(6,4)+C(4,3)+C(2,2)", format!("expansion {expansion}"));
    v.check(bound == 111, format!("bound {bound}"));
    v.check(elapsed < Duration::from_millis(1), format!("took {elapsed:?}"));
    let (code, out, _) = cli(&["macaulay", "bound", "--value", "76", "--degree", "5"]);
    v.check(code == 0 && out.trim() == "111", format!("cli bound printed {out:?}"));
    results.push((1, "Macaulay expansion and bound of 76 in degree 5", v));

    // 2
    let mut v = Verdict::new();
    let r = verify(dir, D11, 32003, "d11");
    let c = r.cert();
    v.check(r.code == 0, format!("exit {}", r.code));
    v.check(r.elapsed < Duration::from_secs(30), format!("took {:?}", r.elapsed));
    let (z, zp) = (witness(&c, 0), witness(&c, 1));
    v.check(z["size"] == 52 && zp["size"] == 52, "witness sizes");
    let expected = OSequence::eventually(vec![1, 4, 10, 19, 30, 41, 52], 52).unwrap();
    v.check(hilbert(z) == expected && hilbert(zp) == expected, "Hilbert functions");
    let (bz, bzp) = (betti(z), betti(zp));
    v.check(bz.get(1, 7) == 11 && bzp.get(1, 7) == 10, "beta_{1,7}");
    v.check(bz.get(3, 7) == 0 && bzp.get(3, 7) == 1, "beta_{3,7}");
    let (t, s) = (invariant(&c, "t") as u32, invariant(&c, "s") as u32);
    v.check((1..=3).all(|i| bzp.get(i, s + i as u32) == 0), "row s of Z' not zero");
    v.check((t + 1..=s).all(|row| (1..=3).all(|i| bz.get(i, row + i as u32) == 0)), "rows t+1..s of Z not zero");
    v.check(strongly(&c), "verdict");
    v.check(wlp_failing(zp) == [4], format!("Z' fails WLP in {:?}", wlp_failing(zp)));
    let deg4 = &zp["wlp"]["degrees"][4];
    v.check(deg4["rank"] == 10 && deg4["dim"] == 11 && deg4["dim_next"] == 11, format!("degree 4 report {deg4}"));
    v.check(wlp_failing(z).is_empty() && z["wlp"]["verdict"]["status"] == "holds", "Z must have WLP");
    results.push((2, "d = 11 witnesses, 52 points", v));
    let mut runs = vec![("d11", D11, r)];

    // 3
    let mut v = Verdict::new();
    let r = verify(dir, D17, 32003, "d17");
    let c = r.cert();
    v.check(r.code == 0, format!("exit {}", r.code));
    v.check(r.elapsed < Duration::from_secs(60), format!("took {:?}", r.elapsed));
    v.check(witness(&c, 0)["size"] == 118 && witness(&c, 1)["size"] == 118, "witness sizes");
    v.check((invariant(&c, "d"), invariant(&c, "t"), invariant(&c, "s")) == (17, 6, 8), "invariants");
    let (bz, bzp) = (betti(witness(&c, 0)), betti(witness(&c, 1)));
    v.check(bz.get(1, 10) == 17 && bzp.get(1, 10) == 16, "beta_{1,10}");
    v.check(bz.get(3, 10) == 0 && bzp.get(3, 10) == 1, "beta_{3,10}");
    v.check(strongly(&c), "verdict");
    results.push((3, "d = 17 witnesses, 118 points", v));
    runs.push(("d17", D17, r));

    // 4
    let mut v = Verdict::new();
    for (tag, h, b) in [("tail_a", TAIL_A, 9u64), ("tail_b", TAIL_B, 10)] {
        let r = verify(dir, h, 32003, tag);
        let c = r.cert();
        v.check(r.code == 0, format!("{tag}: exit {}", r.code));
        v.check(r.elapsed < Duration::from_secs(60), format!("{tag}: took {:?}", r.elapsed));
        let (bz, bzp) = (betti(witness(&c, 0)), betti(witness(&c, 1)));
        v.check(bz.get(1, 7) == 11 - b, format!("{tag}: curve side has {} generators in degree 7", bz.get(1, 7)));
        v.check(bzp.get(1, 7) == 10 - b, format!("{tag}: liaison side has {} generators in degree 7", bzp.get(1, 7)));
        v.check(strongly(&c), format!("{tag}: verdict"));
        runs.push((tag, h, r));
    }
    results.push((4, "tails (9,6,3,1) and (10,8,8,5,5,5,4,3,3,1) after the d = 11 plateau", v));

    for (tag, _, r) in &runs {
        let c = r.cert();
        for k in 0..2 {
            let w = witness(&c, k);
            let window = c["invariants"]["s"].as_u64().unwrap() as usize + 1 + c["invariants"]["tail"].as_array().unwrap().len() + 3;
            diagrams.push((format!("{tag} {}", w["name"]), betti(w), hilbert(w), window + 1));
        }
    }

    // 5
    let mut v = Verdict::new();
    let field = PrimeField::default();
    let mut rng = stream(0, 5);
    for case in 0..20 {
        let (_, table) = analyze(&random_admissible(&mut rng), None).unwrap();
        let j = lex_ideal(&table.e_prime, 3).unwrap();
        let start = Instant::now();
        let pts = lift_points(&j, &Scalars::identity(), field).unwrap();
        let model = EvaluationModel::until_saturated(field, pts.points(), 3);
        let top = model.max_degree();
        let computed = koszul_betti(&model, top).unwrap();
        let elapsed = start.elapsed();
        v.check(computed == ek_betti(&j).unwrap(), format!("case {case}: e' = {}", table.e_prime));
        v.check(elapsed < Duration::from_secs(5), format!("case {case}: took {elapsed:?}"));
        let hf = hilbert_function(&model, top);
        diagrams.push((format!("lifted e' = {}", table.e_prime), computed, hf, top as usize + 1));
    }
    results.push((5, "lifted points have the Eliahou-Kervaire Betti numbers (20 seeded cases)", v));

    // 9, before 6 so its diagrams are counted too
    let mut v9 = Verdict::new();
    for (tag, h, r) in &runs {
        let other = verify(dir, h, SECOND_PRIME, &format!("{tag}_second"));
        v9.check(other.code == 0, format!("{tag}: exit {} over {SECOND_PRIME}", other.code));
        let (c, d) = (r.cert(), other.cert());
        for k in 0..2 {
            let (b1, b2) = (betti(witness(&c, k)), betti(witness(&d, k)));
            v9.check(b1 == b2, format!("{tag}: {} differs over {SECOND_PRIME}", witness(&c, k)["name"]));
            let w = witness(&d, k);
            let window = d["invariants"]["s"].as_u64().unwrap() as usize + 1 + d["invariants"]["tail"].as_array().unwrap().len() + 3;
            diagrams.push((format!("{tag} over {SECOND_PRIME}"), b2, hilbert(w), window + 1));
        }
    }

    // 6
    let mut v = Verdict::new();
    for (name, b, h, n) in &diagrams {
        v.check(b.check_hilbert_identity(&h.prefix(*n), 4).is_ok(), name.to_string());
    }
    v.check(diagrams.len() == 36, format!("expected 36 diagrams, saw {}", diagrams.len()));
    results.push((6, "alternating sums match the Hilbert series for every diagram produced", v));

    // 7
    let mut v = Verdict::new();
    let mut rng = stream(0, 7);
    let mut count = 0;
    while count < 250 {
        let h = random_admissible(&mut rng);
        let (_, table) = analyze(&h, None).unwrap();
        v.check(h.get(2) == 6, format!("b_2 != 6 for {h}"));
        v.check(is_o_sequence(&table.e).unwrap().passed(), format!("e-row of {h}"));
        count += 1;
    }
    let h29 = OSequence::eventually(vec![1, 3, 6, 10, 15, 19, 23, 26, 27, 28, 29], 29).unwrap();
    match analyze(&h29, Some((4, 7))) {
        Err(ConstructionError::NotOSequence { row, .. }) => {
            let ci = ci_difference(4, 7);
            let exact: Vec<u64> = (4..12).map(|k| h29.get(k) - ci.get(k)).collect();
            v.check(row[..8] == exact[..], format!("witness row {row:?}"));
            // the listed row (1,1,1,1,0,1,1,1) has a 1 in degree 9, where 28 - 28 = 0
            let listed = [1u64, 1, 1, 1, 0, 1, 1, 1];
            let differ: Vec<usize> = (0..8).filter(|&k| row[k] != listed[k]).collect();
            v.check(differ == [5] && h29.get(9) == ci.get(9), format!("row differs from the listed one at {differ:?}"));
        }
        other => v.check(false, format!("(4,7) not rejected: {:?}", other.map(|_| ()))),
    }
    let (code, _, err) = cli(&["analyze", "--hvector", "1,3,6,10,15,19,23,26,27,28,29,29", "--ci", "4,7"]);
    v.check(code == 2 && err.contains("e-row not an O-sequence"), format!("cli exit {code}: {err}"));
    results.push((7, "b_2 = 6 and O-sequence e-rows over 250 inputs; (4,7) rejected", v));

    // 8
    let mut v = Verdict::new();
    let mut rng = stream(0, 8);
    let start = Instant::now();
    let mut incomparable = 0;
    for case in 0..500 {
        let (a, b) = random_pair(&mut rng);
        let verdict = strongly_incomparable(&a, &b).unwrap();
        let oracle = brute_force_common(&a, &b);
        if let Incomparability::CommonDescendantExists(m) = &verdict {
            let top = a.max_degree().max(b.max_degree());
            let ok = (0..=top).all(|j| {
                column_descendants(column(&a, j)).contains(&column(m, j))
                    && column_descendants(column(&b, j)).contains(&column(m, j))
            });
            v.check(ok, format!("case {case}: reported meet is not a common descendant"));
        } else {
            incomparable += 1;
        }
        v.check(oracle != verdict.is_strongly_incomparable(), format!("case {case}: {a:?} vs {b:?}"));
    }
    let elapsed = start.elapsed();
    v.check(elapsed < Duration::from_secs(10), format!("took {elapsed:?}"));
    v.check(incomparable > 0 && incomparable < 500, format!("{incomparable} incomparable pairs, suite is degenerate"));
    results.push((8, "strong incomparability against brute force on 500 pairs", v));

    results.push((9, "identical Betti diagrams over the second prime", v9));

    // 10
    let mut v = Verdict::new();
    for (tag, h, r) in &runs {
        let again = verify(dir, h, 32003, &format!("{tag}_again"));
        v.check(again.json == r.json && !r.json.is_empty(), format!("{tag}: certificates differ"));
        v.check(again.stdout == r.stdout, format!("{tag}: output differs"));
    }
    results.push((10, "same seed, byte-identical certificates", v));

    results.sort_by_key(|r| r.0);
    let mut all = true;
    for (n, name, v) in &results {
        if v.failures.is_empty() {
            println!("criterion {n:>2} PASS  {name}");
        } else {
            all = false;
            println!("criterion {n:>2} FAIL  {name}: {}", v.failures.join("; "));
        }
    }
    assert!(all, "some acceptance criteria failed");
}
