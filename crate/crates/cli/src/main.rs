use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use postulation_core::certificate::Timings;
use postulation_core::construction::{analyze, build_witness_pair, BuildConfig, ConstructionError, WitnessPair};
use postulation_core::lifting::{PointP3, PointSet, Provenance};
use postulation_core::oseq::{binomial_expansion, macaulay_bound, OSequence};
use postulation_core::scheme_engine::{hilbert_function, koszul_betti, wlp_check, EvaluationModel, GradedModel};
use postulation_core::{Certificate, PrimeField, DEFAULT_PRIME};

const EXIT_PARSE: u8 = 1;
const EXIT_ADMISSIBILITY: u8 = 2;
const EXIT_RETRY: u8 = 3;
const EXIT_CHECK: u8 = 4;

#[derive(Parser)]
#[command(name = "postulation", version, about = "Point sets in P3 with equal Hilbert functions and incomparable Betti diagrams")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the difference table and the derived invariants.
    Analyze {
        /// Comma-separated values. A trailing 0 makes the list finite,
        /// otherwise the last value repeats forever.
        #[arg(long)]
        hvector: String,
        /// Complete intersection type `a,b` to subtract instead of `2,s`.
        #[arg(long)]
        ci: Option<String>,
    },
    /// Build both witnesses and certify them.
    Verify {
        /// h-vector of the points, e.g. `1,3,6,9,11,11,11,0`.
        #[arg(long)]
        hvector: String,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Rebuild over this prime as well and compare the Betti diagrams.
        #[arg(long)]
        second_prime: Option<u64>,
        /// Where to write the JSON certificate.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Directory for one JSON point file per witness.
        #[arg(long)]
        points_out: Option<PathBuf>,
        /// Record wall-clock time in the certificate (breaks byte-identity).
        #[arg(long)]
        timings: bool,
    },
    /// Macaulay expansions and growth bounds.
    Macaulay {
        #[command(subcommand)]
        op: MacaulayOp,
    },
    /// Hilbert function, Betti diagram and WLP report of a point file.
    Betti {
        #[arg(long)]
        points: PathBuf,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum MacaulayOp {
    Expand {
        #[arg(long)]
        value: u64,
        #[arg(long)]
        degree: u32,
    },
    Bound {
        #[arg(long)]
        value: u64,
        #[arg(long)]
        degree: u32,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Failure { code: EXIT_PARSE, message: message.into() }
    }
}

impl From<ConstructionError> for Failure {
    fn from(e: ConstructionError) -> Self {
        let code = match &e {
            ConstructionError::RegularSequenceRetryExhausted { .. }
            | ConstructionError::TruncationSamplingExhausted { .. } => EXIT_RETRY,
            ConstructionError::ConstraintCheckFailed { .. } | ConstructionError::Scheme(_) => EXIT_CHECK,
            ConstructionError::Field(_) => EXIT_PARSE,
            _ => EXIT_ADMISSIBILITY,
        };
        Failure { code, message: e.to_string() }
    }
}

fn parse_list(s: &str) -> Result<Vec<u64>, Failure> {
    s.split(',')
        .map(|x| x.trim().parse::<u64>().map_err(|_| Failure::parse(format!("not a non-negative integer: {x:?}"))))
        .collect()
}

/// Trailing zeros end a finite sequence; anything else repeats its last value.
fn parse_sequence(s: &str, always_finite: bool) -> Result<OSequence, Failure> {
    let mut v = parse_list(s)?;
    if v.is_empty() {
        return Err(Failure::parse("empty h-vector"));
    }
    if always_finite || v.last() == Some(&0) {
        while v.last() == Some(&0) {
            v.pop();
        }
        return Ok(OSequence::finite(v));
    }
    let last = *v.last().unwrap();
    OSequence::eventually(v, last).map_err(|e| Failure::parse(e.to_string()))
}

fn parse_ci(s: &str) -> Result<(u32, u32), Failure> {
    let v = parse_list(s)?;
    match v[..] {
        [a, b] => Ok((a as u32, b as u32)),
        _ => Err(Failure::parse("--ci expects two integers a,b")),
    }
}

fn field(prime: u64) -> Result<PrimeField, Failure> {
    PrimeField::new(prime).map_err(|e| Failure::parse(e.to_string()))
}

fn run_analyze(hvector: &str, ci: Option<&str>) -> Result<(), Failure> {
    let h = parse_sequence(hvector, false)?;
    let ci = ci.map(parse_ci).transpose()?;
    let (inv, table) = analyze(&h, ci)?;
    println!("d = {}, t = {}, s = {}, complete intersection type ({}, {})", inv.d, inv.t, inv.s, inv.ci_type.0, inv.ci_type.1);
    if !inv.tail.is_empty() {
        println!("tail {:?}", inv.tail);
    }
    println!();
    print!("{}", table.render());
    println!();
    println!("second difference {}", table.second_difference);
    println!("e  {}", table.e);
    println!("e' {}", table.e_prime);
    println!("b_2 = 6: {}", table.claims.b2_is_6);
    println!("e is an O-sequence: {}", table.claims.e_is_o_sequence);
    if let Some(c3) = &table.claims.tail_component {
        println!("lex ideal of e saturated by x3: {}", c3.saturation);
    }
    Ok(())
}

fn file_name(witness: &str) -> String {
    format!("{}.json", witness.replace('\'', "_prime"))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::parse(format!("cannot write {}: {e}", path.display())))
}

#[allow(clippy::too_many_arguments)]
fn run_verify(
    hvector: &str,
    prime: u64,
    seed: u64,
    second_prime: Option<u64>,
    json: Option<&Path>,
    points_out: Option<&Path>,
    timings: bool,
) -> Result<(), Failure> {
    let h = parse_sequence(hvector, true)?;
    let config = BuildConfig { field: field(prime)?, seed, ..BuildConfig::default() };
    let start = Instant::now();
    let (pair, mut failure) = match build_witness_pair(&h, &config) {
        Ok(pair) => (pair, None),
        Err(ConstructionError::ConstraintCheckFailed { failures, pair }) => {
            let message = format!("checks failed: {}", failures.join("; "));
            (*pair, Some(Failure { code: EXIT_CHECK, message }))
        }
        Err(e) => return Err(e.into()),
    };
    let mut cert = Certificate::new(&pair);
    if let Some(q) = second_prime {
        let other = BuildConfig { field: field(q)?, seed, ..BuildConfig::default() };
        let rebuilt: WitnessPair = match build_witness_pair(&h, &other) {
            Ok(p) => p,
            Err(ConstructionError::ConstraintCheckFailed { pair, .. }) => *pair,
            Err(e) => return Err(e.into()),
        };
        cert.attach_characteristic_check(&rebuilt);
        let check = cert.characteristic_check.as_ref().unwrap();
        if !check.betti_agree && failure.is_none() {
            failure = Some(Failure {
                code: EXIT_CHECK,
                message: format!("Betti diagrams differ over F_{q} for {}", check.flagged.join(", ")),
            });
        }
    }
    if timings {
        cert = cert.with_timings(Timings { build_ms: start.elapsed().as_secs_f64() * 1000.0 });
    }
    print!("{}", cert.render_text());
    if let Some(path) = json {
        write_file(path, &cert.to_json())?;
    }
    if let Some(dir) = points_out {
        fs::create_dir_all(dir).map_err(|e| Failure::parse(format!("cannot create {}: {e}", dir.display())))?;
        for w in &cert.witnesses {
            let text = serde_json::to_string(&w.points).expect("points serialize");
            write_file(&dir.join(file_name(&w.name)), &text)?;
        }
    }
    match failure {
        Some(f) => Err(f),
        None => Ok(()),
    }
}

fn run_macaulay(op: &MacaulayOp) -> Result<(), Failure> {
    match *op {
        MacaulayOp::Expand { value, degree } => {
            let e = binomial_expansion(value, degree).map_err(|e| Failure::parse(e.to_string()))?;
            println!("{e}");
        }
        MacaulayOp::Bound { value, degree } => {
            let b = macaulay_bound(value, degree).map_err(|e| Failure::parse(e.to_string()))?;
            println!("{b}");
        }
    }
    Ok(())
}

fn load_points(path: &Path, field: PrimeField) -> Result<PointSet, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::parse(format!("cannot read {}: {e}", path.display())))?;
    let raw: PointSet = serde_json::from_str(&text).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?;
    let mut out = PointSet::new();
    for p in raw.points() {
        let reduced = p.coords().map(|c| c % field.modulus());
        let q = PointP3::normalized(field, reduced).ok_or_else(|| Failure::parse("point with x0 = 0 mod p"))?;
        if !out.push(q, Provenance::Loaded) {
            return Err(Failure::parse(format!("duplicate point {q} mod {}", field.modulus())));
        }
    }
    if out.is_empty() {
        return Err(Failure::parse("no points"));
    }
    Ok(out)
}

fn run_betti(path: &Path, prime: u64, seed: u64) -> Result<(), Failure> {
    let field = field(prime)?;
    let pts = load_points(path, field)?;
    let model = EvaluationModel::until_saturated(field, pts.points(), 3);
    let top = model.max_degree();
    let hf = hilbert_function(&model, top);
    let betti = koszul_betti(&model, top).map_err(|e| Failure { code: EXIT_CHECK, message: e.to_string() })?;
    let mut wlp = wlp_check(field, pts.points(), seed, 3).map_err(|e| Failure { code: EXIT_CHECK, message: e.to_string() })?;
    wlp.cross_check(&betti);
    println!("{} points, Hilbert function {hf}", pts.len());
    print!("{}", betti.render_table());
    let failing = wlp.failing_degrees();
    if failing.is_empty() {
        println!("WLP: maximal rank in every degree");
    } else {
        println!("WLP fails in degrees {failing:?}");
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_PARSE) } else { ExitCode::SUCCESS };
        }
    };
    let result = match &cli.command {
        Command::Analyze { hvector, ci } => run_analyze(hvector, ci.as_deref()),
        Command::Verify { hvector, prime, seed, second_prime, json, points_out, timings } => run_verify(
            hvector,
            *prime,
            *seed,
            *second_prime,
            json.as_deref(),
            points_out.as_deref(),
            *timings,
        ),
        Command::Macaulay { op } => run_macaulay(op),
        Command::Betti { points, prime, seed } => run_betti(points, *prime, *seed),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
