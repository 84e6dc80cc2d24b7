//! Command-line front end: construct and certify exact sequences, compute
//! codimensions, decide transversality, analyze fillings, and run the full
//! verification sweep.
//!
//! Exit codes: 0 on success, 1 when a certificate fails, 2 on invalid input.

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use splitloci::construction::{build, ExactSequence, Provenance};
use splitloci::exactness::{self, ExactnessReport};
use splitloci::fillings::{
    component_lower_bound, enumerate_fillings, filling_upper_bound, is_minimal, Filling,
    TangentSplitting,
};
use splitloci::polyring::{rat, Rational};
use splitloci::splitting::{dim_mor, enumerate_pairs, SplittingPair, SplittingType};
use splitloci::transversality::{self, TransversalityReport};
use std::fmt::Write as _;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "splitloci",
    version,
    about = "Exact sequences and splitting-type loci of maps from the projective line to G(r,n)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the monomial matrices u, v realizing a splitting pair
    Construct(InstanceArgs),
    /// Construct and certify exactness (composition, minors, point ranks)
    Verify(InstanceArgs),
    /// Construct and decide surjectivity of the intersection differential
    Transversal(InstanceArgs),
    /// Codimensions of the two strata and their intersection, plus dim Mor
    Codim(InstanceArgs),
    /// Enumerate fillings of a tangent splitting with realizability and minimality
    Fillings(TangentArgs),
    /// Component-count bounds for a tangent splitting
    Components(TangentArgs),
    /// Run the full certification sweep over small (n, r, e)
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct InstanceArgs {
    /// Ambient rank n (number of copies of O in the middle term)
    #[arg(long)]
    n: usize,
    /// Sub-bundle splitting type a, comma-separated, any order
    #[arg(long)]
    a: String,
    /// Quotient splitting type b, comma-separated, any order
    #[arg(long)]
    b: String,
    /// Optional cross-check: rank r must equal the number of a-parts
    #[arg(long)]
    r: Option<usize>,
    /// Optional cross-check: degree e must equal sum(a) = sum(b)
    #[arg(long)]
    e: Option<i64>,
    /// Seed for the rank sample points (default: fixed built-in points)
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct TangentArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: usize,
    /// Tangent splitting type c: r(n-r) integers, comma-separated, any order
    #[arg(long)]
    c: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 8)]
    max_n: usize,
    #[arg(long, default_value_t = 6)]
    max_e: i64,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

/// Invalid input (exit 2) as opposed to a failed certificate (exit 1).
struct InputError(String);

fn parse_list(s: &str, what: &str) -> Result<Vec<i64>, InputError> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| InputError(format!("{what}: `{t}` is not an integer")))
        })
        .collect()
}

fn parse_pair(args: &InstanceArgs) -> Result<SplittingPair, InputError> {
    let a = parse_list(&args.a, "--a")?;
    let b = parse_list(&args.b, "--b")?;
    if let Some(r) = args.r {
        if r != a.len() {
            return Err(InputError(format!(
                "--r {} does not match the {} parts of --a",
                r,
                a.len()
            )));
        }
    }
    let sub = SplittingType::new(a).map_err(|e| InputError(format!("--a: {e}")))?;
    let quot = SplittingType::new(b).map_err(|e| InputError(format!("--b: {e}")))?;
    let pair = SplittingPair::new(args.n, sub, quot).map_err(|e| InputError(e.to_string()))?;
    if let Some(e) = args.e {
        if e != pair.degree() {
            return Err(InputError(format!(
                "--e {} does not match the common sum {}",
                e,
                pair.degree()
            )));
        }
    }
    Ok(pair)
}

fn parse_tangent(args: &TangentArgs) -> Result<TangentSplitting, InputError> {
    let c = parse_list(&args.c, "--c")?;
    TangentSplitting::new(args.r, args.n, c).map_err(|e| InputError(e.to_string()))
}

/// Sample points (1, t) drawn from a seeded stream; distinct t values.
fn sample_points(seed: Option<u64>) -> Vec<(Rational, Rational)> {
    let Some(seed) = seed else {
        return exactness::default_sample_points();
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ts: Vec<Rational> = Vec::new();
    while ts.len() < 6 {
        let t = rat(rng.gen_range(-60..=60), rng.gen_range(1..=11));
        if !ts.contains(&t) {
            ts.push(t);
        }
    }
    ts.into_iter().map(|t| (rat(1, 1), t)).collect()
}

fn both_orders(t: &SplittingType) -> (Vec<i64>, Vec<i64>) {
    (t.parts_desc(), t.parts_asc().to_vec())
}

#[derive(Serialize)]
struct PairHeader {
    n: usize,
    r: usize,
    e: i64,
    a_nonincreasing: Vec<i64>,
    a_nondecreasing: Vec<i64>,
    b_nonincreasing: Vec<i64>,
    b_nondecreasing: Vec<i64>,
}

impl PairHeader {
    fn of(pair: &SplittingPair) -> Self {
        let (ad, aa) = both_orders(&pair.sub);
        let (bd, ba) = both_orders(&pair.quot);
        PairHeader {
            n: pair.n,
            r: pair.r,
            e: pair.degree(),
            a_nonincreasing: ad,
            a_nondecreasing: aa,
            b_nonincreasing: bd,
            b_nondecreasing: ba,
        }
    }

    fn render(&self, out: &mut String) {
        let _ = writeln!(out, "n = {}, r = {}, e = {}", self.n, self.r, self.e);
        let _ = writeln!(
            out,
            "a (non-increasing): {:?}   a (non-decreasing): {:?}",
            self.a_nonincreasing, self.a_nondecreasing
        );
        let _ = writeln!(
            out,
            "b (non-increasing): {:?}   b (non-decreasing): {:?}",
            self.b_nonincreasing, self.b_nondecreasing
        );
    }
}

fn matrix_cells(m: &splitloci::MonomialMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect())
        .collect()
}

#[derive(Serialize)]
struct ConstructReport {
    #[serde(flatten)]
    header: PairHeader,
    provenance: Provenance,
    v: Vec<Vec<String>>,
    u: Vec<Vec<String>>,
}

impl ConstructReport {
    fn of(seq: &ExactSequence) -> Self {
        ConstructReport {
            header: PairHeader::of(&seq.pair),
            provenance: seq.provenance,
            v: matrix_cells(&seq.v),
            u: matrix_cells(&seq.u),
        }
    }

    fn render(&self, seq: &ExactSequence) -> String {
        let mut out = String::new();
        self.header.render(&mut out);
        let _ = writeln!(out, "provenance: {:?}", self.provenance);
        let _ = writeln!(out, "v =\n{}", seq.v.render());
        let _ = writeln!(out, "u =\n{}", seq.u.render());
        out
    }
}

#[derive(Serialize)]
struct VerifyReport {
    #[serde(flatten)]
    construct: ConstructReport,
    exactness: ExactnessReport,
}

#[derive(Serialize)]
struct TransversalReport {
    #[serde(flatten)]
    header: PairHeader,
    balanced_shortcut_applies: bool,
    transversality: TransversalityReport,
}

#[derive(Serialize)]
struct CodimReport {
    #[serde(flatten)]
    header: PairHeader,
    codim_sub_stratum: u64,
    codim_quot_stratum: u64,
    codim_intersection: u64,
    dim_mor: i64,
}

#[derive(Serialize)]
struct FillingEntry {
    grid: Vec<Vec<i64>>,
    realizable: bool,
    derived_a_nondecreasing: Option<Vec<i64>>,
    derived_b_nondecreasing: Option<Vec<i64>>,
    minimal: bool,
}

#[derive(Serialize)]
struct FillingsReport {
    n: usize,
    r: usize,
    c_nondecreasing: Vec<i64>,
    fillings: Vec<FillingEntry>,
    count: usize,
    realizable_count: usize,
    minimal_count: usize,
    component_lower_bound: usize,
    filling_upper_bound: u128,
}

#[derive(Serialize)]
struct ComponentsReport {
    n: usize,
    r: usize,
    c_nondecreasing: Vec<i64>,
    component_lower_bound: usize,
    filling_upper_bound: u128,
}

#[derive(Serialize)]
struct SweepFailure {
    n: usize,
    a_nonincreasing: Vec<i64>,
    b_nonincreasing: Vec<i64>,
    stage: String,
}

#[derive(Serialize)]
struct SweepReport {
    max_n: usize,
    max_e: i64,
    instances: usize,
    failures: Vec<SweepFailure>,
    ok: bool,
}

fn emit<T: Serialize>(format: Format, report: &T, text: String) {
    match format {
        Format::Text => print!("{text}"),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(report).expect("report serialization")
        ),
    }
}

fn run() -> Result<ExitCode, InputError> {
    let cli = Cli::parse();
    match cli.command {
        Command::Construct(args) => {
            let pair = parse_pair(&args)?;
            let seq = build(&pair).map_err(|e| InputError(e.to_string()))?;
            let report = ConstructReport::of(&seq);
            let text = report.render(&seq);
            emit(args.format, &report, text);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(args) => {
            let pair = parse_pair(&args)?;
            let seq = build(&pair).map_err(|e| InputError(e.to_string()))?;
            let pts = sample_points(args.seed);
            let construct = ConstructReport::of(&seq);
            let exact = exactness::verify(&seq, &pts);
            let mut text = construct.render(&seq);
            let _ = writeln!(text, "compose_zero: {}", exact.compose_zero);
            let _ = writeln!(
                text,
                "certificate minors: {}, {}, {}, {} (ok: {})",
                exact.minor_v_first,
                exact.minor_v_second,
                exact.minor_u_first,
                exact.minor_u_second,
                exact.minors_ok
            );
            let _ = writeln!(text, "point ranks ok: {}", exact.point_ranks_ok);
            let _ = writeln!(text, "verdict: {}", exact.verdict);
            let verdict = exact.verdict;
            emit(
                args.format,
                &VerifyReport {
                    construct,
                    exactness: exact,
                },
                text,
            );
            Ok(if verdict {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Transversal(args) => {
            let pair = parse_pair(&args)?;
            let seq = build(&pair).map_err(|e| InputError(e.to_string()))?;
            let shortcut = transversality::balanced_shortcut(&pair).is_some();
            let mut rep = transversality::is_surjective(&seq);
            rep.witness_checked = transversality::solver_surjectivity_oracle(&seq);
            let header = PairHeader::of(&pair);
            let mut text = String::new();
            header.render(&mut text);
            let _ = writeln!(
                text,
                "dim Hom(K,E) = {}, dim domain = {}",
                rep.dims.dim_hom_k_e,
                rep.dims.dim_hom_k_on + rep.dims.dim_hom_on_e
            );
            let _ = writeln!(text, "rank = {}", rep.rank);
            let _ = writeln!(text, "balanced shortcut applies: {shortcut}");
            let _ = writeln!(text, "solver witness checked: {}", rep.witness_checked);
            let _ = writeln!(text, "surjective: {}", rep.surjective);
            let ok = rep.surjective && rep.witness_checked;
            emit(
                args.format,
                &TransversalReport {
                    header,
                    balanced_shortcut_applies: shortcut,
                    transversality: rep,
                },
                text,
            );
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Codim(args) => {
            let pair = parse_pair(&args)?;
            let header = PairHeader::of(&pair);
            let report = CodimReport {
                codim_sub_stratum: pair.sub.ext1_self(),
                codim_quot_stratum: pair.quot.ext1_self(),
                codim_intersection: pair.codim_intersection(),
                dim_mor: dim_mor(pair.r, pair.n, pair.degree()),
                header,
            };
            let mut text = String::new();
            report.header.render(&mut text);
            let _ = writeln!(text, "codim of the a-stratum: {}", report.codim_sub_stratum);
            let _ = writeln!(text, "codim of the b-stratum: {}", report.codim_quot_stratum);
            let _ = writeln!(text, "codim of the intersection: {}", report.codim_intersection);
            let _ = writeln!(text, "dim Mor = {}", report.dim_mor);
            emit(args.format, &report, text);
            Ok(ExitCode::SUCCESS)
        }
        Command::Fillings(args) => {
            let c = parse_tangent(&args)?;
            let all = enumerate_fillings(&c);
            let entries: Vec<FillingEntry> = all
                .iter()
                .map(|f| filling_entry(f, &all))
                .collect();
            let report = FillingsReport {
                n: c.n,
                r: c.r,
                c_nondecreasing: c.parts().to_vec(),
                count: entries.len(),
                realizable_count: entries.iter().filter(|e| e.realizable).count(),
                minimal_count: entries.iter().filter(|e| e.minimal).count(),
                component_lower_bound: component_lower_bound(&c),
                filling_upper_bound: filling_upper_bound(c.r, c.n),
                fillings: entries,
            };
            let mut text = String::new();
            let _ = writeln!(
                text,
                "n = {}, r = {}, c = {:?}",
                report.n, report.r, report.c_nondecreasing
            );
            for (k, e) in report.fillings.iter().enumerate() {
                let _ = writeln!(text, "filling {}:", k + 1);
                for row in &e.grid {
                    let _ = writeln!(text, "  {row:?}");
                }
                let _ = writeln!(
                    text,
                    "  realizable: {}, minimal: {}",
                    e.realizable, e.minimal
                );
                if let (Some(a), Some(b)) =
                    (&e.derived_a_nondecreasing, &e.derived_b_nondecreasing)
                {
                    let _ = writeln!(text, "  derived a: {a:?}, b: {b:?}");
                }
            }
            let _ = writeln!(
                text,
                "{} fillings ({} realizable, {} minimal); component lower bound {}, filling upper bound {}",
                report.count,
                report.realizable_count,
                report.minimal_count,
                report.component_lower_bound,
                report.filling_upper_bound
            );
            emit(args.format, &report, text);
            Ok(ExitCode::SUCCESS)
        }
        Command::Components(args) => {
            let c = parse_tangent(&args)?;
            let report = ComponentsReport {
                n: c.n,
                r: c.r,
                c_nondecreasing: c.parts().to_vec(),
                component_lower_bound: component_lower_bound(&c),
                filling_upper_bound: filling_upper_bound(c.r, c.n),
            };
            let text = format!(
                "n = {}, r = {}, c = {:?}\ncomponent lower bound: {}\nfilling upper bound: {}\n",
                report.n,
                report.r,
                report.c_nondecreasing,
                report.component_lower_bound,
                report.filling_upper_bound
            );
            emit(args.format, &report, text);
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep(args) => {
            if args.max_n < 4 || args.max_e < 1 {
                return Err(InputError("sweep needs --max-n >= 4 and --max-e >= 1".into()));
            }
            let pts = sample_points(args.seed);
            let mut failures = Vec::new();
            let mut instances = 0usize;
            let mut text = String::new();
            for n in 4..=args.max_n {
                for r in 2..=n - 2 {
                    for e in 1..=args.max_e {
                        for pair in enumerate_pairs(r, n, e) {
                            instances += 1;
                            if let Some(stage) = check_instance(&pair, &pts) {
                                failures.push(SweepFailure {
                                    n,
                                    a_nonincreasing: pair.sub.parts_desc(),
                                    b_nonincreasing: pair.quot.parts_desc(),
                                    stage,
                                });
                            }
                        }
                    }
                }
                let _ = writeln!(
                    text,
                    "n = {n}: cumulative {} instances, {} failures",
                    instances,
                    failures.len()
                );
            }
            let report = SweepReport {
                max_n: args.max_n,
                max_e: args.max_e,
                instances,
                ok: failures.is_empty(),
                failures,
            };
            let _ = writeln!(
                text,
                "sweep: {} instances, {} failures -> {}",
                report.instances,
                report.failures.len(),
                if report.ok { "ok" } else { "FAILED" }
            );
            for f in &report.failures {
                let _ = writeln!(
                    text,
                    "  n={} a={:?} b={:?}: {}",
                    f.n, f.a_nonincreasing, f.b_nonincreasing, f.stage
                );
            }
            let ok = report.ok;
            emit(args.format, &report, text);
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
    }
}

fn filling_entry(f: &Filling, all: &[Filling]) -> FillingEntry {
    let (a, b) = match &f.derived {
        Some((a, b)) => (Some(a.parts_asc().to_vec()), Some(b.parts_asc().to_vec())),
        None => (None, None),
    };
    FillingEntry {
        grid: f.grid.clone(),
        realizable: f.realizable,
        derived_a_nondecreasing: a,
        derived_b_nondecreasing: b,
        minimal: is_minimal(f, all).unwrap_or(false),
    }
}

/// One sweep instance: build, certify exactness, certify transversality by
/// rank and by the back-substitution witness. Returns the failing stage.
fn check_instance(pair: &SplittingPair, pts: &[(Rational, Rational)]) -> Option<String> {
    let seq = match build(pair) {
        Ok(seq) => seq,
        Err(e) => return Some(format!("construction: {e}")),
    };
    if !seq.u.ledger_ok() || !seq.v.ledger_ok() {
        return Some("construction: degree ledger violated".into());
    }
    let exact = exactness::verify(&seq, pts);
    if !exact.verdict {
        return Some(format!(
            "exactness: compose_zero={} minors_ok={} point_ranks_ok={}",
            exact.compose_zero, exact.minors_ok, exact.point_ranks_ok
        ));
    }
    let trans = transversality::is_surjective(&seq);
    if !trans.surjective {
        return Some(format!(
            "transversality: rank {} < {}",
            trans.rank, trans.dims.dim_hom_k_e
        ));
    }
    if !transversality::solver_surjectivity_oracle(&seq) {
        return Some("transversality: solver witness failed".into());
    }
    if let Some(true) = transversality::balanced_shortcut(pair) {
        // rank verdict must agree with the shortcut; already known surjective
    }
    None
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
