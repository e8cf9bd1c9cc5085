//! `stuffle`: enumerate Lyndon words, build PBW bases, convert between
//! `Sym`/`QSym` bases and run the verification suites from the shell.

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use stuffle::bases::{basis_element, Family};
use stuffle::checks::{run_suite, CheckResult, SuiteConfig};
use stuffle::factorization::{verify_factorization, FactorizationReport, Pair};
use stuffle::lyndon::lyndon_up_to;
use stuffle::symqsym::{hall_littlewood_report, pairing_ext, QSymBasis, QSymElement, SymBasis, SymElement};
use stuffle::{Poly, ProductKind, Rational, Scalar, Word};

const WEIGHT_CAP: u32 = 8;

#[derive(Parser, Debug)]
#[command(name = "stuffle", version, about = "Shuffle and stuffle Hopf algebras on words")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Largest weight to enumerate or verify.
    #[arg(long, global = true, default_value_t = 5)]
    max_weight: u32,
    /// Allow --max-weight above 8.
    #[arg(long, global = true)]
    unsafe_weight: bool,
    /// Number of q-series coefficients kept (work modulo q^D).
    #[arg(long, global = true, default_value_t = 8)]
    q_degree: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for the randomized sweeps of `verify`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum Kind {
    Concat,
    Shuffle,
    Stuffle,
}

impl From<Kind> for ProductKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Concat => ProductKind::Concat,
            Kind::Shuffle => ProductKind::Shuffle,
            Kind::Stuffle => ProductKind::Stuffle,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lyndon words up to --max-weight, one per line.
    Lyndon,
    /// One element of a PBW basis or its dual.
    Basis {
        /// p, s, Pi, Sigma, PiL, SigmaL, PiR or SigmaR.
        #[arg(long)]
        family: String,
        /// Word as space separated letter indices, e.g. "2 1".
        #[arg(long)]
        word: String,
    },
    /// Product of two polynomials, e.g. --left "[1]" --right "[2] + 1".
    Product {
        #[arg(long, value_enum, default_value_t = Kind::Stuffle)]
        kind: Kind,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Change of basis in Sym (S, Lambda, Psi, Phi, Rib) or QSym (M, F).
    Convert {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// Element such as "(2)", "2·(1,1) - (2)" or "Psi:(1,2)".
        #[arg(long)]
        element: String,
    },
    /// Duality pairing between Sym and QSym.
    Pair {
        #[arg(long)]
        sym: String,
        #[arg(long)]
        qsym: String,
    },
    /// Full invariant suite up to --max-weight.
    Verify,
    /// Compare the diagonal series with the ordered product of exponentials.
    Factorize {
        /// shuffle, stuffle, L or R.
        #[arg(long, default_value = "stuffle")]
        pair: String,
        /// Use the deliberately mismatched variant of the pair.
        #[arg(long)]
        negative_control: bool,
    },
    /// Ordered product of σ(A; q^n) against M_I(1, q, q², ...).
    HlCheck,
}

/// Failures surfaced as exit codes: `Usage` is 2, `Failed` is 1.
enum Outcome {
    Ok(String),
    Failed(String),
    Usage(String),
}

fn usage<E: std::fmt::Display>(e: E) -> Outcome {
    Outcome::Usage(e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let (text, code) = match run(&cli) {
        Outcome::Ok(s) => (s, 0),
        Outcome::Failed(s) => (s, 1),
        Outcome::Usage(s) => {
            eprintln!("error: {s}");
            return ExitCode::from(2);
        }
    };
    let mut out = io::stdout().lock();
    let _ = out.write_all(text.as_bytes());
    if !text.ends_with('\n') {
        let _ = out.write_all(b"\n");
    }
    ExitCode::from(code)
}

fn run(cli: &Cli) -> Outcome {
    let c = &cli.common;
    if c.max_weight > WEIGHT_CAP && !c.unsafe_weight {
        return Outcome::Usage(format!("--max-weight {} exceeds {WEIGHT_CAP}; pass --unsafe-weight", c.max_weight));
    }
    match &cli.command {
        Command::Lyndon => lyndon(c),
        Command::Basis { family, word } => basis(c, family, word),
        Command::Product { kind, left, right } => product(c, (*kind).into(), left, right),
        Command::Convert { from, to, element } => convert(c, from, to, element),
        Command::Pair { sym, qsym } => pair(c, sym, qsym),
        Command::Verify => verify(c),
        Command::Factorize { pair, negative_control } => factorize(c, pair, *negative_control),
        Command::HlCheck => hl_check(c),
    }
}

fn json<T: Serialize + ?Sized>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("plain data always serializes")
}

fn csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

#[derive(Serialize)]
struct LyndonRow {
    word: String,
    weight: u32,
    length: usize,
}

fn lyndon(c: &Common) -> Outcome {
    let words = lyndon_up_to(c.max_weight);
    let rows: Vec<LyndonRow> =
        words.iter().map(|w| LyndonRow { word: w.to_string(), weight: w.weight(), length: w.len() }).collect();
    Outcome::Ok(match c.format {
        Format::Text => rows.iter().map(|r| format!("{}\n", r.word)).collect(),
        Format::Json => json(&rows),
        Format::Csv => csv(
            &["word", "weight", "length"],
            rows.iter().map(|r| vec![r.word.clone(), r.weight.to_string(), r.length.to_string()]),
        ),
    })
}

fn poly_output(c: &Common, p: &Poly) -> String {
    match c.format {
        Format::Text => p.to_string(),
        Format::Json => json(&p.to_json_terms()),
        Format::Csv => csv(
            &["word", "coeff"],
            p.to_json_terms().into_iter().map(|t| vec![Word::from_indices(&t.word).to_string(), t.coeff]),
        ),
    }
}

fn check_weight(c: &Common, w: u32) -> Option<Outcome> {
    (w > WEIGHT_CAP && !c.unsafe_weight)
        .then(|| Outcome::Usage(format!("weight {w} exceeds {WEIGHT_CAP}; pass --unsafe-weight")))
}

fn basis(c: &Common, family: &str, word: &str) -> Outcome {
    let family: Family = match family.parse() {
        Ok(f) => f,
        Err(e) => return usage(e),
    };
    let w: Word = match word.parse() {
        Ok(w) => w,
        Err(e) => return usage(e),
    };
    if let Some(o) = check_weight(c, w.weight()) {
        return o;
    }
    match basis_element::<Rational>(family, &w) {
        Ok(p) => Outcome::Ok(poly_output(c, &p)),
        Err(e) => usage(e),
    }
}

fn product(c: &Common, kind: ProductKind, left: &str, right: &str) -> Outcome {
    let (a, b): (Poly, Poly) = match (left.parse(), right.parse()) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return usage(e),
    };
    let w = a.max_weight().unwrap_or(0) + b.max_weight().unwrap_or(0);
    if let Some(o) = check_weight(c, w) {
        return o;
    }
    Outcome::Ok(poly_output(c, &a.product(&b, kind)))
}

enum Basis {
    Sym(SymBasis),
    QSym(QSymBasis),
}

fn parse_basis(s: &str) -> Result<Basis, String> {
    s.parse::<SymBasis>()
        .map(Basis::Sym)
        .or_else(|_| s.parse::<QSymBasis>().map(Basis::QSym))
        .map_err(|_| format!("unknown basis {s:?}; expected S, Lambda, Psi, Phi, Rib, M or F"))
}

fn element_output<B: stuffle::symqsym::BasisTag>(c: &Common, x: &stuffle::symqsym::CompElement<B, Rational>) -> String {
    match c.format {
        Format::Text => x.to_string(),
        Format::Json => json(&x.to_json_terms()),
        Format::Csv => csv(
            &["basis", "composition", "coeff"],
            x.to_json_terms()
                .into_iter()
                .map(|t| vec![t.basis, stuffle::Composition::new(&t.composition).to_string(), t.coeff]),
        ),
    }
}

fn convert(c: &Common, from: &str, to: &str, element: &str) -> Outcome {
    let (from, to) = match (parse_basis(from), parse_basis(to)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return Outcome::Usage(e),
    };
    match (from, to) {
        (Basis::Sym(a), Basis::Sym(b)) => match SymElement::<Rational>::parse_with_default(element, Some(a)) {
            Ok(x) => Outcome::Ok(element_output(c, &x.convert(b))),
            Err(e) => usage(e),
        },
        (Basis::QSym(a), Basis::QSym(b)) => match QSymElement::<Rational>::parse_with_default(element, Some(a)) {
            Ok(x) => Outcome::Ok(element_output(c, &x.convert(b))),
            Err(e) => usage(e),
        },
        _ => Outcome::Usage("cannot convert between Sym and QSym".into()),
    }
}

fn pair(c: &Common, sym: &str, qsym: &str) -> Outcome {
    let x = match SymElement::<Rational>::parse_with_default(sym, Some(SymBasis::S)) {
        Ok(x) => x,
        Err(e) => return usage(e),
    };
    let y = match QSymElement::<Rational>::parse_with_default(qsym, Some(QSymBasis::M)) {
        Ok(y) => y,
        Err(e) => return usage(e),
    };
    let v = pairing_ext(&x, &y);
    Outcome::Ok(match c.format {
        Format::Text => v.to_string(),
        Format::Json => {
            json(&serde_json::json!({ "sym": x.to_string(), "qsym": y.to_string(), "value": v.to_fraction_string() }))
        }
        Format::Csv => csv(&["sym", "qsym", "value"], [vec![x.to_string(), y.to_string(), v.to_fraction_string()]]),
    })
}

fn checks_output(c: &Common, results: &[CheckResult]) -> Outcome {
    let text = match c.format {
        Format::Text => {
            let width = results.iter().map(|r| r.check.len()).max().unwrap_or(0);
            let mut s: String = results
                .iter()
                .map(|r| format!("{:<4}  {:<width$}  {}\n", r.status.to_string().to_uppercase(), r.check, r.detail))
                .collect();
            let passed = results.iter().filter(|r| r.passed()).count();
            s.push_str(&format!("{passed}/{} checks passed\n", results.len()));
            s
        }
        Format::Json => json(results),
        Format::Csv => csv(
            &["check", "status", "detail"],
            results.iter().map(|r| vec![r.check.clone(), r.status.to_string(), r.detail.clone()]),
        ),
    };
    if results.iter().all(|r| r.passed()) {
        Outcome::Ok(text)
    } else {
        Outcome::Failed(text)
    }
}

fn verify(c: &Common) -> Outcome {
    let cfg = SuiteConfig { max_weight: c.max_weight, q_degree: c.q_degree, seed: c.seed };
    checks_output(c, &run_suite::<Rational>(cfg))
}

#[derive(Serialize)]
struct JsonMismatch {
    left: String,
    right: String,
    expected: String,
    actual: String,
}

#[derive(Serialize)]
struct JsonReport {
    pair: String,
    dual: String,
    primal: String,
    product: String,
    max_weight: u32,
    holds: bool,
    mismatch_count: usize,
    first_bad_weight: Option<u32>,
    mismatches: Vec<JsonMismatch>,
}

fn report_json(pair: Pair, r: &FactorizationReport<Rational>) -> JsonReport {
    JsonReport {
        pair: pair.to_string(),
        dual: r.spec.dual.to_string(),
        primal: r.spec.primal.to_string(),
        product: format!("{:?}", r.spec.left_product).to_lowercase(),
        max_weight: r.max_weight,
        holds: r.holds,
        mismatch_count: r.mismatch_count,
        first_bad_weight: r.first_bad_weight,
        mismatches: r
            .mismatches
            .iter()
            .map(|m| JsonMismatch {
                left: m.left.to_string(),
                right: m.right.to_string(),
                expected: m.expected.to_fraction_string(),
                actual: m.actual.to_fraction_string(),
            })
            .collect(),
    }
}

fn factorize(c: &Common, pair: &str, negative_control: bool) -> Outcome {
    let p: Pair = match pair.parse() {
        Ok(p) => p,
        Err(e) => return usage(e),
    };
    let spec = if negative_control { p.negative_control() } else { p.spec() };
    let report = match verify_factorization::<Rational>(c.max_weight, spec) {
        Ok(r) => r,
        Err(e) => return Outcome::Failed(e.to_string()),
    };
    let j = report_json(p, &report);
    let text = match c.format {
        Format::Text => report.to_string(),
        Format::Json => json(&j),
        Format::Csv => csv(
            &["left", "right", "expected", "actual"],
            j.mismatches.into_iter().map(|m| vec![m.left, m.right, m.expected, m.actual]),
        ),
    };
    if report.holds {
        Outcome::Ok(text)
    } else {
        Outcome::Failed(text)
    }
}

fn hl_check(c: &Common) -> Outcome {
    let bad = hall_littlewood_report::<Rational>(c.max_weight, c.q_degree);
    let results: Vec<CheckResult> = if bad.is_empty() {
        vec![CheckResult {
            check: "hall_littlewood".into(),
            status: stuffle::checks::Status::Pass,
            detail: format!("every S^I of weight ≤ {} matches M_I(X_q) mod q^{}", c.max_weight, c.q_degree),
        }]
    } else {
        bad.iter()
            .map(|m| CheckResult {
                check: format!("hall_littlewood {}", m.composition),
                status: stuffle::checks::Status::Fail,
                detail: format!("product {} vs M_I(X_q) {}", m.product, m.expected),
            })
            .collect()
    };
    checks_output(c, &results)
}
