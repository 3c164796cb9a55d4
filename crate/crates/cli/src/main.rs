use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use epkit::ep_oracle::{self, CharacterizationId, Facts, Outcome, MAX_N};
use epkit::gen_inverse::{self, InverseKind};
use epkit::ring_spec::{element_from_json, element_to_json, parse_element_text};
use epkit::verifier::{self, CorpusSource, Format, Suite, SuiteOptions};
use epkit::{ring_make, with_ring, Error, Ring, RingSpec, StarRing, DEFAULT_ENUM_CAP};

/// Exit statuses. 0 is success, 1 a disagreement with the EP definition,
/// 2 a usage error reported by the argument parser.
mod status {
    pub const DISAGREEMENT: u8 = 1;
    pub const PARSE: u8 = 3;
    pub const DIMENSION: u8 = 4;
    pub const ENUMERATION_CAP: u8 = 5;
    pub const INVALID_SPEC: u8 = 6;
    pub const IO: u8 = 7;
    pub const OTHER: u8 = 8;
}

#[derive(Parser, Debug)]
#[command(name = "epkit", version, about = "Exact generalized inverses and EP checks in rings with involution")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute the {1}, Moore-Penrose, group, core and dual core inverses of an element.
    Inverse(ElementArgs),
    /// Evaluate every characterization of EP on one element.
    EpCheck(ElementArgs),
    /// Run the theorem suite over a corpus.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct Common {
    /// Ring: Zmod:<n>, Mat:<k>:Q, Mat:<k>:Qi, Mat:<k>:GF<p> or Mat:<k>:Zmod<n>.
    #[arg(long)]
    ring: String,
    #[arg(long, default_value = "text", value_parser = ["text", "json"])]
    format: String,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ElementArgs {
    #[command(flatten)]
    common: Common,
    /// Inline element, e.g. `[[0,1],[0,1]]` or `2`.
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    element: Option<String>,
    /// JSON file {"rows","cols","entries"} holding the element.
    #[arg(long)]
    input: Option<PathBuf>,
    /// `all` or a comma-separated list of characterization ids.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Largest n in the n-EP family.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(1..=MAX_N as i64))]
    n: u8,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    /// Draw a structured random corpus instead of enumerating the ring.
    #[arg(long)]
    random: bool,
    #[arg(long, default_value_t = 42, requires = "random")]
    seed: u64,
    #[arg(long, default_value_t = 100, requires = "random")]
    count: usize,
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(1..=MAX_N as i64))]
    n: u8,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::UnknownVariant { .. } => status::PARSE,
            Error::Dimension { .. } => status::DIMENSION,
            Error::EnumerationCap { .. } => status::ENUMERATION_CAP,
            Error::InvalidSpec(_) => status::INVALID_SPEC,
            _ => status::OTHER,
        };
        Failure { code, message: e.to_string() }
    }
}

fn io_failure(what: &str, path: &std::path::Path, e: std::io::Error) -> Failure {
    Failure { code: status::IO, message: format!("cannot {what} {}: {e}", path.display()) }
}

fn enum_cap() -> Result<u128, Failure> {
    match std::env::var("EPKIT_ENUM_CAP") {
        Ok(v) => v.trim().parse().map_err(|_| Failure {
            code: status::PARSE,
            message: format!("EPKIT_ENUM_CAP must be a non-negative integer, got {v:?}"),
        }),
        Err(_) => Ok(DEFAULT_ENUM_CAP),
    }
}

fn emit(common: &Common, bytes: &[u8]) -> Result<(), Failure> {
    match &common.out {
        Some(path) => std::fs::write(path, bytes).map_err(|e| io_failure("write", path, e)),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)
                .and_then(|_| out.flush())
                .map_err(|e| io_failure("write", std::path::Path::new("stdout"), e))
        }
    }
}

fn json_bytes(v: &Value) -> Vec<u8> {
    let mut b = serde_json::to_vec_pretty(v).expect("values serialize");
    b.push(b'\n');
    b
}

fn label<T: serde::Serialize>(x: &T) -> String {
    serde_json::to_value(x).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default()
}

fn read_element<R: StarRing>(ring: &Ring<R>, args: &ElementArgs) -> Result<R::Elem, Failure> {
    let alg = ring.algebra();
    match (&args.element, &args.input) {
        (Some(text), _) => Ok(parse_element_text(alg, text)?),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| io_failure("read", path, e))?;
            let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            Ok(element_from_json(alg, &v)?)
        }
        (None, None) => unreachable!("clap requires --element or --input"),
    }
}

fn parse_ids(suite: &str, n: u8) -> Result<Vec<CharacterizationId>, Failure> {
    Ok(match Suite::parse(suite)? {
        Suite::All => CharacterizationId::all(n),
        Suite::Only(ids) => ids,
    })
}

fn cmd_inverse<R: StarRing>(ring: &Ring<R>, args: &ElementArgs) -> Result<u8, Failure> {
    let a = read_element(ring, args)?;
    let b = gen_inverse::inverse_bundle(ring, &a)?;
    let method = |k| b.methods.iter().find(|(m, _)| *m == k).map(|(_, m)| label(m));
    let bytes = if args.common.format == "json" {
        let mut inverses = serde_json::Map::new();
        for k in InverseKind::ALL {
            let entry = match b.get(k) {
                Some(x) => json!({
                    "exists": true,
                    "value": ring.render(x),
                    "method": method(k),
                    "certificates": b.certificates.iter().find(|(c, _)| *c == k).map(|(_, c)| c.clone()),
                }),
                None => json!({
                    "exists": false,
                    "reason": b.absences.iter().find(|(c, _)| *c == k).map(|(_, r)| r.clone()),
                }),
            };
            inverses.insert(k.to_string(), entry);
        }
        json_bytes(&json!({
            "ring": ring.descriptor(),
            "element": element_to_json(ring.algebra(), &a),
            "inverses": inverses,
            "ep": b.is_ep(),
        }))
    } else {
        let mut s = format!("ring    {}\nelement {}\n", ring.descriptor(), ring.render(&a));
        for k in InverseKind::ALL {
            match b.get(k) {
                Some(x) => {
                    s += &format!("{:<9} = {}  [{}]\n", k.to_string(), ring.render(x), method(k).unwrap_or_default());
                    if let Some((_, certs)) = b.certificates.iter().find(|(c, _)| *c == k) {
                        let eqs: Vec<String> = certs
                            .iter()
                            .map(|c| format!("{} {}", c.equation, if c.holds { "ok" } else { "FAILS" }))
                            .collect();
                        s += &format!("          {}\n", eqs.join(", "));
                    }
                }
                None => {
                    let reason = b.absences.iter().find(|(c, _)| *c == k).map_or("", |(_, r)| r.as_str());
                    s += &format!("{:<9} does not exist: {reason}\n", k.to_string());
                }
            }
        }
        s += &format!("EP: {}\n", if b.is_ep() { "yes" } else { "no" });
        s.into_bytes()
    };
    emit(&args.common, &bytes)?;
    Ok(0)
}

fn cmd_ep_check<R: StarRing>(ring: &Ring<R>, args: &ElementArgs) -> Result<u8, Failure> {
    let a = read_element(ring, args)?;
    let ids = parse_ids(&args.suite, args.n)?;
    let facts = Facts::new(ring, &a)?;
    let v = ep_oracle::ep_check(ring, &facts, &ids)?;
    let disagreements: Vec<String> = v.disagreements().map(|(id, _)| id.to_string()).collect();
    let bytes = if args.common.format == "json" {
        let verdicts: Vec<Value> = v
            .verdicts
            .iter()
            .map(|(id, e)| {
                json!({
                    "id": id.to_string(),
                    "outcome": label(&e.outcome),
                    "provenance": label(&e.provenance),
                    "witness": e.witness.as_ref().map(|w| ring.render(w)),
                })
            })
            .collect();
        json_bytes(&json!({
            "ring": ring.descriptor(),
            "element": element_to_json(ring.algebra(), &a),
            "baseline": v.baseline,
            "verdicts": verdicts,
            "consensus": v.consensus,
            "disagreements": disagreements,
        }))
    } else {
        let mut s = format!(
            "ring {}\nelement {}\nbaseline (a† exists, a^# exists, a† = a^#): {}\n",
            ring.descriptor(),
            ring.render(&a),
            v.baseline
        );
        let width = v.verdicts.iter().map(|(id, _)| id.to_string().len()).max().unwrap_or(0);
        for (id, e) in &v.verdicts {
            let outcome = match e.outcome {
                Outcome::True => "true",
                Outcome::False => "false",
                Outcome::Inapplicable => "n/a",
            };
            let mut line = format!("  {:<width$}  {outcome:<5}  {:<20}", id.to_string(), label(&e.provenance));
            if let Some(w) = &e.witness {
                line += &format!("  witness {}", ring.render(w));
            }
            s += line.trim_end();
            s.push('\n');
        }
        if disagreements.is_empty() {
            s += &format!("consensus: every applicable verdict is {}\n", v.baseline);
        } else {
            s += &format!("consensus broken by: {}\n", disagreements.join(", "));
        }
        s.into_bytes()
    };
    emit(&args.common, &bytes)?;
    Ok(if disagreements.is_empty() { 0 } else { status::DISAGREEMENT })
}

fn cmd_verify<R: verifier::RandomElements>(ring: &Ring<R>, args: &VerifyArgs) -> Result<u8, Failure> {
    let source = if args.random {
        CorpusSource::Random { seed: args.seed, count: args.count }
    } else {
        CorpusSource::Exhaustive
    };
    let corpus = verifier::build_corpus(ring, source)?;
    let options = SuiteOptions { suite: Suite::parse(&args.suite)?, n_max: args.n };
    let report = verifier::run_suite(ring, &corpus, &options)?;
    let format = args.common.format.parse::<Format>()?;
    emit(&args.common, &verifier::emit_report(&report, format))?;
    Ok(report.exit_code() as u8)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let common = match &cli.command {
        Command::Inverse(a) | Command::EpCheck(a) => &a.common,
        Command::Verify(a) => &a.common,
    };
    let spec: RingSpec = common.ring.parse()?;
    let any = ring_make(&spec, enum_cap()?)?;
    with_ring!(&any, ring => match &cli.command {
        Command::Inverse(a) => cmd_inverse(ring, a),
        Command::EpCheck(a) => cmd_ep_check(ring, a),
        Command::Verify(a) => cmd_verify(ring, a),
    })
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("epkit: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
