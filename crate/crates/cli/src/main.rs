mod catalog;

use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;
use thiserror::Error;

use tbraid::invariants::{normalized_bracket, BRACKET_CAP};
use tbraid::obstruction::{not_tknot_certificate, verify_lemma_crossings_bruteforce, Verdict};
use tbraid::rewrite::fulltwist_presentation;
use tbraid::satellite::{assemble_satellite, FamilyParams, Framing, SatelliteSpec};
use tbraid::tlink::standard_braid;
use tbraid::{BraidWord, TLinkSpec};

use catalog::{Catalog, CatalogEntry, CatalogError, EntryKind, CATALOG_ENV};

#[derive(Debug, Parser)]
#[command(
    name = "tbraid",
    version,
    about = "T-link braids, full-twist rewrites and satellite obstructions"
)]
struct Cli {
    /// `full` additionally runs the Kauffman bracket oracle under the crossing cap.
    #[arg(long, value_enum, default_value_t = Verify::Basic, global = true)]
    verify: Verify,

    /// Catalog file; defaults to $TBRAID_CATALOG. Nothing is recorded when neither is set.
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Verify {
    Basic,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FramingArg {
    SeifertZero,
    Blackboard,
}

impl From<FramingArg> for Framing {
    fn from(f: FramingArg) -> Self {
        match f {
            FramingArg::SeifertZero => Framing::SeifertZero,
            FramingArg::Blackboard => Framing::Blackboard,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the standard braid of a T-link, e.g. "T((2,2),(3,2))".
    Braid { spec: String },
    /// Rewrite a T-link into a positive braid with a full twist and print the certificate.
    Fulltwist { spec: String },
    /// Build the satellite with companion T(a, a+1) and pattern T(lower, (b, (a²-1)b + k)).
    Satellite {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum, default_value_t = FramingArg::SeifertZero)]
        framing: FramingArg,
    },
    /// Certify that satellites of the family are not T-knots.
    Certify {
        #[command(flatten)]
        family: FamilyArgs,
        /// Parameter ranges such as `a=2..4 b=2..4 k=1..2`; unset parameters
        /// fall back to --a, --b, --k.
        #[arg(long, num_args = 1.., value_name = "RANGE")]
        sweep: Vec<String>,
    },
}

#[derive(Debug, clap::Args)]
struct FamilyArgs {
    #[arg(long)]
    a: Option<usize>,
    #[arg(long)]
    b: Option<usize>,
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// Lower pattern pairs, e.g. "(2,1),(3,2)".
    #[arg(long, default_value = "")]
    lower: String,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Core(#[from] tbraid::Error),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(tbraid::Error::Internal(_)) => 3,
            CliError::Catalog(_) => 3,
            _ => 2,
        }
    }
}

type Outcome = Result<Status, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Ok,
    Inconclusive,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Inconclusive) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let mut catalog = open_catalog(cli)?;
    match &cli.command {
        Command::Braid { spec } => {
            let spec: TLinkSpec = spec.parse()?;
            println!("{}", standard_braid(&spec));
            Ok(Status::Ok)
        }
        Command::Fulltwist { spec } => fulltwist(cli, spec, catalog.as_mut()),
        Command::Satellite { family, framing } => {
            satellite(cli, family, (*framing).into(), catalog.as_mut())
        }
        Command::Certify { family, sweep } => certify(cli, family, sweep, catalog.as_mut()),
    }
}

fn open_catalog(cli: &Cli) -> Result<Option<Catalog>, CliError> {
    let path = cli
        .catalog
        .clone()
        .or_else(|| std::env::var_os(CATALOG_ENV).map(PathBuf::from));
    Ok(match path {
        Some(p) => Some(Catalog::open(p)?),
        None => None,
    })
}

fn record(catalog: Option<&mut Catalog>, entries: &[CatalogEntry]) -> Result<(), CliError> {
    if let Some(cat) = catalog {
        let written = cat.append(entries)?;
        eprintln!(
            "catalog {}: {written} new, {} already present",
            cat.path().display(),
            entries.len() - written
        );
    }
    Ok(())
}

fn bracket_check(input: &BraidWord, output: &BraidWord) -> serde_json::Value {
    match (
        normalized_bracket(input, BRACKET_CAP),
        normalized_bracket(output, BRACKET_CAP),
    ) {
        (Ok(a), Ok(b)) => json!({
            "input": a.to_string(),
            "output": b.to_string(),
            "equal": a == b,
        }),
        _ => json!({ "skipped": format!("more than {BRACKET_CAP} crossings") }),
    }
}

fn fulltwist(cli: &Cli, spec: &str, catalog: Option<&mut Catalog>) -> Outcome {
    let spec: TLinkSpec = spec.parse()?;
    let cert = fulltwist_presentation(&spec)?;
    cert.verify()?;
    let mut out = serde_json::to_value(&cert).expect("certificate serializes");
    if cli.verify == Verify::Full {
        let input = standard_braid(&spec);
        let check = bracket_check(&input, &cert.output()?);
        if check["equal"] == json!(false) {
            return Err(tbraid::Error::Internal(format!(
                "bracket oracle disagrees on {spec}: {check}"
            ))
            .into());
        }
        out["bracket_oracle"] = check;
    }
    println!("{}", serde_json::to_string_pretty(&out).expect("json"));
    let payload = serde_json::to_value(&cert).expect("certificate serializes");
    record(
        catalog,
        &[CatalogEntry::new(EntryKind::TlinkFulltwist, payload)],
    )?;
    Ok(Status::Ok)
}

fn parse_lower(text: &str) -> Result<Vec<(usize, usize)>, CliError> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let spec: TLinkSpec = format!("T({text})")
        .parse()
        .map_err(|e| CliError::Input(format!("--lower: {e}")))?;
    Ok(spec.pairs().iter().map(|p| (p.r, p.s)).collect())
}

fn required(v: Option<usize>, name: &str) -> Result<usize, CliError> {
    v.ok_or_else(|| CliError::Input(format!("--{name} is required")))
}

fn satellite(
    cli: &Cli,
    family: &FamilyArgs,
    framing: Framing,
    catalog: Option<&mut Catalog>,
) -> Outcome {
    let lower = parse_lower(&family.lower)?;
    let params = FamilyParams::new(
        &lower,
        required(family.a, "a")?,
        required(family.b, "b")?,
        family.k,
    )?;
    let pattern = params.pattern()?;
    let spec = SatelliteSpec::new(params.companion(), pattern, framing)?;
    let word = assemble_satellite(&spec.companion, &spec.pattern, framing)?;
    let predicted = params.predicted_crossings();
    let matches = word.len() == predicted;
    if framing == Framing::SeifertZero && !matches {
        return Err(tbraid::Error::Internal(format!(
            "{} letters constructed, {predicted} predicted",
            word.len()
        ))
        .into());
    }
    let mut out = json!({
        "spec": spec.to_string(),
        "word": word.to_string(),
        "strands": word.strands(),
        "crossings": word.len(),
        "predicted": predicted,
        "match": matches,
        "framing": framing.to_string(),
    });
    if framing == Framing::Blackboard {
        out["note"] = json!(
            "blackboard framing skips the Seifert longitude correction (the Birman–Williams convention); the prediction assumes seifert_zero"
        );
    }
    if cli.verify == Verify::Full {
        out["bracket"] = match normalized_bracket(&word, BRACKET_CAP) {
            Ok(v) => json!(v.to_string()),
            Err(e) => json!({ "skipped": e.to_string() }),
        };
    }
    println!("{}", word);
    println!("{}", serde_json::to_string(&out).expect("json"));
    record(catalog, &[CatalogEntry::new(EntryKind::Satellite, out)])?;
    Ok(Status::Ok)
}

fn parse_range(text: &str) -> Result<(char, RangeInclusive<usize>), CliError> {
    let bad = || CliError::Input(format!("bad sweep range '{text}', expected e.g. a=2..4"));
    let (name, range) = text.split_once('=').ok_or_else(bad)?;
    let name = match name.trim() {
        "a" => 'a',
        "b" => 'b',
        "k" => 'k',
        _ => return Err(bad()),
    };
    let (lo, hi) = match range.split_once("..") {
        Some((lo, hi)) => (lo, hi.strip_prefix('=').unwrap_or(hi)),
        None => (range, range),
    };
    let lo: usize = lo.trim().parse().map_err(|_| bad())?;
    let hi: usize = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((name, lo..=hi))
}

fn certify(
    cli: &Cli,
    family: &FamilyArgs,
    sweep: &[String],
    catalog: Option<&mut Catalog>,
) -> Outcome {
    let lower = parse_lower(&family.lower)?;
    let single = |v: Option<usize>| v.map(|x| x..=x);
    let (mut ra, mut rb, mut rk) = (
        single(family.a),
        single(family.b),
        Some(family.k..=family.k),
    );
    for item in sweep.iter().flat_map(|s| s.split_whitespace()) {
        let (name, range) = parse_range(item)?;
        match name {
            'a' => ra = Some(range),
            'b' => rb = Some(range),
            _ => rk = Some(range),
        }
    }
    let ra = ra.ok_or_else(|| CliError::Input("--a or a sweep range is required".into()))?;
    let rb = rb.ok_or_else(|| CliError::Input("--b or a sweep range is required".into()))?;
    let rk = rk.expect("k has a default");
    let mut jobs = Vec::new();
    for a in ra {
        for b in rb.clone() {
            for k in rk.clone() {
                jobs.push((a, b, k));
            }
        }
    }
    let full = cli.verify == Verify::Full;
    let results: Vec<Result<(Verdict, serde_json::Value), tbraid::Error>> = jobs
        .par_iter()
        .map(|&(a, b, k)| {
            let cert = not_tknot_certificate(&lower, a, b, k)?;
            let mut v = serde_json::to_value(&cert).expect("certificate serializes");
            if full {
                let p = cert.braid_index;
                v["lemma_bruteforce"] = match verify_lemma_crossings_bruteforce(p) {
                    Ok(r) => serde_json::to_value(r).expect("report serializes"),
                    Err(_) => json!({ "skipped": format!("braid index {p} above 6") }),
                };
            }
            Ok((cert.verdict, v))
        })
        .collect();

    let mut entries = Vec::new();
    let mut status = Status::Ok;
    for r in results {
        let (verdict, v) = r?;
        if verdict != Verdict::CertifiedNotTknot {
            status = Status::Inconclusive;
        }
        println!("{}", serde_json::to_string(&v).expect("json"));
        let mut payload = v;
        if let Some(obj) = payload.as_object_mut() {
            obj.remove("lemma_bruteforce");
        }
        entries.push(CatalogEntry::new(EntryKind::Certificate, payload));
    }
    record(catalog, &entries)?;
    Ok(status)
}
