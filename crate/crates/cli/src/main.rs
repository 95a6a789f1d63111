use std::fs;
use std::process::ExitCode;

use clap::builder::{PossibleValuesParser, TypedValueParser};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ftik_core::catalog::{self, CatalogEntry};
use ftik_core::compute::{compute, Computed, Invariant};
use ftik_core::verify::{self, Check, Suite};
use ftik_core::{Error, LinkDiagram, LinkFile};

const INVARIANTS: [&str; 12] =
    ["casson", "lambda1", "lambda2", "psi2", "a2", "jones", "conway", "phi1", "phi2", "v2", "v3", "v4"];
const SUITES: [&str; 6] = ["paper-values", "skein", "order", "integrality", "cross-formula", "all"];

/// Exact finite-type invariants of integral homology spheres given by
/// surgery on ±1-framed algebraically split links.
#[derive(Parser)]
#[command(name = "ftik", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one invariant of a link or surgery presentation.
    Compute(ComputeArgs),
    /// Run a verification suite over the built-in catalog.
    Verify(VerifyArgs),
    /// List the built-in catalog.
    Catalog(CatalogArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Args)]
struct ComputeArgs {
    #[arg(long, value_parser = PossibleValuesParser::new(INVARIANTS).map(|s| s.parse::<Invariant>().unwrap()))]
    invariant: Invariant,
    /// A link-file path, or `catalog:NAME` for a built-in entry.
    #[arg(long)]
    link: String,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Truncation order of the series expansions about t = 1.
    #[arg(long, env = "FTIK_ORDER")]
    order: Option<usize>,
    /// Also check phi1 = 6 a2 on every sublink.
    #[arg(long)]
    self_check: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_parser = PossibleValuesParser::new(SUITES).map(|s| s.parse::<Suite>().unwrap()))]
    suite: Suite,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct CatalogArgs {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Show a single entry; with `--format json` this prints its link file.
    #[arg(long)]
    name: Option<String>,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InsufficientTruncation { .. } => 3,
        Error::InvalidDiagram(_)
        | Error::MalformedDiagram(_)
        | Error::NotSurgeryPresentation(_)
        | Error::EmptyDiagram
        | Error::UnknownInvariant(_)
        | Error::TooFewComponents { .. }
        | Error::Json(_) => 2,
        _ => 1,
    }
}

fn report(e: &Error) -> ExitCode {
    match e {
        Error::InvalidDiagram(vs) => {
            eprintln!("error: invalid link diagram");
            for v in vs {
                eprintln!("  - {v}");
            }
        }
        _ => eprintln!("error: {e}"),
    }
    ExitCode::from(exit_code(e))
}

fn load_link(spec: &str) -> Result<LinkDiagram, Error> {
    if let Some(name) = spec.strip_prefix("catalog:") {
        return catalog::diagram(name);
    }
    let text = fs::read_to_string(spec).map_err(|e| Error::MalformedDiagram(format!("cannot read {spec}: {e}")))?;
    LinkDiagram::try_from(LinkFile::from_json(&text)?)
}

#[derive(Serialize)]
struct ComputeJson<'a> {
    invariant: &'a str,
    presentation: &'a str,
    order: Option<usize>,
    value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    self_check: Option<Vec<verify::MurakamiLine>>,
}

fn cmd_compute(args: &ComputeArgs) -> Result<ExitCode, Error> {
    let d = load_link(&args.link)?;
    let result = compute(args.invariant, &d, args.order)?;
    let checks = if args.self_check {
        if d.is_empty() || !d.is_algebraically_split()? {
            eprintln!("self-check skipped: not a nonempty algebraically split link");
            None
        } else {
            Some(verify::murakami(&d)?)
        }
    } else {
        None
    };
    let order = match &result {
        Computed::Scalar(r) if args.invariant.uses_order() => Some(r.order),
        _ => None,
    };
    let ok = checks.as_ref().is_none_or(|c| c.iter().all(|l| l.pass));
    match args.format {
        Format::Table => {
            println!("invariant  {}", result.name());
            println!("link       {}", result.presentation());
            if let Some(n) = order {
                println!("order      {n}");
            }
            println!("value      {}", result.value_text());
            for l in checks.iter().flatten() {
                let status = if l.pass { "ok" } else { "FAIL" };
                println!("self-check phi1 = 6 a2 on {:?}: {} vs {} {status}", l.sublink, l.phi1, l.six_a2);
            }
        }
        Format::Json => {
            let out = ComputeJson {
                invariant: result.name(),
                presentation: result.presentation(),
                order,
                value: result.value_text(),
                self_check: checks,
            };
            println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
        }
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_verify(args: &VerifyArgs) -> Result<ExitCode, Error> {
    let checks = verify::run(args.suite)?;
    let failed: Vec<&Check> = verify::failures(&checks);
    match args.format {
        Format::Table => {
            for c in &checks {
                let status = if c.pass { "PASS" } else { "FAIL" };
                println!("{status}  {}  {}  {}", c.check, c.presentation, c.value);
            }
            println!("{} checks, {} failures", checks.len(), failed.len());
            if matches!(args.suite, Suite::Order | Suite::All) {
                println!("order checks are evidence, not proof");
            }
        }
        Format::Json => println!("{}", serde_json::to_string_pretty(&checks).expect("serializable")),
    }
    for c in &failed {
        eprintln!("failed: {} on {}: {}", c.check, c.presentation, c.value);
    }
    Ok(if failed.is_empty() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

#[derive(Serialize)]
struct ExpectedJson {
    invariant: &'static str,
    value: String,
    provenance: String,
}

#[derive(Serialize)]
struct EntryJson {
    name: &'static str,
    note: &'static str,
    expected: Vec<ExpectedJson>,
    link: LinkFile,
}

fn entry_json(e: &CatalogEntry) -> EntryJson {
    EntryJson {
        name: e.name,
        note: e.note,
        expected: e
            .expected
            .iter()
            .map(|x| ExpectedJson {
                invariant: x.invariant,
                value: ftik_core::series::format_rational(&x.value),
                provenance: x.provenance.to_string(),
            })
            .collect(),
        link: e.diagram.to_file(),
    }
}

fn cmd_catalog(args: &CatalogArgs) -> Result<ExitCode, Error> {
    let entries = match &args.name {
        Some(n) => vec![catalog::entry(n).ok_or_else(|| Error::MalformedDiagram(format!("no catalog entry {n}")))?],
        None => catalog::entries(),
    };
    match (args.format, &args.name) {
        (Format::Json, Some(_)) => println!("{}", entries[0].diagram.to_file().to_json()),
        (Format::Json, None) => {
            let all: Vec<EntryJson> = entries.iter().map(entry_json).collect();
            println!("{}", serde_json::to_string_pretty(&all).expect("serializable"));
        }
        (Format::Table, _) => {
            println!("{:<22} {:>5} {:>9}  {:<22} expected", "name", "comps", "crossings", "framings");
            for e in &entries {
                let framings: Vec<String> = e.diagram.framings().iter().map(|f| format!("{f:+}")).collect();
                let expected: Vec<String> = e
                    .expected
                    .iter()
                    .map(|x| {
                        format!("{}={} ({})", x.invariant, ftik_core::series::format_rational(&x.value), x.provenance)
                    })
                    .collect();
                println!(
                    "{:<22} {:>5} {:>9}  {:<22} {}",
                    e.name,
                    e.diagram.num_components(),
                    e.diagram.num_crossings(),
                    framings.join(","),
                    expected.join(", ")
                );
            }
            if let [e] = &entries[..] {
                if args.name.is_some() {
                    println!("note: {}", e.note);
                    println!("linking matrix:");
                    for row in e.diagram.linking_matrix()? {
                        let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
                        println!("  {}", cells.join(""));
                    }
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Compute(a) => cmd_compute(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Catalog(a) => cmd_catalog(a),
    };
    result.unwrap_or_else(|e| report(&e))
}
