use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use cbiont::vocab::{prefixes_with_data_base, standard_prefixes, CBIDATA};
use cbiont::{
    build_schema, code_individuals, competency_query, evaluate, ingest_file, materialize,
    parse_query, parse_turtle, results_to_json, results_to_tsv, serialize_ntriples,
    serialize_turtle, validate_with, CompetencyQuestion, Graph, Iri, MintingScheme, PrefixMap,
    ValidationOptions,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

const EXIT_USAGE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_VIOLATIONS: u8 = 3;

/// Build, reason over and query CBIOnt knowledge bases stored as Turtle.
///
/// The environment variable CBIONT_BASE_IRI overrides the namespace used to
/// mint IRIs for ingested data (default http://bi4people.org/data/cbiont/).
#[derive(Parser)]
#[command(name = "cbiont", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Schema operations.
    Schema {
        #[command(subcommand)]
        action: SchemaAction,
    },
    /// Convert a JSON session export into a Turtle knowledge base.
    Ingest(IngestArgs),
    /// Materialize the inferences of a knowledge base.
    Infer(InferArgs),
    /// Check a knowledge base against the schema constraints.
    Validate(ValidateArgs),
    /// Run a query file or a competency question against a knowledge base.
    Query(QueryArgs),
}

#[derive(Subcommand)]
enum SchemaAction {
    /// Print the schema.
    Export {
        #[arg(long, value_enum, default_value_t = SchemaFormat::Turtle)]
        format: SchemaFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemaFormat {
    Turtle,
    Ntriples,
}

#[derive(Args)]
struct IngestArgs {
    /// JSON file holding one session object or an array of them.
    #[arg(long)]
    input: PathBuf,
    /// Turtle file to write.
    #[arg(long)]
    kb_out: PathBuf,
    /// Existing Turtle knowledge base to extend.
    #[arg(long)]
    merge_with: Option<PathBuf>,
}

#[derive(Args)]
struct InferArgs {
    #[arg(long = "kb")]
    kb_in: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ValidateArgs {
    /// Turtle file, or `-` for standard input.
    #[arg(long = "kb")]
    kb_in: PathBuf,
    /// Also report warnings, and fail on them.
    #[arg(long)]
    pedantic: bool,
    #[arg(long, value_enum, default_value_t = ValidateFormat::Text)]
    format: ValidateFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum ValidateFormat {
    Text,
    Json,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["query", "cq"]))]
struct QueryArgs {
    #[arg(long = "kb")]
    kb_in: PathBuf,
    /// File with a SELECT query.
    #[arg(long)]
    query: Option<PathBuf>,
    /// Competency question number.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=8))]
    cq: Option<u8>,
    /// Session IRI for a competency question; all sessions when omitted.
    #[arg(long, requires = "cq")]
    session: Option<String>,
    #[arg(long, value_enum, default_value_t = ResultFormat::Tsv)]
    format: ResultFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum ResultFormat {
    Tsv,
    Json,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let outcome = match cli.command {
        Command::Schema {
            action: SchemaAction::Export { format },
        } => schema_export(format),
        Command::Ingest(args) => ingest(args),
        Command::Infer(args) => infer(args),
        Command::Validate(args) => validate(args),
        Command::Query(args) => query(args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("cbiont: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn data_base() -> Result<Iri, Failure> {
    match std::env::var("CBIONT_BASE_IRI") {
        Ok(value) if !value.is_empty() => {
            Iri::new(&value).map_err(|e| Failure::usage(format!("CBIONT_BASE_IRI: {e}")))
        }
        _ => Ok(CBIDATA.iri()),
    }
}

fn kb_prefixes(base: &Iri) -> PrefixMap {
    prefixes_with_data_base(base.as_str())
}

fn read_text(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut text = String::new();
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::input(format!("<stdin>: {e}")))?;
        return Ok(text);
    }
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_kb(path: &Path) -> Result<Graph, Failure> {
    let text = read_text(path)?;
    let name = if path == Path::new("-") { "<stdin>".into() } else { path.display().to_string() };
    parse_turtle(&text)
        .map(|(g, _)| g)
        .map_err(|e| Failure::input(format!("{name}:{e}")))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn write_stdout(contents: &str) -> Outcome {
    let mut out = io::stdout().lock();
    match out.write_all(contents.as_bytes()).and_then(|_| out.flush()) {
        Ok(()) => Ok(0),
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(0),
        Err(e) => Err(Failure::input(format!("<stdout>: {e}"))),
    }
}

fn schema_export(format: SchemaFormat) -> Outcome {
    let schema = build_schema();
    write_stdout(&match format {
        SchemaFormat::Turtle => serialize_turtle(&schema, &standard_prefixes()),
        SchemaFormat::Ntriples => serialize_ntriples(&schema),
    })
}

fn ingest(args: IngestArgs) -> Outcome {
    let base = data_base()?;
    let scheme = MintingScheme::new(base.clone()).map_err(|e| Failure::usage(format!("CBIONT_BASE_IRI: {e}")))?;
    let mut kb = match &args.merge_with {
        Some(path) => load_kb(path)?,
        None => Graph::new(),
    };
    kb.extend_from(&code_individuals(&scheme));
    let report = ingest_file(&args.input, &mut kb, &scheme).map_err(|e| Failure::input(e.to_string()))?;
    for s in &report.sessions {
        if let Err(e) = &s.result {
            let id = s.id.as_deref().unwrap_or("?");
            eprintln!("{}: session[{}] {id}: {e}", args.input.display(), s.index);
        }
    }
    write_file(&args.kb_out, &serialize_turtle(&kb, &kb_prefixes(&base)))?;
    eprintln!(
        "ingested {} session(s), {} failed; {} triples in {}",
        report.ok(),
        report.failed(),
        kb.len(),
        args.kb_out.display()
    );
    Ok(if report.failed() > 0 { EXIT_INPUT } else { 0 })
}

fn infer(args: InferArgs) -> Outcome {
    let kb = load_kb(&args.kb_in)?;
    let materialized = materialize(&kb, &build_schema())
        .map_err(|e| Failure::input(format!("{}: {e}", args.kb_in.display())))?;
    write_file(&args.out, &serialize_turtle(&materialized, &kb_prefixes(&data_base()?)))?;
    eprintln!(
        "{} triples in, {} out ({} inferred)",
        kb.len(),
        materialized.len(),
        materialized.len() - kb.len()
    );
    Ok(0)
}

fn validate(args: ValidateArgs) -> Outcome {
    let kb = load_kb(&args.kb_in)?;
    let options = ValidationOptions {
        pedantic: args.pedantic,
    };
    let violations = validate_with(&kb, &build_schema(), options);
    let out = match args.format {
        ValidateFormat::Text => violations.iter().map(|v| v.to_line() + "\n").collect::<String>(),
        ValidateFormat::Json => {
            let rows: Vec<_> = violations.iter().map(|v| v.to_json()).collect();
            serde_json::to_string_pretty(&rows).expect("JSON values serialize") + "\n"
        }
    };
    write_stdout(&out)?;
    let failing = violations
        .iter()
        .filter(|v| args.pedantic || v.kind.is_error())
        .count();
    Ok(if failing > 0 { EXIT_VIOLATIONS } else { 0 })
}

fn query(args: QueryArgs) -> Outcome {
    let q = match (&args.query, args.cq) {
        (Some(path), _) => {
            let text = read_text(path)?;
            parse_query(&text).map_err(|e| Failure::input(format!("{}:{e}", path.display())))?
        }
        (None, Some(n)) => {
            let cq = CompetencyQuestion::from_number(n.into()).expect("range checked by clap");
            let session = match &args.session {
                Some(s) => {
                    let s = s.strip_prefix('<').and_then(|s| s.strip_suffix('>')).unwrap_or(s);
                    Some(Iri::new(s).map_err(|e| Failure::usage(format!("--session: {e}")))?)
                }
                None => None,
            };
            competency_query(cq, session.as_ref())
        }
        (None, None) => unreachable!("clap requires --query or --cq"),
    };
    let kb = load_kb(&args.kb_in)?;
    let rows = evaluate(&q, &kb);
    write_stdout(&match args.format {
        ResultFormat::Tsv => results_to_tsv(q.projection(), &rows),
        ResultFormat::Json => {
            serde_json::to_string_pretty(&results_to_json(q.projection(), &rows)).expect("JSON values serialize")
                + "\n"
        }
    })
}
