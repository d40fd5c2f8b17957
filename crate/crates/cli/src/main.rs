mod error;
mod report;
mod table;

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use flagconf::realforms::RealForm;
use flagconf::schema::{parse_configuration, parse_form, parse_triangulation};
use serde_json::Value;

use error::Failure;
use report::Options;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Verb {
    Invariants,
    Semistable,
    Quotient,
    Crossratio,
    Triratio,
    Convert,
    Classify,
    Holonomy,
    CheckTriangulation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

/// Invariants, semi-stability and holonomy of flag configurations and
/// decorated triangulations, in exact arithmetic over Q(i).
#[derive(Parser, Debug)]
#[command(name = "flagconf", version)]
struct Cli {
    verb: Verb,
    /// Configuration or triangulation file (JSON).
    input: PathBuf,
    #[arg(long, value_enum, default_value = "json")]
    output: Format,
    /// Hermitian form file overriding the default form.
    #[arg(long)]
    form: Option<PathBuf>,
    /// Comma-separated real forms to test, e.g. `real,unitary,su22,quaternionic`.
    #[arg(long, value_delimiter = ',')]
    real_forms: Option<Vec<String>>,
    /// Named path of the triangulation file.
    #[arg(long)]
    path: Option<String>,
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::parse("io-error", format!("{}: {e}", path.display())))
}

fn check_options(cli: &Cli) -> Result<(), Failure> {
    let reject = |flag: &str| Failure::parse("incompatible-option", format!("{flag} is not accepted by this verb"));
    let form_ok = matches!(cli.verb, Verb::Invariants | Verb::Semistable | Verb::Quotient | Verb::Classify);
    if cli.form.is_some() && !form_ok {
        return Err(reject("--form"));
    }
    if cli.real_forms.is_some() && cli.verb != Verb::Classify {
        return Err(reject("--real-forms"));
    }
    if cli.path.is_some() && cli.verb != Verb::Holonomy {
        return Err(reject("--path"));
    }
    Ok(())
}

fn options(cli: &Cli) -> Result<Options, Failure> {
    let form = cli.form.as_deref().map(|p| read(p).and_then(|t| parse_form(&t).map_err(Failure::from))).transpose()?;
    let real_forms = cli
        .real_forms
        .as_ref()
        .map(|names| {
            names
                .iter()
                .map(|s| RealForm::parse(s).ok_or_else(|| Failure::parse("unknown-real-form", format!("unknown real form {s:?}"))))
                .collect::<Result<BTreeSet<_>, _>>()
        })
        .transpose()?;
    Ok(Options { form, real_forms, path: cli.path.clone() })
}

fn is_triangulation(text: &str) -> bool {
    serde_json::from_str::<Value>(text).ok().and_then(|v| v.get("tetrahedra").map(|_| ())).is_some()
}

fn run(cli: &Cli) -> Result<Value, Failure> {
    check_options(cli)?;
    let opts = options(cli)?;
    let text = read(&cli.input)?;
    match cli.verb {
        Verb::Holonomy => report::holonomy(&parse_triangulation(&text)?, &opts),
        Verb::CheckTriangulation => report::check_triangulation(&parse_triangulation(&text)?),
        Verb::Classify if is_triangulation(&text) => report::classify_triangulation(&parse_triangulation(&text)?, &opts),
        verb => {
            let c = parse_configuration(&text)?;
            match verb {
                Verb::Invariants => report::invariants(&c, &opts),
                Verb::Semistable => report::semistable(&c, &opts),
                Verb::Quotient => report::quotient(&c, &opts),
                Verb::Crossratio => report::crossratio(&c),
                Verb::Triratio => report::triratio(&c),
                Verb::Convert => report::convert(&c),
                Verb::Classify => report::classify(&c, &opts),
                Verb::Holonomy | Verb::CheckTriangulation => unreachable!("handled above"),
            }
        }
    }
}

fn emit(v: &Value, format: Format) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(v).expect("valid JSON")),
        Format::Table => print!("{}", table::render(v)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(v) => {
            emit(&v, cli.output);
            ExitCode::SUCCESS
        }
        Err(f) => {
            emit(&f.to_json(), cli.output);
            eprintln!("error[{}]: {}", f.code, f.message);
            ExitCode::from(f.exit)
        }
    }
}
