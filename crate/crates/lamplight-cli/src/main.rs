//! `lamplight`: command-line front end for the lamplighter-group language
//! library — interpreter, norms and canonical words, generating functions,
//! program enumeration, static analysis, and shortest-program search.

use std::fmt::Write as _;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use lamplight::analysis::{
    bit_window, normalize_with_bottom, semantic_table, shift_class, SemanticTable, ShiftClass,
};
use lamplight::enumerate::{count_programs, enumerate_programs, growth_table, PruneLevel};
use lamplight::group::{canonical_word, evaluate, norm, GroupElement, Word};
use lamplight::lang::{parse, run, Tape};
use lamplight::search::{search_shortest, SearchSpec};
use lamplight::series::{
    growth_rate, series_l, series_lk, series_lk0, series_lk1, smallest_positive_root,
    solve_e_canonical, solve_e_dead_after, solve_e_dead_inside, solve_e_naive, Series,
    CANONICAL_RADIUS_POLY,
};

#[derive(Parser)]
#[command(name = "lamplight", version, about = "Lamplighter-group language toolkit")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write a reproducibility manifest (command, parameters, version,
    /// sha256 of the output) to this path.
    #[arg(long, global = true)]
    manifest: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Run a program on a tape with bounded fuel.
    Run(RunArgs),
    /// Cleary norm of a group element.
    Norm(NormArgs),
    /// Canonical minimal word of an element, or evaluate a word.
    Word(WordArgs),
    /// Expand a generating function, or compute a radius/growth estimate.
    Series(SeriesArgs),
    /// List or count admissible programs of one length.
    Enumerate(EnumerateArgs),
    /// Per-level program counts for n = 0..=N, as CSV.
    Table(TableArgs),
    /// Static analysis: shift class, bit window, semantic table, normal form.
    Analyze(AnalyzeArgs),
    /// Shortest program realizing a target semantic table.
    ///
    /// Only fixed-shift candidates are tabulated; programs with unbounded
    /// shift are skipped, so the search is complete only with respect to
    /// fixed-shift realizations of the target.
    Search(SearchArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Program text, or a path to a file containing it.
    #[arg(long)]
    program: String,
    /// Input tape as JSON, e.g. '{"ones":[0,3],"head":0}'.
    #[arg(long, default_value = r#"{"ones":[],"head":0}"#)]
    tape: String,
    #[arg(long, default_value_t = 1_000_000)]
    fuel: u64,
}

#[derive(Args)]
struct NormArgs {
    /// Group element as JSON, e.g. '{"lamps":[-2,1],"shift":3}'.
    #[arg(long)]
    element: String,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct WordArgs {
    /// Element whose canonical word to compute.
    #[arg(long)]
    element: Option<String>,
    /// Word over {t,r,l} to evaluate.
    #[arg(long)]
    text: Option<String>,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Which {
    L,
    Lk,
    Lk0,
    Lk1,
    ENaive,
    ECanonical,
    EDeadAfter,
    EDeadInside,
    YDeadInside,
    CanonicalRadius,
}

#[derive(Args)]
struct SeriesArgs {
    #[arg(long, value_enum)]
    which: Which,
    /// Shift class k, for the lk/lk0/lk1 families.
    #[arg(long, default_value_t = 0)]
    k: i64,
    /// Truncation order N (coefficients 0..=N).
    #[arg(long, default_value_t = 60)]
    order: usize,
    /// Also estimate the growth rate from the last W coefficient ratios.
    #[arg(long)]
    growth_window: Option<usize>,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    length: usize,
    #[arg(long, default_value = "canonical")]
    level: PruneLevel,
    /// Print only the count (computed without materializing programs).
    #[arg(long)]
    count_only: bool,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    max_n: usize,
    /// Comma-separated prune levels; defaults to all five.
    #[arg(long, value_delimiter = ',')]
    levels: Vec<PruneLevel>,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Program text, or a path to a file containing it.
    #[arg(long)]
    program: String,
    /// Omit the semantic table when the bit window exceeds this many bits.
    #[arg(long, default_value_t = 20)]
    table_cap: usize,
}

#[derive(Args)]
struct SearchArgs {
    /// Target semantic table as JSON, or a path to a JSON file:
    /// '{"window":[0,1],"shift":0,"map":{"00":"00",...}}' with "⊥" for
    /// divergence.
    #[arg(long)]
    spec: String,
    #[arg(long)]
    max_length: usize,
    #[arg(long, default_value = "full")]
    level: PruneLevel,
}

/// Payload with one rendering per format; `csv` is `None` where tabular
/// output makes no sense.
struct Output {
    json: Value,
    text: String,
    csv: Option<String>,
}

enum CliError {
    Domain(String),
    Usage(String),
}

impl From<String> for CliError {
    fn from(msg: String) -> Self {
        CliError::Domain(msg)
    }
}

fn main() {
    let cli = Cli::parse();
    match dispatch(&cli.command) {
        Ok(output) => {
            let payload = match cli.format {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&output.json).unwrap();
                    s.push('\n');
                    s
                }
                Format::Text => output.text,
                Format::Csv => match output.csv {
                    Some(csv) => csv,
                    None => {
                        eprintln!("error: this subcommand has no CSV form");
                        std::process::exit(2);
                    }
                },
            };
            print!("{payload}");
            if let Some(path) = &cli.manifest {
                if let Err(e) = write_manifest(path, &cli.command, &payload) {
                    eprintln!("error: {e}");
                    std::process::exit(1);
                }
            }
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(1);
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
    }
}

#[derive(Serialize)]
struct RunManifest {
    command: String,
    parameters: Vec<String>,
    version: String,
    output_digest: String,
}

fn write_manifest(path: &str, command: &Command, payload: &str) -> Result<(), String> {
    let name = match command {
        Command::Run(_) => "run",
        Command::Norm(_) => "norm",
        Command::Word(_) => "word",
        Command::Series(_) => "series",
        Command::Enumerate(_) => "enumerate",
        Command::Table(_) => "table",
        Command::Analyze(_) => "analyze",
        Command::Search(_) => "search",
    };
    let manifest = RunManifest {
        command: name.to_string(),
        parameters: std::env::args().skip(1).collect(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        output_digest: format!("{:x}", Sha256::digest(payload.as_bytes())),
    };
    let body = serde_json::to_string_pretty(&manifest).unwrap();
    std::fs::write(path, body + "\n").map_err(|e| format!("writing {path}: {e}"))
}

fn dispatch(command: &Command) -> Result<Output, CliError> {
    match command {
        Command::Run(args) => cmd_run(args),
        Command::Norm(args) => cmd_norm(args),
        Command::Word(args) => cmd_word(args),
        Command::Series(args) => cmd_series(args),
        Command::Enumerate(args) => cmd_enumerate(args),
        Command::Table(args) => cmd_table(args),
        Command::Analyze(args) => cmd_analyze(args),
        Command::Search(args) => cmd_search(args),
    }
}

/// Interpret an argument as file contents when it names a readable file,
/// else as the literal text.
fn text_or_file(arg: &str) -> Result<String, String> {
    if Path::new(arg).is_file() {
        std::fs::read_to_string(arg)
            .map(|s| s.trim().to_string())
            .map_err(|e| format!("reading {arg}: {e}"))
    } else {
        Ok(arg.to_string())
    }
}

fn cmd_run(args: &RunArgs) -> Result<Output, CliError> {
    let text = text_or_file(&args.program)?;
    let program = parse(&text).map_err(|e| e.to_string())?;
    let tape: Tape =
        serde_json::from_str(&args.tape).map_err(|e| format!("tape: {e}"))?;
    let outcome = run(&program, &tape, args.fuel);
    let json = serde_json::to_value(&outcome).unwrap();
    let text = match &outcome {
        lamplight::Outcome::Halted { tape, steps } => format!(
            "halted after {steps} steps: ones {:?}, head {}\n",
            tape.ones.iter().collect::<Vec<_>>(),
            tape.head
        ),
        lamplight::Outcome::FuelExhausted { .. } => {
            format!("fuel exhausted after {} units\n", args.fuel)
        }
        lamplight::Outcome::NonTerminating { witness } => {
            format!("non-terminating: {witness}\n")
        }
    };
    Ok(Output {
        json,
        text,
        csv: None,
    })
}

fn parse_element(arg: &str) -> Result<GroupElement, CliError> {
    serde_json::from_str(arg)
        .map_err(|e| CliError::Domain(format!("element: {e}")))
}

fn cmd_norm(args: &NormArgs) -> Result<Output, CliError> {
    let element = parse_element(&args.element)?;
    let n = norm(&element);
    Ok(Output {
        json: json!({ "element": element, "norm": n.to_string() }),
        text: format!("{n}\n"),
        csv: None,
    })
}

fn cmd_word(args: &WordArgs) -> Result<Output, CliError> {
    let (element, word) = if let Some(raw) = &args.element {
        let element = parse_element(raw)?;
        let word = canonical_word(&element);
        (element, word)
    } else {
        let raw = args.text.as_ref().unwrap();
        let word = Word::parse(raw)
            .ok_or_else(|| CliError::Domain(format!("'{raw}' is not a word over t, r, l")))?;
        (evaluate(&word), word)
    };
    let n = norm(&element);
    Ok(Output {
        json: json!({
            "element": element,
            "word": word.to_string(),
            "norm": n.to_string(),
            "length": word.len(),
        }),
        text: if args.element.is_some() {
            format!("{word}\n")
        } else {
            format!("{}\n", serde_json::to_string(&element).unwrap())
        },
        csv: None,
    })
}

fn series_output(name: &str, series: &Series, growth_window: Option<usize>) -> Result<Output, CliError> {
    let coeffs: Vec<String> = series.coeffs().iter().map(|c| c.to_string()).collect();
    let mut json = json!({ "which": name, "order": series.order(), "coefficients": coeffs });
    let mut text = String::new();
    for (n, c) in series.coeffs().iter().enumerate() {
        writeln!(text, "{n}: {c}").unwrap();
    }
    let mut csv = String::from("n,coefficient\n");
    for (n, c) in series.coeffs().iter().enumerate() {
        writeln!(csv, "{n},{c}").unwrap();
    }
    if let Some(window) = growth_window {
        let (rate, spread) = growth_rate(series, window).map_err(|e| e.to_string())?;
        json["growth_rate"] = json!(rate);
        json["growth_spread"] = json!(spread);
        writeln!(text, "growth_rate: {rate} (spread {spread})").unwrap();
    }
    Ok(Output {
        json,
        text,
        csv: Some(csv),
    })
}

fn cmd_series(args: &SeriesArgs) -> Result<Output, CliError> {
    let order = args.order;
    let (name, series) = match args.which {
        Which::L => ("l".to_string(), series_l(order)),
        Which::Lk => (format!("lk[{}]", args.k), series_lk(args.k, order)),
        Which::Lk0 => (format!("lk0[{}]", args.k), series_lk0(args.k, order)),
        Which::Lk1 => (format!("lk1[{}]", args.k), series_lk1(args.k, order)),
        Which::ENaive => ("e-naive".to_string(), solve_e_naive(order)),
        Which::ECanonical => ("e-canonical".to_string(), solve_e_canonical(order)),
        Which::EDeadAfter => ("e-dead-after".to_string(), solve_e_dead_after(order)),
        Which::EDeadInside => {
            ("e-dead-inside".to_string(), solve_e_dead_inside(order).0)
        }
        Which::YDeadInside => {
            ("y-dead-inside".to_string(), solve_e_dead_inside(order).1)
        }
        Which::CanonicalRadius => {
            let root = smallest_positive_root(&CANONICAL_RADIUS_POLY, 1e-9)
                .map_err(|e| e.to_string())?;
            return Ok(Output {
                json: json!({ "which": "canonical-radius", "root": root }),
                text: format!("{root}\n"),
                csv: None,
            });
        }
    };
    series_output(&name, &series, args.growth_window)
}

fn cmd_enumerate(args: &EnumerateArgs) -> Result<Output, CliError> {
    let count = count_programs(args.length, args.level);
    if args.count_only {
        return Ok(Output {
            json: json!({
                "length": args.length,
                "level": args.level.name(),
                "count": count.to_string(),
            }),
            text: format!("{count}\n"),
            csv: Some(format!(
                "length,level,count\n{},{},{count}\n",
                args.length,
                args.level.name()
            )),
        });
    }
    let programs = enumerate_programs(args.length, args.level);
    let texts: Vec<String> = programs.iter().map(|p| p.to_string()).collect();
    let mut text = String::new();
    for t in &texts {
        writeln!(text, "{t}").unwrap();
    }
    let mut csv = String::from("program\n");
    csv.push_str(&text);
    Ok(Output {
        json: json!({
            "length": args.length,
            "level": args.level.name(),
            "count": count.to_string(),
            "programs": texts,
        }),
        text,
        csv: Some(csv),
    })
}

fn cmd_table(args: &TableArgs) -> Result<Output, CliError> {
    let levels = if args.levels.is_empty() {
        PruneLevel::ALL.to_vec()
    } else {
        args.levels.clone()
    };
    let rows = growth_table(args.max_n, &levels);
    let mut csv = String::from("n");
    for level in &levels {
        write!(csv, ",{level}").unwrap();
    }
    csv.push('\n');
    let mut json_rows = Vec::new();
    for (n, counts) in &rows {
        write!(csv, "{n}").unwrap();
        for c in counts {
            write!(csv, ",{c}").unwrap();
        }
        csv.push('\n');
        json_rows.push(json!({
            "n": n,
            "counts": counts.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        }));
    }
    Ok(Output {
        json: json!({
            "levels": levels.iter().map(|l| l.name()).collect::<Vec<_>>(),
            "rows": json_rows,
        }),
        text: csv.clone(),
        csv: Some(csv),
    })
}

fn cmd_analyze(args: &AnalyzeArgs) -> Result<Output, CliError> {
    let text = text_or_file(&args.program)?;
    let program = parse(&text).map_err(|e| e.to_string())?;
    let shift = shift_class(&program);
    let (normalized, bottom) = normalize_with_bottom(&program);
    let (shift_json, window, table): (Value, Option<Vec<i64>>, Option<SemanticTable>) =
        match shift {
            ShiftClass::Unbounded => (json!("unbounded"), None, None),
            ShiftClass::Fixed(i) => {
                let window: Vec<i64> =
                    bit_window(&program).unwrap().0.into_iter().collect();
                let table = (window.len() <= args.table_cap)
                    .then(|| semantic_table(&program))
                    .and_then(|r| r.ok());
                (json!(i), Some(window), table)
            }
        };
    let mut out = String::new();
    writeln!(out, "program:    {program}").unwrap();
    match shift {
        ShiftClass::Fixed(i) => writeln!(out, "shift:      {i}").unwrap(),
        ShiftClass::Unbounded => writeln!(out, "shift:      unbounded").unwrap(),
    }
    if let Some(w) = &window {
        writeln!(out, "window:     {w:?}").unwrap();
    }
    writeln!(out, "normalized: {normalized}").unwrap();
    writeln!(out, "bottom:     {bottom}").unwrap();
    Ok(Output {
        json: json!({
            "program": program.to_string(),
            "shift": shift_json,
            "window": window,
            "table": table,
            "normalized": normalized.to_string(),
            "bottom": bottom,
        }),
        text: out,
        csv: None,
    })
}

fn cmd_search(args: &SearchArgs) -> Result<Output, CliError> {
    let raw = text_or_file(&args.spec)?;
    let target: SemanticTable =
        serde_json::from_str(&raw).map_err(|e| CliError::Usage(format!("spec: {e}")))?;
    let spec = SearchSpec {
        target,
        max_length: args.max_length,
        level: args.level,
    };
    let found = search_shortest(&spec).map_err(|e| e.to_string())?;
    Ok(Output {
        json: match &found {
            Some(p) => json!({ "found": p.to_string(), "length": p.len() }),
            None => json!({ "found": null }),
        },
        text: match &found {
            Some(p) => format!("{p}\n"),
            None => "not found\n".to_string(),
        },
        csv: None,
    })
}
