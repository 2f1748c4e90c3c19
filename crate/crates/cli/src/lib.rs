//! Command-line front end for Tumbug diagrams.
//!
//! Every subcommand writes line-oriented text. Exit status 0 means success,
//! 1 means the input was read but violations or mismatches were found, and
//! 2 means a usage, I/O, or parse error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use tumbug_core::dsl;
use tumbug_core::grammar::{resolve_query, scova_classify, validate_with, BlockKind, LegalityTable};
use tumbug_core::heuristics::{check, Level, RuleSet, Trigger};
use tumbug_core::lexicon::{parse_lexicon, select_word, ModalTable};
use tumbug_core::render::{render, RenderError, RenderOptions};
use tumbug_core::templates::{build_named, format_trace, template_names, trace};
use tumbug_core::{Diagram, Id};

/// Environment variable naming a directory of replacement data tables.
pub const TABLES_ENV: &str = "TUMBUG_TABLES";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success,
    Findings,
    Usage,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        match self {
            ExitStatus::Success => 0,
            ExitStatus::Findings => 1,
            ExitStatus::Usage => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "tumbug", version, about = "Validate, render, and query Tumbug diagrams")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print grammar violations, one per line.
    Validate { file: PathBuf },
    /// Write a diagram as SVG.
    Render {
        file: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
        /// Fill role-colored elements.
        #[arg(long)]
        color: bool,
        #[arg(long, default_value_t = 800.0)]
        width: f64,
        #[arg(long, default_value_t = 600.0)]
        height: f64,
    },
    /// Print a stock construction as diagram text.
    Template {
        /// Template name; see --list.
        name: Option<String>,
        /// Comma-separated role labels, in template order.
        #[arg(long, value_delimiter = ',')]
        roles: Vec<String>,
        #[arg(long)]
        list: bool,
    },
    /// Rank lexicon words against a context.
    Match {
        #[arg(long)]
        context: PathBuf,
        #[arg(long)]
        lexicon: PathBuf,
        /// Meaning of the context row to use; defaults to the first row.
        #[arg(long)]
        row: Option<String>,
    },
    /// Print the concepts a modal verb expresses in one meaning.
    Modal { verb: String, meaning: String },
    /// Print required Building Blocks for trigger tags, optionally checking a diagram.
    Heuristics {
        /// Comma-separated `tag` or `tag:cue` entries.
        #[arg(long, value_delimiter = ',')]
        tags: Vec<String>,
        #[arg(long)]
        check: Option<PathBuf>,
    },
    /// Print the basic kind letter (S, C, O, V, A) of a Building Block kind.
    Classify { kind: String },
    /// Print the value of an attribute, or DK.
    Query {
        file: PathBuf,
        #[arg(long)]
        owner: String,
        #[arg(long)]
        attr: String,
    },
    /// Walk the State Diagram marker and print the visited states.
    Trace {
        file: PathBuf,
        /// Comma-separated tube labels chosen at each decision.
        #[arg(long, default_value = "")]
        schedule: String,
    },
}

struct Failure(ExitStatus, String);

type Outcome = Result<ExitStatus, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure(ExitStatus::Usage, msg.into())
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Diagram, Failure> {
    dsl::parse(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// Reads `name` from the override directory when one is set and holds it.
fn table_override(name: &str) -> Result<Option<String>, Failure> {
    let Some(dir) = std::env::var_os(TABLES_ENV) else {
        return Ok(None);
    };
    let path = Path::new(&dir).join(name);
    if path.is_file() {
        read(&path).map(Some)
    } else {
        Ok(None)
    }
}

fn legality() -> Result<LegalityTable, Failure> {
    match table_override("legality.table")? {
        Some(t) => LegalityTable::parse(&t).map_err(|e| usage(format!("legality.table: {e}"))),
        None => Ok(LegalityTable::default()),
    }
}

fn modal_table() -> Result<ModalTable, Failure> {
    match table_override("modal.table")? {
        Some(t) => ModalTable::parse(&t).map_err(|e| usage(format!("modal.table: {e}"))),
        None => Ok(ModalTable::builtin().clone()),
    }
}

fn rule_set() -> Result<RuleSet, Failure> {
    match table_override("heuristics.rules")? {
        Some(t) => RuleSet::parse(&t).map_err(|e| usage(format!("heuristics.rules: {e}"))),
        None => Ok(RuleSet::builtin().clone()),
    }
}

fn io(e: std::io::Error) -> Failure {
    usage(format!("write failed: {e}"))
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Validate { file } => {
            let d = load(&file)?;
            let violations = validate_with(&d, &legality()?);
            for v in &violations {
                writeln!(out, "{v}").map_err(io)?;
            }
            Ok(if violations.is_empty() { ExitStatus::Success } else { ExitStatus::Findings })
        }
        Command::Render { file, out: path, color, width, height } => {
            let d = load(&file)?;
            let opts = RenderOptions { color, width, height, ..RenderOptions::default() };
            match render(&d, &opts) {
                Ok(svg) => {
                    std::fs::write(&path, svg).map_err(|e| usage(format!("{}: {e}", path.display())))?;
                    Ok(ExitStatus::Success)
                }
                Err(RenderError::InvalidDiagram(vs)) => {
                    let lines: Vec<String> = vs.iter().map(ToString::to_string).collect();
                    Err(Failure(ExitStatus::Findings, lines.join("\n")))
                }
                Err(e) => Err(usage(e.to_string())),
            }
        }
        Command::Template { list: true, .. } => {
            for n in template_names() {
                writeln!(out, "{n}").map_err(io)?;
            }
            Ok(ExitStatus::Success)
        }
        Command::Template { name, roles, .. } => {
            let name = name.ok_or_else(|| usage("template needs a name or --list"))?;
            let roles: Vec<&str> = roles.iter().map(String::as_str).collect();
            let d = build_named(&name, &roles).map_err(|e| usage(e.to_string()))?;
            out.write_all(dsl::serialize(&d).as_bytes()).map_err(io)?;
            Ok(ExitStatus::Success)
        }
        Command::Match { context, lexicon, row } => {
            let ctx = parse_lexicon(&read(&context)?).map_err(|e| usage(format!("{}: {e}", context.display())))?;
            let lex = parse_lexicon(&read(&lexicon)?).map_err(|e| usage(format!("{}: {e}", lexicon.display())))?;
            let chosen = match &row {
                Some(m) => ctx.iter().find(|(_, meaning, _)| meaning == m),
                None => ctx.iter().next(),
            };
            let (_, _, cv) = chosen.ok_or_else(|| usage("context row not found"))?;
            let ranked = select_word(cv, &lex).map_err(|e| usage(e.to_string()))?;
            for r in ranked {
                writeln!(out, "{} {}", r.word, r.count).map_err(io)?;
            }
            Ok(ExitStatus::Success)
        }
        Command::Modal { verb, meaning } => {
            let active = modal_table()?.concepts(&verb, &meaning).map_err(|e| usage(e.to_string()))?;
            for (name, implied) in &active.concepts {
                if *implied {
                    writeln!(out, "({name})").map_err(io)?;
                } else {
                    writeln!(out, "{name}").map_err(io)?;
                }
            }
            Ok(ExitStatus::Success)
        }
        Command::Heuristics { tags, check: file } => {
            let triggers = tags
                .iter()
                .filter(|t| !t.trim().is_empty())
                .map(|t| Trigger::parse(t).map_err(|e| usage(e.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            let req = rule_set()?.requirements_for(triggers);
            let Some(file) = file else {
                for (level, map) in [("mandatory", &req.mandatory), ("advisory", &req.advisory)] {
                    for (kind, idx) in map {
                        writeln!(out, "{level} {kind} {}", join_indices(idx)).map_err(io)?;
                    }
                }
                return Ok(ExitStatus::Success);
            };
            let report = check(&load(&file)?, &req);
            for e in &report.entries {
                let level = if e.level == Level::Mandatory { "mandatory" } else { "advisory" };
                let state = if e.present() { "present" } else { "missing" };
                writeln!(out, "{level} {} {state} {}", e.kind, e.count).map_err(io)?;
            }
            Ok(if report.satisfied() { ExitStatus::Success } else { ExitStatus::Findings })
        }
        Command::Classify { kind } => {
            let k = BlockKind::from_name(&kind).ok_or_else(|| usage(format!("unknown kind {kind:?}")))?;
            let basic = scova_classify(k).map_err(|e| usage(e.to_string()))?;
            writeln!(out, "{}", basic.letter()).map_err(io)?;
            Ok(ExitStatus::Success)
        }
        Command::Query { file, owner, attr } => {
            let d = load(&file)?;
            let owner = Id::new(owner).map_err(|e| usage(e.to_string()))?;
            let v = resolve_query(&d, &owner, &attr).map_err(|e| usage(e.to_string()))?;
            writeln!(out, "{v}").map_err(io)?;
            Ok(ExitStatus::Success)
        }
        Command::Trace { file, schedule } => {
            let d = load(&file)?;
            let schedule: Vec<String> =
                schedule.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect();
            let visited = trace(&d, &schedule).map_err(|e| Failure(ExitStatus::Findings, e.to_string()))?;
            writeln!(out, "{}", format_trace(&visited)).map_err(io)?;
            Ok(ExitStatus::Success)
        }
    }
}

fn join_indices(idx: &std::collections::BTreeSet<u8>) -> String {
    idx.iter().map(|i| format!("#{i}")).collect::<Vec<_>>().join(",")
}

/// Runs one invocation. `argv` includes the program name.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> ExitStatus
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let status = if e.use_stderr() { ExitStatus::Usage } else { ExitStatus::Success };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return status;
        }
    };
    match dispatch(cli.command, out) {
        Ok(s) => s,
        Err(Failure(status, msg)) => {
            let _ = writeln!(err, "{msg}");
            status
        }
    }
}
