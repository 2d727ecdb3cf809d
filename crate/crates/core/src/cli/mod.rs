//! The `ontobot` command line.
//!
//! Exit codes: 0 ok, 1 validation violations (or a structurally broken plan),
//! 2 I/O, parse or usage errors, 3 unsupported query feature, 4 unknown entity.

mod table;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use thiserror::Error;

use crate::query::{evaluate, parse_query_with_prefixes, QueryError};
use crate::rdf::{Prefixes, Term};
use crate::reasoner::{KnowledgeBase, ReasonerError};
use crate::schema::{validate, Vocabulary};
use crate::turtle::{load_files, LoadError};
use crate::vocab::standard_prefixes;

pub use table::{render_set, render_term, OutputFormat, Table};

/// Environment variable naming a directory whose `*.ttl` files are loaded when
/// no `-k` is given.
pub const FIXTURES_ENV: &str = "ONTOBOT_FIXTURES";

#[derive(Debug, Parser)]
#[command(
    name = "ontobot",
    version,
    about = "Query and check robot task knowledge graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check Turtle files against the OntoBOT rules.
    Validate {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(short, long, value_enum, default_value_t)]
        output: OutputFormat,
    },
    /// Run a SPARQL SELECT query over knowledge graphs.
    Query {
        #[arg(short = 'k', long = "kg")]
        kg: Vec<PathBuf>,
        #[arg(short = 'f', long = "file")]
        file: PathBuf,
        #[arg(short, long, value_enum, default_value_t)]
        output: OutputFormat,
    },
    /// Answer one of the six competency questions.
    Cq {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=6))]
        id: u8,
        #[arg(short = 'k', long = "kg")]
        kg: Vec<PathBuf>,
        #[arg(long)]
        activity: Vec<String>,
        #[arg(long)]
        robot: Option<String>,
        /// With `cq 6`: every robot against every procedure.
        #[arg(long)]
        matrix: bool,
        #[arg(short, long, value_enum, default_value_t)]
        output: OutputFormat,
    },
    /// Print the OntoBOT vocabulary as Turtle.
    Vocab,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Load(#[from] LoadError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}:{source}", path.display())]
    Query { path: PathBuf, source: QueryError },
    #[error(transparent)]
    Reasoner(#[from] ReasonerError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Load(_) | CliError::Io { .. } => 2,
            CliError::Query {
                source: QueryError::Syntax(_),
                ..
            } => 2,
            CliError::Query { .. } => 3,
            CliError::Reasoner(e) => match e {
                ReasonerError::BrokenChain { .. } | ReasonerError::ActionWithoutAffordance(_) => 1,
                _ => 4,
            },
        }
    }
}

/// Parses `args` (including the program name) and runs the command, writing
/// results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let write = |out: &mut dyn Write, text: &str| {
        out.write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: PathBuf::from("<stdout>"),
                source,
            })
    };
    match command {
        Command::Validate { files, output } => {
            let graph = load_files(&files)?;
            let report = validate(&graph, &Vocabulary::ontobot());
            let prefixes = display_prefixes(graph.prefixes());
            let mut table = Table::new("validate", &["rule", "severity", "offender", "message"]);
            for (severity, items) in [
                ("violation", &report.violations),
                ("warning", &report.warnings),
            ] {
                for v in items {
                    let offender = match &v.offender {
                        crate::schema::Offender::Node(n) => render_term(n, &prefixes),
                        crate::schema::Offender::Triple(t) => format!(
                            "{} {} {}",
                            render_term(t.subject(), &prefixes),
                            render_term(t.predicate(), &prefixes),
                            render_term(t.object(), &prefixes)
                        ),
                    };
                    table.push(vec![
                        v.rule.to_string(),
                        severity.into(),
                        offender,
                        v.message.clone(),
                    ]);
                }
            }
            write(out, &table.render(output))?;
            let _ = writeln!(
                err,
                "{} triples, {} violations, {} warnings",
                graph.len(),
                report.violations.len(),
                report.warnings.len()
            );
            Ok(if report.is_valid() { 0 } else { 1 })
        }
        Command::Query { kg, file, output } => {
            let kb = load_kb(kg)?;
            let text = std::fs::read_to_string(&file).map_err(|source| CliError::Io {
                path: file.clone(),
                source,
            })?;
            let prefixes = display_prefixes(kb.graph().prefixes());
            let query =
                parse_query_with_prefixes(&text, &prefixes).map_err(|source| CliError::Query {
                    path: file.clone(),
                    source,
                })?;
            let id = file
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            let columns: Vec<&str> = query.projection.iter().map(String::as_str).collect();
            let mut table = Table::new(id, &columns);
            for solution in evaluate(&query, kb.graph()) {
                table.push(
                    solution
                        .row(&query.projection)
                        .into_iter()
                        .map(|t| render_term(t, &prefixes))
                        .collect(),
                );
            }
            write(out, &table.render(output))?;
            Ok(0)
        }
        Command::Cq {
            id,
            kg,
            activity,
            robot,
            matrix,
            output,
        } => {
            let kb = load_kb(kg)?;
            let table = competency(&kb, id, &activity, robot.as_deref(), matrix)?;
            write(out, &table.render(output))?;
            Ok(0)
        }
        Command::Vocab => {
            write(out, &Vocabulary::ontobot().to_turtle())?;
            Ok(0)
        }
    }
}

fn display_prefixes(graph_prefixes: &Prefixes) -> Prefixes {
    let mut prefixes = standard_prefixes();
    prefixes.extend_missing(graph_prefixes);
    prefixes
}

fn load_kb(kg: Vec<PathBuf>) -> Result<KnowledgeBase, CliError> {
    let files = if kg.is_empty() { fixture_files()? } else { kg };
    Ok(KnowledgeBase::load(&files)?)
}

fn fixture_files() -> Result<Vec<PathBuf>, CliError> {
    let dir = std::env::var_os(FIXTURES_ENV).ok_or_else(|| {
        CliError::Usage(format!(
            "no knowledge graph given: pass -k <file> or set {FIXTURES_ENV}"
        ))
    })?;
    let dir = Path::new(&dir);
    let entries = std::fs::read_dir(dir).map_err(|source| CliError::Io {
        path: dir.to_owned(),
        source,
    })?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(Result::ok)
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|e| e == "ttl"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(CliError::Usage(format!("{}: no .ttl files", dir.display())));
    }
    Ok(files)
}

fn one_activity(kb: &KnowledgeBase, labels: &[String]) -> Result<Term, CliError> {
    match labels {
        [label] => Ok(kb.activity_by_label(label)?),
        _ => Err(CliError::Usage("exactly one --activity is required".into())),
    }
}

/// Activities named by `labels`, or every activity when none are given.
fn activities_or_all(kb: &KnowledgeBase, labels: &[String]) -> Result<Vec<Term>, CliError> {
    if labels.is_empty() {
        return Ok(kb.activities());
    }
    let mut found = Vec::new();
    for label in labels {
        found.extend(kb.activities_by_label(label)?);
    }
    Ok(found)
}

/// Builds the result table of competency question `id`.
pub fn competency(
    kb: &KnowledgeBase,
    id: u8,
    activity: &[String],
    robot: Option<&str>,
    matrix: bool,
) -> Result<Table, CliError> {
    let p = display_prefixes(kb.graph().prefixes());
    let label = |t: &Term| {
        kb.label_of(t)
            .map(str::to_owned)
            .unwrap_or_else(|| render_term(t, &p))
    };
    let table = match id {
        1 => {
            let [label] = activity else {
                return Err(CliError::Usage("cq 1 takes exactly one --activity".into()));
            };
            let mut table = Table::new("cq1", &["object", "affordance"]);
            for (object, affordance) in kb.cq1_objects_affordances(label)? {
                table.push(vec![render_term(&object, &p), render_term(&affordance, &p)]);
            }
            table
        }
        2 => {
            let activity = one_activity(kb, activity)?;
            let plan = kb.task_plan(&activity)?;
            let mut table = Table::new("cq2", &["activity", "procedure", "step", "action"]);
            for procedure in &plan.procedures {
                for step in &procedure.steps {
                    for action in &step.actions {
                        table.push(vec![
                            render_term(&plan.activity, &p),
                            procedure.label.clone(),
                            step.label.clone(),
                            action.label.clone(),
                        ]);
                    }
                }
            }
            table
        }
        3 => {
            let mut table = Table::new("cq3", &["activity", "affordance"]);
            for a in activities_or_all(kb, activity)? {
                for affordance in kb.cq3_required_affordances(&a)? {
                    table.push(vec![label(&a), render_term(&affordance, &p)]);
                }
            }
            table
        }
        4 => {
            let activity = one_activity(kb, activity)?;
            let mut table = Table::new("cq4", &["robot"]);
            for r in kb.cq4_capable_robots(&activity)? {
                table.push(vec![label(&r)]);
            }
            table
        }
        5 => {
            let activities = activities_or_all(kb, activity)?;
            let robots = match robot {
                Some(r) => vec![kb.robot_by_label(r)?],
                None => kb.robots(),
            };
            let mut table = Table::new("cq5", &["robot", "capable", "missing"]);
            for r in robots {
                let capable = kb.cq5_can_execute_all(&r, &activities)?;
                let mut missing = std::collections::BTreeSet::new();
                for a in &activities {
                    missing.extend(kb.cq6_gap_report(&r, a)?.missing());
                }
                table.push(vec![
                    label(&r),
                    if capable { "yes" } else { "no" }.into(),
                    render_set(&missing, &p),
                ]);
            }
            table
        }
        6 if matrix => {
            let m = kb.feasibility_matrix();
            let mut columns = vec!["activity", "procedure"];
            columns.extend(m.robots.iter().map(|(_, l)| l.as_str()));
            let mut table = Table::new("cq6", &columns);
            for row in &m.rows {
                let mut cells = vec![row.activity_label.clone(), row.procedure_label.clone()];
                cells.extend(
                    row.cells()
                        .into_iter()
                        .map(|ok| if ok { "✓" } else { "✗" }.to_owned()),
                );
                table.push(cells);
            }
            table
        }
        6 => {
            let Some(robot) = robot else {
                return Err(CliError::Usage(
                    "cq 6 needs --robot and --activity, or --matrix".into(),
                ));
            };
            let robot = kb.robot_by_label(robot)?;
            let activity = one_activity(kb, activity)?;
            let report = kb.cq6_gap_report(&robot, &activity)?;
            let mut table = Table::new(
                "cq6",
                &["procedure", "step", "required", "missing", "achievable"],
            );
            for proc in &report.procedures {
                for (step, gap) in std::iter::once(("", &proc.gap))
                    .chain(proc.steps.iter().map(|s| (s.label.as_str(), s)))
                {
                    table.push(vec![
                        proc.gap.label.clone(),
                        step.to_owned(),
                        render_set(&gap.required, &p),
                        render_set(&gap.missing, &p),
                        if gap.achievable() { "✓" } else { "✗" }.into(),
                    ]);
                }
            }
            table
        }
        _ => return Err(CliError::Usage(format!("no competency question {id}"))),
    };
    Ok(table)
}
