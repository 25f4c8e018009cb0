//! The `viscat` command line: `validate`, `analyze` and `paths`.
//!
//! Exit codes: 0 success, 1 validation failure (or disagreeing paths),
//! 2 parse errors or unknown objects, 3 I/O errors. With several files the
//! highest code wins.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::diagram::{DiagramError, Mode};
use crate::spec_io::{
    emit_paths, emit_report, parse_spec, paths_report, Format, Report, SpecModel, SpecSource,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "viscat",
    version,
    about = "Check visualization process models written as diagrams of finite sets"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check category axioms, commutativity and extremal objects.
    Validate(CommonArgs),
    /// Report render properties, chart junk, intension and questions.
    Analyze {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum, default_value_t = ModeArg::SetLevel)]
        mode: ModeArg,
    },
    /// List every simple path between two objects and compare composites.
    Paths {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Model files; `-` reads standard input.
    #[arg(required = true)]
    pub files: Vec<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    pub format: FormatArg,
    /// Longest path considered; defaults to the number of morphisms.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_len: Option<u64>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Text,
    Machine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    SetLevel,
    Categorical,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Machine => Format::Machine,
        }
    }
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::SetLevel => Mode::SetLevel,
            ModeArg::Categorical => Mode::Categorical,
        }
    }
}

/// Outcome for one input file.
struct FileResult {
    code: i32,
    /// Text report, or a JSON value in machine format.
    output: Option<Output>,
    stderr: String,
}

enum Output {
    Text(String),
    Json(serde_json::Value),
}

#[derive(Clone, Copy)]
enum Task<'a> {
    Validate,
    Analyze(Mode),
    Paths { from: &'a str, to: &'a str },
}

fn run_file(origin: &str, text: &str, task: Task<'_>, format: Format, max_len: Option<usize>) -> FileResult {
    let mut stderr = String::new();
    let parsed = parse_spec(&SpecSource::new(text, origin));
    for d in &parsed.diagnostics {
        stderr.push_str(&d.render(origin));
        stderr.push('\n');
    }
    let Some(model) = parsed.model else {
        return FileResult {
            code: EXIT_PARSE,
            output: None,
            stderr,
        };
    };
    let emit = |text: String| match format {
        Format::Text => Output::Text(text),
        Format::Machine => Output::Json(serde_json::from_str(&text).expect("emitted JSON parses")),
    };
    match task {
        Task::Validate | Task::Analyze(_) => {
            let report = match task {
                Task::Analyze(mode) => {
                    if let SpecModel::Diagram(_) = model {
                        stderr.push_str(&format!(
                            "{origin}: note: no roles are bound, only diagram checks apply\n"
                        ));
                    }
                    Report::analyze(origin, &model, mode, max_len)
                }
                _ => Report::validate(origin, &model, max_len),
            };
            let code = match task {
                Task::Validate if !report.passed => EXIT_FAILED,
                _ => EXIT_OK,
            };
            FileResult {
                code,
                output: Some(emit(emit_report(&report, format))),
                stderr,
            }
        }
        Task::Paths { from, to } => match paths_report(origin, &model, from, to, max_len) {
            Ok(r) => FileResult {
                code: if r.agree { EXIT_OK } else { EXIT_FAILED },
                output: Some(emit(emit_paths(&r, format))),
                stderr,
            },
            Err(e) => {
                let code = match e {
                    DiagramError::UnknownObject { .. } => EXIT_PARSE,
                    _ => EXIT_FAILED,
                };
                stderr.push_str(&format!("{origin}: error: {e}\n"));
                FileResult {
                    code,
                    output: None,
                    stderr,
                }
            }
        },
    }
}

/// Runs the command line against the given streams and returns the exit code.
pub fn run_with_io<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                EXIT_PARSE
            } else {
                let _ = stdout.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    let (common, task) = match &cli.command {
        Command::Validate(c) => (c, Task::Validate),
        Command::Analyze { common, mode } => (common, Task::Analyze((*mode).into())),
        Command::Paths { common, from, to } => (common, Task::Paths { from, to }),
    };
    let format: Format = common.format.into();
    let max_len = common.max_len.map(|n| n as usize);

    let mut stdin_text: Option<String> = None;
    let mut inputs: Vec<(String, Result<String, String>)> = Vec::new();
    for path in &common.files {
        if path.as_os_str() == "-" {
            let text = match &stdin_text {
                Some(t) => Ok(t.clone()),
                None => {
                    let mut buf = String::new();
                    match stdin.read_to_string(&mut buf) {
                        Ok(_) => {
                            stdin_text = Some(buf.clone());
                            Ok(buf)
                        }
                        Err(e) => Err(e.to_string()),
                    }
                }
            };
            inputs.push(("<stdin>".to_string(), text));
        } else {
            let origin = path.display().to_string();
            let text = std::fs::read_to_string(path).map_err(|e| e.to_string());
            inputs.push((origin, text));
        }
    }

    let results: Vec<FileResult> = std::thread::scope(|scope| {
        let handles: Vec<_> = inputs
            .iter()
            .map(|(origin, text)| {
                scope.spawn(move || match text {
                    Ok(text) => run_file(origin, text, task, format, max_len),
                    Err(e) => FileResult {
                        code: EXIT_IO,
                        output: None,
                        stderr: format!("{origin}: error: cannot read: {e}\n"),
                    },
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker does not panic"))
            .collect()
    });

    let mut code = EXIT_OK;
    let mut out = String::new();
    let mut json = Vec::new();
    for r in results {
        code = code.max(r.code);
        let _ = stderr.write_all(r.stderr.as_bytes());
        match r.output {
            Some(Output::Text(t)) => out.push_str(&t),
            Some(Output::Json(v)) => json.push(v),
            None => {}
        }
    }
    if format == Format::Machine {
        let doc = if common.files.len() == 1 {
            json.pop().unwrap_or(serde_json::Value::Null)
        } else {
            serde_json::Value::Array(json)
        };
        if !doc.is_null() {
            out = serde_json::to_string_pretty(&doc).expect("JSON values serialize");
            out.push('\n');
        }
    }
    let written = match &common.out {
        Some(path) => std::fs::write(path, &out).map_err(|e| format!("{}: {e}", path.display())),
        None => stdout.write_all(out.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write report: {e}");
        code = code.max(EXIT_IO);
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str], stdin: &str) -> (i32, String, String) {
        let mut input = stdin.as_bytes();
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_with_io(
            std::iter::once("viscat").chain(args.iter().copied()),
            &mut input,
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    const SQUARE: &str = "object A { a1 a2 }\nobject C { c1 c2 }\n\
        morphism f : A -> C { a1 -> c1, a2 -> c2 }\n\
        morphism h : A -> C { a1 -> c1, a2 -> c1 }\n";

    #[test]
    fn stdin_validate_reports_failure() {
        let (code, out, _) = run(&["validate", "-"], SQUARE);
        assert_eq!(code, EXIT_FAILED);
        assert!(out.contains("[f] vs [h]: FAIL at element a2"), "{out}");
    }

    #[test]
    fn paths_unknown_object_is_exit_2() {
        let (code, _, err) = run(&["paths", "-", "--from", "A", "--to", "Q"], SQUARE);
        assert_eq!(code, EXIT_PARSE);
        assert!(err.contains("Q"));
    }

    #[test]
    fn bad_flags_fail_before_reading() {
        let (code, _, err) = run(&["validate", "--max-len", "0", "missing.viscat"], "");
        assert_eq!(code, EXIT_PARSE);
        assert!(!err.contains("cannot read"));
    }

    #[test]
    fn machine_format_is_json() {
        let (code, out, _) = run(&["analyze", "--format", "machine", "-"], SQUARE);
        assert_eq!(code, EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["commutativity"]["status"], "fail");
    }

    #[test]
    fn missing_file_is_exit_3() {
        let (code, _, err) = run(&["validate", "/nonexistent/x.viscat"], "");
        assert_eq!(code, EXIT_IO);
        assert!(err.contains("cannot read"));
    }
}
