use std::process::ExitCode;

use flag_orbits::Error;
use serde::Serialize;
use serde_json::Value;

/// Everything a command prints in `--json` mode.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub input: String,
    pub result: Value,
    pub diagnostics: Vec<String>,
}

/// A finished command: its report, its text rendering, and whether every
/// check it ran passed.
pub struct Outcome {
    pub report: Report,
    pub text: String,
    pub ok: bool,
}

impl Outcome {
    pub fn new(command: &str, input: impl Into<String>, result: impl Serialize, text: String) -> Self {
        Outcome {
            report: Report {
                command: command.to_string(),
                input: input.into(),
                result: serde_json::to_value(result).expect("results serialize"),
                diagnostics: Vec::new(),
            },
            text,
            ok: true,
        }
    }

    pub fn fail(mut self, diagnostic: String) -> Self {
        self.report.diagnostics.push(diagnostic);
        self.ok = false;
        self
    }

    pub fn note(mut self, diagnostic: String) -> Self {
        self.report.diagnostics.push(diagnostic);
        self
    }

    pub fn emit(self, json: bool) -> ExitCode {
        if json {
            println!("{}", serde_json::to_string_pretty(&self.report).expect("reports serialize"));
        } else {
            print!("{}", self.text);
            for d in &self.report.diagnostics {
                eprintln!("note: {d}");
            }
        }
        if self.ok {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(EXIT_CHECK_FAILED)
        }
    }
}

pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

pub fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::SplittingFailed(_) | Error::Overflow(_) => EXIT_CHECK_FAILED,
        _ => EXIT_USAGE,
    }
}
