//! Command-line front end for `zptower`: input schemas, commands and
//! report rendering.

pub mod commands;
pub mod oracle;
pub mod report;
pub mod schema;

use commands::{Command, Sources};
use report::{CommandResult, Config, Envelope, ErrorBody, ErrorEnvelope};
use schema::{CliError, SCHEMA_VERSION};

/// What a run writes and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn snake(name: &str) -> String {
    let mut out = String::new();
    for (i, ch) in name.chars().enumerate() {
        if ch.is_ascii_uppercase() {
            if i > 0 {
                out.push('_');
            }
            out.push(ch.to_ascii_lowercase());
        } else {
            out.push(ch);
        }
    }
    out
}

fn error_body(e: &CliError) -> ErrorBody {
    match e {
        CliError::Input(ie) => ErrorBody {
            kind: "malformed_input".into(),
            pointer: Some(ie.pointer.clone()),
            message: ie.message.clone(),
        },
        CliError::Domain(de) => {
            let debug = format!("{de:?}");
            let name = debug.split(|c: char| !c.is_ascii_alphanumeric()).next().unwrap_or("");
            ErrorBody {
                kind: snake(name),
                pointer: None,
                message: de.to_string(),
            }
        }
    }
}

pub fn render(result: &CommandResult, envelope: &Envelope) -> String {
    match envelope.config.format.as_str() {
        "csv" => result.table().csv(),
        "table" => result.table().text(),
        _ => {
            let mut s = serde_json::to_string_pretty(envelope).expect("reports serialize");
            s.push('\n');
            s
        }
    }
}

/// Runs one command on already-read inputs.
pub fn execute(cmd: Command, cfg: Config, src: &Sources) -> Outcome {
    match commands::run(cmd, &cfg, src) {
        Ok(result) => {
            let failed = matches!(&result, CommandResult::Oracle(o) if !o.all_passed);
            let envelope = Envelope {
                schema: SCHEMA_VERSION.into(),
                command: cmd.name().into(),
                config: cfg,
                result: result.clone(),
            };
            Outcome {
                code: if failed { 1 } else { 0 },
                stdout: render(&result, &envelope),
                stderr: String::new(),
            }
        }
        Err(e) => Outcome {
            code: match e {
                CliError::Input(_) => 2,
                CliError::Domain(_) => 1,
            },
            stdout: String::new(),
            stderr: error_json(cmd.name(), error_body(&e)),
        },
    }
}

pub fn error_json(command: &str, error: ErrorBody) -> String {
    let env = ErrorEnvelope {
        schema: SCHEMA_VERSION.into(),
        command: command.into(),
        error,
    };
    let mut s = serde_json::to_string(&env).expect("errors serialize");
    s.push('\n');
    s
}
