use std::fs;
use std::io::{self, Write};
use std::path::Path;

use anyhow::{Context, Result};
use mquwm::Error;
use serde::Serialize;
use serde_json::json;

use crate::commands::{Cli, Format};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_CLAIM: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_CAPACITY: u8 = 3;

/// Exit status for an error that stopped a command.
pub fn exit_status(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Capacity { .. } | Error::Refused(_)) => EXIT_CAPACITY,
        Some(Error::ConditionsFailed(_) | Error::Integrity(_) | Error::NotSubcode | Error::NotComplementClosed(_)) => {
            EXIT_CLAIM
        }
        _ => EXIT_INPUT,
    }
}

fn error_kind(err: &anyhow::Error) -> &'static str {
    match exit_status(err) {
        EXIT_CAPACITY => "capacity",
        EXIT_CLAIM => "claim",
        _ => "input",
    }
}

pub fn report_error(cli: &Cli, err: &anyhow::Error) {
    let message = format!("{err:#}");
    match cli.format {
        Format::Json => {
            let body = json!({ "error": { "kind": error_kind(err), "message": message } });
            let _ = print_out(&(serde_json::to_string_pretty(&body).expect("serializable") + "\n"));
        }
        Format::Text => eprintln!("error: {message}"),
    }
}

/// Prints `value` as JSON or `text` depending on the chosen format.
pub fn emit<T: Serialize>(cli: &Cli, value: &T, text: impl FnOnce() -> String) -> Result<()> {
    match cli.format {
        Format::Json => print_out(&(to_json(value)? + "\n")),
        Format::Text => print_out(&text()),
    }
}

/// Writes to stdout; a reader that has gone away (`| head`) is not an error.
fn print_out(s: &str) -> Result<()> {
    let mut out = io::stdout().lock();
    match out.write_all(s.as_bytes()).and_then(|()| out.flush()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

pub fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub fn status(passed: bool) -> u8 {
    if passed {
        EXIT_PASS
    } else {
        EXIT_CLAIM
    }
}
