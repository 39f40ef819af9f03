use std::fmt;
use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;

use kneser_core::exact::parse_rational;
use kneser_core::{Error, Family};
use num_rational::BigRational;
use serde_json::Value;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unreadable input or parameters a builder rejects. Exit 2.
    Usage(String),
    /// A check or verdict failed, or an internal invariant broke. Exit 1.
    Failure(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Failure(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Construction(_) | Error::Invariant(_) => CliError::Failure(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

pub type CliResult<T = ()> = Result<T, CliError>;

pub fn lambda_arg(text: &str) -> CliResult<BigRational> {
    parse_rational(text).map_err(|e| CliError::Usage(format!("--lambda: {e}")))
}

/// Reads a family from a path, or from stdin when the path is `-`.
pub fn read_family(path: &Path) -> CliResult<Family> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?
    };
    Ok(Family::parse_text(&text)?)
}

pub fn write_text(path: Option<&Path>, text: &str) -> CliResult {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            fs::write(p, text).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))?;
        }
        _ => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

pub fn print_json(value: &Value) -> CliResult {
    let mut text = serde_json::to_string_pretty(value).expect("json values serialise");
    text.push('\n');
    write_text(None, &text)
}
