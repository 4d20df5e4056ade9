use clap::ValueEnum;
use matchlink::io::ParseError;
use serde_json::Value;
use thiserror::Error;

pub const YES: u8 = 0;
pub const INPUT_ERROR: u8 = 2;
pub const NO: u8 = 3;
pub const CAPACITY: u8 = 4;
pub const DISAGREEMENT: u8 = 5;

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// What a command prints, in both formats, and its exit code.
#[derive(Debug)]
pub struct Report {
    pub text: String,
    pub json: Value,
    pub code: u8,
}

impl Report {
    pub fn new(text: String, json: Value, code: u8) -> Self {
        Report { text, json, code }
    }

    pub fn verdict(yes: bool) -> u8 {
        if yes {
            YES
        } else {
            NO
        }
    }

    pub fn print(&self, format: Format) {
        match format {
            Format::Text => print!("{}", self.text),
            Format::Json => println!("{}", serde_json::to_string_pretty(&self.json).expect("plain values")),
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: String,
        #[source]
        source: ParseError,
    },
    #[error(transparent)]
    Lib(#[from] matchlink::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(matchlink::Error::Capacity(_)) => CAPACITY,
            _ => INPUT_ERROR,
        }
    }
}
