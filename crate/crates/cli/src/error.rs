use std::path::PathBuf;

use augalex::augment::AugmentError;
use augalex::dga::{DgaError, ParseError};
use augalex::extract::ExtractError;
use augalex::groebner::GroebnerError;
use augalex::novikov::NovikovError;
use augalex::oracle::OracleError;
use thiserror::Error;

pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INAPPLICABLE: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
    /// A failure that still produces a JSON report.
    #[error("{message}")]
    Rejected { code: i32, message: String, report: serde_json::Value },
    #[error(transparent)]
    Dga(#[from] DgaError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Augment(#[from] AugmentError),
    #[error(transparent)]
    Extract(#[from] ExtractError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Novikov(#[from] NovikovError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

fn groebner_code(e: &GroebnerError) -> i32 {
    match e {
        GroebnerError::Timeout(_) => EXIT_BUDGET,
        GroebnerError::Laurent(_) => EXIT_INPUT,
        GroebnerError::ZeroIdeal | GroebnerError::NoDifferentials | GroebnerError::Algebra(_) => EXIT_INAPPLICABLE,
    }
}

fn augment_code(e: &AugmentError) -> i32 {
    match e {
        AugmentError::MissingValue(_)
        | AugmentError::UnknownChord(_)
        | AugmentError::BadValue { .. }
        | AugmentError::Malformed(_) => EXIT_INPUT,
        AugmentError::Groebner(g) => groebner_code(g),
        AugmentError::Unsolvable(_)
        | AugmentError::MissingDifferentials(_)
        | AugmentError::EmptyKernel
        | AugmentError::NotVanishing(_)
        | AugmentError::Algebra(_) => EXIT_INAPPLICABLE,
    }
}

fn extract_code(e: &ExtractError) -> i32 {
    match e {
        ExtractError::Malformed(_)
        | ExtractError::Parse(_)
        | ExtractError::ChordVariable(_)
        | ExtractError::ZeroAugPoly
        | ExtractError::BadAugmentation(_) => EXIT_INPUT,
        ExtractError::Augment(a) => augment_code(a),
        _ => EXIT_INAPPLICABLE,
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Read { .. } | CliError::Write { .. } | CliError::Usage(_) => EXIT_INPUT,
            CliError::Rejected { code, .. } => *code,
            CliError::Dga(_) | CliError::Parse(_) => EXIT_INPUT,
            CliError::Augment(e) => augment_code(e),
            CliError::Extract(e) => extract_code(e),
            CliError::Groebner(e) => groebner_code(e),
            CliError::Novikov(e) => match e {
                NovikovError::Malformed(_) | NovikovError::Dimension(_) | NovikovError::BadOrbit { .. } => EXIT_INPUT,
                NovikovError::Extract(x) => extract_code(x),
                NovikovError::Singular | NovikovError::Algebra(_) => EXIT_INAPPLICABLE,
            },
            CliError::Oracle(e) => match e {
                OracleError::Extract(x) => extract_code(x),
                OracleError::NonPolynomial(_) | OracleError::Algebra(_) => EXIT_INAPPLICABLE,
                _ => EXIT_INPUT,
            },
        }
    }

    pub fn report(&self) -> Option<&serde_json::Value> {
        match self {
            CliError::Rejected { report, .. } => Some(report),
            _ => None,
        }
    }
}
