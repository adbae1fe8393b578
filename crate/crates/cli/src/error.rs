use serde_json::{json, Value};

use superweights::affine::AffineError;
use superweights::algebra::AlgebraError;
use superweights::combinatorics::CombError;
use superweights::map_modules::MapError;
use superweights::modules::ModError;
use superweights::roots::RootError;

/// Usage errors exit with 2 before anything runs; domain errors exit with 1.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain { code: &'static str, message: String },
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> CliError {
        CliError::Usage(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain { .. } => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            CliError::Usage(m) => json!({"error": "UsageError", "message": m}),
            CliError::Domain { code, message } => json!({"error": code, "message": message}),
        }
    }
}

macro_rules! domain {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> CliError {
                CliError::Domain { code: e.code(), message: e.to_string() }
            }
        }
    )*};
}

domain!(RootError, CombError, ModError, MapError, AffineError);

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> CliError {
        CliError::Domain { code: "UnknownAlgebra", message: e.to_string() }
    }
}
