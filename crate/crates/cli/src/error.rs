use std::fmt;

use serde::Serialize;

use giglab_core::config::ConfigParseError;
use giglab_core::{CircuitError, FormatError, GigError, ScheduleError, StateSpaceGuard};

/// A failure that stops a command before it produces a result.
#[derive(Debug, Clone, Serialize)]
pub struct CliError {
    pub kind: &'static str,
    pub message: String,
}

impl CliError {
    pub fn new(kind: &'static str, message: impl Into<String>) -> Self {
        CliError {
            kind,
            message: message.into(),
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Self::new("usage", message)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

macro_rules! from_error {
    ($($ty:ty => $kind:literal),* $(,)?) => {
        $(impl From<$ty> for CliError {
            fn from(e: $ty) -> Self {
                CliError::new($kind, e.to_string())
            }
        })*
    };
}

from_error! {
    StateSpaceGuard => "guard",
    CircuitError => "circuit",
    FormatError => "network-file",
    ScheduleError => "schedule",
    ConfigParseError => "configuration",
    std::io::Error => "io",
}

impl From<GigError> for CliError {
    fn from(e: GigError) -> Self {
        match e {
            GigError::Guard(g) => g.into(),
            other => CliError::new("gig", other.to_string()),
        }
    }
}
