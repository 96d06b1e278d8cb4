use std::path::Path;

use serde::Serialize;

use giglab_core::format;
use giglab_core::{Circuit, Network, Sign};

use crate::error::CliError;

/// A loaded network plus what the report says about it.
pub struct Loaded {
    pub net: Network,
    pub circuit: Option<Circuit>,
}

#[derive(Debug, Serialize)]
pub struct ArcSummary {
    pub from: usize,
    pub to: usize,
    pub sign: Sign,
}

#[derive(Debug, Serialize)]
pub struct NetworkSummary {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub circuit: Option<String>,
    pub arcs: Vec<ArcSummary>,
    pub constant_nodes: Vec<usize>,
}

/// Resolves `pos:N`, `neg:N`, a `+`/`-` literal, or a network file.
pub fn load(literal: Option<&str>, file: Option<&Path>) -> Result<Loaded, CliError> {
    match (literal, file) {
        (Some(_), Some(_)) => Err(CliError::usage(
            "give either a circuit literal or --file, not both",
        )),
        (None, None) => Err(CliError::usage(
            "no network: give pos:N, neg:N, a +/- literal, or --file PATH",
        )),
        (Some(lit), None) => {
            let c = Circuit::parse(lit)?;
            Ok(Loaded {
                net: c.network(),
                circuit: Some(c),
            })
        }
        (None, Some(path)) => {
            let net = format::load(path)?;
            Ok(Loaded {
                circuit: Circuit::from_network(&net),
                net,
            })
        }
    }
}

impl Loaded {
    pub fn summary(&self) -> NetworkSummary {
        NetworkSummary {
            n: self.net.n(),
            circuit: self.circuit.as_ref().map(Circuit::to_string),
            arcs: self
                .net
                .arcs()
                .map(|(from, to, sign)| ArcSummary { from, to, sign })
                .collect(),
            constant_nodes: self.net.constant_nodes(),
        }
    }

    /// One warning per node whose local function ignores its inputs.
    pub fn warnings(&self) -> Vec<String> {
        self.net
            .constant_nodes()
            .into_iter()
            .map(|j| match self.net.name(j) {
                Some(name) => format!("node {j} ({name}) has a constant local function"),
                None => format!("node {j} has a constant local function"),
            })
            .collect()
    }

    pub fn describe(&self) -> String {
        match &self.circuit {
            Some(c) => format!("circuit {c} (n = {}, {})", c.n(), c.global_sign()),
            None => format!(
                "network (n = {}, {} arcs)",
                self.net.n(),
                self.net.arcs().count()
            ),
        }
    }
}
