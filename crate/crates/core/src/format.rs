//! Network description files.
//!
//! A file lists `n` and one entry per node:
//!
//! ```json
//! {
//!   "n": 2,
//!   "nodes": [
//!     { "id": 0, "name": "a", "inputs": [1], "function": "neg" },
//!     { "id": 1, "inputs": [0, 1], "table": [0, 0, 0, 1] }
//!   ]
//! }
//! ```
//!
//! `function` is one of `id`, `neg`, `and`, `or`, `nand`, `nor`; `table`
//! gives `2^arity` outputs indexed by the in-neighbor states in ascending
//! node-id order (lowest id is the least significant bit). Exactly one of
//! the two must be present. A node without inputs takes a one-entry table.
//! The same schema is accepted as TOML.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::network::{LocalFunction, Network, NetworkError, RawNetwork, RawNode};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetworkFile {
    pub n: usize,
    pub nodes: Vec<NodeEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeEntry {
    pub id: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default)]
    pub inputs: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub function: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<u8>>,
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON network: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed TOML network: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("node {0}: give exactly one of `function` or `table`")]
    FunctionSpec(usize),
    #[error("node {id}: unknown function {name:?}")]
    UnknownFunction { id: usize, name: String },
    #[error("node {id}: function {name:?} does not accept {arity} inputs")]
    NamedArity {
        id: usize,
        name: String,
        arity: usize,
    },
    #[error("node {id}: table entry {value} is not 0 or 1")]
    TableEntry { id: usize, value: u8 },
    #[error("node {id}: table length {len} is not a power of two within the arity limit")]
    TableLength { id: usize, len: usize },
    #[error("node id {0} is out of range or listed twice")]
    NodeId(usize),
    #[error(transparent)]
    Network(#[from] NetworkError),
}

fn named_function(id: usize, name: &str, arity: usize) -> Result<LocalFunction, FormatError> {
    let bad_arity = || FormatError::NamedArity {
        id,
        name: name.to_string(),
        arity,
    };
    match name {
        "id" | "neg" if arity != 1 => Err(bad_arity()),
        "id" => Ok(LocalFunction::identity()),
        "neg" => Ok(LocalFunction::negation()),
        "and" | "or" | "nand" | "nor" if arity == 0 => Err(bad_arity()),
        "and" => Ok(LocalFunction::and(arity)),
        "or" => Ok(LocalFunction::or(arity)),
        "nand" => Ok(LocalFunction::nand(arity)),
        "nor" => Ok(LocalFunction::nor(arity)),
        other => Err(FormatError::UnknownFunction {
            id,
            name: other.to_string(),
        }),
    }
}

impl NetworkFile {
    /// Turns the file into a raw description; validation happens separately.
    pub fn to_raw(&self) -> Result<RawNetwork, FormatError> {
        let mut slots: Vec<Option<RawNode>> = vec![None; self.n];
        for entry in &self.nodes {
            let function = match (&entry.function, &entry.table) {
                (Some(name), None) => named_function(entry.id, name, entry.inputs.len())?,
                (None, Some(table)) => {
                    let bits = table
                        .iter()
                        .map(|&v| match v {
                            0 => Ok(false),
                            1 => Ok(true),
                            value => Err(FormatError::TableEntry {
                                id: entry.id,
                                value,
                            }),
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    LocalFunction::from_table(bits).ok_or(FormatError::TableLength {
                        id: entry.id,
                        len: table.len(),
                    })?
                }
                _ => return Err(FormatError::FunctionSpec(entry.id)),
            };
            let slot = slots
                .get_mut(entry.id)
                .filter(|s| s.is_none())
                .ok_or(FormatError::NodeId(entry.id))?;
            *slot = Some(RawNode {
                name: entry.name.clone(),
                inputs: entry.inputs.clone(),
                function,
            });
        }
        Ok(RawNetwork {
            n: self.n,
            nodes: slots.into_iter().flatten().collect(),
        })
    }

    pub fn to_network(&self) -> Result<Network, FormatError> {
        Ok(Network::validate(self.to_raw()?)?)
    }

    /// Describes a network with explicit tables.
    pub fn from_network(net: &Network) -> Self {
        NetworkFile {
            n: net.n(),
            nodes: (0..net.n())
                .map(|j| NodeEntry {
                    id: j,
                    name: net.name(j).map(str::to_string),
                    inputs: net.in_neighbors(j).to_vec(),
                    function: None,
                    table: Some(
                        net.function(j)
                            .table()
                            .iter()
                            .map(|&b| u8::from(b))
                            .collect(),
                    ),
                })
                .collect(),
        }
    }
}

/// Parses a JSON network description.
pub fn parse_json(text: &str) -> Result<Network, FormatError> {
    serde_json::from_str::<NetworkFile>(text)?.to_network()
}

/// Parses a TOML network description.
pub fn parse_toml(text: &str) -> Result<Network, FormatError> {
    toml::from_str::<NetworkFile>(text)?.to_network()
}

/// Loads a network file; `.toml` files are read as TOML, anything else as
/// JSON.
pub fn load(path: &Path) -> Result<Network, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })?;
    if path.extension().is_some_and(|e| e == "toml") {
        parse_toml(&text)
    } else {
        parse_json(&text)
    }
}
