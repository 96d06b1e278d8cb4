use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::config::Configuration;

use super::{GeneralIterationGraph, GigError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    GraphMl,
    Jsonl,
}

impl FromStr for ExportFormat {
    type Err = GigError;

    fn from_str(s: &str) -> Result<Self, GigError> {
        match s.to_ascii_lowercase().as_str() {
            "dot" => Ok(ExportFormat::Dot),
            "graphml" => Ok(ExportFormat::GraphMl),
            "jsonl" => Ok(ExportFormat::Jsonl),
            other => Err(GigError::UnsupportedFormat(other.to_string())),
        }
    }
}

/// When the multiplicity is written on an arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MultiplicityLabel {
    /// Only arcs standing for more than one subset are labeled.
    #[default]
    AboveOne,
    Always,
    Never,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ExportOptions {
    pub multiplicity: MultiplicityLabel,
    /// Group vertices by potential `u(x)`.
    pub group_layers: bool,
}

#[derive(Serialize, Deserialize)]
struct ArcRecord {
    src: String,
    dst: String,
    mult: u64,
}

fn label_for(options: &ExportOptions, mult: u64) -> Option<u64> {
    match options.multiplicity {
        MultiplicityLabel::Always => Some(mult),
        MultiplicityLabel::AboveOne if mult > 1 => Some(mult),
        _ => None,
    }
}

/// Renders the graph. Arcs for the empty subset never appear; each distinct
/// `(x, y)` pair is one edge carrying its multiplicity. Vertices and arcs
/// are listed in the order of their binary renderings.
pub fn export_gig(
    g: &GeneralIterationGraph,
    format: ExportFormat,
    options: &ExportOptions,
) -> String {
    match format {
        ExportFormat::Dot => to_dot(g, options),
        ExportFormat::GraphMl => to_graphml(g, options),
        ExportFormat::Jsonl => to_jsonl(g),
    }
}

/// Configurations in the order of their binary renderings.
fn sorted_lex(mut xs: Vec<Configuration>, n: usize) -> Vec<Configuration> {
    xs.sort_by_key(|x| x.lex_key(n));
    xs
}

fn nodes_lex(g: &GeneralIterationGraph) -> Vec<Configuration> {
    sorted_lex(g.configurations().collect(), g.n())
}

fn layers_lex(g: &GeneralIterationGraph) -> Vec<(usize, Vec<Configuration>)> {
    g.layers()
        .into_iter()
        .map(|(u, xs)| (u, sorted_lex(xs, g.n())))
        .collect()
}

/// Arcs grouped by source, sources and targets in binary-string order.
fn arcs_lex(g: &GeneralIterationGraph) -> Vec<(Configuration, Configuration, u64)> {
    let n = g.n();
    nodes_lex(g)
        .into_iter()
        .flat_map(|x| {
            let mut out: Vec<_> = g.arcs_from(x).collect();
            out.sort_by_key(|(y, _)| y.lex_key(n));
            out.into_iter().map(move |(y, m)| (x, y, m))
        })
        .collect()
}

fn to_dot(g: &GeneralIterationGraph, options: &ExportOptions) -> String {
    let n = g.n();
    let mut out = String::from("digraph gig {\n");
    if options.group_layers {
        out.push_str("  rankdir = TB;\n");
        for (u, members) in layers_lex(g) {
            let _ = writeln!(out, "  subgraph cluster_u{u} {{");
            let _ = writeln!(out, "    label = \"u = {u}\";");
            out.push_str("    rank = same;\n");
            for x in members {
                let _ = writeln!(out, "    \"{}\";", x.to_binary(n));
            }
            out.push_str("  }\n");
        }
    } else {
        for x in nodes_lex(g) {
            let _ = writeln!(out, "  \"{}\";", x.to_binary(n));
        }
    }
    for (x, y, m) in arcs_lex(g) {
        let _ = write!(out, "  \"{}\" -> \"{}\"", x.to_binary(n), y.to_binary(n));
        match label_for(options, m) {
            Some(label) => {
                let _ = writeln!(out, " [label = \"{label}\"];");
            }
            None => out.push_str(";\n"),
        }
    }
    out.push_str("}\n");
    out
}

fn to_graphml(g: &GeneralIterationGraph, options: &ExportOptions) -> String {
    let n = g.n();
    let mut out = String::from(concat!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n",
        "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n",
        "  <key id=\"u\" for=\"node\" attr.name=\"potential\" attr.type=\"int\"/>\n",
        "  <key id=\"label\" for=\"edge\" attr.name=\"label\" attr.type=\"long\"/>\n",
        "  <graph id=\"gig\" edgedefault=\"directed\">\n",
    ));
    let node = |out: &mut String, x: Configuration, indent: &str| {
        let _ = writeln!(
            out,
            "{indent}<node id=\"{}\"><data key=\"u\">{}</data></node>",
            x.to_binary(n),
            g.potential(x)
        );
    };
    if options.group_layers {
        for (u, members) in layers_lex(g) {
            let _ = writeln!(out, "    <node id=\"layer_u{u}\">");
            let _ = writeln!(
                out,
                "      <graph id=\"layer_u{u}:\" edgedefault=\"directed\">"
            );
            for x in members {
                node(&mut out, x, "        ");
            }
            out.push_str("      </graph>\n    </node>\n");
        }
    } else {
        for x in nodes_lex(g) {
            node(&mut out, x, "    ");
        }
    }
    for (x, y, m) in arcs_lex(g) {
        let _ = write!(
            out,
            "    <edge source=\"{}\" target=\"{}\"",
            x.to_binary(n),
            y.to_binary(n)
        );
        match label_for(options, m) {
            Some(label) => {
                let _ = writeln!(out, "><data key=\"label\">{label}</data></edge>");
            }
            None => out.push_str("/>\n"),
        }
    }
    out.push_str("  </graph>\n</graphml>\n");
    out
}

fn to_jsonl(g: &GeneralIterationGraph) -> String {
    let n = g.n();
    let mut out = String::new();
    for (x, y, m) in arcs_lex(g) {
        let record = ArcRecord {
            src: x.to_binary(n),
            dst: y.to_binary(n),
            mult: m,
        };
        out.push_str(&serde_json::to_string(&record).expect("arc record serializes"));
        out.push('\n');
    }
    out
}

/// Reads back a JSONL export as `(source, target, multiplicity)` triples.
pub fn parse_jsonl(text: &str) -> Result<Vec<(Configuration, Configuration, u64)>, GigError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, line)| {
            let parse_err = |reason: String| GigError::Parse {
                line: i + 1,
                reason,
            };
            let rec: ArcRecord =
                serde_json::from_str(line).map_err(|e| parse_err(e.to_string()))?;
            let (src, n_src) =
                Configuration::parse_binary(&rec.src).map_err(|e| parse_err(e.to_string()))?;
            let (dst, n_dst) =
                Configuration::parse_binary(&rec.dst).map_err(|e| parse_err(e.to_string()))?;
            if n_src != n_dst {
                return Err(parse_err("source and target sizes differ".into()));
            }
            Ok((src, dst, rec.mult))
        })
        .collect()
}
