use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Value};

use giglab_core::attractor::enumerate_attractors_with;
use giglab_core::circuit::u_extremes;
use giglab_core::counting::{count_block_sequential, count_rotation_classes, surjection_row};
use giglab_core::gig::{
    export_gig, set_metrics, ArcWeighting, ExportFormat, ExportOptions, MultiplicityLabel,
};
use giglab_core::lemmas::{positive_limit_cycle_census_with, verify_circuit};
use giglab_core::limits::{gig_memory_estimate, trajectory_memory_estimate};
use giglab_core::schedule::enumerate_schedules_with;
use giglab_core::{
    Circuit, Configuration, GeneralIterationGraph, Limits, Observation, Robustness, Sign,
    UpdateSchedule,
};

use crate::error::CliError;
use crate::report::{human_bytes, Outcome};
use crate::source::Loaded;

/// Settings shared by every subcommand.
pub struct Context {
    pub limits: Limits,
    pub force: bool,
}

impl Context {
    /// With `--force`, announces the expected memory before heavy work.
    pub fn estimate(&self, what: &str, n: usize, bytes: u128) {
        if self.force {
            eprintln!(
                "estimate: {what} for n = {n} needs about {}",
                human_bytes(bytes)
            );
        }
    }
}

fn with_network(loaded: &Loaded, mut outcome: Outcome) -> Outcome {
    outcome.network = Some(loaded.summary());
    outcome.warnings = loaded.warnings();
    outcome
}

fn gig_estimate(loaded: &Loaded) -> u128 {
    let n = loaded.net.n();
    let u_max = match &loaded.circuit {
        Some(c) => u_extremes(n, c.global_sign()).1,
        None => n,
    };
    gig_memory_estimate(n, u_max)
}

pub fn attractors(
    ctx: &Context,
    loaded: &Loaded,
    schedule: &str,
    observation: Observation,
) -> Result<Outcome, CliError> {
    let n = loaded.net.n();
    let schedule = UpdateSchedule::parse(schedule, n)?;
    ctx.estimate("attractor scan", n, trajectory_memory_estimate(n));
    let found = enumerate_attractors_with(&loaded.net, &schedule, observation, &ctx.limits)?;
    let fixed = found.iter().filter(|a| a.is_fixed_point()).count();

    let mut text = String::new();
    writeln!(text, "{}", loaded.describe()).unwrap();
    writeln!(text, "schedule: {schedule}").unwrap();
    writeln!(text, "observation: {observation}").unwrap();
    writeln!(
        text,
        "attractors: {} ({fixed} fixed points, {} limit cycles)",
        found.len(),
        found.len() - fixed
    )
    .unwrap();
    let mut entries = Vec::new();
    for a in &found {
        let states = a.render(n);
        let basin = a
            .basin_size()
            .map(|b| format!("  basin {b}"))
            .unwrap_or_default();
        if a.is_fixed_point() {
            writeln!(text, "  fixed point  {}{basin}", states[0]).unwrap();
        } else {
            writeln!(
                text,
                "  limit cycle  period {}: {}{basin}",
                a.period(),
                states.join(" -> ")
            )
            .unwrap();
        }
        entries.push(json!({
            "kind": a.kind(),
            "period": a.period(),
            "cycle": states,
            "basin_size": a.basin_size(),
        }));
    }
    let result = json!({
        "schedule": schedule.to_string(),
        "observation": observation,
        "fixed_points": fixed,
        "limit_cycles": found.len() - fixed,
        "attractors": entries,
    });
    Ok(with_network(loaded, Outcome::new(result, text)))
}

pub fn gig(
    ctx: &Context,
    loaded: &Loaded,
    format: ExportFormat,
    options: ExportOptions,
    output: Option<&Path>,
    json_mode: bool,
) -> Result<Outcome, CliError> {
    let n = loaded.net.n();
    ctx.estimate("general iteration graph", n, gig_estimate(loaded));
    let g = GeneralIterationGraph::build_with(&loaded.net, &ctx.limits)?;
    let document = export_gig(&g, format, &options);
    let format_name = match format {
        ExportFormat::Dot => "dot",
        ExportFormat::GraphMl => "graphml",
        ExportFormat::Jsonl => "jsonl",
    };
    let mut result = json!({
        "format": format_name,
        "nodes": g.node_count(),
        "distinct_arcs": g.distinct_arc_count(),
        "labeled_arcs": g.labeled_arc_count(),
        "layers": options.group_layers,
    });
    let text = match output {
        Some(path) => {
            std::fs::write(path, &document).map_err(|e| {
                CliError::new("io", format!("cannot write {}: {e}", path.display()))
            })?;
            result["output"] = json!(path.display().to_string());
            format!(
                "wrote {format_name} graph to {}: {} nodes, {} distinct arcs, {} labeled arcs\n",
                path.display(),
                g.node_count(),
                g.distinct_arc_count(),
                g.labeled_arc_count()
            )
        }
        None => {
            if json_mode {
                result["document"] = json!(document);
            }
            document
        }
    };
    Ok(with_network(loaded, Outcome::new(result, text)))
}

/// Reads `000,011` or `@path` (one configuration per line, `#` comments).
pub fn parse_config_set(literal: &str, n: usize) -> Result<Vec<Configuration>, CliError> {
    let owned;
    let body = match literal.strip_prefix('@') {
        Some(path) => {
            owned = std::fs::read_to_string(path)
                .map_err(|e| CliError::new("io", format!("cannot read {path}: {e}")))?;
            owned.as_str()
        }
        None => literal,
    };
    let set: Vec<Configuration> = body
        .lines()
        .map(|line| line.split('#').next().unwrap_or(""))
        .flat_map(|line| line.split(','))
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| Configuration::parse_sized(s, n))
        .collect::<Result<_, _>>()?;
    if set.is_empty() {
        return Err(CliError::usage("configuration set is empty"));
    }
    Ok(set)
}

pub fn metrics(
    ctx: &Context,
    loaded: &Loaded,
    set: &str,
    weighting: ArcWeighting,
) -> Result<Outcome, CliError> {
    let n = loaded.net.n();
    let members = parse_config_set(set, n)?;
    ctx.estimate("general iteration graph", n, gig_estimate(loaded));
    let g = GeneralIterationGraph::build_with(&loaded.net, &ctx.limits)?;
    let r = set_metrics(&g, &members, weighting)?;

    let mut rendered: Vec<String> = r.members.iter().map(|x| x.to_binary(n)).collect();
    rendered.sort();
    let robustness = match r.robustness {
        Robustness::Infinite => json!({ "value": "inf", "infinite": true }),
        Robustness::Finite(v) => {
            json!({ "value": v.to_string(), "infinite": false, "approx": r.robustness.to_f64() })
        }
    };
    let likeliness = match r.likeliness {
        Some(v) => json!({
            "defined": true,
            "value": v.to_string(),
            "approx": *v.numer() as f64 / *v.denom() as f64,
        }),
        None => json!({ "defined": false, "reason": "no arc lies wholly outside the set" }),
    };
    let weighting_name = match weighting {
        ArcWeighting::Labeled => "labeled",
        ArcWeighting::Distinct => "distinct",
    };

    let mut text = String::new();
    writeln!(text, "{}", loaded.describe()).unwrap();
    writeln!(text, "set: {}", rendered.join(",")).unwrap();
    writeln!(text, "weighting: {weighting_name}").unwrap();
    writeln!(text, "deg_out: {}", r.deg_out).unwrap();
    writeln!(text, "deg_in: {}", r.deg_in).unwrap();
    writeln!(text, "t_outside: {}", r.t_outside).unwrap();
    writeln!(text, "robustness: {}", r.robustness).unwrap();
    match r.likeliness {
        Some(v) => writeln!(text, "likeliness: {v}").unwrap(),
        None => writeln!(
            text,
            "likeliness: undefined (no arc lies wholly outside the set)"
        )
        .unwrap(),
    }

    let result = json!({
        "set": rendered,
        "weighting": weighting_name,
        "deg_out": r.deg_out,
        "deg_in": r.deg_in,
        "t_outside": r.t_outside,
        "robustness": robustness,
        "likeliness": likeliness,
    });
    Ok(with_network(loaded, Outcome::new(result, text)))
}

fn parse_sign(s: &str) -> Result<Sign, CliError> {
    match s.to_ascii_lowercase().as_str() {
        "pos" | "positive" | "+" => Ok(Sign::Positive),
        "neg" | "negative" | "-" => Ok(Sign::Negative),
        other => Err(CliError::usage(format!(
            "unknown sign {other:?} (expected pos or neg)"
        ))),
    }
}

/// `N SIGN`, or a single circuit literal.
pub fn verify_target(args: &[String]) -> Result<Circuit, CliError> {
    match args {
        [lit] => Ok(Circuit::parse(lit)?),
        [n, sign] => {
            let n: usize = n
                .parse()
                .map_err(|_| CliError::usage(format!("expected a node count, got {n:?}")))?;
            if n == 0 {
                return Err(CliError::usage("a circuit needs at least one node"));
            }
            Ok(Circuit::canonical(n, parse_sign(sign)?))
        }
        _ => Err(CliError::usage(
            "verify takes `N pos|neg` or a circuit literal",
        )),
    }
}

pub fn verify(ctx: &Context, circuit: &Circuit) -> Result<Outcome, CliError> {
    let n = circuit.n();
    ctx.estimate(
        "general iteration graph",
        n,
        gig_memory_estimate(n, u_extremes(n, circuit.global_sign()).1),
    );
    let report = verify_circuit(circuit, &ctx.limits)?;
    let mut text = String::new();
    writeln!(
        text,
        "circuit {} (n = {n}, {})",
        report.circuit, report.sign
    )
    .unwrap();
    let layers: Vec<String> = report
        .layers
        .iter()
        .map(|(k, c)| format!("|U_{k}| = {c}"))
        .collect();
    writeln!(text, "layers: {}", layers.join(", ")).unwrap();
    let mut failures = Vec::new();
    for v in &report.verdicts {
        let status = if v.passed { "pass" } else { "FAIL" };
        writeln!(text, "  {status}  {}", v.name).unwrap();
        if let Some(ce) = &v.counterexample {
            writeln!(text, "        {ce}").unwrap();
            failures.push(format!("{}: {ce}", v.name));
        }
    }
    writeln!(
        text,
        "{}",
        if report.all_passed() {
            "all checks passed"
        } else {
            "some checks failed"
        }
    )
    .unwrap();
    let result = serde_json::to_value(&report).expect("plain data");
    let mut outcome = Outcome::new(result, text);
    outcome.failures = failures;
    Ok(outcome)
}

/// Largest `n` for which `count` also enumerates schedules.
const CROSS_CHECK_MAX: usize = 6;

pub fn count(ctx: &Context, n: usize) -> Result<Outcome, CliError> {
    let b = count_block_sequential(n);
    let b_rot = count_rotation_classes(n);
    let row = surjection_row(n);

    let mut text = String::new();
    writeln!(text, "n = {n}").unwrap();
    writeln!(text, "block-sequential schedules B({n}) = {b}").unwrap();
    for (k, s) in row.iter().enumerate().skip(1) {
        writeln!(text, "  surjections onto {k} blocks S({n},{k}) = {s}").unwrap();
    }
    writeln!(text, "up to rotation B'({n}) = {b_rot}").unwrap();

    let mut failures = Vec::new();
    let mut cross = Value::Null;
    if (1..=CROSS_CHECK_MAX).contains(&n) {
        let mut enumerated = 0u64;
        let mut orbits = BTreeSet::new();
        for s in enumerate_schedules_with(n, &ctx.limits)? {
            enumerated += 1;
            orbits.insert(s.canonical_rotation().to_string());
        }
        let b_ok = b == enumerated.into();
        let rot_ok = b_rot == (orbits.len() as u64).into();
        writeln!(
            text,
            "enumeration: {enumerated} schedules ({}), {} rotation classes ({})",
            if b_ok { "match" } else { "MISMATCH" },
            orbits.len(),
            if rot_ok { "match" } else { "MISMATCH" }
        )
        .unwrap();
        if !b_ok {
            failures.push(format!("B({n}) = {b} but enumeration gives {enumerated}"));
        }
        if !rot_ok {
            failures.push(format!(
                "B'({n}) = {b_rot} but orbit count gives {}",
                orbits.len()
            ));
        }
        cross = json!({ "schedules": enumerated, "rotation_classes": orbits.len() });
    }
    let result = json!({
        "n": n,
        "block_sequential": b.to_string(),
        "surjections": row.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "rotation_classes": b_rot.to_string(),
        "enumeration": cross,
    });
    let mut outcome = Outcome::new(result, text);
    outcome.failures = failures;
    Ok(outcome)
}

pub fn census(ctx: &Context, n: usize) -> Result<Outcome, CliError> {
    ctx.estimate("census trajectory scans", n, trajectory_memory_estimate(n));
    let report = positive_limit_cycle_census_with(n, &ctx.limits)?;
    let mut text = String::new();
    writeln!(
        text,
        "positive circuit, n = {n}: {} schedules",
        report.schedules
    )
    .unwrap();
    writeln!(text, "aligned sequential schedules: {}", report.aligned).unwrap();
    writeln!(
        text,
        "{:<24} {:>7} {:>13} {:>13}",
        "schedule", "aligned", "macro cycles", "block cycles"
    )
    .unwrap();
    for e in &report.entries {
        writeln!(
            text,
            "{:<24} {:>7} {:>13} {:>13}",
            e.schedule,
            if e.aligned_sequential { "yes" } else { "no" },
            e.macro_limit_cycles,
            e.block_limit_cycles
        )
        .unwrap();
    }
    let disagreements: Vec<&str> = report
        .observation_disagreements()
        .iter()
        .map(|e| e.schedule.as_str())
        .collect();
    if report.claim_holds() {
        writeln!(
            text,
            "exactly the aligned sequential schedules are free of limit cycles"
        )
        .unwrap();
    } else {
        writeln!(text, "deviations:").unwrap();
        for d in &report.deviations {
            writeln!(text, "  {d}").unwrap();
        }
    }
    writeln!(
        text,
        "macro/block observation disagreements: {}",
        disagreements.len()
    )
    .unwrap();
    let mut result = serde_json::to_value(&report).expect("plain data");
    result["claim_holds"] = json!(report.claim_holds());
    result["observation_disagreements"] = json!(disagreements);
    let mut outcome = Outcome::new(result, text);
    outcome.failures = report.deviations.clone();
    Ok(outcome)
}

pub fn schedules_enumerate(ctx: &Context, n: usize, canonical: bool) -> Result<Outcome, CliError> {
    let mut seen = BTreeSet::new();
    let mut listed = Vec::new();
    for s in enumerate_schedules_with(n, &ctx.limits)? {
        if canonical {
            let c = s.canonical_rotation();
            if seen.insert(c.to_string()) {
                listed.push(c);
            }
        } else {
            listed.push(s);
        }
    }
    let mut text = String::new();
    for s in &listed {
        writeln!(text, "{s}").unwrap();
    }
    let result = json!({
        "n": n,
        "canonical": canonical,
        "count": listed.len(),
        "schedules": listed.iter().map(|s| json!({
            "schedule": s.to_string(),
            "blocks": s.block_count(),
            "aligned_sequential": s.is_aligned_sequential(),
        })).collect::<Vec<_>>(),
    });
    Ok(Outcome::new(result, text))
}

/// Node count implied by a schedule literal: one past the largest id.
fn infer_nodes(literal: &str) -> Result<usize, CliError> {
    literal
        .split([',', ';'])
        .map(|t| t.trim().parse::<usize>())
        .try_fold(0, |m, id| id.map(|id| m.max(id + 1)))
        .map_err(|_| {
            CliError::usage(format!(
                "cannot infer node count from {literal:?}; pass --nodes"
            ))
        })
}

pub fn schedules_canonicalize(literal: &str, nodes: Option<usize>) -> Result<Outcome, CliError> {
    let n = match nodes {
        Some(n) => n,
        None => infer_nodes(literal)?,
    };
    let s = UpdateSchedule::parse(literal, n)?;
    let c = s.canonical_rotation();
    let text = format!("{c}\n");
    let result = json!({
        "n": n,
        "schedule": s.to_string(),
        "canonical": c.to_string(),
        "aligned_sequential": s.is_aligned_sequential(),
    });
    Ok(Outcome::new(result, text))
}

pub fn export_options(multiplicity: MultiplicityLabel, layers: bool) -> ExportOptions {
    ExportOptions {
        multiplicity,
        group_layers: layers,
    }
}
