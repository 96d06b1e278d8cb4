//! Boolean automata networks: local functions, validation, and the subset
//! transition `F^P` together with the unstable set `U(x)`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::{full_mask, mask_members, Configuration, MAX_NODES};

/// Largest in-degree for which an explicit truth table is accepted.
pub const MAX_ARITY: usize = 20;

/// Sign of an arc: an activation or an inhibition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }

    /// Sign of a product.
    #[must_use]
    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Positive => "positive",
            Sign::Negative => "negative",
        })
    }
}

/// How one input position influences a truth table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputEffect {
    Increasing,
    Decreasing,
    Vacuous,
    NonMonotone,
}

/// A local transition function given by its truth table.
///
/// Entry `k` of the table is the output when input position `p` holds bit
/// `p` of `k`. Input positions follow the ascending order of the in-neighbor
/// node ids, so the lowest-numbered in-neighbor is the least significant bit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LocalFunction {
    arity: usize,
    table: Vec<bool>,
}

impl LocalFunction {
    /// Builds a function from a table of `2^arity` entries.
    pub fn from_table(table: Vec<bool>) -> Option<Self> {
        let len = table.len();
        if !len.is_power_of_two() {
            return None;
        }
        let arity = len.trailing_zeros() as usize;
        if arity > MAX_ARITY {
            return None;
        }
        Some(LocalFunction { arity, table })
    }

    fn from_fn(arity: usize, f: impl Fn(usize) -> bool) -> Self {
        LocalFunction {
            arity,
            table: (0..1usize << arity).map(f).collect(),
        }
    }

    pub fn identity() -> Self {
        Self::from_fn(1, |k| k == 1)
    }

    pub fn negation() -> Self {
        Self::from_fn(1, |k| k == 0)
    }

    pub fn and(arity: usize) -> Self {
        let all = (1usize << arity) - 1;
        Self::from_fn(arity, |k| k == all)
    }

    pub fn or(arity: usize) -> Self {
        Self::from_fn(arity, |k| k != 0)
    }

    pub fn nand(arity: usize) -> Self {
        let all = (1usize << arity) - 1;
        Self::from_fn(arity, |k| k != all)
    }

    pub fn nor(arity: usize) -> Self {
        Self::from_fn(arity, |k| k == 0)
    }

    /// A source node's function: no inputs, fixed output.
    pub fn constant(value: bool) -> Self {
        LocalFunction {
            arity: 0,
            table: vec![value],
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn table(&self) -> &[bool] {
        &self.table
    }

    #[inline]
    pub fn eval(&self, index: usize) -> bool {
        self.table[index]
    }

    pub fn is_constant(&self) -> bool {
        self.table.iter().all(|&b| b == self.table[0])
    }

    /// Classifies input position `p` over every context of the other inputs.
    pub fn input_effect(&self, p: usize) -> InputEffect {
        let bit = 1usize << p;
        let (mut rises, mut falls) = (false, false);
        for k in (0..self.table.len()).filter(|k| k & bit == 0) {
            match (self.table[k], self.table[k | bit]) {
                (false, true) => rises = true,
                (true, false) => falls = true,
                _ => {}
            }
        }
        match (rises, falls) {
            (true, false) => InputEffect::Increasing,
            (false, true) => InputEffect::Decreasing,
            (false, false) => InputEffect::Vacuous,
            (true, true) => InputEffect::NonMonotone,
        }
    }
}

/// Subset of node indices, as a bit mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct NodeSet(pub u64);

impl NodeSet {
    pub const EMPTY: NodeSet = NodeSet(0);

    pub fn all(n: usize) -> Self {
        NodeSet(full_mask(n))
    }

    pub fn single(i: usize) -> Self {
        NodeSet(1 << i)
    }

    #[inline]
    pub fn mask(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        i < 64 && (self.0 >> i) & 1 == 1
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        mask_members(self.0)
    }

    #[must_use]
    pub fn intersect(self, other: NodeSet) -> NodeSet {
        NodeSet(self.0 & other.0)
    }

    /// Rotates membership by `k` positions modulo `n`: `i` becomes `i + k`.
    #[must_use]
    pub fn rotate(self, k: usize, n: usize) -> NodeSet {
        NodeSet(self.iter().fold(0, |acc, i| acc | 1 << ((i + k) % n)))
    }
}

impl FromIterator<usize> for NodeSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        NodeSet(iter.into_iter().fold(0, |acc, i| acc | 1 << i))
    }
}

impl fmt::Display for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

/// The set `U(x)` of nodes whose state differs from their local function's
/// output. Its size is the potential `u(x)`.
pub type UnstableSet = NodeSet;

/// A node before validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawNode {
    pub name: Option<String>,
    /// In-neighbors, in any order; the table is read against their
    /// ascending order.
    pub inputs: Vec<usize>,
    pub function: LocalFunction,
}

/// A network description before validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawNetwork {
    pub n: usize,
    pub nodes: Vec<RawNode>,
}

/// One reason a description is not a valid network.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("node {node}: not monotone in input {input}")]
    NonMonotone { node: usize, input: usize },
    #[error("node {node}: input {input} never influences the output")]
    VacuousArc { node: usize, input: usize },
    #[error("node {node}: {inputs} inputs but a truth table of {table_len} entries")]
    ArityMismatch {
        node: usize,
        inputs: usize,
        table_len: usize,
    },
    #[error("node {node}: input {input} is not a node of the network")]
    InputOutOfRange { node: usize, input: usize },
    #[error("node {node}: input {input} listed twice")]
    DuplicateInput { node: usize, input: usize },
    #[error("node {node}: arity {arity} exceeds the limit of {MAX_ARITY}")]
    ArityTooLarge { node: usize, arity: usize },
    #[error("declared {declared} nodes but described {found}")]
    NodeCountMismatch { declared: usize, found: usize },
    #[error("{n} nodes exceed the configuration word width of {MAX_NODES}")]
    TooManyNodes { n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetworkError {
    #[error("invalid network: {}", list(.0))]
    Invalid(Vec<Violation>),
}

fn list(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

impl NetworkError {
    pub fn violations(&self) -> &[Violation] {
        match self {
            NetworkError::Invalid(v) => v,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Node {
    name: Option<String>,
    inputs: Vec<usize>,
    input_mask: u64,
    signs: Vec<Sign>,
    function: LocalFunction,
}

/// A validated Boolean automata network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Network {
    n: usize,
    nodes: Vec<Node>,
}

impl Network {
    /// Validates a raw description, deriving the sign of every arc.
    ///
    /// All violations are collected, not just the first.
    pub fn validate(raw: RawNetwork) -> Result<Network, NetworkError> {
        let mut violations = Vec::new();
        if raw.n > MAX_NODES {
            violations.push(Violation::TooManyNodes { n: raw.n });
        }
        if raw.nodes.len() != raw.n {
            violations.push(Violation::NodeCountMismatch {
                declared: raw.n,
                found: raw.nodes.len(),
            });
        }
        if !violations.is_empty() {
            return Err(NetworkError::Invalid(violations));
        }

        let mut nodes = Vec::with_capacity(raw.n);
        for (j, node) in raw.nodes.into_iter().enumerate() {
            let mut inputs = node.inputs;
            inputs.sort_unstable();
            let before = violations.len();
            for w in inputs.windows(2).filter(|w| w[0] == w[1]) {
                violations.push(Violation::DuplicateInput {
                    node: j,
                    input: w[0],
                });
            }
            for &i in inputs.iter().filter(|&&i| i >= raw.n) {
                violations.push(Violation::InputOutOfRange { node: j, input: i });
            }
            if inputs.len() > MAX_ARITY {
                violations.push(Violation::ArityTooLarge {
                    node: j,
                    arity: inputs.len(),
                });
            }
            if node.function.arity() != inputs.len() {
                violations.push(Violation::ArityMismatch {
                    node: j,
                    inputs: inputs.len(),
                    table_len: node.function.table().len(),
                });
            }
            if violations.len() > before {
                continue;
            }
            let mut signs = Vec::with_capacity(inputs.len());
            for (p, &i) in inputs.iter().enumerate() {
                match node.function.input_effect(p) {
                    InputEffect::Increasing => signs.push(Sign::Positive),
                    InputEffect::Decreasing => signs.push(Sign::Negative),
                    InputEffect::Vacuous => {
                        violations.push(Violation::VacuousArc { node: j, input: i })
                    }
                    InputEffect::NonMonotone => {
                        violations.push(Violation::NonMonotone { node: j, input: i })
                    }
                }
            }
            let input_mask = inputs.iter().fold(0u64, |m, &i| m | 1 << i);
            nodes.push(Node {
                name: node.name,
                inputs,
                input_mask,
                signs,
                function: node.function,
            });
        }
        if violations.is_empty() {
            Ok(Network { n: raw.n, nodes })
        } else {
            Err(NetworkError::Invalid(violations))
        }
    }

    /// Node count.
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of configurations, `2^n`.
    pub fn state_count(&self) -> u64 {
        1u64 << self.n
    }

    /// In-neighbors of `j`, ascending.
    pub fn in_neighbors(&self, j: usize) -> &[usize] {
        &self.nodes[j].inputs
    }

    pub fn in_mask(&self, j: usize) -> NodeSet {
        NodeSet(self.nodes[j].input_mask)
    }

    pub fn function(&self, j: usize) -> &LocalFunction {
        &self.nodes[j].function
    }

    pub fn name(&self, j: usize) -> Option<&str> {
        self.nodes[j].name.as_deref()
    }

    /// Sign of the arc `i -> j`, if it exists.
    pub fn arc_sign(&self, i: usize, j: usize) -> Option<Sign> {
        let node = &self.nodes[j];
        node.inputs.binary_search(&i).ok().map(|p| node.signs[p])
    }

    /// Every arc `(i, j, sign)`, grouped by target.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize, Sign)> + '_ {
        self.nodes.iter().enumerate().flat_map(|(j, node)| {
            node.inputs
                .iter()
                .zip(&node.signs)
                .map(move |(&i, &s)| (i, j, s))
        })
    }

    /// Nodes with no inputs (constant functions).
    pub fn constant_nodes(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&j| self.nodes[j].function.arity() == 0)
            .collect()
    }

    /// `f_j` applied to the states of `j`'s in-neighbors in `x`.
    #[inline]
    pub fn eval_local(&self, j: usize, x: Configuration) -> bool {
        let node = &self.nodes[j];
        let mut index = 0usize;
        for (p, &i) in node.inputs.iter().enumerate() {
            index |= (((x.0 >> i) & 1) as usize) << p;
        }
        node.function.eval(index)
    }

    /// Word whose bit `j` is `f_j(x)` for `j` in `mask`, zero elsewhere.
    #[inline]
    pub fn eval_masked(&self, x: Configuration, mask: u64) -> u64 {
        mask_members(mask).fold(0u64, |acc, j| acc | (u64::from(self.eval_local(j, x)) << j))
    }

    /// `F^P(x)`: nodes in `P` take their local function value computed on
    /// `x`, the others keep their state.
    #[inline]
    pub fn apply_subset(&self, x: Configuration, p: NodeSet) -> Configuration {
        let mask = p.0 & full_mask(self.n);
        Configuration((x.0 & !mask) | self.eval_masked(x, mask))
    }

    /// `F(x) = F^V(x)`.
    #[inline]
    pub fn apply_parallel(&self, x: Configuration) -> Configuration {
        Configuration(self.eval_masked(x, full_mask(self.n)))
    }

    /// `F^k(x)`; `k = 0` gives `x`.
    pub fn iterate_parallel(&self, x: Configuration, k: usize) -> Configuration {
        (0..k).fold(x, |y, _| self.apply_parallel(y))
    }

    /// `U(x)`.
    #[inline]
    pub fn unstable_set(&self, x: Configuration) -> UnstableSet {
        NodeSet(x.0 ^ self.apply_parallel(x).0)
    }

    /// `u(x) = |U(x)|`.
    #[inline]
    pub fn potential(&self, x: Configuration) -> usize {
        self.unstable_set(x).len()
    }

    /// Whether every node is a copy or a negation of its predecessor on the
    /// cycle `0 -> 1 -> ... -> n-1 -> 0`.
    pub fn circuit_signs(&self) -> Option<Vec<Sign>> {
        if self.n == 0 {
            return None;
        }
        (0..self.n)
            .map(|j| {
                let pred = (j + self.n - 1) % self.n;
                let node = &self.nodes[j];
                (node.inputs == [pred]).then(|| node.signs[0])
            })
            .collect()
    }
}
