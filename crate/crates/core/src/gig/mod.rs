//! General iteration graphs.
//!
//! The general iteration graph of a network has one vertex per
//! configuration and one labeled arc `x -> F^P(x)` for every nonempty node
//! subset `P`. Since `F^P(x) = F^{P ∩ U(x)}(x)`, the distinct targets of `x`
//! are `x ^ Q` for `Q ⊆ U(x)`, and each is hit by `2^(n - u(x))` subsets.
//! Only those targets are stored; multiplicities are recomputed from `u(x)`.

mod export;
mod metrics;
mod scc;

pub use export::{export_gig, parse_jsonl, ExportFormat, ExportOptions, MultiplicityLabel};
pub use metrics::{set_metrics, ArcWeighting, ConfigSetReport, Robustness};
pub use scc::SccDecomposition;

use std::collections::VecDeque;

use rayon::prelude::*;
use thiserror::Error;

use crate::config::{submasks, Configuration};
use crate::limits::{Limits, StateSpaceGuard};
use crate::network::Network;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GigError {
    #[error(transparent)]
    Guard(#[from] StateSpaceGuard),
    #[error("configuration set is empty")]
    EmptySet,
    #[error("likeliness undefined: no arc lies wholly outside the set")]
    UndefinedLikeliness,
    #[error("configuration {word:#b} is not a state of a {n}-node network")]
    InvalidConfiguration { word: u64, n: usize },
    #[error("unsupported export format {0:?} (expected dot, graphml or jsonl)")]
    UnsupportedFormat(String),
    #[error("malformed arc record on line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

/// Sources handled per parallel work item during construction.
const CHUNK: u64 = 1 << 12;

/// The condensed general iteration graph of a network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralIterationGraph {
    n: usize,
    /// `offsets[x]..offsets[x+1]` indexes the targets of `x`.
    offsets: Vec<usize>,
    /// Distinct targets per source, ascending; the self-loop is listed only
    /// when its multiplicity is positive.
    targets: Vec<u32>,
    potentials: Vec<u8>,
}

impl GeneralIterationGraph {
    /// Builds the graph of `net` under the default guard.
    pub fn build(net: &Network) -> Result<Self, GigError> {
        Self::build_with(net, &Limits::default())
    }

    pub fn build_with(net: &Network, limits: &Limits) -> Result<Self, GigError> {
        let n = net.n();
        Limits::check(limits.gig.min(32), "general iteration graph", n)?;
        let total = 1u64 << n;
        let chunks: Vec<(Vec<u8>, Vec<u32>, Vec<usize>)> = (0..total.div_ceil(CHUNK))
            .into_par_iter()
            .map(|c| {
                let lo = c * CHUNK;
                let hi = (lo + CHUNK).min(total);
                let mut pots = Vec::with_capacity((hi - lo) as usize);
                let mut lens = Vec::with_capacity((hi - lo) as usize);
                let mut out = Vec::new();
                for w in lo..hi {
                    let x = Configuration(w);
                    let unstable = net.unstable_set(x).mask();
                    let u = unstable.count_ones() as usize;
                    let before = out.len();
                    let self_loop = u < n;
                    out.extend(
                        submasks(unstable)
                            .filter(|&q| q != 0 || self_loop)
                            .map(|q| (w ^ q) as u32),
                    );
                    out[before..].sort_unstable();
                    pots.push(u as u8);
                    lens.push(out.len() - before);
                }
                (pots, out, lens)
            })
            .collect();

        let mut offsets = Vec::with_capacity(total as usize + 1);
        let mut potentials = Vec::with_capacity(total as usize);
        let mut targets = Vec::with_capacity(chunks.iter().map(|c| c.1.len()).sum());
        offsets.push(0);
        for (pots, out, lens) in chunks {
            potentials.extend(pots);
            targets.extend(out);
            for len in lens {
                let last = *offsets.last().unwrap_or(&0);
                offsets.push(last + len);
            }
        }
        Ok(GeneralIterationGraph {
            n,
            offsets,
            targets,
            potentials,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of vertices, `2^n`.
    pub fn node_count(&self) -> u64 {
        1u64 << self.n
    }

    pub fn configurations(&self) -> impl Iterator<Item = Configuration> {
        (0..self.node_count()).map(Configuration)
    }

    /// `u(x)`.
    pub fn potential(&self, x: Configuration) -> usize {
        usize::from(self.potentials[x.0 as usize])
    }

    /// Labeled arcs from `x` to `y != x`, or self-loops when `x == y`.
    fn multiplicity_of(&self, x: Configuration, y: Configuration) -> u64 {
        let free = 1u64 << (self.n - self.potential(x));
        if x == y {
            free - 1
        } else {
            free
        }
    }

    /// Distinct targets of `x`, ascending, with the number of nonempty
    /// subsets leading to each.
    pub fn arcs_from(&self, x: Configuration) -> impl Iterator<Item = (Configuration, u64)> + '_ {
        let i = x.0 as usize;
        self.targets[self.offsets[i]..self.offsets[i + 1]]
            .iter()
            .map(move |&t| {
                let y = Configuration(u64::from(t));
                (y, self.multiplicity_of(x, y))
            })
    }

    /// Distinct targets of `x` other than `x` itself.
    pub fn successors(&self, x: Configuration) -> impl Iterator<Item = Configuration> + '_ {
        let i = x.0 as usize;
        self.targets[self.offsets[i]..self.offsets[i + 1]]
            .iter()
            .map(|&t| Configuration(u64::from(t)))
            .filter(move |&y| y != x)
    }

    /// Multiplicity of the arc `x -> y` (0 when absent).
    pub fn multiplicity(&self, x: Configuration, y: Configuration) -> u64 {
        let i = x.0 as usize;
        let slice = &self.targets[self.offsets[i]..self.offsets[i + 1]];
        if y.0 > u64::from(u32::MAX) {
            return 0;
        }
        match slice.binary_search(&(y.0 as u32)) {
            Ok(_) => self.multiplicity_of(x, y),
            Err(_) => 0,
        }
    }

    /// Labeled out-degree of `x`; always `2^n - 1`.
    pub fn out_degree(&self, x: Configuration) -> u64 {
        self.arcs_from(x).map(|(_, m)| m).sum()
    }

    /// Number of distinct `(x, y)` pairs joined by an arc.
    pub fn distinct_arc_count(&self) -> usize {
        self.targets.len()
    }

    /// Sum of all multiplicities.
    pub fn labeled_arc_count(&self) -> u64 {
        self.configurations().map(|x| self.out_degree(x)).sum()
    }

    /// Every `(source, target, multiplicity)`, sources ascending.
    pub fn arcs(&self) -> impl Iterator<Item = (Configuration, Configuration, u64)> + '_ {
        self.configurations()
            .flat_map(move |x| self.arcs_from(x).map(move |(y, m)| (x, y, m)))
    }

    pub fn check_configuration(&self, x: Configuration) -> Result<(), GigError> {
        if x.fits(self.n) {
            Ok(())
        } else {
            Err(GigError::InvalidConfiguration {
                word: x.0,
                n: self.n,
            })
        }
    }

    /// Every configuration reachable from `x`, `x` included.
    pub fn reachable_set(&self, x: Configuration) -> Vec<bool> {
        let mut seen = vec![false; self.node_count() as usize];
        let mut queue = VecDeque::from([x]);
        seen[x.0 as usize] = true;
        while let Some(v) = queue.pop_front() {
            for y in self.successors(v) {
                if !seen[y.0 as usize] {
                    seen[y.0 as usize] = true;
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// Whether a directed path leads from `x` to `y`. Reflexive.
    pub fn reachable(&self, x: Configuration, y: Configuration) -> Result<bool, GigError> {
        self.check_configuration(x)?;
        self.check_configuration(y)?;
        if x == y {
            return Ok(true);
        }
        let mut seen = vec![false; self.node_count() as usize];
        let mut queue = VecDeque::from([x]);
        seen[x.0 as usize] = true;
        while let Some(v) = queue.pop_front() {
            for z in self.successors(v) {
                if z == y {
                    return Ok(true);
                }
                if !seen[z.0 as usize] {
                    seen[z.0 as usize] = true;
                    queue.push_back(z);
                }
            }
        }
        Ok(false)
    }

    pub fn mutually_reachable(&self, x: Configuration, y: Configuration) -> Result<bool, GigError> {
        Ok(self.reachable(x, y)? && self.reachable(y, x)?)
    }

    /// Strongly connected components, self-loops ignored.
    pub fn scc_decomposition(&self) -> SccDecomposition {
        scc::decompose(self)
    }

    /// Configurations grouped by potential, ascending.
    pub fn layers(&self) -> Vec<(usize, Vec<Configuration>)> {
        let mut by_u: Vec<Vec<Configuration>> = vec![Vec::new(); self.n + 1];
        for x in self.configurations() {
            by_u[self.potential(x)].push(x);
        }
        by_u.into_iter()
            .enumerate()
            .filter(|(_, v)| !v.is_empty())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Circuit;
    use crate::network::NodeSet;
    use std::collections::BTreeMap;

    fn cx(s: &str) -> Configuration {
        Configuration::parse_binary(s).unwrap().0
    }

    /// Labeled arcs by explicit enumeration of every nonempty subset.
    fn naive(net: &Network) -> BTreeMap<(u64, u64), u64> {
        let n = net.n();
        let mut arcs = BTreeMap::new();
        for w in 0..1u64 << n {
            for p in 1..1u64 << n {
                let y = net.apply_subset(Configuration(w), NodeSet(p));
                *arcs.entry((w, y.0)).or_insert(0) += 1;
            }
        }
        arcs
    }

    fn condensed(g: &GeneralIterationGraph) -> BTreeMap<(u64, u64), u64> {
        g.arcs().map(|(x, y, m)| ((x.0, y.0), m)).collect()
    }

    #[test]
    fn single_node_circuit() {
        let net = Circuit::canonical_positive(1).network();
        let g = GeneralIterationGraph::build(&net).unwrap();
        let arcs: Vec<_> = g.arcs().collect();
        assert_eq!(arcs, vec![(cx("0"), cx("0"), 1), (cx("1"), cx("1"), 1)]);
    }

    #[test]
    fn positive_three_arc_multiplicities() {
        let net = Circuit::canonical_positive(3).network();
        let g = GeneralIterationGraph::build(&net).unwrap();
        let x = cx("100");
        let arcs: Vec<_> = g.arcs_from(x).collect();
        assert_eq!(arcs.len(), 4);
        assert_eq!(g.multiplicity(x, x), 1);
        for (y, m) in arcs {
            if y != x {
                assert_eq!(m, 2);
            }
        }
        assert_eq!(condensed(&g), naive(&net));
    }

    #[test]
    fn degree_law_on_small_circuits() {
        for signs in ["+", "-", "++", "+-", "+++", "-++", "+-+-", "---"] {
            let net = Circuit::parse(signs).unwrap().network();
            let g = GeneralIterationGraph::build(&net).unwrap();
            let full = (1u64 << net.n()) - 1;
            assert!(g.configurations().all(|x| g.out_degree(x) == full));
            assert_eq!(g.labeled_arc_count(), (1 << net.n()) * full);
            assert_eq!(condensed(&g), naive(&net));
        }
    }

    #[test]
    fn full_potential_has_no_self_loop() {
        // 1010 on the positive 4-circuit: every node unstable.
        let net = Circuit::canonical_positive(4).network();
        let g = GeneralIterationGraph::build(&net).unwrap();
        let x = cx("1010");
        assert_eq!(g.potential(x), 4);
        assert_eq!(g.multiplicity(x, x), 0);
        assert_eq!(g.arcs_from(x).count(), 15);
    }

    #[test]
    fn reachability_examples() {
        let g = GeneralIterationGraph::build(&Circuit::canonical_positive(3).network()).unwrap();
        assert!(g.reachable(cx("101"), cx("101")).unwrap());
        assert!(g.reachable(cx("100"), cx("000")).unwrap());
        assert!(!g.reachable(cx("000"), cx("100")).unwrap());
        let g4 = GeneralIterationGraph::build(&Circuit::canonical_positive(4).network()).unwrap();
        assert!(g4.mutually_reachable(cx("1010"), cx("0101")).unwrap());
        assert!(matches!(
            g.reachable(Configuration(8), cx("000")),
            Err(GigError::InvalidConfiguration { .. })
        ));
    }

    #[test]
    fn guard() {
        let net = Circuit::canonical_positive(5).network();
        let limits = Limits {
            gig: 4,
            ..Limits::default()
        };
        assert!(matches!(
            GeneralIterationGraph::build_with(&net, &limits),
            Err(GigError::Guard(_))
        ));
    }

    #[test]
    fn layers_of_positive_three() {
        let g = GeneralIterationGraph::build(&Circuit::canonical_positive(3).network()).unwrap();
        let layers = g.layers();
        assert_eq!(layers.len(), 2);
        assert_eq!((layers[0].0, layers[0].1.len()), (0, 2));
        assert_eq!((layers[1].0, layers[1].1.len()), (2, 6));
    }
}
