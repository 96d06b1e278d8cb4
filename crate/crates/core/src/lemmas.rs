//! Exhaustive checks of the structural results on circuits, and the
//! positive-circuit schedule census.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::attractor::{enumerate_attractors_with, Observation};
use crate::circuit::{layer_profile, u_extremes, Circuit};
use crate::config::Configuration;
use crate::gig::{GeneralIterationGraph, GigError};
use crate::limits::{Limits, StateSpaceGuard};
use crate::network::Sign;
use crate::schedule::enumerate_schedules_with;

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub name: &'static str,
    pub passed: bool,
    /// First violating instance, rendered for humans.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl Verdict {
    fn from_search(name: &'static str, failure: Option<String>) -> Self {
        Verdict {
            name,
            passed: failure.is_none(),
            counterexample: failure,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub circuit: String,
    pub n: usize,
    pub sign: Sign,
    /// Enumerated `|U_k|`.
    pub layers: BTreeMap<usize, u64>,
    pub verdicts: Vec<Verdict>,
}

impl LemmaReport {
    pub fn all_passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn verdict(&self, name: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.name == name)
    }
}

pub const SHIFT: &str = "unstable-shift";
pub const PARITY: &str = "potential-parity";
pub const LAYER_SCC: &str = "layers-are-sccs";
pub const NO_UPWARD_ARC: &str = "no-upward-arc";
pub const DOWNWARD_REACH: &str = "downward-reachability";
pub const LAYER_SIZES: &str = "layer-sizes";
pub const COMPLEMENT_CLOSURE: &str = "complement-closure";

/// Checks the canonical circuit of size `n` and the given sign.
pub fn verify_lemmas(n: usize, sign: Sign) -> Result<LemmaReport, GigError> {
    verify_circuit(&Circuit::canonical(n, sign), &Limits::default())
}

/// Runs every structural check on `circuit`:
///
/// - `U(F(x))` is `U(x)` shifted by one node, for every `x`;
/// - `u(x)` is even on positive circuits and odd on negative ones;
/// - the strongly connected components are the layers `U_k` for `k > 0`,
///   while each configuration of `U_0` (a fixed point) is its own component;
/// - no arc of the general iteration graph increases `u`;
/// - from every layer `k` above `u_min` some configuration of layer `k - 2`
///   is reachable;
/// - `|U_k| = 2·C(n,k)`;
/// - layers are closed under complement.
pub fn verify_circuit(circuit: &Circuit, limits: &Limits) -> Result<LemmaReport, GigError> {
    let n = circuit.n();
    Limits::check(limits.lemmas, "lemma verification", n)?;
    let sign = circuit.global_sign();
    let net = circuit.network();
    let g = GeneralIterationGraph::build_with(&net, limits)?;
    let show = |x: Configuration| x.to_binary(n);
    let mut verdicts = Vec::new();

    let shift = g.configurations().find_map(|x| {
        let before = net.unstable_set(x);
        let after = net.unstable_set(net.apply_parallel(x));
        (after != before.rotate(1, n))
            .then(|| format!("x = {}: U(x) = {before}, U(F(x)) = {after}", show(x)))
    });
    verdicts.push(Verdict::from_search(SHIFT, shift));

    let want = match sign {
        Sign::Positive => 0,
        Sign::Negative => 1,
    };
    let parity = g
        .configurations()
        .find(|&x| g.potential(x) % 2 != want)
        .map(|x| format!("x = {} has u = {}", show(x), g.potential(x)));
    verdicts.push(Verdict::from_search(PARITY, parity));

    let sccs = g.scc_decomposition();
    let layers = g.layers();
    // Layer 0 holds fixed points, each its own component; every other layer
    // is a single component.
    let mixed = sccs.components().iter().find_map(|comp| {
        let u = g.potential(comp[0]);
        comp.iter().find(|&&y| g.potential(y) != u).map(|&y| {
            format!(
                "component holds {} (u = {u}) and {} (u = {})",
                show(comp[0]),
                show(y),
                g.potential(y)
            )
        })
    });
    let layer_scc = mixed.or_else(|| {
        layers.iter().find_map(|(k, members)| {
            let distinct = {
                let mut ids: Vec<_> = members.iter().map(|&x| sccs.component_of(x)).collect();
                ids.sort_unstable();
                ids.dedup();
                ids.len()
            };
            let want = if *k == 0 { members.len() } else { 1 };
            (distinct != want)
                .then(|| format!("layer {k} splits into {distinct} components, expected {want}"))
        })
    });
    verdicts.push(Verdict::from_search(LAYER_SCC, layer_scc));

    let upward = g
        .arcs()
        .find(|&(x, y, _)| g.potential(y) > g.potential(x))
        .map(|(x, y, _)| {
            format!(
                "{} (u = {}) -> {} (u = {})",
                show(x),
                g.potential(x),
                show(y),
                g.potential(y)
            )
        });
    verdicts.push(Verdict::from_search(NO_UPWARD_ARC, upward));

    let (u_min, _) = u_extremes(n, sign);
    let downward = layers
        .iter()
        .filter(|(k, _)| *k > u_min)
        .find_map(|(k, members)| {
            let from = members[0];
            let reach = g.reachable_set(from);
            let hit = g
                .configurations()
                .any(|y| reach[y.0 as usize] && g.potential(y) + 2 == *k);
            (!hit).then(|| {
                format!(
                    "no configuration of layer {} reachable from {}",
                    k - 2,
                    show(from)
                )
            })
        });
    verdicts.push(Verdict::from_search(DOWNWARD_REACH, downward));

    let enumerated: BTreeMap<usize, u64> =
        layers.iter().map(|(k, xs)| (*k, xs.len() as u64)).collect();
    let expected = layer_profile(n, sign).sizes;
    let sizes = (enumerated.len() != expected.len()
        || enumerated
            .iter()
            .any(|(k, &c)| expected.get(k) != Some(&u128::from(c))))
    .then(|| format!("enumerated {enumerated:?}, expected {expected:?}"));
    verdicts.push(Verdict::from_search(LAYER_SIZES, sizes));

    let closure = g
        .configurations()
        .find(|&x| g.potential(x) != g.potential(x.complement(n)))
        .map(|x| format!("u({}) != u({})", show(x), show(x.complement(n))));
    verdicts.push(Verdict::from_search(COMPLEMENT_CLOSURE, closure));

    Ok(LemmaReport {
        circuit: circuit.to_string(),
        n,
        sign,
        layers: enumerated,
        verdicts,
    })
}

/// One schedule's line in the census.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub schedule: String,
    pub aligned_sequential: bool,
    /// Limit cycles seen under macro-step observation.
    pub macro_limit_cycles: usize,
    /// Limit cycles seen when observing after every block.
    pub block_limit_cycles: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub n: usize,
    pub schedules: usize,
    pub aligned: usize,
    pub entries: Vec<CensusEntry>,
    /// Schedules for which "aligned sequential ⇔ no macro limit cycle"
    /// fails.
    pub deviations: Vec<String>,
}

impl CensusReport {
    /// Whether exactly the aligned sequential schedules are free of limit
    /// cycles under macro-step observation.
    pub fn claim_holds(&self) -> bool {
        self.deviations.is_empty()
    }

    /// Schedules with a limit cycle under block observation but not under
    /// macro-step observation, or the reverse.
    pub fn observation_disagreements(&self) -> Vec<&CensusEntry> {
        self.entries
            .iter()
            .filter(|e| (e.macro_limit_cycles > 0) != (e.block_limit_cycles > 0))
            .collect()
    }
}

/// Scans every schedule of the canonical positive circuit of size `n` for
/// limit cycles.
pub fn positive_limit_cycle_census(n: usize) -> Result<CensusReport, StateSpaceGuard> {
    positive_limit_cycle_census_with(n, &Limits::default())
}

pub fn positive_limit_cycle_census_with(
    n: usize,
    limits: &Limits,
) -> Result<CensusReport, StateSpaceGuard> {
    Limits::check(limits.census, "schedule census", n)?;
    let net = Circuit::canonical_positive(n).network();
    let schedules: Vec<_> = enumerate_schedules_with(n, limits)?.collect();
    let entries = schedules
        .par_iter()
        .map(|s| {
            let count = |obs| -> Result<usize, StateSpaceGuard> {
                Ok(enumerate_attractors_with(&net, s, obs, limits)?
                    .iter()
                    .filter(|a| !a.is_fixed_point())
                    .count())
            };
            Ok(CensusEntry {
                schedule: s.to_string(),
                aligned_sequential: s.is_aligned_sequential(),
                macro_limit_cycles: count(Observation::Macro)?,
                block_limit_cycles: count(Observation::Block)?,
            })
        })
        .collect::<Result<Vec<_>, StateSpaceGuard>>()?;
    let deviations = entries
        .iter()
        .filter(|e| e.aligned_sequential == (e.macro_limit_cycles > 0))
        .map(|e| {
            format!(
                "{}: aligned = {}, macro limit cycles = {}",
                e.schedule, e.aligned_sequential, e.macro_limit_cycles
            )
        })
        .collect();
    Ok(CensusReport {
        n,
        schedules: entries.len(),
        aligned: entries.iter().filter(|e| e.aligned_sequential).count(),
        entries,
        deviations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positive_three_passes() {
        let r = verify_lemmas(3, Sign::Positive).unwrap();
        assert!(r.all_passed(), "{r:?}");
        assert_eq!(r.layers, BTreeMap::from([(0, 2), (2, 6)]));
    }

    #[test]
    fn negative_four_passes() {
        let r = verify_lemmas(4, Sign::Negative).unwrap();
        assert!(r.all_passed(), "{r:?}");
        assert_eq!(r.layers, BTreeMap::from([(1, 8), (3, 8)]));
    }

    #[test]
    fn positive_six_passes() {
        assert!(verify_lemmas(6, Sign::Positive).unwrap().all_passed());
    }

    #[test]
    fn non_canonical_circuits_pass() {
        for lit in ["+--+-", "--", "-+-+-+"] {
            let c = Circuit::parse(lit).unwrap();
            assert!(verify_circuit(&c, &Limits::default()).unwrap().all_passed());
        }
    }

    #[test]
    fn guard() {
        assert!(matches!(
            verify_lemmas(11, Sign::Positive),
            Err(GigError::Guard(_))
        ));
        assert!(positive_limit_cycle_census(6).is_err());
    }

    #[test]
    fn census_three() {
        let r = positive_limit_cycle_census(3).unwrap();
        assert_eq!(r.schedules, 13);
        assert_eq!(r.aligned, 3);
        assert!(r.claim_holds(), "{:?}", r.deviations);
        let par = r.entries.iter().find(|e| e.schedule == "0,1,2").unwrap();
        assert!(par.macro_limit_cycles > 0);
        for e in r.entries.iter().filter(|e| e.aligned_sequential) {
            assert_eq!(e.macro_limit_cycles, 0);
        }
    }
}
