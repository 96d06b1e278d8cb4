//! Attractors of a network under a block-sequential schedule.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::config::Configuration;
use crate::limits::{Limits, StateSpaceGuard};
use crate::network::Network;
use crate::schedule::UpdateSchedule;

/// When the network state is recorded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Observation {
    /// After each complete pass over the blocks.
    #[default]
    Macro,
    /// After every block.
    Block,
}

impl fmt::Display for Observation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Observation::Macro => "macro",
            Observation::Block => "block",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AttractorKind {
    FixedPoint,
    LimitCycle,
}

/// A periodic configuration sequence, rotated so that it starts with its
/// lexicographically smallest rotation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Attractor {
    cycle: Vec<Configuration>,
    observation: Observation,
    basin_size: Option<u64>,
}

impl Attractor {
    fn new(cycle: Vec<Configuration>, n: usize, observation: Observation) -> Self {
        Attractor {
            cycle: canonical_cycle(&cycle, n),
            observation,
            basin_size: None,
        }
    }

    pub fn cycle(&self) -> &[Configuration] {
        &self.cycle
    }

    pub fn period(&self) -> usize {
        self.cycle.len()
    }

    pub fn kind(&self) -> AttractorKind {
        if self.cycle.len() == 1 {
            AttractorKind::FixedPoint
        } else {
            AttractorKind::LimitCycle
        }
    }

    pub fn is_fixed_point(&self) -> bool {
        self.kind() == AttractorKind::FixedPoint
    }

    pub fn observation(&self) -> Observation {
        self.observation
    }

    /// Initial configurations reaching this attractor, when known.
    pub fn basin_size(&self) -> Option<u64> {
        self.basin_size
    }

    pub fn render(&self, n: usize) -> Vec<String> {
        self.cycle.iter().map(|x| x.to_binary(n)).collect()
    }
}

/// Rotation of `cycle` that is smallest when compared entry by entry in
/// the lexicographic order of binary renderings.
pub fn canonical_cycle(cycle: &[Configuration], n: usize) -> Vec<Configuration> {
    let p = cycle.len();
    let keys: Vec<u64> = cycle.iter().map(|x| x.lex_key(n)).collect();
    let Some(&min) = keys.iter().min() else {
        return Vec::new();
    };
    let start = (0..p)
        .filter(|&s| keys[s] == min)
        .min_by(|&a, &b| {
            (0..p)
                .map(|k| keys[(a + k) % p])
                .cmp((0..p).map(|k| keys[(b + k) % p]))
        })
        .unwrap_or(0);
    (0..p).map(|k| cycle[(start + k) % p]).collect()
}

/// Result of following one trajectory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trajectory {
    /// Observed steps before the attractor is entered.
    pub transient: usize,
    pub attractor: Attractor,
}

/// Smallest `d` dividing `cycle.len()` such that the cyclic sequence is
/// invariant under a shift by `d`.
fn minimal_period(cycle: &[Configuration]) -> usize {
    let len = cycle.len();
    (1..=len)
        .filter(|&d| len.is_multiple_of(d))
        .find(|&d| (0..len).all(|t| cycle[t] == cycle[(t + d) % len]))
        .unwrap_or(len)
}

/// Follows the trajectory of `x0` until it repeats.
pub fn find_attractor(
    net: &Network,
    x0: Configuration,
    schedule: &UpdateSchedule,
    observation: Observation,
) -> Result<Trajectory, StateSpaceGuard> {
    find_attractor_with(net, x0, schedule, observation, &Limits::default())
}

pub fn find_attractor_with(
    net: &Network,
    x0: Configuration,
    schedule: &UpdateSchedule,
    observation: Observation,
    limits: &Limits,
) -> Result<Trajectory, StateSpaceGuard> {
    Limits::check(limits.trajectory, "trajectory scan", net.n())?;
    let n = net.n();
    match observation {
        Observation::Macro => {
            let mut seen: HashMap<Configuration, usize> = HashMap::new();
            let mut seq = Vec::new();
            let mut x = x0;
            loop {
                if let Some(&first) = seen.get(&x) {
                    return Ok(Trajectory {
                        transient: first,
                        attractor: Attractor::new(seq[first..].to_vec(), n, observation),
                    });
                }
                seen.insert(x, seq.len());
                seq.push(x);
                x = schedule.macro_step(net, x);
            }
        }
        Observation::Block => {
            let phases = schedule.block_count().max(1);
            let mut seen: HashMap<(Configuration, usize), usize> = HashMap::new();
            let mut seq = Vec::new();
            let mut x = x0;
            let mut phase = 0;
            let first = loop {
                if let Some(&first) = seen.get(&(x, phase)) {
                    break first;
                }
                seen.insert((x, phase), seq.len());
                seq.push(x);
                if let Some(&block) = schedule.blocks().get(phase) {
                    x = net.apply_subset(x, block);
                }
                phase = (phase + 1) % phases;
            };
            let d = minimal_period(&seq[first..]);
            let mut start = first;
            while start > 0 && seq[start - 1] == seq[start - 1 + d] {
                start -= 1;
            }
            Ok(Trajectory {
                transient: start,
                attractor: Attractor::new(seq[start..start + d].to_vec(), n, observation),
            })
        }
    }
}

const UNSEEN: u32 = u32::MAX;
const ON_PATH: u32 = u32::MAX - 1;

/// Every attractor reachable from the `2^n` initial configurations, with
/// basin sizes, sorted by their canonical cycles.
pub fn enumerate_attractors(
    net: &Network,
    schedule: &UpdateSchedule,
    observation: Observation,
) -> Result<Vec<Attractor>, StateSpaceGuard> {
    enumerate_attractors_with(net, schedule, observation, &Limits::default())
}

pub fn enumerate_attractors_with(
    net: &Network,
    schedule: &UpdateSchedule,
    observation: Observation,
    limits: &Limits,
) -> Result<Vec<Attractor>, StateSpaceGuard> {
    let n = net.n();
    Limits::check(limits.trajectory, "attractor enumeration", n)?;
    let total = 1u64 << n;
    let successor: Vec<u64> = (0..total)
        .into_par_iter()
        .map(|w| schedule.macro_step(net, Configuration(w)).0)
        .collect();

    // Label each configuration with the macro attractor its trajectory ends in.
    let mut label = vec![UNSEEN; successor.len()];
    let mut cycles: Vec<Vec<Configuration>> = Vec::new();
    let mut path = Vec::new();
    for start in 0..total {
        if label[start as usize] != UNSEEN {
            continue;
        }
        path.clear();
        let mut v = start;
        while label[v as usize] == UNSEEN {
            label[v as usize] = ON_PATH;
            path.push(v);
            v = successor[v as usize];
        }
        let id = if label[v as usize] == ON_PATH {
            let at = path
                .iter()
                .position(|&w| w == v)
                .expect("cycle entry on path");
            cycles.push(path[at..].iter().map(|&w| Configuration(w)).collect());
            (cycles.len() - 1) as u32
        } else {
            label[v as usize]
        };
        for &w in &path {
            label[w as usize] = id;
        }
    }
    let mut basins = vec![0u64; cycles.len()];
    for &l in &label {
        basins[l as usize] += 1;
    }

    let mut merged: HashMap<Vec<Configuration>, u64> = HashMap::new();
    for (cycle, basin) in cycles.into_iter().zip(basins) {
        let attractor = match observation {
            Observation::Macro => Attractor::new(cycle, n, observation),
            Observation::Block => {
                find_attractor_with(net, cycle[0], schedule, observation, limits)?.attractor
            }
        };
        *merged.entry(attractor.cycle).or_default() += basin;
    }
    let mut out: Vec<Attractor> = merged
        .into_iter()
        .map(|(cycle, basin)| Attractor {
            cycle,
            observation,
            basin_size: Some(basin),
        })
        .collect();
    out.sort_by(|a, b| {
        let ka = a.cycle.iter().map(|x| x.lex_key(n));
        let kb = b.cycle.iter().map(|x| x.lex_key(n));
        ka.cmp(kb)
    });
    Ok(out)
}

/// Configurations with an empty unstable set.
pub fn stable_configurations(net: &Network) -> Vec<Configuration> {
    (0..net.state_count())
        .map(Configuration)
        .filter(|&x| net.unstable_set(x).is_empty())
        .collect()
}
