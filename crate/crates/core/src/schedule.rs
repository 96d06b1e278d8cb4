//! Block-sequential update schedules.
//!
//! A schedule assigns each node a date; nodes sharing a date form a block
//! and are updated synchronously, blocks are applied in date order. One
//! pass over all blocks is a macro-step.

use std::fmt;

use thiserror::Error;

use crate::config::{full_mask, Configuration};
use crate::limits::{Limits, StateSpaceGuard};
use crate::network::{Network, NodeSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScheduleError {
    #[error("schedule has {found} dates for {expected} nodes")]
    LengthMismatch { expected: usize, found: usize },
    #[error("smallest date is {0}, expected 0")]
    MinNotZero(usize),
    #[error("no node is updated at date {0}")]
    GapInDates(usize),
    #[error("node {0} appears in no block")]
    MissingNode(usize),
    #[error("node {0} appears in more than one block")]
    RepeatedNode(usize),
    #[error("node {node} is out of range for {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },
    #[error("empty block in schedule literal")]
    EmptyBlock,
    #[error("bad token {0:?} in schedule literal")]
    BadToken(String),
}

/// A validated block-sequential schedule over `n` nodes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UpdateSchedule {
    dates: Vec<usize>,
    blocks: Vec<NodeSet>,
}

impl UpdateSchedule {
    /// Checks that `dates` start at 0 and leave no gap.
    pub fn from_dates(dates: Vec<usize>, n: usize) -> Result<Self, ScheduleError> {
        if dates.len() != n {
            return Err(ScheduleError::LengthMismatch {
                expected: n,
                found: dates.len(),
            });
        }
        let Some(&max) = dates.iter().max() else {
            return Ok(UpdateSchedule {
                dates,
                blocks: Vec::new(),
            });
        };
        let min = *dates.iter().min().unwrap_or(&0);
        if min != 0 {
            return Err(ScheduleError::MinNotZero(min));
        }
        let mut blocks = vec![NodeSet::EMPTY; max + 1];
        for (i, &d) in dates.iter().enumerate() {
            blocks[d].0 |= 1 << i;
        }
        if let Some(gap) = blocks.iter().position(|b| b.is_empty()) {
            return Err(ScheduleError::GapInDates(gap));
        }
        Ok(UpdateSchedule { dates, blocks })
    }

    /// Builds a schedule from its ordered blocks, which must partition the
    /// `n` nodes.
    pub fn from_blocks(blocks: Vec<NodeSet>, n: usize) -> Result<Self, ScheduleError> {
        let mut dates = vec![usize::MAX; n];
        for (d, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(ScheduleError::EmptyBlock);
            }
            for i in block.iter() {
                if i >= n {
                    return Err(ScheduleError::NodeOutOfRange { node: i, n });
                }
                if dates[i] != usize::MAX {
                    return Err(ScheduleError::RepeatedNode(i));
                }
                dates[i] = d;
            }
        }
        if let Some(i) = dates.iter().position(|&d| d == usize::MAX) {
            return Err(ScheduleError::MissingNode(i));
        }
        Ok(UpdateSchedule { dates, blocks })
    }

    /// The parallel schedule: one block holding every node.
    pub fn parallel(n: usize) -> Self {
        UpdateSchedule {
            dates: vec![0; n],
            blocks: if n == 0 {
                vec![]
            } else {
                vec![NodeSet::all(n)]
            },
        }
    }

    /// The sequential schedule updating `0, 1, ..., n-1` in that order.
    pub fn aligned_sequential(n: usize) -> Self {
        UpdateSchedule {
            dates: (0..n).collect(),
            blocks: (0..n).map(NodeSet::single).collect(),
        }
    }

    /// Parses `0,2;1` (blocks separated by `;`, nodes by `,`), `*` for the
    /// parallel schedule or `seq` for the aligned sequential one.
    pub fn parse(literal: &str, n: usize) -> Result<Self, ScheduleError> {
        match literal.trim() {
            "*" => return Ok(Self::parallel(n)),
            "seq" => return Ok(Self::aligned_sequential(n)),
            _ => {}
        }
        let mut blocks = Vec::new();
        for part in literal.split(';') {
            let mut block = NodeSet::EMPTY;
            for tok in part.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                let i: usize = tok
                    .parse()
                    .map_err(|_| ScheduleError::BadToken(tok.to_string()))?;
                if i >= n {
                    return Err(ScheduleError::NodeOutOfRange { node: i, n });
                }
                if block.contains(i) {
                    return Err(ScheduleError::RepeatedNode(i));
                }
                block.0 |= 1 << i;
            }
            blocks.push(block);
        }
        Self::from_blocks(blocks, n)
    }

    pub fn n(&self) -> usize {
        self.dates.len()
    }

    pub fn dates(&self) -> &[usize] {
        &self.dates
    }

    /// Blocks `B_0, ..., B_m` in update order.
    pub fn blocks(&self) -> &[NodeSet] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_parallel(&self) -> bool {
        self.blocks.len() <= 1
    }

    /// One node per block.
    pub fn is_sequential(&self) -> bool {
        self.blocks.len() == self.n()
    }

    /// Sequential with block order a cyclic rotation of `0, 1, ..., n-1`.
    pub fn is_aligned_sequential(&self) -> bool {
        let n = self.n();
        self.is_sequential()
            && (0..n).all(|t| {
                let here = self.blocks[t].0.trailing_zeros() as usize;
                let next = self.blocks[(t + 1) % n].0.trailing_zeros() as usize;
                next == (here + 1) % n
            })
    }

    /// One macro-step: every block in turn, each reading the configuration
    /// left by the previous ones.
    pub fn macro_step(&self, net: &Network, x: Configuration) -> Configuration {
        self.blocks
            .iter()
            .fold(x, |y, &block| net.apply_subset(y, block))
    }

    /// The configurations observed after each block of one macro-step; the
    /// last entry is the macro-step result.
    pub fn block_trace(&self, net: &Network, x: Configuration) -> Vec<Configuration> {
        self.blocks
            .iter()
            .scan(x, |y, &block| {
                *y = net.apply_subset(*y, block);
                Some(*y)
            })
            .collect()
    }

    /// Representative of the rotation class: among the cyclic rotations of
    /// the block list, the one whose blocks, read as sorted node lists, come
    /// first lexicographically.
    #[must_use]
    pub fn canonical_rotation(&self) -> UpdateSchedule {
        let m = self.blocks.len();
        if m <= 1 {
            return self.clone();
        }
        let lists: Vec<Vec<usize>> = self.blocks.iter().map(|b| b.iter().collect()).collect();
        let best = (0..m)
            .min_by(|&a, &b| {
                let ra = (0..m).map(|k| &lists[(a + k) % m]);
                let rb = (0..m).map(|k| &lists[(b + k) % m]);
                ra.cmp(rb)
            })
            .unwrap_or(0);
        self.rotated(best)
    }

    /// Block list rotated so that block `start` comes first.
    #[must_use]
    pub fn rotated(&self, start: usize) -> UpdateSchedule {
        let m = self.blocks.len();
        if m == 0 {
            return self.clone();
        }
        let blocks: Vec<NodeSet> = (0..m).map(|k| self.blocks[(start + k) % m]).collect();
        let dates = self
            .dates
            .iter()
            .map(|&d| (d + m - start % m) % m)
            .collect();
        UpdateSchedule { dates, blocks }
    }
}

impl fmt::Display for UpdateSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, block) in self.blocks.iter().enumerate() {
            if k > 0 {
                f.write_str(";")?;
            }
            for (p, i) in block.iter().enumerate() {
                if p > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{i}")?;
            }
        }
        Ok(())
    }
}

/// Lazily yields every ordered partition of `{0..n-1}` into nonempty
/// blocks, starting with the parallel schedule.
#[derive(Debug, Clone)]
pub struct ScheduleIter {
    n: usize,
    // (nodes still unassigned before this block, this block)
    stack: Vec<(u64, u64)>,
    done: bool,
}

impl ScheduleIter {
    fn new(n: usize) -> Self {
        let all = full_mask(n);
        ScheduleIter {
            n,
            stack: if n == 0 { vec![] } else { vec![(all, all)] },
            done: false,
        }
    }

    fn advance(&mut self) {
        while let Some((rem, block)) = self.stack.pop() {
            let next = block.wrapping_sub(1) & rem;
            if next != 0 {
                self.stack.push((rem, next));
                let left = rem & !next;
                if left != 0 {
                    self.stack.push((left, left));
                }
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for ScheduleIter {
    type Item = UpdateSchedule;

    fn next(&mut self) -> Option<UpdateSchedule> {
        if self.done {
            return None;
        }
        let blocks = self.stack.iter().map(|&(_, b)| NodeSet(b)).collect();
        let schedule = UpdateSchedule::from_blocks(blocks, self.n)
            .expect("generator only produces partitions");
        self.advance();
        Some(schedule)
    }
}

/// Every block-sequential schedule of `n` nodes, each exactly once.
pub fn enumerate_schedules(n: usize) -> Result<ScheduleIter, StateSpaceGuard> {
    enumerate_schedules_with(n, &Limits::default())
}

pub fn enumerate_schedules_with(
    n: usize,
    limits: &Limits,
) -> Result<ScheduleIter, StateSpaceGuard> {
    Limits::check(limits.schedules, "schedule enumeration", n)?;
    Ok(ScheduleIter::new(n))
}
