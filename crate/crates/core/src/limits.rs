//! Size guards for exhaustive operations.

use thiserror::Error;

/// Name of the environment variable that overrides the default guards.
pub const MAX_N_ENV: &str = "GIGLAB_MAX_N";

/// Raised when an exhaustive operation is asked to run above its guard.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("state space guard: {operation} refuses n = {n} (limit {limit}); raise the limit or force")]
pub struct StateSpaceGuard {
    pub operation: &'static str,
    pub n: usize,
    pub limit: usize,
}

/// Upper bounds on `n` for each family of exhaustive operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Trajectory scans over all `2^n` initial configurations.
    pub trajectory: usize,
    /// Full general iteration graph construction.
    pub gig: usize,
    /// Explicit schedule enumeration.
    pub schedules: usize,
    /// Positive-circuit schedule census.
    pub census: usize,
    /// Lemma verification on circuits.
    pub lemmas: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            trajectory: 24,
            gig: 16,
            schedules: 8,
            census: 5,
            lemmas: 10,
        }
    }
}

impl Limits {
    /// Guards large enough for anything a configuration word can address.
    /// Memory is the caller's problem.
    pub fn forced() -> Self {
        Limits {
            trajectory: 40,
            gig: 32,
            schedules: 12,
            census: 8,
            lemmas: 32,
        }
    }

    /// Defaults, with the trajectory and graph guards replaced by
    /// `GIGLAB_MAX_N` when it is set to a number.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(n) = std::env::var(MAX_N_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
        {
            limits.trajectory = n;
            limits.gig = n;
            limits.lemmas = n;
        }
        limits
    }

    pub(crate) fn check(
        limit: usize,
        operation: &'static str,
        n: usize,
    ) -> Result<(), StateSpaceGuard> {
        if n > limit {
            Err(StateSpaceGuard {
                operation,
                n,
                limit,
            })
        } else {
            Ok(())
        }
    }
}

/// Rough byte count for holding a general iteration graph of `n` nodes whose
/// configurations have at most `u_max` unstable nodes.
pub fn gig_memory_estimate(n: usize, u_max: usize) -> u128 {
    let nodes = 1u128 << n;
    // offsets (8 bytes) + potential (1 byte) per node, 4 bytes per target
    nodes * 9 + nodes * (1u128 << u_max) * 4
}

/// Byte count for a trajectory scan over `2^n` initial configurations.
pub fn trajectory_memory_estimate(n: usize) -> u128 {
    // successor word + attractor label per configuration
    (1u128 << n) * 12
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn guard_rejects_above_limit() {
        assert!(Limits::check(4, "op", 4).is_ok());
        let err = Limits::check(4, "op", 5).unwrap_err();
        assert_eq!(err.n, 5);
        assert_eq!(err.limit, 4);
    }

    #[test]
    fn defaults() {
        let l = Limits::default();
        assert_eq!((l.trajectory, l.gig), (24, 16));
    }
}
