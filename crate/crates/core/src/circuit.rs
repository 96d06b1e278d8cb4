//! Boolean automata circuits.
//!
//! A circuit of size `n` has arcs `i-1 -> i` (indices mod `n`) and local
//! functions in `{id, neg}`. Its sign is the parity of its negative arcs.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::config::{full_mask, Configuration};
use crate::network::{LocalFunction, Network, RawNetwork, RawNode, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("a circuit needs at least one node")]
    Empty,
    #[error("circuits of sizes {0} and {1} are not isomorphic")]
    SizeMismatch(usize, usize),
    #[error("a {0} circuit and a {1} circuit are not isomorphic")]
    SignMismatch(Sign, Sign),
    #[error("no layer {k} representative for n = {n}: k must be even and at most n")]
    InvalidLayer { n: usize, k: usize },
    #[error("bad circuit literal {0:?} (expected a +/- string, pos:N or neg:N)")]
    Literal(String),
}

/// Arc signs of a circuit: `signs[i]` is the sign of `i-1 -> i`, positive
/// when `f_i = id`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Circuit {
    signs: Vec<Sign>,
}

impl Circuit {
    pub fn new(signs: Vec<Sign>) -> Result<Self, CircuitError> {
        if signs.is_empty() {
            return Err(CircuitError::Empty);
        }
        Ok(Circuit { signs })
    }

    /// All arcs positive.
    pub fn canonical_positive(n: usize) -> Self {
        assert!(n > 0, "empty circuit");
        Circuit {
            signs: vec![Sign::Positive; n],
        }
    }

    /// Only the arc into node 0 negative.
    pub fn canonical_negative(n: usize) -> Self {
        assert!(n > 0, "empty circuit");
        let mut signs = vec![Sign::Positive; n];
        signs[0] = Sign::Negative;
        Circuit { signs }
    }

    pub fn canonical(n: usize, sign: Sign) -> Self {
        match sign {
            Sign::Positive => Self::canonical_positive(n),
            Sign::Negative => Self::canonical_negative(n),
        }
    }

    /// Parses `++-` (one sign per arc, the arc into node `i` at position
    /// `i`), `pos:N` or `neg:N`.
    pub fn parse(literal: &str) -> Result<Self, CircuitError> {
        let bad = || CircuitError::Literal(literal.to_string());
        let lit = literal.trim();
        if let Some((kind, size)) = lit.split_once(':') {
            let n: usize = size.trim().parse().map_err(|_| bad())?;
            if n == 0 {
                return Err(CircuitError::Empty);
            }
            return match kind.trim() {
                "pos" => Ok(Self::canonical_positive(n)),
                "neg" => Ok(Self::canonical_negative(n)),
                _ => Err(bad()),
            };
        }
        let signs = lit
            .chars()
            .map(|c| match c {
                '+' => Ok(Sign::Positive),
                '-' => Ok(Sign::Negative),
                _ => Err(bad()),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(signs)
    }

    /// Reads the circuit structure off a network, if it has one.
    pub fn from_network(net: &Network) -> Option<Self> {
        net.circuit_signs().map(|signs| Circuit { signs })
    }

    pub fn n(&self) -> usize {
        self.signs.len()
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    /// Positive iff the number of negative arcs is even.
    pub fn global_sign(&self) -> Sign {
        self.signs
            .iter()
            .fold(Sign::Positive, |acc, &s| acc.times(s))
    }

    pub fn network(&self) -> Network {
        let n = self.n();
        let nodes = self
            .signs
            .iter()
            .enumerate()
            .map(|(i, s)| RawNode {
                name: None,
                inputs: vec![(i + n - 1) % n],
                function: match s {
                    Sign::Positive => LocalFunction::identity(),
                    Sign::Negative => LocalFunction::negation(),
                },
            })
            .collect();
        Network::validate(RawNetwork { n, nodes }).expect("circuits are valid networks")
    }

    /// `f_j ∘ ... ∘ f_i` along the circuit from node `i` forward to node
    /// `j`, wrapping past `n-1` when `j < i`. `Positive` stands for `id`,
    /// `Negative` for `neg`.
    pub fn compose_path(&self, j: usize, i: usize) -> Sign {
        let n = self.n();
        let (j, i) = (j % n, i % n);
        let path: Box<dyn Iterator<Item = usize>> = if i <= j {
            Box::new(i..=j)
        } else {
            Box::new((i..n).chain(0..=j))
        };
        path.fold(Sign::Positive, |acc, k| acc.times(self.signs[k]))
    }

    /// Bits flipped by the bijection from the canonical circuit of the same
    /// sign: bit `i` is set iff the path from `i+1` to `0` composes to `neg`.
    fn frame_mask(&self) -> u64 {
        let n = self.n();
        (0..n)
            .filter(|&i| self.compose_path(0, i + 1) == Sign::Negative)
            .fold(0, |m, i| m | 1 << i)
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.signs {
            write!(f, "{}", s.symbol())?;
        }
        Ok(())
    }
}

/// A configuration bijection `x ↦ x ^ mask` carrying the dynamics of one
/// circuit onto another of the same size and sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Isomorphism {
    n: usize,
    mask: u64,
}

impl Isomorphism {
    #[inline]
    pub fn apply(&self, x: Configuration) -> Configuration {
        Configuration(x.0 ^ self.mask)
    }

    /// Nodes whose state is negated.
    pub fn flipped(&self) -> u64 {
        self.mask
    }

    pub fn is_identity(&self) -> bool {
        self.mask == 0
    }

    /// The inverse map (the map is an involution).
    pub fn inverse(&self) -> Self {
        *self
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

/// The bijection `σ` with `F'^P(σ(x)) = σ(F^P(x))` for all `x` and `P`.
///
/// From a canonical positive `from`, bit `i` of `x` is negated exactly when
/// the path of `to` from node `i+1` around to node `0` composes to `neg`.
/// Other sources are first mapped back to their canonical circuit.
pub fn iso_map(from: &Circuit, to: &Circuit) -> Result<Isomorphism, CircuitError> {
    if from.n() != to.n() {
        return Err(CircuitError::SizeMismatch(from.n(), to.n()));
    }
    if from.global_sign() != to.global_sign() {
        return Err(CircuitError::SignMismatch(
            from.global_sign(),
            to.global_sign(),
        ));
    }
    Ok(Isomorphism {
        n: from.n(),
        mask: (from.frame_mask() ^ to.frame_mask()) & full_mask(from.n()),
    })
}

/// Smallest and largest potential over all configurations of a circuit.
pub fn u_extremes(n: usize, sign: Sign) -> (usize, usize) {
    let u_min = match sign {
        Sign::Positive => 0,
        Sign::Negative => 1,
    };
    let n_even = n.is_multiple_of(2);
    let u_max = match (sign, n_even) {
        (Sign::Positive, true) | (Sign::Negative, false) => n,
        _ => n - 1,
    };
    (u_min, u_max)
}

/// Layer sizes `|U_k|` of a circuit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerProfile {
    pub n: usize,
    pub sign: Sign,
    /// `k -> |U_k|` for `k = u_min, u_min + 2, ..., u_max`.
    pub sizes: BTreeMap<usize, u128>,
}

impl LayerProfile {
    pub fn valid_ks(&self) -> impl Iterator<Item = usize> + '_ {
        self.sizes.keys().copied()
    }

    pub fn total(&self) -> u128 {
        self.sizes.values().sum()
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

/// `|U_k| = 2·C(n,k)` for every `k` of the sign's parity up to `u_max`.
pub fn layer_profile(n: usize, sign: Sign) -> LayerProfile {
    let (u_min, u_max) = u_extremes(n, sign);
    let sizes = (u_min..=u_max)
        .step_by(2)
        .map(|k| (k, 2 * binomial(n, k)))
        .collect();
    LayerProfile { n, sign, sizes }
}

/// Layer sizes of `circuit` counted configuration by configuration.
pub fn enumerate_layer_profile(circuit: &Circuit) -> BTreeMap<usize, u128> {
    let net = circuit.network();
    let mut sizes = BTreeMap::new();
    for w in 0..net.state_count() {
        *sizes.entry(net.potential(Configuration(w))).or_insert(0) += 1;
    }
    sizes
}

/// `(10)^(k/2)` followed by zeros: a configuration of potential `k` on the
/// canonical positive circuit of size `n`.
pub fn representative_config(n: usize, k: usize) -> Result<Configuration, CircuitError> {
    if !k.is_multiple_of(2) || k > n {
        return Err(CircuitError::InvalidLayer { n, k });
    }
    Ok(Configuration(
        (0..k / 2).fold(0u64, |w, pair| w | 1 << (2 * pair)),
    ))
}
