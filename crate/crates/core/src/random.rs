//! Random valid networks and circuits, for property checks and benchmarks.

use rand::seq::index::sample;
use rand::Rng;

use crate::circuit::Circuit;
use crate::network::{InputEffect, LocalFunction, Network, RawNetwork, RawNode, Sign};

/// A monotone function of `arity` inputs, non-decreasing in inputs outside
/// `negated` and non-increasing in the others, depending on every input.
pub fn random_local_function<R: Rng + ?Sized>(
    rng: &mut R,
    arity: usize,
    negated: u64,
) -> LocalFunction {
    assert!(arity > 0, "use LocalFunction::constant for sources");
    loop {
        let terms: Vec<usize> = (0..rng.random_range(1..=arity.max(2)))
            .map(|_| rng.random_range(1..1usize << arity))
            .collect();
        let table: Vec<bool> = (0..1usize << arity)
            .map(|k| {
                let k = k ^ negated as usize;
                terms.iter().any(|&t| t & !k == 0)
            })
            .collect();
        let f = LocalFunction::from_table(table).expect("power-of-two table");
        if (0..arity).all(|p| {
            !matches!(
                f.input_effect(p),
                InputEffect::Vacuous | InputEffect::NonMonotone
            )
        }) {
            return f;
        }
    }
}

/// A random valid network of `n` nodes, each with between 1 and
/// `max_arity` inputs (self-loops allowed).
pub fn random_network<R: Rng + ?Sized>(rng: &mut R, n: usize, max_arity: usize) -> Network {
    let max_arity = max_arity.clamp(1, n.max(1));
    let nodes = (0..n)
        .map(|_| {
            let arity = rng.random_range(1..=max_arity);
            let inputs = sample(rng, n, arity).into_vec();
            let negated = (0..arity).fold(
                0u64,
                |m, p| {
                    if rng.random_bool(0.5) {
                        m | 1 << p
                    } else {
                        m
                    }
                },
            );
            RawNode {
                name: None,
                inputs,
                function: random_local_function(rng, arity, negated),
            }
        })
        .collect();
    Network::validate(RawNetwork { n, nodes }).expect("generated functions are monotone")
}

/// A random circuit of size `n` with the given global sign.
pub fn random_circuit<R: Rng + ?Sized>(rng: &mut R, n: usize, sign: Sign) -> Circuit {
    let mut signs: Vec<Sign> = (0..n)
        .map(|_| {
            if rng.random_bool(0.5) {
                Sign::Negative
            } else {
                Sign::Positive
            }
        })
        .collect();
    let c = Circuit::new(signs.clone()).expect("nonempty");
    if c.global_sign() != sign {
        let k = rng.random_range(0..n);
        signs[k] = signs[k].times(Sign::Negative);
    }
    Circuit::new(signs).expect("nonempty")
}
