//! Brute-force oracles shared by the integration tests. None of these go
//! through the condensed graph or the word-level transition shortcuts.

#![allow(dead_code)]

use std::collections::{BTreeMap, VecDeque};

use giglab_core::{Configuration, Network};

/// `F^P(x)` computed node by node from `eval_local`.
pub fn subset_update(net: &Network, x: Configuration, p: u64) -> Configuration {
    let mut y = x;
    for i in 0..net.n() {
        if (p >> i) & 1 == 1 {
            y = y.with(i, net.eval_local(i, x));
        }
    }
    y
}

/// Every labeled arc `(x, F^P(x))` for nonempty `P`, with multiplicities.
pub fn naive_gig(net: &Network) -> BTreeMap<(u64, u64), u64> {
    let n = net.n();
    let mut arcs = BTreeMap::new();
    for w in 0..1u64 << n {
        for p in 1..1u64 << n {
            let y = subset_update(net, Configuration(w), p);
            *arcs.entry((w, y.0)).or_insert(0) += 1;
        }
    }
    arcs
}

/// Adjacency lists of the simple digraph underlying the naive graph,
/// self-loops dropped.
pub fn naive_adjacency(net: &Network) -> Vec<Vec<u64>> {
    let mut adj = vec![Vec::new(); 1 << net.n()];
    for ((x, y), _) in naive_gig(net) {
        if x != y {
            adj[x as usize].push(y);
        }
    }
    adj
}

pub fn bfs_reach(adj: &[Vec<u64>], from: u64) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    seen[from as usize] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v as usize] {
            if !seen[w as usize] {
                seen[w as usize] = true;
                queue.push_back(w);
            }
        }
    }
    seen
}

/// Unstable count computed node by node.
pub fn potential(net: &Network, x: Configuration) -> usize {
    (0..net.n())
        .filter(|&i| x.get(i) != net.eval_local(i, x))
        .count()
}
