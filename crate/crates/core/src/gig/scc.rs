use crate::config::Configuration;

use super::GeneralIterationGraph;

/// Strongly connected components of a general iteration graph, listed in a
/// topological order of the condensation (sources first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SccDecomposition {
    component_of: Vec<u32>,
    components: Vec<Vec<Configuration>>,
    dag: Vec<Vec<u32>>,
}

impl SccDecomposition {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Members of each component, ascending by word.
    pub fn components(&self) -> &[Vec<Configuration>] {
        &self.components
    }

    /// Index of the component holding `x`.
    pub fn component_of(&self, x: Configuration) -> usize {
        self.component_of[x.0 as usize] as usize
    }

    /// Successor components in the condensation, ascending. Every arc goes
    /// from a lower to a higher index.
    pub fn condensation(&self) -> &[Vec<u32>] {
        &self.dag
    }

    /// Components with no outgoing arc in the condensation.
    pub fn terminal_components(&self) -> impl Iterator<Item = &[Configuration]> {
        self.components
            .iter()
            .zip(&self.dag)
            .filter(|(_, out)| out.is_empty())
            .map(|(c, _)| c.as_slice())
    }
}

const NONE: u32 = u32::MAX;

/// Tarjan's algorithm with an explicit call stack.
pub(super) fn decompose(g: &GeneralIterationGraph) -> SccDecomposition {
    let total = g.node_count() as usize;
    let mut index = vec![NONE; total];
    let mut low = vec![0u32; total];
    let mut on_stack = vec![false; total];
    let mut stack: Vec<u32> = Vec::new();
    // Tarjan emits components sinks first.
    let mut emitted: Vec<Vec<u32>> = Vec::new();
    let mut next_index = 0u32;
    // (vertex, position in its successor list)
    let mut calls: Vec<(u32, usize)> = Vec::new();

    let succ = |v: u32| -> Vec<u32> {
        g.successors(Configuration(u64::from(v)))
            .map(|c| c.0 as u32)
            .collect()
    };
    let mut succ_cache: Vec<Vec<u32>> = Vec::new();

    for root in 0..total as u32 {
        if index[root as usize] != NONE {
            continue;
        }
        calls.push((root, 0));
        succ_cache.push(succ(root));
        index[root as usize] = next_index;
        low[root as usize] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root as usize] = true;

        while let Some(&mut (v, ref mut pos)) = calls.last_mut() {
            let vs = v as usize;
            let successors = succ_cache.last().expect("frame successors");
            if *pos < successors.len() {
                let w = successors[*pos];
                *pos += 1;
                let ws = w as usize;
                if index[ws] == NONE {
                    index[ws] = next_index;
                    low[ws] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[ws] = true;
                    calls.push((w, 0));
                    succ_cache.push(succ(w));
                } else if on_stack[ws] {
                    low[vs] = low[vs].min(index[ws]);
                }
                continue;
            }
            calls.pop();
            succ_cache.pop();
            if let Some(&(parent, _)) = calls.last() {
                let p = parent as usize;
                low[p] = low[p].min(low[vs]);
            }
            if low[vs] == index[vs] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w as usize] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                emitted.push(comp);
            }
        }
    }

    emitted.reverse();
    let mut component_of = vec![0u32; total];
    let components: Vec<Vec<Configuration>> = emitted
        .into_iter()
        .enumerate()
        .map(|(c, mut members)| {
            members.sort_unstable();
            for &m in &members {
                component_of[m as usize] = c as u32;
            }
            members
                .into_iter()
                .map(|m| Configuration(u64::from(m)))
                .collect()
        })
        .collect();
    let dag = components
        .iter()
        .enumerate()
        .map(|(c, members)| {
            let mut out: Vec<u32> = members
                .iter()
                .flat_map(|&x| g.successors(x))
                .map(|y| component_of[y.0 as usize])
                .filter(|&d| d as usize != c)
                .collect();
            out.sort_unstable();
            out.dedup();
            out
        })
        .collect();
    SccDecomposition {
        component_of,
        components,
        dag,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Circuit;

    fn layer_sets(g: &GeneralIterationGraph) -> Vec<Vec<Configuration>> {
        let mut v: Vec<_> = g.layers().into_iter().map(|(_, xs)| xs).collect();
        v.sort();
        v
    }

    fn scc_sets(s: &SccDecomposition) -> Vec<Vec<Configuration>> {
        let mut v = s.components().to_vec();
        v.sort();
        v
    }

    #[test]
    fn positive_three_components() {
        let g = GeneralIterationGraph::build(&Circuit::canonical_positive(3).network()).unwrap();
        let s = g.scc_decomposition();
        let mut sizes: Vec<_> = s.components().iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 6]);
        // the six-element layer comes first, the fixed points are sinks
        assert_eq!(s.components()[0].len(), 6);
        assert_eq!(s.terminal_components().count(), 2);
    }

    #[test]
    fn negative_three_components_are_layers() {
        let g = GeneralIterationGraph::build(&Circuit::canonical_negative(3).network()).unwrap();
        let s = g.scc_decomposition();
        assert_eq!(scc_sets(&s), layer_sets(&g));
        let mut sizes: Vec<_> = s.components().iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![2, 6]);
    }

    #[test]
    fn condensation_is_topologically_ordered() {
        let g = GeneralIterationGraph::build(&Circuit::parse("+-+-+").unwrap().network()).unwrap();
        let s = g.scc_decomposition();
        for (c, out) in s.condensation().iter().enumerate() {
            assert!(out.iter().all(|&d| d as usize > c));
        }
        for x in g.configurations() {
            assert!(s.components()[s.component_of(x)].contains(&x));
        }
    }
}
