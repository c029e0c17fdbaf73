use std::collections::{BTreeMap, BTreeSet};

use super::OutputSeq;
use crate::stp::encode_state;

/// Derived state-transition digraph over `l`-bit output windows.
///
/// Nodes are window encodings (canonical-vector indices over `2^l`); an edge
/// joins each window to the next one along some sequence.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DerivedDigraph {
    window: usize,
    edges: BTreeMap<usize, BTreeSet<usize>>,
}

impl DerivedDigraph {
    pub fn window(&self) -> usize {
        self.window
    }

    pub fn nodes(&self) -> BTreeSet<usize> {
        self.edges
            .iter()
            .flat_map(|(&a, succ)| std::iter::once(a).chain(succ.iter().copied()))
            .collect()
    }

    pub fn successors(&self, node: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.get(&node).into_iter().flatten().copied()
    }

    pub fn out_degree(&self, node: usize) -> usize {
        self.edges.get(&node).map_or(0, BTreeSet::len)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges
            .iter()
            .flat_map(|(&a, succ)| succ.iter().map(move |&b| (a, b)))
    }

    /// Unique successor of every node, if each has exactly one.
    pub fn successor_map(&self) -> Option<BTreeMap<usize, usize>> {
        self.nodes()
            .into_iter()
            .map(|v| {
                let mut it = self.successors(v);
                match (it.next(), it.next()) {
                    (Some(w), None) => Some((v, w)),
                    _ => None,
                }
            })
            .collect()
    }
}

/// Builds `G_l` from output sequences. Each sequence is unrolled through its
/// preperiod and one period, plus the window that closes the cycle, so cycle
/// edges are present and every node has at least one successor.
pub fn derived_digraph(seqs: &[OutputSeq], l: usize) -> DerivedDigraph {
    assert!(l >= 1, "window length must be positive");
    let mut edges: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for s in seqs {
        let steps = s.transient_len();
        let bits = s.prefix(steps + l);
        let windows: Vec<usize> = (0..=steps).map(|t| encode_state(&bits[t..t + l])).collect();
        for w in windows.windows(2) {
            edges.entry(w[0]).or_default().insert(w[1]);
        }
    }
    DerivedDigraph { window: l, edges }
}

/// Fibonacci realizability: every node has output degree exactly 1.
pub fn realizable(g: &DerivedDigraph) -> bool {
    g.nodes().into_iter().all(|v| g.out_degree(v) == 1)
}
