use std::collections::{BTreeSet, HashMap};

use super::{all_output_sequences, OutputSeq};
use crate::stp::TransitionMatrix;

/// Outcome of comparing the output-sequence sets of two FSRs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equivalence {
    /// The two sets of output sequences are equal.
    pub equal: bool,
    /// Every sequence of A is produced by B.
    pub a_in_b: bool,
    /// Every sequence of B is produced by A.
    pub b_in_a: bool,
    /// The sets of periodic cycles agree up to phase, ignoring preperiods.
    pub phase_equal: bool,
    /// For each initial state of A, the first state of B with the same
    /// sequence.
    pub a_to_b: Vec<Option<usize>>,
    pub b_to_a: Vec<Option<usize>>,
}

fn first_state(seqs: &[OutputSeq]) -> HashMap<&OutputSeq, usize> {
    let mut m = HashMap::new();
    for (i, s) in seqs.iter().enumerate() {
        m.entry(s).or_insert(i + 1);
    }
    m
}

/// Compares two FSRs (possibly of different sizes) by the sets of output
/// sequences over all initial states.
pub fn equivalent(a: &TransitionMatrix, b: &TransitionMatrix) -> Equivalence {
    let sa = all_output_sequences(a);
    let sb = all_output_sequences(b);
    let (ia, ib) = (first_state(&sa), first_state(&sb));
    let a_to_b: Vec<Option<usize>> = sa.iter().map(|s| ib.get(s).copied()).collect();
    let b_to_a: Vec<Option<usize>> = sb.iter().map(|s| ia.get(s).copied()).collect();
    let a_in_b = a_to_b.iter().all(Option::is_some);
    let b_in_a = b_to_a.iter().all(Option::is_some);
    let cycles = |s: &[OutputSeq]| {
        s.iter()
            .map(OutputSeq::cycle_class)
            .collect::<BTreeSet<_>>()
    };
    Equivalence {
        equal: a_in_b && b_in_a,
        a_in_b,
        b_in_a,
        phase_equal: cycles(&sa) == cycles(&sb),
        a_to_b,
        b_to_a,
    }
}
