use super::OutputSeq;
use crate::error::{Error, Result};
use crate::stp::{TransitionMatrix, MAX_STAGES};

/// A Galois FSR generating a given set of sequences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    pub n: usize,
    pub matrix: TransitionMatrix,
    /// Initial state for each input sequence, in input order.
    pub initial: Vec<usize>,
}

/// Builds a Galois FSR whose output from `initial[i]` is `seqs[i]`.
///
/// Every time step of every sequence (through one period) gets its own state,
/// drawn from the half of the state space matching the output bit, and the
/// last step links back to the start of the period. Unused states loop on
/// themselves. `n` is the least stage count with `2^{n-1}` at least the
/// longest preperiod-plus-period and at least the number of states needed in
/// each half.
pub fn galois_from_sequences(seqs: &[OutputSeq]) -> Result<Realization> {
    if seqs.is_empty() {
        return Err(Error::SequenceFormat("no sequences to realize".into()));
    }
    let longest = seqs.iter().map(OutputSeq::transient_len).max().unwrap_or(1);
    let ones: usize = seqs
        .iter()
        .map(|s| {
            s.prefix(s.transient_len())
                .into_iter()
                .filter(|&b| b)
                .count()
        })
        .sum();
    let total: usize = seqs.iter().map(OutputSeq::transient_len).sum();
    let zeros = total - ones;
    let need = longest.max(ones).max(zeros);

    let n = (1..=MAX_STAGES)
        .find(|&n| 1usize << (n - 1) >= need)
        .ok_or(Error::UnsupportedStageCount(MAX_STAGES + 1))?;
    let half = 1usize << (n - 1);

    let mut cols: Vec<usize> = (1..=2 * half).collect();
    let (mut next_one, mut next_zero) = (1, half + 1);
    let mut initial = Vec::with_capacity(seqs.len());
    for s in seqs {
        let states: Vec<usize> = s
            .prefix(s.transient_len())
            .into_iter()
            .map(|b| {
                let slot = if b { &mut next_one } else { &mut next_zero };
                *slot += 1;
                *slot - 1
            })
            .collect();
        for w in states.windows(2) {
            cols[w[0] - 1] = w[1];
        }
        let last = *states.last().expect("period is non-empty");
        cols[last - 1] = states[s.preperiod().len()];
        initial.push(states[0]);
    }

    Ok(Realization {
        n,
        matrix: TransitionMatrix::from_columns(cols)?,
        initial,
    })
}
