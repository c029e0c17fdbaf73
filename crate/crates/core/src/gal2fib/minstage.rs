use std::fmt;
use std::str::FromStr;

use super::{all_output_sequences, derived_digraph, realizable, OutputSeq};
use crate::error::{Error, Result};
use crate::fib::admissible_successors;
use crate::stp::{
    encode_state, parse_delta, write_delta, LogicalMatrix, TransitionMatrix, MAX_STAGES,
};

/// Default cap on free columns for which every completion is materialized.
pub const DEFAULT_MAX_FREE: usize = 20;

/// A transition matrix with some columns left open (`*`). Open columns may
/// take either value the Fibonacci shift law allows.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialTransition {
    n: usize,
    cols: Vec<Option<usize>>,
}

impl PartialTransition {
    pub fn new(cols: Vec<Option<usize>>) -> Result<Self> {
        let size = cols.len();
        if size < 2 || !size.is_power_of_two() {
            return Err(Error::DeltaFormat(format!(
                "length {size} is not 2^n with n >= 1"
            )));
        }
        if let Some(bad) = cols.iter().flatten().find(|&&c| c == 0 || c > size) {
            return Err(Error::StateOutOfRange { index: *bad, size });
        }
        Ok(PartialTransition {
            n: size.trailing_zeros() as usize,
            cols,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn columns(&self) -> &[Option<usize>] {
        &self.cols
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (1..=self.cols.len())
            .filter(|&k| self.cols[k - 1].is_none())
            .collect()
    }

    pub fn fixed_count(&self) -> usize {
        self.cols.iter().filter(|c| c.is_some()).count()
    }

    /// Number of completions, `None` if it overflows.
    pub fn completion_count(&self) -> Option<u128> {
        1u128.checked_shl(self.free_columns().len() as u32)
    }

    /// Completion selected by `choice`: bit `i` (counting from the most
    /// significant of `free` bits) picks the larger value for the `i`-th open
    /// column. Counting `choice` upward visits completions in lexicographic
    /// order.
    fn completion(&self, free: &[usize], choice: u128) -> TransitionMatrix {
        let size = self.cols.len();
        let mut cols: Vec<usize> = self.cols.iter().map(|c| c.unwrap_or(0)).collect();
        for (i, &k) in free.iter().enumerate() {
            let (lo, hi) = admissible_successors(size, k);
            let high = choice >> (free.len() - 1 - i) & 1 == 1;
            cols[k - 1] = if high { hi } else { lo };
        }
        TransitionMatrix::from_columns(cols).expect("completion is in range")
    }

    /// All completions in lexicographic order. Panics if there are 2^128 or
    /// more.
    pub fn completions(&self) -> impl Iterator<Item = TransitionMatrix> + '_ {
        let free = self.free_columns();
        let count = self
            .completion_count()
            .expect("too many completions to enumerate");
        (0..count).map(move |c| self.completion(&free, c))
    }

    pub fn least_completion(&self) -> TransitionMatrix {
        self.completion(&self.free_columns(), 0)
    }

    pub fn is_completed_by(&self, l: &TransitionMatrix) -> bool {
        l.size() == self.cols.len()
            && self
                .cols
                .iter()
                .zip(l.columns())
                .all(|(p, &q)| p.is_none_or(|p| p == q))
    }
}

impl fmt::Display for PartialTransition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_delta(f, self.cols.len(), self.cols.iter().copied())
    }
}

impl FromStr for PartialTransition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (rows, cols) = parse_delta(s)?;
        if rows != cols.len() {
            return Err(Error::DeltaFormat(format!(
                "d{rows} has {} columns",
                cols.len()
            )));
        }
        Self::new(cols)
    }
}

/// Completions of a partial matrix, materialized up to a cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Completions {
    /// Total number of completions, `None` when beyond `u128`.
    pub total: Option<u128>,
    /// Every completion in lexicographic order when `exhaustive`, otherwise
    /// only the least one.
    pub matrices: Vec<TransitionMatrix>,
    pub exhaustive: bool,
}

/// Result of the minimal-stage Fibonacci reconstruction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinStageFibonacci {
    /// Number of Fibonacci stages.
    pub stages: usize,
    /// Window lengths tried before `stages` whose digraph was not realizable.
    pub rejected: Vec<usize>,
    pub partial: PartialTransition,
    /// Galois state → index of its first `stages` outputs.
    pub state_map: LogicalMatrix,
    /// Output sequence of each Galois initial state.
    pub sequences: Vec<OutputSeq>,
    pub completions: Completions,
}

fn ceil_log2(r: usize) -> usize {
    r.next_power_of_two().trailing_zeros() as usize
}

/// Finds the fewest Fibonacci stages reproducing every output sequence of
/// `lg`, with default completion cap.
pub fn min_stage_fibonacci(lg: &TransitionMatrix) -> Result<MinStageFibonacci> {
    min_stage_fibonacci_with(lg, DEFAULT_MAX_FREE)
}

/// As [`min_stage_fibonacci`]; completions are listed exhaustively only when
/// at most `max_free` columns are open.
///
/// The window length starts at `max(1, ⌈log₂ r⌉)` for the longest output
/// period `r` and grows until every window has a unique successor. The
/// search ends by `2^n - 1`, where windows determine the state's whole
/// future output.
pub fn min_stage_fibonacci_with(
    lg: &TransitionMatrix,
    max_free: usize,
) -> Result<MinStageFibonacci> {
    let sequences = all_output_sequences(lg);
    let r = sequences
        .iter()
        .map(|s| s.period().len())
        .max()
        .unwrap_or(1);
    let start = ceil_log2(r).max(1);

    let mut rejected = Vec::new();
    let mut l = start;
    let graph = loop {
        if l > MAX_STAGES {
            return Err(Error::UnsupportedStageCount(l));
        }
        let g = derived_digraph(&sequences, l);
        if realizable(&g) {
            break g;
        }
        rejected.push(l);
        l += 1;
    };

    let succ = graph.successor_map().expect("realizable graph");
    let mut cols = vec![None; 1 << l];
    for (w, next) in succ {
        cols[w - 1] = Some(next);
    }
    let partial = PartialTransition::new(cols)?;

    let map = sequences
        .iter()
        .map(|s| encode_state(&s.prefix(l)))
        .collect();
    let state_map = LogicalMatrix::new(1 << l, map)?;

    let free = partial.free_columns().len();
    let completions = if free <= max_free {
        Completions {
            total: partial.completion_count(),
            matrices: partial.completions().collect(),
            exhaustive: true,
        }
    } else {
        Completions {
            total: partial.completion_count(),
            matrices: vec![partial.least_completion()],
            exhaustive: false,
        }
    };

    Ok(MinStageFibonacci {
        stages: l,
        rejected,
        partial,
        state_map,
        sequences,
        completions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fib::is_fibonacci;
    use crate::gal2fib::simulate;

    #[test]
    fn seven_column_example() {
        let lg: TransitionMatrix = "d8[5 3 7 6 4 1 8 7]".parse().unwrap();
        let r = min_stage_fibonacci(&lg).unwrap();
        assert_eq!(r.stages, 3);
        assert_eq!(r.rejected, vec![1, 2]);
        assert_eq!(r.partial.to_string(), "d8[* 4 6 8 * 3 * 8]");
        assert_eq!(r.state_map.to_string(), "d8[3 2 4 3 6 6 8 8]");
        assert_eq!(r.completions.matrices.len(), 8);
        assert!(r.completions.exhaustive);
        assert!(r
            .completions
            .matrices
            .contains(&"d8[1 4 6 8 2 3 5 8]".parse().unwrap()));
    }

    #[test]
    fn two_stage_example() {
        let lg: TransitionMatrix = "d8[3 4 2 3 6 6 4 4]".parse().unwrap();
        let r = min_stage_fibonacci(&lg).unwrap();
        assert_eq!(r.stages, 2);
        assert_eq!(r.state_map.to_string(), "d4[1 1 1 1 4 4 3 3]");
        let got: Vec<String> = r
            .completions
            .matrices
            .iter()
            .map(|m| m.to_string())
            .collect();
        assert_eq!(got, vec!["d4[1 3 1 4]", "d4[1 4 1 4]"]);
    }

    #[test]
    fn fibonacci_input_is_among_completions() {
        let lf: TransitionMatrix = "d16[2 4 6 8 10 12 13 16 1 3 5 7 9 11 14 15]"
            .parse()
            .unwrap();
        let r = min_stage_fibonacci(&lf).unwrap();
        assert_eq!(r.stages, 4);
        assert!(r.completions.matrices.contains(&lf));
    }

    #[test]
    fn completions_reproduce_sequences() {
        for cols in [
            vec![5, 3, 7, 6, 4, 1, 8, 7],
            vec![3, 4, 2, 3, 6, 6, 4, 4],
            vec![2, 2, 1, 8, 3, 5, 4, 6],
        ] {
            let lg = TransitionMatrix::from_columns(cols).unwrap();
            let r = min_stage_fibonacci(&lg).unwrap();
            assert_eq!(
                r.partial.fixed_count() + r.partial.free_columns().len(),
                1 << r.stages
            );
            for m in &r.completions.matrices {
                assert!(is_fibonacci(m));
                assert!(r.partial.is_completed_by(m));
                for s in 1..=lg.size() {
                    let want = &r.sequences[s - 1];
                    let len = want.preperiod().len() + 2 * want.period().len();
                    let got = simulate(m, r.state_map.column(s), len).unwrap();
                    assert_eq!(got, want.prefix(len));
                }
            }
        }
    }

    #[test]
    fn capped_completions_report_least() {
        let lg: TransitionMatrix = "d8[5 3 7 6 4 1 8 7]".parse().unwrap();
        let r = min_stage_fibonacci_with(&lg, 2).unwrap();
        assert!(!r.completions.exhaustive);
        assert_eq!(r.completions.total, Some(8));
        assert_eq!(
            r.completions.matrices,
            vec!["d8[1 4 6 8 1 3 5 8]".parse().unwrap()]
        );
    }

    #[test]
    fn partial_round_trip() {
        let p: PartialTransition = "d8[* 4 6 8 * 3 * 8]".parse().unwrap();
        assert_eq!(p.to_string(), "d8[* 4 6 8 * 3 * 8]");
        assert_eq!(p.free_columns(), vec![1, 5, 7]);
    }
}
