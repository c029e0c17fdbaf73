use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::stp::TransitionMatrix;

/// An eventually periodic binary sequence `preperiod · period^ω`, kept in
/// normal form: the period is primitive and the preperiod is as short as
/// possible. Two values are equal iff they denote the same sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OutputSeq {
    preperiod: Vec<bool>,
    period: Vec<bool>,
}

impl OutputSeq {
    pub fn new(mut preperiod: Vec<bool>, period: Vec<bool>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::SequenceFormat("period must be non-empty".into()));
        }
        let mut period = primitive_root(period);
        while let (Some(&p), Some(&q)) = (preperiod.last(), period.last()) {
            if p != q {
                break;
            }
            preperiod.pop();
            period.rotate_right(1);
        }
        Ok(OutputSeq { preperiod, period })
    }

    pub fn periodic(period: Vec<bool>) -> Result<Self> {
        Self::new(Vec::new(), period)
    }

    pub fn preperiod(&self) -> &[bool] {
        &self.preperiod
    }

    pub fn period(&self) -> &[bool] {
        &self.period
    }

    /// Bit at time `t` (0-based).
    pub fn bit(&self, t: usize) -> bool {
        let p = self.preperiod.len();
        if t < p {
            self.preperiod[t]
        } else {
            self.period[(t - p) % self.period.len()]
        }
    }

    pub fn prefix(&self, len: usize) -> Vec<bool> {
        (0..len).map(|t| self.bit(t)).collect()
    }

    /// Preperiod plus one period.
    pub fn transient_len(&self) -> usize {
        self.preperiod.len() + self.period.len()
    }

    /// Least rotation of the period; equal for sequences whose cycles agree
    /// up to phase.
    pub fn cycle_class(&self) -> Vec<bool> {
        let n = self.period.len();
        (0..n)
            .map(|r| {
                let mut v = self.period.clone();
                v.rotate_left(r);
                v
            })
            .min()
            .expect("period is non-empty")
    }
}

fn primitive_root(period: Vec<bool>) -> Vec<bool> {
    let n = period.len();
    for d in (1..=n).filter(|d| n.is_multiple_of(*d)) {
        if (d..n).all(|i| period[i] == period[i - d]) {
            return period[..d].to_vec();
        }
    }
    period
}

fn bits_to_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn parse_bits(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Error::SequenceFormat(format!("bad bit {c:?}"))),
        })
        .collect()
}

/// `pre=110 per=10`; the preperiod may be empty.
impl fmt::Display for OutputSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "pre={} per={}",
            bits_to_string(&self.preperiod),
            bits_to_string(&self.period)
        )
    }
}

impl FromStr for OutputSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut pre = None;
        let mut per = None;
        for field in s.split_whitespace() {
            if let Some(v) = field.strip_prefix("pre=") {
                pre = Some(parse_bits(v)?);
            } else if let Some(v) = field.strip_prefix("per=") {
                per = Some(parse_bits(v)?);
            } else if field == "pre" {
                pre = Some(Vec::new());
            } else {
                return Err(Error::SequenceFormat(format!("unexpected field {field:?}")));
            }
        }
        let per = per.ok_or_else(|| Error::SequenceFormat("missing per=".into()))?;
        OutputSeq::new(pre.unwrap_or_default(), per)
    }
}

/// Output bits for `steps` clock ticks starting from state `x0`; bit 0 is the
/// output of `x0` itself.
pub fn simulate(l: &TransitionMatrix, x0: usize, steps: usize) -> Result<Vec<bool>> {
    l.check_state(x0)?;
    let mut s = x0;
    Ok((0..steps)
        .map(|_| {
            let b = l.output(s);
            s = l.column(s);
            b
        })
        .collect())
}

/// Length of the state transient and of the state cycle reached from `x0`.
pub fn state_cycle(l: &TransitionMatrix, x0: usize) -> Result<(usize, usize)> {
    l.check_state(x0)?;
    let mut first_seen = vec![usize::MAX; l.size()];
    let mut s = x0;
    let mut t = 0;
    while first_seen[s - 1] == usize::MAX {
        first_seen[s - 1] = t;
        s = l.column(s);
        t += 1;
    }
    let start = first_seen[s - 1];
    Ok((start, t - start))
}

/// Output sequence from `x0`, found by cycle detection on states.
pub fn output_sequence(l: &TransitionMatrix, x0: usize) -> Result<OutputSeq> {
    let (pre, per) = state_cycle(l, x0)?;
    let bits = simulate(l, x0, pre + per)?;
    OutputSeq::new(bits[..pre].to_vec(), bits[pre..].to_vec())
}

/// Output sequences of every initial state, in state order.
pub fn all_output_sequences(l: &TransitionMatrix) -> Vec<OutputSeq> {
    (1..=l.size())
        .map(|s| output_sequence(l, s).expect("state in range"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seq(s: &str) -> OutputSeq {
        s.parse().unwrap()
    }

    fn lg29() -> TransitionMatrix {
        "d8[5 3 7 6 4 1 8 7]".parse().unwrap()
    }

    #[test]
    fn normalization() {
        assert_eq!(seq("pre=0 per=0"), seq("pre= per=0"));
        assert_eq!(seq("pre= per=1010"), seq("pre= per=10"));
        assert_eq!(seq("pre=101 per=01"), seq("pre= per=10"));
        assert_eq!(seq("pre=110 per=01").to_string(), "pre=110 per=01");
        assert_eq!(seq("pre=11 per=0").to_string(), "pre=11 per=0");
        assert_eq!(seq("per=0").to_string(), "pre= per=0");
        assert!("pre=1".parse::<OutputSeq>().is_err());
        assert!("pre=1 per=2".parse::<OutputSeq>().is_err());
    }

    #[test]
    fn simulate_examples() {
        let l = lg29();
        assert_eq!(
            simulate(&l, 2, 5).unwrap(),
            vec![true, true, false, false, false]
        );
        assert_eq!(
            simulate(&l, 1, 5).unwrap(),
            vec![true, false, true, false, true]
        );
        assert!(simulate(&l, 3, 0).unwrap().is_empty());
        assert!(simulate(&l, 9, 1).is_err());
    }

    #[test]
    fn output_sequence_examples() {
        let lg20: TransitionMatrix = "d8[3 4 2 3 6 6 4 4]".parse().unwrap();
        let s = output_sequence(&lg20, 5).unwrap();
        assert!(s.preperiod().is_empty());
        assert_eq!(s.period(), &[false]);

        let lf: TransitionMatrix = "d16[2 4 6 8 10 12 13 16 1 3 5 7 9 11 14 15]"
            .parse()
            .unwrap();
        let s = output_sequence(&lf, 1).unwrap();
        assert!(s.preperiod().is_empty());
        assert_eq!(s.period().len(), 16);
        let reference = OutputSeq::periodic(
            [1, 1, 1, 0, 0, 0, 0, 1, 0, 1, 1, 0, 1, 0, 0, 1]
                .iter()
                .map(|&b| b == 1)
                .collect(),
        )
        .unwrap();
        assert_eq!(s.cycle_class(), reference.cycle_class());

        let s = output_sequence(&lg29(), 1).unwrap();
        assert_eq!(s.to_string(), "pre= per=10");
    }

    #[test]
    fn output_period_divides_state_period_exhaustive_small() {
        // all 4^4 two-stage systems plus a sweep of three-stage ones
        let mut systems = Vec::new();
        for code in 0..256usize {
            systems.push(
                (0..4)
                    .map(|i| (code >> (2 * i)) % 4 + 1)
                    .collect::<Vec<_>>(),
            );
        }
        for code in 0..4096usize {
            systems.push(
                (0..8)
                    .map(|i| (code.wrapping_mul(2654435761) >> (3 * i)) % 8 + 1)
                    .collect(),
            );
        }
        for cols in systems {
            let l = TransitionMatrix::from_columns(cols).unwrap();
            let fib = crate::fib::is_fibonacci(&l);
            for s in 1..=l.size() {
                let (_, state_per) = state_cycle(&l, s).unwrap();
                let out = output_sequence(&l, s).unwrap();
                assert_eq!(state_per % out.period().len(), 0);
                if fib {
                    assert_eq!(state_per, out.period().len());
                }
            }
        }
    }

    fn arb_transition(max_n: usize) -> impl Strategy<Value = TransitionMatrix> {
        (1..=max_n)
            .prop_flat_map(|n| proptest::collection::vec(1..=1usize << n, 1 << n))
            .prop_map(|v| TransitionMatrix::from_columns(v).unwrap())
    }

    proptest! {
        #[test]
        fn decomposition_replays(l in arb_transition(4)) {
            for x0 in 1..=l.size() {
                let s = output_sequence(&l, x0).unwrap();
                let (p, q) = (s.preperiod().len(), s.period().len());
                let bits = simulate(&l, x0, p + 3 * q).unwrap();
                let mut want = s.preperiod().to_vec();
                for _ in 0..3 {
                    want.extend_from_slice(s.period());
                }
                prop_assert_eq!(bits, want);
            }
        }

        #[test]
        fn display_parse_round_trip(pre in proptest::collection::vec(any::<bool>(), 0..6),
                                    per in proptest::collection::vec(any::<bool>(), 1..6)) {
            let s = OutputSeq::new(pre, per).unwrap();
            prop_assert_eq!(s.to_string().parse::<OutputSeq>().unwrap(), s);
        }

        #[test]
        fn normal_form_keeps_sequence(pre in proptest::collection::vec(any::<bool>(), 0..6),
                                      per in proptest::collection::vec(any::<bool>(), 1..6)) {
            let s = OutputSeq::new(pre.clone(), per.clone()).unwrap();
            let raw = |t: usize| if t < pre.len() { pre[t] } else { per[(t - pre.len()) % per.len()] };
            for t in 0..40 {
                prop_assert_eq!(s.bit(t), raw(t));
            }
        }
    }
}
