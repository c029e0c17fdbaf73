//! Transition-matrix law of Fibonacci FSRs.
//!
//! With feedback structure matrix `δ₂[i₁ … i_{2ⁿ}]`, the transition matrix
//! has `q_j = 2j - 2 + i_j` and `q_{2^{n-1}+j} = 2j - 2 + i_{2^{n-1}+j}` for
//! `j ∈ [1, 2^{n-1}]`.

use crate::error::{Error, Result};
use crate::stp::{StructureMatrix, TransitionMatrix};

/// Fibonacci transition matrix of a feedback function.
pub fn fib_transition(feedback: &StructureMatrix) -> TransitionMatrix {
    let half = feedback.len() / 2;
    let cols = (1..=feedback.len())
        .map(|k| {
            let j = if k > half { k - half } else { k };
            let row = if feedback.value(k) { 1 } else { 2 };
            2 * j - 2 + row
        })
        .collect();
    TransitionMatrix::from_columns(cols).expect("structure matrix has 2^n entries")
}

/// The two admissible values `{2j-1, 2j}` of column `k` under the shift law.
pub fn admissible_successors(size: usize, k: usize) -> (usize, usize) {
    let half = size / 2;
    let j = if k > half { k - half } else { k };
    (2 * j - 1, 2 * j)
}

/// First column violating the shift law, if any.
pub fn fibonacci_violation(l: &TransitionMatrix) -> Option<usize> {
    (1..=l.size()).find(|&k| {
        let (a, b) = admissible_successors(l.size(), k);
        let q = l.column(k);
        q != a && q != b
    })
}

pub fn is_fibonacci(l: &TransitionMatrix) -> bool {
    fibonacci_violation(l).is_none()
}

/// Feedback structure matrix of a Fibonacci transition matrix.
pub fn feedback_of(l: &TransitionMatrix) -> Result<StructureMatrix> {
    if let Some(column) = fibonacci_violation(l) {
        return Err(Error::NotFibonacci { column });
    }
    let values = (1..=l.size())
        .map(|k| {
            let (a, _) = admissible_successors(l.size(), k);
            l.column(k) == a
        })
        .collect();
    StructureMatrix::from_values(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse, BoolExpr};
    use crate::stp::{decode_state, encode_state, galois_transition, structure_matrix, FsrSpec};
    use proptest::prelude::*;

    /// 4-stage Fibonacci matrix whose states form one 16-cycle.
    const LF: &str = "d16[2 4 6 8 10 12 13 16 1 3 5 7 9 11 14 15]";
    /// Its feedback; the last entry is 1, unlike the variant ending in 2 2.
    const MF: &str = "d2[2 2 2 2 2 2 1 2 1 1 1 1 1 1 2 1]";

    #[test]
    fn forward_law_examples() {
        let mf: StructureMatrix = MF.parse().unwrap();
        assert_eq!(fib_transition(&mf).to_string(), LF);
        // the law maps a final entry 2 to column 16, never 15
        let variant: StructureMatrix = "d2[2 2 2 2 2 2 1 2 1 1 1 1 1 1 2 2]".parse().unwrap();
        assert_eq!(
            fib_transition(&variant).to_string(),
            "d16[2 4 6 8 10 12 13 16 1 3 5 7 9 11 14 16]"
        );
        let id = StructureMatrix::from_rows(&[1, 2]).unwrap();
        assert_eq!(fib_transition(&id).columns(), &[1, 2]);

        let f = parse("x2 ^ x3", 3).unwrap();
        let direct = fib_transition(&structure_matrix(&f, 3).unwrap());
        let via_spec = galois_transition(&FsrSpec::fibonacci(3, f).unwrap());
        assert_eq!(direct, via_spec);
    }

    #[test]
    fn recognizer_examples() {
        assert!(is_fibonacci(&LF.parse().unwrap()));
        let lg: TransitionMatrix = "d16[3 5 4 8 10 16 9 13 2 6 12 7 15 1 11 14]"
            .parse()
            .unwrap();
        assert_eq!(fibonacci_violation(&lg), Some(1));
        assert!(is_fibonacci(&"d2[2 1]".parse().unwrap()));
    }

    #[test]
    fn feedback_extraction_examples() {
        assert_eq!(feedback_of(&LF.parse().unwrap()).unwrap().to_string(), MF);
        assert_eq!(
            feedback_of(&"d2[1 2]".parse().unwrap()).unwrap().rows(),
            vec![1, 2]
        );
        let m = feedback_of(&"d8[1 4 6 8 2 3 5 8]".parse().unwrap()).unwrap();
        let t32 = parse("(x1 & x2 & x3) | (!x1 & (x2 ^ x3))", 3).unwrap();
        assert_eq!(m, structure_matrix(&t32, 3).unwrap());
        assert!(matches!(
            feedback_of(
                &"d16[3 5 4 8 10 16 9 13 2 6 12 7 15 1 11 14]"
                    .parse()
                    .unwrap()
            ),
            Err(Error::NotFibonacci { column: 1 })
        ));
    }

    #[test]
    fn round_trip_exhaustive_small() {
        for n in 1..=4usize {
            let size = 1usize << n;
            for code in 0..1u64 << size {
                let m =
                    StructureMatrix::from_values((0..size).map(|i| code >> i & 1 == 1).collect())
                        .unwrap();
                let l = fib_transition(&m);
                assert!(is_fibonacci(&l));
                assert_eq!(feedback_of(&l).unwrap(), m);
            }
        }
    }

    #[test]
    fn agrees_with_spec_path_exhaustive() {
        for n in 1..=4usize {
            let size = 1usize << n;
            for code in 0..1u64 << size {
                let m =
                    StructureMatrix::from_values((0..size).map(|i| code >> i & 1 == 1).collect())
                        .unwrap();
                let feedback = crate::stp::synthesize_expr(&m);
                let spec = FsrSpec::fibonacci(n, feedback).unwrap();
                assert_eq!(galois_transition(&spec), fib_transition(&m));
            }
        }
    }

    proptest! {
        #[test]
        fn round_trip_random(n in 5usize..=8, seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let m = StructureMatrix::from_values((0..1 << n).map(|_| rng.gen()).collect()).unwrap();
            prop_assert_eq!(feedback_of(&fib_transition(&m)).unwrap(), m);
        }

        #[test]
        fn shift_property(n in 1usize..=6, seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let m = StructureMatrix::from_values((0..1 << n).map(|_| rng.gen()).collect()).unwrap();
            let l = fib_transition(&m);
            for k in 1..=l.size() {
                let s = decode_state(n, k).unwrap();
                let mut want: Vec<bool> = s[1..].to_vec();
                want.push(m.value(k));
                prop_assert_eq!(l.column(k), encode_state(&want));
            }
        }
    }

    #[test]
    fn var_feedback_is_rotation() {
        // x1 feedback rotates the register: period n for a single-one state
        let l = galois_transition(&FsrSpec::fibonacci(3, BoolExpr::Var(1)).unwrap());
        assert!(is_fibonacci(&l));
    }
}
