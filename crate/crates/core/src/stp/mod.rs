//! Canonical-vector state encoding and logical-matrix algebra.
//!
//! A register value 1 is the basis vector `δ₂¹` and 0 is `δ₂²`. A joint
//! state `x1 ⋉ x2 ⋉ … ⋉ xn` is the single basis vector `δ_{2^n}^k` with
//! `k = 1 + Σ (1 - bᵢ)·2^{n-i}`. Every index in this crate is 1-based.
//!
//! Matrices are stored as index sequences rather than dense arrays; products
//! with canonical vectors reduce to lookups.

mod delta;
mod matrix;

pub(crate) use delta::{parse_delta, write_delta};
pub use matrix::{LogicalMatrix, PermutationTransform, StructureMatrix, TransitionMatrix};

use crate::error::{Error, Result};
use crate::expr::{Anf, BoolExpr};

/// Largest supported register count.
pub const MAX_STAGES: usize = 24;

pub(crate) fn check_stages(n: usize) -> Result<()> {
    if n == 0 || n > MAX_STAGES {
        return Err(Error::UnsupportedStageCount(n));
    }
    Ok(())
}

/// A state of an `n`-register FSR in canonical-vector form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateIndex {
    n: usize,
    k: usize,
}

impl StateIndex {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        check_stages(n)?;
        if k == 0 || k > 1 << n {
            return Err(Error::StateOutOfRange {
                index: k,
                size: 1 << n,
            });
        }
        Ok(StateIndex { n, k })
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        StateIndex {
            n: bits.len(),
            k: encode_state(bits),
        }
    }

    pub fn n(self) -> usize {
        self.n
    }

    pub fn index(self) -> usize {
        self.k
    }

    pub fn bits(self) -> Vec<bool> {
        decode_bits(self.n, self.k)
    }

    /// Output bit: register 1 is set iff the index lies in the first half.
    pub fn output(self) -> bool {
        self.k <= 1 << (self.n - 1)
    }
}

/// `k = 1 + Σ (1 - bᵢ)·2^{n-i}`.
pub fn encode_state(bits: &[bool]) -> usize {
    1 + bits
        .iter()
        .fold(0usize, |acc, &b| (acc << 1) | usize::from(!b))
}

pub fn decode_state(n: usize, k: usize) -> Result<Vec<bool>> {
    Ok(StateIndex::new(n, k)?.bits())
}

fn decode_bits(n: usize, k: usize) -> Vec<bool> {
    (1..=n).map(|i| ((k - 1) >> (n - i)) & 1 == 0).collect()
}

/// Bit `i` (1-based register) of state `k`, without allocating.
pub(crate) fn state_bit(n: usize, k: usize, i: usize) -> bool {
    ((k - 1) >> (n - i)) & 1 == 0
}

/// Structure matrix of `f` over `x1..xn`: entry `k` is `f(decode(k))`.
pub fn structure_matrix(f: &BoolExpr, n: usize) -> Result<StructureMatrix> {
    check_stages(n)?;
    if f.max_var() > n {
        return Err(Error::VariableOutOfRange {
            index: f.max_var(),
            n,
            column: 0,
        });
    }
    StructureMatrix::from_values(
        (1..=1usize << n)
            .map(|k| f.eval(&decode_bits(n, k)))
            .collect(),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Configuration {
    Fibonacci,
    Galois,
}

/// An FSR given by its update functions. Fibonacci specs store only the
/// feedback; registers `1..n-1` shift (`fj = x(j+1)`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FsrSpec {
    n: usize,
    configuration: Configuration,
    functions: Vec<BoolExpr>,
}

impl FsrSpec {
    pub fn fibonacci(n: usize, feedback: BoolExpr) -> Result<Self> {
        check_stages(n)?;
        check_vars(&feedback, n)?;
        Ok(FsrSpec {
            n,
            configuration: Configuration::Fibonacci,
            functions: vec![feedback],
        })
    }

    pub fn galois(functions: Vec<BoolExpr>) -> Result<Self> {
        let n = functions.len();
        check_stages(n)?;
        for f in &functions {
            check_vars(f, n)?;
        }
        Ok(FsrSpec {
            n,
            configuration: Configuration::Galois,
            functions,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn configuration(&self) -> Configuration {
        self.configuration
    }

    pub fn feedback(&self) -> Option<&BoolExpr> {
        match self.configuration {
            Configuration::Fibonacci => self.functions.first(),
            Configuration::Galois => None,
        }
    }

    /// Update function of register `j` (1-based).
    pub fn update_function(&self, j: usize) -> BoolExpr {
        match self.configuration {
            Configuration::Fibonacci if j < self.n => BoolExpr::Var(j + 1),
            Configuration::Fibonacci => self.functions[0].clone(),
            Configuration::Galois => self.functions[j - 1].clone(),
        }
    }

    pub fn update_functions(&self) -> Vec<BoolExpr> {
        (1..=self.n).map(|j| self.update_function(j)).collect()
    }
}

fn check_vars(f: &BoolExpr, n: usize) -> Result<()> {
    if f.max_var() > n {
        return Err(Error::VariableOutOfRange {
            index: f.max_var(),
            n,
            column: 0,
        });
    }
    Ok(())
}

/// Transition matrix of an FSR: column `k` is the encoding of
/// `(f1(s), …, fn(s))` with `s = decode(k)`.
pub fn galois_transition(spec: &FsrSpec) -> TransitionMatrix {
    let n = spec.n();
    let fs = spec.update_functions();
    let cols = (1..=1usize << n)
        .map(|k| {
            let s = decode_bits(n, k);
            let next: Vec<bool> = fs.iter().map(|f| f.eval(&s)).collect();
            encode_state(&next)
        })
        .collect();
    TransitionMatrix::from_columns(cols).expect("spec has a valid stage count")
}

/// Structure matrix of register `k`'s update, read off the transition matrix.
pub fn coordinate_structure(l: &TransitionMatrix, k: usize) -> StructureMatrix {
    assert!(k >= 1 && k <= l.n(), "coordinate {k} out of range");
    StructureMatrix::from_values(
        l.columns()
            .iter()
            .map(|&q| state_bit(l.n(), q, k))
            .collect(),
    )
    .expect("transition matrix has 2^n columns")
}

/// Swap matrix `W_[m,n]`: exchanges the factors of `δ_m^i ⋉ δ_n^j`.
pub fn swap_matrix(m: usize, n: usize) -> LogicalMatrix {
    assert!(m >= 1 && n >= 1);
    let mut cols = vec![0; m * n];
    for i in 1..=m {
        for j in 1..=n {
            cols[(i - 1) * n + j - 1] = (j - 1) * m + i;
        }
    }
    LogicalMatrix::new(m * n, cols).expect("indices in range")
}

/// Whether flipping variable `j` changes the function for some state.
pub fn depends_on(m: &StructureMatrix, j: usize) -> bool {
    let n = m.n();
    assert!(j >= 1 && j <= n, "variable {j} out of range");
    let stride = 1usize << (n - j);
    // states with bit j = 1 are those whose (k-1) has a 0 at that position
    (1..=m.len())
        .filter(|k| (k - 1) & stride == 0)
        .any(|k| m.value(k) != m.value(k + stride))
}

/// Support of a structure matrix and the function restricted to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedFunction {
    /// Dependent variables, ascending.
    pub support: Vec<usize>,
    /// Structure matrix over `support.len()` variables (the `r`-th reduced
    /// variable is `support[r - 1]`). For a constant function this has the
    /// single entry of the constant.
    pub values: Vec<bool>,
}

impl ReducedFunction {
    pub fn structure_matrix(&self) -> Option<StructureMatrix> {
        StructureMatrix::from_values(self.values.clone()).ok()
    }

    /// Value at a full assignment of the original variables.
    pub fn eval_full(&self, bits: &[bool]) -> bool {
        let sub: Vec<bool> = self.support.iter().map(|&v| bits[v - 1]).collect();
        self.values[encode_state(&sub) - 1]
    }

    /// Canonical expression over the original variable indices.
    pub fn to_expr(&self) -> BoolExpr {
        let table: Vec<bool> = (0..self.values.len())
            .map(|m| {
                let bits: Vec<bool> = (0..self.support.len()).map(|i| (m >> i) & 1 == 1).collect();
                self.values[encode_state(&bits) - 1]
            })
            .collect();
        let support = &self.support;
        Anf::from_truth_table(&table)
            .to_expr()
            .rename_vars(&|r| support[r - 1])
    }
}

/// Drops every variable the function does not depend on, fixing it to 1.
pub fn restrict_support(m: &StructureMatrix) -> ReducedFunction {
    let n = m.n();
    let support: Vec<usize> = (1..=n).filter(|&j| depends_on(m, j)).collect();
    let values = (1..=1usize << support.len())
        .map(|r| {
            let sub = decode_bits(support.len(), r);
            let mut full = vec![true; n];
            for (&v, &b) in support.iter().zip(&sub) {
                full[v - 1] = b;
            }
            m.value(encode_state(&full))
        })
        .collect();
    ReducedFunction { support, values }
}

/// Canonical expression (from the ANF) whose structure matrix is `m`.
pub fn synthesize_expr(m: &StructureMatrix) -> BoolExpr {
    Anf::from_truth_table(&m.truth_table()).to_expr()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use proptest::prelude::*;

    fn delta2(bit: bool) -> LogicalMatrix {
        LogicalMatrix::delta(2, if bit { 1 } else { 2 }).unwrap()
    }

    /// Iterated semi-tensor product of per-register canonical vectors.
    fn stp_oracle(bits: &[bool]) -> usize {
        let v = bits
            .iter()
            .map(|&b| delta2(b))
            .reduce(|a, b| a.stp(&b))
            .unwrap();
        assert_eq!(v.ncols(), 1);
        v.column(1)
    }

    pub(crate) fn galois_with_two_stage_fib() -> FsrSpec {
        FsrSpec::galois(vec![
            parse("z1 | !z2", 3).unwrap(),
            parse("(z1 & !z2 & z3) | (!z1 & z2)", 3).unwrap(),
            parse("z1 & (z2 <-> z3)", 3).unwrap(),
        ])
        .unwrap()
    }

    pub(crate) fn galois_with_three_stage_fib() -> FsrSpec {
        FsrSpec::galois(vec![
            parse("(z1 & !(z2 -> z3)) | (!z1 & z2)", 3).unwrap(),
            parse("(z1 & (z2 <-> z3)) | !(z1 | (z2 -> z3))", 3).unwrap(),
            parse("(z1 & (z2 | z3)) | !(z1 | z3)", 3).unwrap(),
        ])
        .unwrap()
    }

    #[test]
    fn encode_examples() {
        assert_eq!(encode_state(&[true; 4]), 1);
        assert_eq!(encode_state(&[false; 4]), 16);
        let b = [true, false, false, true];
        assert_eq!(stp_oracle(&b), 7);
        assert_eq!(encode_state(&b), 7);
        assert_eq!(decode_state(4, 7).unwrap(), b);
        assert_eq!(decode_state(4, 1).unwrap(), vec![true; 4]);
        assert_eq!(decode_state(4, 16).unwrap(), vec![false; 4]);
        assert!(decode_state(4, 17).is_err());
        assert!(decode_state(4, 0).is_err());
    }

    #[test]
    fn encode_decode_bijection_exhaustive() {
        for n in 1..=10 {
            for k in 1..=1usize << n {
                let s = StateIndex::new(n, k).unwrap();
                let bits = s.bits();
                assert_eq!(encode_state(&bits), k);
                assert_eq!(s.output(), bits[0]);
                if n <= 6 {
                    assert_eq!(stp_oracle(&bits), k);
                }
            }
        }
    }

    #[test]
    fn structure_matrix_examples() {
        let id = structure_matrix(&BoolExpr::Var(1), 1).unwrap();
        assert_eq!(id.rows(), vec![1, 2]);

        // truth-table oracle: x1 = 0 leaves x2 & x3, true only for states 9 and 10
        let f = crate::expr::tests::example_feedback();
        let m = structure_matrix(&f, 4).unwrap();
        assert_eq!(m.to_string(), "d2[2 2 2 2 2 2 1 2 1 1 2 2 2 2 2 2]");
        // the matrix d2[2 2 2 2 2 2 1 2 1 1 1 1 1 1 2 2] belongs to the OR variant
        let g = parse("(x1 & !x2 & !x3 & x4) | (!x1 & (x2 | x3))", 4).unwrap();
        assert_eq!(
            structure_matrix(&g, 4).unwrap().to_string(),
            "d2[2 2 2 2 2 2 1 2 1 1 1 1 1 1 2 2]"
        );

        // truth-table oracle for x2 ^ x3: states (1,1,1),(1,1,0),...,(0,0,0)
        let m = structure_matrix(&parse("x2 ^ x3", 3).unwrap(), 3).unwrap();
        assert_eq!(m.rows(), vec![2, 1, 1, 2, 2, 1, 1, 2]);
    }

    #[test]
    fn structure_matrix_is_lemma_one_product() {
        // f(x) = M_f ⋉ x1 ⋉ … ⋉ xn
        let f = crate::expr::tests::example_feedback();
        let m = structure_matrix(&f, 4).unwrap().to_logical();
        for k in 1..=16 {
            let bits = decode_state(4, k).unwrap();
            let x = bits
                .iter()
                .map(|&b| delta2(b))
                .reduce(|a, b| a.stp(&b))
                .unwrap();
            let v = m.stp(&x);
            assert_eq!(v.column(1) == 1, f.eval(&bits));
        }
    }

    #[test]
    fn galois_transition_examples() {
        assert_eq!(
            galois_transition(&galois_with_two_stage_fib()).to_string(),
            "d8[3 4 2 3 6 6 4 4]"
        );
        assert_eq!(
            galois_transition(&galois_with_three_stage_fib()).to_string(),
            "d8[5 3 7 6 4 1 8 7]"
        );
        let ident = FsrSpec::galois(vec![BoolExpr::Var(1)]).unwrap();
        assert_eq!(galois_transition(&ident).columns(), &[1, 2]);
    }

    #[test]
    fn coordinate_structure_examples() {
        let l = TransitionMatrix::from_columns(vec![1, 2]).unwrap();
        assert_eq!(coordinate_structure(&l, 1).rows(), vec![1, 2]);

        let lg = galois_transition(&galois_with_two_stage_fib());
        assert_eq!(
            coordinate_structure(&lg, 1).rows(),
            vec![1, 1, 1, 1, 2, 2, 1, 1]
        );

        let f = crate::expr::tests::example_feedback();
        let lf = galois_transition(&FsrSpec::fibonacci(4, f).unwrap());
        assert_eq!(
            coordinate_structure(&lf, 1),
            structure_matrix(&BoolExpr::Var(2), 4).unwrap()
        );
    }

    #[test]
    fn coordinate_structure_matches_selector_product() {
        // S_k = S_1 ⋉ W_[2^{k-1}, 2], M_k = S_k ⋉ L
        let l = galois_transition(&galois_with_three_stage_fib());
        let n = l.n();
        let s1 = LogicalMatrix::new(
            2,
            (1..=1usize << n)
                .map(|k| if k <= 1 << (n - 1) { 1 } else { 2 })
                .collect(),
        )
        .unwrap();
        for k in 1..=n {
            let sk = s1.stp(&swap_matrix(1 << (k - 1), 2));
            let mk = sk.stp(&l.to_logical());
            assert_eq!(mk, coordinate_structure(&l, k).to_logical(), "k={k}");
        }
    }

    #[test]
    fn swap_matrix_examples() {
        assert_eq!(swap_matrix(1, 5), LogicalMatrix::identity(5));
        assert_eq!(swap_matrix(2, 2).columns(), &[1, 3, 2, 4]);
        assert_eq!(swap_matrix(2, 4).columns(), &[1, 3, 5, 7, 2, 4, 6, 8]);
    }

    #[test]
    fn swap_matrix_exchanges_factors() {
        for (m, n) in [(2, 3), (3, 2), (4, 2), (2, 8)] {
            let w = swap_matrix(m, n);
            for i in 1..=m {
                for j in 1..=n {
                    let a = LogicalMatrix::delta(m, i).unwrap();
                    let b = LogicalMatrix::delta(n, j).unwrap();
                    assert_eq!(w.stp(&a.stp(&b)), b.stp(&a));
                }
            }
            assert_eq!(
                swap_matrix(n, m).compose(&w).unwrap(),
                LogicalMatrix::identity(m * n)
            );
        }
    }

    #[test]
    fn depends_on_examples() {
        let m = structure_matrix(&BoolExpr::Var(2), 3).unwrap();
        assert!(depends_on(&m, 2));
        assert!(!depends_on(&m, 3));
        let c1 = coordinate_structure(&galois_transition(&galois_with_two_stage_fib()), 1);
        assert!(!depends_on(&c1, 3));
        assert!(depends_on(&c1, 1));
        assert!(depends_on(&c1, 2));
    }

    #[test]
    fn restrict_support_examples() {
        let r = restrict_support(&structure_matrix(&BoolExpr::Var(2), 4).unwrap());
        assert_eq!(r.support, vec![2]);
        assert_eq!(r.values, vec![true, false]);

        let r = restrict_support(&structure_matrix(&BoolExpr::Const(false), 3).unwrap());
        assert!(r.support.is_empty());
        assert_eq!(r.values, vec![false]);
        assert_eq!(r.to_expr(), BoolExpr::Const(false));

        let c3 = coordinate_structure(&galois_transition(&galois_with_two_stage_fib()), 3);
        assert_eq!(restrict_support(&c3).support, vec![1, 2, 3]);
    }

    #[test]
    fn synthesize_examples() {
        let id = StructureMatrix::from_rows(&[1, 2]).unwrap();
        assert_eq!(synthesize_expr(&id), BoolExpr::Var(1));
        let neg = StructureMatrix::from_rows(&[2, 1]).unwrap();
        assert_eq!(synthesize_expr(&neg), BoolExpr::not(BoolExpr::Var(1)));
        let m: StructureMatrix = "d2[2 2 2 2 2 2 1 2 1 1 1 1 1 1 2 2]".parse().unwrap();
        let e = synthesize_expr(&m);
        let g = parse("(x1 & !x2 & !x3 & x4) | (!x1 & (x2 | x3))", 4).unwrap();
        assert!(e.function_eq(&g, 4));
        assert_eq!(structure_matrix(&e, 4).unwrap(), m);
    }

    #[test]
    fn delta_round_trip_is_bit_exact() {
        for s in [
            "d16[2 4 6 8 10 12 13 16 1 3 5 7 9 11 14 15]",
            "d8[3 4 2 3 6 6 4 4]",
            "d2[1 2]",
        ] {
            let l: TransitionMatrix = s.parse().unwrap();
            assert_eq!(l.to_string(), s);
        }
        let t: LogicalMatrix = "d4[1 1 1 1 4 4 3 3]".parse().unwrap();
        assert_eq!(t.to_string(), "d4[1 1 1 1 4 4 3 3]");
        assert!("d8[1 2 3]".parse::<TransitionMatrix>().is_err());
        assert!("d3[1 2 3]".parse::<TransitionMatrix>().is_err());
    }

    fn arb_structure(max_n: usize) -> impl Strategy<Value = StructureMatrix> {
        (1..=max_n)
            .prop_flat_map(|n| proptest::collection::vec(any::<bool>(), 1 << n))
            .prop_map(|v| StructureMatrix::from_values(v).unwrap())
    }

    fn arb_transition(max_n: usize) -> impl Strategy<Value = TransitionMatrix> {
        (1..=max_n)
            .prop_flat_map(|n| proptest::collection::vec(1..=1usize << n, 1 << n))
            .prop_map(|v| TransitionMatrix::from_columns(v).unwrap())
    }

    proptest! {
        #[test]
        fn coordinates_reassemble_transition(l in arb_transition(6)) {
            let coords: Vec<StructureMatrix> = (1..=l.n()).map(|k| coordinate_structure(&l, k)).collect();
            let cols: Vec<usize> = (1..=l.size())
                .map(|j| encode_state(&coords.iter().map(|m| m.value(j)).collect::<Vec<_>>()))
                .collect();
            prop_assert_eq!(cols.as_slice(), l.columns());
        }

        #[test]
        fn restriction_reinflates(m in arb_structure(5)) {
            let r = restrict_support(&m);
            for j in 1..=m.n() {
                prop_assert_eq!(r.support.contains(&j), depends_on(&m, j));
            }
            for k in 1..=m.len() {
                let bits = decode_state(m.n(), k).unwrap();
                prop_assert_eq!(r.eval_full(&bits), m.value(k));
            }
            let e = r.to_expr();
            prop_assert_eq!(structure_matrix(&e, m.n()).unwrap(), m);
        }

        #[test]
        fn synthesis_round_trip(m in arb_structure(4)) {
            prop_assert_eq!(structure_matrix(&synthesize_expr(&m), m.n()).unwrap(), m);
        }

        #[test]
        fn swap_then_swap_back(a in 1usize..6, b in 1usize..6) {
            let id = swap_matrix(b, a).compose(&swap_matrix(a, b)).unwrap();
            prop_assert_eq!(id, LogicalMatrix::identity(a * b));
        }
    }
}
