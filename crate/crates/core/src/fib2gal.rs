//! Fibonacci→Galois direction.
//!
//! Every same-stage Galois equivalent of a Fibonacci FSR is a relabeling of
//! its states by a permutation that keeps the output bit of each state, i.e.
//! maps `[1, 2^{n-1}]` onto itself. There are `(2^{n-1})!²` such
//! permutations.

use std::cmp::Ordering;
use std::collections::HashSet;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::expr::{BoolExpr, GateCostModel};
use crate::fib::fibonacci_violation;
use crate::stp::{
    coordinate_structure, restrict_support, FsrSpec, PermutationTransform, ReducedFunction,
    TransitionMatrix,
};

/// State/successor pairs of a transition matrix, split by the output bit of
/// the state and of its successor.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PairClasses {
    pub s11: Vec<(usize, usize)>,
    pub s10: Vec<(usize, usize)>,
    pub s01: Vec<(usize, usize)>,
    pub s00: Vec<(usize, usize)>,
}

impl PairClasses {
    /// Pairs whose output goes `alpha → beta`.
    pub fn class(&self, alpha: bool, beta: bool) -> &[(usize, usize)] {
        match (alpha, beta) {
            (true, true) => &self.s11,
            (true, false) => &self.s10,
            (false, true) => &self.s01,
            (false, false) => &self.s00,
        }
    }

    /// Sizes in the order 11, 10, 01, 00.
    pub fn sizes(&self) -> [usize; 4] {
        [
            self.s11.len(),
            self.s10.len(),
            self.s01.len(),
            self.s00.len(),
        ]
    }
}

/// Splits the pairs `(i, L.column(i))` into the four output-transition
/// classes; each class is ordered by `i`.
pub fn classify_pairs(l: &TransitionMatrix) -> Result<PairClasses> {
    if l.n() < 2 {
        return Err(Error::UnsupportedStageCount(l.n()));
    }
    let half = l.half();
    let mut c = PairClasses::default();
    for i in 1..=l.size() {
        let j = l.column(i);
        let class = match (i <= half, j <= half) {
            (true, true) => &mut c.s11,
            (true, false) => &mut c.s10,
            (false, true) => &mut c.s01,
            (false, false) => &mut c.s00,
        };
        class.push((i, j));
    }
    Ok(c)
}

/// Relabels the states of `l` by `pi`: the result maps `pi(i)` to
/// `pi(l.column(i))`.
pub fn conjugate(l: &TransitionMatrix, pi: &PermutationTransform) -> Result<TransitionMatrix> {
    if pi.as_slice().len() != l.size() {
        return Err(Error::LengthMismatch {
            expected: l.size(),
            found: pi.as_slice().len(),
        });
    }
    if let Some(state) = pi.partition_violation() {
        return Err(Error::NotPartitionPreserving { state });
    }
    let mut cols = vec![0; l.size()];
    for i in 1..=l.size() {
        cols[pi.apply(i) - 1] = pi.apply(l.column(i));
    }
    TransitionMatrix::from_columns(cols)
}

/// `(2^{n-1})!²`, `None` on overflow.
pub fn permutation_count(n: usize) -> Option<u128> {
    if n == 0 || n > 127 {
        return None;
    }
    let half = 1u128 << (n - 1);
    let mut f: u128 = 1;
    for k in 2..=half {
        f = f.checked_mul(k)?;
    }
    f.checked_mul(f)
}

/// A Galois transition matrix together with the relabeling producing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisCandidate {
    pub matrix: TransitionMatrix,
    pub transform: PermutationTransform,
}

/// Stream of Galois equivalents; see [`enumerate_equivalents`].
pub struct Equivalents {
    source: TransitionMatrix,
    perms: Box<dyn Iterator<Item = PermutationTransform>>,
    tried: u128,
    yielded: u128,
    exhaustive: bool,
}

impl Equivalents {
    /// Permutations examined so far, including those fixing the source.
    pub fn tried(&self) -> u128 {
        self.tried
    }

    /// Permutations examined so far whose conjugate is the source itself.
    pub fn fixing(&self) -> u128 {
        self.tried - self.yielded
    }

    pub fn is_exhaustive(&self) -> bool {
        self.exhaustive
    }
}

impl Iterator for Equivalents {
    type Item = GaloisCandidate;

    fn next(&mut self) -> Option<GaloisCandidate> {
        for pi in self.perms.by_ref() {
            self.tried += 1;
            let matrix =
                conjugate(&self.source, &pi).expect("generated permutations preserve halves");
            if matrix != self.source {
                self.yielded += 1;
                return Some(GaloisCandidate {
                    matrix,
                    transform: pi,
                });
            }
        }
        None
    }
}

fn join_halves(top: &[usize], bottom: &[usize]) -> PermutationTransform {
    let map = top.iter().chain(bottom).copied().collect();
    PermutationTransform::new(map).expect("halves form a permutation")
}

/// Conjugates of `lf` under partition-preserving permutations, skipping
/// those equal to `lf`.
///
/// With `budget` absent or at least `(2^{n-1})!²`, every permutation is
/// tried in lexicographic order (top half major). Otherwise `budget`
/// permutations are drawn from a ChaCha8 stream seeded by `seed`; a missing
/// seed is an error. A budget of 0 yields nothing.
pub fn enumerate_equivalents(
    lf: &TransitionMatrix,
    budget: Option<u128>,
    seed: Option<u64>,
) -> Result<Equivalents> {
    if let Some(column) = fibonacci_violation(lf) {
        return Err(Error::NotFibonacci { column });
    }
    let half = lf.half();
    let total = permutation_count(lf.n());
    let exhaustive = match (budget, total) {
        (None, _) => true,
        (Some(b), Some(t)) => t <= b,
        (Some(_), None) => false,
    };
    let perms: Box<dyn Iterator<Item = PermutationTransform>> = if budget == Some(0) {
        Box::new(std::iter::empty())
    } else if exhaustive {
        let top = (1..=half).permutations(half);
        let bottom = (half + 1..=2 * half).permutations(half);
        Box::new(
            top.cartesian_product(bottom)
                .map(|(t, b)| join_halves(&t, &b)),
        )
    } else {
        let seed = seed.ok_or_else(|| {
            Error::Enumeration(format!(
                "budget {} is below the {} permutations; sampling needs a seed",
                budget.unwrap_or_default(),
                total.map_or_else(|| "overflowing".to_string(), |t| t.to_string())
            ))
        })?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut top: Vec<usize> = (1..=half).collect();
        let mut bottom: Vec<usize> = (half + 1..=2 * half).collect();
        let count = budget.unwrap_or_default();
        Box::new((0..count).map(move |_| {
            top.shuffle(&mut rng);
            bottom.shuffle(&mut rng);
            join_halves(&top, &bottom)
        }))
    };
    Ok(Equivalents {
        source: lf.clone(),
        perms,
        tried: 0,
        yielded: 0,
        exhaustive,
    })
}

/// Exhaustive count over all partition-preserving permutations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EquivalentCount {
    pub permutations: u128,
    /// Distinct conjugates other than the source.
    pub distinct: usize,
    /// Permutations whose conjugate is the source itself.
    pub fixing: u128,
}

/// Counts distinct Galois equivalents by exhaustion; limited to `n <= 3`.
pub fn count_distinct_equivalents(lf: &TransitionMatrix) -> Result<EquivalentCount> {
    if lf.n() > 3 {
        return Err(Error::UnsupportedStageCount(lf.n()));
    }
    let mut it = enumerate_equivalents(lf, None, None)?;
    let distinct = it.by_ref().map(|c| c.matrix).collect::<HashSet<_>>().len();
    Ok(EquivalentCount {
        permutations: it.tried(),
        distinct,
        fixing: it.fixing(),
    })
}

/// Reduced update function of one Galois register.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedCoordinate {
    pub reduced: ReducedFunction,
    /// Expression over the original variable indices.
    pub expr: BoolExpr,
    pub area_um2: f64,
    pub delay_ps: f64,
    pub gate_count: usize,
}

/// Cheapest candidate by support size, then gate area.
#[derive(Debug, Clone, PartialEq)]
pub struct Selection {
    pub candidate: GaloisCandidate,
    pub coordinates: Vec<ReducedCoordinate>,
    /// Total number of dependent variables over all registers.
    pub support_sum: usize,
    pub area_um2: f64,
    /// Slowest register.
    pub delay_ps: f64,
    pub gate_count: usize,
    /// Candidates compared.
    pub considered: u128,
}

impl Selection {
    /// Galois specification with the reduced update functions.
    pub fn spec(&self) -> FsrSpec {
        FsrSpec::galois(self.coordinates.iter().map(|c| c.expr.clone()).collect())
            .expect("candidate has a valid stage count")
    }

    /// Total order used for the minimum: support sum, area, then the matrix
    /// and permutation lexicographically.
    fn key_cmp(&self, other: &Selection) -> Ordering {
        self.support_sum
            .cmp(&other.support_sum)
            .then(self.area_um2.total_cmp(&other.area_um2))
            .then_with(|| {
                self.candidate
                    .matrix
                    .columns()
                    .cmp(other.candidate.matrix.columns())
            })
            .then_with(|| {
                self.candidate
                    .transform
                    .as_slice()
                    .cmp(other.candidate.transform.as_slice())
            })
    }
}

/// Reduces and prices every register of a candidate.
pub fn evaluate(candidate: GaloisCandidate, model: &GateCostModel) -> Selection {
    let l = &candidate.matrix;
    let coordinates: Vec<ReducedCoordinate> = (1..=l.n())
        .map(|k| {
            let reduced = restrict_support(&coordinate_structure(l, k));
            let expr = reduced.to_expr();
            let cost = model.cost(&expr);
            ReducedCoordinate {
                reduced,
                expr,
                area_um2: cost.area_um2,
                delay_ps: cost.delay_ps,
                gate_count: cost.gate_count,
            }
        })
        .collect();
    Selection {
        support_sum: coordinates.iter().map(|c| c.reduced.support.len()).sum(),
        area_um2: coordinates.iter().map(|c| c.area_um2).sum(),
        delay_ps: coordinates.iter().map(|c| c.delay_ps).fold(0.0, f64::max),
        gate_count: coordinates.iter().map(|c| c.gate_count).sum(),
        considered: 1,
        coordinates,
        candidate,
    }
}

/// Picks the candidate with the fewest dependent variables over all
/// registers, breaking ties by total gate area. `None` for an empty stream.
pub fn select_minimal(
    candidates: impl IntoIterator<Item = GaloisCandidate>,
    model: &GateCostModel,
) -> Option<Selection> {
    let mut considered = 0;
    let mut best = candidates
        .into_iter()
        .map(|c| {
            considered += 1;
            evaluate(c, model)
        })
        .min_by(Selection::key_cmp)?;
    best.considered = considered;
    Some(best)
}
