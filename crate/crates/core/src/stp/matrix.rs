use std::fmt;
use std::str::FromStr;

use super::delta::{parse_full, write_delta};
use super::{check_stages, decode_state};
use crate::error::{Error, Result};

/// A logical matrix: every column is a canonical basis vector, stored as the
/// 1-based row index of its single nonzero entry.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LogicalMatrix {
    rows: usize,
    cols: Vec<usize>,
}

impl LogicalMatrix {
    pub fn new(rows: usize, cols: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = cols.iter().find(|&&c| c == 0 || c > rows) {
            return Err(Error::StateOutOfRange {
                index: bad,
                size: rows,
            });
        }
        Ok(LogicalMatrix { rows, cols })
    }

    pub fn identity(size: usize) -> Self {
        LogicalMatrix {
            rows: size,
            cols: (1..=size).collect(),
        }
    }

    /// Canonical vector `δ_size^k` as a one-column matrix.
    pub fn delta(size: usize, k: usize) -> Result<Self> {
        Self::new(size, vec![k])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn columns(&self) -> &[usize] {
        &self.cols
    }

    /// 1-based column access.
    pub fn column(&self, j: usize) -> usize {
        self.cols[j - 1]
    }

    /// Ordinary product `self · rhs`.
    pub fn compose(&self, rhs: &LogicalMatrix) -> Result<LogicalMatrix> {
        if rhs.rows != self.ncols() {
            return Err(Error::LengthMismatch {
                expected: self.ncols(),
                found: rhs.rows,
            });
        }
        Ok(LogicalMatrix {
            rows: self.rows,
            cols: rhs.cols.iter().map(|&c| self.cols[c - 1]).collect(),
        })
    }

    /// `self ⊗ I_t`.
    pub fn kron_identity(&self, t: usize) -> LogicalMatrix {
        LogicalMatrix {
            rows: self.rows * t,
            cols: self
                .cols
                .iter()
                .flat_map(|&c| (1..=t).map(move |s| (c - 1) * t + s))
                .collect(),
        }
    }

    /// Kronecker product of two logical matrices.
    pub fn kron(&self, rhs: &LogicalMatrix) -> LogicalMatrix {
        LogicalMatrix {
            rows: self.rows * rhs.rows,
            cols: self
                .cols
                .iter()
                .flat_map(|&a| rhs.cols.iter().map(move |&b| (a - 1) * rhs.rows + b))
                .collect(),
        }
    }

    /// Semi-tensor product `A ⋉ B = (A ⊗ I_{l/n})(B ⊗ I_{l/p})` with
    /// `n = ncols(A)`, `p = rows(B)`, `l = lcm(n, p)`.
    pub fn stp(&self, rhs: &LogicalMatrix) -> LogicalMatrix {
        let n = self.ncols();
        let p = rhs.rows;
        let l = lcm(n, p);
        self.kron_identity(l / n)
            .compose(&rhs.kron_identity(l / p))
            .expect("dimensions agree by construction")
    }

    pub fn is_permutation(&self) -> bool {
        if self.rows != self.ncols() {
            return false;
        }
        let mut seen = vec![false; self.rows];
        self.cols
            .iter()
            .all(|&c| !std::mem::replace(&mut seen[c - 1], true))
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

impl fmt::Display for LogicalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_delta(f, self.rows, self.cols.iter().copied().map(Some))
    }
}

impl FromStr for LogicalMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (rows, cols) = parse_full(s)?;
        LogicalMatrix::new(rows, cols)
    }
}

/// Structure matrix of a Boolean function of `n` variables: entry `k` is
/// row 1 (true) or row 2 (false) for state index `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StructureMatrix {
    n: usize,
    values: Vec<bool>,
}

impl StructureMatrix {
    pub fn from_values(values: Vec<bool>) -> Result<Self> {
        let n = log2_exact(values.len())?;
        Ok(StructureMatrix { n, values })
    }

    /// From the δ₂ row sequence (each entry 1 or 2).
    pub fn from_rows(rows: &[u8]) -> Result<Self> {
        let values = rows
            .iter()
            .map(|&r| match r {
                1 => Ok(true),
                2 => Ok(false),
                _ => Err(Error::DeltaFormat(format!(
                    "structure matrix entry {r} not in {{1,2}}"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_values(values)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Function value at 1-based state index `k`.
    pub fn value(&self, k: usize) -> bool {
        self.values[k - 1]
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn rows(&self) -> Vec<u8> {
        self.values.iter().map(|&v| if v { 1 } else { 2 }).collect()
    }

    pub fn to_logical(&self) -> LogicalMatrix {
        LogicalMatrix {
            rows: 2,
            cols: self.rows().into_iter().map(usize::from).collect(),
        }
    }

    /// Truth table in binary counting order (`xi = (m >> (i-1)) & 1`).
    pub fn truth_table(&self) -> Vec<bool> {
        (0..self.values.len())
            .map(|m| {
                let bits: Vec<bool> = (0..self.n).map(|i| (m >> i) & 1 == 1).collect();
                self.values[super::encode_state(&bits) - 1]
            })
            .collect()
    }
}

impl fmt::Display for StructureMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_delta(f, 2, self.rows().into_iter().map(|r| Some(usize::from(r))))
    }
}

impl FromStr for StructureMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (rows, cols) = parse_full(s)?;
        if rows != 2 {
            return Err(Error::DeltaFormat(format!(
                "structure matrix must be d2[...], got d{rows}"
            )));
        }
        Self::from_values(cols.into_iter().map(|c| c == 1).collect())
    }
}

/// State-transition matrix of an `n`-register FSR: column `k` holds the
/// successor index of state `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TransitionMatrix {
    n: usize,
    cols: Vec<usize>,
}

impl TransitionMatrix {
    /// Infers `n` from the column count, which must be `2^n`.
    pub fn from_columns(cols: Vec<usize>) -> Result<Self> {
        let n = log2_exact(cols.len())?;
        let size = cols.len();
        if let Some(&bad) = cols.iter().find(|&&c| c == 0 || c > size) {
            return Err(Error::StateOutOfRange { index: bad, size });
        }
        Ok(TransitionMatrix { n, cols })
    }

    pub fn identity(n: usize) -> Result<Self> {
        check_stages(n)?;
        Ok(TransitionMatrix {
            n,
            cols: (1..=1usize << n).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.cols.len()
    }

    pub fn half(&self) -> usize {
        self.cols.len() / 2
    }

    /// Successor of 1-based state `k`.
    pub fn column(&self, k: usize) -> usize {
        self.cols[k - 1]
    }

    pub fn columns(&self) -> &[usize] {
        &self.cols
    }

    /// Output bit (register 1) of state `k`.
    pub fn output(&self, k: usize) -> bool {
        k <= self.half()
    }

    pub fn check_state(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.size() {
            return Err(Error::StateOutOfRange {
                index: k,
                size: self.size(),
            });
        }
        Ok(())
    }

    pub fn to_logical(&self) -> LogicalMatrix {
        LogicalMatrix {
            rows: self.cols.len(),
            cols: self.cols.clone(),
        }
    }

    /// Register values of the successor of state `k`.
    pub fn successor_bits(&self, k: usize) -> Vec<bool> {
        decode_state(self.n, self.column(k)).expect("columns are in range")
    }
}

impl fmt::Display for TransitionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_delta(f, self.cols.len(), self.cols.iter().copied().map(Some))
    }
}

impl FromStr for TransitionMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (rows, cols) = parse_full(s)?;
        if rows != cols.len() {
            return Err(Error::DeltaFormat(format!(
                "transition matrix d{rows} has {} columns",
                cols.len()
            )));
        }
        Self::from_columns(cols)
    }
}

fn log2_exact(len: usize) -> Result<usize> {
    if len < 2 || !len.is_power_of_two() {
        return Err(Error::DeltaFormat(format!(
            "length {len} is not 2^n with n >= 1"
        )));
    }
    let n = len.trailing_zeros() as usize;
    check_stages(n)?;
    Ok(n)
}

/// A bijective relabeling of the `2^n` states.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PermutationTransform {
    n: usize,
    map: Vec<usize>,
}

impl PermutationTransform {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let n = log2_exact(map.len())?;
        let lm = LogicalMatrix::new(map.len(), map.clone()).map_err(|_| Error::NotPermutation)?;
        if !lm.is_permutation() {
            return Err(Error::NotPermutation);
        }
        Ok(PermutationTransform { n, map })
    }

    pub fn identity(n: usize) -> Result<Self> {
        check_stages(n)?;
        Ok(PermutationTransform {
            n,
            map: (1..=1usize << n).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i - 1]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.map.len()];
        for (i, &p) in self.map.iter().enumerate() {
            inv[p - 1] = i + 1;
        }
        PermutationTransform {
            n: self.n,
            map: inv,
        }
    }

    /// First state whose output bit the relabeling changes, if any.
    pub fn partition_violation(&self) -> Option<usize> {
        let half = self.map.len() / 2;
        self.map
            .iter()
            .enumerate()
            .find(|(i, &p)| (*i < half) != (p <= half))
            .map(|(i, _)| i + 1)
    }

    pub fn is_partition_preserving(&self) -> bool {
        self.partition_violation().is_none()
    }

    pub fn to_logical(&self) -> LogicalMatrix {
        LogicalMatrix {
            rows: self.map.len(),
            cols: self.map.clone(),
        }
    }
}

impl fmt::Display for PermutationTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_delta(f, self.map.len(), self.map.iter().copied().map(Some))
    }
}

impl FromStr for PermutationTransform {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (rows, cols) = parse_full(s)?;
        if rows != cols.len() {
            return Err(Error::NotPermutation);
        }
        Self::new(cols)
    }
}
