use std::collections::BTreeSet;
use std::fmt;

use super::BoolExpr;

/// Largest variable count for which truth tables are materialized.
pub(crate) const MAX_VARS: usize = 24;

/// Algebraic normal form: a GF(2) sum of monomials.
///
/// A monomial is a bit mask over variables (bit `i - 1` set means `xi`
/// appears); the empty mask is the constant 1. Two `Anf` values are equal
/// iff they denote the same function.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Anf {
    monomials: BTreeSet<u64>,
}

impl Anf {
    pub fn from_expr(expr: &BoolExpr) -> Self {
        let n = expr.max_var();
        Self::from_truth_table(&expr.truth_table(n))
    }

    /// Binary Möbius transform of a truth table in binary counting order
    /// (entry `m` has `xi = (m >> (i - 1)) & 1`).
    pub fn from_truth_table(table: &[bool]) -> Self {
        assert!(
            table.len().is_power_of_two(),
            "truth table length must be a power of two"
        );
        let mut coeffs = table.to_vec();
        let mut step = 1;
        while step < coeffs.len() {
            for block in coeffs.chunks_mut(2 * step) {
                let (lo, hi) = block.split_at_mut(step);
                for (h, l) in hi.iter_mut().zip(lo.iter()) {
                    *h ^= *l;
                }
            }
            step *= 2;
        }
        Anf {
            monomials: coeffs
                .iter()
                .enumerate()
                .filter(|(_, &c)| c)
                .map(|(m, _)| m as u64)
                .collect(),
        }
    }

    pub fn from_monomials<I, M>(monomials: I) -> Self
    where
        I: IntoIterator<Item = M>,
        M: IntoIterator<Item = usize>,
    {
        let mut set = BTreeSet::new();
        for m in monomials {
            let mask = m.into_iter().fold(0u64, |acc, v| acc | 1 << (v - 1));
            // GF(2): a repeated monomial cancels
            if !set.insert(mask) {
                set.remove(&mask);
            }
        }
        Anf { monomials: set }
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn has_constant(&self) -> bool {
        self.monomials.contains(&0)
    }

    /// Monomials as sorted variable-index lists, ordered by mask.
    pub fn monomials(&self) -> Vec<Vec<usize>> {
        self.monomials.iter().map(|&m| mask_vars(m)).collect()
    }

    pub fn eval(&self, assignment: &[bool]) -> bool {
        self.monomials
            .iter()
            .filter(|&&m| mask_vars(m).iter().all(|&v| assignment[v - 1]))
            .count()
            % 2
            == 1
    }

    /// Builds an expression directly from the normal form: a chain of XORs of
    /// AND-chains. A constant-1 term becomes an outer negation, so `1 ^ x1`
    /// renders as `!x1`.
    pub fn to_expr(&self) -> BoolExpr {
        let terms: Vec<BoolExpr> = self
            .monomials
            .iter()
            .filter(|&&m| m != 0)
            .map(|&m| {
                mask_vars(m)
                    .into_iter()
                    .map(BoolExpr::Var)
                    .reduce(BoolExpr::and)
                    .expect("non-constant monomial has a variable")
            })
            .collect();
        match terms.into_iter().reduce(BoolExpr::xor) {
            None => BoolExpr::Const(self.has_constant()),
            Some(sum) if self.has_constant() => BoolExpr::not(sum),
            Some(sum) => sum,
        }
    }
}

fn mask_vars(mask: u64) -> Vec<usize> {
    (0..64)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| b + 1)
        .collect()
}

impl fmt::Display for Anf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomials.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for m in &self.monomials {
            if !first {
                write!(f, " ^ ")?;
            }
            first = false;
            if *m == 0 {
                write!(f, "1")?;
            } else {
                let vars: Vec<String> = mask_vars(*m).iter().map(|v| format!("x{v}")).collect();
                write!(f, "{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}
