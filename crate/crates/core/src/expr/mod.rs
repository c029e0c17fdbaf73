//! Boolean update functions: syntax tree, parser, evaluation, algebraic
//! normal form and a gate-level cost model.

mod anf;
mod cost;
mod parse;

use std::fmt;

pub use anf::Anf;
pub use cost::{GateCost, GateCostModel, GateKind, GateParams};
pub use parse::parse;

/// Abstract syntax tree of a Boolean function over `x1..xn`.
///
/// Variables are 1-based. Binary operators are strictly two-input.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BoolExpr {
    Var(usize),
    Const(bool),
    Not(Box<BoolExpr>),
    And(Box<BoolExpr>, Box<BoolExpr>),
    Or(Box<BoolExpr>, Box<BoolExpr>),
    Xor(Box<BoolExpr>, Box<BoolExpr>),
    Implies(Box<BoolExpr>, Box<BoolExpr>),
    Iff(Box<BoolExpr>, Box<BoolExpr>),
}

impl BoolExpr {
    pub fn var(index: usize) -> Self {
        BoolExpr::Var(index)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(e: BoolExpr) -> Self {
        BoolExpr::Not(Box::new(e))
    }

    pub fn and(l: BoolExpr, r: BoolExpr) -> Self {
        BoolExpr::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: BoolExpr, r: BoolExpr) -> Self {
        BoolExpr::Or(Box::new(l), Box::new(r))
    }

    pub fn xor(l: BoolExpr, r: BoolExpr) -> Self {
        BoolExpr::Xor(Box::new(l), Box::new(r))
    }

    pub fn implies(l: BoolExpr, r: BoolExpr) -> Self {
        BoolExpr::Implies(Box::new(l), Box::new(r))
    }

    pub fn iff(l: BoolExpr, r: BoolExpr) -> Self {
        BoolExpr::Iff(Box::new(l), Box::new(r))
    }

    /// Evaluates the expression; `assignment[i - 1]` is the value of `xi`.
    ///
    /// Panics if a variable index exceeds `assignment.len()`.
    pub fn eval(&self, assignment: &[bool]) -> bool {
        match self {
            BoolExpr::Var(i) => assignment[*i - 1],
            BoolExpr::Const(b) => *b,
            BoolExpr::Not(e) => !e.eval(assignment),
            BoolExpr::And(l, r) => l.eval(assignment) && r.eval(assignment),
            BoolExpr::Or(l, r) => l.eval(assignment) || r.eval(assignment),
            BoolExpr::Xor(l, r) => l.eval(assignment) ^ r.eval(assignment),
            BoolExpr::Implies(l, r) => !l.eval(assignment) || r.eval(assignment),
            BoolExpr::Iff(l, r) => l.eval(assignment) == r.eval(assignment),
        }
    }

    /// Largest variable index appearing in the expression, 0 if none.
    pub fn max_var(&self) -> usize {
        match self {
            BoolExpr::Var(i) => *i,
            BoolExpr::Const(_) => 0,
            BoolExpr::Not(e) => e.max_var(),
            BoolExpr::And(l, r)
            | BoolExpr::Or(l, r)
            | BoolExpr::Xor(l, r)
            | BoolExpr::Implies(l, r)
            | BoolExpr::Iff(l, r) => l.max_var().max(r.max_var()),
        }
    }

    /// Replaces every `Var(i)` by `Var(map(i))`.
    pub fn rename_vars(&self, map: &impl Fn(usize) -> usize) -> BoolExpr {
        let bin = |l: &BoolExpr, r: &BoolExpr| {
            (Box::new(l.rename_vars(map)), Box::new(r.rename_vars(map)))
        };
        match self {
            BoolExpr::Var(i) => BoolExpr::Var(map(*i)),
            BoolExpr::Const(b) => BoolExpr::Const(*b),
            BoolExpr::Not(e) => BoolExpr::Not(Box::new(e.rename_vars(map))),
            BoolExpr::And(l, r) => {
                let (l, r) = bin(l, r);
                BoolExpr::And(l, r)
            }
            BoolExpr::Or(l, r) => {
                let (l, r) = bin(l, r);
                BoolExpr::Or(l, r)
            }
            BoolExpr::Xor(l, r) => {
                let (l, r) = bin(l, r);
                BoolExpr::Xor(l, r)
            }
            BoolExpr::Implies(l, r) => {
                let (l, r) = bin(l, r);
                BoolExpr::Implies(l, r)
            }
            BoolExpr::Iff(l, r) => {
                let (l, r) = bin(l, r);
                BoolExpr::Iff(l, r)
            }
        }
    }

    /// Truth table over `n` variables in binary counting order: entry `m`
    /// evaluates the function with `xi = (m >> (i - 1)) & 1`.
    pub fn truth_table(&self, n: usize) -> Vec<bool> {
        assert!(
            n <= anf::MAX_VARS,
            "truth table over {n} variables is too large"
        );
        let mut assignment = vec![false; n];
        (0..1usize << n)
            .map(|m| {
                for (i, slot) in assignment.iter_mut().enumerate() {
                    *slot = (m >> i) & 1 == 1;
                }
                self.eval(&assignment)
            })
            .collect()
    }

    /// Whether two expressions denote the same function of `x1..xn`.
    pub fn function_eq(&self, other: &BoolExpr, n: usize) -> bool {
        self.truth_table(n) == other.truth_table(n)
    }

    pub fn to_anf(&self) -> Anf {
        Anf::from_expr(self)
    }

    pub fn gate_cost(&self, model: &GateCostModel) -> GateCost {
        model.cost(self)
    }

    fn precedence(&self) -> u8 {
        match self {
            BoolExpr::Var(_) | BoolExpr::Const(_) => 7,
            BoolExpr::Not(_) => 6,
            BoolExpr::And(..) => 5,
            BoolExpr::Xor(..) => 4,
            BoolExpr::Or(..) => 3,
            BoolExpr::Implies(..) => 2,
            BoolExpr::Iff(..) => 1,
        }
    }
}

/// Renders in the concrete syntax accepted by [`parse`], with the minimum
/// parentheses needed under left-associative precedence.
impl fmt::Display for BoolExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn child(f: &mut fmt::Formatter<'_>, e: &BoolExpr, paren: bool) -> fmt::Result {
            if paren {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        }
        let binary = |f: &mut fmt::Formatter<'_>, l: &BoolExpr, op: &str, r: &BoolExpr| {
            let p = self.precedence();
            child(f, l, l.precedence() < p)?;
            write!(f, " {op} ")?;
            child(f, r, r.precedence() <= p)
        };
        match self {
            BoolExpr::Var(i) => write!(f, "x{i}"),
            BoolExpr::Const(b) => write!(f, "{}", u8::from(*b)),
            BoolExpr::Not(e) => {
                write!(f, "!")?;
                child(f, e, e.precedence() < 6)
            }
            BoolExpr::And(l, r) => binary(f, l, "&", r),
            BoolExpr::Or(l, r) => binary(f, l, "|", r),
            BoolExpr::Xor(l, r) => binary(f, l, "^", r),
            BoolExpr::Implies(l, r) => binary(f, l, "->", r),
            BoolExpr::Iff(l, r) => binary(f, l, "<->", r),
        }
    }
}
