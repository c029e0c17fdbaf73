//! Gate-level area/delay estimate for update functions.
//!
//! Only 2-input NAND, NOR, AND and XOR gates carry a cost. Inverters are
//! absorbed (cost 0). OR is priced as a NOR gate, `a -> b` as `!a | b` and
//! `a <-> b` as `!(a ^ b)`.

use super::BoolExpr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateKind {
    Nand2,
    Nor2,
    And2,
    Xor2,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GateParams {
    pub area_um2: f64,
    pub area_ge: f64,
    pub delay_ps: f64,
}

/// Per-gate area and delay figures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GateCostModel {
    pub nand2: GateParams,
    pub nor2: GateParams,
    pub and2: GateParams,
    pub xor2: GateParams,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct GateCost {
    pub area_um2: f64,
    pub delay_ps: f64,
    pub gate_count: usize,
}

impl GateCostModel {
    /// Typical 90nm CMOS figures.
    pub const CMOS_90NM: GateCostModel = GateCostModel {
        nand2: GateParams {
            area_um2: 3.7,
            area_ge: 1.0,
            delay_ps: 33.0,
        },
        nor2: GateParams {
            area_um2: 3.7,
            area_ge: 1.0,
            delay_ps: 57.0,
        },
        and2: GateParams {
            area_um2: 5.0,
            area_ge: 1.4,
            delay_ps: 87.0,
        },
        xor2: GateParams {
            area_um2: 10.0,
            area_ge: 2.7,
            delay_ps: 115.0,
        },
    };

    /// Builds a model, rejecting non-positive or non-finite entries.
    pub fn new(
        nand2: GateParams,
        nor2: GateParams,
        and2: GateParams,
        xor2: GateParams,
    ) -> Option<Self> {
        let ok = |p: &GateParams| {
            [p.area_um2, p.area_ge, p.delay_ps]
                .iter()
                .all(|v| v.is_finite() && *v > 0.0)
        };
        [nand2, nor2, and2, xor2]
            .iter()
            .all(ok)
            .then_some(GateCostModel {
                nand2,
                nor2,
                and2,
                xor2,
            })
    }

    pub fn params(&self, kind: GateKind) -> GateParams {
        match kind {
            GateKind::Nand2 => self.nand2,
            GateKind::Nor2 => self.nor2,
            GateKind::And2 => self.and2,
            GateKind::Xor2 => self.xor2,
        }
    }

    /// Gate used to realize a node, `None` for leaves and inverters.
    fn gate_for(expr: &BoolExpr) -> Option<GateKind> {
        match expr {
            BoolExpr::Var(_) | BoolExpr::Const(_) | BoolExpr::Not(_) => None,
            BoolExpr::And(..) => Some(GateKind::And2),
            BoolExpr::Or(..) | BoolExpr::Implies(..) => Some(GateKind::Nor2),
            BoolExpr::Xor(..) | BoolExpr::Iff(..) => Some(GateKind::Xor2),
        }
    }

    /// Area is summed over every gate; delay is the largest sum along a
    /// root-to-leaf path.
    pub fn cost(&self, expr: &BoolExpr) -> GateCost {
        match expr {
            BoolExpr::Var(_) | BoolExpr::Const(_) => GateCost::default(),
            BoolExpr::Not(e) => self.cost(e),
            BoolExpr::And(l, r)
            | BoolExpr::Or(l, r)
            | BoolExpr::Xor(l, r)
            | BoolExpr::Implies(l, r)
            | BoolExpr::Iff(l, r) => {
                let g = self.params(Self::gate_for(expr).expect("binary node"));
                let (cl, cr) = (self.cost(l), self.cost(r));
                GateCost {
                    area_um2: g.area_um2 + cl.area_um2 + cr.area_um2,
                    delay_ps: g.delay_ps + cl.delay_ps.max(cr.delay_ps),
                    gate_count: 1 + cl.gate_count + cr.gate_count,
                }
            }
        }
    }
}

impl Default for GateCostModel {
    fn default() -> Self {
        Self::CMOS_90NM
    }
}
