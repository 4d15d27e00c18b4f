use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::poly::context::{Var, VarSet};
use crate::poly::monomial::{lane_mask, Monomial};

/// Monomial orders. Variable `0` is the largest variable in all of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    DegRevLex,
    /// Total degree in `front` first, ties broken by degrevlex. Any monomial
    /// containing a front variable outranks every monomial free of them.
    Elimination(VarSet),
    /// Degrevlex with the given variable moved to the smallest position.
    DegRevLexLast(Var),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderName {
    Lex,
    Degrevlex,
}

impl From<OrderName> for MonomialOrder {
    fn from(o: OrderName) -> Self {
        match o {
            OrderName::Lex => MonomialOrder::Lex,
            OrderName::Degrevlex => MonomialOrder::DegRevLex,
        }
    }
}

impl Default for MonomialOrder {
    fn default() -> Self {
        MonomialOrder::DegRevLex
    }
}

#[inline]
fn revlex_tail(a: &Monomial, b: &Monomial) -> Ordering {
    // Smallest variable (highest index) decides; larger exponent there means
    // a smaller monomial.
    let (wa, wb) = (a.words(), b.words());
    for i in (0..wa.len()).rev() {
        let x = wa[i] ^ wb[i];
        if x != 0 {
            let shift = (63 - x.leading_zeros()) / 8 * 8;
            let ea = (wa[i] >> shift) & 0xff;
            let eb = (wb[i] >> shift) & 0xff;
            return eb.cmp(&ea);
        }
    }
    Ordering::Equal
}

#[inline]
fn lex(a: &Monomial, b: &Monomial) -> Ordering {
    let (wa, wb) = (a.words(), b.words());
    for i in 0..wa.len() {
        let x = wa[i] ^ wb[i];
        if x != 0 {
            let shift = x.trailing_zeros() / 8 * 8;
            let ea = (wa[i] >> shift) & 0xff;
            let eb = (wb[i] >> shift) & 0xff;
            return ea.cmp(&eb);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn elimination(front: VarSet) -> Self {
        MonomialOrder::Elimination(front)
    }

    /// A prepared comparator; `Elimination` precomputes its lane mask.
    pub fn comparator(&self) -> Comparator {
        Comparator {
            order: *self,
            mask: match self {
                MonomialOrder::Elimination(front) => lane_mask(front.0),
                _ => [0; 6],
            },
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.comparator().cmp(a, b)
    }

    pub fn is_graded(&self) -> bool {
        matches!(self, MonomialOrder::DegRevLex | MonomialOrder::DegRevLexLast(_))
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Comparator {
    order: MonomialOrder,
    mask: [u64; 6],
}

impl Comparator {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.order {
            MonomialOrder::Lex => lex(a, b),
            MonomialOrder::DegRevLex => a
                .degree()
                .cmp(&b.degree())
                .then_with(|| revlex_tail(a, b)),
            MonomialOrder::Elimination(_) => a
                .masked_degree(&self.mask)
                .cmp(&b.masked_degree(&self.mask))
                .then_with(|| a.degree().cmp(&b.degree()))
                .then_with(|| revlex_tail(a, b)),
            MonomialOrder::DegRevLexLast(v) => a
                .degree()
                .cmp(&b.degree())
                .then_with(|| b.exp(v).cmp(&a.exp(v)))
                .then_with(|| revlex_tail(a, b)),
        }
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }
}
