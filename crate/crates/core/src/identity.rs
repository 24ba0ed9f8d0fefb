//! Identity elements and inverses of m-ary groupoids.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypercube::{MultaryOperation, Symbol};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    /// `I_0, …, I_{m-1}`.
    pub per_position: Vec<BTreeSet<Symbol>>,
    /// `I(X, f)`, the intersection of all positions.
    pub intersection: BTreeSet<Symbol>,
}

impl IdentityReport {
    pub fn is_monoid(&self) -> bool {
        !self.intersection.is_empty()
    }
}

/// `f(fill, …, fill, value, fill, …, fill)` with `value` in `slot`.
#[inline]
pub(crate) fn eval_with_slot(op: &MultaryOperation, fill: Symbol, slot: usize, value: Symbol) -> Symbol {
    let n = op.order();
    let mut flat = 0;
    for pos in 0..op.arity() {
        let digit = if pos == slot { value } else { fill };
        flat = flat * n + digit.index();
    }
    op.table()[flat]
}

/// Elements `e` with `f(e, …, e, a, e, …, e) = a` for every `a`.
///
/// Positions count from the right: the free argument sits in slot
/// `m - 1 - i`, so for binary operations `I_0` holds the left identities
/// (`e * a = a`) and `I_1` the right identities.
pub fn i_identity_set(op: &MultaryOperation, i: usize) -> Result<BTreeSet<Symbol>> {
    if i >= op.arity() {
        return Err(Error::PositionOutOfRange {
            position: i,
            arity: op.arity(),
        });
    }
    Ok(i_identity_unchecked(op, i))
}

fn i_identity_unchecked(op: &MultaryOperation, i: usize) -> BTreeSet<Symbol> {
    (0..op.order())
        .map(Symbol::new)
        .filter(|&e| {
            (0..op.order())
                .map(Symbol::new)
                .all(|a| eval_with_slot(op, e, op.arity() - 1 - i, a) == a)
        })
        .collect()
}

pub fn identity_set(op: &MultaryOperation) -> IdentityReport {
    let per_position: Vec<_> = (0..op.arity()).map(|i| i_identity_unchecked(op, i)).collect();
    let mut intersection = per_position[0].clone();
    for set in &per_position[1..] {
        intersection.retain(|e| set.contains(e));
    }
    IdentityReport {
        per_position,
        intersection,
    }
}

/// Inverses of `a`: every `b` for which a single identity `e` satisfies
/// `f(a, …, a, b, a, …, a) = e` with `b` in each slot.
pub fn inverses(op: &MultaryOperation, a: Symbol) -> Result<BTreeSet<Symbol>> {
    op.check_symbols(&[a])?;
    let identities = identity_set(op).intersection;
    if identities.is_empty() {
        return Err(Error::NotAMonoid);
    }
    Ok(inverses_given(op, a, &identities))
}

fn inverses_given(op: &MultaryOperation, a: Symbol, identities: &BTreeSet<Symbol>) -> BTreeSet<Symbol> {
    (0..op.order())
        .map(Symbol::new)
        .filter(|&b| {
            identities.iter().any(|&e| {
                (0..op.arity()).all(|slot| eval_with_slot(op, a, slot, b) == e)
            })
        })
        .collect()
}

/// Inverse sets of every symbol, or `None` when the operation is not a monoid.
pub fn all_inverses(op: &MultaryOperation) -> Option<Vec<BTreeSet<Symbol>>> {
    let identities = identity_set(op).intersection;
    if identities.is_empty() {
        return None;
    }
    Some(
        (0..op.order())
            .map(|a| inverses_given(op, Symbol::new(a), &identities))
            .collect(),
    )
}

pub fn has_unique_inverses(op: &MultaryOperation) -> bool {
    all_inverses(op).is_some_and(|sets| sets.iter().all(|s| s.len() == 1))
}
