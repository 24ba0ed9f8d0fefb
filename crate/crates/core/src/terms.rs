//! Terms over an m-ary product and exhaustive identity checking.
//!
//! Concrete syntax, for every arity including 2:
//!
//! ```text
//! term := 'x' N | '{' term (',' term){m-1} '}'
//! ```
//!
//! Whitespace is ignored. An identity is written `LHS = RHS`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::SearchConfig;
use crate::error::{Error, Result};
use crate::hypercube::{operation_count, MultaryOperation, OperationIndex, Symbol};
use crate::superposition::superpose;

/// Seed of the sampler used when a lifted identity is too large to exhaust.
pub const LIFTED_SAMPLE_SEED: u64 = 0x0D07_5EED;
pub const LIFTED_SAMPLE_COUNT: u64 = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    /// `x_k`, `k ≥ 1`.
    Var(usize),
    App(Vec<Term>),
}

impl Term {
    pub fn max_var(&self) -> usize {
        match self {
            Term::Var(k) => *k,
            Term::App(children) => children.iter().map(Term::max_var).max().unwrap_or(0),
        }
    }

    fn check_arity(&self, arity: usize) -> Result<()> {
        match self {
            Term::Var(_) => Ok(()),
            Term::App(children) if children.len() != arity => Err(Error::ArityMismatch {
                expected: arity,
                found: children.len(),
            }),
            Term::App(children) => children.iter().try_for_each(|c| c.check_arity(arity)),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(k) => write!(f, "x{k}"),
            Term::App(children) => {
                write!(f, "{{")?;
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, "}}")
            }
        }
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    arity: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::syntax(1, self.pos + 1, message)
    }

    fn term(&mut self) -> Result<Term> {
        self.skip_ws();
        match self.bytes.get(self.pos) {
            Some(b'x') => {
                self.pos += 1;
                let start = self.pos;
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
                match digits.parse::<usize>() {
                    Ok(k) if k >= 1 => Ok(Term::Var(k)),
                    _ => {
                        self.pos = start;
                        Err(self.error("expected a positive variable index after `x`"))
                    }
                }
            }
            Some(b'{') => {
                self.pos += 1;
                let mut children = vec![self.term()?];
                loop {
                    self.skip_ws();
                    match self.bytes.get(self.pos) {
                        Some(b',') => {
                            self.pos += 1;
                            children.push(self.term()?);
                        }
                        Some(b'}') => {
                            self.pos += 1;
                            break;
                        }
                        _ => return Err(self.error("expected `,` or `}`")),
                    }
                }
                if children.len() != self.arity {
                    return Err(Error::ArityMismatch {
                        expected: self.arity,
                        found: children.len(),
                    });
                }
                Ok(Term::App(children))
            }
            _ => Err(self.error("expected `x<N>` or `{`")),
        }
    }
}

pub fn parse_term(text: &str, arity: usize) -> Result<Term> {
    let mut parser = Parser {
        bytes: text.as_bytes(),
        pos: 0,
        arity,
    };
    let term = parser.term()?;
    parser.skip_ws();
    if parser.pos != parser.bytes.len() {
        return Err(parser.error("trailing input"));
    }
    Ok(term)
}

/// Parses `LHS = RHS`.
pub fn parse_identity(text: &str, arity: usize) -> Result<(Term, Term)> {
    let eq = text
        .find('=')
        .ok_or_else(|| Error::syntax(1, text.len() + 1, "expected `=` between the two sides"))?;
    let lhs = parse_term(&text[..eq], arity)?;
    let rhs = parse_term(&text[eq + 1..], arity).map_err(|e| match e {
        Error::Syntax {
            line,
            column,
            message,
        } => Error::Syntax {
            line,
            column: column + eq + 1,
            message,
        },
        other => other,
    })?;
    Ok((lhs, rhs))
}

/// Evaluates `term` with `x_k ↦ assignment[k-1]`.
pub fn eval_term(term: &Term, op: &MultaryOperation, assignment: &[Symbol]) -> Result<Symbol> {
    term.check_arity(op.arity())?;
    op.check_symbols(assignment)?;
    eval_unchecked(term, op, assignment)
}

fn eval_unchecked(term: &Term, op: &MultaryOperation, assignment: &[Symbol]) -> Result<Symbol> {
    match term {
        Term::Var(k) => assignment.get(k - 1).copied().ok_or(Error::UnboundVariable(*k)),
        Term::App(children) => {
            let n = op.order();
            let mut flat = 0;
            for c in children {
                flat = flat * n + eval_unchecked(c, op, assignment)?.index();
            }
            Ok(op.table()[flat])
        }
    }
}

/// Evaluates `term` in `(Ω_n(X), ⊙_f)`: every product is a superposition.
pub fn eval_term_lifted(
    term: &Term,
    f: &MultaryOperation,
    assignment: &[MultaryOperation],
) -> Result<MultaryOperation> {
    match term {
        Term::Var(k) => assignment.get(k - 1).cloned().ok_or(Error::UnboundVariable(*k)),
        Term::App(children) => {
            let parts = children
                .iter()
                .map(|c| eval_term_lifted(c, f, assignment))
                .collect::<Result<Vec<_>>>()?;
            superpose(f, &parts)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    /// Failing assignment. Base checks report symbols; lifted checks report
    /// carrier symbols, i.e. canonical indices of component operations.
    pub counterexample: Option<Vec<Symbol>>,
    /// False when the verdict rests on a fixed-seed sample.
    pub exhaustive: bool,
    pub assignments_checked: u128,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

fn variable_count(lhs: &Term, rhs: &Term) -> usize {
    lhs.max_var().max(rhs.max_var())
}

fn decode_assignment(mut index: u128, base: u128, t: usize) -> Vec<Symbol> {
    let mut out = vec![Symbol::default(); t];
    for slot in out.iter_mut().rev() {
        *slot = Symbol::new((index % base) as usize);
        index /= base;
    }
    out
}

pub fn satisfies_identity(op: &MultaryOperation, lhs: &Term, rhs: &Term) -> Result<IdentityCheck> {
    satisfies_identity_with(op, lhs, rhs, &SearchConfig::default())
}

/// Exhaustive over `X^t`; the counterexample, if any, is the
/// lexicographically first failing assignment.
pub fn satisfies_identity_with(
    op: &MultaryOperation,
    lhs: &Term,
    rhs: &Term,
    config: &SearchConfig,
) -> Result<IdentityCheck> {
    lhs.check_arity(op.arity())?;
    rhs.check_arity(op.arity())?;
    let t = variable_count(lhs, rhs);
    let base = op.order() as u128;
    let total = u32::try_from(t)
        .ok()
        .and_then(|t| base.checked_pow(t))
        .filter(|&total| total <= config.limits.assignments)
        .ok_or_else(|| {
            Error::capacity(format!(
                "{}^{t} assignments exceed the guard of {}",
                op.order(),
                config.limits.assignments
            ))
        })?;
    let failing = config.install(|| {
        (0..total as u64).into_par_iter().find_first(|&idx| {
            let a = decode_assignment(idx as u128, base, t);
            eval_unchecked(lhs, op, &a).ok() != eval_unchecked(rhs, op, &a).ok()
        })
    })?;
    Ok(IdentityCheck {
        counterexample: failing.map(|idx| decode_assignment(idx as u128, base, t)),
        exhaustive: true,
        assignments_checked: failing.map_or(total, |idx| idx as u128 + 1),
    })
}

pub fn lifted_identity_check(
    f: &MultaryOperation,
    component_arity: usize,
    lhs: &Term,
    rhs: &Term,
) -> Result<IdentityCheck> {
    lifted_identity_check_with(f, component_arity, lhs, rhs, &SearchConfig::default())
}

/// The identity in `(Ω_n(X), ⊙_f)`. Exhaustive (lexicographically first
/// counterexample) when `|Ω_n(X)|^t` fits the assignment guard, otherwise
/// `LIFTED_SAMPLE_COUNT` assignments drawn with `LIFTED_SAMPLE_SEED`; the
/// first failing draw is reported.
pub fn lifted_identity_check_with(
    f: &MultaryOperation,
    component_arity: usize,
    lhs: &Term,
    rhs: &Term,
    config: &SearchConfig,
) -> Result<IdentityCheck> {
    lhs.check_arity(f.arity())?;
    rhs.check_arity(f.arity())?;
    let carrier = operation_count(component_arity, f.order())
        .filter(|&c| c <= config.limits.lifted_carrier as u128)
        .ok_or_else(|| {
            Error::capacity(format!(
                "Ω_{component_arity} over {} symbols exceeds the lifted-carrier cap of {}",
                f.order(),
                config.limits.lifted_carrier
            ))
        })?;
    let t = variable_count(lhs, rhs);
    let elements: Vec<MultaryOperation> = (0..carrier)
        .map(|i| MultaryOperation::from_index(component_arity, f.order(), OperationIndex(i)))
        .collect::<Result<_>>()?;
    let fails = |a: &[Symbol]| -> bool {
        let ops: Vec<MultaryOperation> = a.iter().map(|s| elements[s.index()].clone()).collect();
        eval_term_lifted(lhs, f, &ops).ok() != eval_term_lifted(rhs, f, &ops).ok()
    };
    let total = u32::try_from(t).ok().and_then(|t| carrier.checked_pow(t));
    match total {
        Some(total) if total <= config.limits.assignments => {
            let failing = config.install(|| {
                (0..total as u64)
                    .into_par_iter()
                    .find_first(|&idx| fails(&decode_assignment(idx as u128, carrier, t)))
            })?;
            Ok(IdentityCheck {
                counterexample: failing.map(|idx| decode_assignment(idx as u128, carrier, t)),
                exhaustive: true,
                assignments_checked: failing.map_or(total, |idx| idx as u128 + 1),
            })
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(LIFTED_SAMPLE_SEED);
            let draws: Vec<Vec<Symbol>> = (0..LIFTED_SAMPLE_COUNT)
                .map(|_| (0..t).map(|_| Symbol::new(rng.gen_range(0..carrier) as usize)).collect())
                .collect();
            let failing = config.install(|| draws.par_iter().position_first(|a| fails(a)))?;
            Ok(IdentityCheck {
                counterexample: failing.map(|i| draws[i].clone()),
                exhaustive: false,
                assignments_checked: failing.map_or(LIFTED_SAMPLE_COUNT as u128, |i| i as u128 + 1),
            })
        }
    }
}

/// Identities used when checking preservation across the lift.
pub fn binary_identity_catalog() -> Vec<(&'static str, Term, Term)> {
    [
        ("commutativity", "{x1,x2} = {x2,x1}"),
        ("associativity", "{{x1,x2},x3} = {x1,{x2,x3}}"),
        ("idempotence", "{x1,x1} = x1"),
        ("mediality", "{{x1,x2},{x3,x4}} = {{x1,x3},{x2,x4}}"),
        ("left self-distributivity", "{x1,{x2,x3}} = {{x1,x2},{x1,x3}}"),
        ("left projection law", "{x1,x2} = x1"),
    ]
    .into_iter()
    .map(|(name, text)| {
        let (l, r) = parse_identity(text, 2).expect("catalog identity parses");
        (name, l, r)
    })
    .collect()
}
