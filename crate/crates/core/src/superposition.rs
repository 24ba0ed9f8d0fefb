//! The superposition operator `⊙_f` and the products built from it.
//!
//! `superpose(f, [g_1, …, g_m])` evaluates `f(g_1(ā), …, g_m(ā))` pointwise.
//! With a binary quasigroup `f` this is the Hadamard quasigroup product of
//! two Cayley tables. Lifting `f` materialises `⊙_f` as an m-ary operation on
//! the canonical enumeration of `Ω_n(X)`.

use std::borrow::Borrow;
use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::config::SearchConfig;
use crate::error::{Error, Result};
use crate::hypercube::{
    all_operations, operation_count, table_len, MultaryOperation, OperationIndex, Symbol,
};

pub fn constant_map(arity: usize, order: usize, c: Symbol) -> Result<MultaryOperation> {
    MultaryOperation::constant(arity, order, c)
}

pub(crate) fn check_same_order(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::OrderMismatch { expected, found });
    }
    Ok(())
}

/// `⊙_f(g_1, …, g_m)`.
pub fn superpose<G: Borrow<MultaryOperation>>(f: &MultaryOperation, gs: &[G]) -> Result<MultaryOperation> {
    if gs.len() != f.arity() {
        return Err(Error::ArityMismatch {
            expected: f.arity(),
            found: gs.len(),
        });
    }
    let first = gs[0].borrow();
    for g in gs {
        let g = g.borrow();
        check_same_order(f.order(), g.order())?;
        if g.arity() != first.arity() {
            return Err(Error::ArityMismatch {
                expected: first.arity(),
                found: g.arity(),
            });
        }
    }
    let n = f.order();
    let outer = f.table();
    let components: Vec<&[Symbol]> = gs.iter().map(|g| g.borrow().table()).collect();
    let table = (0..first.len())
        .map(|k| {
            let flat = components.iter().fold(0, |acc, t| acc * n + t[k].index());
            outer[flat]
        })
        .collect();
    Ok(MultaryOperation::from_parts_unchecked(first.arity(), n, table))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HadamardProduct {
    pub product: MultaryOperation,
    /// Whether the outer operation is a quasigroup, i.e. whether the result
    /// is a Hadamard quasigroup product and not just a superposition.
    pub certified: bool,
}

/// `(A ⊙_⋆ B)[a, b] = ⋆(A[a, b], B[a, b])`.
pub fn hadamard_product(
    star: &MultaryOperation,
    a: &MultaryOperation,
    b: &MultaryOperation,
) -> Result<HadamardProduct> {
    for op in [star, a, b] {
        if op.arity() != 2 {
            return Err(Error::ArityMismatch {
                expected: 2,
                found: op.arity(),
            });
        }
    }
    Ok(HadamardProduct {
        product: superpose(star, &[a, b])?,
        certified: star.is_quasigroup(),
    })
}

fn binary_pair(x: &MultaryOperation, y: &MultaryOperation) -> Result<()> {
    for op in [x, y] {
        if op.arity() != 2 {
            return Err(Error::ArityMismatch {
                expected: 2,
                found: op.arity(),
            });
        }
    }
    check_same_order(x.order(), y.order())
}

/// `(a * b) ⋆ b`.
pub fn tri_right(asterisk: &MultaryOperation, star: &MultaryOperation) -> Result<MultaryOperation> {
    binary_pair(asterisk, star)?;
    let right = MultaryOperation::projection(2, star.order(), 1)?;
    superpose(star, &[asterisk, &right])
}

/// `(a * b) ⋆ (b * a)`.
pub fn tri_symmetric(asterisk: &MultaryOperation, star: &MultaryOperation) -> Result<MultaryOperation> {
    binary_pair(asterisk, star)?;
    let swapped = asterisk.transpose()?;
    superpose(star, &[asterisk, &swapped])
}

/// `f + g = ⊙_f(g, …, g)` for `f`, `g` of the same arity.
pub fn self_superpose(f: &MultaryOperation, g: &MultaryOperation) -> Result<MultaryOperation> {
    if f.arity() != g.arity() {
        return Err(Error::ArityMismatch {
            expected: f.arity(),
            found: g.arity(),
        });
    }
    check_same_order(f.order(), g.order())?;
    let copies = vec![g; f.arity()];
    superpose(f, &copies)
}

/// `(Ω_n(X), ⊙_f)` with carrier symbols equal to canonical indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedGroupoid {
    base_order: usize,
    component_arity: usize,
    table: MultaryOperation,
}

impl LiftedGroupoid {
    pub fn base_order(&self) -> usize {
        self.base_order
    }

    pub fn component_arity(&self) -> usize {
        self.component_arity
    }

    pub fn carrier_size(&self) -> usize {
        self.table.order()
    }

    pub fn operation(&self) -> &MultaryOperation {
        &self.table
    }

    pub fn into_operation(self) -> MultaryOperation {
        self.table
    }

    /// The component operation a carrier symbol stands for.
    pub fn element(&self, s: Symbol) -> Result<MultaryOperation> {
        MultaryOperation::from_index(self.component_arity, self.base_order, OperationIndex(s.index() as u128))
    }

    /// Carrier symbol of a component operation.
    pub fn symbol_of(&self, g: &MultaryOperation) -> Result<Symbol> {
        if g.arity() != self.component_arity {
            return Err(Error::ArityMismatch {
                expected: self.component_arity,
                found: g.arity(),
            });
        }
        check_same_order(self.base_order, g.order())?;
        Ok(Symbol::new(g.canonical_index()?.value() as usize))
    }

    /// Table rows with `g_k` labels, one row per line.
    pub fn render_labels(&self) -> String {
        let mut out = String::new();
        for row in self.table.table().chunks(self.table.order()) {
            let labels: Vec<String> = row
                .iter()
                .map(|s| OperationIndex(s.index() as u128).label())
                .collect();
            out.push_str(&labels.join(" "));
            out.push('\n');
        }
        out
    }
}

const MAX_LIFT_ARITY: usize = 16;

pub fn lift_operation(f: &MultaryOperation, component_arity: usize) -> Result<LiftedGroupoid> {
    lift_operation_with(f, component_arity, &SearchConfig::default())
}

pub fn lift_operation_with(
    f: &MultaryOperation,
    component_arity: usize,
    config: &SearchConfig,
) -> Result<LiftedGroupoid> {
    let q = f.order();
    let points = table_len(component_arity, q)?;
    let carrier = operation_count(component_arity, q)
        .filter(|&c| c <= config.limits.lifted_carrier as u128)
        .ok_or_else(|| {
            Error::capacity(format!(
                "Ω_{component_arity} over {q} symbols exceeds the lifted-carrier cap of {}",
                config.limits.lifted_carrier
            ))
        })? as usize;
    let m = f.arity();
    let entries = carrier
        .checked_pow(m as u32)
        .filter(|&e| e <= config.limits.table_entries)
        .ok_or_else(|| Error::capacity(format!("lifted table of {carrier}^{m} entries is too large")))?;

    if m > MAX_LIFT_ARITY {
        return Err(Error::capacity(format!("lifting supports arity up to {MAX_LIFT_ARITY}")));
    }

    let elements: Vec<Vec<Symbol>> = all_operations(component_arity, q)?
        .map(MultaryOperation::into_table)
        .collect();
    let outer = f.table();
    let compute = |cell: usize| -> Symbol {
        let mut parts = [0usize; MAX_LIFT_ARITY];
        let parts = &mut parts[..m];
        let mut rest = cell;
        for slot in parts.iter_mut().rev() {
            *slot = rest % carrier;
            rest /= carrier;
        }
        let mut index = 0usize;
        for k in 0..points {
            let flat = parts.iter().fold(0, |acc, &p| acc * q + elements[p][k].index());
            index = index * q + outer[flat].index();
        }
        Symbol::new(index)
    };
    let table: Vec<Symbol> = config.install(|| (0..entries).into_par_iter().map(compute).collect())?;
    Ok(LiftedGroupoid {
        base_order: q,
        component_arity,
        table: MultaryOperation::from_parts_unchecked(m, carrier, table),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Distributivity {
    /// `a*(b⋆c) = (a*b)⋆(a*c)` only.
    Left,
    /// Left and right distributivity.
    Both,
}

pub fn is_distributive_over(
    asterisk: &MultaryOperation,
    star: &MultaryOperation,
    side: Distributivity,
) -> Result<bool> {
    binary_pair(asterisk, star)?;
    Ok(distributes(asterisk.table(), star.table(), star.order(), side))
}

fn distributes(ast: &[Symbol], star: &[Symbol], n: usize, side: Distributivity) -> bool {
    let op = |t: &[Symbol], x: Symbol, y: Symbol| t[x.index() * n + y.index()];
    for a in (0..n).map(Symbol::new) {
        for b in (0..n).map(Symbol::new) {
            for c in (0..n).map(Symbol::new) {
                if op(ast, a, op(star, b, c)) != op(star, op(ast, a, b), op(ast, a, c)) {
                    return false;
                }
                if side == Distributivity::Both
                    && op(ast, op(star, a, b), c) != op(star, op(ast, a, c), op(ast, b, c))
                {
                    return false;
                }
            }
        }
    }
    true
}

/// Every binary operation distributive over `star`, in canonical order.
pub fn mult_set(star: &MultaryOperation, side: Distributivity) -> Result<Vec<MultaryOperation>> {
    mult_set_with(star, side, &SearchConfig::default())
}

pub fn mult_set_with(
    star: &MultaryOperation,
    side: Distributivity,
    config: &SearchConfig,
) -> Result<Vec<MultaryOperation>> {
    if star.arity() != 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            found: star.arity(),
        });
    }
    let n = star.order();
    let count = operation_count(2, n);
    config.check_enumeration("Mult set scan", count)?;
    let count = count.unwrap();
    let hits: Vec<u128> = config.install(|| {
        (0..count as u64)
            .into_par_iter()
            .filter(|&idx| {
                let candidate = MultaryOperation::from_index(2, n, OperationIndex(idx as u128)).unwrap();
                distributes(candidate.table(), star.table(), n, side)
            })
            .map(|idx| idx as u128)
            .collect()
    })?;
    hits.into_iter()
        .map(|idx| MultaryOperation::from_index(2, n, OperationIndex(idx)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HadamardCycle {
    /// Steps before the orbit enters its cycle.
    pub preperiod: usize,
    pub period: usize,
    /// `h_0 = ⋆, h_1, …` up to, not including, the first repeated term.
    pub trajectory: Vec<MultaryOperation>,
}

impl HadamardCycle {
    pub fn indices(&self) -> Result<Vec<OperationIndex>> {
        self.trajectory.iter().map(|h| h.canonical_index()).collect()
    }
}

/// Orbit of `h_0 = ⋆`, `h_{k+1} = ⊙_⋆(h_k, h_k)`.
pub fn iterate_hadamard_cycle(star: &MultaryOperation) -> Result<HadamardCycle> {
    iterate_hadamard_cycle_with(star, &SearchConfig::default())
}

pub fn iterate_hadamard_cycle_with(star: &MultaryOperation, config: &SearchConfig) -> Result<HadamardCycle> {
    if star.arity() != 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            found: star.arity(),
        });
    }
    if !star.is_quasigroup() {
        return Err(Error::NotAQuasigroup);
    }
    let mut seen: HashMap<MultaryOperation, usize> = HashMap::new();
    let mut trajectory = Vec::new();
    let mut current = star.clone();
    loop {
        if let Some(&first) = seen.get(&current) {
            return Ok(HadamardCycle {
                preperiod: first,
                period: trajectory.len() - first,
                trajectory,
            });
        }
        if trajectory.len() as u128 >= config.limits.enumeration {
            return Err(Error::capacity("Hadamard orbit longer than the enumeration guard"));
        }
        seen.insert(current.clone(), trajectory.len());
        let next = superpose(star, &[&current, &current])?;
        trajectory.push(std::mem::replace(&mut current, next));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercube::{operation_count, symbols, tuples};
    use crate::io::load_fixture;

    fn g(k: u128) -> MultaryOperation {
        MultaryOperation::from_index(2, 2, OperationIndex(k - 1)).unwrap()
    }

    fn zn(n: usize, f: impl Fn(usize, usize) -> usize) -> MultaryOperation {
        MultaryOperation::from_fn(2, n, |a| Symbol::new(f(a[0].index(), a[1].index()) % n)).unwrap()
    }

    fn proj_l(n: usize) -> MultaryOperation {
        MultaryOperation::projection(2, n, 0).unwrap()
    }

    #[test]
    fn constant_map_examples() {
        assert_eq!(constant_map(2, 2, Symbol::new(0)).unwrap(), g(1));
        assert_eq!(constant_map(2, 2, Symbol::new(1)).unwrap(), g(16));
        let c = constant_map(3, 4, Symbol::new(2)).unwrap();
        assert_eq!(c.image().into_iter().collect::<Vec<_>>(), vec![Symbol::new(2)]);
        assert!(matches!(constant_map(2, 2, Symbol::new(2)), Err(Error::SymbolOutOfRange { .. })));
    }

    #[test]
    fn superpose_examples() {
        assert_eq!(superpose(&g(7), &[g(2), g(3)]).unwrap(), g(4));
        for h in all_operations(2, 2).unwrap() {
            for k in all_operations(2, 2).unwrap() {
                assert_eq!(superpose(&proj_l(2), &[&h, &k]).unwrap(), h);
            }
        }
        assert!(matches!(superpose(&g(7), &[g(2)]), Err(Error::ArityMismatch { .. })));
        let wrong_order = zn(3, |a, b| a + b);
        assert!(matches!(
            superpose(&g(7), &[g(2), wrong_order]),
            Err(Error::OrderMismatch { .. })
        ));
        let unary = MultaryOperation::projection(1, 2, 0).unwrap();
        assert!(matches!(superpose(&g(7), &[g(2), unary]), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn embedding_of_constants() {
        for (m, n) in [(2usize, 2usize), (2, 3), (3, 2), (3, 3)] {
            let count = operation_count(m, n).unwrap();
            let step = (count / 4096).max(1);
            for idx in (0..count).step_by(step as usize) {
                let f = MultaryOperation::from_index(m, n, OperationIndex(idx)).unwrap();
                for cs in tuples(m, n) {
                    for component_arity in 1..=2 {
                        let gammas: Vec<_> = cs
                            .iter()
                            .map(|&c| constant_map(component_arity, n, c).unwrap())
                            .collect();
                        assert_eq!(
                            superpose(&f, &gammas).unwrap(),
                            constant_map(component_arity, n, f.at(&cs)).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn hadamard_examples() {
        let star = load_fixture("example-5.2-star").unwrap();
        let circ = load_fixture("example-5.2-circ").unwrap();
        let h = hadamard_product(&star, &star, &star.transpose().unwrap()).unwrap();
        assert!(h.certified);
        assert_eq!(h.product, circ);
        let back = hadamard_product(&star, &circ, &circ.transpose().unwrap()).unwrap();
        // ∘(a,b) = b, so this is b ⋆ a
        assert_eq!(back.product, star.transpose().unwrap());
        for c in 0..5 {
            let gamma = constant_map(2, 5, Symbol::new(c)).unwrap();
            let p = hadamard_product(&star, &gamma, &gamma).unwrap().product;
            assert_eq!(p, constant_map(2, 5, star.at(&[Symbol::new(c), Symbol::new(c)])).unwrap());
        }
        let not_latin = hadamard_product(&g(1), &g(7), &g(7)).unwrap();
        assert!(!not_latin.certified);
        assert_eq!(not_latin.product, g(1));
    }

    #[test]
    fn hadamard_equals_superpose() {
        for s in all_operations(2, 2).unwrap() {
            for a in all_operations(2, 2).unwrap() {
                for b in all_operations(2, 2).unwrap() {
                    assert_eq!(hadamard_product(&s, &a, &b).unwrap().product, superpose(&s, &[&a, &b]).unwrap());
                }
            }
        }
    }

    #[test]
    fn tri_right_examples() {
        for star in all_operations(2, 2).unwrap() {
            assert_eq!(tri_right(&proj_l(2), &star).unwrap(), star);
            assert_eq!(tri_right(&star, &proj_l(2)).unwrap(), star);
        }
        // g_7(g_7(a,b),b) = a
        assert_eq!(tri_right(&g(7), &g(7)).unwrap(), g(4));
        assert!(matches!(tri_right(&g(7), &zn(3, |a, b| a + b)), Err(Error::OrderMismatch { .. })));
    }

    #[test]
    fn tri_right_is_a_monoid_with_left_projection() {
        let all: Vec<_> = all_operations(2, 2).unwrap().collect();
        for x in &all {
            for y in &all {
                let xy = tri_right(x, y).unwrap();
                for z in &all {
                    assert_eq!(
                        tri_right(&xy, z).unwrap(),
                        tri_right(x, &tri_right(y, z).unwrap()).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn tri_symmetric_examples() {
        for star in all_operations(2, 2).unwrap() {
            assert_eq!(tri_symmetric(&proj_l(2), &star).unwrap(), star);
        }
        assert_eq!(tri_symmetric(&g(7), &g(7)).unwrap(), g(1));
        assert!(matches!(tri_symmetric(&g(7), &zn(3, |a, b| a + b)), Err(Error::OrderMismatch { .. })));
    }

    #[test]
    fn self_superpose_examples() {
        assert_eq!(self_superpose(&g(7), &g(1)).unwrap(), g(1));
        for h in all_operations(2, 2).unwrap() {
            assert_eq!(self_superpose(&proj_l(2), &h).unwrap(), h);
        }
        let all: Vec<_> = all_operations(2, 2).unwrap().collect();
        for f in &all {
            for g_ in &all {
                let fg = self_superpose(f, g_).unwrap();
                for h in &all {
                    assert_eq!(
                        self_superpose(&fg, h).unwrap(),
                        self_superpose(f, &self_superpose(g_, h).unwrap()).unwrap()
                    );
                }
            }
        }
        assert!(matches!(
            self_superpose(&g(7), &MultaryOperation::projection(3, 2, 0).unwrap()),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn self_superpose_associative_sampled_order_three() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        let count = operation_count(2, 3).unwrap();
        let mut pick = || MultaryOperation::from_index(2, 3, OperationIndex(rng.gen_range(0..count))).unwrap();
        for _ in 0..2000 {
            let (f, g_, h) = (pick(), pick(), pick());
            assert_eq!(
                self_superpose(&self_superpose(&f, &g_).unwrap(), &h).unwrap(),
                self_superpose(&f, &self_superpose(&g_, &h).unwrap()).unwrap()
            );
        }
    }

    #[test]
    fn lift_g7_is_xor_of_indices() {
        let lifted = lift_operation(&g(7), 2).unwrap();
        assert_eq!(lifted.carrier_size(), 16);
        for i in 0..16 {
            for j in 0..16 {
                assert_eq!(lifted.operation().at(&[Symbol::new(i), Symbol::new(j)]), Symbol::new(i ^ j));
            }
        }
        assert!(lifted.operation().is_quasigroup());
        assert!(lifted.render_labels().starts_with("g_1 g_2 g_3"));
    }

    #[test]
    fn lift_constant_is_constant() {
        let lifted = lift_operation(&g(1), 2).unwrap();
        assert!(lifted.operation().table().iter().all(|s| s.index() == 0));
    }

    #[test]
    fn lift_cell_matches_superpose() {
        let f = load_fixture("example-3.3-star").unwrap();
        let lifted = lift_operation(&f, 1).unwrap();
        for i in 0..27 {
            for j in 0..27 {
                let gi = lifted.element(Symbol::new(i)).unwrap();
                let gj = lifted.element(Symbol::new(j)).unwrap();
                let expected = lifted.symbol_of(&superpose(&f, &[gi, gj]).unwrap()).unwrap();
                assert_eq!(lifted.operation().at(&[Symbol::new(i), Symbol::new(j)]), expected);
            }
        }
    }

    #[test]
    fn lift_capacity() {
        let z3 = zn(3, |a, b| a + b);
        assert!(matches!(lift_operation(&z3, 2), Err(Error::CapacityExceeded(_))));
        let mut config = SearchConfig::default();
        config.limits.lifted_carrier = 8;
        assert!(matches!(lift_operation_with(&g(7), 2, &config), Err(Error::CapacityExceeded(_))));
    }

    #[test]
    fn lift_is_independent_of_jobs() {
        let f = load_fixture("example-3.3-star").unwrap();
        let one = lift_operation_with(&f, 1, &SearchConfig::with_jobs(1)).unwrap();
        let four = lift_operation_with(&f, 1, &SearchConfig::with_jobs(4)).unwrap();
        assert_eq!(one, four);
    }

    #[test]
    fn distributivity_examples() {
        let add = zn(3, |a, b| a + b);
        let zero = constant_map(2, 3, Symbol::new(0)).unwrap();
        let mul = zn(3, |a, b| a * b);
        assert!(is_distributive_over(&zero, &add, Distributivity::Both).unwrap());
        assert!(is_distributive_over(&mul, &add, Distributivity::Both).unwrap());
        assert!(!is_distributive_over(&proj_l(3), &add, Distributivity::Left).unwrap());
        // 27-triple oracle for the multiplication case
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    assert_eq!(a * ((b + c) % 3) % 3, (a * b + a * c) % 3);
                }
            }
        }
        // a = 1 (symbol 2), b = c = 0: 1 * 0 = 1 but (1*0)+(1*0) = 2
        let triple = symbols(&[2, 1, 1]);
        let p = &proj_l(3);
        assert_ne!(
            p.at(&[triple[0], add.at(&[triple[1], triple[2]])]),
            add.at(&[p.at(&[triple[0], triple[1]]), p.at(&[triple[0], triple[2]])])
        );
        assert!(matches!(
            is_distributive_over(&g(7), &add, Distributivity::Both),
            Err(Error::OrderMismatch { .. })
        ));
    }

    #[test]
    fn mult_set_examples() {
        let add = zn(3, |a, b| a + b);
        let both = mult_set(&add, Distributivity::Both).unwrap();
        let expected: Vec<_> = (0..3).map(|l| zn(3, move |a, b| l * a * b)).collect();
        let mut sorted = expected.clone();
        sorted.sort_by_key(|o| o.canonical_index().unwrap());
        assert_eq!(both, sorted);
        assert_eq!(mult_set(&add, Distributivity::Left).unwrap().len(), 27);
        let z2 = mult_set(&g(7), Distributivity::Both).unwrap();
        assert_eq!(z2, vec![g(1), g(2)]);
        let z4 = zn(4, |a, b| a + b);
        assert!(matches!(mult_set(&z4, Distributivity::Both), Err(Error::CapacityExceeded(_))));
    }

    #[test]
    fn mult_set_matches_plain_filter() {
        let add = zn(3, |a, b| a + b);
        for side in [Distributivity::Left, Distributivity::Both] {
            let oracle: Vec<_> = all_operations(2, 3)
                .unwrap()
                .filter(|c| is_distributive_over(c, &add, side).unwrap())
                .collect();
            assert_eq!(mult_set_with(&add, side, &SearchConfig::with_jobs(3)).unwrap(), oracle);
        }
    }

    #[test]
    fn hadamard_cycle_z2() {
        let cycle = iterate_hadamard_cycle(&g(7)).unwrap();
        assert_eq!(cycle.preperiod, 1);
        assert_eq!(cycle.period, 1);
        assert_eq!(cycle.trajectory, vec![g(7), g(1)]);
        assert_eq!(cycle.indices().unwrap(), vec![OperationIndex(6), OperationIndex(0)]);
    }

    #[test]
    fn hadamard_cycle_z3() {
        let add = zn(3, |a, b| a + b);
        let cycle = iterate_hadamard_cycle(&add).unwrap();
        // h_k(a, b) = 2^k (a + b) mod 3
        for (k, h) in cycle.trajectory.iter().enumerate() {
            let factor = 2usize.pow(k as u32) % 3;
            assert_eq!(h, &zn(3, move |a, b| factor * (a + b)));
        }
        assert_eq!((cycle.preperiod, cycle.period), (0, 2));
    }

    #[test]
    fn hadamard_cycle_requires_quasigroup() {
        assert_eq!(iterate_hadamard_cycle(&g(1)), Err(Error::NotAQuasigroup));
    }
}
