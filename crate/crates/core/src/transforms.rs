//! Isotopisms, conjugates and small-order isomorphism search.

use std::fmt;

use crate::error::{Error, Result};
use crate::hypercube::{advance_tuple, MultaryOperation, Symbol};
use crate::superposition::check_same_order;

/// A permutation of `{0, …, k-1}` in one-line form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// 0-based images.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut hit = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || hit[i] {
                return Err(Error::NotAPermutation(format!("{:?}", to_one_based(&images))));
            }
            hit[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::NotAPermutation(format!("{images:?}")));
        }
        Permutation::from_images(images.iter().map(|&v| v - 1).collect())
    }

    /// Product of 1-based cycles; points not mentioned are fixed.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p == 0 || p > degree || touched[p - 1] {
                    return Err(Error::NotAPermutation(format!("cycle {cycle:?} on {degree} points")));
                }
                touched[p - 1] = true;
                images[p - 1] = cycle[(k + 1) % cycle.len()] - 1;
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    #[inline]
    pub fn apply_symbol(&self, s: Symbol) -> Symbol {
        Symbol::new(self.images[s.index()])
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Permutation { images: inv }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Self {
        Permutation {
            images: other.images.iter().map(|&y| self.images[y]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &y)| i == y)
    }

    /// Disjoint cycles of length ≥ 2, 1-based.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn all(degree: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (0..degree).collect();
        permutations_rec(&mut current, 0, &mut out);
        out.sort();
        out
    }
}

fn permutations_rec(v: &mut Vec<usize>, k: usize, out: &mut Vec<Permutation>) {
    if k == v.len() {
        out.push(Permutation { images: v.clone() });
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations_rec(v, k + 1, out);
        v.swap(k, i);
    }
}

fn to_one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|x| x + 1).collect()
}

/// Cycle notation, `()` for the identity.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// `m + 1` symbol permutations `(π_1, …, π_{m+1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isotopism {
    maps: Vec<Permutation>,
}

impl Isotopism {
    pub fn new(maps: Vec<Permutation>) -> Result<Self> {
        if maps.len() < 2 {
            return Err(Error::ArityMismatch {
                expected: 2,
                found: maps.len(),
            });
        }
        let degree = maps[0].degree();
        if let Some(bad) = maps.iter().find(|p| p.degree() != degree) {
            return Err(Error::OrderMismatch {
                expected: degree,
                found: bad.degree(),
            });
        }
        Ok(Isotopism { maps })
    }

    /// The same permutation in every coordinate.
    pub fn isomorphism(pi: Permutation, arity: usize) -> Self {
        Isotopism {
            maps: vec![pi; arity + 1],
        }
    }

    pub fn maps(&self) -> &[Permutation] {
        &self.maps
    }
}

/// `g` with `g(π_1(a_1), …, π_m(a_m)) = π_{m+1}(f(a_1, …, a_m))`.
pub fn apply_isotopism(op: &MultaryOperation, iso: &Isotopism) -> Result<MultaryOperation> {
    let m = op.arity();
    if iso.maps.len() != m + 1 {
        return Err(Error::ArityMismatch {
            expected: m + 1,
            found: iso.maps.len(),
        });
    }
    check_same_order(op.order(), iso.maps[0].degree())?;
    let inverses: Vec<Permutation> = iso.maps[..m].iter().map(Permutation::inverse).collect();
    let outer = &iso.maps[m];
    let mut pre = vec![Symbol::default(); m];
    MultaryOperation::from_fn(m, op.order(), |b| {
        for (slot, (x, inv)) in pre.iter_mut().zip(b.iter().zip(&inverses)) {
            *slot = inv.apply_symbol(*x);
        }
        outer.apply_symbol(op.at(&pre))
    })
}

/// `π ∘ op`, every table entry remapped.
pub fn post_compose(op: &MultaryOperation, pi: &Permutation) -> Result<MultaryOperation> {
    check_same_order(op.order(), pi.degree())?;
    let table = op.table().iter().map(|&s| pi.apply_symbol(s)).collect();
    MultaryOperation::from_table(op.arity(), op.order(), table)
}

/// A permutation of the `m + 1` argument/result positions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConjugationPerm(Permutation);

impl ConjugationPerm {
    pub fn new(perm: Permutation) -> Self {
        ConjugationPerm(perm)
    }

    pub fn identity(arity: usize) -> Self {
        ConjugationPerm(Permutation::identity(arity + 1))
    }

    pub fn permutation(&self) -> &Permutation {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        ConjugationPerm(self.0.inverse())
    }

    /// All `(m+1)!` position permutations.
    pub fn all(arity: usize) -> Vec<ConjugationPerm> {
        Permutation::all(arity + 1).into_iter().map(ConjugationPerm).collect()
    }

    pub fn fixes_result(&self) -> bool {
        let last = self.0.degree() - 1;
        self.0.apply(last) == last
    }
}

impl fmt::Display for ConjugationPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The `σ`-conjugate: `g(a_σ(1), …, a_σ(m)) = a_σ(m+1)` exactly when
/// `f(a_1, …, a_m) = a_{m+1}`.
///
/// Fails with [`Error::NotTotal`] when some cell of `g` receives no value
/// (checked first), and with [`Error::NotFunctional`] when a cell receives
/// two.
pub fn conjugate(op: &MultaryOperation, sigma: &ConjugationPerm) -> Result<MultaryOperation> {
    let m = op.arity();
    let perm = &sigma.0;
    if perm.degree() != m + 1 {
        return Err(Error::ArityMismatch {
            expected: m + 1,
            found: perm.degree(),
        });
    }
    let n = op.order();
    let mut target: Vec<Option<Symbol>> = vec![None; op.len()];
    let mut conflict: Option<Vec<usize>> = None;
    let mut graph = vec![Symbol::default(); m + 1];
    let mut args = vec![Symbol::default(); m];
    for k in 0..op.len() {
        graph[..m].copy_from_slice(&args);
        graph[m] = op.table()[k];
        let cell = (0..m).fold(0, |acc, j| acc * n + graph[perm.apply(j)].index());
        let value = graph[perm.apply(m)];
        match target[cell] {
            None => target[cell] = Some(value),
            Some(v) if v != value && conflict.is_none() => {
                conflict = Some(graph.iter().map(|s| s.one_based()).collect());
            }
            Some(_) => {}
        }
        advance_tuple(&mut args, n);
    }
    if let Some(missing) = target.iter().position(Option::is_none) {
        return Err(Error::NotTotal {
            cell: op.decode(missing).iter().map(|s| s.one_based()).collect(),
        });
    }
    if let Some(tuple) = conflict {
        return Err(Error::NotFunctional { tuple });
    }
    let table = target.into_iter().map(Option::unwrap).collect();
    MultaryOperation::from_table(m, n, table)
}

/// `b(π(a_1), …, π(a_m)) = π(a(a_1, …, a_m))` for every tuple.
pub fn is_isomorphism(a: &MultaryOperation, b: &MultaryOperation, pi: &Permutation) -> bool {
    a.arity() == b.arity()
        && a.order() == b.order()
        && pi.degree() == a.order()
        && apply_isotopism(a, &Isotopism::isomorphism(pi.clone(), a.arity()))
            .map(|image| &image == b)
            .unwrap_or(false)
}

pub fn find_isomorphism(a: &MultaryOperation, b: &MultaryOperation) -> Result<Option<Permutation>> {
    find_isomorphism_with_guard(a, b, crate::config::DEFAULT_ISOMORPHISM_ORDER)
}

/// Backtracking over symbol images in increasing order; each assignment
/// forces `π(a(t)) = b(π t)` for every tuple `t` whose arguments are all
/// mapped. The first witness found is verified and returned.
pub fn find_isomorphism_with_guard(
    a: &MultaryOperation,
    b: &MultaryOperation,
    max_order: usize,
) -> Result<Option<Permutation>> {
    if a.arity() != b.arity() {
        return Err(Error::ArityMismatch {
            expected: a.arity(),
            found: b.arity(),
        });
    }
    check_same_order(a.order(), b.order())?;
    if a.order() > max_order {
        return Err(Error::capacity(format!(
            "isomorphism search is limited to order {max_order}"
        )));
    }
    let mut search = IsoSearch {
        a,
        b,
        forward: vec![None; a.order()],
        backward: vec![None; a.order()],
        trail: Vec::new(),
    };
    if !search.solve(0) {
        return Ok(None);
    }
    let pi = Permutation::from_images(search.forward.iter().map(|x| x.unwrap()).collect())?;
    debug_assert!(is_isomorphism(a, b, &pi));
    Ok(is_isomorphism(a, b, &pi).then_some(pi))
}

struct IsoSearch<'a> {
    a: &'a MultaryOperation,
    b: &'a MultaryOperation,
    forward: Vec<Option<usize>>,
    backward: Vec<Option<usize>>,
    trail: Vec<usize>,
}

impl IsoSearch<'_> {
    fn solve(&mut self, x: usize) -> bool {
        let n = self.a.order();
        if x == n {
            return true;
        }
        if self.forward[x].is_some() {
            return self.solve(x + 1);
        }
        for y in 0..n {
            if self.backward[y].is_some() {
                continue;
            }
            let mark = self.trail.len();
            if self.assign(x, y) && self.propagate() && self.solve(x + 1) {
                return true;
            }
            self.undo(mark);
        }
        false
    }

    fn assign(&mut self, x: usize, y: usize) -> bool {
        match (self.forward[x], self.backward[y]) {
            (Some(cur), _) => cur == y,
            (None, Some(_)) => false,
            (None, None) => {
                self.forward[x] = Some(y);
                self.backward[y] = Some(x);
                self.trail.push(x);
                true
            }
        }
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let x = self.trail.pop().unwrap();
            let y = self.forward[x].take().unwrap();
            self.backward[y] = None;
        }
    }

    /// Forces images until nothing changes; false on contradiction.
    fn propagate(&mut self) -> bool {
        let m = self.a.arity();
        let mut mapped = vec![Symbol::default(); m];
        loop {
            let mut changed = false;
            for (k, &value) in self.a.table().iter().enumerate() {
                let args = self.a.decode(k);
                let mut complete = true;
                for (slot, arg) in mapped.iter_mut().zip(&args) {
                    match self.forward[arg.index()] {
                        Some(y) => *slot = Symbol::new(y),
                        None => {
                            complete = false;
                            break;
                        }
                    }
                }
                if !complete {
                    continue;
                }
                let want = self.b.at(&mapped).index();
                match self.forward[value.index()] {
                    Some(y) if y != want => return false,
                    Some(_) => {}
                    None => {
                        if !self.assign(value.index(), want) {
                            return false;
                        }
                        changed = true;
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercube::{all_operations, OperationIndex};
    use crate::io::load_fixture;

    fn g(k: u128) -> MultaryOperation {
        MultaryOperation::from_index(2, 2, OperationIndex(k - 1)).unwrap()
    }

    fn swap2() -> Permutation {
        Permutation::from_one_based(&[2, 1]).unwrap()
    }

    #[test]
    fn permutation_basics() {
        let p = Permutation::from_cycles(5, &[vec![2, 3, 5]]).unwrap();
        assert_eq!(p.images(), &[0, 2, 4, 3, 1]);
        assert_eq!(p.to_string(), "(2 3 5)");
        assert_eq!(p.compose(&p.inverse()), Permutation::identity(5));
        assert!(Permutation::from_one_based(&[1, 1, 2]).is_err());
        assert!(Permutation::from_cycles(3, &[vec![1, 4]]).is_err());
        assert!(Permutation::from_cycles(3, &[vec![1, 2], vec![2, 3]]).is_err());
        assert_eq!(Permutation::all(3).len(), 6);
        assert_eq!(Permutation::identity(3).to_string(), "()");
    }

    #[test]
    fn identity_isotopism() {
        let star = load_fixture("example-5.2-star").unwrap();
        let id = Isotopism::isomorphism(Permutation::identity(5), 2);
        assert_eq!(apply_isotopism(&star, &id).unwrap(), star);
    }

    #[test]
    fn example_five_two_isomorphism() {
        let star = load_fixture("example-5.2-star").unwrap();
        let bullet = load_fixture("example-5.2-bullet").unwrap();
        let p = Permutation::from_cycles(5, &[vec![2, 3, 5]]).unwrap();
        let iso = Isotopism::isomorphism(p.clone(), 2);
        assert_eq!(apply_isotopism(&star, &iso).unwrap(), bullet);
        assert!(is_isomorphism(&star, &bullet, &p));
        assert!(is_isomorphism(&bullet, &star, &p.inverse()));
        let found = find_isomorphism(&star, &bullet).unwrap().unwrap();
        assert!(is_isomorphism(&star, &bullet, &found));
    }

    #[test]
    fn isotopes_of_z2_are_quasigroups() {
        let perms = [Permutation::identity(2), swap2()];
        for p1 in &perms {
            for p2 in &perms {
                for p3 in &perms {
                    let iso = Isotopism::new(vec![p1.clone(), p2.clone(), p3.clone()]).unwrap();
                    let image = apply_isotopism(&g(7), &iso).unwrap();
                    assert!(image.is_quasigroup());
                    // definition restated
                    for a in 0..2 {
                        for b in 0..2 {
                            let (a, b) = (Symbol::new(a), Symbol::new(b));
                            assert_eq!(
                                image.at(&[p1.apply_symbol(a), p2.apply_symbol(b)]),
                                p3.apply_symbol(g(7).at(&[a, b]))
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn isotopism_errors() {
        let iso = Isotopism::isomorphism(Permutation::identity(2), 3);
        assert!(matches!(apply_isotopism(&g(7), &iso), Err(Error::ArityMismatch { .. })));
        let wrong = Isotopism::isomorphism(Permutation::identity(3), 2);
        assert!(matches!(apply_isotopism(&g(7), &wrong), Err(Error::OrderMismatch { .. })));
        assert!(Isotopism::new(vec![Permutation::identity(2), Permutation::identity(3)]).is_err());
    }

    #[test]
    fn post_compose_examples() {
        assert_eq!(post_compose(&g(4), &Permutation::identity(2)).unwrap(), g(4));
        assert_eq!(post_compose(&g(4), &swap2()).unwrap(), g(13));
        for op in all_operations(2, 2).unwrap() {
            let image: Vec<_> = op.image().into_iter().map(|s| swap2().apply_symbol(s)).collect();
            let mut image = image;
            image.sort();
            assert_eq!(post_compose(&op, &swap2()).unwrap().image().into_iter().collect::<Vec<_>>(), image);
        }
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(conjugate(&g(7), &ConjugationPerm::identity(2)).unwrap(), g(7));
        let swap13 = ConjugationPerm::new(Permutation::from_cycles(3, &[vec![1, 3]]).unwrap());
        assert_eq!(conjugate(&g(7), &swap13).unwrap(), g(7));
        assert!(matches!(conjugate(&g(1), &swap13), Err(Error::NotTotal { .. })));
        // transposition of the arguments gives the transpose
        let swap12 = ConjugationPerm::new(Permutation::from_cycles(3, &[vec![1, 2]]).unwrap());
        for op in all_operations(2, 2).unwrap() {
            assert_eq!(conjugate(&op, &swap12).unwrap(), op.transpose().unwrap());
        }
    }

    #[test]
    fn conjugate_oracle_from_relation() {
        // reference: build the permuted relation as a set and read it back
        for op in all_operations(2, 2).unwrap() {
            for sigma in ConjugationPerm::all(2) {
                let mut rel = Vec::new();
                for k in 0..op.len() {
                    let mut t: Vec<usize> = op.decode(k).iter().map(|s| s.index()).collect();
                    t.push(op.table()[k].index());
                    let p: Vec<usize> = (0..3).map(|j| t[sigma.permutation().apply(j)]).collect();
                    rel.push(p);
                }
                let mut cells = std::collections::BTreeMap::<(usize, usize), Vec<usize>>::new();
                for r in &rel {
                    cells.entry((r[0], r[1])).or_default().push(r[2]);
                }
                let functional = cells.len() == 4 && cells.values().all(|v| v.len() == 1);
                match conjugate(&op, &sigma) {
                    Ok(c) => {
                        assert!(functional);
                        for ((x, y), v) in cells {
                            assert_eq!(c.at(&[Symbol::new(x), Symbol::new(y)]).index(), v[0]);
                        }
                    }
                    Err(Error::NotTotal { .. } | Error::NotFunctional { .. }) => assert!(!functional),
                    Err(e) => panic!("{e}"),
                }
                if sigma.fixes_result() || op.is_quasigroup() {
                    assert!(functional);
                }
            }
        }
    }

    #[test]
    fn conjugate_inverse_roundtrip() {
        for op in all_operations(2, 3).unwrap().filter(|o| o.is_quasigroup()) {
            for sigma in ConjugationPerm::all(2) {
                let c = conjugate(&op, &sigma).unwrap();
                assert_eq!(conjugate(&c, &sigma.inverse()).unwrap(), op);
            }
        }
        let f = load_fixture("example-2.1-f").unwrap();
        for sigma in ConjugationPerm::all(3) {
            if let Ok(c) = conjugate(&f, &sigma) {
                assert_eq!(conjugate(&c, &sigma.inverse()).unwrap(), f);
            }
        }
    }

    #[test]
    fn find_isomorphism_examples() {
        let found = find_isomorphism(&g(7), &g(7)).unwrap().unwrap();
        assert!(is_isomorphism(&g(7), &g(7), &found));
        assert!(is_isomorphism(&g(7), &g(7), &Permutation::identity(2)));
        assert_eq!(find_isomorphism(&g(7), &g(1)).unwrap(), None);
        let big = MultaryOperation::constant(2, 13, Symbol::new(0)).unwrap();
        assert!(matches!(find_isomorphism(&big, &big), Err(Error::CapacityExceeded(_))));
    }

    #[test]
    fn find_isomorphism_agrees_with_brute_force() {
        let perms = Permutation::all(3);
        let ops: Vec<_> = all_operations(2, 3).unwrap().step_by(41).collect();
        for a in &ops {
            for pi in perms.iter().step_by(2) {
                let b = apply_isotopism(a, &Isotopism::isomorphism(pi.clone(), 2)).unwrap();
                let found = find_isomorphism(a, &b).unwrap().expect("isomorphic by construction");
                assert!(is_isomorphism(a, &b, &found));
                // deterministic: first witness in increasing image order
                let first = perms.iter().find(|p| is_isomorphism(a, &b, p)).unwrap();
                assert_eq!(&found, first);
            }
        }
    }
}
