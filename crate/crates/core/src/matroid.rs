//! Matroids given by their circuits.

use std::collections::BTreeSet;

use crate::elements::{subsets_of_size, Element, ElementOrder, ElementSet, MAX_GROUND_SIZE};
use crate::error::{Error, Result};

/// Above this ground-set size the circuit elimination axiom is not checked.
pub const ELIMINATION_CHECK_LIMIT: usize = 12;

/// Label bookkeeping for a minor: the minor's ground set is `1..=m` and
/// element `i` of the minor is element `old_of_new[i - 1]` of the parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabel {
    old_of_new: Vec<Element>,
    parent_size: usize,
}

impl Relabel {
    pub fn identity(n: usize) -> Self {
        Relabel {
            old_of_new: (1..=n).collect(),
            parent_size: n,
        }
    }

    /// Relabeling after removing `x` from `1..=n`.
    pub fn removing(n: usize, x: Element) -> Self {
        Relabel {
            old_of_new: (1..=n).filter(|&e| e != x).collect(),
            parent_size: n,
        }
    }

    pub fn len(&self) -> usize {
        self.old_of_new.len()
    }

    pub fn is_empty(&self) -> bool {
        self.old_of_new.is_empty()
    }

    pub fn parent_size(&self) -> usize {
        self.parent_size
    }

    pub fn to_old(&self, e: Element) -> Element {
        self.old_of_new[e - 1]
    }

    pub fn to_new(&self, e: Element) -> Option<Element> {
        self.old_of_new.iter().position(|&o| o == e).map(|p| p + 1)
    }

    pub fn set_to_old(&self, set: ElementSet) -> ElementSet {
        set.iter().map(|e| self.to_old(e)).collect()
    }

    /// `None` if the set uses an element that was removed.
    pub fn set_to_new(&self, set: ElementSet) -> Option<ElementSet> {
        set.iter()
            .map(|e| self.to_new(e))
            .collect::<Option<Vec<_>>>()
            .map(ElementSet::from_elements)
    }

    /// Composite relabeling: `self` maps a child to its parent, `next` maps
    /// a grandchild to the child.
    pub fn then(&self, next: &Relabel) -> Relabel {
        Relabel {
            old_of_new: next.old_of_new.iter().map(|&e| self.to_old(e)).collect(),
            parent_size: self.parent_size,
        }
    }
}

/// A matroid on `{1, ..., n}` stored by its set of circuits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matroid {
    n: usize,
    circuits: Vec<ElementSet>,
    elimination_checked: bool,
}

impl Matroid {
    /// Validates and builds a matroid from its circuits.
    ///
    /// Circuits must be nonempty, lie in `1..=n` and be pairwise incomparable.
    /// The circuit elimination axiom is verified exhaustively when
    /// `n <= ELIMINATION_CHECK_LIMIT`; otherwise [`Matroid::elimination_checked`]
    /// reports `false`.
    pub fn from_circuits(n: usize, circuits: Vec<ElementSet>) -> Result<Self> {
        if n > MAX_GROUND_SIZE {
            return Err(Error::GroundSetTooLarge(n));
        }
        let ground = ElementSet::full(n);
        let mut unique = BTreeSet::new();
        for c in circuits {
            if c.is_empty() {
                return Err(Error::EmptyCircuit);
            }
            if let Some(e) = c.difference(ground).first() {
                return Err(Error::ElementOutOfRange { element: e, n });
            }
            unique.insert(c);
        }
        let circuits: Vec<ElementSet> = unique.into_iter().collect();
        for (i, &a) in circuits.iter().enumerate() {
            for &b in &circuits[i + 1..] {
                if a.is_subset(b) {
                    return Err(Error::ComparableCircuits {
                        smaller: a,
                        larger: b,
                    });
                }
                if b.is_subset(a) {
                    return Err(Error::ComparableCircuits {
                        smaller: b,
                        larger: a,
                    });
                }
            }
        }
        let elimination_checked = n <= ELIMINATION_CHECK_LIMIT;
        if elimination_checked {
            check_elimination(&circuits)?;
        }
        Ok(Matroid {
            n,
            circuits,
            elimination_checked,
        })
    }

    pub fn from_circuit_lists(n: usize, circuits: &[Vec<Element>]) -> Result<Self> {
        let sets = circuits
            .iter()
            .map(|c| ElementSet::checked(n, c.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Matroid::from_circuits(n, sets)
    }

    /// Minors and realizations come from valid matroids; only minimize.
    pub(crate) fn assemble(n: usize, circuits: Vec<ElementSet>, elimination_checked: bool) -> Self {
        let mut sorted: Vec<ElementSet> = circuits
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let all = sorted.clone();
        sorted.retain(|c| !all.iter().any(|d| d != c && d.is_subset(*c)));
        Matroid {
            n,
            circuits: sorted,
            elimination_checked,
        }
    }

    /// The free matroid: every subset independent.
    pub fn free(n: usize) -> Self {
        Matroid::assemble(n, Vec::new(), true)
    }

    /// The uniform matroid `U_{r,n}`.
    pub fn uniform(r: usize, n: usize) -> Self {
        let circuits = if r < n {
            subsets_of_size(n, r + 1).collect()
        } else {
            Vec::new()
        };
        Matroid::assemble(n, circuits, true)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ground(&self) -> ElementSet {
        ElementSet::full(self.n)
    }

    /// Circuits in degree-lexicographic order.
    pub fn circuits(&self) -> &[ElementSet] {
        &self.circuits
    }

    /// Whether circuit elimination was verified at construction.
    pub fn elimination_checked(&self) -> bool {
        self.elimination_checked
    }

    pub fn is_independent(&self, set: ElementSet) -> bool {
        !self.circuits.iter().any(|c| c.is_subset(set))
    }

    pub fn rank(&self, set: ElementSet) -> usize {
        self.basis_of(set).len()
    }

    pub fn full_rank(&self) -> usize {
        self.rank(self.ground())
    }

    /// Greedy maximal independent subset of `set`, scanning in increasing
    /// order; this is the lexicographically least basis of `set`.
    pub fn basis_of(&self, set: ElementSet) -> ElementSet {
        let mut basis = ElementSet::EMPTY;
        for e in set {
            let candidate = basis.with(e);
            if !self
                .circuits
                .iter()
                .any(|c| c.contains(e) && c.is_subset(candidate))
            {
                basis = candidate;
            }
        }
        basis
    }

    pub fn closure(&self, set: ElementSet) -> ElementSet {
        let basis = self.basis_of(set);
        self.ground()
            .iter()
            .filter(|&y| set.contains(y) || !self.is_independent(basis.with(y)))
            .collect()
    }

    pub fn is_flat(&self, set: ElementSet) -> bool {
        self.closure(set) == set
    }

    pub fn loops(&self) -> ElementSet {
        self.circuits
            .iter()
            .filter(|c| c.len() == 1)
            .fold(ElementSet::EMPTY, |acc, c| acc.union(*c))
    }

    pub fn is_loop(&self, e: Element) -> bool {
        self.loops().contains(e)
    }

    pub fn is_loop_free(&self) -> bool {
        self.loops().is_empty()
    }

    /// No loops and no parallel pairs.
    pub fn is_simple(&self) -> bool {
        self.circuits.iter().all(|c| c.len() > 2)
    }

    fn require_loop_free(&self) -> Result<()> {
        match self.loops().first() {
            Some(e) => Err(Error::LoopPresent(e)),
            None => Ok(()),
        }
    }

    pub fn is_unidependent(&self, set: ElementSet) -> bool {
        !set.is_empty() && self.rank(set) + 1 == set.len()
    }

    /// The single circuit inside a unidependent set.
    pub fn unique_circuit(&self, set: ElementSet) -> Result<ElementSet> {
        if !self.is_unidependent(set) {
            return Err(Error::NotUnidependent(set));
        }
        Ok(*self
            .circuits
            .iter()
            .find(|c| c.is_subset(set))
            .expect("a unidependent set contains a circuit"))
    }

    /// `C \ min(C)` for each circuit with more than one element, `min`
    /// taken in `order`. Sorted, without duplicates.
    pub fn broken_circuits(&self, order: &ElementOrder) -> Result<Vec<ElementSet>> {
        self.require_loop_free()?;
        Ok(self.broken_circuits_unchecked(order))
    }

    fn broken_circuits_unchecked(&self, order: &ElementOrder) -> Vec<ElementSet> {
        self.circuits
            .iter()
            .filter(|c| c.len() > 1)
            .map(|&c| c.without(order.min_of(c).expect("nonempty")))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    /// Independent `size`-sets containing no broken circuit for `order`,
    /// in lexicographic order.
    pub fn nbc_sets(&self, order: &ElementOrder, size: usize) -> Vec<ElementSet> {
        let broken = self.broken_circuits_unchecked(order);
        subsets_of_size(self.n, size)
            .filter(|&s| self.is_independent(s) && !broken.iter().any(|b| b.is_subset(s)))
            .collect()
    }

    pub fn independent_sets(&self, size: usize) -> Vec<ElementSet> {
        subsets_of_size(self.n, size)
            .filter(|&s| self.is_independent(s))
            .collect()
    }

    pub fn dependent_sets(&self, size: usize) -> Vec<ElementSet> {
        subsets_of_size(self.n, size)
            .filter(|&s| !self.is_independent(s))
            .collect()
    }

    /// Elements `a` of `cl(I) \ I` that are the `order`-minimum of the unique
    /// circuit in `I + a`. Loops are left out: they are handled by the
    /// dependent monomials of the ideal, not by boundaries.
    pub fn active_elements(&self, independent: ElementSet, order: &ElementOrder) -> ElementSet {
        let loops = self.loops();
        self.closure(independent)
            .difference(independent)
            .difference(loops)
            .iter()
            .filter(|&a| {
                let c = self
                    .unique_circuit(independent.with(a))
                    .expect("I + a is unidependent for a in cl(I) \\ I");
                order.min_of(c) == Some(a)
            })
            .collect()
    }

    /// Inactive unidependent sets of the given size in the natural order.
    pub fn inactive_unidependents(&self, size: usize) -> Vec<ElementSet> {
        self.inactive_unidependents_with(&ElementOrder::natural(self.n), size)
    }

    /// Unidependent `size`-sets `U` whose circuit minimum `alpha` is the
    /// smallest active element of `U \ alpha`. Sets whose circuit is a loop
    /// are excluded.
    pub fn inactive_unidependents_with(
        &self,
        order: &ElementOrder,
        size: usize,
    ) -> Vec<ElementSet> {
        subsets_of_size(self.n, size)
            .filter(|&u| {
                if !self.is_unidependent(u) {
                    return false;
                }
                let c = self.unique_circuit(u).expect("unidependent");
                if c.len() < 2 {
                    return false;
                }
                let alpha = order.min_of(c).expect("nonempty");
                let active = self.active_elements(u.without(alpha), order);
                order.min_of(active) == Some(alpha)
            })
            .collect()
    }

    /// `M \ x`, relabeled onto `1..=n-1`.
    pub fn delete(&self, x: Element) -> Result<(Matroid, Relabel)> {
        self.check_element(x)?;
        let relabel = Relabel::removing(self.n, x);
        let circuits = self
            .circuits
            .iter()
            .filter(|c| !c.contains(x))
            .map(|&c| relabel.set_to_new(c).expect("avoids x"))
            .collect();
        Ok((
            Matroid::assemble(self.n - 1, circuits, self.elimination_checked),
            relabel,
        ))
    }

    /// `M / x`, relabeled onto `1..=n-1`.
    pub fn contract(&self, x: Element) -> Result<(Matroid, Relabel)> {
        self.check_element(x)?;
        if self.is_loop(x) {
            return Err(Error::LoopContraction(x));
        }
        let relabel = Relabel::removing(self.n, x);
        let circuits = self
            .circuits
            .iter()
            .map(|&c| relabel.set_to_new(c.without(x)).expect("x removed"))
            .collect();
        Ok((
            Matroid::assemble(self.n - 1, circuits, self.elimination_checked),
            relabel,
        ))
    }

    /// Circuits `C` whose broken circuit is inclusion-minimal among all
    /// broken circuits and whose `order`-minimum is also the minimum of
    /// `cl(C)`. Each minimal broken circuit comes from exactly one such
    /// circuit.
    pub fn minimal_broken_circuit_circuits(&self, order: &ElementOrder) -> Result<Vec<ElementSet>> {
        let broken = self.broken_circuits(order)?;
        let mut out = Vec::new();
        for &c in self.circuits.iter().filter(|c| c.len() > 1) {
            let alpha = order.min_of(c).expect("nonempty");
            let bc = c.without(alpha);
            if broken.iter().any(|&b| b != bc && b.is_subset(bc)) {
                continue;
            }
            if order.min_of(self.closure(c)) == Some(alpha) {
                out.push(c);
            }
        }
        Ok(out)
    }

    fn check_element(&self, x: Element) -> Result<()> {
        if x == 0 || x > self.n {
            Err(Error::ElementOutOfRange {
                element: x,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }
}

fn check_elimination(circuits: &[ElementSet]) -> Result<()> {
    for (i, &a) in circuits.iter().enumerate() {
        for &b in &circuits[i + 1..] {
            for e in a.intersection(b) {
                let rest = a.union(b).without(e);
                if !circuits.iter().any(|c| c.is_subset(rest)) {
                    return Err(Error::EliminationFailure {
                        first: a,
                        second: b,
                        element: e,
                    });
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::{set, six_point};

    #[test]
    fn six_point_independence_and_rank() {
        let m = six_point();
        assert!(m.is_independent(set(&[1, 2, 4])));
        assert!(!m.is_independent(set(&[1, 2, 3])));
        assert!(m.is_independent(ElementSet::EMPTY));
        assert_eq!(m.full_rank(), 3);
        assert_eq!(m.rank(set(&[1, 2, 3])), 2);
        assert_eq!(m.rank(ElementSet::EMPTY), 0);
    }

    #[test]
    fn six_point_closures() {
        let m = six_point();
        assert_eq!(m.closure(set(&[1, 2])), set(&[1, 2, 3]));
        assert_eq!(m.closure(set(&[1, 2, 4])), m.ground());
        assert_eq!(m.closure(m.ground()), m.ground());
        assert_eq!(m.closure(set(&[2, 4])), set(&[2, 4]));
    }

    #[test]
    fn unique_circuits() {
        let m = six_point();
        assert_eq!(
            m.unique_circuit(set(&[1, 2, 3, 4])).unwrap(),
            set(&[1, 2, 3])
        );
        assert_eq!(m.unique_circuit(set(&[1, 4, 5])).unwrap(), set(&[1, 4, 5]));
        assert_eq!(
            m.unique_circuit(set(&[1, 2, 4])),
            Err(Error::NotUnidependent(set(&[1, 2, 4])))
        );
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            Matroid::from_circuit_lists(2, &[vec![1], vec![1, 2]]),
            Err(Error::ComparableCircuits { .. })
        ));
        assert!(matches!(
            Matroid::from_circuit_lists(3, &[vec![1, 4]]),
            Err(Error::ElementOutOfRange { element: 4, n: 3 })
        ));
        // {1,2} and {2,3} force a circuit inside {1,3}
        assert!(matches!(
            Matroid::from_circuit_lists(3, &[vec![1, 2], vec![2, 3]]),
            Err(Error::EliminationFailure { .. })
        ));
        let free = Matroid::from_circuit_lists(3, &[]).unwrap();
        assert_eq!(free.full_rank(), 3);
        assert!(free.elimination_checked());
    }

    #[test]
    fn large_ground_sets_skip_elimination() {
        let m = Matroid::from_circuit_lists(13, &[vec![1, 2], vec![2, 3]]).unwrap();
        assert!(!m.elimination_checked());
        assert!(Matroid::from_circuits(65, vec![]).is_err());
    }

    #[test]
    fn broken_circuits_natural_and_shifted() {
        let m = six_point();
        let bcs = m.broken_circuits(&ElementOrder::natural(6)).unwrap();
        let expect: Vec<_> = [
            &[2, 3][..],
            &[4, 5],
            &[4, 6],
            &[5, 6],
            &[2, 4, 6],
            &[3, 4, 5],
            &[3, 5, 6],
        ]
        .iter()
        .map(|v| set(v))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
        assert_eq!(bcs, expect);

        let shifted = ElementOrder::from_sequence(vec![2, 3, 4, 5, 6, 1]).unwrap();
        assert!(m.broken_circuits(&shifted).unwrap().contains(&set(&[1, 3])));

        let u23 = Matroid::uniform(2, 3);
        assert_eq!(
            u23.broken_circuits(&ElementOrder::natural(3)).unwrap(),
            vec![set(&[2, 3])]
        );

        let looped = Matroid::from_circuit_lists(2, &[vec![1]]).unwrap();
        assert_eq!(
            looped.broken_circuits(&ElementOrder::natural(2)),
            Err(Error::LoopPresent(1))
        );
    }

    #[test]
    fn six_point_nbc() {
        let m = six_point();
        let nat = ElementOrder::natural(6);
        let nbc3: Vec<_> = [
            [1, 2, 4],
            [1, 2, 5],
            [1, 2, 6],
            [1, 3, 4],
            [1, 3, 5],
            [1, 3, 6],
        ]
        .iter()
        .map(|v| set(v))
        .collect();
        assert_eq!(m.nbc_sets(&nat, 3), nbc3);
        let nbc2: Vec<_> = [
            [1, 2],
            [1, 3],
            [1, 4],
            [1, 5],
            [1, 6],
            [2, 4],
            [2, 5],
            [2, 6],
            [3, 4],
            [3, 5],
            [3, 6],
        ]
        .iter()
        .map(|v| set(v))
        .collect();
        assert_eq!(m.nbc_sets(&nat, 2), nbc2);
        assert_eq!(m.nbc_sets(&nat, 0), vec![ElementSet::EMPTY]);
    }

    #[test]
    fn six_point_inactive_unidependents() {
        let m = six_point();
        let uni3: Vec<_> = [[1, 2, 3], [1, 4, 5], [2, 5, 6], [3, 4, 6]]
            .iter()
            .map(|v| set(v))
            .collect();
        assert_eq!(m.inactive_unidependents(3), uni3);
        let uni4: Vec<_> = [
            [1, 2, 3, 4],
            [1, 2, 3, 5],
            [1, 2, 3, 6],
            [1, 2, 4, 5],
            [1, 2, 4, 6],
            [1, 2, 5, 6],
            [1, 3, 4, 5],
            [1, 3, 4, 6],
            [1, 3, 5, 6],
            [1, 4, 5, 6],
        ]
        .iter()
        .map(|v| set(v))
        .collect();
        assert_eq!(m.inactive_unidependents(4), uni4);
        assert_eq!(
            Matroid::uniform(2, 3).inactive_unidependents(3),
            vec![set(&[1, 2, 3])]
        );
    }

    #[test]
    fn minors_of_six_point() {
        let m = six_point();
        let (del, relabel) = m.delete(6).unwrap();
        assert_eq!(relabel.to_old(5), 5);
        assert_eq!(
            del.circuits(),
            &[set(&[1, 2, 3]), set(&[1, 4, 5]), set(&[2, 3, 4, 5])]
        );
        let (con, _) = m.contract(6).unwrap();
        assert_eq!(con.full_rank(), 2);
        assert!(con.circuits().contains(&set(&[2, 5])));
        assert!(con.circuits().contains(&set(&[3, 4])));
        Matroid::from_circuits(con.n(), con.circuits().to_vec()).unwrap();
        Matroid::from_circuits(del.n(), del.circuits().to_vec()).unwrap();

        let free = Matroid::free(4);
        let (c, _) = free.contract(2).unwrap();
        assert_eq!(c, Matroid::free(3));

        let looped = Matroid::from_circuit_lists(2, &[vec![1]]).unwrap();
        assert_eq!(looped.contract(1), Err(Error::LoopContraction(1)));
    }

    #[test]
    fn relabel_after_interior_removal() {
        let m = six_point();
        let (con, relabel) = m.contract(2).unwrap();
        assert_eq!(relabel.to_old(2), 3);
        assert_eq!(relabel.to_new(2), None);
        // circuit 256 becomes the parallel pair {5,6} -> new labels {4,5}
        assert!(con.circuits().contains(&set(&[4, 5])));
    }

    #[test]
    fn minimal_broken_circuit_circuits_six_point() {
        let m = six_point();
        assert_eq!(
            m.minimal_broken_circuit_circuits(&ElementOrder::natural(6))
                .unwrap(),
            vec![
                set(&[1, 2, 3]),
                set(&[1, 4, 5]),
                set(&[2, 5, 6]),
                set(&[3, 4, 6])
            ]
        );
        let shifted = ElementOrder::from_sequence(vec![2, 3, 4, 5, 6, 1]).unwrap();
        assert_eq!(
            m.minimal_broken_circuit_circuits(&shifted).unwrap(),
            vec![
                set(&[1, 2, 3]),
                set(&[1, 4, 5]),
                set(&[2, 5, 6]),
                set(&[3, 4, 6]),
                set(&[2, 3, 4, 5])
            ]
        );
        let u23 = Matroid::uniform(2, 3);
        assert_eq!(
            u23.minimal_broken_circuit_circuits(&ElementOrder::natural(3))
                .unwrap(),
            vec![set(&[1, 2, 3])]
        );
    }

    #[test]
    fn minimal_broken_circuits_uniform_2_4_pick_one_circuit_per_broken_circuit() {
        // {1,3,4} and {2,3,4} share the broken circuit {3,4}; only {1,3,4}
        // has the minimum of its closure.
        let m = Matroid::uniform(2, 4);
        assert_eq!(
            m.minimal_broken_circuit_circuits(&ElementOrder::natural(4))
                .unwrap(),
            vec![set(&[1, 2, 3]), set(&[1, 2, 4]), set(&[1, 3, 4])]
        );
    }
}
