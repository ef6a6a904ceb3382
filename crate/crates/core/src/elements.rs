//! Ground-set elements, bitset subsets, words and linear orders on `1..=n`.

use std::cmp::Ordering;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};

/// An element of the ground set `1..=n`.
pub type Element = usize;

/// Largest supported ground set.
pub const MAX_GROUND_SIZE: usize = 64;

/// A subset of the ground set, stored as a bitset (bit `i - 1` for element `i`).
///
/// The ordering is degree first, then lexicographic on the increasing
/// element sequence, so sorted collections of equal-size sets come out in
/// the usual lexicographic order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ElementSet(u64);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub fn from_bits(bits: u64) -> Self {
        ElementSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_GROUND_SIZE);
        if n == MAX_GROUND_SIZE {
            ElementSet(u64::MAX)
        } else {
            ElementSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(e: Element) -> Self {
        ElementSet::EMPTY.with(e)
    }

    /// Panics on elements outside `1..=64`; use [`ElementSet::checked`] for
    /// untrusted input.
    pub fn from_elements<I: IntoIterator<Item = Element>>(elements: I) -> Self {
        elements
            .into_iter()
            .fold(ElementSet::EMPTY, |acc, e| acc.with(e))
    }

    /// Builds a set, validating every element against the ground set size.
    pub fn checked<I: IntoIterator<Item = Element>>(n: usize, elements: I) -> Result<Self> {
        let mut set = ElementSet::EMPTY;
        for e in elements {
            if e == 0 || e > n {
                return Err(Error::ElementOutOfRange { element: e, n });
            }
            set = set.with(e);
        }
        Ok(set)
    }

    pub fn contains(self, e: Element) -> bool {
        (1..=MAX_GROUND_SIZE).contains(&e) && self.0 & (1u64 << (e - 1)) != 0
    }

    pub fn with(self, e: Element) -> Self {
        assert!(
            (1..=MAX_GROUND_SIZE).contains(&e),
            "element {e} outside 1..={MAX_GROUND_SIZE}"
        );
        ElementSet(self.0 | (1u64 << (e - 1)))
    }

    pub fn without(self, e: Element) -> Self {
        if self.contains(e) {
            ElementSet(self.0 & !(1u64 << (e - 1)))
        } else {
            self
        }
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: ElementSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: ElementSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: ElementSet) -> Self {
        ElementSet(self.0 | other.0)
    }

    pub fn intersection(self, other: ElementSet) -> Self {
        ElementSet(self.0 & other.0)
    }

    pub fn difference(self, other: ElementSet) -> Self {
        ElementSet(self.0 & !other.0)
    }

    pub fn symmetric_difference(self, other: ElementSet) -> Self {
        ElementSet(self.0 ^ other.0)
    }

    /// Smallest element in the natural order.
    pub fn first(self) -> Option<Element> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize + 1)
        }
    }

    /// Elements in increasing order.
    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    pub fn to_vec(self) -> Vec<Element> {
        self.iter().collect()
    }
}

pub struct Elements(u64);

impl Iterator for Elements {
    type Item = Element;

    fn next(&mut self) -> Option<Element> {
        if self.0 == 0 {
            return None;
        }
        let tz = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(tz as usize + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

impl IntoIterator for ElementSet {
    type Item = Element;
    type IntoIter = Elements;

    fn into_iter(self) -> Elements {
        self.iter()
    }
}

impl FromIterator<Element> for ElementSet {
    fn from_iter<I: IntoIterator<Item = Element>>(iter: I) -> Self {
        ElementSet::from_elements(iter)
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            // equal size: the set holding the smallest element of the
            // symmetric difference is lexicographically smaller
            match self.symmetric_difference(*other).first() {
                None => Ordering::Equal,
                Some(e) if self.contains(e) => Ordering::Less,
                Some(_) => Ordering::Greater,
            }
        })
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.iter().join(","))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// Serialized as the increasing list of elements.
impl serde::Serialize for ElementSet {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

/// All `k`-subsets of `{1, ..., n}` in lexicographic order.
pub fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = ElementSet> {
    (1..=n).combinations(k).map(ElementSet::from_elements)
}

/// All `k`-subsets of `set`, lexicographic.
pub fn subsets_of(set: ElementSet, k: usize) -> impl Iterator<Item = ElementSet> {
    set.to_vec()
        .into_iter()
        .combinations(k)
        .map(ElementSet::from_elements)
}

/// Sign of the permutation sorting `word` into increasing order, or `None`
/// if the word repeats an element.
pub fn word_sign(word: &[Element]) -> Option<i8> {
    let mut inversions = 0usize;
    for (p, a) in word.iter().enumerate() {
        for b in &word[p + 1..] {
            match a.cmp(b) {
                Ordering::Equal => return None,
                Ordering::Greater => inversions += 1,
                Ordering::Less => {}
            }
        }
    }
    Some(if inversions.is_multiple_of(2) { 1 } else { -1 })
}

/// Underlying set of a word; errors on repeated elements and on elements
/// outside `1..=64`.
pub fn word_set(word: &[Element]) -> Result<ElementSet> {
    let set = ElementSet::checked(MAX_GROUND_SIZE, word.iter().copied())?;
    if set.len() != word.len() {
        return Err(Error::RepeatedElement(word.to_vec()));
    }
    Ok(set)
}

/// Reorders `set` (taken in increasing order `(i_1, ..., i_m)`) by the
/// one-line permutation `sigma`, producing `(i_{sigma(1)}, ..., i_{sigma(m)})`.
/// `sigma` is 1-based.
pub fn permuted_word(set: ElementSet, sigma: &[usize]) -> Result<Vec<Element>> {
    let base = set.to_vec();
    check_permutation(sigma, base.len())?;
    Ok(sigma.iter().map(|&s| base[s - 1]).collect())
}

/// Checks that `sigma` is a one-line permutation of `1..=m`.
pub fn check_permutation(sigma: &[usize], m: usize) -> Result<()> {
    if sigma.len() != m {
        return Err(Error::InvalidPermutation(format!(
            "expected a permutation of 1..={m}, got {} entries",
            sigma.len()
        )));
    }
    let mut seen = vec![false; m + 1];
    for &s in sigma {
        if s == 0 || s > m || seen[s] {
            return Err(Error::InvalidPermutation(format!(
                "{sigma:?} is not a permutation of 1..={m}"
            )));
        }
        seen[s] = true;
    }
    Ok(())
}

/// A linear order on the ground set, listed from smallest to largest.
///
/// `ElementOrder::from_sequence(vec![2, 3, 4, 5, 6, 1])` makes `2` the
/// smallest and `1` the largest element.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementOrder {
    sequence: Vec<Element>,
    // position[e] = rank of e in the order (0 = smallest); index 0 unused
    position: Vec<usize>,
}

impl ElementOrder {
    pub fn natural(n: usize) -> Self {
        ElementOrder::from_sequence((1..=n).collect()).expect("identity is a permutation")
    }

    pub fn from_sequence(sequence: Vec<Element>) -> Result<Self> {
        let n = sequence.len();
        if n > MAX_GROUND_SIZE {
            return Err(Error::GroundSetTooLarge(n));
        }
        check_permutation(&sequence, n)?;
        let mut position = vec![0; n + 1];
        for (rank, &e) in sequence.iter().enumerate() {
            position[e] = rank;
        }
        Ok(ElementOrder { sequence, position })
    }

    /// Order in which the elements of `first` (in increasing natural order)
    /// precede all remaining elements (also increasing).
    pub fn with_prefix(n: usize, first: ElementSet) -> Self {
        let sequence = first
            .iter()
            .chain(ElementSet::full(n).difference(first).iter())
            .collect();
        ElementOrder::from_sequence(sequence).expect("prefix order is a permutation")
    }

    /// Order in which `last` is the largest element and the others keep
    /// their natural order.
    pub fn with_last(n: usize, last: Element) -> Self {
        let sequence = (1..=n).filter(|&e| e != last).chain([last]).collect();
        ElementOrder::from_sequence(sequence).expect("valid permutation")
    }

    pub fn n(&self) -> usize {
        self.sequence.len()
    }

    pub fn sequence(&self) -> &[Element] {
        &self.sequence
    }

    pub fn position(&self, e: Element) -> usize {
        self.position[e]
    }

    pub fn is_natural(&self) -> bool {
        self.sequence.iter().enumerate().all(|(i, &e)| e == i + 1)
    }

    pub fn compare(&self, a: Element, b: Element) -> Ordering {
        self.position[a].cmp(&self.position[b])
    }

    /// Smallest element of `set` in this order.
    pub fn min_of(&self, set: ElementSet) -> Option<Element> {
        set.iter().min_by_key(|&e| self.position[e])
    }

    /// Elements of `set`, increasing in this order.
    pub fn sorted(&self, set: ElementSet) -> Vec<Element> {
        let mut v = set.to_vec();
        v.sort_by_key(|&e| self.position[e]);
        v
    }

    /// Degree-lexicographic comparison of monomial supports in this order.
    pub fn compare_sets(&self, a: ElementSet, b: ElementSet) -> Ordering {
        a.len()
            .cmp(&b.len())
            .then_with(|| match self.min_of(a.symmetric_difference(b)) {
                None => Ordering::Equal,
                Some(e) if a.contains(e) => Ordering::Less,
                Some(_) => Ordering::Greater,
            })
    }
}

impl fmt::Debug for ElementOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ElementOrder({})", self.sequence.iter().join("<"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[Element]) -> ElementSet {
        ElementSet::from_elements(v.iter().copied())
    }

    #[test]
    fn set_order_is_degree_then_lex() {
        let mut sets = vec![
            s(&[2, 3]),
            s(&[1]),
            s(&[1, 3]),
            s(&[1, 2]),
            s(&[]),
            s(&[1, 2, 4]),
        ];
        sets.sort();
        assert_eq!(
            sets,
            vec![
                s(&[]),
                s(&[1]),
                s(&[1, 2]),
                s(&[1, 3]),
                s(&[2, 3]),
                s(&[1, 2, 4])
            ]
        );
    }

    #[test]
    fn subsets_are_lexicographic() {
        let all: Vec<_> = subsets_of_size(4, 2).collect();
        assert_eq!(all.len(), 6);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(
            subsets_of_size(3, 0).collect::<Vec<_>>(),
            vec![ElementSet::EMPTY]
        );
    }

    #[test]
    fn word_signs() {
        assert_eq!(word_sign(&[1, 2, 4]), Some(1));
        assert_eq!(word_sign(&[2, 1, 4]), Some(-1));
        assert_eq!(word_sign(&[3, 5, 2]), Some(1));
        assert_eq!(word_sign(&[1, 1]), None);
    }

    #[test]
    fn one_line_permutation() {
        // (132) applied to {1,2,5} gives the word (1,5,2)
        assert_eq!(
            permuted_word(s(&[1, 2, 5]), &[1, 3, 2]).unwrap(),
            vec![1, 5, 2]
        );
        assert!(permuted_word(s(&[1, 2]), &[1, 1]).is_err());
    }

    #[test]
    fn shifted_order() {
        let order = ElementOrder::from_sequence(vec![2, 3, 4, 5, 6, 1]).unwrap();
        assert_eq!(order.min_of(s(&[1, 2, 3])), Some(2));
        assert_eq!(order.compare_sets(s(&[2, 3]), s(&[1, 3])), Ordering::Less);
        assert_eq!(order.sorted(s(&[1, 4, 6])), vec![4, 6, 1]);
        assert!(ElementOrder::from_sequence(vec![1, 1]).is_err());
    }

    #[test]
    fn checked_rejects_out_of_range() {
        assert!(ElementSet::checked(3, [1, 4]).is_err());
        assert!(ElementSet::checked(3, [0]).is_err());
    }
}
