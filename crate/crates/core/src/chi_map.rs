//! χ-maps: antisymmetric functions on ordered subsets of the ground set.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::elements::{word_sign, Element, ElementSet};
use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::matroid::{Matroid, Relabel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChiKind {
    OrlikSolomon,
    OrlikSolomonTerao,
    Cordovil,
    Custom,
}

impl ChiKind {
    pub fn name(self) -> &'static str {
        match self {
            ChiKind::OrlikSolomon => "os",
            ChiKind::OrlikSolomonTerao => "ot",
            ChiKind::Cordovil => "cordovil",
            ChiKind::Custom => "custom",
        }
    }
}

impl fmt::Display for ChiKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Value of χ on a set read in increasing order.
pub trait ChiFunction: Send + Sync {
    fn ground_size(&self) -> usize;
    fn value(&self, set: ElementSet) -> Rational;
}

/// A χ-map. Evaluation on words applies the sign of the sorting
/// permutation, so `χ(X^σ) = sgn(σ) χ(X)` holds by construction.
#[derive(Clone)]
pub struct ChiMap {
    kind: ChiKind,
    inner: Arc<dyn ChiFunction>,
}

impl fmt::Debug for ChiMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChiMap({}, n={})", self.kind, self.ground_size())
    }
}

impl ChiMap {
    pub fn new(kind: ChiKind, inner: Arc<dyn ChiFunction>) -> Self {
        ChiMap { kind, inner }
    }

    pub fn from_fn<F>(kind: ChiKind, n: usize, f: F) -> Self
    where
        F: Fn(ElementSet) -> Rational + Send + Sync + 'static,
    {
        ChiMap::new(kind, Arc::new(FnChi { n, f }))
    }

    /// Values listed per set; every unlisted set maps to zero.
    pub fn from_table(kind: ChiKind, n: usize, values: HashMap<ElementSet, Rational>) -> Self {
        ChiMap::new(kind, Arc::new(TableChi { n, values }))
    }

    pub fn kind(&self) -> ChiKind {
        self.kind
    }

    pub fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }

    /// χ on an ordered word; zero on words with repeated elements.
    pub fn eval(&self, word: &[Element]) -> Rational {
        match word_sign(word) {
            None => Rational::zero(),
            Some(sign) => {
                let v = self
                    .inner
                    .value(ElementSet::from_elements(word.iter().copied()));
                if sign < 0 {
                    -v
                } else {
                    v
                }
            }
        }
    }

    pub fn eval_set(&self, set: ElementSet) -> Rational {
        self.inner.value(set)
    }

    /// `χ_{M\x}(X) = χ(X)` on the relabeled ground set.
    pub fn delete(&self, x: Element) -> Result<(ChiMap, Relabel)> {
        self.check_element(x)?;
        let relabel = Relabel::removing(self.ground_size(), x);
        let inner = Restricted {
            parent: self.clone(),
            relabel: relabel.clone(),
        };
        Ok((ChiMap::new(self.kind, Arc::new(inner)), relabel))
    }

    /// `χ_{M/x}(X) = χ(X∘x)` on the relabeled ground set. Fails when `x`
    /// is a loop, detected as `χ({x}) = 0`.
    pub fn contract(&self, x: Element) -> Result<(ChiMap, Relabel)> {
        self.check_element(x)?;
        if self.eval(&[x]).is_zero() {
            return Err(Error::LoopContraction(x));
        }
        let relabel = Relabel::removing(self.ground_size(), x);
        let inner = Contracted {
            parent: self.clone(),
            relabel: relabel.clone(),
            x,
        };
        Ok((ChiMap::new(self.kind, Arc::new(inner)), relabel))
    }

    fn check_element(&self, x: Element) -> Result<()> {
        let n = self.ground_size();
        if x == 0 || x > n {
            Err(Error::ElementOutOfRange { element: x, n })
        } else {
            Ok(())
        }
    }
}

/// The Orlik-Solomon map: `±1` on independent sets, `0` on dependent ones.
pub fn chi_os(matroid: &Matroid) -> ChiMap {
    let m = matroid.clone();
    ChiMap::from_fn(ChiKind::OrlikSolomon, matroid.n(), move |set| {
        if m.is_independent(set) {
            Rational::one()
        } else {
            Rational::zero()
        }
    })
}

/// Checks that χ is nonzero exactly on independent sets, over all subsets
/// of size at most `max_size`. Returns the first offending set.
pub fn check_nonvanishing(matroid: &Matroid, chi: &ChiMap, max_size: usize) -> Option<ElementSet> {
    (0..=max_size.min(matroid.n()))
        .flat_map(|k| crate::elements::subsets_of_size(matroid.n(), k))
        .find(|&s| chi.eval_set(s).is_zero() == matroid.is_independent(s))
}

struct FnChi<F> {
    n: usize,
    f: F,
}

impl<F> ChiFunction for FnChi<F>
where
    F: Fn(ElementSet) -> Rational + Send + Sync,
{
    fn ground_size(&self) -> usize {
        self.n
    }

    fn value(&self, set: ElementSet) -> Rational {
        (self.f)(set)
    }
}

struct TableChi {
    n: usize,
    values: HashMap<ElementSet, Rational>,
}

impl ChiFunction for TableChi {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn value(&self, set: ElementSet) -> Rational {
        self.values
            .get(&set)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }
}

struct Restricted {
    parent: ChiMap,
    relabel: Relabel,
}

impl ChiFunction for Restricted {
    fn ground_size(&self) -> usize {
        self.relabel.len()
    }

    fn value(&self, set: ElementSet) -> Rational {
        self.parent.eval_set(self.relabel.set_to_old(set))
    }
}

struct Contracted {
    parent: ChiMap,
    relabel: Relabel,
    x: Element,
}

impl ChiFunction for Contracted {
    fn ground_size(&self) -> usize {
        self.relabel.len()
    }

    fn value(&self, set: ElementSet) -> Rational {
        // relabeling is monotone, so the old labels stay increasing
        let mut word = self.relabel.set_to_old(set).to_vec();
        word.push(self.x);
        self.parent.eval(&word)
    }
}
