//! Exact computations in χ-algebras of matroids: Orlik-Solomon,
//! Orlik-Solomon-Terao and Cordovil algebras, their Gröbner bases, nbc and
//! diagonal bases, and iterated residues.

pub mod algebra;
pub mod chi_map;
pub mod elements;
pub mod error;
pub mod fixtures;
pub mod formats;
pub mod groebner;
pub mod linalg;
pub mod matroid;
pub mod properties;
pub mod realization;
pub mod residues;

#[cfg(test)]
pub(crate) mod testing;

pub use algebra::{AlgebraElement, BetaSystem, Monomial};
pub use chi_map::{ChiKind, ChiMap};
pub use elements::{Element, ElementOrder, ElementSet};
pub use error::{Error, Result};
pub use groebner::{GroebnerBasis, LeadingTermIdeal, TermOrder};
pub use linalg::Rational;
pub use matroid::{Matroid, Relabel};
pub use realization::{FlatBasisAssignment, VectorConfig};
pub use residues::{DiagonalBasisCandidate, Flag};
