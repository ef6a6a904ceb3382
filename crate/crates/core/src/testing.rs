use crate::elements::{Element, ElementSet};
use crate::fixtures;
use crate::matroid::Matroid;
use crate::realization::VectorConfig;
use crate::residues::DiagonalBasisCandidate;

pub fn set(v: &[Element]) -> ElementSet {
    ElementSet::from_elements(v.iter().copied())
}

pub fn six_point() -> Matroid {
    Matroid::from_circuit_lists(6, &fixtures::six_point_circuits()).unwrap()
}

pub fn six_point_config() -> VectorConfig {
    fixtures::six_point_vectors()
}

pub fn alternate_candidate() -> DiagonalBasisCandidate {
    fixtures::six_point_alternate_basis()
}
