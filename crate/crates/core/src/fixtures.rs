//! The six-point configuration used throughout the tests and the CLI demo:
//! three points on each of the lines `x = 0` and `y = 0` through the
//! origin, plus an interior point on two of the remaining lines.

use crate::elements::ElementSet;
use crate::linalg::{frac, int};
use crate::matroid::Matroid;
use crate::realization::{circuits_from_vectors, VectorConfig};
use crate::residues::DiagonalBasisCandidate;

/// `p1 = (0,0,1)`, `p2 = (0,1/2,1)`, `p3 = (0,1,1)`, `p4 = (1/2,0,1)`,
/// `p5 = (1,0,1)`, `p6 = (1/3,1/3,1)`.
pub fn six_point_vectors() -> VectorConfig {
    VectorConfig::new(
        3,
        vec![
            vec![int(0), int(0), int(1)],
            vec![int(0), frac(1, 2), int(1)],
            vec![int(0), int(1), int(1)],
            vec![frac(1, 2), int(0), int(1)],
            vec![int(1), int(0), int(1)],
            vec![frac(1, 3), frac(1, 3), int(1)],
        ],
    )
    .expect("well-formed")
}

pub fn six_point_matroid() -> Matroid {
    circuits_from_vectors(&six_point_vectors())
}

/// The circuits of the six-point configuration.
pub fn six_point_circuits() -> Vec<Vec<usize>> {
    vec![
        vec![1, 2, 3],
        vec![1, 4, 5],
        vec![2, 5, 6],
        vec![3, 4, 6],
        vec![1, 2, 4, 6],
        vec![1, 3, 5, 6],
        vec![2, 3, 4, 5],
    ]
}

/// A diagonal basis of degree 3 that is not an nbc basis: `{1,2,5}` is read
/// as `(1,5,2)`, the other sets increasingly.
pub fn six_point_alternate_basis() -> DiagonalBasisCandidate {
    let s = |v: &[usize]| ElementSet::from_elements(v.iter().copied());
    DiagonalBasisCandidate::new(vec![
        (s(&[1, 2, 4]), vec![1, 2, 3]),
        (s(&[1, 2, 5]), vec![1, 3, 2]),
        (s(&[1, 3, 4]), vec![1, 2, 3]),
        (s(&[1, 3, 5]), vec![1, 2, 3]),
        (s(&[1, 3, 6]), vec![1, 2, 3]),
        (s(&[1, 5, 6]), vec![1, 2, 3]),
    ])
    .expect("valid candidate")
}
