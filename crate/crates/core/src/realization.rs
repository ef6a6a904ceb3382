//! Matroids and χ-maps of rational vector configurations.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Signed};

use crate::chi_map::{ChiKind, ChiMap};
use crate::elements::{subsets_of_size, Element, ElementSet, MAX_GROUND_SIZE};
use crate::error::{Error, Result};
use crate::linalg::{coordinates, determinant, rank, Rational};
use crate::matroid::Matroid;

/// `n` vectors in `Q^d`, indexed from 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorConfig {
    d: usize,
    vectors: Vec<Vec<Rational>>,
}

impl VectorConfig {
    pub fn new(d: usize, vectors: Vec<Vec<Rational>>) -> Result<Self> {
        if vectors.len() > MAX_GROUND_SIZE {
            return Err(Error::GroundSetTooLarge(vectors.len()));
        }
        for (i, v) in vectors.iter().enumerate() {
            if v.len() != d {
                return Err(Error::DimensionMismatch {
                    index: i + 1,
                    expected: d,
                    got: v.len(),
                });
            }
        }
        Ok(VectorConfig { d, vectors })
    }

    pub fn from_integers(d: usize, vectors: &[Vec<i64>]) -> Result<Self> {
        VectorConfig::new(
            d,
            vectors
                .iter()
                .map(|v| {
                    v.iter()
                        .map(|&x| Rational::from_integer(x.into()))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.vectors.len()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// The vector of element `i` (1-based).
    pub fn vector(&self, i: Element) -> &[Rational] {
        &self.vectors[i - 1]
    }

    pub fn vectors(&self) -> &[Vec<Rational>] {
        &self.vectors
    }

    pub fn rank_of(&self, set: ElementSet) -> usize {
        let rows: Vec<Vec<Rational>> = set.iter().map(|i| self.vector(i).to_vec()).collect();
        rank(&rows)
    }

    /// Every vector has last coordinate 1.
    pub fn check_affine(&self) -> Result<()> {
        for (i, v) in self.vectors.iter().enumerate() {
            if v.last().is_none_or(|x| !x.is_one()) {
                return Err(Error::NotAffineNormalized(i + 1));
            }
        }
        Ok(())
    }
}

/// Minimal supports of linear dependencies, found by scanning candidate
/// supports by increasing size and skipping those that contain a circuit
/// already found. A dependency among `d + 1` or fewer vectors always exists
/// when one exists at all, so the scan stops there.
pub fn circuits_from_vectors(config: &VectorConfig) -> Matroid {
    let n = config.n();
    let mut circuits: Vec<ElementSet> = Vec::new();
    for k in 1..=n.min(config.d() + 1) {
        let found: Vec<ElementSet> = subsets_of_size(n, k)
            .filter(|s| !circuits.iter().any(|c| c.is_subset(*s)))
            .filter(|&s| config.rank_of(s) < k)
            .collect();
        circuits.extend(found);
    }
    Matroid::assemble(n, circuits, true)
}

/// Lexicographically least basis of the flat `flat`, vectors in index order.
pub fn flat_basis(
    config: &VectorConfig,
    matroid: &Matroid,
    flat: ElementSet,
) -> Result<Vec<Vec<Rational>>> {
    if !matroid.is_flat(flat) {
        return Err(Error::NotAFlat(flat));
    }
    Ok(matroid
        .basis_of(flat)
        .iter()
        .map(|i| config.vector(i).to_vec())
        .collect())
}

/// Choice of an ordered basis `B_F` for each flat `F`. Flats without an
/// explicit entry use [`flat_basis`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FlatBasisAssignment {
    overrides: BTreeMap<ElementSet, Vec<Vec<Rational>>>,
}

impl FlatBasisAssignment {
    pub fn lex() -> Self {
        FlatBasisAssignment::default()
    }

    pub fn overrides(&self) -> &BTreeMap<ElementSet, Vec<Vec<Rational>>> {
        &self.overrides
    }

    /// Sets `B_F`, checking that the vectors form a basis of the span of `F`.
    pub fn set(
        &mut self,
        config: &VectorConfig,
        matroid: &Matroid,
        flat: ElementSet,
        basis: Vec<Vec<Rational>>,
    ) -> Result<()> {
        if !matroid.is_flat(flat) {
            return Err(Error::NotAFlat(flat));
        }
        let r = matroid.rank(flat);
        if basis.len() != r {
            return Err(Error::InvalidFlatBasis(format!(
                "flat {flat} has rank {r} but {} vectors were given",
                basis.len()
            )));
        }
        if basis.iter().any(|b| b.len() != config.d()) {
            return Err(Error::InvalidFlatBasis(format!(
                "basis vectors for {flat} must have {} coordinates",
                config.d()
            )));
        }
        if rank(&basis) != r {
            return Err(Error::InvalidFlatBasis(format!(
                "vectors given for {flat} are linearly dependent"
            )));
        }
        for i in flat {
            if coordinates(&basis, config.vector(i)).is_none() {
                return Err(Error::InvalidFlatBasis(format!(
                    "vector {i} of {flat} is outside the span of the given basis"
                )));
            }
        }
        self.overrides.insert(flat, basis);
        Ok(())
    }

    pub fn basis_for(
        &self,
        config: &VectorConfig,
        matroid: &Matroid,
        flat: ElementSet,
    ) -> Result<Vec<Vec<Rational>>> {
        match self.overrides.get(&flat) {
            Some(b) => Ok(b.clone()),
            None => flat_basis(config, matroid, flat),
        }
    }
}

/// Determinant of the coordinates of `v_i` (`i` in `independent`,
/// increasing) in the basis chosen for `cl(independent)`.
pub fn ot_determinant(
    config: &VectorConfig,
    matroid: &Matroid,
    assignment: &FlatBasisAssignment,
    independent: ElementSet,
) -> Result<Rational> {
    if !matroid.is_independent(independent) {
        return Err(Error::DependentInput(independent));
    }
    let basis = assignment.basis_for(config, matroid, matroid.closure(independent))?;
    let rows: Vec<Vec<Rational>> = independent
        .iter()
        .map(|i| coordinates(&basis, config.vector(i)).expect("v_i lies in the span of its flat"))
        .collect();
    Ok(determinant(&rows))
}

fn independent_table<F>(matroid: &Matroid, mut value: F) -> Result<HashMap<ElementSet, Rational>>
where
    F: FnMut(ElementSet) -> Result<Rational>,
{
    let mut table = HashMap::new();
    let mut layer = vec![ElementSet::EMPTY];
    while !layer.is_empty() {
        let mut next = Vec::new();
        for s in layer {
            table.insert(s, value(s)?);
            let start = s.iter().last().map_or(1, |m| m + 1);
            for e in start..=matroid.n() {
                let t = s.with(e);
                if matroid.is_independent(t) {
                    next.push(t);
                }
            }
        }
        layer = next;
    }
    Ok(table)
}

/// The Orlik-Solomon-Terao map of a configuration. `matroid` must be the
/// matroid of `config`. Values are tabulated once over all independent sets.
pub fn chi_ot(
    config: &VectorConfig,
    matroid: &Matroid,
    assignment: &FlatBasisAssignment,
) -> Result<ChiMap> {
    check_same_size(config, matroid)?;
    let table = independent_table(matroid, |s| ot_determinant(config, matroid, assignment, s))?;
    Ok(ChiMap::from_table(
        ChiKind::OrlikSolomonTerao,
        matroid.n(),
        table,
    ))
}

/// The Cordovil map: the sign of the Orlik-Solomon-Terao determinant.
pub fn chi_cordovil(
    config: &VectorConfig,
    matroid: &Matroid,
    assignment: &FlatBasisAssignment,
) -> Result<ChiMap> {
    check_same_size(config, matroid)?;
    let table = independent_table(matroid, |s| {
        Ok(ot_determinant(config, matroid, assignment, s)?.signum())
    })?;
    Ok(ChiMap::from_table(ChiKind::Cordovil, matroid.n(), table))
}

fn check_same_size(config: &VectorConfig, matroid: &Matroid) -> Result<()> {
    if config.n() != matroid.n() {
        return Err(Error::SizeMismatch(format!(
            "{} vectors for a matroid on {} elements",
            config.n(),
            matroid.n()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frac, int};
    use crate::testing::{set, six_point, six_point_config};

    #[test]
    fn six_point_circuits_from_coordinates() {
        let m = circuits_from_vectors(&six_point_config());
        assert_eq!(m, six_point());
    }

    #[test]
    fn parallel_and_free_configurations() {
        let same = VectorConfig::from_integers(2, &[vec![1, 2], vec![1, 2], vec![1, 2]]).unwrap();
        let m = circuits_from_vectors(&same);
        assert_eq!(m.circuits(), &[set(&[1, 2]), set(&[1, 3]), set(&[2, 3])]);

        let basis =
            VectorConfig::from_integers(3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert!(circuits_from_vectors(&basis).circuits().is_empty());

        let zero = VectorConfig::from_integers(2, &[vec![0, 0], vec![1, 0]]).unwrap();
        assert_eq!(circuits_from_vectors(&zero).circuits(), &[set(&[1])]);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let err = VectorConfig::from_integers(2, &[vec![1, 0], vec![1]]).unwrap_err();
        assert_eq!(
            err,
            Error::DimensionMismatch {
                index: 2,
                expected: 2,
                got: 1
            }
        );
    }

    #[test]
    fn lex_least_flat_bases() {
        let v = six_point_config();
        let m = six_point();
        let full = flat_basis(&v, &m, m.ground()).unwrap();
        assert_eq!(
            full,
            vec![
                v.vector(1).to_vec(),
                v.vector(2).to_vec(),
                v.vector(4).to_vec()
            ]
        );
        let line = flat_basis(&v, &m, set(&[1, 2, 3])).unwrap();
        assert_eq!(line, vec![v.vector(1).to_vec(), v.vector(2).to_vec()]);
        assert_eq!(
            flat_basis(&v, &m, set(&[5])).unwrap(),
            vec![v.vector(5).to_vec()]
        );
        assert_eq!(
            flat_basis(&v, &m, set(&[1, 2])).unwrap_err(),
            Error::NotAFlat(set(&[1, 2]))
        );
    }

    #[test]
    fn six_point_raw_determinants_in_the_lex_basis() {
        let v = six_point_config();
        let m = six_point();
        let chi = chi_ot(&v, &m, &FlatBasisAssignment::lex()).unwrap();
        // coordinates in (v1, v2, v4): v5 = -v1 + 2 v4, v6 = -1/3 v1 + 2/3 v2 + 2/3 v4
        assert_eq!(chi.eval(&[1, 2, 5]), int(2));
        assert_eq!(chi.eval(&[1, 6, 5]), frac(4, 3));
        assert_eq!(chi.eval(&[1, 2, 4]), int(1));
        assert_eq!(chi.eval(&[1, 2, 3]), int(0));
        assert_eq!(chi.eval(&[1, 2, 5]) / chi.eval(&[1, 6, 5]), frac(3, 2));
        assert_eq!(chi.eval(&[1, 5, 2]) / chi.eval(&[3, 5, 2]), int(-1));
        assert_eq!(chi.eval(&[1, 3, 5]) / chi.eval(&[2, 3, 5]), int(2));
    }

    #[test]
    fn cordovil_is_the_sign_of_ot() {
        let v = six_point_config();
        let m = six_point();
        let ot = chi_ot(&v, &m, &FlatBasisAssignment::lex()).unwrap();
        let co = chi_cordovil(&v, &m, &FlatBasisAssignment::lex()).unwrap();
        for k in 0..=3 {
            for s in subsets_of_size(6, k) {
                assert_eq!(co.eval_set(s), ot.eval_set(s).signum());
            }
        }
        assert_eq!(co.eval(&[1, 2, 5]) * co.eval(&[1, 6, 5]), int(1));
        assert_eq!(co.eval(&[1, 2, 6]) * co.eval(&[1, 5, 6]), int(-1));
    }

    #[test]
    fn ratios_do_not_depend_on_the_flat_basis() {
        let v = six_point_config();
        let m = six_point();
        let lex = chi_ot(&v, &m, &FlatBasisAssignment::lex()).unwrap();
        let mut other = FlatBasisAssignment::lex();
        other
            .set(
                &v,
                &m,
                m.ground(),
                vec![
                    vec![int(1), int(2), int(0)],
                    vec![int(0), int(1), int(-1)],
                    vec![int(3), int(0), int(1)],
                ],
            )
            .unwrap();
        other
            .set(
                &v,
                &m,
                set(&[2, 5, 6]),
                vec![v.vector(6).to_vec(), v.vector(2).to_vec()],
            )
            .unwrap();
        let alt = chi_ot(&v, &m, &other).unwrap();
        let pairs = [
            ([1, 2, 5], [1, 6, 5]),
            ([1, 3, 5], [2, 3, 5]),
            ([1, 2, 6], [1, 5, 6]),
        ];
        for (a, b) in pairs {
            assert_eq!(lex.eval(&a) / lex.eval(&b), alt.eval(&a) / alt.eval(&b));
        }
        assert_eq!(
            lex.eval(&[2, 5]) / lex.eval(&[2, 6]),
            alt.eval(&[2, 5]) / alt.eval(&[2, 6])
        );
    }

    #[test]
    fn invalid_flat_bases_are_rejected() {
        let v = six_point_config();
        let m = six_point();
        let mut a = FlatBasisAssignment::lex();
        assert!(matches!(
            a.set(&v, &m, set(&[1, 2, 3]), vec![v.vector(1).to_vec()]),
            Err(Error::InvalidFlatBasis(_))
        ));
        assert!(matches!(
            a.set(
                &v,
                &m,
                set(&[1, 2, 3]),
                vec![v.vector(1).to_vec(), v.vector(4).to_vec()]
            ),
            Err(Error::InvalidFlatBasis(_))
        ));
    }

    #[test]
    fn affine_check() {
        assert!(six_point_config().check_affine().is_ok());
        let v = VectorConfig::from_integers(2, &[vec![1, 1], vec![1, 2]]).unwrap();
        assert_eq!(v.check_affine(), Err(Error::NotAffineNormalized(2)));
    }
}
