//! Invariant suite run on a matroid with a χ-map: the structural identities
//! every χ-algebra must satisfy, checked exactly.

use itertools::Itertools;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{
    boundary_of_set, ideal_degree_basis, ideal_degree_generators, nbc_expand, nbc_expand_oracle,
    AlgebraElement, BetaSystem, DegreeQuotient,
};
use crate::chi_map::{check_nonvanishing, chi_os, ChiKind, ChiMap};
use crate::elements::{subsets_of_size, word_sign, ElementOrder, ElementSet};
use crate::error::Result;
use crate::groebner::{
    canonical_basis, is_groebner, reduced_groebner, universal_groebner, TermOrder,
};
use crate::linalg::{int, rank, Rational};
use crate::matroid::Matroid;
use crate::realization::{
    chi_cordovil, chi_ot, circuits_from_vectors, FlatBasisAssignment, VectorConfig,
};
use crate::residues::{dual_pairing_matrix, exact_sequence_check, DiagonalBasisCandidate};

/// A matroid with a χ-map and commutation scalars.
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub matroid: Matroid,
    pub chi: ChiMap,
    pub beta: BetaSystem,
    pub vectors: Option<VectorConfig>,
}

impl Instance {
    pub fn new(name: impl Into<String>, matroid: Matroid, chi: ChiMap, beta: BetaSystem) -> Self {
        Instance {
            name: name.into(),
            matroid,
            chi,
            beta,
            vectors: None,
        }
    }

    /// Matroid of the configuration with the χ-map of `kind` (lexicographic
    /// flat bases) and its default commutation scalars.
    pub fn from_vectors(
        name: impl Into<String>,
        vectors: VectorConfig,
        kind: ChiKind,
    ) -> Result<Self> {
        let matroid = circuits_from_vectors(&vectors);
        let lex = FlatBasisAssignment::lex();
        let chi = match kind {
            ChiKind::OrlikSolomonTerao => chi_ot(&vectors, &matroid, &lex)?,
            ChiKind::Cordovil => chi_cordovil(&vectors, &matroid, &lex)?,
            _ => chi_os(&matroid),
        };
        Ok(Instance {
            name: name.into(),
            matroid,
            chi,
            beta: BetaSystem::default_for(kind),
            vectors: Some(vectors),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl PropertyResult {
    fn check(name: &'static str, failure: Option<String>, ok_detail: impl Into<String>) -> Self {
        match failure {
            None => PropertyResult {
                name,
                passed: true,
                detail: ok_detail.into(),
            },
            Some(detail) => PropertyResult {
                name,
                passed: false,
                detail,
            },
        }
    }
}

fn random_orders(n: usize, count: usize, rng: &mut ChaCha8Rng) -> Vec<ElementOrder> {
    (0..count)
        .map(|_| {
            let mut seq: Vec<usize> = (1..=n).collect();
            seq.shuffle(rng);
            ElementOrder::from_sequence(seq).expect("shuffled identity")
        })
        .collect()
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Runs every invariant; random term orders come from `seed`.
pub fn run_suite(instance: &Instance, seed: u64) -> Vec<PropertyResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = &instance.matroid;
    let n = m.n();
    let orders = random_orders(n, 5, &mut rng);
    let loop_free = m.is_loop_free();
    let mut out = vec![
        chi_antisymmetry(instance),
        chi_nonvanishing(instance),
        nbc_count_invariance(m, &orders[..3]),
        dimension_identity(m),
        quotient_dimension(instance),
        spanning_sets_agree(instance),
        circuits_vanish(instance),
        proportionality(instance),
    ];
    if loop_free {
        out.push(canonical_bases(instance, &orders));
        out.push(groebner_verified(instance, &orders[..2]));
        out.push(expansion_routes_agree(instance, &orders[0]));
        out.push(dual_pairing(instance));
    } else {
        for name in [
            "canonical-basis-is-nbc",
            "groebner-bases-verify",
            "nbc-expansion-routes-agree",
            "nbc-dual-pairing",
        ] {
            out.push(PropertyResult {
                name,
                passed: true,
                detail: "skipped: the matroid has loops".into(),
            });
        }
    }
    out.push(exact_sequences(instance));
    if let Some(v) = &instance.vectors {
        if instance.chi.kind() == ChiKind::OrlikSolomonTerao && v.check_affine().is_ok() {
            out.push(affine_boundary_sums(instance));
        }
    }
    out
}

fn chi_antisymmetry(inst: &Instance) -> PropertyResult {
    let m = &inst.matroid;
    let mut failure = None;
    'outer: for k in 0..=m.full_rank().min(4) {
        for s in m.independent_sets(k) {
            let base = inst.chi.eval_set(s);
            for w in s.to_vec().into_iter().permutations(k) {
                let sign = word_sign(&w).expect("distinct");
                let expected = if sign < 0 {
                    -base.clone()
                } else {
                    base.clone()
                };
                if inst.chi.eval(&w) != expected {
                    failure = Some(format!("χ{w:?} is not sgn·χ({s})"));
                    break 'outer;
                }
            }
        }
    }
    PropertyResult::check(
        "chi-antisymmetry",
        failure,
        "χ(X^σ) = sgn(σ)χ(X) on independent sets up to size 4",
    )
}

fn chi_nonvanishing(inst: &Instance) -> PropertyResult {
    let m = &inst.matroid;
    let failure = check_nonvanishing(m, &inst.chi, (m.full_rank() + 1).min(m.n()))
        .map(|s| format!("χ({s}) is zero exactly when it should not be"));
    PropertyResult::check(
        "chi-nonvanishing",
        failure,
        "χ(X) ≠ 0 exactly on independent X",
    )
}

fn nbc_count_invariance(m: &Matroid, orders: &[ElementOrder]) -> PropertyResult {
    let natural = ElementOrder::natural(m.n());
    let mut failure = None;
    let mut counts = Vec::new();
    for k in 0..=m.full_rank() {
        let c = m.nbc_sets(&natural, k).len();
        counts.push(c);
        for o in orders {
            let other = m.nbc_sets(o, k).len();
            if other != c {
                failure = Some(format!(
                    "degree {k}: {c} nbc sets naturally, {other} for {o:?}"
                ));
            }
        }
    }
    PropertyResult::check(
        "nbc-count-permutation-invariant",
        failure,
        format!(
            "counts {counts:?} for the natural and {} random orders",
            orders.len()
        ),
    )
}

fn dimension_identity(m: &Matroid) -> PropertyResult {
    let natural = ElementOrder::natural(m.n());
    let mut failure = None;
    let mut rows = Vec::new();
    for k in 0..=m.n() {
        let nbc = m.nbc_sets(&natural, k).len();
        let uni = m.inactive_unidependents(k + 1).len();
        let dep = m.dependent_sets(k).len();
        let total = binomial(m.n(), k);
        rows.push(format!("{nbc}+{uni}+{dep}={total}"));
        if nbc + uni + dep != total {
            failure = Some(format!("degree {k}: {nbc}+{uni}+{dep} ≠ {total}"));
        }
    }
    PropertyResult::check("dimension-identity", failure, rows.join(", "))
}

fn quotient_dimension(inst: &Instance) -> PropertyResult {
    let m = &inst.matroid;
    let natural = ElementOrder::natural(m.n());
    let mut failure = None;
    for k in 0..=m.full_rank() {
        let q = DegreeQuotient::new(m.n(), k, &natural, &ideal_degree_basis(m, &inst.chi, k));
        let nbc = m.nbc_sets(&natural, k).len();
        if q.dimension() != nbc {
            failure = Some(format!(
                "degree {k}: quotient dimension {} but {nbc} nbc sets",
                q.dimension()
            ));
        }
        if q.ideal_dimension() != ideal_degree_basis(m, &inst.chi, k).len() {
            failure = Some(format!("degree {k}: ideal basis is linearly dependent"));
        }
    }
    PropertyResult::check(
        "quotient-dimension-is-nbc-count",
        failure,
        "dim A_ℓ = |NBC_ℓ| in every degree",
    )
}

fn spanning_sets_agree(inst: &Instance) -> PropertyResult {
    let m = &inst.matroid;
    let natural = ElementOrder::natural(m.n());
    let mut failure = None;
    for k in 0..=m.n() {
        let basis = ideal_degree_basis(m, &inst.chi, k);
        let generators = ideal_degree_generators(m, &inst.chi, &inst.beta, k);
        let qb = DegreeQuotient::new(m.n(), k, &natural, &basis);
        let qg = DegreeQuotient::new(m.n(), k, &natural, &generators);
        let inside = generators.iter().all(|g| qb.contains(g));
        if !inside || qb.ideal_dimension() != qg.ideal_dimension() {
            failure = Some(format!(
                "degree {k}: ideal basis spans dimension {}, definition gives {}",
                qb.ideal_dimension(),
                qg.ideal_dimension()
            ));
            break;
        }
    }
    PropertyResult::check(
        "ideal-basis-spans-the-ideal",
        failure,
        "dependent monomials and inactive boundaries span the ideal from its definition",
    )
}

fn circuits_vanish(inst: &Instance) -> PropertyResult {
    let m = &inst.matroid;
    let natural = ElementOrder::natural(m.n());
    let mut failure = None;
    for c in m.circuits() {
        let q = DegreeQuotient::new(
            m.n(),
            c.len(),
            &natural,
            &ideal_degree_generators(m, &inst.chi, &inst.beta, c.len()),
        );
        if !q.contains(&AlgebraElement::monomial(*c)) {
            failure = Some(format!("e_{c} does not reduce to zero"));
            break;
        }
    }
    PropertyResult::check(
        "circuit-monomials-vanish",
        failure,
        format!("{} circuits", m.circuits().len()),
    )
}

fn unidependents_up_to(m: &Matroid, max: usize) -> Vec<ElementSet> {
    (1..=max.min(m.n()))
        .flat_map(|k| subsets_of_size(m.n(), k))
        .filter(|&s| m.is_unidependent(s))
        .collect()
}

fn proportionality(inst: &Instance) -> PropertyResult {
    let m = &inst.matroid;
    let unis = unidependents_up_to(m, 5);
    let mut pairs = 0;
    let mut failure = None;
    'outer: for &u in &unis {
        let du = boundary_of_set(&inst.chi, u);
        for &v in unis.iter().filter(|&&v| v != u && v.is_subset(u)) {
            pairs += 1;
            let dv = boundary_of_set(&inst.chi, v);
            let product = dv.mul(&inst.beta, &AlgebraElement::monomial(u.difference(v)));
            if du.proportionality_factor(&product).is_none() {
                failure = Some(format!(
                    "∂e_{u} is not a multiple of ∂e_{v}·e_{}",
                    u.difference(v)
                ));
                break 'outer;
            }
        }
    }
    PropertyResult::check(
        "unidependent-proportionality",
        failure,
        format!("{pairs} nested unidependent pairs"),
    )
}

fn canonical_bases(inst: &Instance, orders: &[ElementOrder]) -> PropertyResult {
    let m = &inst.matroid;
    let mut failure = None;
    'outer: for o in orders {
        let term = TermOrder::from(o.clone());
        for k in 0..=m.full_rank() {
            match canonical_basis(m, &inst.chi, &term, k) {
                Ok(basis) if basis == m.nbc_sets(o, k) => {}
                Ok(_) => {
                    failure = Some(format!(
                        "degree {k}: standard monomials differ from nbc sets for {o:?}"
                    ));
                    break 'outer;
                }
                Err(e) => {
                    failure = Some(e.to_string());
                    break 'outer;
                }
            }
        }
    }
    PropertyResult::check(
        "canonical-basis-is-nbc",
        failure,
        format!("{} random orders", orders.len()),
    )
}

fn groebner_verified(inst: &Instance, orders: &[ElementOrder]) -> PropertyResult {
    let m = &inst.matroid;
    let mut failure = None;
    let universal = match universal_groebner(m, &inst.chi) {
        Ok(u) => u,
        Err(e) => return PropertyResult::check("groebner-bases-verify", Some(e.to_string()), ""),
    };
    let mut all = vec![ElementOrder::natural(m.n())];
    all.extend(orders.iter().cloned());
    for o in all {
        let term = TermOrder::from(o.clone());
        let reduced = reduced_groebner(m, &inst.chi, &term);
        let verdict = reduced.and_then(|r| {
            Ok(r.is_reduced(&term)
                && is_groebner(m, &inst.chi, &term, &r.elements)?
                && is_groebner(m, &inst.chi, &term, &universal.elements)?)
        });
        match verdict {
            Ok(true) => {}
            Ok(false) => failure = Some(format!("verification failed for {o:?}")),
            Err(e) => failure = Some(e.to_string()),
        }
    }
    PropertyResult::check(
        "groebner-bases-verify",
        failure,
        "reduced and universal bases pass the degreewise check",
    )
}

fn expansion_routes_agree(inst: &Instance, order: &ElementOrder) -> PropertyResult {
    let m = &inst.matroid;
    let mut failure = None;
    let mut count = 0;
    'outer: for o in [ElementOrder::natural(m.n()), order.clone()] {
        for k in 1..=m.full_rank() {
            for j in m.independent_sets(k) {
                count += 1;
                let flags = nbc_expand(m, &inst.chi, j, &o);
                let oracle = nbc_expand_oracle(m, &inst.chi, &inst.beta, j, &o);
                match (flags, oracle) {
                    (Ok(a), Ok(b)) if a == b => {}
                    (Ok(a), Ok(b)) => {
                        failure = Some(format!(
                            "e_{j} for {o:?}: flags give {a}, elimination gives {b}"
                        ));
                        break 'outer;
                    }
                    (Err(e), _) | (_, Err(e)) => {
                        failure = Some(e.to_string());
                        break 'outer;
                    }
                }
                if inst.chi.kind() == ChiKind::OrlikSolomon {
                    let a = nbc_expand(m, &inst.chi, j, &o).expect("checked");
                    if a.terms().any(|(_, c)| *c != int(1) && *c != int(-1)) {
                        failure = Some(format!(
                            "Orlik-Solomon expansion of e_{j} has a coefficient other than ±1"
                        ));
                        break 'outer;
                    }
                }
            }
        }
    }
    PropertyResult::check(
        "nbc-expansion-routes-agree",
        failure,
        format!("{count} targets expanded by flags and by elimination"),
    )
}

fn dual_pairing(inst: &Instance) -> PropertyResult {
    let m = &inst.matroid;
    let mut failure = None;
    for k in 1..=m.full_rank() {
        let cand = DiagonalBasisCandidate::nbc(m, &ElementOrder::natural(m.n()), k);
        match dual_pairing_matrix(m, &inst.chi, &cand) {
            Ok(mat) => {
                let identity = mat.iter().enumerate().all(|(i, row)| {
                    row.iter()
                        .enumerate()
                        .all(|(j, v)| *v == if i == j { int(1) } else { int(0) })
                });
                if !identity {
                    failure = Some(format!("degree {k}: pairing matrix is not the identity"));
                }
            }
            Err(e) => failure = Some(format!("degree {k}: {e}")),
        }
    }
    PropertyResult::check(
        "nbc-dual-pairing",
        failure,
        "iterated residues are dual to the nbc basis",
    )
}

fn exact_sequences(inst: &Instance) -> PropertyResult {
    let m = &inst.matroid;
    if !m.is_simple() {
        return PropertyResult {
            name: "exact-sequence",
            passed: true,
            detail: "skipped: the matroid is not simple".into(),
        };
    }
    let mut failure = None;
    for x in 1..=m.n() {
        match exact_sequence_check(m, &inst.chi, x) {
            Ok(r) if r.passed() => {}
            Ok(r) => {
                let bad = r
                    .degrees
                    .iter()
                    .find(|d| !d.passed())
                    .expect("a failing degree");
                failure = Some(format!("x = {x}, degree {}: {bad:?}", bad.degree));
                break;
            }
            Err(e) => {
                failure = Some(format!("x = {x}: {e}"));
                break;
            }
        }
    }
    PropertyResult::check("exact-sequence", failure, format!("all {} elements", m.n()))
}

fn affine_boundary_sums(inst: &Instance) -> PropertyResult {
    let m = &inst.matroid;
    let mut failure = None;
    for k in 2..=(m.full_rank() + 1).min(m.n()) {
        for u in m.dependent_sets(k) {
            let sum = boundary_of_set(&inst.chi, u)
                .terms()
                .fold(Rational::zero(), |acc, (_, c)| acc + c);
            if !sum.is_zero() {
                failure = Some(format!("alternating sum over {u} is {sum}"));
            }
        }
    }
    PropertyResult::check(
        "affine-alternating-sums-vanish",
        failure,
        "Σ(-1)^p χ(U \\ i_p) = 0 for dependent U",
    )
}

/// Random configuration of `n` nonzero integer vectors in `Z^d`, entries in
/// `-bound..=bound`, spanning `Q^d`.
pub fn random_integer_config(rng: &mut impl Rng, n: usize, d: usize, bound: i64) -> VectorConfig {
    loop {
        let vectors: Vec<Vec<i64>> = (0..n)
            .map(|_| loop {
                let v: Vec<i64> = (0..d).map(|_| rng.random_range(-bound..=bound)).collect();
                if v.iter().any(|&x| x != 0) {
                    break v;
                }
            })
            .collect();
        let config = VectorConfig::from_integers(d, &vectors).expect("consistent dimensions");
        if rank(config.vectors()) == d {
            return config;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::six_point_config;

    #[test]
    fn six_point_configuration_passes_for_every_kind() {
        for kind in [
            ChiKind::OrlikSolomon,
            ChiKind::OrlikSolomonTerao,
            ChiKind::Cordovil,
        ] {
            let inst = Instance::from_vectors("six points", six_point_config(), kind).unwrap();
            for r in run_suite(&inst, 7) {
                assert!(r.passed, "{kind}: {} failed: {}", r.name, r.detail);
            }
        }
    }

    #[test]
    fn free_matroids_pass_trivially() {
        let m = Matroid::free(3);
        let inst = Instance::new("free", m.clone(), chi_os(&m), BetaSystem::Exterior);
        assert!(run_suite(&inst, 1).iter().all(|r| r.passed));
    }

    #[test]
    fn wrong_commutation_is_detected() {
        let inst = Instance::from_vectors("six points", six_point_config(), ChiKind::OrlikSolomon)
            .unwrap();
        let wrong = Instance {
            beta: BetaSystem::Commutative,
            ..inst
        };
        let results = run_suite(&wrong, 3);
        let prop = results
            .iter()
            .find(|r| r.name == "unidependent-proportionality")
            .unwrap();
        assert!(!prop.passed);
    }

    #[test]
    fn random_configs_have_full_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 3..8 {
            let v = random_integer_config(&mut rng, n, 3, 3);
            assert_eq!(circuits_from_vectors(&v).full_rank(), 3);
        }
    }
}
