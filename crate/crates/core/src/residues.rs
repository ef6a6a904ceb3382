//! Deletion and contraction of χ-algebras, iterated residues, flags and
//! diagonal bases.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{
    ideal_degree_basis, ideal_degree_generators, AlgebraElement, BetaSystem, DegreeQuotient,
};
use crate::chi_map::ChiMap;
use crate::elements::{
    check_permutation, permuted_word, word_set, Element, ElementOrder, ElementSet,
};
use crate::error::{Error, Result};
use crate::linalg::{coordinates, rank, Rational};
use crate::matroid::{Matroid, Relabel};
use crate::realization::{chi_ot, circuits_from_vectors, FlatBasisAssignment, VectorConfig};

/// Closures of the suffixes of an ordered independent set, read from the
/// last element backward: `cl{i_p} ⊊ cl{i_p, i_{p-1}} ⊊ … ⊊ cl{i_1, …, i_p}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Flag {
    chain: Vec<ElementSet>,
}

impl Flag {
    pub fn chain(&self) -> &[ElementSet] {
        &self.chain
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }
}

pub fn flag(matroid: &Matroid, word: &[Element]) -> Result<Flag> {
    let set = word_set(word)?;
    if !matroid.is_independent(set) {
        return Err(Error::DependentInput(set));
    }
    let mut acc = ElementSet::EMPTY;
    let chain = word
        .iter()
        .rev()
        .map(|&e| {
            acc = acc.with(e);
            matroid.closure(acc)
        })
        .collect();
    Ok(Flag { chain })
}

/// The ordering `J^τ` of `target` whose flag is `flag`, if there is one.
/// It exists exactly when `target` meets the `k`-th flat of the chain in
/// `k` elements for every `k`; the element entering at step `k` goes to
/// position `p - k + 1`.
pub fn align_to_flag(matroid: &Matroid, target: ElementSet, flag: &Flag) -> Option<Vec<Element>> {
    let p = flag.len();
    if target.len() != p || !matroid.is_independent(target) {
        return None;
    }
    let mut word = vec![0; p];
    let mut previous = ElementSet::EMPTY;
    for (k, f) in flag.chain.iter().enumerate() {
        let inside = target.intersection(*f);
        if inside.len() != k + 1 || !previous.is_subset(inside) {
            return None;
        }
        word[p - k - 1] = inside
            .difference(previous)
            .first()
            .expect("one new element");
        previous = inside;
    }
    Some(word)
}

/// `M \ x` with `χ_{M\x}`, relabeled onto `1..=n-1`.
pub fn chi_delete(
    matroid: &Matroid,
    chi: &ChiMap,
    x: Element,
) -> Result<(Matroid, ChiMap, Relabel)> {
    let (m, relabel) = matroid.delete(x)?;
    let (c, _) = chi.delete(x)?;
    Ok((m, c, relabel))
}

/// `M / x` with `χ_{M/x}(X) = χ(X∘x)`, relabeled onto `1..=n-1`.
pub fn chi_contract(
    matroid: &Matroid,
    chi: &ChiMap,
    x: Element,
) -> Result<(Matroid, ChiMap, Relabel)> {
    let (m, relabel) = matroid.contract(x)?;
    let (c, _) = chi.contract(x)?;
    Ok((m, c, relabel))
}

/// A nonzero image `coefficient · e_support` in the algebra of `M / x`
/// (support in the contracted labels).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueImage {
    pub coefficient: Rational,
    pub support: ElementSet,
}

/// The contraction map `p_x` on a basis monomial `e_I`, `I` independent.
/// `None` means the image is zero.
pub fn residue_step(
    matroid: &Matroid,
    chi: &ChiMap,
    x: Element,
    set: ElementSet,
) -> Result<Option<ResidueImage>> {
    if x == 0 || x > matroid.n() {
        return Err(Error::ElementOutOfRange {
            element: x,
            n: matroid.n(),
        });
    }
    if matroid.is_loop(x) {
        return Err(Error::LoopContraction(x));
    }
    if !matroid.is_independent(set) {
        return Err(Error::DependentInput(set));
    }
    Ok(residue_step_unchecked(matroid, chi, x, set))
}

fn residue_step_unchecked(
    matroid: &Matroid,
    chi: &ChiMap,
    x: Element,
    set: ElementSet,
) -> Option<ResidueImage> {
    let relabel = Relabel::removing(matroid.n(), x);
    if set.contains(x) {
        return Some(ResidueImage {
            coefficient: Rational::one(),
            support: relabel.set_to_new(set.without(x)).expect("x removed"),
        });
    }
    let y = set.iter().find(|&y| {
        matroid
            .circuits()
            .contains(&ElementSet::from_elements([x, y]))
    })?;
    let rest = set.without(y);
    let mut with_x = rest.to_vec();
    with_x.push(x);
    let mut with_y = rest.to_vec();
    with_y.push(y);
    let coefficient = chi.eval(&with_x) / chi.eval(&with_y);
    if coefficient.is_zero() {
        return None;
    }
    Some(ResidueImage {
        coefficient,
        support: relabel.set_to_new(rest).expect("x not in the set"),
    })
}

/// `p_x` extended linearly to an element whose terms are independent sets
/// (terms on dependent sets must be absent). The result lives in `M / x`.
pub fn residue_of_element(
    matroid: &Matroid,
    chi: &ChiMap,
    x: Element,
    f: &AlgebraElement,
) -> Result<AlgebraElement> {
    let mut out = AlgebraElement::zero();
    for (s, c) in f.terms() {
        if let Some(img) = residue_step(matroid, chi, x, s)? {
            out.add_term(c * img.coefficient, img.support);
        }
    }
    Ok(out)
}

fn check_iterated_input(
    matroid: &Matroid,
    word: &[Element],
    target: ElementSet,
) -> Result<ElementSet> {
    let set = word_set(word)?;
    if let Some(e) = set.iter().find(|&e| e > matroid.n()) {
        return Err(Error::ElementOutOfRange {
            element: e,
            n: matroid.n(),
        });
    }
    if set.len() != target.len() {
        return Err(Error::SizeMismatch(format!(
            "word {word:?} and target {target} have different sizes"
        )));
    }
    for s in [set, target] {
        if !matroid.is_independent(s) {
            return Err(Error::DependentInput(s));
        }
    }
    Ok(set)
}

/// `p_{I^σ}(e_J)`: contract the letters of `word` from last to first,
/// applying the contraction map at each step.
pub fn iterated_residue(
    matroid: &Matroid,
    chi: &ChiMap,
    word: &[Element],
    target: ElementSet,
) -> Result<Rational> {
    check_iterated_input(matroid, word, target)?;
    let mut m = matroid.clone();
    let mut c = chi.clone();
    let mut labels = Relabel::identity(matroid.n());
    let mut support = target;
    let mut value = Rational::one();
    for &x_orig in word.iter().rev() {
        let x = labels.to_new(x_orig).expect("letters are contracted once");
        match residue_step(&m, &c, x, support)? {
            None => return Ok(Rational::zero()),
            Some(img) => {
                value *= img.coefficient;
                support = img.support;
            }
        }
        let (m2, c2, rel) = chi_contract(&m, &c, x)?;
        m = m2;
        c = c2;
        labels = labels.then(&rel);
    }
    debug_assert!(support.is_empty());
    Ok(value)
}

/// `χ(I^σ)/χ(J^τ)` for the ordering `J^τ` with the same flag as `I^σ`, or
/// zero if no ordering of `J` has that flag.
pub fn iterated_residue_closed_form(
    matroid: &Matroid,
    chi: &ChiMap,
    word: &[Element],
    target: ElementSet,
) -> Result<Rational> {
    check_iterated_input(matroid, word, target)?;
    let f = flag(matroid, word)?;
    Ok(match align_to_flag(matroid, target, &f) {
        Some(aligned) => chi.eval(word) / chi.eval(&aligned),
        None => Rational::zero(),
    })
}

/// A set with a fixed one-line permutation `σ` (1-based) of its increasing
/// enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateEntry {
    pub set: Vec<Element>,
    pub sigma: Vec<usize>,
}

/// A family of equal-size sets, each with an ordering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalBasisCandidate {
    entries: Vec<(ElementSet, Vec<usize>)>,
}

#[derive(Serialize, Deserialize)]
struct CandidateRecord {
    entries: Vec<CandidateEntry>,
}

impl DiagonalBasisCandidate {
    pub fn new(entries: Vec<(ElementSet, Vec<usize>)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let size = entries.first().map(|(s, _)| s.len());
        for (s, sigma) in &entries {
            check_permutation(sigma, s.len())?;
            if Some(s.len()) != size {
                return Err(Error::SizeMismatch(format!(
                    "entry {s} has a different size"
                )));
            }
            if !seen.insert(*s) {
                return Err(Error::Invalid(format!("entry {s} appears twice")));
            }
        }
        Ok(DiagonalBasisCandidate { entries })
    }

    /// Every set ordered increasingly.
    pub fn with_identity(sets: &[ElementSet]) -> Result<Self> {
        DiagonalBasisCandidate::new(sets.iter().map(|&s| (s, (1..=s.len()).collect())).collect())
    }

    /// The `order`-nbc sets of size `degree`, each read in increasing `order`.
    pub fn nbc(matroid: &Matroid, order: &ElementOrder, degree: usize) -> Self {
        let entries = matroid
            .nbc_sets(order, degree)
            .into_iter()
            .map(|s| {
                let natural = s.to_vec();
                let sigma = order
                    .sorted(s)
                    .iter()
                    .map(|e| natural.iter().position(|x| x == e).expect("member") + 1)
                    .collect();
                (s, sigma)
            })
            .collect();
        DiagonalBasisCandidate::new(entries).expect("nbc sets are distinct and equal-sized")
    }

    pub fn from_records(entries: Vec<CandidateEntry>, n: usize) -> Result<Self> {
        let mut out = Vec::new();
        for e in entries {
            let set = word_set(&e.set)?;
            ElementSet::checked(n, e.set.iter().copied())?;
            out.push((set, e.sigma));
        }
        DiagonalBasisCandidate::new(out)
    }

    pub fn from_json(text: &str, n: usize) -> Result<Self> {
        let record: CandidateRecord =
            serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))?;
        DiagonalBasisCandidate::from_records(record.entries, n)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&CandidateRecord {
            entries: self
                .entries
                .iter()
                .map(|(s, sigma)| CandidateEntry {
                    set: s.to_vec(),
                    sigma: sigma.clone(),
                })
                .collect(),
        })
        .expect("serializable")
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.entries.first().map(|(s, _)| s.len())
    }

    pub fn sets(&self) -> Vec<ElementSet> {
        self.entries.iter().map(|(s, _)| *s).collect()
    }

    pub fn entries(&self) -> &[(ElementSet, Vec<usize>)] {
        &self.entries
    }

    /// The ordered words `I^{σ_I}`.
    pub fn words(&self) -> Vec<Vec<Element>> {
        self.entries
            .iter()
            .map(|(s, sigma)| permuted_word(*s, sigma).expect("validated"))
            .collect()
    }
}

/// Why `candidate` fails to be a diagonal basis, or `None` if it is one:
/// independent entries, at least `|nbc|` of them, and no entry `J ≠ I`
/// has an ordering `J^τ` with `Flag(J^τ) = Flag(I^{σ_I})`. The last
/// condition is checked by trying every `τ`.
pub fn diagonal_basis_violation(
    matroid: &Matroid,
    candidate: &DiagonalBasisCandidate,
) -> Option<String> {
    let Some(degree) = candidate.degree() else {
        return Some("the candidate is empty".into());
    };
    for s in candidate.sets() {
        if !matroid.is_independent(s) {
            return Some(format!("{s} is dependent"));
        }
    }
    let needed = matroid
        .nbc_sets(&ElementOrder::natural(matroid.n()), degree)
        .len();
    if candidate.len() < needed {
        return Some(format!(
            "{} entries but the degree-{degree} component has dimension {needed}",
            candidate.len()
        ));
    }
    let words = candidate.words();
    let flags: Vec<Flag> = words
        .iter()
        .map(|w| flag(matroid, w).expect("independent"))
        .collect();
    for (i, f) in flags.iter().enumerate() {
        for (j, other) in candidate.sets().into_iter().enumerate() {
            if i == j {
                continue;
            }
            for tau in other.to_vec().into_iter().permutations(degree) {
                if flag(matroid, &tau).expect("independent") == *f {
                    return Some(format!(
                        "{} ordered as {tau:?} has the flag of {:?}",
                        other, words[i]
                    ));
                }
            }
        }
    }
    None
}

pub fn is_diagonal_basis(matroid: &Matroid, candidate: &DiagonalBasisCandidate) -> bool {
    diagonal_basis_violation(matroid, candidate).is_none()
}

fn require_diagonal(matroid: &Matroid, candidate: &DiagonalBasisCandidate) -> Result<()> {
    match diagonal_basis_violation(matroid, candidate) {
        Some(reason) => Err(Error::NotDiagonal(reason)),
        None => Ok(()),
    }
}

/// `[p_{I^{σ_I}}(e_J)]` with rows `I` and columns `J` over the entries.
pub fn dual_pairing_matrix(
    matroid: &Matroid,
    chi: &ChiMap,
    candidate: &DiagonalBasisCandidate,
) -> Result<Vec<Vec<Rational>>> {
    require_diagonal(matroid, candidate)?;
    let words = candidate.words();
    let sets = candidate.sets();
    words
        .iter()
        .map(|w| {
            sets.iter()
                .map(|&j| iterated_residue(matroid, chi, w, j))
                .collect()
        })
        .collect()
}

/// Coefficients of `e_J` in a diagonal basis, given by the iterated
/// residues `p_{I^{σ_I}}(e_J)`.
pub fn expand_in_diagonal_basis(
    matroid: &Matroid,
    chi: &ChiMap,
    candidate: &DiagonalBasisCandidate,
    target: ElementSet,
) -> Result<AlgebraElement> {
    require_diagonal(matroid, candidate)?;
    if !matroid.is_independent(target) {
        return Err(Error::DependentInput(target));
    }
    if Some(target.len()) != candidate.degree() {
        return Err(Error::SizeMismatch(format!(
            "target {target} does not have the candidate's size"
        )));
    }
    let mut out = AlgebraElement::zero();
    for (w, s) in candidate.words().iter().zip(candidate.sets()) {
        out.add_term(iterated_residue(matroid, chi, w, target)?, s);
    }
    Ok(out)
}

/// The expansion of `expand_in_diagonal_basis` by linear algebra alone:
/// reduce every `e_I` and `e_J` modulo the ideal and solve for the
/// coefficients. The orderings `σ` play no role here; they only select the
/// dual residues.
pub fn expand_in_basis_oracle(
    matroid: &Matroid,
    chi: &ChiMap,
    beta: &BetaSystem,
    candidate: &DiagonalBasisCandidate,
    target: ElementSet,
) -> Result<AlgebraElement> {
    let degree = target.len();
    if Some(degree) != candidate.degree() {
        return Err(Error::SizeMismatch(format!(
            "target {target} does not have the candidate's size"
        )));
    }
    let q = DegreeQuotient::new(
        matroid.n(),
        degree,
        &ElementOrder::natural(matroid.n()),
        &ideal_degree_generators(matroid, chi, beta, degree),
    );
    let reduce = |f: &AlgebraElement| q.to_vector(&q.normal_form(f));
    let basis: Vec<Vec<Rational>> = candidate
        .sets()
        .into_iter()
        .map(|i| reduce(&AlgebraElement::monomial(i)))
        .collect();
    if rank(&basis) != basis.len() {
        return Err(Error::InconsistentSystem(
            "candidate monomials are linearly dependent in the quotient".into(),
        ));
    }
    let coefficients =
        coordinates(&basis, &reduce(&AlgebraElement::monomial(target))).ok_or_else(|| {
            Error::InconsistentSystem(format!("e_{target} is outside the span of the candidate"))
        })?;
    Ok(AlgebraElement::from_terms(
        candidate.sets().into_iter().zip(coefficients),
    ))
}

/// Sum of the expansion coefficients of `e_J` in a diagonal basis for the
/// Orlik-Solomon-Terao map of an affine configuration (last coordinate 1).
pub fn residue_sum_check(
    config: &VectorConfig,
    assignment: &FlatBasisAssignment,
    candidate: &DiagonalBasisCandidate,
    target: ElementSet,
) -> Result<Rational> {
    config.check_affine()?;
    let matroid = circuits_from_vectors(config);
    let chi = chi_ot(config, &matroid, assignment)?;
    let expansion = expand_in_diagonal_basis(&matroid, &chi, candidate, target)?;
    Ok(expansion
        .terms()
        .fold(Rational::zero(), |acc, (_, c)| acc + c))
}

/// Checks of the sequence `0 → A_ℓ(M\x) → A_ℓ(M) → A_{ℓ-1}(M/x) → 0`
/// in one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactSequenceDegree {
    pub degree: usize,
    pub dim: usize,
    pub dim_deletion: usize,
    pub dim_contraction: usize,
    /// `dim` agrees with the quotient dimension computed from the ideal.
    pub dim_matches_quotient: bool,
    /// nbc sets of `M` (with `x` last) split into those of `M \ x` and
    /// `x` added to those of `M / x`.
    pub partition_holds: bool,
    /// `p_x` sends every ideal generator to zero in `A(M/x)`.
    pub residue_well_defined: bool,
    /// `p_x(e_{I ∪ x}) = e_I` for the nbc sets `I` of `M / x`.
    pub section_holds: bool,
    /// Images of the nbc monomials of `M \ x` lie in the kernel of `p_x`.
    pub inclusion_in_kernel: bool,
    pub residue_rank: usize,
    pub inclusion_rank: usize,
}

impl ExactSequenceDegree {
    pub fn passed(&self) -> bool {
        self.dim == self.dim_deletion + self.dim_contraction
            && self.dim_matches_quotient
            && self.partition_holds
            && self.residue_well_defined
            && self.section_holds
            && self.inclusion_in_kernel
            && self.residue_rank == self.dim_contraction
            && self.inclusion_rank == self.dim_deletion
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactSequenceReport {
    pub element: Element,
    pub degrees: Vec<ExactSequenceDegree>,
}

impl ExactSequenceReport {
    pub fn passed(&self) -> bool {
        self.degrees.iter().all(ExactSequenceDegree::passed)
    }
}

/// Verifies degreewise that deletion and contraction of `x` split the
/// algebra of a simple matroid.
pub fn exact_sequence_check(
    matroid: &Matroid,
    chi: &ChiMap,
    x: Element,
) -> Result<ExactSequenceReport> {
    if !matroid.is_simple() {
        return Err(Error::NotSimple);
    }
    let n = matroid.n();
    let (del, _chi_del, rd) = chi_delete(matroid, chi, x)?;
    let (con, chi_con, rc) = chi_contract(matroid, chi, x)?;
    let natural = ElementOrder::natural(n);
    let natural_minor = ElementOrder::natural(n - 1);
    let x_last = ElementOrder::with_last(n, x);

    let mut degrees = Vec::new();
    for degree in 0..=matroid.full_rank() {
        let nbc = matroid.nbc_sets(&natural, degree);
        let nbc_del = del.nbc_sets(&natural_minor, degree);
        let nbc_con = if degree == 0 {
            Vec::new()
        } else {
            con.nbc_sets(&natural_minor, degree - 1)
        };

        let ideal = ideal_degree_basis(matroid, chi, degree);
        let q = DegreeQuotient::new(n, degree, &natural, &ideal);

        let lhs: BTreeSet<ElementSet> = matroid.nbc_sets(&x_last, degree).into_iter().collect();
        let mut rhs: BTreeSet<ElementSet> = nbc_del.iter().map(|&s| rd.set_to_old(s)).collect();
        rhs.extend(nbc_con.iter().map(|&s| rc.set_to_old(s).with(x)));
        let partition_holds = lhs == rhs && lhs.len() == nbc_del.len() + nbc_con.len();

        let mut residue_well_defined = true;
        let mut section_holds = true;
        let mut residue_rank = 0;
        if degree >= 1 {
            let qc = DegreeQuotient::new(
                n - 1,
                degree - 1,
                &natural_minor,
                &ideal_degree_basis(&con, &chi_con, degree - 1),
            );
            for g in ideal
                .iter()
                .filter(|g| g.terms().all(|(s, _)| matroid.is_independent(s)))
            {
                let image = residue_of_element(matroid, chi, x, g)?;
                residue_well_defined &= qc.contains(&image);
            }
            let rows: Vec<Vec<Rational>> = nbc
                .iter()
                .map(|&s| {
                    let image = residue_of_element(matroid, chi, x, &AlgebraElement::monomial(s))?;
                    Ok(qc.to_vector(&qc.normal_form(&image)))
                })
                .collect::<Result<_>>()?;
            residue_rank = rank(&rows);
            for &s in &nbc_con {
                let image = residue_step(matroid, chi, x, rc.set_to_old(s).with(x))?;
                section_holds &= image
                    == Some(ResidueImage {
                        coefficient: Rational::one(),
                        support: s,
                    });
            }
        }

        let mut inclusion_in_kernel = true;
        let mut inclusion_rows = Vec::new();
        for &s in &nbc_del {
            let old = rd.set_to_old(s);
            inclusion_in_kernel &= residue_step(matroid, chi, x, old)?.is_none();
            inclusion_rows.push(q.to_vector(&q.normal_form(&AlgebraElement::monomial(old))));
        }

        degrees.push(ExactSequenceDegree {
            degree,
            dim: nbc.len(),
            dim_deletion: nbc_del.len(),
            dim_contraction: nbc_con.len(),
            dim_matches_quotient: q.dimension() == nbc.len(),
            partition_holds,
            residue_well_defined,
            section_holds,
            inclusion_in_kernel,
            residue_rank,
            inclusion_rank: rank(&inclusion_rows),
        });
    }
    Ok(ExactSequenceReport {
        element: x,
        degrees,
    })
}
