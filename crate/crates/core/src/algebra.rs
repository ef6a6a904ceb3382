//! The graded algebra `A_Φ` on square-free monomials, χ-boundaries, and
//! degreewise computations in the quotient by the χ-ideal.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::chi_map::{ChiKind, ChiMap};
use crate::elements::{subsets_of_size, word_set, Element, ElementOrder, ElementSet};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, Rational};
use crate::matroid::Matroid;
use crate::residues::{align_to_flag, flag};

/// Commutation scalars: `e_j e_i = β(i, j) e_i e_j` for `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BetaSystem {
    /// `β ≡ -1`
    Exterior,
    /// `β ≡ +1`
    Commutative,
    Custom(CustomBeta),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CustomBeta {
    n: usize,
    values: BTreeMap<(Element, Element), Rational>,
}

impl BetaSystem {
    /// Every pair `i < j` of `1..=n` needs a nonzero value.
    pub fn custom(n: usize, values: BTreeMap<(Element, Element), Rational>) -> Result<Self> {
        for i in 1..=n {
            for j in i + 1..=n {
                match values.get(&(i, j)) {
                    None => return Err(Error::InvalidBeta(format!("missing value for ({i},{j})"))),
                    Some(v) if v.is_zero() => {
                        return Err(Error::InvalidBeta(format!("zero value for ({i},{j})")))
                    }
                    Some(_) => {}
                }
            }
        }
        if let Some((i, j)) = values.keys().find(|(i, j)| i >= j || *j > n) {
            return Err(Error::InvalidBeta(format!("unexpected pair ({i},{j})")));
        }
        Ok(BetaSystem::Custom(CustomBeta { n, values }))
    }

    /// Exterior for Orlik-Solomon, commutative for the determinant-based maps.
    pub fn default_for(kind: ChiKind) -> Self {
        match kind {
            ChiKind::OrlikSolomon => BetaSystem::Exterior,
            _ => BetaSystem::Commutative,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            BetaSystem::Exterior => "exterior",
            BetaSystem::Commutative => "commutative",
            BetaSystem::Custom(_) => "custom",
        }
    }

    /// `β(i, j)` for `i < j`.
    pub fn value(&self, i: Element, j: Element) -> Rational {
        debug_assert!(i < j);
        match self {
            BetaSystem::Exterior => -Rational::one(),
            BetaSystem::Commutative => Rational::one(),
            BetaSystem::Custom(c) => c.values[&(i, j)].clone(),
        }
    }

    pub fn ground_size(&self) -> Option<usize> {
        match self {
            BetaSystem::Custom(c) => Some(c.n),
            _ => None,
        }
    }
}

/// Rewrites the product `e_{w_1} ⋯ e_{w_k}` as `c · e_{set(w)}`. Returns
/// `None` when the word repeats an element (the product vanishes).
pub fn canonicalize_word(beta: &BetaSystem, word: &[Element]) -> Option<(Rational, ElementSet)> {
    let set = word_set(word).ok()?;
    let mut scalar = Rational::one();
    for (p, &a) in word.iter().enumerate() {
        for &b in &word[p + 1..] {
            if a > b {
                // each inverted pair is swapped exactly once while sorting
                scalar *= beta.value(b, a);
            }
        }
    }
    Some((scalar, set))
}

/// `e_a · e_b` for words `a`, `b`.
pub fn mono_mul(beta: &BetaSystem, a: &[Element], b: &[Element]) -> Option<(Rational, ElementSet)> {
    let word: Vec<Element> = a.iter().chain(b).copied().collect();
    canonicalize_word(beta, &word)
}

/// A square-free monomial `e_X`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub ElementSet);

impl Monomial {
    pub fn support(self) -> ElementSet {
        self.0
    }

    pub fn degree(self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let labels: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        write!(f, "e_{{{}}}", labels.join(","))
    }
}

/// A finite rational combination of monomials with no zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AlgebraElement {
    terms: BTreeMap<ElementSet, Rational>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement::default()
    }

    pub fn one() -> Self {
        AlgebraElement::monomial(ElementSet::EMPTY)
    }

    pub fn monomial(support: ElementSet) -> Self {
        AlgebraElement::term(Rational::one(), support)
    }

    pub fn term(coefficient: Rational, support: ElementSet) -> Self {
        let mut f = AlgebraElement::zero();
        f.add_term(coefficient, support);
        f
    }

    /// The product `e_{w_1} ⋯ e_{w_k}` written in canonical form.
    pub fn word(beta: &BetaSystem, word: &[Element]) -> Self {
        match canonicalize_word(beta, word) {
            Some((c, s)) => AlgebraElement::term(c, s),
            None => AlgebraElement::zero(),
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (ElementSet, Rational)>>(terms: I) -> Self {
        let mut f = AlgebraElement::zero();
        for (s, c) in terms {
            f.add_term(c, s);
        }
        f
    }

    pub fn add_term(&mut self, coefficient: Rational, support: ElementSet) {
        if coefficient.is_zero() {
            return;
        }
        let entry = self.terms.entry(support).or_insert_with(Rational::zero);
        *entry += coefficient;
        if entry.is_zero() {
            self.terms.remove(&support);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, support: ElementSet) -> Rational {
        self.terms
            .get(&support)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Terms ordered by support (degree, then lexicographic).
    pub fn terms(&self) -> impl Iterator<Item = (ElementSet, &Rational)> {
        self.terms.iter().map(|(s, c)| (*s, c))
    }

    pub fn supports(&self) -> impl Iterator<Item = ElementSet> + '_ {
        self.terms.keys().copied()
    }

    /// The common degree of all terms, `None` for zero or mixed degrees.
    pub fn degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(|s| s.len());
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return AlgebraElement::zero();
        }
        AlgebraElement {
            terms: self.terms.iter().map(|(s, v)| (*s, v * c)).collect(),
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> Self {
        let mut f = self.clone();
        for (s, c) in other.terms() {
            f.add_term(c.clone(), s);
        }
        f
    }

    pub fn sub(&self, other: &AlgebraElement) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Product in `A_Φ`.
    pub fn mul(&self, beta: &BetaSystem, other: &AlgebraElement) -> Self {
        let mut f = AlgebraElement::zero();
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                if !a.is_disjoint(b) {
                    continue;
                }
                if let Some((c, s)) = mono_mul(beta, &a.to_vec(), &b.to_vec()) {
                    f.add_term(c * ca * cb, s);
                }
            }
        }
        f
    }

    /// `λ` with `self = λ · other`, if both are nonzero and proportional.
    pub fn proportionality_factor(&self, other: &AlgebraElement) -> Option<Rational> {
        let (s, c) = other.terms().next()?;
        let lambda = self.coefficient(s) / c;
        (!lambda.is_zero() && *self == other.scale(&lambda)).then_some(lambda)
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (s, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let m = Monomial(s);
            if abs.is_one() {
                write!(f, "{m}")?;
            } else if s.is_empty() {
                write!(f, "{abs}")?;
            } else {
                write!(f, "{abs} {m}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    support: Vec<Element>,
    num: String,
    den: String,
}

#[derive(Serialize, Deserialize)]
struct ElementRecord {
    terms: Vec<TermRecord>,
}

impl Serialize for AlgebraElement {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        ElementRecord {
            terms: self
                .terms()
                .map(|(s, c)| TermRecord {
                    support: s.to_vec(),
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for AlgebraElement {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let record = ElementRecord::deserialize(deserializer)?;
        let mut f = AlgebraElement::zero();
        for t in record.terms {
            let support = word_set(&t.support).map_err(D::Error::custom)?;
            let num: BigInt = t.num.parse().map_err(D::Error::custom)?;
            let den: BigInt = t.den.parse().map_err(D::Error::custom)?;
            if den.is_zero() {
                return Err(D::Error::custom("zero denominator"));
            }
            if f.terms.contains_key(&support) {
                return Err(D::Error::custom(format!("repeated support {support}")));
            }
            f.add_term(Rational::new(num, den), support);
        }
        Ok(f)
    }
}

/// `∂e_X = Σ_p (-1)^p χ(X \ i_p) e_{X \ i_p}` for `X` read in increasing
/// order, with `∂e_i = 1` on singletons.
pub fn boundary_of_set(chi: &ChiMap, set: ElementSet) -> AlgebraElement {
    match set.len() {
        0 => AlgebraElement::zero(),
        1 => AlgebraElement::one(),
        _ => {
            let mut f = AlgebraElement::zero();
            for (p, e) in set.iter().enumerate() {
                let rest = set.without(e);
                let c = chi.eval_set(rest);
                // p is 0-based here
                f.add_term(if p % 2 == 0 { -c } else { c }, rest);
            }
            f
        }
    }
}

/// Boundary of an ordered word: `∂e_{X^σ} = sgn(σ) ∂e_X`.
pub fn boundary(chi: &ChiMap, word: &[Element]) -> Result<AlgebraElement> {
    let set = word_set(word)?;
    let sign = crate::elements::word_sign(word).expect("distinct elements");
    let f = boundary_of_set(chi, set);
    Ok(if sign < 0 {
        f.scale(&-Rational::one())
    } else {
        f
    })
}

/// Basis of the degree-`degree` part of the χ-ideal: the dependent
/// monomials of that degree and the boundaries of the inactive
/// unidependent sets one size up.
pub fn ideal_degree_basis(matroid: &Matroid, chi: &ChiMap, degree: usize) -> Vec<AlgebraElement> {
    let mut out: Vec<AlgebraElement> = matroid
        .dependent_sets(degree)
        .into_iter()
        .map(AlgebraElement::monomial)
        .collect();
    out.extend(
        matroid
            .inactive_unidependents(degree + 1)
            .into_iter()
            .map(|u| boundary_of_set(chi, u)),
    );
    out
}

/// Spanning set of the degree-`degree` part of the right ideal generated by
/// `∂e_C` (`|C| > 1`) and the loops, straight from the definition: every
/// product `∂e_C · e_Z` and `e_i · e_Z` of the right degree.
pub fn ideal_degree_generators(
    matroid: &Matroid,
    chi: &ChiMap,
    beta: &BetaSystem,
    degree: usize,
) -> Vec<AlgebraElement> {
    let n = matroid.n();
    let mut out = Vec::new();
    for c in matroid.circuits() {
        if c.len() == 1 {
            let i = c.first().expect("nonempty");
            if degree >= 1 {
                for z in subsets_of_size(n, degree - 1) {
                    let mut word = vec![i];
                    word.extend(z.iter());
                    let f = AlgebraElement::word(beta, &word);
                    if !f.is_zero() {
                        out.push(f);
                    }
                }
            }
            continue;
        }
        let k = c.len() - 1;
        if k > degree {
            continue;
        }
        let d = boundary_of_set(chi, *c);
        for z in subsets_of_size(n, degree - k) {
            let f = d.mul(beta, &AlgebraElement::monomial(z));
            if !f.is_zero() {
                out.push(f);
            }
        }
    }
    out
}

/// One graded piece `A_Φ,ℓ / I_ℓ` presented by a spanning set of `I_ℓ`.
///
/// Monomial columns are sorted in decreasing term order, so pivot columns
/// of the reduced echelon form are the leading monomials of the subspace
/// and the remaining columns are the standard monomials.
#[derive(Clone, Debug)]
pub struct DegreeQuotient {
    degree: usize,
    columns: Vec<ElementSet>,
    index: HashMap<ElementSet, usize>,
    echelon: Echelon,
}

impl DegreeQuotient {
    pub fn new(n: usize, degree: usize, order: &ElementOrder, rows: &[AlgebraElement]) -> Self {
        let mut columns: Vec<ElementSet> = subsets_of_size(n, degree).collect();
        columns.sort_by(|a, b| order.compare_sets(*b, *a));
        let index = columns.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let mut q = DegreeQuotient {
            degree,
            columns,
            index,
            echelon: Echelon::new(0),
        };
        q.echelon = Echelon::new(q.columns.len());
        for r in rows {
            let v = q.to_vector(r);
            q.echelon.insert(v);
        }
        q
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn to_vector(&self, f: &AlgebraElement) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.columns.len()];
        for (s, c) in f.terms() {
            let i = *self
                .index
                .get(&s)
                .unwrap_or_else(|| panic!("term {s} outside degree {}", self.degree));
            v[i] = c.clone();
        }
        v
    }

    pub fn from_vector(&self, v: &[Rational]) -> AlgebraElement {
        AlgebraElement::from_terms(
            v.iter()
                .enumerate()
                .map(|(i, c)| (self.columns[i], c.clone())),
        )
    }

    /// Dimension of the ideal component.
    pub fn ideal_dimension(&self) -> usize {
        self.echelon.rank()
    }

    /// Dimension of the quotient.
    pub fn dimension(&self) -> usize {
        self.columns.len() - self.echelon.rank()
    }

    /// Leading monomials of elements of the ideal component, sorted.
    pub fn leading_monomials(&self) -> Vec<ElementSet> {
        let mut out: Vec<ElementSet> = self
            .echelon
            .pivots()
            .into_iter()
            .map(|i| self.columns[i])
            .collect();
        out.sort();
        out
    }

    /// Monomials outside the leading-term space, sorted.
    pub fn standard_monomials(&self) -> Vec<ElementSet> {
        let mut out: Vec<ElementSet> = (0..self.columns.len())
            .filter(|&i| !self.echelon.is_pivot(i))
            .map(|i| self.columns[i])
            .collect();
        out.sort();
        out
    }

    /// The unique representative supported on standard monomials.
    pub fn normal_form(&self, f: &AlgebraElement) -> AlgebraElement {
        self.from_vector(&self.echelon.reduce(self.to_vector(f)))
    }

    pub fn contains(&self, f: &AlgebraElement) -> bool {
        self.normal_form(f).is_zero()
    }
}

fn check_independent(matroid: &Matroid, set: ElementSet) -> Result<()> {
    if matroid.is_independent(set) {
        Ok(())
    } else {
        Err(Error::DependentInput(set))
    }
}

/// Coefficients of `e_J` in the `order`-nbc basis, by matching flags: the
/// nbc set `I`, read in increasing `order`, contributes `χ(I)/χ(J^τ)` when
/// some ordering `J^τ` has the same flag, and nothing otherwise.
pub fn nbc_expand(
    matroid: &Matroid,
    chi: &ChiMap,
    target: ElementSet,
    order: &ElementOrder,
) -> Result<AlgebraElement> {
    check_independent(matroid, target)?;
    let mut out = AlgebraElement::zero();
    for i in matroid.nbc_sets(order, target.len()) {
        let word = order.sorted(i);
        let f = flag(matroid, &word)?;
        if let Some(aligned) = align_to_flag(matroid, target, &f) {
            out.add_term(chi.eval(&word) / chi.eval(&aligned), i);
        }
    }
    Ok(out)
}

/// Coefficients of `e_J` in the `order`-nbc basis by linear algebra alone:
/// reduce `e_J` modulo the definitional spanning set of the ideal in its
/// degree. Fails with `InconsistentSystem` if the standard monomials of
/// that reduction are not the nbc sets.
pub fn nbc_expand_oracle(
    matroid: &Matroid,
    chi: &ChiMap,
    beta: &BetaSystem,
    target: ElementSet,
    order: &ElementOrder,
) -> Result<AlgebraElement> {
    check_independent(matroid, target)?;
    let degree = target.len();
    let q = DegreeQuotient::new(
        matroid.n(),
        degree,
        order,
        &ideal_degree_generators(matroid, chi, beta, degree),
    );
    let standard = q.standard_monomials();
    let mut nbc = matroid.nbc_sets(order, degree);
    nbc.sort();
    if standard != nbc {
        return Err(Error::InconsistentSystem(format!(
            "standard monomials {standard:?} differ from nbc sets {nbc:?} in degree {degree}"
        )));
    }
    Ok(q.normal_form(&AlgebraElement::monomial(target)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chi_map::chi_os;
    use crate::linalg::{frac, int};
    use crate::testing::{set, six_point};

    #[test]
    fn word_products() {
        let ext = BetaSystem::Exterior;
        let com = BetaSystem::Commutative;
        assert_eq!(mono_mul(&ext, &[2], &[1]), Some((int(-1), set(&[1, 2]))));
        assert_eq!(mono_mul(&com, &[2], &[1]), Some((int(1), set(&[1, 2]))));
        assert_eq!(mono_mul(&ext, &[1], &[1]), None);
        assert_eq!(
            canonicalize_word(&ext, &[3, 1, 2]),
            Some((int(1), set(&[1, 2, 3])))
        );
        assert_eq!(
            canonicalize_word(&ext, &[3, 2, 1]),
            Some((int(-1), set(&[1, 2, 3])))
        );
    }

    #[test]
    fn custom_beta_products() {
        let mut values = BTreeMap::new();
        values.insert((1, 2), int(2));
        values.insert((1, 3), int(3));
        values.insert((2, 3), int(5));
        let beta = BetaSystem::custom(3, values.clone()).unwrap();
        // e3 e2 e1 = β12 β13 β23 e1 e2 e3
        assert_eq!(
            canonicalize_word(&beta, &[3, 2, 1]),
            Some((int(30), set(&[1, 2, 3])))
        );
        values.insert((2, 3), int(0));
        assert!(BetaSystem::custom(3, values.clone()).is_err());
        values.remove(&(2, 3));
        assert!(BetaSystem::custom(3, values).is_err());
    }

    #[test]
    fn boundary_of_a_circuit() {
        let chi = chi_os(&six_point());
        let d = boundary(&chi, &[1, 2, 3]).unwrap();
        assert_eq!(d.to_string(), "-e_{1,2} + e_{1,3} - e_{2,3}");
        assert_eq!(boundary(&chi, &[5]).unwrap(), AlgebraElement::one());
        let swapped = boundary(&chi, &[2, 1, 3]).unwrap();
        assert_eq!(swapped, d.scale(&int(-1)));
        assert!(boundary(&chi, &[1, 1]).is_err());
    }

    #[test]
    fn display_and_scaling() {
        let f = AlgebraElement::from_terms([
            (set(&[1, 2, 5]), frac(3, 2)),
            (set(&[1, 2, 6]), frac(-1, 2)),
        ]);
        assert_eq!(f.to_string(), "3/2 e_{1,2,5} - 1/2 e_{1,2,6}");
        assert_eq!(f.degree(), Some(3));
        assert_eq!(AlgebraElement::zero().to_string(), "0");
        assert_eq!(
            AlgebraElement::term(int(-2), ElementSet::EMPTY).to_string(),
            "-2"
        );
        assert!(f.sub(&f).is_zero());
        assert_eq!(f.scale(&int(2)).proportionality_factor(&f), Some(int(2)));
    }

    #[test]
    fn json_shape() {
        let f = AlgebraElement::from_terms([(set(&[1, 2, 5]), frac(3, 2))]);
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(
            json,
            r#"{"terms":[{"support":[1,2,5],"num":"3","den":"2"}]}"#
        );
        let back: AlgebraElement = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
        let bad = r#"{"terms":[{"support":[1,1],"num":"1","den":"1"}]}"#;
        assert!(serde_json::from_str::<AlgebraElement>(bad).is_err());
        let zero_den = r#"{"terms":[{"support":[1],"num":"1","den":"0"}]}"#;
        assert!(serde_json::from_str::<AlgebraElement>(zero_den).is_err());
    }

    #[test]
    fn ideal_component_sizes() {
        let m = six_point();
        let chi = chi_os(&m);
        assert_eq!(ideal_degree_basis(&m, &chi, 2).len(), 4);
        assert_eq!(ideal_degree_basis(&m, &chi, 3).len(), 14);
        assert!(ideal_degree_basis(&Matroid::free(4), &chi_os(&Matroid::free(4)), 2).is_empty());
    }

    #[test]
    fn os_expansions_agree_with_the_oracle() {
        let m = six_point();
        let chi = chi_os(&m);
        let nat = ElementOrder::natural(6);
        let e156 = nbc_expand(&m, &chi, set(&[1, 5, 6]), &nat).unwrap();
        assert_eq!(e156.to_string(), "-e_{1,2,5} + e_{1,2,6}");
        let oracle =
            nbc_expand_oracle(&m, &chi, &BetaSystem::Exterior, set(&[1, 5, 6]), &nat).unwrap();
        assert_eq!(oracle, e156);
        assert_eq!(
            nbc_expand(&m, &chi, set(&[1, 2, 4]), &nat).unwrap(),
            AlgebraElement::monomial(set(&[1, 2, 4]))
        );
        assert_eq!(
            nbc_expand(&m, &chi, set(&[1, 2, 3]), &nat).unwrap_err(),
            Error::DependentInput(set(&[1, 2, 3]))
        );
    }

    #[test]
    fn wrong_commutation_breaks_the_oracle() {
        let m = six_point();
        let chi = chi_os(&m);
        let nat = ElementOrder::natural(6);
        assert!(matches!(
            nbc_expand_oracle(&m, &chi, &BetaSystem::Commutative, set(&[1, 5, 6]), &nat),
            Err(Error::InconsistentSystem(_))
        ));
    }
}
