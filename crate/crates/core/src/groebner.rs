//! Term orders, Gröbner bases of the χ-ideal and a degreewise verifier.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::One;
use serde::Serialize;

use crate::algebra::{boundary_of_set, ideal_degree_basis, AlgebraElement, DegreeQuotient};
use crate::chi_map::ChiMap;
use crate::elements::{subsets_of_size, Element, ElementOrder, ElementSet};
use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::matroid::Matroid;

/// Degree-lexicographic order on monomials induced by an order on the
/// ground set: `e_X ≺ e_Y` if `|X| < |Y|`, or the sizes agree and the
/// smallest element of `X △ Y` lies in `X`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TermOrder {
    order: ElementOrder,
}

impl TermOrder {
    pub fn natural(n: usize) -> Self {
        TermOrder {
            order: ElementOrder::natural(n),
        }
    }

    /// Elements listed from smallest to largest.
    pub fn from_sequence(sequence: Vec<Element>) -> Result<Self> {
        Ok(TermOrder {
            order: ElementOrder::from_sequence(sequence)?,
        })
    }

    pub fn element_order(&self) -> &ElementOrder {
        &self.order
    }

    pub fn n(&self) -> usize {
        self.order.n()
    }

    pub fn compare(&self, a: ElementSet, b: ElementSet) -> Ordering {
        self.order.compare_sets(a, b)
    }

    /// Largest monomial of `f` with its coefficient; `None` for `f = 0`.
    pub fn leading_term(&self, f: &AlgebraElement) -> Option<(Rational, ElementSet)> {
        f.terms()
            .max_by(|(a, _), (b, _)| self.compare(*a, *b))
            .map(|(s, c)| (c.clone(), s))
    }

    pub fn leading_monomial(&self, f: &AlgebraElement) -> Option<ElementSet> {
        self.leading_term(f).map(|(_, s)| s)
    }
}

impl From<ElementOrder> for TermOrder {
    fn from(order: ElementOrder) -> Self {
        TermOrder { order }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisKind {
    Reduced,
    Universal,
}

/// Boundaries of a family of circuits, with the circuits they came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    pub kind: BasisKind,
    pub order: Option<TermOrder>,
    pub circuits: Vec<ElementSet>,
    pub elements: Vec<AlgebraElement>,
}

impl GroebnerBasis {
    /// Unit leading coefficients and no term of any element divisible by
    /// the leading monomial of another.
    pub fn is_reduced(&self, order: &TermOrder) -> bool {
        let leads: Vec<Option<(Rational, ElementSet)>> = self
            .elements
            .iter()
            .map(|g| order.leading_term(g))
            .collect();
        if leads
            .iter()
            .any(|l| !matches!(l, Some((c, _)) if c.is_one()))
        {
            return false;
        }
        for (i, g) in self.elements.iter().enumerate() {
            for (j, lead) in leads.iter().enumerate() {
                let lp = lead.as_ref().expect("checked").1;
                if i != j && g.supports().any(|s| lp.is_subset(s)) {
                    return false;
                }
            }
        }
        true
    }
}

fn check_loop_free(matroid: &Matroid) -> Result<()> {
    match matroid.loops().first() {
        Some(e) => Err(Error::LoopPresent(e)),
        None => Ok(()),
    }
}

/// `{∂e_C : C ∈ 𝔠_π}`, each scaled to leading coefficient 1.
pub fn reduced_groebner(
    matroid: &Matroid,
    chi: &ChiMap,
    order: &TermOrder,
) -> Result<GroebnerBasis> {
    let circuits = matroid.minimal_broken_circuit_circuits(order.element_order())?;
    let elements = circuits
        .iter()
        .map(|&c| {
            let d = boundary_of_set(chi, c);
            let (lc, _) = order
                .leading_term(&d)
                .expect("boundaries of circuits are nonzero");
            d.scale(&lc.recip())
        })
        .collect();
    Ok(GroebnerBasis {
        kind: BasisKind::Reduced,
        order: Some(order.clone()),
        circuits,
        elements,
    })
}

/// `{∂e_C : C circuit}`.
pub fn universal_groebner(matroid: &Matroid, chi: &ChiMap) -> Result<GroebnerBasis> {
    check_loop_free(matroid)?;
    let circuits = matroid.circuits().to_vec();
    let elements = circuits.iter().map(|&c| boundary_of_set(chi, c)).collect();
    Ok(GroebnerBasis {
        kind: BasisKind::Universal,
        order: None,
        circuits,
        elements,
    })
}

/// Monomial ideal generated by leading monomials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeadingTermIdeal {
    /// The leading monomial of every element, deduplicated and sorted.
    pub leading_monomials: Vec<ElementSet>,
    /// Minimal generators under inclusion, sorted.
    pub generators: Vec<ElementSet>,
}

impl LeadingTermIdeal {
    pub fn from_monomials<I: IntoIterator<Item = ElementSet>>(monomials: I) -> Self {
        let leading: BTreeSet<ElementSet> = monomials.into_iter().collect();
        let generators = leading
            .iter()
            .filter(|&&m| !leading.iter().any(|&o| o != m && o.is_subset(m)))
            .copied()
            .collect();
        LeadingTermIdeal {
            leading_monomials: leading.into_iter().collect(),
            generators,
        }
    }

    pub fn contains(&self, monomial: ElementSet) -> bool {
        self.generators.iter().any(|g| g.is_subset(monomial))
    }

    /// Same monomial ideal.
    pub fn same_ideal(&self, other: &LeadingTermIdeal) -> bool {
        self.generators == other.generators
    }
}

pub fn leading_term_ideal(order: &TermOrder, elements: &[AlgebraElement]) -> LeadingTermIdeal {
    LeadingTermIdeal::from_monomials(elements.iter().filter_map(|g| order.leading_monomial(g)))
}

/// Standard monomials of degree `degree` for the reduced basis of `order`.
pub fn canonical_basis(
    matroid: &Matroid,
    chi: &ChiMap,
    order: &TermOrder,
    degree: usize,
) -> Result<Vec<ElementSet>> {
    let basis = reduced_groebner(matroid, chi, order)?;
    let lt = leading_term_ideal(order, &basis.elements);
    Ok(subsets_of_size(matroid.n(), degree)
        .filter(|&s| !lt.contains(s))
        .collect())
}

/// Whether `elements` is a Gröbner basis of the χ-ideal for `order`.
///
/// Every element must lie in the ideal (`NotInIdeal` otherwise). Then, in
/// each degree up to `rank + 1`, the leading monomials of the ideal
/// component (pivots of its echelon form with columns in decreasing term
/// order) must be exactly the monomials divisible by some leading monomial
/// of `elements`. Higher degrees need no check: every monomial of degree
/// above the rank is dependent, and once all monomials of degree
/// `rank + 1` are divisible by a leading monomial so are all larger ones.
pub fn is_groebner(
    matroid: &Matroid,
    chi: &ChiMap,
    order: &TermOrder,
    elements: &[AlgebraElement],
) -> Result<bool> {
    let n = matroid.n();
    let top = n.min(matroid.full_rank() + 1);
    let needed: BTreeSet<usize> = (0..=top)
        .chain(elements.iter().flat_map(|g| g.supports().map(|s| s.len())))
        .collect();
    let quotients: Vec<Option<DegreeQuotient>> = (0..=n)
        .map(|d| {
            needed.contains(&d).then(|| {
                DegreeQuotient::new(
                    n,
                    d,
                    order.element_order(),
                    &ideal_degree_basis(matroid, chi, d),
                )
            })
        })
        .collect();
    let quotient = |d: usize| {
        quotients[d]
            .as_ref()
            .expect("built for every needed degree")
    };
    for (index, g) in elements.iter().enumerate() {
        let mut by_degree: Vec<AlgebraElement> = vec![AlgebraElement::zero(); n + 1];
        for (s, c) in g.terms() {
            by_degree[s.len()].add_term(c.clone(), s);
        }
        if g.is_zero()
            || by_degree
                .iter()
                .enumerate()
                .any(|(d, part)| !part.is_zero() && !quotient(d).contains(part))
        {
            return Err(Error::NotInIdeal(index));
        }
    }
    let lt = leading_term_ideal(order, elements);
    for d in 0..=top {
        let q = quotient(d);
        let mut expected: Vec<ElementSet> =
            subsets_of_size(n, d).filter(|&s| lt.contains(s)).collect();
        expected.sort();
        if q.leading_monomials() != expected {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Term order placing the elements of `circuit` first (in increasing
/// order), then the rest increasing. For this order `lp(∂e_C)` is divisible
/// by no other circuit's leading monomial.
pub fn minimality_witness(n: usize, circuit: ElementSet) -> TermOrder {
    ElementOrder::with_prefix(n, circuit).into()
}

/// For each circuit `C`: the witnessing order, and whether the universal
/// basis without `∂e_C` fails to be Gröbner for it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalityWitness {
    pub circuit: ElementSet,
    pub order: TermOrder,
    pub removal_breaks_basis: bool,
}

pub fn universal_minimality_check(
    matroid: &Matroid,
    chi: &ChiMap,
) -> Result<Vec<MinimalityWitness>> {
    let universal = universal_groebner(matroid, chi)?;
    let mut out = Vec::new();
    for (i, &c) in universal.circuits.iter().enumerate() {
        let order = minimality_witness(matroid.n(), c);
        let rest: Vec<AlgebraElement> = universal
            .elements
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let still = is_groebner(matroid, chi, &order, &rest)?;
        out.push(MinimalityWitness {
            circuit: c,
            order,
            removal_breaks_basis: !still,
        });
    }
    Ok(out)
}
