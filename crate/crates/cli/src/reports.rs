//! Report types. Each serializes to the JSON output and renders the text
//! output; sets are increasing element lists and rationals `p/q` strings.

use std::fmt::Write;

use chios::AlgebraElement;
use serde::{Deserialize, Serialize};

pub trait Render {
    fn render(&self) -> String;
}

fn braces(set: &[usize]) -> String {
    let inner: Vec<String> = set.iter().map(|e| e.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

fn monomial(set: &[usize]) -> String {
    if set.is_empty() {
        "1".into()
    } else {
        format!("e_{}", braces(set))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NbcDegree {
    pub degree: usize,
    pub sets: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NbcReport {
    pub order: Vec<usize>,
    pub degrees: Vec<NbcDegree>,
}

impl Render for NbcReport {
    fn render(&self) -> String {
        let mut out = String::new();
        for d in &self.degrees {
            let sets: Vec<String> = d.sets.iter().map(|s| braces(s)).collect();
            writeln!(out, "ℓ={} ({}): {}", d.degree, d.sets.len(), sets.join(" ")).unwrap();
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimsRow {
    pub degree: usize,
    pub nbc: usize,
    pub inactive_unidependents: usize,
    pub dependent: usize,
    pub total: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimsReport {
    pub order: Vec<usize>,
    pub rows: Vec<DimsRow>,
}

impl Render for DimsReport {
    fn render(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            writeln!(
                out,
                "ℓ={}: {}+{}+{}={}",
                r.degree, r.nbc, r.inactive_unidependents, r.dependent, r.total
            )
            .unwrap();
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroebnerEntry {
    pub circuit: Vec<usize>,
    pub leading_monomial: Vec<usize>,
    pub element: AlgebraElement,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroebnerReport {
    pub kind: String,
    pub order: Vec<usize>,
    pub elements: Vec<GroebnerEntry>,
}

impl Render for GroebnerReport {
    fn render(&self) -> String {
        let mut out = format!("{} basis, {} elements\n", self.kind, self.elements.len());
        for g in &self.elements {
            writeln!(
                out,
                "∂e_{}  lead {}: {}",
                braces(&g.circuit),
                monomial(&g.leading_monomial),
                g.element
            )
            .unwrap();
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LtIdealReport {
    pub order: Vec<usize>,
    pub leading_monomials: Vec<Vec<usize>>,
    pub generators: Vec<Vec<usize>>,
}

impl Render for LtIdealReport {
    fn render(&self) -> String {
        let list = |v: &[Vec<usize>]| v.iter().map(|s| monomial(s)).collect::<Vec<_>>().join(", ");
        format!(
            "leading monomials: {}\nminimal generators: {}\n",
            list(&self.leading_monomials),
            list(&self.generators)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalBasisReport {
    pub order: Vec<usize>,
    pub degree: usize,
    pub monomials: Vec<Vec<usize>>,
}

impl Render for CanonicalBasisReport {
    fn render(&self) -> String {
        let list: Vec<String> = self.monomials.iter().map(|s| monomial(s)).collect();
        format!("ℓ={} ({}): {}\n", self.degree, list.len(), list.join(" "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpandReport {
    pub target: Vec<usize>,
    pub basis: String,
    pub expansion: AlgebraElement,
    /// The linear-algebra route gave the same coefficients.
    pub oracle_agrees: bool,
}

impl Render for ExpandReport {
    fn render(&self) -> String {
        let mut out = format!("{} = {}\n", monomial(&self.target), self.expansion);
        if !self.oracle_agrees {
            out.push_str("warning: elimination gives different coefficients\n");
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueReport {
    pub word: Vec<usize>,
    pub target: Vec<usize>,
    pub value: String,
}

impl Render for ResidueReport {
    fn render(&self) -> String {
        let word: Vec<String> = self.word.iter().map(|e| e.to_string()).collect();
        format!(
            "p_({})({}) = {}\n",
            word.join(","),
            monomial(&self.target),
            self.value
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalReport {
    pub words: Vec<Vec<usize>>,
    pub diagonal: bool,
    pub reason: Option<String>,
    pub pairing_is_identity: Option<bool>,
}

impl Render for DiagonalReport {
    fn render(&self) -> String {
        let mut out = String::new();
        if self.diagonal {
            writeln!(out, "diagonal basis: yes ({} words)", self.words.len()).unwrap();
        } else {
            writeln!(out, "diagonal basis: no").unwrap();
        }
        if let Some(reason) = &self.reason {
            writeln!(out, "reason: {reason}").unwrap();
        }
        if let Some(identity) = self.pairing_is_identity {
            writeln!(
                out,
                "dual pairing is the identity: {}",
                if identity { "yes" } else { "no" }
            )
            .unwrap();
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactSeqRow {
    pub degree: usize,
    pub dim: usize,
    pub dim_deletion: usize,
    pub dim_contraction: usize,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactSeqReport {
    pub element: usize,
    pub passed: bool,
    pub degrees: Vec<ExactSeqRow>,
}

impl Render for ExactSeqReport {
    fn render(&self) -> String {
        let mut out = String::new();
        for d in &self.degrees {
            writeln!(
                out,
                "ℓ={}: {} = {} + {}  {}",
                d.degree,
                d.dim,
                d.dim_deletion,
                d.dim_contraction,
                if d.passed { "ok" } else { "FAILED" }
            )
            .unwrap();
        }
        writeln!(
            out,
            "exact at {}: {}",
            self.element,
            if self.passed { "yes" } else { "no" }
        )
        .unwrap();
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyRow {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub passed: bool,
    pub properties: Vec<PropertyRow>,
}

impl Render for VerifyReport {
    fn render(&self) -> String {
        let mut out = String::new();
        for p in &self.properties {
            writeln!(
                out,
                "{} {}: {}",
                if p.passed { "PASS" } else { "FAIL" },
                p.name,
                p.detail
            )
            .unwrap();
        }
        out
    }
}
