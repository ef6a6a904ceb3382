use std::path::Path;

use chios::algebra::{nbc_expand, nbc_expand_oracle};
use chios::groebner::{
    canonical_basis, leading_term_ideal, reduced_groebner, universal_groebner, TermOrder,
};
use chios::properties::{run_suite, Instance};
use chios::residues::{
    diagonal_basis_violation, dual_pairing_matrix, exact_sequence_check, expand_in_basis_oracle,
    expand_in_diagonal_basis, iterated_residue,
};
use chios::{DiagonalBasisCandidate, ElementSet, GroebnerBasis};
use serde::Serialize;

use crate::args::{Cli, Command, Format};
use crate::reports::*;
use crate::session::{parse_set, parse_sigma, parse_word, read_file, Session};
use crate::CliError;

/// Rendered output and whether the command's checks all passed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub success: bool,
}

fn emit<R: Render + Serialize>(format: Format, report: &R, success: bool) -> Outcome {
    let output = match format {
        Format::Text => report.render(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
    };
    Outcome { output, success }
}

fn sets(v: &[ElementSet]) -> Vec<Vec<usize>> {
    v.iter().map(|s| s.to_vec()).collect()
}

fn load_candidate(path: &Path, n: usize) -> Result<DiagonalBasisCandidate, CliError> {
    DiagonalBasisCandidate::from_json(&read_file(path)?, n)
        .map_err(|e| CliError::from(e).context(&path.display().to_string()))
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let session = Session::load(cli)?;
    let m = &session.matroid;
    let chi = &session.chi;
    let order = &session.order;
    let term = TermOrder::from(order.clone());
    let order_seq = order.sequence().to_vec();
    let format = cli.format;

    match &cli.command {
        Command::Nbc { degree } => {
            let degrees: Vec<usize> = match degree {
                Some(d) => vec![*d],
                None => (0..=m.full_rank()).collect(),
            };
            let report = NbcReport {
                order: order_seq,
                degrees: degrees
                    .into_iter()
                    .map(|d| NbcDegree {
                        degree: d,
                        sets: sets(&m.nbc_sets(order, d)),
                    })
                    .collect(),
            };
            Ok(emit(format, &report, true))
        }
        Command::Dims => {
            let rows = (0..=m.n())
                .map(|d| DimsRow {
                    degree: d,
                    nbc: m.nbc_sets(order, d).len(),
                    inactive_unidependents: m.inactive_unidependents_with(order, d + 1).len(),
                    dependent: m.dependent_sets(d).len(),
                    total: chios::elements::subsets_of_size(m.n(), d).count(),
                })
                .collect();
            Ok(emit(
                format,
                &DimsReport {
                    order: order_seq,
                    rows,
                },
                true,
            ))
        }
        Command::Groebner { universal, .. } => {
            let basis: GroebnerBasis = if *universal {
                universal_groebner(m, chi)?
            } else {
                reduced_groebner(m, chi, &term)?
            };
            let elements = basis
                .circuits
                .iter()
                .zip(&basis.elements)
                .map(|(c, g)| GroebnerEntry {
                    circuit: c.to_vec(),
                    leading_monomial: term
                        .leading_monomial(g)
                        .map(|s| s.to_vec())
                        .unwrap_or_default(),
                    element: g.clone(),
                })
                .collect();
            let report = GroebnerReport {
                kind: if *universal { "universal" } else { "reduced" }.into(),
                order: order_seq,
                elements,
            };
            Ok(emit(format, &report, true))
        }
        Command::LtIdeal => {
            let basis = universal_groebner(m, chi)?;
            let lt = leading_term_ideal(&term, &basis.elements);
            let report = LtIdealReport {
                order: order_seq,
                leading_monomials: sets(&lt.leading_monomials),
                generators: sets(&lt.generators),
            };
            Ok(emit(format, &report, true))
        }
        Command::CanonicalBasis { degree } => {
            let report = CanonicalBasisReport {
                order: order_seq,
                degree: *degree,
                monomials: sets(&canonical_basis(m, chi, &term, *degree)?),
            };
            Ok(emit(format, &report, true))
        }
        Command::Expand { basis, target } => {
            let j = parse_set(target, m.n(), "target")?;
            let (expansion, oracle) = if basis == "nbc" {
                (
                    nbc_expand(m, chi, j, order)?,
                    nbc_expand_oracle(m, chi, &session.beta, j, order)?,
                )
            } else if let Some(path) = basis.strip_prefix("file:") {
                let cand = load_candidate(Path::new(path), m.n())?;
                (
                    expand_in_diagonal_basis(m, chi, &cand, j)?,
                    expand_in_basis_oracle(m, chi, &session.beta, &cand, j)?,
                )
            } else {
                return Err(CliError::Input(format!(
                    "basis must be nbc or file:<path>, got {basis:?}"
                )));
            };
            let agrees = expansion == oracle;
            let report = ExpandReport {
                target: j.to_vec(),
                basis: basis.clone(),
                expansion,
                oracle_agrees: agrees,
            };
            Ok(emit(format, &report, agrees))
        }
        Command::Residue {
            word,
            sigma,
            target,
        } => {
            let base = parse_word(word, m.n(), "word")?;
            let sigma = parse_sigma(sigma, base.len())?;
            let w: Vec<usize> = sigma.iter().map(|&p| base[p - 1]).collect();
            let j = parse_set(target, m.n(), "target")?;
            let value = iterated_residue(m, chi, &w, j)?;
            let report = ResidueReport {
                word: w,
                target: j.to_vec(),
                value: value.to_string(),
            };
            Ok(emit(format, &report, true))
        }
        Command::DiagonalCheck { file } => {
            let cand = load_candidate(file, m.n())?;
            let reason = diagonal_basis_violation(m, &cand);
            let pairing_is_identity = match reason {
                Some(_) => None,
                None => {
                    let mat = dual_pairing_matrix(m, chi, &cand)?;
                    Some(mat.iter().enumerate().all(|(i, row)| {
                        row.iter().enumerate().all(|(k, v)| {
                            *v == if i == k {
                                chios::linalg::int(1)
                            } else {
                                chios::linalg::int(0)
                            }
                        })
                    }))
                }
            };
            let diagonal = reason.is_none();
            let report = DiagonalReport {
                words: cand.words(),
                diagonal,
                reason,
                pairing_is_identity,
            };
            Ok(emit(
                format,
                &report,
                diagonal && pairing_is_identity == Some(true),
            ))
        }
        Command::ExactSeq { element } => {
            let r = exact_sequence_check(m, chi, *element)?;
            let report = ExactSeqReport {
                element: r.element,
                passed: r.passed(),
                degrees: r
                    .degrees
                    .iter()
                    .map(|d| ExactSeqRow {
                        degree: d.degree,
                        dim: d.dim,
                        dim_deletion: d.dim_deletion,
                        dim_contraction: d.dim_contraction,
                        passed: d.passed(),
                    })
                    .collect(),
            };
            let passed = report.passed;
            Ok(emit(format, &report, passed))
        }
        Command::Verify => {
            let seed = match std::env::var("CHIOS_SEED") {
                Ok(v) => v.parse().map_err(|_| {
                    CliError::Input(format!("CHIOS_SEED must be an unsigned integer, got {v:?}"))
                })?,
                Err(_) => 0,
            };
            let name = cli
                .input
                .as_ref()
                .map(|p| p.display().to_string())
                .unwrap_or_default();
            let mut instance = Instance::new(name, m.clone(), chi.clone(), session.beta.clone());
            instance.vectors = session.vectors.clone();
            let properties: Vec<PropertyRow> = run_suite(&instance, seed)
                .into_iter()
                .map(|r| PropertyRow {
                    name: r.name.into(),
                    passed: r.passed,
                    detail: r.detail,
                })
                .collect();
            let passed = properties.iter().all(|p| p.passed);
            let report = VerifyReport {
                seed,
                passed,
                properties,
            };
            Ok(emit(format, &report, passed))
        }
    }
}
