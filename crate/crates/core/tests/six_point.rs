use chios::algebra::{nbc_expand, BetaSystem};
use chios::chi_map::{chi_os, ChiKind, ChiMap};
use chios::fixtures::{six_point_alternate_basis, six_point_matroid, six_point_vectors};
use chios::formats::{
    parse_circuit_list, parse_vector_config, write_circuit_list, write_vector_config,
};
use chios::linalg::{frac, int};
use chios::realization::{chi_cordovil, chi_ot, FlatBasisAssignment};
use chios::residues::{
    exact_sequence_check, expand_in_basis_oracle, expand_in_diagonal_basis, iterated_residue,
    iterated_residue_closed_form, DiagonalBasisCandidate,
};
use chios::{ElementOrder, ElementSet};
use itertools::Itertools;

fn s(v: &[usize]) -> ElementSet {
    ElementSet::from_elements(v.iter().copied())
}

fn all_maps() -> Vec<ChiMap> {
    let v = six_point_vectors();
    let m = six_point_matroid();
    let lex = FlatBasisAssignment::lex();
    vec![
        chi_os(&m),
        chi_ot(&v, &m, &lex).unwrap(),
        chi_cordovil(&v, &m, &lex).unwrap(),
    ]
}

#[test]
fn composed_residues_match_the_flag_formula() {
    let m = six_point_matroid();
    for chi in all_maps() {
        for k in 1..=3 {
            for i in m.independent_sets(k) {
                for w in i.to_vec().into_iter().permutations(k) {
                    for j in m.independent_sets(k) {
                        assert_eq!(
                            iterated_residue(&m, &chi, &w, j).unwrap(),
                            iterated_residue_closed_form(&m, &chi, &w, j).unwrap(),
                            "{} {w:?} {j}",
                            chi.kind()
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn determinant_residues_of_e156() {
    let m = six_point_matroid();
    let chi = &all_maps()[1];
    assert_eq!(
        iterated_residue(&m, chi, &[1, 2, 5], s(&[1, 5, 6])).unwrap(),
        frac(3, 2)
    );
    assert_eq!(
        iterated_residue(&m, chi, &[1, 2, 6], s(&[1, 5, 6])).unwrap(),
        frac(-1, 2)
    );
    assert_eq!(
        iterated_residue(&m, chi, &[1, 3, 4], s(&[1, 5, 6])).unwrap(),
        int(0)
    );
}

#[test]
fn both_routes_agree_on_every_target() {
    let m = six_point_matroid();
    let nat = ElementOrder::natural(6);
    let nbc = DiagonalBasisCandidate::nbc(&m, &nat, 3);
    let kinds = [
        ChiKind::OrlikSolomon,
        ChiKind::OrlikSolomonTerao,
        ChiKind::Cordovil,
    ];
    for (chi, kind) in all_maps().iter().zip(kinds) {
        let beta = BetaSystem::default_for(kind);
        for j in m.independent_sets(3) {
            for cand in [&nbc, &six_point_alternate_basis()] {
                assert_eq!(
                    expand_in_diagonal_basis(&m, chi, cand, j).unwrap(),
                    expand_in_basis_oracle(&m, chi, &beta, cand, j).unwrap()
                );
            }
            assert_eq!(
                nbc_expand(&m, chi, j, &nat).unwrap(),
                expand_in_diagonal_basis(&m, chi, &nbc, j).unwrap()
            );
        }
    }
}

#[test]
fn exact_sequences_for_every_element() {
    let m = six_point_matroid();
    for chi in all_maps() {
        for x in 1..=6 {
            let report = exact_sequence_check(&m, &chi, x).unwrap();
            assert!(report.passed(), "{} x = {x}: {report:?}", chi.kind());
            let dims: Vec<usize> = report.degrees.iter().map(|d| d.dim).collect();
            assert_eq!(dims, vec![1, 6, 11, 6]);
        }
    }
}

#[test]
fn text_formats_round_trip() {
    let m = six_point_matroid();
    assert_eq!(parse_circuit_list(&write_circuit_list(&m)).unwrap(), m);
    let v = six_point_vectors();
    assert_eq!(parse_vector_config(&write_vector_config(&v)).unwrap(), v);
}
