mod support;

use endosplit_core::qpoly::QPoly;
use support::oracle::*;

#[test]
fn radical_matches_nilpotent_ideal_search() {
    check_radicals().unwrap();
}

#[test]
fn central_idempotents_match_search_on_group_algebras() {
    check_group_idempotents().unwrap();
}

#[test]
fn central_idempotents_match_search_on_sums() {
    check_sum_idempotents().unwrap();
}

#[test]
fn factorization_matches_bounded_search() {
    check_factorizations().unwrap();
}

#[test]
fn brute_factor_sanity() {
    // (t − 1)(t + 1)(t² + t + 1)(t² − t + 1)
    let f = brute_factor(&[-1, 0, 0, 0, 0, 0, 1]);
    assert_eq!(f.len(), 4);
    assert!(f.iter().all(|(_, k)| *k == 1));
    let f = brute_factor(&[0, 0, 1, 2, 1]);
    assert_eq!(normalize(f), normalize(vec![(QPoly::t(), 2), (to_q(&[1, 1]), 2)]));
}
