use std::collections::BTreeSet;

use klr_core::cartan::longest_word;
use klr_core::strings::{adapted_string, enumerate_s_lambda, in_s, string_to_element};
use klr_core::{CartanDatum, CartanType, Crystal};

fn strings_of_crystal(datum: &CartanDatum, lambda: &[i64]) -> BTreeSet<Vec<u32>> {
    let crystal = Crystal::generate(datum, lambda, 200_000).unwrap();
    let word = longest_word(datum).flat();
    crystal
        .elements()
        .iter()
        .map(|b| adapted_string(crystal.alphabet(), b, &word))
        .collect()
}

fn lambdas(n: usize, max: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| (0..=max).map(move |x| {
                let mut w = v.clone();
                w.push(x);
                w
            }))
            .collect();
    }
    out
}

fn check(ty: CartanType, n: usize, max: i64) {
    let datum = CartanDatum::new(ty, n).unwrap();
    for lambda in lambdas(n, max) {
        let from_crystal = strings_of_crystal(&datum, &lambda);
        let enumerated: BTreeSet<Vec<u32>> = enumerate_s_lambda(&datum, &lambda).unwrap().into_iter().collect();
        assert_eq!(from_crystal, enumerated, "{ty:?}{n} λ={lambda:?}");
        for s in &from_crystal {
            assert!(in_s(&datum, s).unwrap());
        }
    }
}

#[test]
fn type_a_strings_match_crystal() {
    check(CartanType::A, 1, 3);
    check(CartanType::A, 2, 2);
    check(CartanType::A, 3, 1);
}

#[test]
fn type_b_strings_match_crystal() {
    check(CartanType::B, 2, 2);
    check(CartanType::B, 3, 1);
}

#[test]
fn type_c_strings_match_crystal() {
    check(CartanType::C, 2, 2);
    check(CartanType::C, 3, 1);
}

#[test]
fn type_d_strings_match_crystal() {
    check(CartanType::D, 4, 1);
    let d5 = CartanDatum::new(CartanType::D, 5).unwrap();
    for lambda in [[1, 0, 0, 0, 0], [0, 1, 0, 0, 1], [0, 0, 0, 1, 1], [0, 0, 1, 0, 0], [0, 0, 0, 2, 0]] {
        let enumerated: BTreeSet<Vec<u32>> = enumerate_s_lambda(&d5, &lambda).unwrap().into_iter().collect();
        assert_eq!(strings_of_crystal(&d5, &lambda), enumerated, "D5 λ={lambda:?}");
    }
}

#[test]
fn strings_rebuild_elements() {
    let datum = CartanDatum::new(CartanType::B, 3).unwrap();
    let crystal = Crystal::generate(&datum, &[1, 1, 3], 200_000).unwrap();
    let word = longest_word(&datum).flat();
    for b in crystal.elements() {
        let s = adapted_string(crystal.alphabet(), b, &word);
        assert_eq!(&string_to_element(crystal.alphabet(), crystal.highest(), &word, &s).unwrap(), b);
    }
}
