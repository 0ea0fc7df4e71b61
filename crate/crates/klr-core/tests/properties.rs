use proptest::prelude::*;

use klr_core::cartan::longest_word;
use klr_core::character::{ch_delta, serre_check, Character};
use klr_core::delta::{all_segments, counts_to_t, decompose, reconstruct, theta_range, theta_row};
use klr_core::klr::{build_delta_module, build_q, check_relations, QChoices};
use klr_core::strings::{adapted_string, in_s_lambda, string_to_element, triangle};
use klr_core::verify::weyl_dimension;
use klr_core::{CartanDatum, CartanType, Crystal};
use num_rational::Rational64;

fn classical() -> impl Strategy<Value = CartanDatum> {
    prop_oneof![
        (1usize..=3).prop_map(|n| (CartanType::A, n)),
        (2usize..=3).prop_map(|n| (CartanType::B, n)),
        (2usize..=3).prop_map(|n| (CartanType::C, n)),
        (3usize..=4).prop_map(|n| (CartanType::D, n)),
    ]
    .prop_map(|(ty, n)| CartanDatum::new(ty, n).unwrap())
}

fn datum_and_weight() -> impl Strategy<Value = (CartanDatum, Vec<i64>)> {
    classical().prop_flat_map(|d| {
        let n = d.rank();
        (Just(d), proptest::collection::vec(0i64..=2, n))
            .prop_filter("small weight", |(_, l)| l.iter().sum::<i64>() <= 3)
    })
}

fn word() -> impl Strategy<Value = Vec<u8>> {
    proptest::collection::vec(1u8..=3, 0..4)
}

fn character() -> impl Strategy<Value = Character> {
    proptest::collection::vec((word(), 1u64..4), 1..3).prop_map(|terms| {
        let mut c = Character::zero();
        for (w, k) in terms {
            c.add(w, k);
        }
        c
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn shuffle_is_commutative_and_associative(x in character(), y in character(), z in character()) {
        prop_assert_eq!(x.shuffle(&y), y.shuffle(&x));
        prop_assert_eq!(x.shuffle(&y).shuffle(&z), x.shuffle(&y.shuffle(&z)));
        prop_assert_eq!(x.shuffle(&Character::unit()), x.clone());
    }

    #[test]
    fn elements_factor_and_rebuild((datum, lambda) in datum_and_weight(), pick in any::<prop::sample::Index>()) {
        let crystal = Crystal::generate(&datum, &lambda, 100_000).unwrap();
        prop_assert_eq!(crystal.len() as u128, weyl_dimension(&datum, &lambda).unwrap());
        let b = &crystal.elements()[pick.index(crystal.len())];
        let alphabet = crystal.alphabet();
        let w = longest_word(&datum).flat();
        let s = adapted_string(alphabet, b, &w);
        prop_assert!(in_s_lambda(&datum, &lambda, &s).unwrap());
        prop_assert_eq!(&string_to_element(alphabet, crystal.highest(), &w, &s).unwrap(), b);
        let dec = decompose(&datum, &s, Some(&lambda)).unwrap();
        prop_assert!(dec.eta <= dec.bound.unwrap());
        prop_assert_eq!(&reconstruct(alphabet, crystal.highest(), &dec).unwrap(), b);
    }

    #[test]
    fn kashiwara_operators_are_partial_inverses((datum, lambda) in datum_and_weight(), pick in any::<prop::sample::Index>()) {
        let crystal = Crystal::generate(&datum, &lambda, 100_000).unwrap();
        let alphabet = crystal.alphabet();
        let b = &crystal.elements()[pick.index(crystal.len())];
        let wt = alphabet.weight(b);
        for i in 1..=datum.rank() {
            let pairing = i64::from(alphabet.phi(b, i)) - i64::from(alphabet.epsilon(b, i));
            prop_assert_eq!(pairing, wt[i - 1]);
            if let Some(c) = alphabet.f(b, i) {
                prop_assert_eq!(alphabet.e(&c, i), Some(b.clone()));
            }
            if let Some(c) = alphabet.e(b, i) {
                prop_assert_eq!(alphabet.f(&c, i), Some(b.clone()));
            }
        }
    }

    #[test]
    fn theta_rows_invert((datum, lambda) in datum_and_weight(), pick in any::<prop::sample::Index>()) {
        prop_assume!(datum.cartan_type() != CartanType::D);
        let crystal = Crystal::generate(&datum, &lambda, 100_000).unwrap();
        let w = longest_word(&datum).flat();
        let b = &crystal.elements()[pick.index(crystal.len())];
        let s = adapted_string(crystal.alphabet(), b, &w);
        let tri = triangle(&datum, &s).unwrap();
        for i in 1..=tri.row_count() {
            let theta: Vec<u32> = theta_row(&datum, &tri, i).into_iter().map(|t| t as u32).collect();
            let (lo, hi) = theta_range(&datum, i);
            let row: Vec<u32> = (lo..=hi).map(|j| tri.get(i, j)).collect();
            prop_assert_eq!(counts_to_t(&datum, &theta).unwrap(), row);
        }
    }

    #[test]
    fn products_of_segment_characters_satisfy_serre(datum in classical(), picks in proptest::collection::vec(any::<prop::sample::Index>(), 1..4)) {
        let segs = all_segments(&datum).unwrap();
        let mut x = Character::unit();
        for p in picks {
            let (a, b) = segs[p.index(segs.len())];
            x = x.shuffle(&ch_delta(&datum, a, b).unwrap());
        }
        prop_assert!(serre_check(&datum, &x).passed());
    }

    #[test]
    fn models_hold_for_scaled_zeta(datum in classical(), num in 1i64..20, den in 1i64..20, neg in any::<bool>()) {
        let z = Rational64::new(if neg { -num } else { num }, den);
        let n = datum.rank();
        let mut c = QChoices::default();
        for i in 1..=n {
            for j in 1..=n {
                if i != j {
                    c.zeta.insert((i as u8, j as u8), z);
                }
            }
        }
        let q = build_q(&datum, &c).unwrap();
        for (a, b) in all_segments(&datum).unwrap() {
            let m = build_delta_module(&datum, a, b, &q).unwrap();
            prop_assert!(check_relations(&m, &q).passed());
        }
    }
}
