//! Cross-checks between independent parts of the crate: the Weyl dimension
//! formula against crystal sizes, strings against crystal elements, and a
//! replay of the worked `B₃` example.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_rational::Ratio;

use crate::cartan::{longest_word, CartanDatum, CartanType};
use crate::character::Character;
use crate::delta::{decompose, delta_factors, reconstruct, theta_row, DeltaFactor};
use crate::strings::{adapted_string, enumerate_s_lambda, string_to_element, triangle};
use crate::{Crystal, Error, Letter, Result};

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseResult {
    pub case: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TestReport {
    pub cases: Vec<CaseResult>,
}

impl TestReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| !c.passed)
    }

    pub fn check<T: core::fmt::Debug + PartialEq>(&mut self, case: impl Into<String>, expected: T, actual: T) {
        self.cases.push(CaseResult {
            case: case.into(),
            passed: expected == actual,
            expected: format!("{expected:?}"),
            actual: format!("{actual:?}"),
        });
    }

    pub fn extend(&mut self, other: TestReport) {
        self.cases.extend(other.cases);
    }
}

/// `Π_{α>0} ⟨λ+ρ, α^∨⟩ / ⟨ρ, α^∨⟩`.
pub fn weyl_dimension(datum: &CartanDatum, lambda: &[i64]) -> Result<u128> {
    let n = datum.rank();
    if lambda.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: lambda.len() });
    }
    if lambda.iter().any(|&l| l < 0) {
        return Err(Error::NotDominant(format!("{lambda:?}")));
    }
    let mut acc = Ratio::<i128>::from_integer(1);
    for root in datum.positive_roots() {
        // Pairing with the coroot up to the common factor 2/(α|α).
        let mut num = 0i128;
        let mut den = 0i128;
        for (k, &c) in root.iter().enumerate() {
            let w = i128::from(c) * i128::from(datum.delta(k + 1));
            num += w * i128::from(lambda[k] + 1);
            den += w;
        }
        acc *= Ratio::new(num, den);
    }
    if !acc.is_integer() {
        return Err(Error::Overflow);
    }
    u128::try_from(acc.to_integer()).map_err(|_| Error::Overflow)
}

/// Every `λ ∈ ℤ_{≥0}^n` with `Σλ_i ≤ max`, in lexicographic order.
pub fn dominant_weights(n: usize, max: i64) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = Vec::from([Vec::new()]);
    for _ in 0..n {
        let mut next = Vec::new();
        for v in out {
            let used: i64 = v.iter().sum();
            for x in 0..=max - used {
                let mut w = v.clone();
                w.push(x);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// Compares the crystal `B(λ)` with the string set `𝒮^λ` element by
/// element, including the factorization round trip.
pub fn run_bijection_suite(datum: &CartanDatum, lambda: &[i64], cap: usize) -> Result<TestReport> {
    let tag = format!("{} λ={lambda:?}", datum.label());
    let mut rep = TestReport::default();
    let crystal = Crystal::generate(datum, lambda, cap)?;
    let strings = enumerate_s_lambda(datum, lambda)?;
    let weyl = weyl_dimension(datum, lambda)?;
    rep.check(format!("{tag}: |B(λ)| = Weyl"), weyl, crystal.len() as u128);
    rep.check(format!("{tag}: |𝒮^λ| = Weyl"), weyl, strings.len() as u128);

    let word = longest_word(datum).flat();
    let alphabet = crystal.alphabet();
    let top = crystal.highest();
    let mut seen = BTreeSet::new();
    let (mut injective, mut round_trip, mut rebuilt, mut bounded) = (true, true, true, true);
    let mut first_bad: Option<String> = None;
    for b in crystal.elements() {
        let s = adapted_string(alphabet, b, &word);
        injective &= seen.insert(s.clone());
        let back = string_to_element(alphabet, top, &word, &s);
        if back.as_ref() != Ok(b) {
            round_trip = false;
            first_bad.get_or_insert_with(|| format!("round trip {s:?}"));
        }
        match decompose(datum, &s, Some(lambda)) {
            Ok(dec) => {
                if dec.bound.is_some_and(|bd| dec.eta > bd) {
                    bounded = false;
                    first_bad.get_or_insert_with(|| format!("η bound {s:?}"));
                }
                if reconstruct(alphabet, top, &dec).as_ref() != Ok(b) {
                    rebuilt = false;
                    first_bad.get_or_insert_with(|| format!("reconstruct {s:?}"));
                }
            }
            Err(_) => {
                rebuilt = false;
                first_bad.get_or_insert_with(|| format!("decompose {s:?}"));
            }
        }
    }
    rep.check(format!("{tag}: strings injective"), true, injective);
    let listed: BTreeSet<Vec<u32>> = strings.into_iter().collect();
    rep.check(format!("{tag}: strings = 𝒮^λ"), true, seen == listed);
    rep.check(format!("{tag}: round trip"), true, round_trip);
    rep.check(format!("{tag}: reconstruct"), true, rebuilt);
    rep.check(format!("{tag}: η ≤ nλ(h)"), true, bounded);
    if let Some(bad) = first_bad {
        rep.check(format!("{tag}: first failure"), String::new(), bad);
    }
    Ok(rep)
}

/// The string of the worked `B₃` example.
pub const EXAMPLE_B3_STRING: [u32; 9] = [3, 3, 3, 0, 4, 3, 5, 2, 1];
/// Its weight `Λ₁ + Λ₂ + 3Λ₃`.
pub const EXAMPLE_B3_LAMBDA: [i64; 3] = [1, 1, 3];

/// Replays every value stated for the worked `B₃` example.
pub fn replay_example_b3() -> Result<TestReport> {
    let datum = CartanDatum::new(CartanType::B, 3)?;
    let mut rep = TestReport::default();
    let crystal = Crystal::generate(&datum, &EXAMPLE_B3_LAMBDA, 1_000_000)?;
    let alphabet = crystal.alphabet();
    let word = longest_word(&datum).flat();
    rep.check("w0 word", Vec::from([3u8, 2, 3, 2, 1, 2, 3, 2, 1]), word.clone());

    let t = string_to_element(alphabet, crystal.highest(), &word, &EXAMPLE_B3_STRING)?;
    rep.check("a(T)", EXAMPLE_B3_STRING.to_vec(), adapted_string(alphabet, &t, &word));

    let tri = triangle(&datum, &EXAMPLE_B3_STRING)?;
    rep.check(
        "triangle rows",
        Vec::from([Vec::from([3u32]), Vec::from([3, 3, 0]), Vec::from([4, 3, 5, 2, 1])]),
        tri.rows.clone(),
    );
    let thetas: Vec<Vec<i64>> = (1..=3).map(|i| theta_row(&datum, &tri, i)).collect();
    rep.check(
        "θ values",
        Vec::from([Vec::from([1i64, 1]), Vec::from([1, 1, 1, 0]), Vec::from([1, 0, 1, 0, 1, 1])]),
        thetas,
    );

    let f = |a: Letter, b: Letter| DeltaFactor { a, b, mult: 1 };
    let (b1, b2, b3) = (Letter::bar(1), Letter::bar(2), Letter::bar(3));
    let expected_blocks = [
        Vec::from([f(b3, Letter::ZERO), f(b3, Letter::plain(3))]),
        Vec::from([f(b2, b3), f(b2, Letter::ZERO), f(b2, Letter::plain(3))]),
        Vec::from([f(b1, b2), f(b1, Letter::ZERO), f(b1, Letter::plain(2)), f(b1, Letter::plain(1))]),
    ];
    for (i, exp) in expected_blocks.iter().enumerate() {
        rep.check(format!("Δ(a(T);{})", i + 1), exp.clone(), delta_factors(&datum, &EXAMPLE_B3_STRING, i + 1)?);
    }
    let dec = decompose(&datum, &EXAMPLE_B3_STRING, Some(&EXAMPLE_B3_LAMBDA))?;
    rep.check("η(T), nλ(h)", (9u64, Some(21u64)), (dec.eta, dec.bound));
    rep.check("η(T) < nλ(h)", true, dec.bound.is_some_and(|b| dec.eta < b));
    rep.check(
        "N_3 word",
        Vec::from([(1u8, 4u32), (2, 3), (3, 5), (2, 2), (1, 1)]),
        dec.n_words[2].clone(),
    );
    rep.check("reconstruct(T)", Ok(t.clone()), reconstruct(alphabet, crystal.highest(), &dec));

    let f1 = alphabet.f(&t, 1).map(|b| adapted_string(alphabet, &b, &word));
    rep.check("a(f1 T)", Some(Vec::from([3u32, 2, 1, 0, 5, 4, 7, 2, 1])), f1);
    let f2 = alphabet.f(&t, 2).map(|b| adapted_string(alphabet, &b, &word));
    rep.check("a(f2 T)", Some(Vec::from([3u32, 4, 3, 0, 4, 3, 5, 2, 1])), f2);
    rep.check("f3 T = 0", true, alphabet.f(&t, 3).is_none());

    // T_k = e_{s_k}^{a_k} T_{k-1}.
    let mut chain = Vec::from([t.clone()]);
    let mut cur = t.clone();
    for (k, (&s, &a)) in word.iter().zip(&EXAMPLE_B3_STRING).enumerate() {
        let s = usize::from(s);
        rep.check(format!("ε_{s}(T_{k})"), a, alphabet.epsilon(&cur, s));
        alphabet.e_pow_mut(&mut cur, s, a);
        chain.push(cur.clone());
    }
    let eps = |k: usize, idx: &[usize]| idx.iter().map(|&i| alphabet.epsilon(&chain[k], i)).collect::<Vec<_>>();
    rep.check("ε_3(T_1) = 0", Vec::from([0u32]), eps(1, &[3]));
    rep.check("ε_{2,3}(T_4) = 0", Vec::from([0u32, 0]), eps(4, &[2, 3]));
    rep.check("ε_{1,2,3}(T_9) = 0", Vec::from([0u32, 0, 0]), eps(9, &[1, 2, 3]));
    rep.check("T_9 = b_λ", crystal.highest(), &chain[9]);
    rep.check("component_highest(T,{3}) = T_1", &chain[1], &alphabet.component_highest(&t, &[3]));
    rep.check("component_highest(T,{2,3}) = T_4", &chain[4], &alphabet.component_highest(&t, &[2, 3]));
    Ok(rep)
}

/// One multiplicity computation from the commutation arguments: the
/// coefficient of `k` in `ch Δ(a,b) ⋆ ch Δ(c,d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XiCase {
    pub a: Letter,
    pub b: Letter,
    pub c: Letter,
    pub d: Letter,
    pub k: Vec<u8>,
    /// The closed form for the multiplicity.
    pub expected: u64,
}

/// The sequence `k` and closed form for the pair with `|i(c,d)| = l`.
/// `variant` selects case (ii) or (iii) in type D and is ignored otherwise.
pub fn xi_case(datum: &CartanDatum, l: usize, variant_iii: bool) -> Result<XiCase> {
    let n = datum.rank();
    let up = |lo: usize, hi: usize| (lo..=hi).map(|x| x as u8);
    let pairs = |hi: usize, lo: usize| (lo..=hi).rev().flat_map(|x| [x as u8, x as u8]);
    if l == 0 || l > n {
        return Err(Error::IndexOutOfRange(l));
    }
    let out = match datum.cartan_type() {
        CartanType::B => {
            let p = n + 1 - l;
            let mut k: Vec<u8> = up(1, p - 1).collect();
            k.extend((p..n).flat_map(|x| [x as u8, x as u8]));
            k.extend([n as u8; 3]);
            k.extend((1..n).rev().map(|x| x as u8));
            XiCase {
                a: Letter::bar(1),
                b: Letter::plain(1),
                c: Letter::bar(p),
                d: Letter::ZERO,
                k,
                expected: 2 * (1 << (l - 1)) * 3,
            }
        }
        CartanType::C => {
            let q = n + 1 - l;
            let mut k: Vec<u8> = up(1, n - 1).collect();
            k.extend(pairs(n, q));
            k.extend((1..q).rev().map(|x| x as u8));
            XiCase { a: Letter::bar(1), b: Letter::plain(1), c: Letter::bar(n), d: Letter::plain(q), k, expected: 1 << l }
        }
        CartanType::D => {
            if l < 2 {
                return Err(Error::IndexOutOfRange(l));
            }
            let q = n + 1 - l;
            let mut k: Vec<u8> = if variant_iii { up(1, n - 2).collect() } else { Vec::new() };
            k.extend([n as u8; 2]);
            k.extend(pairs(n - 1, q));
            k.extend((1..q).rev().map(|x| x as u8));
            let a = if variant_iii { Letter::bar(1) } else { Letter::bar(n - 1) };
            XiCase { a, b: Letter::plain(1), c: Letter::bar(n - 1), d: Letter::plain(q), k, expected: 1 << l }
        }
        other => return Err(Error::NotClassical(format!("{other}"))),
    };
    Ok(out)
}

/// `coefficient(ch Δ(a,b) ⋆ ch Δ(c,d), k)`.
pub fn xi_multiplicity(datum: &CartanDatum, case: &XiCase) -> Result<u64> {
    let x: Character = crate::character::ch_delta(datum, case.a, case.b)?;
    let y = crate::character::ch_delta(datum, case.c, case.d)?;
    Ok(x.shuffle(&y).coefficient(&case.k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn d(ty: CartanType, n: usize) -> CartanDatum {
        CartanDatum::new(ty, n).unwrap()
    }

    #[test]
    fn weyl_examples() {
        assert_eq!(weyl_dimension(&d(CartanType::A, 1), &[1]).unwrap(), 2);
        assert_eq!(weyl_dimension(&d(CartanType::A, 2), &[1, 1]).unwrap(), 8);
        assert_eq!(weyl_dimension(&d(CartanType::B, 2), &[1, 0]).unwrap(), 5);
        assert_eq!(weyl_dimension(&d(CartanType::B, 2), &[0, 1]).unwrap(), 4);
        assert_eq!(weyl_dimension(&d(CartanType::C, 3), &[1, 0, 0]).unwrap(), 6);
        assert_eq!(weyl_dimension(&d(CartanType::D, 4), &[1, 0, 0, 0]).unwrap(), 8);
        assert_eq!(weyl_dimension(&d(CartanType::E8, 8), &[0; 8]).unwrap(), 1);
        assert_eq!(weyl_dimension(&d(CartanType::G2, 2), &[1, 0]).unwrap() * weyl_dimension(&d(CartanType::G2, 2), &[0, 1]).unwrap(), 7 * 14);
        assert!(weyl_dimension(&d(CartanType::A, 2), &[-1, 0]).is_err());
    }

    #[test]
    fn weight_lists() {
        assert_eq!(dominant_weights(2, 1), [vec![0, 0], vec![0, 1], vec![1, 0]]);
        assert_eq!(dominant_weights(3, 3).len(), 20);
    }

    #[test]
    fn small_bijections() {
        let rep = run_bijection_suite(&d(CartanType::D, 4), &[1, 0, 0, 0], 10_000).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures().collect::<Vec<_>>());
        assert!(run_bijection_suite(&d(CartanType::C, 2), &[0, 0], 10).unwrap().passed());
    }

    #[test]
    fn example_replay() {
        let rep = replay_example_b3().unwrap();
        assert!(rep.passed(), "{:?}", rep.failures().collect::<Vec<_>>());
    }

    #[test]
    fn xi_closed_forms() {
        for (ty, n) in [(CartanType::B, 3), (CartanType::C, 3), (CartanType::D, 4)] {
            let datum = d(ty, n);
            for l in [2, 3] {
                for v in [false, true] {
                    let case = xi_case(&datum, l, v).unwrap();
                    assert_eq!(xi_multiplicity(&datum, &case).unwrap(), case.expected, "{ty:?} l={l} {v}");
                }
            }
        }
    }

    #[test]
    fn xi_sequences() {
        let b3 = d(CartanType::B, 3);
        assert_eq!(xi_case(&b3, 2, false).unwrap().k, [1, 2, 2, 3, 3, 3, 2, 1]);
        assert_eq!(xi_case(&b3, 3, false).unwrap().k, [1, 1, 2, 2, 3, 3, 3, 2, 1]);
        assert_eq!(xi_case(&d(CartanType::C, 3), 2, false).unwrap().k, [1, 2, 3, 3, 2, 2, 1]);
        let d4 = d(CartanType::D, 4);
        assert_eq!(xi_case(&d4, 3, true).unwrap().k, [1, 2, 4, 4, 3, 3, 2, 2, 1]);
        assert_eq!(xi_case(&d4, 3, false).unwrap().k, [4, 4, 3, 3, 2, 2, 1]);
    }
}
