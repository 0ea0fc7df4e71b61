//! Ungraded characters: formal combinations of index sequences, the shuffle
//! product, and a validator for the identities that quantum Serre relations
//! force on characters of modules.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::cartan::{CartanDatum, CartanType};
use crate::delta::{factor_kind, kashiwara_word, Decomposition, DeltaFactor, FactorKind};
use crate::letter::Letter;
use crate::{Error, Result};

/// `Σ c_𝐢 𝐢` with positive coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Character {
    terms: BTreeMap<Vec<u8>, u64>,
}

impl Character {
    /// The zero character.
    pub fn zero() -> Self {
        Self::default()
    }

    /// The character of the trivial module: the empty sequence.
    pub fn unit() -> Self {
        Self::term(Vec::new(), 1)
    }

    pub fn term(seq: Vec<u8>, coef: u64) -> Self {
        let mut c = Self::zero();
        c.add(seq, coef);
        c
    }

    pub fn add(&mut self, seq: Vec<u8>, coef: u64) {
        if coef > 0 {
            *self.terms.entry(seq).or_insert(0) += coef;
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, u64)> {
        self.terms.iter().map(|(s, &c)| (s, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, seq: &[u8]) -> u64 {
        self.terms.get(seq).copied().unwrap_or(0)
    }

    /// Sum of all coefficients (the dimension of the module).
    pub fn total(&self) -> u64 {
        self.terms.values().sum()
    }

    /// The weight `α` as counts of each index `1..=rank`, if homogeneous.
    pub fn alpha(&self, rank: usize) -> Option<Vec<u32>> {
        let mut out: Option<Vec<u32>> = None;
        for seq in self.terms.keys() {
            let mut a = vec![0u32; rank];
            for &i in seq {
                a[usize::from(i) - 1] += 1;
            }
            match &out {
                None => out = Some(a),
                Some(b) if *b != a => return None,
                _ => {}
            }
        }
        Some(out.unwrap_or_else(|| vec![0; rank]))
    }

    /// `X ⋆ Y`.
    pub fn shuffle(&self, other: &Character) -> Character {
        self.shuffle_capped(other, usize::MAX).expect("uncapped")
    }

    /// `X ⋆ Y`, failing once the result would hold more than `cap` sequences.
    pub fn shuffle_capped(&self, other: &Character, cap: usize) -> Result<Character> {
        let mut out = Character::zero();
        let mut buf = Vec::new();
        for (u, cu) in &self.terms {
            for (v, cv) in &other.terms {
                buf.clear();
                shuffle_into(u, v, cu * cv, &mut buf, &mut out, cap)?;
            }
        }
        Ok(out)
    }

    /// Concatenation product `X * Y`.
    pub fn concat(&self, other: &Character) -> Character {
        let mut out = Character::zero();
        for (u, cu) in &self.terms {
            for (v, cv) in &other.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add(w, cu * cv);
            }
        }
        out
    }
}

fn shuffle_into(u: &[u8], v: &[u8], coef: u64, buf: &mut Vec<u8>, out: &mut Character, cap: usize) -> Result<()> {
    if u.is_empty() || v.is_empty() {
        let mut w = buf.clone();
        w.extend_from_slice(u);
        w.extend_from_slice(v);
        out.add(w, coef);
        if out.len() > cap {
            return Err(Error::CapExceeded(cap));
        }
        return Ok(());
    }
    buf.push(u[0]);
    shuffle_into(&u[1..], v, coef, buf, out, cap)?;
    buf.pop();
    buf.push(v[0]);
    shuffle_into(u, &v[1..], coef, buf, out, cap)?;
    buf.pop();
    Ok(())
}

/// `ch Δ(a,b)`.
pub fn ch_delta(datum: &CartanDatum, a: Letter, b: Letter) -> Result<Character> {
    let n = datum.rank();
    Ok(match factor_kind(datum, a, b) {
        FactorKind::Fork => {
            let mut c = Character::zero();
            for mid in [Letter::plain(n), Letter::bar(n)] {
                let mut w = kashiwara_word(datum, a, mid)?;
                w.extend(kashiwara_word(datum, mid, b)?);
                c.add(w, 1);
            }
            c
        }
        FactorKind::ZeroCrossing => Character::term(kashiwara_word(datum, a, b)?, 2),
        FactorKind::Line => Character::term(kashiwara_word(datum, a, b)?, 1),
    })
}

/// `ch ind(Δ^{⊠m})` for a factor with multiplicity `m`.
pub fn ch_factor_power(datum: &CartanDatum, f: &DeltaFactor, cap: usize) -> Result<Character> {
    let base = ch_delta(datum, f.a, f.b)?;
    let mut out = Character::unit();
    for _ in 0..f.mult {
        out = out.shuffle_capped(&base, cap)?;
    }
    Ok(out)
}

/// `ch ind Δ(𝐚)`: the shuffle of every factor, with multiplicity.
pub fn decomposition_character(datum: &CartanDatum, dec: &Decomposition, cap: usize) -> Result<Character> {
    let mut out = Character::unit();
    for f in dec.blocks.iter().flatten() {
        out = out.shuffle_capped(&ch_factor_power(datum, f, cap)?, cap)?;
    }
    Ok(out)
}

/// One failed identity instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SerreViolation {
    /// A sequence whose window was tested.
    pub sequence: Vec<u8>,
    /// 0-based start of the window.
    pub position: usize,
    pub i: u8,
    pub j: u8,
    pub lhs: u64,
    pub rhs: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SerreReport {
    /// Identity instances evaluated.
    pub checked: usize,
    pub violations: Vec<SerreViolation>,
}

impl SerreReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every identity instance touching a term of `x`:
/// swaps for `a_ij = 0`, `2·iji = iij + jii` for `a_ij = −1`, and
/// `iiij + 3·ijii = jiii + 3·iiji` for `a_ij = −2`.
///
/// An instance reachable from several terms is evaluated once per term;
/// `checked` counts evaluations and violations are reported once.
pub fn serre_check(datum: &CartanDatum, x: &Character) -> SerreReport {
    let mut report = SerreReport::default();
    let n = datum.rank();
    let mut probe = Vec::new();
    for (seq, _) in x.terms() {
        for w in [2usize, 3, 4] {
            if seq.len() < w {
                continue;
            }
            for p in 0..=seq.len() - w {
                let window = &seq[p..p + w];
                for i in 1..=n as u8 {
                    for j in 1..=n as u8 {
                        if i == j {
                            continue;
                        }
                        let a = datum.a(usize::from(i), usize::from(j));
                        let patterns: &[[u8; 4]] = match (a, w) {
                            (0, 2) => &[[i, j, 0, 0]],
                            (-1, 3) => &[[i, j, i, 0], [i, i, j, 0], [j, i, i, 0]],
                            (-2, 4) => &[[i, i, i, j], [i, j, i, i], [j, i, i, i], [i, i, j, i]],
                            _ => continue,
                        };
                        if !patterns.iter().any(|pat| pat[..w] == *window) {
                            continue;
                        }
                        probe.clear();
                        probe.extend_from_slice(seq);
                        let mut coef = |pat: &[u8]| {
                            probe[p..p + w].copy_from_slice(pat);
                            x.coefficient(&probe)
                        };
                        let (lhs, rhs) = match a {
                            0 => (coef(&[i, j]), coef(&[j, i])),
                            -1 => (2 * coef(&[i, j, i]), coef(&[i, i, j]) + coef(&[j, i, i])),
                            _ => (
                                coef(&[i, i, i, j]) + 3 * coef(&[i, j, i, i]),
                                coef(&[j, i, i, i]) + 3 * coef(&[i, i, j, i]),
                            ),
                        };
                        report.checked += 1;
                        if lhs != rhs {
                            let mut canon = seq.clone();
                            canon[p..p + w].copy_from_slice(&patterns[0][..w]);
                            if !report.violations.iter().any(|v| v.sequence == canon && v.position == p && v.i == i && v.j == j) {
                                report.violations.push(SerreViolation { sequence: canon, position: p, i, j, lhs, rhs });
                            }
                        }
                    }
                }
            }
        }
    }
    report
}

/// The Serre element for `(i, j)` as `Σ c_w w`: `ij − ji`, `iij − 2iji + jii`
/// or `iiij − 3iiji + 3ijii − jiii`. `None` when `a_ij ∉ {0, −1, −2}`.
pub fn serre_element(datum: &CartanDatum, i: u8, j: u8) -> Option<Vec<(Vec<u8>, i64)>> {
    if i == j {
        return None;
    }
    let a = datum.a(usize::from(i), usize::from(j));
    let coeffs: &[i64] = match a {
        0 => &[1, -1],
        -1 => &[1, -2, 1],
        -2 => &[1, -3, 3, -1],
        _ => return None,
    };
    let m = coeffs.len() - 1;
    Some(
        coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| {
                let mut w = vec![i; m];
                w.insert(m - k, j);
                (w, c)
            })
            .collect(),
    )
}

/// Whether every Serre element is primitive for the deshuffle coproduct,
/// i.e. all terms `w_S ⊗ w_{S^c}` with `S` proper and nonempty cancel.
/// Combined with [`serre_check`] on each factor this settles the
/// identities for a shuffle product without expanding it.
pub fn serre_primitive(datum: &CartanDatum) -> bool {
    let n = datum.rank() as u8;
    for i in 1..=n {
        for j in 1..=n {
            let Some(elem) = serre_element(datum, i, j) else { continue };
            let mut acc: BTreeMap<(Vec<u8>, Vec<u8>), i64> = BTreeMap::new();
            for (w, c) in &elem {
                let len = w.len();
                for mask in 1..(1u32 << len) - 1 {
                    let (mut left, mut right) = (Vec::new(), Vec::new());
                    for (p, &x) in w.iter().enumerate() {
                        if mask >> p & 1 == 1 {
                            left.push(x);
                        } else {
                            right.push(x);
                        }
                    }
                    *acc.entry((left, right)).or_insert(0) += c;
                }
            }
            if acc.values().any(|&c| c != 0) {
                return false;
            }
        }
    }
    true
}

/// Upper bound on the number of terms of `ch ind Δ(𝐚)`: the product of the
/// factor term counts times the multinomial coefficient of the word lengths.
pub fn decomposition_character_bound(datum: &CartanDatum, dec: &Decomposition) -> Result<u128> {
    let mut total_len = 0u128;
    let mut bound = 1u128;
    for f in dec.blocks.iter().flatten() {
        let ch = ch_delta(datum, f.a, f.b)?;
        let len = ch.terms.keys().next().map_or(0, |w| w.len()) as u128;
        for _ in 0..f.mult {
            bound = bound.saturating_mul(ch.len() as u128);
            for k in 1..=len {
                total_len += 1;
                // bound · C(total_len, k) built up one factor at a time stays integral.
                bound = bound.saturating_mul(total_len) / k;
            }
        }
    }
    Ok(bound)
}

/// Whether a Cartan type has any pair with `a_ij < −2` (only `G₂`), for
/// which the validator has no identity.
pub fn serre_supported(datum: &CartanDatum) -> bool {
    datum.cartan_type() != CartanType::G2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(ty: CartanType, n: usize) -> CartanDatum {
        CartanDatum::new(ty, n).unwrap()
    }

    #[test]
    fn small_shuffles() {
        let one = Character::term(vec![1], 1);
        let two = Character::term(vec![2], 1);
        let s = one.shuffle(&two);
        assert_eq!(s.coefficient(&[1, 2]), 1);
        assert_eq!(s.coefficient(&[2, 1]), 1);
        assert_eq!(one.shuffle(&one).coefficient(&[1, 1]), 2);
        assert_eq!(Character::zero().coefficient(&[1]), 0);
        assert!(one.shuffle_capped(&two, 1).is_err());
    }

    #[test]
    fn delta_characters() {
        let b3 = d(CartanType::B, 3);
        let c = ch_delta(&b3, Letter::bar(1), Letter::plain(1)).unwrap();
        assert_eq!(c.coefficient(&[1, 2, 3, 3, 2, 1]), 2);
        assert_eq!(c.len(), 1);
        let c = ch_delta(&b3, Letter::bar(1), Letter::bar(2)).unwrap();
        assert_eq!(c, Character::term(vec![1], 1));
        let d4 = d(CartanType::D, 4);
        let c = ch_delta(&d4, Letter::bar(3), Letter::plain(3)).unwrap();
        assert_eq!(c.coefficient(&[4, 3]), 1);
        assert_eq!(c.coefficient(&[3, 4]), 1);
        assert_eq!(c.total(), 2);
    }

    #[test]
    fn serre_on_a2() {
        let a2 = d(CartanType::A, 2);
        let x = Character::term(vec![1, 1], 2).shuffle(&Character::term(vec![2], 1));
        assert_eq!(x.coefficient(&[1, 2, 1]), 2);
        let r = serre_check(&a2, &x);
        assert!(r.passed() && r.checked > 0);
        let bad = Character::term(vec![1, 2, 1], 1);
        assert!(!serre_check(&a2, &bad).passed());
        assert!(serre_check(&a2, &Character::term(vec![2], 1)).passed());
    }

    #[test]
    fn primitive_serre_elements() {
        let b2 = d(CartanType::B, 2);
        let e = serre_element(&b2, 1, 2).unwrap();
        assert_eq!(e[0], (vec![1, 1, 2], 1));
        assert_eq!(e[1], (vec![1, 2, 1], -2));
        assert_eq!(serre_element(&b2, 2, 1).unwrap().len(), 4);
        for (ty, n) in [(CartanType::A, 3), (CartanType::B, 3), (CartanType::C, 4), (CartanType::D, 4), (CartanType::F4, 4)] {
            assert!(serre_primitive(&d(ty, n)));
        }
    }

    #[test]
    fn serre_long_pair() {
        let b2 = d(CartanType::B, 2);
        let x = Character::term(vec![2, 2, 2], 6).shuffle(&Character::term(vec![1], 1));
        assert!(serre_check(&b2, &x).passed());
        let bad = Character::term(vec![2, 2, 2, 1], 1);
        assert!(!serre_check(&b2, &bad).passed());
    }
}
