//! Letters of the fundamental crystals used by the construction, with the
//! signed-integer encoding `ī ↦ −i`, `0 ↦ 0`, `i ↦ +i`.
//!
//! For types B, C, D the crystal `𝓑` is the vector crystal
//! `1 → 2 → ⋯ → n (→ 0) → n̄ → ⋯ → 1̄` (the D fork runs through `n` and
//! `n̄`), where `a → b` labelled `i` means `f_i a = b`. For type A the crystal
//! `𝓑` consists of the barred letters `(n+1)‾ → n̄ → ⋯ → 1̄`. The order `≻`
//! puts `a` above `b` when `a` is reachable from `b` by lowering operators,
//! so `1̄` is the largest letter.

use alloc::vec::Vec;
use core::fmt;

use crate::cartan::{CartanDatum, CartanType};
use crate::{Error, Result};

/// A letter, stored in the signed wire encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(pub i8);

impl Letter {
    pub const ZERO: Letter = Letter(0);

    pub fn plain(i: usize) -> Letter {
        Letter(i as i8)
    }

    pub fn bar(i: usize) -> Letter {
        Letter(-(i as i8))
    }

    pub fn is_barred(self) -> bool {
        self.0 < 0
    }

    pub fn value(self) -> i8 {
        self.0
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 < 0 {
            write!(f, "{}\u{305}", -self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// The letters of `𝓑`, listed from the highest weight letter downwards.
pub fn vector_letters(datum: &CartanDatum) -> Result<Vec<Letter>> {
    let n = datum.rank();
    let ty = datum.cartan_type();
    let out = match ty {
        CartanType::A => (1..=n + 1).rev().map(Letter::bar).collect(),
        CartanType::B => {
            let mut v: Vec<Letter> = (1..=n).map(Letter::plain).collect();
            v.push(Letter::ZERO);
            v.extend((1..=n).rev().map(Letter::bar));
            v
        }
        CartanType::C | CartanType::D => {
            let mut v: Vec<Letter> = (1..=n).map(Letter::plain).collect();
            v.extend((1..=n).rev().map(Letter::bar));
            v
        }
        _ => return Err(Error::NotClassical(datum.label())),
    };
    Ok(out)
}

/// Whether `l` is a letter of `𝓑` (or of the plain type A vector crystal
/// when `plain_a` is set).
pub fn is_valid(datum: &CartanDatum, l: Letter, plain_a: bool) -> bool {
    let n = datum.rank() as i32;
    let v = i32::from(l.0);
    match datum.cartan_type() {
        CartanType::A if plain_a => (1..=n + 1).contains(&v),
        CartanType::A => (-(n + 1)..=-1).contains(&v),
        CartanType::B => (-n..=n).contains(&v),
        CartanType::C | CartanType::D => v != 0 && (-n..=n).contains(&v),
        _ => false,
    }
}

/// `f_i` on a single letter. Type A accepts both the barred letters of `𝓑`
/// and the plain letters `1..=n+1` of the vector crystal.
pub fn letter_f(datum: &CartanDatum, l: Letter, i: usize) -> Option<Letter> {
    let n = datum.rank() as i8;
    let i = i as i8;
    let v = l.0;
    let ty = datum.cartan_type();
    if ty == CartanType::A {
        return if v == i {
            Some(Letter(i + 1))
        } else if v == -(i + 1) {
            Some(Letter(-i))
        } else {
            None
        };
    }
    if i < n {
        if v == i {
            return Some(Letter(i + 1));
        }
        if v == -(i + 1) {
            return Some(Letter(-i));
        }
        return None;
    }
    // i == n
    match ty {
        CartanType::B => match v {
            x if x == n => Some(Letter::ZERO),
            0 => Some(Letter(-n)),
            _ => None,
        },
        CartanType::C => (v == n).then_some(Letter(-n)),
        CartanType::D => {
            if v == n - 1 {
                Some(Letter(-n))
            } else if v == n {
                Some(Letter(-(n - 1)))
            } else {
                None
            }
        }
        _ => None,
    }
}

/// `e_i` on a single letter.
pub fn letter_e(datum: &CartanDatum, l: Letter, i: usize) -> Option<Letter> {
    let n = datum.rank() as i8;
    let candidates = (-(n + 1)..=(n + 1)).map(Letter);
    for c in candidates {
        if letter_f(datum, c, i) == Some(l) {
            return Some(c);
        }
    }
    None
}

/// Position of a letter of `𝓑` counted from the highest weight letter;
/// `a ≻ b` iff `position(a) > position(b)`. The D letters `n`, `n̄` share a
/// position and are incomparable.
pub fn position(datum: &CartanDatum, l: Letter) -> usize {
    let n = datum.rank() as i32;
    let v = i32::from(l.0);
    let p = match datum.cartan_type() {
        CartanType::A => n + 1 + v,
        CartanType::B => {
            if v > 0 {
                v - 1
            } else if v == 0 {
                n
            } else {
                2 * n + 1 + v
            }
        }
        CartanType::C => {
            if v > 0 {
                v - 1
            } else {
                2 * n + v
            }
        }
        CartanType::D => {
            if v > 0 {
                v - 1
            } else if v == -n {
                n - 1
            } else {
                2 * n - 1 + v
            }
        }
        _ => 0,
    };
    p as usize
}

/// Strict order `a ≻ b` on `𝓑`.
pub fn succ(datum: &CartanDatum, a: Letter, b: Letter) -> bool {
    position(datum, a) > position(datum, b)
}

/// `a ⪰ b` on `𝓑`.
pub fn succeq(datum: &CartanDatum, a: Letter, b: Letter) -> bool {
    a == b || succ(datum, a, b)
}

/// A spin crystal element: bit `k-1` set means a minus sign at position `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpinLetter(pub u16);

impl SpinLetter {
    pub fn signs(self, n: usize) -> Vec<i8> {
        (0..n).map(|k| if self.0 >> k & 1 == 1 { -1 } else { 1 }).collect()
    }

    pub fn from_signs(signs: &[i8]) -> SpinLetter {
        let mut m = 0u16;
        for (k, &s) in signs.iter().enumerate() {
            if s < 0 {
                m |= 1 << k;
            }
        }
        SpinLetter(m)
    }

    pub fn minus_count(self) -> u32 {
        self.0.count_ones()
    }
}

/// `f_i` on a spin element (types B and D).
pub fn spin_f(datum: &CartanDatum, s: SpinLetter, i: usize) -> Option<SpinLetter> {
    let n = datum.rank();
    let bit = |k: usize| s.0 >> (k - 1) & 1 == 1;
    if i < n {
        if !bit(i) && bit(i + 1) {
            return Some(SpinLetter(s.0 ^ (1 << (i - 1)) ^ (1 << i)));
        }
        return None;
    }
    match datum.cartan_type() {
        CartanType::B => (!bit(n)).then_some(SpinLetter(s.0 | 1 << (n - 1))),
        CartanType::D => {
            (!bit(n - 1) && !bit(n)).then_some(SpinLetter(s.0 | 1 << (n - 1) | 1 << (n - 2)))
        }
        _ => None,
    }
}

/// `e_i` on a spin element.
pub fn spin_e(datum: &CartanDatum, s: SpinLetter, i: usize) -> Option<SpinLetter> {
    let n = datum.rank();
    (0..1u32 << n)
        .map(|m| SpinLetter(m as u16))
        .find(|&c| spin_f(datum, c, i) == Some(s))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b3() -> CartanDatum {
        CartanDatum::new(CartanType::B, 3).unwrap()
    }

    #[test]
    fn b3_letters_and_arrows() {
        let d = b3();
        let letters = vector_letters(&d).unwrap();
        assert_eq!(letters.len(), 7);
        assert_eq!(letter_f(&d, Letter(3), 3), Some(Letter(0)));
        assert_eq!(letter_f(&d, Letter(0), 3), Some(Letter(-3)));
        assert_eq!(letter_f(&d, Letter(-2), 1), Some(Letter(-1)));
        assert_eq!(letter_f(&d, Letter(-1), 1), None);
        assert_eq!(letter_e(&d, Letter(-1), 1), Some(Letter(-2)));
        assert_eq!(letter_e(&d, Letter(1), 1), None);
    }

    #[test]
    fn a1_chain() {
        let d = CartanDatum::new(CartanType::A, 1).unwrap();
        assert_eq!(vector_letters(&d).unwrap(), [Letter(-2), Letter(-1)]);
        assert_eq!(letter_f(&d, Letter(-2), 1), Some(Letter(-1)));
        assert!(succ(&d, Letter(-1), Letter(-2)));
    }

    #[test]
    fn orders() {
        let d = b3();
        assert!(succ(&d, Letter(0), Letter(3)));
        assert!(succ(&d, Letter(-1), Letter(1)));
        let d4 = CartanDatum::new(CartanType::D, 4).unwrap();
        assert!(!succeq(&d4, Letter(-4), Letter(4)));
        assert!(!succeq(&d4, Letter(4), Letter(-4)));
        assert!(succ(&d4, Letter(-3), Letter(4)));
        assert!(succ(&d4, Letter(-4), Letter(3)));
    }

    #[test]
    fn d_fork() {
        let d4 = CartanDatum::new(CartanType::D, 4).unwrap();
        assert_eq!(letter_f(&d4, Letter(3), 3), Some(Letter(4)));
        assert_eq!(letter_f(&d4, Letter(3), 4), Some(Letter(-4)));
        assert_eq!(letter_f(&d4, Letter(4), 4), Some(Letter(-3)));
        assert_eq!(letter_f(&d4, Letter(-4), 3), Some(Letter(-3)));
        assert_eq!(letter_f(&d4, Letter(4), 3), None);
    }

    #[test]
    fn spin_arrows() {
        let d = b3();
        let top = SpinLetter(0);
        assert_eq!(spin_f(&d, top, 3), Some(SpinLetter::from_signs(&[1, 1, -1])));
        assert_eq!(spin_f(&d, top, 1), None);
        let d4 = CartanDatum::new(CartanType::D, 4).unwrap();
        assert_eq!(spin_f(&d4, top, 4), Some(SpinLetter::from_signs(&[1, 1, -1, -1])));
        assert_eq!(spin_e(&d4, SpinLetter::from_signs(&[1, 1, -1, -1]), 4), Some(top));
    }
}
