//! Segment factors `Δ(a,b)`, the multiplicities `θ_{ij}`, the per-block
//! factor lists `Δ(𝐚;i)` and crystal-level reconstruction from them.
//!
//! A factor word `i(a,b) = (i_1, …, i_m)` is listed with the arrow nearest
//! to `a` first, so that `f_{i_1} ⋯ f_{i_m} b = a` with `f_{i_m}` applied
//! first.

use alloc::vec;
use alloc::vec::Vec;

use crate::cartan::{longest_word, CartanDatum, CartanType};
use crate::crystal::{Alphabet, CrystalElement};
use crate::letter::{letter_f, succ, succeq, Letter};
use crate::strings::{in_s, in_s_lambda, triangle, Triangle};
use crate::{Error, Result};

/// `Δ(a,b)` with a multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DeltaFactor {
    pub a: Letter,
    pub b: Letter,
    pub mult: u32,
}

/// Which explicit model realizes `Δ(a,b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorKind {
    /// One-dimensional, all `x` and `τ` act by zero.
    Line,
    /// Type B, `a ≻ 0 ≻ b`: two basis vectors on the same word.
    ZeroCrossing,
    /// Type D, `a ⪰ (n−1)‾` and `n−1 ⪰ b`: one basis vector per route
    /// through `n` or `n̄`.
    Fork,
}

pub fn factor_kind(datum: &CartanDatum, a: Letter, b: Letter) -> FactorKind {
    let n = datum.rank();
    match datum.cartan_type() {
        CartanType::B if succ(datum, a, Letter::ZERO) && succ(datum, Letter::ZERO, b) => {
            FactorKind::ZeroCrossing
        }
        CartanType::D
            if succeq(datum, a, Letter::bar(n - 1)) && succeq(datum, Letter::plain(n - 1), b) =>
        {
            FactorKind::Fork
        }
        _ => FactorKind::Line,
    }
}

/// The letter `î` attached to a position `i`.
pub fn hat(datum: &CartanDatum, i: usize) -> Result<Letter> {
    let n = datum.rank();
    let ty = datum.cartan_type();
    let bad = Err(Error::IndexOutOfRange(i));
    if i == 0 {
        return bad;
    }
    match ty {
        CartanType::A if i <= n + 1 => Ok(Letter::bar(i)),
        CartanType::A => bad,
        CartanType::B | CartanType::C | CartanType::D if i <= n => Ok(Letter::bar(i)),
        CartanType::B if i == n + 1 => Ok(Letter::ZERO),
        CartanType::B if i <= 2 * n + 1 => Ok(Letter::plain(2 * n + 2 - i)),
        CartanType::C | CartanType::D if i <= 2 * n => Ok(Letter::plain(2 * n + 1 - i)),
        CartanType::B | CartanType::C | CartanType::D => bad,
        _ => Err(Error::NotClassical(datum.label())),
    }
}

/// `δ(a ⪰ b)`.
pub fn delta_indicator(datum: &CartanDatum, a: Letter, b: Letter) -> u8 {
    u8::from(succeq(datum, a, b))
}

/// `i(a,b)`; in type D the route through the fork goes via `n` unless `a = n̄`.
pub fn kashiwara_word(datum: &CartanDatum, a: Letter, b: Letter) -> Result<Vec<u8>> {
    if !succ(datum, a, b) {
        return Err(Error::NotDominating { a: a.0, b: b.0 });
    }
    let n = datum.rank();
    let mut path = Vec::new();
    let mut x = b;
    while x != a {
        let mut step = None;
        for i in 1..=n {
            if let Some(y) = letter_f(datum, x, i) {
                let prefer_bar = datum.cartan_type() == CartanType::D && a == Letter::bar(n);
                let keep = match step {
                    None => true,
                    Some((_, prev)) => prefer_bar && y == Letter::bar(n) && prev != y,
                };
                if keep {
                    step = Some((i, y));
                }
            }
        }
        let (i, y) = step.ok_or(Error::NotDominating { a: a.0, b: b.0 })?;
        path.push(i as u8);
        x = y;
    }
    path.reverse();
    Ok(path)
}

/// Every pair `a ≻ b` of letters of `𝓑`, ordered by `a` then `b` from the top.
pub fn all_segments(datum: &CartanDatum) -> Result<Vec<(Letter, Letter)>> {
    let letters = crate::letter::vector_letters(datum)?;
    let mut out = Vec::new();
    for &a in letters.iter().rev() {
        for &b in &letters {
            if succ(datum, a, b) {
                out.push((a, b));
            }
        }
    }
    Ok(out)
}

/// `θ_{ij}` read off a triangle; may be negative for strings outside `𝒮`.
pub fn theta(datum: &CartanDatum, tri: &Triangle, i: usize, j: usize) -> i64 {
    let n = datum.rank();
    let t = |col: usize| i64::from(tri.get(i, col));
    match datum.cartan_type() {
        CartanType::A | CartanType::C => t(j) - t(j + 1),
        CartanType::B => {
            let half_up = (t(n) + 1) / 2;
            let half_down = t(n) / 2;
            if j + 2 <= n {
                t(j) - t(j + 1)
            } else if j == n - 1 {
                t(n - 1) - half_up
            } else if j == n {
                half_up - half_down
            } else if j == n + 1 {
                half_down - t(n + 1)
            } else {
                t(j - 1) - t(j)
            }
        }
        CartanType::D => {
            if j + 3 <= n {
                t(j) - t(j + 1)
            } else if j == n - 2 {
                t(n - 2) - t(n - 1).max(t(n))
            } else if j == n - 1 {
                (t(n) - t(n - 1)).max(0)
            } else if j == n {
                (t(n - 1) - t(n)).max(0)
            } else if j == n + 1 {
                t(n - 1).min(t(n)) - t(n + 1)
            } else {
                t(j - 1) - t(j)
            }
        }
        _ => 0,
    }
}

/// Column range of `θ_{i,·}` feeding the factor list of triangle row `i`.
pub fn theta_range(datum: &CartanDatum, i: usize) -> (usize, usize) {
    let n = datum.rank();
    match datum.cartan_type() {
        CartanType::A => (n + 1 - i, n),
        CartanType::B => (n + 1 - i, n + i),
        CartanType::C => (n + 1 - i, n - 1 + i),
        CartanType::D => (n - i, n + i),
        _ => (1, 0),
    }
}

/// `(θ_{i,j})_j` over [`theta_range`].
pub fn theta_row(datum: &CartanDatum, tri: &Triangle, i: usize) -> Vec<i64> {
    let (lo, hi) = theta_range(datum, i);
    (lo..=hi).map(|j| theta(datum, tri, i, j)).collect()
}

/// Inverts [`theta_row`]: from `(θ_{i,j})_j` recovers `(t_{i,j})_j` over the
/// same columns. For B and D the last column lies outside the row support
/// and is always zero.
pub fn counts_to_t(datum: &CartanDatum, theta: &[u32]) -> Result<Vec<u32>> {
    let n = datum.rank();
    let ty = datum.cartan_type();
    let len = theta.len();
    let i = match ty {
        CartanType::A => len,
        CartanType::B if len % 2 == 0 => len / 2,
        CartanType::C if len % 2 == 1 => (len + 1) / 2,
        CartanType::D if len % 2 == 1 => (len - 1) / 2,
        CartanType::B | CartanType::C | CartanType::D => {
            return Err(Error::InfeasibleRow(alloc::format!("row length {len}")))
        }
        _ => return Err(Error::NotClassical(datum.label())),
    };
    if i == 0 || i > crate::strings::row_count(datum) {
        return Err(Error::InfeasibleRow(alloc::format!("row length {len}")));
    }
    let (lo, hi) = theta_range(datum, i);
    let th = |j: usize| i64::from(theta[j - lo]);
    let mut t = vec![0i64; hi + 2];
    match ty {
        CartanType::A | CartanType::C => {
            for j in (lo..=hi).rev() {
                t[j] = th(j) + t[j + 1];
            }
        }
        CartanType::B => {
            for j in (n + 2..=hi).rev() {
                t[j - 1] = th(j) + t[j];
            }
            if th(n) > 1 {
                return Err(Error::InfeasibleRow(alloc::format!("middle count {} exceeds 1", th(n))));
            }
            t[n] = 2 * (th(n + 1) + t[n + 1]) + th(n);
            if lo < n {
                t[n - 1] = th(n - 1) + (t[n] + 1) / 2;
                for j in (lo..n - 1).rev() {
                    t[j] = th(j) + t[j + 1];
                }
            }
        }
        CartanType::D => {
            for j in (n + 2..=hi).rev() {
                t[j - 1] = th(j) + t[j];
            }
            if th(n - 1) > 0 && th(n) > 0 {
                return Err(Error::InfeasibleRow("both fork counts positive".into()));
            }
            let m = th(n + 1) + t[n + 1];
            t[n - 1] = m + th(n);
            t[n] = m + th(n - 1);
            if lo < n - 1 {
                t[n - 2] = th(n - 2) + t[n - 1].max(t[n]);
                for j in (lo..n - 2).rev() {
                    t[j] = th(j) + t[j + 1];
                }
            }
        }
        _ => unreachable!(),
    }
    Ok((lo..=hi).map(|j| t[j] as u32).collect())
}

fn push_factor(out: &mut Vec<DeltaFactor>, a: Letter, b: Letter, mult: i64) -> Result<()> {
    if mult < 0 {
        return Err(Error::NotInCone);
    }
    if mult > 0 {
        out.push(DeltaFactor { a, b, mult: mult as u32 });
    }
    Ok(())
}

/// `Δ(𝐚;i)` for `1 ≤ i ≤ n`, zero multiplicities omitted.
pub fn delta_factors(datum: &CartanDatum, string: &[u32], i: usize) -> Result<Vec<DeltaFactor>> {
    let tri = triangle(datum, string)?;
    delta_factors_of(datum, &tri, i)
}

fn delta_factors_of(datum: &CartanDatum, tri: &Triangle, i: usize) -> Result<Vec<DeltaFactor>> {
    let n = datum.rank();
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange(i));
    }
    let mut out = Vec::new();
    let ty = datum.cartan_type();
    if ty == CartanType::D && i <= 2 {
        let (b, m) = if i == 1 {
            (Letter::plain(n), tri.get(1, n - 1))
        } else {
            (Letter::bar(n), tri.get(1, n))
        };
        push_factor(&mut out, Letter::bar(n - 1), b, i64::from(m))?;
        return Ok(out);
    }
    let row = if ty == CartanType::D { i - 1 } else { i };
    let top = match ty {
        CartanType::A => n,
        CartanType::B => n + i,
        _ => n - 1 + i,
    };
    let a = hat(datum, n + 1 - i)?;
    for j in n + 1 - i..=top {
        push_factor(&mut out, a, hat(datum, j + 1)?, theta(datum, tri, row, j))?;
    }
    Ok(out)
}

/// The full factorization of a string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    /// `Δ(𝐚;1), …, Δ(𝐚;n)`.
    pub blocks: Vec<Vec<DeltaFactor>>,
    /// `N_k` words as `(index, exponent)` pairs, leftmost operator first.
    pub n_words: Vec<Vec<(u8, u32)>>,
    /// Number of factors counted with multiplicity.
    pub eta: u64,
    /// `n·λ(h)` when a weight was supplied.
    pub bound: Option<u64>,
}

/// `λ(h)` for the coweight `h` bounding the number of factors.
pub fn lambda_h(datum: &CartanDatum, lambda: &[i64]) -> i64 {
    let n = datum.rank();
    let w = |j: usize| -> i64 {
        match datum.cartan_type() {
            CartanType::A => 1,
            CartanType::B if j == n => 1,
            CartanType::D if j + 1 >= n => 1,
            _ => 2,
        }
    };
    lambda.iter().enumerate().map(|(k, &l)| w(k + 1) * l).sum()
}

pub fn decompose(datum: &CartanDatum, string: &[u32], lambda: Option<&[i64]>) -> Result<Decomposition> {
    if !in_s(datum, string)? {
        return Err(Error::NotInCone);
    }
    if let Some(l) = lambda {
        if !in_s_lambda(datum, l, string)? {
            return Err(Error::NotInCone);
        }
    }
    let tri = triangle(datum, string)?;
    let word = longest_word(datum);
    let n = datum.rank();
    let blocks = (1..=n)
        .map(|i| delta_factors_of(datum, &tri, i))
        .collect::<Result<Vec<_>>>()?;
    let n_words = (1..=n)
        .map(|k| {
            let off = word.block_offset(k);
            word.block(k).iter().enumerate().map(|(p, &s)| (s, string[off + p])).collect()
        })
        .collect();
    let eta = blocks.iter().flatten().map(|f| u64::from(f.mult)).sum();
    let bound = lambda.map(|l| (n as i64 * lambda_h(datum, l)) as u64);
    Ok(Decomposition { blocks, n_words, eta, bound })
}

/// Sums the arrows of block `k`'s factor words into the slots of the block
/// word `𝐬_k`: each factor word, with repeated indices merged, is matched
/// left to right as a subsequence of `𝐬_k`.
pub fn merged_block_word(datum: &CartanDatum, k: usize, factors: &[DeltaFactor]) -> Result<Vec<(u8, u32)>> {
    let word = longest_word(datum);
    let slots = word.block(k);
    let mut counts = vec![0u32; slots.len()];
    for f in factors {
        let w = kashiwara_word(datum, f.a, f.b)?;
        let mut runs: Vec<(u8, u32)> = Vec::new();
        for &i in &w {
            match runs.last_mut() {
                Some((j, c)) if *j == i => *c += 1,
                _ => runs.push((i, 1)),
            }
        }
        let mut p = 0;
        for (i, c) in runs {
            while p < slots.len() && slots[p] != i {
                p += 1;
            }
            if p == slots.len() {
                return Err(Error::InvalidChoice(alloc::format!(
                    "factor word {w:?} does not fit block {k}"
                )));
            }
            counts[p] += c * f.mult;
            p += 1;
        }
    }
    Ok(slots.iter().copied().zip(counts).collect())
}

/// Rebuilds `v = N_1 ⋯ N_n b_λ` from the factor lists, applying block `n`
/// first and, inside a block, the rightmost operator first.
pub fn reconstruct(alphabet: &Alphabet, top: &CrystalElement, dec: &Decomposition) -> Result<CrystalElement> {
    let datum = alphabet.datum();
    let word = longest_word(datum);
    let mut cur = top.clone();
    for k in (1..=dec.blocks.len()).rev() {
        let merged = merged_block_word(datum, k, &dec.blocks[k - 1])?;
        for (p, &(i, c)) in merged.iter().enumerate().rev() {
            if !alphabet.f_pow_mut(&mut cur, usize::from(i), c) {
                return Err(Error::NullOperator { step: word.block_offset(k) + p + 1, index: i });
            }
        }
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(ty: CartanType, n: usize) -> CartanDatum {
        CartanDatum::new(ty, n).unwrap()
    }

    const T: [u32; 9] = [3, 3, 3, 0, 4, 3, 5, 2, 1];

    #[test]
    fn hats() {
        let b3 = d(CartanType::B, 3);
        assert_eq!(hat(&b3, 4).unwrap(), Letter::ZERO);
        assert_eq!(hat(&b3, 1).unwrap(), Letter::bar(1));
        assert_eq!(hat(&b3, 5).unwrap(), Letter::plain(3));
        assert_eq!(hat(&b3, 7).unwrap(), Letter::plain(1));
        assert!(hat(&b3, 8).is_err());
        assert_eq!(hat(&d(CartanType::C, 3), 4).unwrap(), Letter::plain(3));
        assert_eq!(hat(&d(CartanType::A, 2), 3).unwrap(), Letter::bar(3));
    }

    #[test]
    fn words() {
        let b3 = d(CartanType::B, 3);
        assert_eq!(kashiwara_word(&b3, Letter::bar(1), Letter::plain(1)).unwrap(), [1, 2, 3, 3, 2, 1]);
        assert_eq!(kashiwara_word(&b3, Letter::bar(1), Letter::bar(2)).unwrap(), [1]);
        assert_eq!(kashiwara_word(&b3, Letter::bar(2), Letter::bar(3)).unwrap(), [2]);
        assert_eq!(kashiwara_word(&b3, Letter::bar(1), Letter::ZERO).unwrap(), [1, 2, 3]);
        assert!(kashiwara_word(&b3, Letter::plain(1), Letter::bar(1)).is_err());
        let d4 = d(CartanType::D, 4);
        assert_eq!(kashiwara_word(&d4, Letter::bar(3), Letter::plain(3)).unwrap(), [4, 3]);
        assert_eq!(kashiwara_word(&d4, Letter::bar(4), Letter::plain(3)).unwrap(), [4]);
        assert_eq!(kashiwara_word(&d4, Letter::plain(4), Letter::plain(3)).unwrap(), [3]);
        assert_eq!(kashiwara_word(&d4, Letter::bar(3), Letter::bar(4)).unwrap(), [3]);
        assert!(kashiwara_word(&d4, Letter::bar(4), Letter::plain(4)).is_err());
    }

    #[test]
    fn indicator() {
        let b3 = d(CartanType::B, 3);
        assert_eq!(delta_indicator(&b3, Letter::bar(1), Letter::bar(1)), 1);
        assert_eq!(delta_indicator(&b3, Letter::ZERO, Letter::plain(3)), 1);
        assert_eq!(delta_indicator(&b3, Letter::plain(3), Letter::ZERO), 0);
        let d4 = d(CartanType::D, 4);
        assert_eq!(delta_indicator(&d4, Letter::bar(4), Letter::plain(4)), 0);
    }

    #[test]
    fn thetas_of_example() {
        let b3 = d(CartanType::B, 3);
        let tri = triangle(&b3, &T).unwrap();
        assert_eq!(theta_row(&b3, &tri, 1), [1, 1]);
        assert_eq!(theta_row(&b3, &tri, 2), [1, 1, 1, 0]);
        assert_eq!(theta_row(&b3, &tri, 3), [1, 0, 1, 0, 1, 1]);
    }

    #[test]
    fn rows_invert() {
        let b3 = d(CartanType::B, 3);
        assert_eq!(counts_to_t(&b3, &[1, 0, 1, 0, 1, 1]).unwrap(), [4, 3, 5, 2, 1, 0]);
        assert_eq!(counts_to_t(&b3, &[0; 6]).unwrap(), [0; 6]);
        assert!(counts_to_t(&b3, &[0, 0, 2, 0, 0, 0]).is_err());
        let a3 = d(CartanType::A, 3);
        assert_eq!(counts_to_t(&a3, &[1, 2, 3]).unwrap(), [6, 5, 3]);
        let d4 = d(CartanType::D, 4);
        assert!(counts_to_t(&d4, &[0, 1, 1, 0, 0]).is_err());
    }

    #[test]
    fn example_blocks() {
        let b3 = d(CartanType::B, 3);
        let f = |a: Letter, b: Letter| DeltaFactor { a, b, mult: 1 };
        let (b1, b2, b3b) = (Letter::bar(1), Letter::bar(2), Letter::bar(3));
        assert_eq!(
            delta_factors(&b3, &T, 1).unwrap(),
            [f(b3b, Letter::ZERO), f(b3b, Letter::plain(3))]
        );
        assert_eq!(
            delta_factors(&b3, &T, 2).unwrap(),
            [f(b2, b3b), f(b2, Letter::ZERO), f(b2, Letter::plain(3))]
        );
        assert_eq!(
            delta_factors(&b3, &T, 3).unwrap(),
            [f(b1, b2), f(b1, Letter::ZERO), f(b1, Letter::plain(2)), f(b1, Letter::plain(1))]
        );
        let dec = decompose(&b3, &T, Some(&[1, 1, 3])).unwrap();
        assert_eq!((dec.eta, dec.bound), (9, Some(21)));
        assert_eq!(dec.n_words[2], [(1, 4), (2, 3), (3, 5), (2, 2), (1, 1)]);
        assert_eq!(merged_block_word(&b3, 3, &dec.blocks[2]).unwrap(), dec.n_words[2]);
        assert!(delta_factors(&b3, &[0; 9], 2).unwrap().is_empty());
    }

    #[test]
    fn kinds() {
        let b3 = d(CartanType::B, 3);
        assert_eq!(factor_kind(&b3, Letter::bar(1), Letter::plain(1)), FactorKind::ZeroCrossing);
        assert_eq!(factor_kind(&b3, Letter::bar(1), Letter::ZERO), FactorKind::Line);
        let d4 = d(CartanType::D, 4);
        assert_eq!(factor_kind(&d4, Letter::bar(3), Letter::plain(3)), FactorKind::Fork);
        assert_eq!(factor_kind(&d4, Letter::bar(3), Letter::plain(4)), FactorKind::Line);
    }
}
