//! Cartan data of finite type, positive roots, and the fixed reduced words
//! for the longest Weyl group element.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// Finite Dynkin type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl CartanType {
    /// Parses `A`, `B`, `C`, `D`, `E`, `F`, `G` (case-insensitive); the
    /// exceptional letters need the rank to pick the concrete type.
    pub fn parse(tag: &str, rank: usize) -> Result<Self> {
        let t = tag.trim();
        let ty = match t.to_ascii_uppercase().as_str() {
            "A" => CartanType::A,
            "B" => CartanType::B,
            "C" => CartanType::C,
            "D" => CartanType::D,
            "E" | "E6" | "E7" | "E8" => match rank {
                6 => CartanType::E6,
                7 => CartanType::E7,
                8 => CartanType::E8,
                _ => return Err(Error::InvalidRank { ty: t.to_string(), rank }),
            },
            "F" | "F4" => CartanType::F4,
            "G" | "G2" => CartanType::G2,
            _ => return Err(Error::InvalidRank { ty: t.to_string(), rank }),
        };
        Ok(ty)
    }

    pub fn is_classical(self) -> bool {
        matches!(self, CartanType::A | CartanType::B | CartanType::C | CartanType::D)
    }

    fn rank_ok(self, rank: usize) -> bool {
        match self {
            CartanType::A => rank >= 1,
            CartanType::B | CartanType::C => rank >= 2,
            CartanType::D => rank >= 3,
            CartanType::E6 => rank == 6,
            CartanType::E7 => rank == 7,
            CartanType::E8 => rank == 8,
            CartanType::F4 => rank == 4,
            CartanType::G2 => rank == 2,
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CartanType::A => "A",
            CartanType::B => "B",
            CartanType::C => "C",
            CartanType::D => "D",
            CartanType::E6 => "E6",
            CartanType::E7 => "E7",
            CartanType::E8 => "E8",
            CartanType::F4 => "F4",
            CartanType::G2 => "G2",
        };
        f.write_str(s)
    }
}

/// A Cartan datum: matrix `a_{ij} = ⟨h_i, α_j⟩` together with the
/// symmetrizers `δ_i` making `(α_i|α_j) = δ_i a_{ij}` symmetric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanDatum {
    ty: CartanType,
    rank: usize,
    matrix: Vec<Vec<i32>>,
    symmetrizers: Vec<i32>,
}

impl CartanDatum {
    pub fn new(ty: CartanType, rank: usize) -> Result<Self> {
        if !ty.rank_ok(rank) {
            return Err(Error::InvalidRank { ty: ty.to_string(), rank });
        }
        let n = rank;
        let mut m = vec![vec![0i32; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut bond = |i: usize, j: usize, aij: i32, aji: i32| {
            m[i - 1][j - 1] = aij;
            m[j - 1][i - 1] = aji;
        };
        match ty {
            CartanType::A => {
                for i in 1..n {
                    bond(i, i + 1, -1, -1);
                }
            }
            CartanType::B => {
                for i in 1..n - 1 {
                    bond(i, i + 1, -1, -1);
                }
                bond(n - 1, n, -1, -2);
            }
            CartanType::C => {
                for i in 1..n - 1 {
                    bond(i, i + 1, -1, -1);
                }
                bond(n - 1, n, -2, -1);
            }
            CartanType::D => {
                for i in 1..n - 1 {
                    bond(i, i + 1, -1, -1);
                }
                bond(n - 2, n, -1, -1);
            }
            CartanType::E6 | CartanType::E7 | CartanType::E8 => {
                // D5 on nodes 1..5 (fork 3-4, 3-5), then a tail 5-6-7-8.
                for &(i, j) in &[(1, 2), (2, 3), (3, 4), (3, 5), (5, 6), (6, 7), (7, 8)] {
                    if j <= n {
                        bond(i, j, -1, -1);
                    }
                }
            }
            CartanType::F4 => {
                bond(1, 2, -1, -1);
                bond(2, 3, -1, -2);
                bond(3, 4, -1, -1);
            }
            CartanType::G2 => bond(1, 2, -3, -1),
        }
        let symmetrizers = minimal_symmetrizers(&m)?;
        Ok(CartanDatum { ty, rank, matrix: m, symmetrizers })
    }

    pub fn cartan_type(&self) -> CartanType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_classical(&self) -> bool {
        self.ty.is_classical()
    }

    /// `a_{ij}` with 1-based indices.
    pub fn a(&self, i: usize, j: usize) -> i32 {
        self.matrix[i - 1][j - 1]
    }

    pub fn matrix(&self) -> &[Vec<i32>] {
        &self.matrix
    }

    /// `δ_i`, 1-based.
    pub fn delta(&self, i: usize) -> i32 {
        self.symmetrizers[i - 1]
    }

    pub fn symmetrizers(&self) -> &[i32] {
        &self.symmetrizers
    }

    /// The symmetric bilinear form `(α_i|α_j) = δ_i a_{ij}`, 1-based.
    pub fn form(&self, i: usize, j: usize) -> i32 {
        self.delta(i) * self.a(i, j)
    }

    /// A short label such as `B3`.
    pub fn label(&self) -> alloc::string::String {
        if self.ty.is_classical() {
            format!("{}{}", self.ty, self.rank)
        } else {
            self.ty.to_string()
        }
    }

    /// `⟨h_i, β⟩` for `β = Σ c_j α_j` (1-based `i`).
    pub fn pair_root(&self, i: usize, root: &[i32]) -> i32 {
        self.matrix[i - 1].iter().zip(root).map(|(a, c)| a * c).sum()
    }

    /// Simple reflection `r_i` acting on a root written over simple roots.
    pub fn reflect_root(&self, i: usize, root: &[i32]) -> Vec<i32> {
        let p = self.pair_root(i, root);
        let mut out = root.to_vec();
        out[i - 1] -= p;
        out
    }

    /// Simple reflection `r_i` on a weight in fundamental-weight coordinates.
    pub fn reflect_weight(&self, i: usize, weight: &[i64]) -> Vec<i64> {
        let k = weight[i - 1];
        (0..self.rank)
            .map(|r| weight[r] - k * i64::from(self.matrix[r][i - 1]))
            .collect()
    }

    /// Fundamental-weight coordinates of `α_j`: the `j`-th column.
    pub fn simple_root_weight(&self, j: usize) -> Vec<i64> {
        (0..self.rank).map(|r| i64::from(self.matrix[r][j - 1])).collect()
    }

    /// Positive roots as coefficient vectors over the simple roots, obtained
    /// by closing the simple roots under simple reflections. Sorted by height
    /// and then lexicographically.
    pub fn positive_roots(&self) -> Vec<Vec<i32>> {
        let n = self.rank;
        let mut seen: BTreeSet<Vec<i32>> = BTreeSet::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            let mut r = vec![0; n];
            r[i] = 1;
            seen.insert(r.clone());
            queue.push_back(r);
        }
        while let Some(r) = queue.pop_front() {
            for i in 1..=n {
                let s = self.reflect_root(i, &r);
                if s.iter().all(|&c| c >= 0) && !seen.contains(&s) {
                    seen.insert(s.clone());
                    queue.push_back(s);
                }
            }
        }
        let mut roots: Vec<Vec<i32>> = seen.into_iter().collect();
        roots.sort_by_key(|r| (r.iter().sum::<i32>(), r.clone()));
        roots
    }

    /// The orbit of a weight under the Weyl group.
    pub fn weyl_orbit(&self, weight: &[i64]) -> BTreeSet<Vec<i64>> {
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(weight.to_vec());
        queue.push_back(weight.to_vec());
        while let Some(w) = queue.pop_front() {
            for i in 1..=self.rank {
                let r = self.reflect_weight(i, &w);
                if !seen.contains(&r) {
                    seen.insert(r.clone());
                    queue.push_back(r);
                }
            }
        }
        seen
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Smallest positive integers `δ` with `δ_i a_{ij} = δ_j a_{ji}`.
fn minimal_symmetrizers(m: &[Vec<i32>]) -> Result<Vec<i32>> {
    let n = m.len();
    // δ_i = num_i / den_i, propagated along the (connected) diagram.
    let mut num = vec![0i64; n];
    let mut den = vec![0i64; n];
    num[0] = 1;
    den[0] = 1;
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for j in 0..n {
            if j != i && m[i][j] != 0 && den[j] == 0 {
                // δ_j = δ_i a_ij / a_ji
                let p = num[i] * i64::from(m[i][j]);
                let q = den[i] * i64::from(m[j][i]);
                let g = gcd(p, q);
                num[j] = (p / g).abs();
                den[j] = (q / g).abs();
                queue.push_back(j);
            }
        }
    }
    if den.contains(&0) {
        return Err(Error::InvalidChoice("disconnected Dynkin diagram".into()));
    }
    let l = den.iter().fold(1i64, |acc, &d| acc / gcd(acc, d) * d);
    let mut out: Vec<i64> = (0..n).map(|i| num[i] * (l / den[i])).collect();
    let g = out.iter().fold(0i64, |acc, &x| gcd(acc, x));
    for x in &mut out {
        *x /= g;
    }
    for i in 0..n {
        for j in 0..n {
            if out[i] * i64::from(m[i][j]) != out[j] * i64::from(m[j][i]) {
                return Err(Error::InvalidChoice("matrix is not symmetrizable".into()));
            }
        }
    }
    Ok(out.into_iter().map(|x| x as i32).collect())
}

/// A reduced expression `r_{s_1} ⋯ r_{s_ℓ}` split into blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedWord {
    blocks: Vec<Vec<u8>>,
}

impl ReducedWord {
    pub fn from_blocks(blocks: Vec<Vec<u8>>) -> Self {
        ReducedWord { blocks }
    }

    pub fn blocks(&self) -> &[Vec<u8>] {
        &self.blocks
    }

    /// Block `k` (1-based).
    pub fn block(&self, k: usize) -> &[u8] {
        &self.blocks[k - 1]
    }

    pub fn block_lengths(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// Offset of block `k` (1-based) in the flat word.
    pub fn block_offset(&self, k: usize) -> usize {
        self.blocks[..k - 1].iter().map(Vec::len).sum()
    }

    pub fn flat(&self) -> Vec<u8> {
        self.blocks.concat()
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn range_up(lo: usize, hi: usize) -> impl DoubleEndedIterator<Item = u8> {
    (lo..=hi).map(|x| x as u8)
}

fn classical_block(ty: CartanType, n: usize, k: usize) -> Vec<u8> {
    match ty {
        CartanType::A => range_up(n + 1 - k, n).collect(),
        CartanType::B | CartanType::C => {
            let mut w: Vec<u8> = range_up(n + 1 - k, n).collect();
            w.extend(range_up(n + 1 - k, n - 1).rev());
            w
        }
        CartanType::D => match k {
            1 => vec![n as u8],
            2 => vec![(n - 1) as u8],
            _ => {
                let mut w: Vec<u8> = range_up(n + 1 - k, n - 2).collect();
                w.push(n as u8);
                w.push((n - 1) as u8);
                w.extend(range_up(n + 1 - k, n - 2).rev());
                w
            }
        },
        _ => unreachable!("classical_block called on exceptional type"),
    }
}

const E6_LAST: [u8; 16] = [6, 5, 3, 4, 2, 1, 3, 2, 5, 3, 4, 6, 5, 3, 2, 1];
const E7_LAST: [u8; 27] = [
    7, 6, 5, 3, 4, 2, 1, 3, 2, 5, 3, 4, 6, 5, 3, 2, 1, 7, 6, 5, 3, 4, 2, 3, 5, 6, 7,
];
const E8_LAST: [u8; 57] = [
    8, 7, 6, 5, 3, 4, 2, 1, 3, 2, 5, 3, 4, 6, 5, 3, 2, 1, 7, 6, 5, 3, 4, 2, 3, 5, 6, 7, 8, 7, 6,
    5, 3, 4, 2, 1, 3, 2, 5, 3, 4, 6, 5, 3, 2, 1, 7, 6, 5, 3, 4, 2, 3, 5, 6, 7, 8,
];
const F4_LAST: [u8; 15] = [4, 3, 2, 1, 3, 2, 3, 4, 3, 2, 1, 3, 2, 3, 4];

/// The fixed block decomposition of a reduced word for `w_0`.
pub fn longest_word(datum: &CartanDatum) -> ReducedWord {
    let n = datum.rank();
    let ty = datum.cartan_type();
    let blocks = match ty {
        CartanType::A | CartanType::B | CartanType::C | CartanType::D => {
            (1..=n).map(|k| classical_block(ty, n, k)).collect()
        }
        CartanType::E6 | CartanType::E7 | CartanType::E8 => {
            let mut b: Vec<Vec<u8>> = (1..=5).map(|k| classical_block(CartanType::D, 5, k)).collect();
            b.push(E6_LAST.to_vec());
            if n >= 7 {
                b.push(E7_LAST.to_vec());
            }
            if n >= 8 {
                b.push(E8_LAST.to_vec());
            }
            b
        }
        CartanType::F4 => {
            let mut b: Vec<Vec<u8>> = (1..=3).map(|k| classical_block(CartanType::B, 3, k)).collect();
            b.push(F4_LAST.to_vec());
            b
        }
        CartanType::G2 => vec![vec![1], vec![2, 1, 2, 1, 2]],
    };
    ReducedWord { blocks }
}

/// True iff `word` is a reduced expression whose length equals the number of
/// positive roots, i.e. a reduced expression of `w_0`.
///
/// For `w = r_{i_1} ⋯ r_{i_ℓ}` the word is reduced iff every root
/// `r_{i_1} ⋯ r_{i_{k-1}}(α_{i_k})` is positive.
pub fn verify_reduced_longest(datum: &CartanDatum, word: &[u8]) -> bool {
    let n = datum.rank();
    if word.iter().any(|&i| i == 0 || usize::from(i) > n) {
        return false;
    }
    let mut produced = BTreeSet::new();
    for k in 0..word.len() {
        let mut root = vec![0i32; n];
        root[usize::from(word[k]) - 1] = 1;
        for &i in word[..k].iter().rev() {
            root = datum.reflect_root(usize::from(i), &root);
        }
        if root.iter().any(|&c| c < 0) || !produced.insert(root) {
            return false;
        }
    }
    word.len() == datum.positive_roots().len()
}
