//! Adapted strings, their triangle fillings, the inequality descriptions of
//! the string cones `𝒮` and `𝒮^λ`, and enumeration of `𝒮^λ`.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::cartan::{longest_word, CartanDatum, CartanType, ReducedWord};
use crate::crystal::{Alphabet, CrystalElement};
use crate::inequality::{chain, parse_system, Constraint};
use crate::{Error, Result};

/// A string `(a_1, …, a_ℓ)` together with its block split.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AdaptedString {
    pub entries: Vec<u32>,
    pub block_lengths: Vec<usize>,
}

impl AdaptedString {
    pub fn new(datum: &CartanDatum, entries: Vec<u32>) -> Result<Self> {
        let word = longest_word(datum);
        if entries.len() != word.len() {
            return Err(Error::LengthMismatch { expected: word.len(), got: entries.len() });
        }
        Ok(AdaptedString { entries, block_lengths: word.block_lengths() })
    }

    /// Block `k` (1-based).
    pub fn block(&self, k: usize) -> &[u32] {
        let off: usize = self.block_lengths[..k - 1].iter().sum();
        &self.entries[off..off + self.block_lengths[k - 1]]
    }

    pub fn blocks(&self) -> Vec<Vec<u32>> {
        (1..=self.block_lengths.len()).map(|k| self.block(k).to_vec()).collect()
    }
}

/// `ε` values read along the word: `a_j = ε_{s_j}(e_{s_{j-1}}^{a_{j-1}} ⋯ v)`.
pub fn adapted_string(alphabet: &Alphabet, v: &CrystalElement, word: &[u8]) -> Vec<u32> {
    let mut cur = v.clone();
    word.iter()
        .map(|&s| {
            let s = usize::from(s);
            let a = alphabet.epsilon(&cur, s);
            alphabet.e_pow_mut(&mut cur, s, a);
            a
        })
        .collect()
}

/// `f_{s_1}^{a_1} ⋯ f_{s_ℓ}^{a_ℓ} b_λ` (the rightmost operator acts first).
pub fn string_to_element(
    alphabet: &Alphabet,
    top: &CrystalElement,
    word: &[u8],
    string: &[u32],
) -> Result<CrystalElement> {
    if word.len() != string.len() {
        return Err(Error::LengthMismatch { expected: word.len(), got: string.len() });
    }
    let mut cur = top.clone();
    for step in (0..word.len()).rev() {
        if !alphabet.f_pow_mut(&mut cur, usize::from(word[step]), string[step]) {
            return Err(Error::NullOperator { step: step + 1, index: word[step] });
        }
    }
    Ok(cur)
}

/// Number of triangle rows `n′`.
pub fn row_count(datum: &CartanDatum) -> usize {
    match datum.cartan_type() {
        CartanType::D => datum.rank() - 1,
        _ => datum.rank(),
    }
}

/// Column range `p_i ..= p′_i` of row `i` (1-based).
pub fn row_support(datum: &CartanDatum, i: usize) -> (usize, usize) {
    let n = datum.rank();
    match datum.cartan_type() {
        CartanType::A => (n + 1 - i, n),
        CartanType::B | CartanType::C => (n + 1 - i, n - 1 + i),
        CartanType::D => (n - i, n - 1 + i),
        _ => (1, 0),
    }
}

/// Flat string position holding `t_{ij}`, if inside the support.
pub fn triangle_position(datum: &CartanDatum, word: &ReducedWord, i: usize, j: usize) -> Option<usize> {
    if i == 0 || i > row_count(datum) {
        return None;
    }
    let (p, q) = row_support(datum, i);
    if j < p || j > q {
        return None;
    }
    if datum.cartan_type() == CartanType::D {
        if i == 1 {
            return Some(j - p);
        }
        return Some(word.block_offset(i + 1) + (j - p));
    }
    Some(word.block_offset(i) + (j - p))
}

/// The filling `t_{ij}` of a string, rows stored bottom (`i = 1`) first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangle {
    pub rows: Vec<Vec<u32>>,
    pub starts: Vec<usize>,
}

impl Triangle {
    /// `t_{ij}`, zero outside the support.
    pub fn get(&self, i: usize, j: usize) -> u32 {
        if i == 0 || i > self.rows.len() || j < self.starts[i - 1] {
            return 0;
        }
        self.rows[i - 1].get(j - self.starts[i - 1]).copied().unwrap_or(0)
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }
}

pub fn triangle(datum: &CartanDatum, string: &[u32]) -> Result<Triangle> {
    if !datum.is_classical() {
        return Err(Error::NotClassical(datum.label()));
    }
    let word = longest_word(datum);
    if string.len() != word.len() {
        return Err(Error::LengthMismatch { expected: word.len(), got: string.len() });
    }
    let mut rows = Vec::new();
    let mut starts = Vec::new();
    for i in 1..=row_count(datum) {
        let (p, q) = row_support(datum, i);
        starts.push(p);
        rows.push(
            (p..=q)
                .map(|j| string[triangle_position(datum, &word, i, j).expect("in support")])
                .collect(),
        );
    }
    Ok(Triangle { rows, starts })
}

/// Which partial sum to take.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartialSum {
    C,
    CTilde,
}

/// Triangle cells `(row, column, coefficient)` summed by `c(t_{ij})` or
/// `c̃(t_{ij})`. Cells outside the support contribute zero when evaluated.
pub fn partial_sum_cells(datum: &CartanDatum, i: usize, j: i64, variant: PartialSum) -> Vec<(usize, i64, i64)> {
    let n = datum.rank() as i64;
    let top = row_count(datum);
    let mut out = Vec::new();
    let ty = datum.cartan_type();
    let rows = |from: usize| from..=top;
    if variant == PartialSum::CTilde {
        if ty == CartanType::D && (j == n - 1 || j == n) {
            for k in rows(i) {
                out.push((k, j, 1));
            }
        }
        return out;
    }
    match ty {
        CartanType::A => {
            for k in rows(i) {
                out.push((k, j, 1));
            }
        }
        CartanType::B | CartanType::C => {
            if j == n {
                let c = if ty == CartanType::C { 2 } else { 1 };
                for k in rows(i) {
                    out.push((k, n, c));
                }
            } else if j < n {
                for k in rows(i) {
                    out.push((k, j, 1));
                    out.push((k, 2 * n - j, 1));
                }
            } else {
                out.push((i, j, 1));
                for k in rows(i + 1) {
                    out.push((k, 2 * n - j, 1));
                    out.push((k, j, 1));
                }
            }
        }
        CartanType::D => {
            if j < n - 1 {
                for k in rows(i) {
                    out.push((k, j, 1));
                    out.push((k, 2 * n - 1 - j, 1));
                }
            } else if j <= n {
                for k in rows(i) {
                    out.push((k, n - 1, 1));
                    out.push((k, n, 1));
                }
            } else {
                out.push((i, j, 1));
                for k in rows(i + 1) {
                    out.push((k, 2 * n - 1 - j, 1));
                    out.push((k, j, 1));
                }
            }
        }
        _ => {}
    }
    out
}

/// `c(t_{ij})` or `c̃(t_{ij})` evaluated on a triangle.
pub fn c_partial(datum: &CartanDatum, tri: &Triangle, i: usize, j: i64, variant: PartialSum) -> i64 {
    partial_sum_cells(datum, i, j, variant)
        .into_iter()
        .filter(|&(_, col, _)| col >= 1)
        .map(|(row, col, c)| c * i64::from(tri.get(row, col as usize)))
        .sum()
}

/// Linear forms over flat string positions.
struct FormBuilder<'a> {
    datum: &'a CartanDatum,
    word: ReducedWord,
}

impl FormBuilder<'_> {
    fn cell(&self, i: usize, j: i64) -> Option<usize> {
        if j < 1 {
            return None;
        }
        triangle_position(self.datum, &self.word, i, j as usize)
    }

    fn partial(&self, i: usize, j: i64, variant: PartialSum, scale: i64, out: &mut Vec<(usize, i64)>) {
        for (row, col, c) in partial_sum_cells(self.datum, i, j, variant) {
            if let Some(p) = self.cell(row, col) {
                out.push((p, scale * c));
            }
        }
    }

    /// `t_{ij} ≤ λ + Σ scale·c(·)` as a constraint.
    fn bound(&self, i: usize, j: i64, lambda: i64, parts: &[(usize, i64, PartialSum, i64)]) -> Option<Constraint> {
        let target = self.cell(i, j)?;
        let mut rhs = Vec::new();
        for &(r, col, v, s) in parts {
            self.partial(r, col, v, s, &mut rhs);
        }
        Some(Constraint::geq(&rhs, &[(target, 1)], lambda))
    }
}

fn classical_cone(ty: CartanType, n: usize, word: &ReducedWord, offset: usize) -> Vec<Constraint> {
    let mut out = Vec::new();
    for k in 1..=n {
        let off = offset + word.block_offset(k);
        let len = word.block(k).len();
        match ty {
            CartanType::A | CartanType::C => {
                let terms: Vec<_> = (0..len).map(|p| (off + p, 1)).collect();
                out.extend(chain(&terms));
            }
            CartanType::B => {
                let terms: Vec<_> =
                    (0..len).map(|p| (off + p, if p + 1 == k { 1 } else { 2 })).collect();
                out.extend(chain(&terms));
            }
            CartanType::D => {
                if k < 3 {
                    continue;
                }
                // a_1 ≥ ⋯ ≥ a_{k-2} ≥ {a_{k-1}, a_k} ≥ a_{k+1} ≥ ⋯ ≥ a_{2k-2}
                let pos = |q: usize| (off + q - 1, 1i64);
                for q in 1..k - 2 {
                    out.extend(chain(&[pos(q), pos(q + 1)]));
                }
                for mid in [k - 1, k] {
                    if k >= 3 && k - 2 >= 1 {
                        out.extend(chain(&[pos(k - 2), pos(mid)]));
                    }
                    if k < 2 * k - 2 {
                        out.extend(chain(&[pos(mid), pos(k + 1)]));
                    }
                }
                for q in k + 1..2 * k - 2 {
                    out.extend(chain(&[pos(q), pos(q + 1)]));
                }
            }
            _ => unreachable!(),
        }
    }
    out
}

const E6_BLOCK: &str = "1>=2>=3>=4,5>=7>=8,9>=10>=11,13>=14>=15>=16; 5>=6>=8; 9>=12>=13";
const E7_BLOCK: &str = "1>=2>=3>=4>=5,6>=8>=9,10>=11>=12,14>=15>=16,20>=21>=22,23>=24>=25>=26>=27; \
     6>=7>=8; 10>=13>=14,18>=19>=20; 16>=17>=23";
const E8_BLOCK: &str = "1>=2; 29>=30; 56>=57; \
     19>=30; 19>=29-28; 23>=35; 25+33-34>=35; \
     20>=31; 20>=28+30-27; 25>=37; 26+32-33>=37; \
     21>=32; 21>=27+31-26; 26>=39; 27+31-32>=39; \
     22>=33; 22>=26+32-25; 27>=42; 28+30-31>=42; \
     24>=34; 24>=25+33-23; 28>=47; 29-30>=47";
const F4_BLOCK: &str = "1>=2>=3>=4,5>=6>=7; 9>=10>=11,12>=13>=14>=15; 5>=9; 7>=12; \
     5+7>=8>=9+12; 2*6>=7+9>=2*10";
const G2_BLOCK: &str = "6*1>=2*2>=3*3>=2*4>=6*5";

fn block_system(src: &str, offset: usize) -> Vec<Constraint> {
    parse_system(src)
        .expect("built-in inequality systems parse")
        .into_iter()
        .map(|c| c.shifted(offset))
        .collect()
}

/// The inequalities cutting out `𝒮` (all finite types), as constraints over
/// flat string positions.
pub fn cone_constraints(datum: &CartanDatum) -> Vec<Constraint> {
    let word = longest_word(datum);
    let n = datum.rank();
    let ty = datum.cartan_type();
    match ty {
        CartanType::A | CartanType::B | CartanType::C | CartanType::D => {
            classical_cone(ty, n, &word, 0)
        }
        CartanType::E6 | CartanType::E7 | CartanType::E8 => {
            let d5 = ReducedWord::from_blocks(word.blocks()[..5].to_vec());
            let mut out = classical_cone(CartanType::D, 5, &d5, 0);
            out.extend(block_system(E6_BLOCK, word.block_offset(6)));
            if n >= 7 {
                out.extend(block_system(E7_BLOCK, word.block_offset(7)));
            }
            if n >= 8 {
                let off = word.block_offset(8);
                out.extend(block_system(E7_BLOCK, off + 1));
                out.extend(block_system(E7_BLOCK, off + 29));
                out.extend(block_system(E8_BLOCK, off));
            }
            out
        }
        CartanType::F4 => {
            let b3 = ReducedWord::from_blocks(word.blocks()[..3].to_vec());
            let mut out = classical_cone(CartanType::B, 3, &b3, 0);
            out.extend(block_system(F4_BLOCK, word.block_offset(4)));
            out
        }
        CartanType::G2 => block_system(G2_BLOCK, word.block_offset(2)),
    }
}

/// The additional inequalities cutting `𝒮^λ` out of `𝒮`.
pub fn lambda_constraints(datum: &CartanDatum, lambda: &[i64]) -> Result<Vec<Constraint>> {
    if !datum.is_classical() {
        return Err(Error::NotClassical(datum.label()));
    }
    let n = datum.rank();
    if lambda.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: lambda.len() });
    }
    let b = FormBuilder { datum, word: longest_word(datum) };
    let lam = |j: i64| lambda[(j - 1) as usize];
    let ni = n as i64;
    use PartialSum::{CTilde, C};
    let mut out = Vec::new();
    let mut push = |c: Option<Constraint>| out.extend(c);
    match datum.cartan_type() {
        CartanType::A => {
            for i in 1..=n {
                for j in (ni + 1 - i as i64)..=ni {
                    push(b.bound(i, j, lam(j), &[(i + 1, j - 1, C, 1), (i + 1, j, C, -2), (i, j + 1, C, 1)]));
                }
            }
        }
        CartanType::B | CartanType::C => {
            let is_b = datum.cartan_type() == CartanType::B;
            for i in 1..=n {
                for j in (ni + 1 - i as i64)..ni {
                    push(b.bound(
                        i,
                        j,
                        lam(j),
                        &[(i, j + 1, C, 1), (i, 2 * ni - j, C, -2), (i, 2 * ni + 1 - j, C, 1)],
                    ));
                    push(b.bound(
                        i,
                        2 * ni - j,
                        lam(j),
                        &[(i + 1, j + 1, C, 1), (i + 1, j, C, -2), (i, 2 * ni + 1 - j, C, 1)],
                    ));
                }
                let s = if is_b { 2 } else { 1 };
                push(b.bound(i, ni, lam(ni), &[(i, ni + 1, C, s), (i + 1, ni, C, -s)]));
            }
        }
        CartanType::D => {
            for i in 1..n {
                for j in (ni - i as i64)..(ni - 1) {
                    push(b.bound(
                        i,
                        j,
                        lam(j),
                        &[(i, j + 1, C, 1), (i, 2 * ni - 1 - j, C, -2), (i, 2 * ni - j, C, 1)],
                    ));
                    push(b.bound(
                        i,
                        2 * ni - 1 - j,
                        lam(j),
                        &[(i + 1, j + 1, C, 1), (i + 1, j, C, -2), (i, 2 * ni - j, C, 1)],
                    ));
                }
                push(b.bound(i, ni - 1, lam(ni), &[(i, ni + 1, C, 1), (i + 1, ni - 1, CTilde, -2)]));
                push(b.bound(i, ni, lam(ni - 1), &[(i, ni + 1, C, 1), (i + 1, ni, CTilde, -2)]));
            }
        }
        _ => unreachable!(),
    }
    Ok(out)
}

pub fn in_s(datum: &CartanDatum, string: &[u32]) -> Result<bool> {
    let len = longest_word(datum).len();
    if string.len() != len {
        return Err(Error::LengthMismatch { expected: len, got: string.len() });
    }
    Ok(cone_constraints(datum).iter().all(|c| c.holds(string)))
}

/// Membership in `𝒮^λ`: the string must lie in `𝒮` and satisfy the
/// `λ`-dependent bounds.
pub fn in_s_lambda(datum: &CartanDatum, lambda: &[i64], string: &[u32]) -> Result<bool> {
    let cs = lambda_constraints(datum, lambda)?;
    Ok(in_s(datum, string)? && cs.iter().all(|c| c.holds(string)))
}

/// For each index `i`, the largest `⟨h_i, μ⟩` over the Weyl orbit of `λ`;
/// an upper bound for every `ε_i` on `B(λ)`.
pub fn epsilon_bounds(datum: &CartanDatum, lambda: &[i64]) -> Vec<u32> {
    let orbit = datum.weyl_orbit(lambda);
    (0..datum.rank())
        .map(|i| orbit.iter().map(|m| m[i]).max().unwrap_or(0).max(0) as u32)
        .collect()
}

/// All strings in `𝒮^λ`, in lexicographic order.
pub fn enumerate_s_lambda(datum: &CartanDatum, lambda: &[i64]) -> Result<Vec<Vec<u32>>> {
    if lambda.iter().any(|&x| x < 0) {
        return Err(Error::NotDominant(alloc::format!("{lambda:?}")));
    }
    let word = longest_word(datum);
    let mut constraints = cone_constraints(datum);
    constraints.extend(lambda_constraints(datum, lambda)?);
    let eb = epsilon_bounds(datum, lambda);
    let ub: Vec<u32> = word.flat().iter().map(|&s| eb[usize::from(s) - 1]).collect();
    // rows from the top down: blocks in reverse order
    let mut order = Vec::new();
    for k in (1..=word.blocks().len()).rev() {
        let off = word.block_offset(k);
        order.extend(off..off + word.block(k).len());
    }
    let len = word.len();
    let mut by_var = vec![Vec::new(); len];
    for (ci, c) in constraints.iter().enumerate() {
        for &k in c.coeffs.keys() {
            by_var[k].push(ci);
        }
    }
    let mut search = Search {
        constraints: &constraints,
        by_var: &by_var,
        order: &order,
        ub: &ub,
        assigned: vec![false; len],
        values: vec![0; len],
        out: BTreeSet::new(),
    };
    search.run(0);
    Ok(search.out.into_iter().collect())
}

struct Search<'a> {
    constraints: &'a [Constraint],
    by_var: &'a [Vec<usize>],
    order: &'a [usize],
    ub: &'a [u32],
    assigned: Vec<bool>,
    values: Vec<u32>,
    out: BTreeSet<Vec<u32>>,
}

impl Search<'_> {
    fn optimistic_ok(&self, ci: usize) -> bool {
        let c = &self.constraints[ci];
        let mut v = c.constant;
        for (&k, &coef) in &c.coeffs {
            if self.assigned[k] {
                v += coef * i64::from(self.values[k]);
            } else if coef > 0 {
                v += coef * i64::from(self.ub[k]);
            }
        }
        v >= 0
    }

    fn run(&mut self, step: usize) {
        if step == self.order.len() {
            self.out.insert(self.values.clone());
            return;
        }
        let var = self.order[step];
        self.assigned[var] = true;
        for v in 0..=self.ub[var] {
            self.values[var] = v;
            if self.by_var[var].iter().all(|&ci| self.optimistic_ok(ci)) {
                self.run(step + 1);
            }
        }
        self.values[var] = 0;
        self.assigned[var] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(ty: CartanType, n: usize) -> CartanDatum {
        CartanDatum::new(ty, n).unwrap()
    }

    #[test]
    fn cone_spot_checks() {
        assert!(in_s(&d(CartanType::B, 3), &[2, 3, 1, 0, 9, 8, 4, 2, 1]).unwrap());
        assert!(in_s(&d(CartanType::D, 4), &[5, 2, 7, 4, 3, 1, 9, 6, 4, 5, 3, 2]).unwrap());
        assert!(!in_s(&d(CartanType::B, 2), &[0, 0, 2, 0]).unwrap());
        assert!(in_s(&d(CartanType::E8, 8), &[0; 120]).unwrap());
        assert!(in_s(&d(CartanType::B, 2), &[0; 3]).is_err());
    }

    #[test]
    fn triangle_cells() {
        let b3 = d(CartanType::B, 3);
        let t = triangle(&b3, &[2, 3, 1, 0, 9, 8, 4, 2, 1]).unwrap();
        assert_eq!(t.get(1, 3), 2);
        assert_eq!(t.rows, vec![vec![2], vec![3, 1, 0], vec![9, 8, 4, 2, 1]]);
        let d4 = d(CartanType::D, 4);
        let t = triangle(&d4, &[5, 2, 7, 4, 3, 1, 9, 6, 4, 5, 3, 2]).unwrap();
        assert_eq!(t.get(3, 4), 5);
        assert_eq!(t.get(1, 3), 5);
        assert_eq!(t.get(1, 4), 2);
    }

    #[test]
    fn partial_sums() {
        let b3 = d(CartanType::B, 3);
        let t = triangle(&b3, &[2, 3, 1, 0, 9, 8, 4, 2, 1]).unwrap();
        assert_eq!(c_partial(&b3, &t, 1, 3, PartialSum::C), 7);
        assert_eq!(c_partial(&b3, &t, 3, 1, PartialSum::C), 10);
        assert_eq!(c_partial(&b3, &t, 4, 1, PartialSum::C), 0);
    }

    #[test]
    fn lambda_spot_checks() {
        let a1 = d(CartanType::A, 1);
        assert!(!in_s_lambda(&a1, &[2], &[3]).unwrap());
        assert_eq!(enumerate_s_lambda(&a1, &[2]).unwrap(), vec![vec![0], vec![1], vec![2]]);
        let b3 = d(CartanType::B, 3);
        assert!(in_s_lambda(&b3, &[1, 1, 3], &[3, 3, 3, 0, 4, 3, 5, 2, 1]).unwrap());
        assert!(in_s_lambda(&b3, &[0, 0, 0], &[0; 9]).unwrap());
        assert_eq!(enumerate_s_lambda(&d(CartanType::B, 2), &[1, 0]).unwrap().len(), 5);
        assert_eq!(enumerate_s_lambda(&b3, &[0, 0, 0]).unwrap(), vec![vec![0; 9]]);
        assert!(lambda_constraints(&d(CartanType::G2, 2), &[1, 0]).is_err());
    }
}
