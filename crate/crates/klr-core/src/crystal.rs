//! Tensor products of fundamental crystals and highest weight crystals
//! `B(λ)` generated by breadth-first search.
//!
//! Signature convention: a factor `b` contributes `−^{ε_i(b)} +^{φ_i(b)}`,
//! adjacent `+ −` pairs cancel, `f_i` acts on the factor owning the leftmost
//! surviving `+` and `e_i` on the factor owning the rightmost surviving `−`.
//! With this convention `b_1 ⊗ b_2` is highest iff `b_1` is highest and
//! `ε_i(b_2) ≤ φ_i(b_1)`.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::cartan::{CartanDatum, CartanType};
use crate::letter::{self, Letter, SpinLetter};
use crate::{Error, Result};

/// Default cap on the number of elements of a generated crystal.
pub const DEFAULT_CAP: usize = 1_000_000;

/// A tensor factor: a letter of a vector crystal or a spin element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Factor {
    Letter(Letter),
    Spin(SpinLetter),
}

/// All tensor factors available for a classical datum, with precomputed
/// operator tables.
#[derive(Debug, Clone)]
pub struct Alphabet {
    datum: CartanDatum,
    factors: Vec<Factor>,
    lookup: BTreeMap<Factor, u16>,
    f: Vec<Vec<Option<u16>>>,
    e: Vec<Vec<Option<u16>>>,
    eps: Vec<Vec<u8>>,
    phi: Vec<Vec<u8>>,
    wt: Vec<Vec<i64>>,
}

impl Alphabet {
    pub fn new(datum: &CartanDatum) -> Result<Self> {
        if !datum.is_classical() {
            return Err(Error::NotClassical(datum.label()));
        }
        let n = datum.rank();
        let mut factors: Vec<Factor> = Vec::new();
        if datum.cartan_type() == CartanType::A {
            factors.extend((1..=n + 1).map(|k| Factor::Letter(Letter::plain(k))));
        }
        factors.extend(letter::vector_letters(datum)?.into_iter().map(Factor::Letter));
        if matches!(datum.cartan_type(), CartanType::B | CartanType::D) {
            factors.extend((0..1u32 << n).map(|m| Factor::Spin(SpinLetter(m as u16))));
        }
        factors.sort();
        let lookup: BTreeMap<Factor, u16> =
            factors.iter().enumerate().map(|(k, &x)| (x, k as u16)).collect();
        let apply = |x: Factor, i: usize, lower: bool| -> Option<Factor> {
            match x {
                Factor::Letter(l) => {
                    if lower {
                        letter::letter_f(datum, l, i).map(Factor::Letter)
                    } else {
                        letter::letter_e(datum, l, i).map(Factor::Letter)
                    }
                }
                Factor::Spin(s) => {
                    if lower {
                        letter::spin_f(datum, s, i).map(Factor::Spin)
                    } else {
                        letter::spin_e(datum, s, i).map(Factor::Spin)
                    }
                }
            }
        };
        let mut f = vec![vec![None; n]; factors.len()];
        let mut e = vec![vec![None; n]; factors.len()];
        for (k, &x) in factors.iter().enumerate() {
            for i in 1..=n {
                f[k][i - 1] = apply(x, i, true).map(|y| lookup[&y]);
                e[k][i - 1] = apply(x, i, false).map(|y| lookup[&y]);
            }
        }
        let walk = |table: &Vec<Vec<Option<u16>>>, k: usize, i: usize| -> u8 {
            let mut c = 0;
            let mut cur = k;
            while let Some(nx) = table[cur][i] {
                c += 1;
                cur = usize::from(nx);
            }
            c
        };
        let mut eps = vec![vec![0u8; n]; factors.len()];
        let mut phi = vec![vec![0u8; n]; factors.len()];
        let mut wt = vec![vec![0i64; n]; factors.len()];
        for k in 0..factors.len() {
            for i in 0..n {
                eps[k][i] = walk(&e, k, i);
                phi[k][i] = walk(&f, k, i);
                wt[k][i] = i64::from(phi[k][i]) - i64::from(eps[k][i]);
            }
        }
        Ok(Alphabet { datum: datum.clone(), factors, lookup, f, e, eps, phi, wt })
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn factor(&self, k: u16) -> Factor {
        self.factors[usize::from(k)]
    }

    pub fn index(&self, x: Factor) -> Option<u16> {
        self.lookup.get(&x).copied()
    }

    fn letter_index(&self, l: Letter) -> u16 {
        self.lookup[&Factor::Letter(l)]
    }

    /// Signature scan for index `i` (1-based). Returns `(ε, φ, position of
    /// the rightmost surviving −, position of the leftmost surviving +)`.
    fn scan(&self, word: &[u16], i: usize) -> (u32, u32, Option<usize>, Option<usize>) {
        let i = i - 1;
        // unmatched pluses as (position, count), bottom = leftmost
        let mut plus: Vec<(usize, u32)> = Vec::new();
        let mut minus_count = 0u32;
        let mut rightmost_minus = None;
        for (pos, &k) in word.iter().enumerate() {
            let k = usize::from(k);
            let mut m = u32::from(self.eps[k][i]);
            while m > 0 {
                match plus.last_mut() {
                    Some(top) => {
                        let take = top.1.min(m);
                        top.1 -= take;
                        m -= take;
                        if top.1 == 0 {
                            plus.pop();
                        }
                    }
                    None => {
                        minus_count += m;
                        rightmost_minus = Some(pos);
                        m = 0;
                    }
                }
            }
            let p = u32::from(self.phi[k][i]);
            if p > 0 {
                plus.push((pos, p));
            }
        }
        let plus_count = plus.iter().map(|x| x.1).sum();
        let leftmost_plus = plus.first().map(|x| x.0);
        (minus_count, plus_count, rightmost_minus, leftmost_plus)
    }

    pub fn epsilon(&self, b: &CrystalElement, i: usize) -> u32 {
        self.scan(&b.word, i).0
    }

    pub fn phi(&self, b: &CrystalElement, i: usize) -> u32 {
        self.scan(&b.word, i).1
    }

    pub fn weight(&self, b: &CrystalElement) -> Vec<i64> {
        let n = self.datum.rank();
        let mut w = vec![0i64; n];
        for &k in &b.word {
            for (x, y) in w.iter_mut().zip(&self.wt[usize::from(k)]) {
                *x += y;
            }
        }
        w
    }

    /// `(ε_i)_i`, `(φ_i)_i` and the weight of an element.
    pub fn stats(&self, b: &CrystalElement) -> (Vec<u32>, Vec<u32>, Vec<i64>) {
        let n = self.datum.rank();
        let (eps, phi) = (1..=n)
            .map(|i| {
                let s = self.scan(&b.word, i);
                (s.0, s.1)
            })
            .unzip();
        (eps, phi, self.weight(b))
    }

    pub fn f(&self, b: &CrystalElement, i: usize) -> Option<CrystalElement> {
        let (_, _, _, pos) = self.scan(&b.word, i);
        let pos = pos?;
        let mut word = b.word.clone();
        word[pos] = self.f[usize::from(word[pos])][i - 1]?;
        Some(CrystalElement { word })
    }

    pub fn e(&self, b: &CrystalElement, i: usize) -> Option<CrystalElement> {
        let (_, _, pos, _) = self.scan(&b.word, i);
        let pos = pos?;
        let mut word = b.word.clone();
        word[pos] = self.e[usize::from(word[pos])][i - 1]?;
        Some(CrystalElement { word })
    }

    /// In-place `f_i^k`; returns false if the operator vanished.
    pub fn f_pow_mut(&self, b: &mut CrystalElement, i: usize, k: u32) -> bool {
        for _ in 0..k {
            match self.scan(&b.word, i).3 {
                Some(pos) => match self.f[usize::from(b.word[pos])][i - 1] {
                    Some(x) => b.word[pos] = x,
                    None => return false,
                },
                None => return false,
            }
        }
        true
    }

    /// In-place `e_i^k`; returns false if the operator vanished.
    pub fn e_pow_mut(&self, b: &mut CrystalElement, i: usize, k: u32) -> bool {
        for _ in 0..k {
            match self.scan(&b.word, i).2 {
                Some(pos) => match self.e[usize::from(b.word[pos])][i - 1] {
                    Some(x) => b.word[pos] = x,
                    None => return false,
                },
                None => return false,
            }
        }
        true
    }

    /// Applies `e_i` or `f_i` according to `raise`.
    pub fn tensor_apply(&self, raise: bool, i: usize, b: &CrystalElement) -> Result<Option<CrystalElement>> {
        if i == 0 || i > self.datum.rank() {
            return Err(Error::IndexOutOfRange(i));
        }
        Ok(if raise { self.e(b, i) } else { self.f(b, i) })
    }

    /// Builds an element from explicit factors.
    pub fn element(&self, factors: &[Factor]) -> Option<CrystalElement> {
        let word = factors.iter().map(|x| self.index(*x)).collect::<Option<Vec<u16>>>()?;
        Some(CrystalElement { word })
    }

    pub fn factors_of(&self, b: &CrystalElement) -> Vec<Factor> {
        b.word.iter().map(|&k| self.factor(k)).collect()
    }

    /// The highest weight element `b_λ`: spin highest elements first, then
    /// `λ_k` columns `1 ⊗ 2 ⊗ ⋯ ⊗ k` for each non-spin node `k`. The
    /// result is checked to be highest of weight `λ`.
    pub fn highest(&self, lambda: &[i64]) -> Result<CrystalElement> {
        let n = self.datum.rank();
        if lambda.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: lambda.len() });
        }
        if lambda.iter().any(|&x| x < 0) {
            return Err(Error::NotDominant(format!("{lambda:?}")));
        }
        let ty = self.datum.cartan_type();
        let mut word = Vec::new();
        let spin_nodes: &[usize] = match ty {
            CartanType::B => &[n],
            CartanType::D => &[n - 1, n],
            _ => &[],
        };
        for &node in spin_nodes {
            let top = if node == n { SpinLetter(0) } else { SpinLetter(1 << (n - 1)) };
            for _ in 0..lambda[node - 1] {
                word.push(self.lookup[&Factor::Spin(top)]);
            }
        }
        for k in 1..=n {
            if spin_nodes.contains(&k) {
                continue;
            }
            for _ in 0..lambda[k - 1] {
                for r in 1..=k {
                    word.push(self.letter_index(Letter::plain(r)));
                }
            }
        }
        let b = CrystalElement { word };
        let (eps, _, wt) = self.stats(&b);
        if eps.iter().any(|&x| x != 0) {
            return Err(Error::HighestWeightCheck(format!("epsilon = {eps:?}")));
        }
        if wt != lambda {
            return Err(Error::HighestWeightCheck(format!("weight {wt:?} != {lambda:?}")));
        }
        Ok(b)
    }

    /// Raises with `e_i`, `i ∈ subset`, until every `ε_i` on the subset
    /// vanishes.
    pub fn component_highest(&self, b: &CrystalElement, subset: &[usize]) -> CrystalElement {
        let mut cur = b.clone();
        loop {
            let mut moved = false;
            for &i in subset {
                let k = self.epsilon(&cur, i);
                if k > 0 {
                    self.e_pow_mut(&mut cur, i, k);
                    moved = true;
                }
            }
            if !moved {
                return cur;
            }
        }
    }

    /// Human-readable tensor word.
    pub fn render(&self, b: &CrystalElement) -> String {
        let n = self.datum.rank();
        let mut s = String::new();
        for (k, x) in self.factors_of(b).iter().enumerate() {
            if k > 0 {
                s.push_str(" ⊗ ");
            }
            match x {
                Factor::Letter(l) => {
                    let _ = write!(s, "{l}");
                }
                Factor::Spin(sp) => {
                    s.push('(');
                    for sign in sp.signs(n) {
                        s.push(if sign > 0 { '+' } else { '−' });
                    }
                    s.push(')');
                }
            }
        }
        s
    }
}

/// A crystal element: a tensor word over an [`Alphabet`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CrystalElement {
    pub word: Vec<u16>,
}

/// A connected crystal generated from a single element by lowering
/// operators. Elements are sorted lexicographically by tensor word.
#[derive(Debug, Clone)]
pub struct Crystal {
    alphabet: Arc<Alphabet>,
    lambda: Vec<i64>,
    elements: Vec<CrystalElement>,
    index: BTreeMap<CrystalElement, u32>,
    arrows: Vec<Vec<Option<u32>>>,
    top: u32,
}

impl Crystal {
    /// `B(λ)` for a classical datum.
    pub fn generate(datum: &CartanDatum, lambda: &[i64], cap: usize) -> Result<Crystal> {
        let alphabet = Arc::new(Alphabet::new(datum)?);
        let top = alphabet.highest(lambda)?;
        Crystal::generate_from(alphabet, top, cap)
    }

    /// Closure of `start` under all `f_i`.
    pub fn generate_from(alphabet: Arc<Alphabet>, start: CrystalElement, cap: usize) -> Result<Crystal> {
        let n = alphabet.datum().rank();
        let mut seen: BTreeMap<CrystalElement, u32> = BTreeMap::new();
        let mut order = Vec::new();
        let mut queue = VecDeque::new();
        seen.insert(start.clone(), 0);
        order.push(start.clone());
        queue.push_back(start.clone());
        while let Some(b) = queue.pop_front() {
            for i in 1..=n {
                if let Some(c) = alphabet.f(&b, i) {
                    if !seen.contains_key(&c) {
                        if order.len() >= cap {
                            return Err(Error::CapExceeded(cap));
                        }
                        seen.insert(c.clone(), order.len() as u32);
                        order.push(c.clone());
                        queue.push_back(c);
                    }
                }
            }
        }
        // canonical lexicographic ordering
        let elements: Vec<CrystalElement> = seen.keys().cloned().collect();
        let index: BTreeMap<CrystalElement, u32> =
            elements.iter().enumerate().map(|(k, b)| (b.clone(), k as u32)).collect();
        let arrows = elements
            .iter()
            .map(|b| (1..=n).map(|i| alphabet.f(b, i).map(|c| index[&c])).collect())
            .collect();
        let top = index[&start];
        let lambda = alphabet.weight(&start);
        Ok(Crystal { alphabet, lambda, elements, index, arrows, top })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn datum(&self) -> &CartanDatum {
        self.alphabet.datum()
    }

    /// Weight of the generating element.
    pub fn lambda(&self) -> &[i64] {
        &self.lambda
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[CrystalElement] {
        &self.elements
    }

    pub fn highest(&self) -> &CrystalElement {
        &self.elements[self.top as usize]
    }

    pub fn index_of(&self, b: &CrystalElement) -> Option<usize> {
        self.index.get(b).map(|&k| k as usize)
    }

    /// `f_i` arrow from element `k`, as an element index.
    pub fn arrow(&self, k: usize, i: usize) -> Option<usize> {
        self.arrows[k][i - 1].map(|x| x as usize)
    }

    /// Elements with every `ε_i = 0`.
    pub fn highest_weight_elements(&self) -> Vec<usize> {
        let n = self.datum().rank();
        (0..self.len())
            .filter(|&k| (1..=n).all(|i| self.alphabet.epsilon(&self.elements[k], i) == 0))
            .collect()
    }
}

/// The crystal `𝓑` as a graph over single letters.
pub fn vector_crystal(datum: &CartanDatum) -> Result<Crystal> {
    let alphabet = Arc::new(Alphabet::new(datum)?);
    let top = letter::vector_letters(datum)?[0];
    let start = alphabet.element(&[Factor::Letter(top)]).expect("letter in alphabet");
    Crystal::generate_from(alphabet, start, DEFAULT_CAP)
}

/// A spin crystal. For type D, `odd` selects the component with an odd
/// number of minus signs (highest weight `Λ_{n-1}`).
pub fn spin_crystal(datum: &CartanDatum, odd: bool) -> Result<Crystal> {
    let n = datum.rank();
    let top = match datum.cartan_type() {
        CartanType::B => SpinLetter(0),
        CartanType::D => {
            if odd {
                SpinLetter(1 << (n - 1))
            } else {
                SpinLetter(0)
            }
        }
        _ => return Err(Error::NotClassical(format!("{} has no spin crystal", datum.label()))),
    };
    let alphabet = Arc::new(Alphabet::new(datum)?);
    let start = alphabet.element(&[Factor::Spin(top)]).expect("spin in alphabet");
    Crystal::generate_from(alphabet, start, DEFAULT_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(ty: CartanType, n: usize) -> CartanDatum {
        CartanDatum::new(ty, n).unwrap()
    }

    #[test]
    fn small_crystal_sizes() {
        assert_eq!(Crystal::generate(&datum(CartanType::A, 1), &[1], DEFAULT_CAP).unwrap().len(), 2);
        assert_eq!(Crystal::generate(&datum(CartanType::A, 2), &[1, 1], DEFAULT_CAP).unwrap().len(), 8);
        assert_eq!(Crystal::generate(&datum(CartanType::B, 2), &[1, 0], DEFAULT_CAP).unwrap().len(), 5);
        assert_eq!(Crystal::generate(&datum(CartanType::D, 4), &[1, 0, 0, 0], DEFAULT_CAP).unwrap().len(), 8);
    }

    #[test]
    fn highest_element_stats() {
        let d = datum(CartanType::B, 3);
        let a = Alphabet::new(&d).unwrap();
        let b = a.highest(&[1, 1, 3]).unwrap();
        let (eps, phi, wt) = a.stats(&b);
        assert_eq!(eps, vec![0, 0, 0]);
        assert_eq!(phi, vec![1, 1, 3]);
        assert_eq!(wt, vec![1, 1, 3]);
    }

    #[test]
    fn zero_letter_stats() {
        let d = datum(CartanType::B, 3);
        let a = Alphabet::new(&d).unwrap();
        let z = a.element(&[Factor::Letter(Letter::ZERO)]).unwrap();
        let (eps, phi, wt) = a.stats(&z);
        assert_eq!(wt, vec![0, 0, 0]);
        assert_eq!((eps[2], phi[2]), (1, 1));
    }

    #[test]
    fn vector_and_spin_sizes() {
        assert_eq!(vector_crystal(&datum(CartanType::B, 3)).unwrap().len(), 7);
        assert_eq!(vector_crystal(&datum(CartanType::A, 1)).unwrap().len(), 2);
        assert_eq!(spin_crystal(&datum(CartanType::B, 2), false).unwrap().len(), 4);
        let even = spin_crystal(&datum(CartanType::D, 3), false).unwrap();
        assert_eq!(even.len(), 4);
        for b in even.elements() {
            match even.alphabet().factors_of(b)[0] {
                Factor::Spin(s) => assert_eq!(s.minus_count() % 2, 0),
                _ => panic!("expected spin factor"),
            }
        }
        assert!(spin_crystal(&datum(CartanType::C, 3), false).is_err());
    }

    #[test]
    fn tensor_squares_round_trip() {
        for (ty, n) in [(CartanType::A, 2), (CartanType::B, 2), (CartanType::C, 2), (CartanType::D, 3)] {
            let d = datum(ty, n);
            let a = Alphabet::new(&d).unwrap();
            let count = a.factors.len() as u16;
            for x in 0..count {
                for y in 0..count {
                    let b = CrystalElement { word: vec![x, y] };
                    for i in 1..=n {
                        if let Some(c) = a.f(&b, i) {
                            assert_eq!(a.e(&c, i).as_ref(), Some(&b));
                        }
                        if let Some(c) = a.e(&b, i) {
                            assert_eq!(a.f(&c, i).as_ref(), Some(&b));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn unique_highest_weight_element() {
        let d = datum(CartanType::C, 3);
        let c = Crystal::generate(&d, &[1, 0, 1], DEFAULT_CAP).unwrap();
        assert_eq!(c.highest_weight_elements(), vec![c.index_of(c.highest()).unwrap()]);
    }

    #[test]
    fn not_dominant() {
        let d = datum(CartanType::A, 2);
        assert!(matches!(Crystal::generate(&d, &[-1, 0], 10), Err(Error::NotDominant(_))));
        assert!(matches!(Crystal::generate(&d, &[3, 3], 10), Err(Error::CapExceeded(10))));
    }
}
