//! Explicit matrix models of the segment modules `Δ(a,b)` over the quiver
//! Hecke algebra, the polynomials `𝒬_ij`, and an exhaustive checker for the
//! defining relations.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::cartan::CartanDatum;
use crate::delta::{factor_kind, kashiwara_word, FactorKind};
use crate::letter::Letter;
use crate::{Error, Result};

/// `𝒬_ij(u,v) = Σ c_pq u^p v^q`.
pub type Poly2 = BTreeMap<(u32, u32), Rational64>;

/// User choices for the scalars in `𝒬`. Missing `ζ` default to 1 and
/// missing `η` to 0.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct QChoices {
    /// `ζ_ij` keyed by `(i, j)`.
    pub zeta: BTreeMap<(u8, u8), Rational64>,
    /// `η^{pq}_ij` keyed by `(i, j, p, q)`.
    pub eta: BTreeMap<(u8, u8, u32, u32), Rational64>,
}

/// The table `(𝒬_ij)_{i,j ∈ I}`.
#[derive(Debug, Clone, PartialEq)]
pub struct QTable {
    rank: usize,
    polys: Vec<Poly2>,
}

impl QTable {
    pub fn get(&self, i: u8, j: u8) -> &Poly2 {
        &self.polys[(usize::from(i) - 1) * self.rank + usize::from(j) - 1]
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

/// The pairs `(p, q)` admitted for `η^{pq}_ij`: `δ_i p + δ_j q = −(α_i|α_j)`
/// strictly between the two extreme monomials.
pub fn eta_slots(datum: &CartanDatum, i: usize, j: usize) -> Vec<(u32, u32)> {
    if i == j || datum.a(i, j) == 0 {
        return Vec::new();
    }
    let target = -datum.form(i, j);
    let (di, dj) = (datum.delta(i), datum.delta(j));
    let (pmax, qmax) = (-datum.a(i, j), -datum.a(j, i));
    let mut out = Vec::new();
    for p in 0..pmax {
        for q in 0..qmax {
            if di * p + dj * q == target {
                out.push((p as u32, q as u32));
            }
        }
    }
    out
}

/// Builds `𝒬` and validates the symmetry constraints on the choices.
pub fn build_q(datum: &CartanDatum, choices: &QChoices) -> Result<QTable> {
    let n = datum.rank();
    let zeta = |i: usize, j: usize| {
        choices
            .zeta
            .get(&(i as u8, j as u8))
            .copied()
            .unwrap_or_else(Rational64::one)
    };
    for (&(i, j), &z) in &choices.zeta {
        let (i, j) = (usize::from(i), usize::from(j));
        if i == 0 || j == 0 || i > n || j > n || i == j {
            return Err(Error::InvalidChoice(alloc::format!("ζ_{i}{j} is not a parameter")));
        }
        if z.is_zero() {
            return Err(Error::InvalidChoice(alloc::format!("ζ_{i}{j} = 0")));
        }
        if datum.a(i, j) == 0 && zeta(j, i) != z {
            return Err(Error::InvalidChoice(alloc::format!("ζ_{i}{j} ≠ ζ_{j}{i} for commuting nodes")));
        }
    }
    for (&(i, j, p, q), &c) in &choices.eta {
        let (iu, ju) = (usize::from(i), usize::from(j));
        if iu == 0 || ju == 0 || iu > n || ju > n || !eta_slots(datum, iu, ju).contains(&(p, q)) {
            return Err(Error::InvalidChoice(alloc::format!("η^({p},{q})_{i}{j} is not admissible")));
        }
        let mirror = choices.eta.get(&(j, i, q, p)).copied().unwrap_or_else(Rational64::zero);
        if mirror != c {
            return Err(Error::InvalidChoice(alloc::format!("η^({p},{q})_{i}{j} ≠ η^({q},{p})_{j}{i}")));
        }
    }
    let mut polys = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            let mut poly = Poly2::new();
            if i != j {
                if datum.a(i, j) == 0 {
                    poly.insert((0, 0), zeta(i, j));
                } else {
                    poly.insert(((-datum.a(i, j)) as u32, 0), zeta(i, j));
                    *poly.entry((0, (-datum.a(j, i)) as u32)).or_insert_with(Rational64::zero) += zeta(j, i);
                    for (p, q) in eta_slots(datum, i, j) {
                        if let Some(&c) = choices.eta.get(&(i as u8, j as u8, p, q)) {
                            *poly.entry((p, q)).or_insert_with(Rational64::zero) += c;
                        }
                    }
                }
                poly.retain(|_, c| !c.is_zero());
            }
            polys.push(poly);
        }
    }
    Ok(QTable { rank: n, polys })
}

/// Dense square matrix over the rationals.
pub type Mat = Vec<Vec<Rational64>>;

fn zeros(d: usize) -> Mat {
    vec![vec![Rational64::zero(); d]; d]
}

fn identity(d: usize) -> Mat {
    let mut m = zeros(d);
    for (k, row) in m.iter_mut().enumerate() {
        row[k] = Rational64::one();
    }
    m
}

fn mul(a: &Mat, b: &Mat) -> Mat {
    let d = a.len();
    let mut out = zeros(d);
    for r in 0..d {
        for c in 0..d {
            let mut s = Rational64::zero();
            for k in 0..d {
                s += a[r][k] * b[k][c];
            }
            out[r][c] = s;
        }
    }
    out
}

fn add(a: &Mat, b: &Mat) -> Mat {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p + q).collect()).collect()
}

fn sub(a: &Mat, b: &Mat) -> Mat {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p - q).collect()).collect()
}

fn scale(a: &Mat, s: Rational64) -> Mat {
    a.iter().map(|x| x.iter().map(|p| p * s).collect()).collect()
}

fn power(a: &Mat, k: u32) -> Mat {
    (0..k).fold(identity(a.len()), |acc, _| mul(&acc, a))
}

/// A finite-dimensional graded module given by matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixModule {
    /// Index sequence of each basis vector.
    pub words: Vec<Vec<u8>>,
    /// Degree of each basis vector.
    pub degrees: Vec<i32>,
    /// `x_1, …, x_m`.
    pub x: Vec<Mat>,
    /// `τ_1, …, τ_{m−1}`.
    pub tau: Vec<Mat>,
}

impl MatrixModule {
    pub fn dim(&self) -> usize {
        self.words.len()
    }

    /// Number of strands `m`.
    pub fn strands(&self) -> usize {
        self.x.len()
    }

    /// `e(𝐢)` as a diagonal projection.
    pub fn idempotent(&self, word: &[u8]) -> Mat {
        let mut m = zeros(self.dim());
        for (k, w) in self.words.iter().enumerate() {
            if w.as_slice() == word {
                m[k][k] = Rational64::one();
            }
        }
        m
    }

    fn distinct_words(&self) -> Vec<Vec<u8>> {
        let mut w = self.words.clone();
        w.sort();
        w.dedup();
        w
    }
}

fn blank(words: Vec<Vec<u8>>, degrees: Vec<i32>) -> MatrixModule {
    let m = words[0].len();
    let d = words.len();
    MatrixModule { words, degrees, x: vec![zeros(d); m], tau: vec![zeros(d); m.saturating_sub(1)] }
}

/// The explicit model of `Δ(a,b)`.
pub fn build_delta_module(datum: &CartanDatum, a: Letter, b: Letter, q: &QTable) -> Result<MatrixModule> {
    let n = datum.rank();
    let word = kashiwara_word(datum, a, b)?;
    match factor_kind(datum, a, b) {
        FactorKind::Line => Ok(blank(vec![word], vec![0])),
        FactorKind::ZeroCrossing => {
            let fixed: Vec<usize> = (0..word.len() - 1).filter(|&k| word[k] == word[k + 1]).collect();
            if fixed.len() != 1 {
                return Err(Error::InvalidChoice(alloc::format!("no unique fixed crossing in {word:?}")));
            }
            let d = fixed[0];
            let deg_v = -datum.form(usize::from(word[d]), usize::from(word[d + 1]));
            let mut m = blank(vec![word.clone(), word], vec![0, deg_v]);
            let one = Rational64::one();
            m.tau[d][1][0] = one;
            m.x[d][0][1] = -one;
            m.x[d + 1][0][1] = one;
            Ok(m)
        }
        FactorKind::Fork => {
            let mut wu = kashiwara_word(datum, a, Letter::plain(n))?;
            wu.extend(kashiwara_word(datum, Letter::plain(n), b)?);
            let mut wv = kashiwara_word(datum, a, Letter::bar(n))?;
            wv.extend(kashiwara_word(datum, Letter::bar(n), b)?);
            let swaps: Vec<usize> = (0..wu.len() - 1)
                .filter(|&k| {
                    let mut s = wu.clone();
                    s.swap(k, k + 1);
                    s == wv
                })
                .collect();
            if swaps.len() != 1 {
                return Err(Error::InvalidChoice(alloc::format!("no unique crossing between {wu:?} and {wv:?}")));
            }
            let d = swaps[0];
            let zeta = q.get(wu[d], wu[d + 1]).get(&(0, 0)).copied().unwrap_or_else(Rational64::zero);
            let deg_v = -datum.form(usize::from(wu[d]), usize::from(wu[d + 1]));
            let mut m = blank(vec![wu, wv], vec![0, deg_v]);
            m.tau[d][1][0] = zeta;
            m.tau[d][0][1] = Rational64::one();
            Ok(m)
        }
    }
}

/// Flips the sign of the first nonzero entry among the `x` matrices, or
/// failing that among the `τ` matrices, or else adds `1` to `x_1`.
pub fn corrupt(module: &MatrixModule) -> MatrixModule {
    let mut m = module.clone();
    let flipped = m
        .x
        .iter_mut()
        .chain(m.tau.iter_mut())
        .flat_map(|mat| mat.iter_mut().flat_map(|row| row.iter_mut()))
        .find(|e| !e.is_zero())
        .map(|e| *e = -*e)
        .is_some();
    if flipped {
        return m;
    }
    m.x[0][0][0] += Rational64::one();
    m
}

/// One evaluated relation instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationCheck {
    pub relation: &'static str,
    /// Generator positions involved (1-based).
    pub indices: Vec<usize>,
    /// Word of the idempotent the relation was multiplied by.
    pub word: Vec<u8>,
    /// First basis vector on which the two sides differ.
    pub basis_element: Option<usize>,
    pub passed: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RelationReport {
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn record(&mut self, relation: &'static str, indices: Vec<usize>, word: &[u8], lhs: &Mat, rhs: &Mat) {
        let d = lhs.len();
        let basis_element = (0..d).find(|&c| (0..d).any(|r| lhs[r][c] != rhs[r][c]));
        self.checks.push(RelationCheck {
            relation,
            indices,
            word: word.to_vec(),
            basis_element,
            passed: basis_element.is_none(),
        });
    }
}

/// Evaluates `Σ c_pq A^p B^q`.
fn eval_poly(poly: &Poly2, a: &Mat, b: &Mat) -> Mat {
    let mut out = zeros(a.len());
    for (&(p, q), &c) in poly {
        out = add(&out, &scale(&mul(&power(a, p), &power(b, q)), c));
    }
    out
}

/// `(𝒬(C, B) − 𝒬(A, B)) / (C − A)` for commuting `A, B, C`.
fn eval_divided_difference(poly: &Poly2, a: &Mat, b: &Mat, c: &Mat) -> Mat {
    let mut out = zeros(a.len());
    for (&(p, q), &coef) in poly {
        for r in 0..p {
            let term = mul(&mul(&power(c, r), &power(a, p - 1 - r)), &power(b, q));
            out = add(&out, &scale(&term, coef));
        }
    }
    out
}

/// Checks every defining relation on the module.
pub fn check_relations(module: &MatrixModule, q: &QTable) -> RelationReport {
    let mut rep = RelationReport::default();
    let d = module.dim();
    let m = module.strands();
    let words = module.distinct_words();
    let id = identity(d);
    let zero = zeros(d);

    let mut total = zeros(d);
    for w in &words {
        let e = module.idempotent(w);
        total = add(&total, &e);
        for w2 in &words {
            let lhs = mul(&e, &module.idempotent(w2));
            let rhs = if w == w2 { e.clone() } else { zero.clone() };
            rep.record("idempotent-orthogonal", vec![], w, &lhs, &rhs);
        }
    }
    rep.record("idempotent-sum", vec![], &[], &total, &id);

    for k in 0..m {
        for l in 0..m {
            let lhs = mul(&module.x[k], &module.x[l]);
            let rhs = mul(&module.x[l], &module.x[k]);
            rep.record("x-commute", vec![k + 1, l + 1], &[], &lhs, &rhs);
        }
    }
    for k in 0..m.saturating_sub(1) {
        for l in 0..m.saturating_sub(1) {
            if k.abs_diff(l) > 1 {
                let lhs = mul(&module.tau[k], &module.tau[l]);
                let rhs = mul(&module.tau[l], &module.tau[k]);
                rep.record("tau-distant-commute", vec![k + 1, l + 1], &[], &lhs, &rhs);
            }
        }
    }

    for w in &words {
        let e = module.idempotent(w);
        for l in 0..m {
            let lhs = mul(&module.x[l], &e);
            let rhs = mul(&e, &module.x[l]);
            rep.record("x-idempotent", vec![l + 1], w, &lhs, &rhs);
        }
        for k in 0..m.saturating_sub(1) {
            let mut sw = w.clone();
            sw.swap(k, k + 1);
            let tk = &module.tau[k];
            rep.record("tau-idempotent", vec![k + 1], w, &mul(tk, &e), &mul(&module.idempotent(&sw), tk));

            let quad = eval_poly(q.get(w[k], w[k + 1]), &module.x[k], &module.x[k + 1]);
            rep.record("tau-square", vec![k + 1], w, &mul(&mul(tk, tk), &e), &mul(&quad, &e));

            for l in 0..m {
                let sl = if l == k { k + 1 } else if l == k + 1 { k } else { l };
                let lhs = mul(&sub(&mul(tk, &module.x[l]), &mul(&module.x[sl], tk)), &e);
                let rhs = if w[k] == w[k + 1] && l == k {
                    scale(&e, -Rational64::one())
                } else if w[k] == w[k + 1] && l == k + 1 {
                    e.clone()
                } else {
                    zero.clone()
                };
                rep.record("dot-crossing", vec![k + 1, l + 1], w, &lhs, &rhs);
            }
        }
        for k in 0..m.saturating_sub(2) {
            let (t0, t1) = (&module.tau[k], &module.tau[k + 1]);
            let lhs = mul(&sub(&mul(&mul(t1, t0), t1), &mul(&mul(t0, t1), t0)), &e);
            let rhs = if w[k] == w[k + 2] && w[k] != w[k + 1] {
                let dd = eval_divided_difference(
                    q.get(w[k], w[k + 1]),
                    &module.x[k],
                    &module.x[k + 1],
                    &module.x[k + 2],
                );
                mul(&dd, &e)
            } else {
                zero.clone()
            };
            rep.record("braid", vec![k + 1], w, &lhs, &rhs);
        }
    }
    rep
}

/// Degree of `x_ℓ e(𝐢)` and `τ_k e(𝐢)`; checks every nonzero entry shifts
/// degrees accordingly. Returns a description of the first violation.
pub fn check_degrees(datum: &CartanDatum, module: &MatrixModule) -> core::result::Result<(), String> {
    let d = module.dim();
    for (l, xm) in module.x.iter().enumerate() {
        for c in 0..d {
            let i = usize::from(module.words[c][l]);
            let shift = datum.form(i, i);
            for r in 0..d {
                if !xm[r][c].is_zero() && module.degrees[r] != module.degrees[c] + shift {
                    return Err(alloc::format!("x_{} on basis {c}", l + 1));
                }
            }
        }
    }
    for (k, tm) in module.tau.iter().enumerate() {
        for c in 0..d {
            let w = &module.words[c];
            let shift = -datum.form(usize::from(w[k]), usize::from(w[k + 1]));
            for r in 0..d {
                if !tm[r][c].is_zero() && module.degrees[r] != module.degrees[c] + shift {
                    return Err(alloc::format!("τ_{} on basis {c}", k + 1));
                }
            }
        }
    }
    Ok(())
}

/// `qch`: for each word, the graded dimension as `degree ↦ multiplicity`.
pub fn module_qcharacter(module: &MatrixModule) -> BTreeMap<Vec<u8>, BTreeMap<i32, u64>> {
    let mut out: BTreeMap<Vec<u8>, BTreeMap<i32, u64>> = BTreeMap::new();
    for (w, &deg) in module.words.iter().zip(&module.degrees) {
        *out.entry(w.clone()).or_default().entry(deg).or_insert(0) += 1;
    }
    out
}

/// `qch` at `q = 1`.
pub fn specialize_at_one(qch: &BTreeMap<Vec<u8>, BTreeMap<i32, u64>>) -> crate::Character {
    let mut c = crate::Character::zero();
    for (w, poly) in qch {
        c.add(w.clone(), poly.values().sum());
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanType;
    use crate::character::ch_delta;

    fn d(ty: CartanType, n: usize) -> CartanDatum {
        CartanDatum::new(ty, n).unwrap()
    }

    #[test]
    fn default_q() {
        let b3 = d(CartanType::B, 3);
        let q = build_q(&b3, &QChoices::default()).unwrap();
        let one = Rational64::one();
        assert_eq!(q.get(1, 2), &Poly2::from([((1, 0), one), ((0, 1), one)]));
        assert!(q.get(2, 2).is_empty());
        assert_eq!(q.get(1, 3), &Poly2::from([((0, 0), one)]));
        assert_eq!(q.get(3, 2), &Poly2::from([((2, 0), one), ((0, 1), one)]));
    }

    #[test]
    fn rejects_bad_choices() {
        let b3 = d(CartanType::B, 3);
        let mut c = QChoices::default();
        c.zeta.insert((1, 2), Rational64::zero());
        assert!(build_q(&b3, &c).is_err());
        let mut c = QChoices::default();
        c.zeta.insert((1, 3), Rational64::new(2, 1));
        assert!(build_q(&b3, &c).is_err());
        c.zeta.insert((3, 1), Rational64::new(2, 1));
        assert!(build_q(&b3, &c).is_ok());
        let mut c = QChoices::default();
        c.eta.insert((1, 2, 0, 0), Rational64::one());
        assert!(build_q(&b3, &c).is_err());
        // No finite type leaves room for interior monomials.
        for (ty, n) in [(CartanType::B, 3), (CartanType::C, 3), (CartanType::D, 4), (CartanType::G2, 2), (CartanType::F4, 4)] {
            let datum = d(ty, n);
            for i in 1..=n {
                for j in 1..=n {
                    assert!(eta_slots(&datum, i, j).is_empty());
                }
            }
        }
    }

    #[test]
    fn b3_zero_crossing_model() {
        let b3 = d(CartanType::B, 3);
        let q = build_q(&b3, &QChoices::default()).unwrap();
        let m = build_delta_module(&b3, Letter::bar(1), Letter::plain(1), &q).unwrap();
        assert_eq!(m.dim(), 2);
        assert_eq!(m.words[0], [1, 2, 3, 3, 2, 1]);
        assert_eq!(m.x[2][0][1], -Rational64::one());
        assert_eq!(m.x[3][0][1], Rational64::one());
        assert_eq!(m.tau[2][1][0], Rational64::one());
        assert!(check_relations(&m, &q).passed());
        assert!(check_degrees(&b3, &m).is_ok());
        let qch = module_qcharacter(&m);
        assert_eq!(qch[&vec![1, 2, 3, 3, 2, 1]], BTreeMap::from([(-2, 1), (0, 1)]));
        assert_eq!(specialize_at_one(&qch), ch_delta(&b3, Letter::bar(1), Letter::plain(1)).unwrap());
        let bad = corrupt(&m);
        let rep = check_relations(&bad, &q);
        assert!(!rep.passed());
        assert!(rep.failures().any(|c| c.relation == "dot-crossing"));
    }

    #[test]
    fn line_and_fork_models() {
        let b3 = d(CartanType::B, 3);
        let q = build_q(&b3, &QChoices::default()).unwrap();
        let m = build_delta_module(&b3, Letter::bar(1), Letter::bar(2), &q).unwrap();
        assert_eq!(m.dim(), 1);
        assert!(m.x.iter().all(|x| x[0][0].is_zero()));
        assert!(check_relations(&m, &q).passed());
        let d4 = d(CartanType::D, 4);
        let mut c = QChoices::default();
        c.zeta.insert((4, 3), Rational64::new(3, 2));
        c.zeta.insert((3, 4), Rational64::new(3, 2));
        let q = build_q(&d4, &c).unwrap();
        let m = build_delta_module(&d4, Letter::bar(3), Letter::plain(3), &q).unwrap();
        assert_eq!(m.words, [vec![4, 3], vec![3, 4]]);
        assert_eq!(m.tau[0][1][0], Rational64::new(3, 2));
        assert!(check_relations(&m, &q).passed());
        assert!(!check_relations(&corrupt(&m), &q).passed());
    }
}
