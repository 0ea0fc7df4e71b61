//! Linear inequality systems over the entries of a string.
//!
//! A [`Constraint`] states `Σ c_k a_k + constant ≥ 0`. Systems for the
//! exceptional string cones are written in a compact chain notation:
//! clauses separated by `;`, groups separated by `>=`, group members
//! separated by `,`. Every member of a group dominates every member of the
//! next group. Members are integer linear expressions such as `2*6`,
//! `5+7` or `29-28`, where bare integers are 1-based positions.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::{Error, Result};

/// `Σ coeffs[k]·a_k + constant ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Constraint {
    pub coeffs: BTreeMap<usize, i64>,
    pub constant: i64,
}

impl Constraint {
    /// `lhs ≥ rhs` for two linear forms given as term lists.
    pub fn geq(lhs: &[(usize, i64)], rhs: &[(usize, i64)], constant: i64) -> Self {
        let mut c = Constraint { coeffs: BTreeMap::new(), constant };
        for &(k, v) in lhs {
            *c.coeffs.entry(k).or_insert(0) += v;
        }
        for &(k, v) in rhs {
            *c.coeffs.entry(k).or_insert(0) -= v;
        }
        c.coeffs.retain(|_, v| *v != 0);
        c
    }

    pub fn value(&self, a: &[u32]) -> i64 {
        self.constant
            + self.coeffs.iter().map(|(&k, &v)| v * i64::from(a[k])).sum::<i64>()
    }

    pub fn holds(&self, a: &[u32]) -> bool {
        self.value(a) >= 0
    }

    /// Moves every position by `offset`.
    pub fn shifted(&self, offset: usize) -> Self {
        Constraint {
            coeffs: self.coeffs.iter().map(|(&k, &v)| (k + offset, v)).collect(),
            constant: self.constant,
        }
    }
}

type Expr = Vec<(usize, i64)>;

fn parse_expr(s: &str) -> Result<Expr> {
    let s: alloc::string::String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut out = Vec::new();
    let mut sign = 1i64;
    let mut term = alloc::string::String::new();
    let mut flush = |term: &mut alloc::string::String, sign: i64| -> Result<()> {
        if term.is_empty() {
            return Err(Error::Parse("dangling operator".into()));
        }
        let (c, p) = match term.split_once('*') {
            Some((c, p)) => (
                c.parse::<i64>().map_err(|_| Error::Parse(format!("bad coefficient {c}")))?,
                p,
            ),
            None => (1, term.as_str()),
        };
        let pos = p.parse::<usize>().map_err(|_| Error::Parse(format!("bad position {p}")))?;
        if pos == 0 {
            return Err(Error::Parse("positions are 1-based".into()));
        }
        out.push((pos - 1, sign * c));
        term.clear();
        Ok(())
    };
    for ch in s.chars() {
        match ch {
            '+' | '-' => {
                flush(&mut term, sign)?;
                sign = if ch == '+' { 1 } else { -1 };
            }
            _ => term.push(ch),
        }
    }
    flush(&mut term, sign)?;
    Ok(out)
}

/// Parses the chain notation described in the module docs.
pub fn parse_system(src: &str) -> Result<Vec<Constraint>> {
    let mut out = Vec::new();
    for clause in src.split(';').map(str::trim).filter(|c| !c.is_empty()) {
        let groups = clause
            .split(">=")
            .map(|g| g.split(',').map(parse_expr).collect::<Result<Vec<Expr>>>())
            .collect::<Result<Vec<_>>>()?;
        if groups.len() < 2 {
            return Err(Error::Parse(format!("clause without comparison: {clause}")));
        }
        for pair in groups.windows(2) {
            for hi in &pair[0] {
                for lo in &pair[1] {
                    out.push(Constraint::geq(hi, lo, 0));
                }
            }
        }
    }
    Ok(out)
}

/// A plain descending chain `x_1 ≥ x_2 ≥ ⋯` with weights.
pub fn chain(terms: &[(usize, i64)]) -> Vec<Constraint> {
    terms
        .windows(2)
        .map(|w| Constraint::geq(&[w[0]], &[w[1]], 0))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grouped_chain() {
        let cs = parse_system("1>=2,3>=4").unwrap();
        assert_eq!(cs.len(), 4);
        assert!(cs.iter().all(|c| c.holds(&[5, 3, 4, 1])));
        assert!(!cs.iter().all(|c| c.holds(&[5, 3, 4, 4])));
    }

    #[test]
    fn linear_members() {
        let cs = parse_system("6*1>=2*2; 19>=29-28").unwrap();
        assert_eq!(cs[0].coeffs.get(&0), Some(&6));
        assert_eq!(cs[0].coeffs.get(&1), Some(&-2));
        assert_eq!(cs[1].coeffs.get(&18), Some(&1));
        assert_eq!(cs[1].coeffs.get(&28), Some(&-1));
        assert_eq!(cs[1].coeffs.get(&27), Some(&1));
    }

    #[test]
    fn malformed() {
        assert!(parse_system("1>=").is_err());
        assert!(parse_system("1").is_err());
        assert!(parse_system("0>=1").is_err());
        assert!(parse_system("x>=1").is_err());
    }
}
