//! Serializable views of library values. Letters use the signed encoding
//! (`ī ↦ −i`, `0 ↦ 0`, `i ↦ i`); indices are 1-based.

use serde::Serialize;

use klr_core::cartan::{verify_reduced_longest, CartanDatum};
use klr_core::character::{Character, SerreReport};
use klr_core::delta::{kashiwara_word, theta_row, Decomposition, DeltaFactor};
use klr_core::klr::{RelationCheck, RelationReport};
use klr_core::strings::triangle;
use klr_core::verify::TestReport;
use klr_core::{Crystal, Result};

#[derive(Debug, Clone, Serialize)]
pub struct LongestWordJson {
    #[serde(rename = "type")]
    pub ty: String,
    pub rank: usize,
    pub blocks: Vec<Vec<u8>>,
    pub word: Vec<u8>,
    pub length: usize,
    pub positive_roots: usize,
    pub verified: bool,
}

impl LongestWordJson {
    pub fn new(datum: &CartanDatum) -> Self {
        let w = klr_core::cartan::longest_word(datum);
        let flat = w.flat();
        LongestWordJson {
            ty: datum.cartan_type().to_string(),
            rank: datum.rank(),
            blocks: w.blocks().to_vec(),
            length: flat.len(),
            positive_roots: datum.positive_roots().len(),
            verified: verify_reduced_longest(datum, &flat),
            word: flat,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FactorJson {
    pub a: i8,
    pub b: i8,
    pub mult: u32,
    /// `i(a,b)`.
    pub word: Vec<u8>,
}

impl FactorJson {
    pub fn new(datum: &CartanDatum, f: &DeltaFactor) -> Result<Self> {
        Ok(FactorJson { a: f.a.0, b: f.b.0, mult: f.mult, word: kashiwara_word(datum, f.a, f.b)? })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DecompositionJson {
    #[serde(rename = "type")]
    pub ty: String,
    pub rank: usize,
    pub lambda: Option<Vec<i64>>,
    pub string: Vec<u32>,
    pub triangle: Vec<Vec<u32>>,
    pub triangle_starts: Vec<usize>,
    pub theta: Vec<Vec<i64>>,
    pub blocks: Vec<Vec<FactorJson>>,
    /// `N_k` as `(index, exponent)` pairs read left to right.
    pub n_words: Vec<Vec<(u8, u32)>>,
    pub eta: u64,
    pub bound: Option<u64>,
}

impl DecompositionJson {
    pub fn new(datum: &CartanDatum, lambda: Option<&[i64]>, string: &[u32], dec: &Decomposition) -> Result<Self> {
        let tri = triangle(datum, string)?;
        let theta = (1..=tri.row_count()).map(|i| theta_row(datum, &tri, i)).collect();
        let blocks = dec
            .blocks
            .iter()
            .map(|b| b.iter().map(|f| FactorJson::new(datum, f)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(DecompositionJson {
            ty: datum.cartan_type().to_string(),
            rank: datum.rank(),
            lambda: lambda.map(<[i64]>::to_vec),
            string: string.to_vec(),
            triangle: tri.rows.clone(),
            triangle_starts: tri.starts.clone(),
            theta,
            blocks,
            n_words: dec.n_words.clone(),
            eta: dec.eta,
            bound: dec.bound,
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TermJson {
    pub sequence: Vec<u8>,
    pub coefficient: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SerreViolationJson {
    pub sequence: Vec<u8>,
    pub position: usize,
    pub i: u8,
    pub j: u8,
    pub lhs: u64,
    pub rhs: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SerreJson {
    pub checked: usize,
    pub passed: bool,
    pub violations: Vec<SerreViolationJson>,
}

impl From<&SerreReport> for SerreJson {
    fn from(r: &SerreReport) -> Self {
        SerreJson {
            checked: r.checked,
            passed: r.passed(),
            violations: r
                .violations
                .iter()
                .map(|v| SerreViolationJson {
                    sequence: v.sequence.clone(),
                    position: v.position,
                    i: v.i,
                    j: v.j,
                    lhs: v.lhs,
                    rhs: v.rhs,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CharacterJson {
    pub dimension: u64,
    pub terms: Vec<TermJson>,
    pub serre: SerreJson,
}

impl CharacterJson {
    pub fn new(ch: &Character, serre: &SerreReport) -> Self {
        CharacterJson {
            dimension: ch.total(),
            terms: ch.terms().map(|(s, c)| TermJson { sequence: s.clone(), coefficient: c }).collect(),
            serre: serre.into(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RelationJson {
    pub relation: &'static str,
    pub indices: Vec<usize>,
    pub word: Vec<u8>,
    pub basis_element: Option<usize>,
    pub status: &'static str,
}

impl From<&RelationCheck> for RelationJson {
    fn from(c: &RelationCheck) -> Self {
        RelationJson {
            relation: c.relation,
            indices: c.indices.clone(),
            word: c.word.clone(),
            basis_element: c.basis_element,
            status: if c.passed { "pass" } else { "fail" },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ModuleCheckJson {
    pub a: i8,
    pub b: i8,
    pub dimension: usize,
    pub words: Vec<Vec<u8>>,
    pub degrees: Vec<i32>,
    pub passed: bool,
    pub degree_error: Option<String>,
    /// Failed relation instances only; an empty list means every relation held.
    pub failures: Vec<RelationJson>,
    pub checked: usize,
}

impl ModuleCheckJson {
    pub fn new(a: i8, b: i8, m: &klr_core::klr::MatrixModule, rep: &RelationReport, deg: Option<String>) -> Self {
        ModuleCheckJson {
            a,
            b,
            dimension: m.dim(),
            words: m.words.clone(),
            degrees: m.degrees.clone(),
            passed: rep.passed() && deg.is_none(),
            degree_error: deg,
            failures: rep.failures().map(RelationJson::from).collect(),
            checked: rep.checks.len(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseJson {
    pub case: String,
    pub expected: String,
    pub actual: String,
    pub status: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportJson {
    pub passed: bool,
    pub cases: Vec<CaseJson>,
}

impl From<&TestReport> for ReportJson {
    fn from(r: &TestReport) -> Self {
        ReportJson {
            passed: r.passed(),
            cases: r
                .cases
                .iter()
                .map(|c| CaseJson {
                    case: c.case.clone(),
                    expected: c.expected.clone(),
                    actual: c.actual.clone(),
                    status: if c.passed { "pass" } else { "fail" },
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ElementJson {
    pub index: usize,
    pub string: Vec<u32>,
    pub weight: Vec<i64>,
    /// `(i, target)` for every `f_i` arrow out of this element.
    pub arrows: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CrystalJson {
    #[serde(rename = "type")]
    pub ty: String,
    pub rank: usize,
    pub lambda: Vec<i64>,
    pub size: usize,
    pub elements: Vec<ElementJson>,
}

impl CrystalJson {
    pub fn new(c: &Crystal) -> Self {
        let datum = c.datum();
        let word = klr_core::cartan::longest_word(datum).flat();
        let alphabet = c.alphabet();
        let elements = c
            .elements()
            .iter()
            .enumerate()
            .map(|(k, b)| ElementJson {
                index: k,
                string: klr_core::strings::adapted_string(alphabet, b, &word),
                weight: alphabet.weight(b),
                arrows: (1..=datum.rank()).filter_map(|i| c.arrow(k, i).map(|t| (i, t))).collect(),
            })
            .collect();
        CrystalJson {
            ty: datum.cartan_type().to_string(),
            rank: datum.rank(),
            lambda: c.lambda().to_vec(),
            size: c.len(),
            elements,
        }
    }
}
