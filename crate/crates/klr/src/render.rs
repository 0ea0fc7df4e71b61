//! Plain-text and DOT renderings.

use std::fmt::Write;

use klr_core::cartan::longest_word;
use klr_core::strings::{adapted_string, Triangle};
use klr_core::{Crystal, Letter};

const COLORS: [&str; 8] = ["red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan"];

/// The crystal graph with one node per element, labelled by its adapted
/// string, and one edge per `f_i` arrow.
pub fn crystal_dot(c: &Crystal) -> String {
    let datum = c.datum();
    let word = longest_word(datum).flat();
    let mut out = String::new();
    let _ = writeln!(out, "digraph crystal {{");
    let _ = writeln!(out, "  label=\"B({:?}) of type {}\";", c.lambda(), datum.label());
    let _ = writeln!(out, "  node [shape=box, fontname=monospace];");
    for (k, b) in c.elements().iter().enumerate() {
        let s = adapted_string(c.alphabet(), b, &word);
        let label: Vec<String> = s.iter().map(u32::to_string).collect();
        let _ = writeln!(out, "  n{k} [label=\"({})\"];", label.join(","));
    }
    for k in 0..c.len() {
        for i in 1..=datum.rank() {
            if let Some(t) = c.arrow(k, i) {
                let color = COLORS[(i - 1) % COLORS.len()];
                let _ = writeln!(out, "  n{k} -> n{t} [label=\"{i}\", color={color}];");
            }
        }
    }
    out.push_str("}\n");
    out
}

/// Rows of the triangle, each shifted right by its starting column.
pub fn triangle_text(tri: &Triangle) -> String {
    let width = tri.rows.iter().flatten().map(|v| v.to_string().len()).max().unwrap_or(1);
    let first = tri.starts.iter().copied().min().unwrap_or(1);
    let mut out = String::new();
    for (row, &start) in tri.rows.iter().zip(&tri.starts) {
        let pad = (start - first) * (width + 1);
        let cells: Vec<String> = row.iter().map(|v| format!("{v:>width$}")).collect();
        let _ = writeln!(out, "{}{}", " ".repeat(pad), cells.join(" "));
    }
    out
}

pub fn segment(a: Letter, b: Letter) -> String {
    format!("Δ({a},{b})")
}

pub fn sequence(s: &[u8]) -> String {
    let v: Vec<String> = s.iter().map(u8::to_string).collect();
    format!("({})", v.join(","))
}

/// `f_{i_1}^{c_1} ⋯` with exponents written after `^`.
pub fn operator_word(w: &[(u8, u32)]) -> String {
    let parts: Vec<String> = w
        .iter()
        .filter(|&&(_, c)| c > 0)
        .map(|&(i, c)| if c == 1 { format!("f{i}") } else { format!("f{i}^{c}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use klr_core::{CartanDatum, CartanType};

    #[test]
    fn triangle_layout() {
        let datum = CartanDatum::new(CartanType::B, 3).unwrap();
        let tri = klr_core::strings::triangle(&datum, &[3, 3, 3, 0, 4, 3, 5, 2, 1]).unwrap();
        let text = triangle_text(&tri);
        assert_eq!(text.lines().count(), 3);
        assert!(text.lines().last().unwrap().starts_with('4'));
    }

    #[test]
    fn words() {
        assert_eq!(operator_word(&[(1, 4), (2, 0), (3, 1)]), "f1^4 f3");
        assert_eq!(operator_word(&[]), "1");
        assert_eq!(segment(Letter::bar(1), Letter::ZERO), "Δ(1\u{305},0)");
    }

    #[test]
    fn dot_edges() {
        let datum = CartanDatum::new(CartanType::A, 1).unwrap();
        let c = Crystal::generate(&datum, &[2], 100).unwrap();
        let dot = crystal_dot(&c);
        assert_eq!(dot.matches("->").count(), 2);
    }
}
