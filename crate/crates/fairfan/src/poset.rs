//! DOT and JSON exports of intersection posets.

use std::fmt::Write as _;

use fairfan_core::arrangement::{IntersectionPoset, ZeroPattern};
use serde::Serialize;

/// Rows of `0` (forced zero) and `*` (free), one string per row.
pub fn matrix_rows(p: &ZeroPattern) -> Vec<String> {
    (0..p.rows)
        .map(|j| (0..p.cols()).map(|k| if p.is_zero(j, k) { '0' } else { '*' }).collect())
        .collect()
}

fn columns_of(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|&k| mask >> k & 1 == 1).map(|k| k + 1).collect()
}

/// Hasse diagram, bottom to top, with the fiber over the full column set
/// drawn in red.
pub fn to_dot(poset: &IntersectionPoset) -> String {
    let top = poset.top_mask();
    let mut s = String::from("digraph poset {\n  rankdir=BT;\n  node [shape=box, fontname=\"monospace\"];\n");
    for (i, p) in poset.elements.iter().enumerate() {
        let color = if p.phi() == top { ", color=red, fontcolor=red" } else { "" };
        let _ = writeln!(s, "  n{i} [label=\"{}\"{color}];", matrix_rows(p).join("\\n"));
    }
    for (lo, hi) in &poset.hasse {
        let _ = writeln!(s, "  n{lo} -> n{hi};");
    }
    s.push_str("}\n");
    s
}

#[derive(Debug, Serialize)]
pub struct ElementJson {
    pub index: usize,
    pub matrix: Vec<String>,
    pub zeros: usize,
    /// 1-based columns containing a zero.
    pub phi: Vec<usize>,
}

#[derive(Debug, Serialize)]
pub struct PosetJson {
    pub m: usize,
    pub n: usize,
    pub c: usize,
    pub variant: String,
    pub elements: Vec<ElementJson>,
    pub hasse: Vec<[usize; 2]>,
}

pub fn to_json_value(poset: &IntersectionPoset) -> PosetJson {
    let p = &poset.params;
    PosetJson {
        m: p.m,
        n: p.n,
        c: p.c,
        variant: format!("{:?}", p.variant),
        elements: poset
            .elements
            .iter()
            .enumerate()
            .map(|(index, e)| ElementJson {
                index,
                matrix: matrix_rows(e),
                zeros: e.zeros(),
                phi: columns_of(e.phi(), p.n),
            })
            .collect(),
        hasse: poset.hasse.iter().map(|&(a, b)| [a, b]).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use fairfan_core::arrangement::{build_poset, Variant, DEFAULT_CAP};

    #[test]
    fn figure_one_dot() {
        let p = build_poset(4, 2, 3, Variant::A, DEFAULT_CAP).unwrap();
        let dot = to_dot(&p);
        assert_eq!(dot.matches(" [label=").count(), 8);
        assert!(!dot.contains("color=red"));
        let p = build_poset(3, 2, 3, Variant::A, DEFAULT_CAP).unwrap();
        assert_eq!(to_dot(&p).matches(", color=red").count(), 2);
        let json = to_json_value(&p);
        assert_eq!(json.elements.len(), p.len());
    }
}
