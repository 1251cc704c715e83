//! CSV, DOT and JSON artifacts.

use std::io::Write;

use serde::Serialize;

use crate::bruhat::BruhatGraph;
use crate::coxeter::Element;
use crate::diamond::{EdgeSet, Mode};
use crate::poly::IntPoly;
use crate::polynomials::{KlEngine, PolyError, PolyKind};

/// One polynomial row: `system,u_word,v_word,kind,coeff0,coeff1,...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyRow {
    pub system: String,
    pub u: Element,
    pub v: Element,
    pub kind: PolyKind,
    pub poly: IntPoly,
}

/// Rows for `R`, `R̃` and `P` of each pair.
pub fn poly_rows(
    system: &str,
    engine: &KlEngine,
    pairs: &[(Element, Element)],
) -> Result<Vec<PolyRow>, PolyError> {
    let mut rows = Vec::with_capacity(3 * pairs.len());
    for (u, v) in pairs {
        for kind in [PolyKind::R, PolyKind::Rt, PolyKind::P] {
            rows.push(PolyRow {
                system: system.to_string(),
                u: u.clone(),
                v: v.clone(),
                kind,
                poly: engine.poly(kind, u, v)?,
            });
        }
    }
    Ok(rows)
}

/// Writes rows sorted ShortLex on `(v, u)`, then by kind.
pub fn write_poly_csv<W: Write>(out: W, rows: &[PolyRow]) -> csv::Result<()> {
    let mut sorted: Vec<&PolyRow> = rows.iter().collect();
    sorted.sort_by(|a, b| (&a.v, &a.u, a.kind).cmp(&(&b.v, &b.u, b.kind)));
    let mut writer = csv::WriterBuilder::new().flexible(true).from_writer(out);
    for row in sorted {
        let mut record = vec![
            row.system.clone(),
            row.u.word_string(),
            row.v.word_string(),
            row.kind.name().to_string(),
        ];
        if row.poly.is_zero() {
            record.push("0".to_string());
        }
        record.extend(row.poly.coeffs().iter().map(|c| c.to_string()));
        writer.write_record(&record)?;
    }
    writer.flush()?;
    Ok(())
}

/// Per-interval `d` and `g` table row.
#[derive(Debug, Clone, Serialize)]
pub struct DgRow {
    pub system: String,
    pub u_word: String,
    pub v_word: String,
    pub length: usize,
    pub d: usize,
    pub f_size: usize,
    pub g: usize,
}

pub fn write_dg_csv<W: Write>(out: W, rows: &[DgRow]) -> csv::Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}

/// DOT rendering of a Bruhat graph; `highlight` edges are drawn red.
pub fn to_dot(graph: &BruhatGraph, highlight: Option<&EdgeSet>) -> String {
    let interval = graph.interval();
    let mut dot = String::from("digraph bruhat {\n  rankdir=BT;\n  node [shape=box];\n");
    for (i, x) in interval.elements().iter().enumerate() {
        dot.push_str(&format!("  n{i} [label=\"{}\"];\n", x.word_string()));
    }
    for (k, e) in graph.edges().iter().enumerate() {
        let red = highlight.is_some_and(|h| h.contains(k));
        dot.push_str(&format!(
            "  n{} -> n{} [label=\"β={}, len={}\"{}];\n",
            e.lo,
            e.hi,
            e.label,
            e.length,
            if red { ", color=red, penwidth=2" } else { "" }
        ));
    }
    dot.push_str("}\n");
    dot
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateEdge {
    pub lo: String,
    pub hi: String,
    pub label: String,
    pub length: usize,
}

/// The `{interval, mode, d, g, certificate_edges}` sidecar.
#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub interval: [String; 2],
    pub mode: Mode,
    pub d: usize,
    pub g: usize,
    pub certificate_edges: Vec<CertificateEdge>,
}

impl Certificate {
    pub fn new(graph: &BruhatGraph, mode: Mode, d: usize, g: usize, edges: &EdgeSet) -> Self {
        let interval = graph.interval();
        Self {
            interval: [interval.u().word_string(), interval.v().word_string()],
            mode,
            d,
            g,
            certificate_edges: edges
                .iter()
                .map(|k| {
                    let e = graph.edge(k);
                    CertificateEdge {
                        lo: interval.element(e.lo).word_string(),
                        hi: interval.element(e.hi).word_string(),
                        label: e.label.to_string(),
                        length: e.length,
                    }
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bruhat::Interval;
    use crate::coxeter::{CoxeterMatrix, CoxeterSystem};

    #[test]
    fn csv_rows_are_sorted() {
        let sys = CoxeterSystem::new(CoxeterMatrix::type_a(2));
        let engine = KlEngine::new(&sys);
        let w = |s: &str| sys.parse_word(s).unwrap();
        let pairs = vec![(w("e"), w("1 2")), (w("1"), w("1")), (w("e"), w("1"))];
        let rows = poly_rows("A2", &engine, &pairs).unwrap();
        let mut out = Vec::new();
        write_poly_csv(&mut out, &rows).unwrap();
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "A2,e,1,R,-1,1");
        assert_eq!(lines[1], "A2,e,1,Rt,0,1");
        assert_eq!(lines[2], "A2,e,1,P,1");
        assert_eq!(lines[3], "A2,1,1,R,1");
        assert_eq!(lines[6], "A2,e,1 2,R,1,-2,1");
    }

    #[test]
    fn dot_output() {
        let sys = CoxeterSystem::new(CoxeterMatrix::type_a(2));
        let i = Interval::new(&sys, &sys.identity(), &sys.parse_word("1").unwrap()).unwrap();
        let g = BruhatGraph::new(i).unwrap();
        let dot = to_dot(&g, Some(&EdgeSet::full(1)));
        assert!(dot.contains("n0 [label=\"e\"]"));
        assert!(dot.contains("n0 -> n1 [label=\"β=1,0, len=1\", color=red"));
        let cert = Certificate::new(&g, Mode::Strict, 1, 1, &EdgeSet::full(1));
        let json: serde_json::Value = serde_json::from_str(&cert.to_json()).unwrap();
        assert_eq!(json["mode"], "strict");
        assert_eq!(json["certificate_edges"][0]["hi"], "1");
    }
}
