//! Deterministic SVG drawings of tables and their components.

use std::fmt::Write;

use super::decompose::TableDecomposition;
use super::fold::FoldSystem;
use super::table::{halved_label, BilliardTable};

const MARGIN: i64 = 40;
const TARGET_SIZE: i64 = 640;

const STYLE: &str = "\
.table{fill:none;stroke:#444;stroke-width:1}\
.cycle{stroke:#7a7a7a;stroke-width:1}\
.path{stroke:#000;stroke-width:3}\
.bead{fill:#fff;stroke:#000;stroke-width:1}\
.pocket{fill:#000}\
text{font-family:sans-serif;font-size:10px}\
.corner{font-style:italic;fill:#555}";

fn header(out: &mut String, width: i64, height: i64) {
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(out, "<style>{STYLE}</style>");
}

fn edges_svg<P: Fn(u32) -> (String, String)>(out: &mut String, d: &TableDecomposition, pos: P) {
    let edges = d.edges();
    for on_path in [false, true] {
        let class = if on_path { "path" } else { "cycle" };
        let _ = writeln!(out, r#"<g class="{class}">"#);
        for &(x, y, p) in edges.iter().filter(|e| e.2 == on_path) {
            let _ = p;
            let (x1, y1) = pos(x);
            let (x2, y2) = pos(y);
            let _ = writeln!(out, r#"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>"#);
        }
        let _ = writeln!(out, "</g>");
    }
}

fn beads_svg<P: Fn(u32) -> (String, String)>(out: &mut String, d: &TableDecomposition, pos: P) {
    let _ = writeln!(out, r#"<g class="beads">"#);
    for x in 1..=d.n {
        let (cx, cy) = pos(x);
        let class = if d.pockets.binary_search(&x).is_ok() {
            "bead pocket"
        } else {
            "bead"
        };
        let _ = writeln!(
            out,
            r#"<circle class="{class}" cx="{cx}" cy="{cy}" r="3"/>"#
        );
        let _ = writeln!(out, r#"<text x="{cx}" y="{cy}" dx="4" dy="-4">{x}</text>"#);
    }
    let _ = writeln!(out, "</g>");
}

/// The rectangle with beads on its perimeter. A bead `x` sits at perimeter
/// position `x` (mod `P`), measured in the same units as the halved corners,
/// so partners lie on 45 degree segments.
pub fn render_table_svg(t: &BilliardTable, d: &TableDecomposition) -> String {
    let [a, b, c, dd] = t.corners().map(|v| v as i64);
    let (w, h) = (b - a, c - b);
    let two_p = 2 * (c - a);
    let k = (TARGET_SIZE / w.max(h)).max(1);
    let (width, height) = (2 * MARGIN + w * k, 2 * MARGIN + h * k);
    // Doubled perimeter coordinate to canvas point.
    let at = move |pt: i64| -> (i64, i64) {
        let s = (pt - a).rem_euclid(two_p) + a;
        let (x, y) = if s <= b {
            (s - a, 0)
        } else if s <= c {
            (w, s - b)
        } else if s <= dd {
            (w - (s - c), h)
        } else {
            (0, h - (s - dd))
        };
        (MARGIN + x * k, MARGIN + (h - y) * k)
    };
    let pos = |x: u32| {
        let (px, py) = at(2 * i64::from(x));
        (px.to_string(), py.to_string())
    };
    let mut out = String::new();
    header(&mut out, width, height);
    let _ = writeln!(
        out,
        r#"<rect class="table" x="{MARGIN}" y="{MARGIN}" width="{}" height="{}"/>"#,
        w * k,
        h * k
    );
    edges_svg(&mut out, d, pos);
    beads_svg(&mut out, d, pos);
    let _ = writeln!(out, r#"<g class="corner">"#);
    for corner in [a, b, c, dd] {
        if corner % 2 == 1 {
            let (x, y) = at(corner);
            let label = halved_label(corner as u64);
            let _ = writeln!(
                out,
                r#"<text class="corner" x="{x}" y="{y}" dx="-12" dy="14">({label})</text>"#
            );
        }
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, "</svg>");
    out
}

/// Fold pairs without a polygon: beads evenly spaced on a circle.
pub fn render_folds_svg(f: &FoldSystem, _g: &FoldSystem, d: &TableDecomposition) -> String {
    let n = f.n().max(1);
    let radius = (i64::from(n) * 6).clamp(120, 4000);
    let size = 2 * (radius + MARGIN);
    let centre = (radius + MARGIN) as f64;
    let pos = |x: u32| {
        let theta = std::f64::consts::TAU * f64::from(x - 1) / f64::from(n);
        let px = centre + radius as f64 * theta.sin();
        let py = centre - radius as f64 * theta.cos();
        (format!("{px:.1}"), format!("{py:.1}"))
    };
    let mut out = String::new();
    header(&mut out, size, size);
    edges_svg(&mut out, d, pos);
    beads_svg(&mut out, d, pos);
    let _ = writeln!(out, "</svg>");
    out
}
