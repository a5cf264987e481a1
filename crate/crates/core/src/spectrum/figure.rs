//! Marker and arrow data for the eigenvalue pictures, with CSV, table and
//! SVG renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::{build_s, c_of, Klass, Q};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MarkerKind {
    Dot,
    Cross,
    FilledGhost,
}

impl MarkerKind {
    pub fn label(self) -> &'static str {
        match self {
            MarkerKind::Dot => "dot",
            MarkerKind::Cross => "cross",
            MarkerKind::FilledGhost => "filled_ghost",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Marker {
    pub position: Q,
    pub marker: MarkerKind,
    pub k_origin: usize,
    pub klass: Klass,
    pub ghost: bool,
}

/// χ₊ moves the value `from` of `S_k` to `to = from + 2/n` in `S_{k+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Arrow {
    pub k_from: usize,
    pub from: Q,
    pub to: Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FigureData {
    pub n: usize,
    pub markers: Vec<Marker>,
    pub arrows: Vec<Arrow>,
}

/// One CSV record per marker.
#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CsvRow {
    pub position_num: i64,
    pub position_den: i64,
    pub marker: MarkerKind,
    pub k_origin: usize,
    pub klass: String,
    pub ghost: bool,
}

pub fn figure_data(n: usize) -> Result<FigureData> {
    let set = build_s(n)?;
    let markers = set
        .members
        .iter()
        .map(|m| Marker {
            position: m.value,
            marker: match (m.ghost, m.klass) {
                (true, _) => MarkerKind::FilledGhost,
                (false, Klass::Zero) => MarkerKind::Cross,
                (false, _) => MarkerKind::Dot,
            },
            k_origin: m.k_origin,
            klass: m.klass,
            ghost: m.ghost,
        })
        .collect();
    let shift = Q::new(2, n as i64);
    let mut arrows = Vec::with_capacity(3 * (n - 1));
    for k in 0..n - 1 {
        let c = c_of(k, n)?;
        for offset in [0, -1, -2] {
            let from = c + Q::from_integer(offset);
            arrows.push(Arrow { k_from: k, from, to: from + shift });
        }
    }
    Ok(FigureData { n, markers, arrows })
}

impl FigureData {
    pub fn csv_rows(&self) -> Vec<CsvRow> {
        self.markers
            .iter()
            .map(|m| CsvRow {
                position_num: *m.position.numer(),
                position_den: *m.position.denom(),
                marker: m.marker,
                k_origin: m.k_origin,
                klass: m.klass.label().to_string(),
                ghost: m.ghost,
            })
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in self.csv_rows() {
            w.serialize(row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii")
    }

    /// Distinct realised positions, each with the classes that reach it.
    fn realised_positions(&self) -> BTreeMap<Q, Vec<&Marker>> {
        let mut out: BTreeMap<Q, Vec<&Marker>> = BTreeMap::new();
        for m in self.markers.iter().filter(|m| !m.ghost) {
            out.entry(m.position).or_default().push(m);
        }
        out
    }

    /// One line per distinct realised value, then one per ghost.
    pub fn to_table(&self) -> String {
        let mut out = format!("# S({}) eigenvalues\n{:>10}  {:<14}  {:>12}  {}\n", self.n, "value", "classes", "multiplicity", "surfaces");
        for (pos, ms) in self.realised_positions() {
            let mut classes: Vec<&str> = ms.iter().map(|m| m.klass.label()).collect();
            classes.dedup();
            let ks: Vec<String> = ms.iter().map(|m| m.k_origin.to_string()).collect();
            let _ = writeln!(out, "{:>10}  {:<14}  {:>12}  {}", pos.to_string(), classes.join(","), ms.len(), ks.join(","));
        }
        for g in self.markers.iter().filter(|m| m.ghost) {
            let _ = writeln!(out, "{:>10}  {:<14}  {:>12}  ghost of k={}", g.position.to_string(), g.klass.label(), 0, g.k_origin);
        }
        out
    }

    /// Two panels: the χ₊ ladder over rows `S_0 … S_{n−1}` and the union
    /// `S` on one line. Markers carry `class` and `data-value` attributes.
    pub fn to_svg(&self) -> String {
        const WIDTH: f64 = 960.0;
        const MARGIN: f64 = 40.0;
        const ROW: f64 = 28.0;
        let n = self.n;
        let x = |v: Q| MARGIN + (v.to_f64().unwrap_or(0.0) + 2.0) / 4.0 * (WIDTH - 2.0 * MARGIN);
        let ladder_height = ROW * n as f64;
        let union_y = MARGIN + ladder_height + 2.0 * ROW;
        let height = union_y + 2.0 * ROW;
        let row_y = |k: usize| MARGIN + ROW * k as f64;

        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}">"#
        );
        let _ = writeln!(s, r#"<title>Eigenvalues for N={n}</title>"#);
        s.push_str(concat!(
            "<defs><marker id=\"head\" markerWidth=\"6\" markerHeight=\"6\" refX=\"5\" refY=\"3\" orient=\"auto\">",
            "<path d=\"M0,0 L6,3 L0,6 z\" fill=\"#555\"/></marker></defs>\n"
        ));

        let _ = writeln!(s, r#"<g class="ladder">"#);
        for k in 0..n {
            let y = row_y(k);
            let _ = writeln!(s, r##"<line class="axis" x1="{MARGIN}" y1="{y}" x2="{}" y2="{y}" stroke="#ccc"/>"##, WIDTH - MARGIN);
            let _ = writeln!(s, r#"<text x="4" y="{}" font-size="11">S{k}</text>"#, y + 4.0);
        }
        for m in &self.markers {
            let class = match m.marker {
                MarkerKind::Dot => "row-dot",
                MarkerKind::Cross => "row-cross",
                MarkerKind::FilledGhost => "row-ghost",
            };
            draw_marker(&mut s, class, m.marker, x(m.position), row_y(m.k_origin), m.position);
        }
        for a in &self.arrows {
            let (x1, y1) = (x(a.from), row_y(a.k_from) + 6.0);
            let (x2, y2) = (x(a.to), row_y(a.k_from + 1) - 6.0);
            let _ = writeln!(
                s,
                r##"<line class="arrow" data-from="{}" data-to="{}" x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="#555" marker-end="url(#head)"/>"##,
                a.from, a.to
            );
        }
        let _ = writeln!(s, "</g>");

        let _ = writeln!(s, r#"<g class="union">"#);
        let _ = writeln!(s, r##"<line class="axis" x1="{MARGIN}" y1="{union_y}" x2="{}" y2="{union_y}" stroke="#000"/>"##, WIDTH - MARGIN);
        for v in [-2, -1, 0, 1, 2] {
            let xv = x(Q::from_integer(v));
            let _ = writeln!(s, r##"<line class="tick" x1="{xv:.2}" y1="{}" x2="{xv:.2}" y2="{}" stroke="#000"/>"##, union_y - 4.0, union_y + 4.0);
            let _ = writeln!(s, r#"<text x="{:.2}" y="{}" font-size="11">{v}</text>"#, xv - 4.0, union_y + 18.0);
        }
        for (pos, ms) in self.realised_positions() {
            if ms.iter().any(|m| m.marker == MarkerKind::Dot) {
                draw_marker(&mut s, "dot", MarkerKind::Dot, x(pos), union_y, pos);
            }
            if ms.iter().any(|m| m.marker == MarkerKind::Cross) {
                draw_marker(&mut s, "cross", MarkerKind::Cross, x(pos), union_y, pos);
            }
        }
        for g in self.markers.iter().filter(|m| m.ghost) {
            draw_marker(&mut s, "ghost", MarkerKind::FilledGhost, x(g.position), union_y, g.position);
        }
        let _ = writeln!(s, "</g>\n</svg>");
        s
    }
}

fn draw_marker(s: &mut String, class: &str, kind: MarkerKind, cx: f64, cy: f64, value: Q) {
    const R: f64 = 5.0;
    let _ = match kind {
        MarkerKind::Dot => writeln!(
            s,
            r##"<circle class="{class}" data-value="{value}" cx="{cx:.2}" cy="{cy:.2}" r="{R}" fill="none" stroke="#000"/>"##
        ),
        MarkerKind::FilledGhost => writeln!(
            s,
            r##"<circle class="{class}" data-value="{value}" cx="{cx:.2}" cy="{cy:.2}" r="{R}" fill="#000" stroke="#000"/>"##
        ),
        MarkerKind::Cross => writeln!(
            s,
            r##"<path class="{class}" data-value="{value}" d="M{:.2},{:.2} L{:.2},{:.2} M{:.2},{:.2} L{:.2},{:.2}" stroke="#c00"/>"##,
            cx - R, cy - R, cx + R, cy + R, cx - R, cy + R, cx + R, cy - R
        ),
    };
}
