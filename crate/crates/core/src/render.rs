//! SVG pictures of finite normal origamis.
//!
//! Squares are unfolded along a breadth-first spanning tree: starting at the
//! identity, the right (`g·x`) and upper (`g·y`) neighbors are placed next to
//! their parent whenever that grid cell is still free. Every gluing that does
//! not end up drawn as a shared edge is shown as a pair of matching marks.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::origami::{Corner, Origami};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
    Bottom,
    Top,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EdgeRef {
    pub square: usize,
    pub side: Side,
}

/// Two edges glued together but not drawn adjacent. `from` is a right or
/// top edge, `to` the matching left or bottom edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mark {
    pub id: usize,
    pub from: EdgeRef,
    pub to: EdgeRef,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    /// Grid cell `(column, row)` of each square by element index; rows grow upward.
    pub cells: Vec<(i64, i64)>,
    /// `(parent, child, side of parent)` for squares placed by the spanning forest.
    pub tree_edges: Vec<(usize, usize, Side)>,
    pub marks: Vec<Mark>,
    /// Vertex class of each corner slot `4·square + corner`.
    pub vertex_class: Vec<usize>,
    pub class_count: usize,
    /// Cone angle multiple at every vertex; 1 means no singularities.
    pub multiplicity: u64,
}

impl Layout {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

pub fn layout_origami(o: &Origami) -> Result<Layout> {
    let cap = o.group().caps().render;
    if o.size() > cap as u128 {
        return Err(Error::CapExceeded {
            what: "render size",
            cap,
        });
    }
    let (right, up) = o.neighbor_tables()?;
    let n = right.len();
    let mut cells: Vec<Option<(i64, i64)>> = vec![None; n];
    let mut tree_edges = Vec::new();
    let mut floor = 0i64;
    let mut next_root = 0;
    while let Some(root) = (next_root..n).find(|&i| cells[i].is_none()) {
        next_root = root + 1;
        // Squares the first tree could not reach without collisions start a
        // new tree, drawn below everything placed so far.
        let mut occupied: HashMap<(i64, i64), usize> = HashMap::new();
        let mut members = vec![root];
        cells[root] = Some((0, 0));
        occupied.insert((0, 0), root);
        let mut queue = VecDeque::from([root]);
        while let Some(g) = queue.pop_front() {
            let (cx, cy) = cells[g].expect("placed");
            for (child, cell, side) in [
                (right[g], (cx + 1, cy), Side::Right),
                (up[g], (cx, cy + 1), Side::Top),
            ] {
                if cells[child].is_some() || occupied.contains_key(&cell) {
                    continue;
                }
                cells[child] = Some(cell);
                occupied.insert(cell, child);
                members.push(child);
                tree_edges.push((g, child, side));
                queue.push_back(child);
            }
        }
        if root != 0 {
            let top = members
                .iter()
                .map(|&m| cells[m].expect("placed").1)
                .max()
                .unwrap_or(0);
            let shift = floor - 2 - top;
            for &m in &members {
                let (c, r) = cells[m].expect("placed");
                cells[m] = Some((c, r + shift));
            }
        }
        floor = floor.min(
            members
                .iter()
                .map(|&m| cells[m].expect("placed").1)
                .min()
                .unwrap_or(0),
        );
    }
    let cells: Vec<(i64, i64)> = cells.into_iter().map(|c| c.expect("all placed")).collect();

    let mut marks = Vec::new();
    for g in 0..n {
        let (cx, cy) = cells[g];
        if cells[right[g]] != (cx + 1, cy) {
            marks.push(Mark {
                id: marks.len(),
                from: EdgeRef {
                    square: g,
                    side: Side::Right,
                },
                to: EdgeRef {
                    square: right[g],
                    side: Side::Left,
                },
            });
        }
        if cells[up[g]] != (cx, cy + 1) {
            marks.push(Mark {
                id: marks.len(),
                from: EdgeRef {
                    square: g,
                    side: Side::Top,
                },
                to: EdgeRef {
                    square: up[g],
                    side: Side::Bottom,
                },
            });
        }
    }

    let classes = o.vertex_classes()?;
    let mut vertex_class = Vec::with_capacity(4 * n);
    for g in 0..n {
        for corner in Corner::ALL {
            vertex_class.push(classes.class_of(g, corner));
        }
    }
    Ok(Layout {
        cells,
        tree_edges,
        marks,
        vertex_class,
        class_count: classes.len(),
        multiplicity: o.commutator().order(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Palette {
    /// Golden-angle hues.
    #[default]
    Rainbow,
    /// Grey levels.
    Grey,
}

impl Palette {
    pub fn parse(name: &str) -> Result<Palette> {
        match name {
            "rainbow" => Ok(Palette::Rainbow),
            "grey" | "gray" => Ok(Palette::Grey),
            other => Err(Error::Input(format!("unknown palette `{other}`"))),
        }
    }

    fn color(self, class: usize, count: usize) -> String {
        match self {
            Palette::Rainbow => format!("hsl({:.1},70%,45%)", (class as f64 * 137.508) % 360.0),
            Palette::Grey => {
                let step = if count > 1 {
                    70.0 / (count - 1) as f64
                } else {
                    0.0
                };
                format!("hsl(0,0%,{:.1}%)", 10.0 + step * class as f64)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Style {
    /// Side length of a square in pixels.
    pub square: u32,
    pub palette: Palette,
    /// Print the 1-based element index inside each square.
    pub labels: bool,
}

impl Default for Style {
    fn default() -> Style {
        Style {
            square: 48,
            palette: Palette::Rainbow,
            labels: true,
        }
    }
}

const GLYPHS: [&str; 6] = ["tick1", "tick2", "tick3", "circle", "square", "arrow"];

pub fn emit_svg(layout: &Layout, style: &Style) -> String {
    let s = style.square.max(8) as f64;
    let margin = s / 2.0;
    let (min_c, max_c) = bounds(layout.cells.iter().map(|c| c.0));
    let (min_r, max_r) = bounds(layout.cells.iter().map(|c| c.1));
    let width = (max_c - min_c + 1) as f64 * s + 2.0 * margin;
    let height = (max_r - min_r + 1) as f64 * s + 2.0 * margin;
    // Top-left pixel of a cell.
    let origin = |(c, r): (i64, i64)| -> (f64, f64) {
        (
            margin + (c - min_c) as f64 * s,
            margin + (max_r - r) as f64 * s,
        )
    };

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    );
    let _ = writeln!(
        out,
        r##"<rect width="100%" height="100%" fill="#ffffff"/>"##
    );

    let _ = writeln!(
        out,
        r#"<g class="squares" fill="none" stroke="black" stroke-width="1">"#
    );
    for (i, &cell) in layout.cells.iter().enumerate() {
        let (x, y) = origin(cell);
        let _ = writeln!(
            out,
            r##"<rect class="square" data-square="{}" x="{x:.2}" y="{y:.2}" width="{s:.2}" height="{s:.2}" fill="#f4f4f4"/>"##,
            i + 1
        );
    }
    let _ = writeln!(out, "</g>");

    if style.labels {
        let font = s * 0.3;
        let _ = writeln!(
            out,
            r##"<g class="labels" font-family="sans-serif" font-size="{font:.2}" text-anchor="middle" fill="#333333">"##
        );
        for (i, &cell) in layout.cells.iter().enumerate() {
            let (x, y) = origin(cell);
            let _ = writeln!(
                out,
                r#"<text x="{:.2}" y="{:.2}">{}</text>"#,
                x + s / 2.0,
                y + s / 2.0 + font / 3.0,
                i + 1
            );
        }
        let _ = writeln!(out, "</g>");
    }

    let _ = writeln!(
        out,
        r#"<g class="marks" stroke="black" stroke-width="1.5" fill="none">"#
    );
    for mark in &layout.marks {
        for edge in [mark.from, mark.to] {
            draw_mark(
                &mut out,
                origin(layout.cells[edge.square]),
                s,
                edge.side,
                mark.id,
            );
        }
    }
    let _ = writeln!(out, "</g>");

    if layout.multiplicity > 1 {
        let r = (s * 0.07).max(2.0);
        let inset = s * 0.12;
        let _ = writeln!(out, r#"<g class="vertices" stroke="none">"#);
        for (i, &cell) in layout.cells.iter().enumerate() {
            let (x, y) = origin(cell);
            for corner in Corner::ALL {
                let class = layout.vertex_class[4 * i + corner as usize];
                let (cx, cy) = match corner {
                    Corner::LowerLeft => (x + inset, y + s - inset),
                    Corner::LowerRight => (x + s - inset, y + s - inset),
                    Corner::UpperLeft => (x + inset, y + inset),
                    Corner::UpperRight => (x + s - inset, y + inset),
                };
                let _ = writeln!(
                    out,
                    r#"<circle class="vertex" data-class="{class}" cx="{cx:.2}" cy="{cy:.2}" r="{r:.2}" fill="{}"/>"#,
                    style.palette.color(class, layout.class_count)
                );
            }
        }
        let _ = writeln!(out, "</g>");
    }
    out.push_str("</svg>\n");
    out
}

fn bounds(values: impl Iterator<Item = i64>) -> (i64, i64) {
    values.fold((i64::MAX, i64::MIN), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

fn draw_mark(out: &mut String, (x, y): (f64, f64), s: f64, side: Side, id: usize) {
    // Midpoint of the edge, pulled slightly into the square.
    let pull = s * 0.1;
    let (mx, my, horizontal) = match side {
        Side::Left => (x + pull, y + s / 2.0, false),
        Side::Right => (x + s - pull, y + s / 2.0, false),
        Side::Top => (x + s / 2.0, y + pull, true),
        Side::Bottom => (x + s / 2.0, y + s - pull, true),
    };
    let glyph = GLYPHS[id % GLYPHS.len()];
    let suffix = id / GLYPHS.len();
    let len = s * 0.08;
    let _ = write!(
        out,
        r#"<g class="mark" data-mark="{id}" data-glyph="{glyph}">"#
    );
    match glyph {
        "tick1" | "tick2" | "tick3" => {
            let count = glyph.as_bytes()[4] - b'0';
            let gap = s * 0.06;
            for t in 0..count {
                let off = (t as f64 - (count as f64 - 1.0) / 2.0) * gap;
                let (x1, y1, x2, y2) = if horizontal {
                    (mx + off, my - len, mx + off, my + len)
                } else {
                    (mx - len, my + off, mx + len, my + off)
                };
                let _ = write!(
                    out,
                    r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}"/>"#
                );
            }
        }
        "circle" => {
            let _ = write!(out, r#"<circle cx="{mx:.2}" cy="{my:.2}" r="{len:.2}"/>"#);
        }
        "square" => {
            let _ = write!(
                out,
                r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}"/>"#,
                mx - len,
                my - len,
                2.0 * len,
                2.0 * len
            );
        }
        _ => {
            // Arrow along the edge, pointing right or up.
            let pts = if horizontal {
                [(mx - len, my - len), (mx + len, my), (mx - len, my + len)]
            } else {
                [(mx - len, my + len), (mx, my - len), (mx + len, my + len)]
            };
            let _ = write!(
                out,
                r#"<polyline points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}"/>"#,
                pts[0].0, pts[0].1, pts[1].0, pts[1].1, pts[2].0, pts[2].1
            );
        }
    }
    if suffix > 0 {
        let font = s * 0.18;
        let (tx, ty) = if horizontal {
            (mx + 2.0 * len, my + font / 3.0)
        } else {
            (mx, my - 1.5 * len)
        };
        let _ = write!(
            out,
            r#"<text x="{tx:.2}" y="{ty:.2}" font-family="sans-serif" font-size="{font:.2}" stroke="none" fill="black" text-anchor="middle">{suffix}</text>"#
        );
    }
    out.push_str("</g>\n");
}
