//! SVG diagrams of instances, strip packings and meshes.

use crate::geometry::{tiles, Mesh, Orientation, StripPacking, Window};
use crate::instance::HostInstance;
use std::fmt::Write;

const CELL: usize = 12;
const MARGIN: usize = 10;

/// Parses the last `PACKING` line of each family from a trace.
pub fn parse_packings(trace: &str) -> Result<Vec<StripPacking>, String> {
    let mut out: Vec<StripPacking> = Vec::new();
    for (k, line) in trace.lines().enumerate() {
        let Some(rest) = line.strip_prefix("PACKING ") else { continue };
        let pk = parse_packing(rest).map_err(|e| format!("line {}: {e}", k + 1))?;
        out.retain(|p| p.orientation != pk.orientation);
        out.push(pk);
    }
    out.sort_by_key(|p| p.orientation == Orientation::Row);
    Ok(out)
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once('-').ok_or_else(|| format!("bad range `{s}`"))?;
    let num = |t: &str| t.parse::<usize>().map_err(|_| format!("bad integer `{t}`"));
    Ok((num(a)?, num(b)?))
}

fn parse_packing(rest: &str) -> Result<StripPacking, String> {
    let mut fields = std::collections::BTreeMap::new();
    for tok in rest.split_whitespace() {
        let (k, v) = tok.split_once('=').ok_or_else(|| format!("bad field `{tok}`"))?;
        fields.insert(k, v);
    }
    let get = |k: &str| fields.get(k).copied().ok_or_else(|| format!("missing `{k}`"));
    let orientation = match get("family")? {
        "column" => Orientation::Column,
        "row" => Orientation::Row,
        other => return Err(format!("unknown family `{other}`")),
    };
    let num = |k: &str| get(k)?.parse::<usize>().map_err(|_| format!("bad `{k}`"));
    let (rows, cols) = get("window")?.split_once(',').ok_or("bad window")?;
    let rows = parse_range(rows.strip_prefix("rows").ok_or("bad window")?)?;
    let cols = parse_range(cols.strip_prefix("cols").ok_or("bad window")?)?;
    let frames = match get("frames")? {
        "" => Vec::new(),
        f => f.split(',').map(parse_range).collect::<Result<Vec<_>, _>>()?,
    };
    Ok(StripPacking { window: Window::new(rows, cols), orientation, p: num("p")?, b: num("b")?, frames })
}

fn x(c: usize) -> usize {
    MARGIN + c * CELL
}

fn y(r: usize) -> usize {
    MARGIN + r * CELL
}

fn band(svg: &mut String, pk: &StripPacking, lo: usize, hi: usize, fill: &str) {
    let w = pk.window;
    let (r0, r1, c0, c1) = match pk.orientation {
        Orientation::Column => (w.rows.0, w.rows.1, lo, hi),
        Orientation::Row => (lo, hi, w.cols.0, w.cols.1),
    };
    let _ = writeln!(
        svg,
        r##"<rect x="{}" y="{}" width="{}" height="{}" fill="{fill}" fill-opacity="0.35"/>"##,
        x(c0),
        y(r0),
        (c1 - c0) * CELL,
        (r1 - r0) * CELL
    );
}

/// Renders the base grid with vertex markers and face-color glyphs, then
/// strips shaded by role, tiles outlined and mesh paths stroked on top.
pub fn render_svg(inst: &HostInstance, mesh: Option<&Mesh>, packings: &[StripPacking]) -> String {
    let (rows, cols) = (inst.d_r(), inst.d_c());
    let width = 2 * MARGIN + cols.saturating_sub(1) * CELL;
    let height = 2 * MARGIN + rows.saturating_sub(1) * CELL;
    let mut svg = String::new();
    let _ = writeln!(svg, r##"<?xml version="1.0" encoding="UTF-8"?>"##);
    let _ = writeln!(
        svg,
        r##"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(svg, r##"<rect width="{width}" height="{height}" fill="white"/>"##
    );
    let _ = writeln!(svg, r##"<g id="strips">"##);
    for pk in packings {
        for &(lo, hi) in &pk.frames {
            if pk.p > 0 && hi >= lo + 2 * pk.p {
                band(&mut svg, pk, lo, lo + pk.p, "#4a90d9");
                band(&mut svg, pk, hi - pk.p, hi, "#4a90d9");
                band(&mut svg, pk, lo + pk.p, hi - pk.p, "#7bc47f");
            } else {
                band(&mut svg, pk, lo, hi, "#7bc47f");
            }
        }
    }
    let _ = writeln!(svg, "</g>");
    let _ = writeln!(svg, r##"<g id="tiles" fill="none" stroke="#b5651d" stroke-dasharray="3,2">"##);
    if let [a, b] = packings {
        for i in 0..a.len() {
            let Ok(ts) = tiles(b, a.orientation, a.padded(i), b.p) else { continue };
            for t in ts {
                let _ = writeln!(
                    svg,
                    r##"<rect x="{}" y="{}" width="{}" height="{}"/>"##,
                    x(t.rect.c0),
                    y(t.rect.r0),
                    (t.rect.c1 - t.rect.c0) * CELL,
                    (t.rect.r1 - t.rect.r0) * CELL
                );
            }
        }
    }
    let _ = writeln!(svg, "</g>");
    let _ = writeln!(svg, r##"<g id="grid" stroke="#c8c8c8" stroke-width="1">"##);
    for r in 0..rows {
        let _ = writeln!(svg, r##"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"##, x(0), y(r), x(cols - 1), y(r));
    }
    for c in 0..cols {
        let _ = writeln!(svg, r##"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"##, x(c), y(0), x(c), y(rows - 1));
    }
    let _ = writeln!(svg, "</g>");
    let _ = writeln!(svg, r##"<g id="vertices" fill="#888888">"##);
    for r in 0..rows {
        for c in 0..cols {
            let colors = inst.vertex_color(r, c);
            if colors.is_empty() {
                let _ = writeln!(svg, r##"<circle cx="{}" cy="{}" r="1.5"/>"##, x(c), y(r));
            } else {
                let _ = writeln!(
                    svg,
                    r##"<circle cx="{}" cy="{}" r="3" fill="#d0021b"><title>{colors}</title></circle>"##,
                    x(c),
                    y(r)
                );
            }
        }
    }
    let _ = writeln!(svg, "</g>");
    let _ =
        writeln!(svg, r##"<g id="faces" font-family="monospace" font-size="6" text-anchor="middle" fill="#333333">"##);
    for r in 0..rows.saturating_sub(1) {
        for c in 0..cols.saturating_sub(1) {
            let colors = inst.face_colors(r, c);
            if !colors.is_empty() {
                let label: Vec<String> = colors.iter().map(|k| k.to_string()).collect();
                let _ = writeln!(
                    svg,
                    r##"<text x="{}" y="{}">{}</text>"##,
                    x(c) + CELL / 2,
                    y(r) + CELL / 2 + 2,
                    label.join(",")
                );
            }
        }
    }
    let _ = writeln!(svg, "</g>");
    if let Some(mesh) = mesh {
        let _ = writeln!(svg, r##"<g id="mesh" fill="none" stroke-width="2">"##);
        for (paths, stroke) in [(&mesh.horizontals, "#d0021b"), (&mesh.verticals, "#1f4fbf")] {
            for p in paths {
                let pts: Vec<String> = p.iter().map(|v| format!("{},{}", x(v.col), y(v.row))).collect();
                let _ = writeln!(svg, r##"<polyline stroke="{stroke}" points="{}"/>"##, pts.join(" "));
            }
        }
        let _ = writeln!(svg, "</g>");
    }
    let _ = writeln!(svg, "</svg>");
    svg
}
