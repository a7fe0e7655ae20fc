//! Uniformity, rainbow-row, homogeneity and tangle-truncation checks.

use super::flow::max_disjoint_paths;
use super::{violation, Verdict, Violation};
use crate::color::ColorSet;
use crate::geometry::{cycle_interior, region_colors, Mesh, PathIndex};
use crate::homogenizer::RainbowMesh;
use crate::instance::{GridVertex, HostInstance};

/// Largest host on which tangle witnesses are also certified by max-flow.
pub const FLOW_ORACLE_VERTICES: usize = 400;

fn structural(inst: &HostInstance, mesh: &Mesh) -> Result<ColorSet, Verdict> {
    if let Err(v) = mesh.validate(inst) {
        return Err(Verdict::from_violations(vec![violation("mesh", v.to_string())]));
    }
    mesh.compass_colors(inst).map_err(|e| Verdict::from_violations(vec![violation("compass", e.to_string())]))
}

type CellColors = Vec<((usize, usize), ColorSet)>;

/// Interior colors of every cell of `mesh`, row-major.
fn cell_interiors(inst: &HostInstance, mesh: &Mesh) -> Result<CellColors, Violation> {
    mesh.cell_cycles(inst)
        .into_iter()
        .map(|(ij, cycle)| {
            cycle_interior(inst, &cycle)
                .map(|reg| (ij, region_colors(inst, &reg, false)))
                .map_err(|e| violation("cell", format!("({},{}) {e}", ij.0, ij.1)))
        })
        .collect()
}

/// Every cell interior carries exactly the compass colors.
pub fn verify_uniform(inst: &HostInstance, mesh: &Mesh) -> Verdict {
    let want = match structural(inst, mesh) {
        Ok(w) => w,
        Err(v) => return v,
    };
    let cells = match cell_interiors(inst, mesh) {
        Ok(c) => c,
        Err(v) => return Verdict::from_violations(vec![v]),
    };
    let out = cells
        .into_iter()
        .filter(|(_, have)| *have != want)
        .map(|((i, j), have)| violation("uniform", format!("cell=({i},{j}) missing={}", want.difference(&have))))
        .collect();
    Verdict::from_violations(out)
}

/// Every middle-row cell's compass carries the mesh compass colors.
pub fn verify_rainbow_row(inst: &HostInstance, rm: &RainbowMesh) -> Verdict {
    let want = match structural(inst, &rm.mesh) {
        Ok(w) => w,
        Err(v) => return v,
    };
    let mesh = &rm.mesh;
    let mut out = Vec::new();
    if mesh.n() % 2 == 1 {
        out.push(violation("rainbow", format!("odd horizontal count {}", mesh.n())));
    }
    if rm.middle_row_cells.len() + 1 != mesh.m() {
        out.push(violation(
            "rainbow",
            format!("{} middle cells for {} verticals", rm.middle_row_cells.len(), mesh.m()),
        ));
    }
    for (k, cell) in rm.middle_row_cells.iter().enumerate() {
        match cycle_interior(inst, cell) {
            Ok(reg) => {
                let missing = want.difference(&region_colors(inst, &reg, true));
                if !missing.is_empty() {
                    out.push(violation("rainbow", format!("cell={} missing={missing}", k + 1)));
                }
            }
            Err(e) => out.push(violation("rainbow", format!("cell={} {e}", k + 1))),
        }
    }
    Verdict::from_violations(out)
}

/// With `I` the compass colors and `O` the rest of the palette: no compass
/// element carries an `O` color and every brick interior carries all of `I`.
pub fn verify_homogeneous_wall(inst: &HostInstance, wall: &Mesh) -> Verdict {
    let inside = match structural(inst, wall) {
        Ok(w) => w,
        Err(v) => return v,
    };
    let outside = ColorSet::full(inst.q()).difference(&inside);
    let mut out = Vec::new();
    let compass = wall.compass(inst).expect("compass computed above");
    let stray = region_colors(inst, &compass, true).intersection(&outside);
    if !stray.is_empty() {
        out.push(violation("homogeneous", format!("compass carries excluded {stray}")));
    }
    match cell_interiors(inst, wall) {
        Ok(cells) => {
            for ((i, j), have) in cells {
                let missing = inside.difference(&have);
                if !missing.is_empty() {
                    out.push(violation("homogeneous", format!("brick=({i},{j}) missing={missing}")));
                }
            }
        }
        Err(v) => out.push(v),
    }
    Verdict::from_violations(out)
}

/// Per new path, which old horizontals and verticals it meets.
struct Footprint {
    rows: Vec<bool>,
    cols: Vec<bool>,
}

fn footprint(path: &[GridVertex], hidx: &PathIndex, vidx: &PathIndex, old: &Mesh) -> Footprint {
    let mut fp = Footprint { rows: vec![false; old.n()], cols: vec![false; old.m()] };
    for v in path {
        if let Some((i, _)) = hidx.get(*v) {
            fp.rows[i] = true;
        }
        if let Some((j, _)) = vidx.get(*v) {
            fp.cols[j] = true;
        }
    }
    fp
}

fn union_count(a: &[bool], b: &[bool]) -> usize {
    a.iter().zip(b).filter(|(x, y)| **x || **y).count()
}

/// Pairs `(h, v)` of new paths whose union meets fewer than `n'` distinct old
/// horizontals or old verticals, with the counts met.
pub fn tangle_criterion(inst: &HostInstance, old: &Mesh, new: &Mesh) -> Vec<(usize, usize, usize, usize)> {
    let need = new.n().min(new.m());
    let hidx = PathIndex::new(inst, &old.horizontals);
    let vidx = PathIndex::new(inst, &old.verticals);
    let hs: Vec<_> = new.horizontals.iter().map(|p| footprint(p, &hidx, &vidx, old)).collect();
    let vs: Vec<_> = new.verticals.iter().map(|p| footprint(p, &hidx, &vidx, old)).collect();
    let mut out = Vec::new();
    for (i, h) in hs.iter().enumerate() {
        for (j, v) in vs.iter().enumerate() {
            let rows = union_count(&h.rows, &v.rows);
            let cols = union_count(&h.cols, &v.cols);
            if rows < need || cols < need {
                out.push((i, j, rows, cols));
            }
        }
    }
    out
}

/// Every pair of a new horizontal and a new vertical together meets at least
/// `n' = min(n, m)` distinct old horizontals and old verticals. On hosts with
/// at most [`FLOW_ORACLE_VERTICES`] vertices, each such union is also linked
/// to every old path by `n'` vertex-disjoint paths.
pub fn verify_tangle_truncation(inst: &HostInstance, old: &Mesh, new: &Mesh) -> Verdict {
    for (name, m) in [("old", old), ("new", new)] {
        if let Err(v) = m.validate(inst) {
            return Verdict::from_violations(vec![violation("mesh", format!("{name} {v}"))]);
        }
    }
    let need = new.n().min(new.m());
    let mut out: Vec<Violation> = tangle_criterion(inst, old, new)
        .into_iter()
        .map(|(i, j, rows, cols)| {
            violation("tangle", format!("h={i} v={j} old-horizontals={rows} old-verticals={cols} need={need}"))
        })
        .collect();
    if out.is_empty() && inst.num_vertices() <= FLOW_ORACLE_VERTICES {
        for (i, h) in new.horizontals.iter().enumerate() {
            for (j, v) in new.verticals.iter().enumerate() {
                let union: Vec<GridVertex> = h.iter().chain(v).copied().collect();
                for (family, paths) in [("horizontal", &old.horizontals), ("vertical", &old.verticals)] {
                    for (k, target) in paths.iter().enumerate() {
                        let flow = max_disjoint_paths(inst, &union, target, need);
                        if flow < need {
                            out.push(violation(
                                "tangle-flow",
                                format!("h={i} v={j} old-{family}={k} paths={flow} need={need}"),
                            ));
                        }
                    }
                }
            }
        }
    }
    Verdict::from_violations(out)
}
