//! Weaving an `n x m` mesh through confined packings so that every cell of
//! its middle row collects the full palette.
//!
//! Lane layout, with `p >= max(n/2 + m, 2m)`, column strips `[a_i, e_i]`,
//! row strips `[f_j, g_j]` and "up" meaning increasing row index:
//!
//! * path `h` (1-based) climbs column strip `i` on lane `a_i + m + h - 1`;
//! * it detours right of a tile on lane `e_i - p + h` in the right buffer;
//! * it descends the corridor after strip `i` on lane `e_i - h + 1`;
//! * it detours into the next strip's left buffer on lane `a_{i+1} + m - h`.
//!
//! Detour rows sit in the row buffers next to the tile being wrapped, at
//! offsets `h - 1` (climbing) or `m - h` (descending) from the tile's edge, so
//! wrapping paths nest without crossing.

use super::confine::ConfinedPackings;
use super::trace::Trace;
use super::HomogenizeError;
use crate::color::ColorSet;
use crate::geometry::{cycle_interior, region_colors, Mesh, MeshViolation, Rect, StripPacking};
use crate::instance::{GridVertex, HostInstance};

/// A woven mesh whose middle-row cells each collected the full palette.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RainbowMesh {
    pub mesh: Mesh,
    /// Boundary cycles of the `m - 1` cells between horizontals `n/2 - 1` and
    /// `n/2` (0-based).
    pub middle_row_cells: Vec<Vec<GridVertex>>,
    /// Colors collected into each middle-row cell from captured tiles.
    pub collected: Vec<ColorSet>,
    pub captures: usize,
    pub trace: Trace,
}

impl RainbowMesh {
    /// Wraps an existing valid mesh, with nothing collected.
    pub fn from_mesh(inst: &HostInstance, mesh: Mesh) -> Result<RainbowMesh, MeshViolation> {
        mesh.validate(inst)?;
        let middle_row_cells = middle_cells(inst, &mesh);
        let collected = vec![ColorSet::empty(); middle_row_cells.len()];
        Ok(RainbowMesh { mesh, middle_row_cells, collected, captures: 0, trace: Trace::default() })
    }
}

pub(crate) fn middle_cells(inst: &HostInstance, mesh: &Mesh) -> Vec<Vec<GridVertex>> {
    let i = mesh.n() / 2;
    if i == 0 || mesh.m() < 2 {
        return Vec::new();
    }
    mesh.cell_cycles(inst).into_iter().filter(|((r, _), _)| *r == i - 1).map(|(_, c)| c).collect()
}

/// Incrementally built paths, extended by straight grid moves.
struct Walker {
    paths: Vec<Vec<GridVertex>>,
}

impl Walker {
    fn pos(&self, h: usize) -> GridVertex {
        *self.paths[h - 1].last().unwrap()
    }

    /// Moves path `h` in a straight line to `(row, col)`.
    fn go(&mut self, h: usize, row: usize, col: usize) -> Result<(), HomogenizeError> {
        let cur = self.pos(h);
        if cur.row != row && cur.col != col {
            return Err(HomogenizeError::Geometry(format!(
                "path {h} cannot move straight from ({},{}) to ({row},{col})",
                cur.row, cur.col
            )));
        }
        let path = &mut self.paths[h - 1];
        let (mut r, mut c) = (cur.row, cur.col);
        while (r, c) != (row, col) {
            if r < row {
                r += 1;
            } else if r > row {
                r -= 1;
            } else if c < col {
                c += 1;
            } else {
                c -= 1;
            }
            path.push(GridVertex::new(r, c));
        }
        Ok(())
    }
}

/// Smallest cell index (1-based) whose collected set misses a color of `tile`.
fn capture_cell(collected: &[ColorSet], tile: &ColorSet) -> Option<usize> {
    if tile.is_empty() {
        return None;
    }
    collected.iter().position(|c| !tile.is_subset(c)).map(|k| k + 1)
}

/// Weaves the mesh through `confined` and checks the middle row against the
/// regions actually enclosed.
pub fn weave_rainbow(
    inst: &HostInstance,
    confined: &ConfinedPackings,
    n: usize,
    m: usize,
) -> Result<RainbowMesh, HomogenizeError> {
    if n % 2 == 1 || n < 2 || m < 2 {
        return Err(HomogenizeError::Parameter(format!("rainbow mesh needs even n >= 2 and m >= 2, got {n}x{m}")));
    }
    let (cols, rows): (StripPacking, StripPacking) = confined.balanced.cropped();
    let p = cols.p;
    if p < (n / 2 + m).max(2 * m) || rows.p != p {
        return Err(HomogenizeError::Parameter(format!("padding {p} too small for a {n}x{m} mesh")));
    }
    if cols.is_empty() || rows.is_empty() {
        return Err(HomogenizeError::Insufficient {
            stage: "rainbow row".into(),
            missing: "strips to weave through".into(),
        });
    }
    for pk in [&cols, &rows] {
        if pk.min_breadth().unwrap() < 2 * p + 2 {
            return Err(HomogenizeError::Insufficient {
                stage: "rainbow row".into(),
                missing: format!(
                    "{} paths of {} strip breadth",
                    2 * p + 2 - pk.min_breadth().unwrap(),
                    pk.orientation.name()
                ),
            });
        }
    }
    let a = |i: usize| cols.frames[i].0;
    let e = |i: usize| cols.frames[i].1;
    let f = |j: usize| rows.frames[j].0;
    let g = |j: usize| rows.frames[j].1;
    let (nc, nr) = (cols.len(), rows.len());
    let up = |i: usize, h: usize| a(i) + m + h - 1;
    let up_detour = |i: usize, h: usize| e(i) - p + h;
    let down = |i: usize, h: usize| e(i) - h + 1;
    let down_detour = |i: usize, h: usize| a(i + 1) + m - h;
    let bottom = f(0);
    let top = g(nr - 1);

    let mut trace = Trace::default();
    let mut collected = vec![ColorSet::empty(); m - 1];
    let mut captures = 0;
    let mut walker = Walker { paths: (1..=m).map(|h| vec![GridVertex::new(bottom, up(0, h))]).collect() };

    for i in 0..nc {
        // Climb strip i past its tiles: inside row j, then between rows j and j+1.
        let (lo, hi) = (a(i) + p - 1, e(i) + 1 - p);
        for j in 0..nr {
            let mut tiles = vec![("Z", j, f(j) + p - 1, g(j) + 1 - p)];
            if j + 1 < nr {
                tiles.push(("B", j, g(j), f(j + 1)));
            }
            for (kind, jj, y_lo, y_hi) in tiles {
                let colors = Rect::new(y_lo, y_hi, lo, hi).colors(inst, false);
                let Some(k) = capture_cell(&collected, &colors) else { continue };
                collected[k - 1].union_with(&colors);
                captures += 1;
                trace.push(format!("CAPTURE tile=col{i}:{kind}{jj} cell={k}"));
                for h in k + 1..=m {
                    let (dep, ret) = (y_lo + 1 - h, y_hi + h - 1);
                    walker.go(h, dep, up(i, h))?;
                    walker.go(h, dep, up_detour(i, h))?;
                    walker.go(h, ret, up_detour(i, h))?;
                    walker.go(h, ret, up(i, h))?;
                }
            }
        }
        if i + 1 == nc {
            break;
        }
        // Turn clockwise into the corridor after strip i.
        for h in 1..=m {
            walker.go(h, top + 1 - h, up(i, h))?;
            walker.go(h, top + 1 - h, down(i, h))?;
        }
        // Descend the corridor past the tiles between strips i and i+1.
        for j in (0..nr).rev() {
            let (y_lo, y_hi) = (f(j) + p - 1, g(j) + 1 - p);
            let colors = Rect::new(y_lo, y_hi, e(i), a(i + 1)).colors(inst, false);
            let Some(k) = capture_cell(&collected, &colors) else { continue };
            collected[k - 1].union_with(&colors);
            captures += 1;
            trace.push(format!("CAPTURE tile=gap{i}:Z{j} cell={k}"));
            for h in 1..=k {
                let (dep, ret) = (y_hi + m - h, y_lo - (m - h));
                walker.go(h, dep, down(i, h))?;
                walker.go(h, dep, down_detour(i, h))?;
                walker.go(h, ret, down_detour(i, h))?;
                walker.go(h, ret, down(i, h))?;
            }
        }
        // Turn counterclockwise into strip i+1.
        for h in 1..=m {
            walker.go(h, bottom + m - h, down(i, h))?;
            walker.go(h, bottom + m - h, up(i + 1, h))?;
        }
    }
    for h in 1..=m {
        walker.go(h, top, up(nc - 1, h))?;
    }
    let half = n / 2;
    let mut horizontals = Vec::with_capacity(n);
    for t in 0..half {
        horizontals.push((1..=m).map(|h| GridVertex::new(bottom + t, up(0, h))).collect::<Vec<_>>());
    }
    for t in 0..half {
        horizontals.push((1..=m).map(|h| GridVertex::new(top + 1 - half + t, up(nc - 1, h))).collect::<Vec<_>>());
    }
    // Consecutive lanes are adjacent columns, so each horizontal is a grid path.
    let mesh = Mesh { horizontals, verticals: walker.paths };
    mesh.validate(inst).map_err(|v| HomogenizeError::Geometry(format!("rainbow mesh: {v}")))?;
    let middle_row_cells = middle_cells(inst, &mesh);
    let compass = mesh.compass_colors(inst)?;
    for (k, cell) in middle_row_cells.iter().enumerate() {
        let have = region_colors(inst, &cycle_interior(inst, cell)?, true);
        let missing = compass.difference(&have);
        if !missing.is_empty() {
            return Err(HomogenizeError::Insufficient {
                stage: "rainbow row".into(),
                missing: format!("cell {} lacks {missing}", k + 1),
            });
        }
    }
    trace.push(format!("RAINBOW mesh={n}x{m} captures={captures} strips={nc},{nr}"));
    Ok(RainbowMesh { mesh, middle_row_cells, collected, captures, trace })
}
