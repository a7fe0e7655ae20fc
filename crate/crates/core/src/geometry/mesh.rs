//! Meshes: ordered horizontal and vertical path systems in the base grid.

use super::region::{cycle_interior, region_colors, BitGrid, Region, RegionError};
use crate::color::ColorSet;
use crate::instance::{GridVertex, HostInstance};
use std::fmt::{self, Write};
use thiserror::Error;

/// `n` horizontal and `m` vertical paths. Horizontal `i` is expected to meet
/// the verticals in index order from its first vertex to its last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mesh {
    pub horizontals: Vec<Vec<GridVertex>>,
    pub verticals: Vec<Vec<GridVertex>>,
}

/// The first violated mesh axiom, with witness indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeshViolation {
    pub axiom: &'static str,
    pub witness: String,
}

impl fmt::Display for MeshViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.axiom, self.witness)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MeshParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
}

fn violation(axiom: &'static str, witness: String) -> MeshViolation {
    MeshViolation { axiom, witness }
}

/// For each grid vertex, the index of the path of one family through it.
pub(crate) struct PathIndex {
    cols: usize,
    path: Vec<u32>,
    pos: Vec<u32>,
}

const NONE: u32 = u32::MAX;

impl PathIndex {
    pub(crate) fn new(inst: &HostInstance, paths: &[Vec<GridVertex>]) -> Self {
        let cols = inst.d_c();
        let mut path = vec![NONE; inst.num_vertices()];
        let mut pos = vec![NONE; inst.num_vertices()];
        for (i, p) in paths.iter().enumerate() {
            for (k, v) in p.iter().enumerate() {
                if inst.contains_vertex(*v) {
                    path[v.row * cols + v.col] = i as u32;
                    pos[v.row * cols + v.col] = k as u32;
                }
            }
        }
        PathIndex { cols, path, pos }
    }

    /// `(path index, position on that path)` of the path through `v`.
    pub(crate) fn get(&self, v: GridVertex) -> Option<(usize, usize)> {
        let k = v.row * self.cols + v.col;
        (self.path[k] != NONE).then(|| (self.path[k] as usize, self.pos[k] as usize))
    }
}

/// Checks that every path lies in the grid, uses grid edges, and is simple.
fn check_paths(inst: &HostInstance, paths: &[Vec<GridVertex>], family: &str) -> Result<(), MeshViolation> {
    for (i, p) in paths.iter().enumerate() {
        if p.is_empty() {
            return Err(violation("empty path", format!("{family} {i}")));
        }
        let mut seen = BitGrid::new(inst.d_r(), inst.d_c());
        for (k, v) in p.iter().enumerate() {
            if !inst.contains_vertex(*v) {
                return Err(violation("vertex out of range", format!("{family} {i} ({},{})", v.row, v.col)));
            }
            if seen.get(v.row, v.col) {
                return Err(violation("path not simple", format!("{family} {i} ({},{})", v.row, v.col)));
            }
            seen.set(v.row, v.col);
            if k > 0 && !p[k - 1].is_adjacent(v) {
                return Err(violation("not a grid path", format!("{family} {i} position {k}")));
            }
        }
    }
    Ok(())
}

fn check_disjoint(inst: &HostInstance, paths: &[Vec<GridVertex>], axiom: &'static str) -> Result<(), MeshViolation> {
    let mut owner = vec![NONE; inst.num_vertices()];
    for (i, p) in paths.iter().enumerate() {
        for v in p {
            let k = v.row * inst.d_c() + v.col;
            if owner[k] != NONE {
                return Err(violation(axiom, format!("{} {} at ({},{})", owner[k], i, v.row, v.col)));
            }
            owner[k] = i as u32;
        }
    }
    Ok(())
}

/// Checks that each path of `paths` meets every crossing path in one
/// contiguous run, in index order, starting on the first and ending on the last.
fn check_crossings(
    paths: &[Vec<GridVertex>],
    crossing: &PathIndex,
    count: usize,
    family: &str,
) -> Result<(), MeshViolation> {
    for (i, p) in paths.iter().enumerate() {
        let mut runs: Vec<usize> = Vec::new();
        let mut prev: Option<usize> = None;
        for v in p {
            let cur = crossing.get(*v).map(|(j, _)| j);
            if let Some(j) = cur {
                if prev != Some(j) {
                    runs.push(j);
                }
            }
            prev = cur;
        }
        for j in 0..count {
            let n = runs.iter().filter(|&&x| x == j).count();
            if n == 0 {
                return Err(violation("paths do not intersect", format!("{family} {i} crossing {j}")));
            }
            if n > 1 {
                return Err(violation("intersection not a path", format!("{family} {i} crossing {j}")));
            }
        }
        if let Some(k) = runs.windows(2).position(|w| w[0] > w[1]) {
            return Err(violation("crossing order", format!("{family} {i} crossings {} {}", runs[k], runs[k + 1])));
        }
        let first = crossing.get(p[0]).map(|(j, _)| j);
        let last = crossing.get(*p.last().unwrap()).map(|(j, _)| j);
        if first != Some(0) || last != Some(count - 1) {
            return Err(violation("wrong endpoints", format!("{family} {i}")));
        }
    }
    Ok(())
}

impl Mesh {
    pub fn n(&self) -> usize {
        self.horizontals.len()
    }

    pub fn m(&self) -> usize {
        self.verticals.len()
    }

    /// The grid rows and columns of `inst`.
    pub fn base(inst: &HostInstance) -> Mesh {
        let horizontals = (0..inst.d_r()).map(|r| (0..inst.d_c()).map(|c| GridVertex::new(r, c)).collect()).collect();
        let verticals = (0..inst.d_c()).map(|c| (0..inst.d_r()).map(|r| GridVertex::new(r, c)).collect()).collect();
        Mesh { horizontals, verticals }
    }

    /// `Ok` when all mesh axioms hold, otherwise the first violation found.
    pub fn validate(&self, inst: &HostInstance) -> Result<(), MeshViolation> {
        if self.n() == 0 || self.m() == 0 {
            return Err(violation("empty mesh", format!("{}x{}", self.n(), self.m())));
        }
        check_paths(inst, &self.horizontals, "horizontal")?;
        check_paths(inst, &self.verticals, "vertical")?;
        check_disjoint(inst, &self.horizontals, "horizontals not disjoint")?;
        check_disjoint(inst, &self.verticals, "verticals not disjoint")?;
        let hidx = PathIndex::new(inst, &self.horizontals);
        let vidx = PathIndex::new(inst, &self.verticals);
        check_crossings(&self.horizontals, &vidx, self.m(), "horizontal")?;
        check_crossings(&self.verticals, &hidx, self.n(), "vertical")?;
        Ok(())
    }

    /// Every vertex on some path of the mesh.
    pub fn vertex_set(&self, inst: &HostInstance) -> BitGrid {
        let mut out = BitGrid::new(inst.d_r(), inst.d_c());
        for v in self.horizontals.iter().chain(&self.verticals).flatten() {
            out.set(v.row, v.col);
        }
        out
    }

    /// The cycle bounded by horizontals `i0 < i1` and verticals `j0 < j1`.
    /// Assumes a valid mesh.
    pub fn block_cycle(&self, inst: &HostInstance, i0: usize, i1: usize, j0: usize, j1: usize) -> Vec<GridVertex> {
        let hidx = PathIndex::new(inst, &self.horizontals);
        let vidx = PathIndex::new(inst, &self.verticals);
        self.block_cycle_indexed(&hidx, &vidx, i0, i1, j0, j1)
    }

    pub(crate) fn block_cycle_indexed(
        &self,
        hidx: &PathIndex,
        vidx: &PathIndex,
        i0: usize,
        i1: usize,
        j0: usize,
        j1: usize,
    ) -> Vec<GridVertex> {
        let run = |path: &[GridVertex], idx: &PathIndex, target: usize| -> (usize, usize) {
            let mut lo = usize::MAX;
            let mut hi = 0;
            for (k, v) in path.iter().enumerate() {
                if idx.get(*v).map(|(j, _)| j) == Some(target) {
                    lo = lo.min(k);
                    hi = hi.max(k);
                }
            }
            (lo, hi)
        };
        let top = &self.horizontals[i0];
        let bottom = &self.horizontals[i1];
        let left = &self.verticals[j0];
        let right = &self.verticals[j1];
        let mut out: Vec<GridVertex> = Vec::new();
        let (_, e1) = run(top, vidx, j0);
        let (s2, _) = run(top, vidx, j1);
        out.extend_from_slice(&top[e1..=s2]);
        let t = vidx.get(top[s2]).unwrap().1;
        let (u1, _) = run(right, hidx, i1);
        out.extend_from_slice(&right[t + 1..=u1]);
        let x = hidx.get(right[u1]).unwrap().1;
        let (_, y2) = run(bottom, vidx, j0);
        out.extend(bottom[y2..x].iter().rev());
        let tb = vidx.get(bottom[y2]).unwrap().1;
        let tt = vidx.get(top[e1]).unwrap().1;
        out.extend(left[tt + 1..tb].iter().rev());
        out
    }

    /// The boundary cycle of cell `(i, j)`, between horizontals `i, i+1` and
    /// verticals `j, j+1`.
    pub fn cell_cycle(&self, inst: &HostInstance, i: usize, j: usize) -> Vec<GridVertex> {
        self.block_cycle(inst, i, i + 1, j, j + 1)
    }

    /// All cell cycles in row-major order.
    pub fn cell_cycles(&self, inst: &HostInstance) -> Vec<((usize, usize), Vec<GridVertex>)> {
        if self.n() < 2 || self.m() < 2 {
            return Vec::new();
        }
        let hidx = PathIndex::new(inst, &self.horizontals);
        let vidx = PathIndex::new(inst, &self.verticals);
        let mut out = Vec::new();
        for i in 0..self.n() - 1 {
            for j in 0..self.m() - 1 {
                out.push(((i, j), self.block_cycle_indexed(&hidx, &vidx, i, i + 1, j, j + 1)));
            }
        }
        out
    }

    /// The compass: everything enclosed by the perimeter, with the perimeter
    /// as boundary. A mesh with a single row or column has no enclosed area;
    /// its compass is its vertex set.
    pub fn compass(&self, inst: &HostInstance) -> Result<Region, RegionError> {
        if self.n() < 2 || self.m() < 2 {
            let mut reg = Region::empty(inst);
            reg.boundary = self.vertex_set(inst);
            return Ok(reg);
        }
        let perimeter = self.block_cycle(inst, 0, self.n() - 1, 0, self.m() - 1);
        cycle_interior(inst, &perimeter)
    }

    pub fn compass_colors(&self, inst: &HostInstance) -> Result<ColorSet, RegionError> {
        Ok(region_colors(inst, &self.compass(inst)?, true))
    }

    /// Serializes in the `mesh n m` text format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "mesh {} {}", self.n(), self.m());
        for (tag, paths) in [("h", &self.horizontals), ("v", &self.verticals)] {
            for (i, p) in paths.iter().enumerate() {
                let _ = write!(out, "{tag} {i}:");
                for v in p {
                    let _ = write!(out, " ({},{})", v.row, v.col);
                }
                out.push('\n');
            }
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Mesh, MeshParseError> {
        let err = |line: usize, msg: String| MeshParseError::Syntax { line, msg };
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'));
        let (hl, header) = lines.next().ok_or_else(|| err(1, "missing `mesh n m` header".into()))?;
        let dims: Vec<&str> = header.split_whitespace().collect();
        if dims.len() != 3 || dims[0] != "mesh" {
            return Err(err(hl + 1, "expected `mesh n m`".into()));
        }
        let parse = |s: &str, line: usize| s.parse::<usize>().map_err(|_| err(line, format!("bad integer `{s}`")));
        let (n, m) = (parse(dims[1], hl + 1)?, parse(dims[2], hl + 1)?);
        let mut horizontals = vec![None; n];
        let mut verticals = vec![None; m];
        for (k, line) in lines {
            let ln = k + 1;
            let (head, rest) = line.split_once(':').ok_or_else(|| err(ln, "expected `h i:` or `v j:`".into()))?;
            let head: Vec<&str> = head.split_whitespace().collect();
            if head.len() != 2 {
                return Err(err(ln, "expected `h i:` or `v j:`".into()));
            }
            let idx = parse(head[1], ln)?;
            let slot = match head[0] {
                "h" => horizontals.get_mut(idx),
                "v" => verticals.get_mut(idx),
                other => return Err(err(ln, format!("unknown path family `{other}`"))),
            }
            .ok_or_else(|| err(ln, format!("path index {idx} out of range")))?;
            if slot.is_some() {
                return Err(err(ln, format!("path {} {idx} listed twice", head[0])));
            }
            let mut path = Vec::new();
            for tok in rest.split_whitespace() {
                let inner = tok
                    .strip_prefix('(')
                    .and_then(|t| t.strip_suffix(')'))
                    .ok_or_else(|| err(ln, format!("bad vertex `{tok}`")))?;
                let (r, c) = inner.split_once(',').ok_or_else(|| err(ln, format!("bad vertex `{tok}`")))?;
                path.push(GridVertex::new(parse(r, ln)?, parse(c, ln)?));
            }
            *slot = Some(path);
        }
        let collect = |paths: Vec<Option<Vec<GridVertex>>>, tag: &str| {
            paths
                .into_iter()
                .enumerate()
                .map(|(i, p)| p.ok_or_else(|| err(hl + 1, format!("missing path {tag} {i}"))))
                .collect::<Result<Vec<_>, _>>()
        };
        Ok(Mesh { horizontals: collect(horizontals, "h")?, verticals: collect(verticals, "v")? })
    }

    /// Whether every vertex lies inside the host grid.
    pub fn fits(&self, inst: &HostInstance) -> bool {
        self.horizontals.iter().chain(&self.verticals).flatten().all(|v| inst.contains_vertex(*v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_mesh_shapes() {
        let inst = HostInstance::empty(2, 2, 0).unwrap();
        let m = Mesh::base(&inst);
        assert_eq!((m.n(), m.m()), (2, 2));
        assert!(m.validate(&inst).is_ok());
        let inst = HostInstance::empty(5, 7, 0).unwrap();
        let m = Mesh::base(&inst);
        assert_eq!((m.n(), m.m()), (5, 7));
        assert!(m.horizontals.iter().all(|h| h.len() == 7));
        assert!(m.verticals.iter().all(|v| v.len() == 5));
        assert!(m.validate(&inst).is_ok());
    }

    #[test]
    fn detects_shared_horizontal_vertex() {
        let inst = HostInstance::empty(4, 4, 0).unwrap();
        let mut m = Mesh::base(&inst);
        m.horizontals[1][2] = GridVertex::new(2, 2);
        m.horizontals[1][1] = GridVertex::new(2, 1);
        let err = m.validate(&inst).unwrap_err();
        assert_eq!(err.axiom, "not a grid path");
        let mut m = Mesh::base(&inst);
        m.horizontals[1] =
            vec![GridVertex::new(1, 0), GridVertex::new(1, 1), GridVertex::new(2, 1), GridVertex::new(2, 2)];
        m.horizontals[1].push(GridVertex::new(2, 3));
        assert_eq!(m.validate(&inst).unwrap_err().axiom, "horizontals not disjoint");
    }

    #[test]
    fn text_round_trip_and_cells() {
        let inst = HostInstance::empty(4, 5, 0).unwrap();
        let m = Mesh::base(&inst);
        assert_eq!(Mesh::from_text(&m.to_text()).unwrap(), m);
        let cells = m.cell_cycles(&inst);
        assert_eq!(cells.len(), 12);
        for ((i, j), cyc) in cells {
            let reg = cycle_interior(&inst, &cyc).unwrap();
            assert_eq!(reg.faces.iter().collect::<Vec<_>>(), vec![(i, j)]);
        }
        let compass = m.compass(&inst).unwrap();
        assert_eq!(compass.faces.count(), 12);
        assert_eq!(compass.boundary.count(), 14);
    }
}
