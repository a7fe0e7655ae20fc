//! Face/vertex regions of the base grid and their color queries.

use crate::color::ColorSet;
use crate::instance::{GridVertex, HostInstance};
use thiserror::Error;

/// A dense bitset over a `rows x cols` array.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitGrid {
    rows: usize,
    cols: usize,
    words: Vec<u64>,
}

impl BitGrid {
    pub fn new(rows: usize, cols: usize) -> Self {
        BitGrid { rows, cols, words: vec![0; (rows * cols).div_ceil(64)] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        let k = r * self.cols + c;
        self.words[k / 64] >> (k % 64) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize) {
        let k = r * self.cols + c;
        self.words[k / 64] |= 1 << (k % 64);
    }

    pub fn clear(&mut self, r: usize, c: usize) {
        let k = r * self.cols + c;
        self.words[k / 64] &= !(1 << (k % 64));
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union_with(&mut self, other: &BitGrid) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &BitGrid) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn subtract(&mut self, other: &BitGrid) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn is_disjoint(&self, other: &BitGrid) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// Set cells in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let cols = self.cols;
        self.words.iter().enumerate().flat_map(move |(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let k = w * 64 + rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some((k / cols, k % cols))
            })
        })
    }
}

/// An axis-aligned rectangle of the grid given by inclusive vertex ranges,
/// with `r0 < r1` and `c0 < c1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rect {
    pub r0: usize,
    pub r1: usize,
    pub c0: usize,
    pub c1: usize,
}

impl Rect {
    pub fn new(r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        debug_assert!(r0 < r1 && c0 < c1, "degenerate rectangle {r0}..{r1} x {c0}..{c1}");
        Rect { r0, r1, c0, c1 }
    }

    pub fn face_count(&self) -> usize {
        (self.r1 - self.r0) * (self.c1 - self.c0)
    }

    /// The boundary cycle, clockwise from the top-left corner in (row, col) terms.
    pub fn cycle(&self) -> Vec<GridVertex> {
        let mut out = Vec::new();
        for c in self.c0..self.c1 {
            out.push(GridVertex::new(self.r0, c));
        }
        for r in self.r0..self.r1 {
            out.push(GridVertex::new(r, self.c1));
        }
        for c in (self.c0 + 1..=self.c1).rev() {
            out.push(GridVertex::new(self.r1, c));
        }
        for r in (self.r0 + 1..=self.r1).rev() {
            out.push(GridVertex::new(r, self.c0));
        }
        out
    }

    /// Colors of the enclosed faces and vertices, plus the boundary cycle's
    /// vertices when `include_boundary` is set.
    pub fn colors(&self, inst: &HostInstance, include_boundary: bool) -> ColorSet {
        let mut acc = PaletteAccumulator::new(inst);
        for r in self.r0..self.r1 {
            for c in self.c0..self.c1 {
                acc.add(inst.face_palette_id(r, c));
            }
        }
        let (vr, vc) = if include_boundary {
            (self.r0..=self.r1, self.c0..=self.c1)
        } else {
            (self.r0 + 1..=self.r1 - 1, self.c0 + 1..=self.c1 - 1)
        };
        for r in vr {
            for c in vc.clone() {
                acc.add(inst.vertex_palette_id(r, c));
            }
        }
        acc.finish()
    }
}

/// Unions palettes by id, merging each distinct palette once.
struct PaletteAccumulator<'a> {
    inst: &'a HostInstance,
    seen: Vec<bool>,
    acc: ColorSet,
}

impl<'a> PaletteAccumulator<'a> {
    fn new(inst: &'a HostInstance) -> Self {
        PaletteAccumulator { inst, seen: vec![false; inst.num_palettes()], acc: ColorSet::empty() }
    }

    fn add(&mut self, id: u32) {
        if id != 0 && !self.seen[id as usize] {
            self.seen[id as usize] = true;
            self.acc.union_with(self.inst.palette(id));
        }
    }

    fn finish(self) -> ColorSet {
        self.acc
    }
}

/// A set of faces and interior vertices, with the bounding cycle's vertices
/// kept separately so that compass and interior queries share one value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub faces: BitGrid,
    pub vertices: BitGrid,
    pub boundary: BitGrid,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RegionError {
    #[error("cycle has fewer than four vertices")]
    TooShort,
    #[error("cycle vertex ({0},{1}) is outside the grid")]
    OutOfRange(usize, usize),
    #[error("cycle is not closed along grid edges at position {0}")]
    NotClosed(usize),
    #[error("cycle repeats vertex ({0},{1})")]
    NotSimple(usize, usize),
}

impl Region {
    pub fn empty(inst: &HostInstance) -> Self {
        Region {
            faces: BitGrid::new(inst.d_r() - 1, inst.d_c() - 1),
            vertices: BitGrid::new(inst.d_r(), inst.d_c()),
            boundary: BitGrid::new(inst.d_r(), inst.d_c()),
        }
    }

    /// The compass of a rectangle: enclosed faces, interior vertices and the
    /// boundary cycle.
    pub fn from_rect(inst: &HostInstance, rect: Rect) -> Self {
        let mut out = Self::empty(inst);
        for r in rect.r0..=rect.r1 {
            for c in rect.c0..=rect.c1 {
                if r < rect.r1 && c < rect.c1 {
                    out.faces.set(r, c);
                }
                if r == rect.r0 || r == rect.r1 || c == rect.c0 || c == rect.c1 {
                    out.boundary.set(r, c);
                } else {
                    out.vertices.set(r, c);
                }
            }
        }
        out
    }

    /// Folds the boundary into the vertex set, giving plain set semantics for
    /// unions, intersections and differences of compasses.
    pub fn into_compass_set(mut self) -> Self {
        self.vertices.union_with(&self.boundary);
        self.boundary = BitGrid::new(self.boundary.rows(), self.boundary.cols());
        self
    }

    /// Drops the boundary, leaving the interior.
    pub fn into_interior(mut self) -> Self {
        self.boundary = BitGrid::new(self.boundary.rows(), self.boundary.cols());
        self
    }

    pub fn union_with(&mut self, other: &Region) {
        self.faces.union_with(&other.faces);
        self.vertices.union_with(&other.vertices);
        self.boundary.union_with(&other.boundary);
    }

    pub fn intersect_with(&mut self, other: &Region) {
        self.faces.intersect_with(&other.faces);
        self.vertices.intersect_with(&other.vertices);
        self.boundary.intersect_with(&other.boundary);
    }

    pub fn subtract(&mut self, other: &Region) {
        self.faces.subtract(&other.faces);
        self.vertices.subtract(&other.vertices);
        self.boundary.subtract(&other.boundary);
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty() && self.vertices.is_empty() && self.boundary.is_empty()
    }
}

/// Union of bridge palettes over `region.faces` and vertex colors over
/// `region.vertices`, plus `region.boundary` when `include_boundary` is set.
pub fn region_colors(inst: &HostInstance, region: &Region, include_boundary: bool) -> ColorSet {
    let mut acc = PaletteAccumulator::new(inst);
    for (r, c) in region.faces.iter() {
        acc.add(inst.face_palette_id(r, c));
    }
    for (r, c) in region.vertices.iter() {
        acc.add(inst.vertex_palette_id(r, c));
    }
    if include_boundary {
        for (r, c) in region.boundary.iter() {
            acc.add(inst.vertex_palette_id(r, c));
        }
    }
    acc.finish()
}

/// Accepts a cycle with or without its first vertex repeated at the end and
/// checks that it is a simple closed grid walk.
pub fn normalize_cycle(inst: &HostInstance, cycle: &[GridVertex]) -> Result<Vec<GridVertex>, RegionError> {
    let mut cyc = cycle.to_vec();
    if cyc.len() > 1 && cyc.first() == cyc.last() {
        cyc.pop();
    }
    if cyc.len() < 4 {
        return Err(RegionError::TooShort);
    }
    let mut seen = BitGrid::new(inst.d_r(), inst.d_c());
    for (k, v) in cyc.iter().enumerate() {
        if !inst.contains_vertex(*v) {
            return Err(RegionError::OutOfRange(v.row, v.col));
        }
        if seen.get(v.row, v.col) {
            return Err(RegionError::NotSimple(v.row, v.col));
        }
        seen.set(v.row, v.col);
        if !v.is_adjacent(&cyc[(k + 1) % cyc.len()]) {
            return Err(RegionError::NotClosed(k));
        }
    }
    Ok(cyc)
}

/// The region enclosed by a simple grid cycle: faces not reachable from the
/// outer face without crossing a cycle edge, the grid vertices strictly inside,
/// and the cycle's own vertices as boundary.
pub fn cycle_interior(inst: &HostInstance, cycle: &[GridVertex]) -> Result<Region, RegionError> {
    let cyc = normalize_cycle(inst, cycle)?;
    let (fr, fc) = (inst.d_r() - 1, inst.d_c() - 1);
    // hwall[r][c]: edge (r,c)-(r,c+1); vwall[r][c]: edge (r,c)-(r+1,c).
    let mut hwall = BitGrid::new(inst.d_r(), fc);
    let mut vwall = BitGrid::new(fr, inst.d_c());
    let mut region = Region::empty(inst);
    for (k, a) in cyc.iter().enumerate() {
        let b = cyc[(k + 1) % cyc.len()];
        region.boundary.set(a.row, a.col);
        if a.row == b.row {
            hwall.set(a.row, a.col.min(b.col));
        } else {
            vwall.set(a.row.min(b.row), a.col);
        }
    }
    let mut reached = BitGrid::new(fr, fc);
    let mut stack = Vec::new();
    let push = |r: usize, c: usize, reached: &mut BitGrid, stack: &mut Vec<(usize, usize)>| {
        if !reached.get(r, c) {
            reached.set(r, c);
            stack.push((r, c));
        }
    };
    for c in 0..fc {
        if !hwall.get(0, c) {
            push(0, c, &mut reached, &mut stack);
        }
        if !hwall.get(fr, c) {
            push(fr - 1, c, &mut reached, &mut stack);
        }
    }
    for r in 0..fr {
        if !vwall.get(r, 0) {
            push(r, 0, &mut reached, &mut stack);
        }
        if !vwall.get(r, fc) {
            push(r, fc - 1, &mut reached, &mut stack);
        }
    }
    while let Some((r, c)) = stack.pop() {
        if r > 0 && !hwall.get(r, c) {
            push(r - 1, c, &mut reached, &mut stack);
        }
        if r + 1 < fr && !hwall.get(r + 1, c) {
            push(r + 1, c, &mut reached, &mut stack);
        }
        if c > 0 && !vwall.get(r, c) {
            push(r, c - 1, &mut reached, &mut stack);
        }
        if c + 1 < fc && !vwall.get(r, c + 1) {
            push(r, c + 1, &mut reached, &mut stack);
        }
    }
    for r in 0..fr {
        for c in 0..fc {
            if !reached.get(r, c) {
                region.faces.set(r, c);
                for (vr, vc) in [(r, c), (r, c + 1), (r + 1, c), (r + 1, c + 1)] {
                    if !region.boundary.get(vr, vc) {
                        region.vertices.set(vr, vc);
                    }
                }
            }
        }
    }
    Ok(region)
}
