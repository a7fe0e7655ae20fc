//! Colorful grid instances: data model, text format and generators.

mod cmi;
mod generate;

pub use cmi::{parse_instance, write_instance};
pub use generate::{gen_adversarial, gen_all_colored, gen_random, gen_random_rect, AdversarialMode};

use crate::color::{ColorSet, MAX_COLORS};
use std::collections::BTreeMap;
use thiserror::Error;

/// A vertex of the base grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridVertex {
    pub row: usize,
    pub col: usize,
}

impl GridVertex {
    pub const fn new(row: usize, col: usize) -> Self {
        GridVertex { row, col }
    }

    pub fn is_adjacent(&self, other: &GridVertex) -> bool {
        self.row.abs_diff(other.row) + self.col.abs_diff(other.col) == 1
    }
}

/// A bridge attached inside the base-grid face `face`, whose corners are
/// `(r,c)`, `(r,c+1)`, `(r+1,c)` and `(r+1,c+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bridge {
    pub id: String,
    pub face: (usize, usize),
    pub colors: ColorSet,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InstanceError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("line {line}: color {color} out of range for q={q}")]
    ColorOutOfRange { line: usize, color: usize, q: usize },
    #[error("line {line}: coordinate ({row},{col}) out of range")]
    CoordinateOutOfRange { line: usize, row: usize, col: usize },
    #[error("line {line}: duplicate bridge id {id}")]
    DuplicateBridge { line: usize, id: String },
    #[error("line {line}: duplicate vertex color for ({row},{col})")]
    DuplicateVertex { line: usize, row: usize, col: usize },
    #[error("q={0} exceeds the supported maximum of {MAX_COLORS}")]
    TooManyColors(usize),
    #[error("grid dimensions {0}x{1} are below 2x2")]
    BadDims(usize, usize),
}

/// Per-element palettes, deduplicated so that region queries can skip
/// palettes they have already merged.
#[derive(Clone, Debug)]
struct ColorIndex {
    palettes: Vec<ColorSet>,
    face: Vec<u32>,
    vertex: Vec<u32>,
}

/// A `d_r x d_c` base grid with colored vertices and face-attached bridges.
#[derive(Clone, Debug)]
pub struct HostInstance {
    d_r: usize,
    d_c: usize,
    q: usize,
    vertex_colors: BTreeMap<GridVertex, ColorSet>,
    bridges: Vec<Bridge>,
    index: ColorIndex,
}

impl PartialEq for HostInstance {
    fn eq(&self, other: &Self) -> bool {
        self.d_r == other.d_r
            && self.d_c == other.d_c
            && self.q == other.q
            && self.vertex_colors == other.vertex_colors
            && self.bridges == other.bridges
    }
}

impl Eq for HostInstance {}

impl HostInstance {
    /// Validates and builds an instance. Empty vertex palettes are dropped and
    /// bridges are kept sorted by id.
    pub fn new(
        d_r: usize,
        d_c: usize,
        q: usize,
        vertex_colors: BTreeMap<GridVertex, ColorSet>,
        mut bridges: Vec<Bridge>,
    ) -> Result<Self, InstanceError> {
        if q > MAX_COLORS {
            return Err(InstanceError::TooManyColors(q));
        }
        if d_r < 2 || d_c < 2 {
            return Err(InstanceError::BadDims(d_r, d_c));
        }
        let check = |set: &ColorSet| match set.largest() {
            Some(c) if c > q => Err(InstanceError::ColorOutOfRange { line: 0, color: c, q }),
            _ => Ok(()),
        };
        for (v, set) in &vertex_colors {
            if v.row >= d_r || v.col >= d_c {
                return Err(InstanceError::CoordinateOutOfRange { line: 0, row: v.row, col: v.col });
            }
            check(set)?;
        }
        for b in &bridges {
            if b.face.0 + 1 >= d_r || b.face.1 + 1 >= d_c {
                return Err(InstanceError::CoordinateOutOfRange { line: 0, row: b.face.0, col: b.face.1 });
            }
            check(&b.colors)?;
        }
        bridges.sort_by(|a, b| a.id.cmp(&b.id));
        if let Some(w) = bridges.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(InstanceError::DuplicateBridge { line: 0, id: w[0].id.clone() });
        }
        let vertex_colors: BTreeMap<_, _> = vertex_colors.into_iter().filter(|(_, s)| !s.is_empty()).collect();
        let index = build_index(d_r, d_c, &vertex_colors, &bridges);
        Ok(HostInstance { d_r, d_c, q, vertex_colors, bridges, index })
    }

    /// A colorless `d_r x d_c` instance.
    pub fn empty(d_r: usize, d_c: usize, q: usize) -> Result<Self, InstanceError> {
        Self::new(d_r, d_c, q, BTreeMap::new(), Vec::new())
    }

    pub fn d_r(&self) -> usize {
        self.d_r
    }

    pub fn d_c(&self) -> usize {
        self.d_c
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn vertex_colors(&self) -> &BTreeMap<GridVertex, ColorSet> {
        &self.vertex_colors
    }

    pub fn bridges(&self) -> &[Bridge] {
        &self.bridges
    }

    pub fn num_faces(&self) -> usize {
        (self.d_r - 1) * (self.d_c - 1)
    }

    pub fn num_vertices(&self) -> usize {
        self.d_r * self.d_c
    }

    pub fn contains_vertex(&self, v: GridVertex) -> bool {
        v.row < self.d_r && v.col < self.d_c
    }

    /// Union of the palettes of all bridges in face `(r, c)`.
    pub fn face_colors(&self, r: usize, c: usize) -> &ColorSet {
        &self.index.palettes[self.face_palette_id(r, c) as usize]
    }

    pub fn vertex_color(&self, r: usize, c: usize) -> &ColorSet {
        &self.index.palettes[self.vertex_palette_id(r, c) as usize]
    }

    /// Palette id of face `(r, c)`; id 0 is the empty palette.
    pub fn face_palette_id(&self, r: usize, c: usize) -> u32 {
        self.index.face[r * (self.d_c - 1) + c]
    }

    /// Palette id of vertex `(r, c)`; id 0 is the empty palette.
    pub fn vertex_palette_id(&self, r: usize, c: usize) -> u32 {
        self.index.vertex[r * self.d_c + c]
    }

    pub fn palette(&self, id: u32) -> &ColorSet {
        &self.index.palettes[id as usize]
    }

    pub fn num_palettes(&self) -> usize {
        self.index.palettes.len()
    }

    /// Every color carried anywhere in the instance.
    pub fn all_colors(&self) -> ColorSet {
        self.index.palettes.iter().fold(ColorSet::empty(), |acc, p| acc.union(p))
    }
}

fn build_index(
    d_r: usize,
    d_c: usize,
    vertex_colors: &BTreeMap<GridVertex, ColorSet>,
    bridges: &[Bridge],
) -> ColorIndex {
    let mut palettes = vec![ColorSet::empty()];
    let mut ids: BTreeMap<ColorSet, u32> = BTreeMap::new();
    ids.insert(ColorSet::empty(), 0);
    let mut intern = |set: ColorSet, palettes: &mut Vec<ColorSet>| -> u32 {
        *ids.entry(set).or_insert_with(|| {
            palettes.push(set);
            (palettes.len() - 1) as u32
        })
    };
    let mut face_sets: BTreeMap<usize, ColorSet> = BTreeMap::new();
    for b in bridges {
        face_sets.entry(b.face.0 * (d_c - 1) + b.face.1).or_default().union_with(&b.colors);
    }
    let mut face = vec![0u32; (d_r - 1) * (d_c - 1)];
    for (k, set) in face_sets {
        face[k] = intern(set, &mut palettes);
    }
    let mut vertex = vec![0u32; d_r * d_c];
    for (v, set) in vertex_colors {
        vertex[v.row * d_c + v.col] = intern(*set, &mut palettes);
    }
    ColorIndex { palettes, face, vertex }
}
