//! Windows, strips, padded packings and tiles.
//!
//! Frames are stored as absolute base-grid path indices, so restricting a
//! packing to a cropped window and lifting it back never renumbers anything.
//! For row strips, increasing row index is the left-to-right order.

use super::region::{Rect, Region};
use crate::instance::HostInstance;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Column,
    Row,
}

impl Orientation {
    pub fn other(self) -> Self {
        match self {
            Orientation::Column => Orientation::Row,
            Orientation::Row => Orientation::Column,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Orientation::Column => "column",
            Orientation::Row => "row",
        }
    }
}

/// An axis-aligned sub-grid given by inclusive base-path index ranges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Window {
    pub rows: (usize, usize),
    pub cols: (usize, usize),
}

impl Window {
    pub fn new(rows: (usize, usize), cols: (usize, usize)) -> Self {
        assert!(rows.0 < rows.1 && cols.0 < cols.1, "window must span at least one face each way");
        Window { rows, cols }
    }

    pub fn full(inst: &HostInstance) -> Self {
        Window::new((0, inst.d_r() - 1), (0, inst.d_c() - 1))
    }

    /// Index range along which strips of `orientation` are laid out.
    pub fn range(&self, orientation: Orientation) -> (usize, usize) {
        match orientation {
            Orientation::Column => self.cols,
            Orientation::Row => self.rows,
        }
    }

    /// Number of base paths available to strips of `orientation`.
    pub fn extent(&self, orientation: Orientation) -> usize {
        let (a, b) = self.range(orientation);
        b - a + 1
    }

    pub fn rect(&self) -> Rect {
        Rect::new(self.rows.0, self.rows.1, self.cols.0, self.cols.1)
    }

    pub fn contains(&self, other: &Window) -> bool {
        self.rows.0 <= other.rows.0
            && other.rows.1 <= self.rows.1
            && self.cols.0 <= other.cols.0
            && other.cols.1 <= self.cols.1
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StripError {
    #[error("strip of breadth {breadth} cannot be padded with k={k}, b={b}")]
    InsufficientBreadth { breadth: usize, k: usize, b: usize },
    #[error("trimming strip {index} by {p} leaves breadth {left} < 2")]
    TrimTooDeep { index: usize, p: usize, left: usize },
    #[error("packing is empty")]
    EmptyPacking,
    #[error("strip orientations must differ")]
    SameOrientation,
}

/// A frame `[lo, hi]` of consecutive base paths, `hi > lo`.
pub type Frame = (usize, usize);

pub fn breadth(frame: Frame) -> usize {
    frame.1 - frame.0 + 1
}

/// The region of the strip with `frame` in `window`: the compass of the
/// frame's boundary, spanning the full window in the other direction.
pub fn strip_rect(window: &Window, orientation: Orientation, frame: Frame) -> Rect {
    match orientation {
        Orientation::Column => Rect::new(window.rows.0, window.rows.1, frame.0, frame.1),
        Orientation::Row => Rect::new(frame.0, frame.1, window.cols.0, window.cols.1),
    }
}

pub fn strip_region(inst: &HostInstance, window: &Window, orientation: Orientation, frame: Frame) -> Region {
    Region::from_rect(inst, strip_rect(window, orientation, frame))
}

/// A frame split into a left buffer, core and right buffer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PaddedStrip {
    pub frame: Frame,
    pub p: usize,
}

impl PaddedStrip {
    pub fn left_buffer(&self) -> Option<Frame> {
        (self.p > 0).then(|| (self.frame.0, self.frame.0 + self.p - 1))
    }

    pub fn right_buffer(&self) -> Option<Frame> {
        (self.p > 0).then(|| (self.frame.1 + 1 - self.p, self.frame.1))
    }

    pub fn core(&self) -> Frame {
        (self.frame.0 + self.p, self.frame.1 - self.p)
    }

    /// Innermost path of the left buffer, or the first frame path when
    /// unpadded.
    pub fn inner_left(&self) -> usize {
        self.frame.0 + self.p.saturating_sub(1)
    }

    /// Innermost path of the right buffer, or the last frame path when
    /// unpadded.
    pub fn inner_right(&self) -> usize {
        self.frame.1 - self.p.saturating_sub(1)
    }
}

/// Splits `frame` into buffers of `k` paths and a core of at least `b` paths.
pub fn pad(frame: Frame, k: usize, b: usize) -> Result<PaddedStrip, StripError> {
    if breadth(frame) < 2 * k + b {
        return Err(StripError::InsufficientBreadth { breadth: breadth(frame), k, b });
    }
    Ok(PaddedStrip { frame, p: k })
}

/// Pairwise-disjoint strips of one orientation in left-to-right order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StripPacking {
    pub window: Window,
    pub orientation: Orientation,
    pub p: usize,
    pub b: usize,
    pub frames: Vec<Frame>,
}

impl StripPacking {
    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    pub fn padded(&self, i: usize) -> PaddedStrip {
        PaddedStrip { frame: self.frames[i], p: self.p }
    }

    pub fn rect(&self, i: usize) -> Rect {
        strip_rect(&self.window, self.orientation, self.frames[i])
    }

    /// Region of the `p`-core of strip `i`, viewed as a strip in this window.
    pub fn core_rect(&self, i: usize) -> Rect {
        strip_rect(&self.window, self.orientation, self.padded(i).core())
    }

    pub fn region(&self, inst: &HostInstance, i: usize) -> Region {
        Region::from_rect(inst, self.rect(i))
    }

    pub fn core_region(&self, inst: &HostInstance, i: usize) -> Region {
        Region::from_rect(inst, self.core_rect(i))
    }

    pub fn min_breadth(&self) -> Option<usize> {
        self.frames.iter().map(|&f| breadth(f)).min()
    }

    /// Same frames over another window.
    pub fn with_window(&self, window: Window) -> StripPacking {
        StripPacking { window, ..self.clone() }
    }

    /// Drops the strips at the given (sorted or unsorted) indices.
    pub fn without(&self, drop: &[usize]) -> StripPacking {
        let frames = self.frames.iter().enumerate().filter(|(i, _)| !drop.contains(i)).map(|(_, &f)| f).collect();
        StripPacking { frames, ..self.clone() }
    }
}

/// Replaces every strip by its `p`-core; breadth drops by exactly `2p`.
pub fn trim(pk: &StripPacking) -> Result<StripPacking, StripError> {
    let mut frames = Vec::with_capacity(pk.len());
    for (index, &f) in pk.frames.iter().enumerate() {
        let left = breadth(f).saturating_sub(2 * pk.p);
        if left < 2 {
            return Err(StripError::TrimTooDeep { index, p: pk.p, left });
        }
        frames.push((f.0 + pk.p, f.1 - pk.p));
    }
    Ok(StripPacking { frames, ..pk.clone() })
}

/// The smallest sub-window containing every frame of `pk`.
pub fn crop(window: &Window, pk: &StripPacking) -> Result<Window, StripError> {
    let first = pk.frames.first().ok_or(StripError::EmptyPacking)?;
    let last = pk.frames.last().unwrap();
    let span = (first.0, last.1);
    Ok(match pk.orientation {
        Orientation::Column => Window::new(window.rows, span),
        Orientation::Row => Window::new(span, window.cols),
    })
}

/// Reinterprets a packing over a larger window.
pub fn lift(outer: &Window, pk: &StripPacking) -> StripPacking {
    assert!(outer.contains(&pk.window), "lift target must contain the packing window");
    pk.with_window(*outer)
}

/// Kinds of tiles carved out of a strip by a crossing packing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TileKind {
    /// Inside crossing strip `j`.
    Z(usize),
    /// Between crossing strips `j` and `j + 1`.
    Between(usize, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Tile {
    pub kind: TileKind,
    pub rect: Rect,
}

impl Tile {
    /// Tiles are interiors of their bounding cycles.
    pub fn region(&self, inst: &HostInstance) -> Region {
        Region::from_rect(inst, self.rect).into_interior()
    }
}

/// Rectangle with `s` spanning `[lo, hi]` across and the crossing direction
/// spanning `[clo, chi]`.
fn oriented_rect(s_orientation: Orientation, lo: usize, hi: usize, clo: usize, chi: usize) -> Rect {
    match s_orientation {
        Orientation::Column => Rect::new(clo, chi, lo, hi),
        Orientation::Row => Rect::new(lo, hi, clo, chi),
    }
}

/// The tiles of strip `s` (orientation opposite to `pkz`) with respect to the
/// `k`-padded crossing packing `pkz`, in order: a tile inside each crossing
/// strip between its innermost buffer paths, alternating with the tiles
/// between consecutive crossing strips. All tiles lie between the innermost
/// buffer paths of `s`.
pub fn tiles(
    pkz: &StripPacking,
    s_orientation: Orientation,
    s: PaddedStrip,
    k: usize,
) -> Result<Vec<Tile>, StripError> {
    if pkz.orientation == s_orientation {
        return Err(StripError::SameOrientation);
    }
    if pkz.is_empty() {
        return Err(StripError::EmptyPacking);
    }
    let (lo, hi) = (s.inner_left(), s.inner_right());
    if hi <= lo {
        return Err(StripError::InsufficientBreadth { breadth: breadth(s.frame), k: s.p, b: 0 });
    }
    let mut out = Vec::with_capacity(2 * pkz.len() - 1);
    for (j, &f) in pkz.frames.iter().enumerate() {
        let z = PaddedStrip { frame: f, p: k };
        if z.inner_right() <= z.inner_left() {
            return Err(StripError::InsufficientBreadth { breadth: breadth(f), k, b: 0 });
        }
        if j > 0 {
            let prev = pkz.frames[j - 1];
            out.push(Tile {
                kind: TileKind::Between(j - 1, j),
                rect: oriented_rect(s_orientation, lo, hi, prev.1, f.0),
            });
        }
        out.push(Tile {
            kind: TileKind::Z(j),
            rect: oriented_rect(s_orientation, lo, hi, z.inner_left(), z.inner_right()),
        });
    }
    Ok(out)
}

/// Union of the regions of the first and last strips of both packings.
pub fn boundary_strips(inst: &HostInstance, pkc: &StripPacking, pkr: &StripPacking) -> Result<Region, StripError> {
    let mut out = Region::empty(inst);
    for pk in [pkc, pkr] {
        if pk.is_empty() {
            return Err(StripError::EmptyPacking);
        }
        out.union_with(&pk.region(inst, 0));
        out.union_with(&pk.region(inst, pk.len() - 1));
    }
    Ok(out.into_compass_set())
}
