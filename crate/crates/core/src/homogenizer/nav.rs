//! Subpath extraction along the paths of a valid mesh.

use super::HomogenizeError;
use crate::geometry::{Mesh, PathIndex};
use crate::instance::{GridVertex, HostInstance};

pub(crate) struct Nav<'a> {
    mesh: &'a Mesh,
    hidx: PathIndex,
    vidx: PathIndex,
}

/// First and last position on `path` of a vertex whose `idx` path is `target`.
fn run(path: &[GridVertex], idx: &PathIndex, target: usize) -> Result<(usize, usize), HomogenizeError> {
    let mut hits =
        path.iter().enumerate().filter(|(_, v)| idx.get(**v).map(|(j, _)| j) == Some(target)).map(|(k, _)| k);
    let first = hits.next().ok_or_else(|| HomogenizeError::Geometry(format!("paths do not meet path {target}")))?;
    Ok((first, hits.next_back().unwrap_or(first)))
}

fn between(path: &[GridVertex], from: (usize, usize), to: (usize, usize)) -> Vec<GridVertex> {
    if from.1 <= to.0 {
        path[from.1..=to.0].to_vec()
    } else {
        path[to.1..=from.0].iter().rev().copied().collect()
    }
}

impl<'a> Nav<'a> {
    pub(crate) fn new(inst: &HostInstance, mesh: &'a Mesh) -> Self {
        Nav { mesh, hidx: PathIndex::new(inst, &mesh.horizontals), vidx: PathIndex::new(inst, &mesh.verticals) }
    }

    /// Vertical `c` from its crossing with horizontal `from` to horizontal `to`.
    pub(crate) fn along_v(&self, c: usize, from: usize, to: usize) -> Result<Vec<GridVertex>, HomogenizeError> {
        let p = &self.mesh.verticals[c];
        Ok(between(p, run(p, &self.hidx, from)?, run(p, &self.hidx, to)?))
    }

    /// Horizontal `t` from its crossing with vertical `from` to vertical `to`.
    pub(crate) fn along_h(&self, t: usize, from: usize, to: usize) -> Result<Vec<GridVertex>, HomogenizeError> {
        let p = &self.mesh.horizontals[t];
        Ok(between(p, run(p, &self.vidx, from)?, run(p, &self.vidx, to)?))
    }
}

/// Appends `piece` to `path`, merging over their shared stretch.
pub(crate) fn append(path: &mut Vec<GridVertex>, piece: &[GridVertex]) -> Result<(), HomogenizeError> {
    let Some(&last) = path.last() else {
        path.extend_from_slice(piece);
        return Ok(());
    };
    if let Some(k) = piece.iter().position(|v| *v == last) {
        path.extend_from_slice(&piece[k + 1..]);
    } else if let Some(k) = piece.first().and_then(|f| path.iter().rposition(|v| v == f)) {
        path.truncate(k + 1);
        path.extend_from_slice(&piece[1..]);
    } else {
        return Err(HomogenizeError::Geometry(format!("pieces do not join at ({},{})", last.row, last.col)));
    }
    Ok(())
}

/// The stretch of `path` from its first vertex on crossing path `first` to
/// its last vertex on crossing path `last`.
pub(crate) fn trim_between(
    path: &[GridVertex],
    crossing: &PathIndex,
    first: usize,
    last: usize,
) -> Result<Vec<GridVertex>, HomogenizeError> {
    let a = run(path, crossing, first)?.0;
    let b = run(path, crossing, last)?.1;
    if a > b {
        return Err(HomogenizeError::Geometry(format!("crossings {first} and {last} out of order")));
    }
    Ok(path[a..=b].to_vec())
}
