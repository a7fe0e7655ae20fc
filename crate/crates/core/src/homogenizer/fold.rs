//! Folding a rainbow `(2n x (n^2 - n))`-mesh into a uniform `n`-mesh.
//!
//! With horizontals `Q_1..Q_2n` (1-based, `Q_n` and `Q_{n+1}` bounding the
//! middle row) and verticals `P_1..P_{n^2-n}`, the `n` output verticals
//! start on `P_1..P_n` across the middle row. Each further step consumes the
//! next block of `n` verticals: odd steps turn on `Q_j` above the middle row,
//! even steps on `Q_{n+j}` below it, and every step adds one output
//! horizontal, a stretch of `Q_{n+1}` (odd) or `Q_n` (even) across the block.

use super::nav::{append, Nav};
use super::rainbow::{middle_cells, RainbowMesh};
use super::HomogenizeError;
use crate::geometry::{cycle_interior, region_colors, Mesh};
use crate::instance::HostInstance;

/// Checks that every middle-row cell interior carries the compass colors.
fn check_rainbow(inst: &HostInstance, mesh: &Mesh) -> Result<(), HomogenizeError> {
    let want = mesh.compass_colors(inst)?;
    for (k, cell) in middle_cells(inst, mesh).iter().enumerate() {
        let have = region_colors(inst, &cycle_interior(inst, cell)?, true);
        let missing = want.difference(&have);
        if !missing.is_empty() {
            return Err(HomogenizeError::RainbowUnverified(format!("cell {} lacks {missing}", k + 1)));
        }
    }
    Ok(())
}

/// Folds `rainbow` into a uniform `n`-mesh.
pub fn fold_to_uniform(inst: &HostInstance, rainbow: &RainbowMesh) -> Result<Mesh, HomogenizeError> {
    let mesh = &rainbow.mesh;
    let n = mesh.n() / 2;
    if n < 2 || mesh.n() != 2 * n || mesh.m() != n * n - n {
        return Err(HomogenizeError::Parameter(format!(
            "fold needs a (2n x n^2-n)-mesh, got {}x{}",
            mesh.n(),
            mesh.m()
        )));
    }
    mesh.validate(inst).map_err(|v| HomogenizeError::Geometry(format!("fold input: {v}")))?;
    check_rainbow(inst, mesh)?;
    let nav = Nav::new(inst, mesh);
    // 1-based Q_t is horizontals[t - 1] and P_c is verticals[c - 1].
    let v = |c: usize, a: usize, b: usize| nav.along_v(c - 1, a - 1, b - 1);
    let h = |t: usize, a: usize, b: usize| nav.along_h(t - 1, a - 1, b - 1);
    let mut horizontals = vec![h(n + 1, 1, n)?, h(n, 1, n)?];
    let mut verticals = Vec::with_capacity(n);
    for j in 1..=n {
        verticals.push(v(j, n + 1, n)?);
    }
    for i in 3..=n {
        for (j, path) in verticals.iter_mut().enumerate().map(|(k, p)| (k + 1, p)) {
            if i % 2 == 1 {
                let (from, to) = ((i - 3) * n + j, (i - 2) * n + 1 + (n - j));
                append(path, &v(from, n, j)?)?;
                append(path, &h(j, from, to)?)?;
                append(path, &v(to, j, n + 1)?)?;
            } else {
                let (from, to) = ((i - 3) * n + 1 + (n - j), (i - 2) * n + j);
                append(path, &v(from, n + 1, n + j)?)?;
                append(path, &h(n + j, from, to)?)?;
                append(path, &v(to, n + j, n)?)?;
            }
        }
        let (lo, hi) = ((i - 2) * n + 1, (i - 1) * n);
        horizontals.push(if i % 2 == 1 { h(n + 1, hi, lo)? } else { h(n, lo, hi)? });
    }
    let out = Mesh { horizontals, verticals };
    out.validate(inst).map_err(|v| HomogenizeError::Geometry(format!("folded mesh: {v}")))?;
    Ok(out)
}
