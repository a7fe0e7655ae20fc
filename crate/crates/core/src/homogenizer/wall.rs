//! Extracting walls from a uniform mesh.

use super::nav::{append, trim_between, Nav};
use super::HomogenizeError;
use crate::geometry::{Mesh, PathIndex};
use crate::instance::HostInstance;

/// Turns an `l x l` mesh with `l = 6k` into a `3k`-wall on its first `3k`
/// horizontals: vertical `a` zigzags between mesh verticals `2a` and `2a+1`,
/// switching along every horizontal, so each horizontal is entered from
/// alternating sides and all degrees stay at most three.
pub fn mesh_to_wall(inst: &HostInstance, mesh: &Mesh) -> Result<Mesh, HomogenizeError> {
    let l = mesh.n();
    if l != mesh.m() || l == 0 || !l.is_multiple_of(6) {
        return Err(HomogenizeError::Parameter(format!(
            "wall extraction needs an l x l mesh with 6 | l, got {}x{}",
            mesh.n(),
            mesh.m()
        )));
    }
    let k3 = l / 2;
    let nav = Nav::new(inst, mesh);
    let mut verticals = Vec::with_capacity(k3);
    for a in 0..k3 {
        let mut c = 2 * a;
        let mut path = Vec::new();
        for j in 0..k3 - 1 {
            append(&mut path, &nav.along_v(c, j, j + 1)?)?;
            if j + 2 < k3 {
                let other = c ^ 1;
                append(&mut path, &nav.along_h(j + 1, c, other)?)?;
                c = other;
            }
        }
        verticals.push(path);
    }
    let vidx = PathIndex::new(inst, &verticals);
    let horizontals =
        (0..k3).map(|j| trim_between(&mesh.horizontals[j], &vidx, 0, k3 - 1)).collect::<Result<Vec<_>, _>>()?;
    let wall = Mesh { horizontals, verticals };
    wall.validate(inst).map_err(|v| HomogenizeError::Geometry(format!("wall: {v}")))?;
    Ok(wall)
}

/// Keeps horizontals and verticals with index `0 mod 3` of a `3k`-wall and
/// trims them to the resulting `k`-wall.
pub fn select_homogeneous_wall(inst: &HostInstance, wall: &Mesh) -> Result<Mesh, HomogenizeError> {
    let k3 = wall.n();
    if k3 != wall.m() || k3 == 0 || !k3.is_multiple_of(3) {
        return Err(HomogenizeError::Parameter(format!("selection needs a 3k-wall, got {}x{}", wall.n(), wall.m())));
    }
    let k = k3 / 3;
    let hs: Vec<_> = (0..k).map(|i| wall.horizontals[3 * i].clone()).collect();
    let vs: Vec<_> = (0..k).map(|i| wall.verticals[3 * i].clone()).collect();
    let hidx = PathIndex::new(inst, &hs);
    let vidx = PathIndex::new(inst, &vs);
    let horizontals = hs.iter().map(|p| trim_between(p, &vidx, 0, k - 1)).collect::<Result<Vec<_>, _>>()?;
    let verticals = vs.iter().map(|p| trim_between(p, &hidx, 0, k - 1)).collect::<Result<Vec<_>, _>>()?;
    let out = Mesh { horizontals, verticals };
    out.validate(inst).map_err(|v| HomogenizeError::Geometry(format!("selected wall: {v}")))?;
    Ok(out)
}
