//! Exhaustive enumeration of the cycles of a small mesh.
//!
//! Every cycle of a mesh bounds a set of cells, and its edges are exactly the
//! host edges lying on an odd number of those cells' boundaries. Enumerating
//! cell subsets and keeping those whose odd edges form one simple cycle
//! therefore lists every cycle once.

use crate::geometry::{cycle_interior, region_colors, Mesh};
use crate::instance::{GridVertex, HostInstance};
use std::collections::{BTreeMap, BTreeSet};

/// Largest cell count accepted by the enumeration.
pub const MAX_ENUMERATED_CELLS: usize = 20;

type Edge = (GridVertex, GridVertex);

fn edges_of(cycle: &[GridVertex]) -> Vec<Edge> {
    (0..cycle.len())
        .map(|k| {
            let (a, b) = (cycle[k], cycle[(k + 1) % cycle.len()]);
            if a < b {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect()
}

/// Orders `edges` into a single simple cycle, if they form one.
fn as_cycle(edges: &BTreeSet<Edge>) -> Option<Vec<GridVertex>> {
    let mut adj: BTreeMap<GridVertex, Vec<GridVertex>> = BTreeMap::new();
    for &(a, b) in edges {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    if adj.values().any(|n| n.len() != 2) {
        return None;
    }
    let start = *adj.keys().next()?;
    let mut cycle = vec![start];
    let (mut prev, mut cur) = (start, adj[&start][0]);
    while cur != start {
        cycle.push(cur);
        let n = &adj[&cur];
        let next = if n[0] == prev { n[1] } else { n[0] };
        (prev, cur) = (cur, next);
    }
    (cycle.len() == adj.len()).then_some(cycle)
}

/// All cycles of `mesh`, as host vertex sequences.
///
/// Panics if the mesh has more than [`MAX_ENUMERATED_CELLS`] cells.
pub fn mesh_cycles(inst: &HostInstance, mesh: &Mesh) -> Vec<Vec<GridVertex>> {
    let cells: Vec<Vec<Edge>> = mesh.cell_cycles(inst).into_iter().map(|(_, c)| edges_of(&c)).collect();
    assert!(cells.len() <= MAX_ENUMERATED_CELLS, "{} cells is too many to enumerate", cells.len());
    let mut out = Vec::new();
    for mask in 1u32..(1 << cells.len()) {
        let mut odd = BTreeSet::new();
        for (k, cell) in cells.iter().enumerate() {
            if mask >> k & 1 == 1 {
                for e in cell {
                    if !odd.remove(e) {
                        odd.insert(*e);
                    }
                }
            }
        }
        if let Some(c) = as_cycle(&odd) {
            out.push(c);
        }
    }
    out
}

/// Whether every cycle of `mesh` has interior colors equal to the compass
/// colors, checked over all cycles.
pub fn uniform_by_cycles(inst: &HostInstance, mesh: &Mesh) -> bool {
    let Ok(want) = mesh.compass_colors(inst) else { return false };
    mesh_cycles(inst, mesh).iter().all(|c| match cycle_interior(inst, c) {
        Ok(reg) => region_colors(inst, &reg, false) == want,
        Err(_) => false,
    })
}
