//! Shared builders for integration tests.
#![allow(dead_code)]

use homwall::color::ColorSet;
use homwall::geometry::Mesh;
use homwall::instance::{Bridge, GridVertex, HostInstance};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn palette(rng: &mut ChaCha8Rng, q: usize, density: f64) -> ColorSet {
    (1..=q).filter(|_| rng.gen_bool(density)).collect()
}

/// A random instance with both vertex colors and bridges, possibly several
/// bridges per face.
pub fn random_instance(rng: &mut ChaCha8Rng, d_r: usize, d_c: usize, q: usize, density: f64) -> HostInstance {
    let mut vertex_colors = BTreeMap::new();
    for r in 0..d_r {
        for c in 0..d_c {
            if rng.gen_bool(density / 4.0) {
                vertex_colors.insert(GridVertex::new(r, c), palette(rng, q, 0.5));
            }
        }
    }
    let mut bridges = Vec::new();
    for r in 0..d_r - 1 {
        for c in 0..d_c - 1 {
            while rng.gen_bool(density) {
                let id = format!("x{}", rng.gen_range(0..1_000_000u32));
                if bridges.iter().any(|b: &Bridge| b.id == id) {
                    continue;
                }
                bridges.push(Bridge { id, face: (r, c), colors: palette(rng, q, 0.6) });
                if bridges.len() % 3 == 0 {
                    break;
                }
            }
        }
    }
    HostInstance::new(d_r, d_c, q, vertex_colors, bridges).expect("valid random instance")
}

/// Sorted random subset of `0..n` with `k` elements.
pub fn pick(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<usize> {
    let mut v = sample(rng, n, k).into_vec();
    v.sort_unstable();
    v
}

/// The mesh formed by grid rows `rows` and columns `cols`, cut to the
/// rectangle they span.
pub fn subgrid_mesh(rows: &[usize], cols: &[usize]) -> Mesh {
    let (c0, c1) = (cols[0], *cols.last().unwrap());
    let (r0, r1) = (rows[0], *rows.last().unwrap());
    Mesh {
        horizontals: rows.iter().map(|&r| (c0..=c1).map(|c| GridVertex::new(r, c)).collect()).collect(),
        verticals: cols.iter().map(|&c| (r0..=r1).map(|r| GridVertex::new(r, c)).collect()).collect(),
    }
}
