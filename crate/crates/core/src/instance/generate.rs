//! Seeded instance generators.

use super::{Bridge, HostInstance};
use crate::color::ColorSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// Shapes of adversarial color placement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdversarialMode {
    /// Colored bridges only in the outermost `ceil(d/10)` face rings.
    PerimeterHeavy,
    /// Each color confined to its own thin vertical stripe of faces.
    BufferStripe,
    /// A single colored face.
    SingleTile,
}

fn bridge_id(k: usize) -> String {
    format!("b{k:07}")
}

fn random_palette(rng: &mut ChaCha8Rng, q: usize, density: f64) -> ColorSet {
    (1..=q).filter(|_| rng.gen_bool(density)).collect()
}

fn nonempty_palette(rng: &mut ChaCha8Rng, q: usize) -> ColorSet {
    if q == 0 {
        return ColorSet::empty();
    }
    let mut set = random_palette(rng, q, 0.5);
    if set.is_empty() {
        set.insert(rng.gen_range(1..=q));
    }
    set
}

fn build(d: usize, q: usize, bridges: Vec<Bridge>) -> HostInstance {
    HostInstance::new(d, d, q, BTreeMap::new(), bridges).expect("generated instance is valid")
}

/// A `d x d` instance where every face receives a bridge with probability
/// `face_density`, each color joining its palette with probability
/// `palette_density`.
pub fn gen_random(d: usize, q: usize, face_density: f64, palette_density: f64, seed: u64) -> HostInstance {
    gen_random_rect(d, d, q, face_density, palette_density, seed)
}

/// The `d_r x d_c` version of [`gen_random`].
pub fn gen_random_rect(
    d_r: usize,
    d_c: usize,
    q: usize,
    face_density: f64,
    palette_density: f64,
    seed: u64,
) -> HostInstance {
    assert!(d_r >= 2 && d_c >= 2, "grid sides must be at least 2");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bridges = Vec::new();
    for r in 0..d_r - 1 {
        for c in 0..d_c - 1 {
            if rng.gen_bool(face_density) {
                let colors = random_palette(&mut rng, q, palette_density);
                bridges.push(Bridge { id: bridge_id(bridges.len()), face: (r, c), colors });
            }
        }
    }
    HostInstance::new(d_r, d_c, q, BTreeMap::new(), bridges).expect("generated instance is valid")
}

/// A `d x d` instance where every face carries one bridge colored `[q]`.
pub fn gen_all_colored(d: usize, q: usize) -> HostInstance {
    assert!(d >= 2, "grid side must be at least 2");
    let full = ColorSet::full(q);
    let mut bridges = Vec::new();
    for r in 0..d - 1 {
        for c in 0..d - 1 {
            bridges.push(Bridge { id: bridge_id(bridges.len()), face: (r, c), colors: full });
        }
    }
    build(d, q, bridges)
}

/// Instances that concentrate colors where cropping and trimming must act.
pub fn gen_adversarial(d: usize, q: usize, mode: AdversarialMode, seed: u64) -> HostInstance {
    assert!(d >= 2, "grid side must be at least 2");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let faces = d - 1;
    let mut bridges = Vec::new();
    match mode {
        AdversarialMode::PerimeterHeavy => {
            let w = d.div_ceil(10);
            for r in 0..faces {
                for c in 0..faces {
                    let ring = r.min(c).min(faces - 1 - r).min(faces - 1 - c);
                    if ring < w && rng.gen_bool(0.3) {
                        let colors = nonempty_palette(&mut rng, q);
                        bridges.push(Bridge { id: bridge_id(bridges.len()), face: (r, c), colors });
                    }
                }
            }
        }
        AdversarialMode::BufferStripe => {
            let slots = q.min(faces);
            for k in 0..slots {
                let lo = k * faces / slots;
                let hi = (k + 1) * faces / slots;
                let width = if hi - lo >= 2 { rng.gen_range(1..=2) } else { 1 };
                let start = rng.gen_range(lo..=hi - width);
                let color = ColorSet::singleton(k + 1);
                for c in start..start + width {
                    for r in 0..faces {
                        if rng.gen_bool(0.5) || r == 0 {
                            bridges.push(Bridge { id: bridge_id(bridges.len()), face: (r, c), colors: color });
                        }
                    }
                }
            }
        }
        AdversarialMode::SingleTile => {
            if q > 0 {
                let face = (rng.gen_range(0..faces), rng.gen_range(0..faces));
                let colors = ColorSet::singleton(rng.gen_range(1..=q));
                bridges.push(Bridge { id: bridge_id(0), face, colors });
            }
        }
    }
    build(d, q, bridges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn colored_faces(inst: &HostInstance) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = inst.bridges().iter().filter(|b| !b.colors.is_empty()).map(|b| b.face).collect();
        out.dedup();
        out
    }

    #[test]
    fn random_respects_q_zero_and_zero_density() {
        let inst = gen_random(5, 0, 1.0, 1.0, 7);
        assert_eq!(inst.bridges().len(), 16);
        assert!(inst.bridges().iter().all(|b| b.colors.is_empty()));
        assert!(gen_random(9, 3, 0.0, 0.5, 1).bridges().is_empty());
        assert_eq!(gen_random(12, 3, 0.4, 0.5, 9), gen_random(12, 3, 0.4, 0.5, 9));
    }

    #[test]
    fn single_tile_has_one_colored_face() {
        assert_eq!(colored_faces(&gen_adversarial(10, 1, AdversarialMode::SingleTile, 0)).len(), 1);
    }

    #[test]
    fn perimeter_heavy_avoids_interior() {
        for d in [10usize, 23, 40] {
            let w = d.div_ceil(10);
            let inst = gen_adversarial(d, 2, AdversarialMode::PerimeterHeavy, d as u64);
            assert!(!colored_faces(&inst).is_empty());
            for (r, c) in colored_faces(&inst) {
                let inside = |x: usize| x >= w && x < d - 1 - w;
                assert!(!(inside(r) && inside(c)), "face ({r},{c}) in interior for d={d}");
            }
        }
    }

    #[test]
    fn buffer_stripes_are_disjoint_intervals() {
        let inst = gen_adversarial(30, 3, AdversarialMode::BufferStripe, 5);
        let mut spans = Vec::new();
        for color in 1..=3 {
            let cols: Vec<usize> =
                inst.bridges().iter().filter(|b| b.colors.contains(color)).map(|b| b.face.1).collect();
            let (lo, hi) = (*cols.iter().min().unwrap(), *cols.iter().max().unwrap());
            assert!(hi - lo <= 1);
            spans.push((lo, hi));
        }
        for a in 0..3 {
            for b in a + 1..3 {
                assert!(spans[a].1 < spans[b].0 || spans[b].1 < spans[a].0);
            }
        }
    }
}
