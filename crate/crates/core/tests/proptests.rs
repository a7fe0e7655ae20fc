mod common;

use homwall::color::ColorSet;
use homwall::geometry::{breadth, crop, cycle_interior, pad, tiles, trim, Orientation, StripPacking, Window};
use homwall::instance::{parse_instance, write_instance, GridVertex, HostInstance};
use proptest::prelude::*;
use std::collections::BTreeSet;

#[derive(Clone, Debug)]
enum SetOp {
    Insert(usize),
    Remove(usize),
    Union(Vec<usize>),
    Intersect(Vec<usize>),
    Difference(Vec<usize>),
}

fn colors() -> impl Strategy<Value = usize> {
    prop_oneof![1usize..=16, 1usize..=1024]
}

fn set_op() -> impl Strategy<Value = SetOp> {
    let list = || proptest::collection::vec(colors(), 0..12);
    prop_oneof![
        colors().prop_map(SetOp::Insert),
        colors().prop_map(SetOp::Remove),
        list().prop_map(SetOp::Union),
        list().prop_map(SetOp::Intersect),
        list().prop_map(SetOp::Difference),
    ]
}

/// Ordered, disjoint frames of breadth at least `min` inside `[lo, hi]`.
fn frames(lo: usize, hi: usize, min: usize) -> impl Strategy<Value = Vec<(usize, usize)>> {
    proptest::collection::vec((0usize..4, 0usize..4), 1..6).prop_map(move |gaps| {
        let mut out = Vec::new();
        let mut at = lo;
        for (gap, extra) in gaps {
            let start = at + gap;
            let end = start + min - 1 + extra;
            if end > hi {
                break;
            }
            out.push((start, end));
            at = end + 1;
        }
        out
    })
}

/// A histogram polygon over face columns `c0..c0 + tops.len()` with floor
/// `floor`, as a unit-step vertex cycle.
fn histogram_cycle(c0: usize, floor: usize, tops: &[usize]) -> Vec<GridVertex> {
    let mut cyc = Vec::new();
    let mut push = |r: usize, c: usize| {
        let v = GridVertex::new(r, c);
        if cyc.last() != Some(&v) {
            cyc.push(v);
        }
    };
    let mut row = floor;
    for (i, &t) in tops.iter().enumerate() {
        let c = c0 + i;
        while row > t {
            push(row, c);
            row -= 1;
        }
        while row < t {
            push(row, c);
            row += 1;
        }
        push(row, c);
        push(row, c + 1);
    }
    let end = c0 + tops.len();
    while row < floor {
        row += 1;
        push(row, end);
    }
    for c in (c0 + 1..end).rev() {
        push(floor, c);
    }
    cyc
}

fn shoelace2(cyc: &[GridVertex]) -> i64 {
    let n = cyc.len();
    (0..n)
        .map(|k| {
            let (a, b) = (cyc[k], cyc[(k + 1) % n]);
            a.col as i64 * b.row as i64 - b.col as i64 * a.row as i64
        })
        .sum::<i64>()
        .abs()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn color_set_matches_btreeset(ops in proptest::collection::vec(set_op(), 0..24)) {
        let mut set = ColorSet::empty();
        let mut model = BTreeSet::new();
        for op in ops {
            match op {
                SetOp::Insert(c) => { set.insert(c); model.insert(c); }
                SetOp::Remove(c) => { set.remove(c); model.remove(&c); }
                SetOp::Union(v) => {
                    set = set.union(&v.iter().copied().collect());
                    model.extend(v);
                }
                SetOp::Intersect(v) => {
                    let other: BTreeSet<usize> = v.iter().copied().collect();
                    prop_assert_eq!(set.intersects(&v.iter().copied().collect()), !model.is_disjoint(&other));
                    set = set.intersection(&v.iter().copied().collect());
                    model = model.intersection(&other).copied().collect();
                }
                SetOp::Difference(v) => {
                    let other: BTreeSet<usize> = v.iter().copied().collect();
                    let before: ColorSet = model.iter().copied().collect();
                    prop_assert_eq!(before.is_subset(&v.iter().copied().collect()), model.is_subset(&other));
                    set = set.difference(&v.iter().copied().collect());
                    model = model.difference(&other).copied().collect();
                }
            }
            prop_assert_eq!(set.iter().collect::<Vec<_>>(), model.iter().copied().collect::<Vec<_>>());
            prop_assert_eq!(set.len(), model.len());
            prop_assert_eq!(set.is_empty(), model.is_empty());
            prop_assert_eq!(set.smallest(), model.first().copied());
            prop_assert_eq!(set.largest(), model.last().copied());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn cmi_round_trip(seed in any::<u64>(), d_r in 2usize..16, d_c in 2usize..16, q in 0usize..8, density in 0.0f64..0.9) {
        let mut rng = common::rng(seed);
        let inst = common::random_instance(&mut rng, d_r, d_c, q, density);
        let text = write_instance(&inst);
        let parsed = parse_instance(&text).unwrap();
        prop_assert_eq!(&parsed, &inst);
        prop_assert_eq!(write_instance(&parsed), text);
    }

    #[test]
    fn crop_commutes_and_is_idempotent(
        cols in frames(0, 39, 2),
        rows in frames(0, 29, 2),
    ) {
        prop_assume!(!cols.is_empty() && !rows.is_empty());
        let w = Window::new((0, 29), (0, 39));
        let pc = StripPacking { window: w, orientation: Orientation::Column, p: 0, b: 2, frames: cols };
        let pr = StripPacking { window: w, orientation: Orientation::Row, p: 0, b: 2, frames: rows };
        let once = crop(&w, &pc).unwrap();
        prop_assert_eq!(crop(&once, &pc).unwrap(), once);
        prop_assert_eq!(crop(&once, &pr).unwrap(), crop(&crop(&w, &pr).unwrap(), &pc).unwrap());
        prop_assert!(w.contains(&once));
    }

    #[test]
    fn trim_reduces_breadth_by_2p(p in 0usize..4, b in 2usize..4, extra in proptest::collection::vec(0usize..5, 1..6)) {
        let mut frames = Vec::new();
        let mut at = 0;
        for e in extra {
            let width = 2 * p + b + e;
            frames.push((at, at + width - 1));
            at += width;
        }
        let w = Window::new((0, 9), (0, at));
        let pk = StripPacking { window: w, orientation: Orientation::Column, p, b, frames };
        let t = trim(&pk).unwrap();
        prop_assert_eq!(t.len(), pk.len());
        for (a, z) in pk.frames.iter().zip(&t.frames) {
            prop_assert_eq!(breadth(*z) + 2 * p, breadth(*a));
            prop_assert!(a.0 <= z.0 && z.1 <= a.1);
        }
    }

    #[test]
    fn tiles_partition_strip_span(k in 1usize..3, s_extra in 0usize..4, cross in frames(0, 49, 6)) {
        prop_assume!(!cross.is_empty());
        let s_frame = (3, 3 + 2 * k + 2 + s_extra);
        let s = pad(s_frame, k, 2).unwrap();
        let w = Window::new((0, 49), (0, 20));
        let pkz = StripPacking { window: w, orientation: Orientation::Row, p: k, b: 2, frames: cross.clone() };
        let ts = tiles(&pkz, Orientation::Column, s, k).unwrap();
        prop_assert_eq!(ts.len(), 2 * cross.len() - 1);
        let (lo, hi) = (s.inner_left(), s.inner_right());
        let first = ts.first().unwrap().rect;
        let last = ts.last().unwrap().rect;
        prop_assert_eq!(first.r0, cross[0].0 + k - 1);
        prop_assert_eq!(last.r1, cross.last().unwrap().1 + 1 - k);
        let in_buffer = |a: usize, b: usize| {
            cross.iter().any(|f| (a >= f.0 && b < f.0 + k) || (a + k > f.1 && b <= f.1))
        };
        let (mut faces, mut buffer_faces) = (0, 0);
        let mut seen = BTreeSet::new();
        let mut row = first.r0;
        for t in &ts {
            prop_assert_eq!((t.rect.c0, t.rect.c1), (lo, hi));
            prop_assert!(t.rect.r0 >= row);
            if t.rect.r0 > row {
                prop_assert!(in_buffer(row, t.rect.r0));
                buffer_faces += (t.rect.r0 - row) * (hi - lo);
            }
            row = t.rect.r1;
            faces += t.rect.face_count();
            for r in t.rect.r0..t.rect.r1 {
                for c in t.rect.c0..t.rect.c1 {
                    prop_assert!(seen.insert((r, c)));
                }
            }
        }
        prop_assert_eq!(faces + buffer_faces, (last.r1 - first.r0) * (hi - lo));
    }

    #[test]
    fn cycle_interior_matches_shoelace(c0 in 0usize..3, floor in 4usize..10, tops in proptest::collection::vec(0usize..4, 1..8)) {
        let tops: Vec<usize> = tops.iter().map(|&t| t.min(floor - 1)).collect();
        let inst = HostInstance::empty(floor + 2, c0 + tops.len() + 2, 0).unwrap();
        let cyc = histogram_cycle(c0, floor, &tops);
        let region = cycle_interior(&inst, &cyc).unwrap();
        let area2 = shoelace2(&cyc);
        let boundary = cyc.len() as i64;
        prop_assert_eq!(region.faces.count() as i64 * 2, area2);
        prop_assert_eq!(region.boundary.count() as i64, boundary);
        // Pick's theorem: A = I + B/2 - 1.
        prop_assert_eq!(region.vertices.count() as i64 * 2, area2 - boundary + 2);
        let mut rev = cyc.clone();
        rev.reverse();
        prop_assert_eq!(cycle_interior(&inst, &rev).unwrap(), region);
    }
}
