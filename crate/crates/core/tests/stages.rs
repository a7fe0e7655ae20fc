mod common;

use common::subgrid_mesh;
use homwall::color::ColorSet;
use homwall::geometry::{boundary_strips, breadth, Mesh, Orientation, StripPacking, TileKind, Window};
use homwall::homogenizer::bounds::{bound_lemma31, bound_lemma32, bound_lemma33, bound_rainbow};
use homwall::homogenizer::confine::strip_tiles;
use homwall::homogenizer::rebalance::core_count_outside;
use homwall::homogenizer::{
    build_rainbow_mesh, confine_to_tiles, crop_and_rebalance, fold_to_uniform, homogeneous_wall, mesh_to_wall,
    select_homogeneous_wall, sort_and_trim, uniform_mesh, HomogenizeError, Outcome, RainbowMesh, SortTrimOutput,
};
use homwall::instance::{gen_adversarial, gen_all_colored, AdversarialMode, Bridge, HostInstance};
use homwall::verifier::{
    verify_homogeneous_wall, verify_lemma_output, verify_rainbow_row, verify_tangle_truncation, verify_uniform,
    LemmaOutput, LemmaParams,
};
use std::collections::BTreeMap;

fn instance(
    d_r: usize,
    d_c: usize,
    q: usize,
    faces: impl IntoIterator<Item = ((usize, usize), Vec<usize>)>,
) -> HostInstance {
    let bridges = faces
        .into_iter()
        .enumerate()
        .map(|(k, (face, colors))| Bridge { id: format!("f{k:05}"), face, colors: colors.into_iter().collect() })
        .collect();
    HostInstance::new(d_r, d_c, q, BTreeMap::new(), bridges).unwrap()
}

fn sort_trim(inst: &HostInstance, q: usize, r: usize, p: usize, b: usize, x: usize) -> SortTrimOutput {
    let w = Window::full(inst);
    let out = sort_and_trim(inst, &w, Orientation::Column, q, r, p, b, x).unwrap();
    let verdict =
        verify_lemma_output(inst, LemmaOutput::SortTrim { window: &w, output: &out }, &LemmaParams { q, r, p, b, x });
    assert!(verdict.is_ok(), "{verdict}");
    out
}

#[test]
fn sort_trim_colorless_keeps_exactly_x_strips() {
    let (p, b, x) = (1, 2, 3);
    let d = bound_lemma31(0, 2, p as u128, b as u128, x as u128).unwrap() as usize;
    assert_eq!(d, x * (2 * p + b));
    let inst = HostInstance::empty(5, d, 0).unwrap();
    let out = sort_trim(&inst, 0, 2, p, b, x);
    assert!(out.colors.is_empty());
    assert_eq!(out.packing.len(), x);
    assert!(out.packing.frames.iter().all(|&f| breadth(f) == 2 * p + b));
}

#[test]
fn sort_trim_discards_a_single_tile() {
    let (q, r, p, b, x) = (1, 2, 1, 2, 1);
    let d = bound_lemma31(q as u128, r as u128, p as u128, b as u128, x as u128).unwrap() as usize;
    assert_eq!(d, 12);
    let inst = instance(4, d, q, [((1, 5), vec![1])]);
    let out = sort_trim(&inst, q, r, p, b, x);
    assert!(out.colors.is_empty());
    assert!(out.discards >= 1);
    for i in 0..out.packing.len() {
        assert!(out.packing.rect(i).colors(&inst, true).is_empty());
    }
}

#[test]
fn sort_trim_all_colored_keeps_every_color() {
    for (q, r, p, b, x) in [(2, 2, 1, 2, 1), (3, 3, 2, 3, 2)] {
        let d = bound_lemma31(q as u128, r as u128, p as u128, b as u128, x as u128).unwrap() as usize;
        let inst = gen_all_colored(d, q);
        let out = sort_trim(&inst, q, r, p, b, x);
        assert_eq!(out.colors, ColorSet::full(q));
        assert_eq!(out.trims, 0);
        assert!(out.packing.len() >= q * (r - 1) + x);
    }
}

#[test]
fn sort_trim_below_bound_is_a_precondition_failure() {
    let inst = HostInstance::empty(4, 11, 1).unwrap();
    let w = Window::full(&inst);
    let err = sort_and_trim(&inst, &w, Orientation::Column, 1, 2, 1, 2, 1).unwrap_err();
    assert_eq!(err, HomogenizeError::Precondition { stage: "initial packing".into(), required: 12, available: 11 });
}

#[test]
fn rebalance_colorless_terminates_in_one_round() {
    let d = bound_lemma32(0, 2, 1, 2).unwrap() as usize;
    let inst = HostInstance::empty(d, d, 0).unwrap();
    let bp = crop_and_rebalance(&inst, &Window::full(&inst), 0, 2, 1, 2).unwrap();
    assert_eq!(bp.rounds, 1);
    assert!(!bp.pack_c.is_empty() && !bp.pack_r.is_empty());
    assert!(bp.colors_c.is_empty() && bp.colors_r.is_empty());
    let params = LemmaParams { q: 0, r: 2, p: 1, b: 2, x: 1 };
    assert!(verify_lemma_output(&inst, LemmaOutput::Balanced(&bp), &params).is_ok());
}

#[test]
fn rebalance_perimeter_heavy_discards_or_certifies() {
    let (q, r, p, b) = (1, 2, 1, 2);
    let d = bound_lemma32(q as u128, r as u128, p as u128, b as u128).unwrap() as usize;
    for seed in 0..5 {
        let inst = gen_adversarial(d, q, AdversarialMode::PerimeterHeavy, seed);
        let bp = crop_and_rebalance(&inst, &Window::full(&inst), q, r, p, b).unwrap();
        let params = LemmaParams { q, r, p, b, x: 1 };
        let verdict = verify_lemma_output(&inst, LemmaOutput::Balanced(&bp), &params);
        assert!(verdict.is_ok(), "{verdict}");
        let (cols, rows) = bp.cropped();
        let boundary = boundary_strips(&inst, &cols, &rows).unwrap();
        for (pk, kept) in [(&cols, bp.colors_c), (&rows, bp.colors_r)] {
            if kept.contains(1) {
                assert!(core_count_outside(&inst, pk, &boundary, 1) >= r);
            }
        }
    }
}

#[test]
fn confine_colorless_is_trivially_certified() {
    let d = bound_lemma33(0, 1, 2, 2).unwrap() as usize;
    assert_eq!(d, 4);
    let inst = HostInstance::empty(d, d, 0).unwrap();
    let cp = confine_to_tiles(&inst, &Window::full(&inst), 0, 2, 1, 2).unwrap();
    assert!(cp.certificates.is_empty());
    assert!(!cp.balanced.pack_c.is_empty() && !cp.balanced.pack_r.is_empty());
}

#[test]
fn confine_certificates_recheck_against_tiles() {
    let (q, p, b, r) = (1, 1, 2, 2);
    let d = bound_lemma33(q as u128, p as u128, b as u128, r as u128).unwrap() as usize;
    // Color 1 only in faces of every other column, so row strips also meet it.
    let faces = (0..d - 1).flat_map(|row| (0..d - 1).filter(|c| c % 2 == 0).map(move |c| ((row, c), vec![1])));
    let striped = instance(d, d, q, faces);
    for inst in [gen_all_colored(d, q), striped] {
        let cp = confine_to_tiles(&inst, &Window::full(&inst), q, r, p, b).unwrap();
        let verdict = verify_lemma_output(&inst, LemmaOutput::Confined(&cp), &LemmaParams { q, r, p, b, x: 1 });
        assert!(verdict.is_ok(), "{verdict}");
        let (cols, rows) = cp.balanced.cropped();
        for cert in &cp.certificates {
            let (own, crossing) = if cert.family == Orientation::Column { (&cols, &rows) } else { (&rows, &cols) };
            let mut strips: Vec<usize> = cert.witnesses.iter().map(|w| w.strip).collect();
            strips.dedup();
            assert!(strips.len() >= r);
            for w in &cert.witnesses {
                let tile = strip_tiles(own, crossing, w.strip).unwrap()[w.tile];
                assert_eq!(tile.kind, w.kind);
                assert!(tile.rect.colors(&inst, false).contains(cert.color));
            }
        }
    }
}

#[test]
fn overlapping_frames_are_reported() {
    let inst = HostInstance::empty(6, 12, 0).unwrap();
    let w = Window::full(&inst);
    let packing =
        StripPacking { window: w, orientation: Orientation::Column, p: 0, b: 2, frames: vec![(0, 3), (3, 6)] };
    let output = SortTrimOutput {
        colors: ColorSet::empty(),
        packing,
        trace: Default::default(),
        discards: 0,
        trims: 0,
        sort_rounds: 1,
        trim_rounds: 0,
    };
    let params = LemmaParams { q: 0, r: 2, p: 0, b: 2, x: 2 };
    let verdict = verify_lemma_output(&inst, LemmaOutput::SortTrim { window: &w, output: &output }, &params);
    assert!(verdict.violations().iter().any(|v| v.property == "frames overlap"), "{verdict}");
}

#[test]
fn rainbow_colorless_is_a_plain_mesh() {
    let d = bound_rainbow(4, 4, 0).unwrap() as usize;
    assert_eq!(d, 18);
    let inst = HostInstance::empty(d, d, 0).unwrap();
    let rm = build_rainbow_mesh(&inst, &Window::full(&inst), 4, 4, 0).unwrap();
    assert_eq!((rm.mesh.n(), rm.mesh.m()), (4, 4));
    assert!(rm.mesh.validate(&inst).is_ok());
    assert!(rm.collected.iter().all(ColorSet::is_empty));
    assert!(verify_rainbow_row(&inst, &rm).is_ok());
}

#[test]
fn rainbow_on_all_colored_instance() {
    let inst = gen_all_colored(150, 1);
    let rm = build_rainbow_mesh(&inst, &Window::full(&inst), 2, 4, 1).unwrap();
    assert!(rm.captures <= 3);
    let verdict = verify_rainbow_row(&inst, &rm).merge(verify_tangle_truncation(&inst, &Mesh::base(&inst), &rm.mesh));
    assert!(verdict.is_ok(), "{verdict}");
}

#[test]
fn rainbow_row_violation_names_the_cell() {
    // The middle row of a mesh on grid rows 1..4 is the face row 2; its
    // first cell lacks color 2.
    let inst = instance(6, 6, 2, [((2, 1), vec![1]), ((2, 2), vec![1, 2]), ((2, 3), vec![1, 2])]);
    let rm = RainbowMesh::from_mesh(&inst, subgrid_mesh(&[1, 2, 3, 4], &[1, 2, 3, 4])).unwrap();
    let verdict = verify_rainbow_row(&inst, &rm);
    assert_eq!(verdict.to_text(), "VIOLATION rainbow cell=1 missing={2}\n");
}

#[test]
fn fold_with_n2_keeps_the_mesh() {
    let inst = HostInstance::empty(6, 6, 0).unwrap();
    let rm = RainbowMesh::from_mesh(&inst, subgrid_mesh(&[0, 1, 2, 3], &[1, 4])).unwrap();
    let out = fold_to_uniform(&inst, &rm).unwrap();
    assert_eq!((out.n(), out.m()), (2, 2));
    assert!(out.validate(&inst).is_ok());
}

#[test]
fn fold_colorless_n4() {
    let inst = HostInstance::empty(10, 14, 0).unwrap();
    let rm =
        RainbowMesh::from_mesh(&inst, subgrid_mesh(&(1..9).collect::<Vec<_>>(), &(1..13).collect::<Vec<_>>())).unwrap();
    let out = fold_to_uniform(&inst, &rm).unwrap();
    assert_eq!((out.n(), out.m()), (4, 4));
    assert!(verify_uniform(&inst, &out).is_ok());
}

#[test]
fn fold_rainbow_row_gives_uniform_mesh() {
    // Only the middle row band (between grid rows 4 and 5) is colored.
    let faces = (0..13).map(|c| ((4, c), vec![1 + c % 2, 2 - c % 2]));
    let inst = instance(10, 14, 2, faces);
    let rm =
        RainbowMesh::from_mesh(&inst, subgrid_mesh(&(1..9).collect::<Vec<_>>(), &(1..13).collect::<Vec<_>>())).unwrap();
    assert!(verify_rainbow_row(&inst, &rm).is_ok());
    let out = fold_to_uniform(&inst, &rm).unwrap();
    assert_eq!(out.compass_colors(&inst).unwrap(), ColorSet::full(2));
    let verdict = verify_uniform(&inst, &out);
    assert!(verdict.is_ok(), "{verdict}");
}

#[test]
fn fold_rejects_a_missing_rainbow() {
    let inst = instance(10, 14, 1, [((0, 0), vec![1]), ((2, 2), vec![1])]);
    let rm =
        RainbowMesh::from_mesh(&inst, subgrid_mesh(&(1..9).collect::<Vec<_>>(), &(1..13).collect::<Vec<_>>())).unwrap();
    assert!(matches!(fold_to_uniform(&inst, &rm), Err(HomogenizeError::RainbowUnverified(_))));
}

#[test]
fn wall_from_six_mesh() {
    let inst = HostInstance::empty(8, 8, 0).unwrap();
    let mesh = subgrid_mesh(&(1..7).collect::<Vec<_>>(), &(1..7).collect::<Vec<_>>());
    let wall = mesh_to_wall(&inst, &mesh).unwrap();
    assert_eq!((wall.n(), wall.m()), (3, 3));
    let one = select_homogeneous_wall(&inst, &wall).unwrap();
    assert_eq!((one.n(), one.m()), (1, 1));
    assert!(verify_homogeneous_wall(&inst, &one).is_ok());
}

#[test]
fn wall_from_twelve_mesh() {
    let inst = gen_all_colored(14, 2);
    let mesh = subgrid_mesh(&(1..13).collect::<Vec<_>>(), &(1..13).collect::<Vec<_>>());
    let wall = mesh_to_wall(&inst, &mesh).unwrap();
    assert_eq!((wall.n(), wall.m()), (6, 6));
    assert!(verify_homogeneous_wall(&inst, &wall).is_ok());
    let two = select_homogeneous_wall(&inst, &wall).unwrap();
    assert_eq!((two.n(), two.m()), (2, 2));
    let verdict = verify_homogeneous_wall(&inst, &two).merge(verify_tangle_truncation(&inst, &wall, &two));
    assert!(verdict.is_ok(), "{verdict}");
}

#[test]
fn wall_with_a_colorless_brick_is_rejected() {
    let faces = (0..13).flat_map(|r| (0..13).map(move |c| (r, c))).filter(|&(r, _)| r != 1).map(|f| (f, vec![1]));
    let inst = instance(14, 14, 1, faces);
    let mesh = subgrid_mesh(&(1..13).collect::<Vec<_>>(), &(1..13).collect::<Vec<_>>());
    let wall = mesh_to_wall(&inst, &mesh).unwrap();
    let verdict = verify_homogeneous_wall(&inst, &wall);
    assert!(!verdict.is_ok());
}

#[test]
fn stray_color_outside_bricks_is_rejected() {
    // Color 2 in a single brick, so it is in the compass but not in every brick.
    let faces = (0..13).flat_map(|r| (0..13).map(move |c| (r, c))).map(|(r, c)| {
        let colors = if r == 1 && c == 5 { vec![1, 2] } else { vec![1] };
        ((r, c), colors)
    });
    let inst = instance(14, 14, 2, faces);
    let mesh = subgrid_mesh(&(1..13).collect::<Vec<_>>(), &(1..13).collect::<Vec<_>>());
    let wall = mesh_to_wall(&inst, &mesh).unwrap();
    assert!(!verify_homogeneous_wall(&inst, &wall).is_ok());
}

#[test]
fn tangle_identity_and_confined_mesh() {
    let inst = HostInstance::empty(12, 12, 0).unwrap();
    let old = subgrid_mesh(&(0..12).collect::<Vec<_>>(), &(0..12).collect::<Vec<_>>());
    assert!(verify_tangle_truncation(&inst, &old, &old).is_ok());
    // The new mesh meets only three old horizontals.
    let rows = subgrid_mesh(&[3, 4, 5], &(0..12).collect::<Vec<_>>());
    let new = subgrid_mesh(&[2, 3, 4, 5], &[0, 3, 6, 9]);
    let verdict = verify_tangle_truncation(&inst, &rows, &new);
    assert!(verdict.violations().iter().any(|v| v.property == "tangle"), "{verdict}");
}

#[test]
fn uniform_mesh_below_bound() {
    let inst = HostInstance::empty(9, 9, 0).unwrap();
    let res = uniform_mesh(&inst, 6).unwrap();
    match res.outcome {
        Outcome::InsufficientMesh { stage, .. } => assert_eq!(stage, "initial packing"),
        Outcome::Success(_) => panic!("9x9 host cannot hold a uniform 6-mesh"),
    }
}

#[test]
fn uniform_mesh_all_colored_q2() {
    let inst = gen_all_colored(150, 2);
    let res = uniform_mesh(&inst, 4).unwrap();
    let mesh = res.mesh().expect("all-colored instance succeeds");
    assert_eq!(mesh.compass_colors(&inst).unwrap(), ColorSet::full(2));
    assert!(verify_uniform(&inst, mesh).is_ok());
}

#[test]
fn homogeneous_wall_examples() {
    let inst = HostInstance::empty(122, 122, 0).unwrap();
    let res = homogeneous_wall(&inst, 1).unwrap();
    assert!(verify_homogeneous_wall(&inst, res.mesh().expect("success at the bound")).is_ok());

    let inst = gen_all_colored(200, 1);
    let res = homogeneous_wall(&inst, 1).unwrap();
    let wall = res.mesh().expect("benign instance succeeds");
    let verdict = verify_homogeneous_wall(&inst, wall).merge(verify_tangle_truncation(&inst, &Mesh::base(&inst), wall));
    assert!(verdict.is_ok(), "{verdict}");
}

#[test]
fn homogeneous_two_wall_at_bound() {
    let inst = HostInstance::empty(530, 530, 0).unwrap();
    let res = homogeneous_wall(&inst, 2).unwrap();
    let wall = res.mesh().expect("success at the bound");
    assert_eq!((wall.n(), wall.m()), (2, 2));
    assert!(verify_homogeneous_wall(&inst, wall).is_ok());
    assert!(verify_uniform(&inst, wall).is_ok());
}

#[test]
fn pipeline_parameters_are_checked() {
    let inst = HostInstance::empty(10, 10, 0).unwrap();
    assert!(matches!(uniform_mesh(&inst, 1), Err(HomogenizeError::Parameter(_))));
    assert!(matches!(homogeneous_wall(&inst, 0), Err(HomogenizeError::Parameter(_))));
    let w = Window::full(&inst);
    assert!(matches!(build_rainbow_mesh(&inst, &w, 3, 4, 0), Err(HomogenizeError::Parameter(_))));
}

#[test]
fn tile_kinds_alternate() {
    let inst = HostInstance::empty(30, 30, 0).unwrap();
    let w = Window::full(&inst);
    let rows =
        StripPacking { window: w, orientation: Orientation::Row, p: 1, b: 2, frames: vec![(0, 3), (8, 11), (20, 23)] };
    let cols = StripPacking { window: w, orientation: Orientation::Column, p: 1, b: 2, frames: vec![(2, 7)] };
    let kinds: Vec<TileKind> = strip_tiles(&cols, &rows, 0).unwrap().iter().map(|t| t.kind).collect();
    assert_eq!(
        kinds,
        vec![TileKind::Z(0), TileKind::Between(0, 1), TileKind::Z(1), TileKind::Between(1, 2), TileKind::Z(2)]
    );
}
