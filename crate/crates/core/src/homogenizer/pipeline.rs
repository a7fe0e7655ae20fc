//! End-to-end construction of uniform meshes and homogeneous walls.
//!
//! At or above the extent bound the stages run in strict mode and cannot
//! fall short. Below it, a few best-effort strip plans are tried in order
//! and only a fully verified result counts as success.

use super::bounds::{bound_rainbow, r_hat, rainbow_multiplicity, rainbow_padding};
use super::confine::{confine, confine_to_tiles, ConfinedPackings};
use super::fold::fold_to_uniform;
use super::rainbow::{weave_rainbow, RainbowMesh};
use super::rebalance::{rebalance, BalancedPackings};
use super::sort_trim::{initial_packing, run_sort_trim, SortTrimRun};
use super::trace::Trace;
use super::wall::{mesh_to_wall, select_homogeneous_wall};
use super::{HomogenizeError, Mode};
use crate::color::ColorSet;
use crate::geometry::{crop, Mesh, Orientation, StripPacking, Window};
use crate::instance::HostInstance;
use crate::verifier::{verify_homogeneous_wall, verify_tangle_truncation, verify_uniform, Verdict};
use std::time::{Duration, Instant};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success(Mesh),
    InsufficientMesh { stage: String, missing: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageStat {
    pub stage: String,
    pub detail: String,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineResult {
    pub outcome: Outcome,
    pub stats: Vec<StageStat>,
    pub trace: Trace,
    /// Colors outside both index sets of the packings that produced the
    /// result (or of the first attempt when none succeeded).
    pub discarded: ColorSet,
}

impl PipelineResult {
    pub fn is_success(&self) -> bool {
        matches!(self.outcome, Outcome::Success(_))
    }

    pub fn mesh(&self) -> Option<&Mesh> {
        match &self.outcome {
            Outcome::Success(m) => Some(m),
            Outcome::InsufficientMesh { .. } => None,
        }
    }
}

/// How strips are supplied to the rainbow stage.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Supply {
    /// Tile confinement at its bound.
    Strict,
    /// Strips of breadth `2(t+1)p + 2`, sorted at multiplicity `r_sort` and
    /// confined at `r_confine`.
    Plan { t: usize, r_sort: usize, r_confine: usize },
    /// Unsorted strips of breadth `2p + 2`, woven as they are.
    Direct,
}

fn small(v: u128) -> usize {
    usize::try_from(v).unwrap_or(usize::MAX)
}

fn supplies(window: &Window, n: usize, m: usize, q: usize) -> Result<Vec<Supply>, HomogenizeError> {
    let ext = window.extent(Orientation::Column).min(window.extent(Orientation::Row));
    if ext >= small(bound_rainbow(n as u128, m as u128, q as u128)?) {
        return Ok(vec![Supply::Strict]);
    }
    let p = small(rainbow_padding(n as u128, m as u128));
    let r = small(rainbow_multiplicity(q as u128, m as u128));
    let width = |t: usize| 2 * (t + 1) * p + 2;
    if ext < width(0) {
        return Err(HomogenizeError::Precondition {
            stage: "initial packing".into(),
            required: width(0),
            available: ext,
        });
    }
    let widest = (0..=q).rev().find(|&t| ext / width(t) >= 3).unwrap_or(0);
    let mut out = Vec::new();
    for t in [widest, 0] {
        let strips = ext / width(t);
        let r_max = if q == 0 { 1 } else { small(r_hat(q as u128, r as u128)?).min((strips - 1) / q + 1).max(1) };
        for r_sort in [r_max, 1] {
            let r_confine =
                (1..=r).rev().find(|&x| small(r_hat(q as u128, x as u128).unwrap_or(u128::MAX)) <= r_sort).unwrap_or(1);
            let plan = Supply::Plan { t, r_sort, r_confine };
            if !out.contains(&plan) {
                out.push(plan);
            }
        }
    }
    out.push(Supply::Direct);
    Ok(out)
}

fn confined(
    inst: &HostInstance,
    window: &Window,
    n: usize,
    m: usize,
    q: usize,
    supply: Supply,
) -> Result<ConfinedPackings, HomogenizeError> {
    let p = small(rainbow_padding(n as u128, m as u128));
    let (t, r_sort, r_confine) = match supply {
        Supply::Plan { t, r_sort, r_confine } => (t, r_sort, r_confine),
        Supply::Strict => {
            let r = small(rainbow_multiplicity(q as u128, m as u128));
            return confine_to_tiles(inst, window, q, r, p, 2);
        }
        Supply::Direct => {
            let [pack_c, pack_r] = [Orientation::Column, Orientation::Row]
                .map(|o| initial_packing(window, o, p, 2, 2 * p + 2, window.extent(o) / (2 * p + 2)));
            let inner = crop(&crop(window, &pack_c)?, &pack_r)?;
            let mut trace = Trace::default();
            trace.push(format!("PLAN breadth={} unsorted", 2 * p + 2));
            let all = ColorSet::full(q);
            let balanced =
                BalancedPackings { colors_c: all, colors_r: all, pack_c, pack_r, window: inner, trace, rounds: 0 };
            return Ok(ConfinedPackings { balanced, certificates: Vec::new() });
        }
    };
    let width = 2 * (t + 1) * p + 2;
    let mut trace = Trace::default();
    trace.push(format!("PLAN breadth={width} r-sort={r_sort} r-confine={r_confine}"));
    let mut sorted = Vec::new();
    for o in [Orientation::Column, Orientation::Row] {
        let count = window.extent(o) / width;
        let pk = initial_packing(window, o, p, 2, width, count);
        let run = SortTrimRun { inst, r: r_sort, x: 1, stage: "init", forced: None };
        let out = run_sort_trim(run, pk, ColorSet::full(q))?;
        trace.extend(out.trace);
        sorted.push((out.colors, out.packing));
    }
    let rows = sorted.pop().unwrap();
    let cols = sorted.pop().unwrap();
    let bp = rebalance(inst, window, cols, rows, r_sort, Mode::BestEffort, trace)?;
    confine(inst, bp, r_confine, Mode::BestEffort)
}

/// `PACKING family=<f> p=<p> b=<b> window=rows<a>-<b>,cols<c>-<d> frames=<lo>-<hi>,...`
pub fn packing_line(pk: &StripPacking) -> String {
    let frames: Vec<String> = pk.frames.iter().map(|f| format!("{}-{}", f.0, f.1)).collect();
    let w = pk.window;
    format!(
        "PACKING family={} p={} b={} window=rows{}-{},cols{}-{} frames={}",
        pk.orientation.name(),
        pk.p,
        pk.b,
        w.rows.0,
        w.rows.1,
        w.cols.0,
        w.cols.1,
        frames.join(",")
    )
}

fn attempt_rainbow(
    inst: &HostInstance,
    window: &Window,
    n: usize,
    m: usize,
    q: usize,
    supply: Supply,
) -> Result<(RainbowMesh, ColorSet), HomogenizeError> {
    let cp = confined(inst, window, n, m, q, supply)?;
    let kept = cp.balanced.colors_c.union(&cp.balanced.colors_r);
    let mut rm = weave_rainbow(inst, &cp, n, m)?;
    let mut trace = cp.balanced.trace.clone();
    let (cols, rows) = cp.balanced.cropped();
    for pk in [&cols, &rows] {
        trace.push(packing_line(pk));
    }
    trace.extend(std::mem::take(&mut rm.trace));
    rm.trace = trace;
    Ok((rm, ColorSet::full(q).difference(&kept)))
}

/// An `n x m` mesh with a rainbow middle row inside `window`. Succeeds at or
/// above the extent bound; below it, falls short with the first shortfall
/// when no strip plan works.
pub fn build_rainbow_mesh(
    inst: &HostInstance,
    window: &Window,
    n: usize,
    m: usize,
    q: usize,
) -> Result<RainbowMesh, HomogenizeError> {
    if n % 2 == 1 || n < 2 || m < 2 || m % 2 == 1 {
        return Err(HomogenizeError::Parameter(format!("rainbow mesh needs even n, m >= 2, got {n}x{m}")));
    }
    let mut first = None;
    for supply in supplies(window, n, m, q)? {
        match attempt_rainbow(inst, window, n, m, q, supply) {
            Ok((rm, _)) => return Ok(rm),
            Err(e) if e.shortfall().is_some() => {
                first.get_or_insert(e);
            }
            Err(e) => return Err(e),
        }
    }
    Err(first.expect("at least one plan"))
}

fn insufficient(stage: &str, missing: impl Into<String>) -> Outcome {
    Outcome::InsufficientMesh { stage: stage.into(), missing: missing.into() }
}

fn verdict_outcome(stage: &str, verdict: &Verdict) -> Option<Outcome> {
    let v = verdict.violations().first()?;
    Some(insufficient(stage, format!("{} {}", v.property, v.witness)))
}

struct Stopwatch {
    stats: Vec<StageStat>,
    last: Instant,
}

impl Stopwatch {
    fn new() -> Self {
        Stopwatch { stats: Vec::new(), last: Instant::now() }
    }

    fn lap(&mut self, stage: &str, detail: String) {
        let now = Instant::now();
        self.stats.push(StageStat { stage: stage.into(), detail, elapsed: now - self.last });
        self.last = now;
    }
}

/// A uniform `l`-mesh: a rainbow `(2l x (l^2 - l))`-mesh folded and verified.
pub fn uniform_mesh(inst: &HostInstance, l: usize) -> Result<PipelineResult, HomogenizeError> {
    if l < 2 {
        return Err(HomogenizeError::Parameter(format!("uniform mesh needs l >= 2, got {l}")));
    }
    let (n, m, q) = (2 * l, l * l - l, inst.q());
    let window = Window::full(inst);
    let mut clock = Stopwatch::new();
    let mut trace = Trace::default();
    let base = Mesh::base(inst);
    let plans = match supplies(&window, n, m, q) {
        Ok(p) => p,
        Err(e) => {
            let (stage, missing) = e.shortfall().ok_or(e)?;
            return Ok(PipelineResult {
                outcome: insufficient(&stage, missing),
                stats: clock.stats,
                trace,
                discarded: ColorSet::empty(),
            });
        }
    };
    let mut first: Option<(Outcome, ColorSet)> = None;
    for supply in plans {
        let (rm, discarded) = match attempt_rainbow(inst, &window, n, m, q, supply) {
            Ok(x) => x,
            Err(e) => {
                let (stage, missing) = e.shortfall().ok_or(e)?;
                clock.lap("rainbow", format!("{supply:?} fell short at {stage}"));
                first.get_or_insert((insufficient(&stage, missing), ColorSet::empty()));
                continue;
            }
        };
        trace.extend(rm.trace.clone());
        clock.lap("rainbow", format!("{supply:?} mesh={n}x{m} captures={}", rm.captures));
        let mesh = match fold_to_uniform(inst, &rm) {
            Ok(mesh) => mesh,
            Err(HomogenizeError::RainbowUnverified(missing)) => {
                first.get_or_insert((insufficient("rainbow row", missing), discarded));
                continue;
            }
            Err(e) => return Err(e),
        };
        clock.lap("fold", format!("mesh={l}x{l}"));
        let failure = verdict_outcome("uniform", &verify_uniform(inst, &mesh))
            .or_else(|| verdict_outcome("tangle", &verify_tangle_truncation(inst, &base, &mesh)));
        clock.lap("verify", format!("mesh={l}x{l}"));
        match failure {
            None => {
                trace.push(format!("UNIFORM mesh={l}x{l}"));
                return Ok(PipelineResult { outcome: Outcome::Success(mesh), stats: clock.stats, trace, discarded });
            }
            Some(outcome) => {
                first.get_or_insert((outcome, discarded));
            }
        }
    }
    let (outcome, discarded) = first.expect("at least one plan");
    Ok(PipelineResult { outcome, stats: clock.stats, trace, discarded })
}

/// A homogeneous `k`-wall: a uniform `6k`-mesh, its `3k`-wall and every third
/// path of that wall, verified.
pub fn homogeneous_wall(inst: &HostInstance, k: usize) -> Result<PipelineResult, HomogenizeError> {
    if k < 1 {
        return Err(HomogenizeError::Parameter("k must be at least 1".into()));
    }
    let mut res = uniform_mesh(inst, 6 * k)?;
    let Outcome::Success(mesh) = &res.outcome else { return Ok(res) };
    let start = Instant::now();
    let wall = mesh_to_wall(inst, mesh)?;
    let wall = select_homogeneous_wall(inst, &wall)?;
    let base = Mesh::base(inst);
    let failure = verdict_outcome("wall", &verify_homogeneous_wall(inst, &wall))
        .or_else(|| verdict_outcome("tangle", &verify_tangle_truncation(inst, &base, &wall)));
    res.stats.push(StageStat { stage: "wall".into(), detail: format!("wall={k}x{k}"), elapsed: start.elapsed() });
    res.outcome = match failure {
        None => {
            res.trace.push(format!("WALL k={k}"));
            Outcome::Success(wall)
        }
        Some(o) => o,
    };
    Ok(res)
}
