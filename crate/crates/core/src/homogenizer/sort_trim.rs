//! Sorting strips by color multiplicity and trimming cores.

use super::bounds::{bound_lemma31, padded_breadth};
use super::trace::Trace;
use super::HomogenizeError;
use crate::color::ColorSet;
use crate::geometry::{trim, Orientation, StripPacking, Window};
use crate::instance::HostInstance;

/// Result of sorting and trimming one family of strips.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SortTrimOutput {
    /// Colors every surviving strip is confined to.
    pub colors: ColorSet,
    pub packing: StripPacking,
    pub trace: Trace,
    /// Colors dropped in total, and how many of those drops trimmed the packing.
    pub discards: usize,
    pub trims: usize,
    pub sort_rounds: usize,
    pub trim_rounds: usize,
}

/// Parameters shared by the initial run and re-runs on prescribed packings.
#[derive(Clone, Copy, Debug)]
pub(crate) struct SortTrimRun<'a> {
    pub inst: &'a HostInstance,
    pub r: usize,
    pub x: usize,
    pub stage: &'a str,
    /// A color to drop at the first trim step even if it has enough cores.
    pub forced: Option<usize>,
}

fn colors_of(inst: &HostInstance, pk: &StripPacking, i: usize, core: bool, allowed: &ColorSet) -> ColorSet {
    let rect = if core { pk.core_rect(i) } else { pk.rect(i) };
    rect.colors(inst, true).intersection(allowed)
}

fn frames_text(frames: &[(usize, usize)]) -> String {
    frames.iter().map(|f| format!("{}-{}", f.0, f.1)).collect::<Vec<_>>().join(",")
}

/// Smallest color of `colors` carried by fewer than `r` of `per_strip`.
fn rare_color(colors: &ColorSet, per_strip: &[ColorSet], r: usize) -> Option<usize> {
    colors.iter().find(|&j| per_strip.iter().filter(|s| s.contains(j)).count() < r)
}

/// Runs the sort/trim alternation on a prescribed packing with colors
/// restricted to `colors`.
pub(crate) fn run_sort_trim(
    run: SortTrimRun<'_>,
    mut pk: StripPacking,
    mut colors: ColorSet,
) -> Result<SortTrimOutput, HomogenizeError> {
    let SortTrimRun { inst, r, x, stage, mut forced } = run;
    let family = pk.orientation.name();
    let mut trace = Trace::default();
    let (mut discards, mut trims, mut sort_rounds, mut trim_rounds) = (0, 0, 0, 0);
    loop {
        sort_rounds += 1;
        loop {
            let per_strip: Vec<ColorSet> = (0..pk.len()).map(|i| colors_of(inst, &pk, i, false, &colors)).collect();
            let Some(j) = rare_color(&colors, &per_strip, r) else { break };
            let drop: Vec<usize> = (0..pk.len()).filter(|&i| per_strip[i].contains(j)).collect();
            trace.push(format!("DISCARD-COLOR {j} stage={stage}-sort family={family}"));
            if !drop.is_empty() {
                let frames: Vec<_> = drop.iter().map(|&i| pk.frames[i]).collect();
                trace.push(format!("DISCARD-STRIPS family={family} frames={}", frames_text(&frames)));
            }
            pk = pk.without(&drop);
            colors.remove(j);
            discards += 1;
            if forced == Some(j) {
                forced = None;
            }
        }
        if colors.is_empty() {
            if pk.len() > x {
                let keep: Vec<usize> = (x..pk.len()).collect();
                trace.push(format!("KEEP family={family} strips={x}"));
                pk = pk.without(&keep);
            }
            break;
        }
        let cores: Vec<ColorSet> = (0..pk.len()).map(|i| colors_of(inst, &pk, i, true, &colors)).collect();
        let chosen = rare_color(&colors, &cores, r).or_else(|| forced.filter(|f| colors.contains(*f)));
        let Some(j) = chosen else { break };
        if forced == Some(j) {
            forced = None;
        }
        trim_rounds += 1;
        let drop: Vec<usize> = (0..pk.len()).filter(|&i| cores[i].contains(j)).collect();
        trace.push(format!("DISCARD-COLOR {j} stage={stage}-trim family={family}"));
        if !drop.is_empty() {
            let frames: Vec<_> = drop.iter().map(|&i| pk.frames[i]).collect();
            trace.push(format!("DISCARD-STRIPS family={family} frames={}", frames_text(&frames)));
        }
        pk = pk.without(&drop);
        colors.remove(j);
        discards += 1;
        if pk.p > 0 {
            pk = trim(&pk)
                .map_err(|e| HomogenizeError::Insufficient { stage: "trim reserve".into(), missing: format!("{e}") })?;
            trims += 1;
            trace.push(format!("TRIM p={} family={family}", pk.p));
            if let Some(min) = pk.min_breadth() {
                if min < 2 * pk.p + pk.b {
                    return Err(HomogenizeError::Insufficient {
                        stage: "trim reserve".into(),
                        missing: format!("{} paths of breadth", 2 * pk.p + pk.b - min),
                    });
                }
            }
        }
    }
    if pk.len() < x {
        return Err(HomogenizeError::Insufficient {
            stage: format!("{stage} strips"),
            missing: format!("{} {family} strips", x - pk.len()),
        });
    }
    Ok(SortTrimOutput { colors, packing: pk, trace, discards, trims, sort_rounds, trim_rounds })
}

/// The initial packing: `count` consecutive strips of breadth `width` from
/// the start of the window.
pub(crate) fn initial_packing(
    window: &Window,
    orientation: Orientation,
    p: usize,
    b: usize,
    width: usize,
    count: usize,
) -> StripPacking {
    let start = window.range(orientation).0;
    let frames = (0..count).map(|k| (start + k * width, start + (k + 1) * width - 1)).collect();
    StripPacking { window: *window, orientation, p, b, frames }
}

/// Splits the first `(q(r-1) + x)(2(q+1)p + b)` paths of `window` into strips
/// of breadth `2(q+1)p + b`, then alternates sorting and trimming until every
/// remaining color lies in at least `r` cores.
#[allow(clippy::too_many_arguments)]
pub fn sort_and_trim(
    inst: &HostInstance,
    window: &Window,
    orientation: Orientation,
    q: usize,
    r: usize,
    p: usize,
    b: usize,
    x: usize,
) -> Result<SortTrimOutput, HomogenizeError> {
    if x < 1 {
        return Err(HomogenizeError::Parameter("x must be at least 1".into()));
    }
    if p > 0 && b < 2 {
        return Err(HomogenizeError::Parameter("b must be at least 2 when p > 0".into()));
    }
    let big = |v: u128| usize::try_from(v).unwrap_or(usize::MAX);
    let required = big(bound_lemma31(q as u128, r as u128, p as u128, b as u128, x as u128)?);
    let available = window.extent(orientation);
    if available < required {
        return Err(HomogenizeError::Precondition { stage: "initial packing".into(), required, available });
    }
    let width = big(padded_breadth(q as u128, p as u128, b as u128)?);
    let count = q * r.saturating_sub(1) + x;
    let pk = initial_packing(window, orientation, p, b, width, count);
    let run = SortTrimRun { inst, r, x, stage: "init", forced: None };
    run_sort_trim(run, pk, ColorSet::full(q))
}
