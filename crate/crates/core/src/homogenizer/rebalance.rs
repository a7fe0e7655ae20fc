//! Cropping both packings to each other and rebalancing colors until every
//! kept color lives in enough cores away from the boundary strips.

use super::bounds::bound_lemma32;
use super::sort_trim::{run_sort_trim, sort_and_trim, SortTrimRun};
use super::trace::Trace;
use super::{HomogenizeError, Mode};
use crate::color::ColorSet;
use crate::geometry::{boundary_strips, crop, lift, region_colors, Orientation, Region, StripPacking, Window};
use crate::instance::HostInstance;

/// Column and row packings lifted to the input window, with their index
/// sets and the doubly cropped window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalancedPackings {
    pub colors_c: ColorSet,
    pub colors_r: ColorSet,
    pub pack_c: StripPacking,
    pub pack_r: StripPacking,
    pub window: Window,
    pub trace: Trace,
    pub rounds: usize,
}

impl BalancedPackings {
    /// Both packings restricted to the cropped window.
    pub fn cropped(&self) -> (StripPacking, StripPacking) {
        (self.pack_c.with_window(self.window), self.pack_r.with_window(self.window))
    }

    pub fn colors(&self, o: Orientation) -> ColorSet {
        match o {
            Orientation::Column => self.colors_c,
            Orientation::Row => self.colors_r,
        }
    }
}

/// Number of strips of `pk` whose core, minus `boundary`, carries `color`.
pub fn core_count_outside(inst: &HostInstance, pk: &StripPacking, boundary: &Region, color: usize) -> usize {
    (0..pk.len())
        .filter(|&i| {
            if i == 0 || i + 1 == pk.len() {
                // Extremal strips lie inside the boundary.
                return false;
            }
            let mut core = pk.core_region(inst, i).into_compass_set();
            core.subtract(boundary);
            region_colors(inst, &core, true).contains(color)
        })
        .count()
}

fn cores_with(inst: &HostInstance, pk: &StripPacking, color: usize) -> usize {
    (0..pk.len()).filter(|&i| pk.core_rect(i).colors(inst, true).contains(color)).count()
}

struct Family {
    colors: ColorSet,
    pack: StripPacking,
}

/// Checks count, confinement, breadth and core multiplicity for `x` against
/// the other family's color count `other`.
fn invariant_holds(inst: &HostInstance, x: &Family, other: usize, r: usize, mode: Mode) -> bool {
    let n = x.colors.len();
    if mode == Mode::Strict {
        // Each own color may cost up to r + 1 strips: r - 1 inner cores plus
        // both extremal strips once the crossing extremals are cropped away.
        if x.pack.len() < n * (r + 1) + 2 * other + 1 {
            return false;
        }
        if x.pack.min_breadth().unwrap_or(0) < 2 * (n + 1) * x.pack.p + x.pack.b {
            return false;
        }
    }
    let confined = (0..x.pack.len()).all(|i| x.pack.rect(i).colors(inst, true).is_subset(&x.colors));
    confined && x.colors.iter().all(|c| cores_with(inst, &x.pack, c) >= r)
}

/// Cropping and rebalancing with every strip of breadth `2(q+1)p + b`, at
/// the extent bound for multiplicity `r`.
pub fn crop_and_rebalance(
    inst: &HostInstance,
    window: &Window,
    q: usize,
    r: usize,
    p: usize,
    b: usize,
) -> Result<BalancedPackings, HomogenizeError> {
    let required = usize::try_from(bound_lemma32(q as u128, r as u128, p as u128, b as u128)?).unwrap_or(usize::MAX);
    for o in [Orientation::Column, Orientation::Row] {
        let available = window.extent(o);
        if available < required {
            return Err(HomogenizeError::Precondition { stage: "initial packing".into(), required, available });
        }
    }
    // x = 4q + 1 spends the whole extent: (q(r-1) + 4q + 1) = (q(r+1) + 2q + 1).
    let c = sort_and_trim(inst, window, Orientation::Column, q, r, p, b, 4 * q + 1)?;
    let rw = sort_and_trim(inst, window, Orientation::Row, q, r, p, b, 4 * q + 1)?;
    let mut trace = Trace::default();
    trace.extend(c.trace);
    trace.extend(rw.trace);
    rebalance(inst, window, (c.colors, c.packing), (rw.colors, rw.packing), r, Mode::Strict, trace)
}

/// The rebalancing loop on already sorted and trimmed packings over `outer`.
pub(crate) fn rebalance(
    inst: &HostInstance,
    outer: &Window,
    cols: (ColorSet, StripPacking),
    rows: (ColorSet, StripPacking),
    r: usize,
    mode: Mode,
    mut trace: Trace,
) -> Result<BalancedPackings, HomogenizeError> {
    let mut fam = [Family { colors: cols.0, pack: cols.1 }, Family { colors: rows.0, pack: rows.1 }];
    let mut rounds = 0;
    loop {
        rounds += 1;
        let w = crop(&crop(outer, &fam[0].pack)?, &fam[1].pack)?;
        for f in fam.iter_mut() {
            f.pack = f.pack.with_window(w);
        }
        let mut w = w;
        trace.push(format!(
            "ROUND {rounds} window=rows{}-{},cols{}-{} strips={},{}",
            w.rows.0,
            w.rows.1,
            w.cols.0,
            w.cols.1,
            fam[0].pack.len(),
            fam[1].pack.len()
        ));
        let invariant = invariant_holds(inst, &fam[0], fam[1].colors.len(), r, mode)
            && invariant_holds(inst, &fam[1], fam[0].colors.len(), r, mode);
        let mut forced: Option<(usize, usize)> = None;
        if invariant {
            let boundary = boundary_strips(inst, &fam[0].pack, &fam[1].pack)?;
            let failing = (0..2).find_map(|x| {
                fam[x].colors.iter().find(|&c| core_count_outside(inst, &fam[x].pack, &boundary, c) < r).map(|c| (x, c))
            });
            let Some((x, color)) = failing else {
                return Ok(finish(outer, fam, w, trace, rounds));
            };
            let y = 1 - x;
            if fam[y].pack.len() < 3 {
                let detail =
                    format!("color {color} in {} family needs 2 spare crossing strips", fam[x].pack.orientation.name());
                if mode == Mode::Strict {
                    return Err(HomogenizeError::Insufficient { stage: "rebalance".into(), missing: detail });
                }
                trace.push(format!("SHORTFALL stage=rebalance {detail}"));
                return Ok(finish(outer, fam, w, trace, rounds));
            }
            let last = fam[y].pack.len() - 1;
            trace.push(format!(
                "DROP-EXTREMAL family={} color={color} needs={}",
                fam[y].pack.orientation.name(),
                fam[x].pack.orientation.name()
            ));
            fam[y].pack = fam[y].pack.without(&[0, last]);
            w = crop(&w, &fam[y].pack)?;
            for f in fam.iter_mut() {
                f.pack = f.pack.with_window(w);
            }
            forced = Some((x, color));
        }
        let before = fam[0].colors.len() + fam[1].colors.len();
        let sizes = [fam[0].colors.len(), fam[1].colors.len()];
        for z in 0..2 {
            let other = 1 - z;
            let n_other = sizes[other] - usize::from(forced.is_some_and(|(x, _)| x == other));
            let x = if mode == Mode::Strict { 2 * n_other + 1 } else { 1 };
            let run = SortTrimRun {
                inst,
                r,
                x,
                stage: "rebalance",
                forced: forced.filter(|(fx, _)| *fx == z).map(|(_, c)| c),
            };
            let out = run_sort_trim(run, fam[z].pack.clone(), fam[z].colors)?;
            trace.extend(out.trace);
            fam[z] = Family { colors: out.colors, pack: out.packing };
        }
        if fam[0].colors.len() + fam[1].colors.len() >= before {
            let detail = "no color could be dropped".to_string();
            if mode == Mode::Strict {
                return Err(HomogenizeError::Insufficient { stage: "rebalance".into(), missing: detail });
            }
            trace.push(format!("SHORTFALL stage=rebalance {detail}"));
            let w = crop(&crop(&w, &fam[0].pack)?, &fam[1].pack)?;
            return Ok(finish(outer, fam, w, trace, rounds));
        }
    }
}

fn finish(outer: &Window, fam: [Family; 2], w: Window, trace: Trace, rounds: usize) -> BalancedPackings {
    let [c, r] = fam;
    BalancedPackings {
        colors_c: c.colors,
        colors_r: r.colors,
        pack_c: lift(outer, &c.pack.with_window(w)),
        pack_r: lift(outer, &r.pack.with_window(w)),
        window: w,
        trace,
        rounds,
    }
}
