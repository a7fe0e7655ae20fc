//! Literal checks of the conclusions of the sorting, rebalancing and tile
//! confinement stages, recomputing every color set from raw regions.

use super::{violation, Verdict, Violation};
use crate::color::ColorSet;
use crate::geometry::{
    boundary_strips, breadth, region_colors, strip_region, tiles, Orientation, Region, StripPacking, Window,
};
use crate::homogenizer::{BalancedPackings, ConfinedPackings, SortTrimOutput};
use crate::instance::HostInstance;

/// Parameters a stage output was produced with; `x` is used by the sorting
/// stage only.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LemmaParams {
    pub q: usize,
    pub r: usize,
    pub p: usize,
    pub b: usize,
    pub x: usize,
}

#[derive(Clone, Copy, Debug)]
pub enum LemmaOutput<'a> {
    /// Sorting and trimming of one family inside `window`.
    SortTrim {
        window: &'a Window,
        output: &'a SortTrimOutput,
    },
    Balanced(&'a BalancedPackings),
    Confined(&'a ConfinedPackings),
}

fn strip_colors(inst: &HostInstance, pk: &StripPacking, frame: (usize, usize)) -> ColorSet {
    region_colors(inst, &strip_region(inst, &pk.window, pk.orientation, frame), true)
}

fn core_region(inst: &HostInstance, pk: &StripPacking, i: usize) -> Region {
    let f = pk.frames[i];
    strip_region(inst, &pk.window, pk.orientation, (f.0 + pk.p, f.1 - pk.p)).into_compass_set()
}

/// Frames ordered, disjoint, inside the window and wide enough to pad.
fn check_shape(pk: &StripPacking, params: &LemmaParams, name: &str, out: &mut Vec<Violation>) {
    let (lo, hi) = pk.window.range(pk.orientation);
    if pk.p != params.p || pk.b != params.b {
        out.push(violation("padding", format!("{name} p={} b={}", pk.p, pk.b)));
    }
    for (i, &f) in pk.frames.iter().enumerate() {
        if f.0 >= f.1 || f.0 < lo || f.1 > hi {
            out.push(violation("frame outside window", format!("{name} strip={i} frame={}-{}", f.0, f.1)));
        }
        if i > 0 && pk.frames[i - 1].1 >= f.0 {
            out.push(violation("frames overlap", format!("{name} strips={},{i}", i - 1)));
        }
        if f.1 > f.0 && breadth(f) < 2 * pk.p + pk.b {
            out.push(violation("not padded", format!("{name} strip={i} breadth={}", breadth(f))));
        }
    }
}

/// `chi(S)` within the family's index set for every strip.
fn check_palettes(inst: &HostInstance, pk: &StripPacking, colors: &ColorSet, name: &str, out: &mut Vec<Violation>) {
    for (i, &f) in pk.frames.iter().enumerate() {
        let extra = strip_colors(inst, pk, f).difference(colors);
        if !extra.is_empty() {
            out.push(violation("strip colors", format!("{name} strip={i} outside={extra}")));
        }
    }
}

fn frames_valid(pk: &StripPacking) -> bool {
    pk.frames.iter().all(|f| f.1 > f.0 + 2 * pk.p)
}

fn check_sort_trim(inst: &HostInstance, window: &Window, o: &SortTrimOutput, pr: &LemmaParams) -> Vec<Violation> {
    let mut out = Vec::new();
    let pk = &o.packing;
    let name = pk.orientation.name();
    if pk.window != *window {
        out.push(violation("window", format!("{name} packing window differs from input")));
    }
    check_shape(pk, pr, name, &mut out);
    let n_i = o.colors.len();
    if !o.colors.is_subset(&ColorSet::full(pr.q)) {
        out.push(violation("index set", format!("{} not within [{}]", o.colors, pr.q)));
    }
    let need = n_i * pr.r.saturating_sub(1) + pr.x;
    if pk.len() < need {
        out.push(violation("strip count", format!("{name} {} < {need}", pk.len())));
    }
    let min_breadth = 2 * (n_i + 1) * pr.p + pr.b;
    for (i, &f) in pk.frames.iter().enumerate() {
        if breadth(f) < min_breadth {
            out.push(violation("breadth", format!("{name} strip={i} {} < {min_breadth}", breadth(f))));
        }
    }
    if !frames_valid(pk) {
        return out;
    }
    check_palettes(inst, pk, &o.colors, name, &mut out);
    for c in o.colors.iter() {
        let cores = (0..pk.len()).filter(|&i| region_colors(inst, &core_region(inst, pk, i), true).contains(c)).count();
        if cores < pr.r {
            out.push(violation("core multiplicity", format!("{name} color={c} cores={cores} need={}", pr.r)));
        }
    }
    if o.sort_rounds > pr.q + 1 || o.trim_rounds > pr.q + 1 {
        out.push(violation("rounds", format!("sort={} trim={} limit={}", o.sort_rounds, o.trim_rounds, pr.q + 1)));
    }
    out
}

fn families(bp: &BalancedPackings) -> [(StripPacking, ColorSet); 2] {
    let (c, r) = bp.cropped();
    [(c, bp.colors_c), (r, bp.colors_r)]
}

fn check_balanced(inst: &HostInstance, bp: &BalancedPackings, pr: &LemmaParams) -> Vec<Violation> {
    let mut out = Vec::new();
    let fams = families(bp);
    for (pk, _) in &fams {
        check_shape(pk, pr, pk.orientation.name(), &mut out);
        if pk.is_empty() {
            out.push(violation("empty packing", pk.orientation.name()));
        }
    }
    if !out.is_empty() || !fams.iter().all(|(pk, _)| frames_valid(pk)) {
        return out;
    }
    let boundary = boundary_strips(inst, &fams[0].0, &fams[1].0).expect("packings are nonempty");
    for (x, (pk, colors)) in fams.iter().enumerate() {
        let other = fams[1 - x].1.len();
        let name = pk.orientation.name();
        let need = colors.len() * pr.r.saturating_sub(1) + 2 * other + 1;
        if pk.len() < need {
            out.push(violation("strip count", format!("{name} {} < {need}", pk.len())));
        }
        check_palettes(inst, pk, colors, name, &mut out);
        for c in colors.iter() {
            let cores = (0..pk.len())
                .filter(|&i| {
                    let mut core = core_region(inst, pk, i);
                    core.subtract(&boundary);
                    region_colors(inst, &core, true).contains(c)
                })
                .count();
            if cores < pr.r {
                out.push(violation("core multiplicity", format!("{name} color={c} cores={cores} need={}", pr.r)));
            }
        }
    }
    out
}

fn check_confined(inst: &HostInstance, cp: &ConfinedPackings, pr: &LemmaParams) -> Vec<Violation> {
    let mut out = Vec::new();
    let fams = families(&cp.balanced);
    for (pk, colors) in &fams {
        check_shape(pk, pr, pk.orientation.name(), &mut out);
        if pk.is_empty() {
            out.push(violation("empty packing", pk.orientation.name()));
        }
        if frames_valid(pk) {
            check_palettes(inst, pk, colors, pk.orientation.name(), &mut out);
        }
    }
    if !out.is_empty() {
        return out;
    }
    // Tile colors per family and strip.
    let mut tile_colors: Vec<Vec<Vec<ColorSet>>> = Vec::new();
    for x in 0..2 {
        let (own, crossing) = (&fams[x].0, &fams[1 - x].0);
        let mut per_strip = Vec::new();
        for i in 0..own.len() {
            match tiles(crossing, own.orientation, own.padded(i), crossing.p) {
                Ok(ts) => per_strip.push(ts.iter().map(|t| region_colors(inst, &t.region(inst), false)).collect()),
                Err(e) => {
                    out.push(violation("tiles", format!("{} strip={i} {e}", own.orientation.name())));
                    per_strip.push(Vec::new());
                }
            }
        }
        tile_colors.push(per_strip);
    }
    let all = cp.balanced.colors_c.union(&cp.balanced.colors_r);
    for c in all.iter() {
        let best = (0..2)
            .map(|x| tile_colors[x].iter().filter(|ts| ts.iter().any(|t| t.contains(c))).count())
            .max()
            .unwrap_or(0);
        if best < pr.r {
            out.push(violation("tile multiplicity", format!("color={c} strips={best} need={}", pr.r)));
        }
    }
    for cert in &cp.certificates {
        let x = usize::from(cert.family == Orientation::Row);
        let mut strips: Vec<usize> = cert.witnesses.iter().map(|w| w.strip).collect();
        strips.sort_unstable();
        strips.dedup();
        if strips.len() < pr.r || strips.len() != cert.witnesses.len() {
            out.push(violation("certificate", format!("color={} distinct strips={}", cert.color, strips.len())));
        }
        for w in &cert.witnesses {
            let carries =
                tile_colors[x].get(w.strip).and_then(|ts| ts.get(w.tile)).is_some_and(|t| t.contains(cert.color));
            if !carries {
                out.push(violation(
                    "certificate",
                    format!(
                        "color={} {} strip={} tile={} lacks color",
                        cert.color,
                        cert.family.name(),
                        w.strip,
                        w.tile
                    ),
                ));
            }
        }
    }
    out
}

/// Checks each enumerated conclusion of the stage that produced `output`.
pub fn verify_lemma_output(inst: &HostInstance, output: LemmaOutput<'_>, params: &LemmaParams) -> Verdict {
    let out = match output {
        LemmaOutput::SortTrim { window, output } => check_sort_trim(inst, window, output, params),
        LemmaOutput::Balanced(bp) => check_balanced(inst, bp, params),
        LemmaOutput::Confined(cp) => check_confined(inst, cp, params),
    };
    Verdict::from_violations(out)
}
