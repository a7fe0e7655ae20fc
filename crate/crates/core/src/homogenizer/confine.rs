//! Moving every shared color into tiles by deleting crossing rows.

use super::bounds::{bound_lemma33, r_hat};
use super::rebalance::{crop_and_rebalance, BalancedPackings};
use super::{HomogenizeError, Mode};
use crate::geometry::{tiles, Orientation, StripPacking, Tile, TileKind};
use crate::instance::HostInstance;

/// A strip of `family` and one of its tiles carrying the certified color.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Witness {
    pub strip: usize,
    pub tile: usize,
    pub kind: TileKind,
}

/// Evidence that `color` occurs in tiles of at least `r` distinct strips of
/// `family` in the cropped packings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub color: usize,
    pub family: Orientation,
    pub witnesses: Vec<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfinedPackings {
    pub balanced: BalancedPackings,
    pub certificates: Vec<Certificate>,
}

/// Tiles of strip `i` of `own` with respect to `crossing`, both cropped.
pub fn strip_tiles(own: &StripPacking, crossing: &StripPacking, i: usize) -> Result<Vec<Tile>, HomogenizeError> {
    Ok(tiles(crossing, own.orientation, own.padded(i), crossing.p)?)
}

/// For each strip of `own`, the first tile carrying `color`.
fn witnesses(
    inst: &HostInstance,
    own: &StripPacking,
    crossing: &StripPacking,
    color: usize,
) -> Result<Vec<Witness>, HomogenizeError> {
    let mut out = Vec::new();
    for i in 0..own.len() {
        let ts = strip_tiles(own, crossing, i)?;
        if let Some(k) = ts.iter().position(|t| t.rect.colors(inst, false).contains(color)) {
            out.push(Witness { strip: i, tile: k, kind: ts[k].kind });
        }
    }
    Ok(out)
}

/// Whether the core of inner column `c` meets inner row `row` in a region
/// carrying `color`.
fn meets(inst: &HostInstance, cols: &StripPacking, rows: &StripPacking, c: usize, row: usize, color: usize) -> bool {
    let core = cols.padded(c).core();
    let frame = rows.frames[row];
    crate::geometry::Rect::new(frame.0, frame.1, core.0, core.1).colors(inst, true).contains(color)
}

/// Tile confinement at the extent bound: rebalances at multiplicity
/// `r_hat(q, r)` and then deletes rows until every color shared by both
/// families lies in tiles of at least `r` columns.
pub fn confine_to_tiles(
    inst: &HostInstance,
    window: &crate::geometry::Window,
    q: usize,
    r: usize,
    p: usize,
    b: usize,
) -> Result<ConfinedPackings, HomogenizeError> {
    if r < 1 {
        return Err(HomogenizeError::Parameter("r must be at least 1".into()));
    }
    let required = usize::try_from(bound_lemma33(q as u128, p as u128, b as u128, r as u128)?).unwrap_or(usize::MAX);
    for o in [Orientation::Column, Orientation::Row] {
        let available = window.extent(o);
        if available < required {
            return Err(HomogenizeError::Precondition { stage: "initial packing".into(), required, available });
        }
    }
    let rr = usize::try_from(r_hat(q as u128, r as u128)?).unwrap_or(usize::MAX);
    let balanced = crop_and_rebalance(inst, window, q, rr, p, b)?;
    confine(inst, balanced, r, Mode::Strict)
}

/// The row-deletion phase on rebalanced packings.
pub(crate) fn confine(
    inst: &HostInstance,
    mut bp: BalancedPackings,
    r: usize,
    mode: Mode,
) -> Result<ConfinedPackings, HomogenizeError> {
    let shared = bp.colors_c.intersection(&bp.colors_r);
    for color in shared.iter() {
        loop {
            let (cols, rows) = bp.cropped();
            let have = witnesses(inst, &cols, &rows, color)?.len();
            if have >= r {
                bp.trace.push(format!("CONFINE color={color} columns={have}"));
                break;
            }
            let inner_c: Vec<usize> = (1..cols.len().saturating_sub(1)).collect();
            let inner_r: Vec<usize> = (1..rows.len().saturating_sub(1)).collect();
            let mut used_rows = Vec::new();
            let mut pairs = Vec::new();
            for &c in &inner_c {
                if let Some(&row) =
                    inner_r.iter().find(|&&row| !used_rows.contains(&row) && meets(inst, &cols, &rows, c, row, color))
                {
                    used_rows.push(row);
                    pairs.push((c, row));
                }
            }
            let drop: Vec<usize> = if pairs.len() >= r {
                bp.trace.push(format!("CONFINE color={color} matched={} removing={r}", pairs.len()));
                pairs.iter().take(r).map(|&(_, row)| row).collect()
            } else {
                let best = inner_r
                    .iter()
                    .map(|&row| (inner_c.iter().filter(|&&c| meets(inst, &cols, &rows, c, row, color)).count(), row))
                    .filter(|&(n, _)| n > 0)
                    .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
                match best {
                    Some((n, row)) => {
                        bp.trace.push(format!("CONFINE color={color} matched={} row={row} columns={n}", pairs.len()));
                        vec![row]
                    }
                    None => {
                        let detail = format!("color {color} in tiles of {have} of {r} columns");
                        if mode == Mode::Strict {
                            return Err(HomogenizeError::Insufficient {
                                stage: "tile confinement".into(),
                                missing: detail,
                            });
                        }
                        bp.trace.push(format!("SHORTFALL stage=tile-confinement {detail}"));
                        break;
                    }
                }
            };
            let frames: Vec<String> =
                drop.iter().map(|&i| format!("{}-{}", rows.frames[i].0, rows.frames[i].1)).collect();
            bp.trace.push(format!("DISCARD-STRIPS family=row frames={}", frames.join(",")));
            bp.pack_r = bp.pack_r.without(&drop);
        }
    }
    let (cols, rows) = bp.cropped();
    let mut certificates = Vec::new();
    for color in bp.colors_c.union(&bp.colors_r).iter() {
        let mut found = None;
        for (own, crossing, kept) in [(&cols, &rows, bp.colors_c), (&rows, &cols, bp.colors_r)] {
            if !kept.contains(color) {
                continue;
            }
            let ws = witnesses(inst, own, crossing, color)?;
            if ws.len() >= r {
                found = Some(Certificate { color, family: own.orientation, witnesses: ws });
                break;
            }
        }
        match found {
            Some(c) => certificates.push(c),
            None => {
                let detail = format!("color {color} lacks {r} tile witnesses");
                if mode == Mode::Strict {
                    return Err(HomogenizeError::Insufficient { stage: "tile confinement".into(), missing: detail });
                }
                bp.trace.push(format!("SHORTFALL stage=tile-confinement {detail}"));
            }
        }
    }
    Ok(ConfinedPackings { balanced: bp, certificates })
}
