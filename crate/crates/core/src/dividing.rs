//! Dividing arcs on annuli, and the closed curves obtained by gluing two
//! annuli along both boundary circles into a torus.
//!
//! Coordinates: the boundary circles are `R/Z`. Top mark `i` sits at
//! `i / marks_top` and bottom mark `j` at `j / marks_bottom`. A traversing
//! arc `top i -> bottom j` with winding `w` lifts to the universal cover
//! `R × [0, 1]` as a path from `(i / marks_top, 0)` to `(j / marks_bottom + w, 1)`.
//! A parallel arc `from -> to` cuts off the half-disk whose boundary
//! segment runs from `from` to `to` in the increasing direction.
//!
//! The regions between consecutive marks alternate in sign, starting with
//! `+` just after mark 0 on both circles, so a traversing arc joins marks
//! of equal parity.
//!
//! On the glued torus the vertical class counts crossings of the first
//! annulus (top to bottom `+1`, bottom to top `-1`) and the horizontal
//! class is the net turning measured in the first annulus's coordinates.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::diagram::{LayerVariant, TightLayerSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Top,
    Bottom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Arc {
    Traversing { top: usize, bottom: usize, winding: i64 },
    Parallel { side: Side, from: usize, to: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DividingError {
    #[error("annuli disagree on mark counts: ({0}, {1}) vs ({2}, {3})")]
    MarkMismatch(usize, usize, usize, usize),
    #[error("an empty dividing set is not allowed on a convex torus")]
    EmptyDividingSet,
    #[error("invalid arc configuration: {0}")]
    Invalid(String),
    #[error("unsupported layer: {0}")]
    Unsupported(String),
    #[error("cannot parse arc literal: {0}")]
    Syntax(String),
}

/// Dividing arcs on an annulus with marked boundary points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ArcConfig {
    pub marks_top: usize,
    pub marks_bottom: usize,
    pub arcs: Vec<Arc>,
}

fn cyclic_between(from: usize, to: usize, x: usize, n: usize) -> bool {
    // strictly inside the increasing run from -> to
    let span = (to + n - from) % n;
    let off = (x + n - from) % n;
    off > 0 && off < span
}

impl ArcConfig {
    /// Sorts arcs into canonical order and checks every invariant.
    pub fn new(marks_top: usize, marks_bottom: usize, mut arcs: Vec<Arc>) -> Result<Self, DividingError> {
        arcs.sort();
        let c = ArcConfig { marks_top, marks_bottom, arcs };
        c.validate()?;
        Ok(c)
    }

    fn marks(&self, side: Side) -> usize {
        match side {
            Side::Top => self.marks_top,
            Side::Bottom => self.marks_bottom,
        }
    }

    pub fn traversing(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.arcs.iter().filter_map(|a| match *a {
            Arc::Traversing { top, bottom, winding } => Some((top, bottom, winding)),
            _ => None,
        })
    }

    pub fn num_traversing(&self) -> usize {
        self.traversing().count()
    }

    /// Winding of the traversing arc leaving the lowest-numbered top mark.
    pub fn winding(&self) -> Option<i64> {
        self.traversing().min_by_key(|t| t.0).map(|t| t.2)
    }

    /// For each parallel arc (in arc order), how many parallel arcs on the
    /// same side enclose it.
    pub fn nesting_depths(&self) -> Vec<usize> {
        let par: Vec<(Side, usize, usize)> = self
            .arcs
            .iter()
            .filter_map(|a| match *a {
                Arc::Parallel { side, from, to } => Some((side, from, to)),
                _ => None,
            })
            .collect();
        par.iter()
            .map(|&(s, f, _)| {
                par.iter()
                    .filter(|&&(s2, f2, t2)| s2 == s && cyclic_between(f2, t2, f, self.marks(s)))
                    .count()
            })
            .collect()
    }

    /// Mark usage, parity, pairwise disjointness.
    pub fn validate(&self) -> Result<(), DividingError> {
        let bad = |m: String| Err(DividingError::Invalid(m));
        for (side, n) in [(Side::Top, self.marks_top), (Side::Bottom, self.marks_bottom)] {
            if n < 2 || n % 2 != 0 {
                return bad(format!("{side:?} needs a positive even number of marks, got {n}"));
            }
        }
        let mut used = BTreeSet::new();
        let mut claim = |side: Side, i: usize| -> Result<(), DividingError> {
            if i >= self.marks(side) {
                return Err(DividingError::Invalid(format!("{side:?} mark {i} out of range")));
            }
            if !used.insert((side, i)) {
                return Err(DividingError::Invalid(format!("{side:?} mark {i} used twice")));
            }
            Ok(())
        };
        for a in &self.arcs {
            match *a {
                Arc::Traversing { top, bottom, .. } => {
                    claim(Side::Top, top)?;
                    claim(Side::Bottom, bottom)?;
                    if top % 2 != bottom % 2 {
                        return bad(format!("traversing arc {top}->{bottom} joins regions of opposite sign"));
                    }
                }
                Arc::Parallel { side, from, to } => {
                    claim(side, from)?;
                    claim(side, to)?;
                }
            }
        }
        if used.len() != self.marks_top + self.marks_bottom {
            return bad("some marked point is not an arc endpoint".into());
        }

        // parallel arcs enclose no foreign endpoints
        for a in &self.arcs {
            let Arc::Parallel { side, from, to } = *a else { continue };
            let n = self.marks(side);
            for b in &self.arcs {
                if a == b {
                    continue;
                }
                let ends: Vec<usize> = match *b {
                    Arc::Traversing { top, bottom, .. } => {
                        vec![if side == Side::Top { top } else { bottom }]
                    }
                    Arc::Parallel { side: s2, from: f2, to: t2 } if s2 == side => vec![f2, t2],
                    Arc::Parallel { .. } => vec![],
                };
                let inside = ends.iter().filter(|&&x| cyclic_between(from, to, x, n)).count();
                let is_traversing = matches!(b, Arc::Traversing { .. });
                if (is_traversing && inside > 0) || inside == 1 {
                    return bad(format!("parallel arc {side:?} {from}->{to} crosses another arc"));
                }
            }
        }

        // traversing arcs keep their cyclic order from top to bottom
        let mut trav: Vec<(usize, usize, i64)> = self.traversing().collect();
        trav.sort();
        let lifted = |t: &(usize, usize, i64)| {
            // bottom position scaled by marks_top * marks_bottom
            (t.1 as i128 * self.marks_top as i128)
                + t.2 as i128 * (self.marks_top * self.marks_bottom) as i128
        };
        let full = (self.marks_top * self.marks_bottom) as i128;
        for w in trav.windows(2) {
            if lifted(&w[1]) <= lifted(&w[0]) {
                return bad("traversing arcs cross".into());
            }
        }
        if let (Some(first), Some(last)) = (trav.first(), trav.last()) {
            if trav.len() > 1 && lifted(last) >= lifted(first) + full {
                return bad("traversing arcs cross".into());
            }
        }
        Ok(())
    }
}

impl fmt::Display for ArcConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "top {} bottom {}:", self.marks_top, self.marks_bottom)?;
        for a in &self.arcs {
            match *a {
                Arc::Traversing { top, bottom, winding } => write!(f, " trav({top}, {bottom}, {winding})")?,
                Arc::Parallel { side, from, to } => {
                    let s = if side == Side::Top { "top" } else { "bottom" };
                    write!(f, " par({s}, {from}, {to})")?
                }
            }
        }
        Ok(())
    }
}

impl FromStr for ArcConfig {
    type Err = DividingError;

    /// `top <n> bottom <n>: trav(<top>, <bottom>, <winding>) par(top|bottom, <from>, <to>) ...`
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let syntax = |m: &str| DividingError::Syntax(format!("{m} in `{s}`"));
        let (head, body) = s.split_once(':').ok_or_else(|| syntax("missing `:`"))?;
        let head: Vec<&str> = head.split_whitespace().collect();
        let (marks_top, marks_bottom) = match head.as_slice() {
            ["top", t, "bottom", b] => (
                t.parse().map_err(|_| syntax("bad top mark count"))?,
                b.parse().map_err(|_| syntax("bad bottom mark count"))?,
            ),
            _ => return Err(syntax("expected `top <n> bottom <n>`")),
        };
        let mut arcs = Vec::new();
        let mut rest = body.trim();
        while !rest.is_empty() {
            let open = rest.find('(').ok_or_else(|| syntax("expected `(`"))?;
            let close = rest.find(')').ok_or_else(|| syntax("expected `)`"))?;
            if close < open {
                return Err(syntax("unbalanced parentheses"));
            }
            let kind = rest[..open].trim();
            let args: Vec<&str> = rest[open + 1..close].split(',').map(str::trim).collect();
            let int = |x: &str| x.parse::<i64>().map_err(|_| syntax("bad integer"));
            let idx = |x: &str| x.parse::<usize>().map_err(|_| syntax("bad mark index"));
            arcs.push(match (kind, args.as_slice()) {
                ("trav", [t, b, w]) => Arc::Traversing { top: idx(t)?, bottom: idx(b)?, winding: int(w)? },
                ("par", [side, a, b]) => Arc::Parallel {
                    side: match *side {
                        "top" => Side::Top,
                        "bottom" => Side::Bottom,
                        _ => return Err(syntax("side must be top or bottom")),
                    },
                    from: idx(a)?,
                    to: idx(b)?,
                },
                _ => return Err(syntax("expected trav(t, b, w) or par(side, a, b)")),
            });
            rest = rest[close + 1..].trim();
        }
        ArcConfig::new(marks_top, marks_bottom, arcs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Piece {
    A,
    B,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GluedCurve {
    /// `(horizontal, vertical)`, sign-normalized so the first nonzero of
    /// `(vertical, horizontal)` is positive.
    pub class: (i64, i64),
    pub arcs: Vec<(Piece, usize)>,
}

impl GluedCurve {
    pub fn is_contractible(&self) -> bool {
        self.class == (0, 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GluedCurves {
    pub curves: Vec<GluedCurve>,
}

type Endpoint = (Side, usize);

fn endpoints(a: &Arc) -> [Endpoint; 2] {
    match *a {
        Arc::Traversing { top, bottom, .. } => [(Side::Top, top), (Side::Bottom, bottom)],
        Arc::Parallel { side, from, to } => [(side, from), (side, to)],
    }
}

/// Displacement (scaled by `nt * nb`) travelling `arc` starting at `start`.
fn displacement(arc: &Arc, start: Endpoint, nt: usize, nb: usize) -> i128 {
    let scale = (nt * nb) as i128;
    let forward = match *arc {
        Arc::Traversing { top, bottom, winding } => {
            (bottom * nt) as i128 + winding as i128 * scale - (top * nb) as i128
        }
        Arc::Parallel { side, from, to } => {
            let (n, unit) = if side == Side::Top { (nt, nb) } else { (nb, nt) };
            (((to + n - from) % n) * unit) as i128
        }
    };
    if start == endpoints(arc)[0] {
        forward
    } else {
        -forward
    }
}

/// Glues `b` to `a` along both boundary circles: mark `i` of `a` is
/// identified with mark `i + offset` of `b` on each side.
pub fn glue_annuli(
    a: &ArcConfig,
    b: &ArcConfig,
    offset_top: i64,
    offset_bottom: i64,
) -> Result<GluedCurves, DividingError> {
    if a.marks_top != b.marks_top || a.marks_bottom != b.marks_bottom {
        return Err(DividingError::MarkMismatch(a.marks_top, a.marks_bottom, b.marks_top, b.marks_bottom));
    }
    let (nt, nb) = (a.marks_top, a.marks_bottom);
    let ot = offset_top.rem_euclid(nt as i64) as usize;
    let ob = offset_bottom.rem_euclid(nb as i64) as usize;
    let to_b = |(s, i): Endpoint| match s {
        Side::Top => (s, (i + ot) % nt),
        Side::Bottom => (s, (i + ob) % nb),
    };
    let to_a = |(s, i): Endpoint| match s {
        Side::Top => (s, (i + nt - ot) % nt),
        Side::Bottom => (s, (i + nb - ob) % nb),
    };
    let index = |c: &ArcConfig| {
        let mut m = std::collections::BTreeMap::new();
        for (k, arc) in c.arcs.iter().enumerate() {
            for e in endpoints(arc) {
                m.insert(e, k);
            }
        }
        m
    };
    let (at_a, at_b) = (index(a), index(b));
    let scale = (nt * nb) as i128;
    // B coordinates run ahead of A's by the offsets
    let b_shift = (ot * nb) as i128 - (ob * nt) as i128;

    let mut used_a = vec![false; a.arcs.len()];
    let mut used_b = vec![false; b.arcs.len()];
    let mut curves = Vec::new();
    for start in 0..a.arcs.len() {
        if used_a[start] {
            continue;
        }
        let start_end = endpoints(&a.arcs[start])[0];
        let (mut piece_arcs, mut horiz, mut vert) = (Vec::new(), 0i128, 0i64);
        let mut arc_idx = start;
        let mut at = start_end;
        loop {
            used_a[arc_idx] = true;
            piece_arcs.push((Piece::A, arc_idx));
            let arc = &a.arcs[arc_idx];
            horiz += displacement(arc, at, nt, nb);
            let [e0, e1] = endpoints(arc);
            let out = if at == e0 { e1 } else { e0 };
            if at.0 != out.0 {
                vert += if at.0 == Side::Top { 1 } else { -1 };
            }
            // across to B
            let bin = to_b(out);
            let bk = at_b[&bin];
            used_b[bk] = true;
            piece_arcs.push((Piece::B, bk));
            let barc = &b.arcs[bk];
            horiz += displacement(barc, bin, nt, nb);
            let [f0, f1] = endpoints(barc);
            let bout = if bin == f0 { f1 } else { f0 };
            if bin.0 != bout.0 {
                horiz += if bin.0 == Side::Top { b_shift } else { -b_shift };
            }
            at = to_a(bout);
            arc_idx = at_a[&at];
            if arc_idx == start && at == start_end {
                break;
            }
        }
        debug_assert!(horiz % scale == 0);
        let mut class = ((horiz / scale) as i64, vert);
        if class.1 < 0 || (class.1 == 0 && class.0 < 0) {
            class = (-class.0, -class.1);
        }
        curves.push(GluedCurve { class, arcs: piece_arcs });
    }
    // every B arc lies on some curve through A
    debug_assert!(used_b.iter().all(|&u| u));
    Ok(GluedCurves { curves })
}

/// Giroux's criterion on a torus: the invariant neighbourhood is
/// overtwisted exactly when some dividing curve is contractible.
pub fn giroux_overtwisted(g: &GluedCurves) -> Result<bool, DividingError> {
    if g.curves.is_empty() {
        return Err(DividingError::EmptyDividingSet);
    }
    Ok(g.curves.iter().any(GluedCurve::is_contractible))
}

/// Dividing arcs on a horizontal annulus through a layer with `2n` marks
/// per side.
///
/// A non-rotative layer with holonomy `k` gives `2n` traversing arcs of
/// winding `k`. A rotative layer gives only boundary-parallel arcs, each
/// cutting off a positive region (`RotativePlus`) or a negative region
/// (`RotativeMinus`); the parameter `m` does not change the picture.
pub fn layer_to_annulus(layer: &TightLayerSpec, n: usize) -> Result<ArcConfig, DividingError> {
    if n == 0 {
        return Err(DividingError::Invalid("need at least one arc pair per side".into()));
    }
    let marks = 2 * n;
    let layer = layer.normalized();
    let arcs: Vec<Arc> = match layer.variant {
        LayerVariant::NonRotative { holonomy } => {
            if layer.twisting > 0 {
                return Err(DividingError::Unsupported(format!(
                    "non-rotative layer with twisting {}",
                    layer.twisting
                )));
            }
            (0..marks).map(|i| Arc::Traversing { top: i, bottom: i, winding: holonomy }).collect()
        }
        LayerVariant::RotativePlus { .. } | LayerVariant::RotativeMinus { .. } => {
            let start = usize::from(matches!(layer.variant, LayerVariant::RotativeMinus { .. }));
            [Side::Top, Side::Bottom]
                .into_iter()
                .flat_map(|side| {
                    (0..n).map(move |k| Arc::Parallel {
                        side,
                        from: (start + 2 * k) % marks,
                        to: (start + 2 * k + 1) % marks,
                    })
                })
                .collect()
        }
        LayerVariant::InvariantStd => unreachable!("normalized away"),
    };
    ArcConfig::new(marks, marks, arcs)
}

/// Two traversing arcs with the given winding on `2 + 2` marks.
pub fn two_traversing(winding: i64) -> ArcConfig {
    layer_to_annulus(&TightLayerSpec::non_rotative(winding), 1).expect("valid layer")
}

/// Least common multiple helper for callers combining mark counts.
pub fn common_marks(a: usize, b: usize) -> usize {
    a.lcm(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parallel_both() -> ArcConfig {
        layer_to_annulus(&TightLayerSpec::rotative_plus(1), 1).unwrap()
    }

    #[test]
    fn layer_examples() {
        let a = layer_to_annulus(&TightLayerSpec::non_rotative(0), 1).unwrap();
        assert_eq!(a.num_traversing(), 2);
        assert_eq!(a.winding(), Some(0));
        let a = layer_to_annulus(&TightLayerSpec::non_rotative(3), 1).unwrap();
        assert!(a.traversing().all(|t| t.2 == 3));
        let b = parallel_both();
        assert_eq!(b.arcs.len(), 2);
        assert!(b.arcs.contains(&Arc::Parallel { side: Side::Top, from: 0, to: 1 }));
        assert!(b.arcs.contains(&Arc::Parallel { side: Side::Bottom, from: 0, to: 1 }));
        let mut twisted = TightLayerSpec::non_rotative(0);
        twisted.twisting = 2;
        assert!(matches!(layer_to_annulus(&twisted, 1), Err(DividingError::Unsupported(_))));
        assert_eq!(layer_to_annulus(&TightLayerSpec::invariant(), 1).unwrap(), two_traversing(0));
    }

    #[test]
    fn traversing_against_traversing() {
        let g = glue_annuli(&two_traversing(0), &two_traversing(0), 0, 0).unwrap();
        assert_eq!(g.curves.len(), 2);
        assert!(g.curves.iter().all(|c| c.class == (0, 1)));
        assert_eq!(giroux_overtwisted(&g), Ok(false));
    }

    #[test]
    fn traversing_against_parallel() {
        let g = glue_annuli(&two_traversing(0), &parallel_both(), 0, 0).unwrap();
        assert_eq!(g.curves.len(), 1);
        assert_eq!(g.curves[0].class, (0, 0));
        assert_eq!(giroux_overtwisted(&g), Ok(true));
        let minus = layer_to_annulus(&TightLayerSpec::rotative_minus(2), 1).unwrap();
        let g = glue_annuli(&two_traversing(0), &minus, 0, 0).unwrap();
        assert_eq!(giroux_overtwisted(&g), Ok(true));
    }

    #[test]
    fn mismatched_marks() {
        let four = layer_to_annulus(&TightLayerSpec::non_rotative(0), 2).unwrap();
        assert!(matches!(
            glue_annuli(&two_traversing(0), &four, 0, 0),
            Err(DividingError::MarkMismatch(2, 2, 4, 4))
        ));
    }

    #[test]
    fn empty_dividing_set() {
        assert_eq!(giroux_overtwisted(&GluedCurves { curves: vec![] }), Err(DividingError::EmptyDividingSet));
        let ess = GluedCurves {
            curves: vec![
                GluedCurve { class: (0, 1), arcs: vec![] },
                GluedCurve { class: (0, 1), arcs: vec![] },
            ],
        };
        assert_eq!(giroux_overtwisted(&ess), Ok(false));
    }

    #[test]
    fn holonomy_mismatch_gives_slanted_curves() {
        let g = glue_annuli(&two_traversing(2), &two_traversing(-1), 0, 0).unwrap();
        assert!(g.curves.iter().all(|c| c.class == (3, 1)));
    }

    #[test]
    fn matching_holonomy_is_always_tight() {
        for k in -5..=5 {
            let g = glue_annuli(&two_traversing(k), &layer_to_annulus(&TightLayerSpec::non_rotative(k), 1).unwrap(), 0, 0)
                .unwrap();
            assert_eq!(giroux_overtwisted(&g), Ok(false));
            let g = glue_annuli(&two_traversing(k), &parallel_both(), 0, 0).unwrap();
            assert!(g.curves.iter().any(GluedCurve::is_contractible));
        }
    }

    #[test]
    fn offsets_by_a_full_period() {
        let a: ArcConfig = "top 4 bottom 2: trav(0, 0, 0) trav(1, 1, 0) par(top, 2, 3)".parse().unwrap();
        let b: ArcConfig = "top 4 bottom 2: trav(1, 1, 1) trav(2, 0, 2) par(top, 3, 0)".parse().unwrap();
        for (ot, ob) in [(0, 0), (1, 1), (2, 0), (3, 1)] {
            let g0 = glue_annuli(&a, &b, ot, ob).unwrap();
            let g1 = glue_annuli(&a, &b, ot + 4, ob + 2).unwrap();
            assert_eq!(g0, g1);
            let used: usize = g0.curves.iter().map(|c| c.arcs.len()).sum();
            assert_eq!(used, a.arcs.len() + b.arcs.len());
        }
    }

    #[test]
    fn literal_round_trip() {
        let a: ArcConfig = "top 2 bottom 2: trav(1, 1, 0) trav(0, 0, 0)".parse().unwrap();
        assert_eq!(a, two_traversing(0));
        assert_eq!(a.to_string().parse::<ArcConfig>().unwrap(), a);
        assert!("top 2 bottom 2: trav(0, 1, 0) trav(1, 0, 0)".parse::<ArcConfig>().is_err());
        assert!("top 2 bottom 2 trav(0, 0, 0)".parse::<ArcConfig>().is_err());
    }

    #[test]
    fn validation_catches_crossings() {
        let good = ArcConfig::new(
            4,
            4,
            vec![
                Arc::Traversing { top: 0, bottom: 2, winding: 0 },
                Arc::Traversing { top: 1, bottom: 3, winding: 0 },
                Arc::Parallel { side: Side::Top, from: 2, to: 3 },
                Arc::Parallel { side: Side::Bottom, from: 0, to: 1 },
            ],
        );
        assert!(good.is_ok());
        // the second arc wraps once more than the first, so they cross
        let crossing = ArcConfig::new(
            4,
            4,
            vec![
                Arc::Traversing { top: 0, bottom: 2, winding: 1 },
                Arc::Traversing { top: 1, bottom: 3, winding: 0 },
                Arc::Parallel { side: Side::Top, from: 2, to: 3 },
                Arc::Parallel { side: Side::Bottom, from: 0, to: 1 },
            ],
        );
        assert!(crossing.is_err());
        // a parallel arc around the far side swallows traversing endpoints
        let blocked = ArcConfig::new(
            4,
            2,
            vec![
                Arc::Traversing { top: 0, bottom: 0, winding: 0 },
                Arc::Traversing { top: 1, bottom: 1, winding: 0 },
                Arc::Parallel { side: Side::Top, from: 3, to: 2 },
            ],
        );
        assert!(blocked.is_err());
        let odd_gap = ArcConfig::new(
            4,
            2,
            vec![
                Arc::Traversing { top: 0, bottom: 0, winding: 0 },
                Arc::Traversing { top: 2, bottom: 1, winding: 0 },
                Arc::Parallel { side: Side::Top, from: 1, to: 3 },
            ],
        );
        assert!(odd_gap.is_err());
    }

    #[test]
    fn nesting() {
        let c: ArcConfig = "top 6 bottom 2: trav(0, 0, 0) trav(5, 1, 0) par(top, 1, 4) par(top, 2, 3)".parse().unwrap();
        assert_eq!(c.nesting_depths(), vec![0, 1]);
    }
}
