#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use crs_core::dividing::{Arc, Side};
use crs_core::{ContactSurgeryDiagram, LegendrianComponent, RoundSurgeryDiagram, SlopeQ, TightLayerSpec};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn fixtures() -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(fixtures_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "crs"))
        .collect();
    v.sort();
    v
}

/// A Legendrian knot type's invariants: `tb ≤ -1` and `rot ≡ tb + 1 (mod 2)`
/// with `|rot| ≤ -tb - 1`, as for stabilized unknots.
pub fn random_component(rng: &mut ChaCha8Rng, label: String) -> LegendrianComponent {
    let tb: i64 = rng.gen_range(-5..=-1);
    let span = -tb - 1;
    let rot = -span + 2 * rng.gen_range(0..=span);
    LegendrianComponent::new(label, tb, rot)
}

pub fn random_pm1(rng: &mut ChaCha8Rng, max_components: usize) -> ContactSurgeryDiagram {
    let n = rng.gen_range(1..=max_components);
    let mut d = ContactSurgeryDiagram::new("random");
    for i in 0..n {
        let c = random_component(rng, format!("K{i}"));
        let s = if rng.gen_bool(0.5) { SlopeQ::ONE } else { SlopeQ::MINUS_ONE };
        d.push(c, s);
    }
    for i in 0..n {
        for j in i + 1..n {
            let lk = rng.gen_range(-3..=3);
            d.linking.set(&format!("K{i}"), &format!("K{j}"), lk).unwrap();
        }
    }
    d
}

/// Nice joint pairs, each with round-2 coefficient `-1`.
pub fn random_nice(rng: &mut ChaCha8Rng) -> RoundSurgeryDiagram {
    let pairs = rng.gen_range(1..=3);
    let mut d = RoundSurgeryDiagram::new("nice");
    for i in 0..2 * pairs {
        d.components.push(random_component(rng, format!("K{i}")));
    }
    for i in 0..2 * pairs {
        for j in i + 1..2 * pairs {
            d.linking.set(&format!("K{i}"), &format!("K{j}"), rng.gen_range(-3..=3)).unwrap();
        }
    }
    for p in 0..pairs {
        let k = rng.gen_range(-4..=4);
        let layer = if rng.gen_bool(0.5) { TightLayerSpec::invariant() } else { TightLayerSpec::non_rotative(0) };
        d.add_joint_pair(&format!("K{}", 2 * p), &format!("K{}", 2 * p + 1), (k, k), SlopeQ::MINUS_ONE, layer);
    }
    d
}

/// All arc systems on the annulus with `2 n0` top and `2 n1` bottom marks
/// and the given winding, by brute force: every perfect matching of the
/// marks, every orientation of each parallel arc and a range of windings,
/// filtered by disjointness of the lifts to the strip.
pub fn brute_force_configs(n0: usize, n1: usize, winding: i64) -> BTreeSet<Vec<Arc>> {
    let (nt, nb) = (2 * n0, 2 * n1);
    let period = (nt * nb) as i64;
    let pos = |side: Side, i: usize| match side {
        Side::Top => (i * nb) as i64,
        Side::Bottom => (i * nt) as i64,
    };
    type Mark = (Side, usize);
    fn matchings(points: &[Mark]) -> Vec<Vec<(Mark, Mark)>> {
        if points.is_empty() {
            return vec![vec![]];
        }
        let mut out = vec![];
        for j in 1..points.len() {
            let rest: Vec<Mark> =
                points[1..].iter().enumerate().filter(|(i, _)| i + 1 != j).map(|(_, p)| *p).collect();
            for mut m in matchings(&rest) {
                m.push((points[0], points[j]));
                out.push(m);
            }
        }
        out
    }
    let inside = |a: i64, len: i64, x: i64| {
        let off = (x - a).rem_euclid(period);
        off > 0 && off < len
    };
    let disjoint = |x: &Arc, y: &Arc| -> bool {
        match (*x, *y) {
            (Arc::Traversing { top: t1, bottom: b1, winding: w1 }, Arc::Traversing { top: t2, bottom: b2, winding: w2 }) => {
                (-6..=6).all(|n: i64| {
                    let dx = pos(Side::Top, t1) - pos(Side::Top, t2) - n * period;
                    let dy = pos(Side::Bottom, b1) + w1 * period - pos(Side::Bottom, b2) - w2 * period - n * period;
                    dx.signum() == dy.signum()
                })
            }
            (Arc::Parallel { side, from, to }, other) | (other, Arc::Parallel { side, from, to }) => {
                let a = pos(side, from);
                let len = (pos(side, to) - a).rem_euclid(period);
                match other {
                    Arc::Traversing { top, bottom, .. } => {
                        let e = if side == Side::Top { pos(side, top) } else { pos(side, bottom) };
                        !inside(a, len, e)
                    }
                    Arc::Parallel { side: s2, from: f2, to: t2 } => {
                        s2 != side || inside(a, len, pos(side, f2)) == inside(a, len, pos(side, t2))
                    }
                }
            }
        }
    };
    let points: Vec<Mark> = (0..nt).map(|i| (Side::Top, i)).chain((0..nb).map(|j| (Side::Bottom, j))).collect();
    let mut found = BTreeSet::new();
    for m in matchings(&points) {
        let mut partial: Vec<Vec<Arc>> = vec![vec![]];
        for &(p, q) in &m {
            let options: Vec<Arc> = match (p, q) {
                ((Side::Top, i), (Side::Bottom, j)) | ((Side::Bottom, j), (Side::Top, i)) => {
                    (winding - 2..=winding + 2).map(|w| Arc::Traversing { top: i, bottom: j, winding: w }).collect()
                }
                ((s, i), (_, j)) => vec![Arc::Parallel { side: s, from: i, to: j }, Arc::Parallel { side: s, from: j, to: i }],
            };
            partial = partial
                .iter()
                .flat_map(|p| options.iter().map(move |o| [p.clone(), vec![*o]].concat()))
                .filter(|arcs| {
                    let new = arcs.last().unwrap();
                    arcs[..arcs.len() - 1].iter().all(|a| disjoint(a, new))
                })
                .collect();
        }
        for mut arcs in partial {
            let trav: Vec<(usize, usize, i64)> = arcs
                .iter()
                .filter_map(|a| match *a {
                    Arc::Traversing { top, bottom, winding } => Some((top, bottom, winding)),
                    _ => None,
                })
                .collect();
            if trav.len() < 2 || trav.iter().any(|t| t.0 % 2 != t.1 % 2) {
                continue;
            }
            if trav.iter().min_by_key(|t| t.0).unwrap().2 != winding {
                continue;
            }
            arcs.sort();
            found.insert(arcs);
        }
    }
    found
}
