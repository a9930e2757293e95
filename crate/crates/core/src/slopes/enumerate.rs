//! Arc configurations on an annulus with `2n₀` top and `2n₁` bottom marks,
//! at least two traversing arcs and no closed curves.

use crate::dividing::{Arc, ArcConfig, Side};
use crate::exec::Exec;

/// One boundary circle: the marks hit by traversing arcs (sorted) and a
/// non-crossing matching of the rest.
#[derive(Debug, Clone)]
struct SideChoice {
    traversing: Vec<usize>,
    parallel: Vec<(usize, usize)>,
}

/// Non-crossing perfect matchings of a run of marks, each pair written in
/// the order that cuts off the inner segment.
fn run_matchings(run: &[usize]) -> Vec<Vec<(usize, usize)>> {
    if run.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for j in (1..run.len()).step_by(2) {
        let inner = run_matchings(&run[1..j]);
        let outer = run_matchings(&run[j + 1..]);
        for i in &inner {
            for o in &outer {
                let mut m = vec![(run[0], run[j])];
                m.extend_from_slice(i);
                m.extend_from_slice(o);
                out.push(m);
            }
        }
    }
    out
}

/// Subsets of `Z/n` of size `t` whose cyclic gaps all hold an even number of marks.
fn traversing_sets(n: usize, t: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, t: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == t {
            // wrap-around gap from last back to first
            if (cur[0] + n - cur[t - 1] - 1) % 2 == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let start = cur.last().map_or(0, |&l| l + 1);
        for x in (start..n).step_by(if cur.is_empty() { 1 } else { 2 }) {
            cur.push(x);
            go(n, t, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, t, &mut Vec::with_capacity(t), &mut out);
    out
}

fn side_choices(n: usize, t: usize) -> Vec<SideChoice> {
    let mut out = Vec::new();
    for set in traversing_sets(n, t) {
        let mut partial: Vec<Vec<(usize, usize)>> = vec![vec![]];
        for k in 0..t {
            let (a, b) = (set[k], set[(k + 1) % t]);
            let len = (b + n - a - 1) % n;
            let run: Vec<usize> = (1..=len).map(|d| (a + d) % n).collect();
            let options = run_matchings(&run);
            partial = partial
                .iter()
                .flat_map(|p| {
                    options.iter().map(move |o| {
                        let mut q = p.clone();
                        q.extend_from_slice(o);
                        q
                    })
                })
                .collect();
        }
        out.extend(partial.into_iter().map(|parallel| SideChoice { traversing: set.clone(), parallel }));
    }
    out
}

/// Every configuration whose winding lies in `[-max_winding, max_winding]`,
/// ordered by winding.
pub fn enumerate_configurations(n0: usize, n1: usize, max_winding: u32) -> Vec<ArcConfig> {
    enumerate_configurations_with(n0, n1, max_winding, Exec::default())
}

pub fn enumerate_configurations_with(n0: usize, n1: usize, max_winding: u32, exec: Exec) -> Vec<ArcConfig> {
    assert!(n0 >= 1 && n1 >= 1, "need at least one pair of marks per side");
    let (nt, nb) = (2 * n0, 2 * n1);
    let mut shapes: Vec<(SideChoice, SideChoice, usize)> = Vec::new();
    for t in (2..=nt.min(nb)).step_by(2) {
        let tops = side_choices(nt, t);
        let bottoms = side_choices(nb, t);
        for top in &tops {
            for bottom in &bottoms {
                for s in 0..t {
                    if top.traversing[0] % 2 == bottom.traversing[s] % 2 {
                        shapes.push((top.clone(), bottom.clone(), s));
                    }
                }
            }
        }
    }
    let w = i64::from(max_winding);
    let windings: Vec<i64> = (-w..=w).collect();
    exec.flat_map(&windings, |&winding| {
        shapes
            .iter()
            .map(|(top, bottom, s)| {
                let t = top.traversing.len();
                let mut arcs: Vec<Arc> = (0..t)
                    .map(|k| Arc::Traversing {
                        top: top.traversing[k],
                        bottom: bottom.traversing[(k + s) % t],
                        winding: if k + s < t { winding } else { winding + 1 },
                    })
                    .collect();
                for (side, choice) in [(Side::Top, top), (Side::Bottom, bottom)] {
                    arcs.extend(choice.parallel.iter().map(|&(from, to)| Arc::Parallel { side, from, to }));
                }
                ArcConfig::new(nt, nb, arcs).expect("constructed configuration is valid")
            })
            .collect()
    })
}
