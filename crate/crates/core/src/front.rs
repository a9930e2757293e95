//! Combinatorial front projections of Legendrian links.
//!
//! A front is read left to right as a word of events on horizontal strands
//! numbered from the bottom, starting at 1:
//!
//! * `U<i>` (cup, a left cusp) creates two strands at positions `i, i+1`,
//! * `C<i>` (cap, a right cusp) joins the strands at `i, i+1`,
//! * `X<i>` crosses the strands at `i, i+1`.
//!
//! At a crossing the strand moving down (lower slope) is in front.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FrontEvent {
    Cup(usize),
    Cap(usize),
    Cross(usize),
}

impl FrontEvent {
    pub fn position(&self) -> usize {
        match *self {
            FrontEvent::Cup(i) | FrontEvent::Cap(i) | FrontEvent::Cross(i) => i,
        }
    }
}

impl fmt::Display for FrontEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FrontEvent::Cup(i) => write!(f, "U{i}"),
            FrontEvent::Cap(i) => write!(f, "C{i}"),
            FrontEvent::Cross(i) => write!(f, "X{i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrontError {
    #[error("bad token `{token}` at event {index}")]
    Syntax { token: String, index: usize },
    #[error("event {index} (`{event}`) is out of range with {strands} strands")]
    Position { index: usize, event: String, strands: usize },
    #[error("front is not closed: {strands} strands remain")]
    OpenDiagram { strands: usize },
    #[error("no component {0}")]
    UnknownComponent(usize),
    #[error("expected {expected} orientations, got {got}")]
    OrientationCount { expected: usize, got: usize },
}

/// A validated, closed front word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FrontWord {
    events: Vec<FrontEvent>,
}

impl FrontWord {
    /// Checks strand-count validity and closure.
    pub fn new(events: Vec<FrontEvent>) -> Result<Self, FrontError> {
        let mut strands = 0usize;
        for (index, ev) in events.iter().enumerate() {
            let ok = match *ev {
                FrontEvent::Cup(i) => (1..=strands + 1).contains(&i),
                FrontEvent::Cap(i) | FrontEvent::Cross(i) => i >= 1 && i < strands,
            };
            if !ok {
                return Err(FrontError::Position { index, event: ev.to_string(), strands });
            }
            match ev {
                FrontEvent::Cup(_) => strands += 2,
                FrontEvent::Cap(_) => strands -= 2,
                FrontEvent::Cross(_) => {}
            }
        }
        if strands != 0 {
            return Err(FrontError::OpenDiagram { strands });
        }
        Ok(FrontWord { events })
    }

    pub fn events(&self) -> &[FrontEvent] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }
}

impl fmt::Display for FrontWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.events.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl FromStr for FrontWord {
    type Err = FrontError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_front_word(s)
    }
}

/// Tokenizes `U<i> X<i> C<i>` words (case-insensitive, whitespace separated).
pub fn parse_front_word(text: &str) -> Result<FrontWord, FrontError> {
    let mut events = Vec::new();
    for (index, tok) in text.split_whitespace().enumerate() {
        let bad = || FrontError::Syntax { token: tok.to_string(), index };
        let mut chars = tok.chars();
        let kind = chars.next().ok_or_else(bad)?;
        let rest = chars.as_str();
        if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let pos: usize = rest.parse().map_err(|_| bad())?;
        events.push(match kind.to_ascii_uppercase() {
            'U' => FrontEvent::Cup(pos),
            'C' => FrontEvent::Cap(pos),
            'X' => FrontEvent::Cross(pos),
            _ => return Err(bad()),
        });
    }
    FrontWord::new(events)
}

/// A strand runs from the cup that creates it to the cap that ends it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Strand {
    pub cup: usize,
    pub cap: usize,
    /// Lower (`false`) or upper (`true`) end at its cup.
    pub upper_at_cup: bool,
    pub upper_at_cap: bool,
    pub component: usize,
}

/// A crossing, as the strands entering it from the left.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crossing {
    pub event: usize,
    /// Strand moving from position `i` up to `i+1`.
    pub rising: usize,
    /// Strand moving from `i+1` down to `i`; it is in front.
    pub falling: usize,
}

/// Strands, crossings and component partition of a front.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrontTrace {
    pub strands: Vec<Strand>,
    pub crossings: Vec<Crossing>,
    /// For every cup and cap event, the (lower, upper) strand pair.
    pub cusp_strands: Vec<Option<(usize, usize)>>,
    pub num_components: usize,
}

impl FrontTrace {
    /// Index of the first cup event of `component`.
    pub fn first_cup(&self, component: usize) -> Option<usize> {
        self.strands.iter().filter(|s| s.component == component).map(|s| s.cup).min()
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Threads strands through the word and groups them into components,
/// numbered by first appearance.
pub fn trace_components(w: &FrontWord) -> FrontTrace {
    let mut strands: Vec<Strand> = Vec::new();
    let mut positions: Vec<usize> = Vec::new();
    let mut crossings = Vec::new();
    let mut cusp_strands = vec![None; w.len()];
    let mut parent: Vec<usize> = Vec::new();

    for (ev_idx, ev) in w.events().iter().enumerate() {
        match *ev {
            FrontEvent::Cup(i) => {
                let lo = strands.len();
                for upper in [false, true] {
                    strands.push(Strand {
                        cup: ev_idx,
                        cap: usize::MAX,
                        upper_at_cup: upper,
                        upper_at_cap: false,
                        component: usize::MAX,
                    });
                    parent.push(strands.len() - 1);
                }
                parent[lo + 1] = lo;
                positions.splice(i - 1..i - 1, [lo, lo + 1]);
                cusp_strands[ev_idx] = Some((lo, lo + 1));
            }
            FrontEvent::Cap(i) => {
                let (lo, hi) = (positions[i - 1], positions[i]);
                strands[lo].cap = ev_idx;
                strands[lo].upper_at_cap = false;
                strands[hi].cap = ev_idx;
                strands[hi].upper_at_cap = true;
                let (a, b) = (find(&mut parent, lo), find(&mut parent, hi));
                parent[a] = b;
                positions.drain(i - 1..=i);
                cusp_strands[ev_idx] = Some((lo, hi));
            }
            FrontEvent::Cross(i) => {
                let (rising, falling) = (positions[i - 1], positions[i]);
                crossings.push(Crossing { event: ev_idx, rising, falling });
                positions.swap(i - 1, i);
            }
        }
    }

    let mut ids = std::collections::HashMap::new();
    for s in 0..strands.len() {
        let root = find(&mut parent, s);
        let next = ids.len();
        strands[s].component = *ids.entry(root).or_insert(next);
    }
    FrontTrace { strands, crossings, cusp_strands, num_components: ids.len() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// Leave the lower strand of the component's first cup moving right.
    Forward,
    Reverse,
}

impl Orientation {
    pub fn flipped(self) -> Self {
        match self {
            Orientation::Forward => Orientation::Reverse,
            Orientation::Reverse => Orientation::Forward,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedFront {
    pub word: FrontWord,
    pub orientation: Vec<Orientation>,
}

impl OrientedFront {
    pub fn new(word: FrontWord, orientation: Vec<Orientation>) -> Result<Self, FrontError> {
        let n = trace_components(&word).num_components;
        if orientation.len() != n {
            return Err(FrontError::OrientationCount { expected: n, got: orientation.len() });
        }
        Ok(OrientedFront { word, orientation })
    }

    pub fn forward(word: FrontWord) -> Self {
        let n = trace_components(&word).num_components;
        OrientedFront { word, orientation: vec![Orientation::Forward; n] }
    }

    pub fn num_components(&self) -> usize {
        self.orientation.len()
    }
}

/// Sign of a crossing from the horizontal directions (`+1` right, `-1`
/// left) of the front strand and the back strand. Calibrated so that the
/// standard unknot has `tb = -1` and the clasp `U1 U1 X2 X2 C1 C1`, both
/// components forward, links `+1`.
const SIGN_TABLE: [[i64; 2]; 2] = [
    // back:  left  right
    /* front left  */ [-1, 1],
    /* front right */ [1, -1],
];

fn crossing_sign(front_dir: i64, back_dir: i64) -> i64 {
    let idx = |d: i64| usize::from(d > 0);
    SIGN_TABLE[idx(front_dir)][idx(back_dir)]
}

/// Horizontal direction of each strand under the given orientations.
fn strand_directions(trace: &FrontTrace, orientation: &[Orientation]) -> Vec<i64> {
    let n = trace.strands.len();
    let mut dir = vec![0i64; n];
    // partner across each cup and cap
    let mut cup_partner = vec![0usize; n];
    let mut cap_partner = vec![0usize; n];
    for (ev, pair) in trace.cusp_strands.iter().enumerate() {
        let Some((lo, hi)) = *pair else { continue };
        let partner = if trace.strands[lo].cup == ev { &mut cup_partner } else { &mut cap_partner };
        partner[lo] = hi;
        partner[hi] = lo;
    }
    for (c, &o) in orientation.iter().enumerate() {
        let Some(first) = trace.first_cup(c) else { continue };
        let (lo, _) = trace.cusp_strands[first].expect("cup event");
        let start_dir = if o == Orientation::Forward { 1 } else { -1 };
        let mut s = lo;
        let mut d = start_dir;
        loop {
            dir[s] = d;
            // moving right ends at the cap, moving left at the cup
            s = if d > 0 { cap_partner[s] } else { cup_partner[s] };
            d = -d;
            if s == lo {
                break;
            }
        }
    }
    dir
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ComponentInvariants {
    pub tb: i64,
    pub rot: i64,
    pub self_writhe: i64,
    pub up_cusps: usize,
    pub down_cusps: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrontInvariants {
    pub components: Vec<ComponentInvariants>,
    /// Nonzero `(i, j, lk)` with `i < j`.
    pub linking: Vec<(usize, usize, i64)>,
}

impl FrontInvariants {
    pub fn lk(&self, i: usize, j: usize) -> i64 {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        self.linking.iter().find(|e| e.0 == a && e.1 == b).map_or(0, |e| e.2)
    }
}

/// `tb = writhe − #right cusps`, `rot = (#down − #up cusps) / 2`, and
/// `lk = (Σ mixed crossing signs) / 2`.
pub fn classical_invariants(f: &OrientedFront) -> FrontInvariants {
    let trace = trace_components(&f.word);
    let dir = strand_directions(&trace, &f.orientation);
    let n = trace.num_components;
    let mut writhe = vec![0i64; n];
    let mut caps = vec![0usize; n];
    let mut up = vec![0usize; n];
    let mut down = vec![0usize; n];
    let mut mixed = vec![vec![0i64; n]; n];

    for x in &trace.crossings {
        let sign = crossing_sign(dir[x.falling], dir[x.rising]);
        let (a, b) = (trace.strands[x.falling].component, trace.strands[x.rising].component);
        if a == b {
            writhe[a] += sign;
        } else {
            mixed[a.min(b)][a.max(b)] += sign;
        }
    }
    for (ev, pair) in trace.cusp_strands.iter().enumerate() {
        let Some((lo, _)) = *pair else { continue };
        let c = trace.strands[lo].component;
        let is_cup = matches!(f.word.events()[ev], FrontEvent::Cup(_));
        if !is_cup {
            caps[c] += 1;
        }
        // a cup is traversed downward when its lower strand heads right,
        // a cap when its lower strand heads left
        let downward = if is_cup { dir[lo] > 0 } else { dir[lo] < 0 };
        if downward {
            down[c] += 1;
        } else {
            up[c] += 1;
        }
    }

    let components = (0..n)
        .map(|c| ComponentInvariants {
            tb: writhe[c] - caps[c] as i64,
            rot: (down[c] as i64 - up[c] as i64) / 2,
            self_writhe: writhe[c],
            up_cusps: up[c],
            down_cusps: down[c],
        })
        .collect();
    let mut linking = Vec::new();
    for (i, row) in mixed.iter().enumerate() {
        for (j, &v) in row.iter().enumerate().skip(i + 1) {
            debug_assert!(v % 2 == 0);
            if v != 0 {
                linking.push((i, j, v / 2));
            }
        }
    }
    FrontInvariants { components, linking }
}

/// Adds a zigzag to `component` just after its first cup, on the lower
/// strand there. `rot_delta` (`+1` or `-1`) picks which zigzag, so that
/// the rotation number moves by exactly that amount; `tb` drops by one.
pub fn stabilize(f: &OrientedFront, component: usize, rot_delta: i64) -> Result<OrientedFront, FrontError> {
    if component >= f.num_components() {
        return Err(FrontError::UnknownComponent(component));
    }
    assert!(rot_delta == 1 || rot_delta == -1, "rotation change must be ±1");
    let trace = trace_components(&f.word);
    let cup = trace.first_cup(component).ok_or(FrontError::UnknownComponent(component))?;
    let p = f.word.events()[cup].position();
    let dir = if f.orientation[component] == Orientation::Forward { 1 } else { -1 };
    // a downward zigzag on a rightward strand adds two down cusps
    let zigzag = if rot_delta * dir > 0 {
        [FrontEvent::Cup(p), FrontEvent::Cap(p + 1)]
    } else {
        [FrontEvent::Cup(p + 1), FrontEvent::Cap(p)]
    };
    let mut events = f.word.events().to_vec();
    events.splice(cup + 1..cup + 1, zigzag);
    let word = FrontWord::new(events).expect("zigzag keeps the word valid");
    Ok(OrientedFront { word, orientation: f.orientation.clone() })
}

/// Builds a closed front from arbitrary choices; used for random testing
/// and benchmarks. Each `(kind, pos)` adds a cup, cap or crossing when
/// legal (at most `max_strands` strands), and the word is closed by caps.
pub fn closed_word_from_choices(choices: &[(u8, u8)], max_strands: usize) -> FrontWord {
    let mut events = Vec::new();
    let mut strands = 0usize;
    for &(kind, pos) in choices {
        let pos = pos as usize;
        match kind % 3 {
            1 if strands >= 2 => {
                events.push(FrontEvent::Cap(pos % (strands - 1) + 1));
                strands -= 2;
            }
            2 if strands >= 2 => events.push(FrontEvent::Cross(pos % (strands - 1) + 1)),
            _ if strands + 2 <= max_strands.max(2) => {
                events.push(FrontEvent::Cup(pos % (strands + 1) + 1));
                strands += 2;
            }
            _ => {}
        }
    }
    if events.is_empty() {
        events.push(FrontEvent::Cup(1));
        strands = 2;
    }
    while strands > 0 {
        events.push(FrontEvent::Cap(1));
        strands -= 2;
    }
    FrontWord::new(events).expect("construction keeps the word valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn inv(word: &str) -> FrontInvariants {
        classical_invariants(&OrientedFront::forward(word.parse().unwrap()))
    }

    #[test]
    fn parse_examples() {
        let w = parse_front_word("U1 C1").unwrap();
        assert_eq!(w.len(), 2);
        assert_eq!(trace_components(&w).num_components, 1);
        let w = parse_front_word("U1 U1 X2 X2 C1 C1").unwrap();
        assert_eq!(w.len(), 6);
        assert_eq!(trace_components(&w).num_components, 2);
        assert!(matches!(parse_front_word("U3"), Err(FrontError::Position { index: 0, .. })));
        assert!(matches!(parse_front_word("U1"), Err(FrontError::OpenDiagram { strands: 2 })));
        assert!(matches!(parse_front_word("U1 Q1"), Err(FrontError::Syntax { index: 1, .. })));
        assert!(matches!(parse_front_word("U1 C"), Err(FrontError::Syntax { .. })));
        assert!(matches!(parse_front_word("U1 X2 C1"), Err(FrontError::Position { index: 1, .. })));
        assert!(parse_front_word("U1 X1 C1").is_ok());
        assert!(parse_front_word("").unwrap().is_empty());
    }

    #[test]
    fn nested_cups_are_a_split_unlink() {
        let w = parse_front_word("U1 U1 C1 C1").unwrap();
        assert_eq!(trace_components(&w).num_components, 2);
        let i = inv("U1 U1 C1 C1");
        assert!(i.linking.is_empty());
        assert!(i.components.iter().all(|c| c.tb == -1 && c.rot == 0));
    }

    #[test]
    fn unknot() {
        let i = inv("U1 C1");
        assert_eq!((i.components[0].tb, i.components[0].rot), (-1, 0));
    }

    #[test]
    fn clasp_calibration() {
        let i = inv("U1 U1 X2 X2 C1 C1");
        assert_eq!(i.components.iter().map(|c| c.tb).collect::<Vec<_>>(), vec![-1, -1]);
        assert_eq!(i.lk(0, 1), 1);
    }

    #[test]
    fn figure_eight_shaped_unknot_with_crossings() {
        // a twisted unknot: tb = writhe - 2
        let i = inv("U1 X1 C1");
        assert_eq!(i.components.len(), 1);
        assert_eq!(i.components[0].up_cusps + i.components[0].down_cusps, 2);
    }

    #[test]
    fn stabilization_examples() {
        let f = OrientedFront::forward("U1 C1".parse().unwrap());
        for delta in [1, -1] {
            let g = stabilize(&f, 0, delta).unwrap();
            let c = classical_invariants(&g).components[0];
            assert_eq!((c.tb, c.rot), (-2, delta));
        }
        assert_eq!(stabilize(&f, 1, 1), Err(FrontError::UnknownComponent(1)));
    }

    #[test]
    fn printing_round_trips() {
        let w = parse_front_word("u1  U1 x2 X2 c1 C1").unwrap();
        assert_eq!(w.to_string(), "U1 U1 X2 X2 C1 C1");
        assert_eq!(parse_front_word(&w.to_string()).unwrap(), w);
    }

    fn arb_word() -> impl Strategy<Value = FrontWord> {
        prop::collection::vec((0u8..3, 0u8..16), 0..40).prop_map(|c| closed_word_from_choices(&c, 8))
    }

    proptest! {
        #[test]
        fn cusps_balance(w in arb_word()) {
            let t = trace_components(&w);
            let mut cups = vec![0; t.num_components];
            let mut caps = vec![0; t.num_components];
            for (ev, pair) in t.cusp_strands.iter().enumerate() {
                if let Some((lo, _)) = pair {
                    let c = t.strands[*lo].component;
                    match w.events()[ev] {
                        FrontEvent::Cup(_) => cups[c] += 1,
                        _ => caps[c] += 1,
                    }
                }
            }
            prop_assert_eq!(cups, caps);
        }

        #[test]
        fn tb_plus_rot_is_odd(w in arb_word()) {
            for c in inv(&w.to_string()).components {
                prop_assert_eq!((c.tb + c.rot).rem_euclid(2), 1);
                prop_assert_eq!((c.up_cusps + c.down_cusps) % 2, 0);
            }
        }

        #[test]
        fn reversing_a_component(w in arb_word(), pick in 0usize..8) {
            let f = OrientedFront::forward(w);
            let c = pick % f.num_components();
            let mut g = f.clone();
            g.orientation[c] = g.orientation[c].flipped();
            let (a, b) = (classical_invariants(&f), classical_invariants(&g));
            for i in 0..f.num_components() {
                prop_assert_eq!(a.components[i].tb, b.components[i].tb);
                let expect = if i == c { -a.components[i].rot } else { a.components[i].rot };
                prop_assert_eq!(b.components[i].rot, expect);
                for j in 0..f.num_components() {
                    if i != j {
                        let flips = (i == c) != (j == c);
                        let expect = if flips { -a.lk(i, j) } else { a.lk(i, j) };
                        prop_assert_eq!(b.lk(i, j), expect);
                    }
                }
            }
        }

        #[test]
        fn stabilization_is_local(w in arb_word(), pick in 0usize..8, up in any::<bool>(), rev in any::<bool>()) {
            let mut f = OrientedFront::forward(w);
            let c = pick % f.num_components();
            if rev {
                f.orientation[c] = Orientation::Reverse;
            }
            let delta = if up { 1 } else { -1 };
            let g = stabilize(&f, c, delta).unwrap();
            let (a, b) = (classical_invariants(&f), classical_invariants(&g));
            prop_assert_eq!(b.components.len(), a.components.len());
            for i in 0..a.components.len() {
                if i == c {
                    prop_assert_eq!(b.components[i].tb, a.components[i].tb - 1);
                    prop_assert_eq!(b.components[i].rot, a.components[i].rot + delta);
                } else {
                    prop_assert_eq!(b.components[i], a.components[i]);
                }
            }
            prop_assert_eq!(a.linking, b.linking);
        }

        #[test]
        fn print_parse_identity(w in arb_word()) {
            prop_assert_eq!(parse_front_word(&w.to_string()).unwrap(), w);
        }
    }
}
