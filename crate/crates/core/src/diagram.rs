//! Legendrian surgery diagrams: contact Dehn diagrams and round diagrams.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::slope::SlopeQ;

/// A Legendrian knot in `(S³, ξ_st)` described by its classical invariants.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LegendrianComponent {
    pub label: String,
    pub tb: i64,
    pub rot: i64,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
}

impl LegendrianComponent {
    pub fn new(label: impl Into<String>, tb: i64, rot: i64) -> Self {
        LegendrianComponent { label: label.into(), tb, rot, note: String::new() }
    }
}

/// Pairwise linking numbers keyed by unordered label pairs. Absent pairs link zero.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LinkingData {
    entries: BTreeMap<(String, String), i64>,
}

fn key(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

impl LinkingData {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sets `lk(a, b) = lk(b, a) = value`. Diagonal entries are rejected.
    pub fn set(&mut self, a: &str, b: &str, value: i64) -> Result<(), Violation> {
        if a == b {
            return Err(Violation::SelfLinking { label: a.to_string() });
        }
        if value == 0 {
            self.entries.remove(&key(a, b));
        } else {
            self.entries.insert(key(a, b), value);
        }
        Ok(())
    }

    pub fn get(&self, a: &str, b: &str) -> i64 {
        if a == b {
            return 0;
        }
        self.entries.get(&key(a, b)).copied().unwrap_or(0)
    }

    /// Nonzero entries as `(a, b, lk)` with `a < b`, in label order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &str, i64)> {
        self.entries.iter().map(|((a, b), v)| (a.as_str(), b.as_str(), *v))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Copies entries whose endpoints both survive `rename`, renaming them.
    pub fn renamed(&self, rename: impl Fn(&str) -> Option<String>) -> LinkingData {
        let mut out = LinkingData::new();
        for (a, b, v) in self.iter() {
            if let (Some(a2), Some(b2)) = (rename(a), rename(b)) {
                out.entries.insert(key(&a2, &b2), v);
            }
        }
        out
    }

    pub(crate) fn extend(&mut self, other: &LinkingData) {
        for (k, v) in &other.entries {
            self.entries.insert(k.clone(), *v);
        }
    }
}

#[derive(Serialize, Deserialize)]
struct LinkEntry {
    a: String,
    b: String,
    lk: i64,
}

impl Serialize for LinkingData {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let list: Vec<LinkEntry> = self
            .iter()
            .map(|(a, b, lk)| LinkEntry { a: a.into(), b: b.into(), lk })
            .collect();
        list.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LinkingData {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let list = Vec::<LinkEntry>::deserialize(deserializer)?;
        let mut out = LinkingData::new();
        for e in list {
            out.set(&e.a, &e.b, e.lk).map_err(serde::de::Error::custom)?;
        }
        Ok(out)
    }
}

/// A framed Legendrian link with contact Dehn coefficients measured against `λ_c`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContactSurgeryDiagram {
    pub name: String,
    pub components: Vec<LegendrianComponent>,
    pub linking: LinkingData,
    pub coefficients: BTreeMap<String, SlopeQ>,
}

impl ContactSurgeryDiagram {
    pub fn new(name: impl Into<String>) -> Self {
        ContactSurgeryDiagram {
            name: name.into(),
            components: Vec::new(),
            linking: LinkingData::new(),
            coefficients: BTreeMap::new(),
        }
    }

    pub fn component(&self, label: &str) -> Option<&LegendrianComponent> {
        self.components.iter().find(|c| c.label == label)
    }

    pub fn push(&mut self, component: LegendrianComponent, coefficient: SlopeQ) {
        self.coefficients.insert(component.label.clone(), coefficient);
        self.components.push(component);
    }

    pub fn is_pm1(&self) -> bool {
        self.components.iter().all(|c| {
            matches!(self.coefficients.get(&c.label), Some(s) if *s == SlopeQ::ONE || *s == SlopeQ::MINUS_ONE)
        })
    }
}

/// Tight contact structure chosen on the glued thickened torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LayerVariant {
    /// `I`-invariant neighbourhood of the standard convex torus.
    InvariantStd,
    /// Minimal-twisting non-rotative layer with the given holonomy.
    NonRotative { holonomy: i64 },
    RotativePlus { m: u32 },
    RotativeMinus { m: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TightLayerSpec {
    pub variant: LayerVariant,
    pub twisting: u32,
}

impl TightLayerSpec {
    pub fn invariant() -> Self {
        TightLayerSpec { variant: LayerVariant::InvariantStd, twisting: 0 }
    }

    pub fn non_rotative(holonomy: i64) -> Self {
        TightLayerSpec { variant: LayerVariant::NonRotative { holonomy }, twisting: 0 }
    }

    pub fn rotative_plus(m: u32) -> Self {
        TightLayerSpec { variant: LayerVariant::RotativePlus { m }, twisting: 1 }
    }

    pub fn rotative_minus(m: u32) -> Self {
        TightLayerSpec { variant: LayerVariant::RotativeMinus { m }, twisting: 1 }
    }

    /// The invariant neighbourhood and the zero-holonomy minimal-twisting
    /// layer are the same structure; both normalize to `NonRotative(0)`.
    pub fn normalized(&self) -> Self {
        match self.variant {
            LayerVariant::InvariantStd => TightLayerSpec::non_rotative(0),
            _ => *self,
        }
    }

    pub fn is_zero_holonomy_minimal(&self) -> bool {
        self.normalized() == TightLayerSpec::non_rotative(0)
    }

    pub fn is_rotative(&self) -> bool {
        matches!(self.variant, LayerVariant::RotativePlus { .. } | LayerVariant::RotativeMinus { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Round1Spec {
    pub pair: (String, String),
    pub coeff_a: i64,
    pub coeff_b: i64,
    pub layer: TightLayerSpec,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Round2Spec {
    pub knot: String,
    pub coeff: SlopeQ,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub joint_with: Option<usize>,
}

/// Round 1-surgeries on two-component sublinks and round 2-surgeries on
/// knots, optionally tied together into joint pairs. `dehn` holds any
/// ordinary contact Dehn coefficients written alongside them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundSurgeryDiagram {
    pub name: String,
    pub components: Vec<LegendrianComponent>,
    pub linking: LinkingData,
    pub round1: Vec<Round1Spec>,
    pub round2: Vec<Round2Spec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub dehn: BTreeMap<String, SlopeQ>,
}

impl RoundSurgeryDiagram {
    pub fn new(name: impl Into<String>) -> Self {
        RoundSurgeryDiagram {
            name: name.into(),
            components: Vec::new(),
            linking: LinkingData::new(),
            round1: Vec::new(),
            round2: Vec::new(),
            dehn: BTreeMap::new(),
        }
    }

    pub fn component(&self, label: &str) -> Option<&LegendrianComponent> {
        self.components.iter().find(|c| c.label == label)
    }

    /// Adds a joint pair: round 1 on `(a, b)` and round 2 on `b`.
    pub fn add_joint_pair(
        &mut self,
        a: &str,
        b: &str,
        coeffs: (i64, i64),
        r2: SlopeQ,
        layer: TightLayerSpec,
    ) -> usize {
        let idx = self.round1.len();
        self.round1.push(Round1Spec {
            pair: (a.to_string(), b.to_string()),
            coeff_a: coeffs.0,
            coeff_b: coeffs.1,
            layer,
        });
        self.round2.push(Round2Spec { knot: b.to_string(), coeff: r2, joint_with: Some(idx) });
        idx
    }

    /// The round-2 spec whose `joint_with` names round-1 spec `idx`.
    pub fn joint_partner(&self, idx: usize) -> Option<&Round2Spec> {
        self.round2.iter().find(|r| r.joint_with == Some(idx))
    }
}

/// A broken type invariant. Violations are data, not errors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    DuplicateLabel { label: String },
    UnknownLabel { label: String },
    SelfLinking { label: String },
    MissingCoefficient { label: String },
    NotPm1 { label: String },
    SelfPair { label: String },
    MultipleRound1 { label: String },
    JointOutOfRange { round2: usize, joint_with: usize },
    JointMismatch { round2: usize, knot: String, expected: String },
    RotativeWithoutTwisting { round1: usize },
    ZeroRotativeParameter { round1: usize },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::DuplicateLabel { label } => write!(f, "duplicate component label `{label}`"),
            Violation::UnknownLabel { label } => write!(f, "unknown component `{label}`"),
            Violation::SelfLinking { label } => write!(f, "linking number of `{label}` with itself"),
            Violation::MissingCoefficient { label } => write!(f, "component `{label}` has no surgery coefficient"),
            Violation::NotPm1 { label } => write!(f, "coefficient on `{label}` is not +1 or -1"),
            Violation::SelfPair { label } => write!(f, "round 1-surgery pairs `{label}` with itself"),
            Violation::MultipleRound1 { label } => write!(f, "`{label}` carries more than one round 1-surgery"),
            Violation::JointOutOfRange { round2, joint_with } => {
                write!(f, "round 2-surgery {round2} joins missing round 1-surgery {joint_with}")
            }
            Violation::JointMismatch { round2, knot, expected } => {
                write!(f, "round 2-surgery {round2} sits on `{knot}` but its partner expects `{expected}`")
            }
            Violation::RotativeWithoutTwisting { round1 } => {
                write!(f, "round 1-surgery {round1} has a rotative layer with zero twisting")
            }
            Violation::ZeroRotativeParameter { round1 } => {
                write!(f, "round 1-surgery {round1} has a rotative layer with m = 0")
            }
        }
    }
}

fn check_labels<'a>(
    components: &'a [LegendrianComponent],
    linking: &LinkingData,
    out: &mut Vec<Violation>,
) -> BTreeSet<&'a str> {
    let mut seen = BTreeSet::new();
    for c in components {
        if !seen.insert(c.label.as_str()) {
            out.push(Violation::DuplicateLabel { label: c.label.clone() });
        }
    }
    for (a, b, _) in linking.iter() {
        for l in [a, b] {
            if !seen.contains(l) {
                out.push(Violation::UnknownLabel { label: l.to_string() });
            }
        }
    }
    seen
}

/// All invariant violations of a contact Dehn diagram; empty when well formed.
pub fn validate_contact(d: &ContactSurgeryDiagram) -> Vec<Violation> {
    let mut out = Vec::new();
    let labels = check_labels(&d.components, &d.linking, &mut out);
    for c in &d.components {
        if !d.coefficients.contains_key(&c.label) {
            out.push(Violation::MissingCoefficient { label: c.label.clone() });
        }
    }
    for l in d.coefficients.keys() {
        if !labels.contains(l.as_str()) {
            out.push(Violation::UnknownLabel { label: l.clone() });
        }
    }
    out.sort();
    out.dedup();
    out
}

/// As [`validate_contact`], additionally requiring every coefficient to be `±1`.
pub fn validate_pm1(d: &ContactSurgeryDiagram) -> Vec<Violation> {
    let mut out = validate_contact(d);
    for (l, s) in &d.coefficients {
        if *s != SlopeQ::ONE && *s != SlopeQ::MINUS_ONE {
            out.push(Violation::NotPm1 { label: l.clone() });
        }
    }
    out.sort();
    out
}

/// All invariant violations of a round diagram; empty when well formed.
pub fn validate_diagram(d: &RoundSurgeryDiagram) -> Vec<Violation> {
    let mut out = Vec::new();
    let labels = check_labels(&d.components, &d.linking, &mut out);
    let known = |l: &str, out: &mut Vec<Violation>| {
        if !labels.contains(l) {
            out.push(Violation::UnknownLabel { label: l.to_string() });
        }
    };
    let mut in_round1 = BTreeSet::new();
    for (i, r) in d.round1.iter().enumerate() {
        let (a, b) = (&r.pair.0, &r.pair.1);
        known(a, &mut out);
        known(b, &mut out);
        if a == b {
            out.push(Violation::SelfPair { label: a.clone() });
        }
        for l in [a, b] {
            if !in_round1.insert(l.as_str()) && a != b {
                out.push(Violation::MultipleRound1 { label: l.clone() });
            }
        }
        match r.layer.variant {
            LayerVariant::RotativePlus { m } | LayerVariant::RotativeMinus { m } => {
                if m == 0 {
                    out.push(Violation::ZeroRotativeParameter { round1: i });
                }
                if r.layer.twisting == 0 {
                    out.push(Violation::RotativeWithoutTwisting { round1: i });
                }
            }
            _ => {}
        }
    }
    for (i, r) in d.round2.iter().enumerate() {
        known(&r.knot, &mut out);
        if let Some(j) = r.joint_with {
            match d.round1.get(j) {
                None => out.push(Violation::JointOutOfRange { round2: i, joint_with: j }),
                Some(r1) if r1.pair.1 != r.knot => out.push(Violation::JointMismatch {
                    round2: i,
                    knot: r.knot.clone(),
                    expected: r1.pair.1.clone(),
                }),
                Some(_) => {}
            }
        }
    }
    for l in d.dehn.keys() {
        known(l, &mut out);
    }
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn hopf_round(k: i64, r2: SlopeQ) -> RoundSurgeryDiagram {
        let mut d = RoundSurgeryDiagram::new("hopf");
        d.components.push(LegendrianComponent::new("A", -1, 0));
        d.components.push(LegendrianComponent::new("B", -1, 0));
        d.linking.set("A", "B", 1).unwrap();
        d.add_joint_pair("A", "B", (k, k), r2, TightLayerSpec::non_rotative(0));
        d
    }

    #[test]
    fn well_formed_hopf_has_no_violations() {
        assert!(validate_diagram(&hopf_round(1, SlopeQ::MINUS_ONE)).is_empty());
    }

    #[test]
    fn duplicate_label_is_reported() {
        let mut d = hopf_round(1, SlopeQ::MINUS_ONE);
        d.components.push(LegendrianComponent::new("A", -2, 1));
        assert_eq!(validate_diagram(&d), vec![Violation::DuplicateLabel { label: "A".into() }]);
    }

    #[test]
    fn joint_with_wrong_component() {
        let mut d = hopf_round(1, SlopeQ::MINUS_ONE);
        d.round2[0].knot = "A".into();
        assert_eq!(
            validate_diagram(&d),
            vec![Violation::JointMismatch { round2: 0, knot: "A".into(), expected: "B".into() }]
        );
    }

    #[test]
    fn linking_is_symmetric_and_rejects_diagonal() {
        let mut lk = LinkingData::new();
        lk.set("B", "A", 3).unwrap();
        assert_eq!(lk.get("A", "B"), 3);
        assert_eq!(lk.get("B", "A"), 3);
        assert_eq!(lk.get("A", "C"), 0);
        assert!(lk.set("A", "A", 1).is_err());
        lk.set("A", "B", 0).unwrap();
        assert!(lk.is_empty());
    }

    #[test]
    fn component_in_two_round1_pairs() {
        let mut d = hopf_round(1, SlopeQ::MINUS_ONE);
        d.components.push(LegendrianComponent::new("C", -1, 0));
        d.round1.push(Round1Spec {
            pair: ("A".into(), "C".into()),
            coeff_a: 0,
            coeff_b: 0,
            layer: TightLayerSpec::invariant(),
        });
        assert_eq!(validate_diagram(&d), vec![Violation::MultipleRound1 { label: "A".into() }]);
    }

    #[test]
    fn missing_and_non_pm1_coefficients() {
        let mut d = ContactSurgeryDiagram::new("x");
        d.push(LegendrianComponent::new("A", -1, 0), SlopeQ::integer(2));
        d.components.push(LegendrianComponent::new("B", -1, 0));
        assert_eq!(validate_contact(&d), vec![Violation::MissingCoefficient { label: "B".into() }]);
        assert!(validate_pm1(&d).contains(&Violation::NotPm1 { label: "A".into() }));
    }

    #[test]
    fn invariant_layer_normalizes_to_zero_holonomy() {
        assert_eq!(TightLayerSpec::invariant().normalized(), TightLayerSpec::non_rotative(0));
        assert!(TightLayerSpec::invariant().is_zero_holonomy_minimal());
        assert!(!TightLayerSpec::non_rotative(2).is_zero_holonomy_minimal());
        assert!(!TightLayerSpec::rotative_plus(1).is_zero_holonomy_minimal());
    }
}
