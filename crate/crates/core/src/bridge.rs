//! Conversion between contact `(±1)`-surgery diagrams and round diagrams of
//! nice contact joint pairs.
//!
//! Going from `(±1)` to round: components with equal coefficient are paired
//! two at a time. When the number of `(+1)` or `(−1)` components is odd,
//! cosmetic unknot diagrams representing `(S³, ξ_st)` are added first (a
//! contact Kirby move of type 1) to fix the parities. Going back, each nice
//! pair with round-2 coefficient `m ∈ {±1}` becomes contact `m`-surgery on
//! both of its components.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;
use thiserror::Error;

use crate::calculus::{check_nice, surgery_meridian_coefficient, CalculusError};
use crate::diagram::{
    validate_pm1, ContactSurgeryDiagram, LegendrianComponent, Round1Spec, Round2Spec,
    RoundSurgeryDiagram, TightLayerSpec, Violation,
};
use crate::homology::{dehn_presentation, h1_dehn};
use crate::slope::SlopeQ;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BridgeError {
    #[error("gadget parameter must be positive, got {0}")]
    InvalidParameter(i64),
    #[error("gadget m={m} failed its self-test: det = {det}, H1 = {h1}")]
    GadgetSelfTestFailed { m: u32, det: String, h1: String },
    #[error("not a contact (±1)-surgery diagram: {}", join_violations(.0))]
    NotPm1Diagram(Vec<Violation>),
    #[error("round-1 spec {index} is not a nice joint pair: {reason}")]
    NotNice { index: usize, reason: String },
    #[error("component `{0}` carries no surgery")]
    Unpaired(String),
    #[error("unknown component `{0}`")]
    UnknownComponent(String),
    #[error("round 2-surgery #{0} is not part of a joint pair")]
    LoneRound2(usize),
    #[error("contact Dehn coefficient on `{0}` cannot be expanded here")]
    StrayDehn(String),
    #[error(transparent)]
    Calculus(#[from] CalculusError),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

/// How linking numbers inside a cosmetic gadget are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinkRule {
    /// `tb` of the unstabilized unknot `K`, i.e. `-m`.
    KnotTb,
    /// `tb` of the stabilized pushoffs, i.e. `-m - 1`.
    PushoffTb,
    Constant(i64),
}

impl LinkRule {
    fn value(self, m: i64) -> i64 {
        match self {
            LinkRule::KnotTb => -m,
            LinkRule::PushoffTb => -m - 1,
            LinkRule::Constant(c) => c,
        }
    }
}

/// Linking data of the `(±1)`-presentation of contact `(m+1)`-surgery on
/// the unknot `K` with `tb(K) = -m`.
///
/// The default is the pushoff chain: `K₁` is a Legendrian pushoff of `K`
/// stabilized once, and each `K_{i+1}` is a Legendrian pushoff of `K_i`.
/// A Legendrian pushoff links its source `tb` times, so `lk(K, K_i) = -m`
/// and `lk(K_i, K_j) = -m - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GadgetConfig {
    pub knot_to_pushoff: LinkRule,
    pub pushoff_to_pushoff: LinkRule,
}

impl Default for GadgetConfig {
    fn default() -> Self {
        GadgetConfig { knot_to_pushoff: LinkRule::KnotTb, pushoff_to_pushoff: LinkRule::PushoffTb }
    }
}

/// Labels of a gadget: `{prefix}K` for the `(+1)` unknot, `{prefix}K1..Km`
/// for the `(−1)` pushoffs.
fn gadget_labels(prefix: &str, m: u32) -> Vec<String> {
    std::iter::once(format!("{prefix}K"))
        .chain((1..=m).map(|i| format!("{prefix}K{i}")))
        .collect()
}

fn build_gadget(m: u32, prefix: &str, config: GadgetConfig) -> ContactSurgeryDiagram {
    let mi = m as i64;
    let labels = gadget_labels(prefix, m);
    let mut d = ContactSurgeryDiagram::new(format!("gadget_m{m}"));
    d.push(LegendrianComponent::new(&labels[0], -mi, 0), SlopeQ::ONE);
    for l in &labels[1..] {
        // one right stabilization; its rotation sign is a convention
        d.push(LegendrianComponent::new(l, -mi - 1, -1), SlopeQ::MINUS_ONE);
    }
    for (i, a) in labels.iter().enumerate() {
        for b in &labels[i + 1..] {
            let rule = if i == 0 { config.knot_to_pushoff } else { config.pushoff_to_pushoff };
            d.linking.set(a, b, rule.value(mi)).expect("distinct labels");
        }
    }
    d
}

/// Checks that a gadget is a homology sphere with unimodular linking matrix.
pub fn gadget_self_test(d: &ContactSurgeryDiagram, m: u32) -> Result<(), BridgeError> {
    let det = dehn_presentation(d).determinant();
    let h1 = h1_dehn(d);
    if det.abs() == BigInt::one() && h1.is_trivial() {
        Ok(())
    } else {
        Err(BridgeError::GadgetSelfTestFailed { m, det: det.to_string(), h1: h1.to_string() })
    }
}

/// The `(±1)`-presentation of contact `(m+1)`-surgery on a `tb = -m`
/// unknot: one `(+1)` component and `m` stabilized `(−1)` pushoffs.
pub fn kirby1_gadget(m: i64) -> Result<ContactSurgeryDiagram, BridgeError> {
    kirby1_gadget_with(m, "", GadgetConfig::default())
}

pub fn kirby1_gadget_with(
    m: i64,
    prefix: &str,
    config: GadgetConfig,
) -> Result<ContactSurgeryDiagram, BridgeError> {
    let m = u32::try_from(m).ok().filter(|&m| m >= 1).ok_or(BridgeError::InvalidParameter(m))?;
    let d = build_gadget(m, prefix, config);
    gadget_self_test(&d, m)?;
    Ok(d)
}

/// Positive integers `m`, `m₁`, `m₂` of the parity-fixing recipes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GadgetParams {
    pub m: u32,
    pub m1: u32,
    pub m2: u32,
}

impl Default for GadgetParams {
    fn default() -> Self {
        GadgetParams { m: 1, m1: 1, m2: 1 }
    }
}

impl GadgetParams {
    pub fn uniform(m: u32) -> Self {
        GadgetParams { m, m1: m, m2: m }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GadgetInsertion {
    /// Gadget size: `tb(K) = -size`, with `size` pushoffs.
    pub size: u32,
    pub labels: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlannedPair {
    pub a: String,
    pub b: String,
    pub round1: i64,
    pub round2: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairingPlan {
    pub case_id: u8,
    pub gadgets: Vec<GadgetInsertion>,
    pub pairs: Vec<PlannedPair>,
}

/// Parity case of `(#(+1), #(−1))`: 1 even/even, 2 odd/even, 3 even/odd, 4 odd/odd.
pub fn parity_case(n_plus: usize, n_minus: usize) -> u8 {
    match (n_plus % 2, n_minus % 2) {
        (0, 0) => 1,
        (1, 0) => 2,
        (0, 1) => 3,
        _ => 4,
    }
}

/// Gadget sizes each parity case inserts.
pub fn gadget_sizes(case_id: u8, params: GadgetParams) -> Vec<u32> {
    match case_id {
        1 => vec![],
        // U with tb = -2m, contact coefficient 2m + 1
        2 => vec![2 * params.m],
        // U₁ with tb = -2m₁ - 1 and U₂ with tb = -2m₂
        3 => vec![2 * params.m1 + 1, 2 * params.m2],
        // U₁ with tb = -2m - 1
        _ => vec![2 * params.m + 1],
    }
}

fn fresh_prefix(taken: &BTreeSet<String>, index: usize, size: u32) -> String {
    let mut n = index;
    loop {
        let prefix = format!("g{n}_");
        if gadget_labels(&prefix, size).iter().all(|l| !taken.contains(l)) {
            return prefix;
        }
        n += 1;
    }
}

/// Rewrites a contact `(±1)`-surgery diagram as nice contact joint pairs
/// with round-1 coefficient `k` on every component.
pub fn pair_pm1_diagram(
    d: &ContactSurgeryDiagram,
    k: i64,
    params: GadgetParams,
) -> Result<(RoundSurgeryDiagram, PairingPlan), BridgeError> {
    pair_pm1_diagram_with(d, k, params, GadgetConfig::default())
}

pub fn pair_pm1_diagram_with(
    d: &ContactSurgeryDiagram,
    k: i64,
    params: GadgetParams,
    config: GadgetConfig,
) -> Result<(RoundSurgeryDiagram, PairingPlan), BridgeError> {
    let violations = validate_pm1(d);
    if !violations.is_empty() {
        return Err(BridgeError::NotPm1Diagram(violations));
    }
    for p in [params.m, params.m1, params.m2] {
        if p == 0 {
            return Err(BridgeError::InvalidParameter(0));
        }
    }
    let count = |c: SlopeQ| d.coefficients.values().filter(|&&v| v == c).count();
    let case_id = parity_case(count(SlopeQ::ONE), count(SlopeQ::MINUS_ONE));

    let mut full = d.clone();
    let mut taken: BTreeSet<String> = d.components.iter().map(|c| c.label.clone()).collect();
    let mut gadgets = Vec::new();
    for (i, size) in gadget_sizes(case_id, params).into_iter().enumerate() {
        let prefix = fresh_prefix(&taken, i + 1, size);
        let g = kirby1_gadget_with(size as i64, &prefix, config)?;
        let labels: Vec<String> = g.components.iter().map(|c| c.label.clone()).collect();
        taken.extend(labels.iter().cloned());
        for c in &g.components {
            full.push(c.clone(), g.coefficients[&c.label]);
        }
        full.linking.extend(&g.linking);
        gadgets.push(GadgetInsertion { size, labels });
    }

    let mut rd = RoundSurgeryDiagram::new(d.name.clone());
    rd.components = full.components.clone();
    rd.linking = full.linking.clone();
    let mut pairs = Vec::new();
    for sign in [SlopeQ::ONE, SlopeQ::MINUS_ONE] {
        let mut labels: Vec<&String> =
            full.coefficients.iter().filter(|(_, &v)| v == sign).map(|(l, _)| l).collect();
        labels.sort();
        debug_assert!(labels.len() % 2 == 0);
        for chunk in labels.chunks(2) {
            rd.add_joint_pair(chunk[0], chunk[1], (k, k), sign, TightLayerSpec::non_rotative(0));
            pairs.push(PlannedPair {
                a: chunk[0].clone(),
                b: chunk[1].clone(),
                round1: k,
                round2: sign.numer(),
            });
        }
    }
    for i in 0..rd.round1.len() {
        debug_assert!(check_nice(&rd, i).map(|r| r.nice).unwrap_or(false));
    }
    Ok((rd, PairingPlan { case_id, gadgets, pairs }))
}

/// Realizes a diagram of nice joint pairs as contact `(±1)`-surgery: each
/// pair with round-2 coefficient `m` gives contact `m`-surgery on both
/// members. Components, invariants and linking are kept verbatim.
pub fn joint_pairs_to_pm1(rd: &RoundSurgeryDiagram) -> Result<ContactSurgeryDiagram, BridgeError> {
    if let Some(l) = rd.dehn.keys().next() {
        return Err(BridgeError::StrayDehn(l.clone()));
    }
    if let Some(i) = rd.round2.iter().position(|r| r.joint_with.is_none()) {
        return Err(BridgeError::LoneRound2(i));
    }
    let mut out = ContactSurgeryDiagram::new(rd.name.clone());
    out.components = rd.components.clone();
    out.linking = rd.linking.clone();
    for (i, r1) in rd.round1.iter().enumerate() {
        let report = check_nice(rd, i).map_err(|e| BridgeError::NotNice {
            index: i,
            reason: e.to_string(),
        })?;
        if let Some(reason) = report.reason() {
            return Err(BridgeError::NotNice { index: i, reason: reason.to_string() });
        }
        let m = rd.joint_partner(i).expect("checked by check_nice").coeff;
        for l in [&r1.pair.0, &r1.pair.1] {
            if rd.component(l).is_none() {
                return Err(BridgeError::UnknownComponent(l.clone()));
            }
            out.coefficients.insert(l.clone(), m);
        }
    }
    if let Some(c) = rd.components.iter().find(|c| !out.coefficients.contains_key(&c.label)) {
        return Err(BridgeError::Unpaired(c.label.clone()));
    }
    Ok(out)
}

fn require_component(components: &[LegendrianComponent], label: &str) -> Result<(), BridgeError> {
    if components.iter().any(|c| c.label == label) {
        Ok(())
    } else {
        Err(BridgeError::UnknownComponent(label.to_string()))
    }
}

/// Legendrian round surgery along a pair of Legendrian knots as a contact
/// round 1-surgery: coefficient `+1` on both components, glued with the
/// invariant neighbourhood of the standard convex torus.
pub fn adachi_round1(
    components: &[LegendrianComponent],
    a: &str,
    b: &str,
) -> Result<Round1Spec, BridgeError> {
    adachi_round1_with(components, a, b, 1)
}

/// As [`adachi_round1`] with an arbitrary common coefficient.
pub fn adachi_round1_with(
    components: &[LegendrianComponent],
    a: &str,
    b: &str,
    coeff: i64,
) -> Result<Round1Spec, BridgeError> {
    require_component(components, a)?;
    require_component(components, b)?;
    if a == b {
        return Err(BridgeError::UnknownComponent(format!("{a} (paired with itself)")));
    }
    Ok(Round1Spec {
        pair: (a.to_string(), b.to_string()),
        coeff_a: coeff,
        coeff_b: coeff,
        layer: TightLayerSpec::invariant(),
    })
}

/// Round 2-surgery along a convex torus around `knot` whose surgery
/// meridian is `a·μ + b·λ_c`; realized as integer coefficient `a`.
pub fn adachi_round2_realize(
    components: &[LegendrianComponent],
    knot: &str,
    meridian: (i64, i64),
) -> Result<Round2Spec, BridgeError> {
    require_component(components, knot)?;
    let n = surgery_meridian_coefficient(meridian.0, meridian.1)?;
    Ok(Round2Spec { knot: knot.to_string(), coeff: SlopeQ::integer(n), joint_with: None })
}

/// Diagram `d` with gadgets appended unlinked, as `pair_pm1_diagram` builds it.
pub fn with_gadgets(
    d: &ContactSurgeryDiagram,
    plan: &PairingPlan,
    config: GadgetConfig,
) -> Result<ContactSurgeryDiagram, BridgeError> {
    let mut full = d.clone();
    for g in &plan.gadgets {
        let prefix = g.labels[0].strip_suffix('K').unwrap_or("");
        let gd = kirby1_gadget_with(g.size as i64, prefix, config)?;
        for c in &gd.components {
            full.push(c.clone(), gd.coefficients[&c.label]);
        }
        full.linking.extend(&gd.linking);
    }
    Ok(full)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::H1Class;

    fn pm1(plus: usize, minus: usize) -> ContactSurgeryDiagram {
        let mut d = ContactSurgeryDiagram::new("d");
        for i in 0..plus {
            d.push(LegendrianComponent::new(format!("P{i}"), -1, 0), SlopeQ::ONE);
        }
        for i in 0..minus {
            d.push(LegendrianComponent::new(format!("N{i}"), -2, 1), SlopeQ::MINUS_ONE);
        }
        d
    }

    #[test]
    fn gadget_m1() {
        let g = kirby1_gadget(1).unwrap();
        let tbs: Vec<i64> = g.components.iter().map(|c| c.tb).collect();
        assert_eq!(tbs, vec![-1, -2]);
        let coeffs: Vec<SlopeQ> = g.components.iter().map(|c| g.coefficients[&c.label]).collect();
        assert_eq!(coeffs, vec![SlopeQ::ONE, SlopeQ::MINUS_ONE]);
        assert!(h1_dehn(&g).is_trivial());
    }

    #[test]
    fn gadget_m2() {
        let g = kirby1_gadget(2).unwrap();
        assert_eq!(g.components.len(), 3);
        let coeffs: Vec<SlopeQ> = g.components.iter().map(|c| g.coefficients[&c.label]).collect();
        assert_eq!(coeffs, vec![SlopeQ::ONE, SlopeQ::MINUS_ONE, SlopeQ::MINUS_ONE]);
        assert_eq!(h1_dehn(&g), H1Class::trivial());
    }

    #[test]
    fn gadget_rejects_nonpositive() {
        assert_eq!(kirby1_gadget(0), Err(BridgeError::InvalidParameter(0)));
        assert_eq!(kirby1_gadget(-3), Err(BridgeError::InvalidParameter(-3)));
    }

    #[test]
    fn misconfigured_gadget_fails_self_test() {
        let bad = GadgetConfig { knot_to_pushoff: LinkRule::Constant(0), pushoff_to_pushoff: LinkRule::Constant(0) };
        assert!(matches!(
            kirby1_gadget_with(2, "", bad),
            Err(BridgeError::GadgetSelfTestFailed { m: 2, .. })
        ));
    }

    #[test]
    fn gadgets_pass_for_small_m() {
        for m in 1..=8 {
            let g = kirby1_gadget(m).unwrap();
            assert_eq!(dehn_presentation(&g).determinant().abs(), BigInt::one());
        }
    }

    fn counts(rd: &RoundSurgeryDiagram) -> (usize, usize) {
        let plus = rd.round2.iter().filter(|r| r.coeff == SlopeQ::ONE).count();
        (2 * plus, 2 * (rd.round2.len() - plus))
    }

    #[test]
    fn four_parity_cases() {
        let p = GadgetParams::default();
        let (rd, plan) = pair_pm1_diagram(&pm1(2, 2), 1, p).unwrap();
        assert_eq!((plan.case_id, plan.gadgets.len(), rd.round1.len()), (1, 0, 2));

        let (rd, plan) = pair_pm1_diagram(&pm1(1, 0), 1, p).unwrap();
        assert_eq!(plan.case_id, 2);
        assert_eq!(counts(&rd), (2, 2));
        assert_eq!(rd.round1.len(), 2);

        let (rd, plan) = pair_pm1_diagram(&pm1(0, 1), 1, p).unwrap();
        assert_eq!(plan.case_id, 3);
        assert_eq!(counts(&rd), (2, 6));
        assert_eq!(rd.round1.len(), 4);

        let (rd, plan) = pair_pm1_diagram(&pm1(1, 1), 1, p).unwrap();
        assert_eq!(plan.case_id, 4);
        assert_eq!(counts(&rd), (2, 4));
        assert_eq!(rd.round1.len(), 3);
        for i in 0..rd.round1.len() {
            assert!(check_nice(&rd, i).unwrap().nice);
        }
    }

    #[test]
    fn gadget_labels_avoid_collisions() {
        let mut d = pm1(1, 0);
        d.push(LegendrianComponent::new("g1_K", -1, 0), SlopeQ::ONE);
        d.push(LegendrianComponent::new("g1_K1", -1, 0), SlopeQ::ONE);
        let (rd, plan) = pair_pm1_diagram(&d, 0, GadgetParams::default()).unwrap();
        assert_eq!(plan.gadgets[0].labels[0], "g2_K");
        assert!(crate::diagram::validate_diagram(&rd).is_empty());
    }

    #[test]
    fn rejects_non_pm1() {
        let mut d = pm1(1, 1);
        d.coefficients.insert("P0".into(), SlopeQ::integer(2));
        assert!(matches!(pair_pm1_diagram(&d, 1, GadgetParams::default()), Err(BridgeError::NotPm1Diagram(_))));
    }

    #[test]
    fn case_one_round_trip_is_verbatim() {
        let mut d = pm1(2, 2);
        d.linking.set("P0", "N1", 2).unwrap();
        let (rd, _) = pair_pm1_diagram(&d, 4, GadgetParams::default()).unwrap();
        assert_eq!(joint_pairs_to_pm1(&rd).unwrap(), d);
    }

    #[test]
    fn round_trip_independent_of_k() {
        let d = pm1(1, 2);
        let outs: Vec<_> = [-2, 0, 1, 7]
            .iter()
            .map(|&k| joint_pairs_to_pm1(&pair_pm1_diagram(&d, k, GadgetParams::default()).unwrap().0).unwrap())
            .collect();
        assert!(outs.windows(2).all(|w| w[0] == w[1]));
        let (_, plan) = pair_pm1_diagram(&d, 0, GadgetParams::default()).unwrap();
        assert_eq!(outs[0], with_gadgets(&d, &plan, GadgetConfig::default()).unwrap());
    }

    #[test]
    fn to_pm1_examples() {
        let mut rd = RoundSurgeryDiagram::new("hopf");
        rd.components.push(LegendrianComponent::new("A", -1, 0));
        rd.components.push(LegendrianComponent::new("B", -1, 0));
        rd.linking.set("A", "B", 1).unwrap();
        let mut minus = rd.clone();
        minus.add_joint_pair("A", "B", (2, 2), SlopeQ::MINUS_ONE, TightLayerSpec::invariant());
        let out = joint_pairs_to_pm1(&minus).unwrap();
        assert_eq!(out.coefficients["A"], SlopeQ::MINUS_ONE);
        assert_eq!(out.coefficients["B"], SlopeQ::MINUS_ONE);
        let mut plus = rd.clone();
        plus.add_joint_pair("A", "B", (2, 2), SlopeQ::ONE, TightLayerSpec::invariant());
        assert!(joint_pairs_to_pm1(&plus).unwrap().coefficients.values().all(|&c| c == SlopeQ::ONE));
        let mut bad = rd.clone();
        bad.add_joint_pair("A", "B", (1, 2), SlopeQ::ONE, TightLayerSpec::invariant());
        assert!(matches!(joint_pairs_to_pm1(&bad), Err(BridgeError::NotNice { index: 0, .. })));
        assert_eq!(joint_pairs_to_pm1(&rd), Err(BridgeError::Unpaired("A".into())));
    }

    #[test]
    fn adachi_realizations() {
        let comps = vec![LegendrianComponent::new("A", -1, 0), LegendrianComponent::new("B", -3, 2)];
        let r1 = adachi_round1(&comps, "A", "B").unwrap();
        assert_eq!((r1.coeff_a, r1.coeff_b), (1, 1));
        assert_eq!(r1.layer, TightLayerSpec::invariant());
        assert!(adachi_round1(&comps, "A", "A").is_err());
        assert_eq!(adachi_round1(&comps, "A", "Z"), Err(BridgeError::UnknownComponent("Z".into())));

        let r2 = adachi_round2_realize(&comps, "A", (0, 1)).unwrap();
        assert_eq!(r2.coeff, SlopeQ::ZERO);
        let r2 = adachi_round2_realize(&comps, "A", (1, 1)).unwrap();
        assert_eq!(r2.coeff, SlopeQ::ONE);
        assert_eq!(
            crate::homology::h1_round2(-1, r2.coeff),
            (H1Class::free(1), H1Class::trivial())
        );
        assert!(matches!(
            adachi_round2_realize(&comps, "A", (3, 2)),
            Err(BridgeError::Calculus(CalculusError::InvalidMeridian { a: 3, b: 2 }))
        ));
    }

    #[test]
    fn adachi_round1_homology_shift_invariant() {
        let base = h1_round1_of(1);
        for k in -5..=5 {
            assert_eq!(h1_round1_of(1 + k), base);
        }
    }

    fn h1_round1_of(c: i64) -> H1Class {
        crate::homology::h1_round1((-1, -1), 1, (c, c))
    }
}
