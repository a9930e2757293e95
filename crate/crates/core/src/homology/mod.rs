//! First homology of surgered manifolds from presentation matrices.
//!
//! Every group is computed as `Z^n / ⟨relations⟩` and reduced by Smith
//! normal form.
//!
//! For a standalone round 1-surgery on a two-component link `K₁ ∪ K₂` the
//! manifold is `M = (S³ \ N(K₁ ∪ K₂)) ∪ T²×I`, glued along two tori. The
//! Mayer–Vietoris sequence for this decomposition reads
//!
//! ```text
//! H₁(T² ⊔ T²) → H₁(X) ⊕ H₁(T²×I) → H₁(M) → H̃₀(T² ⊔ T²) → 0
//! ```
//!
//! with `H₁(X) = ⟨μ₁, μ₂⟩` and `H₁(T²×I) = ⟨a, b⟩` (`a` the `S¹`-factor
//! glued to the meridians, `b` the factor glued to `nᵢμᵢ + λᵢ`). The
//! left-hand map has image spanned by the four columns used in
//! [`h1_round1`], and its cokernel injects into `H₁(M)`. The right-hand
//! term is `Z` (two gluing tori, one reduced class), free, so the sequence
//! splits and contributes one extra free summand. That summand is added as
//! a rank increment rather than an extra matrix column.
//!
//! Column orientation signs are fixed once; negating any column leaves the
//! cokernel unchanged.

mod snf;

pub use snf::{smith_normal_form, IntMatrix, SmithForm};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::bridge::{self, BridgeError};
use crate::calculus::contact_to_topological;
use crate::diagram::{ContactSurgeryDiagram, RoundSurgeryDiagram};
use crate::exec::Exec;
use crate::slope::SlopeQ;

/// A finitely generated abelian group `Z^free_rank ⊕ Z/d₁ ⊕ … ⊕ Z/d_k`
/// with `2 ≤ d₁ | d₂ | … | d_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct H1Class {
    pub free_rank: usize,
    #[serde(serialize_with = "serialize_torsion")]
    pub torsion: Vec<BigInt>,
}

fn serialize_torsion<S: Serializer>(t: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    let values: Vec<serde_json::Value> = t
        .iter()
        .map(|d| match u64::try_from(d) {
            Ok(v) => serde_json::Value::from(v),
            Err(_) => serde_json::Value::from(d.to_string()),
        })
        .collect();
    values.serialize(s)
}

impl H1Class {
    pub fn trivial() -> Self {
        H1Class { free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        H1Class { free_rank: rank, torsion: Vec::new() }
    }

    /// `Z/n`, read as `Z` for `n = 0` and trivial for `|n| = 1`.
    pub fn cyclic(n: i64) -> Self {
        Self::from_invariant_factors(std::iter::once(BigInt::from(n)), 1)
    }

    pub fn with_torsion(free_rank: usize, torsion: &[u64]) -> Self {
        H1Class { free_rank, torsion: torsion.iter().map(|&d| BigInt::from(d)).collect() }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Group with `generators` generators and the given invariant factors
    /// (one per relation that survived in the Smith form).
    fn from_invariant_factors(factors: impl IntoIterator<Item = BigInt>, generators: usize) -> Self {
        let mut free_rank = generators;
        let mut torsion = Vec::new();
        for d in factors {
            free_rank -= 1;
            let d = d.abs();
            if d.is_zero() {
                free_rank += 1;
            } else if !d.is_one() {
                torsion.push(d);
            }
        }
        torsion.sort();
        H1Class { free_rank, torsion }
    }

    /// Cokernel of the map whose image is spanned by the rows of `relations`
    /// (one column per generator).
    pub fn from_relations(relations: &IntMatrix) -> Self {
        let snf = smith_normal_form(relations);
        Self::from_invariant_factors(snf.diagonal, relations.cols())
    }

    pub fn plus_free(mut self, extra: usize) -> Self {
        self.free_rank += extra;
        self
    }
}

impl std::fmt::Display for H1Class {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("standalone round 1-surgery needs a two-component diagram, found {0} components")]
    NotTwoComponent(usize),
    #[error("unsupported composition of surgeries: {0}")]
    UnsupportedComposition(String),
    #[error(transparent)]
    Bridge(#[from] BridgeError),
}

/// Linking-matrix presentation for contact Dehn surgery. Infinite
/// coefficients are trivial surgeries and their components are dropped.
pub fn dehn_presentation(d: &ContactSurgeryDiagram) -> IntMatrix {
    let active: Vec<(&str, SlopeQ)> = d
        .components
        .iter()
        .filter_map(|c| {
            let coeff = *d.coefficients.get(&c.label)?;
            let top = contact_to_topological(coeff, c.tb);
            (!top.is_infinite()).then_some((c.label.as_str(), top))
        })
        .collect();
    let n = active.len();
    let mut m = IntMatrix::zeros(n, n);
    for (i, (li, top)) in active.iter().enumerate() {
        let (p, q) = (BigInt::from(top.numer()), BigInt::from(top.denom()));
        for (j, (lj, _)) in active.iter().enumerate() {
            m[(i, j)] = if i == j {
                p.clone()
            } else {
                &q * BigInt::from(d.linking.get(li, lj))
            };
        }
    }
    m
}

/// `H₁` of contact Dehn surgery on a Legendrian link in `S³`.
pub fn h1_dehn(d: &ContactSurgeryDiagram) -> H1Class {
    H1Class::from_relations(&dehn_presentation(d))
}

/// [`h1_dehn`] over many diagrams, in input order.
pub fn h1_dehn_batch(ds: &[ContactSurgeryDiagram], exec: Exec) -> Vec<H1Class> {
    exec.map(ds, h1_dehn)
}

/// [`h1_round_diagram`] over many diagrams, in input order.
pub fn h1_round_batch(ds: &[RoundSurgeryDiagram], exec: Exec) -> Vec<Result<Vec<H1Class>, HomologyError>> {
    exec.map(ds, h1_round_diagram)
}

/// Relations of the thickened-torus gluing over generators `(μ₁, μ₂, a, b)`,
/// one row per relation.
pub fn round1_relations(tb: (i64, i64), lk: i64, coeffs: (i64, i64)) -> IntMatrix {
    let n1 = coeffs.0 + tb.0;
    let n2 = coeffs.1 + tb.1;
    IntMatrix::from_rows(&[
        vec![1, 0, -1, 0],
        vec![n1, lk, 0, -1],
        vec![0, 1, -1, 0],
        vec![lk, n2, 0, -1],
    ])
}

/// `H₁` of a standalone round 1-surgery on a two-component Legendrian link
/// with contact round 1-coefficients `coeffs`.
pub fn h1_round1(tb: (i64, i64), lk: i64, coeffs: (i64, i64)) -> H1Class {
    H1Class::from_relations(&round1_relations(tb, lk, coeffs)).plus_free(1)
}

/// `(outer, inner)` homology of round 2-surgery with contact coefficient `c`
/// on a knot of Thurston–Bennequin number `tb`.
///
/// With topological coefficient `P/Q`, the outer component is surgery on
/// the knot (`Z/P`), and the inner solid-torus pair is a lens space
/// presented by `μ = 0`, `P·μ + Q·λ = 0` (`Z/Q`).
pub fn h1_round2(tb: i64, c: SlopeQ) -> (H1Class, H1Class) {
    let top = contact_to_topological(c, tb);
    let (p, q) = if top.is_infinite() { (1, 0) } else { (top.numer(), top.denom()) };
    let outer = H1Class::from_relations(&IntMatrix::from_rows(&[vec![p]]));
    let inner = H1Class::from_relations(&IntMatrix::from_rows(&[vec![1, 0], vec![p, q]]));
    (outer, inner)
}

/// Homology of each connected piece of a round diagram.
///
/// Supported shapes: only nice joint pairs (routed through the equivalent
/// contact `(±1)`-surgery), a single round 1-surgery on a two-component
/// diagram, or a single round 2-surgery on a one-component diagram.
pub fn h1_round_diagram(rd: &RoundSurgeryDiagram) -> Result<Vec<H1Class>, HomologyError> {
    let unsupported = |why: String| Err(HomologyError::UnsupportedComposition(why));
    if let Some(label) = rd.dehn.keys().next() {
        if !rd.round1.is_empty() || !rd.round2.is_empty() {
            return unsupported(format!("contact Dehn coefficient on `{label}` mixed with round surgeries"));
        }
        return unsupported(format!("contact Dehn coefficient on `{label}` in a round diagram"));
    }
    let all_joint = rd.round2.len() == rd.round1.len()
        && rd.round2.iter().all(|r| r.joint_with.is_some());
    if all_joint {
        let pm1 = bridge::joint_pairs_to_pm1(rd)?;
        return Ok(vec![h1_dehn(&pm1)]);
    }
    match (rd.round1.as_slice(), rd.round2.as_slice()) {
        ([r1], []) => {
            if rd.components.len() != 2 {
                return Err(HomologyError::NotTwoComponent(rd.components.len()));
            }
            let tb_of = |l: &str| rd.component(l).map(|c| c.tb);
            let (Some(tb_a), Some(tb_b)) = (tb_of(&r1.pair.0), tb_of(&r1.pair.1)) else {
                return unsupported("round-1 spec references an unknown component".into());
            };
            let lk = rd.linking.get(&r1.pair.0, &r1.pair.1);
            Ok(vec![h1_round1((tb_a, tb_b), lk, (r1.coeff_a, r1.coeff_b))])
        }
        ([], [r2]) => {
            if rd.components.len() != 1 {
                return unsupported(format!(
                    "round 2-surgery on `{}` with {} other components present",
                    r2.knot,
                    rd.components.len().saturating_sub(1)
                ));
            }
            let Some(c) = rd.component(&r2.knot) else {
                return unsupported(format!("round 2-surgery on unknown component `{}`", r2.knot));
            };
            let (outer, inner) = h1_round2(c.tb, r2.coeff);
            Ok(vec![outer, inner])
        }
        _ => {
            let offender = rd
                .round2
                .iter()
                .position(|r| r.joint_with.is_none())
                .map(|i| format!("round2 #{i} on `{}` is not part of a joint pair", rd.round2[i].knot))
                .unwrap_or_else(|| "round-1 surgeries without joint partners".to_string());
            unsupported(offender)
        }
    }
}
