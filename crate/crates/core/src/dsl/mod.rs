//! Text format for surgery diagrams.
//!
//! A file holds named diagrams:
//!
//! ```text
//! # Legendrian Hopf link with a round 1-surgery
//! round_diagram hopf {
//!   component A { tb = -1; rot = 0; }
//!   component B { tb = -1; rot = 0; }
//!   lk(A, B) = 1;
//!   round1 (A, B) { r1 = 0, 0; layer = invariant; }
//! }
//! ```
//!
//! Components are given by `tb`/`rot` or by a front word
//! (`front = "U1 U1 X2 X2 C1 C1"; orient = forward, forward;`). A front with
//! several components declares `L.1`, `L.2`, ... and fixes their mutual
//! linking. The same data round-trips through JSON.

mod json;
mod lexer;
mod parser;
mod print;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use crate::diagram::{
    validate_contact, validate_diagram, ContactSurgeryDiagram, LayerVariant, LegendrianComponent,
    LinkingData, RoundSurgeryDiagram, TightLayerSpec, Violation,
};
use crate::front::{classical_invariants, OrientedFront};

pub use json::{entry_to_json, file_to_json, parse_json};
pub use parser::parse_dsl;
pub use print::{format_label, layer_literal};

/// 1-based line and column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("{}syntax error: {message}", at(pos))]
    Syntax { pos: Option<Pos>, message: String },
    #[error("{}{message}", at(pos))]
    Semantic { pos: Option<Pos>, message: String },
}

fn at(pos: &Option<Pos>) -> String {
    pos.map(|p| format!("{p}: ")).unwrap_or_default()
}

impl DslError {
    pub(crate) fn syntax(pos: impl Into<Option<Pos>>, message: impl Into<String>) -> Self {
        DslError::Syntax { pos: pos.into(), message: message.into() }
    }

    pub(crate) fn semantic(pos: impl Into<Option<Pos>>, message: impl Into<String>) -> Self {
        DslError::Semantic { pos: pos.into(), message: message.into() }
    }

    pub fn pos(&self) -> Option<Pos> {
        match self {
            DslError::Syntax { pos, .. } | DslError::Semantic { pos, .. } => *pos,
        }
    }

    /// 2 for syntax errors, 1 for semantic ones.
    pub fn exit_code(&self) -> i32 {
        match self {
            DslError::Syntax { .. } => 2,
            DslError::Semantic { .. } => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        let (kind, message) = match self {
            DslError::Syntax { message, .. } => ("syntax", message),
            DslError::Semantic { message, .. } => ("semantic", message),
        };
        let mut v = json!({ "error": kind, "message": message });
        if let Some(p) = self.pos() {
            v["line"] = json!(p.line);
            v["column"] = json!(p.col);
        }
        v
    }
}

/// A front word whose components are diagram components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrontGroup {
    pub label: String,
    pub front: OrientedFront,
}

impl FrontGroup {
    /// `label` for a knot, `label.1 … label.n` for a link.
    pub fn members(&self) -> Vec<String> {
        member_labels(&self.label, self.front.num_components())
    }
}

pub fn member_labels(label: &str, n: usize) -> Vec<String> {
    if n == 1 {
        vec![label.to_string()]
    } else {
        (1..=n).map(|i| format!("{label}.{i}")).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagram {
    Contact(ContactSurgeryDiagram),
    Round(RoundSurgeryDiagram),
}

/// Where each node of a parsed diagram came from.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Spans {
    pub diagram: Option<Pos>,
    pub components: BTreeMap<String, Pos>,
    pub links: BTreeMap<(String, String), Pos>,
    pub coefficients: BTreeMap<String, Pos>,
    pub round1: Vec<Pos>,
    pub round2: Vec<Pos>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramEntry {
    pub diagram: Diagram,
    pub fronts: Vec<FrontGroup>,
    pub spans: Spans,
}

impl DiagramEntry {
    pub fn contact(d: ContactSurgeryDiagram) -> Self {
        DiagramEntry { diagram: Diagram::Contact(d), fronts: Vec::new(), spans: Spans::default() }
    }

    pub fn round(d: RoundSurgeryDiagram) -> Self {
        DiagramEntry { diagram: Diagram::Round(d), fronts: Vec::new(), spans: Spans::default() }
    }

    pub fn name(&self) -> &str {
        match &self.diagram {
            Diagram::Contact(d) => &d.name,
            Diagram::Round(d) => &d.name,
        }
    }

    pub fn components(&self) -> &[LegendrianComponent] {
        match &self.diagram {
            Diagram::Contact(d) => &d.components,
            Diagram::Round(d) => &d.components,
        }
    }

    pub fn linking(&self) -> &LinkingData {
        match &self.diagram {
            Diagram::Contact(d) => &d.linking,
            Diagram::Round(d) => &d.linking,
        }
    }

    /// The front group a component belongs to, if any.
    pub fn group_of(&self, label: &str) -> Option<&FrontGroup> {
        self.fronts.iter().find(|g| g.members().iter().any(|m| m == label))
    }

    /// Checks every invariant of the diagram and its fronts.
    pub fn validate(&self) -> Result<(), DslError> {
        self.check_fronts()?;
        let violations = match &self.diagram {
            Diagram::Contact(d) => validate_contact(d),
            Diagram::Round(d) => validate_diagram(d),
        };
        match violations.into_iter().next() {
            None => Ok(()),
            Some(v) => Err(DslError::semantic(self.violation_pos(&v), format!("diagram `{}`: {v}", self.name()))),
        }
    }

    fn violation_pos(&self, v: &Violation) -> Option<Pos> {
        let s = &self.spans;
        let comp = |l: &String| s.components.get(l).or(s.coefficients.get(l)).copied();
        match v {
            Violation::DuplicateLabel { label }
            | Violation::UnknownLabel { label }
            | Violation::SelfLinking { label }
            | Violation::MissingCoefficient { label }
            | Violation::NotPm1 { label }
            | Violation::SelfPair { label }
            | Violation::MultipleRound1 { label } => comp(label),
            Violation::JointOutOfRange { round2, .. } | Violation::JointMismatch { round2, .. } => {
                s.round2.get(*round2).copied()
            }
            Violation::RotativeWithoutTwisting { round1 } | Violation::ZeroRotativeParameter { round1 } => {
                s.round1.get(*round1).copied()
            }
        }
        .or(s.diagram)
    }

    fn check_fronts(&self) -> Result<(), DslError> {
        let comps = self.components();
        let index: BTreeMap<&str, usize> = comps.iter().enumerate().map(|(i, c)| (c.label.as_str(), i)).collect();
        let mut grouped = BTreeSet::new();
        for g in &self.fronts {
            let pos = self.spans.components.get(&g.members()[0]).copied().or(self.spans.diagram);
            let err = |m: String| Err(DslError::semantic(pos, format!("front `{}`: {m}", g.label)));
            let members = g.members();
            let Some(&first) = index.get(members[0].as_str()) else {
                return err(format!("component `{}` is missing", members[0]));
            };
            let inv = classical_invariants(&g.front);
            for (k, m) in members.iter().enumerate() {
                if !grouped.insert(m.clone()) {
                    return err(format!("component `{m}` belongs to two fronts"));
                }
                let Some(c) = comps.get(first + k).filter(|c| &c.label == m) else {
                    return err("components must be listed together and in order".into());
                };
                let ci = inv.components[k];
                if c.tb != ci.tb || c.rot != ci.rot {
                    return err(format!(
                        "component `{m}` declares tb = {}, rot = {} but the front gives tb = {}, rot = {}",
                        c.tb, c.rot, ci.tb, ci.rot
                    ));
                }
                if members.len() > 1 && !c.note.is_empty() {
                    return err("notes are only allowed on single-component fronts".into());
                }
            }
            for i in 0..members.len() {
                for j in i + 1..members.len() {
                    let declared = self.linking().get(&members[i], &members[j]);
                    if declared != inv.lk(i, j) {
                        return err(format!(
                            "lk({}, {}) = {declared} but the front gives {}",
                            members[i],
                            members[j],
                            inv.lk(i, j)
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DiagramFile {
    pub diagrams: Vec<DiagramEntry>,
}

impl DiagramFile {
    /// The named diagram, or the only one when `name` is `None`.
    pub fn select(&self, name: Option<&str>) -> Result<&DiagramEntry, DslError> {
        match name {
            Some(n) => self
                .diagrams
                .iter()
                .find(|d| d.name() == n)
                .ok_or_else(|| DslError::semantic(None, format!("no diagram named `{n}`"))),
            None => match self.diagrams.as_slice() {
                [d] => Ok(d),
                [] => Err(DslError::semantic(None, "the file holds no diagrams")),
                ds => Err(DslError::semantic(
                    None,
                    format!("the file holds {} diagrams; pick one with --diagram", ds.len()),
                )),
            },
        }
    }

    pub fn to_json(&self) -> Value {
        file_to_json(self)
    }

    pub fn validate(&self) -> Result<(), DslError> {
        let mut names = BTreeSet::new();
        for d in &self.diagrams {
            if !names.insert(d.name()) {
                return Err(DslError::semantic(d.spans.diagram, format!("diagram `{}` is defined twice", d.name())));
            }
            d.validate()?;
        }
        Ok(())
    }
}

/// Parses either the text format or its JSON form (detected by a leading `{`).
pub fn load(text: &str) -> Result<DiagramFile, DslError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_dsl(text)
    }
}

/// Default twisting for a layer written without an explicit `twisting`.
pub(crate) fn default_twisting(v: LayerVariant) -> u32 {
    match v {
        LayerVariant::RotativePlus { .. } | LayerVariant::RotativeMinus { .. } => 1,
        _ => 0,
    }
}

pub(crate) fn layer_with(variant: LayerVariant, twisting: Option<u32>) -> TightLayerSpec {
    TightLayerSpec { variant, twisting: twisting.unwrap_or(default_twisting(variant)) }
}

/// Parses a layer literal: `invariant`, `nonrotative(k)`,
/// `rotative_plus(m)` or `rotative_minus(m)`.
pub fn parse_layer(text: &str) -> Result<TightLayerSpec, DslError> {
    let toks = lexer::lex(text)?;
    let mut p = parser::Parser::new(toks);
    let (variant, _) = p.layer()?;
    p.expect_eof()?;
    Ok(layer_with(variant, None))
}
