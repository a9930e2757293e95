use std::fmt::{self, Write};

use crate::diagram::{LayerVariant, LegendrianComponent, TightLayerSpec};
use crate::front::Orientation;

use super::lexer::{is_ident_char, is_ident_start};
use super::{default_twisting, Diagram, DiagramEntry, DiagramFile};

/// A label as it appears in the text format: bare when it lexes as a
/// name, quoted otherwise.
pub fn format_label(s: &str) -> String {
    let mut chars = s.chars();
    let bare = chars.next().is_some_and(is_ident_start) && chars.all(is_ident_char);
    if bare {
        s.to_string()
    } else {
        quote(s)
    }
}

fn quote(s: &str) -> String {
    let mut out = String::from("\"");
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            _ => out.push(c),
        }
    }
    out.push('"');
    out
}

/// `invariant`, `nonrotative(k)`, `rotative_plus(m)` or `rotative_minus(m)`.
pub fn layer_literal(layer: &TightLayerSpec) -> String {
    match layer.variant {
        LayerVariant::InvariantStd => "invariant".into(),
        LayerVariant::NonRotative { holonomy } => format!("nonrotative({holonomy})"),
        LayerVariant::RotativePlus { m } => format!("rotative_plus({m})"),
        LayerVariant::RotativeMinus { m } => format!("rotative_minus({m})"),
    }
}

fn plain_component(out: &mut String, c: &LegendrianComponent) {
    let _ = write!(out, "  component {} {{ tb = {}; rot = {};", format_label(&c.label), c.tb, c.rot);
    if !c.note.is_empty() {
        let _ = write!(out, " note = {};", quote(&c.note));
    }
    out.push_str(" }\n");
}

fn round_block(out: &mut String, layer: &TightLayerSpec, extra: &str) {
    let _ = write!(out, " layer = {};", layer_literal(layer));
    if layer.twisting != default_twisting(layer.variant) {
        let _ = write!(out, " twisting = {};", layer.twisting);
    }
    out.push_str(extra);
    out.push_str(" }\n");
}

impl DiagramEntry {
    /// Canonical text: components in order, then linking numbers by label,
    /// contact coefficients in component order, round-1 and joint-pair
    /// blocks in round-1 order and finally lone round-2 blocks.
    pub fn to_dsl(&self) -> String {
        let mut out = String::new();
        let (kw, name) = match &self.diagram {
            Diagram::Contact(d) => ("diagram", &d.name),
            Diagram::Round(d) => ("round_diagram", &d.name),
        };
        let _ = writeln!(out, "{kw} {} {{", format_label(name));
        let comps = self.components();
        let mut i = 0;
        while i < comps.len() {
            let c = &comps[i];
            match self.fronts.iter().find(|g| g.members()[0] == c.label) {
                Some(g) => {
                    let orient: Vec<&str> = g
                        .front
                        .orientation
                        .iter()
                        .map(|o| if *o == Orientation::Forward { "forward" } else { "reverse" })
                        .collect();
                    let _ = write!(
                        out,
                        "  component {} {{ front = {}; orient = {};",
                        format_label(&g.label),
                        quote(&g.front.word.to_string()),
                        orient.join(", ")
                    );
                    if !c.note.is_empty() {
                        let _ = write!(out, " note = {};", quote(&c.note));
                    }
                    out.push_str(" }\n");
                    i += g.front.num_components();
                }
                None => {
                    plain_component(&mut out, c);
                    i += 1;
                }
            }
        }
        for (a, b, lk) in self.linking().iter() {
            let same_front = self.group_of(a).is_some_and(|g| g.members().iter().any(|m| m == b));
            if !same_front {
                let _ = writeln!(out, "  lk({}, {}) = {lk};", format_label(a), format_label(b));
            }
        }
        let coefficients = match &self.diagram {
            Diagram::Contact(d) => &d.coefficients,
            Diagram::Round(d) => &d.dehn,
        };
        for c in comps {
            if let Some(s) = coefficients.get(&c.label) {
                let _ = writeln!(out, "  contact_surgery {} = {s};", format_label(&c.label));
            }
        }
        if let Diagram::Round(d) = &self.diagram {
            for (i, r1) in d.round1.iter().enumerate() {
                let pair = format!("({}, {})", format_label(&r1.pair.0), format_label(&r1.pair.1));
                let coeffs = format!(" r1 = {}, {};", r1.coeff_a, r1.coeff_b);
                match d.joint_partner(i) {
                    Some(r2) => {
                        let _ = write!(out, "  joint_pair {pair} {{{coeffs} r2 = {};", r2.coeff);
                        round_block(&mut out, &r1.layer, "");
                    }
                    None => {
                        let _ = write!(out, "  round1 {pair} {{{coeffs}");
                        round_block(&mut out, &r1.layer, "");
                    }
                }
            }
            for r2 in d.round2.iter().filter(|r| r.joint_with.is_none()) {
                let _ = writeln!(out, "  round2 {} {{ r2 = {}; }}", format_label(&r2.knot), r2.coeff);
            }
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Display for DiagramFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.diagrams.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            f.write_str(&d.to_dsl())?;
        }
        Ok(())
    }
}
