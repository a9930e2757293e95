use std::collections::{BTreeMap, BTreeSet};

use crate::diagram::{
    ContactSurgeryDiagram, LayerVariant, LegendrianComponent, Round1Spec, Round2Spec, RoundSurgeryDiagram,
};
use crate::front::{classical_invariants, parse_front_word, FrontWord, Orientation, OrientedFront};
use crate::slope::SlopeQ;

use super::lexer::{lex, Tok, Token};
use super::{layer_with, member_labels, Diagram, DiagramEntry, DiagramFile, DslError, FrontGroup, Pos, Spans};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Contact,
    Round,
}

#[derive(Debug, Default)]
struct ComponentFields {
    tb: Option<(i64, Pos)>,
    rot: Option<(i64, Pos)>,
    note: Option<String>,
    front: Option<(FrontWord, Pos)>,
    orient: Option<(Vec<Orientation>, Pos)>,
}

#[derive(Debug)]
struct RoundFields {
    r1: (i64, i64),
    r2: Option<SlopeQ>,
    layer: LayerVariant,
    twisting: Option<u32>,
}

#[derive(Debug)]
enum Stmt {
    Component { label: String, fields: ComponentFields },
    Lk { a: String, b: String, value: i64 },
    Surgery { label: String, slope: SlopeQ },
    Round1 { a: String, b: String, fields: RoundFields },
    Round2 { label: String, coeff: SlopeQ },
}

#[derive(Debug)]
struct RawDiagram {
    kind: Kind,
    name: String,
    pos: Pos,
    stmts: Vec<(Stmt, Pos)>,
}

pub(crate) struct Parser {
    toks: Vec<Token>,
    i: usize,
}

impl Parser {
    pub(crate) fn new(toks: Vec<Token>) -> Self {
        Parser { toks, i: 0 }
    }

    fn peek(&self) -> &Token {
        &self.toks[self.i]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn unexpected<T>(&self, wanted: &str) -> Result<T, DslError> {
        let t = self.peek();
        Err(DslError::syntax(t.pos, format!("expected {wanted}, found {}", t.tok.describe())))
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek().tok == Tok::Sym(c) {
            self.next();
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<Pos, DslError> {
        if self.peek().tok == Tok::Sym(c) {
            Ok(self.next().pos)
        } else {
            self.unexpected(&format!("`{c}`"))
        }
    }

    pub(crate) fn expect_eof(&mut self) -> Result<(), DslError> {
        if self.peek().tok == Tok::Eof {
            Ok(())
        } else {
            self.unexpected("end of input")
        }
    }

    fn ident(&mut self) -> Result<(String, Pos), DslError> {
        match self.peek().tok.clone() {
            Tok::Ident(s) => Ok((s, self.next().pos)),
            _ => self.unexpected("a name"),
        }
    }

    /// A bare name or a quoted string.
    fn label(&mut self) -> Result<(String, Pos), DslError> {
        match self.peek().tok.clone() {
            Tok::Ident(s) | Tok::Str(s) => Ok((s, self.next().pos)),
            _ => self.unexpected("a label"),
        }
    }

    fn string(&mut self) -> Result<(String, Pos), DslError> {
        match self.peek().tok.clone() {
            Tok::Str(s) => Ok((s, self.next().pos)),
            _ => self.unexpected("a string"),
        }
    }

    fn sign(&mut self) -> i128 {
        if self.eat_sym('-') {
            -1
        } else {
            self.eat_sym('+');
            1
        }
    }

    fn digits(&mut self) -> Result<(i128, Pos), DslError> {
        match self.peek().tok.clone() {
            Tok::Int(s) => {
                let pos = self.next().pos;
                let v = s.parse::<i128>().map_err(|_| DslError::syntax(pos, format!("number `{s}` is too large")))?;
                Ok((v, pos))
            }
            _ => self.unexpected("a number"),
        }
    }

    fn int<T: TryFrom<i128>>(&mut self, what: &str) -> Result<(T, Pos), DslError> {
        let start = self.peek().pos;
        let s = self.sign();
        let (v, _) = self.digits()?;
        let v = s * v;
        T::try_from(v).map(|x| (x, start)).map_err(|_| DslError::syntax(start, format!("{what} {v} is out of range")))
    }

    fn slope(&mut self) -> Result<(SlopeQ, Pos), DslError> {
        let start = self.peek().pos;
        let sign = self.sign();
        if self.peek().tok == Tok::Ident("inf".into()) {
            self.next();
            return Ok((SlopeQ::INFINITY, start));
        }
        let (p, _) = self.digits()?;
        let q = if self.eat_sym('/') { self.digits()?.0 } else { 1 };
        let bad = || DslError::syntax(start, "slope is out of range");
        let p = i64::try_from(sign * p).map_err(|_| bad())?;
        let q = i64::try_from(q).map_err(|_| bad())?;
        SlopeQ::new(p, q).map(|s| (s, start)).map_err(|e| DslError::syntax(start, e.to_string()))
    }

    pub(crate) fn layer(&mut self) -> Result<(LayerVariant, Pos), DslError> {
        let (name, pos) = self.ident()?;
        let arg = |p: &mut Self| -> Result<i64, DslError> {
            p.expect_sym('(')?;
            let (v, _) = p.int::<i64>("layer parameter")?;
            p.expect_sym(')')?;
            Ok(v)
        };
        let variant = match name.as_str() {
            "invariant" => LayerVariant::InvariantStd,
            "nonrotative" => LayerVariant::NonRotative { holonomy: arg(self)? },
            "rotative_plus" | "rotative_minus" => {
                let m = arg(self)?;
                let m = u32::try_from(m)
                    .map_err(|_| DslError::syntax(pos, format!("rotative parameter must be non-negative, got {m}")))?;
                if name == "rotative_plus" {
                    LayerVariant::RotativePlus { m }
                } else {
                    LayerVariant::RotativeMinus { m }
                }
            }
            _ => {
                return Err(DslError::syntax(
                    pos,
                    format!("unknown layer `{name}` (expected invariant, nonrotative(k), rotative_plus(m) or rotative_minus(m))"),
                ))
            }
        };
        Ok((variant, pos))
    }

    fn pair(&mut self) -> Result<(String, String), DslError> {
        self.expect_sym('(')?;
        let (a, _) = self.label()?;
        self.expect_sym(',')?;
        let (b, _) = self.label()?;
        self.expect_sym(')')?;
        Ok((a, b))
    }

    /// `{ key = value; ... }`, handing each key to `field`.
    fn block(&mut self, mut field: impl FnMut(&mut Self, &str, Pos) -> Result<(), DslError>) -> Result<(), DslError> {
        self.expect_sym('{')?;
        let mut seen = BTreeSet::new();
        while !self.eat_sym('}') {
            let (key, pos) = self.ident()?;
            if !seen.insert(key.clone()) {
                return Err(DslError::syntax(pos, format!("field `{key}` given twice")));
            }
            self.expect_sym('=')?;
            field(self, &key, pos)?;
            self.expect_sym(';')?;
        }
        Ok(())
    }

    fn component_fields(&mut self) -> Result<ComponentFields, DslError> {
        let mut f = ComponentFields::default();
        self.block(|p, key, pos| {
            match key {
                "tb" => f.tb = Some(p.int("tb")?),
                "rot" => f.rot = Some(p.int("rot")?),
                "note" => f.note = Some(p.string()?.0),
                "front" => {
                    let (s, spos) = p.string()?;
                    let w = parse_front_word(&s).map_err(|e| DslError::syntax(spos, format!("front word: {e}")))?;
                    f.front = Some((w, spos));
                }
                "orient" => {
                    let mut list = Vec::new();
                    loop {
                        let (o, opos) = p.ident()?;
                        list.push(match o.as_str() {
                            "forward" => Orientation::Forward,
                            "reverse" => Orientation::Reverse,
                            _ => return Err(DslError::syntax(opos, "orientation must be forward or reverse")),
                        });
                        if !p.eat_sym(',') {
                            break;
                        }
                    }
                    f.orient = Some((list, pos));
                }
                _ => return Err(DslError::syntax(pos, format!("unknown component field `{key}`"))),
            }
            Ok(())
        })?;
        Ok(f)
    }

    fn round_fields(&mut self, start: Pos, joint: bool) -> Result<RoundFields, DslError> {
        let (mut r1, mut r2, mut layer, mut twisting) = (None, None, None, None);
        self.block(|p, key, pos| {
            match key {
                "r1" => {
                    let (a, _) = p.int("round-1 coefficient")?;
                    p.expect_sym(',')?;
                    let (b, _) = p.int("round-1 coefficient")?;
                    r1 = Some((a, b));
                }
                "r2" if joint => r2 = Some(p.slope()?.0),
                "layer" => layer = Some(p.layer()?.0),
                "twisting" => twisting = Some(p.int::<u32>("twisting")?.0),
                _ => return Err(DslError::syntax(pos, format!("unknown field `{key}` here"))),
            }
            Ok(())
        })?;
        let r1 = r1.ok_or_else(|| DslError::syntax(start, "missing `r1 = <int>, <int>;`"))?;
        if joint && r2.is_none() {
            return Err(DslError::syntax(start, "joint pair is missing `r2 = <slope>;`"));
        }
        Ok(RoundFields { r1, r2, layer: layer.unwrap_or(LayerVariant::InvariantStd), twisting })
    }

    fn statement(&mut self) -> Result<(Stmt, Pos), DslError> {
        let (kw, pos) = self.ident()?;
        let stmt = match kw.as_str() {
            "component" => {
                let (label, _) = self.label()?;
                let fields = self.component_fields()?;
                Stmt::Component { label, fields }
            }
            "lk" => {
                let (a, b) = self.pair()?;
                self.expect_sym('=')?;
                let (value, _) = self.int("linking number")?;
                self.expect_sym(';')?;
                Stmt::Lk { a, b, value }
            }
            "contact_surgery" => {
                let (label, _) = self.label()?;
                self.expect_sym('=')?;
                let (slope, _) = self.slope()?;
                self.expect_sym(';')?;
                Stmt::Surgery { label, slope }
            }
            "joint_pair" | "round1" => {
                let (a, b) = self.pair()?;
                let fields = self.round_fields(pos, kw == "joint_pair")?;
                Stmt::Round1 { a, b, fields }
            }
            "round2" => {
                let (label, _) = self.label()?;
                let mut coeff = None;
                self.block(|p, key, kpos| {
                    if key != "r2" {
                        return Err(DslError::syntax(kpos, format!("unknown field `{key}` here")));
                    }
                    coeff = Some(p.slope()?.0);
                    Ok(())
                })?;
                let coeff = coeff.ok_or_else(|| DslError::syntax(pos, "missing `r2 = <slope>;`"))?;
                Stmt::Round2 { label, coeff }
            }
            _ => {
                return Err(DslError::syntax(
                    pos,
                    format!("unknown statement `{kw}` (expected component, lk, contact_surgery, joint_pair, round1 or round2)"),
                ))
            }
        };
        Ok((stmt, pos))
    }

    fn diagram(&mut self) -> Result<RawDiagram, DslError> {
        let (kw, pos) = self.ident()?;
        let kind = match kw.as_str() {
            "diagram" => Kind::Contact,
            "round_diagram" => Kind::Round,
            _ => return Err(DslError::syntax(pos, format!("expected `diagram` or `round_diagram`, found `{kw}`"))),
        };
        let (name, _) = self.label()?;
        self.expect_sym('{')?;
        let mut stmts = Vec::new();
        while !self.eat_sym('}') {
            if self.peek().tok == Tok::Eof {
                return self.unexpected("`}`");
            }
            stmts.push(self.statement()?);
        }
        Ok(RawDiagram { kind, name, pos, stmts })
    }
}

fn sem<T>(pos: Pos, message: String) -> Result<T, DslError> {
    Err(DslError::semantic(pos, message))
}

fn build(raw: RawDiagram) -> Result<DiagramEntry, DslError> {
    let mut spans = Spans { diagram: Some(raw.pos), ..Spans::default() };
    let mut components: Vec<LegendrianComponent> = Vec::new();
    let mut fronts = Vec::new();
    let mut linking = crate::diagram::LinkingData::new();
    // pairs whose linking number a front fixes
    let mut derived: BTreeMap<(String, String), i64> = BTreeMap::new();
    let ordered = |a: &str, b: &str| if a <= b { (a.to_string(), b.to_string()) } else { (b.to_string(), a.to_string()) };

    for (stmt, pos) in &raw.stmts {
        let Stmt::Component { label, fields } = stmt else { continue };
        let mut add = |c: LegendrianComponent, components: &mut Vec<LegendrianComponent>| {
            if spans.components.insert(c.label.clone(), *pos).is_some() {
                return sem(*pos, format!("component `{}` is declared twice", c.label));
            }
            components.push(c);
            Ok(())
        };
        match &fields.front {
            Some((word, _)) => {
                let front = match &fields.orient {
                    Some((o, opos)) => {
                        OrientedFront::new(word.clone(), o.clone()).or_else(|e| sem(*opos, e.to_string()))?
                    }
                    None => OrientedFront::forward(word.clone()),
                };
                let inv = classical_invariants(&front);
                let members = member_labels(label, front.num_components());
                if members.len() > 1 && (fields.tb.is_some() || fields.rot.is_some() || fields.note.is_some()) {
                    return sem(*pos, format!("front `{label}` has several components; tb, rot and note cannot be declared"));
                }
                let ci = inv.components[0];
                if let Some((tb, tpos)) = fields.tb.filter(|t| t.0 != ci.tb) {
                    return sem(tpos, format!("component `{label}` declares tb = {tb} but its front gives {}", ci.tb));
                }
                if let Some((rot, rpos)) = fields.rot.filter(|r| r.0 != ci.rot) {
                    return sem(rpos, format!("component `{label}` declares rot = {rot} but its front gives {}", ci.rot));
                }
                for (k, m) in members.iter().enumerate() {
                    let c = &inv.components[k];
                    let mut lc = LegendrianComponent::new(m.clone(), c.tb, c.rot);
                    lc.note = fields.note.clone().unwrap_or_default();
                    add(lc, &mut components)?;
                    for (j, other) in members.iter().enumerate().skip(k + 1) {
                        let v = inv.lk(k, j);
                        derived.insert(ordered(m, other), v);
                        linking.set(m, other, v).expect("distinct labels");
                    }
                }
                fronts.push(FrontGroup { label: label.clone(), front });
            }
            None => {
                if let Some((_, opos)) = &fields.orient {
                    return sem(*opos, format!("component `{label}` has an orientation but no front"));
                }
                let (Some((tb, _)), Some((rot, _))) = (fields.tb, fields.rot) else {
                    return sem(*pos, format!("component `{label}` needs tb and rot, or a front"));
                };
                let mut lc = LegendrianComponent::new(label.clone(), tb, rot);
                lc.note = fields.note.clone().unwrap_or_default();
                add(lc, &mut components)?;
            }
        }
    }

    let known = |l: &str, pos: Pos| -> Result<(), DslError> {
        if spans.components.contains_key(l) {
            Ok(())
        } else {
            sem(pos, format!("unknown component `{l}`"))
        }
    };
    let mut links = BTreeMap::new();
    let mut dehn = BTreeMap::new();
    let mut round1: Vec<(Round1Spec, Option<SlopeQ>, Pos)> = Vec::new();
    let mut lone: Vec<(Round2Spec, Pos)> = Vec::new();
    for (stmt, pos) in &raw.stmts {
        match stmt {
            Stmt::Component { .. } => {}
            Stmt::Lk { a, b, value } => {
                if a == b {
                    return sem(*pos, format!("lk({a}, {a}): self-linking is not allowed"));
                }
                known(a, *pos)?;
                known(b, *pos)?;
                let k = ordered(a, b);
                if links.insert(k.clone(), *pos).is_some() {
                    return sem(*pos, format!("lk({a}, {b}) is declared twice"));
                }
                match derived.get(&k) {
                    Some(&d) if d != *value => {
                        return sem(*pos, format!("lk({a}, {b}) = {value} but the front gives {d}"));
                    }
                    Some(_) => {}
                    None => linking.set(a, b, *value).expect("distinct labels"),
                }
            }
            Stmt::Surgery { label, slope } => {
                known(label, *pos)?;
                if dehn.insert(label.clone(), *slope).is_some() {
                    return sem(*pos, format!("component `{label}` has two contact surgery coefficients"));
                }
                spans.coefficients.insert(label.clone(), *pos);
            }
            Stmt::Round1 { a, b, fields } => {
                if raw.kind == Kind::Contact {
                    return sem(*pos, "round surgeries need a `round_diagram`".into());
                }
                known(a, *pos)?;
                known(b, *pos)?;
                let spec = Round1Spec {
                    pair: (a.clone(), b.clone()),
                    coeff_a: fields.r1.0,
                    coeff_b: fields.r1.1,
                    layer: layer_with(fields.layer, fields.twisting),
                };
                round1.push((spec, fields.r2, *pos));
            }
            Stmt::Round2 { label, coeff } => {
                if raw.kind == Kind::Contact {
                    return sem(*pos, "round surgeries need a `round_diagram`".into());
                }
                known(label, *pos)?;
                lone.push((Round2Spec { knot: label.clone(), coeff: *coeff, joint_with: None }, *pos));
            }
        }
    }
    spans.links = links;

    let diagram = match raw.kind {
        Kind::Contact => Diagram::Contact(ContactSurgeryDiagram {
            name: raw.name,
            components,
            linking,
            coefficients: dehn,
        }),
        Kind::Round => {
            let mut rd = RoundSurgeryDiagram::new(raw.name);
            rd.components = components;
            rd.linking = linking;
            rd.dehn = dehn;
            // joint partners first, in round-1 order, then lone round-2 surgeries
            for (i, (spec, r2, pos)) in round1.into_iter().enumerate() {
                if let Some(coeff) = r2 {
                    rd.round2.push(Round2Spec { knot: spec.pair.1.clone(), coeff, joint_with: Some(i) });
                    spans.round2.push(pos);
                }
                rd.round1.push(spec);
                spans.round1.push(pos);
            }
            for (spec, pos) in lone {
                rd.round2.push(spec);
                spans.round2.push(pos);
            }
            Diagram::Round(rd)
        }
    };
    Ok(DiagramEntry { diagram, fronts, spans })
}

/// Parses and validates the text format.
pub fn parse_dsl(text: &str) -> Result<DiagramFile, DslError> {
    let mut p = Parser::new(lex(text)?);
    let mut raws = Vec::new();
    while p.peek().tok != Tok::Eof {
        raws.push(p.diagram()?);
    }
    let file = DiagramFile { diagrams: raws.into_iter().map(build).collect::<Result<_, _>>()? };
    file.validate()?;
    Ok(file)
}
