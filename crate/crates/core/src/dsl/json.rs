use serde_json::{json, Map, Value};

use crate::diagram::{ContactSurgeryDiagram, RoundSurgeryDiagram};
use crate::front::{parse_front_word, Orientation, OrientedFront};

use super::{Diagram, DiagramEntry, DiagramFile, DslError, FrontGroup, Spans};

/// The diagram's fields plus `kind` and, when present, `fronts`.
pub fn entry_to_json(e: &DiagramEntry) -> Value {
    let (kind, mut v) = match &e.diagram {
        Diagram::Contact(d) => ("diagram", serde_json::to_value(d)),
        Diagram::Round(d) => ("round_diagram", serde_json::to_value(d)),
    };
    let v = v.as_mut().expect("diagrams serialize").as_object_mut().expect("an object");
    v.insert("kind".into(), json!(kind));
    if !e.fronts.is_empty() {
        let fronts: Vec<Value> = e
            .fronts
            .iter()
            .map(|g| {
                json!({
                    "label": g.label,
                    "word": g.front.word.to_string(),
                    "orient": g.front.orientation,
                    "components": g.members(),
                })
            })
            .collect();
        v.insert("fronts".into(), Value::Array(fronts));
    }
    Value::Object(std::mem::take(v))
}

pub fn file_to_json(f: &DiagramFile) -> Value {
    json!({ "diagrams": f.diagrams.iter().map(entry_to_json).collect::<Vec<_>>() })
}

fn shape(message: impl Into<String>) -> DslError {
    DslError::syntax(None, message)
}

fn front_from_json(v: &Value) -> Result<FrontGroup, DslError> {
    let field = |k: &str| v.get(k).ok_or_else(|| shape(format!("front is missing `{k}`")));
    let label = field("label")?.as_str().ok_or_else(|| shape("front label must be a string"))?;
    let word = field("word")?.as_str().ok_or_else(|| shape("front word must be a string"))?;
    let word = parse_front_word(word).map_err(|e| shape(format!("front `{label}`: {e}")))?;
    let orient = field("orient")?
        .as_array()
        .ok_or_else(|| shape("orient must be a list"))?
        .iter()
        .map(|o| match o.as_str() {
            Some("forward") => Ok(Orientation::Forward),
            Some("reverse") => Ok(Orientation::Reverse),
            _ => Err(shape("orientation must be \"forward\" or \"reverse\"")),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let front = OrientedFront::new(word, orient).map_err(|e| DslError::semantic(None, format!("front `{label}`: {e}")))?;
    let group = FrontGroup { label: label.to_string(), front };
    if let Some(listed) = v.get("components") {
        let members: Vec<Value> = group.members().into_iter().map(Value::from).collect();
        if listed.as_array() != Some(&members) {
            return Err(DslError::semantic(None, format!("front `{label}` lists components other than {members:?}")));
        }
    }
    Ok(group)
}

fn entry_from_json(v: &Value) -> Result<DiagramEntry, DslError> {
    let mut obj: Map<String, Value> = v.as_object().cloned().ok_or_else(|| shape("each diagram must be an object"))?;
    let kind = obj.remove("kind");
    let fronts = match obj.remove("fronts") {
        None => Vec::new(),
        Some(Value::Array(list)) => list.iter().map(front_from_json).collect::<Result<_, _>>()?,
        Some(_) => return Err(shape("`fronts` must be a list")),
    };
    let obj = Value::Object(obj);
    let bad = |e: serde_json::Error| shape(format!("malformed diagram: {e}"));
    let diagram = match kind.as_ref().and_then(Value::as_str) {
        Some("diagram") => Diagram::Contact(serde_json::from_value::<ContactSurgeryDiagram>(obj).map_err(bad)?),
        Some("round_diagram") => {
            let mut rd = serde_json::from_value::<RoundSurgeryDiagram>(obj).map_err(bad)?;
            // same order the text parser produces
            let (mut joint, lone): (Vec<_>, Vec<_>) = rd.round2.drain(..).partition(|r| r.joint_with.is_some());
            joint.sort_by_key(|r| r.joint_with);
            rd.round2 = joint.into_iter().chain(lone).collect();
            Diagram::Round(rd)
        }
        _ => return Err(shape("diagram `kind` must be \"diagram\" or \"round_diagram\"")),
    };
    Ok(DiagramEntry { diagram, fronts, spans: Spans::default() })
}

/// Reads the JSON form written by [`file_to_json`]. A bare diagram object
/// is accepted as a one-diagram file.
pub fn parse_json(text: &str) -> Result<DiagramFile, DslError> {
    let v: Value = serde_json::from_str(text).map_err(|e| {
        DslError::syntax(super::Pos { line: e.line(), col: e.column() }, format!("invalid JSON: {e}"))
    })?;
    let list = match v.get("diagrams") {
        Some(Value::Array(list)) => list.clone(),
        Some(_) => return Err(shape("`diagrams` must be a list")),
        None if v.get("kind").is_some() => vec![v],
        None => return Err(shape("expected an object with a `diagrams` list")),
    };
    let file = DiagramFile { diagrams: list.iter().map(entry_from_json).collect::<Result<_, _>>()? };
    file.validate()?;
    Ok(file)
}
