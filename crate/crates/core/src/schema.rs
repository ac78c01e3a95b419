//! JSON documents for decompositions and coordinates.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::catalog::PieceChart;
use crate::error::ParseError;
use crate::geometry::{BoundaryComponent, Decomposition, ElementaryKind, Piece, Port, SurfacePair};
use crate::rational::{parse_q, Q};

fn schema(msg: impl Into<String>) -> ParseError {
    ParseError::Schema(msg.into())
}

fn kind_from(tag: &str, c: Option<i64>) -> Result<ElementaryKind, ParseError> {
    let need_c = || -> Result<usize, ParseError> {
        match c {
            Some(c) if c >= 0 => Ok(c as usize),
            Some(c) => Err(schema(format!("negative arc count {c}"))),
            None => Err(schema(format!("kind {tag} needs field c"))),
        }
    };
    Ok(match tag {
        "P" => ElementaryKind::Pants,
        "Q" => ElementaryKind::Connector,
        "Tempty" => ElementaryKind::TrimAnnulusEmpty,
        "Tc" => ElementaryKind::TrimAnnulus(need_c()?),
        "Dc" => ElementaryKind::CuspedDisk(need_c()?),
        other => return Err(schema(format!("unknown piece kind `{other}`"))),
    })
}

fn port_from(v: &Value) -> Result<Port, ParseError> {
    let arr = v.as_array().filter(|a| a.len() == 2).ok_or_else(|| schema("port must be [id, index]"))?;
    let id = arr[0].as_str().ok_or_else(|| schema("port id must be a string"))?;
    let idx = arr[1].as_u64().ok_or_else(|| schema("port index must be a nonnegative integer"))?;
    Ok(Port::new(id, idx as usize))
}

/// Parses `{"pieces": [{"id", "kind", "c"?}], "gluings": [[[id, port], [id, port]]], "connected"?}`.
pub fn decomposition_from_json(v: &Value) -> Result<Decomposition, ParseError> {
    let pieces_v = v.get("pieces").and_then(Value::as_array).ok_or_else(|| schema("missing array `pieces`"))?;
    let mut pieces = Vec::new();
    for p in pieces_v {
        let id = p.get("id").and_then(Value::as_str).ok_or_else(|| schema("piece needs string `id`"))?;
        let tag = p.get("kind").and_then(Value::as_str).ok_or_else(|| schema("piece needs string `kind`"))?;
        let c = p.get("c").and_then(Value::as_i64);
        pieces.push(Piece { id: id.to_string(), kind: kind_from(tag, c)? });
    }
    let mut gluings = Vec::new();
    if let Some(gs) = v.get("gluings") {
        for g in gs.as_array().ok_or_else(|| schema("`gluings` must be an array"))? {
            let pair = g.as_array().filter(|a| a.len() == 2).ok_or_else(|| schema("gluing must be a pair of ports"))?;
            gluings.push((port_from(&pair[0])?, port_from(&pair[1])?));
        }
    }
    let require_connected = v.get("connected").and_then(Value::as_bool).unwrap_or(false);
    Ok(Decomposition { pieces, gluings, require_connected })
}

pub fn decomposition_to_json(d: &Decomposition) -> Value {
    let pieces: Vec<Value> = d
        .pieces
        .iter()
        .map(|p| match p.kind {
            ElementaryKind::TrimAnnulus(c) | ElementaryKind::CuspedDisk(c) => {
                json!({"id": p.id, "kind": p.kind.tag(), "c": c})
            }
            _ => json!({"id": p.id, "kind": p.kind.tag()}),
        })
        .collect();
    let gluings: Vec<Value> = d.gluings.iter().map(|(a, b)| json!([[a.piece, a.index], [b.piece, b.index]])).collect();
    let mut out = json!({"pieces": pieces, "gluings": gluings});
    if d.require_connected {
        out["connected"] = json!(true);
    }
    out
}

/// Parses the `charts` object of a coordinates document against a
/// decomposition.
pub fn charts_from_json(d: &Decomposition, v: &Value) -> Result<BTreeMap<String, PieceChart>, ParseError> {
    let obj = v.as_object().ok_or_else(|| schema("`charts` must be an object"))?;
    let mut out = BTreeMap::new();
    for (id, chart) in obj {
        let kind = d.kind(id).ok_or_else(|| schema(format!("chart for unknown piece `{id}`")))?;
        out.insert(id.clone(), PieceChart::from_json(kind, chart)?);
    }
    Ok(out)
}

/// Parses `{"decomposition": {...}, "charts": {...}}`. A string in place of
/// the decomposition is resolved by `load`.
pub fn coordinates_from_json(
    v: &Value,
    load: impl Fn(&str) -> Result<Value, ParseError>,
) -> Result<(Decomposition, BTreeMap<String, PieceChart>), ParseError> {
    let dv = v.get("decomposition").ok_or_else(|| schema("missing `decomposition`"))?;
    let d = match dv {
        Value::String(path) => decomposition_from_json(&load(path)?)?,
        other => decomposition_from_json(other)?,
    };
    let charts = charts_from_json(&d, v.get("charts").ok_or_else(|| schema("missing `charts`"))?)?;
    Ok((d, charts))
}

/// Parses `{"genus": g, "boundary": [...]}` where each boundary entry is
/// `"alpha"`, `"delta"` or a positive integer `c` (a circle carrying `c`
/// α-arcs separated by δ-arcs).
pub fn surface_pair_from_json(v: &Value) -> Result<SurfacePair, ParseError> {
    let genus = v.get("genus").and_then(Value::as_u64).ok_or_else(|| schema("missing nonnegative integer `genus`"))?;
    let entries = v.get("boundary").and_then(Value::as_array).ok_or_else(|| schema("missing array `boundary`"))?;
    let mut boundary = Vec::new();
    for e in entries {
        boundary.push(match e {
            Value::String(s) if s == "alpha" => BoundaryComponent::alpha_circle(),
            Value::String(s) if s == "delta" => BoundaryComponent::delta_circle(),
            Value::Number(n) => match n.as_u64() {
                Some(c) if c >= 1 => BoundaryComponent::with_arcs(c as usize),
                _ => return Err(schema(format!("arc count {n} must be a positive integer"))),
            },
            other => return Err(schema(format!("bad boundary entry {other}"))),
        });
    }
    Ok(SurfacePair::new(genus as u32, boundary))
}

fn q_from(v: &Value) -> Result<Q, ParseError> {
    match v {
        Value::String(s) => parse_q(s),
        Value::Number(n) => n.as_i64().map(Q::from_integer).ok_or_else(|| ParseError::Rational(n.to_string())),
        other => Err(ParseError::Rational(other.to_string())),
    }
}

/// Attachment list of a δ component: `[[weight, sign], ...]`, either bare
/// (an arc of δ) or as `{"closed": bool, "attachments": [...]}`.
pub fn attachments_from_json(v: &Value) -> Result<(bool, Vec<(Q, i8)>), ParseError> {
    let (closed, list) = match v {
        Value::Array(a) => (false, a),
        Value::Object(_) => (
            v.get("closed").and_then(Value::as_bool).unwrap_or(false),
            v.get("attachments").and_then(Value::as_array).ok_or_else(|| schema("missing array `attachments`"))?,
        ),
        _ => return Err(schema("attachments must be an array or object")),
    };
    let mut out = Vec::new();
    for item in list {
        let pair =
            item.as_array().filter(|a| a.len() == 2).ok_or_else(|| schema("attachment must be [weight, sign]"))?;
        let sign = match pair[1].as_i64() {
            Some(1) => 1,
            Some(-1) => -1,
            _ => return Err(schema(format!("sign {} is not 1 or -1", pair[1]))),
        };
        out.push((q_from(&pair[0])?, sign));
    }
    Ok((closed, out))
}
