//! JSON documents for representations, windings and gluing data.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::linalg::{format_rational, parse_rational, ExactMatrix};
use crate::quiver::{DimensionVector, Quiver, Representation};
use crate::schofield::{ExtBasisElement, GluingSpec};
use crate::winding::{TArrow, Winding};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArrowJson {
    pub name: String,
    pub source: String,
    pub target: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuiverJson {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RepresentationJson {
    pub quiver: QuiverJson,
    pub dims: BTreeMap<String, usize>,
    pub matrices: BTreeMap<String, Vec<Vec<Value>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TArrowJson {
    pub colour: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WindingJson {
    pub quiver: QuiverJson,
    pub vertex_count: usize,
    pub fiber: Vec<String>,
    pub arrows: Vec<TArrowJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BasisElementJson {
    pub colour: String,
    pub source_index: usize,
    pub target_index: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GluingJson {
    pub tx: WindingJson,
    pub ty: WindingJson,
    pub basis: Vec<BasisElementJson>,
    pub tm: WindingJson,
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

pub fn quiver_from_json(q: &QuiverJson) -> Result<Quiver> {
    let arrows: Vec<(String, String, String)> = q
        .arrows
        .iter()
        .map(|a| (a.name.clone(), a.source.clone(), a.target.clone()))
        .collect();
    Quiver::new(&q.vertices, &arrows)
}

pub fn quiver_to_json(q: &Quiver) -> QuiverJson {
    QuiverJson {
        vertices: q.vertices().to_vec(),
        arrows: q
            .arrows()
            .iter()
            .map(|a| ArrowJson {
                name: a.name.clone(),
                source: q.vertex_name(a.source).to_string(),
                target: q.vertex_name(a.target).to_string(),
            })
            .collect(),
    }
}

fn scalar_from_json(v: &Value) -> Result<BigRational> {
    match v {
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_rational(&n.to_string()),
        Value::String(s) => parse_rational(s),
        other => Err(Error::InvalidScalar(other.to_string())),
    }
}

fn scalar_to_json(r: &BigRational) -> Value {
    if r.is_integer() {
        if let Some(n) = r.numer().to_i64() {
            return Value::from(n);
        }
    }
    Value::String(format_rational(r))
}

pub fn representation_from_value(doc: &RepresentationJson) -> Result<Representation> {
    let quiver = quiver_from_json(&doc.quiver)?;
    let mut dims = DimensionVector::zero(&quiver);
    for (name, d) in &doc.dims {
        dims.0[quiver.vertex_index(name)?] = *d;
    }
    for name in doc.matrices.keys() {
        quiver.arrow_index(name)?;
    }
    let mut matrices = Vec::new();
    for a in quiver.arrows() {
        let (rows, cols) = (dims.get(a.target), dims.get(a.source));
        let data = match doc.matrices.get(&a.name) {
            None => vec![BigRational::from_integer(BigInt::from(0)); rows * cols],
            Some(m) => {
                if m.len() != rows || m.iter().any(|r| r.len() != cols) {
                    return Err(Error::ShapeMismatch(a.name.clone()));
                }
                m.iter()
                    .flatten()
                    .map(scalar_from_json)
                    .collect::<Result<Vec<_>>>()?
            }
        };
        matrices.push(ExactMatrix::from_rationals(rows, cols, data));
    }
    Representation::new(quiver, dims, matrices)
}

pub fn representation_to_value(rep: &Representation) -> Result<RepresentationJson> {
    let q = rep.quiver();
    let mut matrices = BTreeMap::new();
    for (ai, a) in q.arrows().iter().enumerate() {
        let m = rep.matrix(ai);
        let entries = m.rational_entries().ok_or(Error::MixedFields)?;
        let rows = (0..m.rows())
            .map(|r| {
                entries[r * m.cols()..(r + 1) * m.cols()]
                    .iter()
                    .map(scalar_to_json)
                    .collect()
            })
            .collect();
        matrices.insert(a.name.clone(), rows);
    }
    Ok(RepresentationJson {
        quiver: quiver_to_json(q),
        dims: rep.dims().to_named(q),
        matrices,
    })
}

pub fn winding_from_value(doc: &WindingJson) -> Result<Winding> {
    let quiver = quiver_from_json(&doc.quiver)?;
    if doc.fiber.len() != doc.vertex_count {
        return Err(Error::InvalidWinding(format!(
            "fiber lists {} vertices, expected {}",
            doc.fiber.len(),
            doc.vertex_count
        )));
    }
    let fiber = doc
        .fiber
        .iter()
        .map(|p| quiver.vertex_index(p))
        .collect::<Result<Vec<_>>>()?;
    let arrows = doc
        .arrows
        .iter()
        .map(|a| {
            Ok(TArrow {
                colour: quiver.arrow_index(&a.colour)?,
                source: a.source,
                target: a.target,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Winding::new(quiver, fiber, arrows)
}

/// Canonical form: arrows sorted by `(colour, source, target)`.
pub fn winding_to_value(w: &Winding) -> WindingJson {
    let q = w.base();
    let mut arrows: Vec<TArrowJson> = w
        .arrows()
        .iter()
        .map(|a| TArrowJson {
            colour: q.arrow_name(a.colour).to_string(),
            source: a.source,
            target: a.target,
        })
        .collect();
    arrows.sort_by(|a, b| (&a.colour, a.source, a.target).cmp(&(&b.colour, b.source, b.target)));
    WindingJson {
        quiver: quiver_to_json(q),
        vertex_count: w.vertex_count(),
        fiber: w
            .fiber()
            .iter()
            .map(|&p| q.vertex_name(p).to_string())
            .collect(),
        arrows,
    }
}

pub fn gluing_from_value(doc: &GluingJson) -> Result<GluingSpec> {
    let tx = winding_from_value(&doc.tx)?;
    let ty = winding_from_value(&doc.ty)?;
    let tm = winding_from_value(&doc.tm)?;
    let basis = doc
        .basis
        .iter()
        .map(|b| {
            Ok(ExtBasisElement {
                colour: tx.base().arrow_index(&b.colour)?,
                source: b.source_index,
                target: b.target_index,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GluingSpec { tx, ty, basis, tm })
}

pub fn gluing_to_value(spec: &GluingSpec) -> GluingJson {
    GluingJson {
        tx: winding_to_value(&spec.tx),
        ty: winding_to_value(&spec.ty),
        basis: spec
            .basis
            .iter()
            .map(|b| BasisElementJson {
                colour: spec.tx.base().arrow_name(b.colour).to_string(),
                source_index: b.source,
                target_index: b.target,
            })
            .collect(),
        tm: winding_to_value(&spec.tm),
    }
}

/// Any of the three input documents.
#[derive(Debug, Clone, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Document {
    Representation(Representation),
    Winding(Winding),
    Gluing(GluingSpec),
}

impl Document {
    /// Tells the kinds apart by their keys.
    pub fn parse(text: &str) -> Result<Document> {
        let v: Value = serde_json::from_str(text).map_err(parse_err)?;
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("expected a JSON object".into()))?;
        if obj.contains_key("basis") {
            let doc: GluingJson = serde_json::from_str(text).map_err(parse_err)?;
            Ok(Document::Gluing(gluing_from_value(&doc)?))
        } else if obj.contains_key("vertex_count") {
            let doc: WindingJson = serde_json::from_str(text).map_err(parse_err)?;
            Ok(Document::Winding(winding_from_value(&doc)?))
        } else {
            let doc: RepresentationJson = serde_json::from_str(text).map_err(parse_err)?;
            Ok(Document::Representation(representation_from_value(&doc)?))
        }
    }

    pub fn to_json(&self) -> Result<Value> {
        let v = match self {
            Document::Representation(r) => serde_json::to_value(representation_to_value(r)?),
            Document::Winding(w) => serde_json::to_value(winding_to_value(w)),
            Document::Gluing(g) => serde_json::to_value(gluing_to_value(g)),
        };
        v.map_err(parse_err)
    }
}
