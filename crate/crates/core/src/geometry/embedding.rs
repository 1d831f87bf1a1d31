//! Straight-line spatial embeddings and their JSON schema.
//!
//! Schema: `{ "n": int, "coords": [[x, y, z], ...], "edges": [[u, v], ...] }`
//! where each coordinate is either a JSON integer or a string `"p/q"`
//! (or `"p"`), and `edges` is optional — absent means the complete graph
//! on `n` vertices. Emission writes integers as numbers when they fit in
//! an i64 and as `"p/q"` strings otherwise, and omits `edges` for
//! complete graphs, so round trips are canonical.

use std::str::FromStr;

use num::{BigInt, BigRational, One};
use serde_json::{json, Value};

use super::{validate_general_position, Point3, PositionViolation, Rational};
use crate::graph::{complete_graph, Graph, VertexId};
use crate::{Error, Result};

/// A map from graph vertices to exact rational points of 3-space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    graph: Graph,
    points: Vec<Point3>,
}

impl Embedding {
    pub fn new(graph: Graph, points: Vec<Point3>) -> Result<Self> {
        if points.len() != graph.n() {
            return Err(Error::PointCountMismatch {
                points: points.len(),
                vertices: graph.n(),
            });
        }
        Ok(Embedding { graph, points })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn points(&self) -> &[Point3] {
        &self.points
    }

    pub fn point(&self, v: VertexId) -> &Point3 {
        &self.points[v]
    }

    /// Exact general-position check of the straight-line realization.
    pub fn validate(&self) -> std::result::Result<(), PositionViolation> {
        validate_general_position(&self.points, self.graph.edges())
    }

    /// A copy with one vertex moved; used by local search.
    pub fn with_point(&self, v: VertexId, p: Point3) -> Result<Self> {
        if v >= self.points.len() {
            return Err(Error::InvalidGraph(format!("vertex {v} out of range")));
        }
        let mut points = self.points.clone();
        points[v] = p;
        Embedding::new(self.graph.clone(), points)
    }

    pub fn to_json_string(&self) -> String {
        let coords: Vec<Value> = self
            .points
            .iter()
            .map(|p| {
                Value::Array(vec![
                    rational_to_json(&p.x),
                    rational_to_json(&p.y),
                    rational_to_json(&p.z),
                ])
            })
            .collect();
        let mut obj = json!({
            "n": self.graph.n(),
            "coords": coords,
        });
        if !self.graph.is_complete() {
            obj["edges"] = Value::Array(
                self.graph
                    .edges()
                    .iter()
                    .map(|&(u, v)| json!([u, v]))
                    .collect(),
            );
        }
        obj.to_string()
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(s).map_err(|e| Error::Json(e.to_string()))?;
        let n = value
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Json("missing integer field \"n\"".into()))?
            as usize;
        let coords = value
            .get("coords")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Json("missing array field \"coords\"".into()))?;
        if coords.len() != n {
            return Err(Error::Json(format!(
                "coords has {} entries but n = {n}",
                coords.len()
            )));
        }
        let mut points = Vec::with_capacity(n);
        for (i, entry) in coords.iter().enumerate() {
            let triple = entry
                .as_array()
                .filter(|a| a.len() == 3)
                .ok_or_else(|| Error::Json(format!("coords[{i}] is not a triple")))?;
            points.push(Point3::new(
                rational_from_json(&triple[0], i)?,
                rational_from_json(&triple[1], i)?,
                rational_from_json(&triple[2], i)?,
            ));
        }
        let graph = match value.get("edges") {
            None | Some(Value::Null) => complete_graph(n)?,
            Some(Value::Array(list)) => {
                let mut edges = Vec::with_capacity(list.len());
                for entry in list {
                    let pair = entry
                        .as_array()
                        .filter(|a| a.len() == 2)
                        .ok_or_else(|| Error::Json("edge entry is not a pair".into()))?;
                    let u = pair[0]
                        .as_u64()
                        .ok_or_else(|| Error::Json("edge endpoint is not an integer".into()))?;
                    let v = pair[1]
                        .as_u64()
                        .ok_or_else(|| Error::Json("edge endpoint is not an integer".into()))?;
                    edges.push((u as usize, v as usize));
                }
                Graph::new(n, &edges)?
            }
            Some(_) => return Err(Error::Json("\"edges\" is not an array".into())),
        };
        Embedding::new(graph, points)
    }
}

fn rational_to_json(r: &Rational) -> Value {
    if r.denom().is_one() {
        if let Ok(i) = i64::try_from(r.numer().clone()) {
            return json!(i);
        }
    }
    if r.denom().is_one() {
        Value::String(r.numer().to_string())
    } else {
        Value::String(format!("{}/{}", r.numer(), r.denom()))
    }
}

fn rational_from_json(v: &Value, index: usize) -> Result<Rational> {
    match v {
        Value::Number(num) => {
            let i = num.as_i64().ok_or_else(|| {
                Error::Json(format!(
                    "coords[{index}]: numeric coordinates must be integers (use \"p/q\" strings for rationals)"
                ))
            })?;
            Ok(Rational::from_integer(BigInt::from(i)))
        }
        Value::String(s) => {
            let mut parts = s.splitn(2, '/');
            let numer = parts.next().unwrap_or("");
            let numer = BigInt::from_str(numer.trim())
                .map_err(|_| Error::Json(format!("coords[{index}]: bad numerator {s:?}")))?;
            match parts.next() {
                None => Ok(Rational::from_integer(numer)),
                Some(den) => {
                    let denom = BigInt::from_str(den.trim()).map_err(|_| {
                        Error::Json(format!("coords[{index}]: bad denominator {s:?}"))
                    })?;
                    if denom == BigInt::from(0) {
                        return Err(Error::Json(format!("coords[{index}]: zero denominator")));
                    }
                    Ok(BigRational::new(numer, denom))
                }
            }
        }
        _ => Err(Error::Json(format!(
            "coords[{index}]: coordinate must be an integer or a \"p/q\" string"
        ))),
    }
}
