//! JSON formats for scenarios and distributions.
//!
//! Scenario:
//!
//! ```json
//! {"d": 2, "vertices": ["v0", "v1"], "edges": [{"id": "e0", "source": "v0", "target": "v1"}]}
//! ```
//!
//! Distribution, with the scenario inline or as a path relative to the file:
//!
//! ```json
//! {"scenario": "square.json", "kind": "rational",
//!  "edges": {"e0": [["1/2", "0"], ["0", "1/2"]]},
//!  "vertices": {"lonely": ["1/3", "2/3"]}}
//! ```
//!
//! `vertices` lists isolated vertices only. Boolean entries are written as
//! the integers `0` and `1`.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::de::{self, MapAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::scenario::Scenario;
use crate::semiring::{Boolean, Dist, Kind, Rational, Semiring};
use crate::simpdist::{EdgeMatrix, SimpDist};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeFile {
    pub id: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub d: u32,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeFile>,
}

impl ScenarioFile {
    pub fn from_scenario(s: &Scenario, d: u32) -> Self {
        ScenarioFile {
            d,
            vertices: s.vertex_names().to_vec(),
            edges: s
                .edges()
                .iter()
                .map(|e| EdgeFile {
                    id: e.id.clone(),
                    source: s.vertex_name(e.source).to_string(),
                    target: s.vertex_name(e.target).to_string(),
                })
                .collect(),
        }
    }

    pub fn to_scenario(&self) -> Result<Scenario> {
        if self.d < 2 {
            return Err(Error::InvalidParams(format!("d = {} must be at least 2", self.d)));
        }
        Scenario::new(
            self.vertices.iter().cloned(),
            self.edges
                .iter()
                .map(|e| (e.id.clone(), e.source.clone(), e.target.clone())),
        )
    }
}

pub fn scenario_from_json(text: &str) -> Result<(Scenario, u32)> {
    let f: ScenarioFile = serde_json::from_str(text)?;
    Ok((f.to_scenario()?, f.d))
}

pub fn scenario_to_json(s: &Scenario, d: u32) -> String {
    to_pretty(&ScenarioFile::from_scenario(s, d))
}

pub fn to_pretty<T: Serialize>(v: &T) -> String {
    let mut out = serde_json::to_string_pretty(v).expect("serializable");
    out.push('\n');
    out
}

/// A matrix or vector entry: a non-negative rational written as `"n/d"`, or
/// a bare integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry(pub Rational);

impl<'de> Deserialize<'de> for Entry {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Entry;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a non-negative rational such as \"3/4\", or an integer")
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Entry, E> {
                Ok(Entry(Rational::from_integer(v)))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Entry, E> {
                u64::try_from(v)
                    .map(|v| Entry(Rational::from_integer(v)))
                    .map_err(|_| E::custom(format!("negative entry {v}")))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Entry, E> {
                v.parse().map(Entry).map_err(|_| E::custom(format!("invalid entry `{v}`")))
            }
        }
        d.deserialize_any(V)
    }
}

/// A JSON object read as an ordered list of pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct Ordered<T>(pub Vec<(String, T)>);

impl<'de, T: Deserialize<'de>> Deserialize<'de> for Ordered<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V<T>(PhantomData<T>);
        impl<'de, T: Deserialize<'de>> Visitor<'de> for V<T> {
            type Value = Ordered<T>;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> std::result::Result<Ordered<T>, A::Error> {
                let mut out = Vec::new();
                while let Some((k, v)) = map.next_entry()? {
                    out.push((k, v));
                }
                Ok(Ordered(out))
            }
        }
        d.deserialize_map(V(PhantomData))
    }
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum ScenarioRef {
    Path(String),
    Inline(ScenarioFile),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DistFile {
    scenario: ScenarioRef,
    kind: Kind,
    edges: Ordered<Vec<Vec<Entry>>>,
    #[serde(default)]
    vertices: Option<Ordered<Vec<Entry>>>,
}

/// A distribution of either kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyDist {
    Rational(SimpDist<Rational>),
    Boolean(SimpDist<Boolean>),
}

impl AnyDist {
    pub fn kind(&self) -> Kind {
        match self {
            AnyDist::Rational(_) => Kind::Rational,
            AnyDist::Boolean(_) => Kind::Boolean,
        }
    }

    pub fn scenario(&self) -> &Arc<Scenario> {
        match self {
            AnyDist::Rational(p) => p.scenario(),
            AnyDist::Boolean(p) => p.scenario(),
        }
    }

    pub fn d(&self) -> usize {
        match self {
            AnyDist::Rational(p) => p.d(),
            AnyDist::Boolean(p) => p.d(),
        }
    }

    /// The Boolean projection (the distribution itself if already Boolean).
    pub fn boolean(&self) -> SimpDist<Boolean> {
        match self {
            AnyDist::Rational(p) => p.project(),
            AnyDist::Boolean(p) => p.clone(),
        }
    }
}

/// A parsed distribution file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistDocument {
    pub dist: AnyDist,
    /// The scenario path when the file referenced one instead of inlining it.
    pub scenario_ref: Option<String>,
}

/// Scalars as they appear in files.
pub trait JsonScalar: Semiring {
    fn from_entry(e: &Entry) -> Result<Self>;
    fn to_json(&self) -> Value;
}

impl JsonScalar for Rational {
    fn from_entry(e: &Entry) -> Result<Self> {
        Ok(e.0.clone())
    }

    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
}

impl JsonScalar for Boolean {
    fn from_entry(e: &Entry) -> Result<Self> {
        match e.0.to_string().as_str() {
            "0" => Ok(Boolean(false)),
            "1" => Ok(Boolean(true)),
            other => Err(Error::InvalidScalar(format!("Boolean entries are 0 or 1, got {other}"))),
        }
    }

    fn to_json(&self) -> Value {
        Value::from(u8::from(self.0))
    }
}

fn build<S: JsonScalar>(scenario: Arc<Scenario>, d: usize, f: &DistFile) -> Result<SimpDist<S>> {
    let mut edges: Vec<Option<EdgeMatrix<S>>> = vec![None; scenario.num_edges()];
    for (id, rows) in &f.edges.0 {
        let e = scenario.edge_by_name(id)?;
        if edges[e.0].is_some() {
            return Err(Error::DuplicateId(id.clone()));
        }
        if rows.len() != d || rows.iter().any(|r| r.len() != d) {
            return Err(Error::WrongOutcomeArity { expected: d, got: rows.len() });
        }
        let entries = rows
            .iter()
            .flatten()
            .map(S::from_entry)
            .collect::<Result<Vec<_>>>()?;
        edges[e.0] = Some(EdgeMatrix::new(d, entries)?);
    }
    let edges = edges
        .into_iter()
        .enumerate()
        .map(|(i, m)| m.ok_or_else(|| Error::InvalidParams(format!("edge `{}` has no matrix", scenario.edges()[i].id))))
        .collect::<Result<Vec<_>>>()?;
    let mut isolated = BTreeMap::new();
    if let Some(vs) = &f.vertices {
        for (id, row) in &vs.0 {
            let v = scenario.vertex(id)?;
            if row.len() != d {
                return Err(Error::WrongOutcomeArity { expected: d, got: row.len() });
            }
            let weights = row
                .iter()
                .enumerate()
                .map(|(a, x)| S::from_entry(x).map(|w| (a as u32, w)))
                .collect::<Result<Vec<_>>>()?;
            if isolated.insert(v, Dist::from_weights(weights)?).is_some() {
                return Err(Error::DuplicateId(id.clone()));
            }
        }
    }
    SimpDist::new(scenario, d, edges, isolated)
}

/// Parses a distribution file; `base` resolves a scenario given by path.
pub fn dist_from_json(text: &str, base: Option<&Path>) -> Result<DistDocument> {
    let f: DistFile = serde_json::from_str(text)?;
    let (sf, scenario_ref) = match &f.scenario {
        ScenarioRef::Inline(sf) => (sf.clone(), None),
        ScenarioRef::Path(p) => {
            let path: PathBuf = base.map_or_else(|| PathBuf::from(p), |b| b.join(p));
            let text = std::fs::read_to_string(&path)?;
            (serde_json::from_str::<ScenarioFile>(&text)?, Some(p.clone()))
        }
    };
    let scenario = Arc::new(sf.to_scenario()?);
    let d = sf.d as usize;
    let dist = match f.kind {
        Kind::Rational => AnyDist::Rational(build(scenario, d, &f)?),
        Kind::Boolean => AnyDist::Boolean(build(scenario, d, &f)?),
    };
    Ok(DistDocument { dist, scenario_ref })
}

pub fn read_dist(path: &Path) -> Result<DistDocument> {
    let text = std::fs::read_to_string(path)?;
    dist_from_json(&text, path.parent())
}

pub fn dist_to_value<S: JsonScalar>(p: &SimpDist<S>, scenario_ref: Option<&str>) -> Value {
    let s = p.scenario();
    let mut obj = serde_json::Map::new();
    let scenario = match scenario_ref {
        Some(r) => Value::String(r.to_string()),
        None => serde_json::to_value(ScenarioFile::from_scenario(s, p.d() as u32)).expect("serializable"),
    };
    obj.insert("scenario".into(), scenario);
    obj.insert("kind".into(), Value::String(S::KIND.to_string()));
    let mut edges = serde_json::Map::new();
    for (e, m) in s.edges().iter().zip(p.edge_matrices()) {
        let rows = m
            .rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(JsonScalar::to_json).collect()))
            .collect();
        edges.insert(e.id.clone(), Value::Array(rows));
    }
    obj.insert("edges".into(), Value::Object(edges));
    if !p.isolated().is_empty() {
        let mut vs = serde_json::Map::new();
        for (v, pv) in p.isolated() {
            let row = (0..p.d() as u32).map(|a| pv.weight(&a).to_json()).collect();
            vs.insert(s.vertex_name(*v).to_string(), Value::Array(row));
        }
        obj.insert("vertices".into(), Value::Object(vs));
    }
    Value::Object(obj)
}

/// Serializes with the scenario inline, or as the given reference.
pub fn dist_to_json<S: JsonScalar>(p: &SimpDist<S>, scenario_ref: Option<&str>) -> String {
    to_pretty(&dist_to_value(p, scenario_ref))
}

impl DistDocument {
    pub fn to_json(&self) -> String {
        let r = self.scenario_ref.as_deref();
        match &self.dist {
            AnyDist::Rational(p) => dist_to_json(p, r),
            AnyDist::Boolean(p) => dist_to_json(p, r),
        }
    }
}
