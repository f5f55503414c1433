//! JSON workspace documents: named charts, bundles, algebroids, maps,
//! vector fields and singular filtrations, referencing each other by name.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::marker::PhantomData;
use std::path::Path;

use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use weightlab::liealg::{AlgebroidData, StructureEntry};
use weightlab::linweight::WeightedBundleChart;
use weightlab::poly::{parse, Polynomial};
use weightlab::weighting::{PolyVectorField, PolynomialMap, WeightVector, WeightedChart};

pub const SCHEMA_VERSION: u32 = 1;

/// The only parameter algebroid coefficients may mention besides base
/// coordinates; Rees deformations are written in it.
pub const DEFORMATION_PARAMETER: &str = "_t";

/// A problem with the user's input; reported with exit status 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

fn input<T>(message: impl Into<String>) -> Result<T, InputError> {
    Err(InputError(message.into()))
}

/// Entities of one kind, in document order. Duplicate names are rejected
/// when reading.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Named<T>(pub Vec<(String, T)>);

impl<T> Default for Named<T> {
    fn default() -> Self {
        Named(Vec::new())
    }
}

impl<T> Named<T> {
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&T> {
        self.0.iter().find(|(n, _)| n == name).map(|(_, t)| t)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &T)> {
        self.0.iter().map(|(n, t)| (n, t))
    }
}

impl<T: Serialize> Serialize for Named<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (name, value) in &self.0 {
            map.serialize_entry(name, value)?;
        }
        map.end()
    }
}

struct NamedVisitor<T>(PhantomData<T>);

impl<'de, T: Deserialize<'de>> Visitor<'de> for NamedVisitor<T> {
    type Value = Named<T>;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an object of named entities")
    }

    fn visit_map<M: MapAccess<'de>>(self, mut access: M) -> Result<Self::Value, M::Error> {
        let mut out: Vec<(String, T)> = Vec::new();
        while let Some(name) = access.next_key::<String>()? {
            if out.iter().any(|(n, _)| *n == name) {
                return Err(de::Error::custom(format!("duplicate name `{name}`")));
            }
            out.push((name, access.next_value()?));
        }
        Ok(Named(out))
    }
}

impl<'de, T: Deserialize<'de>> Deserialize<'de> for Named<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        deserializer.deserialize_map(NamedVisitor(PhantomData))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartDoc {
    pub coordinates: Vec<String>,
    pub weights: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleDoc {
    pub base: String,
    pub frame: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub fibre: Vec<String>,
    pub weights: Vec<i64>,
}

/// `[left, right] = Σ terms[c] · c`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketDoc {
    pub left: String,
    pub right: String,
    pub terms: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebroidDoc {
    pub bundle: String,
    /// One row of base components per frame element; zero when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anchor: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub brackets: Vec<BracketDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    pub source: String,
    pub target: String,
    pub components: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorFieldDoc {
    pub chart: String,
    pub components: Vec<String>,
}

/// `levels[j - 1]` names the generators of level `−j`; `submanifold` lists
/// the coordinates cutting out `N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiltrationDoc {
    pub chart: String,
    pub submanifold: Vec<String>,
    pub levels: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkspaceDocument {
    pub weightlab: u32,
    #[serde(default, skip_serializing_if = "Named::is_empty")]
    pub charts: Named<ChartDoc>,
    #[serde(default, skip_serializing_if = "Named::is_empty")]
    pub bundles: Named<BundleDoc>,
    #[serde(default, skip_serializing_if = "Named::is_empty")]
    pub algebroids: Named<AlgebroidDoc>,
    #[serde(default, skip_serializing_if = "Named::is_empty")]
    pub maps: Named<MapDoc>,
    #[serde(default, skip_serializing_if = "Named::is_empty")]
    pub vector_fields: Named<VectorFieldDoc>,
    #[serde(default, skip_serializing_if = "Named::is_empty")]
    pub filtrations: Named<FiltrationDoc>,
}

impl WorkspaceDocument {
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("documents serialize");
        out.push('\n');
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filtration {
    pub chart: String,
    pub submanifold: Vec<String>,
    pub levels: Vec<Vec<PolyVectorField>>,
}

/// A validated workspace: every reference resolved, every expression
/// parsed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Workspace {
    pub charts: BTreeMap<String, WeightedChart>,
    pub bundles: BTreeMap<String, (String, WeightedBundleChart)>,
    pub algebroids: BTreeMap<String, (String, AlgebroidData)>,
    pub maps: BTreeMap<String, (String, String, PolynomialMap)>,
    pub vector_fields: BTreeMap<String, (String, PolyVectorField)>,
    pub filtrations: BTreeMap<String, (Vec<Vec<String>>, Filtration)>,
    order: Vec<(Kind, String)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Chart,
    Bundle,
    Algebroid,
    Map,
    VectorField,
    Filtration,
}

fn expression(entity: &str, field: &str, text: &str) -> Result<Polynomial, InputError> {
    parse(text).map_err(|e| InputError(format!("{entity} {field}: {e}")))
}

fn lookup<'a, T>(
    map: &'a BTreeMap<String, T>,
    entity: &str,
    kind: &str,
    name: &str,
) -> Result<&'a T, InputError> {
    map.get(name)
        .ok_or_else(|| InputError(format!("{entity} references unknown {kind} `{name}`")))
}

fn frame_index(bundle: &WeightedBundleChart, entity: &str, name: &str) -> Result<usize, InputError> {
    bundle
        .frame_index(name)
        .ok_or_else(|| InputError(format!("{entity}: `{name}` is not a frame element")))
}

fn bundle_name_of<'a>(doc: &'a WorkspaceDocument, bundle: &'a str) -> &'a str {
    doc.bundles.get(bundle).map(|b| b.base.as_str()).unwrap_or(bundle)
}

pub fn parse_workspace(text: &str) -> Result<Workspace, InputError> {
    let document: WorkspaceDocument = serde_json::from_str(text).map_err(|e| {
        InputError(format!(
            "workspace: {} (line {}, column {})",
            strip_position(&e.to_string()),
            e.line(),
            e.column()
        ))
    })?;
    Workspace::from_document(&document)
}

fn strip_position(message: &str) -> &str {
    message.split(" at line ").next().unwrap_or(message)
}

pub fn load_workspace(path: &Path) -> Result<Workspace, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))?;
    parse_workspace(&text)
}

impl Workspace {
    pub fn from_document(doc: &WorkspaceDocument) -> Result<Self, InputError> {
        if doc.weightlab != SCHEMA_VERSION {
            return input(format!(
                "unsupported workspace version {} (expected {SCHEMA_VERSION})",
                doc.weightlab
            ));
        }
        let mut ws = Workspace::default();
        for (name, c) in doc.charts.iter() {
            let entity = format!("chart `{name}`");
            if c.coordinates.len() != c.weights.len() {
                return input(format!(
                    "{entity}: {} coordinates but {} weights",
                    c.coordinates.len(),
                    c.weights.len()
                ));
            }
            let mut weights = Vec::new();
            for (x, &w) in c.coordinates.iter().zip(&c.weights) {
                match u32::try_from(w) {
                    Ok(w) => weights.push(w),
                    Err(_) => {
                        return input(format!(
                            "{entity}: weight {w} of `{x}` is negative; base weights are non-negative"
                        ))
                    }
                }
            }
            let weights = match c.order {
                Some(r) => WeightVector::with_order(weights, r),
                None => Ok(WeightVector::new(weights)),
            }
            .map_err(|e| InputError(format!("{entity}: {e}")))?;
            let chart = WeightedChart::new(&c.coordinates, weights)
                .map_err(|e| InputError(format!("{entity}: {e}")))?;
            ws.charts.insert(name.clone(), chart);
            ws.order.push((Kind::Chart, name.clone()));
        }
        for (name, b) in doc.bundles.iter() {
            let entity = format!("bundle `{name}`");
            let base = lookup(&ws.charts, &entity, "chart", &b.base)?.clone();
            let bundle = if b.fibre.is_empty() {
                WeightedBundleChart::new(base, &b.frame, b.weights.clone())
            } else {
                WeightedBundleChart::with_fibre(base, &b.frame, &b.fibre, b.weights.clone())
            }
            .map_err(|e| InputError(format!("{entity}: {e}")))?;
            ws.bundles.insert(name.clone(), (b.base.clone(), bundle));
            ws.order.push((Kind::Bundle, name.clone()));
        }
        for (name, a) in doc.algebroids.iter() {
            let entity = format!("algebroid `{name}`");
            let bundle = lookup(&ws.bundles, &entity, "bundle", &a.bundle)?.1.clone();
            let m = bundle.base().dim();
            let anchor = match &a.anchor {
                None => vec![vec![Polynomial::zero(); m]; bundle.rank()],
                Some(rows) => {
                    if rows.len() != bundle.rank() || rows.iter().any(|r| r.len() != m) {
                        return input(format!(
                            "{entity}: anchor must have {} rows of {m} components",
                            bundle.rank()
                        ));
                    }
                    let mut out = Vec::new();
                    for (s, row) in bundle.frame().iter().zip(rows) {
                        let parsed = row
                            .iter()
                            .map(|t| expression(&entity, &format!("anchor of `{s}`"), t))
                            .collect::<Result<Vec<_>, _>>()?;
                        out.push(parsed);
                    }
                    out
                }
            };
            let mut entries = Vec::new();
            for br in &a.brackets {
                let left = frame_index(&bundle, &entity, &br.left)?;
                let right = frame_index(&bundle, &entity, &br.right)?;
                for (target, value) in &br.terms {
                    let c = frame_index(&bundle, &entity, target)?;
                    let field = format!("[{}, {}] coefficient of `{target}`", br.left, br.right);
                    entries.push(StructureEntry {
                        a: left,
                        b: right,
                        c,
                        value: expression(&entity, &field, value)?,
                    });
                }
            }
            let coefficients = anchor.iter().flatten().chain(entries.iter().map(|e| &e.value));
            for f in coefficients {
                let base = bundle.base();
                if let Some(x) = f
                    .used_vars()
                    .into_iter()
                    .find(|x| x != DEFORMATION_PARAMETER && base.index_of(x).is_none())
                {
                    return input(format!(
                        "{entity}: `{x}` is neither a coordinate of `{}` nor `{DEFORMATION_PARAMETER}`",
                        bundle_name_of(doc, &a.bundle)
                    ));
                }
            }
            let algebroid = AlgebroidData::with_parameters(bundle, anchor, entries)
                .map_err(|e| InputError(format!("{entity}: {e}")))?;
            ws.algebroids.insert(name.clone(), (a.bundle.clone(), algebroid));
            ws.order.push((Kind::Algebroid, name.clone()));
        }
        for (name, m) in doc.maps.iter() {
            let entity = format!("map `{name}`");
            let source = lookup(&ws.charts, &entity, "chart", &m.source)?.clone();
            let target = lookup(&ws.charts, &entity, "chart", &m.target)?.clone();
            let components = m
                .components
                .iter()
                .enumerate()
                .map(|(b, t)| expression(&entity, &format!("component {}", b + 1), t))
                .collect::<Result<Vec<_>, _>>()?;
            let map = PolynomialMap::new(source, target, components)
                .map_err(|e| InputError(format!("{entity}: {e}")))?;
            ws.maps.insert(name.clone(), (m.source.clone(), m.target.clone(), map));
            ws.order.push((Kind::Map, name.clone()));
        }
        for (name, v) in doc.vector_fields.iter() {
            let entity = format!("vector field `{name}`");
            let chart = lookup(&ws.charts, &entity, "chart", &v.chart)?.clone();
            let components = v
                .components
                .iter()
                .enumerate()
                .map(|(a, t)| expression(&entity, &format!("component {}", a + 1), t))
                .collect::<Result<Vec<_>, _>>()?;
            let field = PolyVectorField::new(chart, components)
                .map_err(|e| InputError(format!("{entity}: {e}")))?;
            ws.vector_fields.insert(name.clone(), (v.chart.clone(), field));
            ws.order.push((Kind::VectorField, name.clone()));
        }
        for (name, f) in doc.filtrations.iter() {
            let entity = format!("filtration `{name}`");
            let chart = lookup(&ws.charts, &entity, "chart", &f.chart)?;
            for x in &f.submanifold {
                if chart.index_of(x).is_none() {
                    return input(format!("{entity}: `{x}` is not a coordinate of `{}`", f.chart));
                }
            }
            let mut levels = Vec::new();
            for names in &f.levels {
                let mut level = Vec::new();
                for field_name in names {
                    let (on, field) = lookup(&ws.vector_fields, &entity, "vector field", field_name)?;
                    if *on != f.chart {
                        return input(format!(
                            "{entity}: vector field `{field_name}` lives on `{on}`, not `{}`",
                            f.chart
                        ));
                    }
                    level.push(field.clone());
                }
                levels.push(level);
            }
            let filtration = Filtration {
                chart: f.chart.clone(),
                submanifold: f.submanifold.clone(),
                levels,
            };
            ws.filtrations.insert(name.clone(), (f.levels.clone(), filtration));
            ws.order.push((Kind::Filtration, name.clone()));
        }
        Ok(ws)
    }

    /// The canonical document of the resolved entities: polynomials are
    /// printed in canonical term order and zero data is omitted.
    pub fn to_document(&self) -> WorkspaceDocument {
        let strings = |ps: &[Polynomial]| ps.iter().map(|p| p.to_string()).collect::<Vec<_>>();
        let mut doc = WorkspaceDocument {
            weightlab: SCHEMA_VERSION,
            charts: Named::default(),
            bundles: Named::default(),
            algebroids: Named::default(),
            maps: Named::default(),
            vector_fields: Named::default(),
            filtrations: Named::default(),
        };
        for (kind, name) in &self.order {
            let name = name.clone();
            match kind {
                Kind::Chart => doc.charts.0.push((name.clone(), chart_doc(&self.charts[&name]))),
                Kind::Bundle => {
                    let (base, b) = &self.bundles[&name];
                    doc.bundles.0.push((name, bundle_doc(base, b)));
                }
                Kind::Algebroid => {
                    let (bundle, a) = &self.algebroids[&name];
                    doc.algebroids.0.push((name, algebroid_doc(bundle, a)));
                }
                Kind::Map => {
                    let (source, target, m) = &self.maps[&name];
                    doc.maps.0.push((
                        name,
                        MapDoc {
                            source: source.clone(),
                            target: target.clone(),
                            components: strings(m.components()),
                        },
                    ));
                }
                Kind::VectorField => {
                    let (chart, v) = &self.vector_fields[&name];
                    doc.vector_fields.0.push((
                        name,
                        VectorFieldDoc {
                            chart: chart.clone(),
                            components: strings(v.coefficients()),
                        },
                    ));
                }
                Kind::Filtration => {
                    let (levels, f) = &self.filtrations[&name];
                    doc.filtrations.0.push((
                        name,
                        FiltrationDoc {
                            chart: f.chart.clone(),
                            submanifold: f.submanifold.clone(),
                            levels: levels.clone(),
                        },
                    ));
                }
            }
        }
        doc
    }

    pub fn names(&self) -> BTreeSet<String> {
        self.order.iter().map(|(_, n)| n.clone()).collect()
    }
}

pub fn chart_doc(chart: &WeightedChart) -> ChartDoc {
    let max = chart.weights().iter().copied().max().unwrap_or(0);
    ChartDoc {
        coordinates: chart.names().to_vec(),
        weights: chart.weights().iter().map(|&w| i64::from(w)).collect(),
        order: (chart.order() != max).then_some(chart.order()),
    }
}

fn default_fibre(bundle: &WeightedBundleChart) -> bool {
    bundle
        .fibre()
        .iter()
        .enumerate()
        .all(|(b, name)| *name == format!("p{}", b + 1))
}

pub fn bundle_doc(base: &str, bundle: &WeightedBundleChart) -> BundleDoc {
    BundleDoc {
        base: base.to_string(),
        frame: bundle.frame().to_vec(),
        fibre: if default_fibre(bundle) {
            Vec::new()
        } else {
            bundle.fibre().to_vec()
        },
        weights: bundle.vertical().to_vec(),
    }
}

pub fn algebroid_doc(bundle_name: &str, algebroid: &AlgebroidData) -> AlgebroidDoc {
    let frame = algebroid.bundle().frame();
    let anchor = algebroid.anchor();
    let anchor = anchor.iter().flatten().any(|p| !p.is_zero()).then(|| {
        anchor
            .iter()
            .map(|row| row.iter().map(|p| p.to_string()).collect())
            .collect()
    });
    let mut brackets: Vec<BracketDoc> = Vec::new();
    for e in algebroid.structure_entries() {
        let (left, right) = (frame[e.a].clone(), frame[e.b].clone());
        let value = e.value.to_string();
        match brackets.last_mut() {
            Some(b) if b.left == left && b.right == right => {
                b.terms.insert(frame[e.c].clone(), value);
            }
            _ => brackets.push(BracketDoc {
                left,
                right,
                terms: BTreeMap::from([(frame[e.c].clone(), value)]),
            }),
        }
    }
    AlgebroidDoc {
        bundle: bundle_name.to_string(),
        anchor,
        brackets,
    }
}

/// A self-contained document for a derived algebroid: its base chart,
/// bundle and the algebroid itself, named after `name`.
pub fn algebroid_document(name: &str, algebroid: &AlgebroidData) -> WorkspaceDocument {
    let chart_name = format!("{name}_base");
    let bundle_name = format!("{name}_bundle");
    WorkspaceDocument {
        weightlab: SCHEMA_VERSION,
        charts: Named(vec![(chart_name.clone(), chart_doc(algebroid.base()))]),
        bundles: Named(vec![(bundle_name.clone(), bundle_doc(&chart_name, algebroid.bundle()))]),
        algebroids: Named(vec![(name.to_string(), algebroid_doc(&bundle_name, algebroid))]),
        maps: Named::default(),
        vector_fields: Named::default(),
        filtrations: Named::default(),
    }
}
