//! The JSON instance format: documents, validation into models, and the
//! small spec languages used on the command line.
//!
//! A local document describes one space:
//!
//! ```json
//! {
//!   "space": ["a", "b"],
//!   "gambles": {"f": ["1", "0"]},
//!   "assessments": [{"gamble": "f", "event": ["a", "b"], "lower": "3/10"}],
//!   "families": {"coarse": [["a"], ["b"]]},
//!   "queries": [{"gamble": "[0,1]"}]
//! }
//! ```
//!
//! A pair document holds two local documents plus family specs and joint
//! queries. Rationals are strings so that they round-trip exactly.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::assessment::{AssessmentSet, ConditionalAssessment, ConditioningFamily};
use crate::error::{InstanceError, ModelError};
use crate::product::{JointModel, JointQuery};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::space::{Event, Gamble, ProductSpace, Space};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssessmentDoc {
    /// A gamble name or an inline list such as `[1,0,-1/2]`.
    pub gamble: String,
    /// Conditioning event labels; omitted means the whole space.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub event: Option<Vec<String>>,
    pub lower: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QueryDoc {
    pub gamble: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub event: Option<Vec<String>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDoc {
    pub space: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub gambles: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub assessments: Vec<AssessmentDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub families: BTreeMap<String, Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub queries: Vec<QueryDoc>,
}

/// A joint gamble, given either as a `|X1| x |X2|` table or as a sum of
/// tensor products `g1(x1) g2(x2)` of factor gambles.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JointQueryDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<[String; 2]>>,
    /// Pairs `[x1, x2]`; omitted means the whole product space.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub event: Option<Vec<[String; 2]>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDoc {
    pub factor1: InstanceDoc,
    pub factor2: InstanceDoc,
    /// Family specs for each factor; default `none`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fam1: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fam2: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub queries: Vec<JointQueryDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Document {
    Pair(PairDoc),
    Local(InstanceDoc),
}

/// A problem found in a document, with the path of the offending field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub location: String,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.location.is_empty() {
            write!(f, "{}", self.message)
        } else {
            write!(f, "{}: {}", self.location, self.message)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostics(pub Vec<Diagnostic>);

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lines: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", lines.join("\n"))
    }
}

impl std::error::Error for Diagnostics {}

impl Diagnostics {
    pub fn messages(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(|d| d.message.as_str())
    }
}

struct Collector {
    found: Vec<Diagnostic>,
}

impl Collector {
    fn push(&mut self, location: impl Into<String>, message: impl Into<String>) {
        self.found.push(Diagnostic { location: location.into(), message: message.into() });
    }

    fn instance(&mut self, location: impl Into<String>, err: InstanceError) {
        self.push(location, err.to_string());
    }
}

/// A validated local document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub assessments: AssessmentSet,
    pub gambles: BTreeMap<String, Gamble>,
    pub families: BTreeMap<String, ConditioningFamily>,
    pub queries: Vec<(Gamble, Event)>,
}

impl Instance {
    pub fn space(&self) -> &Space {
        self.assessments.space()
    }

    pub fn gamble(&self, spec: &str) -> Result<Gamble, String> {
        parse_gamble_spec(spec, self.space(), &self.gambles)
    }

    pub fn event(&self, spec: &str) -> Result<Event, String> {
        parse_event_spec(spec, self.space())
    }

    pub fn family(&self, spec: &str) -> Result<ConditioningFamily, String> {
        parse_family_spec(spec, self.space(), &self.families)
    }
}

/// A validated pair document; building the joint model checks coherence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairInstance {
    pub factor1: Instance,
    pub factor2: Instance,
    pub fam1: ConditioningFamily,
    pub fam2: ConditioningFamily,
    pub queries: Vec<JointQuery>,
}

impl PairInstance {
    pub fn product(&self) -> ProductSpace {
        ProductSpace::new(self.factor1.space(), self.factor2.space())
    }

    pub fn model(&self) -> Result<JointModel, ModelError> {
        JointModel::new(&self.factor1.assessments, &self.factor2.assessments, &self.fam1, &self.fam2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Validated {
    Local(Instance),
    Pair(PairInstance),
}

const MAX_DOCUMENT_BYTES: usize = 16 << 20;

/// Parses JSON text into a document; syntax errors become diagnostics.
pub fn parse_document(text: &str) -> Result<Document, Diagnostics> {
    if text.len() > MAX_DOCUMENT_BYTES {
        return Err(Diagnostics(vec![Diagnostic {
            location: String::new(),
            message: format!("document larger than {MAX_DOCUMENT_BYTES} bytes"),
        }]));
    }
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| {
        Diagnostics(vec![Diagnostic {
            location: format!("line {} column {}", e.line(), e.column()),
            message: format!("invalid JSON: {e}"),
        }])
    })?;
    let pair = value.get("factor1").is_some() || value.get("factor2").is_some();
    let parsed = if pair {
        serde_json::from_value::<PairDoc>(value).map(Document::Pair)
    } else {
        serde_json::from_value::<InstanceDoc>(value).map(Document::Local)
    };
    parsed.map_err(|e| {
        Diagnostics(vec![Diagnostic { location: String::new(), message: format!("malformed document: {e}") }])
    })
}

/// Parses and validates in one step.
pub fn load(text: &str) -> Result<Validated, Diagnostics> {
    validate_instance(&parse_document(text)?)
}

/// Either a fully validated model or every problem found; never a partial model.
pub fn validate_instance(doc: &Document) -> Result<Validated, Diagnostics> {
    let mut c = Collector { found: Vec::new() };
    let out = match doc {
        Document::Local(d) => validate_local(d, "", &mut c).map(Validated::Local),
        Document::Pair(d) => validate_pair(d, &mut c).map(Validated::Pair),
    };
    match out {
        Some(v) if c.found.is_empty() => Ok(v),
        _ => Err(Diagnostics(c.found)),
    }
}

fn join(prefix: &str, field: &str) -> String {
    if prefix.is_empty() {
        field.to_string()
    } else {
        format!("{prefix}.{field}")
    }
}

fn validate_local(doc: &InstanceDoc, prefix: &str, c: &mut Collector) -> Option<Instance> {
    let space = match Space::new(doc.space.iter().cloned()) {
        Ok(s) => s,
        Err(e) => {
            c.instance(join(prefix, "space"), e);
            return None;
        }
    };
    let before = c.found.len();

    let mut gambles = BTreeMap::new();
    for (name, values) in &doc.gambles {
        let loc = join(prefix, &format!("gambles.{name}"));
        if name.starts_with('[') {
            c.push(&loc, "gamble names must not start with `[`");
            continue;
        }
        if let Some(g) = gamble_from_strings(values, &space, &loc, c) {
            gambles.insert(name.clone(), g);
        }
    }

    let mut families = BTreeMap::new();
    for (name, events) in &doc.families {
        let loc = join(prefix, &format!("families.{name}"));
        if is_family_preset(name) {
            c.push(&loc, format!("family name `{name}` is reserved for a preset"));
            continue;
        }
        let mut list = Vec::new();
        for (k, labels) in events.iter().enumerate() {
            if let Some(e) = event_from_labels(labels, &space, &format!("{loc}[{k}]"), c) {
                list.push(e);
            }
        }
        families.insert(name.clone(), ConditioningFamily::new(&space, list).expect("same space"));
    }

    let mut set = AssessmentSet::vacuous(&space);
    let mut seen: Vec<(Gamble, Event)> = Vec::new();
    for (k, a) in doc.assessments.iter().enumerate() {
        let loc = join(prefix, &format!("assessments[{k}]"));
        let gamble = match parse_gamble_spec(&a.gamble, &space, &gambles) {
            Ok(g) => Some(g),
            Err(e) => {
                c.push(format!("{loc}.gamble"), e);
                None
            }
        };
        let event = match &a.event {
            None => Some(space.full_event()),
            Some(labels) => event_from_labels(labels, &space, &format!("{loc}.event"), c),
        };
        let lower = match parse_rational(&a.lower) {
            Ok(r) => Some(r),
            Err(e) => {
                c.push(format!("{loc}.lower"), e.to_string());
                None
            }
        };
        let (Some(gamble), Some(event), Some(lower)) = (gamble, event, lower) else { continue };
        if seen.iter().any(|(g, e)| g == &gamble && e == &event) {
            c.push(&loc, format!("duplicate assessment for gamble {gamble} given {event}"));
            continue;
        }
        seen.push((gamble.clone(), event.clone()));
        match ConditionalAssessment::new(gamble, event, lower) {
            Ok(a) => set.push(a).expect("same space"),
            Err(e) => c.instance(loc, e),
        }
    }

    let mut queries = Vec::new();
    for (k, q) in doc.queries.iter().enumerate() {
        let loc = join(prefix, &format!("queries[{k}]"));
        let gamble = parse_gamble_spec(&q.gamble, &space, &gambles).map_err(|e| c.push(format!("{loc}.gamble"), e));
        let event = match &q.event {
            None => Some(space.full_event()),
            Some(labels) => event_from_labels(labels, &space, &format!("{loc}.event"), c),
        };
        if let (Ok(g), Some(e)) = (gamble, event) {
            queries.push((g, e));
        }
    }

    if c.found.len() > before {
        return None;
    }
    Some(Instance { assessments: set, gambles, families, queries })
}

fn validate_pair(doc: &PairDoc, c: &mut Collector) -> Option<PairInstance> {
    let f1 = validate_local(&doc.factor1, "factor1", c);
    let f2 = validate_local(&doc.factor2, "factor2", c);
    let (f1, f2) = (f1?, f2?);
    let family = |spec: &Option<String>, inst: &Instance, loc: &str, c: &mut Collector| {
        let spec = spec.as_deref().unwrap_or("none");
        inst.family(spec).map_err(|e| c.push(loc, e)).ok()
    };
    let fam1 = family(&doc.fam1, &f1, "fam1", c);
    let fam2 = family(&doc.fam2, &f2, "fam2", c);
    let product = ProductSpace::new(f1.space(), f2.space());
    let mut queries = Vec::new();
    for (k, q) in doc.queries.iter().enumerate() {
        if let Some(q) = joint_query(q, &f1, &f2, &product, &format!("queries[{k}]"), c) {
            queries.push(q);
        }
    }
    let (fam1, fam2) = (fam1?, fam2?);
    Some(PairInstance { factor1: f1, factor2: f2, fam1, fam2, queries })
}

/// Validates a list of joint queries against two factor instances.
pub fn parse_joint_queries(
    docs: &[JointQueryDoc],
    f1: &Instance,
    f2: &Instance,
) -> Result<Vec<JointQuery>, Diagnostics> {
    let mut c = Collector { found: Vec::new() };
    let product = ProductSpace::new(f1.space(), f2.space());
    let queries: Vec<JointQuery> = docs
        .iter()
        .enumerate()
        .filter_map(|(k, q)| joint_query(q, f1, f2, &product, &format!("queries[{k}]"), &mut c))
        .collect();
    if c.found.is_empty() {
        Ok(queries)
    } else {
        Err(Diagnostics(c.found))
    }
}

/// A query file: `{"queries": [...]}` with joint queries.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QueryFile {
    pub queries: Vec<JointQueryDoc>,
}

pub fn parse_query_file(text: &str) -> Result<QueryFile, Diagnostics> {
    serde_json::from_str(text).map_err(|e| {
        Diagnostics(vec![Diagnostic {
            location: format!("line {} column {}", e.line(), e.column()),
            message: format!("invalid query file: {e}"),
        }])
    })
}

fn joint_query(
    q: &JointQueryDoc,
    f1: &Instance,
    f2: &Instance,
    product: &ProductSpace,
    loc: &str,
    c: &mut Collector,
) -> Option<JointQuery> {
    let gamble = match (&q.table, &q.terms) {
        (Some(table), None) => {
            let mut rows = Vec::new();
            for (i, row) in table.iter().enumerate() {
                let mut values = Vec::new();
                for (j, v) in row.iter().enumerate() {
                    match parse_rational(v) {
                        Ok(r) => values.push(r),
                        Err(e) => c.push(format!("{loc}.table[{i}][{j}]"), e.to_string()),
                    }
                }
                rows.push(values);
            }
            if c.found.iter().any(|d| d.location.starts_with(&format!("{loc}.table"))) {
                return None;
            }
            match product.gamble_from_table(rows) {
                Ok(g) => g,
                Err(e) => {
                    c.instance(format!("{loc}.table"), e);
                    return None;
                }
            }
        }
        (None, Some(terms)) => {
            let mut total = product.joint().zero_gamble();
            let mut ok = true;
            for (k, [a, b]) in terms.iter().enumerate() {
                let ga = f1.gamble(a).map_err(|e| c.push(format!("{loc}.terms[{k}][0]"), e));
                let gb = f2.gamble(b).map_err(|e| c.push(format!("{loc}.terms[{k}][1]"), e));
                match (ga, gb) {
                    (Ok(ga), Ok(gb)) => total = &total + &product.tensor(&ga, &gb).expect("factor spaces"),
                    _ => ok = false,
                }
            }
            if !ok {
                return None;
            }
            total
        }
        _ => {
            c.push(loc, "a joint query needs exactly one of `table` or `terms`");
            return None;
        }
    };
    let event = match &q.event {
        None => product.joint().full_event(),
        Some(pairs) => {
            let mut mask = vec![false; product.len()];
            let mut ok = true;
            for (k, [a, b]) in pairs.iter().enumerate() {
                match (f1.space().index_of(a), f2.space().index_of(b)) {
                    (Some(i), Some(j)) => mask[product.flat_index(i, j)] = true,
                    (None, _) => {
                        c.push(format!("{loc}.event[{k}]"), format!("unknown outcome label `{a}`"));
                        ok = false;
                    }
                    (_, None) => {
                        c.push(format!("{loc}.event[{k}]"), format!("unknown outcome label `{b}`"));
                        ok = false;
                    }
                }
            }
            if !ok {
                return None;
            }
            match Event::from_mask(product.joint(), mask) {
                Ok(e) => e,
                Err(e) => {
                    c.instance(format!("{loc}.event"), e);
                    return None;
                }
            }
        }
    };
    Some(JointQuery { gamble, event })
}

fn gamble_from_strings(values: &[String], space: &Space, loc: &str, c: &mut Collector) -> Option<Gamble> {
    let mut parsed = Vec::with_capacity(values.len());
    let mut ok = true;
    for (k, v) in values.iter().enumerate() {
        match parse_rational(v) {
            Ok(r) => parsed.push(r),
            Err(e) => {
                c.push(format!("{loc}[{k}]"), e.to_string());
                ok = false;
            }
        }
    }
    if !ok {
        return None;
    }
    Gamble::new(space, parsed).map_err(|e| c.instance(loc, e)).ok()
}

fn event_from_labels(labels: &[String], space: &Space, loc: &str, c: &mut Collector) -> Option<Event> {
    Event::from_labels(space, labels).map_err(|e| c.instance(loc, e)).ok()
}

/// A gamble spec: a name from `named`, or an inline list `[v1, v2, ...]`.
pub fn parse_gamble_spec(spec: &str, space: &Space, named: &BTreeMap<String, Gamble>) -> Result<Gamble, String> {
    let spec = spec.trim();
    if let Some(inner) = spec.strip_prefix('[') {
        let inner = inner.strip_suffix(']').ok_or_else(|| format!("unterminated inline gamble `{spec}`"))?;
        let values = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|v| parse_rational(v.trim().trim_matches('"')).map_err(|e| e.to_string()))
                .collect::<Result<Vec<Rational>, String>>()?
        };
        return Gamble::new(space, values).map_err(|e| e.to_string());
    }
    named.get(spec).cloned().ok_or_else(|| format!("unknown gamble `{spec}`"))
}

/// An event spec: `all`, or labels separated by commas, optionally in braces.
pub fn parse_event_spec(spec: &str, space: &Space) -> Result<Event, String> {
    let spec = spec.trim();
    if spec == "all" {
        return Ok(space.full_event());
    }
    let inner = spec.strip_prefix('{').and_then(|s| s.strip_suffix('}')).unwrap_or(spec);
    let labels: Vec<&str> = inner.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    Event::from_labels(space, labels).map_err(|e| e.to_string())
}

fn is_family_preset(name: &str) -> bool {
    matches!(name, "singletons" | "all" | "none") || name.starts_with("partition:")
}

/// A family spec: `singletons`, `all`, `none`, `partition:a,b|c`, or a
/// named family.
pub fn parse_family_spec(
    spec: &str,
    space: &Space,
    named: &BTreeMap<String, ConditioningFamily>,
) -> Result<ConditioningFamily, String> {
    if let Some(blocks) = spec.trim().strip_prefix("partition:") {
        return parse_partition(blocks, space);
    }
    match spec.trim() {
        "singletons" => Ok(ConditioningFamily::singletons(space)),
        "all" => ConditioningFamily::all_subsets(space).map_err(|e| e.to_string()),
        "none" => Ok(ConditioningFamily::empty(space)),
        name => named.get(name).cloned().ok_or_else(|| format!("unknown family `{name}`")),
    }
}

fn parse_partition(blocks: &str, space: &Space) -> Result<ConditioningFamily, String> {
    let mut covered = vec![false; space.len()];
    let mut events = Vec::new();
    for block in blocks.split('|') {
        let e = parse_event_spec(block, space)?;
        for k in e.members() {
            if std::mem::replace(&mut covered[k], true) {
                return Err(format!("partition blocks overlap at `{}`", space.labels()[k]));
            }
        }
        events.push(e);
    }
    if let Some(k) = covered.iter().position(|c| !c) {
        return Err(format!("partition does not cover `{}`", space.labels()[k]));
    }
    ConditioningFamily::new(space, events).map_err(|e| e.to_string())
}

fn strings(values: &[Rational]) -> Vec<String> {
    values.iter().map(format_rational).collect()
}

fn labels(e: &Event) -> Vec<String> {
    e.labels().into_iter().map(str::to_string).collect()
}

/// Writes a validated local instance back to a document. Anonymous gambles
/// are written inline.
pub fn serialize_instance(inst: &Instance) -> InstanceDoc {
    let name_of = |g: &Gamble| {
        inst.gambles
            .iter()
            .find(|(_, v)| *v == g)
            .map(|(k, _)| k.clone())
            .unwrap_or_else(|| format!("[{}]", strings(g.values()).join(",")))
    };
    let event_of = |e: &Event| if e.is_full() { None } else { Some(labels(e)) };
    InstanceDoc {
        space: inst.space().labels().to_vec(),
        gambles: inst.gambles.iter().map(|(k, g)| (k.clone(), strings(g.values()))).collect(),
        assessments: inst
            .assessments
            .assessments()
            .iter()
            .map(|a| AssessmentDoc {
                gamble: name_of(a.gamble()),
                event: event_of(a.event()),
                lower: format_rational(a.lower_bound()),
            })
            .collect(),
        families: inst
            .families
            .iter()
            .map(|(k, f)| (k.clone(), f.events().iter().map(labels).collect()))
            .collect(),
        queries: inst.queries.iter().map(|(g, e)| QueryDoc { gamble: name_of(g), event: event_of(e) }).collect(),
    }
}

fn family_spec(fam: &ConditioningFamily, inst: &Instance) -> Option<String> {
    let space = fam.space();
    if fam.is_empty() {
        return None;
    }
    if fam == &ConditioningFamily::singletons(space) {
        return Some("singletons".into());
    }
    if ConditioningFamily::all_subsets(space).is_ok_and(|all| &all == fam) {
        return Some("all".into());
    }
    if let Some((name, _)) = inst.families.iter().find(|(_, f)| *f == fam) {
        return Some(name.clone());
    }
    partition_spec(fam)
}

fn partition_spec(fam: &ConditioningFamily) -> Option<String> {
    let space = fam.space();
    let safe = |l: &String| !l.is_empty() && l == l.trim() && l != "all" && !l.contains([',', '|', '{', '}']);
    let sizes: usize = fam.events().iter().map(Event::size).sum();
    let covered = space.full_event();
    let union = fam.events().iter().fold(None, |acc: Option<Event>, e| Some(acc.map_or(e.clone(), |a| a.union(e))));
    if sizes != space.len() || union.as_ref() != Some(&covered) || !space.labels().iter().all(safe) {
        return None;
    }
    let blocks: Vec<String> = fam.events().iter().map(|e| e.labels().join(",")).collect();
    Some(format!("partition:{}", blocks.join("|")))
}

/// Writes a pair instance back to a document. Families must be presets,
/// partitions, or named in their factor document.
pub fn serialize_pair(pair: &PairInstance) -> Result<PairDoc, String> {
    let product = pair.product();
    let fam1 = family_spec(&pair.fam1, &pair.factor1);
    let fam2 = family_spec(&pair.fam2, &pair.factor2);
    if fam1.is_none() && !pair.fam1.is_empty() || fam2.is_none() && !pair.fam2.is_empty() {
        return Err("families must be presets, partitions, or named in the factor documents".into());
    }
    let n2 = pair.factor2.space().len();
    let queries = pair
        .queries
        .iter()
        .map(|q| JointQueryDoc {
            table: Some(q.gamble.values().chunks(n2).map(strings).collect()),
            terms: None,
            event: if q.event.is_full() {
                None
            } else {
                Some(
                    q.event
                        .members()
                        .map(|k| {
                            let (i, j) = product.pair(k);
                            [pair.factor1.space().labels()[i].clone(), pair.factor2.space().labels()[j].clone()]
                        })
                        .collect(),
                )
            },
        })
        .collect();
    Ok(PairDoc {
        factor1: serialize_instance(&pair.factor1),
        factor2: serialize_instance(&pair.factor2),
        fam1,
        fam2,
        queries,
    })
}

pub fn to_json(doc: &Document) -> String {
    serde_json::to_string_pretty(doc).expect("documents are serializable")
}
