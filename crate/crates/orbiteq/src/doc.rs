//! JSON document formats and the named registry that resolves
//! cross-references between them.
//!
//! Every document is a self-describing envelope
//! `{"schema": "<kind>/v1", "payload": {...}}`. Words are strings over the
//! space's labels (single characters concatenated, or `.`-separated tokens
//! for multi-character alphabets); monoid and group elements are single
//! integers or comma-separated coordinate strings; composite table keys join
//! their fields with `|`.

use crate::action::MonoidAction;
use crate::clopen::ClopenSet;
use crate::equivalence::tables::{
    CsoeTable, GroupWordTable, PairTable, TripleTable, WordTable,
};
use crate::equivalence::{
    CoeData, CsoeData, GroupCoeData, GroupoidIsoData, IsoEntry, ShiftCoeData,
};
use crate::error::{Error, Result};
use crate::groupoid::{Bisection, GroupoidElement};
use crate::monoid::{GroupElement, MonoidElement};
use crate::point::TruncatedPoint;
use crate::progressive::{ProgressiveHomeo, ProgressiveMap};
use crate::sft::Sft;
use crate::word::{Symbol, Word};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SftDoc {
    pub name: String,
    pub alphabet: Vec<String>,
    #[serde(default)]
    pub forbidden: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MapDoc {
    pub name: String,
    pub domain: String,
    pub codomain: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rule: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<[usize; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tables: Option<BTreeMap<String, BTreeMap<String, String>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ActionDoc {
    pub name: String,
    pub space: String,
    pub rank: usize,
    pub generators: Vec<String>,
    #[serde(default)]
    pub by_homeomorphisms: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverses: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HomeoRef {
    pub forward: String,
    pub inverse: String,
}

/// A single integer or a coordinate vector.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntsRepr {
    One(i64),
    Many(Vec<i64>),
}

impl IntsRepr {
    pub fn coords(&self) -> Vec<i64> {
        match self {
            IntsRepr::One(v) => vec![*v],
            IntsRepr::Many(v) => v.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KeyedTableDoc {
    pub depth: usize,
    pub entries: BTreeMap<String, IntsRepr>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PairTableDoc {
    pub depth_x: usize,
    pub depth_y: usize,
    pub entries: BTreeMap<String, IntsRepr>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WordTableDoc {
    pub depth: usize,
    pub entries: BTreeMap<String, u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CsoeDoc {
    pub name: String,
    pub x_action: String,
    pub y_action: String,
    pub phi: HomeoRef,
    pub degree_bound: u32,
    pub a: KeyedTableDoc,
    pub b: KeyedTableDoc,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoeDoc {
    pub name: String,
    pub x_action: String,
    pub y_action: String,
    pub phi: HomeoRef,
    pub degree_bound: u32,
    pub a1: PairTableDoc,
    pub b1: PairTableDoc,
    pub a2: PairTableDoc,
    pub b2: PairTableDoc,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ShiftCoeDoc {
    pub name: String,
    pub x_action: String,
    pub y_action: String,
    pub phi: HomeoRef,
    pub k: WordTableDoc,
    pub l: WordTableDoc,
    pub kp: WordTableDoc,
    pub lp: WordTableDoc,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupCoeDoc {
    pub name: String,
    pub x_action: String,
    pub y_action: String,
    pub phi: HomeoRef,
    pub degree_bound: u32,
    pub a1: KeyedTableDoc,
    pub b1: KeyedTableDoc,
    pub a2: KeyedTableDoc,
    pub b2: KeyedTableDoc,
    pub li_a: KeyedTableDoc,
    pub li_b: KeyedTableDoc,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClopenDoc {
    pub depth: usize,
    pub words: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PointDoc {
    pub prefix: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preperiod: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub period: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BisectionDoc {
    pub action: String,
    pub u: ClopenDoc,
    pub m: IntsRepr,
    pub n: IntsRepr,
    pub v: ClopenDoc,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupoidElementDoc {
    pub action: String,
    pub x: PointDoc,
    pub g: IntsRepr,
    pub y: PointDoc,
    pub witness: (IntsRepr, IntsRepr),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IsoEntryDoc {
    pub src_m: IntsRepr,
    pub src_n: IntsRepr,
    pub u: ClopenDoc,
    pub v: ClopenDoc,
    pub img_m: IntsRepr,
    pub img_n: IntsRepr,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupoidIsoDoc {
    pub name: String,
    pub x_action: String,
    pub y_action: String,
    pub phi: HomeoRef,
    pub x_entries: Vec<IsoEntryDoc>,
    pub y_entries: Vec<IsoEntryDoc>,
}

/// A parsed document of any schema.
#[derive(Clone, Debug)]
pub enum Document {
    Sft(SftDoc),
    Map(MapDoc),
    Action(ActionDoc),
    Csoe(CsoeDoc),
    Coe(CoeDoc),
    ShiftCoe(ShiftCoeDoc),
    GroupCoe(GroupCoeDoc),
    Bisection(BisectionDoc),
    GroupoidElement(GroupoidElementDoc),
    GroupoidIso(GroupoidIsoDoc),
    Report(serde_json::Value),
}

impl Document {
    pub fn schema(&self) -> &'static str {
        match self {
            Document::Sft(_) => "sft/v1",
            Document::Map(_) => "map/v1",
            Document::Action(_) => "action/v1",
            Document::Csoe(_) => "csoe/v1",
            Document::Coe(_) => "coe/v1",
            Document::ShiftCoe(_) => "shift_coe/v1",
            Document::GroupCoe(_) => "group_coe/v1",
            Document::Bisection(_) => "bisection/v1",
            Document::GroupoidElement(_) => "groupoid_element/v1",
            Document::GroupoidIso(_) => "groupoid_iso/v1",
            Document::Report(_) => "report/v1",
        }
    }

    pub fn name(&self) -> Option<&str> {
        match self {
            Document::Sft(d) => Some(&d.name),
            Document::Map(d) => Some(&d.name),
            Document::Action(d) => Some(&d.name),
            Document::Csoe(d) => Some(&d.name),
            Document::Coe(d) => Some(&d.name),
            Document::ShiftCoe(d) => Some(&d.name),
            Document::GroupCoe(d) => Some(&d.name),
            Document::GroupoidIso(d) => Some(&d.name),
            _ => None,
        }
    }

    /// Serialize back into the envelope form.
    pub fn to_value(&self) -> serde_json::Value {
        let payload = match self {
            Document::Sft(d) => serde_json::to_value(d),
            Document::Map(d) => serde_json::to_value(d),
            Document::Action(d) => serde_json::to_value(d),
            Document::Csoe(d) => serde_json::to_value(d),
            Document::Coe(d) => serde_json::to_value(d),
            Document::ShiftCoe(d) => serde_json::to_value(d),
            Document::GroupCoe(d) => serde_json::to_value(d),
            Document::Bisection(d) => serde_json::to_value(d),
            Document::GroupoidElement(d) => serde_json::to_value(d),
            Document::GroupoidIso(d) => serde_json::to_value(d),
            Document::Report(v) => Ok(v.clone()),
        }
        .expect("document serialization is total");
        serde_json::json!({ "schema": self.schema(), "payload": payload })
    }
}

/// Parse an envelope `{"schema": ..., "payload": ...}`.
pub fn parse_document(text: &str) -> Result<Document> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let schema = value
        .get("schema")
        .and_then(|s| s.as_str())
        .ok_or_else(|| Error::BadDocument("missing schema field".into()))?
        .to_string();
    let payload = value
        .get("payload")
        .cloned()
        .ok_or_else(|| Error::BadDocument("missing payload field".into()))?;
    let doc = match schema.as_str() {
        "sft/v1" => Document::Sft(serde_json::from_value(payload)?),
        "map/v1" => Document::Map(serde_json::from_value(payload)?),
        "action/v1" => Document::Action(serde_json::from_value(payload)?),
        "csoe/v1" => Document::Csoe(serde_json::from_value(payload)?),
        "coe/v1" => Document::Coe(serde_json::from_value(payload)?),
        "shift_coe/v1" => Document::ShiftCoe(serde_json::from_value(payload)?),
        "group_coe/v1" => Document::GroupCoe(serde_json::from_value(payload)?),
        "bisection/v1" => Document::Bisection(serde_json::from_value(payload)?),
        "groupoid_element/v1" => Document::GroupoidElement(serde_json::from_value(payload)?),
        "groupoid_iso/v1" => Document::GroupoidIso(serde_json::from_value(payload)?),
        "report/v1" => Document::Report(payload),
        other => {
            return Err(Error::BadDocument(format!("unknown schema '{other}'")))
        }
    };
    Ok(doc)
}

/// Largest cylinder/table/window depth a document may declare; enumeration
/// beyond this is not desk-scale.
pub const MAX_DOC_DEPTH: usize = 16;

fn check_doc_depth(depth: usize, what: &str) -> Result<()> {
    if depth > MAX_DOC_DEPTH {
        return Err(Error::BadDocument(format!(
            "{what} depth {depth} exceeds the supported maximum {MAX_DOC_DEPTH}"
        )));
    }
    Ok(())
}

fn parse_monoid(text: &str, rank: usize) -> Result<MonoidElement> {
    let coords: Result<Vec<u32>> = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::BadDocument(format!("'{text}' is not a monoid element")))
        })
        .collect();
    let coords = coords?;
    if coords.len() != rank {
        return Err(Error::BadDocument(format!(
            "'{text}' has rank {} but the action has rank {rank}",
            coords.len()
        )));
    }
    Ok(MonoidElement(coords))
}

fn parse_group(text: &str, rank: usize) -> Result<GroupElement> {
    let coords: Result<Vec<i64>> = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::BadDocument(format!("'{text}' is not a group element")))
        })
        .collect();
    let coords = coords?;
    if coords.len() != rank {
        return Err(Error::BadDocument(format!(
            "'{text}' has rank {} but the action has rank {rank}",
            coords.len()
        )));
    }
    Ok(GroupElement(coords))
}

fn monoid_from_repr(repr: &IntsRepr, rank: usize) -> Result<MonoidElement> {
    let coords = repr.coords();
    if coords.len() != rank || coords.iter().any(|&c| c < 0) {
        return Err(Error::BadDocument(format!(
            "{coords:?} is not a rank-{rank} monoid element"
        )));
    }
    Ok(MonoidElement(coords.into_iter().map(|c| c as u32).collect()))
}

fn split_key<'a>(key: &'a str, parts: usize) -> Result<Vec<&'a str>> {
    let fields: Vec<&str> = key.split('|').collect();
    if fields.len() != parts {
        return Err(Error::BadDocument(format!(
            "key '{key}' must have {parts} '|'-separated fields"
        )));
    }
    Ok(fields)
}

/// Named registry of resolved objects. Documents are added in dependency
/// phases, so files may be supplied in any order.
#[derive(Default)]
pub struct Registry {
    sfts: BTreeMap<String, Arc<Sft>>,
    maps: BTreeMap<String, ProgressiveMap>,
    actions: BTreeMap<String, Arc<MonoidAction>>,
    csoe: BTreeMap<String, CsoeBundle>,
    coe: BTreeMap<String, CoeBundle>,
    shift_coe: BTreeMap<String, ShiftCoeBundle>,
    group_coe: BTreeMap<String, GroupCoeBundle>,
    groupoid_iso: BTreeMap<String, GroupoidIsoBundle>,
}

/// Resolved certificate data together with the names it was loaded from, so
/// converted outputs can reference the same objects.
#[derive(Clone)]
pub struct CsoeBundle {
    pub name: String,
    pub x_action: String,
    pub y_action: String,
    pub phi: HomeoRef,
    pub data: CsoeData,
}

#[derive(Clone)]
pub struct CoeBundle {
    pub name: String,
    pub x_action: String,
    pub y_action: String,
    pub phi: HomeoRef,
    pub data: CoeData,
}

#[derive(Clone)]
pub struct ShiftCoeBundle {
    pub name: String,
    pub x_action: String,
    pub y_action: String,
    pub phi: HomeoRef,
    pub data: ShiftCoeData,
}

#[derive(Clone)]
pub struct GroupCoeBundle {
    pub name: String,
    pub x_action: String,
    pub y_action: String,
    pub phi: HomeoRef,
    pub data: GroupCoeData,
}

#[derive(Clone)]
pub struct GroupoidIsoBundle {
    pub name: String,
    pub x_action: String,
    pub y_action: String,
    pub phi: HomeoRef,
    pub data: GroupoidIsoData,
}

impl Registry {
    pub fn new() -> Registry {
        Registry::default()
    }

    /// Add a batch of documents, resolving cross-references in dependency
    /// order: spaces, then maps, then actions, then certificates.
    pub fn add_all(&mut self, docs: Vec<Document>) -> Result<()> {
        let phase = |d: &Document| match d {
            Document::Sft(_) => 0,
            Document::Map(_) => 1,
            Document::Action(_) => 2,
            _ => 3,
        };
        let mut docs = docs;
        docs.sort_by_key(phase);
        for doc in docs {
            self.add(doc)?;
        }
        Ok(())
    }

    pub fn add(&mut self, doc: Document) -> Result<()> {
        match doc {
            Document::Sft(d) => {
                let labels: Vec<&str> = d.alphabet.iter().map(String::as_str).collect();
                let forbidden: Vec<&str> = d.forbidden.iter().map(String::as_str).collect();
                let sft = crate::sft::validate_sft(&d.name, &labels, &forbidden)?;
                self.insert_unique_sft(d.name, Arc::new(sft))
            }
            Document::Map(d) => {
                let map = self.resolve_map(&d)?;
                if self.maps.contains_key(&d.name) {
                    return Err(Error::DuplicateName(d.name));
                }
                self.maps.insert(d.name, map);
                Ok(())
            }
            Document::Action(d) => {
                let action = self.resolve_action(&d)?;
                if self.actions.contains_key(&d.name) {
                    return Err(Error::DuplicateName(d.name));
                }
                self.actions.insert(d.name, Arc::new(action));
                Ok(())
            }
            Document::Csoe(d) => {
                let bundle = self.resolve_csoe(&d)?;
                if self.csoe.contains_key(&d.name) {
                    return Err(Error::DuplicateName(d.name));
                }
                self.csoe.insert(d.name.clone(), bundle);
                Ok(())
            }
            Document::Coe(d) => {
                let bundle = self.resolve_coe(&d)?;
                if self.coe.contains_key(&d.name) {
                    return Err(Error::DuplicateName(d.name));
                }
                self.coe.insert(d.name.clone(), bundle);
                Ok(())
            }
            Document::ShiftCoe(d) => {
                let bundle = self.resolve_shift_coe(&d)?;
                if self.shift_coe.contains_key(&d.name) {
                    return Err(Error::DuplicateName(d.name));
                }
                self.shift_coe.insert(d.name.clone(), bundle);
                Ok(())
            }
            Document::GroupCoe(d) => {
                let bundle = self.resolve_group_coe(&d)?;
                if self.group_coe.contains_key(&d.name) {
                    return Err(Error::DuplicateName(d.name));
                }
                self.group_coe.insert(d.name.clone(), bundle);
                Ok(())
            }
            Document::GroupoidIso(d) => {
                let bundle = self.resolve_groupoid_iso(&d)?;
                if self.groupoid_iso.contains_key(&d.name) {
                    return Err(Error::DuplicateName(d.name));
                }
                self.groupoid_iso.insert(d.name.clone(), bundle);
                Ok(())
            }
            Document::Bisection(_) | Document::GroupoidElement(_) | Document::Report(_) => Ok(()),
        }
    }

    fn insert_unique_sft(&mut self, name: String, sft: Arc<Sft>) -> Result<()> {
        if self.sfts.contains_key(&name) {
            return Err(Error::DuplicateName(name));
        }
        self.sfts.insert(name, sft);
        Ok(())
    }

    pub fn sft(&self, name: &str) -> Result<&Arc<Sft>> {
        self.sfts
            .get(name)
            .ok_or_else(|| Error::UnresolvedReference(format!("space '{name}'")))
    }

    pub fn map(&self, name: &str) -> Result<&ProgressiveMap> {
        self.maps
            .get(name)
            .ok_or_else(|| Error::UnresolvedReference(format!("map '{name}'")))
    }

    pub fn action(&self, name: &str) -> Result<&Arc<MonoidAction>> {
        self.actions
            .get(name)
            .ok_or_else(|| Error::UnresolvedReference(format!("action '{name}'")))
    }

    pub fn action_names(&self) -> impl Iterator<Item = &String> {
        self.actions.keys()
    }

    pub fn csoe_bundle(&self, name: &str) -> Result<&CsoeBundle> {
        self.csoe
            .get(name)
            .ok_or_else(|| Error::UnresolvedReference(format!("csoe document '{name}'")))
    }

    pub fn csoe_names(&self) -> impl Iterator<Item = &String> {
        self.csoe.keys()
    }

    pub fn coe_bundle(&self, name: &str) -> Result<&CoeBundle> {
        self.coe
            .get(name)
            .ok_or_else(|| Error::UnresolvedReference(format!("coe document '{name}'")))
    }

    pub fn coe_names(&self) -> impl Iterator<Item = &String> {
        self.coe.keys()
    }

    pub fn shift_coe_bundle(&self, name: &str) -> Result<&ShiftCoeBundle> {
        self.shift_coe
            .get(name)
            .ok_or_else(|| Error::UnresolvedReference(format!("shift_coe document '{name}'")))
    }

    pub fn shift_coe_names(&self) -> impl Iterator<Item = &String> {
        self.shift_coe.keys()
    }

    pub fn group_coe_bundle(&self, name: &str) -> Result<&GroupCoeBundle> {
        self.group_coe
            .get(name)
            .ok_or_else(|| Error::UnresolvedReference(format!("group_coe document '{name}'")))
    }

    pub fn group_coe_names(&self) -> impl Iterator<Item = &String> {
        self.group_coe.keys()
    }

    pub fn groupoid_iso_bundle(&self, name: &str) -> Result<&GroupoidIsoBundle> {
        self.groupoid_iso
            .get(name)
            .ok_or_else(|| Error::UnresolvedReference(format!("groupoid_iso document '{name}'")))
    }

    pub fn groupoid_iso_names(&self) -> impl Iterator<Item = &String> {
        self.groupoid_iso.keys()
    }

    fn resolve_map(&self, d: &MapDoc) -> Result<ProgressiveMap> {
        let domain = self.sft(&d.domain)?.clone();
        let codomain = self.sft(&d.codomain)?.clone();
        match d.kind.as_deref() {
            Some("sliding_block") => {
                let window = d.window.ok_or_else(|| {
                    Error::BadDocument(format!("map '{}' needs a window", d.name))
                })?;
                check_doc_depth(window, "window")?;
                let rule_doc = d.rule.as_ref().ok_or_else(|| {
                    Error::BadDocument(format!("map '{}' needs a rule", d.name))
                })?;
                let mut rule = BTreeMap::new();
                for (w, out) in rule_doc {
                    let key = domain.parse_word(w)?;
                    if key.len() != window {
                        return Err(Error::BadDocument(format!(
                            "rule key '{w}' does not match the window {window}"
                        )));
                    }
                    let out_word = codomain.parse_word(out)?;
                    if out_word.len() != 1 {
                        return Err(Error::BadDocument(format!(
                            "rule value '{out}' must be a single symbol"
                        )));
                    }
                    rule.insert(key, out_word.symbols()[0]);
                }
                ProgressiveMap::sliding_block(&domain, &codomain, window, rule)
            }
            None => {
                let modulus = d.modulus.as_ref().ok_or_else(|| {
                    Error::BadDocument(format!("map '{}' needs a modulus", d.name))
                })?;
                let tables_doc = d.tables.as_ref().ok_or_else(|| {
                    Error::BadDocument(format!("map '{}' needs tables", d.name))
                })?;
                let mut moduli_by_depth = BTreeMap::new();
                for [n, m] in modulus {
                    moduli_by_depth.insert(*n, *m);
                }
                let n_max = *moduli_by_depth.keys().max().unwrap_or(&0);
                check_doc_depth(n_max, "table")?;
                for (_, m) in &moduli_by_depth {
                    check_doc_depth(*m, "modulus")?;
                }
                if n_max == 0 {
                    return Err(Error::BadDocument(format!(
                        "map '{}' declares no output depth",
                        d.name
                    )));
                }
                let mut moduli = Vec::new();
                let mut tables = Vec::new();
                for n in 1..=n_max {
                    let m = *moduli_by_depth.get(&n).ok_or_else(|| {
                        Error::BadDocument(format!("map '{}' lacks modulus for depth {n}", d.name))
                    })?;
                    let table_doc = tables_doc.get(&n.to_string()).ok_or_else(|| {
                        Error::TableIncomplete(format!("map '{}' lacks table {n}", d.name))
                    })?;
                    let mut table = BTreeMap::new();
                    for (input, output) in table_doc {
                        table.insert(domain.parse_word(input)?, codomain.parse_word(output)?);
                    }
                    moduli.push(m);
                    tables.push(table);
                }
                ProgressiveMap::from_tables(&domain, &codomain, moduli, tables)
            }
            Some(other) => Err(Error::BadDocument(format!(
                "unknown map kind '{other}' in '{}'",
                d.name
            ))),
        }
    }

    fn resolve_action(&self, d: &ActionDoc) -> Result<MonoidAction> {
        let space = self.sft(&d.space)?.clone();
        if d.generators.len() != d.rank {
            return Err(Error::BadDocument(format!(
                "action '{}' declares rank {} but {} generators",
                d.name,
                d.rank,
                d.generators.len()
            )));
        }
        let generators: Result<Vec<_>> = d
            .generators
            .iter()
            .map(|n| self.map(n).cloned())
            .collect();
        let inverses = match (&d.inverses, d.by_homeomorphisms) {
            (Some(names), _) => {
                let inv: Result<Vec<_>> = names.iter().map(|n| self.map(n).cloned()).collect();
                Some(inv?)
            }
            (None, true) => {
                return Err(Error::BadDocument(format!(
                    "action '{}' claims homeomorphisms but lists no inverses",
                    d.name
                )))
            }
            (None, false) => None,
        };
        MonoidAction::new(&d.name, space, generators?, inverses)
    }

    fn resolve_homeo(&self, h: &HomeoRef) -> Result<ProgressiveHomeo> {
        ProgressiveHomeo::new(self.map(&h.forward)?.clone(), self.map(&h.inverse)?.clone())
    }

    fn resolve_csoe(&self, d: &CsoeDoc) -> Result<CsoeBundle> {
        let act_x = self.action(&d.x_action)?;
        let act_y = self.action(&d.y_action)?;
        let phi = self.resolve_homeo(&d.phi)?;
        check_doc_depth(d.a.depth, "table")?;
        check_doc_depth(d.b.depth, "table")?;
        let mut a = CsoeTable::new(d.a.depth);
        for (key, value) in &d.a.entries {
            let fields = split_key(key, 2)?;
            let m = parse_monoid(fields[0], act_x.rank())?;
            let w = act_x.space().parse_word(fields[1])?;
            ensure_depth(&w, d.a.depth, key)?;
            a.entries
                .insert((m, w), monoid_from_repr(value, act_y.rank())?);
        }
        let mut b = CsoeTable::new(d.b.depth);
        for (key, value) in &d.b.entries {
            let fields = split_key(key, 2)?;
            let s = parse_monoid(fields[0], act_y.rank())?;
            let w = act_y.space().parse_word(fields[1])?;
            ensure_depth(&w, d.b.depth, key)?;
            b.entries
                .insert((s, w), monoid_from_repr(value, act_x.rank())?);
        }
        Ok(CsoeBundle {
            name: d.name.clone(),
            x_action: d.x_action.clone(),
            y_action: d.y_action.clone(),
            phi: d.phi.clone(),
            data: CsoeData {
                phi,
                a,
                b,
                degree_bound: d.degree_bound,
            },
        })
    }

    fn resolve_pair_table(
        &self,
        doc: &PairTableDoc,
        space: &Sft,
        key_rank: usize,
        value_rank: usize,
    ) -> Result<PairTable> {
        check_doc_depth(doc.depth_x, "table")?;
        check_doc_depth(doc.depth_y, "table")?;
        let mut out = PairTable::new(doc.depth_x, doc.depth_y);
        for (key, value) in &doc.entries {
            let fields = split_key(key, 4)?;
            let m = parse_monoid(fields[0], key_rank)?;
            let n = parse_monoid(fields[1], key_rank)?;
            let wx = space.parse_word(fields[2])?;
            let wy = space.parse_word(fields[3])?;
            ensure_depth(&wx, doc.depth_x, key)?;
            ensure_depth(&wy, doc.depth_y, key)?;
            out.insert(m, n, wx, wy, monoid_from_repr(value, value_rank)?);
        }
        Ok(out)
    }

    fn resolve_coe(&self, d: &CoeDoc) -> Result<CoeBundle> {
        let act_x = self.action(&d.x_action)?;
        let act_y = self.action(&d.y_action)?;
        let phi = self.resolve_homeo(&d.phi)?;
        Ok(CoeBundle {
            name: d.name.clone(),
            x_action: d.x_action.clone(),
            y_action: d.y_action.clone(),
            phi: d.phi.clone(),
            data: CoeData {
                phi,
                a1: self.resolve_pair_table(&d.a1, act_x.space(), act_x.rank(), act_y.rank())?,
                b1: self.resolve_pair_table(&d.b1, act_x.space(), act_x.rank(), act_y.rank())?,
                a2: self.resolve_pair_table(&d.a2, act_y.space(), act_y.rank(), act_x.rank())?,
                b2: self.resolve_pair_table(&d.b2, act_y.space(), act_y.rank(), act_x.rank())?,
                degree_bound: d.degree_bound,
            },
        })
    }

    fn resolve_word_table(&self, doc: &WordTableDoc, space: &Sft) -> Result<WordTable> {
        check_doc_depth(doc.depth, "table")?;
        let mut entries = BTreeMap::new();
        for (key, value) in &doc.entries {
            let w = space.parse_word(key)?;
            ensure_depth(&w, doc.depth, key)?;
            entries.insert(w, *value);
        }
        let table = WordTable {
            depth: doc.depth,
            entries,
        };
        if !table.is_total_on(space) {
            return Err(Error::TableIncomplete(format!(
                "exponent table at depth {} is not total",
                doc.depth
            )));
        }
        Ok(table)
    }

    fn resolve_shift_coe(&self, d: &ShiftCoeDoc) -> Result<ShiftCoeBundle> {
        let act_x = self.action(&d.x_action)?;
        let act_y = self.action(&d.y_action)?;
        let phi = self.resolve_homeo(&d.phi)?;
        Ok(ShiftCoeBundle {
            name: d.name.clone(),
            x_action: d.x_action.clone(),
            y_action: d.y_action.clone(),
            phi: d.phi.clone(),
            data: ShiftCoeData {
                phi,
                k: self.resolve_word_table(&d.k, act_x.space())?,
                l: self.resolve_word_table(&d.l, act_x.space())?,
                kp: self.resolve_word_table(&d.kp, act_y.space())?,
                lp: self.resolve_word_table(&d.lp, act_y.space())?,
            },
        })
    }

    fn resolve_triple_table(
        &self,
        doc: &KeyedTableDoc,
        space: &Sft,
        key_rank: usize,
        value_rank: usize,
    ) -> Result<TripleTable> {
        check_doc_depth(doc.depth, "table")?;
        let mut out = TripleTable::new(doc.depth);
        for (key, value) in &doc.entries {
            let fields = split_key(key, 3)?;
            let m = parse_monoid(fields[0], key_rank)?;
            let n = parse_monoid(fields[1], key_rank)?;
            let w = space.parse_word(fields[2])?;
            ensure_depth(&w, doc.depth, key)?;
            out.entries
                .insert((m, n, w), monoid_from_repr(value, value_rank)?);
        }
        Ok(out)
    }

    fn resolve_group_table(
        &self,
        doc: &KeyedTableDoc,
        space: &Sft,
        key_rank: usize,
        value_rank: usize,
    ) -> Result<GroupWordTable> {
        check_doc_depth(doc.depth, "table")?;
        let mut out = GroupWordTable::new(doc.depth);
        for (key, value) in &doc.entries {
            let fields = split_key(key, 2)?;
            let g = parse_group(fields[0], key_rank)?;
            let w = space.parse_word(fields[1])?;
            ensure_depth(&w, doc.depth, key)?;
            let coords = value.coords();
            if coords.len() != value_rank {
                return Err(Error::BadDocument(format!(
                    "value of '{key}' must have rank {value_rank}"
                )));
            }
            out.entries.insert((g, w), GroupElement(coords));
        }
        Ok(out)
    }

    fn resolve_group_coe(&self, d: &GroupCoeDoc) -> Result<GroupCoeBundle> {
        let act_x = self.action(&d.x_action)?;
        let act_y = self.action(&d.y_action)?;
        let phi = self.resolve_homeo(&d.phi)?;
        Ok(GroupCoeBundle {
            name: d.name.clone(),
            x_action: d.x_action.clone(),
            y_action: d.y_action.clone(),
            phi: d.phi.clone(),
            data: GroupCoeData {
                phi,
                a1: self.resolve_triple_table(&d.a1, act_x.space(), act_x.rank(), act_y.rank())?,
                b1: self.resolve_triple_table(&d.b1, act_x.space(), act_x.rank(), act_y.rank())?,
                a2: self.resolve_triple_table(&d.a2, act_y.space(), act_y.rank(), act_x.rank())?,
                b2: self.resolve_triple_table(&d.b2, act_y.space(), act_y.rank(), act_x.rank())?,
                li_a: self.resolve_group_table(&d.li_a, act_x.space(), act_x.rank(), act_y.rank())?,
                li_b: self.resolve_group_table(&d.li_b, act_y.space(), act_y.rank(), act_x.rank())?,
                degree_bound: d.degree_bound,
            },
        })
    }

    pub fn resolve_clopen(&self, doc: &ClopenDoc, space: &Sft) -> Result<ClopenSet> {
        check_doc_depth(doc.depth, "clopen set")?;
        let mut words = Vec::new();
        for w in &doc.words {
            let word = space.parse_word(w)?;
            ensure_depth(&word, doc.depth, w)?;
            words.push(word);
        }
        ClopenSet::from_words(space, &words)
    }

    pub fn resolve_point(&self, doc: &PointDoc, space: &Sft) -> Result<TruncatedPoint> {
        let prefix = space.parse_word(&doc.prefix)?;
        let point = match (&doc.preperiod, &doc.period) {
            (_, None) => {
                if doc.preperiod.is_some() {
                    return Err(Error::BadDocument(
                        "a preperiod without a period is meaningless".into(),
                    ));
                }
                TruncatedPoint::finite(prefix)
            }
            (pre, Some(per)) => {
                let preperiod = match pre {
                    Some(p) => space.parse_word(p)?,
                    None => Word::empty(),
                };
                let period = space.parse_word(per)?;
                if period.is_empty() {
                    return Err(Error::BadDocument("period must be nonempty".into()));
                }
                TruncatedPoint::eventually_periodic(prefix, preperiod, period)
            }
        };
        if !point.admissible_in(space) {
            return Err(Error::BadSymbol("point is not admissible".into()));
        }
        Ok(point)
    }

    pub fn resolve_bisection(&self, d: &BisectionDoc) -> Result<(Arc<MonoidAction>, Bisection)> {
        let act = self.action(&d.action)?.clone();
        let bis = Bisection::new(
            self.resolve_clopen(&d.u, act.space())?,
            monoid_from_repr(&d.m, act.rank())?,
            monoid_from_repr(&d.n, act.rank())?,
            self.resolve_clopen(&d.v, act.space())?,
        );
        Ok((act, bis))
    }

    pub fn resolve_groupoid_element(
        &self,
        d: &GroupoidElementDoc,
    ) -> Result<(Arc<MonoidAction>, GroupoidElement)> {
        let act = self.action(&d.action)?.clone();
        let x = self.resolve_point(&d.x, act.space())?;
        let y = self.resolve_point(&d.y, act.space())?;
        let g_coords = d.g.coords();
        if g_coords.len() != act.rank() {
            return Err(Error::BadDocument(format!(
                "group element {g_coords:?} does not match rank {}",
                act.rank()
            )));
        }
        let g = GroupElement(g_coords);
        let m = monoid_from_repr(&d.witness.0, act.rank())?;
        let n = monoid_from_repr(&d.witness.1, act.rank())?;
        if m.sub(&n) != g {
            return Err(Error::BadDocument(format!(
                "witness ({m}, {n}) does not present g = {g}"
            )));
        }
        Ok((
            act,
            GroupoidElement {
                x,
                g,
                y,
                witness: (m, n),
            },
        ))
    }

    fn resolve_groupoid_iso(&self, d: &GroupoidIsoDoc) -> Result<GroupoidIsoBundle> {
        let act_x = self.action(&d.x_action)?.clone();
        let act_y = self.action(&d.y_action)?.clone();
        let phi = self.resolve_homeo(&d.phi)?;
        let resolve_entries = |entries: &[IsoEntryDoc],
                               src: &MonoidAction,
                               dst: &MonoidAction|
         -> Result<Vec<IsoEntry>> {
            entries
                .iter()
                .map(|e| {
                    Ok(IsoEntry {
                        src_m: monoid_from_repr(&e.src_m, src.rank())?,
                        src_n: monoid_from_repr(&e.src_n, src.rank())?,
                        u: self.resolve_clopen(&e.u, src.space())?,
                        v: self.resolve_clopen(&e.v, src.space())?,
                        img_m: monoid_from_repr(&e.img_m, dst.rank())?,
                        img_n: monoid_from_repr(&e.img_n, dst.rank())?,
                    })
                })
                .collect()
        };
        Ok(GroupoidIsoBundle {
            name: d.name.clone(),
            x_action: d.x_action.clone(),
            y_action: d.y_action.clone(),
            phi: d.phi.clone(),
            data: GroupoidIsoData {
                phi,
                x_entries: resolve_entries(&d.x_entries, &act_x, &act_y)?,
                y_entries: resolve_entries(&d.y_entries, &act_y, &act_x)?,
            },
        })
    }
}

fn ensure_depth(word: &Word, depth: usize, key: &str) -> Result<()> {
    if word.len() != depth {
        return Err(Error::BadDocument(format!(
            "word in '{key}' must have length {depth}"
        )));
    }
    Ok(())
}

/// Emit a relation document from converted data, reusing the action and map
/// references of the source bundle.
pub fn coe_doc_from(
    name: &str,
    x_action: &str,
    y_action: &str,
    phi: &HomeoRef,
    data: &CoeData,
    x_space: &Sft,
    y_space: &Sft,
) -> CoeDoc {
    let pair_doc = |table: &PairTable, space: &Sft| -> PairTableDoc {
        let mut entries = BTreeMap::new();
        for ((m, n, wx, wy), v) in &table.entries {
            entries.insert(
                format!(
                    "{m}|{n}|{}|{}",
                    space.format_word(wx),
                    space.format_word(wy)
                ),
                ints_of_monoid(v),
            );
        }
        PairTableDoc {
            depth_x: table.depth_x,
            depth_y: table.depth_y,
            entries,
        }
    };
    CoeDoc {
        name: name.to_string(),
        x_action: x_action.to_string(),
        y_action: y_action.to_string(),
        phi: phi.clone(),
        degree_bound: data.degree_bound,
        a1: pair_doc(&data.a1, x_space),
        b1: pair_doc(&data.b1, x_space),
        a2: pair_doc(&data.a2, y_space),
        b2: pair_doc(&data.b2, y_space),
    }
}

pub fn shift_coe_doc_from(
    name: &str,
    x_action: &str,
    y_action: &str,
    phi: &HomeoRef,
    data: &ShiftCoeData,
    x_space: &Sft,
    y_space: &Sft,
) -> ShiftCoeDoc {
    let word_doc = |table: &WordTable, space: &Sft| -> WordTableDoc {
        WordTableDoc {
            depth: table.depth,
            entries: table
                .entries
                .iter()
                .map(|(w, v)| (space.format_word(w), *v))
                .collect(),
        }
    };
    ShiftCoeDoc {
        name: name.to_string(),
        x_action: x_action.to_string(),
        y_action: y_action.to_string(),
        phi: phi.clone(),
        k: word_doc(&data.k, x_space),
        l: word_doc(&data.l, x_space),
        kp: word_doc(&data.kp, y_space),
        lp: word_doc(&data.lp, y_space),
    }
}

pub fn group_coe_doc_from(
    name: &str,
    x_action: &str,
    y_action: &str,
    phi: &HomeoRef,
    data: &GroupCoeData,
    x_space: &Sft,
    y_space: &Sft,
) -> GroupCoeDoc {
    let triple_doc = |table: &TripleTable, space: &Sft| -> KeyedTableDoc {
        KeyedTableDoc {
            depth: table.depth,
            entries: table
                .entries
                .iter()
                .map(|((m, n, w), v)| {
                    (format!("{m}|{n}|{}", space.format_word(w)), ints_of_monoid(v))
                })
                .collect(),
        }
    };
    let group_doc = |table: &GroupWordTable, space: &Sft| -> KeyedTableDoc {
        KeyedTableDoc {
            depth: table.depth,
            entries: table
                .entries
                .iter()
                .map(|((g, w), v)| {
                    (
                        format!("{g}|{}", space.format_word(w)),
                        IntsRepr::Many(v.0.clone()),
                    )
                })
                .collect(),
        }
    };
    GroupCoeDoc {
        name: name.to_string(),
        x_action: x_action.to_string(),
        y_action: y_action.to_string(),
        phi: phi.clone(),
        degree_bound: data.degree_bound,
        a1: triple_doc(&data.a1, x_space),
        b1: triple_doc(&data.b1, x_space),
        a2: triple_doc(&data.a2, y_space),
        b2: triple_doc(&data.b2, y_space),
        li_a: group_doc(&data.li_a, x_space),
        li_b: group_doc(&data.li_b, y_space),
    }
}

pub fn csoe_doc_from(
    name: &str,
    x_action: &str,
    y_action: &str,
    phi: &HomeoRef,
    data: &CsoeData,
    x_space: &Sft,
    y_space: &Sft,
) -> CsoeDoc {
    let keyed = |table: &CsoeTable, space: &Sft| -> KeyedTableDoc {
        KeyedTableDoc {
            depth: table.depth,
            entries: table
                .entries
                .iter()
                .map(|((m, w), v)| (format!("{m}|{}", space.format_word(w)), ints_of_monoid(v)))
                .collect(),
        }
    };
    CsoeDoc {
        name: name.to_string(),
        x_action: x_action.to_string(),
        y_action: y_action.to_string(),
        phi: phi.clone(),
        degree_bound: data.degree_bound,
        a: keyed(&data.a, x_space),
        b: keyed(&data.b, y_space),
    }
}

pub fn groupoid_iso_doc_from(
    name: &str,
    x_action: &str,
    y_action: &str,
    phi: &HomeoRef,
    data: &GroupoidIsoData,
    x_space: &Sft,
    y_space: &Sft,
) -> GroupoidIsoDoc {
    let entry_doc = |e: &IsoEntry, space: &Sft| -> IsoEntryDoc {
        let clopen = |c: &ClopenSet| ClopenDoc {
            depth: c.depth(),
            words: c.words().iter().map(|w| space.format_word(w)).collect(),
        };
        IsoEntryDoc {
            src_m: ints_of_monoid(&e.src_m),
            src_n: ints_of_monoid(&e.src_n),
            u: clopen(&e.u),
            v: clopen(&e.v),
            img_m: ints_of_monoid(&e.img_m),
            img_n: ints_of_monoid(&e.img_n),
        }
    };
    GroupoidIsoDoc {
        name: name.to_string(),
        x_action: x_action.to_string(),
        y_action: y_action.to_string(),
        phi: phi.clone(),
        x_entries: data.x_entries.iter().map(|e| entry_doc(e, x_space)).collect(),
        y_entries: data.y_entries.iter().map(|e| entry_doc(e, y_space)).collect(),
    }
}

fn ints_of_monoid(m: &MonoidElement) -> IntsRepr {
    IntsRepr::Many(m.0.iter().map(|&c| c as i64).collect())
}

/// Parse a raw point specification against a space (used by tooling that
/// takes points on the command line).
pub fn parse_point_spec(space: &Sft, text: &str) -> Result<TruncatedPoint> {
    // "prefix", "prefix:period" or "prefix:preperiod:period"
    let parts: Vec<&str> = text.split(':').collect();
    let word = |t: &str| -> Result<Word> {
        if t.is_empty() {
            Ok(Word::empty())
        } else {
            space.parse_word(t)
        }
    };
    let period = |t: &str| -> Result<Word> {
        let w = word(t)?;
        if w.is_empty() {
            return Err(Error::BadDocument("period must be nonempty".into()));
        }
        Ok(w)
    };
    let point = match parts.as_slice() {
        [p] => TruncatedPoint::finite(word(p)?),
        [p, per] => TruncatedPoint::eventually_periodic(word(p)?, Word::empty(), period(per)?),
        [p, pre, per] => TruncatedPoint::eventually_periodic(word(p)?, word(pre)?, period(per)?),
        _ => {
            return Err(Error::BadDocument(
                "point specification has too many ':' fields".into(),
            ))
        }
    };
    if !point.admissible_in(space) {
        return Err(Error::BadSymbol(format!("point '{text}' is not admissible")));
    }
    let _: Option<Symbol> = point.symbol_at(0);
    Ok(point)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(s: &str) -> Document {
        parse_document(s).unwrap()
    }

    fn base_registry() -> Registry {
        let mut reg = Registry::new();
        reg.add_all(vec![
            doc(r#"{"schema":"sft/v1","payload":{"name":"F2","alphabet":["0","1"]}}"#),
            doc(
                r#"{"schema":"map/v1","payload":{"name":"sigma","domain":"F2","codomain":"F2",
                     "kind":"sliding_block","window":2,
                     "rule":{"00":"0","01":"1","10":"0","11":"1"}}}"#,
            ),
            doc(
                r#"{"schema":"action/v1","payload":{"name":"shift-F2","space":"F2","rank":1,
                     "generators":["sigma"]}}"#,
            ),
        ])
        .unwrap();
        reg
    }

    #[test]
    fn load_and_resolve_shift_action() {
        let reg = base_registry();
        let act = reg.action("shift-F2").unwrap();
        assert_eq!(act.rank(), 1);
        assert_eq!(act.generators()[0].as_shift_power(), Some(1));
    }

    #[test]
    fn unresolved_reference_is_a_load_error() {
        let mut reg = Registry::new();
        let err = reg
            .add(doc(
                r#"{"schema":"action/v1","payload":{"name":"a","space":"nope","rank":1,
                     "generators":["sigma"]}}"#,
            ))
            .unwrap_err();
        assert!(matches!(err, Error::UnresolvedReference(_)));
    }

    #[test]
    fn duplicate_names_are_rejected() {
        let mut reg = base_registry();
        let err = reg
            .add(doc(
                r#"{"schema":"sft/v1","payload":{"name":"F2","alphabet":["0","1"]}}"#,
            ))
            .unwrap_err();
        assert!(matches!(err, Error::DuplicateName(_)));
    }

    #[test]
    fn tabulated_map_document_roundtrip() {
        let mut reg = base_registry();
        reg.add(doc(
            r#"{"schema":"map/v1","payload":{"name":"flip","domain":"F2","codomain":"F2",
                 "modulus":[[1,1],[2,2]],
                 "tables":{"1":{"0":"1","1":"0"},
                            "2":{"00":"10","01":"11","10":"00","11":"01"}}}}"#,
        ))
        .unwrap();
        let flip = reg.map("flip").unwrap();
        assert_eq!(flip.apply_word(&[0, 1], 2).unwrap(), Word(vec![1, 1]));
    }

    #[test]
    fn malformed_documents_are_rejected() {
        assert!(parse_document("not json").is_err());
        assert!(parse_document(r#"{"payload":{}}"#).is_err());
        assert!(parse_document(r#"{"schema":"nope/v1","payload":{}}"#).is_err());
        // admissibility of table words is enforced
        let mut reg = Registry::new();
        reg.add(doc(
            r#"{"schema":"sft/v1","payload":{"name":"GM","alphabet":["0","1"],"forbidden":["11"]}}"#,
        ))
        .unwrap();
        let err = reg
            .add(doc(
                r#"{"schema":"map/v1","payload":{"name":"bad","domain":"GM","codomain":"GM",
                     "kind":"sliding_block","window":2,"rule":{"00":"0","01":"1","10":"0","11":"1"}}}"#,
            ))
            .unwrap_err();
        assert!(matches!(err, Error::BadSymbol(_)));
    }

    #[test]
    fn point_and_bisection_documents_resolve() {
        let mut reg = base_registry();
        reg.add(doc(
            r#"{"schema":"bisection/v1","payload":{"action":"shift-F2",
                 "u":{"depth":2,"words":["01"]},"m":1,"n":0,
                 "v":{"depth":1,"words":["1"]}}}"#,
        ))
        .unwrap();
        let Document::Bisection(bd) = doc(
            r#"{"schema":"bisection/v1","payload":{"action":"shift-F2",
                 "u":{"depth":2,"words":["01"]},"m":1,"n":0,
                 "v":{"depth":1,"words":["1"]}}}"#,
        ) else {
            panic!("expected bisection")
        };
        let (act, bis) = reg.resolve_bisection(&bd).unwrap();
        bis.validate(&act, 4).unwrap();

        let Document::GroupoidElement(ed) = doc(
            r#"{"schema":"groupoid_element/v1","payload":{"action":"shift-F2",
                 "x":{"prefix":"1","period":"0"},"g":1,
                 "y":{"prefix":"","period":"0"},"witness":[1,0]}}"#,
        ) else {
            panic!("expected element")
        };
        let (_, el) = reg.resolve_groupoid_element(&ed).unwrap();
        assert_eq!(el.g, GroupElement(vec![1]));
    }

    #[test]
    fn csoe_document_resolves_and_emits() {
        let mut reg = base_registry();
        reg.add(doc(
            r#"{"schema":"map/v1","payload":{"name":"id","domain":"F2","codomain":"F2",
                 "kind":"sliding_block","window":1,"rule":{"0":"0","1":"1"}}}"#,
        ))
        .unwrap();
        reg.add(doc(
            r#"{"schema":"csoe/v1","payload":{"name":"ident","x_action":"shift-F2",
                 "y_action":"shift-F2","phi":{"forward":"id","inverse":"id"},
                 "degree_bound":1,
                 "a":{"depth":0,"entries":{"0|":0,"1|":1}},
                 "b":{"depth":0,"entries":{"0|":0,"1|":1}}}}"#,
        ))
        .unwrap();
        let bundle = reg.csoe_bundle("ident").unwrap();
        assert_eq!(bundle.data.degree_bound, 1);
        let emitted = csoe_doc_from(
            "ident",
            &bundle.x_action,
            &bundle.y_action,
            &bundle.phi,
            &bundle.data,
            reg.action("shift-F2").unwrap().space(),
            reg.action("shift-F2").unwrap().space(),
        );
        let value = Document::Csoe(emitted).to_value();
        let reparsed = parse_document(&value.to_string()).unwrap();
        assert!(matches!(reparsed, Document::Csoe(_)));
    }
}
