//! The evidence file format.
//!
//! A JSON document with the frame of interest and a list of named entries,
//! each either a mass function or a source structure:
//!
//! ```json
//! {
//!   "theta": [1, 2],
//!   "entries": [
//!     {"name": "m1", "masses": [{"set": [1], "mass": "1/2"}, {"set": [1, 2], "mass": "1/2"}]},
//!     {"name": "s1", "omega": ["a", "b"],
//!      "p": {"a": "3/5", "b": "2/5"},
//!      "i": {"a": [1], "b": [1, 2]}}
//!   ]
//! }
//! ```
//!
//! Numbers are exact: masses and weights are `"p/q"` strings or terminating
//! decimal strings; integer literals are accepted, fractional JSON numbers
//! are not. Witness files written by `check` add a `witness` object naming
//! the axiom, the rule and any conditioning data.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::axioms::{AxiomKind, AxiomVerdict, Conditioning};
use crate::combination::{CRuleId, MultipleSourceStructure};
use crate::conditioning::ProductSubset;
use crate::error::{Error, Result};
use crate::frame::{Frame, Subset};
use crate::mass::MassFunction;
use crate::probability::PointProbability;
use crate::rational::{parse_rational, render, Rational};
use crate::source::{mass_of_source, source_from_mass, SourceStructure};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EntryBody {
    Mass(MassFunction),
    Source(SourceStructure),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub name: String,
    pub body: EntryBody,
}

impl Entry {
    pub fn mass(&self) -> Result<MassFunction> {
        match &self.body {
            EntryBody::Mass(m) => Ok(m.clone()),
            EntryBody::Source(s) => mass_of_source(s),
        }
    }

    /// The entry as a source structure; mass entries become their canonical source.
    pub fn source(&self) -> Result<SourceStructure> {
        match &self.body {
            EntryBody::Mass(m) => source_from_mass(m),
            EntryBody::Source(s) => Ok(s.clone()),
        }
    }
}

/// Which check a witness file reproduces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessSpec {
    pub axiom: AxiomKind,
    pub rule: CRuleId,
    /// Entry name of the cylinder source k.
    pub entry: Option<String>,
    /// Label of the cylinder element l.
    pub element: Option<String>,
    /// Product subset Δ: entry name to underlying labels.
    pub delta: Option<BTreeMap<String, Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvidenceDocument {
    pub theta: Frame,
    pub entries: Vec<Entry>,
    pub witness: Option<WitnessSpec>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    theta: Vec<u32>,
    entries: Vec<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    witness: Option<RawWitness>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMassEntry {
    name: String,
    masses: Vec<RawMass>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMass {
    set: Vec<u32>,
    mass: Value,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSourceEntry {
    name: String,
    omega: Vec<String>,
    p: Map<String, Value>,
    i: Map<String, Value>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawWitness {
    axiom: String,
    rule: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    entry: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    element: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    delta: Option<BTreeMap<String, Vec<String>>>,
}

fn exact_number(v: &Value, context: &str) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| Error::Parse(format!("{context}: {e}"))),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Rational::from_integer(i.into())),
            None => Err(Error::Parse(format!(
                "{context}: binary number {n} rejected; write it as a \"p/q\" or decimal string"
            ))),
        },
        other => Err(Error::Parse(format!(
            "{context}: expected a number string, got {other}"
        ))),
    }
}

fn subset_of(members: &[u32], context: &str) -> Result<Subset> {
    let set: Subset = members.iter().copied().collect();
    if set.len() != members.len() {
        return Err(Error::Parse(format!(
            "{context}: repeated element in {members:?}"
        )));
    }
    Ok(set)
}

fn in_context<T>(r: Result<T>, name: &str) -> Result<T> {
    r.map_err(|e| match e {
        Error::Invalid(m) => Error::Invalid(format!("entry {name:?}: {m}")),
        Error::FrameMismatch(m) => Error::FrameMismatch(format!("entry {name:?}: {m}")),
        Error::Parse(m) => Error::Parse(format!("entry {name:?}: {m}")),
        other => other,
    })
}

fn parse_mass_entry(theta: &Frame, raw: RawMassEntry) -> Result<Entry> {
    let name = raw.name;
    let mut pairs = Vec::with_capacity(raw.masses.len());
    for (j, m) in raw.masses.iter().enumerate() {
        let ctx = format!("mass {j}");
        let set = subset_of(&m.set, &ctx)?;
        pairs.push((set, exact_number(&m.mass, &ctx)?));
    }
    let m = in_context(MassFunction::new(theta.clone(), pairs), &name)?;
    if !m.is_normalized() {
        return Err(Error::Invalid(format!(
            "entry {name:?}: mass on the empty set"
        )));
    }
    Ok(Entry {
        name,
        body: EntryBody::Mass(m),
    })
}

fn parse_source_entry(theta: &Frame, raw: RawSourceEntry) -> Result<Entry> {
    let name = raw.name;
    let labels = raw.omega;
    let distinct: BTreeSet<&String> = labels.iter().collect();
    if distinct.len() != labels.len() {
        return Err(Error::Parse(format!(
            "entry {name:?}: repeated omega label"
        )));
    }
    if labels.is_empty() {
        return Err(Error::Invalid(format!("entry {name:?}: omega is empty")));
    }
    for key in raw.p.keys().chain(raw.i.keys()) {
        if !distinct.contains(key) {
            return Err(Error::Parse(format!(
                "entry {name:?}: {key:?} is not in omega"
            )));
        }
    }
    let mut weights = Vec::with_capacity(labels.len());
    let mut compat = Vec::with_capacity(labels.len());
    for label in &labels {
        let w = raw
            .p
            .get(label)
            .ok_or_else(|| Error::Parse(format!("entry {name:?}: no probability for {label:?}")))?;
        weights.push(exact_number(w, &format!("entry {name:?}, p[{label:?}]"))?);
        let img = raw
            .i
            .get(label)
            .ok_or_else(|| Error::Parse(format!("entry {name:?}: no image for {label:?}")))?;
        let members: Vec<u32> = serde_json::from_value(img.clone())
            .map_err(|e| Error::Parse(format!("entry {name:?}, i[{label:?}]: {e}")))?;
        compat.push(subset_of(
            &members,
            &format!("entry {name:?}, i[{label:?}]"),
        )?);
    }
    let omega = Frame::range(labels.len() as u32)?;
    let p = in_context(PointProbability::new(omega, weights), &name)?;
    let s = in_context(
        SourceStructure::new_labelled(theta.clone(), p, compat, labels),
        &name,
    )?;
    Ok(Entry {
        name,
        body: EntryBody::Source(s),
    })
}

fn parse_entry(theta: &Frame, j: usize, v: Value) -> Result<Entry> {
    let name = v
        .get("name")
        .and_then(Value::as_str)
        .map(str::to_string)
        .unwrap_or_else(|| format!("#{j}"));
    let err = |e: serde_json::Error| Error::Parse(format!("entry {name:?}: {e}"));
    if v.get("masses").is_some() {
        parse_mass_entry(theta, serde_json::from_value(v).map_err(err)?)
    } else if v.get("omega").is_some() {
        parse_source_entry(theta, serde_json::from_value(v).map_err(err)?)
    } else {
        Err(Error::Parse(format!(
            "entry {name:?}: expected either \"masses\" or \"omega\""
        )))
    }
}

impl EvidenceDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawDocument =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if raw.theta.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parse(
                "theta must be a strictly increasing list".into(),
            ));
        }
        let theta = Frame::new(raw.theta.iter().copied())?;
        let mut entries = Vec::with_capacity(raw.entries.len());
        let mut names = BTreeSet::new();
        for (j, v) in raw.entries.into_iter().enumerate() {
            let e = parse_entry(&theta, j, v)?;
            if !names.insert(e.name.clone()) {
                return Err(Error::Parse(format!("entry name {:?} used twice", e.name)));
            }
            entries.push(e);
        }
        let witness = raw
            .witness
            .map(|w| -> Result<WitnessSpec> {
                Ok(WitnessSpec {
                    axiom: w.axiom.parse()?,
                    rule: w.rule.parse()?,
                    entry: w.entry,
                    element: w.element,
                    delta: w.delta,
                })
            })
            .transpose()?;
        Ok(EvidenceDocument {
            theta,
            entries,
            witness,
        })
    }

    /// Pretty JSON with a trailing newline; masses and weights as `"p/q"`.
    pub fn to_json(&self) -> String {
        let entries = self.entries.iter().map(entry_value).collect();
        let raw = RawDocument {
            theta: self.theta.elements().to_vec(),
            entries,
            witness: self.witness.as_ref().map(|w| RawWitness {
                axiom: w.axiom.as_str().to_string(),
                rule: w.rule.as_str().to_string(),
                entry: w.entry.clone(),
                element: w.element.clone(),
                delta: w.delta.clone(),
            }),
        };
        let mut s = serde_json::to_string_pretty(&raw).expect("plain JSON values");
        s.push('\n');
        s
    }

    pub fn entry(&self, name: &str) -> Result<&Entry> {
        self.entries
            .iter()
            .find(|e| e.name == name)
            .ok_or_else(|| Error::Invalid(format!("no entry named {name:?}")))
    }

    pub fn masses(&self) -> Result<Vec<MassFunction>> {
        self.entries.iter().map(Entry::mass).collect()
    }

    /// All entries as one multiple source structure, indexed by position.
    pub fn structure(&self) -> Result<MultipleSourceStructure> {
        let sources: Result<Vec<_>> = self.entries.iter().map(Entry::source).collect();
        MultipleSourceStructure::from_sources(sources?)
    }

    /// Resolves the witness's names and labels against [`Self::structure`].
    pub fn conditioning(&self, s: &MultipleSourceStructure) -> Result<Conditioning> {
        let Some(w) = &self.witness else {
            return Ok(Conditioning::None);
        };
        let position = |name: &str| -> Result<usize> {
            self.entries
                .iter()
                .position(|e| e.name == name)
                .ok_or_else(|| Error::Invalid(format!("witness names unknown entry {name:?}")))
        };
        let element = |pos: usize, label: &str| -> Result<u32> {
            let src = s.source(pos as u32).expect("positions are indices");
            src.omega()
                .elements()
                .iter()
                .copied()
                .find(|&x| src.label(x) == Some(label))
                .ok_or_else(|| Error::Invalid(format!("witness names unknown element {label:?}")))
        };
        if let Some(delta) = &w.delta {
            let mut parts: Vec<Option<Subset>> = vec![None; self.entries.len()];
            for (name, labels) in delta {
                let pos = position(name)?;
                let members: Result<Subset> = labels.iter().map(|l| element(pos, l)).collect();
                parts[pos] = Some(members?);
            }
            let parts = parts
                .into_iter()
                .enumerate()
                .map(|(pos, p)| p.unwrap_or_else(|| s.source(pos as u32).unwrap().omega().full()))
                .collect();
            return Ok(Conditioning::Product(ProductSubset::new(s, parts)?));
        }
        match (&w.entry, &w.element) {
            (Some(name), Some(label)) => {
                let pos = position(name)?;
                Ok(Conditioning::Cylinder {
                    k: pos as u32,
                    l: element(pos, label)?,
                })
            }
            _ => Ok(Conditioning::None),
        }
    }

    /// A self-contained witness file for a failed verdict of a registered rule.
    pub fn from_verdict(verdict: &AxiomVerdict, rule: CRuleId) -> Option<Self> {
        let w = verdict.witness()?;
        let s = &w.structure;
        let name = |i: u32| format!("s{i}");
        let entries = s
            .iter()
            .map(|(i, src)| Entry {
                name: name(i),
                body: EntryBody::Source(src.clone()),
            })
            .collect();
        let mut spec = WitnessSpec {
            axiom: verdict.axiom,
            rule,
            entry: None,
            element: None,
            delta: None,
        };
        match &w.conditioning {
            Conditioning::Cylinder { k, l } => {
                spec.entry = Some(name(*k));
                spec.element = s
                    .source(*k)
                    .and_then(|src| src.label(*l))
                    .map(str::to_string);
            }
            Conditioning::Product(delta) => {
                let map = s
                    .iter()
                    .zip(delta.parts())
                    .map(|((i, src), part)| {
                        let labels = part
                            .iter()
                            .map(|x| src.label(x).unwrap().to_string())
                            .collect();
                        (name(i), labels)
                    })
                    .collect();
                spec.delta = Some(map);
            }
            Conditioning::None | Conditioning::Pair(_) => {}
        }
        Some(EvidenceDocument {
            theta: s.theta().clone(),
            entries,
            witness: Some(spec),
        })
    }
}

fn entry_value(e: &Entry) -> Value {
    match &e.body {
        EntryBody::Mass(m) => {
            let masses = m
                .iter()
                .map(|(set, w)| RawMass {
                    set: set.members(),
                    mass: Value::String(render(w)),
                })
                .collect();
            serde_json::to_value(RawMassEntry {
                name: e.name.clone(),
                masses,
            })
            .expect("plain")
        }
        EntryBody::Source(s) => {
            let mut p = Map::new();
            let mut i = Map::new();
            for ((_, w, img), label) in s.iter().zip(s.labels()) {
                p.insert(label.clone(), Value::String(render(w)));
                i.insert(
                    label.clone(),
                    serde_json::to_value(img.members()).expect("plain"),
                );
            }
            let raw = RawSourceEntry {
                name: e.name.clone(),
                omega: s.labels().to_vec(),
                p,
                i,
            };
            serde_json::to_value(raw).expect("plain")
        }
    }
}
