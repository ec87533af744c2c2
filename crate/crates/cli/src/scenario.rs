//! Scenario files: lattices, queries, fixtures and an ordered list of checks.
//!
//! Any string argument of the form `@name` or `@name.path.to.field` is
//! replaced by an earlier check's result, a scenario fixture or a bundled
//! fixture, in that order.

use std::collections::BTreeMap;

use moduli_audit::dimension::Registry;
use moduli_audit::enumerate::ClassQuery;
use moduli_audit::fixtures;
use moduli_audit::Lattice;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::InputError;

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default)]
    pub name: String,
    #[serde(default)]
    pub lattices: Vec<Lattice>,
    #[serde(default)]
    pub queries: Vec<NamedQuery>,
    #[serde(default)]
    pub fixtures: BTreeMap<String, Value>,
    #[serde(default)]
    pub registry: Registry,
    #[serde(default)]
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedQuery {
    pub id: String,
    pub lattice: String,
    #[serde(flatten)]
    pub query: ClassQuery,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Check {
    pub id: String,
    #[serde(default)]
    pub claim: String,
    pub op: String,
    #[serde(default)]
    pub args: Value,
    /// Dotted path into the result that is compared with `expect`.
    #[serde(default)]
    pub select: Option<String>,
    #[serde(default)]
    pub expect: Option<Value>,
    /// The check passes only if the operation refuses (capability error).
    #[serde(default)]
    pub expect_refusal: bool,
    #[serde(default)]
    pub anchor: String,
}

pub const BUNDLED: &[(&str, &str)] = &[("paper16", include_str!("../scenarios/paper16.json"))];

pub fn bundled(name: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

pub fn parse(text: &str, origin: &str) -> Result<Scenario, InputError> {
    let sc: Scenario = serde_json::from_str(text)
        .map_err(|e| InputError(format!("{origin}:{}:{}: {e}", e.line(), e.column())))?;
    let mut seen = std::collections::BTreeSet::new();
    for c in &sc.checks {
        if !seen.insert(c.id.as_str()) {
            return Err(InputError(format!("{origin}: duplicate check id {:?}", c.id)));
        }
        if c.expect.is_some() == c.expect_refusal {
            return Err(InputError(format!("{origin}: check {:?} needs exactly one of expect / expect_refusal", c.id)));
        }
    }
    Ok(sc)
}

/// Everything a check can refer to.
pub struct Context {
    pub lattices: BTreeMap<String, Lattice>,
    pub queries: BTreeMap<String, NamedQuery>,
    pub fixtures: BTreeMap<String, Value>,
    pub registry: Registry,
    pub results: BTreeMap<String, Value>,
}

impl Context {
    pub fn new(sc: &Scenario) -> Result<Self, InputError> {
        let mut lattices: BTreeMap<String, Lattice> =
            fixtures::LATTICE_IDS.iter().map(|id| (id.to_string(), fixtures::lattice_by_id(id).unwrap())).collect();
        for l in &sc.lattices {
            if lattices.insert(l.id().to_string(), l.clone()).is_some() {
                return Err(InputError(format!("lattice id {:?} is declared twice", l.id())));
            }
        }
        let mut queries = BTreeMap::new();
        for q in &sc.queries {
            if !lattices.contains_key(&q.lattice) {
                return Err(InputError(format!("query {:?} names unknown lattice {:?}", q.id, q.lattice)));
            }
            queries.insert(q.id.clone(), q.clone());
        }
        let mut registry = Registry::bundled();
        registry.extend(sc.registry.clone()).map_err(|e| InputError(e.to_string()))?;
        Ok(Context { lattices, queries, fixtures: sc.fixtures.clone(), registry, results: BTreeMap::new() })
    }

    pub fn lattice(&self, id: &str) -> Result<&Lattice, InputError> {
        self.lattices.get(id).ok_or_else(|| InputError(format!("unknown lattice {id:?}")))
    }

    /// Replace every `@reference` inside `v`.
    pub fn resolve(&self, v: &Value) -> Result<Value, InputError> {
        self.resolve_depth(v, 0)
    }

    fn resolve_depth(&self, v: &Value, depth: usize) -> Result<Value, InputError> {
        if depth > 32 {
            return Err(InputError("reference chain is too deep (cycle?)".into()));
        }
        Ok(match v {
            Value::String(s) if s.starts_with('@') => {
                let target = self.lookup(&s[1..])?;
                self.resolve_depth(&target, depth + 1)?
            }
            Value::Array(xs) => Value::Array(xs.iter().map(|x| self.resolve_depth(x, depth)).collect::<Result<_, _>>()?),
            Value::Object(m) => Value::Object(
                m.iter()
                    .map(|(k, x)| Ok((k.clone(), self.resolve_depth(x, depth)?)))
                    .collect::<Result<_, InputError>>()?,
            ),
            other => other.clone(),
        })
    }

    fn lookup(&self, reference: &str) -> Result<Value, InputError> {
        let (head, path) = match reference.split_once('.') {
            Some((h, p)) => (h, Some(p)),
            None => (reference, None),
        };
        let root = if let Some(v) = self.results.get(head) {
            v.clone()
        } else if let Some(v) = self.fixtures.get(head) {
            v.clone()
        } else if let Some(s) = fixtures::surface_by_id(head) {
            serde_json::to_value(s).expect("surface serializes")
        } else {
            return Err(InputError(format!("@{reference}: no earlier check or fixture named {head:?}")));
        };
        match path {
            None => Ok(root),
            Some(p) => select(&root, p).cloned().ok_or_else(|| InputError(format!("@{reference}: no field {p:?}"))),
        }
    }
}

/// Follow a dotted path of object keys and array indices.
pub fn select<'a>(v: &'a Value, path: &str) -> Option<&'a Value> {
    path.split('.').try_fold(v, |cur, key| match cur {
        Value::Object(m) => m.get(key),
        Value::Array(xs) => key.parse::<usize>().ok().and_then(|i| xs.get(i)),
        _ => None,
    })
}
