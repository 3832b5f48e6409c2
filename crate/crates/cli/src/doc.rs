//! JSON interchange documents.
//!
//! A change action is
//! `{"elements": [...], "delta": {"elements": [...], "plus": [[...]], "zero": i}, "action": [[...]]}`
//! with `action[a][δ] = a ⊕ δ`, and a differential map is `{"f": [...], "df": [[...]]}`
//! with `df[a][δ] = ∂f(a, δ)`. Every document may carry `"version": 1`.
//! The canonical form has sorted keys and no insignificant whitespace.

use std::path::Path;

use change_actions::finite::CheckReport;
use change_actions::{DifferentialMap, FiniteChangeAction, FiniteMonoid, TabFun};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{CliError, Result};

pub const VERSION: u32 = 1;

fn version() -> u32 {
    VERSION
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidDoc {
    pub elements: Vec<Value>,
    pub plus: Vec<Vec<usize>>,
    pub zero: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionDoc {
    #[serde(default = "version")]
    pub version: u32,
    pub elements: Vec<Value>,
    pub delta: MonoidDoc,
    pub action: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    #[serde(default = "version")]
    pub version: u32,
    pub f: Vec<usize>,
    pub df: Vec<Vec<usize>>,
}

/// The base map of a tower: a table for group models, a polynomial for
/// Kleene models.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerMapDoc {
    #[serde(default = "version")]
    pub version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poly: Option<String>,
}

pub trait Versioned {
    fn version(&self) -> u32;
}

macro_rules! versioned {
    ($($t:ty),*) => {
        $(impl Versioned for $t {
            fn version(&self) -> u32 {
                self.version
            }
        })*
    };
}

versioned!(ActionDoc, MapDoc, TowerMapDoc);

pub fn parse<T: DeserializeOwned + Versioned>(src: &str, what: &str) -> Result<T> {
    let doc: T = serde_json::from_str(src).map_err(|e| CliError::Input(format!("{what}: {e}")))?;
    if doc.version() != VERSION {
        return Err(CliError::Input(format!("{what}: unsupported version {}", doc.version())));
    }
    Ok(doc)
}

pub fn load<T: DeserializeOwned + Versioned>(path: &Path) -> Result<T> {
    let what = path.display().to_string();
    let src = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{what}: {e}")))?;
    parse(&src, &what)
}

/// Sorted keys, compact separators.
pub fn canonical<T: Serialize>(doc: &T) -> String {
    serde_json::to_value(doc).expect("documents serialise").to_string()
}

fn flatten(rows: &[Vec<usize>], width: usize, bound: usize, what: &str) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(rows.len() * width);
    for (r, row) in rows.iter().enumerate() {
        if row.len() != width {
            return Err(CliError::Input(format!("{what}: row {r} has {} entries, expected {width}", row.len())));
        }
        if let Some((c, &v)) = row.iter().enumerate().find(|(_, &v)| v >= bound) {
            return Err(CliError::Input(format!("{what}: entry [{r}][{c}] = {v} is out of range (bound {bound})")));
        }
        out.extend_from_slice(row);
    }
    Ok(out)
}

fn rows(values: Vec<usize>, width: usize) -> Vec<Vec<usize>> {
    if width == 0 {
        return Vec::new();
    }
    values.chunks(width).map(<[usize]>::to_vec).collect()
}

fn check_space(cells: usize, max_space: u128, what: &str) -> Result<()> {
    if cells as u128 > max_space {
        return Err(CliError::Resource(format!("{what}: {cells} table cells exceed --max-space {max_space}")));
    }
    Ok(())
}

impl ActionDoc {
    /// Builds the action after shape checks only; the laws are left to
    /// [`FiniteChangeAction::law_reports`].
    pub fn to_action_unchecked(&self, max_space: u128) -> Result<FiniteChangeAction> {
        let (na, nd) = (self.elements.len(), self.delta.elements.len());
        check_space(na.saturating_mul(nd).max(nd.saturating_mul(nd)), max_space, "change action")?;
        if self.delta.plus.len() != nd {
            return Err(CliError::Input(format!("delta.plus has {} rows, expected {nd}", self.delta.plus.len())));
        }
        if self.action.len() != na {
            return Err(CliError::Input(format!("action has {} rows, expected {na}", self.action.len())));
        }
        if nd == 0 {
            return Err(CliError::Input("delta.elements is empty; a monoid needs a unit".into()));
        }
        if self.delta.zero >= nd {
            return Err(CliError::Input(format!("delta.zero = {} is out of range (bound {nd})", self.delta.zero)));
        }
        let plus = flatten(&self.delta.plus, nd, nd, "delta.plus")?;
        let act = flatten(&self.action, nd, na, "action")?;
        let m = FiniteMonoid::from_table_unchecked(nd, plus, self.delta.zero)?;
        Ok(FiniteChangeAction::from_table_unchecked(na, m, act)?)
    }

    /// Builds the action and requires every law to hold.
    pub fn to_action(&self, max_space: u128, what: &str) -> Result<FiniteChangeAction> {
        let a = self.to_action_unchecked(max_space)?;
        if let Some((law, r)) = a.law_reports().into_iter().find(|(_, r)| !r.passed) {
            return Err(CliError::Check(format!("{what}: law `{law}` fails at {:?}", r.witness.unwrap_or_default())));
        }
        Ok(a)
    }

    pub fn from_action(a: &FiniteChangeAction) -> Self {
        let (na, nd) = (a.base_size(), a.changes().size());
        let m = a.changes();
        Self {
            version: VERSION,
            elements: (0..na).map(Value::from).collect(),
            delta: MonoidDoc {
                elements: (0..nd).map(Value::from).collect(),
                plus: (0..nd).map(|x| (0..nd).map(|y| m.op(x, y)).collect()).collect(),
                zero: m.unit(),
            },
            action: rows(a.action_table(), nd),
        }
    }
}

impl MapDoc {
    pub fn to_map(&self, dom: &FiniteChangeAction, cod: &FiniteChangeAction) -> Result<DifferentialMap> {
        let (na, nda) = (dom.base_size(), dom.changes().size());
        let (nb, ndb) = (cod.base_size(), cod.changes().size());
        if self.f.len() != na {
            return Err(CliError::Input(format!("f has {} entries, expected {na}", self.f.len())));
        }
        if let Some((i, &v)) = self.f.iter().enumerate().find(|(_, &v)| v >= nb) {
            return Err(CliError::Input(format!("f[{i}] = {v} is out of range (bound {nb})")));
        }
        if self.df.len() != na {
            return Err(CliError::Input(format!("df has {} rows, expected {na}", self.df.len())));
        }
        let df = flatten(&self.df, nda, ndb, "df")?;
        let f = TabFun::new(nb, self.f.clone())?;
        Ok(DifferentialMap::from_parts(dom.clone(), cod.clone(), f, TabFun::new(ndb, df)?)?)
    }

    pub fn from_map(dm: &DifferentialMap) -> Self {
        Self {
            version: VERSION,
            f: dm.f().values().to_vec(),
            df: rows(dm.df().values().to_vec(), dm.dom().changes().size()),
        }
    }
}

/// A law name with its outcome, as it appears in reports.
#[derive(Debug, Clone, Serialize)]
pub struct NamedReport {
    pub name: String,
    pub report: CheckReport,
}

impl NamedReport {
    pub fn new(name: impl Into<String>, report: CheckReport) -> Self {
        Self { name: name.into(), report }
    }
}
