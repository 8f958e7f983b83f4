//! JSON input formats for groups and origamis, and JSON views of reports.
//!
//! Output values are built as [`serde_json::Value`], whose maps keep keys
//! sorted, so serialized reports are stable.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::families::{FamilySpec, MaximalClass, SearchOutcome, TowerReport};
use crate::group::{Caps, Group};
use crate::origami::{CylinderDecomposition, Origami};
use crate::perm::Perm;
use crate::presentation::{parse_relation, Presentation};
use crate::props::PropertyCReport;

/// A group as read from JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupJson {
    /// Generators in 1-based cycle notation. `names` label them for words;
    /// they default to `g1, g2, ...`.
    Permutation {
        degree: usize,
        generators: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        names: Option<Vec<String>>,
    },
    /// Realized by coset enumeration.
    Presentation {
        generators: Vec<String>,
        relators: Vec<String>,
    },
    Family(FamilyJson),
}

/// A family name with its integer parameters, e.g. `{"name":"strata","p":2,"n":3,"k":1}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyJson {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<i64>,
}

pub const FAMILY_NAMES: [&str; 10] = [
    "strata",
    "dihedral",
    "quaternion",
    "semidihedral",
    "sylow_wreath",
    "counterexample",
    "wollmilchsau",
    "alternating",
    "semidirect",
    "power_closed_example",
];

impl FamilyJson {
    pub fn spec(&self) -> Result<FamilySpec> {
        let need = |v: Option<u32>, key: &str| {
            v.ok_or_else(|| Error::Input(format!("family `{}` needs `{key}`", self.name)))
        };
        let prime = || {
            self.p
                .ok_or_else(|| Error::Input(format!("family `{}` needs `p`", self.name)))
        };
        let maximal = |kind| {
            Ok(FamilySpec::MaximalClass {
                kind,
                n: need(self.n, "n")?,
            })
        };
        match self.name.as_str() {
            "strata" => Ok(FamilySpec::Strata {
                p: prime()?,
                n: need(self.n, "n")?,
                k: need(self.k, "k")?,
            }),
            "dihedral" => maximal(MaximalClass::Dihedral),
            "quaternion" => maximal(MaximalClass::Quaternion),
            "semidihedral" => maximal(MaximalClass::Semidihedral),
            "sylow_wreath" => Ok(FamilySpec::SylowWreath {
                p: prime()?,
                r: need(self.r, "r")?,
            }),
            "counterexample" => Ok(FamilySpec::Counterexample { p: prime()? }),
            "wollmilchsau" => Ok(FamilySpec::Wollmilchsau {
                n: self.n.unwrap_or(1),
            }),
            "alternating" => Ok(FamilySpec::Alternating {
                n: self.n.unwrap_or(5) as usize,
            }),
            "semidirect" => Ok(FamilySpec::Semidirect {
                p: prime()?,
                l: need(self.l, "l")?,
                m: need(self.m, "m")?,
                a: self
                    .a
                    .ok_or_else(|| Error::Input("family `semidirect` needs `a`".into()))?,
            }),
            "power_closed_example" => Ok(FamilySpec::PowerClosedExample),
            other => Err(Error::Input(format!(
                "unknown family `{other}`; expected one of {}",
                FAMILY_NAMES.join(", ")
            ))),
        }
    }
}

/// Names used for the designated pair of a family in words.
fn pair_names(spec: &FamilySpec) -> [&'static str; 2] {
    match spec {
        FamilySpec::Strata { .. }
        | FamilySpec::MaximalClass { .. }
        | FamilySpec::Semidirect { .. } => ["r", "s"],
        FamilySpec::Alternating { .. } => ["a", "b"],
        _ => ["x", "y"],
    }
}

/// A realized group with the names its words are read over.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub group: Group,
    pub names: Vec<String>,
    pub images: Vec<Perm>,
    /// Designated generating pair, when the source defines one.
    pub pair: Option<(Perm, Perm)>,
    pub alternate: Option<(Perm, Perm)>,
}

impl Resolved {
    /// Read an element given in cycle notation (`"(1,2)(3,4)"`, `"()"`) or
    /// as a word over the generator names (`"r^2*s"`).
    pub fn element(&self, text: &str) -> Result<Perm> {
        if text.trim_start().starts_with('(') {
            let p = Perm::parse_with_degree(text, self.group.degree())?;
            if !self.group.contains(&p) {
                return Err(Error::NotMember);
            }
            Ok(p)
        } else {
            let word = parse_relation(text, &self.names)?;
            Ok(word.evaluate(&self.images, self.group.degree()))
        }
    }
}

fn default_names(count: usize) -> Vec<String> {
    (1..=count).map(|i| format!("g{i}")).collect()
}

impl GroupJson {
    pub fn resolve(&self, caps: Caps) -> Result<Resolved> {
        match self {
            GroupJson::Permutation {
                degree,
                generators,
                names,
            } => {
                let images = generators
                    .iter()
                    .map(|s| Perm::parse_with_degree(s, *degree))
                    .collect::<Result<Vec<_>>>()?;
                let names = match names {
                    Some(n) if n.len() == images.len() => n.clone(),
                    Some(n) => {
                        return Err(Error::Input(format!(
                            "{} names for {} generators",
                            n.len(),
                            images.len()
                        )))
                    }
                    None => default_names(images.len()),
                };
                let group = Group::with_caps(*degree, images.clone(), caps)?;
                let pair = (images.len() == 2).then(|| (images[0].clone(), images[1].clone()));
                Ok(Resolved {
                    group,
                    names,
                    images,
                    pair,
                    alternate: None,
                })
            }
            GroupJson::Presentation {
                generators,
                relators,
            } => {
                let pres = Presentation::from_parts(generators, relators)?;
                let (group, images) = Group::from_presentation(&pres, caps)?;
                let pair = (images.len() == 2).then(|| (images[0].clone(), images[1].clone()));
                Ok(Resolved {
                    group,
                    names: generators.clone(),
                    images,
                    pair,
                    alternate: None,
                })
            }
            GroupJson::Family(family) => {
                let spec = family.spec()?;
                let inst = spec.build(caps)?;
                let (names, images) = match &inst.pair {
                    Some((x, y)) => (
                        pair_names(&spec).iter().map(|s| s.to_string()).collect(),
                        vec![x.clone(), y.clone()],
                    ),
                    None => (
                        default_names(inst.group.generators().len()),
                        inst.group.generators().to_vec(),
                    ),
                };
                Ok(Resolved {
                    group: inst.group,
                    names,
                    images,
                    pair: inst.pair,
                    alternate: inst.alternate,
                })
            }
        }
    }
}

/// An origami as read from JSON. Missing `x`/`y` select the designated pair
/// of the group source.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrigamiJson {
    pub group: GroupJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<String>,
}

impl OrigamiJson {
    fn build(&self, resolved: &Resolved) -> Result<Origami> {
        let (x, y) = match (&self.x, &self.y) {
            (Some(x), Some(y)) => (resolved.element(x)?, resolved.element(y)?),
            (None, None) => resolved
                .pair
                .clone()
                .ok_or_else(|| Error::Input("origami needs `x` and `y`".into()))?,
            _ => return Err(Error::Input("give both `x` and `y` or neither".into())),
        };
        Origami::new(resolved.group.clone(), x, y)
    }

    pub fn resolve(&self, caps: Caps) -> Result<Origami> {
        self.build(&self.group.resolve(caps)?)
    }
}

/// Resolve several origamis, realizing each distinct group source once so
/// that origamis over the same source share one realization.
pub fn resolve_origamis(items: &[OrigamiJson], caps: Caps) -> Result<Vec<Origami>> {
    let mut realized: Vec<(&GroupJson, Resolved)> = Vec::new();
    let mut out = Vec::with_capacity(items.len());
    for item in items {
        let idx = match realized.iter().position(|(g, _)| **g == item.group) {
            Some(i) => i,
            None => {
                realized.push((&item.group, item.group.resolve(caps)?));
                realized.len() - 1
            }
        };
        out.push(item.build(&realized[idx].1)?);
    }
    Ok(out)
}

/// Read a group from either group JSON or origami JSON.
pub fn parse_group_source(text: &str) -> Result<GroupJson> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))?;
    let group = match value.get("group") {
        Some(g) => g.clone(),
        None => value,
    };
    serde_json::from_value(group).map_err(|e| Error::Input(e.to_string()))
}

pub fn parse_origami(text: &str) -> Result<OrigamiJson> {
    serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))
}

/// Integers above `u64::MAX` become decimal strings.
pub fn big(n: u128) -> Value {
    match u64::try_from(n) {
        Ok(v) => json!(v),
        Err(_) => json!(n.to_string()),
    }
}

pub fn origami_json(o: &Origami) -> Value {
    json!({
        "degree": o.group().degree(),
        "x": o.x().to_string(),
        "y": o.y().to_string(),
    })
}

pub fn stratum_json(o: &Origami) -> Value {
    let data = o.singularity_data();
    json!({
        "squares": big(o.size()),
        "commutator_order": data.multiplicity,
        "singularities": big(data.count),
        "genus": big(data.genus),
        "stratum": data.stratum.to_string(),
    })
}

pub fn cylinders_json(d: &CylinderDecomposition) -> Value {
    let circumferences: Vec<usize> = d.cylinders.iter().map(|c| c.circumference).collect();
    json!({
        "direction": d.direction.as_str(),
        "count": d.cylinders.len(),
        "circumferences": circumferences,
    })
}

pub fn property_c_json(r: &PropertyCReport) -> Value {
    let witnesses: Vec<Value> = r
        .witnesses
        .iter()
        .map(|w| {
            json!({
                "x": w.x.to_string(),
                "y": w.y.to_string(),
                "commutator_order": w.commutator_order,
            })
        })
        .collect();
    json!({
        "holds": r.holds,
        "orders": r.orders_found.iter().collect::<Vec<_>>(),
        "pairs_examined": r.pairs_examined,
        "strategy": r.strategy.as_str(),
        "witnesses": witnesses,
    })
}

pub fn tower_json(r: &TowerReport) -> Value {
    let levels: Vec<Value> = r
        .levels
        .iter()
        .map(|l| {
            json!({
                "level": l.level,
                "order": big(l.order),
                "commutator_order": l.commutator_order,
                "singularities": big(l.singularities),
                "stratum": l.stratum.to_string(),
            })
        })
        .collect();
    json!({
        "tower": r.tower.name(),
        "trend": r.trend.as_str(),
        "levels": levels,
    })
}

pub fn search_json(o: &SearchOutcome) -> Value {
    match o {
        SearchOutcome::Found {
            x,
            y,
            iteration,
            orders,
        } => json!({
            "found": true,
            "x": x.to_string(),
            "y": y.to_string(),
            "iteration": iteration,
            "orders": [orders.0, orders.1],
        }),
        SearchOutcome::NotFound { iterations } => json!({
            "found": false,
            "iterations": iterations,
        }),
    }
}
