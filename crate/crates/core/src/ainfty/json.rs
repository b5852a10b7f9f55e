//! JSON form of categories, algebras and twisted complexes.
//!
//! ```json
//! {
//!   "objects": ["X", "Y"],
//!   "generators": [{"name": "f", "degree": 0, "source": "X", "target": "Y"}],
//!   "operations": [{"inputs": ["idX", "f"], "output": {"f": "1"}}],
//!   "identities": {"X": {"idX": "1"}},
//!   "twisted_complexes": [{"name": "T", "family": [{"index": 0, "object": "X"}],
//!                          "differentials": [{"from": 0, "to": 1, "value": {"f": "1"}}]}]
//! }
//! ```
//!
//! Without `objects` the document describes an algebra: one object named
//! `*`, and `source`/`target` may be omitted.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{AInftyCategory, AInftyError, Generator, TwistedComplex, Vector};
use crate::rational;

const ALGEBRA_OBJECT: &str = "*";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AInftyDocument {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub objects: Vec<String>,
    pub generators: Vec<GeneratorDoc>,
    #[serde(default)]
    pub operations: Vec<OperationDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub identities: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub twisted_complexes: Vec<TwistedComplexDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorDoc {
    pub name: String,
    pub degree: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperationDoc {
    pub inputs: Vec<String>,
    pub output: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistedComplexDoc {
    pub name: String,
    pub family: Vec<FamilyEntry>,
    #[serde(default)]
    pub differentials: Vec<DifferentialDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyEntry {
    pub index: i64,
    pub object: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DifferentialDoc {
    pub from: i64,
    pub to: i64,
    pub value: BTreeMap<String, String>,
}

impl AInftyDocument {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    fn object_names(&self) -> Vec<String> {
        if self.objects.is_empty() {
            vec![ALGEBRA_OBJECT.to_string()]
        } else {
            self.objects.clone()
        }
    }

    pub fn to_category(&self) -> Result<AInftyCategory, AInftyError> {
        let objects = self.object_names();
        let object = |name: &Option<String>| -> Result<usize, AInftyError> {
            let name = name.as_deref().unwrap_or(ALGEBRA_OBJECT);
            objects.iter().position(|o| o == name).ok_or_else(|| AInftyError::UnknownObject(name.to_string()))
        };
        let generators = self
            .generators
            .iter()
            .map(|g| {
                Ok(Generator {
                    name: g.name.clone(),
                    source: object(&g.source)?,
                    target: object(&g.target)?,
                    degree: g.degree,
                })
            })
            .collect::<Result<Vec<_>, AInftyError>>()?;
        let index: BTreeMap<&str, usize> = generators.iter().enumerate().map(|(i, g)| (g.name.as_str(), i)).collect();
        let lookup = |n: &str| index.get(n).copied().ok_or_else(|| AInftyError::UnknownGenerator(n.to_string()));
        let vector = |m: &BTreeMap<String, String>| -> Result<Vector, AInftyError> {
            let mut v = Vector::new();
            for (name, coeff) in m {
                let c = rational::parse(coeff).map_err(|_| AInftyError::BadCoefficient(coeff.clone()))?;
                super::add_to(&mut v, lookup(name)?, &c);
            }
            Ok(v)
        };
        let ops = self
            .operations
            .iter()
            .map(|op| {
                let inputs = op.inputs.iter().map(|n| lookup(n)).collect::<Result<Vec<_>, _>>()?;
                Ok((inputs, vector(&op.output)?))
            })
            .collect::<Result<Vec<_>, AInftyError>>()?;
        let identities = self
            .identities
            .iter()
            .map(|(o, v)| Ok((object(&Some(o.clone()))?, vector(v)?)))
            .collect::<Result<BTreeMap<_, _>, AInftyError>>()?;
        AInftyCategory::new(objects, generators, ops, identities)
    }

    /// Twisted complexes declared in the document, validated against `cat`.
    pub fn twisted(&self, cat: &AInftyCategory) -> Result<Vec<TwistedComplex>, AInftyError> {
        self.twisted_complexes
            .iter()
            .map(|doc| {
                let mut family = BTreeMap::new();
                for e in &doc.family {
                    let o = cat.object_index(&e.object).ok_or_else(|| AInftyError::UnknownObject(e.object.clone()))?;
                    family.insert(e.index, o);
                }
                let mut diffs = BTreeMap::new();
                for d in &doc.differentials {
                    let mut v = Vector::new();
                    for (name, coeff) in &d.value {
                        let g = cat.generator_index(name).ok_or_else(|| AInftyError::UnknownGenerator(name.clone()))?;
                        let c = rational::parse(coeff).map_err(|_| AInftyError::BadCoefficient(coeff.clone()))?;
                        super::add_to(&mut v, g, &c);
                    }
                    diffs.insert((d.from, d.to), v);
                }
                TwistedComplex::new(doc.name.clone(), family, diffs, cat)
            })
            .collect()
    }

    /// Exports a category; algebras (one object named `*`) omit endpoints.
    pub fn from_category(cat: &AInftyCategory) -> Self {
        let algebra = cat.objects() == [ALGEBRA_OBJECT];
        let endpoint = |o: usize| (!algebra).then(|| cat.objects()[o].clone());
        let vector = |v: &Vector| -> BTreeMap<String, String> {
            v.iter().map(|(g, c)| (cat.generator(*g).name.clone(), rational::to_canonical(c))).collect()
        };
        Self {
            objects: if algebra { Vec::new() } else { cat.objects().to_vec() },
            generators: cat
                .generators()
                .iter()
                .map(|g| GeneratorDoc {
                    name: g.name.clone(),
                    degree: g.degree,
                    source: endpoint(g.source),
                    target: endpoint(g.target),
                })
                .collect(),
            operations: cat
                .operations()
                .map(|(inputs, out)| OperationDoc { inputs: cat.names(inputs), output: vector(out) })
                .collect(),
            identities: cat.identities().iter().map(|(o, v)| (cat.objects()[*o].clone(), vector(v))).collect(),
            twisted_complexes: Vec::new(),
        }
    }
}
