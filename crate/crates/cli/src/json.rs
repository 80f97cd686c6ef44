//! The JSON model and function-pair file formats.

use std::collections::BTreeMap;

use epiforget::{Atom, Clause, ClauseSet, ForgettingFunctionPair, KripkeModel, PointedModel};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelJson {
    pub worlds: Vec<String>,
    #[serde(default)]
    pub relation: Vec<(String, String)>,
    #[serde(default)]
    pub valuation: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<String>,
}

impl ModelJson {
    pub fn parse(text: &str, source: &str) -> Result<ModelJson, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("{source}: {e}")))
    }

    /// Validates the declared worlds and atom names and builds the model.
    pub fn to_model(&self) -> Result<KripkeModel, CliError> {
        let mut valuation = Vec::with_capacity(self.valuation.len());
        for (w, names) in &self.valuation {
            let atoms = names
                .iter()
                .map(|a| Atom::new(a))
                .collect::<epiforget::Result<Vec<Atom>>>()?;
            valuation.push((w.clone(), atoms));
        }
        let model = KripkeModel::new(self.worlds.iter().cloned(), self.relation.iter().cloned(), valuation)?;
        if let Some(p) = &self.point {
            model.require_world(p)?;
        }
        Ok(model)
    }

    /// The model at `point`, or at the file's own point when `point` is `None`.
    pub fn to_pointed(&self, point: Option<&str>) -> Result<PointedModel, CliError> {
        let model = self.to_model()?;
        let label = point
            .or(self.point.as_deref())
            .ok_or_else(|| CliError::Input("no point given: set \"point\" in the model or pass --point".into()))?;
        Ok(PointedModel::new(model, label)?)
    }

    pub fn from_model(m: &KripkeModel, point: Option<&str>) -> ModelJson {
        ModelJson {
            worlds: m.labels().to_vec(),
            relation: m
                .edges()
                .map(|(a, b)| (m.label(a).to_string(), m.label(b).to_string()))
                .collect(),
            valuation: (0..m.len())
                .map(|w| {
                    let atoms = m.valuation(w).iter().map(|a| a.name().to_string()).collect();
                    (m.label(w).to_string(), atoms)
                })
                .collect(),
            point: point.map(str::to_string),
        }
    }
}

/// `{"f1": {world: clause}, "f2": {world: clause}}` with clauses in text form.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairJson {
    pub f1: BTreeMap<String, String>,
    pub f2: BTreeMap<String, String>,
}

impl PairJson {
    pub fn parse(text: &str, source: &str) -> Result<PairJson, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("{source}: {e}")))
    }

    pub fn to_pair(&self, first: &ClauseSet, second: &ClauseSet) -> Result<ForgettingFunctionPair, CliError> {
        let read = |map: &BTreeMap<String, String>| -> Result<BTreeMap<String, Clause>, CliError> {
            map.iter()
                .map(|(w, d)| Ok((w.clone(), d.parse::<Clause>()?)))
                .collect()
        };
        Ok(ForgettingFunctionPair::new(
            first.clone(),
            second.clone(),
            read(&self.f1)?,
            read(&self.f2)?,
        ))
    }
}
