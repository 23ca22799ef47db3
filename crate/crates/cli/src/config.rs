//! Job configuration files.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;
use thiserror::Error;

use bbcrystal::{CartanDatum, CrystalError, IndexSequence, Weight};

/// A configuration problem, tagged with the offending field.
#[derive(Debug, Error)]
#[error("{path}: {message}")]
pub struct ConfigError {
    pub path: String,
    pub message: String,
}

impl ConfigError {
    pub fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        ConfigError {
            path: path.into(),
            message: message.into(),
        }
    }

    fn crystal(path: &str, e: CrystalError) -> Self {
        ConfigError::new(path, e.to_string())
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub indices: Vec<String>,
    pub cartan: Vec<Vec<i64>>,
    pub symmetrizers: Vec<i64>,
    #[serde(default)]
    pub lambda: Option<BTreeMap<String, i64>>,
    #[serde(default)]
    pub sequence: Option<Vec<String>>,
    pub height: u32,
    #[serde(default)]
    pub mu: Option<BTreeMap<String, i64>>,
}

/// A validated configuration.
#[derive(Debug, Clone)]
pub struct Job {
    pub datum: Arc<CartanDatum>,
    pub seq: IndexSequence,
    pub lambda: Option<Weight>,
    pub mu: Option<Weight>,
    pub height: u32,
}

impl Job {
    pub fn lambda(&self) -> Result<&Weight, ConfigError> {
        self.lambda
            .as_ref()
            .ok_or_else(|| ConfigError::new("lambda", "required by this target or suite"))
    }

    pub fn mu(&self) -> Result<&Weight, ConfigError> {
        self.mu
            .as_ref()
            .ok_or_else(|| ConfigError::new("mu", "required by this suite"))
    }
}

fn weight(
    datum: &CartanDatum,
    field: &str,
    coeffs: &BTreeMap<String, i64>,
) -> Result<Weight, ConfigError> {
    let mut lam = Vec::new();
    for (id, &k) in coeffs {
        let i = datum
            .index_of(id)
            .map_err(|e| ConfigError::crystal(&format!("{field}.{id}"), e))?;
        lam.push((i, k));
    }
    let w = Weight::from_parts(lam, []);
    datum
        .require_dominant(&w)
        .map_err(|e| ConfigError::crystal(field, e))?;
    Ok(w)
}

impl JobConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        serde_json::from_str(text).map_err(|e| ConfigError::new("<config>", e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::new("--config", format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn validate(self) -> Result<Job, ConfigError> {
        let datum = CartanDatum::with_ids(self.indices.clone(), self.cartan, self.symmetrizers)
            .map_err(|e| {
                let path = match &e {
                    CrystalError::LengthMismatch { .. }
                    | CrystalError::NonPositiveSymmetrizer { .. } => "symmetrizers",
                    CrystalError::DuplicateIndex(_) => "indices",
                    _ => "cartan",
                };
                ConfigError::crystal(path, e)
            })?;
        let seq = match &self.sequence {
            Some(ids) => IndexSequence::from_ids(&datum, ids)
                .map_err(|e| ConfigError::crystal("sequence", e))?,
            None => IndexSequence::standard(&datum),
        };
        let lambda = self
            .lambda
            .as_ref()
            .map(|m| weight(&datum, "lambda", m))
            .transpose()?;
        let mu = self
            .mu
            .as_ref()
            .map(|m| weight(&datum, "mu", m))
            .transpose()?;
        Ok(Job {
            datum: Arc::new(datum),
            seq,
            lambda,
            mu,
            height: self.height,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_paths() {
        let bad = r#"{"indices":["i"],"cartan":[[1]],"symmetrizers":[1],"height":2}"#;
        assert_eq!(
            JobConfig::parse(bad).unwrap().validate().unwrap_err().path,
            "cartan"
        );
        let bad =
            r#"{"indices":["i"],"cartan":[[2]],"symmetrizers":[1],"height":2,"lambda":{"j":1}}"#;
        assert_eq!(
            JobConfig::parse(bad).unwrap().validate().unwrap_err().path,
            "lambda.j"
        );
        let bad =
            r#"{"indices":["i"],"cartan":[[2]],"symmetrizers":[1],"height":2,"lambda":{"i":-1}}"#;
        assert_eq!(
            JobConfig::parse(bad).unwrap().validate().unwrap_err().path,
            "lambda"
        );
        let bad = r#"{"indices":["i","j"],"cartan":[[2,0],[0,2]],"symmetrizers":[1,1],"height":2,"sequence":["i"]}"#;
        assert_eq!(
            JobConfig::parse(bad).unwrap().validate().unwrap_err().path,
            "sequence"
        );
        assert!(JobConfig::parse(r#"{"indices":[]"#).is_err());
    }
}
