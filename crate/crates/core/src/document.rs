//! The JSON file format for additive systems.
//!
//! ```json
//! {
//!   "version": "1",
//!   "sets": [
//!     {"type": "explicit", "elements": [0, 1]},
//!     {"type": "dilated", "factor": 3, "inner": {"type": "explicit", "elements": [0, 1, 2]}},
//!     {"type": "ray", "modulus": 6}
//!   ],
//!   "meta": {"name": "example"}
//! }
//! ```
//!
//! Integers are JSON numbers of any size (decimal strings are accepted too).
//! An optional `"tail": {"prefix": [2], "tail": "repeat-last"}` continues the
//! system with British-number-system blocks after the listed sets.

use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{Map, Value};
use thiserror::Error;

use crate::radix::{IndexSet, RadixError, RadixSeq, RadixTail};
use crate::sets::{DigitSet, SetError, SetExpr};
use crate::system::{AdditiveSystem, SystemError};
use crate::Nat;

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("missing \"version\" field")]
    MissingVersion,
    #[error("unsupported format version {0:?}; this build reads version {FORMAT_VERSION}")]
    UnsupportedVersion(String),
    #[error("format version {version}: {message}")]
    Invalid { version: String, message: String },
    #[error(transparent)]
    Set(#[from] SetError),
    #[error(transparent)]
    Radix(#[from] RadixError),
    #[error(transparent)]
    System(#[from] SystemError),
}

/// A natural number in JSON: an integer literal of any size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsonNat(pub Nat);

impl Serialize for JsonNat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let n = serde_json::Number::from_str(&self.0.to_string()).map_err(serde::ser::Error::custom)?;
        n.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for JsonNat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = match Value::deserialize(deserializer)? {
            Value::Number(n) => n.to_string(),
            Value::String(s) => s,
            other => return Err(D::Error::custom(format!("expected a nonnegative integer, found {other}"))),
        };
        Nat::from_str(text.trim())
            .map(JsonNat)
            .map_err(|_| D::Error::custom(format!("expected a nonnegative integer, found {text}")))
    }
}

impl From<&Nat> for JsonNat {
    fn from(n: &Nat) -> Self {
        JsonNat(n.clone())
    }
}

fn nats(xs: &[Nat]) -> Vec<JsonNat> {
    xs.iter().map(JsonNat::from).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RadixDescriptor {
    pub prefix: Vec<JsonNat>,
    pub tail: RadixTail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct IndexDescriptor {
    pub included: Vec<usize>,
    pub window: usize,
    #[serde(default)]
    pub tail_included: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum SetDescriptor {
    Explicit { elements: Vec<JsonNat> },
    Ray { modulus: JsonNat },
    Dilated { factor: JsonNat, inner: Box<SetDescriptor> },
    BnsSubsum { radices: RadixDescriptor, indices: IndexDescriptor },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDocument {
    pub version: String,
    pub sets: Vec<SetDescriptor>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail: Option<RadixDescriptor>,
    #[serde(default, skip_serializing_if = "Map::is_empty")]
    pub meta: Map<String, Value>,
}

impl RadixDescriptor {
    pub fn from_radices(r: &RadixSeq) -> Self {
        RadixDescriptor { prefix: nats(r.prefix()), tail: r.tail() }
    }

    pub fn to_radices(&self) -> Result<RadixSeq, RadixError> {
        RadixSeq::new(self.prefix.iter().map(|n| n.0.clone()).collect(), self.tail)
    }
}

impl SetDescriptor {
    pub fn from_set(s: &SetExpr) -> Self {
        match s {
            SetExpr::Explicit(d) => SetDescriptor::Explicit { elements: nats(d.elements()) },
            SetExpr::Ray(m) => SetDescriptor::Ray { modulus: m.into() },
            SetExpr::Dilated(g, inner) => {
                SetDescriptor::Dilated { factor: g.into(), inner: Box::new(SetDescriptor::from_set(inner)) }
            }
            SetExpr::BnsSubsum(r, idx) => SetDescriptor::BnsSubsum {
                radices: RadixDescriptor::from_radices(r),
                indices: IndexDescriptor {
                    included: idx.included().to_vec(),
                    window: idx.window(),
                    tail_included: idx.tail_included(),
                },
            },
        }
    }

    pub fn to_set(&self) -> Result<SetExpr, DocumentError> {
        Ok(match self {
            SetDescriptor::Explicit { elements } => {
                SetExpr::Explicit(DigitSet::from_naturals(elements.iter().map(|n| n.0.clone()).collect())?)
            }
            SetDescriptor::Ray { modulus } => SetExpr::ray(modulus.0.clone())?,
            SetDescriptor::Dilated { factor, inner } => SetExpr::dilated(factor.0.clone(), inner.to_set()?)?,
            SetDescriptor::BnsSubsum { radices, indices } => SetExpr::BnsSubsum(
                radices.to_radices()?,
                IndexSet::new(indices.included.clone(), indices.window, indices.tail_included)?,
            ),
        })
    }
}

impl SystemDocument {
    pub fn from_system(system: &AdditiveSystem) -> Self {
        SystemDocument {
            version: FORMAT_VERSION.to_string(),
            sets: system.prefix().iter().map(SetDescriptor::from_set).collect(),
            tail: system.tail().map(RadixDescriptor::from_radices),
            meta: Map::new(),
        }
    }

    pub fn to_system(&self) -> Result<AdditiveSystem, DocumentError> {
        let sets = self.sets.iter().map(SetDescriptor::to_set).collect::<Result<Vec<_>, _>>()?;
        let tail = self.tail.as_ref().map(RadixDescriptor::to_radices).transpose()?;
        Ok(AdditiveSystem::new(sets, tail)?)
    }

    /// Parses a document, checking the version before the rest of the structure.
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let value: Value = serde_json::from_str(text)?;
        let version = match value.get("version") {
            Some(Value::String(v)) => v.clone(),
            Some(Value::Number(n)) => n.to_string(),
            _ => return Err(DocumentError::MissingVersion),
        };
        if version != FORMAT_VERSION {
            return Err(DocumentError::UnsupportedVersion(version));
        }
        serde_json::from_str(text).map_err(|e| DocumentError::Invalid { version, message: e.to_string() })
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }
}

/// Reads an additive system from JSON text.
pub fn parse_system(text: &str) -> Result<AdditiveSystem, DocumentError> {
    SystemDocument::parse(text)?.to_system()
}

/// Writes an additive system as pretty-printed JSON.
pub fn system_to_json(system: &AdditiveSystem) -> String {
    SystemDocument::from_system(system).to_json_pretty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::to_u64s;

    #[test]
    fn reads_every_set_kind() {
        let text = r#"{
            "version": "1",
            "sets": [
                {"type": "explicit", "elements": [0, 1]},
                {"type": "dilated", "factor": 2, "inner": {"type": "explicit", "elements": [0, 1, 2]}},
                {"type": "bns-subsum", "radices": {"prefix": [2], "tail": "repeat-last"},
                 "indices": {"included": [3], "window": 3}},
                {"type": "ray", "modulus": 16}
            ],
            "meta": {"note": "hand written"}
        }"#;
        let doc = SystemDocument::parse(text).unwrap();
        assert_eq!(doc.meta["note"], "hand written");
        let sys = doc.to_system().unwrap();
        assert_eq!(sys.len(), Some(4));
        let b = Nat::from(40u32);
        assert_eq!(to_u64s(&sys.set(2).unwrap().elements_below(&b)), vec![0, 2, 4]);
        assert_eq!(to_u64s(&sys.set(3).unwrap().elements_below(&b)), vec![0, 4]);
        assert_eq!(to_u64s(&sys.set(4).unwrap().elements_below(&b)), vec![0, 16, 32]);
    }

    #[test]
    fn huge_integers_survive() {
        let big = "123456789012345678901234567890123456789";
        let text = format!(r#"{{"version":"1","sets":[{{"type":"explicit","elements":[0,{big}]}}]}}"#);
        let sys = parse_system(&text).unwrap();
        assert_eq!(sys.set(1).unwrap().min_positive().unwrap().to_string(), big);
        assert!(system_to_json(&sys).contains(big));
        let quoted = text.replace(big, &format!("\"{big}\""));
        assert_eq!(parse_system(&quoted).unwrap(), sys);
    }

    #[test]
    fn tail_roundtrips() {
        let sys =
            AdditiveSystem::new(vec![SetExpr::explicit([0, 1, 2]).unwrap()], Some(RadixSeq::repeating([2]).unwrap()))
                .unwrap();
        assert_eq!(parse_system(&system_to_json(&sys)).unwrap(), sys);
    }

    #[test]
    fn version_and_tag_errors() {
        assert!(matches!(
            SystemDocument::parse(r#"{"version":"2","sets":[]}"#),
            Err(DocumentError::UnsupportedVersion(v)) if v == "2"
        ));
        assert!(matches!(SystemDocument::parse(r#"{"sets":[]}"#), Err(DocumentError::MissingVersion)));
        let err = SystemDocument::parse(r#"{"version":"1","sets":[{"type":"cone","apex":3}]}"#).unwrap_err();
        let msg = err.to_string();
        assert!(msg.starts_with("format version 1:"), "{msg}");
        assert!(msg.contains("cone"), "{msg}");
    }

    #[test]
    fn rejects_bad_sets() {
        assert!(matches!(
            parse_system(r#"{"version":"1","sets":[{"type":"explicit","elements":[1,2]}]}"#),
            Err(DocumentError::Set(SetError::MissingZero))
        ));
        assert!(parse_system(r#"{"version":"1","sets":[{"type":"explicit","elements":[0,-1]}]}"#).is_err());
        assert!(matches!(
            parse_system(r#"{"version":"1","sets":[{"type":"explicit","elements":[0]}]}"#),
            Err(DocumentError::System(SystemError::SetTooSmall { index: 1 }))
        ));
    }
}
