//! Family JSON documents and the built-in registry.
//!
//! A family document is the on-disk form of a [`FamilyCandidate`]: the
//! polynomials as text in the shared format, integers as JSON numbers, plus
//! optional metadata. The registry ships three documents embedded as data,
//! not code, so the reproduction command genuinely cross-checks the
//! constructor against independently transcribed values:
//!
//! * `bn` - the Barreto-Naehrig family (k = 12, D = 3, rho = 1);
//! * `example-k4-d2` - the k = 4, D = 2 worked example (q never integral);
//! * `example-k6-d1` - the k = 6, D = 1 worked example (q never integral).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::family::{FamilyCandidate, FamilyError};
use crate::poly::{ParsePolyError, QPoly};

/// Serialized form of a family candidate.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct FamilyDocument {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    pub k: u64,
    #[serde(rename = "D")]
    pub d: u64,
    pub t: String,
    pub r: String,
    pub q: String,
    pub y: String,
    pub h: String,
}

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unparsable polynomial in field {field}: {source}")]
    Poly {
        field: &'static str,
        source: ParsePolyError,
    },
    #[error(transparent)]
    Family(#[from] FamilyError),
}

impl FamilyDocument {
    pub fn from_candidate(c: &FamilyCandidate, name: Option<String>) -> Self {
        FamilyDocument {
            name,
            source: None,
            k: c.k,
            d: c.d,
            t: c.t.to_string(),
            r: c.r.to_string(),
            q: c.q.to_string(),
            y: c.y.to_string(),
            h: c.h.to_string(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("document serializes");
        serde_json::to_string_pretty(&value).expect("value prints")
    }

    fn poly(text: &str, field: &'static str) -> Result<QPoly, DocumentError> {
        text.parse()
            .map_err(|source| DocumentError::Poly { field, source })
    }

    /// Parses into a candidate, verifying the structural identities.
    pub fn to_candidate(&self) -> Result<FamilyCandidate, DocumentError> {
        let c = self.to_candidate_unchecked()?;
        Ok(FamilyCandidate::new(c.k, c.d, c.t, c.r, c.q, c.y, c.h)?)
    }

    /// Parses into a candidate without verifying anything, for diagnosis of
    /// suspect documents.
    pub fn to_candidate_unchecked(&self) -> Result<FamilyCandidate, DocumentError> {
        Ok(FamilyCandidate::new_unchecked(
            self.k,
            self.d,
            Self::poly(&self.t, "t")?,
            Self::poly(&self.r, "r")?,
            Self::poly(&self.q, "q")?,
            Self::poly(&self.y, "y")?,
            Self::poly(&self.h, "h")?,
        ))
    }
}

/// Names of the built-in documents.
pub fn builtin_names() -> [&'static str; 3] {
    ["bn", "example-k4-d2", "example-k6-d1"]
}

/// Fetches a built-in document by name.
pub fn builtin(name: &str) -> Option<FamilyDocument> {
    let text = match name {
        "bn" => include_str!("../data/bn.json"),
        "example-k4-d2" => include_str!("../data/example-k4-d2.json"),
        "example-k6-d1" => include_str!("../data/example-k6-d1.json"),
        _ => return None,
    };
    Some(FamilyDocument::from_json(text).expect("embedded documents are valid"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::validate;

    #[test]
    fn builtins_parse_and_verify() {
        for name in builtin_names() {
            let doc = builtin(name).unwrap();
            let candidate = doc.to_candidate().unwrap_or_else(|e| {
                panic!("builtin {name} must satisfy the structural identities: {e}")
            });
            assert_eq!(candidate.k, doc.k);
        }
        assert!(builtin("no-such-family").is_none());
    }

    #[test]
    fn bn_is_complete_and_ideal() {
        let c = builtin("bn").unwrap().to_candidate().unwrap();
        let diag = validate(&c);
        assert!(diag.is_ideal);
    }

    #[test]
    fn document_round_trip() {
        let doc = builtin("bn").unwrap();
        let text = doc.to_json();
        let back = FamilyDocument::from_json(&text).unwrap();
        assert_eq!(doc, back);
        // keys are sorted for stable diffs
        let t_pos = text.find("\"t\"").unwrap();
        let r_pos = text.find("\"r\"").unwrap();
        let q_pos = text.find("\"q\"").unwrap();
        assert!(q_pos < r_pos && r_pos < t_pos);
    }

    #[test]
    fn candidate_to_document_round_trip() {
        let doc = builtin("example-k4-d2").unwrap();
        let c = doc.to_candidate().unwrap();
        let back = FamilyDocument::from_candidate(&c, doc.name.clone());
        assert_eq!(back.t, doc.t);
        assert_eq!(back.r, doc.r);
        assert_eq!(back.q, doc.q);
        assert_eq!(back.y, doc.y);
        assert_eq!(back.h, doc.h);
    }
}
