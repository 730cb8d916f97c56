//! Concrete fields: JSONL records of class-group data, pairing with
//! resolvents, `l`-ranks, and evaluation of the derived inequalities.

mod check;
mod fetch;

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groups::Family;

pub use check::{check_pairs, unit_descriptor, CheckSummary, PairReport, SkipReason, Verdict};
pub use fetch::{
    fetch_remote, galois_label, manifest_path, FetchError, FetchManifest, FetchQuery, FileCache, Transport, CACHE_ENV,
};

#[derive(Debug, Error)]
pub enum FieldError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// One field as supplied by an external class-group oracle. Field names
/// are the JSONL keys.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldRecord {
    pub label: String,
    pub degree: u32,
    pub r1: u32,
    pub r2: u32,
    pub disc: i64,
    /// Invariant factors, each dividing the next. Over a function field,
    /// those of the Picard group's torsion.
    pub class_group: Vec<u64>,
    #[serde(with = "family_tag")]
    pub galois_closure: Family,
    pub resolvent_label: Option<String>,
    /// Number of primes above `l`.
    pub u: u32,
    pub closure_unramified_over_resolvent: bool,
    /// `ff-mu` or `ff-nomu` for function-field data; absent for number fields.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub setting: Option<String>,
}

mod family_tag {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    use crate::groups::Family;

    pub fn serialize<S: Serializer>(f: &Family, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(f.tag())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Family, D::Error> {
        let s = String::deserialize(d)?;
        Family::ALL
            .into_iter()
            .find(|f| f.tag() == s)
            .ok_or_else(|| D::Error::custom(format!("unknown galois_closure `{s}` (S3, S4, A4, D2l, SemiDirect)")))
    }
}

impl FieldRecord {
    pub fn is_function_field(&self) -> bool {
        self.setting.as_deref().is_some_and(|s| s.starts_with("ff"))
    }

    /// Checks the record invariants; the message names the first violation.
    pub fn validate(&self) -> Result<(), String> {
        if self.degree == 0 {
            return Err("degree must be positive".into());
        }
        if let Some(s) = &self.setting {
            if s != "ff-mu" && s != "ff-nomu" {
                return Err(format!("unknown setting `{s}` (ff-mu, ff-nomu)"));
            }
        }
        if !self.is_function_field() && self.r1 + 2 * self.r2 != self.degree {
            return Err(format!(
                "signature r1 + 2 r2 = {} does not match degree {}",
                self.r1 + 2 * self.r2,
                self.degree
            ));
        }
        if self.class_group.contains(&0) {
            return Err("invariant factors must be positive".into());
        }
        if let Some(w) = self.class_group.windows(2).find(|w| w[1] % w[0] != 0) {
            return Err(format!("invariant factor {} does not divide {}", w[0], w[1]));
        }
        if !(1..=self.degree).contains(&self.u) {
            return Err(format!("u = {} outside [1, {}]", self.u, self.degree));
        }
        Ok(())
    }
}

/// A rejected line, numbered from 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineError {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Parsed {
    pub records: Vec<FieldRecord>,
    pub errors: Vec<LineError>,
}

/// Parses JSONL text. Blank lines are ignored; malformed or invalid
/// lines are collected and the rest kept.
pub fn parse_str(text: &str) -> Parsed {
    let mut out = Parsed::default();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let rec = serde_json::from_str::<FieldRecord>(line)
            .map_err(|e| e.to_string())
            .and_then(|r| r.validate().map(|()| r));
        match rec {
            Ok(r) => out.records.push(r),
            Err(message) => out.errors.push(LineError { line: i + 1, message }),
        }
    }
    out
}

pub fn parse_records(path: &Path) -> Result<Parsed, FieldError> {
    let text = std::fs::read_to_string(path).map_err(|source| FieldError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(parse_str(&text))
}

/// One record per line, in order.
pub fn to_jsonl(records: &[FieldRecord]) -> String {
    records
        .iter()
        .map(|r| serde_json::to_string(r).expect("records serialize") + "\n")
        .collect()
}

/// `dim_{F_l} Cl[l]`: the number of invariant factors divisible by `l`.
pub fn rk_l(class_group: &[u64], l: u64) -> u32 {
    class_group.iter().filter(|&&d| d % l == 0).count() as u32
}

/// `K₁` with its resolvent `K₂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldPair {
    pub k1: FieldRecord,
    pub k2: FieldRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Unpaired {
    pub label: String,
    pub reason: SkipReason,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Pairing {
    pub pairs: Vec<FieldPair>,
    pub unpaired: Vec<Unpaired>,
}

/// Joins each record that names a resolvent with that resolvent. Dangling
/// links and records nobody links to are reported.
pub fn pair_resolvents(records: &[FieldRecord]) -> Pairing {
    let by_label: BTreeMap<&str, &FieldRecord> = records.iter().map(|r| (r.label.as_str(), r)).collect();
    let mut used: BTreeSet<&str> = BTreeSet::new();
    let mut out = Pairing::default();
    for r in records {
        let Some(target) = &r.resolvent_label else { continue };
        match by_label.get(target.as_str()) {
            Some(k2) => {
                used.insert(&r.label);
                used.insert(&k2.label);
                out.pairs.push(FieldPair {
                    k1: r.clone(),
                    k2: (*k2).clone(),
                });
            }
            None => out.unpaired.push(Unpaired {
                label: r.label.clone(),
                reason: SkipReason::MissingPartner,
            }),
        }
    }
    for r in records {
        if r.resolvent_label.is_none() && !used.contains(r.label.as_str()) {
            out.unpaired.push(Unpaired {
                label: r.label.clone(),
                reason: SkipReason::MissingPartner,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests;
