//! Optional client for a JSON field-database API. Nothing else in the
//! crate depends on it; tests drive it through an in-memory [`Transport`].
//!
//! Requests go to `{endpoint}/nf_fields/` with `degree`, `galois_label`,
//! `_sort=disc_abs`, `_format=json`, `_limit` and `_offset`; responses
//! are `{"data": [...]}` with rows carrying `label`, `degree`, `r2`,
//! `disc_abs`, `disc_sign`, `class_group` and `galois_label`. Rows may
//! also carry `u`, `resolvent_label` and
//! `closure_unramified_over_resolvent`; a row without `u` cannot become a
//! record and is listed in the manifest instead.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use super::{to_jsonl, FieldRecord};
use crate::groups::Family;

/// Overrides the on-disk response cache directory.
pub const CACHE_ENV: &str = "REFLECTLAB_CACHE";

const PAGE: usize = 100;

#[derive(Debug, Error)]
pub enum FetchError {
    #[error("no database label for {family} fields of degree {degree}")]
    Unsupported { family: Family, degree: u32 },
    #[error("request {url} failed: {message}")]
    Http { url: String, message: String },
    #[error("cannot decode response from {url}: {message}")]
    Decode { url: String, message: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> FetchError + '_ {
    move |source| FetchError::Io {
        path: path.display().to_string(),
        source,
    }
}

/// Performs one GET and returns the body.
pub trait Transport {
    fn get(&mut self, url: &str) -> Result<String, String>;
}

/// Raw responses keyed by the SHA-256 of the request URL.
#[derive(Clone, Debug)]
pub struct FileCache {
    dir: PathBuf,
}

impl FileCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        FileCache { dir: dir.into() }
    }

    /// `$REFLECTLAB_CACHE` if set, else `default`.
    pub fn from_env(default: impl Into<PathBuf>) -> Self {
        match std::env::var_os(CACHE_ENV) {
            Some(d) if !d.is_empty() => FileCache::new(d),
            _ => FileCache::new(default),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, url: &str) -> PathBuf {
        self.dir.join(format!("{}.json", hex::encode(Sha256::digest(url.as_bytes()))))
    }

    pub fn get(&self, url: &str) -> Option<String> {
        std::fs::read_to_string(self.path(url)).ok()
    }

    pub fn put(&self, url: &str, body: &str) -> Result<(), FetchError> {
        std::fs::create_dir_all(&self.dir).map_err(io_err(&self.dir))?;
        let path = self.path(url);
        // write then rename, so a reader never sees half a response
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, body).map_err(io_err(&tmp))?;
        std::fs::rename(&tmp, &path).map_err(io_err(&path))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FetchQuery {
    pub galois: Family,
    pub degree: u32,
    pub disc_max: Option<u64>,
    pub limit: usize,
}

impl FetchQuery {
    /// The prime whose rank the records are meant for.
    pub fn ell(&self) -> u32 {
        match self.galois {
            Family::S3 => 3,
            Family::S4 | Family::A4 => 2,
            Family::D2l | Family::SemiDirect => self.degree,
        }
    }
}

/// Transitive-group label of the degree-`degree` field in each family:
/// the field itself or its resolvent.
pub fn galois_label(family: Family, degree: u32) -> Option<String> {
    let s = match (family, degree) {
        (Family::S3, 3) => "3T2",
        (Family::S3, 2) => "2T1",
        (Family::S4, 4) => "4T5",
        (Family::S4, 3) => "3T2",
        (Family::A4, 4) => "4T4",
        (Family::A4, 3) => "3T1",
        (Family::D2l, 2) => "2T1",
        (Family::D2l, l) if l >= 3 => return Some(format!("{l}T2")),
        _ => return None,
    };
    Some(s.to_string())
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FetchManifest {
    pub endpoint: String,
    pub query: Option<FetchQuery>,
    pub requests: Vec<String>,
    pub served_from_cache: usize,
    pub records: usize,
    /// `(label, reason)` for rows that could not become records.
    pub skipped: Vec<(String, String)>,
    pub complete: bool,
    pub error: Option<String>,
}

#[derive(Deserialize)]
struct Page {
    data: Vec<Row>,
}

#[derive(Deserialize)]
struct Row {
    label: String,
    degree: u32,
    r2: u32,
    disc_abs: u64,
    disc_sign: i8,
    #[serde(default)]
    class_group: Vec<u64>,
    #[serde(default)]
    u: Option<u32>,
    #[serde(default)]
    resolvent_label: Option<String>,
    #[serde(default)]
    closure_unramified_over_resolvent: Option<bool>,
}

fn to_record(row: Row, family: Family) -> Result<FieldRecord, String> {
    let u = row.u.ok_or("primes above l unavailable")?;
    let r1 = row
        .degree
        .checked_sub(2 * row.r2)
        .ok_or("r2 exceeds half the degree")?;
    let disc = i64::try_from(row.disc_abs).map_err(|_| "discriminant out of range")? * i64::from(row.disc_sign.signum());
    let mut class_group = row.class_group;
    class_group.sort_unstable();
    let rec = FieldRecord {
        label: row.label,
        degree: row.degree,
        r1,
        r2: row.r2,
        disc,
        class_group,
        galois_closure: family,
        resolvent_label: row.resolvent_label,
        u,
        // unknown means unverified, which the checker skips
        closure_unramified_over_resolvent: row.closure_unramified_over_resolvent.unwrap_or(false),
        setting: None,
    };
    rec.validate()?;
    Ok(rec)
}

pub fn manifest_path(out: &Path) -> PathBuf {
    out.with_extension("manifest.json")
}

/// Runs `query` page by page, one request at a time, serving repeats from
/// `cache`. Writes the records to `out` and a manifest next to it, also
/// when a request fails part-way; the error is returned afterwards.
pub fn fetch_remote(
    query: &FetchQuery,
    endpoint: &str,
    out: &Path,
    transport: &mut dyn Transport,
    cache: &FileCache,
) -> Result<FetchManifest, FetchError> {
    let label = galois_label(query.galois, query.degree).ok_or(FetchError::Unsupported {
        family: query.galois,
        degree: query.degree,
    })?;
    let mut manifest = FetchManifest {
        endpoint: endpoint.to_string(),
        query: Some(query.clone()),
        ..FetchManifest::default()
    };
    let mut records = Vec::new();
    let mut failure = None;
    let mut offset = 0;
    'pages: while records.len() < query.limit {
        let url = format!(
            "{}/nf_fields/?_format=json&degree={}&galois_label={label}&_sort=disc_abs&_limit={PAGE}&_offset={offset}",
            endpoint.trim_end_matches('/'),
            query.degree,
        );
        manifest.requests.push(url.clone());
        let body = match cache.get(&url) {
            Some(b) => {
                manifest.served_from_cache += 1;
                b
            }
            None => match transport.get(&url) {
                Ok(b) => {
                    cache.put(&url, &b)?;
                    b
                }
                Err(message) => {
                    failure = Some(FetchError::Http { url, message });
                    break;
                }
            },
        };
        let page: Page = match serde_json::from_str(&body) {
            Ok(p) => p,
            Err(e) => {
                failure = Some(FetchError::Decode {
                    url,
                    message: e.to_string(),
                });
                break;
            }
        };
        let n = page.data.len();
        for row in page.data {
            if query.disc_max.is_some_and(|m| row.disc_abs > m) {
                break 'pages;
            }
            let name = row.label.clone();
            match to_record(row, query.galois) {
                Ok(r) => records.push(r),
                Err(reason) => manifest.skipped.push((name, reason)),
            }
            if records.len() == query.limit {
                break 'pages;
            }
        }
        if n < PAGE {
            break;
        }
        offset += PAGE;
    }
    manifest.records = records.len();
    manifest.complete = failure.is_none();
    manifest.error = failure.as_ref().map(ToString::to_string);
    if let Some(dir) = out.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(io_err(dir))?;
    }
    std::fs::write(out, to_jsonl(&records)).map_err(io_err(out))?;
    let mpath = manifest_path(out);
    let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes") + "\n";
    std::fs::write(&mpath, text).map_err(io_err(&mpath))?;
    match failure {
        Some(e) => Err(e),
        None => Ok(manifest),
    }
}
