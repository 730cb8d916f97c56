//! From a verified case to reflection bounds: long exact sequences and
//! Euler characteristics become a rational constraint system over
//! cohomology ranks, Fourier–Motzkin projects it onto `(h¹(M), h¹(N))`,
//! and unit ranks translate the result to Picard, `Cl_S` and `Cl` ranks.

mod assemble;
mod class;
mod derive;
mod report;
mod targets;
mod units;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

pub use assemble::{arrow_var, assemble, euler_constraints, h_expr, h_var, les_constraints, Assembled};
pub use class::{full_cl_bounds, to_class_bounds, ClassBounds};
pub use derive::{derive_bounds, Derivation};
pub use report::{derive_report, BoundReport, TargetReport, RK_RANGE};
pub use targets::{corollary_window, derived_window, implies, paper_targets, unit_grid, PaperTarget, Window};
pub use units::{unit_rank, FieldDescriptor};

use crate::catalog::CatalogError;
use crate::linalg::{LinalgError, Rational};

/// Names of the symbolic quantities that class-level bounds depend on.
pub const U1: &str = "U1";
pub const U2: &str = "U2";
pub const K1: &str = "K1";
pub const K2: &str = "K2";

pub type Env = BTreeMap<String, Rational>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("constraint system is infeasible for {0}; the encoding is inconsistent")]
    Infeasible(String),
    #[error("h1(M) is unbounded above for {0}")]
    Unbounded(String),
    #[error("encoding error: {0}")]
    Encoding(String),
    #[error("invalid field descriptor: {0}")]
    Descriptor(String),
    #[error("level `{0}` is not available for this setting")]
    Level(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Level {
    #[serde(rename = "h1")]
    H1,
    #[serde(rename = "cls")]
    PicOrClS,
    #[serde(rename = "cl")]
    FullCl,
}

impl Level {
    pub fn as_str(self) -> &'static str {
        match self {
            Level::H1 => "h1",
            Level::PicOrClS => "cls",
            Level::FullCl => "cl",
        }
    }
}

impl FromStr for Level {
    type Err = BoundError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "h1" => Ok(Level::H1),
            "cls" | "pic" => Ok(Level::PicOrClS),
            "cl" => Ok(Level::FullCl),
            other => Err(BoundError::Level(other.to_string())),
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n as i128)
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(n as i128, d as i128)
}

pub(crate) fn ser_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// `slope · x + offset + Σ terms[name] · env[name]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Affine {
    pub slope: Rational,
    pub offset: Rational,
    pub terms: BTreeMap<String, Rational>,
}

impl Affine {
    pub fn new(slope: Rational, offset: Rational) -> Self {
        Affine {
            slope,
            offset,
            terms: BTreeMap::new(),
        }
    }

    pub fn int(slope: i64, offset: i64) -> Self {
        Affine::new(q(slope), q(offset))
    }

    pub fn with_term(mut self, name: &str, c: Rational) -> Self {
        let e = self.terms.entry(name.to_string()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(name);
        }
        self
    }

    /// `None` when a symbolic term has no value in `env`.
    pub fn eval(&self, x: Rational, env: &Env) -> Option<Rational> {
        let mut v = self.slope * x + self.offset;
        for (name, c) in &self.terms {
            v += c * env.get(name)?;
        }
        Some(v)
    }

    /// Replaces every symbolic term that `env` defines by its value.
    pub fn substitute(&self, env: &Env) -> Affine {
        let mut out = Affine::new(self.slope, self.offset);
        for (name, c) in &self.terms {
            match env.get(name) {
                Some(v) => out.offset += c * v,
                None => out = out.with_term(name, *c),
            }
        }
        out
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<(Rational, String)> = vec![(self.slope, "x".into())];
        parts.extend(self.terms.iter().map(|(n, c)| (*c, n.clone())));
        let mut first = true;
        for (c, name) in parts {
            if c.is_zero() {
                continue;
            }
            let sign = match (first, c.is_negative()) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            if c.abs().is_one() {
                write!(f, "{sign}{name}")?;
            } else {
                write!(f, "{sign}{}{name}", c.abs())?;
            }
            first = false;
        }
        if first {
            write!(f, "{}", self.offset)
        } else if !self.offset.is_zero() {
            let sign = if self.offset.is_negative() { "-" } else { "+" };
            write!(f, " {sign} {}", self.offset.abs())
        } else {
            Ok(())
        }
    }
}

impl Serialize for Affine {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            slope: String,
            offset: String,
            #[serde(skip_serializing_if = "BTreeMap::is_empty")]
            terms: BTreeMap<String, String>,
        }
        Repr {
            slope: self.slope.to_string(),
            offset: self.offset.to_string(),
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
        }
        .serialize(s)
    }
}

/// Bounds `lower(x) ≤ objective ≤ upper(x)` in a parameter `x`, as the
/// max of the lower facets and the min of the upper facets. `domain`
/// holds parameter-only facets `0 ≤ d(x)` of the projection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffineBound {
    pub level: Level,
    pub objective: String,
    pub parameter: String,
    pub lower: Affine,
    pub upper: Affine,
    pub lower_facets: Vec<Affine>,
    pub upper_facets: Vec<Affine>,
    pub domain: Vec<Affine>,
}

impl AffineBound {
    /// Picks the facets binding for large `x`: steepest lower, flattest upper.
    pub fn from_facets(
        level: Level,
        objective: impl Into<String>,
        parameter: impl Into<String>,
        lower_facets: Vec<Affine>,
        upper_facets: Vec<Affine>,
        domain: Vec<Affine>,
    ) -> Option<Self> {
        let lower = lower_facets
            .iter()
            .max_by(|a, b| a.slope.cmp(&b.slope).then(a.offset.cmp(&b.offset)))?
            .clone();
        let upper = upper_facets
            .iter()
            .min_by(|a, b| a.slope.cmp(&b.slope).then(a.offset.cmp(&b.offset)))?
            .clone();
        Some(AffineBound {
            level,
            objective: objective.into(),
            parameter: parameter.into(),
            lower,
            upper,
            lower_facets,
            upper_facets,
            domain,
        })
    }

    pub fn lower_at(&self, x: Rational, env: &Env) -> Option<Rational> {
        self.lower_facets.iter().map(|f| f.eval(x, env)).try_fold(None, |acc: Option<Rational>, v| {
            let v = v?;
            Some(Some(acc.map_or(v, |a| a.max(v))))
        })?
    }

    pub fn upper_at(&self, x: Rational, env: &Env) -> Option<Rational> {
        self.upper_facets.iter().map(|f| f.eval(x, env)).try_fold(None, |acc: Option<Rational>, v| {
            let v = v?;
            Some(Some(acc.map_or(v, |a| a.min(v))))
        })?
    }

    /// Whether `x` satisfies every domain facet. Unknown terms count as
    /// satisfied.
    pub fn in_domain(&self, x: Rational, env: &Env) -> bool {
        self.domain
            .iter()
            .all(|d| d.eval(x, env).is_none_or(|v| !v.is_negative()))
    }

    pub fn substitute(&self, env: &Env) -> AffineBound {
        let sub = |v: &[Affine]| v.iter().map(|a| a.substitute(env)).collect::<Vec<_>>();
        AffineBound {
            level: self.level,
            objective: self.objective.clone(),
            parameter: self.parameter.clone(),
            lower: self.lower.substitute(env),
            upper: self.upper.substitute(env),
            lower_facets: sub(&self.lower_facets),
            upper_facets: sub(&self.upper_facets),
            domain: sub(&self.domain),
        }
    }
}
