//! Case bundles: for each family and setting, the modules `M` and `N`,
//! the sequences relating them, direct-sum decompositions, admissible
//! inertia subgroups, ambient data for `μ_l` and per-module flags.
//!
//! Modules are referred to by slot name. Several sequence terms are
//! isomorphic to one canonical slot (every odd ladder quotient is `N'`,
//! every trivial quotient is `T`); construction checks each such
//! identification with [`is_isomorphic`](crate::gmodules::is_isomorphic)
//! before sharing the slot, since isomorphic stalks give the same
//! cohomology.

mod build;
mod verify;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use build::build_case;
pub use verify::{verify_case, CaseReport, DirectSumCheck, FactorCheck, SequenceCheck};

use crate::gmodules::{GModule, ModuleError, ShortExactSeq};
use crate::groups::{Family, FiniteGroup, GroupError, Subgroup};

pub const T: &str = "T";
pub const ZERO: &str = "0";
pub const M: &str = "M";
pub const N: &str = "N";
pub const N_PRIME: &str = "N'";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error("invalid case parameters: {0}")]
    Parameter(String),
    #[error("internal verification failed: {0}")]
    Verification(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SettingKind {
    FunctionField,
    NumberField,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SettingId {
    FfMu,
    FfNomu,
    Nf,
}

impl SettingId {
    pub const ALL: [SettingId; 3] = [SettingId::FfMu, SettingId::FfNomu, SettingId::Nf];

    pub fn as_str(self) -> &'static str {
        match self {
            SettingId::FfMu => "ff-mu",
            SettingId::FfNomu => "ff-nomu",
            SettingId::Nf => "nf",
        }
    }
}

impl FromStr for SettingId {
    type Err = CatalogError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SettingId::ALL
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| CatalogError::Parameter(format!("unknown setting `{s}` (ff-mu, ff-nomu, nf)")))
    }
}

impl fmt::Display for SettingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Base of the covers: `P¹` over `F_p` or `Spec Z[1/l]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Setting {
    pub id: SettingId,
    pub kind: SettingKind,
    pub mu_in_base: bool,
    pub b_nontrivial: bool,
    /// `(h⁰, h¹, h²)` of `μ_l` on the base.
    pub ambient: [u32; 3],
}

impl Setting {
    pub fn new(id: SettingId, l: u32) -> Result<Self, CatalogError> {
        let (kind, mu_in_base) = match id {
            SettingId::FfMu => (SettingKind::FunctionField, true),
            SettingId::FfNomu => {
                // μ_2 = {±1} lies in every F_p
                if l == 2 {
                    return Err(CatalogError::Parameter("ff-nomu is impossible for l = 2".into()));
                }
                (SettingKind::FunctionField, false)
            }
            SettingId::Nf => (SettingKind::NumberField, l == 2),
        };
        let ambient = match (kind, mu_in_base) {
            (SettingKind::FunctionField, true) => [1, 1, 1],
            (SettingKind::FunctionField, false) => [0, 0, 1],
            (SettingKind::NumberField, true) => [1, 2, 1],
            (SettingKind::NumberField, false) => [0, 1, 0],
        };
        Ok(Setting {
            id,
            kind,
            mu_in_base,
            b_nontrivial: !mu_in_base,
            ambient,
        })
    }

    pub fn is_function_field(&self) -> bool {
        self.kind == SettingKind::FunctionField
    }
}

/// Family plus numeric parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CaseSpec {
    pub family: Family,
    pub l: u32,
    pub r: Option<u32>,
}

impl CaseSpec {
    /// Fills in the fixed primes and the defaults `l = 5` (`D2l`) and
    /// `(l, r) = (7, 3)` (`SemiDirect`).
    pub fn new(family: Family, l: Option<u32>, r: Option<u32>) -> Result<Self, CatalogError> {
        let fixed = |want: u32| -> Result<u32, CatalogError> {
            match l {
                Some(x) if x != want => Err(CatalogError::Parameter(format!("{family} requires l = {want}"))),
                _ => Ok(want),
            }
        };
        let spec = match family {
            Family::S3 => CaseSpec { family, l: fixed(3)?, r: None },
            Family::S4 | Family::A4 => CaseSpec { family, l: fixed(2)?, r: None },
            Family::D2l => CaseSpec { family, l: l.unwrap_or(5), r: None },
            Family::SemiDirect => CaseSpec {
                family,
                l: l.unwrap_or(7),
                r: Some(r.unwrap_or(3)),
            },
        };
        if family != Family::SemiDirect && r.is_some() {
            return Err(CatalogError::Parameter(format!("{family} takes no r")));
        }
        Ok(spec)
    }

    pub fn label(&self) -> String {
        match (self.family, self.r) {
            (Family::D2l, _) => format!("d2l(l={})", self.l),
            (Family::SemiDirect, Some(r)) => format!("semidirect(l={},r={r})", self.l),
            (f, _) => f.id().to_string(),
        }
    }

    /// The test grid: every family with the listed primes.
    pub fn grid() -> Vec<CaseSpec> {
        let mut out = vec![
            CaseSpec::new(Family::S3, None, None).expect("valid"),
            CaseSpec::new(Family::S4, None, None).expect("valid"),
            CaseSpec::new(Family::A4, None, None).expect("valid"),
        ];
        for l in [3, 5, 7, 11, 13] {
            out.push(CaseSpec::new(Family::D2l, Some(l), None).expect("valid"));
        }
        for (l, r) in [(7, 3), (11, 5), (13, 3)] {
            out.push(CaseSpec::new(Family::SemiDirect, Some(l), Some(r)).expect("valid"));
        }
        out
    }

    /// Settings that make sense for this family.
    pub fn settings(&self) -> Vec<SettingId> {
        SettingId::ALL
            .into_iter()
            .filter(|s| Setting::new(*s, self.l).is_ok())
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SlotKind {
    /// All cohomology ranks unknown.
    Unknown,
    /// Stands for `μ_l`: `h⁰, h¹, h²` come from the setting.
    Ambient,
    /// The zero module.
    Zero,
}

#[derive(Clone, Debug)]
pub struct ModuleSlot {
    pub name: String,
    pub module: GModule,
    pub kind: SlotKind,
    pub h0: u32,
    pub euler: bool,
}

/// A sequence together with the slots its three terms are identified with.
#[derive(Clone, Debug)]
pub struct SequenceRecord {
    pub seq: ShortExactSeq,
    pub slots: [String; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DirectSumRecord {
    pub whole: String,
    pub parts: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct CaseInstance {
    pub spec: CaseSpec,
    pub setting: Setting,
    pub group: Arc<FiniteGroup>,
    pub slots: Vec<ModuleSlot>,
    pub sequences: Vec<SequenceRecord>,
    pub direct_sums: Vec<DirectSumRecord>,
    pub inertia_family: Vec<Subgroup>,
    /// `N`-side simple factors whose ranks sum (with `T`) to `h¹(N)`.
    pub parameter_slots: Vec<String>,
    /// Expected ladder quotients `(sequence index, slot)` checked by
    /// isomorphism during construction.
    pub factors: Vec<(usize, String)>,
    /// Sequences checked but not fed to the solver (the `N` filtration).
    pub auxiliary_sequences: Vec<SequenceRecord>,
    pub notes: Vec<String>,
}

impl CaseInstance {
    pub fn slot(&self, name: &str) -> Option<&ModuleSlot> {
        self.slots.iter().find(|s| s.name == name)
    }

    pub fn module(&self, name: &str) -> Option<&GModule> {
        self.slot(name).map(|s| &s.module)
    }

    pub fn h0_table(&self) -> BTreeMap<String, u32> {
        self.slots.iter().map(|s| (s.name.clone(), s.h0)).collect()
    }

    pub fn euler_flags(&self) -> BTreeMap<String, bool> {
        self.slots.iter().map(|s| (s.name.clone(), s.euler)).collect()
    }

    pub fn id(&self) -> String {
        format!("{}/{}", self.spec.label(), self.setting.id)
    }
}
