use std::collections::BTreeMap;

use serde::Serialize;

use super::{CaseInstance, SequenceRecord, N_PRIME};
use crate::gmodules::{is_isomorphic, ExactnessReport, GModule, IsoVerdict};
use crate::groups::Family;

#[derive(Clone, Debug, Serialize)]
pub struct SequenceCheck {
    pub name: String,
    pub slots: [String; 3],
    pub auxiliary: bool,
    pub exact: ExactnessReport,
    /// Invariant sequences over every admissible inertia subgroup are exact.
    pub inertia_exact: bool,
    /// Invariant sequences over every subgroup are left exact.
    pub left_exact: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorCheck {
    pub sequence: String,
    /// `A`, `B` or `C`.
    pub term: char,
    pub slot: String,
    pub verdict: IsoVerdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct DirectSumCheck {
    pub whole: String,
    pub parts: Vec<String>,
    pub verdict: IsoVerdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub case: String,
    pub sequences: Vec<SequenceCheck>,
    pub factors: Vec<FactorCheck>,
    pub direct_sums: Vec<DirectSumCheck>,
    /// `S4` only: `(dim M^I, dim M1^I, dim N'^I)` for each transposition
    /// subgroup `I`; all must be `(3, 2, 1)`.
    pub transposition_dims: Vec<[usize; 3]>,
    /// `SemiDirect` only: Jordan–Hölder multiplicity of each simple factor
    /// of `M`, expected `(l−1)/r` for `R_k` (`k ≥ 1`) and one more for `T`.
    pub multiplicities: BTreeMap<String, usize>,
    pub multiplicities_ok: bool,
    pub h0: BTreeMap<String, u32>,
    pub euler: BTreeMap<String, bool>,
    pub notes: Vec<String>,
    pub pass: bool,
}

impl CaseReport {
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for s in &self.sequences {
            if !s.exact.pass {
                out.push(format!("{} not exact", s.name));
            }
            if !s.inertia_exact {
                out.push(format!("{} not exact on inertia invariants", s.name));
            }
            if !s.left_exact {
                out.push(format!("{} not left exact on invariants", s.name));
            }
        }
        for f in &self.factors {
            if f.verdict != IsoVerdict::Isomorphic {
                out.push(format!("{} term {} vs {}: {:?}", f.sequence, f.term, f.slot, f.verdict));
            }
        }
        for d in &self.direct_sums {
            if d.verdict != IsoVerdict::Isomorphic {
                out.push(format!("{} vs ⊕{:?}: {:?}", d.whole, d.parts, d.verdict));
            }
        }
        if self.transposition_dims.iter().any(|d| *d != [3, 2, 1]) {
            out.push(format!("transposition invariants {:?}", self.transposition_dims));
        }
        if !self.multiplicities_ok {
            out.push(format!("multiplicities {:?}", self.multiplicities));
        }
        out
    }
}

/// Re-runs every structural check on a case: exactness, exactness of
/// inertia invariants, left exactness on all subgroups, slot
/// identifications, direct sums and the family-specific counts.
pub fn verify_case(case: &CaseInstance) -> CaseReport {
    let mut notes = case.notes.clone();
    let all_subgroups = match case.group.all_subgroups() {
        Ok(s) => s,
        Err(e) => {
            notes.push(format!("left exactness skipped: {e}"));
            Vec::new()
        }
    };
    let mut sequences = Vec::new();
    let mut factors = Vec::new();
    let records = case
        .sequences
        .iter()
        .map(|r| (r, false))
        .chain(case.auxiliary_sequences.iter().map(|r| (r, true)));
    for (rec, auxiliary) in records {
        sequences.push(SequenceCheck {
            name: rec.seq.name.clone(),
            slots: rec.slots.clone(),
            auxiliary,
            exact: rec.seq.check_exact(),
            inertia_exact: case
                .inertia_family
                .iter()
                .all(|h| rec.seq.invariant_sequence(h).fully_exact),
            left_exact: all_subgroups.iter().all(|h| rec.seq.invariant_sequence(h).left_exact),
        });
        factors.extend(identifications(case, rec));
    }

    let direct_sums = case
        .direct_sums
        .iter()
        .map(|d| {
            let verdict = match (case.module(&d.whole), direct_sum(case, &d.parts)) {
                (Some(w), Some(s)) => is_isomorphic(w, &s).unwrap_or(IsoVerdict::Undetermined),
                _ => IsoVerdict::Undetermined,
            };
            DirectSumCheck {
                whole: d.whole.clone(),
                parts: d.parts.clone(),
                verdict,
            }
        })
        .collect();

    let transposition_dims = if case.spec.family == Family::S4 {
        transposition_dims(case)
    } else {
        Vec::new()
    };
    let (multiplicities, multiplicities_ok) = multiplicities(case);

    let mut report = CaseReport {
        case: case.id(),
        sequences,
        factors,
        direct_sums,
        transposition_dims,
        multiplicities,
        multiplicities_ok,
        h0: case.h0_table(),
        euler: case.euler_flags(),
        notes,
        pass: false,
    };
    report.pass = report.failures().is_empty();
    report
}

fn identifications(case: &CaseInstance, rec: &SequenceRecord) -> Vec<FactorCheck> {
    let terms = [rec.seq.a(), rec.seq.b(), rec.seq.c()];
    terms
        .iter()
        .zip(['A', 'B', 'C'])
        .zip(&rec.slots)
        .filter_map(|((m, term), slot)| {
            // auxiliary N_k pieces have no slot of their own
            let target = case.module(slot)?;
            Some(FactorCheck {
                sequence: rec.seq.name.clone(),
                term,
                slot: slot.clone(),
                verdict: is_isomorphic(target, m).unwrap_or(IsoVerdict::Undetermined),
            })
        })
        .collect()
}

fn direct_sum(case: &CaseInstance, parts: &[String]) -> Option<GModule> {
    let mut acc: Option<GModule> = None;
    for p in parts {
        let m = case.module(p)?;
        acc = Some(match acc {
            None => m.clone(),
            Some(a) => a.direct_sum(m).ok()?,
        });
    }
    acc
}

fn transposition_dims(case: &CaseInstance) -> Vec<[usize; 3]> {
    let (Some(m), Some(m1), Some(np)) = (case.module(super::M), case.module("M1"), case.module(N_PRIME)) else {
        return vec![[0, 0, 0]];
    };
    case.group
        .transposition_subgroups()
        .iter()
        .map(|h| [m.invariant_dim(h), m1.invariant_dim(h), np.invariant_dim(h)])
        .collect()
}

fn multiplicities(case: &CaseInstance) -> (BTreeMap<String, usize>, bool) {
    let mut counts = BTreeMap::new();
    if case.spec.family != Family::SemiDirect {
        return (counts, true);
    }
    for rec in &case.sequences {
        let c = &rec.slots[2];
        if case.slot(c).is_some_and(|s| s.module.dim() == 1) {
            *counts.entry(c.clone()).or_insert(0) += 1;
        }
    }
    let l = case.spec.l as usize;
    let r = case.spec.r.unwrap_or(1) as usize;
    let n = (l - 1) / r;
    let ok = counts.get(super::T) == Some(&(n + 1))
        && case.parameter_slots.iter().all(|p| counts.get(p) == Some(&n))
        && counts.values().sum::<usize>() == l;
    (counts, ok)
}
