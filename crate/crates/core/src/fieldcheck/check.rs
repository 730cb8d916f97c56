use serde::Serialize;

use super::{rk_l, FieldPair, FieldRecord, Unpaired};
use crate::boundsolver::{derive_bounds, to_class_bounds, AffineBound, BoundError, Env, FieldDescriptor, K1, K2, U1, U2};
use crate::catalog::CaseInstance;
use crate::linalg::Rational;

/// Why a pair was neither passed nor failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SkipReason {
    /// The producer reports that the closure is ramified over `K₂`.
    UnramifiedHypothesisFailed,
    /// No resolvent record, or a record nobody pairs with.
    MissingPartner,
    /// The records' Galois closure is not the case's family.
    FamilyMismatch,
    /// Function-field data against a number-field case or the reverse, or
    /// the other function-field setting.
    SettingMismatch,
    /// Degree, signature or `u` unusable for a unit rank.
    InvalidDescriptor,
}

impl SkipReason {
    pub fn describe(self) -> &'static str {
        match self {
            SkipReason::UnramifiedHypothesisFailed => "closure ramified over the resolvent",
            SkipReason::MissingPartner => "no resolvent partner",
            SkipReason::FamilyMismatch => "Galois closure differs from the case",
            SkipReason::SettingMismatch => "record setting differs from the case",
            SkipReason::InvalidDescriptor => "invalid unit descriptor",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped(SkipReason),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairReport {
    pub k1: String,
    pub k2: String,
    pub l: u32,
    pub rk1: Option<u32>,
    pub rk2: Option<u32>,
    #[serde(serialize_with = "opt_rational")]
    pub lower: Option<Rational>,
    #[serde(serialize_with = "opt_rational")]
    pub upper: Option<Rational>,
    pub verdict: Verdict,
}

fn opt_rational<S: serde::Serializer>(v: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(r) => s.serialize_some(&r.to_string()),
        None => s.serialize_none(),
    }
}

impl PairReport {
    fn skipped(k1: &str, k2: &str, l: u32, reason: SkipReason) -> Self {
        PairReport {
            k1: k1.to_string(),
            k2: k2.to_string(),
            l,
            rk1: None,
            rk2: None,
            lower: None,
            upper: None,
            verdict: Verdict::Skipped(reason),
        }
    }

    /// Report for a record that never formed a pair.
    pub fn unpaired(u: &Unpaired, l: u32) -> Self {
        PairReport::skipped(&u.label, "", l, u.reason)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckSummary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

impl CheckSummary {
    pub fn of(reports: &[PairReport]) -> Self {
        let mut s = CheckSummary::default();
        for r in reports {
            match r.verdict {
                Verdict::Pass => s.pass += 1,
                Verdict::Fail => s.fail += 1,
                Verdict::Skipped(_) => s.skipped += 1,
            }
        }
        s
    }
}

/// Unit descriptor of a number field for `l`. `μ_l ⊂ K` always holds
/// for `l = 2`; for `l = 3` among these degrees only `Q(√−3)` has it. For
/// larger `l` it needs `(l − 1) | degree` and is taken to fail, since
/// the records carry no cyclotomic data.
pub fn unit_descriptor(rec: &FieldRecord, l: u32) -> Result<FieldDescriptor, BoundError> {
    let torsion = match l {
        2 => true,
        3 => rec.degree == 2 && rec.disc == -3,
        _ => false,
    };
    FieldDescriptor::new(rec.degree, rec.r1, rec.r2, rec.u, torsion)
}

fn env_for(pair: &FieldPair, l: u32) -> Result<Env, BoundError> {
    let d1 = unit_descriptor(&pair.k1, l)?;
    let d2 = unit_descriptor(&pair.k2, l)?;
    let unit = |d: &FieldDescriptor| Rational::from_integer(i128::from(d.s() + d.u + u32::from(d.torsion)));
    let kernel = |d: &FieldDescriptor| Rational::from_integer(i128::from(d.u.saturating_sub(1)));
    Ok([(U1, unit(&d1)), (U2, unit(&d2)), (K1, kernel(&d1)), (K2, kernel(&d2))]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect())
}

/// Evaluates the derived bound on every pair: the full class-group bound
/// over a number field, the Picard bound over a function field.
pub fn check_pairs(pairs: &[FieldPair], case: &CaseInstance) -> Result<Vec<PairReport>, BoundError> {
    let l = case.spec.l;
    let derivation = derive_bounds(case)?;
    let class = to_class_bounds(&derivation.bound, &case.setting);
    let bound: AffineBound = match class.full {
        Some(full) => full,
        None => class.cls,
    };
    let nf = !case.setting.is_function_field();
    let mut out = Vec::with_capacity(pairs.len());
    for pair in pairs {
        let (a, b) = (&pair.k1, &pair.k2);
        let skip = |reason| PairReport::skipped(&a.label, &b.label, l, reason);
        if a.galois_closure != case.spec.family || b.galois_closure != case.spec.family {
            out.push(skip(SkipReason::FamilyMismatch));
            continue;
        }
        let setting_ok = |r: &FieldRecord| match &r.setting {
            None => nf,
            Some(s) => !nf && s == case.setting.id.as_str(),
        };
        if !setting_ok(a) || !setting_ok(b) {
            out.push(skip(SkipReason::SettingMismatch));
            continue;
        }
        if !a.closure_unramified_over_resolvent {
            out.push(skip(SkipReason::UnramifiedHypothesisFailed));
            continue;
        }
        let env = if nf {
            match env_for(pair, l) {
                Ok(env) => env,
                Err(_) => {
                    out.push(skip(SkipReason::InvalidDescriptor));
                    continue;
                }
            }
        } else {
            Env::new()
        };
        let rk1 = rk_l(&a.class_group, u64::from(l));
        let rk2 = rk_l(&b.class_group, u64::from(l));
        let x = Rational::from_integer(i128::from(rk2));
        let lower = bound.lower_at(x, &env);
        let upper = bound.upper_at(x, &env);
        let y = Rational::from_integer(i128::from(rk1));
        let holds = lower.is_none_or(|lo| lo <= y) && upper.is_none_or(|hi| y <= hi);
        out.push(PairReport {
            k1: a.label.clone(),
            k2: b.label.clone(),
            l,
            rk1: Some(rk1),
            rk2: Some(rk2),
            lower,
            upper,
            verdict: if holds { Verdict::Pass } else { Verdict::Fail },
        });
    }
    Ok(out)
}
