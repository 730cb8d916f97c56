use serde::Serialize;

use super::{frac, q, Affine, AffineBound, Env, FieldDescriptor, Level, K1, K2, U1, U2};
use crate::catalog::CaseInstance;
use crate::groups::Family;
use crate::linalg::Rational;

/// Published lower and upper expressions in `rk₂` (Picard rank over a
/// function field, `Cl_S` rank over a number field). Number-field forms
/// use `t_i = U_i` for odd `l`; for `l = 2` only `t₂ − t₁ = U₂ − U₁`
/// occurs, so the torsion contributions cancel.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PaperTarget {
    pub level: Level,
    pub lower: Affine,
    pub upper: Affine,
    pub statement: String,
}

pub fn paper_targets(case: &CaseInstance) -> Option<PaperTarget> {
    let l = case.spec.l as i64;
    let r = case.spec.r.map(i64::from);
    let ff = case.setting.is_function_field();
    let mu = case.setting.mu_in_base;
    let t = |a: Affine, c2: Rational| a.with_term(U2, c2).with_term(U1, q(-1));
    let (lower, upper, statement) = match (case.spec.family, ff, mu) {
        (Family::S3, true, true) => (Affine::int(1, -2), Affine::int(1, 0), "rk − 2 ≤ rk₁ ≤ rk"),
        (Family::S3, true, false) => (Affine::int(1, -1), Affine::int(1, 0), "rk − 1 ≤ rk₁ ≤ rk"),
        (Family::S4 | Family::A4, true, _) => (Affine::int(1, -2), Affine::int(1, 0), "rk − 2 ≤ rk₁ ≤ rk"),
        (Family::D2l, true, true) => (
            Affine::new(q(1), frac(-(l - 1), 2)),
            Affine::new(frac(l - 1, 2), q(1)),
            "rk − (l−1)/2 ≤ rk₁ ≤ (l−1)/2·rk + 1",
        ),
        (Family::D2l, true, false) => (
            Affine::int(1, -1),
            Affine::new(frac(l - 1, 2), q(0)),
            "rk − 1 ≤ rk₁ ≤ (l−1)/2·rk",
        ),
        (Family::SemiDirect, true, true) => {
            let r = r?;
            (
                Affine::new(frac(1, r - 1), frac(-(l - 3), r - 1) - q(2)),
                Affine::new(frac(l - 1, r), frac(l - 1, r)),
                "rk/(r−1) − (l−3)/(r−1) − 2 ≤ rk₁ ≤ (l−1)/r·(rk + 1)",
            )
        }
        (Family::SemiDirect, true, false) => {
            let r = r?;
            (
                Affine::new(frac(1, r - 1), frac(-(l - 2), r - 1)),
                Affine::new(frac(l - 1, r), q(0)),
                "rk/(r−1) − (l−2)/(r−1) ≤ rk₁ ≤ (l−1)/r·rk",
            )
        }
        (Family::S3, false, _) => (
            t(Affine::int(1, -1), q(1)),
            t(Affine::int(1, 0), q(1)),
            "rk − 1 + (t₂−t₁) ≤ rk₁ ≤ rk + (t₂−t₁)",
        ),
        (Family::S4 | Family::A4, false, _) => (
            t(Affine::int(1, -2), q(1)),
            t(Affine::int(1, 1), q(1)),
            "rk + (t₂−t₁) − 2 ≤ rk₁ ≤ rk + (t₂−t₁) + 1",
        ),
        (Family::D2l, false, _) => {
            let h = frac(l - 1, 2);
            (
                t(Affine::int(1, 0), q(1)),
                t(Affine::new(h, h - q(1)), h),
                "rk + (t₂−t₁) ≤ rk₁ ≤ (l−1)/2·(rk + t₂ + 1) − t₁ − 1",
            )
        }
        (Family::SemiDirect, false, _) => {
            let r = r?;
            let a = frac(1, r - 1);
            let g = frac(l - 1, r);
            (
                t(Affine::new(a, q(-1)), a),
                t(Affine::new(g, g + g), g),
                "(rk + t₂)/(r−1) − t₁ − 1 ≤ rk₁ ≤ (l−1)/r·(rk + t₂ + 1) + (l−1)/r − t₁",
            )
        }
    };
    Some(PaperTarget {
        level: Level::PicOrClS,
        lower,
        upper,
        statement: statement.to_string(),
    })
}

/// Signature pairs `(K₁, K₂)` compatible with the Galois closure, from
/// where complex conjugation can sit in `G`.
fn signatures(case: &CaseInstance) -> Vec<((u32, u32), (u32, u32))> {
    let l = case.spec.l;
    match case.spec.family {
        // the cubic and its quadratic resolvent share the sign of the discriminant
        Family::S3 => vec![((3, 0), (2, 0)), ((1, 1), (0, 1))],
        Family::S4 => vec![((4, 0), (3, 0)), ((0, 2), (3, 0)), ((2, 1), (1, 1))],
        // a cyclic cubic is totally real
        Family::A4 => vec![((4, 0), (3, 0)), ((0, 2), (3, 0))],
        // conjugation is trivial or a reflection fixing one vertex
        Family::D2l => vec![((l, 0), (2, 0)), ((1, (l - 1) / 2), (0, 1))],
        Family::SemiDirect => {
            let r = case.spec.r.unwrap_or(1);
            let mut v = vec![((l, 0), (r, 0))];
            if r % 2 == 0 {
                v.push(((1, (l - 1) / 2), (0, r / 2)));
            }
            v
        }
    }
}

fn env_of(d1: &FieldDescriptor, d2: &FieldDescriptor) -> Env {
    let unit = |d: &FieldDescriptor| q(i64::from(d.s() + d.u + u32::from(d.torsion)));
    let kernel = |d: &FieldDescriptor| q(i64::from(d.u.saturating_sub(1)));
    [
        (U1.to_string(), unit(d1)),
        (U2.to_string(), unit(d2)),
        (K1.to_string(), kernel(d1)),
        (K2.to_string(), kernel(d2)),
    ]
    .into_iter()
    .collect()
}

/// Every `(U₁, U₂, K₁, K₂)` over admissible signatures and
/// `u_i ∈ [1, deg K_i]`. A single empty environment over function fields.
pub fn unit_grid(case: &CaseInstance) -> Vec<Env> {
    if case.setting.is_function_field() {
        return vec![Env::new()];
    }
    let torsion = case.spec.l == 2;
    let mut out: Vec<Env> = Vec::new();
    for ((a1, b1), (a2, b2)) in signatures(case) {
        let (n1, n2) = (a1 + 2 * b1, a2 + 2 * b2);
        for u1 in 1..=n1 {
            for u2 in 1..=n2 {
                let d1 = FieldDescriptor::new(n1, a1, b1, u1, torsion).expect("admissible");
                let d2 = FieldDescriptor::new(n2, a2, b2, u2, torsion).expect("admissible");
                let e = env_of(&d1, &d2);
                if !out.contains(&e) {
                    out.push(e);
                }
            }
        }
    }
    out
}

/// Derived bounds at least as tight as the target at every integer
/// `rk ∈ range` inside the derived domain, for every environment.
pub fn implies(derived: &AffineBound, target: &PaperTarget, envs: &[Env], range: std::ops::RangeInclusive<i64>) -> bool {
    envs.iter().all(|env| {
        range.clone().all(|x| {
            let x = q(x);
            if !derived.in_domain(x, env) {
                return true;
            }
            let lo = derived.lower_at(x, env).zip(target.lower.eval(x, env));
            let hi = derived.upper_at(x, env).zip(target.upper.eval(x, env));
            matches!((lo, hi), (Some((dl, pl)), Some((du, pu))) if dl >= pl && du <= pu)
        })
    })
}

/// `rk₁ − rk₂` ranges over `[lower, upper]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    #[serde(serialize_with = "super::ser_rational")]
    pub lower: Rational,
    #[serde(serialize_with = "super::ser_rational")]
    pub upper: Rational,
}

impl Window {
    pub fn contains(&self, other: &Window) -> bool {
        self.lower <= other.lower && other.upper <= self.upper
    }
}

/// Published full class-group window for `A4`, totally real or totally
/// complex closure.
pub fn corollary_window(case: &CaseInstance, real: bool) -> Option<Window> {
    if case.spec.family != Family::A4 || case.setting.is_function_field() {
        return None;
    }
    Some(if real {
        Window {
            lower: q(-10),
            upper: q(10),
        }
    } else {
        Window {
            lower: q(-8),
            upper: q(12),
        }
    })
}

/// Extremes of `lower(rk) − rk` and `upper(rk) − rk` for a full-`Cl`
/// bound over `rk ∈ range` and the worst-case `u₁ ∈ [1,4]`, `u₂ ∈ [1,3]`
/// of an `A4` quartic and its cubic resolvent.
pub fn derived_window(full: &AffineBound, real: bool, range: std::ops::RangeInclusive<i64>) -> Option<Window> {
    let sig1 = if real { (4, 0) } else { (0, 2) };
    let mut lower: Option<Rational> = None;
    let mut upper: Option<Rational> = None;
    for u1 in 1..=4 {
        for u2 in 1..=3 {
            let d1 = FieldDescriptor::new(4, sig1.0, sig1.1, u1, true).ok()?;
            let d2 = FieldDescriptor::new(3, 3, 0, u2, true).ok()?;
            let env = env_of(&d1, &d2);
            for x in range.clone() {
                let x = q(x);
                let lo = full.lower_at(x, &env)? - x;
                let hi = full.upper_at(x, &env)? - x;
                lower = Some(lower.map_or(lo, |v| v.min(lo)));
                upper = Some(upper.map_or(hi, |v| v.max(hi)));
            }
        }
    }
    Some(Window {
        lower: lower?,
        upper: upper?,
    })
}
