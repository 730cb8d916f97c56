use num_traits::Signed;
use serde::Serialize;

use super::{q, Affine, AffineBound, Env, Level, K1, K2, U1, U2};
use crate::catalog::Setting;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassBounds {
    /// Picard ranks over a function field, `Cl_S` ranks over a number field.
    pub cls: AffineBound,
    /// Full class-group ranks; number fields only.
    pub full: Option<AffineBound>,
}

/// Substitutes `h¹(X_i) = rk_i + U_i`. Over a function field both unit
/// ranks are known and substituted; over a number field they stay as the
/// symbols `U1`, `U2`.
pub fn to_class_bounds(bound: &AffineBound, setting: &Setting) -> ClassBounds {
    let shift = |a: &Affine, objective: bool| {
        // m ≷ α·P + β  becomes  rk₁ ≷ α·rk₂ + β + α·U₂ − U₁
        let mut out = a.clone().with_term(U2, a.slope);
        if objective {
            out = out.with_term(U1, q(-1));
        }
        out
    };
    let lower: Vec<Affine> = bound.lower_facets.iter().map(|a| shift(a, true)).collect();
    let upper: Vec<Affine> = bound.upper_facets.iter().map(|a| shift(a, true)).collect();
    let domain: Vec<Affine> = bound.domain.iter().map(|a| shift(a, false)).collect();
    let (objective, parameter) = if setting.is_function_field() {
        ("rk Pic(C1)", "rk Pic(C2)")
    } else {
        ("rk Cl_S(K1)", "rk Cl_S(K2)")
    };
    let mut cls = AffineBound::from_facets(Level::PicOrClS, objective, parameter, lower, upper, domain)
        .expect("facets carried over from a bounded projection");
    if setting.is_function_field() {
        let u = q(i64::from(setting.mu_in_base));
        let env: Env = [(U1.to_string(), u), (U2.to_string(), u)].into_iter().collect();
        cls = cls.substitute(&env);
    }
    let full = (!setting.is_function_field()).then(|| full_cl_bounds(&cls));
    ClassBounds { cls, full }
}

/// Widens a `Cl_S` bound to full class groups using
/// `0 ≤ rk Cl − rk Cl_S ≤ K` with `K = max(u − 1, 0)` per field, carried
/// as the symbols `K1`, `K2`.
pub fn full_cl_bounds(cls: &AffineBound) -> AffineBound {
    // rk Cl₁ ≥ rk Cl_S₁ and rk Cl_S₂ ∈ [rk Cl₂ − K₂, rk Cl₂]
    let lower = cls
        .lower_facets
        .iter()
        .map(|a| {
            if a.slope.is_positive() {
                a.clone().with_term(K2, -a.slope)
            } else {
                a.clone()
            }
        })
        .collect();
    // rk Cl₁ ≤ rk Cl_S₁ + K₁
    let upper = cls
        .upper_facets
        .iter()
        .map(|a| {
            let a = a.clone().with_term(K1, q(1));
            if a.slope.is_negative() {
                let s = a.slope;
                a.with_term(K2, -s)
            } else {
                a
            }
        })
        .collect();
    // the Cl_S-level domain constrains rk Cl_S₂, which is no longer the parameter
    let domain = Vec::new();
    AffineBound::from_facets(Level::FullCl, "rk Cl(K1)", "rk Cl(K2)", lower, upper, domain)
        .expect("same facet counts as the input")
}
