use serde::Serialize;

use super::{
    corollary_window, derive_bounds, derived_window, implies, paper_targets, to_class_bounds, unit_grid, Affine,
    AffineBound, BoundError, Level, Window,
};
use crate::catalog::CaseInstance;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Params {
    pub l: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TargetReport {
    pub statement: String,
    pub lower: Affine,
    pub upper: Affine,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub case: String,
    pub setting: String,
    pub params: Params,
    pub level: Level,
    pub objective: String,
    pub parameter: String,
    pub lower: Affine,
    pub upper: Affine,
    pub lower_facets: Vec<Affine>,
    pub upper_facets: Vec<Affine>,
    pub paper_target: Option<TargetReport>,
    pub implies_paper: Option<bool>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub windows: Vec<WindowReport>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WindowReport {
    pub closure: &'static str,
    pub derived: Window,
    pub published: Window,
    pub contained: bool,
}

/// Range of `rk` over which implication is checked.
pub const RK_RANGE: std::ops::RangeInclusive<i64> = 0..=20;

pub fn derive_report(case: &CaseInstance, level: Level) -> Result<BoundReport, BoundError> {
    let derivation = derive_bounds(case)?;
    let class = to_class_bounds(&derivation.bound, &case.setting);
    let mut notes = Vec::new();
    let mut windows = Vec::new();
    let (bound, target, implied): (AffineBound, Option<TargetReport>, Option<bool>) = match level {
        Level::H1 => (derivation.bound, None, None),
        Level::PicOrClS => {
            let target = paper_targets(case);
            let implied = target
                .as_ref()
                .map(|t| implies(&class.cls, t, &unit_grid(case), RK_RANGE));
            let target = target.map(|t| TargetReport {
                statement: t.statement,
                lower: t.lower,
                upper: t.upper,
            });
            (class.cls, target, implied)
        }
        Level::FullCl => {
            let full = class.full.ok_or_else(|| BoundError::Level("cl (function field)".into()))?;
            notes.push(
                "S-kernel slack 0 ≤ rk Cl − rk Cl_S ≤ max(u − 1, 0); the published remark states the size bound l^(|S|−1)"
                    .into(),
            );
            for (real, closure) in [(true, "totally real"), (false, "totally complex")] {
                if let (Some(published), Some(derived)) =
                    (corollary_window(case, real), derived_window(&full, real, RK_RANGE))
                {
                    windows.push(WindowReport {
                        closure,
                        derived,
                        published,
                        contained: published.contains(&derived),
                    });
                }
            }
            let implied = (!windows.is_empty()).then(|| windows.iter().all(|w| w.contained));
            (full, None, implied)
        }
    };
    if !case.setting.is_function_field() {
        notes.push("number-field Euler constraint applied only to flagged modules and to T".into());
    }
    Ok(BoundReport {
        case: case.spec.family.id().to_string(),
        setting: case.setting.id.to_string(),
        params: Params {
            l: case.spec.l,
            r: case.spec.r,
        },
        level,
        objective: bound.objective,
        parameter: bound.parameter,
        lower: bound.lower,
        upper: bound.upper,
        lower_facets: bound.lower_facets,
        upper_facets: bound.upper_facets,
        paper_target: target,
        implies_paper: implied,
        windows,
        notes,
    })
}
