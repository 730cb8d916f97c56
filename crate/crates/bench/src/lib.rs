//! Fixed inputs shared by the benchmarks.

use reflectlab_core::{build_case, CaseInstance, CaseSpec, Family, SettingId};

/// Every grid case in every setting it admits.
pub fn all_cases() -> Vec<CaseInstance> {
    CaseSpec::grid()
        .into_iter()
        .flat_map(|spec| spec.settings().into_iter().map(move |s| (spec, s)))
        .map(|(spec, s)| build_case(spec, s).expect("grid cases build"))
        .collect()
}

/// The largest projection in the grid.
pub fn heaviest() -> CaseInstance {
    let spec = CaseSpec::new(Family::SemiDirect, Some(7), Some(3)).expect("valid parameters");
    build_case(spec, SettingId::Nf).expect("builds")
}
