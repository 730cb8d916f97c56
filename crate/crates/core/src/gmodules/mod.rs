//! `F_l[G]`-modules: permutation and scalar modules, sub- and quotient
//! modules, direct sums, invariants, equivariant maps, short exact
//! sequences and isomorphism testing.

mod maps;
mod module;

pub use maps::{
    hom_space, is_isomorphic, ExactnessReport, InvariantReport, IsoVerdict, ModuleMap, ShortExactSeq,
};
pub use module::{GModule, Twist};

use thiserror::Error;

use crate::linalg::LinalgError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("action is not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("incompatible modules: {0}")]
    Mismatch(String),
    #[error("subspace is not stable under the action")]
    NotStable,
    #[error("map is not equivariant")]
    NotEquivariant,
    #[error("out of range: {0}")]
    Range(String),
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::groups::{build_group, Family};
    use crate::linalg::{MatrixFl, Prime};

    fn p(l: u32) -> Prime {
        Prime::new(l).unwrap()
    }

    fn s3() -> Arc<crate::groups::FiniteGroup> {
        Arc::new(build_group(Family::S3, None, None).unwrap())
    }

    #[test]
    fn s3_permutation_modules() {
        let g = s3();
        let m = GModule::permutation(&g, &g.subgroup_generated(&[g.sigma()]), p(3)).unwrap();
        let n = GModule::permutation(&g, &g.subgroup_generated(&[g.tau()]), p(3)).unwrap();
        assert_eq!((m.dim(), n.dim()), (3, 2));
        assert_eq!(m.labels(), &["1", "τ", "τ²"]);
        let t = GModule::permutation(&g, &g.whole(), p(3)).unwrap();
        assert!(t.is_trivial_action() && t.dim() == 1);
    }

    #[test]
    fn s3_norm_submodule_and_quotient() {
        let g = s3();
        let m = GModule::permutation(&g, &g.subgroup_generated(&[g.sigma()]), p(3)).unwrap();
        let (t1, incl) = m.submodule(&[vec![1, 1, 1]]).unwrap();
        assert_eq!(t1.dim(), 1);
        assert!(t1.is_trivial_action());
        let (mp, proj) = m.quotient(&incl).unwrap();
        assert_eq!(mp.dim(), 2);
        let seq = ShortExactSeq::new("first", incl, proj).unwrap();
        assert!(seq.check_exact().pass);
        let (whole, _) = m.submodule(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(whole, m);
    }

    #[test]
    fn scalar_relations_checked() {
        let g = s3();
        assert!(GModule::scalar(&g, p(3), &[2, 1]).is_ok());
        // τ ↦ 2 violates τ³ = e over F_3? 2³ = 8 ≡ 2, so it must fail
        assert!(GModule::scalar(&g, p(3), &[1, 2]).is_err());
        let sd = Arc::new(build_group(Family::SemiDirect, Some(7), Some(3)).unwrap());
        assert!(GModule::scalar(&sd, p(7), &[4, 1]).is_ok());
        assert!(GModule::scalar(&sd, p(7), &[3, 1]).is_err());
    }

    #[test]
    fn hom_and_iso() {
        let g = s3();
        let m = GModule::permutation(&g, &g.subgroup_generated(&[g.sigma()]), p(3)).unwrap();
        let t = GModule::trivial(&g, p(3));
        assert_eq!(hom_space(&m, &t).unwrap().len(), 1);
        assert_eq!(hom_space(&t, &t).unwrap().len(), 1);
        let d5 = Arc::new(build_group(Family::D2l, Some(5), None).unwrap());
        let triv = GModule::trivial(&d5, p(5));
        let sign = GModule::scalar(&d5, p(5), &[4, 1]).unwrap();
        assert_eq!(is_isomorphic(&triv, &sign).unwrap(), IsoVerdict::NotIsomorphic);
        assert_eq!(is_isomorphic(&sign, &sign).unwrap(), IsoVerdict::Isomorphic);
    }

    #[test]
    fn equivariance_detects_perturbation() {
        let g = s3();
        let m = GModule::permutation(&g, &g.subgroup_generated(&[g.sigma()]), p(3)).unwrap();
        assert!(m.identity_map().check_equivariant());
        let mut bad = MatrixFl::identity(p(3), 3);
        bad.set(0, 1, 1);
        assert!(ModuleMap::new(m.clone(), m, bad).is_err());
    }

    #[test]
    fn invariants_of_permutation_module() {
        let g = s3();
        let m = GModule::permutation(&g, &g.subgroup_generated(&[g.sigma()]), p(3)).unwrap();
        assert_eq!(m.invariant_dim(&g.subgroup_generated(&[g.tau()])), 1);
        assert_eq!(m.invariant_dim(&g.trivial_subgroup()), 3);
        let s4 = Arc::new(build_group(Family::S4, None, None).unwrap());
        let m4 = GModule::permutation(&s4, &s4.point_stabilizer(0).unwrap(), p(2)).unwrap();
        for h in s4.transposition_subgroups() {
            assert_eq!(m4.invariant_dim(&h), 3);
        }
    }

    #[test]
    fn filtration_range() {
        let d5 = Arc::new(build_group(Family::D2l, Some(5), None).unwrap());
        let m = GModule::permutation(&d5, &d5.subgroup_generated(&[d5.sigma()]), p(5)).unwrap();
        let nodes: Vec<u32> = (0..5).collect();
        let (m0, _) = m.poly_filtration(&nodes, 0).unwrap();
        assert!(m0.is_trivial_action());
        let (m4, _) = m.poly_filtration(&nodes, 4).unwrap();
        assert_eq!(m4.dim(), 5);
        assert!(m.poly_filtration(&nodes, 5).is_err());
    }
}
