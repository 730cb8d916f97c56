use serde::{Deserialize, Serialize};

use super::BoundError;
use crate::catalog::Setting;

/// What the unit rank of a number field depends on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub degree: u32,
    pub r1: u32,
    pub r2: u32,
    /// Number of primes above `l`.
    pub u: u32,
    /// Whether `μ_l ⊂ K`, i.e. `l` divides the order of the torsion units.
    pub torsion: bool,
}

impl FieldDescriptor {
    pub fn new(degree: u32, r1: u32, r2: u32, u: u32, torsion: bool) -> Result<Self, BoundError> {
        if degree == 0 || r1 + 2 * r2 != degree {
            return Err(BoundError::Descriptor(format!(
                "signature ({r1}, {r2}) does not match degree {degree}"
            )));
        }
        if !(1..=degree).contains(&u) {
            return Err(BoundError::Descriptor(format!("{u} primes above l in a degree {degree} field")));
        }
        Ok(FieldDescriptor {
            degree,
            r1,
            r2,
            u,
            torsion,
        })
    }

    /// Rank of the unit group `r₁ + r₂ − 1`.
    pub fn s(&self) -> u32 {
        self.r1 + self.r2 - 1
    }
}

/// `dim_{F_l}` of the `S`-units modulo `l`th powers: over a function field
/// `1` if `μ_l ⊂ F_p` and `0` otherwise; over a number field
/// `s + u + t` with `t = 1` iff `μ_l ⊂ K`.
pub fn unit_rank(desc: Option<&FieldDescriptor>, setting: &Setting) -> Result<u32, BoundError> {
    if setting.is_function_field() {
        return Ok(u32::from(setting.mu_in_base));
    }
    let d = desc.ok_or_else(|| BoundError::Descriptor("number-field unit rank needs a descriptor".into()))?;
    FieldDescriptor::new(d.degree, d.r1, d.r2, d.u, d.torsion)?;
    Ok(d.s() + d.u + u32::from(d.torsion))
}
