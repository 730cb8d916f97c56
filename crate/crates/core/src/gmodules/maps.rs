use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use super::{GModule, ModuleError};
use crate::groups::Subgroup;
use crate::linalg::{span_basis, MatrixFl};

/// Linear map `source → target`, stored as a `target.dim × source.dim`
/// matrix acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    source: GModule,
    target: GModule,
    matrix: MatrixFl,
}

impl ModuleMap {
    /// Checks shapes, shared group and field, and equivariance.
    pub fn new(source: GModule, target: GModule, matrix: MatrixFl) -> Result<Self, ModuleError> {
        source.check_compatible(&target)?;
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() || matrix.modulus() != source.modulus() {
            return Err(ModuleError::Mismatch(format!(
                "{}x{} matrix for a map of dims {} -> {}",
                matrix.rows(),
                matrix.cols(),
                source.dim(),
                target.dim()
            )));
        }
        let f = ModuleMap::new_unchecked(source, target, matrix);
        if !f.check_equivariant() {
            return Err(ModuleError::NotEquivariant);
        }
        Ok(f)
    }

    pub(crate) fn new_unchecked(source: GModule, target: GModule, matrix: MatrixFl) -> Self {
        ModuleMap { source, target, matrix }
    }

    pub fn source(&self) -> &GModule {
        &self.source
    }

    pub fn target(&self) -> &GModule {
        &self.target
    }

    pub fn matrix(&self) -> &MatrixFl {
        &self.matrix
    }

    /// `f ρ_A(g) = ρ_B(g) f` for every generator `g`.
    pub fn check_equivariant(&self) -> bool {
        self.source
            .generator_matrices()
            .iter()
            .zip(self.target.generator_matrices())
            .all(|(a, b)| match (self.matrix.mul(a), b.mul(&self.matrix)) {
                (Ok(x), Ok(y)) => x == y,
                _ => false,
            })
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim()
    }

    pub fn kernel(&self) -> Vec<Vec<u32>> {
        self.matrix.kernel_basis()
    }

    pub fn image(&self) -> Vec<Vec<u32>> {
        self.matrix.image_basis()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ModuleMap) -> Result<ModuleMap, ModuleError> {
        if self.target != other.source {
            return Err(ModuleError::Mismatch("maps do not compose".into()));
        }
        Ok(ModuleMap::new_unchecked(
            self.source.clone(),
            other.target.clone(),
            other.matrix.mul(&self.matrix)?,
        ))
    }

    /// The map `A → B` with `g ∘ h = self`, for `self: A → M` and an
    /// injective `g: B → M` whose image contains the image of `self`.
    pub fn factor_through(&self, g: &ModuleMap) -> Result<ModuleMap, ModuleError> {
        if self.target != g.target || !g.is_injective() {
            return Err(ModuleError::Mismatch("cannot factor through this map".into()));
        }
        let mut cols = Vec::with_capacity(self.source.dim());
        for v in self.matrix.columns() {
            cols.push(g.matrix.solve(&v)?.ok_or(ModuleError::NotStable)?);
        }
        let m = MatrixFl::from_columns(self.source.modulus(), g.source.dim(), &cols)?;
        Ok(ModuleMap::new_unchecked(self.source.clone(), g.source.clone(), m))
    }
}

/// `0 → A → B → C → 0`.
#[derive(Clone, Debug)]
pub struct ShortExactSeq {
    pub name: String,
    pub inclusion: ModuleMap,
    pub projection: ModuleMap,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    pub dims: [usize; 3],
    pub injective: bool,
    pub surjective: bool,
    pub image_is_kernel: bool,
    pub equivariant: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub dims: [usize; 3],
    pub left_exact: bool,
    pub fully_exact: bool,
}

impl ShortExactSeq {
    pub fn new(name: impl Into<String>, inclusion: ModuleMap, projection: ModuleMap) -> Result<Self, ModuleError> {
        if inclusion.target != projection.source {
            return Err(ModuleError::Mismatch("middle terms differ".into()));
        }
        Ok(ShortExactSeq {
            name: name.into(),
            inclusion,
            projection,
        })
    }

    /// The sequence `0 → S → M → M/S → 0` for the inclusion of `S`.
    pub fn from_submodule(name: impl Into<String>, inclusion: ModuleMap) -> Result<Self, ModuleError> {
        let (_, projection) = inclusion.target.quotient(&inclusion)?;
        ShortExactSeq::new(name, inclusion, projection)
    }

    pub fn a(&self) -> &GModule {
        &self.inclusion.source
    }

    pub fn b(&self) -> &GModule {
        &self.inclusion.target
    }

    pub fn c(&self) -> &GModule {
        &self.projection.target
    }

    pub fn check_exact(&self) -> ExactnessReport {
        let dims = [self.a().dim(), self.b().dim(), self.c().dim()];
        let injective = self.inclusion.is_injective();
        let surjective = self.projection.is_surjective();
        let composite_zero = self
            .projection
            .matrix
            .mul(&self.inclusion.matrix)
            .map(|m| m.is_zero())
            .unwrap_or(false);
        let ker = self.projection.kernel().len();
        let image_is_kernel = composite_zero && ker == self.inclusion.rank();
        let equivariant = self.inclusion.check_equivariant() && self.projection.check_equivariant();
        let pass = injective && surjective && image_is_kernel && equivariant && dims[0] + dims[2] == dims[1];
        ExactnessReport {
            dims,
            injective,
            surjective,
            image_is_kernel,
            equivariant,
            pass,
        }
    }

    /// Exactness of `0 → A^H → B^H → C^H → 0`.
    pub fn invariant_sequence(&self, h: &Subgroup) -> InvariantReport {
        let a_h = self.a().invariants(h);
        let b_h = self.b().invariants(h);
        let c_h = self.c().invariants(h);
        let l = self.b().modulus();
        let dims = [a_h.len(), b_h.len(), c_h.len()];
        let image_of = |f: &MatrixFl, vs: &[Vec<u32>], n: usize| -> Vec<Vec<u32>> {
            let imgs: Vec<Vec<u32>> = vs.iter().map(|v| f.mul_vec(v).expect("shape")).collect();
            span_basis(l, n, &imgs)
        };
        let i_img = image_of(&self.inclusion.matrix, &a_h, self.b().dim());
        let injective = i_img.len() == a_h.len();
        let p_img = image_of(&self.projection.matrix, &b_h, self.c().dim());
        // dim ker(p|B^H) = dim B^H − rank(p|B^H)
        let ker_dim = b_h.len() - p_img.len();
        let left_exact = injective && ker_dim == a_h.len();
        let fully_exact = left_exact && p_img.len() == c_h.len();
        InvariantReport {
            dims,
            left_exact,
            fully_exact,
        }
    }
}

/// Basis of `Hom_G(A, B)`.
pub fn hom_space(a: &GModule, b: &GModule) -> Result<Vec<ModuleMap>, ModuleError> {
    a.check_compatible(b)?;
    let (m, n) = (b.dim(), a.dim());
    let l = a.modulus();
    if m == 0 || n == 0 {
        return Ok(Vec::new());
    }
    // unknown X[i][j] at position i*n + j; X ρ_A(g) − ρ_B(g) X = 0
    let gens = a.generator_matrices().len();
    let mut sys = MatrixFl::zeros(l, m * n * gens, m * n);
    for (g, (ra, rb)) in a.generator_matrices().iter().zip(b.generator_matrices()).enumerate() {
        for i in 0..m {
            for j in 0..n {
                let row = g * m * n + i * n + j;
                for k in 0..n {
                    let c = ra.get(k, j);
                    let idx = i * n + k;
                    sys.set(row, idx, l.add(sys.get(row, idx), c));
                }
                for k in 0..m {
                    let c = rb.get(i, k);
                    let idx = k * n + j;
                    sys.set(row, idx, l.sub(sys.get(row, idx), c));
                }
            }
        }
    }
    sys.kernel_basis()
        .into_iter()
        .map(|v| {
            let mat = MatrixFl::from_entries(l, m, n, v)?;
            Ok(ModuleMap::new_unchecked(a.clone(), b.clone(), mat))
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum IsoVerdict {
    Isomorphic,
    NotIsomorphic,
    Undetermined,
}

impl IsoVerdict {
    pub fn is_isomorphic(self) -> bool {
        self == IsoVerdict::Isomorphic
    }
}

const EXHAUSTIVE_LIMIT: u64 = 1_000_000;
const RANDOM_TRIALS: usize = 10_000;

/// Searches `Hom_G(A, B)` for an invertible element: exhaustively when the
/// space has at most 10⁶ elements, else by seeded random combinations.
pub fn is_isomorphic(a: &GModule, b: &GModule) -> Result<IsoVerdict, ModuleError> {
    a.check_compatible(b)?;
    if a.dim() != b.dim() {
        return Ok(IsoVerdict::NotIsomorphic);
    }
    if a.dim() == 0 {
        return Ok(IsoVerdict::Isomorphic);
    }
    let basis = hom_space(a, b)?;
    if basis.is_empty() {
        return Ok(IsoVerdict::NotIsomorphic);
    }
    let l = a.modulus();
    let h = basis.len() as u32;
    let combine = |coeffs: &[u32]| -> MatrixFl {
        basis
            .iter()
            .zip(coeffs)
            .fold(MatrixFl::zeros(l, a.dim(), a.dim()), |acc, (f, &c)| {
                acc.add(&f.matrix.scale(c)).expect("same shape")
            })
    };
    let total = (l.get() as u64).checked_pow(h);
    if total.is_some_and(|t| t <= EXHAUSTIVE_LIMIT) {
        let mut coeffs = vec![0u32; basis.len()];
        loop {
            if combine(&coeffs).is_invertible() {
                return Ok(IsoVerdict::Isomorphic);
            }
            // odometer increment
            let mut i = 0;
            loop {
                if i == coeffs.len() {
                    return Ok(IsoVerdict::NotIsomorphic);
                }
                coeffs[i] += 1;
                if coeffs[i] < l.get() {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..RANDOM_TRIALS {
        let coeffs: Vec<u32> = (0..basis.len()).map(|_| rng.random_range(0..l.get())).collect();
        if combine(&coeffs).is_invertible() {
            return Ok(IsoVerdict::Isomorphic);
        }
    }
    Ok(IsoVerdict::Undetermined)
}
