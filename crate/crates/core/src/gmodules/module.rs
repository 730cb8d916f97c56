use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use super::{ModuleError, ModuleMap};
use crate::groups::{FiniteGroup, Subgroup};
use crate::linalg::{span_basis, MatrixFl, Prime};

/// How the cyclotomic factor `B` acts. Every module here is a permutation
/// basis tensored with `μ_l`, so `B` acts through one global scalar and
/// the flag is all that needs recording.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Twist {
    Trivial,
    Cyclotomic,
}

/// A finite-dimensional `F_l[G]`-module acting on column vectors.
///
/// Only generator matrices are stored; `ρ(g)` for other elements is the
/// product along the group's word for `g`. Construction checks that this
/// extension is a homomorphism, which is equivalent to the generator
/// matrices satisfying the group's relations.
#[derive(Clone, Debug)]
pub struct GModule {
    group: Arc<FiniteGroup>,
    l: Prime,
    dim: usize,
    gens: Vec<MatrixFl>,
    twist: Twist,
    labels: Vec<String>,
    all: OnceLock<Vec<MatrixFl>>,
}

impl PartialEq for GModule {
    fn eq(&self, other: &Self) -> bool {
        same_group(&self.group, &other.group)
            && self.l == other.l
            && self.dim == other.dim
            && self.twist == other.twist
            && self.gens == other.gens
    }
}

impl Eq for GModule {}

pub(crate) fn same_group(a: &FiniteGroup, b: &FiniteGroup) -> bool {
    std::ptr::eq(a, b) || (a.family() == b.family() && a.params() == b.params())
}

impl GModule {
    pub fn new(
        group: Arc<FiniteGroup>,
        l: Prime,
        gens: Vec<MatrixFl>,
        twist: Twist,
        labels: Vec<String>,
    ) -> Result<Self, ModuleError> {
        if gens.len() != group.generators().len() {
            return Err(ModuleError::Mismatch(format!(
                "{} generator matrices for {} generators",
                gens.len(),
                group.generators().len()
            )));
        }
        let dim = gens.first().map_or(0, MatrixFl::rows);
        for m in &gens {
            if m.modulus() != l {
                return Err(ModuleError::Mismatch(format!("matrix over F_{} in an F_{l} module", m.modulus())));
            }
            if m.rows() != dim || m.cols() != dim {
                return Err(ModuleError::Mismatch("generator matrices must be square of equal size".into()));
            }
            if !m.is_invertible() {
                return Err(ModuleError::NotHomomorphism("a generator acts non-invertibly".into()));
            }
        }
        let labels = if labels.len() == dim {
            labels
        } else {
            (0..dim).map(|i| format!("e{i}")).collect()
        };
        let module = GModule {
            group,
            l,
            dim,
            gens,
            twist,
            labels,
            all: OnceLock::new(),
        };
        module.check_homomorphism()?;
        Ok(module)
    }

    fn from_parts_unchecked(
        group: Arc<FiniteGroup>,
        l: Prime,
        dim: usize,
        gens: Vec<MatrixFl>,
        twist: Twist,
        labels: Vec<String>,
    ) -> Self {
        GModule {
            group,
            l,
            dim,
            gens,
            twist,
            labels,
            all: OnceLock::new(),
        }
    }

    /// `ρ(x)ρ(s) = ρ(xs)` for every element `x` and generator `s`.
    fn check_homomorphism(&self) -> Result<(), ModuleError> {
        let g = &self.group;
        let all = self.all_matrices();
        for x in 0..g.order() {
            for (k, (name, s)) in g.generators().iter().enumerate() {
                let lhs = all[x].mul(&self.gens[k])?;
                if lhs != all[g.mul(x, *s)] {
                    return Err(ModuleError::NotHomomorphism(format!(
                        "relation fails at {} · {name}",
                        g.element_name(x)
                    )));
                }
            }
        }
        Ok(())
    }

    fn all_matrices(&self) -> &[MatrixFl] {
        self.all.get_or_init(|| {
            let g = &self.group;
            (0..g.order())
                .map(|x| {
                    g.word(x)
                        .iter()
                        .fold(MatrixFl::identity(self.l, self.dim), |acc, &k| {
                            acc.mul(&self.gens[k]).expect("same shape")
                        })
                })
                .collect()
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn modulus(&self) -> Prime {
        self.l
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn twist(&self) -> Twist {
        self.twist
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn generator_matrices(&self) -> &[MatrixFl] {
        &self.gens
    }

    pub fn act(&self, g: usize) -> &MatrixFl {
        &self.all_matrices()[g]
    }

    pub fn with_twist(mut self, twist: Twist) -> Self {
        self.twist = twist;
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        if labels.len() == self.dim {
            self.labels = labels;
        }
        self
    }

    pub fn is_trivial_action(&self) -> bool {
        self.gens.iter().all(|m| *m == MatrixFl::identity(self.l, self.dim))
    }

    pub fn identity_map(&self) -> ModuleMap {
        ModuleMap::new_unchecked(self.clone(), self.clone(), MatrixFl::identity(self.l, self.dim))
    }

    /// Span of `G` acting on the cosets of `h`, basis indexed by cosets in
    /// order of their smallest element.
    pub fn permutation(group: &Arc<FiniteGroup>, h: &Subgroup, l: Prime) -> Result<Self, ModuleError> {
        if !group.is_subgroup(h) {
            return Err(ModuleError::Mismatch("not a subgroup".into()));
        }
        let action = group.coset_action(h);
        let n = action.degree();
        let gens = group
            .generators()
            .iter()
            .map(|(_, s)| {
                let mut m = MatrixFl::zeros(l, n, n);
                for (i, &j) in action.perms[*s].iter().enumerate() {
                    m.set(j, i, 1);
                }
                m
            })
            .collect();
        let labels = (0..n)
            .map(|i| match action.representative(i) {
                e if e == group.identity() => "1".to_string(),
                x => group.element_name(x),
            })
            .collect();
        GModule::new(group.clone(), l, gens, Twist::Trivial, labels)
    }

    /// One-dimensional module with generator `k` acting by `weights[k]`.
    pub fn scalar(group: &Arc<FiniteGroup>, l: Prime, weights: &[u32]) -> Result<Self, ModuleError> {
        if weights.iter().any(|&w| w % l.get() == 0) {
            return Err(ModuleError::NotHomomorphism("zero weight".into()));
        }
        let gens = weights
            .iter()
            .map(|&w| MatrixFl::from_entries(l, 1, 1, vec![w % l.get()]))
            .collect::<Result<Vec<_>, _>>()?;
        GModule::new(group.clone(), l, gens, Twist::Trivial, vec!["1".into()])
    }

    pub fn trivial(group: &Arc<FiniteGroup>, l: Prime) -> Self {
        let n = group.generators().len();
        GModule::scalar(group, l, &vec![1; n]).expect("trivial action")
    }

    pub fn zero(group: &Arc<FiniteGroup>, l: Prime) -> Self {
        let n = group.generators().len();
        GModule::from_parts_unchecked(
            group.clone(),
            l,
            0,
            vec![MatrixFl::zeros(l, 0, 0); n],
            Twist::Trivial,
            Vec::new(),
        )
    }

    /// Smallest stable subspace containing `gens`, with its inclusion.
    pub fn submodule(&self, gens: &[Vec<u32>]) -> Result<(GModule, ModuleMap), ModuleError> {
        for v in gens {
            if v.len() != self.dim {
                return Err(ModuleError::Mismatch(format!("vector of length {} in a module of dim {}", v.len(), self.dim)));
            }
        }
        let mut basis = span_basis(self.l, self.dim, gens);
        loop {
            let mut grown = basis.clone();
            for m in &self.gens {
                for v in &basis {
                    grown.push(m.mul_vec(v)?);
                }
            }
            let next = span_basis(self.l, self.dim, &grown);
            if next.len() == basis.len() {
                break;
            }
            basis = next;
        }
        self.stable_subspace(basis)
    }

    /// Builds the submodule on an already stable basis.
    fn stable_subspace(&self, basis: Vec<Vec<u32>>) -> Result<(GModule, ModuleMap), ModuleError> {
        let k = basis.len();
        let incl = MatrixFl::from_columns(self.l, self.dim, &basis)?;
        let mut gens = Vec::with_capacity(self.gens.len());
        for m in &self.gens {
            let mut cols = Vec::with_capacity(k);
            for v in &basis {
                let w = m.mul_vec(v)?;
                cols.push(incl.solve(&w)?.ok_or(ModuleError::NotStable)?);
            }
            gens.push(MatrixFl::from_columns(self.l, k, &cols)?);
        }
        let labels = basis.iter().map(|v| self.describe(v)).collect();
        let sub = GModule::from_parts_unchecked(self.group.clone(), self.l, k, gens, self.twist, labels);
        let map = ModuleMap::new_unchecked(sub.clone(), self.clone(), incl);
        Ok((sub, map))
    }

    /// Renders a vector in terms of basis labels, e.g. `1+τ+τ²`.
    pub fn describe(&self, v: &[u32]) -> String {
        let mut out = String::new();
        for (i, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let neg = self.l.get() > 2 && c == self.l.get() - 1;
            if !out.is_empty() || neg {
                out.push(if neg { '-' } else { '+' });
            }
            if c != 1 && !neg {
                out.push_str(&c.to_string());
            }
            out.push_str(&self.labels[i]);
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }

    /// `M / S` where `sub` is the inclusion of a stable subspace. The
    /// quotient basis completes the submodule basis with standard vectors
    /// at non-pivot positions.
    pub fn quotient(&self, sub: &ModuleMap) -> Result<(GModule, ModuleMap), ModuleError> {
        if sub.target() != self {
            return Err(ModuleError::Mismatch("submodule of a different module".into()));
        }
        let s = sub.matrix();
        let rref = s.transpose().rref();
        if rref.rank != s.cols() {
            return Err(ModuleError::Mismatch("submodule map is not injective".into()));
        }
        let free: Vec<usize> = (0..self.dim).filter(|c| !rref.pivots.contains(c)).collect();
        let q = free.len();
        let mut cols = s.columns();
        for &i in &free {
            let mut e = vec![0u32; self.dim];
            e[i] = 1;
            cols.push(e);
        }
        let change = MatrixFl::from_columns(self.l, self.dim, &cols)?;
        let inv = change.inverse().ok_or(ModuleError::NotStable)?;
        let k = s.cols();
        let mut proj = MatrixFl::zeros(self.l, q, self.dim);
        for i in 0..q {
            for j in 0..self.dim {
                proj.set(i, j, inv.get(k + i, j));
            }
        }
        let mut gens = Vec::with_capacity(self.gens.len());
        for m in &self.gens {
            let image = proj.mul(m)?;
            if !image.mul(s)?.is_zero() {
                return Err(ModuleError::NotStable);
            }
            let mut g = MatrixFl::zeros(self.l, q, q);
            for (jj, &j) in free.iter().enumerate() {
                for i in 0..q {
                    g.set(i, jj, image.get(i, j));
                }
            }
            gens.push(g);
        }
        let labels = free.iter().map(|&i| format!("[{}]", self.labels[i])).collect();
        let quot = GModule::from_parts_unchecked(self.group.clone(), self.l, q, gens, self.twist, labels);
        let map = ModuleMap::new_unchecked(self.clone(), quot.clone(), proj);
        Ok((quot, map))
    }

    pub fn direct_sum(&self, other: &GModule) -> Result<GModule, ModuleError> {
        self.check_compatible(other)?;
        let gens = self
            .gens
            .iter()
            .zip(&other.gens)
            .map(|(a, b)| a.block_diag(b))
            .collect::<Result<Vec<_>, _>>()?;
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        Ok(GModule::from_parts_unchecked(
            self.group.clone(),
            self.l,
            self.dim + other.dim,
            gens,
            self.twist,
            labels,
        ))
    }

    pub(crate) fn check_compatible(&self, other: &GModule) -> Result<(), ModuleError> {
        if !same_group(&self.group, &other.group) {
            return Err(ModuleError::Mismatch("modules over different groups".into()));
        }
        if self.l != other.l {
            return Err(ModuleError::Mismatch(format!("F_{} vs F_{}", self.l, other.l)));
        }
        Ok(())
    }

    /// Basis of the vectors fixed by every element of `h`.
    pub fn invariants(&self, h: &Subgroup) -> Vec<Vec<u32>> {
        if self.dim == 0 {
            return Vec::new();
        }
        let id = MatrixFl::identity(self.l, self.dim);
        let mut stacked = MatrixFl::zeros(self.l, 0, self.dim);
        for &x in h.elements() {
            if x == self.group.identity() {
                continue;
            }
            let d = self.act(x).sub(&id).expect("same shape");
            stacked = stacked.vstack(&d).expect("same width");
        }
        stacked.kernel_basis()
    }

    pub fn invariant_dim(&self, h: &Subgroup) -> usize {
        self.invariants(h).len()
    }

    /// Submodule spanned by `1, x, …, x^k` evaluated at `nodes`, i.e. the
    /// vectors with entry `a(nodes[i])` at basis position `i` for every
    /// polynomial `a` of degree at most `k`. Fails if that span is not
    /// stable or `k` is out of range.
    pub fn poly_filtration(&self, nodes: &[u32], k: usize) -> Result<(GModule, ModuleMap), ModuleError> {
        if nodes.len() != self.dim {
            return Err(ModuleError::Mismatch(format!("{} nodes for dim {}", nodes.len(), self.dim)));
        }
        if k >= self.dim {
            return Err(ModuleError::Range(format!("degree {k} for a module of dim {}", self.dim)));
        }
        let vectors: Vec<Vec<u32>> = (0..=k)
            .map(|j| nodes.iter().map(|&x| self.l.pow(x, j as u64)).collect())
            .collect();
        let basis = span_basis(self.l, self.dim, &vectors);
        if basis.len() != k + 1 {
            return Err(ModuleError::Range("evaluation nodes are not distinct".into()));
        }
        self.stable_subspace(basis)
    }
}
