use std::sync::Arc;

use super::{
    verify_case, CaseInstance, CaseSpec, CatalogError, DirectSumRecord, ModuleSlot, SequenceRecord, Setting, SettingId,
    SlotKind, M, N, N_PRIME, T, ZERO,
};
use crate::gmodules::{is_isomorphic, GModule, IsoVerdict, ModuleError, ModuleMap, ShortExactSeq, Twist};
use crate::groups::{build_group, Family, FiniteGroup, Subgroup};
use crate::linalg::{MatrixFl, Prime};

/// Builds the case bundle and runs [`verify_case`] on it. Any failed
/// exactness, identification or direct-sum check is an error.
pub fn build_case(spec: CaseSpec, setting: SettingId) -> Result<CaseInstance, CatalogError> {
    let setting = Setting::new(setting, spec.l)?;
    let group = Arc::new(build_group(spec.family, Some(spec.l), spec.r)?);
    let l = Prime::new(spec.l).map_err(|e| CatalogError::Parameter(e.to_string()))?;
    let twist = if setting.b_nontrivial { Twist::Cyclotomic } else { Twist::Trivial };
    let mut b = Builder {
        spec,
        setting,
        group,
        l,
        twist,
        slots: Vec::new(),
        sequences: Vec::new(),
        auxiliary: Vec::new(),
        direct_sums: Vec::new(),
        factors: Vec::new(),
        parameter_slots: Vec::new(),
        notes: Vec::new(),
    };
    b.slot(ZERO, GModule::zero(&b.group, l).with_twist(twist), SlotKind::Zero);
    b.slot(T, b.trivial(), SlotKind::Ambient);
    match spec.family {
        Family::S3 => s3(&mut b)?,
        Family::S4 | Family::A4 => tetrahedral(&mut b)?,
        Family::D2l => dihedral(&mut b)?,
        Family::SemiDirect => semidirect(&mut b)?,
    }
    let case = b.finish()?;
    let report = verify_case(&case);
    if !report.pass {
        return Err(CatalogError::Verification(report.failures().join("; ")));
    }
    Ok(case)
}

struct Builder {
    spec: CaseSpec,
    setting: Setting,
    group: Arc<FiniteGroup>,
    l: Prime,
    twist: Twist,
    slots: Vec<(String, GModule, SlotKind)>,
    sequences: Vec<SequenceRecord>,
    auxiliary: Vec<SequenceRecord>,
    direct_sums: Vec<DirectSumRecord>,
    factors: Vec<(usize, String)>,
    parameter_slots: Vec<String>,
    notes: Vec<String>,
}

impl Builder {
    fn trivial(&self) -> GModule {
        GModule::trivial(&self.group, self.l).with_twist(self.twist)
    }

    fn permutation(&self, h: &Subgroup) -> Result<GModule, CatalogError> {
        Ok(GModule::permutation(&self.group, h, self.l)?.with_twist(self.twist))
    }

    fn slot(&mut self, name: &str, module: GModule, kind: SlotKind) {
        self.slots.push((name.to_string(), module, kind));
    }

    fn lookup(&self, name: &str) -> Option<&GModule> {
        self.slots.iter().find(|s| s.0 == name).map(|s| &s.1)
    }

    /// Binds `module` to slot `name`, creating it or checking isomorphism
    /// with the module already there.
    fn identify(&mut self, name: &str, module: &GModule) -> Result<(), CatalogError> {
        match self.lookup(name) {
            None => {
                self.slot(name, module.clone(), SlotKind::Unknown);
                Ok(())
            }
            Some(existing) => match is_isomorphic(existing, module)? {
                IsoVerdict::Isomorphic => Ok(()),
                v => Err(CatalogError::Verification(format!(
                    "term identified with `{name}` is {v:?} to it"
                ))),
            },
        }
    }

    fn sequence(&mut self, seq: ShortExactSeq, slots: [&str; 3]) -> Result<(), CatalogError> {
        let report = seq.check_exact();
        if !report.pass {
            return Err(CatalogError::Verification(format!("`{}` is not exact: {report:?}", seq.name)));
        }
        self.identify(slots[0], seq.a())?;
        self.identify(slots[1], seq.b())?;
        self.identify(slots[2], seq.c())?;
        self.factors.push((self.sequences.len(), slots[2].to_string()));
        self.sequences.push(SequenceRecord {
            seq,
            slots: slots.map(str::to_string),
        });
        Ok(())
    }

    fn direct_sum(&mut self, whole: &str, parts: &[&str]) {
        self.direct_sums.push(DirectSumRecord {
            whole: whole.to_string(),
            parts: parts.iter().map(|s| s.to_string()).collect(),
        });
    }

    /// `0 → 0 → M_0 → T → 0`, closing a ladder whose bottom piece is
    /// the constants.
    fn bottom_row(&mut self, m0: &GModule, m0_name: &str) -> Result<(), CatalogError> {
        let zero = self.lookup(ZERO).expect("zero slot").clone();
        let incl = ModuleMap::new_unchecked(zero, m0.clone(), MatrixFl::zeros(self.l, m0.dim(), 0));
        let seq = ShortExactSeq::from_submodule(format!("0→0→{m0_name}→T→0"), incl)?;
        self.sequence(seq, [ZERO, m0_name, T])
    }

    /// `M_{k−1} → M_k → C_k` for `k = top..1`, then the bottom row. The
    /// top piece is bound to `M`.
    fn ladder(
        &mut self,
        m: &GModule,
        nodes: &[u32],
        quotient_slot: impl Fn(usize) -> String,
    ) -> Result<(), CatalogError> {
        let top = m.dim() - 1;
        let name = |k: usize| if k == top { M.to_string() } else { format!("M_{k}") };
        let pieces = (0..=top)
            .map(|k| m.poly_filtration(nodes, k))
            .collect::<Result<Vec<_>, _>>()?;
        for k in (1..=top).rev() {
            let incl = pieces[k - 1].1.factor_through(&pieces[k].1)?;
            let c = quotient_slot(k);
            let seq = ShortExactSeq::from_submodule(format!("0→{}→{}→{c}→0", name(k - 1), name(k)), incl)?;
            self.sequence(seq, [&name(k - 1), &name(k), &c])?;
        }
        self.bottom_row(&pieces[0].0, &name(0))
    }

    fn finish(self) -> Result<CaseInstance, CatalogError> {
        let whole = self.group.whole();
        let nf = !self.setting.is_function_field();
        let semidirect = self.spec.family == Family::SemiDirect;
        let mut slots = Vec::with_capacity(self.slots.len());
        for (name, module, kind) in self.slots {
            let h0 = if self.setting.b_nontrivial {
                0
            } else {
                module.invariant_dim(&whole) as u32
            };
            if kind == SlotKind::Ambient && h0 != self.setting.ambient[0] {
                return Err(CatalogError::Verification(format!(
                    "h0(T) = {h0} but μ_l has h0 = {}",
                    self.setting.ambient[0]
                )));
            }
            let ladder_piece = name == M || name.starts_with("M_");
            let euler = match kind {
                SlotKind::Zero => false,
                SlotKind::Ambient => true,
                SlotKind::Unknown => !nf || (semidirect && ladder_piece),
            };
            slots.push(ModuleSlot {
                name,
                module,
                kind,
                h0,
                euler,
            });
        }
        let inertia_family = inertia_family(&self.group, self.spec.family, self.l.get())?;
        Ok(CaseInstance {
            spec: self.spec,
            setting: self.setting,
            group: self.group,
            slots,
            sequences: self.sequences,
            direct_sums: self.direct_sums,
            inertia_family,
            parameter_slots: self.parameter_slots,
            factors: self.factors,
            auxiliary_sequences: self.auxiliary,
            notes: self.notes,
        })
    }
}

/// Subgroups that can occur as inertia: order prime to `l`, or for
/// `S4`/`A4` meeting the Klein four-group trivially.
fn inertia_family(group: &FiniteGroup, family: Family, l: u32) -> Result<Vec<Subgroup>, CatalogError> {
    let all = group.all_subgroups()?;
    Ok(match family {
        Family::S4 | Family::A4 => {
            let v4 = group
                .klein_four()
                .ok_or_else(|| CatalogError::Parameter("no Klein four-group".into()))?;
            all.into_iter().filter(|h| h.intersection(&v4).is_trivial()).collect()
        }
        _ => all.into_iter().filter(|h| h.order() % l as usize != 0).collect(),
    })
}

/// `N' = ⟨1 − σ⟩` inside `N = F_l[G/⟨τ⟩]`, basis `1, σ`.
fn n_prime(n: &GModule, l: Prime) -> Result<(GModule, ModuleMap), CatalogError> {
    let (np, incl) = n.submodule(&[vec![1, l.neg(1)]])?;
    if np.dim() != 1 {
        return Err(CatalogError::Verification("1 − σ does not span a line".into()));
    }
    Ok((np, incl))
}

fn s3(b: &mut Builder) -> Result<(), CatalogError> {
    let g = b.group.clone();
    let l = b.l;
    let m = b.permutation(&g.subgroup_generated(&[g.sigma()]))?;
    let n = b.permutation(&g.subgroup_generated(&[g.tau()]))?;
    b.identify(M, &m)?;
    b.identify(N, &n)?;

    // ⟨1+τ+τ²⟩ is the trivial line
    let (_, norm) = m.submodule(&[vec![1, 1, 1]])?;
    let seq1 = ShortExactSeq::from_submodule("0→T→M→M'→0", norm)?;
    let mp = seq1.c().clone();
    let to_mp = seq1.projection.clone();
    b.sequence(seq1, [T, M, "M'"])?;

    // 1 − σ ↦ class of 1 − τ
    let (np, _) = n_prime(&n, l)?;
    let img = to_mp.matrix().mul_vec(&[1, l.neg(1), 0]).map_err(ModuleError::from)?;
    let f = ModuleMap::new(np, mp.clone(), MatrixFl::from_columns(l, mp.dim(), &[img]).map_err(ModuleError::from)?)?;
    let seq2 = ShortExactSeq::from_submodule("0→N'→M'→T→0", f)?;
    b.sequence(seq2, [N_PRIME, "M'", T])?;

    b.direct_sum(N, &[N_PRIME, T]);
    b.parameter_slots.push(N_PRIME.to_string());
    Ok(())
}

fn tetrahedral(b: &mut Builder) -> Result<(), CatalogError> {
    let g = b.group.clone();
    let stab = g
        .point_stabilizer(0)
        .ok_or_else(|| CatalogError::Parameter("not a permutation group".into()))?;
    let n_sub = match b.spec.family {
        Family::S4 => g.pair_partition_stabilizer(),
        _ => g.klein_four(),
    }
    .ok_or_else(|| CatalogError::Parameter("missing subgroup".into()))?;
    let m = b.permutation(&stab)?;
    let n = b.permutation(&n_sub)?;
    b.identify(M, &m)?;
    b.identify(N, &n)?;

    let (m1, m1_incl) = m.submodule(&[vec![1, 1, 0, 0], vec![1, 0, 1, 0], vec![1, 0, 0, 1]])?;
    if m1.dim() != 3 {
        return Err(CatalogError::Verification("augmentation submodule has wrong dimension".into()));
    }
    let seq1 = ShortExactSeq::from_submodule("0→M1→M→T→0", m1_incl.clone())?;
    b.sequence(seq1, ["M1", M, T])?;

    let (_, diag) = m.submodule(&[vec![1, 1, 1, 1]])?;
    let diag_in_m1 = diag.factor_through(&m1_incl)?;
    let seq2 = ShortExactSeq::from_submodule("0→T→M1→N'→0", diag_in_m1)?;
    b.sequence(seq2, [T, "M1", N_PRIME])?;

    b.direct_sum(N, &[N_PRIME, T]);
    b.parameter_slots.push(N_PRIME.to_string());
    if b.spec.family == Family::A4 {
        b.notes
            .push("A4 contains no transpositions; the (3, 2, 1) invariant check applies to S4 only".into());
    }
    Ok(())
}

fn dihedral(b: &mut Builder) -> Result<(), CatalogError> {
    let g = b.group.clone();
    let l = b.l;
    let m = b.permutation(&g.subgroup_generated(&[g.sigma()]))?;
    let n = b.permutation(&g.subgroup_generated(&[g.tau()]))?;
    b.identify(M, &m)?;
    b.identify(N, &n)?;
    let (np, _) = n_prime(&n, l)?;
    b.identify(N_PRIME, &np)?;

    // basis position i is τ^i; degree-k polynomials in i
    let nodes: Vec<u32> = (0..l.get()).collect();
    b.ladder(&m, &nodes, |k| if k % 2 == 0 { T.to_string() } else { N_PRIME.to_string() })?;

    b.direct_sum(N, &[N_PRIME, T]);
    b.parameter_slots.push(N_PRIME.to_string());
    Ok(())
}

fn semidirect(b: &mut Builder) -> Result<(), CatalogError> {
    let g = b.group.clone();
    let l = b.l;
    let r = b.spec.r.expect("semidirect has r") as usize;
    let zeta = g
        .params()
        .zeta
        .ok_or_else(|| CatalogError::Parameter("semidirect group without ζ".into()))?;
    let zeta_inv = l.inv(zeta).expect("ζ is a unit");
    let r_name = |j: usize| if j == 0 { T.to_string() } else { format!("R_{j}") };
    for j in 1..r {
        let rj = GModule::scalar(&g, l, &[l.pow(zeta_inv, j as u64), 1])?.with_twist(b.twist);
        b.slot(&r_name(j), rj, SlotKind::Unknown);
        b.parameter_slots.push(r_name(j));
    }

    let m = b.permutation(&g.subgroup_generated(&[g.sigma()]))?;
    let n = b.permutation(&g.subgroup_generated(&[g.tau()]))?;
    b.identify(M, &m)?;
    b.identify(N, &n)?;

    // σ sends a(x) to a(ζ⁻¹x), scaling the degree-k part by ζ^{−k};
    // quotients repeat with period r, the order of ζ
    let nodes: Vec<u32> = (0..l.get()).collect();
    b.ladder(&m, &nodes, |k| r_name(k % r))?;
    b.notes.push(format!(
        "ladder quotients M_k/M_(k-1) are R_(k mod {r}); the index is taken mod r, the order of ζ, not mod l"
    ));

    // N basis position i is σ^i; nodes ζ^i
    let n_nodes: Vec<u32> = (0..r).map(|i| l.pow(zeta, i as u64)).collect();
    let pieces = (0..r)
        .map(|k| n.poly_filtration(&n_nodes, k))
        .collect::<Result<Vec<_>, _>>()?;
    for k in (1..r).rev() {
        let incl = pieces[k - 1].1.factor_through(&pieces[k].1)?;
        let seq = ShortExactSeq::from_submodule(format!("0→N_{}→N_{k}→{}→0", k - 1, r_name(k)), incl)?;
        let report = seq.check_exact();
        let rk = b.lookup(&r_name(k)).expect("declared").clone();
        if !report.pass || !is_isomorphic(seq.c(), &rk)?.is_isomorphic() {
            return Err(CatalogError::Verification(format!("`{}` does not have quotient {}", seq.name, r_name(k))));
        }
        b.auxiliary.push(SequenceRecord {
            seq,
            slots: [format!("N_{}", k - 1), format!("N_{k}"), r_name(k)],
        });
    }

    let parts: Vec<String> = (0..r).map(r_name).collect();
    let parts: Vec<&str> = parts.iter().map(String::as_str).collect();
    b.direct_sum(N, &parts);
    Ok(())
}
