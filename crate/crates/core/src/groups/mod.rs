//! Explicit finite groups for the five families, with subgroup closure,
//! subgroup enumeration and coset actions.
//!
//! `S3`, `D2l` and `SemiDirect` share one normal form: element `σ^a τ^b`
//! has index `a·l + b`, and
//! `(σ^a τ^b)(σ^c τ^d) = σ^{a+c} τ^{b·ζ^{-c} + d}`, which encodes
//! `σ τ σ^{-1} = τ^ζ`. `S3` is `D2l` at `l = 3`. `S4` and `A4` are
//! permutation groups on four points, indexed in lexicographic order of
//! their image arrays, with `(gh)(x) = g(h(x))`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{is_prime, Prime};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("invalid group parameters: {0}")]
    InvalidParameter(String),
    #[error("group of order {order} exceeds the subgroup enumeration cap {cap}")]
    OrderCap { order: usize, cap: usize },
    #[error("group table check failed: {0}")]
    Internal(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    S3,
    S4,
    A4,
    D2l,
    SemiDirect,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::S3, Family::S4, Family::A4, Family::D2l, Family::SemiDirect];

    pub fn id(self) -> &'static str {
        match self {
            Family::S3 => "s3",
            Family::S4 => "s4",
            Family::A4 => "a4",
            Family::D2l => "d2l",
            Family::SemiDirect => "semidirect",
        }
    }

    /// Tag used in field records.
    pub fn tag(self) -> &'static str {
        match self {
            Family::S3 => "S3",
            Family::S4 => "S4",
            Family::A4 => "A4",
            Family::D2l => "D2l",
            Family::SemiDirect => "SemiDirect",
        }
    }

    pub fn from_id(s: &str) -> Option<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.id().eq_ignore_ascii_case(s) || f.tag() == s)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Parameters as resolved at construction. For the metacyclic families
/// `l` is the order of `τ`, `r` the order of `σ` and `zeta` the exponent
/// in `σ τ σ^{-1} = τ^ζ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupParams {
    pub l: u32,
    pub r: Option<u32>,
    pub zeta: Option<u32>,
}

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    family: Family,
    params: GroupParams,
    order: usize,
    table: Vec<u32>,
    identity: usize,
    inverse: Vec<usize>,
    generators: Vec<(String, usize)>,
    words: Vec<Vec<usize>>,
    perms: Option<Vec<[u8; 4]>>,
}

/// A subgroup, stored as the sorted list of its element indices in the
/// parent group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&g| other.contains(g))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup {
            elements: self.elements.iter().copied().filter(|&g| other.contains(g)).collect(),
        }
    }
}

/// Left action of `G` on the cosets `gH`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetAction {
    /// Cosets in order of their smallest element.
    pub cosets: Vec<Vec<usize>>,
    /// `perms[g][i]` is the index of the coset `g·cosets[i]`.
    pub perms: Vec<Vec<usize>>,
}

impl CosetAction {
    pub fn degree(&self) -> usize {
        self.cosets.len()
    }

    pub fn representative(&self, i: usize) -> usize {
        self.cosets[i][0]
    }
}

/// Smallest residue of multiplicative order exactly `r` mod `l`.
pub fn smallest_root_of_unity(l: Prime, r: u32) -> Option<u32> {
    (2..l.get()).find(|&z| l.order(z) == Some(r))
}

pub fn build_group(family: Family, l: Option<u32>, r: Option<u32>) -> Result<FiniteGroup, GroupError> {
    match family {
        Family::S3 => {
            if l.is_some_and(|l| l != 3) {
                return Err(GroupError::InvalidParameter("S3 requires l = 3".into()));
            }
            FiniteGroup::metacyclic(Family::S3, 3, 2, 2)
        }
        Family::D2l => {
            let l = l.ok_or_else(|| GroupError::InvalidParameter("D2l requires l".into()))?;
            if l == 2 || !is_prime(l) {
                return Err(GroupError::InvalidParameter(format!("D2l requires an odd prime l, got {l}")));
            }
            FiniteGroup::metacyclic(Family::D2l, l, 2, l - 1)
        }
        Family::SemiDirect => {
            let (l, r) = match (l, r) {
                (Some(l), Some(r)) => (l, r),
                _ => return Err(GroupError::InvalidParameter("SemiDirect requires l and r".into())),
            };
            if !is_prime(l) || !is_prime(r) {
                return Err(GroupError::InvalidParameter(format!("l={l} and r={r} must both be prime")));
            }
            if (l - 1) % r != 0 {
                return Err(GroupError::InvalidParameter(format!("r={r} does not divide l-1={}", l - 1)));
            }
            let p = Prime::new(l).expect("checked prime");
            let zeta = smallest_root_of_unity(p, r).expect("r | l-1");
            FiniteGroup::metacyclic(Family::SemiDirect, l, r, zeta)
        }
        Family::S4 | Family::A4 => {
            if l.is_some_and(|l| l != 2) {
                return Err(GroupError::InvalidParameter(format!("{family} requires l = 2")));
            }
            FiniteGroup::permutations(family)
        }
    }
}

fn compose(g: &[u8; 4], h: &[u8; 4]) -> [u8; 4] {
    [g[h[0] as usize], g[h[1] as usize], g[h[2] as usize], g[h[3] as usize]]
}

fn is_even(p: &[u8; 4]) -> bool {
    let mut inv = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    inv % 2 == 0
}

fn all_perms4() -> Vec<[u8; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4u8 {
        for b in 0..4u8 {
            for c in 0..4u8 {
                for d in 0..4u8 {
                    let p = [a, b, c, d];
                    let mut seen = [false; 4];
                    if p.iter().all(|&x| !std::mem::replace(&mut seen[x as usize], true)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

impl FiniteGroup {
    fn metacyclic(family: Family, l: u32, r: u32, zeta: u32) -> Result<Self, GroupError> {
        let p = Prime::new(l).map_err(|e| GroupError::InvalidParameter(e.to_string()))?;
        let zinv = p.inv(zeta).expect("zeta is a unit");
        let (lu, ru) = (l as usize, r as usize);
        let order = lu * ru;
        let mut zinv_pow = vec![1u32; ru];
        for c in 1..ru {
            zinv_pow[c] = p.mul(zinv_pow[c - 1], zinv);
        }
        let mut table = vec![0u32; order * order];
        for x in 0..order {
            let (a, b) = (x / lu, (x % lu) as u32);
            for y in 0..order {
                let (c, d) = (y / lu, (y % lu) as u32);
                let e = (a + c) % ru;
                let f = p.add(p.mul(b, zinv_pow[c]), d);
                table[x * order + y] = (e * lu + f as usize) as u32;
            }
        }
        let generators = vec![("sigma".to_string(), lu), ("tau".to_string(), 1)];
        let params = GroupParams {
            l,
            r: Some(r),
            zeta: Some(zeta),
        };
        let g = FiniteGroup::finish(family, params, order, table, generators, None)?;
        g.check_metacyclic_relations()?;
        Ok(g)
    }

    fn permutations(family: Family) -> Result<Self, GroupError> {
        let perms: Vec<[u8; 4]> = all_perms4()
            .into_iter()
            .filter(|p| family == Family::S4 || is_even(p))
            .collect();
        let order = perms.len();
        let index = |p: &[u8; 4]| perms.iter().position(|q| q == p).expect("closed");
        let mut table = vec![0u32; order * order];
        for (i, g) in perms.iter().enumerate() {
            for (j, h) in perms.iter().enumerate() {
                table[i * order + j] = index(&compose(g, h)) as u32;
            }
        }
        let generators = if family == Family::S4 {
            vec![
                ("(12)".to_string(), index(&[1, 0, 2, 3])),
                ("(1234)".to_string(), index(&[1, 2, 3, 0])),
            ]
        } else {
            vec![
                ("(123)".to_string(), index(&[1, 2, 0, 3])),
                ("(12)(34)".to_string(), index(&[1, 0, 3, 2])),
            ]
        };
        let params = GroupParams {
            l: 2,
            r: None,
            zeta: None,
        };
        FiniteGroup::finish(family, params, order, table, generators, Some(perms))
    }

    fn finish(
        family: Family,
        params: GroupParams,
        order: usize,
        table: Vec<u32>,
        generators: Vec<(String, usize)>,
        perms: Option<Vec<[u8; 4]>>,
    ) -> Result<Self, GroupError> {
        let mul = |x: usize, y: usize| table[x * order + y] as usize;
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| mul(e, x) == x && mul(x, e) == x))
            .ok_or_else(|| GroupError::Internal("no identity".into()))?;
        for x in 0..order {
            for y in 0..order {
                let xy = mul(x, y);
                for z in 0..order {
                    if mul(xy, z) != mul(x, mul(y, z)) {
                        return Err(GroupError::Internal(format!("associativity fails at ({x},{y},{z})")));
                    }
                }
            }
        }
        let mut inverse = vec![usize::MAX; order];
        for x in 0..order {
            inverse[x] = (0..order)
                .find(|&y| mul(x, y) == identity)
                .ok_or_else(|| GroupError::Internal(format!("{x} has no inverse")))?;
        }
        // shortest words in the generators, by breadth-first search
        let mut words: Vec<Option<Vec<usize>>> = vec![None; order];
        words[identity] = Some(Vec::new());
        let mut queue = VecDeque::from([identity]);
        while let Some(x) = queue.pop_front() {
            for (k, (_, s)) in generators.iter().enumerate() {
                let y = mul(x, *s);
                if words[y].is_none() {
                    let mut w = words[x].clone().expect("visited");
                    w.push(k);
                    words[y] = Some(w);
                    queue.push_back(y);
                }
            }
        }
        let words = words
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| GroupError::Internal("generators do not generate".into()))?;
        Ok(FiniteGroup {
            family,
            params,
            order,
            table,
            identity,
            inverse,
            generators,
            words,
            perms,
        })
    }

    fn check_metacyclic_relations(&self) -> Result<(), GroupError> {
        let (s, t) = (self.sigma(), self.tau());
        let l = self.params.l as u64;
        let r = self.params.r.expect("metacyclic") as u64;
        let zeta = self.params.zeta.expect("metacyclic") as u64;
        let ok = self.pow(s, r) == self.identity
            && self.pow(t, l) == self.identity
            && self.mul(self.mul(s, t), self.inv(s)) == self.pow(t, zeta);
        if ok {
            Ok(())
        } else {
            Err(GroupError::Internal("presentation relations fail".into()))
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order + y] as usize
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inverse[x]
    }

    pub fn pow(&self, x: usize, mut e: u64) -> usize {
        let (mut acc, mut base) = (self.identity, x);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut y = x;
        let mut k = 1;
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn generators(&self) -> &[(String, usize)] {
        &self.generators
    }

    pub fn generator(&self, name: &str) -> Option<usize> {
        self.generators.iter().find(|(n, _)| n == name).map(|(_, g)| *g)
    }

    /// Word in generator positions whose product, left to right, is `x`.
    pub fn word(&self, x: usize) -> &[usize] {
        &self.words[x]
    }

    /// `σ` for the metacyclic families.
    pub fn sigma(&self) -> usize {
        self.generator("sigma").expect("metacyclic group")
    }

    /// `τ` for the metacyclic families.
    pub fn tau(&self) -> usize {
        self.generator("tau").expect("metacyclic group")
    }

    /// Index of `σ^a τ^b` for the metacyclic families.
    pub fn sigma_tau(&self, a: u32, b: u32) -> usize {
        let l = self.params.l;
        let r = self.params.r.expect("metacyclic group");
        ((a % r) * l + b % l) as usize
    }

    /// Image array of a permutation element (`S4`, `A4`).
    pub fn permutation(&self, x: usize) -> Option<[u8; 4]> {
        self.perms.as_ref().map(|p| p[x])
    }

    pub fn element_of_permutation(&self, p: [u8; 4]) -> Option<usize> {
        self.perms.as_ref()?.iter().position(|q| *q == p)
    }

    pub fn element_name(&self, x: usize) -> String {
        if let Some(p) = self.permutation(x) {
            return cycle_notation(&p);
        }
        let l = self.params.l as usize;
        let (a, b) = (x / l, x % l);
        match (a, b) {
            (0, 0) => "e".into(),
            (0, b) => power_name("τ", b),
            (a, 0) => power_name("σ", a),
            (a, b) => format!("{}{}", power_name("σ", a), power_name("τ", b)),
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup {
            elements: vec![self.identity],
        }
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            elements: (0..self.order).collect(),
        }
    }

    /// Checks closure, identity and inverses.
    pub fn is_subgroup(&self, h: &Subgroup) -> bool {
        !h.elements.is_empty()
            && h.elements.windows(2).all(|w| w[0] < w[1])
            && h.elements.iter().all(|&x| x < self.order)
            && h.contains(self.identity)
            && h.elements.iter().all(|&x| h.contains(self.inv(x)))
            && h.elements
                .iter()
                .all(|&x| h.elements.iter().all(|&y| h.contains(self.mul(x, y))))
            && self.order % h.order() == 0
    }

    pub fn subgroup_generated(&self, elems: &[usize]) -> Subgroup {
        let mut members = vec![false; self.order];
        members[self.identity] = true;
        let mut list = vec![self.identity];
        let mut frontier = vec![self.identity];
        let gens: Vec<usize> = elems.iter().copied().filter(|&g| g < self.order).collect();
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                let y = self.mul(x, g);
                if !members[y] {
                    members[y] = true;
                    list.push(y);
                    frontier.push(y);
                }
            }
        }
        list.sort_unstable();
        Subgroup { elements: list }
    }

    /// Every subgroup exactly once, sorted by order then elements. Uses
    /// closures of one- and two-element sets, which suffices for the
    /// families here since all their subgroups are 2-generated.
    pub fn all_subgroups(&self) -> Result<Vec<Subgroup>, GroupError> {
        const CAP: usize = 200;
        if self.order > CAP {
            return Err(GroupError::OrderCap {
                order: self.order,
                cap: CAP,
            });
        }
        let mut cyclic: Vec<(Subgroup, usize)> = Vec::new();
        let mut seen: BTreeSet<Subgroup> = BTreeSet::new();
        for x in 0..self.order {
            let c = self.subgroup_generated(&[x]);
            if seen.insert(c.clone()) {
                cyclic.push((c, x));
            }
        }
        for (i, (a, x)) in cyclic.iter().enumerate() {
            for (b, y) in &cyclic[i + 1..] {
                if a.is_subset_of(b) || b.is_subset_of(a) {
                    continue;
                }
                seen.insert(self.subgroup_generated(&[*x, *y]));
            }
        }
        let mut out: Vec<Subgroup> = seen.into_iter().collect();
        out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.cmp(&b.elements)));
        Ok(out)
    }

    pub fn coset_action(&self, h: &Subgroup) -> CosetAction {
        let mut coset_of = vec![usize::MAX; self.order];
        let mut cosets: Vec<Vec<usize>> = Vec::new();
        for g in 0..self.order {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let mut c: Vec<usize> = h.elements.iter().map(|&x| self.mul(g, x)).collect();
            c.sort_unstable();
            for &x in &c {
                coset_of[x] = cosets.len();
            }
            cosets.push(c);
        }
        let perms = (0..self.order)
            .map(|g| cosets.iter().map(|c| coset_of[self.mul(g, c[0])]).collect())
            .collect();
        CosetAction { cosets, perms }
    }

    /// `V4`: the identity and the three double transpositions.
    pub fn klein_four(&self) -> Option<Subgroup> {
        let perms = self.perms.as_ref()?;
        let mut elements: Vec<usize> = perms
            .iter()
            .enumerate()
            .filter(|(_, p)| {
                let fixed = p.iter().enumerate().filter(|(i, &x)| *i == x as usize).count();
                fixed == 4 || (fixed == 0 && compose(p, p) == [0, 1, 2, 3])
            })
            .map(|(i, _)| i)
            .collect();
        elements.sort_unstable();
        Some(Subgroup { elements })
    }

    /// Stabiliser of a point (`S4`, `A4`).
    pub fn point_stabilizer(&self, point: u8) -> Option<Subgroup> {
        let perms = self.perms.as_ref()?;
        Some(Subgroup {
            elements: (0..self.order).filter(|&i| perms[i][point as usize] == point).collect(),
        })
    }

    /// Stabiliser of the partition `{{0,1},{2,3}}` (`S4`, `A4`).
    pub fn pair_partition_stabilizer(&self) -> Option<Subgroup> {
        let perms = self.perms.as_ref()?;
        let same_block = |a: u8, b: u8| (a < 2) == (b < 2);
        Some(Subgroup {
            elements: (0..self.order)
                .filter(|&i| {
                    let p = perms[i];
                    same_block(p[0], p[1]) && same_block(p[2], p[3])
                })
                .collect(),
        })
    }

    /// Subgroups generated by a single transposition (`S4` only).
    pub fn transposition_subgroups(&self) -> Vec<Subgroup> {
        let Some(perms) = &self.perms else { return Vec::new() };
        (0..self.order)
            .filter(|&i| perms[i].iter().enumerate().filter(|(k, &x)| *k != x as usize).count() == 2)
            .map(|i| self.subgroup_generated(&[i]))
            .collect()
    }
}

fn power_name(base: &str, k: usize) -> String {
    const SUP: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    if k == 1 {
        return base.to_string();
    }
    let digits: String = k.to_string().chars().map(|c| SUP[c as usize - '0' as usize]).collect();
    format!("{base}{digits}")
}

fn cycle_notation(p: &[u8; 4]) -> String {
    let mut seen = [false; 4];
    let mut out = String::new();
    for start in 0..4 {
        if seen[start] || p[start] as usize == start {
            continue;
        }
        out.push('(');
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            out.push(char::from(b'1' + i as u8));
            i = p[i] as usize;
        }
        out.push(')');
    }
    if out.is_empty() {
        "e".into()
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(build_group(Family::S3, None, None).unwrap().order(), 6);
        assert_eq!(build_group(Family::S4, None, None).unwrap().order(), 24);
        assert_eq!(build_group(Family::A4, None, None).unwrap().order(), 12);
        assert_eq!(build_group(Family::D2l, Some(5), None).unwrap().order(), 10);
        let g = build_group(Family::SemiDirect, Some(7), Some(3)).unwrap();
        assert_eq!(g.order(), 21);
        assert_eq!(g.params().zeta, Some(2));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(build_group(Family::SemiDirect, Some(7), Some(5)).is_err());
        assert!(build_group(Family::SemiDirect, Some(9), Some(2)).is_err());
        assert!(build_group(Family::D2l, Some(2), None).is_err());
        assert!(build_group(Family::D2l, Some(15), None).is_err());
        assert!(build_group(Family::S3, Some(5), None).is_err());
    }

    #[test]
    fn s3_subgroups_and_cosets() {
        let g = build_group(Family::S3, None, None).unwrap();
        assert_eq!(g.all_subgroups().unwrap().len(), 6);
        let s = g.subgroup_generated(&[g.sigma()]);
        assert_eq!(s.order(), 2);
        let act = g.coset_action(&s);
        assert_eq!(act.degree(), 3);
        // representatives are 1, τ, τ²
        let reps: Vec<usize> = (0..3).map(|i| act.representative(i)).collect();
        assert_eq!(reps, vec![g.identity(), g.tau(), g.pow(g.tau(), 2)]);
        assert_eq!(g.coset_action(&g.whole()).degree(), 1);
        assert!(g.subgroup_generated(&[]).is_trivial());
    }

    #[test]
    fn semidirect_subgroup_orders() {
        let g = build_group(Family::SemiDirect, Some(7), Some(3)).unwrap();
        let orders: BTreeSet<usize> = g.all_subgroups().unwrap().iter().map(Subgroup::order).collect();
        assert_eq!(orders, BTreeSet::from([1, 3, 7, 21]));
    }

    #[test]
    fn s4_structure() {
        let g = build_group(Family::S4, None, None).unwrap();
        let t12 = g.element_of_permutation([1, 0, 2, 3]).unwrap();
        let c123 = g.element_of_permutation([1, 2, 0, 3]).unwrap();
        assert_eq!(g.subgroup_generated(&[t12, c123]).order(), 6);
        assert_eq!(g.klein_four().unwrap().order(), 4);
        assert_eq!(g.transposition_subgroups().len(), 6);
        assert_eq!(g.coset_action(&g.point_stabilizer(0).unwrap()).degree(), 4);
        assert_eq!(g.coset_action(&g.pair_partition_stabilizer().unwrap()).degree(), 3);
        assert_eq!(g.all_subgroups().unwrap().len(), 30);
        let a = build_group(Family::A4, None, None).unwrap();
        assert_eq!(a.all_subgroups().unwrap().len(), 10);
    }

    #[test]
    fn words_evaluate_to_elements() {
        let g = build_group(Family::SemiDirect, Some(11), Some(5)).unwrap();
        for x in 0..g.order() {
            let v = g
                .word(x)
                .iter()
                .fold(g.identity(), |acc, &k| g.mul(acc, g.generators()[k].1));
            assert_eq!(v, x);
        }
    }

    #[test]
    fn names() {
        let g = build_group(Family::S3, None, None).unwrap();
        assert_eq!(g.element_name(g.pow(g.tau(), 2)), "τ²");
        let s4 = build_group(Family::S4, None, None).unwrap();
        assert_eq!(s4.element_name(s4.generator("(1234)").unwrap()), "(1234)");
    }
}
