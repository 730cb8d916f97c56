//! Rational linear systems and Fourier–Motzkin projection.
//!
//! Internally every constraint is kept as a primitive integer coefficient
//! row with a rational right-hand side, so equal directions compare equal
//! and dominated rows can be dropped by key. Combined rows carry a history
//! bitset of the input rows they were built from; a row whose history is
//! larger than (eliminations since last reset) + 1 is redundant and is
//! discarded.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, Signed, Zero};

use super::{redundancy, LinalgError};

pub type Rational = Ratio<i128>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    /// `coeffs · x ≤ rhs`
    Le,
    /// `coeffs · x = rhs`
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn lhs_at(&self, x: &[Rational]) -> Rational {
        self.coeffs
            .iter()
            .zip(x)
            .fold(Rational::zero(), |acc, (c, v)| acc + c * v)
    }

    pub fn holds(&self, x: &[Rational]) -> bool {
        let v = self.lhs_at(x);
        match self.relation {
            Relation::Le => v <= self.rhs,
            Relation::Eq => v == self.rhs,
        }
    }

    /// True for `0 ≤ negative` or `0 = nonzero`.
    pub fn is_contradiction(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
            && match self.relation {
                Relation::Le => self.rhs.is_negative(),
                Relation::Eq => !self.rhs.is_zero(),
            }
    }
}

/// Affine expression over named variables, used to state constraints
/// without building coefficient vectors by hand.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinExpr {
    terms: Vec<(String, Rational)>,
    constant: Rational,
}

impl LinExpr {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn var(name: impl Into<String>) -> Self {
        Self::new().term(1, name)
    }

    pub fn constant(c: i64) -> Self {
        Self::new().plus(c)
    }

    pub fn term(self, c: i64, name: impl Into<String>) -> Self {
        self.term_q(Rational::from_integer(c as i128), name)
    }

    pub fn term_q(mut self, c: Rational, name: impl Into<String>) -> Self {
        if !c.is_zero() {
            self.terms.push((name.into(), c));
        }
        self
    }

    pub fn plus(self, c: i64) -> Self {
        self.plus_q(Rational::from_integer(c as i128))
    }

    pub fn plus_q(mut self, c: Rational) -> Self {
        self.constant += c;
        self
    }

    pub fn add(mut self, other: &LinExpr) -> Self {
        self.terms.extend(other.terms.iter().cloned());
        self.constant += other.constant;
        self
    }

    pub fn sub(self, other: &LinExpr) -> Self {
        self.add(&other.scaled(Rational::from_integer(-1)))
    }

    pub fn scaled(&self, c: Rational) -> Self {
        LinExpr {
            terms: self.terms.iter().map(|(n, k)| (n.clone(), k * c)).collect(),
            constant: self.constant * c,
        }
    }

    pub fn terms(&self) -> &[(String, Rational)] {
        &self.terms
    }

    pub fn constant_term(&self) -> Rational {
        self.constant
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearSystem {
    vars: Vec<String>,
    constraints: Vec<Constraint>,
}

impl LinearSystem {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_variables<S: AsRef<str>>(names: &[S]) -> Result<Self, LinalgError> {
        let mut sys = Self::new();
        for n in names {
            sys.declare(n.as_ref())?;
        }
        Ok(sys)
    }

    pub fn declare(&mut self, name: &str) -> Result<usize, LinalgError> {
        if self.index_of(name).is_some() {
            return Err(LinalgError::DuplicateVariable(name.to_string()));
        }
        self.vars.push(name.to_string());
        for c in &mut self.constraints {
            c.coeffs.push(Rational::zero());
        }
        Ok(self.vars.len() - 1)
    }

    /// Declares `name` unless it already exists.
    pub fn ensure(&mut self, name: &str) -> usize {
        match self.index_of(name) {
            Some(i) => i,
            None => self.declare(name).expect("checked absent"),
        }
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn push(&mut self, c: Constraint) -> Result<(), LinalgError> {
        if c.coeffs.len() != self.vars.len() {
            return Err(LinalgError::Dimension(format!(
                "constraint over {} variables in a system of {}",
                c.coeffs.len(),
                self.vars.len()
            )));
        }
        self.constraints.push(c);
        Ok(())
    }

    /// Adds `lhs rel rhs`, normalised to `(lhs − rhs) rel 0`.
    pub fn add(&mut self, lhs: &LinExpr, relation: Relation, rhs: &LinExpr) -> Result<(), LinalgError> {
        let diff = lhs.clone().sub(rhs);
        let mut coeffs = vec![Rational::zero(); self.vars.len()];
        for (name, c) in diff.terms() {
            let i = self
                .index_of(name)
                .ok_or_else(|| LinalgError::UnknownVariable(name.clone()))?;
            coeffs[i] += c;
        }
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs: -diff.constant_term(),
        });
        Ok(())
    }

    pub fn add_le(&mut self, lhs: &LinExpr, rhs: &LinExpr) -> Result<(), LinalgError> {
        self.add(lhs, Relation::Le, rhs)
    }

    pub fn add_ge(&mut self, lhs: &LinExpr, rhs: &LinExpr) -> Result<(), LinalgError> {
        self.add(rhs, Relation::Le, lhs)
    }

    pub fn add_eq(&mut self, lhs: &LinExpr, rhs: &LinExpr) -> Result<(), LinalgError> {
        self.add(lhs, Relation::Eq, rhs)
    }

    pub fn satisfies(&self, point: &[Rational]) -> bool {
        point.len() == self.vars.len() && self.constraints.iter().all(|c| c.holds(point))
    }

    /// True when the system contains an explicit contradiction. After a full
    /// projection to zero variables this decides feasibility.
    pub fn is_trivially_infeasible(&self) -> bool {
        self.constraints.iter().any(Constraint::is_contradiction)
    }

    /// Projects out a single variable.
    pub fn fm_eliminate(&self, var: &str) -> Result<LinearSystem, LinalgError> {
        let v = self
            .index_of(var)
            .ok_or_else(|| LinalgError::UnknownVariable(var.to_string()))?;
        self.eliminate_indices(&[v])
    }

    /// Projects out every variable in `vars`.
    pub fn eliminate_all<S: AsRef<str>>(&self, vars: &[S]) -> Result<LinearSystem, LinalgError> {
        let idx = vars
            .iter()
            .map(|n| {
                self.index_of(n.as_ref())
                    .ok_or_else(|| LinalgError::UnknownVariable(n.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.eliminate_indices(&idx)
    }

    /// Projects onto `keep`, eliminating every other variable. The output
    /// lists variables in the order given by `keep`.
    pub fn project<S: AsRef<str>>(&self, keep: &[S]) -> Result<LinearSystem, LinalgError> {
        let mut keep_idx = Vec::with_capacity(keep.len());
        for n in keep {
            keep_idx.push(
                self.index_of(n.as_ref())
                    .ok_or_else(|| LinalgError::UnknownVariable(n.as_ref().to_string()))?,
            );
        }
        let drop: Vec<usize> = (0..self.vars.len()).filter(|i| !keep_idx.contains(i)).collect();
        let projected = self.eliminate_indices(&drop)?;
        projected.reorder(keep)
    }

    fn reorder<S: AsRef<str>>(&self, order: &[S]) -> Result<LinearSystem, LinalgError> {
        let perm = order
            .iter()
            .map(|n| {
                self.index_of(n.as_ref())
                    .ok_or_else(|| LinalgError::UnknownVariable(n.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LinearSystem {
            vars: perm.iter().map(|&i| self.vars[i].clone()).collect(),
            constraints: self
                .constraints
                .iter()
                .map(|c| Constraint {
                    coeffs: perm.iter().map(|&i| c.coeffs[i]).collect(),
                    relation: c.relation,
                    rhs: c.rhs,
                })
                .collect(),
        })
    }

    fn eliminate_indices(&self, elim: &[usize]) -> Result<LinearSystem, LinalgError> {
        let mut engine = Engine::load(self)?;
        let mut pending: Vec<usize> = elim.to_vec();
        pending.sort_unstable();
        pending.dedup();
        while !pending.is_empty() && !engine.infeasible {
            let pos = engine.choose(&pending);
            let v = pending.swap_remove(pos);
            engine.eliminate(v)?;
        }
        Ok(engine.unload(self, &pending_complement(self.vars.len(), elim)))
    }
}

fn pending_complement(n: usize, elim: &[usize]) -> Vec<usize> {
    (0..n).filter(|i| !elim.contains(i)).collect()
}

impl fmt::Display for LinearSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.constraints {
            let mut first = true;
            for (name, k) in self.vars.iter().zip(&c.coeffs) {
                if k.is_zero() {
                    continue;
                }
                let sign = if k.is_negative() { "-" } else if first { "" } else { "+" };
                let mag = k.abs();
                if !first {
                    write!(f, " ")?;
                }
                if mag == Rational::from_integer(1) {
                    write!(f, "{sign}{name}")?;
                } else {
                    write!(f, "{sign}{mag}*{name}")?;
                }
                first = false;
            }
            if first {
                write!(f, "0")?;
            }
            let rel = match c.relation {
                Relation::Le => "<=",
                Relation::Eq => "=",
            };
            writeln!(f, " {rel} {}", c.rhs)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Hist(Vec<u64>);

impl Hist {
    fn single(i: usize, words: usize) -> Self {
        let mut w = vec![0u64; words];
        w[i / 64] |= 1 << (i % 64);
        Hist(w)
    }

    fn union(&self, other: &Hist) -> Hist {
        Hist(self.0.iter().zip(&other.0).map(|(a, b)| a | b).collect())
    }

    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }
}

#[derive(Clone, Debug)]
struct LeRow {
    a: Vec<i128>,
    b: Rational,
    hist: Hist,
}

#[derive(Clone, Debug)]
struct EqRow {
    a: Vec<i128>,
    b: Rational,
}

/// Row count above which implied rows are removed after a combination step.
const PRUNE_AT: usize = 12;

struct Engine {
    le: Vec<LeRow>,
    eq: Vec<EqRow>,
    infeasible: bool,
    steps: u32,
}

fn ov<T>(x: Option<T>) -> Result<T, LinalgError> {
    x.ok_or(LinalgError::Overflow)
}

/// `p·x + q·y` entrywise, checked.
fn combine(p: i128, x: &[i128], q: i128, y: &[i128]) -> Result<Vec<i128>, LinalgError> {
    x.iter()
        .zip(y)
        .map(|(&u, &w)| ov(ov(p.checked_mul(u))?.checked_add(ov(q.checked_mul(w))?)))
        .collect()
}

fn combine_q(p: i128, x: Rational, q: i128, y: Rational) -> Result<Rational, LinalgError> {
    let l = ov(Rational::from_integer(p).checked_mul(&x))?;
    let r = ov(Rational::from_integer(q).checked_mul(&y))?;
    ov(l.checked_add(&r))
}

/// Divides out the content of `a`; `None` when `a` is zero.
fn primitive(a: &mut [i128], b: &mut Rational) -> Option<()> {
    let g = a.iter().fold(0i128, |g, &x| g.gcd(&x));
    if g == 0 {
        return None;
    }
    if g != 1 {
        for x in a.iter_mut() {
            *x /= g;
        }
        *b /= Rational::from_integer(g);
    }
    Some(())
}

fn negated(a: &[i128]) -> Vec<i128> {
    a.iter().map(|x| -x).collect()
}

impl Engine {
    fn load(sys: &LinearSystem) -> Result<Self, LinalgError> {
        let mut e = Engine {
            le: Vec::new(),
            eq: Vec::new(),
            infeasible: false,
            steps: 0,
        };
        for c in &sys.constraints {
            let lcm = c
                .coeffs
                .iter()
                .fold(1i128, |acc, q| acc.lcm(q.denom()));
            let a: Vec<i128> = c
                .coeffs
                .iter()
                .map(|q| ov((*q.numer()).checked_mul(lcm / q.denom())))
                .collect::<Result<_, _>>()?;
            let b = ov(c.rhs.checked_mul(&Rational::from_integer(lcm)))?;
            match c.relation {
                Relation::Le => e.push_le(a, b, Hist(Vec::new())),
                Relation::Eq => e.push_eq(a, b),
            }
        }
        e.tidy();
        e.reset_histories();
        Ok(e)
    }

    fn push_le(&mut self, mut a: Vec<i128>, mut b: Rational, hist: Hist) {
        match primitive(&mut a, &mut b) {
            Some(()) => self.le.push(LeRow { a, b, hist }),
            None => {
                if b.is_negative() {
                    self.infeasible = true;
                }
            }
        }
    }

    fn push_eq(&mut self, mut a: Vec<i128>, mut b: Rational) {
        match primitive(&mut a, &mut b) {
            Some(()) => {
                if a.iter().find(|x| **x != 0).is_some_and(|x| *x < 0) {
                    a = negated(&a);
                    b = -b;
                }
                self.eq.push(EqRow { a, b });
            }
            None => {
                if !b.is_zero() {
                    self.infeasible = true;
                }
            }
        }
    }

    fn reset_histories(&mut self) {
        let words = self.le.len().div_ceil(64).max(1);
        for (i, r) in self.le.iter_mut().enumerate() {
            r.hist = Hist::single(i, words);
        }
        self.steps = 0;
    }

    /// Removes duplicates and dominated rows, promotes opposing pairs to
    /// equalities and checks rows against equalities of the same direction.
    /// Returns true when new equalities were produced.
    fn tidy(&mut self) -> bool {
        let mut eqs: BTreeMap<Vec<i128>, Rational> = BTreeMap::new();
        for r in self.eq.drain(..) {
            match eqs.get(&r.a) {
                Some(b) if *b != r.b => self.infeasible = true,
                Some(_) => {}
                None => {
                    eqs.insert(r.a, r.b);
                }
            }
        }
        let mut best: BTreeMap<Vec<i128>, LeRow> = BTreeMap::new();
        for r in self.le.drain(..) {
            match best.get_mut(&r.a) {
                Some(cur) => {
                    if r.b < cur.b || (r.b == cur.b && r.hist.count() < cur.hist.count()) {
                        *cur = r;
                    }
                }
                None => {
                    best.insert(r.a.clone(), r);
                }
            }
        }
        let mut promoted = false;
        let keys: Vec<Vec<i128>> = best.keys().cloned().collect();
        for a in keys {
            let Some(row) = best.get(&a) else { continue };
            let b = row.b;
            let neg = negated(&a);
            // a·x ≤ b against a·x = c or −a·x = c
            if let Some(c) = eqs.get(&a) {
                if *c > b {
                    self.infeasible = true;
                }
                best.remove(&a);
                continue;
            }
            if let Some(c) = eqs.get(&neg) {
                if -*c > b {
                    self.infeasible = true;
                }
                best.remove(&a);
                continue;
            }
            if let Some(opp) = best.get(&neg) {
                // a·x ≤ b and a·x ≥ −opp.b
                let lo = -opp.b;
                if lo > b {
                    self.infeasible = true;
                } else if lo == b {
                    best.remove(&a);
                    best.remove(&neg);
                    let (ka, kb) = if a.iter().find(|x| **x != 0).is_some_and(|x| *x > 0) {
                        (a, b)
                    } else {
                        (neg, -b)
                    };
                    eqs.insert(ka, kb);
                    promoted = true;
                }
            }
        }
        self.eq = eqs.into_iter().map(|(a, b)| EqRow { a, b }).collect();
        self.le = best.into_values().collect();
        promoted
    }

    /// Position in `pending` of the next variable to eliminate: one that
    /// an equality can substitute away, else the one minimising the
    /// number of new rows.
    fn choose(&self, pending: &[usize]) -> usize {
        if let Some(p) = pending
            .iter()
            .position(|&v| self.eq.iter().any(|r| r.a[v] != 0))
        {
            return p;
        }
        let mut best = (i64::MAX, 0usize);
        for (p, &v) in pending.iter().enumerate() {
            let pos = self.le.iter().filter(|r| r.a[v] > 0).count() as i64;
            let neg = self.le.iter().filter(|r| r.a[v] < 0).count() as i64;
            let cost = pos * neg - pos - neg;
            if cost < best.0 {
                best = (cost, p);
            }
        }
        best.1
    }

    fn eliminate(&mut self, v: usize) -> Result<(), LinalgError> {
        let pick = self
            .eq
            .iter()
            .enumerate()
            .filter(|(_, r)| r.a[v] != 0)
            .min_by_key(|(_, r)| (r.a.iter().filter(|x| **x != 0).count(), r.a[v].abs()))
            .map(|(i, _)| i);
        if let Some(i) = pick {
            self.substitute(i, v)?;
        } else {
            self.combine_on(v)?;
            if self.le.len() > PRUNE_AT {
                self.prune();
            }
        }
        if self.tidy() {
            self.reset_histories();
        }
        Ok(())
    }

    /// Drops every inequality implied by the remaining rows, one at a time.
    fn prune(&mut self) {
        let eq: Vec<(&[i128], Rational)> = self.eq.iter().map(|r| (r.a.as_slice(), r.b)).collect();
        let mut alive = vec![true; self.le.len()];
        for i in 0..self.le.len() {
            let others: Vec<(&[i128], Rational)> = self
                .le
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i && alive[j])
                .map(|(_, r)| (r.a.as_slice(), r.b))
                .collect();
            if redundancy::implied((&self.le[i].a, self.le[i].b), &others, &eq) {
                alive[i] = false;
            }
        }
        let mut keep = alive.into_iter();
        self.le.retain(|_| keep.next().unwrap_or(true));
    }

    fn substitute(&mut self, i: usize, v: usize) -> Result<(), LinalgError> {
        let mut e = self.eq.swap_remove(i);
        if e.a[v] < 0 {
            e.a = negated(&e.a);
            e.b = -e.b;
        }
        let ev = e.a[v];
        let old_le = std::mem::take(&mut self.le);
        for r in old_le {
            if r.a[v] == 0 {
                self.le.push(r);
                continue;
            }
            let a = combine(ev, &r.a, -r.a[v], &e.a)?;
            let b = combine_q(ev, r.b, -r.a[v], e.b)?;
            self.push_le(a, b, r.hist);
        }
        let old_eq = std::mem::take(&mut self.eq);
        for r in old_eq {
            if r.a[v] == 0 {
                self.eq.push(r);
                continue;
            }
            let a = combine(ev, &r.a, -r.a[v], &e.a)?;
            let b = combine_q(ev, r.b, -r.a[v], e.b)?;
            self.push_eq(a, b);
        }
        self.reset_histories();
        Ok(())
    }

    fn combine_on(&mut self, v: usize) -> Result<(), LinalgError> {
        self.steps += 1;
        let limit = self.steps + 1;
        let (mut pos, mut neg, mut zero) = (Vec::new(), Vec::new(), Vec::new());
        for r in std::mem::take(&mut self.le) {
            match r.a[v].signum() {
                1 => pos.push(r),
                -1 => neg.push(r),
                _ => zero.push(r),
            }
        }
        self.le = zero;
        for p in &pos {
            for n in &neg {
                let hist = p.hist.union(&n.hist);
                if hist.count() > limit {
                    continue;
                }
                let (pv, nv) = (p.a[v], -n.a[v]);
                let a = combine(nv, &p.a, pv, &n.a)?;
                let b = combine_q(nv, p.b, pv, n.b)?;
                self.push_le(a, b, hist);
            }
        }
        Ok(())
    }

    fn unload(self, sys: &LinearSystem, keep: &[usize]) -> LinearSystem {
        let vars: Vec<String> = keep.iter().map(|&i| sys.vars[i].clone()).collect();
        let lift = |a: &[i128]| -> Vec<Rational> {
            keep.iter().map(|&i| Rational::from_integer(a[i])).collect()
        };
        if self.infeasible {
            return LinearSystem {
                constraints: vec![Constraint {
                    coeffs: vec![Rational::zero(); vars.len()],
                    relation: Relation::Le,
                    rhs: Rational::from_integer(-1),
                }],
                vars,
            };
        }
        let mut constraints: Vec<Constraint> = self
            .eq
            .iter()
            .map(|r| Constraint {
                coeffs: lift(&r.a),
                relation: Relation::Eq,
                rhs: r.b,
            })
            .collect();
        constraints.extend(self.le.iter().map(|r| Constraint {
            coeffs: lift(&r.a),
            relation: Relation::Le,
            rhs: r.b,
        }));
        LinearSystem { vars, constraints }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i128) -> Rational {
        Rational::from_integer(n)
    }

    fn bounds_of(sys: &LinearSystem, var: &str) -> (Option<Rational>, Option<Rational>) {
        let p = sys.project(&[var]).unwrap();
        let (mut lo, mut hi) = (None::<Rational>, None::<Rational>);
        for c in p.constraints() {
            let k = c.coeffs[0];
            if k.is_zero() {
                continue;
            }
            let v = c.rhs / k;
            if c.relation == Relation::Eq {
                lo = Some(v);
                hi = Some(v);
            } else if k.is_positive() {
                hi = Some(hi.map_or(v, |h| h.min(v)));
            } else {
                lo = Some(lo.map_or(v, |l| l.max(v)));
            }
        }
        (lo, hi)
    }

    #[test]
    fn chain_elimination() {
        let mut s = LinearSystem::with_variables(&["x", "y"]).unwrap();
        s.add_le(&LinExpr::var("x"), &LinExpr::var("y")).unwrap();
        s.add_le(&LinExpr::var("y"), &LinExpr::constant(3)).unwrap();
        let p = s.fm_eliminate("y").unwrap();
        assert_eq!(p.variables(), &["x".to_string()]);
        assert_eq!(p.constraints().len(), 1);
        assert_eq!(p.constraints()[0].coeffs, vec![q(1)]);
        assert_eq!(p.constraints()[0].rhs, q(3));
    }

    #[test]
    fn sum_with_sign_bound() {
        let mut s = LinearSystem::with_variables(&["x", "y"]).unwrap();
        s.add_le(&LinExpr::var("x").term(1, "y"), &LinExpr::constant(2)).unwrap();
        s.add_le(&LinExpr::new().term(-1, "y"), &LinExpr::constant(0)).unwrap();
        let p = s.fm_eliminate("y").unwrap();
        assert_eq!(bounds_of(&p, "x"), (None, Some(q(2))));
    }

    #[test]
    fn box_sum() {
        let mut s = LinearSystem::with_variables(&["x", "y", "z"]).unwrap();
        s.add_eq(&LinExpr::var("z"), &LinExpr::var("x").term(1, "y")).unwrap();
        s.add_ge(&LinExpr::var("x"), &LinExpr::constant(0)).unwrap();
        s.add_le(&LinExpr::var("x"), &LinExpr::constant(1)).unwrap();
        s.add_ge(&LinExpr::var("y"), &LinExpr::constant(0)).unwrap();
        s.add_le(&LinExpr::var("y"), &LinExpr::constant(2)).unwrap();
        let p = s.fm_eliminate("x").unwrap().fm_eliminate("y").unwrap();
        assert_eq!(bounds_of(&p, "z"), (Some(q(0)), Some(q(3))));
    }

    #[test]
    fn infeasible_stays_infeasible() {
        let mut s = LinearSystem::with_variables(&["x"]).unwrap();
        s.add_le(&LinExpr::var("x"), &LinExpr::constant(0)).unwrap();
        s.add_ge(&LinExpr::var("x"), &LinExpr::constant(1)).unwrap();
        let p = s.fm_eliminate("x").unwrap();
        assert!(p.is_trivially_infeasible());
    }

    #[test]
    fn opposing_pair_becomes_equality() {
        let mut s = LinearSystem::with_variables(&["x", "y"]).unwrap();
        s.add_le(&LinExpr::var("x"), &LinExpr::var("y").plus(1)).unwrap();
        s.add_ge(&LinExpr::var("x"), &LinExpr::var("y").plus(1)).unwrap();
        s.add_le(&LinExpr::var("y"), &LinExpr::constant(4)).unwrap();
        let p = s.fm_eliminate("y").unwrap();
        assert_eq!(bounds_of(&p, "x"), (None, Some(q(5))));
    }

    #[test]
    fn unknown_variable_is_an_error() {
        let mut s = LinearSystem::with_variables(&["x"]).unwrap();
        assert!(s.fm_eliminate("nope").is_err());
        assert!(s.add_le(&LinExpr::var("w"), &LinExpr::constant(0)).is_err());
        assert!(s.declare("x").is_err());
    }

    #[test]
    fn rational_coefficients() {
        let mut s = LinearSystem::with_variables(&["x", "y"]).unwrap();
        let half = Rational::new(1, 2);
        s.add_le(&LinExpr::new().term_q(half, "x"), &LinExpr::var("y")).unwrap();
        s.add_le(&LinExpr::var("y"), &LinExpr::constant(3)).unwrap();
        let p = s.fm_eliminate("y").unwrap();
        assert_eq!(bounds_of(&p, "x"), (None, Some(q(6))));
    }
}
