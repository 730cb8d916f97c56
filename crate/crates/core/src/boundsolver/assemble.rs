use crate::catalog::{CaseInstance, ModuleSlot, SequenceRecord, SlotKind, M, N};
use crate::linalg::{LinExpr, LinearSystem, Relation};

use super::BoundError;

/// Variable holding `h^i(slot)`.
pub fn h_var(i: usize, slot: &str) -> String {
    format!("h{i}({slot})")
}

/// Variable holding the rank of the `i`th arrow (0-based, out of term `i`)
/// in the long exact sequence of sequence `seq`.
pub fn arrow_var(seq: usize, i: usize) -> String {
    format!("a{seq}.{}", i + 1)
}

/// `h^i(slot)` as an expression: constants for `h⁰`, any zero-dimensional
/// module and the ambient `h⁰..h²`; a variable otherwise.
pub fn h_expr(case: &CaseInstance, slot: &ModuleSlot, i: usize) -> LinExpr {
    if slot.module.dim() == 0 {
        return LinExpr::constant(0);
    }
    match (slot.kind, i) {
        (SlotKind::Zero, _) => LinExpr::constant(0),
        (_, 0) => LinExpr::constant(slot.h0 as i64),
        (SlotKind::Ambient, 1 | 2) => LinExpr::constant(case.setting.ambient[i] as i64),
        _ => LinExpr::var(h_var(i, &slot.name)),
    }
}

fn slot<'a>(case: &'a CaseInstance, name: &str) -> Result<&'a ModuleSlot, BoundError> {
    case.slot(name)
        .ok_or_else(|| BoundError::Encoding(format!("no slot `{name}` in {}", case.id())))
}

/// Long exact sequence of `0 → A → B → C → 0` truncated after `H²(C)`:
/// terms `H⁰A, H⁰B, H⁰C, H¹A, …, H²C`, one rank variable per outgoing
/// arrow, `dim(term) = rank(in) + rank(out)`, and the last arrow (into
/// `H³A`) of rank at most `h³(A)`.
pub fn les_constraints(index: usize, rec: &SequenceRecord, case: &CaseInstance) -> Result<LinearSystem, BoundError> {
    let slots = [slot(case, &rec.slots[0])?, slot(case, &rec.slots[1])?, slot(case, &rec.slots[2])?];
    let mut sys = LinearSystem::new();
    let arrows: Vec<LinExpr> = (0..9).map(|i| LinExpr::var(arrow_var(index, i))).collect();
    for a in &arrows {
        ge(&mut sys, a, &LinExpr::constant(0))?;
    }
    for t in 0..9 {
        let (degree, pos) = (t / 3, t % 3);
        let dim = h_expr(case, slots[pos], degree);
        let incoming = if t == 0 { LinExpr::constant(0) } else { arrows[t - 1].clone() };
        eq(&mut sys, &dim, &incoming.add(&arrows[t]))?;
    }
    le(&mut sys, &arrows[8], &h_expr(case, slots[0], 3))?;
    Ok(sys)
}

/// Euler characteristic constraint for a flagged slot: `χ = 0` over a
/// function field, `χ = −dim` over a number field, with `0 ≤ h³ ≤ dim`.
/// Empty for unflagged slots.
pub fn euler_constraints(slot: &ModuleSlot, case: &CaseInstance) -> Result<LinearSystem, BoundError> {
    let mut sys = LinearSystem::new();
    if !slot.euler {
        return Ok(sys);
    }
    let dim = slot.module.dim() as i64;
    let chi = h_expr(case, slot, 0)
        .sub(&h_expr(case, slot, 1))
        .add(&h_expr(case, slot, 2))
        .sub(&h_expr(case, slot, 3));
    let target = if case.setting.is_function_field() { 0 } else { -dim };
    eq(&mut sys, &chi, &LinExpr::constant(target))?;
    h3_range(&mut sys, case, slot)?;
    Ok(sys)
}

fn h3_range(sys: &mut LinearSystem, case: &CaseInstance, slot: &ModuleSlot) -> Result<(), BoundError> {
    let h3 = h_expr(case, slot, 3);
    ge(sys, &h3, &LinExpr::constant(0))?;
    le(sys, &h3, &LinExpr::constant(slot.module.dim() as i64))?;
    Ok(())
}

/// The assembled system with the names of the objective `h¹(M)`, the
/// aggregate parameter `h¹(N)` and the individual `N`-side parameters.
#[derive(Clone, Debug)]
pub struct Assembled {
    pub system: LinearSystem,
    pub objective: String,
    pub parameter: String,
    pub parameters: Vec<String>,
}

/// Union of every sequence's long exact sequence, the Euler constraints
/// of flagged slots, `0 ≤ h³ ≤ dim` for every slot, additivity over the
/// recorded direct sums and nonnegativity of every variable.
pub fn assemble(case: &CaseInstance) -> Result<Assembled, BoundError> {
    let mut sys = LinearSystem::new();
    for (i, rec) in case.sequences.iter().enumerate() {
        merge(&mut sys, les_constraints(i, rec, case)?)?;
    }
    for s in &case.slots {
        if s.kind == SlotKind::Zero {
            continue;
        }
        merge(&mut sys, euler_constraints(s, case)?)?;
        // duality bounds h³ by the stalk rank whether or not χ is known
        h3_range(&mut sys, case, s)?;
    }
    for d in &case.direct_sums {
        let whole = slot(case, &d.whole)?;
        let parts = d.parts.iter().map(|p| slot(case, p)).collect::<Result<Vec<_>, _>>()?;
        let h0_sum: u32 = parts.iter().map(|p| p.h0).sum();
        if h0_sum != whole.h0 {
            return Err(BoundError::Encoding(format!("h0 not additive over {} = ⊕{:?}", d.whole, d.parts)));
        }
        for i in 1..=3 {
            let rhs = parts.iter().fold(LinExpr::new(), |acc, p| acc.add(&h_expr(case, p, i)));
            eq(&mut sys, &h_expr(case, whole, i), &rhs)?;
        }
    }
    // terms that only appear as constants still need their variables declared
    for s in [M, N] {
        let s = slot(case, s)?;
        for i in 1..=3 {
            if let Some((name, _)) = h_expr(case, s, i).terms().first() {
                sys.ensure(name);
            }
        }
    }
    let zero = LinExpr::constant(0);
    for v in sys.variables().to_vec() {
        ge(&mut sys, &LinExpr::var(v), &zero)?;
    }
    let parameters = case.parameter_slots.iter().map(|p| h_var(1, p)).collect();
    Ok(Assembled {
        system: sys,
        objective: h_var(1, M),
        parameter: h_var(1, N),
        parameters,
    })
}

fn merge(into: &mut LinearSystem, from: LinearSystem) -> Result<(), BoundError> {
    let names = from.variables().to_vec();
    for c in from.constraints() {
        let mut lhs = LinExpr::new();
        for (name, k) in names.iter().zip(&c.coeffs) {
            lhs = lhs.term_q(*k, name.clone());
        }
        let rhs = LinExpr::new().plus_q(c.rhs);
        constrain(into, &lhs, c.relation, &rhs)?;
    }
    Ok(())
}

/// Adds a constraint, declaring any variable it mentions.
fn constrain(sys: &mut LinearSystem, lhs: &LinExpr, rel: Relation, rhs: &LinExpr) -> Result<(), BoundError> {
    for (name, _) in lhs.terms().iter().chain(rhs.terms()) {
        sys.ensure(name);
    }
    sys.add(lhs, rel, rhs)?;
    Ok(())
}

fn le(sys: &mut LinearSystem, lhs: &LinExpr, rhs: &LinExpr) -> Result<(), BoundError> {
    constrain(sys, lhs, Relation::Le, rhs)
}

fn ge(sys: &mut LinearSystem, lhs: &LinExpr, rhs: &LinExpr) -> Result<(), BoundError> {
    constrain(sys, rhs, Relation::Le, lhs)
}

fn eq(sys: &mut LinearSystem, lhs: &LinExpr, rhs: &LinExpr) -> Result<(), BoundError> {
    constrain(sys, lhs, Relation::Eq, rhs)
}
