//! Redundancy of an inequality against the others, by Farkas certificate.
//!
//! `a·x ≤ b` is implied by `A x ≤ β, E x = γ` when some `λ ≥ 0`, `μ`
//! satisfy `λA + μE = a` and `λβ + μγ ≤ b`. A floating-point LP proposes
//! the support of such a multiplier; the multiplier itself is recomputed
//! and checked in exact arithmetic. A row is only ever reported redundant
//! on an exact certificate, so float error can cost pruning but never
//! correctness.

use microlp::{ComparisonOp, OptimizationDirection, Problem};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::Rational;

/// Coefficient row and right-hand side.
pub(crate) type Row<'a> = (&'a [i128], Rational);

const SUPPORT_EPS: f64 = 1e-9;

fn big(x: i128) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn big_q(x: &Rational) -> BigRational {
    BigRational::new(BigInt::from(*x.numer()), BigInt::from(*x.denom()))
}

fn f(x: &Rational) -> f64 {
    x.numer().to_f64().unwrap_or(f64::NAN) / x.denom().to_f64().unwrap_or(f64::NAN)
}

/// Whether `target` is implied by `le` (inequalities) and `eq` (equalities).
pub(crate) fn implied(target: Row<'_>, le: &[Row<'_>], eq: &[Row<'_>]) -> bool {
    let n = target.0.len();
    let cols: Vec<usize> = (0..n)
        .filter(|&j| target.0[j] != 0 || le.iter().chain(eq).any(|r| r.0[j] != 0))
        .collect();
    let mut lp = Problem::new(OptimizationDirection::Minimize);
    let lam: Vec<_> = le.iter().map(|r| lp.add_var(f(&r.1), (0.0, f64::INFINITY))).collect();
    let mu: Vec<_> = eq
        .iter()
        .map(|r| lp.add_var(f(&r.1), (f64::NEG_INFINITY, f64::INFINITY)))
        .collect();
    for &j in &cols {
        let terms: Vec<_> = le
            .iter()
            .zip(&lam)
            .chain(eq.iter().zip(&mu))
            .filter(|(r, _)| r.0[j] != 0)
            .map(|(r, v)| (*v, r.0[j] as f64))
            .collect();
        lp.add_constraint(terms.as_slice(), ComparisonOp::Eq, target.0[j] as f64);
    }
    let Ok(sol) = lp.solve() else {
        return false;
    };
    if sol.objective() > f(&target.1) + 1e-6 {
        return false;
    }
    // exact multiplier on the proposed support
    let support: Vec<(Row<'_>, bool)> = le
        .iter()
        .zip(&lam)
        .map(|(r, v)| (*r, true, *sol.var_value(*v)))
        .chain(eq.iter().zip(&mu).map(|(r, v)| (*r, false, *sol.var_value(*v))))
        .filter(|(_, _, x)| x.abs() > SUPPORT_EPS)
        .map(|(r, sign, _)| (r, sign))
        .collect();
    let Some(mult) = solve_exact(&support, target.0, &cols) else {
        return false;
    };
    let mut value = BigRational::zero();
    for ((row, nonneg), m) in support.iter().zip(&mult) {
        if *nonneg && m.is_negative() {
            return false;
        }
        value += m * big_q(&row.1);
    }
    value <= big_q(&target.1)
}

/// Some `m` with `Σ m_k row_k = target` on `cols`, or `None`.
fn solve_exact(support: &[(Row<'_>, bool)], target: &[i128], cols: &[usize]) -> Option<Vec<BigRational>> {
    let k = support.len();
    // one equation per column, unknowns are the multipliers
    let mut m: Vec<Vec<BigRational>> = cols
        .iter()
        .map(|&j| {
            let mut eqn: Vec<BigRational> = support.iter().map(|(r, _)| big(r.0[j])).collect();
            eqn.push(big(target[j]));
            eqn
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..k {
        let Some(p) = (row..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][c].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != row && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in 0..=k {
                    let d = &factor * &m[row][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        row += 1;
    }
    if m[row..].iter().any(|eqn| !eqn[k].is_zero()) {
        return None;
    }
    let mut out = vec![BigRational::zero(); k];
    for (i, &c) in pivots.iter().enumerate() {
        out[c] = m[i][k].clone();
    }
    Some(out)
}
