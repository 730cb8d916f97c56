use num_traits::{Signed, Zero};

use crate::linalg::Rational;

use super::{assemble, Affine, AffineBound, Assembled, BoundError, Level};
use crate::catalog::CaseInstance;
use crate::linalg::{LinearSystem, Relation};

#[derive(Clone, Debug)]
pub struct Derivation {
    pub assembled: Assembled,
    /// The projection onto `(h¹(M), h¹(N))`, in that variable order.
    pub projection: LinearSystem,
    pub bound: AffineBound,
}

/// Projects the assembled system onto `(h¹(M), h¹(N))` and reads off
/// every facet. The projection is exact, so the facets are the tightest
/// consequences of the encoded constraints.
pub fn derive_bounds(case: &CaseInstance) -> Result<Derivation, BoundError> {
    let assembled = assemble(case)?;
    let keep = [assembled.objective.as_str(), assembled.parameter.as_str()];
    let projection = assembled.system.project(&keep)?;
    if projection.is_trivially_infeasible() {
        return Err(BoundError::Infeasible(case.id()));
    }
    let (mut lower, mut upper, mut domain) = (Vec::new(), Vec::new(), Vec::new());
    for c in projection.constraints() {
        let (cm, cp, rhs) = (c.coeffs[0], c.coeffs[1], c.rhs);
        // cm·m + cp·p (≤ | =) rhs
        let solved = || Affine::new(-cp / cm, rhs / cm);
        match (c.relation, cm.is_zero()) {
            (Relation::Le, true) => domain.push(Affine::new(-cp, rhs)),
            (Relation::Eq, true) => {
                domain.push(Affine::new(-cp, rhs));
                domain.push(Affine::new(cp, -rhs));
            }
            (Relation::Le, false) if cm.is_negative() => lower.push(solved()),
            (Relation::Le, false) => upper.push(solved()),
            (Relation::Eq, false) => {
                lower.push(solved());
                upper.push(solved());
            }
        }
    }
    // x-range of the projected polygon
    let (lo, hi) = interval(&lower, &upper, &domain);
    let lower = envelope(lower, lo, hi, true);
    let upper = envelope(upper, lo, hi, false);
    let bound = AffineBound::from_facets(
        Level::H1,
        assembled.objective.clone(),
        assembled.parameter.clone(),
        lower,
        upper,
        domain,
    )
    .ok_or_else(|| BoundError::Unbounded(case.id()))?;
    Ok(Derivation {
        assembled,
        projection,
        bound,
    })
}

/// Parameter range of the polygon `max lower ≤ m ≤ min upper`, `0 ≤ d`
/// for every domain facet; `hi = None` when unbounded. Parameters are
/// ranks, so the range starts at 0 at the latest.
fn interval(lower: &[Affine], upper: &[Affine], domain: &[Affine]) -> (Rational, Option<Rational>) {
    let mut lo = Rational::zero();
    let mut hi: Option<Rational> = None;
    // 0 ≤ slope·x + offset
    let mut cut = |d: Affine| {
        if d.slope.is_zero() {
            return;
        }
        let v = -d.offset / d.slope;
        if d.slope.is_positive() {
            lo = lo.max(v);
        } else {
            hi = Some(hi.map_or(v, |h| h.min(v)));
        }
    };
    for d in domain {
        cut(d.clone());
    }
    for a in lower {
        for b in upper {
            cut(Affine::new(b.slope - a.slope, b.offset - a.offset));
        }
    }
    (lo, hi)
}

/// Keeps the facets that attain the max (`maximum`) or min of the family
/// on some subinterval of `[lo, hi]` of positive length, or at `lo` when
/// the interval is a point.
fn envelope(mut facets: Vec<Affine>, lo: Rational, hi: Option<Rational>, maximum: bool) -> Vec<Affine> {
    facets.sort_by(|a, b| a.slope.cmp(&b.slope).then(a.offset.cmp(&b.offset)));
    facets.dedup();
    if facets.len() <= 1 {
        return facets;
    }
    let at = |f: &Affine, x: Rational| f.slope * x + f.offset;
    let mut points = vec![lo];
    if let Some(h) = hi {
        points.push(h);
    }
    for (i, f) in facets.iter().enumerate() {
        for g in &facets[i + 1..] {
            if f.slope != g.slope {
                let x = (g.offset - f.offset) / (f.slope - g.slope);
                if x > lo && hi.is_none_or(|h| x < h) {
                    points.push(x);
                }
            }
        }
    }
    points.sort();
    points.dedup();
    // sample the interior of each piece, plus one point past the last
    let mut samples: Vec<Rational> = points.windows(2).map(|w| (w[0] + w[1]) / Rational::from_integer(2)).collect();
    if hi.is_none() {
        samples.push(points[points.len() - 1] + Rational::from_integer(1));
    }
    if samples.is_empty() {
        samples.push(lo);
    }
    let better = |a: Rational, b: Rational| if maximum { a > b } else { a < b };
    let mut keep = vec![false; facets.len()];
    for x in samples {
        let mut best = 0;
        for i in 1..facets.len() {
            if better(at(&facets[i], x), at(&facets[best], x)) {
                best = i;
            }
        }
        keep[best] = true;
    }
    facets.into_iter().zip(keep).filter_map(|(f, k)| k.then_some(f)).collect()
}
