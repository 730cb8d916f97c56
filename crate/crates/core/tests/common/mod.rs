//! Independent oracles shared by the integration and acceptance suites.
//! None of them call the projection or the `F_l` elimination under test.

#![allow(dead_code)]

use num_integer::Integer;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use reflectlab_core::boundsolver::{derive_bounds, Env};
use reflectlab_core::catalog::{build_case, CaseInstance, CaseSpec};
use reflectlab_core::linalg::{Constraint, LinearSystem, MatrixFl, Prime, Rational, Relation};

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n as i128)
}

pub fn grid() -> Vec<CaseInstance> {
    CaseSpec::grid()
        .into_iter()
        .flat_map(|spec| spec.settings().into_iter().map(move |s| (spec, s)))
        .map(|(spec, s)| build_case(spec, s).expect("grid case builds"))
        .collect()
}

// ---------------------------------------------------------------- F_l

/// Every vector of `F_l^n`, in lexicographic order.
pub fn all_vectors(l: u32, n: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..l).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn apply(a: &MatrixFl, v: &[u32]) -> Vec<u32> {
    let l = a.modulus().get() as u64;
    (0..a.rows())
        .map(|i| (0..a.cols()).map(|j| a.get(i, j) as u64 * v[j] as u64).sum::<u64>() % l)
        .map(|x| x as u32)
        .collect()
}

/// Every `F_l`-combination of `basis` in `F_l^n`.
fn span(l: u32, n: usize, basis: &[Vec<u32>]) -> std::collections::BTreeSet<Vec<u32>> {
    all_vectors(l, basis.len())
        .into_iter()
        .map(|c| {
            (0..n)
                .map(|i| {
                    (basis.iter().zip(&c).map(|(b, &k)| b[i] as u64 * k as u64).sum::<u64>() % l as u64) as u32
                })
                .collect()
        })
        .collect()
}

/// Rank, kernel and image of `a` against exhaustive enumeration of
/// `F_l^cols`.
pub fn check_matrix(a: &MatrixFl) -> Result<(), String> {
    let l = a.modulus().get();
    let domain = all_vectors(l, a.cols());
    let kernel: std::collections::BTreeSet<Vec<u32>> =
        domain.iter().filter(|v| apply(a, v).iter().all(|&x| x == 0)).cloned().collect();
    let image: std::collections::BTreeSet<Vec<u32>> = domain.iter().map(|v| apply(a, v)).collect();
    let rank = a.rank();
    if image.len() != (l as usize).pow(rank as u32) {
        return Err(format!("rank {rank} but |image| = {}", image.len()));
    }
    if kernel.len() != (l as usize).pow((a.cols() - rank) as u32) {
        return Err(format!("rank {rank} but |kernel| = {}", kernel.len()));
    }
    let kb = a.kernel_basis();
    if kb.len() != a.cols() - rank || span(l, a.cols(), &kb) != kernel {
        return Err(format!("kernel basis {kb:?} does not span the kernel"));
    }
    let ib = a.image_basis();
    if ib.len() != rank || span(l, a.rows(), &ib) != image {
        return Err(format!("image basis {ib:?} does not span the image"));
    }
    if a.transpose().rank() != rank {
        return Err("rank differs from the rank of the transpose".into());
    }
    Ok(())
}

pub fn random_matrix(rng: &mut StdRng, l: u32) -> MatrixFl {
    let (r, c) = (rng.random_range(1..=5), rng.random_range(1..=5));
    // a third of the draws are low rank: products of thin factors
    if rng.random_bool(1.0 / 3.0) {
        let k = rng.random_range(0..=r.min(c));
        let p = Prime::new(l).unwrap();
        let f = |rows, cols, rng: &mut StdRng| {
            let e = (0..rows * cols).map(|_| rng.random_range(0..l)).collect();
            MatrixFl::from_entries(p, rows, cols, e).unwrap()
        };
        let (x, y) = (f(r, k, rng), f(k, c, rng));
        return if k == 0 { MatrixFl::zeros(p, r, c) } else { x.mul(&y).unwrap() };
    }
    let e = (0..r * c).map(|_| rng.random_range(0..l)).collect();
    MatrixFl::from_entries(Prime::new(l).unwrap(), r, c, e).unwrap()
}

pub fn linalg_oracle(trials: usize, seed: u64) -> Result<(), String> {
    let mut rng = StdRng::seed_from_u64(seed);
    for t in 0..trials {
        let l = [2, 3, 5][t % 3];
        let a = random_matrix(&mut rng, l);
        check_matrix(&a).map_err(|e| format!("trial {t} over F_{l}: {e}\n{a:?}"))?;
    }
    Ok(())
}

// ---------------------------------------------------------------- rational feasibility

/// Solves the square system exactly; `None` when singular.
fn solve_square(rows: &[(Vec<Rational>, Rational)]) -> Option<Vec<Rational>> {
    let n = rows.len();
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .map(|(a, b)| a.iter().cloned().chain(std::iter::once(*b)).collect())
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(c, p);
        let inv = m[c][c].recip();
        for k in c..=n {
            m[c][k] *= inv;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c];
                for k in c..=n {
                    let d = f * m[c][k];
                    m[r][k] -= d;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n]).collect())
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// Rational feasibility of a bounded system by vertex enumeration: a
/// nonempty bounded polyhedron has a vertex, and every vertex solves some
/// square subsystem of its constraints at equality.
pub fn rational_feasible(sys: &[Constraint], n: usize) -> bool {
    let holds = |x: &[Rational]| sys.iter().all(|c| c.holds(x));
    if n == 0 {
        return holds(&[]);
    }
    let rows: Vec<(Vec<Rational>, Rational)> = sys.iter().map(|c| (c.coeffs.clone(), c.rhs)).collect();
    combinations(rows.len(), n).into_iter().any(|pick| {
        let sub: Vec<_> = pick.iter().map(|&i| rows[i].clone()).collect();
        solve_square(&sub).is_some_and(|x| holds(&x))
    })
}

// ---------------------------------------------------------------- FM oracle

fn random_system(rng: &mut StdRng, n: usize, box_hi: i64) -> LinearSystem {
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let mut sys = LinearSystem::with_variables(&names).unwrap();
    let rows = rng.random_range(1..=5);
    for _ in 0..rows {
        let coeffs: Vec<Rational> = (0..n).map(|_| q(rng.random_range(-3..=3))).collect();
        let rhs = q(rng.random_range(-4..=12));
        let relation = if rng.random_bool(0.15) { Relation::Eq } else { Relation::Le };
        sys.push(Constraint { coeffs, relation, rhs }).unwrap();
    }
    for i in 0..n {
        let mut unit = vec![q(0); n];
        unit[i] = q(-1);
        sys.push(Constraint { coeffs: unit.clone(), relation: Relation::Le, rhs: q(0) }).unwrap();
        unit[i] = q(1);
        sys.push(Constraint { coeffs: unit, relation: Relation::Le, rhs: q(box_hi) }).unwrap();
    }
    sys
}

fn box_points(n: usize, hi: i64) -> Vec<Vec<i64>> {
    (0..n).fold(vec![vec![]], |acc, _| {
        acc.into_iter()
            .flat_map(|v| {
                (0..=hi).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect()
    })
}

/// Each random system is box-bounded in `[0, 6]^k` and projected onto a
/// random nonempty prefix of its variables. Soundness: every integer point
/// of the system projects into the projection. Completeness: every
/// integer point of the projected box satisfying the projection lifts to a
/// point of the system, certified by vertex enumeration of the fibre.
pub fn fm_oracle(trials: usize, seed: u64) -> Result<(), String> {
    const HI: i64 = 6;
    let mut rng = StdRng::seed_from_u64(seed);
    for t in 0..trials {
        let n = rng.random_range(1..=4);
        let keep_n = rng.random_range(1..=n);
        let sys = random_system(&mut rng, n, HI);
        let keep: Vec<String> = sys.variables()[..keep_n].to_vec();
        let proj = sys.project(&keep).map_err(|e| format!("trial {t}: {e}"))?;
        let as_q = |p: &[i64]| p.iter().map(|&v| q(v)).collect::<Vec<_>>();
        let mut seen = std::collections::BTreeSet::new();
        for p in box_points(n, HI) {
            if sys.satisfies(&as_q(&p)) {
                let y = &p[..keep_n];
                if !proj.satisfies(&as_q(y)) {
                    return Err(format!("trial {t}: point {p:?} lost by projection\n{sys}\n--\n{proj}"));
                }
                seen.insert(y.to_vec());
            }
        }
        for y in box_points(keep_n, HI) {
            if !proj.satisfies(&as_q(&y)) || seen.contains(&y) {
                continue;
            }
            let fibre: Vec<Constraint> = sys
                .constraints()
                .iter()
                .map(|c| Constraint {
                    coeffs: c.coeffs[keep_n..].to_vec(),
                    relation: c.relation,
                    rhs: c.rhs - c.coeffs[..keep_n].iter().zip(&y).map(|(a, &v)| a * q(v)).sum::<Rational>(),
                })
                .flat_map(split_eq)
                .collect();
            if !rational_feasible(&fibre, n - keep_n) {
                return Err(format!("trial {t}: {y:?} in projection has no preimage\n{sys}\n--\n{proj}"));
            }
        }
    }
    Ok(())
}

fn split_eq(c: Constraint) -> Vec<Constraint> {
    match c.relation {
        Relation::Le => vec![c],
        Relation::Eq => vec![
            Constraint { relation: Relation::Le, ..c.clone() },
            Constraint {
                coeffs: c.coeffs.iter().map(|x| -x).collect(),
                relation: Relation::Le,
                rhs: -c.rhs,
            },
        ],
    }
}

// ---------------------------------------------------------------- integer search

/// `coeffs · x ≤ rhs` with integer data.
#[derive(Clone, Debug)]
struct Row {
    coeffs: Vec<(usize, i128)>,
    rhs: i128,
}

/// Integer points of a rational system within a box, by depth-first
/// search with bound propagation.
pub struct IntSearch {
    rows: Vec<Row>,
    n: usize,
}

impl IntSearch {
    pub fn new(sys: &LinearSystem) -> Self {
        let mut rows = Vec::new();
        for c in sys.constraints().iter().cloned().flat_map(split_eq) {
            let den = c.coeffs.iter().chain(std::iter::once(&c.rhs)).fold(1i128, |acc, x| acc.lcm(x.denom()));
            let coeffs: Vec<(usize, i128)> = c
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, k)| !k.is_zero())
                .map(|(i, k)| (i, (k * Rational::from_integer(den)).to_integer()))
                .collect();
            rows.push(Row {
                coeffs,
                rhs: (c.rhs * Rational::from_integer(den)).to_integer(),
            });
        }
        IntSearch {
            rows,
            n: sys.variables().len(),
        }
    }

    /// Tightens `lo`, `hi` to bounds consistency; false on a wipe-out.
    fn propagate(&self, lo: &mut [i64], hi: &mut [i64]) -> bool {
        loop {
            let mut changed = false;
            for r in &self.rows {
                let min_sum: i128 = r
                    .coeffs
                    .iter()
                    .map(|&(i, a)| if a > 0 { a * lo[i] as i128 } else { a * hi[i] as i128 })
                    .sum();
                if min_sum > r.rhs {
                    return false;
                }
                for &(i, a) in &r.coeffs {
                    let own = if a > 0 { a * lo[i] as i128 } else { a * hi[i] as i128 };
                    let slack = r.rhs - (min_sum - own);
                    if a > 0 {
                        let b = Integer::div_floor(&slack, &a) as i64;
                        if b < hi[i] {
                            hi[i] = b;
                            changed = true;
                        }
                    } else {
                        // a·x ≤ slack with a < 0
                        let b = Integer::div_ceil(&-slack, &-a) as i64;
                        if b > lo[i] {
                            lo[i] = b;
                            changed = true;
                        }
                    }
                    if lo[i] > hi[i] {
                        return false;
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn dfs(&self, mut lo: Vec<i64>, mut hi: Vec<i64>) -> Option<Vec<i64>> {
        if !self.propagate(&mut lo, &mut hi) {
            return None;
        }
        let pick = (0..self.n).filter(|&i| lo[i] < hi[i]).min_by_key(|&i| hi[i] - lo[i]);
        let Some(v) = pick else { return Some(lo) };
        for x in lo[v]..=hi[v] {
            let (mut l2, mut h2) = (lo.clone(), hi.clone());
            l2[v] = x;
            h2[v] = x;
            if let Some(p) = self.dfs(l2, h2) {
                return Some(p);
            }
        }
        None
    }

    /// Some integer point with every variable in `[0, hi]` and the given
    /// variables held in the given ranges.
    pub fn find(&self, hi: i64, ranges: &[(usize, i64, i64)]) -> Option<Vec<i64>> {
        let (mut l, mut h) = (vec![0; self.n], vec![hi; self.n]);
        for &(i, a, b) in ranges {
            l[i] = l[i].max(a);
            h[i] = h[i].min(b);
        }
        if (0..self.n).any(|i| l[i] > h[i]) {
            return None;
        }
        self.dfs(l, h)
    }
}

/// What the integer search says about one derived `h¹` bound.
#[derive(Debug, Default)]
pub struct Soundness {
    /// Integer points in the box escaping the bound, as `(h¹(N), h¹(M))`.
    pub violations: Vec<(i64, i64)>,
    /// Some point with every variable in `[0, 8]` meets the lower bound.
    pub lower_in_box: bool,
    pub upper_in_box: bool,
    /// Same with only `h¹(M)`, `h¹(N)` kept in `[0, 8]` and the remaining
    /// variables allowed up to [`WIDE`].
    pub lower_wide: bool,
    pub upper_wide: bool,
}

impl Soundness {
    pub fn sound(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn literal(&self) -> bool {
        self.sound() && self.lower_in_box && self.upper_in_box
    }

    pub fn attained(&self) -> bool {
        self.sound() && self.lower_wide && self.upper_wide
    }
}

pub const BOX: i64 = 8;
pub const WIDE: i64 = 24;

fn integral(x: Rational) -> Option<i64> {
    x.is_integer().then(|| x.to_integer() as i64)
}

/// Searches integer points of the assembled system for violations of the
/// derived `h¹` bound and for points meeting it, for `h¹(N) ∈ [0, 8]`.
pub fn soundness_oracle(case: &CaseInstance) -> Soundness {
    let d = derive_bounds(case).expect("grid cases derive");
    let sys = &d.assembled.system;
    let obj = sys.index_of(&d.assembled.objective).unwrap();
    let par = sys.index_of(&d.assembled.parameter).unwrap();
    let search = IntSearch::new(sys);
    let env = Env::new();
    let mut out = Soundness::default();
    let mut record = |p: i64, pt: Option<Vec<i64>>| {
        if let Some(pt) = pt {
            assert!(point_satisfies(sys, &pt));
            out.violations.push((p, pt[obj]));
        }
    };
    for p in 0..=BOX {
        let x = q(p);
        if !d.bound.in_domain(x, &env) {
            record(p, search.find(BOX, &[(par, p, p)]));
            continue;
        }
        let lo = d.bound.lower_at(x, &env).unwrap();
        let up = d.bound.upper_at(x, &env).unwrap();
        let below = (lo.ceil().to_integer() as i64) - 1;
        let above = (up.floor().to_integer() as i64) + 1;
        record(p, search.find(BOX, &[(par, p, p), (obj, 0, below)]));
        record(p, search.find(BOX, &[(par, p, p), (obj, above, BOX)]));
    }
    let witness = |bound: &dyn Fn(Rational) -> Option<Rational>, hi: i64| {
        (0..=BOX).any(|p| {
            let Some(v) = bound(q(p)).and_then(integral) else { return false };
            (0..=BOX).contains(&v) && search.find(hi, &[(par, p, p), (obj, v, v)]).is_some()
        })
    };
    let lower = |x| d.bound.in_domain(x, &env).then(|| d.bound.lower_at(x, &env)).flatten();
    let upper = |x| d.bound.in_domain(x, &env).then(|| d.bound.upper_at(x, &env)).flatten();
    out.lower_in_box = witness(&lower, BOX);
    out.upper_in_box = witness(&upper, BOX);
    out.lower_wide = out.lower_in_box || witness(&lower, WIDE);
    out.upper_wide = out.upper_in_box || witness(&upper, WIDE);
    out
}

/// The integer points the search returns satisfy the system.
pub fn point_satisfies(sys: &LinearSystem, p: &[i64]) -> bool {
    sys.satisfies(&p.iter().map(|&v| q(v)).collect::<Vec<_>>())
}
