//! Exhaustive intersection of a linear space with a 2 x 2 x 2 coordinate
//! sub-Segre.
//!
//! Points of the block Segre are ([s0:s1], [u0:u1], [p0:p1]) and membership
//! in E restricted to the block is a system of multilinear (1,1,1)-forms.
//! The solution set decomposes into components, found exactly:
//!
//! - surface components are common divisors of the forms (linear factors
//!   give coordinate sub-Segres, irreducible bilinear factors give a
//!   one-parameter family of lines over a (1,1)-curve),
//! - line components come from the per-axis locus where a whole coordinate
//!   line satisfies the residual system (a bilinear system on the other two
//!   axes, finite once the common divisors are removed),
//! - the remaining solutions are isolated points, enumerated by branching
//!   over coordinate vanishing patterns and eliminating one variable at a
//!   time.
//!
//! Everything is exact over the rationals. Solutions that would require
//! irrational coordinates are reported as unresolved, never silently
//! dropped; the certified configurations in this crate resolve completely.

use crate::error::{Error, Result};
use crate::exact::rational::{rat, Rational};
use crate::geometry::SegreLine;
use crate::subspace::LinearSubspace;
use crate::tensor::{RankOnePoint, Scalar as _, TensorSpace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    /// Two coordinate indices per factor.
    pub coords: [[usize; 2]; 3],
}

#[derive(Clone, Debug)]
pub enum BlockComponent {
    /// E contains the whole block: the full 2x2x2 sub-Segre.
    FullBlock,
    /// One factor pinned to a point, the other two sweeping the block:
    /// a P1 x P1 surface.
    SubSegre {
        fixed_factor: usize,
        /// Ambient coordinates of the pinned factor vector.
        point: Vec<Rational>,
    },
    /// A one-parameter family of lines in the `moving` factor over the
    /// (1,1)-curve cut by `curve` on the two fixed axes (block coordinates).
    LineFamily {
        moving: usize,
        axes: (usize, usize),
        curve: [[Rational; 2]; 2],
    },
    Line(SegreLine),
    Point(RankOnePoint),
    Unresolved(String),
}

// ---------------------------------------------------------------------------
// small polynomial helpers (dense univariate over Q)

type Poly = Vec<Rational>;

fn poly_trim(p: &mut Poly) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

fn poly_is_zero(p: &Poly) -> bool {
    p.is_empty()
}

#[cfg(test)]
fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    if poly_is_zero(a) || poly_is_zero(b) {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    poly_trim(&mut out);
    out
}

fn poly_rem(a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    while !poly_is_zero(&r) && r.len() >= b.len() {
        let f = r.last().unwrap() / b.last().unwrap();
        let shift = r.len() - b.len();
        for (i, c) in b.iter().enumerate() {
            let v = &r[shift + i] - &f * c;
            r[shift + i] = v;
        }
        poly_trim(&mut r);
    }
    r
}

fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !poly_is_zero(&y) {
        let r = poly_rem(&x, &y);
        x = y;
        y = r;
    }
    if let Some(lead) = x.last().cloned() {
        for c in x.iter_mut() {
            *c = &*c / &lead;
        }
    }
    x
}

fn poly_eval(p: &Poly, x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// All rational roots (with deflation); the boolean is true when a
/// nonconstant factor without rational roots remains.
fn rational_roots(p: &Poly) -> (Vec<Rational>, bool) {
    let mut p = p.clone();
    let mut roots = Vec::new();
    if poly_is_zero(&p) {
        return (roots, false);
    }
    // root at zero
    while p.len() > 1 && p[0].is_zero() {
        roots.push(rat(0));
        p.remove(0);
    }
    // clear denominators to an integer polynomial
    let mut den = num_bigint::BigInt::from(1);
    for c in &p {
        let d = c.denom().clone();
        let g = num_integer::Integer::gcd(&den, &d);
        den = den / g * d;
    }
    let ints: Vec<num_bigint::BigInt> =
        p.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
    let lead = ints.last().unwrap().clone();
    let tail = ints[0].clone();
    let divisors = |n: &num_bigint::BigInt| -> Option<Vec<num_bigint::BigInt>> {
        use num_traits::Signed;
        let n = n.abs();
        if n > num_bigint::BigInt::from(1_000_000_000_000i64) {
            return None; // too large to enumerate; caller reports unresolved
        }
        let n_i: i64 = n.try_into().ok()?;
        let mut out = Vec::new();
        let mut d = 1i64;
        while d * d <= n_i {
            if n_i % d == 0 {
                out.push(num_bigint::BigInt::from(d));
                out.push(num_bigint::BigInt::from(n_i / d));
            }
            d += 1;
        }
        Some(out)
    };
    if p.len() > 1 {
        let (Some(tops), Some(bottoms)) = (divisors(&tail), divisors(&lead)) else {
            return (roots, true);
        };
        let mut candidates: Vec<Rational> = Vec::new();
        for t in &tops {
            for b in &bottoms {
                for sign in [1i64, -1] {
                    candidates.push(Rational::new(t.clone() * sign, b.clone()));
                }
            }
        }
        candidates.sort();
        candidates.dedup();
        for cand in candidates {
            while p.len() > 1 && poly_eval(&p, &cand).is_zero() {
                roots.push(cand.clone());
                // synthetic division by (x - cand)
                let mut q = vec![Rational::zero(); p.len() - 1];
                let mut carry = Rational::zero();
                for i in (0..p.len() - 1).rev() {
                    let c = &p[i + 1] + &carry;
                    carry = &c * &cand;
                    q[i] = c;
                }
                p = q;
            }
        }
    }
    (roots, p.len() > 1)
}

// ---------------------------------------------------------------------------
// multilinear forms on P1 x P1 x P1

/// c[i][j][k] = coefficient of s_i u_j p_k.
#[derive(Clone, Debug, PartialEq, Eq)]
struct TriForm([[[Rational; 2]; 2]; 2]);

impl TriForm {
    fn from_flat(eq: &[Rational]) -> Self {
        let mut c: [[[Rational; 2]; 2]; 2] = Default::default();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    c[i][j][k] = eq[4 * i + 2 * j + k].clone();
                }
            }
        }
        TriForm(c)
    }

    fn is_zero(&self) -> bool {
        self.0.iter().flatten().flatten().all(|c| c.is_zero())
    }

    /// The bilinear form on the other two axes obtained by pairing the given
    /// axis with a point.
    fn eval_axis(&self, axis: usize, point: &[Rational; 2]) -> BiMatrix {
        let mut m: BiMatrix = Default::default();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    let (v, rest) = match axis {
                        0 => (&point[i], (j, k)),
                        1 => (&point[j], (i, k)),
                        _ => (&point[k], (i, j)),
                    };
                    m[rest.0][rest.1] += &self.0[i][j][k] * v;
                }
            }
        }
        m
    }

    /// Tries to split off a linear factor in the given axis.
    fn linear_factor(&self, axis: usize) -> Option<([Rational; 2], BiMatrix)> {
        let e0 = self.eval_axis(axis, &[rat(1), rat(0)]);
        let e1 = self.eval_axis(axis, &[rat(0), rat(1)]);
        let z0 = bi_is_zero(&e0);
        let z1 = bi_is_zero(&e1);
        if z0 && z1 {
            return None; // zero form, handled elsewhere
        }
        if z0 {
            return Some(([rat(0), rat(1)], e1));
        }
        if z1 {
            return Some(([rat(1), rat(0)], e0));
        }
        // e1 = lambda e0?
        let (r0, c0) = bi_first_nonzero(&e0)?;
        let lambda = &e1[r0][c0] / &e0[r0][c0];
        for r in 0..2 {
            for c in 0..2 {
                if e1[r][c] != &lambda * &e0[r][c] {
                    return None;
                }
            }
        }
        Some(([rat(1), lambda], e0))
    }
}

type BiMatrix = [[Rational; 2]; 2];

fn bi_is_zero(m: &BiMatrix) -> bool {
    m.iter().flatten().all(|c| c.is_zero())
}

fn bi_first_nonzero(m: &BiMatrix) -> Option<(usize, usize)> {
    for r in 0..2 {
        for c in 0..2 {
            if !m[r][c].is_zero() {
                return Some((r, c));
            }
        }
    }
    None
}

fn bi_det(m: &BiMatrix) -> Rational {
    &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
}

/// Splits a rank-one bilinear form into its two linear factors
/// (left factor on the first axis, right on the second).
fn bi_split(m: &BiMatrix) -> Option<([Rational; 2], [Rational; 2])> {
    if !bi_det(m).is_zero() || bi_is_zero(m) {
        return None;
    }
    // m[i][j] = l[i] * r[j]
    let (r0, c0) = bi_first_nonzero(m)?;
    let l = [m[0][c0].clone(), m[1][c0].clone()];
    let pivot = &m[r0][c0];
    let r = [&m[r0][0] / pivot, &m[r0][1] / pivot];
    Some((l, r))
}

/// A factor of a (1,1,1)-form.
#[derive(Clone, Debug)]
enum Factor {
    Lin(usize, [Rational; 2]),
    /// Irreducible bilinear form on an ordered axis pair.
    Bi((usize, usize), BiMatrix),
    /// Irreducible trilinear form (zero set reported unresolved).
    Tri(#[allow(dead_code)] TriForm),
}

fn lin_proportional(a: &[Rational; 2], b: &[Rational; 2]) -> bool {
    (&a[0] * &b[1] - &a[1] * &b[0]).is_zero()
}

fn bi_proportional(a: &BiMatrix, b: &BiMatrix) -> bool {
    let Some((r0, c0)) = bi_first_nonzero(a) else {
        return bi_is_zero(b);
    };
    if b[r0][c0].is_zero() {
        return false;
    }
    let lambda = &b[r0][c0] / &a[r0][c0];
    (0..2).all(|r| (0..2).all(|c| b[r][c] == &lambda * &a[r][c]))
}

fn factors_equal(a: &Factor, b: &Factor) -> bool {
    match (a, b) {
        (Factor::Lin(ax, la), Factor::Lin(bx, lb)) => ax == bx && lin_proportional(la, lb),
        (Factor::Bi(aa, ma), Factor::Bi(ba, mb)) => aa == ba && bi_proportional(ma, mb),
        _ => false,
    }
}

/// Full factorization of a nonzero (1,1,1)-form. Any factorization contains
/// a single-axis linear factor unless the form is irreducible.
fn factor_triform(f: &TriForm) -> Vec<Factor> {
    debug_assert!(!f.is_zero());
    for axis in 0..3 {
        if let Some((lin, rest)) = f.linear_factor(axis) {
            let other: Vec<usize> = (0..3).filter(|&a| a != axis).collect();
            let mut out = vec![Factor::Lin(axis, lin)];
            match bi_split(&rest) {
                Some((l, r)) => {
                    out.push(Factor::Lin(other[0], l));
                    out.push(Factor::Lin(other[1], r));
                }
                None => out.push(Factor::Bi((other[0], other[1]), rest)),
            }
            return out;
        }
    }
    vec![Factor::Tri(f.clone())]
}

/// Common factors of all forms (each appears with multiplicity one in a
/// (1,1,1)-form).
fn common_factors(factored: &[Vec<Factor>]) -> Vec<Factor> {
    let Some(first) = factored.first() else {
        return Vec::new();
    };
    first
        .iter()
        .filter(|f| {
            !matches!(f, Factor::Tri(_))
                && factored[1..]
                    .iter()
                    .all(|list| list.iter().any(|g| factors_equal(f, g)))
        })
        .cloned()
        .collect()
}

// ---------------------------------------------------------------------------
// multilinear polynomials in up to three chart variables

/// Polynomial in variables lam[0..3] with exponents <= 3 per variable (the
/// eliminations square at most once).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
struct MPoly(std::collections::BTreeMap<[u8; 3], Rational>);

impl MPoly {
    fn zero() -> Self {
        MPoly::default()
    }
    fn constant(c: Rational) -> Self {
        let mut p = MPoly::zero();
        p.add_term([0, 0, 0], c);
        p
    }
    fn add_term(&mut self, m: [u8; 3], c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(m).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&m);
        }
    }
    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.0 {
            out.add_term(*m, c.clone());
        }
        out
    }
    fn mul(&self, o: &Self) -> Self {
        let mut out = MPoly::zero();
        for (m1, c1) in &self.0 {
            for (m2, c2) in &o.0 {
                out.add_term(
                    [m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2]],
                    c1 * c2,
                );
            }
        }
        out
    }
    fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.0 {
            out.add_term(*m, -c.clone());
        }
        out
    }
    fn substitute(&self, var: usize, value: &Rational) -> Self {
        let mut out = MPoly::zero();
        for (m, c) in &self.0 {
            let mut c = c.clone();
            for _ in 0..m[var] {
                c *= value;
            }
            let mut nm = *m;
            nm[var] = 0;
            out.add_term(nm, c);
        }
        out
    }
    fn degree_in(&self, var: usize) -> u8 {
        self.0.keys().map(|m| m[var]).max().unwrap_or(0)
    }
    /// Coefficient of var^k, as a polynomial in the remaining variables.
    fn coefficient_of(&self, var: usize, k: u8) -> Self {
        let mut out = MPoly::zero();
        for (m, c) in &self.0 {
            if m[var] == k {
                let mut nm = *m;
                nm[var] = 0;
                out.add_term(nm, c.clone());
            }
        }
        out
    }
    fn uses(&self, var: usize) -> bool {
        self.0.keys().any(|m| m[var] > 0)
    }
    /// Dense univariate view when only `var` occurs.
    fn univariate_in(&self, var: usize) -> Option<Poly> {
        for (m, _) in &self.0 {
            for v in 0..3 {
                if v != var && m[v] > 0 {
                    return None;
                }
            }
        }
        let deg = self.degree_in(var) as usize;
        let mut out = vec![Rational::zero(); deg + 1];
        for (m, c) in &self.0 {
            out[m[var] as usize] = c.clone();
        }
        poly_trim(&mut out);
        Some(out)
    }
}

// ---------------------------------------------------------------------------
// the solver

/// Solutions of a residual system: rational points plus honesty flags.
#[derive(Default, Debug)]
struct PointHarvest {
    points: Vec<[[Rational; 2]; 3]>,
    notes: Vec<String>,
}

impl PointHarvest {
    fn push_point(&mut self, p: [[Rational; 2]; 3]) {
        let normalize = |v: &[Rational; 2]| -> [Rational; 2] {
            if !v[0].is_zero() {
                [rat(1), &v[1] / &v[0]]
            } else {
                [rat(0), rat(1)]
            }
        };
        let n = [normalize(&p[0]), normalize(&p[1]), normalize(&p[2])];
        if !self.points.contains(&n) {
            self.points.push(n);
        }
    }
}

/// Branch states per axis: the point [1:0], the point [0:1], or the chart
/// [1:lam] with lam constrained nonzero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum State {
    P0,
    P1,
    Gen,
}

/// Exhaustive chart/branching elimination for the residual system: every
/// rational solution shows up in exactly one of the 27 vanishing-pattern
/// branches.
fn enumerate_points(forms: &[TriForm], harvest: &mut PointHarvest) {
    let states = [State::P0, State::P1, State::Gen];
    for &sa in &states {
        for &sb in &states {
            for &sc in &states {
                let branch = [sa, sb, sc];
                let gen_vars: Vec<usize> = (0..3)
                    .filter(|&axis| branch[axis] == State::Gen)
                    .collect();
                let coords: Vec<[MPoly; 2]> = (0..3)
                    .map(|axis| match branch[axis] {
                        State::P0 => [MPoly::constant(rat(1)), MPoly::zero()],
                        State::P1 => [MPoly::zero(), MPoly::constant(rat(1))],
                        State::Gen => {
                            let mut lam = MPoly::zero();
                            let mut m = [0u8; 3];
                            m[axis] = 1;
                            lam.add_term(m, rat(1));
                            [MPoly::constant(rat(1)), lam]
                        }
                    })
                    .collect();
                let eqs: Vec<MPoly> = forms
                    .iter()
                    .map(|f| {
                        let mut acc = MPoly::zero();
                        for i in 0..2 {
                            for j in 0..2 {
                                for k in 0..2 {
                                    if f.0[i][j][k].is_zero() {
                                        continue;
                                    }
                                    let term = coords[0][i]
                                        .mul(&coords[1][j])
                                        .mul(&coords[2][k])
                                        .mul(&MPoly::constant(f.0[i][j][k].clone()));
                                    acc = acc.add(&term);
                                }
                            }
                        }
                        acc
                    })
                    .filter(|p| !p.is_zero())
                    .collect();
                let mut solutions = Vec::new();
                solve_branch(&eqs, &gen_vars, &mut Vec::new(), harvest, 0, &mut solutions);
                for sol in solutions {
                    let mut point: [[Rational; 2]; 3] = Default::default();
                    for axis in 0..3 {
                        point[axis] = match branch[axis] {
                            State::P0 => [rat(1), rat(0)],
                            State::P1 => [rat(0), rat(1)],
                            State::Gen => {
                                let v = sol
                                    .iter()
                                    .find(|(a, _)| *a == axis)
                                    .map(|(_, v)| v.clone())
                                    .expect("assigned");
                                [rat(1), v]
                            }
                        };
                    }
                    harvest.push_point(point);
                }
            }
        }
    }
}

/// Recursively solves a multilinear system in the given chart variables
/// (values constrained nonzero), collecting complete rational assignments.
/// Positive-dimensional solution families inside a branch correspond to the
/// line/surface components found elsewhere and are only noted.
fn solve_branch(
    eqs: &[MPoly],
    vars: &[usize],
    fixed: &mut Vec<(usize, Rational)>,
    harvest: &mut PointHarvest,
    depth: usize,
    solutions: &mut Vec<Vec<(usize, Rational)>>,
) {
    if depth > 16 {
        harvest.notes.push("branch elimination exceeded depth cap".into());
        return;
    }
    let eqs: Vec<MPoly> = eqs.iter().filter(|e| !e.is_zero()).cloned().collect();
    // contradiction: a nonzero constant equation
    if eqs
        .iter()
        .any(|e| !e.uses(0) && !e.uses(1) && !e.uses(2) && !e.is_zero())
    {
        return;
    }
    match vars {
        [] => {
            if eqs.is_empty() {
                solutions.push(fixed.clone());
            }
        }
        [v] => {
            let v = *v;
            if eqs.is_empty() {
                // a full chart line of solutions: found by the line inventory
                return;
            }
            let mut gcd: Option<Poly> = None;
            for e in &eqs {
                let Some(p) = e.univariate_in(v) else {
                    harvest.notes.push("inner system not univariate".into());
                    return;
                };
                if poly_is_zero(&p) {
                    continue;
                }
                gcd = Some(match gcd {
                    None => p,
                    Some(g) => poly_gcd(&g, &p),
                });
            }
            let Some(g) = gcd else {
                return; // all equations vanished: 1-dimensional family
            };
            if g.len() <= 1 {
                return; // nonzero constant gcd: no common root
            }
            let (roots, leftover) = rational_roots(&g);
            if leftover {
                harvest
                    .notes
                    .push("nonrational candidates in a branch eliminant".into());
            }
            for r in roots {
                if r.is_zero() {
                    continue; // chart variables are nonzero
                }
                if eqs.iter().all(|e| e.substitute(v, &r).is_zero()) {
                    fixed.push((v, r.clone()));
                    solutions.push(fixed.clone());
                    fixed.pop();
                }
            }
        }
        _ => {
            // eliminate the last variable: every equation is linear in it
            let v = *vars.last().unwrap();
            let rest = &vars[..vars.len() - 1];
            if eqs.is_empty() {
                return; // positive-dimensional family
            }
            let split: Vec<(MPoly, MPoly)> = eqs
                .iter()
                .map(|e| (e.coefficient_of(v, 0), e.coefficient_of(v, 1)))
                .collect();
            let Some(pivot) = split.iter().position(|(_, b)| !b.is_zero()) else {
                // v free: 1-parameter families over the rest system, which
                // the line inventory already reports
                return;
            };
            let (a1, b1) = split[pivot].clone();
            // case B1(rest) != 0: v = -A1/B1, cross-multiplied compatibility
            let mut reduced = Vec::new();
            for (i, (aj, bj)) in split.iter().enumerate() {
                if i != pivot {
                    reduced.push(aj.mul(&b1).sub(&a1.mul(bj)));
                }
            }
            let mut inner = Vec::new();
            solve_branch(&reduced, rest, &mut Vec::new(), harvest, depth + 1, &mut inner);
            for sol in inner {
                let apply = |p: &MPoly| -> Rational {
                    let mut q = p.clone();
                    for (var, val) in &sol {
                        q = q.substitute(*var, val);
                    }
                    q.0.get(&[0, 0, 0]).cloned().unwrap_or_else(Rational::zero)
                };
                let bv = apply(&b1);
                if bv.is_zero() {
                    continue; // belongs to the B1 == 0 case below
                }
                let value = -apply(&a1) / bv;
                if value.is_zero() {
                    continue; // chart requires nonzero
                }
                let mut all = fixed.clone();
                all.extend(sol);
                all.push((v, value));
                solutions.push(all);
            }
            // case B1 == 0: then A1 = 0 too; both join the system
            let mut sub = eqs.clone();
            sub.remove(pivot);
            sub.push(a1);
            sub.push(b1);
            solve_branch(&sub, vars, fixed, harvest, depth + 1, solutions);
        }
    }
}

// ---------------------------------------------------------------------------
// per-axis line inventory

/// Points ([s],[u]) of P1 x P1 where a whole coordinate line in the moving
/// axis solves the system. Returns the finite locus; curve pieces are
/// anomalies after common divisors were removed.
fn line_locus(
    forms: &[TriForm],
    moving: usize,
) -> (Vec<([Rational; 2], [Rational; 2])>, Vec<String>) {
    let mut conditions: Vec<BiMatrix> = Vec::new();
    for f in forms {
        for basis in [[rat(1), rat(0)], [rat(0), rat(1)]] {
            let m = f.eval_axis(moving, &basis);
            if !bi_is_zero(&m) {
                conditions.push(m);
            }
        }
    }
    let mut notes = Vec::new();
    let mut points = Vec::new();
    if conditions.is_empty() {
        notes.push(format!(
            "axis {moving}: every line satisfies the residual system"
        ));
        return (points, notes);
    }
    // chart s = [0:1]
    {
        let rows: Vec<[Rational; 2]> = conditions
            .iter()
            .map(|m| [m[1][0].clone(), m[1][1].clone()])
            .collect();
        match common_kernel(&rows) {
            KernelResult::Whole => notes.push(format!(
                "axis {moving}: curve component through [0:1] (unexpected after gcd)"
            )),
            KernelResult::Point(g) => points.push(([rat(0), rat(1)], g)),
            KernelResult::None => {}
        }
    }
    // chart s = [1:x]
    {
        // v_i(x) = top row + x * bottom row
        let pairs: Vec<([Rational; 2], [Rational; 2])> = conditions
            .iter()
            .map(|m| {
                (
                    [m[0][0].clone(), m[0][1].clone()],
                    [m[1][0].clone(), m[1][1].clone()],
                )
            })
            .collect();
        if pairs.len() == 1 {
            notes.push(format!(
                "axis {moving}: single bilinear condition leaves a curve of lines"
            ));
        } else {
            let mut gcd: Option<Poly> = None;
            for i in 0..pairs.len() {
                for j in i + 1..pairs.len() {
                    // det of (v_i(x); v_j(x)): quadratic in x
                    let (ai, bi) = &pairs[i];
                    let (aj, bj) = &pairs[j];
                    let c0 = &ai[0] * &aj[1] - &ai[1] * &aj[0];
                    let c1 = &ai[0] * &bj[1] - &ai[1] * &bj[0] + &bi[0] * &aj[1]
                        - &bi[1] * &aj[0];
                    let c2 = &bi[0] * &bj[1] - &bi[1] * &bj[0];
                    let mut d = vec![c0, c1, c2];
                    poly_trim(&mut d);
                    if poly_is_zero(&d) {
                        continue;
                    }
                    gcd = Some(match gcd {
                        None => d,
                        Some(g) => poly_gcd(&g, &d),
                    });
                }
            }
            match gcd {
                None => notes.push(format!(
                    "axis {moving}: all pair determinants vanish; curve of lines"
                )),
                Some(g) if poly_is_zero(&g) => unreachable!(),
                Some(g) if g.len() == 1 => {} // no solutions in this chart
                Some(g) => {
                    let (roots, leftover) = rational_roots(&g);
                    if leftover {
                        notes.push(format!(
                            "axis {moving}: nonrational line locus remains"
                        ));
                    }
                    for x in roots {
                        let s = [rat(1), x.clone()];
                        let rows: Vec<[Rational; 2]> = pairs
                            .iter()
                            .map(|(a, b)| [&a[0] + &x * &b[0], &a[1] + &x * &b[1]])
                            .collect();
                        match common_kernel(&rows) {
                            KernelResult::Whole => notes.push(format!(
                                "axis {moving}: line-of-lines at a special point"
                            )),
                            KernelResult::Point(g0) => points.push((s, g0)),
                            KernelResult::None => {}
                        }
                    }
                }
            }
        }
    }
    (points, notes)
}

enum KernelResult {
    Whole,
    Point([Rational; 2]),
    None,
}

fn common_kernel(rows: &[[Rational; 2]]) -> KernelResult {
    let nonzero: Vec<&[Rational; 2]> = rows
        .iter()
        .filter(|r| !r[0].is_zero() || !r[1].is_zero())
        .collect();
    if nonzero.is_empty() {
        return KernelResult::Whole;
    }
    let first = nonzero[0];
    for r in &nonzero[1..] {
        if !(&first[0] * &r[1] - &first[1] * &r[0]).is_zero() {
            return KernelResult::None;
        }
    }
    KernelResult::Point([-first[1].clone(), first[0].clone()])
}

// ---------------------------------------------------------------------------
// assembly

fn ambient_factor_vector(
    space: &TensorSpace,
    factor: usize,
    block: &Block,
    coeffs: &[Rational; 2],
) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); space.dims[factor]];
    v[block.coords[factor][0]] = coeffs[0].clone();
    v[block.coords[factor][1]] = coeffs[1].clone();
    v
}

fn ambient_point(space: &TensorSpace, block: &Block, p: &[[Rational; 2]; 3]) -> RankOnePoint {
    RankOnePoint {
        a: ambient_factor_vector(space, 0, block, &p[0]),
        b: ambient_factor_vector(space, 1, block, &p[1]),
        c: ambient_factor_vector(space, 2, block, &p[2]),
    }
    .projective_normal_form()
}

fn ambient_line(
    space: &TensorSpace,
    block: &Block,
    moving: usize,
    fixed: &[([Rational; 2], usize); 2],
) -> SegreLine {
    let mut fixed_vectors: [Option<Vec<Rational>>; 3] = [None, None, None];
    for (coeffs, axis) in fixed {
        fixed_vectors[*axis] = Some(ambient_factor_vector(space, *axis, block, coeffs));
    }
    let pencil = LinearSubspace::from_vectors(
        space.dims[moving],
        vec![
            ambient_factor_vector(space, moving, block, &[rat(1), rat(0)]),
            ambient_factor_vector(space, moving, block, &[rat(0), rat(1)]),
        ],
    );
    SegreLine {
        moving,
        fixed: fixed_vectors,
        pencil,
    }
}

/// The full solution set of E intersected with the block's Segre variety.
pub fn intersect_block_segre(
    e: &LinearSubspace,
    space: &TensorSpace,
    block: &Block,
) -> Result<Vec<BlockComponent>> {
    if e.ambient != space.total_dim() {
        return Err(Error::BadBlock(format!(
            "subspace ambient {} does not match the space dimension {}",
            e.ambient,
            space.total_dim()
        )));
    }
    for f in 0..3 {
        let [i, j] = block.coords[f];
        if i == j || i >= space.dims[f] || j >= space.dims[f] {
            return Err(Error::BadBlock(format!(
                "factor {f} coordinates {i}, {j} invalid for dimension {}",
                space.dims[f]
            )));
        }
    }
    // restrict E to the block's 8 coordinates (lex order over (i,j,k))
    let mut flat = Vec::with_capacity(8);
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                flat.push(space.flat_index([
                    block.coords[0][i],
                    block.coords[1][j],
                    block.coords[2][k],
                ]));
            }
        }
    }
    let e_block = e.restrict_to_coordinates(&flat);
    let equations = e_block.equations();
    if equations.is_empty() {
        return Ok(vec![BlockComponent::FullBlock]);
    }
    let forms: Vec<TriForm> = equations
        .iter()
        .map(|eq| TriForm::from_flat(eq))
        .filter(|f| !f.is_zero())
        .collect();
    if forms.is_empty() {
        return Ok(vec![BlockComponent::FullBlock]);
    }

    let mut components: Vec<BlockComponent> = Vec::new();
    let factored: Vec<Vec<Factor>> = forms.iter().map(factor_triform).collect();
    let common = common_factors(&factored);
    for c in &common {
        match c {
            Factor::Lin(axis, l) => {
                // the axis factor pinned to the root of the linear form
                let root = [-l[1].clone(), l[0].clone()];
                components.push(BlockComponent::SubSegre {
                    fixed_factor: *axis,
                    point: ambient_factor_vector(space, *axis, block, &root),
                });
            }
            Factor::Bi(axes, m) => {
                let moving = (0..3).find(|a| *a != axes.0 && *a != axes.1).unwrap();
                components.push(BlockComponent::LineFamily {
                    moving,
                    axes: *axes,
                    curve: m.clone(),
                });
            }
            Factor::Tri(_) => {
                components.push(BlockComponent::Unresolved(
                    "irreducible trilinear surface component".into(),
                ));
            }
        }
    }

    // if some form equals the common divisor, the whole solution set is the
    // union of the surface components (the divisor's zero set is contained
    // in every other form's zero set)
    if factored
        .iter()
        .any(|list| list.iter().all(|f| common.iter().any(|c| factors_equal(c, f))))
    {
        return Ok(components);
    }

    // axis-line inventory on the original system; lines inside surface
    // components are absorbed by them
    let mut lines: Vec<(usize, [([Rational; 2], usize); 2])> = Vec::new();
    let mut notes: Vec<String> = Vec::new();
    for moving in 0..3 {
        let (locus, axis_notes) = line_locus(&forms, moving);
        notes.extend(axis_notes);
        let axes: Vec<usize> = (0..3).filter(|a| *a != moving).collect();
        'locus: for (pa, pb) in locus {
            let fixed = [(pa, axes[0]), (pb, axes[1])];
            for c in &common {
                if line_inside_surface(moving, &fixed, c) {
                    continue 'locus;
                }
            }
            lines.push((moving, fixed));
        }
    }
    // curve-shaped line loci are exactly the surface components; without a
    // surface to explain them they are anomalies
    for note in notes {
        let explained = !common.is_empty()
            && (note.contains("curve") || note.contains("line-of-lines") || note.contains("every line"));
        if !explained {
            components.push(BlockComponent::Unresolved(note));
        }
    }
    for (moving, fixed) in &lines {
        components.push(BlockComponent::Line(ambient_line(space, block, *moving, fixed)));
    }

    // isolated points not on any found component
    let mut harvest = PointHarvest::default();
    enumerate_points(&forms, &mut harvest);
    for note in &harvest.notes {
        if note.contains("nonrational") || note.contains("depth cap") || note.contains("not univariate") {
            components.push(BlockComponent::Unresolved(note.clone()));
        }
    }
    'points: for p in &harvest.points {
        for (_, fixed) in &lines {
            let on_line = fixed.iter().all(|(coeffs, axis)| {
                (&coeffs[0] * &p[*axis][1] - &coeffs[1] * &p[*axis][0]).is_zero()
            });
            if on_line {
                continue 'points;
            }
        }
        for c in &common {
            if point_inside_surface(p, c) {
                continue 'points;
            }
        }
        components.push(BlockComponent::Point(ambient_point(space, block, p)));
    }
    Ok(components)
}

fn line_inside_surface(moving: usize, fixed: &[([Rational; 2], usize); 2], surface: &Factor) -> bool {
    match surface {
        // the pinned-axis surface contains a line iff the line fixes that
        // axis at the pinned point
        Factor::Lin(axis, l) => fixed
            .iter()
            .any(|(coeffs, ax)| ax == axis && (&l[0] * &coeffs[0] + &l[1] * &coeffs[1]).is_zero()),
        // the family of moving-axis lines over the (1,1)-curve contains a
        // line iff it moves the same axis and its fixed points satisfy the
        // curve equation
        Factor::Bi((a1, a2), m) => {
            let value = |axis: usize| -> Option<&[Rational; 2]> {
                fixed.iter().find(|(_, ax)| ax == &axis).map(|(c, _)| c)
            };
            let (Some(va), Some(vb)) = (value(*a1), value(*a2)) else {
                return false; // the line moves one of the curve's axes
            };
            let _ = moving;
            let mut acc = Rational::zero();
            for i in 0..2 {
                for j in 0..2 {
                    acc += &m[i][j] * &va[i] * &vb[j];
                }
            }
            acc.is_zero()
        }
        Factor::Tri(_) => false,
    }
}

fn point_inside_surface(p: &[[Rational; 2]; 3], surface: &Factor) -> bool {
    match surface {
        Factor::Lin(axis, l) => (&l[0] * &p[*axis][0] + &l[1] * &p[*axis][1]).is_zero(),
        Factor::Bi((a1, a2), m) => {
            let mut acc = Rational::zero();
            for i in 0..2 {
                for j in 0..2 {
                    acc += &m[i][j] * &p[*a1][i] * &p[*a2][j];
                }
            }
            acc.is_zero()
        }
        Factor::Tri(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::entry;
    use crate::geometry::{classify_line, limit_plane};
    use crate::tensor::Tensor;

    fn block_of(space: &TensorSpace, labels: [[&str; 2]; 3]) -> Block {
        let coords = std::array::from_fn(|f| {
            std::array::from_fn(|i| space.parse_label(labels[f][i]).unwrap().1)
        });
        Block { coords }
    }

    #[test]
    fn full_block_detected() {
        let space = TensorSpace::matmul(2, 2, 2);
        let block = Block { coords: [[0, 1], [0, 1], [0, 1]] };
        let e = LinearSubspace::full(space.total_dim());
        let comps = intersect_block_segre(&e, &space, &block).unwrap();
        assert!(matches!(comps.as_slice(), [BlockComponent::FullBlock]));
    }

    #[test]
    fn bclr_block_intersection_is_three_lines() {
        let (alg, _) = entry("bclr").unwrap().load(false).unwrap();
        let e = limit_plane(&alg).unwrap();
        let block = block_of(
            &alg.space,
            [["x^1_2", "x^2_1"], ["y^2_1", "y^2_2"], ["z^1_2", "z^2_2"]],
        );
        let comps = intersect_block_segre(&e, &alg.space, &block).unwrap();
        let lines: Vec<&SegreLine> = comps
            .iter()
            .filter_map(|c| match c {
                BlockComponent::Line(l) => Some(l),
                _ => None,
            })
            .collect();
        assert_eq!(lines.len(), 3, "components: {comps:?}");
        assert!(comps.iter().all(|c| matches!(c, BlockComponent::Line(_))));
        let mut kinds: Vec<char> = lines
            .iter()
            .map(|l| classify_line(&alg.space, l).unwrap().kind)
            .collect();
        kinds.sort();
        assert_eq!(kinds, vec!['\u{3b1}', '\u{3b2}', '\u{3b3}']);
        // every component consists of rank-one points: sample five pencil
        // values on each line
        for l in &lines {
            for c in [(1, 0), (0, 1), (1, 1), (1, -1), (2, 3)] {
                let p = l.point_at(&[rat(c.0), rat(c.1)]);
                let t = p.outer_product(&alg.space);
                assert!(crate::geometry::is_rank_one(&t).unwrap().is_some());
            }
        }
    }

    #[test]
    fn intersecting_beta_gamma_pair_gives_two_lines() {
        // beta and gamma lines through a common point span only those two
        let space = TensorSpace::matmul(2, 2, 2);
        let dim = space.total_dim();
        let p = |a: usize, b: usize, c: usize| {
            let mut t = Tensor::zero(space.clone());
            t.add_entry([a, b, c], rat(1));
            t.to_flat_vec()
        };
        // beta: e0 (x) <e0,e1> (x) e0; gamma: e0 (x) e0 (x) <e0,e1>
        let e = LinearSubspace::from_vectors(dim, vec![p(0, 0, 0), p(0, 1, 0), p(0, 0, 1)]);
        let block = Block { coords: [[0, 1], [0, 1], [0, 1]] };
        let comps = intersect_block_segre(&e, &space, &block).unwrap();
        let lines: Vec<&SegreLine> = comps
            .iter()
            .filter_map(|c| match c {
                BlockComponent::Line(l) => Some(l),
                _ => None,
            })
            .collect();
        assert_eq!(lines.len(), 2, "components: {comps:?}");
        assert_eq!(comps.len(), 2);
    }

    #[test]
    fn disjoint_beta_gamma_pair_in_block_gains_connecting_alpha_line() {
        let space = TensorSpace::matmul(2, 2, 2);
        let dim = space.total_dim();
        let mk = |a: [i64; 2], b: [i64; 2], c: [i64; 2]| {
            let point = RankOnePoint {
                a: vec![rat(a[0]), rat(a[1]), rat(0), rat(0)],
                b: vec![rat(b[0]), rat(b[1]), rat(0), rat(0)],
                c: vec![rat(c[0]), rat(c[1]), rat(0), rat(0)],
            };
            point.outer_product(&space).to_flat_vec()
        };
        // beta line a (x) <b1,b2> (x) c and gamma line a' (x) b (x) <c1,c2>
        // with a, a' independent: generic members of the block pencils
        let e = LinearSubspace::from_vectors(
            dim,
            vec![
                mk([1, 0], [1, 0], [1, 2]),
                mk([1, 0], [0, 1], [1, 2]),
                mk([0, 1], [1, 3], [1, 0]),
                mk([0, 1], [1, 3], [0, 1]),
            ],
        );
        let block = Block { coords: [[0, 1], [0, 1], [0, 1]] };
        let comps = intersect_block_segre(&e, &space, &block).unwrap();
        let lines: Vec<&SegreLine> = comps
            .iter()
            .filter_map(|c| match c {
                BlockComponent::Line(l) => Some(l),
                _ => None,
            })
            .collect();
        assert_eq!(lines.len(), 3, "components: {comps:?}");
    }

    #[test]
    fn as3_configuration_block_is_two_surfaces() {
        let (alg, _) = entry("as3").unwrap().load(false).unwrap();
        let e = limit_plane(&alg).unwrap();
        let block = block_of(
            &alg.space,
            [["x^1_2", "x^2_1"], ["y^2_1", "y^2_2"], ["z^1_3", "z^2_3"]],
        );
        let comps = intersect_block_segre(&e, &alg.space, &block).unwrap();
        let mut sub_segre = 0;
        let mut families = 0;
        for c in &comps {
            match c {
                BlockComponent::SubSegre { fixed_factor, point } => {
                    sub_segre += 1;
                    assert_eq!(*fixed_factor, 0);
                    // pinned at x^2_1
                    let (_, idx) = alg.space.parse_label("x^2_1").unwrap();
                    assert!(!point[idx].is_zero());
                }
                BlockComponent::LineFamily { moving, .. } => {
                    families += 1;
                    assert_eq!(*moving, 0);
                }
                other => panic!("unexpected component {other:?}"),
            }
        }
        assert_eq!((sub_segre, families), (1, 1));
    }

    #[test]
    fn rational_roots_helper() {
        // (x - 2)(x + 3/2) * (x^2 + 1)
        let p = poly_mul(
            &poly_mul(&vec![rat(-2), rat(1)], &vec![crate::exact::rational::ratio(3, 2), rat(1)]),
            &vec![rat(1), rat(0), rat(1)],
        );
        let (roots, leftover) = rational_roots(&p);
        assert!(leftover);
        let mut roots = roots;
        roots.sort();
        assert_eq!(roots, vec![crate::exact::rational::ratio(-3, 2), rat(2)]);
    }
}
