//! Rank-one and Segre-variety geometry: tangent spaces, lines and their
//! matrix-structure type tags, line configurations of limit points, the
//! Grassmannian limit plane of an algorithm, and parametric families.

use std::collections::BTreeMap;

use crate::catalog::BorderRankAlgorithm;
use crate::error::{Error, Result};
use crate::exact::multipoly::MultiPoly;
use crate::exact::rational::{rat, Rational};
use crate::linalg::QMatrix;
use crate::subspace::LinearSubspace;
use crate::tensor::{RankOnePoint, Scalar as _, Tensor, TensorSpace};

/// Attempts to factor a tensor as a single outer product. Returns the
/// factors when every 2x2 minor of every flattening vanishes (checked by
/// reconstructing the product), `None` when the rank exceeds one, and an
/// error on the zero tensor.
pub fn is_rank_one(t: &Tensor<Rational>) -> Result<Option<RankOnePoint>> {
    let Some((anchor, pivot)) = t.iter().next().map(|(i, v)| (*i, v.clone())) else {
        return Err(Error::ZeroTensor);
    };
    let [da, db, dc] = t.space.dims;
    let a: Vec<Rational> = (0..da).map(|i| t.get([i, anchor[1], anchor[2]])).collect();
    let b: Vec<Rational> = (0..db)
        .map(|j| t.get([anchor[0], j, anchor[2]]) / &pivot)
        .collect();
    let c: Vec<Rational> = (0..dc)
        .map(|k| t.get([anchor[0], anchor[1], k]) / &pivot)
        .collect();
    let candidate = RankOnePoint { a, b, c };
    if candidate.outer_product(&t.space) == *t {
        Ok(Some(candidate))
    } else {
        Ok(None)
    }
}

fn flat_coords_of_point(space: &TensorSpace, p: &RankOnePoint) -> Vec<Rational> {
    p.outer_product(space).to_flat_vec()
}

/// Affine tangent space to the rank-one cone at `p`:
/// span{ A (x) b (x) c, a (x) B (x) c, a (x) b (x) C },
/// of dimension a + b + c - 2.
pub fn tangent_space(space: &TensorSpace, p: &RankOnePoint) -> LinearSubspace {
    let [da, db, dc] = space.dims;
    let mut vectors = Vec::with_capacity(da + db + dc);
    for i in 0..da {
        let mut a = vec![Rational::zero(); da];
        a[i] = rat(1);
        vectors.push(flat_coords_of_point(
            space,
            &RankOnePoint { a, b: p.b.clone(), c: p.c.clone() },
        ));
    }
    for j in 0..db {
        let mut b = vec![Rational::zero(); db];
        b[j] = rat(1);
        vectors.push(flat_coords_of_point(
            space,
            &RankOnePoint { a: p.a.clone(), b, c: p.c.clone() },
        ));
    }
    for k in 0..dc {
        let mut c = vec![Rational::zero(); dc];
        c[k] = rat(1);
        vectors.push(flat_coords_of_point(
            space,
            &RankOnePoint { a: p.a.clone(), b: p.b.clone(), c },
        ));
    }
    LinearSubspace::from_vectors(space.total_dim(), vectors)
}

/// A line on the Segre: two factors fixed, one moving in a 2-dimensional
/// pencil.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegreLine {
    pub moving: usize,
    /// Fixed factor vectors, projectively normalized; `None` at `moving`.
    pub fixed: [Option<Vec<Rational>>; 3],
    /// 2-dimensional pencil in the moving factor, canonical form.
    pub pencil: LinearSubspace,
}

impl SegreLine {
    pub fn point_at(&self, coeffs: &[Rational]) -> RankOnePoint {
        let basis = self.pencil.basis();
        let dim = self.pencil.ambient;
        let mut moving = vec![Rational::zero(); dim];
        for (c, row) in coeffs.iter().zip(basis) {
            for (m, r) in moving.iter_mut().zip(row) {
                *m += c * r;
            }
        }
        let pick = |f: usize| -> Vec<Rational> {
            self.fixed[f].clone().unwrap_or_else(|| moving.clone())
        };
        RankOnePoint {
            a: pick(0),
            b: pick(1),
            c: pick(2),
        }
    }

    /// Span of the line's cone in the ambient tensor space (2-dimensional).
    pub fn span(&self, space: &TensorSpace) -> LinearSubspace {
        let one_zero = [rat(1), rat(0)];
        let zero_one = [rat(0), rat(1)];
        LinearSubspace::from_vectors(
            space.total_dim(),
            vec![
                flat_coords_of_point(space, &self.point_at(&one_zero)),
                flat_coords_of_point(space, &self.point_at(&zero_one)),
            ],
        )
    }

    pub fn contains_point(&self, p: &RankOnePoint) -> bool {
        let factors = [&p.a, &p.b, &p.c];
        for f in 0..3 {
            match &self.fixed[f] {
                Some(v) => {
                    if !proportional(v, factors[f]) {
                        return false;
                    }
                }
                None => {
                    if !self.pencil.contains(factors[f]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// alpha, beta or gamma by which factor moves.
    pub fn kind(&self) -> char {
        ['\u{3b1}', '\u{3b2}', '\u{3b3}'][self.moving]
    }
}

fn proportional(a: &[Rational], b: &[Rational]) -> bool {
    debug_assert_eq!(a.len(), b.len());
    let mut ratio: Option<(Rational, Rational)> = None; // (num from b, den from a)
    for (x, y) in a.iter().zip(b) {
        match (x.is_zero(), y.is_zero()) {
            (true, true) => continue,
            (true, false) | (false, true) => return false,
            (false, false) => match &ratio {
                None => ratio = Some((y.clone(), x.clone())),
                Some((n, d)) => {
                    if y * d != n * x {
                        return false;
                    }
                }
            },
        }
    }
    ratio.is_some()
}

/// The line through two distinct projective rank-one points, when they agree
/// in exactly two factors.
pub fn line_through(p: &RankOnePoint, q: &RankOnePoint) -> Option<SegreLine> {
    let pf = [&p.a, &p.b, &p.c];
    let qf = [&q.a, &q.b, &q.c];
    let agree: Vec<bool> = (0..3).map(|f| proportional(pf[f], qf[f])).collect();
    let moving = match agree.iter().filter(|&&x| !x).count() {
        1 => agree.iter().position(|&x| !x).unwrap(),
        _ => return None, // identical points or not collinear
    };
    let pencil = LinearSubspace::from_vectors(
        pf[moving].len(),
        vec![pf[moving].clone(), qf[moving].clone()],
    );
    debug_assert_eq!(pencil.dim(), 2);
    let normalized = p.projective_normal_form();
    let nf = [normalized.a, normalized.b, normalized.c];
    let mut fixed: [Option<Vec<Rational>>; 3] = [None, None, None];
    for (f, nv) in nf.into_iter().enumerate() {
        if f != moving {
            fixed[f] = Some(nv);
        }
    }
    Some(SegreLine {
        moving,
        fixed,
        pencil,
    })
}

/// Tangent space along a line: the span of the tangent spaces at two of its
/// points. Independence from the choice is checked by recomputing at a third
/// point.
pub fn tangent_space_of_line(space: &TensorSpace, line: &SegreLine) -> LinearSubspace {
    let at = |c0: i64, c1: i64| {
        tangent_space(space, &line.point_at(&[rat(c0), rat(c1)]))
    };
    let span = at(1, 0).sum(&at(0, 1));
    debug_assert!(span.contains_subspace(&at(1, 1)));
    debug_assert!(at(1, 1).sum(&at(1, -1)) == span);
    span
}

/// Matrix-structure tag of a line in a matmul-labeled space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineTag {
    /// alpha / beta / gamma.
    pub kind: char,
    /// Which matrix group the pencil moves: "mu", "nu", "omega", possibly
    /// starred when the dual copy moves; `None` when the pencil is not a
    /// rank-one family respecting the matrix structure.
    pub pencil_type: Option<String>,
    /// Both fixed factors have matrix rank one.
    pub special: bool,
}

fn factor_as_matrix(space: &TensorSpace, factor: usize, v: &[Rational]) -> Option<QMatrix> {
    let st = space.structure.as_ref()?;
    let (p, q) = st.pair_dims()[factor];
    let mut m = QMatrix::zero(p, q);
    for (i, val) in v.iter().enumerate() {
        if !val.is_zero() {
            let (r, c) = st.label_of(factor, i)?;
            *m.at_mut(r - 1, c - 1) = val.clone();
        }
    }
    Some(m)
}

/// Classifies a line against the matrix structure (None when the space is
/// unstructured).
pub fn classify_line(space: &TensorSpace, line: &SegreLine) -> Option<LineTag> {
    space.structure.as_ref()?;
    let kind = line.kind();
    // moving-group letters per factor: (dual moves -> starred, direct moves)
    let letters = [("mu*", "nu"), ("nu*", "omega"), ("omega*", "mu")];
    let m0 = factor_as_matrix(space, line.moving, &line.point_at(&[rat(1), rat(0)]).factor(line.moving).to_vec())?;
    let m1 = factor_as_matrix(space, line.moving, &line.point_at(&[rat(0), rat(1)]).factor(line.moving).to_vec())?;
    let pencil_type = pencil_matrix_type(&m0, &m1).map(|moving_dual| {
        let (starred, unstarred) = letters[line.moving];
        if moving_dual { starred.to_string() } else { unstarred.to_string() }
    });
    let special = pencil_type.is_some()
        && (0..3).filter(|&f| f != line.moving).all(|f| {
            line.fixed[f]
                .as_ref()
                .and_then(|v| factor_as_matrix(space, f, v))
                .map_or(false, |m| m.rank() == 1)
        });
    Some(LineTag {
        kind,
        pencil_type,
        special,
    })
}

/// Determines whether a 2-dim pencil of matrices is a rank-one family with a
/// common left factor (dual part fixed: direct part moves -> Some(false)) or
/// a common right factor (dual part moves -> Some(true)).
fn pencil_matrix_type(m0: &QMatrix, m1: &QMatrix) -> Option<bool> {
    if m0.rank() != 1 || m1.rank() != 1 {
        return None;
    }
    let rows_match = {
        // common column space = common left (dual) vector: direct part moves
        let mut stacked = Vec::new();
        for m in [m0, m1] {
            for j in 0..m.cols {
                stacked.push((0..m.rows).map(|i| m.at(i, j).clone()).collect::<Vec<_>>());
            }
        }
        QMatrix::from_rows(stacked).rank() == 1
    };
    if rows_match {
        return Some(false);
    }
    let cols_match = {
        let mut stacked = Vec::new();
        for m in [m0, m1] {
            for i in 0..m.rows {
                stacked.push(m.row(i).to_vec());
            }
        }
        QMatrix::from_rows(stacked).rank() == 1
    };
    if cols_match {
        return Some(true);
    }
    None
}

impl RankOnePoint {
    pub fn factor(&self, f: usize) -> &[Rational] {
        match f {
            0 => &self.a,
            1 => &self.b,
            2 => &self.c,
            _ => panic!("factor out of range"),
        }
    }
}

/// One discovered line of a configuration with its members.
#[derive(Clone, Debug)]
pub struct ConfigLine {
    pub line: SegreLine,
    pub tag: Option<LineTag>,
    /// Indices (into the input list) of points on this line.
    pub members: Vec<usize>,
    /// members - 2: the dependency excess contributed by this line.
    pub rank_defect: usize,
}

#[derive(Clone, Debug)]
pub struct LineConfigReport {
    pub lines: Vec<ConfigLine>,
    /// Groups of input indices that are the same projective point.
    pub duplicate_groups: Vec<Vec<usize>>,
    /// Pairs of line indices that intersect, with the (normalized)
    /// intersection point.
    pub intersections: Vec<(usize, usize, RankOnePoint)>,
    /// Affine dimension of the span of all points.
    pub span_dim: usize,
    pub point_count: usize,
}

/// Groups rank-one points by shared Segre lines and reports the incidence
/// structure.
pub fn line_configuration_report(
    space: &TensorSpace,
    points: &[RankOnePoint],
) -> LineConfigReport {
    let normalized: Vec<RankOnePoint> =
        points.iter().map(|p| p.projective_normal_form()).collect();
    // duplicates
    let mut dup_of: BTreeMap<usize, usize> = BTreeMap::new();
    let mut duplicate_groups: Vec<Vec<usize>> = Vec::new();
    for i in 0..normalized.len() {
        if dup_of.contains_key(&i) {
            continue;
        }
        let mut group = vec![i];
        for j in i + 1..normalized.len() {
            if normalized[i] == normalized[j] {
                dup_of.insert(j, i);
                group.push(j);
            }
        }
        if group.len() > 1 {
            duplicate_groups.push(group);
        }
    }
    // lines through pairs of distinct representatives
    let mut lines: Vec<ConfigLine> = Vec::new();
    for i in 0..normalized.len() {
        if dup_of.contains_key(&i) {
            continue;
        }
        for j in i + 1..normalized.len() {
            if dup_of.contains_key(&j) {
                continue;
            }
            let Some(line) = line_through(&normalized[i], &normalized[j]) else {
                continue;
            };
            if lines.iter().any(|c| {
                c.line.moving == line.moving
                    && c.line.pencil == line.pencil
                    && (0..3).all(|f| match (&c.line.fixed[f], &line.fixed[f]) {
                        (Some(a), Some(b)) => proportional(a, b),
                        (None, None) => true,
                        _ => false,
                    })
            }) {
                continue;
            }
            let members: Vec<usize> = (0..normalized.len())
                .filter(|&k| line.contains_point(&normalized[k]))
                .collect();
            let distinct: Vec<usize> = members
                .iter()
                .copied()
                .filter(|k| !dup_of.contains_key(k))
                .collect();
            let rank_defect = distinct.len().saturating_sub(2);
            lines.push(ConfigLine {
                tag: classify_line(space, &line),
                line,
                members,
                rank_defect,
            });
        }
    }
    // pairwise line intersections
    let mut intersections = Vec::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            if let Some(p) = intersect_lines(&lines[i].line, &lines[j].line) {
                intersections.push((i, j, p));
            }
        }
    }
    let span_dim = LinearSubspace::from_vectors(
        space.total_dim(),
        normalized
            .iter()
            .map(|p| flat_coords_of_point(space, p))
            .collect(),
    )
    .dim();
    LineConfigReport {
        lines,
        duplicate_groups,
        intersections,
        span_dim,
        point_count: points.len(),
    }
}

/// Intersection point of two Segre lines, if any.
pub fn intersect_lines(l1: &SegreLine, l2: &SegreLine) -> Option<RankOnePoint> {
    if l1.moving == l2.moving {
        // need both fixed pairs proportional and pencils to meet
        for f in 0..3 {
            if f == l1.moving {
                continue;
            }
            if !proportional(l1.fixed[f].as_ref()?, l2.fixed[f].as_ref()?) {
                return None;
            }
        }
        if l1.pencil == l2.pencil {
            return None; // same line, not a proper intersection
        }
        // meet of two 2-dim pencils: solve for a common vector
        let mut rows = Vec::new();
        for eq in l1.pencil.equations() {
            rows.push(eq);
        }
        for eq in l2.pencil.equations() {
            rows.push(eq);
        }
        let ker = QMatrix::from_rows(rows).kernel();
        let v = ker.first()?.clone();
        let mut p = l1.point_at(&[rat(0), rat(0)]);
        match l1.moving {
            0 => p.a = v,
            1 => p.b = v,
            2 => p.c = v,
            _ => unreachable!(),
        }
        return Some(p.projective_normal_form());
    }
    // different moving factors: the candidate point takes l2's fixed vector
    // in l1's moving slot and vice versa; remaining factor must agree
    let mut factors: [Option<Vec<Rational>>; 3] = [None, None, None];
    for f in 0..3 {
        let from1 = l1.fixed[f].clone();
        let from2 = l2.fixed[f].clone();
        factors[f] = match (from1, from2) {
            (Some(a), Some(b)) => {
                if proportional(&a, &b) {
                    Some(a)
                } else {
                    return None;
                }
            }
            (Some(a), None) => {
                if l2.pencil.contains(&a) {
                    Some(a)
                } else {
                    return None;
                }
            }
            (None, Some(b)) => {
                if l1.pencil.contains(&b) {
                    Some(b)
                } else {
                    return None;
                }
            }
            (None, None) => unreachable!("distinct moving factors"),
        };
    }
    let [a, b, c] = factors;
    Some(
        RankOnePoint {
            a: a.unwrap(),
            b: b.unwrap(),
            c: c.unwrap(),
        }
        .projective_normal_form(),
    )
}

const REDUCTION_CAP: usize = 10_000;

/// The Grassmannian limit of span(p_1(t), ..., p_r(t)) as t -> 0, computed
/// by exact t-adic reduction: normalize each row to valuation 0, and while
/// the rows evaluated at t = 0 are dependent, replace one row of a vanishing
/// combination by the combination divided by its t-valuation.
pub fn limit_plane(alg: &BorderRankAlgorithm) -> Result<LinearSubspace> {
    let r = alg.term_count();
    let rank = alg.generic_term_rank();
    if rank < r {
        return Err(Error::RankDeficient { rank, terms: r });
    }
    let mut rows: Vec<Vec<crate::exact::laurent::LaurentPoly>> = (0..r)
        .map(|i| alg.weighted_term_tensor(i).to_flat_vec())
        .collect();
    for _step in 0..REDUCTION_CAP {
        for row in rows.iter_mut() {
            let val = row.iter().filter_map(|p| p.valuation()).min().expect("nonzero row");
            if val != 0 {
                for p in row.iter_mut() {
                    *p = p.shift(-val);
                }
            }
        }
        let at_zero = QMatrix::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|p| p.coefficient(0)).collect())
                .collect(),
        );
        let combos = at_zero.transpose().kernel();
        let Some(lambda) = combos.first() else {
            return Ok(LinearSubspace::from_vectors(
                alg.space.total_dim(),
                (0..r).map(|i| at_zero.row(i).to_vec()).collect(),
            ));
        };
        let target = lambda
            .iter()
            .rposition(|c| !c.is_zero())
            .expect("kernel vector is nonzero");
        let mut replacement = vec![crate::exact::laurent::LaurentPoly::zero(); rows[0].len()];
        for (i, coeff) in lambda.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            for (dst, src) in replacement.iter_mut().zip(&rows[i]) {
                *dst = dst.add(&src.scale(coeff));
            }
        }
        if replacement.iter().all(|p| p.is_zero()) {
            return Err(Error::RankDeficient { rank: r - 1, terms: r });
        }
        rows[target] = replacement;
    }
    Err(Error::ReductionDiverged(REDUCTION_CAP))
}

/// A rank-one family with polynomial parameters: three factor vectors over
/// `MultiPoly`.
#[derive(Clone, Debug)]
pub struct ParametricFamily {
    pub factors: [Vec<MultiPoly>; 3],
}

impl ParametricFamily {
    pub fn outer_flat(&self, space: &TensorSpace) -> Vec<MultiPoly> {
        Tensor::outer(
            space.clone(),
            &self.factors[0],
            &self.factors[1],
            &self.factors[2],
        )
        .to_flat_vec()
    }

    pub fn sample(&self, assignment: &BTreeMap<String, Rational>) -> Result<RankOnePoint> {
        let eval = |v: &[MultiPoly]| -> Result<Vec<Rational>> {
            v.iter().map(|p| p.evaluate(assignment)).collect()
        };
        Ok(RankOnePoint {
            a: eval(&self.factors[0])?,
            b: eval(&self.factors[1])?,
            c: eval(&self.factors[2])?,
        })
    }
}

/// True iff every member of the family lies in E: each coordinate of the
/// family's outer product, reduced against E's equations, vanishes as a
/// polynomial identity.
pub fn contains_family(e: &LinearSubspace, family: &ParametricFamily, space: &TensorSpace) -> bool {
    assert_eq!(e.ambient, space.total_dim());
    let flat = family.outer_flat(space);
    for eq in e.equations() {
        let mut acc = MultiPoly::zero();
        for (coeff, poly) in eq.iter().zip(&flat) {
            if !coeff.is_zero() && !poly.is_zero() {
                acc = acc.add(&poly.scale(coeff));
            }
        }
        if !acc.is_zero() {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::entry;
    use crate::tensor::{bclrs_tensor, mat_mul_tensor};

    fn qv(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn rank_one_detection() {
        let space = TensorSpace::unstructured(2, 3, 2);
        let p = RankOnePoint {
            a: qv(&[1, -2]),
            b: qv(&[0, 3, 1]),
            c: qv(&[5, 2]),
        };
        let t = p.outer_product(&space);
        let rec = is_rank_one(&t).unwrap().unwrap();
        assert_eq!(rec.outer_product(&space), t);

        assert_eq!(mat_mul_tensor(2, 2, 2).multilinear_ranks(), (4, 4, 4));
        assert!(is_rank_one(&mat_mul_tensor(2, 2, 2)).unwrap().is_none());

        let zero = Tensor::zero(space);
        assert!(is_rank_one(&zero).is_err());
    }

    #[test]
    fn rank_one_with_proportional_summands() {
        let space = TensorSpace::unstructured(2, 2, 2);
        let p = RankOnePoint {
            a: qv(&[1, 1]),
            b: qv(&[2, 0]),
            c: qv(&[1, 3]),
        };
        let q = RankOnePoint {
            a: qv(&[1, 1]),
            b: qv(&[2, 0]),
            c: qv(&[2, 6]),
        };
        let t = p.outer_product(&space).add(&q.outer_product(&space));
        assert!(is_rank_one(&t).unwrap().is_some());
    }

    #[test]
    fn tangent_space_dims() {
        let space = TensorSpace::unstructured(2, 2, 2);
        let p = RankOnePoint {
            a: qv(&[1, 0]),
            b: qv(&[1, 1]),
            c: qv(&[1, -1]),
        };
        let ts = tangent_space(&space, &p);
        assert_eq!(ts.dim(), 4); // 2+2+2-2
        assert!(ts.contains(&p.outer_product(&space).to_flat_vec()));

        let sp3 = TensorSpace::bclrs(3);
        let q = RankOnePoint {
            a: qv(&[1, 0, 0, 0, 0]),
            b: qv(&[0, 1, 0, 0]),
            c: qv(&[0, 0, 1, 0, 0, 0]),
        };
        assert_eq!(tangent_space(&sp3, &q).dim(), 13); // 5+4+6-2
    }

    #[test]
    fn line_tangent_space_and_membership() {
        let space = TensorSpace::matmul(2, 2, 2);
        // beta-line: a (x) <b1,b2> (x) c
        let p = RankOnePoint {
            a: qv(&[1, 0, 2, 0]),
            b: qv(&[1, 0, 0, 0]),
            c: qv(&[0, 1, 0, 1]),
        };
        let q = RankOnePoint {
            b: qv(&[0, 1, 1, 0]),
            ..p.clone()
        };
        let line = line_through(&p, &q).unwrap();
        assert_eq!(line.moving, 1);
        assert!(line.contains_point(&p) && line.contains_point(&q));
        let ts = tangent_space_of_line(&space, &line);
        // every point of the line lies in the line's tangent space
        for coeffs in [[rat(1), rat(0)], [rat(2), rat(3)], [rat(-1), rat(5)]] {
            let pt = line.point_at(&coeffs);
            assert!(ts.contains(&pt.outer_product(&space).to_flat_vec()));
            assert!(ts.contains_subspace(&tangent_space(&space, &pt)));
        }
    }

    #[test]
    fn special_line_tags() {
        // in M(2,2,2) labels: A rows x^1_*, x^2_*; the line
        // x^1_2 (x) (v^2 (x) W) (x) z^1_2 is a special (beta, omega)-line
        let space = TensorSpace::matmul(2, 2, 2);
        let lab = |s: &str| space.parse_label(s).unwrap().1;
        let mut a = vec![Rational::zero(); 4];
        a[lab("x^1_2")] = rat(1);
        let mut c = vec![Rational::zero(); 4];
        c[lab("z^1_2")] = rat(1);
        let mut b1 = vec![Rational::zero(); 4];
        b1[lab("y^2_1")] = rat(1);
        let mut b2 = vec![Rational::zero(); 4];
        b2[lab("y^2_2")] = rat(1);
        let line = SegreLine {
            moving: 1,
            fixed: [Some(a), None, Some(c)],
            pencil: LinearSubspace::from_vectors(4, vec![b1, b2]),
        };
        let tag = classify_line(&space, &line).unwrap();
        assert_eq!(tag.kind, '\u{3b2}');
        assert_eq!(tag.pencil_type.as_deref(), Some("omega"));
        assert!(tag.special);
    }

    #[test]
    fn limit_plane_of_single_moving_curve() {
        // one curve a + t b (other factors constant): the limit span is the
        // a-point's line only
        let (mut alg, _) = entry("bclr").unwrap().load(false).unwrap();
        alg.terms.truncate(1);
        alg.weights.truncate(1);
        let e = limit_plane(&alg).unwrap();
        assert_eq!(e.dim(), 1);
    }

    #[test]
    fn limit_plane_dimension_is_term_count() {
        let (alg, _) = entry("bclr").unwrap().load(false).unwrap();
        let e = limit_plane(&alg).unwrap();
        assert_eq!(e.dim(), 5);
        let t = bclrs_tensor(2).unwrap();
        assert!(e.contains(&t.to_flat_vec()));
    }

    #[test]
    fn three_generic_points_share_no_line() {
        let space = TensorSpace::unstructured(3, 3, 3);
        let pts = vec![
            RankOnePoint { a: qv(&[1, 2, 3]), b: qv(&[1, 0, 1]), c: qv(&[2, 1, 1]) },
            RankOnePoint { a: qv(&[1, -1, 0]), b: qv(&[0, 1, 2]), c: qv(&[1, 1, 1]) },
            RankOnePoint { a: qv(&[0, 1, 1]), b: qv(&[3, 1, 0]), c: qv(&[1, 0, 2]) },
        ];
        let report = line_configuration_report(&space, &pts);
        assert!(report.lines.is_empty());
        assert_eq!(report.span_dim, 3);
    }
}
