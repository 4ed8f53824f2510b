//! Lie algebra actions on structured tensors and planes, stabilizer and
//! orbit dimensions, and discrete symmetry checks on algorithms.
//!
//! Sign convention: an algebra element X of gl(U) acts on the dual copy U*
//! by -X^T. On A = U* (x) V that gives
//!   x^i_j  |->  -sum_k X_{ik} x^k_j + sum_l (X_V)_{lj} x^i_l,
//! and likewise on B and C through the pairings (V, W) and (W, U).

use crate::catalog::BorderRankAlgorithm;
use crate::error::{Error, Result};
use crate::exact::laurent::LaurentPoly;
use crate::exact::rational::{rat, Rational};
use crate::geometry::{line_configuration_report, LineConfigReport, SegreLine};
use crate::linalg::QMatrix;
use crate::subspace::LinearSubspace;
use crate::tensor::{
    symmetry_image_space, symmetry_label_map, Group, RankOnePoint, Scalar, SymmetryMove, Tensor,
    TensorSpace,
};

/// Constraint tag of one summand of a Lie algebra spec.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgebraKind {
    Gl,
    Sl,
    /// Traceless diagonal matrices.
    Torus,
    /// Block-diagonal (1, n-1) x (1, n-1) matrices intersected with sl.
    BlockDiagonal,
}

/// What a summand acts on: a matrix group of the matmul structure, or one
/// tensor factor directly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ActionTarget {
    Structured(Group),
    Factor(usize),
}

#[derive(Clone, Debug)]
pub struct Summand {
    pub target: ActionTarget,
    pub kind: AlgebraKind,
    pub n: usize,
}

#[derive(Clone, Debug)]
pub struct LieAlgebraSpec {
    pub summands: Vec<Summand>,
}

/// One basis element: an n x n matrix attached to a summand.
#[derive(Clone, Debug)]
pub struct Generator {
    pub summand: usize,
    pub matrix: QMatrix,
    pub diagonal: bool,
    pub label: String,
}

impl LieAlgebraSpec {
    pub fn new(summands: Vec<Summand>) -> Self {
        LieAlgebraSpec { summands }
    }

    pub fn dim(&self) -> usize {
        self.summands
            .iter()
            .map(|s| match s.kind {
                AlgebraKind::Gl => s.n * s.n,
                AlgebraKind::Sl => s.n * s.n - 1,
                AlgebraKind::Torus => s.n - 1,
                AlgebraKind::BlockDiagonal => (s.n - 1) * (s.n - 1),
            })
            .sum()
    }

    pub fn generators(&self) -> Vec<Generator> {
        let mut out = Vec::new();
        for (si, s) in self.summands.iter().enumerate() {
            let n = s.n;
            let name = |a: usize, b: usize| format!("s{}:E{}{}", si + 1, a + 1, b + 1);
            let diag_name = |a: usize| format!("s{}:H{}", si + 1, a + 1);
            let push_e = |out: &mut Vec<Generator>, a: usize, b: usize| {
                let mut m = QMatrix::zero(n, n);
                *m.at_mut(a, b) = rat(1);
                out.push(Generator {
                    summand: si,
                    matrix: m,
                    diagonal: a == b,
                    label: name(a, b),
                });
            };
            let push_h = |out: &mut Vec<Generator>, a: usize| {
                let mut m = QMatrix::zero(n, n);
                *m.at_mut(a, a) = rat(1);
                *m.at_mut(a + 1, a + 1) = rat(-1);
                out.push(Generator {
                    summand: si,
                    matrix: m,
                    diagonal: true,
                    label: diag_name(a),
                });
            };
            match s.kind {
                AlgebraKind::Gl => {
                    for a in 0..n {
                        for b in 0..n {
                            push_e(&mut out, a, b);
                        }
                    }
                }
                AlgebraKind::Sl => {
                    for a in 0..n {
                        for b in 0..n {
                            if a != b {
                                push_e(&mut out, a, b);
                            }
                        }
                    }
                    for a in 0..n - 1 {
                        push_h(&mut out, a);
                    }
                }
                AlgebraKind::Torus => {
                    for a in 0..n - 1 {
                        push_h(&mut out, a);
                    }
                }
                AlgebraKind::BlockDiagonal => {
                    for a in 1..n {
                        for b in 1..n {
                            if a != b {
                                push_e(&mut out, a, b);
                            }
                        }
                    }
                    for a in 0..n - 1 {
                        push_h(&mut out, a);
                    }
                }
            }
        }
        out
    }
}

/// Standard spec sl(U) + sl(V) + sl(W) for a structured space.
pub fn sl_uvw(space: &TensorSpace) -> Result<LieAlgebraSpec> {
    let st = space
        .structure
        .as_ref()
        .ok_or_else(|| Error::Unsupported("structured space required".into()))?;
    Ok(LieAlgebraSpec::new(vec![
        Summand { target: ActionTarget::Structured(Group::U), kind: AlgebraKind::Sl, n: st.uvw[0] },
        Summand { target: ActionTarget::Structured(Group::V), kind: AlgebraKind::Sl, n: st.uvw[1] },
        Summand { target: ActionTarget::Structured(Group::W), kind: AlgebraKind::Sl, n: st.uvw[2] },
    ]))
}

/// Per-factor infinitesimal action matrices of one generator.
fn factor_action_matrices(
    space: &TensorSpace,
    target: ActionTarget,
    x: &QMatrix,
) -> Result<[Option<QMatrix>; 3]> {
    match target {
        ActionTarget::Factor(f) => {
            if x.rows != space.dims[f] {
                return Err(Error::DimMismatch(format!(
                    "generator is {}x{}, factor {} has dimension {}",
                    x.rows, x.cols, f, space.dims[f]
                )));
            }
            let mut out: [Option<QMatrix>; 3] = [None, None, None];
            out[f] = Some(x.clone());
            Ok(out)
        }
        ActionTarget::Structured(g) => {
            let st = space
                .structure
                .as_ref()
                .ok_or_else(|| Error::Unsupported("structured space required".into()))?;
            let group_idx = match g {
                Group::U => 0,
                Group::V => 1,
                Group::W => 2,
            };
            if x.rows != st.uvw[group_idx] {
                return Err(Error::DimMismatch(format!(
                    "generator is {}x{}, group has dimension {}",
                    x.rows, x.cols, st.uvw[group_idx]
                )));
            }
            // factor f pairs (dual group, direct group)
            let pairing = [(0usize, 1usize), (1, 2), (2, 0)];
            let mut out: [Option<QMatrix>; 3] = [None, None, None];
            for f in 0..3 {
                let (dual_g, direct_g) = pairing[f];
                if dual_g != group_idx && direct_g != group_idx {
                    continue;
                }
                let labels = st.labels(f);
                let nf = labels.len();
                let mut m = QMatrix::zero(nf, nf);
                for (col, &(p, q)) in labels.iter().enumerate() {
                    if dual_g == group_idx {
                        // x^p_q -> -sum_k X_{pk} x^k_q
                        for k in 1..=x.rows {
                            let coeff = -x.at(p - 1, k - 1).clone();
                            if coeff.is_zero() {
                                continue;
                            }
                            match st.index_of(f, (k, q)) {
                                Some(row) => *m.at_mut(row, col) += coeff,
                                None => {
                                    return Err(Error::ActionNotClosed(format!(
                                        "factor {f} label ({p},{q}) flows into deleted ({k},{q})"
                                    )))
                                }
                            }
                        }
                    }
                    if direct_g == group_idx {
                        // x^p_q -> sum_l X_{lq} x^p_l
                        for l in 1..=x.rows {
                            let coeff = x.at(l - 1, q - 1).clone();
                            if coeff.is_zero() {
                                continue;
                            }
                            match st.index_of(f, (p, l)) {
                                Some(row) => *m.at_mut(row, col) += coeff,
                                None => {
                                    return Err(Error::ActionNotClosed(format!(
                                        "factor {f} label ({p},{q}) flows into deleted ({p},{l})"
                                    )))
                                }
                            }
                        }
                    }
                }
                out[f] = Some(m);
            }
            Ok(out)
        }
    }
}

/// Derivative of the group action: the generator acts on each tensor factor
/// through the structure maps, summed over the factors (Leibniz).
pub fn lie_act(
    space: &TensorSpace,
    target: ActionTarget,
    x: &QMatrix,
    t: &Tensor<Rational>,
) -> Result<Tensor<Rational>> {
    let mats = factor_action_matrices(space, target, x)?;
    let mut out = Tensor::zero(space.clone());
    for f in 0..3 {
        let Some(m) = &mats[f] else { continue };
        for (idx, v) in t.iter() {
            for row in 0..m.rows {
                let c = m.at(row, idx[f]);
                if !c.is_zero() {
                    let mut nidx = *idx;
                    nidx[f] = row;
                    out.add_entry(nidx, v * c);
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct StabilizerReport {
    pub algebra_dim: usize,
    pub stab_dim: usize,
    pub orbit_dim: usize,
    /// Kernel basis in generator coordinates.
    pub kernel_basis: Vec<Vec<Rational>>,
    /// Generator labels, aligned with kernel coordinates.
    pub generator_labels: Vec<String>,
    /// Every kernel basis vector is supported on diagonal generators.
    pub kernel_is_diagonal: bool,
}

fn kernel_report(
    spec: &LieAlgebraSpec,
    generators: &[Generator],
    rows: Vec<Vec<Rational>>,
) -> StabilizerReport {
    let algebra_dim = spec.dim();
    debug_assert_eq!(generators.len(), algebra_dim);
    let kernel_basis = if rows.iter().all(|r| r.is_empty()) {
        // zero map: whole algebra stabilizes
        (0..algebra_dim)
            .map(|i| {
                let mut v = vec![Rational::zero(); algebra_dim];
                v[i] = rat(1);
                v
            })
            .collect()
    } else {
        QMatrix::from_rows(rows).transpose().kernel()
    };
    let stab_dim = kernel_basis.len();
    let kernel_is_diagonal = kernel_basis.iter().all(|v| {
        v.iter()
            .enumerate()
            .all(|(i, c)| c.is_zero() || generators[i].diagonal)
    });
    StabilizerReport {
        algebra_dim,
        stab_dim,
        orbit_dim: algebra_dim - stab_dim,
        kernel_basis,
        generator_labels: generators.iter().map(|g| g.label.clone()).collect(),
        kernel_is_diagonal,
    }
}

/// Dimension of { X in g : X . T = 0 } by exact kernel computation.
pub fn tensor_stabilizer(
    spec: &LieAlgebraSpec,
    t: &Tensor<Rational>,
) -> Result<StabilizerReport> {
    let generators = spec.generators();
    let rows: Vec<Vec<Rational>> = generators
        .iter()
        .map(|g| {
            lie_act(&t.space, spec.summands[g.summand].target, &g.matrix, t)
                .map(|img| img.to_flat_vec())
        })
        .collect::<Result<_>>()?;
    Ok(kernel_report(spec, &generators, rows))
}

/// Dimensions of the stabilizer and orbit of a plane E: the kernel of
/// X |-> (X . e_i mod E)_i over a basis of E.
pub fn plane_stabilizer(
    spec: &LieAlgebraSpec,
    space: &TensorSpace,
    e: &LinearSubspace,
) -> Result<StabilizerReport> {
    if e.ambient != space.total_dim() {
        return Err(Error::DimMismatch(format!(
            "plane ambient {} vs space dimension {}",
            e.ambient,
            space.total_dim()
        )));
    }
    let generators = spec.generators();
    let basis_tensors: Vec<Tensor<Rational>> = e
        .basis()
        .iter()
        .map(|v| Tensor::from_flat_vec(space.clone(), v))
        .collect();
    let rows: Vec<Vec<Rational>> = generators
        .iter()
        .map(|g| -> Result<Vec<Rational>> {
            let mut row = Vec::new();
            for bt in &basis_tensors {
                let img = lie_act(space, spec.summands[g.summand].target, &g.matrix, bt)?;
                row.extend(e.reduce(&img.to_flat_vec()));
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;
    Ok(kernel_report(spec, &generators, rows))
}

// ---------------------------------------------------------------------------
// discrete symmetry checks

/// Applies a symmetry move to a rank-one curve.
fn apply_move_to_curve(
    space: &TensorSpace,
    curve: &[Vec<LaurentPoly>; 3],
    mv: &SymmetryMove,
) -> Result<(TensorSpace, [Vec<LaurentPoly>; 3])> {
    let st = space
        .structure
        .as_ref()
        .ok_or_else(|| Error::Unsupported("structured space required".into()))?;
    let image_space = symmetry_image_space(space, mv)?;
    let ist = image_space.structure.as_ref().expect("structured image");
    let mut out: [Vec<LaurentPoly>; 3] = [
        vec![LaurentPoly::zero(); image_space.dims[0]],
        vec![LaurentPoly::zero(); image_space.dims[1]],
        vec![LaurentPoly::zero(); image_space.dims[2]],
    ];
    for f in 0..3 {
        for (i, poly) in curve[f].iter().enumerate() {
            if poly.is_zero() {
                continue;
            }
            let pair = st.label_of(f, i).expect("label");
            let (nf, npair) = symmetry_label_map(mv, f, pair);
            let ni = ist.index_of(nf, npair).ok_or_else(|| {
                Error::SpaceMismatch(format!("image label {npair:?} not present"))
            })?;
            out[nf][ni] = poly.clone();
        }
    }
    Ok((image_space, out))
}

#[derive(Clone, Debug)]
pub struct SymmetryReport {
    /// For each term: the original term index its image equals, with the
    /// exact scale factor (image = scale * original term's curve tensor).
    pub curve_matches: Vec<Option<(usize, Rational)>>,
    /// Permutation induced on (normalized, nonzero) limit points.
    pub limit_matches: Vec<Option<usize>>,
    /// For each configuration line: the line index its image coincides with.
    pub line_matches: Vec<Option<usize>>,
    pub config: LineConfigReport,
}

/// Checks how a composed discrete action permutes an algorithm's terms,
/// limit points, and configuration lines.
pub fn check_discrete_symmetry(
    alg: &BorderRankAlgorithm,
    moves: &[SymmetryMove],
) -> Result<SymmetryReport> {
    // image curves
    let mut image_curves = Vec::new();
    for term in &alg.terms {
        let mut space = alg.space.clone();
        let mut factors = term.factors.clone();
        for mv in moves {
            let (s, f) = apply_move_to_curve(&space, &factors, mv)?;
            space = s;
            factors = f;
        }
        if space != alg.space {
            return Err(Error::SpaceMismatch(
                "the composed action does not preserve the ambient structured space".into(),
            ));
        }
        image_curves.push(factors);
    }

    // term-level matching including weights, up to exact rational scale
    let originals: Vec<Tensor<LaurentPoly>> = (0..alg.term_count())
        .map(|i| alg.weighted_term_tensor(i))
        .collect();
    let curve_matches = image_curves
        .iter()
        .zip(&alg.weights)
        .map(|(factors, weight)| {
            let image = Tensor::outer(alg.space.clone(), &factors[0], &factors[1], &factors[2])
                .scale(weight);
            originals.iter().enumerate().find_map(|(j, orig)| {
                proportional_tensors(&image, orig).map(|scale| (j, scale))
            })
        })
        .collect();

    // limit-point-level matching (projective)
    let limits = crate::verify::limit_points(alg)?;
    let points: Vec<Option<RankOnePoint>> = limits.iter().map(|l| l.point.clone()).collect();
    let image_points: Vec<Option<RankOnePoint>> = image_curves
        .iter()
        .zip(&alg.weights)
        .map(|(factors, weight)| {
            let image = Tensor::outer(alg.space.clone(), &factors[0], &factors[1], &factors[2])
                .scale(weight);
            let mut at_zero = Tensor::zero(alg.space.clone());
            for (idx, p) in image.iter() {
                at_zero.add_entry(*idx, p.coefficient(0));
            }
            if at_zero.is_zero() {
                None
            } else {
                crate::geometry::is_rank_one(&at_zero)
                    .ok()
                    .flatten()
                    .map(|p| p.projective_normal_form())
            }
        })
        .collect();
    let limit_matches = image_points
        .iter()
        .map(|img| {
            img.as_ref().and_then(|ip| {
                points
                    .iter()
                    .position(|orig| orig.as_ref() == Some(ip))
            })
        })
        .collect();

    // line-level matching
    let honest: Vec<RankOnePoint> = points.iter().flatten().cloned().collect();
    let config = line_configuration_report(&alg.space, &honest);
    let line_matches = config
        .lines
        .iter()
        .map(|cl| {
            map_line(&alg.space, &cl.line, moves).ok().and_then(|img| {
                config.lines.iter().position(|other| lines_equal(&other.line, &img))
            })
        })
        .collect();

    Ok(SymmetryReport {
        curve_matches,
        limit_matches,
        line_matches,
        config,
    })
}

fn proportional_tensors(
    a: &Tensor<LaurentPoly>,
    b: &Tensor<LaurentPoly>,
) -> Option<Rational> {
    if a.num_entries() != b.num_entries() {
        return None;
    }
    let (idx, pa) = a.iter().next()?;
    let pb = b.get(*idx);
    let (ka, ca) = pa.iter().next()?;
    if pb.coefficient(ka).is_zero() {
        return None;
    }
    let scale = ca / &pb.coefficient(ka);
    let scaled = b.scale(&LaurentPoly::constant(scale.clone()));
    if scaled == *a {
        Some(scale)
    } else {
        None
    }
}

fn map_line(space: &TensorSpace, line: &SegreLine, moves: &[SymmetryMove]) -> Result<SegreLine> {
    let to_curve = |v: &[Rational]| -> Vec<LaurentPoly> {
        v.iter().map(|q| LaurentPoly::constant(q.clone())).collect()
    };
    let map_point = |p: &RankOnePoint| -> Result<RankOnePoint> {
        let mut sp = space.clone();
        let mut factors = [to_curve(&p.a), to_curve(&p.b), to_curve(&p.c)];
        for mv in moves {
            let (s, f) = apply_move_to_curve(&sp, &factors, mv)?;
            sp = s;
            factors = f;
        }
        let back = |v: &[LaurentPoly]| -> Vec<Rational> {
            v.iter().map(|p| p.coefficient(0)).collect()
        };
        Ok(RankOnePoint {
            a: back(&factors[0]),
            b: back(&factors[1]),
            c: back(&factors[2]),
        })
    };
    let p = map_point(&line.point_at(&[rat(1), rat(0)]))?;
    let q = map_point(&line.point_at(&[rat(0), rat(1)]))?;
    crate::geometry::line_through(&p, &q)
        .ok_or_else(|| Error::Unsupported("image points do not span a line".into()))
}

fn lines_equal(a: &SegreLine, b: &SegreLine) -> bool {
    if a.moving != b.moving || a.pencil != b.pencil {
        return false;
    }
    (0..3).all(|f| match (&a.fixed[f], &b.fixed[f]) {
        (Some(x), Some(y)) => {
            let nx = RankOnePoint { a: x.clone(), b: vec![], c: vec![] }.projective_normal_form();
            let ny = RankOnePoint { a: y.clone(), b: vec![], c: vec![] }.projective_normal_form();
            nx.a == ny.a
        }
        (None, None) => true,
        _ => false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::entry;
    use crate::tensor::{apply_gl, mat_mul_tensor};

    fn sl2_cubed() -> LieAlgebraSpec {
        LieAlgebraSpec::new(vec![
            Summand { target: ActionTarget::Structured(Group::U), kind: AlgebraKind::Sl, n: 2 },
            Summand { target: ActionTarget::Structured(Group::V), kind: AlgebraKind::Sl, n: 2 },
            Summand { target: ActionTarget::Structured(Group::W), kind: AlgebraKind::Sl, n: 2 },
        ])
    }

    #[test]
    fn sl2_cubed_stabilizes_matmul() {
        let t = mat_mul_tensor(2, 2, 2);
        let report = tensor_stabilizer(&sl2_cubed(), &t).unwrap();
        assert_eq!(report.algebra_dim, 9);
        assert_eq!(report.stab_dim, 9);
        assert_eq!(report.orbit_dim, 0);
    }

    #[test]
    fn gl2_cubed_adds_all_three_scalar_directions() {
        // the three scalar directions act by (mu - lambda) + (nu - mu) +
        // (lambda - nu) = 0, so they all stabilize: 9 + 3
        let t = mat_mul_tensor(2, 2, 2);
        let spec = LieAlgebraSpec::new(vec![
            Summand { target: ActionTarget::Structured(Group::U), kind: AlgebraKind::Gl, n: 2 },
            Summand { target: ActionTarget::Structured(Group::V), kind: AlgebraKind::Gl, n: 2 },
            Summand { target: ActionTarget::Structured(Group::W), kind: AlgebraKind::Gl, n: 2 },
        ]);
        let report = tensor_stabilizer(&spec, &t).unwrap();
        assert_eq!(report.algebra_dim, 12);
        assert_eq!(report.stab_dim, 12);
    }

    #[test]
    fn scalar_triple_kills_any_structured_tensor() {
        // each identity generator contributes (-1) through its dual slot and
        // (+1) through its direct slot, so the three together act by zero on
        // any tensor of the space
        let t = crate::tensor::bclrs_tensor(2).unwrap();
        let id = QMatrix::identity(2);
        let a = lie_act(&t.space, ActionTarget::Structured(Group::U), &id, &t).unwrap();
        let b = lie_act(&t.space, ActionTarget::Structured(Group::V), &id, &t).unwrap();
        let c = lie_act(&t.space, ActionTarget::Structured(Group::W), &id, &t).unwrap();
        assert!(a.add(&b).add(&c).is_zero());
    }

    #[test]
    fn generic_small_tensor_stabilizer_is_two_dimensional() {
        // generic rank-two tensor in C^2 (x) C^2 (x) C^2 under direct
        // sl(A) + sl(B) + sl(C): the stabilizer is the 2-dim torus cut by
        // one weight relation (sl_2^3 preserves the hyperdeterminant level)
        let space = TensorSpace::unstructured(2, 2, 2);
        let mut t = Tensor::zero(space.clone());
        t.add_entry([0, 0, 0], rat(1));
        t.add_entry([1, 1, 1], rat(1));
        let spec = LieAlgebraSpec::new(vec![
            Summand { target: ActionTarget::Factor(0), kind: AlgebraKind::Sl, n: 2 },
            Summand { target: ActionTarget::Factor(1), kind: AlgebraKind::Sl, n: 2 },
            Summand { target: ActionTarget::Factor(2), kind: AlgebraKind::Sl, n: 2 },
        ]);
        let report = tensor_stabilizer(&spec, &t).unwrap();
        assert_eq!(report.algebra_dim, 9);
        assert_eq!(report.stab_dim, 2);
        assert!(report.kernel_is_diagonal);

        // a less symmetric generic tensor has the same stabilizer dimension
        let mut t2 = Tensor::zero(space.clone());
        t2.add_entry([0, 0, 0], rat(3));
        t2.add_entry([0, 1, 1], rat(1));
        t2.add_entry([1, 0, 1], rat(2));
        t2.add_entry([1, 1, 0], rat(5));
        t2.add_entry([1, 1, 1], rat(7));
        let r2 = tensor_stabilizer(&spec, &t2).unwrap();
        assert_eq!(r2.stab_dim, 2);
    }

    #[test]
    fn leibniz_and_linearity() {
        let t = mat_mul_tensor(2, 2, 2);
        let u = crate::tensor::bclrs_tensor(2).unwrap();
        let _ = u;
        let mut x = QMatrix::zero(2, 2);
        *x.at_mut(0, 1) = rat(3);
        let t2 = t.add(&t);
        let act = |tt: &Tensor<Rational>| {
            lie_act(&t.space, ActionTarget::Structured(Group::V), &x, tt).unwrap()
        };
        assert_eq!(act(&t2), act(&t).add(&act(&t)));
    }

    #[test]
    fn exponential_consistency_on_nilpotent_element() {
        // exp(X) for X = 3 E_{12} in gl(V): group action matches the
        // exponential series of the infinitesimal action
        let t = mat_mul_tensor(2, 2, 2);
        let mut x = QMatrix::zero(2, 2);
        *x.at_mut(0, 1) = rat(3);
        let g = [
            QMatrix::identity(2),
            {
                let mut m = QMatrix::identity(2);
                *m.at_mut(0, 1) = rat(3);
                m
            },
            QMatrix::identity(2),
        ];
        let group_side = apply_gl(&t, &g).unwrap();
        // series: T + XT + X^2 T / 2 + ... (terminates)
        let mut series = t.clone();
        let mut term = t.clone();
        let mut k = 1i64;
        loop {
            term = lie_act(&t.space, ActionTarget::Structured(Group::V), &x, &term).unwrap();
            if term.is_zero() {
                break;
            }
            let factorial: Rational = (1..=k).map(rat).product();
            series = series.add(&term.scale(&factorial.recip()));
            k += 1;
            assert!(k < 12, "series failed to terminate");
        }
        assert_eq!(group_side, series);
    }

    #[test]
    fn bclr_z2_swaps_term_pairs() {
        let (alg, _) = entry("bclr").unwrap().load(false).unwrap();
        let moves = [
            SymmetryMove::TransposeCycle,
            SymmetryMove::Permute(Group::W, vec![1, 0]),
        ];
        let report = check_discrete_symmetry(&alg, &moves).unwrap();
        let perm: Vec<usize> = report
            .curve_matches
            .iter()
            .map(|m| m.as_ref().unwrap().0 + 1)
            .collect();
        assert_eq!(perm, vec![3, 4, 1, 2, 5]);
        // and the identity symmetry is the identity permutation
        let id_report = check_discrete_symmetry(&alg, &[]).unwrap();
        let id_perm: Vec<usize> = id_report
            .curve_matches
            .iter()
            .map(|m| m.as_ref().unwrap().0 + 1)
            .collect();
        assert_eq!(id_perm, vec![1, 2, 3, 4, 5]);
    }
}
