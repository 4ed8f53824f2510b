//! Exact verification of border rank identities and extraction of jet data.
//!
//! The contract checked: sum_i w_i(t) p_i(t) = t^h * target + O(t^{h+1}),
//! with the r weighted curves generically independent. Coefficients above h
//! are unconstrained by the limit definition; they are reported, not judged.

use std::collections::BTreeMap;

use crate::catalog::BorderRankAlgorithm;
use crate::error::{Error, Result};
use crate::exact::rational::Rational;
use crate::geometry::{
    line_configuration_report, tangent_space, tangent_space_of_line, LineConfigReport,
};
use crate::subspace::LinearSubspace;
use crate::tensor::{RankOnePoint, Tensor};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyStatus {
    Pass,
    Fail,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub status: VerifyStatus,
    pub checked_order: i64,
    /// Smallest power of t whose coefficient is wrong, when failing.
    pub first_failure_power: Option<i64>,
    /// The exact offending tensor: the nonzero coefficient below h, or the
    /// difference (computed - target) at h.
    pub residual: Option<Tensor<Rational>>,
    pub term_count: usize,
    pub generic_rank: usize,
    /// Whether the generic-independence half of the contract holds.
    pub rank_ok: bool,
    /// Which target orientation the comparison used.
    pub orientation: String,
    /// Powers above h carrying nonzero coefficients (informational).
    pub higher_order_powers: Vec<i64>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == VerifyStatus::Pass
    }
}

/// Verifies the expansion contract against one explicit target tensor.
pub fn verify_border_rank(
    alg: &BorderRankAlgorithm,
    target: &Tensor<Rational>,
) -> Result<VerificationReport> {
    verify_with_orientation(alg, target, "explicit")
}

fn verify_with_orientation(
    alg: &BorderRankAlgorithm,
    target: &Tensor<Rational>,
    orientation: &str,
) -> Result<VerificationReport> {
    if target.space != alg.space {
        return Err(Error::SpaceMismatch(format!(
            "target space {:?} vs algorithm space {:?}",
            target.space.dims, alg.space.dims
        )));
    }
    let expansion = alg.expand_sum();
    let h = alg.order;
    let term_count = alg.term_count();
    let generic_rank = alg.generic_term_rank();
    let rank_ok = generic_rank == term_count;
    let higher_order_powers: Vec<i64> = expansion.keys().copied().filter(|&k| k > h).collect();

    let mut failure: Option<(i64, Tensor<Rational>)> = None;
    for (&k, coeff) in expansion.iter() {
        if k < h && !coeff.is_zero() {
            failure = Some((k, coeff.clone()));
            break;
        }
    }
    if failure.is_none() {
        let at_h = expansion
            .get(&h)
            .cloned()
            .unwrap_or_else(|| Tensor::zero(alg.space.clone()));
        let diff = at_h.sub(target);
        if !diff.is_zero() {
            failure = Some((h, diff));
        }
    }

    let status = if failure.is_none() && rank_ok {
        VerifyStatus::Pass
    } else {
        VerifyStatus::Fail
    };
    Ok(VerificationReport {
        status,
        checked_order: h,
        first_failure_power: failure.as_ref().map(|(k, _)| *k),
        residual: failure.map(|(_, t)| t),
        term_count,
        generic_rank,
        rank_ok,
        orientation: orientation.to_string(),
        higher_order_powers,
    })
}

/// Verifies against the algorithm's named target, trying every orientation
/// whose ambient space matches. Returns the passing report if any
/// orientation passes; otherwise the report that got furthest.
pub fn verify_against_named_target(alg: &BorderRankAlgorithm) -> Result<VerificationReport> {
    let candidates = alg.target_candidates()?;
    let mut best: Option<VerificationReport> = None;
    for (name, target) in &candidates {
        let report = verify_with_orientation(alg, target, name)?;
        if report.passed() {
            return Ok(report);
        }
        let further = match &best {
            None => true,
            Some(b) => {
                report.first_failure_power.unwrap_or(i64::MAX)
                    > b.first_failure_power.unwrap_or(i64::MAX)
            }
        };
        if further {
            best = Some(report);
        }
    }
    Ok(best.expect("target_candidates is nonempty"))
}

/// One term's limit data.
#[derive(Clone, Debug)]
pub struct TermLimit {
    pub term: usize,
    /// Exact order-0 coefficient of the weighted term.
    pub tensor: Tensor<Rational>,
    /// Rank-one factorization, projectively normalized; `None` for
    /// zero-limit terms (curves vanishing at t = 0 after weighting).
    pub point: Option<RankOnePoint>,
}

/// Limit points p_j(0) of the weighted curves. Terms whose weighted
/// valuation is negative are rejected: the entry must be normalized first.
pub fn limit_points(alg: &BorderRankAlgorithm) -> Result<Vec<TermLimit>> {
    let mut out = Vec::with_capacity(alg.term_count());
    for i in 0..alg.term_count() {
        let weighted = alg.weighted_term_tensor(i);
        let mut val: Option<i64> = None;
        for (_, p) in weighted.iter() {
            if let Some(v) = p.valuation() {
                val = Some(val.map_or(v, |m: i64| m.min(v)));
            }
        }
        let val = val.unwrap_or(0);
        if val < 0 {
            return Err(Error::NegativeValuation(i + 1));
        }
        let mut tensor = Tensor::zero(alg.space.clone());
        for (idx, p) in weighted.iter() {
            tensor.add_entry(*idx, p.coefficient(0));
        }
        let point = if tensor.is_zero() {
            None
        } else {
            // the order-0 coefficient of a weighted rank-one curve is the
            // product of the factors' leading vectors, hence rank one
            crate::geometry::is_rank_one(&tensor)?.map(|p| p.projective_normal_form())
        };
        out.push(TermLimit {
            term: i + 1,
            tensor,
            point,
        });
    }
    Ok(out)
}

/// Jet data of one raw curve (weights are not folded in; the sources'
/// derivative charts are stated for the bare curves).
#[derive(Clone, Debug)]
pub struct JetRow {
    pub term: usize,
    /// Factor coefficient vectors of t^0, t^1 and t^2.
    pub value: [Vec<Rational>; 3],
    pub first: [Vec<Rational>; 3],
    pub second: [Vec<Rational>; 3],
    /// t^1 coefficient of the curve's tensor: a' b c + a b' c + a b c'.
    pub tangent_vector: Tensor<Rational>,
    /// Second-fundamental-form part of the t^2 coefficient:
    /// a' b' c + a b' c' + a' b c'.
    pub ii_form: Tensor<Rational>,
    /// Ordinary-tangent part of the t^2 coefficient:
    /// a'' b c + a b'' c + a b c''.
    pub second_tangent: Tensor<Rational>,
}

#[derive(Clone, Debug)]
pub struct JetTable {
    pub rows: Vec<JetRow>,
    pub tangent_sum: Tensor<Rational>,
    pub ii_sum: Tensor<Rational>,
    pub second_tangent_sum: Tensor<Rational>,
}

/// Extracts per-term factor jets and the split of the order-2 coefficient
/// into second-fundamental-form and ordinary-tangent parts.
pub fn jet_tables(alg: &BorderRankAlgorithm) -> JetTable {
    let space = &alg.space;
    let mut rows = Vec::with_capacity(alg.term_count());
    let mut tangent_sum = Tensor::zero(space.clone());
    let mut ii_sum = Tensor::zero(space.clone());
    let mut second_tangent_sum = Tensor::zero(space.clone());
    for (i, curve) in alg.terms.iter().enumerate() {
        let coeff = |k: i64| -> [Vec<Rational>; 3] {
            [
                curve.factor_coefficient(0, k),
                curve.factor_coefficient(1, k),
                curve.factor_coefficient(2, k),
            ]
        };
        let value = coeff(0);
        let first = coeff(1);
        let second = coeff(2);
        let outer = |a: &[Rational], b: &[Rational], c: &[Rational]| {
            Tensor::outer(space.clone(), a, b, c)
        };
        let tangent_vector = outer(&first[0], &value[1], &value[2])
            .add(&outer(&value[0], &first[1], &value[2]))
            .add(&outer(&value[0], &value[1], &first[2]));
        let ii_form = outer(&first[0], &first[1], &value[2])
            .add(&outer(&value[0], &first[1], &first[2]))
            .add(&outer(&first[0], &value[1], &first[2]));
        let second_tangent = outer(&second[0], &value[1], &value[2])
            .add(&outer(&value[0], &second[1], &value[2]))
            .add(&outer(&value[0], &value[1], &second[2]));
        tangent_sum = tangent_sum.add(&tangent_vector);
        ii_sum = ii_sum.add(&ii_form);
        second_tangent_sum = second_tangent_sum.add(&second_tangent);
        rows.push(JetRow {
            term: i + 1,
            value,
            first,
            second,
            tangent_vector,
            ii_form,
            second_tangent,
        });
    }
    JetTable {
        rows,
        tangent_sum,
        ii_sum,
        second_tangent_sum,
    }
}

#[derive(Clone, Debug)]
pub struct OrderProfile {
    /// For each coordinate triple of the summed weighted expansion, the
    /// power of t at which it first appears.
    pub per_triple: BTreeMap<[usize; 3], i64>,
    /// For each factor coordinate, the lowest order (weight included) at
    /// which any curve reaches it; `None` for untouched coordinates.
    pub factor_orders: [Vec<Option<i64>>; 3],
}

/// When each coordinate is reached, both in the summed series and per
/// factor entry across the curves (the chart layout used by the sources).
pub fn order_profile(alg: &BorderRankAlgorithm) -> OrderProfile {
    let mut total: Tensor<crate::exact::laurent::LaurentPoly> = Tensor::zero(alg.space.clone());
    for i in 0..alg.term_count() {
        total = total.add(&alg.weighted_term_tensor(i));
    }
    let mut per_triple = BTreeMap::new();
    for (idx, p) in total.iter() {
        if let Some(v) = p.valuation() {
            per_triple.insert(*idx, v);
        }
    }
    let mut factor_orders: [Vec<Option<i64>>; 3] =
        std::array::from_fn(|f| vec![None; alg.space.dims[f]]);
    for (curve, weight) in alg.terms.iter().zip(&alg.weights) {
        let w = weight.valuation().unwrap_or(0);
        for f in 0..3 {
            for (i, poly) in curve.factor(f).iter().enumerate() {
                if let Some(v) = poly.valuation() {
                    let order = v + w;
                    let slot = &mut factor_orders[f][i];
                    *slot = Some(slot.map_or(order, |cur| cur.min(order)));
                }
            }
        }
    }
    OrderProfile {
        per_triple,
        factor_orders,
    }
}

/// One group of a first-order certificate.
#[derive(Clone, Debug)]
pub struct CertificateGroup {
    /// 1-based term indices.
    pub terms: Vec<usize>,
    /// Sum of the group's order-1 contributions.
    pub contribution: Tensor<Rational>,
    /// Index into the configuration's line list when the group's limit
    /// points share a line.
    pub line: Option<usize>,
    /// The contribution lies in the tangent space of the shared line (or of
    /// the single limit point).
    pub membership: bool,
}

#[derive(Clone, Debug)]
pub struct FirstOrderCertificate {
    pub groups: Vec<CertificateGroup>,
    pub config: LineConfigReport,
    /// Sum over groups equals the target exactly.
    pub total_matches: bool,
}

/// For an order-1 algorithm, expresses the target as a sum of vectors lying
/// in tangent spaces along the limit configuration's lines: terms whose
/// limit points share a line are grouped, and each group's order-1 sum is
/// certified to lie in that line's tangent space. Order-0 algorithms get the
/// trivial certificate (target in the span of the limit points).
pub fn first_order_certificate(
    alg: &BorderRankAlgorithm,
    target: &Tensor<Rational>,
) -> Result<FirstOrderCertificate> {
    if alg.order > 1 {
        return Err(Error::NotFirstOrder(alg.order));
    }
    let limits = limit_points(alg)?;
    let points: Vec<RankOnePoint> = limits
        .iter()
        .map(|l| {
            l.point.clone().ok_or_else(|| {
                Error::Unsupported(format!(
                    "term {} has a zero limit; the certificate needs honest limit points",
                    l.term
                ))
            })
        })
        .collect::<Result<_>>()?;
    let config = line_configuration_report(&alg.space, &points);

    if alg.order == 0 {
        // rank expression: target must lie in the span of the limit points
        let span = LinearSubspace::from_vectors(
            alg.space.total_dim(),
            limits.iter().map(|l| l.tensor.to_flat_vec()).collect(),
        );
        let membership = span.contains(&target.to_flat_vec());
        let total: Tensor<Rational> = limits
            .iter()
            .fold(Tensor::zero(alg.space.clone()), |acc, l| acc.add(&l.tensor));
        let groups = vec![CertificateGroup {
            terms: (1..=alg.term_count()).collect(),
            contribution: total.clone(),
            line: None,
            membership,
        }];
        return Ok(FirstOrderCertificate {
            groups,
            config,
            total_matches: total == *target,
        });
    }

    // order-1 contributions per term (weights folded in)
    let contributions: Vec<Tensor<Rational>> = (0..alg.term_count())
        .map(|i| {
            let weighted = alg.weighted_term_tensor(i);
            let mut t = Tensor::zero(alg.space.clone());
            for (idx, p) in weighted.iter() {
                t.add_entry(*idx, p.coefficient(1));
            }
            t
        })
        .collect();

    // partition terms: points on a shared configuration line form a group;
    // the rest are singletons (a point on several lines joins the first)
    let mut group_of: Vec<Option<usize>> = vec![None; alg.term_count()];
    let mut groups: Vec<(Vec<usize>, Option<usize>)> = Vec::new();
    for (li, cline) in config.lines.iter().enumerate() {
        let fresh: Vec<usize> = cline
            .members
            .iter()
            .copied()
            .filter(|&m| group_of[m].is_none())
            .collect();
        if fresh.len() >= 2 {
            for &m in &fresh {
                group_of[m] = Some(groups.len());
            }
            groups.push((fresh, Some(li)));
        }
    }
    for i in 0..alg.term_count() {
        if group_of[i].is_none() {
            group_of[i] = Some(groups.len());
            groups.push((vec![i], None));
        }
    }

    let mut out_groups = Vec::new();
    let mut total = Tensor::zero(alg.space.clone());
    for (members, line_idx) in groups {
        let contribution = members
            .iter()
            .fold(Tensor::zero(alg.space.clone()), |acc, &m| {
                acc.add(&contributions[m])
            });
        total = total.add(&contribution);
        let membership = if contribution.is_zero() {
            true
        } else {
            match line_idx {
                Some(li) => tangent_space_of_line(&alg.space, &config.lines[li].line)
                    .contains(&contribution.to_flat_vec()),
                None => tangent_space(&alg.space, &points[members[0]])
                    .contains(&contribution.to_flat_vec()),
            }
        };
        out_groups.push(CertificateGroup {
            terms: members.iter().map(|&m| m + 1).collect(),
            contribution,
            line: line_idx,
            membership,
        });
    }
    Ok(FirstOrderCertificate {
        groups: out_groups,
        config,
        total_matches: total == *target,
    })
}

/// Injects a single-coefficient fault into a term (testing helper).
pub fn perturb_coefficient(
    alg: &BorderRankAlgorithm,
    term: usize,
    factor: usize,
    coord: usize,
    exp: i64,
    delta: Rational,
) -> BorderRankAlgorithm {
    let mut out = alg.clone();
    let poly = &mut out.terms[term].factors[factor][coord];
    *poly = poly.add(&crate::exact::laurent::LaurentPoly::monomial(exp, delta));
    out
}
