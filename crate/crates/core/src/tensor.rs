//! Tensor spaces and sparse tensors.
//!
//! A `TensorSpace` is a triple of factor dimensions, optionally carrying a
//! matrix-multiplication labeling: A = U*âŠ—V, B = V*âŠ—W, C = W*âŠ—U with basis
//! symbols x^i_j, y^j_k, z^k_i. Factors may have deleted coordinates (the
//! generalized BCLRS spaces drop x^1_1), in which case the ambient factor is
//! the span of the remaining labels.
//!
//! Entry storage is a `BTreeMap` keyed by index triples, so iteration order
//! is lexicographic and every report is reproducible.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::laurent::LaurentPoly;
use crate::exact::multipoly::MultiPoly;
use crate::exact::rational::Rational;
use crate::linalg::QMatrix;

/// Scalar rings tensors can live over.
pub trait Scalar: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn from_rational(q: &Rational) -> Self;
}

impl Scalar for Rational {
    fn zero() -> Self {
        <Rational as num_traits::Zero>::zero()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}

impl Scalar for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        LaurentPoly::add(self, other)
    }
    fn neg(&self) -> Self {
        LaurentPoly::neg(self)
    }
    fn mul(&self, other: &Self) -> Self {
        LaurentPoly::mul(self, other)
    }
    fn from_rational(q: &Rational) -> Self {
        LaurentPoly::constant(q.clone())
    }
}

impl Scalar for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero()
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        MultiPoly::add(self, other)
    }
    fn neg(&self) -> Self {
        MultiPoly::neg(self)
    }
    fn mul(&self, other: &Self) -> Self {
        MultiPoly::mul(self, other)
    }
    fn from_rational(q: &Rational) -> Self {
        MultiPoly::constant(q.clone())
    }
}

/// Which matrix group a basis permutation acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Group {
    U,
    V,
    W,
}

/// Discrete structural symmetries of a matrix-multiplication space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymmetryMove {
    /// Factor rotation A -> B -> C -> A; maps the M(u,v,w) structure to M(v,w,u).
    Cyclic,
    /// Trace-transpose action: swaps B and C with transposed labels; maps
    /// M(u,v,w) to M(v,u,w).
    TransposeCycle,
    /// Basis permutation of one matrix group (0-based images).
    Permute(Group, Vec<usize>),
}

const FACTOR_LETTERS: [char; 3] = ['x', 'y', 'z'];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatMulStructure {
    pub uvw: [usize; 3],
    /// Deleted label pairs per factor (1-based pairs).
    pub deleted: [BTreeSet<(usize, usize)>; 3],
    /// Present labels per factor, sorted; index in this list = coordinate index.
    labels: [Vec<(usize, usize)>; 3],
}

impl MatMulStructure {
    fn new(uvw: [usize; 3], deleted: [BTreeSet<(usize, usize)>; 3]) -> Self {
        let pair_dims = Self::pair_dims_of(uvw);
        let labels = std::array::from_fn(|f| {
            let (p, q) = pair_dims[f];
            let mut out = Vec::new();
            for i in 1..=p {
                for j in 1..=q {
                    if !deleted[f].contains(&(i, j)) {
                        out.push((i, j));
                    }
                }
            }
            out
        });
        MatMulStructure { uvw, deleted, labels }
    }

    fn pair_dims_of(uvw: [usize; 3]) -> [(usize, usize); 3] {
        let [u, v, w] = uvw;
        [(u, v), (v, w), (w, u)]
    }

    pub fn pair_dims(&self) -> [(usize, usize); 3] {
        Self::pair_dims_of(self.uvw)
    }

    pub fn labels(&self, factor: usize) -> &[(usize, usize)] {
        &self.labels[factor]
    }

    pub fn index_of(&self, factor: usize, label: (usize, usize)) -> Option<usize> {
        self.labels[factor].binary_search(&label).ok()
    }

    pub fn label_of(&self, factor: usize, index: usize) -> Option<(usize, usize)> {
        self.labels[factor].get(index).copied()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorSpace {
    pub dims: [usize; 3],
    pub structure: Option<MatMulStructure>,
}

impl TensorSpace {
    pub fn unstructured(a: usize, b: usize, c: usize) -> Self {
        TensorSpace {
            dims: [a, b, c],
            structure: None,
        }
    }

    /// The full space of M(u,v,w).
    pub fn matmul(u: usize, v: usize, w: usize) -> Self {
        Self::matmul_deleted(u, v, w, [BTreeSet::new(), BTreeSet::new(), BTreeSet::new()])
    }

    pub fn matmul_deleted(
        u: usize,
        v: usize,
        w: usize,
        deleted: [BTreeSet<(usize, usize)>; 3],
    ) -> Self {
        let st = MatMulStructure::new([u, v, w], deleted);
        let dims = std::array::from_fn(|f| st.labels(f).len());
        TensorSpace {
            dims,
            structure: Some(st),
        }
    }

    /// Ambient space of the generalized BCLRS tensor: M(m,2,2) with the
    /// x^1_1 coordinate removed from the first factor.
    pub fn bclrs(m: usize) -> Self {
        let mut del_a = BTreeSet::new();
        del_a.insert((1, 1));
        Self::matmul_deleted(m, 2, 2, [del_a, BTreeSet::new(), BTreeSet::new()])
    }

    pub fn total_dim(&self) -> usize {
        self.dims[0] * self.dims[1] * self.dims[2]
    }

    /// Flat coordinate of an index triple in the a*b*c coordinate vector.
    pub fn flat_index(&self, idx: [usize; 3]) -> usize {
        (idx[0] * self.dims[1] + idx[1]) * self.dims[2] + idx[2]
    }

    pub fn format_label(&self, factor: usize, index: usize) -> String {
        match &self.structure {
            Some(st) => {
                let (p, q) = st.label_of(factor, index).expect("index in range");
                format!("{}^{}_{}", FACTOR_LETTERS[factor], p, q)
            }
            None => format!("{}{}", FACTOR_LETTERS[factor], index + 1),
        }
    }

    /// Parses a basis label like `x^1_2` into (factor, coordinate index).
    pub fn parse_label(&self, label: &str) -> Result<(usize, usize)> {
        let err = || Error::UnknownLabel(label.to_string());
        let st = self.structure.as_ref().ok_or_else(err)?;
        let mut chars = label.chars();
        let letter = chars.next().ok_or_else(err)?;
        let factor = FACTOR_LETTERS.iter().position(|&c| c == letter).ok_or_else(err)?;
        let rest: String = chars.collect();
        let (sup, sub) = rest.strip_prefix('^').and_then(|r| r.split_once('_')).ok_or_else(err)?;
        let p: usize = sup.parse().map_err(|_| err())?;
        let q: usize = sub.parse().map_err(|_| err())?;
        let index = st.index_of(factor, (p, q)).ok_or_else(err)?;
        Ok((factor, index))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor<S: Scalar> {
    pub space: TensorSpace,
    entries: BTreeMap<[usize; 3], S>,
}

impl<S: Scalar> Tensor<S> {
    pub fn zero(space: TensorSpace) -> Self {
        Tensor {
            space,
            entries: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn num_entries(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, idx: [usize; 3]) -> S {
        self.entries.get(&idx).cloned().unwrap_or_else(S::zero)
    }

    pub fn add_entry(&mut self, idx: [usize; 3], v: S) {
        debug_assert!(idx[0] < self.space.dims[0] && idx[1] < self.space.dims[1] && idx[2] < self.space.dims[2]);
        if v.is_zero() {
            return;
        }
        match self.entries.get_mut(&idx) {
            Some(existing) => {
                let sum = existing.add(&v);
                if sum.is_zero() {
                    self.entries.remove(&idx);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.entries.insert(idx, v);
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[usize; 3], &S)> {
        self.entries.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.space, other.space, "tensor spaces must agree");
        let mut out = self.clone();
        for (idx, v) in &other.entries {
            out.add_entry(*idx, v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Tensor {
            space: self.space.clone(),
            entries: self.entries.iter().map(|(i, v)| (*i, v.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Tensor::zero(self.space.clone());
        }
        let mut out = Tensor::zero(self.space.clone());
        for (idx, v) in &self.entries {
            out.add_entry(*idx, v.mul(c));
        }
        out
    }

    /// Outer product of three coordinate vectors.
    pub fn outer(space: TensorSpace, a: &[S], b: &[S], c: &[S]) -> Self {
        assert_eq!([a.len(), b.len(), c.len()], space.dims);
        let mut out = Tensor::zero(space);
        for (ia, va) in a.iter().enumerate() {
            if va.is_zero() {
                continue;
            }
            for (ib, vb) in b.iter().enumerate() {
                if vb.is_zero() {
                    continue;
                }
                let ab = va.mul(vb);
                for (ic, vc) in c.iter().enumerate() {
                    if !vc.is_zero() {
                        out.add_entry([ia, ib, ic], ab.mul(vc));
                    }
                }
            }
        }
        out
    }

    /// Flat coordinate vector of length a*b*c.
    pub fn to_flat_vec(&self) -> Vec<S> {
        let mut v = vec![S::zero(); self.space.total_dim()];
        for (idx, val) in &self.entries {
            v[self.space.flat_index(*idx)] = val.clone();
        }
        v
    }

    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Tensor<T> {
        let mut out = Tensor::zero(self.space.clone());
        for (idx, v) in &self.entries {
            out.add_entry(*idx, f(v));
        }
        out
    }
}

impl Tensor<Rational> {
    pub fn from_flat_vec(space: TensorSpace, v: &[Rational]) -> Self {
        assert_eq!(v.len(), space.total_dim());
        let [_, b, c] = space.dims;
        let mut out = Tensor::zero(space);
        for (flat, val) in v.iter().enumerate() {
            if !val.is_zero() {
                let ic = flat % c;
                let ib = (flat / c) % b;
                let ia = flat / (b * c);
                out.add_entry([ia, ib, ic], val.clone());
            }
        }
        out
    }

    /// Contraction against a dual vector of one factor, as a matrix over the
    /// remaining two factors (in increasing factor order).
    pub fn contract(&self, factor: usize, dual: &[Rational]) -> Result<QMatrix> {
        if dual.len() != self.space.dims[factor] {
            return Err(Error::DimMismatch(format!(
                "dual vector has length {}, factor {} has dimension {}",
                dual.len(),
                factor,
                self.space.dims[factor]
            )));
        }
        let (rf, cf) = match factor {
            0 => (1, 2),
            1 => (0, 2),
            2 => (0, 1),
            _ => panic!("factor out of range"),
        };
        let mut m = QMatrix::zero(self.space.dims[rf], self.space.dims[cf]);
        for (idx, v) in &self.entries {
            let w = &dual[idx[factor]];
            if !w.is_zero() {
                *m.at_mut(idx[rf], idx[cf]) += v * w;
            }
        }
        Ok(m)
    }

    /// The flattening A* -> B (x) C (resp. the analogues) as a matrix with
    /// rows indexed by the chosen factor.
    pub fn flattening_matrix(&self, factor: usize) -> QMatrix {
        let (rf, cf) = match factor {
            0 => (1, 2),
            1 => (0, 2),
            2 => (0, 1),
            _ => panic!("factor out of range"),
        };
        let mut m = QMatrix::zero(self.space.dims[factor], self.space.dims[rf] * self.space.dims[cf]);
        for (idx, v) in &self.entries {
            *m.at_mut(idx[factor], idx[rf] * self.space.dims[cf] + idx[cf]) = v.clone();
        }
        m
    }

    /// Exact ranks of the three flattenings.
    pub fn multilinear_ranks(&self) -> (usize, usize, usize) {
        (
            self.flattening_matrix(0).rank(),
            self.flattening_matrix(1).rank(),
            self.flattening_matrix(2).rank(),
        )
    }

    /// The slice matrix over one factor assembled symbolically: entries are
    /// linear forms in the contracted factor's basis labels.
    pub fn symbolic_slice_matrix(&self, factor: usize) -> Vec<Vec<MultiPoly>> {
        let (rf, cf) = match factor {
            0 => (1, 2),
            1 => (0, 2),
            2 => (0, 1),
            _ => panic!("factor out of range"),
        };
        let mut m =
            vec![vec![MultiPoly::zero(); self.space.dims[cf]]; self.space.dims[rf]];
        for (idx, v) in &self.entries {
            let name = self.space.format_label(factor, idx[factor]);
            let term = MultiPoly::var(&name).scale(v);
            m[idx[rf]][idx[cf]] = m[idx[rf]][idx[cf]].add(&term);
        }
        m
    }
}

/// The matrix multiplication tensor M(u,v,w) = Id_U (x) Id_V (x) Id_W with
/// unit entries at the triples (x^i_j, y^j_k, z^k_i).
pub fn mat_mul_tensor(u: usize, v: usize, w: usize) -> Tensor<Rational> {
    let space = TensorSpace::matmul(u, v, w);
    structured_matmul_entries(space)
}

fn structured_matmul_entries(space: TensorSpace) -> Tensor<Rational> {
    let st = space.structure.clone().expect("structured space");
    let [u, v, w] = st.uvw;
    let mut t = Tensor::zero(space);
    let one = Rational::from_integer(1.into());
    for i in 1..=u {
        for j in 1..=v {
            for k in 1..=w {
                let (Some(ia), Some(ib), Some(ic)) = (
                    st.index_of(0, (i, j)),
                    st.index_of(1, (j, k)),
                    st.index_of(2, (k, i)),
                ) else {
                    continue; // triples touching a deleted label are dropped
                };
                t.add_entry([ia, ib, ic], one.clone());
            }
        }
    }
    t
}

/// The generalized BCLRS tensor: m x 2 by 2 x 2 matrix multiplication with
/// the x^1_1 entry set to zero, in the ambient space that drops that
/// coordinate. Has 4m - 2 unit entries.
pub fn bclrs_tensor(m: usize) -> Result<Tensor<Rational>> {
    if m < 2 {
        return Err(Error::DimMismatch(format!("bclrs tensor needs m >= 2, got {m}")));
    }
    Ok(structured_matmul_entries(TensorSpace::bclrs(m)))
}

/// Per-factor change-of-basis matrices induced by (gU, gV, gW) on
/// A = U* (x) V, B = V* (x) W, C = W* (x) U. The dual part acts through the
/// inverse: x^i_j maps to sum_{k,l} (gU^-1)_{ik} (gV)_{lj} x^k_l.
fn structured_factor_matrices(
    st: &MatMulStructure,
    g: &[QMatrix; 3],
) -> Result<[QMatrix; 3]> {
    let [u, v, w] = st.uvw;
    for (m, d) in g.iter().zip([u, v, w]) {
        if m.rows != d || m.cols != d {
            return Err(Error::DimMismatch(format!(
                "group matrix is {}x{}, expected {}x{}",
                m.rows, m.cols, d, d
            )));
        }
    }
    let inv: Vec<QMatrix> = g.iter().map(|m| m.inverse()).collect::<Result<_>>()?;
    // factor f pairs (dual part, direct part) of the groups:
    // A: (U, V), B: (V, W), C: (W, U)
    let pairing = [(0usize, 1usize), (1, 2), (2, 0)];
    let mut out = Vec::with_capacity(3);
    for f in 0..3 {
        let (dual_g, direct_g) = pairing[f];
        let labels = st.labels(f);
        let n = labels.len();
        let mut m = QMatrix::zero(n, n);
        let (pd, qd) = st.pair_dims()[f];
        // target label (row), source label (col)
        for (col, &(p, q)) in labels.iter().enumerate() {
            for tp in 1..=pd {
                for tq in 1..=qd {
                    let coeff =
                        inv[dual_g].at(p - 1, tp - 1) * g[direct_g].at(tq - 1, q - 1);
                    if coeff.is_zero() {
                        continue;
                    }
                    match st.index_of(f, (tp, tq)) {
                        Some(row) => *m.at_mut(row, col) += coeff,
                        None => {
                            return Err(Error::ActionNotClosed(format!(
                                "label {}^{}_{} flows into deleted {}^{}_{}",
                                FACTOR_LETTERS[f], p, q, FACTOR_LETTERS[f], tp, tq
                            )))
                        }
                    }
                }
            }
        }
        out.push(m);
    }
    Ok(out.try_into().expect("three factors"))
}

fn apply_factor_matrix<S: Scalar>(t: &Tensor<S>, factor: usize, m: &QMatrix) -> Tensor<S> {
    let mut out = Tensor::zero(t.space.clone());
    for (idx, v) in t.iter() {
        for row in 0..m.rows {
            let c = m.at(row, idx[factor]);
            if !c.is_zero() {
                let mut nidx = *idx;
                nidx[factor] = row;
                out.add_entry(nidx, v.mul(&S::from_rational(c)));
            }
        }
    }
    out
}

/// The induced change-of-basis matrix on each tensor factor for a GL triple.
pub fn gl_factor_matrices(space: &TensorSpace, g: &[QMatrix; 3]) -> Result<[QMatrix; 3]> {
    let st = space
        .structure
        .as_ref()
        .ok_or_else(|| Error::Unsupported("group actions need a matmul-structured space".into()))?;
    structured_factor_matrices(st, g)
}

/// GL(U) x GL(V) x GL(W) action on a structured tensor. Errors if a matrix
/// is singular or the action does not preserve a deleted-coordinate space.
pub fn apply_gl<S: Scalar>(t: &Tensor<S>, g: &[QMatrix; 3]) -> Result<Tensor<S>> {
    let mats = gl_factor_matrices(&t.space, g)?;
    let mut out = t.clone();
    for f in 0..3 {
        out = apply_factor_matrix(&out, f, &mats[f]);
    }
    Ok(out)
}

/// Where a symmetry move sends a space.
pub fn symmetry_image_space(space: &TensorSpace, mv: &SymmetryMove) -> Result<TensorSpace> {
    let st = space
        .structure
        .as_ref()
        .ok_or_else(|| Error::Unsupported("symmetry moves need a matmul-structured space".into()))?;
    let [u, v, w] = st.uvw;
    let d = &st.deleted;
    let transpose = |s: &BTreeSet<(usize, usize)>| s.iter().map(|&(p, q)| (q, p)).collect();
    Ok(match mv {
        SymmetryMove::Cyclic => {
            TensorSpace::matmul_deleted(v, w, u, [d[1].clone(), d[2].clone(), d[0].clone()])
        }
        SymmetryMove::TransposeCycle => TensorSpace::matmul_deleted(
            v,
            u,
            w,
            [transpose(&d[0]), transpose(&d[2]), transpose(&d[1])],
        ),
        SymmetryMove::Permute(group, perm) => {
            let dim = match group {
                Group::U => u,
                Group::V => v,
                Group::W => w,
            };
            if perm.len() != dim || {
                let mut seen = vec![false; dim];
                perm.iter().any(|&i| i >= dim || std::mem::replace(&mut seen[i], true))
            } {
                return Err(Error::DimMismatch(format!(
                    "permutation {:?} is not a permutation of 0..{}",
                    perm, dim
                )));
            }
            let map_pair = |f: usize, (p, q): (usize, usize)| match (group, f) {
                (Group::U, 0) | (Group::V, 1) | (Group::W, 2) => (perm[p - 1] + 1, q),
                (Group::V, 0) | (Group::W, 1) | (Group::U, 2) => (p, perm[q - 1] + 1),
                _ => (p, q),
            };
            let nd = std::array::from_fn(|f| d[f].iter().map(|&l| map_pair(f, l)).collect());
            TensorSpace::matmul_deleted(u, v, w, nd)
        }
    })
}

/// Maps a label (factor, pair) under a symmetry move; returns the image
/// factor and pair.
pub fn symmetry_label_map(
    mv: &SymmetryMove,
    factor: usize,
    (p, q): (usize, usize),
) -> (usize, (usize, usize)) {
    match mv {
        // b (x) c (x) a with labels carried along: old B labels become the
        // new A labels, etc.
        SymmetryMove::Cyclic => ((factor + 2) % 3, (p, q)),
        // a^T in the A slot, old C transposed into B, old B transposed into C.
        SymmetryMove::TransposeCycle => match factor {
            0 => (0, (q, p)),
            1 => (2, (q, p)),
            2 => (1, (q, p)),
            _ => unreachable!(),
        },
        SymmetryMove::Permute(group, perm) => {
            let pair = match (group, factor) {
                (Group::U, 0) | (Group::V, 1) | (Group::W, 2) => (perm[p - 1] + 1, q),
                (Group::V, 0) | (Group::W, 1) | (Group::U, 2) => (p, perm[q - 1] + 1),
                _ => (p, q),
            };
            (factor, pair)
        }
    }
}

/// Applies a discrete symmetry to a structured tensor.
pub fn apply_symmetry<S: Scalar>(t: &Tensor<S>, mv: &SymmetryMove) -> Result<Tensor<S>> {
    let st = t
        .space
        .structure
        .as_ref()
        .ok_or_else(|| Error::Unsupported("apply_symmetry needs a matmul-structured space".into()))?
        .clone();
    let target = symmetry_image_space(&t.space, mv)?;
    let tst = target.structure.as_ref().expect("structured image").clone();
    let mut out = Tensor::zero(target);
    for (idx, v) in t.iter() {
        let mut nidx = [0usize; 3];
        for f in 0..3 {
            let pair = st.label_of(f, idx[f]).expect("label");
            let (nf, npair) = symmetry_label_map(mv, f, pair);
            nidx[nf] = tst
                .index_of(nf, npair)
                .expect("image label present: deleted sets were mapped along");
        }
        out.add_entry(nidx, v.clone());
    }
    Ok(out)
}

/// A rank-one tensor presented by its three factor vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankOnePoint {
    pub a: Vec<Rational>,
    pub b: Vec<Rational>,
    pub c: Vec<Rational>,
}

impl RankOnePoint {
    pub fn outer_product(&self, space: &TensorSpace) -> Tensor<Rational> {
        Tensor::outer(space.clone(), &self.a, &self.b, &self.c)
    }

    /// Scales each factor so its first nonzero coordinate is 1 (the overall
    /// scale is dropped; geometric comparisons are projective).
    pub fn projective_normal_form(&self) -> RankOnePoint {
        let norm = |v: &[Rational]| -> Vec<Rational> {
            match v.iter().find(|x| !x.is_zero()) {
                Some(lead) => v.iter().map(|x| x / lead).collect(),
                None => v.to_vec(),
            }
        };
        RankOnePoint {
            a: norm(&self.a),
            b: norm(&self.b),
            c: norm(&self.c),
        }
    }
}

pub fn format_vector(space: &TensorSpace, factor: usize, v: &[Rational]) -> String {
    let one = Rational::from_integer(1.into());
    let mut parts = Vec::new();
    for (i, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let label = space.format_label(factor, i);
        if *c == one {
            parts.push(if parts.is_empty() { label } else { format!("+ {label}") });
        } else if *c == -one.clone() {
            parts.push(if parts.is_empty() { format!("-{label}") } else { format!("- {label}") });
        } else if parts.is_empty() {
            parts.push(format!("{c} {label}"));
        } else if c < &Rational::zero() {
            parts.push(format!("- {} {label}", -c.clone()));
        } else {
            parts.push(format!("+ {c} {label}"));
        }
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    #[test]
    fn matmul_entry_counts() {
        assert_eq!(mat_mul_tensor(2, 2, 2).num_entries(), 8);
        assert_eq!(mat_mul_tensor(1, 1, 1).num_entries(), 1);
        assert_eq!(mat_mul_tensor(3, 3, 3).num_entries(), 27);
    }

    #[test]
    fn matmul_flattening_ranks() {
        // exact rank of each flattening of M(u,v,w) is the matching factor dim
        for (u, v, w) in [(2, 2, 2), (3, 3, 3), (1, 1, 1), (3, 2, 2), (2, 4, 2)] {
            let t = mat_mul_tensor(u, v, w);
            assert_eq!(t.multilinear_ranks(), (u * v, v * w, w * u));
        }
    }

    #[test]
    fn bclrs_shapes() {
        let t2 = bclrs_tensor(2).unwrap();
        assert_eq!(t2.space.dims, [3, 4, 4]);
        assert_eq!(t2.num_entries(), 6);
        assert_eq!(t2.flattening_matrix(0).rank(), 3);

        let t3 = bclrs_tensor(3).unwrap();
        assert_eq!(t3.space.dims, [5, 4, 6]);
        assert_eq!(t3.num_entries(), 10);

        assert!(bclrs_tensor(1).is_err());
    }

    #[test]
    fn rank_one_tensor_ranks() {
        let space = TensorSpace::unstructured(2, 3, 2);
        let p = RankOnePoint {
            a: vec![rat(1), rat(2)],
            b: vec![rat(1), rat(0), rat(-1)],
            c: vec![rat(3), rat(1)],
        };
        let t = p.outer_product(&space);
        assert_eq!(t.multilinear_ranks(), (1, 1, 1));
    }

    #[test]
    fn contract_matmul_slice() {
        // M(2,2,2) contracted against the x^1_1 dual has rank 2... the slice
        // is the identity-like pattern on (y^1_k, z^k_1).
        let t = mat_mul_tensor(2, 2, 2);
        let mut dual = vec![rat(0); 4];
        let (f, i) = t.space.parse_label("x^1_1").unwrap();
        assert_eq!(f, 0);
        dual[i] = rat(1);
        let m = t.contract(0, &dual).unwrap();
        assert_eq!(m.rank(), 2);
        // zero dual gives the zero matrix
        let z = t.contract(0, &vec![rat(0); 4]).unwrap();
        assert_eq!(z.rank(), 0);
        // wrong length errors
        assert!(t.contract(0, &vec![rat(0); 3]).is_err());
    }

    #[test]
    fn contract_is_linear_in_dual() {
        let t = mat_mul_tensor(2, 2, 2);
        let a: Vec<Rational> = (0..4).map(|i| rat(i as i64 + 1)).collect();
        let b: Vec<Rational> = (0..4).map(|i| rat(2 * i as i64 - 3)).collect();
        let sum: Vec<Rational> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let ma = t.contract(0, &a).unwrap();
        let mb = t.contract(0, &b).unwrap();
        let ms = t.contract(0, &sum).unwrap();
        for i in 0..ma.rows {
            for j in 0..ma.cols {
                assert_eq!(ma.at(i, j) + mb.at(i, j), *ms.at(i, j));
            }
        }
    }

    #[test]
    fn gl_action_fixes_matmul() {
        let t = mat_mul_tensor(2, 2, 2);
        let g = [
            QMatrix::from_rows(vec![vec![rat(1), rat(2)], vec![rat(1), rat(3)]]),
            QMatrix::from_rows(vec![vec![rat(2), rat(0)], vec![rat(5), rat(1)]]),
            QMatrix::from_rows(vec![vec![rat(1), rat(-1)], vec![rat(1), rat(1)]]),
        ];
        assert_eq!(apply_gl(&t, &g).unwrap(), t);
    }

    #[test]
    fn gl_action_identity_and_singular() {
        let t = bclrs_tensor(2).unwrap();
        let id = [QMatrix::identity(2), QMatrix::identity(2), QMatrix::identity(2)];
        assert_eq!(apply_gl(&t, &id).unwrap(), t);
        let sing = [
            QMatrix::from_rows(vec![vec![rat(1), rat(1)], vec![rat(1), rat(1)]]),
            QMatrix::identity(2),
            QMatrix::identity(2),
        ];
        assert!(apply_gl(&t, &sing).is_err());
    }

    #[test]
    fn gl_action_composes() {
        let t = mat_mul_tensor(2, 2, 2);
        let g1 = [
            QMatrix::from_rows(vec![vec![rat(1), rat(1)], vec![rat(0), rat(1)]]),
            QMatrix::identity(2),
            QMatrix::from_rows(vec![vec![rat(2), rat(0)], vec![rat(0), rat(1)]]),
        ];
        let g2 = [
            QMatrix::from_rows(vec![vec![rat(1), rat(0)], vec![rat(3), rat(1)]]),
            QMatrix::from_rows(vec![vec![rat(0), rat(1)], vec![rat(1), rat(0)]]),
            QMatrix::identity(2),
        ];
        // convention: apply_gl(apply_gl(T, g1), g2) = apply_gl(T, g2 * g1)
        let seq = apply_gl(&apply_gl(&t, &g1).unwrap(), &g2).unwrap();
        let prod = [
            g2[0].mul(&g1[0]),
            g2[1].mul(&g1[1]),
            g2[2].mul(&g1[2]),
        ];
        assert_eq!(seq, apply_gl(&t, &prod).unwrap());
    }

    #[test]
    fn gl_invariance_of_multilinear_ranks() {
        let t = bclrs_tensor(2).unwrap();
        let g = [
            QMatrix::from_rows(vec![vec![rat(1), rat(2)], vec![rat(0), rat(1)]]),
            QMatrix::from_rows(vec![vec![rat(1), rat(0)], vec![rat(4), rat(1)]]),
            QMatrix::from_rows(vec![vec![rat(3), rat(1)], vec![rat(2), rat(1)]]),
        ];
        // preserving the deleted x^1_1 slot needs gU upper- and gV
        // lower-triangular (no flow from present labels into x^1_1)
        let gt = apply_gl(&t, &g).unwrap();
        assert_eq!(gt.multilinear_ranks(), t.multilinear_ranks());
    }

    #[test]
    fn cyclic_symmetry_rotates_matmul() {
        let t = mat_mul_tensor(3, 2, 4);
        let r = apply_symmetry(&t, &SymmetryMove::Cyclic).unwrap();
        assert_eq!(r, mat_mul_tensor(2, 4, 3));
    }

    #[test]
    fn transpose_cycle_is_involution_and_fixes_matmul() {
        let t = mat_mul_tensor(2, 3, 2);
        let s = apply_symmetry(&t, &SymmetryMove::TransposeCycle).unwrap();
        assert_eq!(s, mat_mul_tensor(3, 2, 2));
        let back = apply_symmetry(&s, &SymmetryMove::TransposeCycle).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn transpose_cycle_moves_bclrs_into_its_flipped_presentation() {
        let t = bclrs_tensor(4).unwrap();
        let s = apply_symmetry(&t, &SymmetryMove::TransposeCycle).unwrap();
        assert_eq!(s.space.dims, [7, 8, 4]);
        let st = s.space.structure.as_ref().unwrap();
        assert_eq!(st.uvw, [2, 4, 2]);
        assert!(st.deleted[0].contains(&(1, 1)));
        assert_eq!(s.num_entries(), 14);
    }

    #[test]
    fn basis_permutation_preserves_matmul() {
        let t = mat_mul_tensor(4, 2, 2);
        let mv = SymmetryMove::Permute(Group::U, vec![2, 3, 0, 1]);
        let s = apply_symmetry(&t, &mv).unwrap();
        assert_eq!(s, t);
    }

    #[test]
    fn label_parse_round_trip() {
        let sp = TensorSpace::bclrs(3);
        assert_eq!(sp.dims, [5, 4, 6]);
        for f in 0..3 {
            for i in 0..sp.dims[f] {
                let s = sp.format_label(f, i);
                assert_eq!(sp.parse_label(&s).unwrap(), (f, i));
            }
        }
        assert!(sp.parse_label("x^1_1").is_err()); // deleted
        assert!(sp.parse_label("q^1_1").is_err());
    }
}

#[cfg(test)]
mod slice_tests {
    use super::*;
    use crate::exact::rational::rat;

    #[test]
    fn symbolic_slice_over_b_is_the_staircase_of_linear_forms() {
        // contracting the one-entry-deleted m x 2 tensor over B gives a
        // (2m-1) x 2m matrix of single-variable linear forms arranged in
        // overlapping 2x2 staircase blocks, of generic rank 2m - 1
        for m in [2usize, 3, 4] {
            let t = bclrs_tensor(m).unwrap();
            let slice = t.symbolic_slice_matrix(1);
            assert_eq!(slice.len(), 2 * m - 1);
            assert_eq!(slice[0].len(), 2 * m);
            let mut nonzero = 0;
            for row in &slice {
                for entry in row {
                    if !entry.is_zero() {
                        nonzero += 1;
                        assert_eq!(entry.iter().count(), 1, "entries are single variables");
                    }
                }
            }
            assert_eq!(nonzero, 4 * m - 2);
            // generic rank: substitute distinct primes for the y-labels
            let assignment: std::collections::BTreeMap<String, Rational> = (0..4)
                .map(|i| {
                    (
                        t.space.format_label(1, i),
                        rat([2, 3, 5, 7][i]),
                    )
                })
                .collect();
            let rows: Vec<Vec<Rational>> = slice
                .iter()
                .map(|row| row.iter().map(|e| e.evaluate(&assignment).unwrap()).collect())
                .collect();
            assert_eq!(crate::linalg::QMatrix::from_rows(rows).rank(), 2 * m - 1);
        }
    }
}
