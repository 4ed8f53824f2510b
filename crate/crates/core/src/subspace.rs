//! Linear subspaces of a coordinate space, in canonical form.
//!
//! The basis is kept in reduced row echelon form with lexicographic pivot
//! order, so two subspaces are equal exactly when their stored data is
//! equal.

use num_traits::Zero;

use crate::exact::rational::Rational;
use crate::linalg::QMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSubspace {
    pub ambient: usize,
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl LinearSubspace {
    pub fn zero(ambient: usize) -> Self {
        LinearSubspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::from_vectors(
            ambient,
            (0..ambient)
                .map(|i| {
                    let mut v = vec![Rational::zero(); ambient];
                    v[i] = Rational::from_integer(1.into());
                    v
                })
                .collect(),
        )
    }

    pub fn from_vectors(ambient: usize, vectors: Vec<Vec<Rational>>) -> Self {
        debug_assert!(vectors.iter().all(|v| v.len() == ambient));
        let mut m = QMatrix::from_rows(vectors);
        if m.rows == 0 {
            return Self::zero(ambient);
        }
        let pivots = m.rref();
        let basis = (0..pivots.len()).map(|i| m.row(i).to_vec()).collect();
        LinearSubspace {
            ambient,
            basis,
            pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residual of `v` after eliminating against the basis; zero iff `v`
    /// lies in the subspace.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if !out[p].is_zero() {
                let f = out[p].clone();
                for (o, b) in out.iter_mut().zip(row) {
                    *o -= &f * b;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Span of the union.
    pub fn sum(&self, other: &Self) -> Self {
        assert_eq!(self.ambient, other.ambient);
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Self::from_vectors(self.ambient, vs)
    }

    /// Basis of the annihilator: functionals (as coordinate vectors) that
    /// vanish on the subspace. There are `ambient - dim` of them.
    pub fn equations(&self) -> Vec<Vec<Rational>> {
        if self.basis.is_empty() {
            return coordinate_vectors(self.ambient);
        }
        QMatrix::from_rows(self.basis.clone()).kernel()
    }

    /// The subspace of vectors supported on the given coordinates, expressed
    /// in those coordinates (in the given order).
    pub fn restrict_to_coordinates(&self, coords: &[usize]) -> LinearSubspace {
        let in_block: Vec<bool> = {
            let mut b = vec![false; self.ambient];
            for &c in coords {
                b[c] = true;
            }
            b
        };
        let outside: Vec<usize> = (0..self.ambient).filter(|i| !in_block[*i]).collect();
        if self.basis.is_empty() {
            return LinearSubspace::zero(coords.len());
        }
        // combinations of basis rows vanishing outside the block
        let combos = if outside.is_empty() {
            coordinate_vectors(self.dim())
        } else {
            QMatrix::from_rows(
                self.basis
                    .iter()
                    .map(|row| outside.iter().map(|&j| row[j].clone()).collect())
                    .collect(),
            )
            .transpose()
            .kernel()
        };
        let vectors = combos
            .into_iter()
            .map(|c| {
                coords
                    .iter()
                    .map(|&col| {
                        let mut acc = Rational::zero();
                        for (ci, row) in c.iter().zip(&self.basis) {
                            if !ci.is_zero() {
                                acc += ci * &row[col];
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        LinearSubspace::from_vectors(coords.len(), vectors)
    }
}

fn coordinate_vectors(n: usize) -> Vec<Vec<Rational>> {
    (0..n)
        .map(|i| {
            let mut v = vec![Rational::zero(); n];
            v[i] = Rational::from_integer(1.into());
            v
        })
        .collect()
}
