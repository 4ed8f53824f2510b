//! Sparse Laurent polynomials in one formal variable `t`.
//!
//! Coefficients are stored in a `BTreeMap<i64, Rational>` keyed by exponent,
//! which may be negative. Invariants:
//! - no explicit zero coefficients are ever stored,
//! - the zero polynomial has empty support,
//! - `valuation` is the minimum stored exponent (`None` for zero).

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::exact::rational::{rat, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(0, rat(1))
    }

    /// `c * t^k`.
    pub fn monomial(k: i64, c: Rational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(k, c);
        }
        LaurentPoly { coeffs }
    }

    pub fn constant(c: Rational) -> Self {
        LaurentPoly::monomial(0, c)
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, Rational)>) -> Self {
        let mut p = LaurentPoly::zero();
        for (k, c) in pairs {
            p.add_term(k, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Some((exponent, coefficient)) when the support is a single monomial.
    pub fn as_monomial(&self) -> Option<(i64, &Rational)> {
        if self.coeffs.len() == 1 {
            self.coeffs.iter().next().map(|(k, c)| (*k, c))
        } else {
            None
        }
    }

    /// Minimum exponent with nonzero coefficient; `None` for the zero polynomial.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Coefficient of `t^k` (zero when absent).
    pub fn coefficient(&self, k: i64) -> Rational {
        self.coeffs.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    fn add_term(&mut self, k: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&k) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.coeffs.remove(&k);
                }
            }
            None => {
                self.coeffs.insert(k, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.add_term(*k, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = LaurentPoly::zero();
        for (ka, ca) in &self.coeffs {
            for (kb, cb) in &other.coeffs {
                out.add_term(ka + kb, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Formal derivative d/dt.
    pub fn derivative(&self) -> Self {
        let mut out = LaurentPoly::zero();
        for (k, c) in &self.coeffs {
            if *k != 0 {
                out.add_term(k - 1, c * rat(*k));
            }
        }
        out
    }

    /// Exact evaluation at a nonzero rational point (nonzero because of
    /// possible negative exponents; zero is allowed when the valuation is
    /// non-negative).
    pub fn evaluate(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (k, c) in &self.coeffs {
            acc += c * pow_rational(x, *k);
        }
        acc
    }
}

fn pow_rational(x: &Rational, k: i64) -> Rational {
    if k >= 0 {
        num_traits::pow::Pow::pow(x, k as u64)
    } else {
        num_traits::pow::Pow::pow(&x.recip(), (-k) as u64)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.coeffs {
            let (sign, mag) = if c < &Rational::zero() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let show_coeff = mag != rat(1) || *k == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "{}t", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}t^{}", if show_coeff { "*" } else { "" }, k)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::ratio;
    use crate::rng::SplitMix64;

    fn t() -> LaurentPoly {
        LaurentPoly::monomial(1, rat(1))
    }

    #[test]
    fn difference_of_squares() {
        let p = t().add(&LaurentPoly::one());
        let q = t().sub(&LaurentPoly::one());
        let expect = LaurentPoly::from_pairs([(2, rat(1)), (0, rat(-1))]);
        assert_eq!(p.mul(&q), expect);
    }

    #[test]
    fn monomial_exponent_addition() {
        let a = LaurentPoly::monomial(-6, rat(1));
        let b = LaurentPoly::monomial(3, rat(1));
        assert_eq!(a.mul(&b), LaurentPoly::monomial(-3, rat(1)));
    }

    #[test]
    fn add_cancels_to_canonical_form() {
        let h = LaurentPoly::monomial(2, ratio(1, 2));
        let s = h.add(&h);
        assert_eq!(s, LaurentPoly::monomial(2, rat(1)));
        assert_eq!(h.sub(&h), LaurentPoly::zero());
        assert_eq!(h.sub(&h).support_len(), 0);
    }

    #[test]
    fn valuation_cases() {
        let p = LaurentPoly::from_pairs([(3, rat(1)), (5, rat(2))]);
        assert_eq!(p.valuation(), Some(3));
        assert_eq!(LaurentPoly::zero().valuation(), None);
        let q = LaurentPoly::from_pairs([(-6, rat(1)), (0, rat(1))]);
        assert_eq!(q.valuation(), Some(-6));
    }

    #[test]
    fn coefficient_lookup() {
        let p = LaurentPoly::from_pairs([(1, rat(3)), (2, rat(-1))]);
        assert_eq!(p.coefficient(1), rat(3));
        assert_eq!(p.coefficient(0), rat(0));
        let q = LaurentPoly::from_pairs([(-2, rat(1)), (-1, rat(5))]);
        assert_eq!(q.coefficient(-1), rat(5));
    }

    #[test]
    fn derivative_cases() {
        assert_eq!(
            LaurentPoly::monomial(2, rat(1)).derivative(),
            LaurentPoly::monomial(1, rat(2))
        );
        assert_eq!(LaurentPoly::constant(rat(5)).derivative(), LaurentPoly::zero());
        assert_eq!(
            LaurentPoly::monomial(-1, rat(1)).derivative(),
            LaurentPoly::monomial(-2, rat(-1))
        );
    }

    fn random_poly(rng: &mut SplitMix64) -> LaurentPoly {
        let terms = rng.below(4);
        let mut p = LaurentPoly::zero();
        for _ in 0..=terms {
            let k = rng.below(9) as i64 - 4;
            let c = ratio(rng.below(11) as i64 - 5, 1 + rng.below(4) as i64);
            p = p.add(&LaurentPoly::monomial(k, c));
        }
        p
    }

    #[test]
    fn add_sub_round_trip_random() {
        let mut rng = SplitMix64::new(11);
        for _ in 0..200 {
            let p = random_poly(&mut rng);
            let q = random_poly(&mut rng);
            assert_eq!(p.add(&q).sub(&q), p);
        }
    }

    #[test]
    fn valuation_additive_random() {
        let mut rng = SplitMix64::new(12);
        let mut checked = 0;
        while checked < 200 {
            let p = random_poly(&mut rng);
            let q = random_poly(&mut rng);
            if p.is_zero() || q.is_zero() {
                continue;
            }
            assert_eq!(
                p.mul(&q).valuation(),
                Some(p.valuation().unwrap() + q.valuation().unwrap())
            );
            checked += 1;
        }
    }

    #[test]
    fn product_rule_random() {
        let mut rng = SplitMix64::new(13);
        for _ in 0..200 {
            let p = random_poly(&mut rng);
            let q = random_poly(&mut rng);
            let lhs = p.mul(&q).derivative();
            let rhs = p.derivative().mul(&q).add(&p.mul(&q.derivative()));
            assert_eq!(lhs, rhs);
        }
    }
}
