//! Truncated formal power series with exact rational coefficients.
//!
//! A [`QSeries`] stores the coefficients of `q^0 .. q^prec` inclusive, as
//! arbitrary-precision rationals in lowest terms. Binary operations on
//! series of different precisions truncate to the minimum precision, so a
//! result is only ever claimed where both inputs are known. There is no
//! floating point anywhere, and no formal `q^(1/24)` prefactor: the Euler
//! product convention is used throughout the crate.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar: arbitrary-precision integers, always reduced to
/// lowest terms with positive denominator (enforced by the representation).
pub type Rat = BigRational;

/// Integer `n` as a [`Rat`].
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Fraction `num/den` as a [`Rat`]. Panics if `den` is zero.
pub fn ratio(num: i64, den: i64) -> Rat {
    Rat::new(num.into(), den.into())
}

/// A formal power series truncated at order `prec` (inclusive).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<Rat>,
}

impl QSeries {
    /// Build a series from its coefficient list; the truncation order is
    /// `coeffs.len() - 1`. Panics on an empty list (order would be negative).
    pub fn new(coeffs: Vec<Rat>) -> QSeries {
        assert!(
            !coeffs.is_empty(),
            "a series needs at least the q^0 coefficient"
        );
        QSeries { coeffs }
    }

    /// Series with the given integer coefficients, mostly for tests.
    pub fn from_ints(coeffs: &[i64]) -> QSeries {
        QSeries::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    /// The zero series truncated at `prec`.
    pub fn zero(prec: usize) -> QSeries {
        QSeries {
            coeffs: vec![Rat::zero(); prec + 1],
        }
    }

    /// The constant series 1.
    pub fn one(prec: usize) -> QSeries {
        QSeries::constant(Rat::one(), prec)
    }

    /// The constant series `c`.
    pub fn constant(c: Rat, prec: usize) -> QSeries {
        let mut coeffs = vec![Rat::zero(); prec + 1];
        coeffs[0] = c;
        QSeries { coeffs }
    }

    /// The monomial `c * q^exp`, zero if `exp > prec`.
    pub fn monomial(c: Rat, exp: usize, prec: usize) -> QSeries {
        let mut coeffs = vec![Rat::zero(); prec + 1];
        if exp <= prec {
            coeffs[exp] = c;
        }
        QSeries { coeffs }
    }

    /// Truncation order (inclusive): coefficients of `q^0 .. q^prec` are known.
    pub fn prec(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Exact coefficient of `q^n`.
    pub fn coeff(&self, n: usize) -> Result<&Rat> {
        self.coeffs.get(n).ok_or(Error::OutOfRange {
            index: n,
            prec: self.prec(),
        })
    }

    /// All stored coefficients, indexed by exponent.
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Overwrite the coefficient of `q^n`.
    pub fn set_coeff(&mut self, n: usize, c: Rat) -> Result<()> {
        let prec = self.prec();
        match self.coeffs.get_mut(n) {
            Some(slot) => {
                *slot = c;
                Ok(())
            }
            None => Err(Error::OutOfRange { index: n, prec }),
        }
    }

    /// Copy truncated to `min(self.prec(), prec)`.
    pub fn truncate(&self, prec: usize) -> QSeries {
        let keep = prec.min(self.prec());
        QSeries {
            coeffs: self.coeffs[..=keep].to_vec(),
        }
    }

    /// Coefficientwise scalar multiple.
    pub fn scale(&self, c: &Rat) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplicative inverse up to the same truncation order.
    ///
    /// Solves `self * inv = 1` coefficient by coefficient; fails with
    /// [`Error::NonInvertible`] when the constant term is zero.
    pub fn inverse(&self) -> Result<QSeries> {
        if self.coeffs[0].is_zero() {
            return Err(Error::NonInvertible);
        }
        let lead = self.coeffs[0].recip();
        let prec = self.prec();
        let mut inv = vec![Rat::zero(); prec + 1];
        inv[0] = lead.clone();
        for n in 1..=prec {
            let mut acc = Rat::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &inv[n - k];
                }
            }
            inv[n] = -(&lead * acc);
        }
        Ok(QSeries { coeffs: inv })
    }

    /// Integer power, with negative exponents meaning powers of the inverse.
    ///
    /// `pow(0)` is the constant series 1; negative `k` requires a nonzero
    /// constant term.
    pub fn pow(&self, k: i64) -> Result<QSeries> {
        if k == 0 {
            return Ok(QSeries::one(self.prec()));
        }
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut exp = k.unsigned_abs();
        let mut result = QSeries::one(self.prec());
        let mut square = base;
        loop {
            if exp & 1 == 1 {
                result = &result * &square;
            }
            exp >>= 1;
            if exp == 0 {
                break;
            }
            square = &square * &square;
        }
        Ok(result)
    }

    /// True if every stored coefficient is zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }
}

impl Add for &QSeries {
    type Output = QSeries;

    fn add(self, rhs: &QSeries) -> QSeries {
        let prec = self.prec().min(rhs.prec());
        let coeffs = (0..=prec)
            .map(|n| &self.coeffs[n] + &rhs.coeffs[n])
            .collect();
        QSeries { coeffs }
    }
}

impl Sub for &QSeries {
    type Output = QSeries;

    fn sub(self, rhs: &QSeries) -> QSeries {
        let prec = self.prec().min(rhs.prec());
        let coeffs = (0..=prec)
            .map(|n| &self.coeffs[n] - &rhs.coeffs[n])
            .collect();
        QSeries { coeffs }
    }
}

impl Mul for &QSeries {
    type Output = QSeries;

    /// Cauchy product truncated at the minimum precision of the factors.
    fn mul(self, rhs: &QSeries) -> QSeries {
        let prec = self.prec().min(rhs.prec());
        let mut coeffs = vec![Rat::zero(); prec + 1];
        for (i, a) in self.coeffs.iter().take(prec + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(prec + 1 - i).enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        QSeries { coeffs }
    }
}

impl Neg for &QSeries {
    type Output = QSeries;

    fn neg(self) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            if n == 0 {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                if n == 1 {
                    write!(f, "q")?;
                } else {
                    write!(f, "q^{n}")?;
                }
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.prec() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn add_cancels() {
        let a = QSeries::from_ints(&[1, 1]);
        let b = QSeries::from_ints(&[1, -1]);
        assert_eq!(&a + &b, QSeries::from_ints(&[2, 0]));
    }

    #[test]
    fn add_zero_is_identity() {
        let s = QSeries::from_ints(&[3, -5, 7]);
        assert_eq!(&s + &QSeries::zero(2), s);
    }

    #[test]
    fn mul_difference_of_squares() {
        let a = QSeries::from_ints(&[1, 1, 0]);
        let b = QSeries::from_ints(&[1, -1, 0]);
        assert_eq!(&a * &b, QSeries::from_ints(&[1, 0, -1]));
    }

    #[test]
    fn mul_one_is_identity() {
        let s = QSeries::from_ints(&[4, 0, -2, 9]);
        assert_eq!(&s * &QSeries::one(3), s);
    }

    #[test]
    fn mul_truncates_to_min_precision() {
        let a = QSeries::from_ints(&[1, 2, 3, 4, 5]);
        let b = QSeries::from_ints(&[1, 1]);
        assert_eq!((&a * &b).prec(), 1);
        assert_eq!(&a * &b, QSeries::from_ints(&[1, 3]));
    }

    #[test]
    fn geometric_series_inverse() {
        let one_minus_q = QSeries::from_ints(&[1, -1, 0, 0, 0, 0]);
        let geo = one_minus_q.pow(-1).unwrap();
        assert_eq!(geo, QSeries::from_ints(&[1, 1, 1, 1, 1, 1]));
    }

    #[test]
    fn pow_zero_is_one() {
        let s = QSeries::from_ints(&[7, -3, 2]);
        assert_eq!(s.pow(0).unwrap(), QSeries::one(2));
        assert_eq!(QSeries::zero(2).pow(0).unwrap(), QSeries::one(2));
    }

    #[test]
    fn negative_pow_needs_a_unit() {
        let s = QSeries::from_ints(&[0, 1, 0]);
        assert_eq!(s.pow(-2), Err(Error::NonInvertible));
        assert_eq!(s.inverse(), Err(Error::NonInvertible));
    }

    #[test]
    fn coeff_extraction_and_range() {
        let s = QSeries::from_ints(&[1, 2]);
        assert_eq!(s.coeff(1).unwrap(), &rat(2));
        assert_eq!(s.coeff(2), Err(Error::OutOfRange { index: 2, prec: 1 }));
    }

    #[test]
    fn rational_coefficients_stay_exact() {
        let s = QSeries::new(vec![ratio(31, 48), ratio(113, 48)]);
        assert_eq!(&(s.coeff(0).unwrap() + s.coeff(1).unwrap()), &rat(3));
    }

    #[test]
    fn display_is_readable() {
        let s = QSeries::from_ints(&[3, -1188, 184032]);
        assert_eq!(format!("{s}"), "3 - 1188*q + 184032*q^2 + O(q^3)");
        assert_eq!(format!("{}", QSeries::zero(1)), "0 + O(q^2)");
    }

    fn small_rat() -> impl Strategy<Value = Rat> {
        (-9i64..=9, 1i64..=9).prop_map(|(n, d)| ratio(n, d))
    }

    fn small_series() -> impl Strategy<Value = QSeries> {
        proptest::collection::vec(small_rat(), 1..=9).prop_map(QSeries::new)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_series(), b in small_series(), c in small_series()) {
            let prec = a.prec().min(b.prec()).min(c.prec());
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!((&a + &b).truncate(prec), (&b + &a).truncate(prec));
            prop_assert_eq!((&a * &b).truncate(prec), (&b * &a).truncate(prec));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn unit_times_inverse_is_one(mut a in small_series()) {
            if a.coeff(0).unwrap().is_zero() {
                a.set_coeff(0, rat(1)).unwrap();
            }
            let inv = a.inverse().unwrap();
            prop_assert_eq!(&a * &inv, QSeries::one(a.prec()));
            prop_assert_eq!(&a * &a.pow(-1).unwrap(), QSeries::one(a.prec()));
        }

        #[test]
        fn truncation_commutes_with_ops(a in small_series(), b in small_series(), cut in 0usize..6) {
            let sum_then_cut = (&a + &b).truncate(cut);
            let cut_then_sum = &a.truncate(cut) + &b.truncate(cut);
            prop_assert_eq!(sum_then_cut, cut_then_sum);

            let prod_then_cut = (&a * &b).truncate(cut);
            let cut_then_prod = &a.truncate(cut) * &b.truncate(cut);
            prop_assert_eq!(prod_then_cut, cut_then_prod);
        }

        #[test]
        fn pow_matches_repeated_multiplication(a in small_series(), k in 1u32..5) {
            let mut expected = QSeries::one(a.prec());
            for _ in 0..k {
                expected = &expected * &a;
            }
            prop_assert_eq!(a.pow(i64::from(k)).unwrap(), expected);
        }
    }
}
