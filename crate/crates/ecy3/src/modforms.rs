//! Classical level-1 modular form q-expansions and the coefficient fit.
//!
//! The ring of level-1 forms is generated by the Eisenstein series `E4` and
//! `E6`, normalized to constant term 1:
//!
//! ```text
//! E4 = 1 + 240 * sum sigma_3(n) q^n
//! E6 = 1 - 504 * sum sigma_5(n) q^n
//! ```
//!
//! A weight-w form is a rational combination of the monomials `E4^a E6^b`
//! with `4a + 6b = w`; [`fit`] solves for the combination matching a given
//! set of coefficient constraints, exactly.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::qseries::{rat, QSeries, Rat};

/// Divisor power sum: `sigma_k(n) = sum of d^k over positive divisors d of n`.
///
/// Requires `n >= 1`.
pub fn sigma_pow(n: u64, k: u32) -> BigInt {
    assert!(n >= 1, "divisor sums need n >= 1");
    let mut total = BigInt::zero();
    for d in 1..=n {
        if n.is_multiple_of(d) {
            total += BigInt::from(d).pow(k);
        }
    }
    total
}

/// Normalized Eisenstein series of weight 4 or 6, truncated at `prec`.
pub fn eisenstein(weight: u32, prec: usize) -> Result<QSeries> {
    let multiplier = match weight {
        4 => rat(240),
        6 => rat(-504),
        _ => return Err(Error::UnsupportedWeight(weight)),
    };
    let power = weight - 1;
    let mut coeffs = vec![Rat::zero(); prec + 1];
    coeffs[0] = Rat::one();
    for (n, slot) in coeffs.iter_mut().enumerate().skip(1) {
        *slot = &multiplier * Rat::from_integer(sigma_pow(n as u64, power));
    }
    Ok(QSeries::new(coeffs))
}

/// The Euler product `prod_{m>=1} (1 - q^m)`, truncated at `prec`.
///
/// Expanded by the pentagonal number theorem, so only O(sqrt(prec)) terms
/// are touched. No `q^(1/24)` prefactor.
pub fn euler_product(prec: usize) -> QSeries {
    let mut series = QSeries::zero(prec);
    series.set_coeff(0, Rat::one()).expect("prec >= 0");
    let mut k = 1usize;
    loop {
        let lower = k * (3 * k - 1) / 2;
        if lower > prec {
            break;
        }
        let sign = if k % 2 == 1 { rat(-1) } else { rat(1) };
        series
            .set_coeff(lower, sign.clone())
            .expect("bounded above");
        let upper = k * (3 * k + 1) / 2;
        if upper <= prec {
            series.set_coeff(upper, sign).expect("bounded above");
        }
        k += 1;
    }
    series
}

/// The monomial basis `E4^a E6^b` of a given even weight.
#[derive(Clone, Debug)]
pub struct MFormBasis {
    /// The common weight of all basis elements.
    pub weight: u32,
    /// Exponent pairs `(a, b)` with `4a + 6b = weight`, in ascending
    /// lexicographic order.
    pub monomials: Vec<(u32, u32)>,
    /// Expansion of each monomial, aligned with `monomials`.
    pub expansions: Vec<QSeries>,
}

impl MFormBasis {
    /// Number of basis monomials.
    pub fn dimension(&self) -> usize {
        self.monomials.len()
    }

    /// Rank of the matrix whose rows are the basis expansions.
    ///
    /// Equals the dimension exactly when the expansions are linearly
    /// independent up to the working precision.
    pub fn coefficient_rank(&self) -> usize {
        let rows: Vec<Vec<Rat>> = self
            .expansions
            .iter()
            .map(|s| s.coeffs().to_vec())
            .collect();
        linalg::rank(&rows)
    }
}

/// Enumerate the monomials `E4^a E6^b` of the given weight, expanded to `prec`.
///
/// Odd weights (and even weights with no representation, like 2) give an
/// empty basis.
pub fn basis(weight: u32, prec: usize) -> Result<MFormBasis> {
    let mut monomials = Vec::new();
    for a in 0..=weight / 4 {
        let rest = weight - 4 * a;
        if rest.is_multiple_of(6) {
            monomials.push((a, rest / 6));
        }
    }
    let e4 = eisenstein(4, prec)?;
    let e6 = eisenstein(6, prec)?;
    let expansions = monomials
        .iter()
        .map(|&(a, b)| {
            let pa = e4.pow(i64::from(a)).expect("nonnegative power");
            let pb = e6.pow(i64::from(b)).expect("nonnegative power");
            Ok(&pa * &pb)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MFormBasis {
        weight,
        monomials,
        expansions,
    })
}

/// A solved coefficient fit: the basis combination and its expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FitResult {
    /// One rational coefficient per basis monomial, aligned with
    /// [`MFormBasis::monomials`].
    pub coefficients: Vec<Rat>,
    /// The fitted series, `sum coefficients[j] * expansions[j]`.
    pub series: QSeries,
}

/// Pin down the weight-`weight` form whose coefficients at the constrained
/// exponents take the given values.
///
/// Needs exactly one constraint per basis monomial; the underlying linear
/// system is solved by fraction-free elimination, so the result is exact or
/// an error, never approximate.
pub fn fit(weight: u32, constraints: &[(usize, Rat)], prec: usize) -> Result<FitResult> {
    let deepest = constraints.iter().map(|&(e, _)| e).max().unwrap_or(0);
    let working_prec = prec.max(deepest);
    let basis = basis(weight, working_prec)?;
    if constraints.len() != basis.dimension() {
        return Err(Error::DimensionMismatch {
            expected: basis.dimension(),
            got: constraints.len(),
        });
    }

    let matrix: Vec<Vec<Rat>> = constraints
        .iter()
        .map(|&(e, _)| {
            basis
                .expansions
                .iter()
                .map(|s| Ok(s.coeff(e)?.clone()))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let rhs: Vec<Rat> = constraints.iter().map(|(_, v)| v.clone()).collect();
    let coefficients = linalg::solve_exact(&matrix, &rhs)?;

    let mut series = QSeries::zero(working_prec);
    for (c, expansion) in coefficients.iter().zip(&basis.expansions) {
        series = &series + &expansion.scale(c);
    }
    Ok(FitResult {
        coefficients,
        series: series.truncate(prec),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::ratio;

    #[test]
    fn divisor_power_sums() {
        assert_eq!(sigma_pow(1, 3), BigInt::from(1));
        assert_eq!(sigma_pow(2, 3), BigInt::from(9));
        // 1^5 + 2^5 + 3^5 + 6^5
        assert_eq!(sigma_pow(6, 5), BigInt::from(8052));
    }

    #[test]
    fn eisenstein_normalization() {
        let e4 = eisenstein(4, 4).unwrap();
        assert_eq!(e4.coeff(0).unwrap(), &rat(1));
        assert_eq!(e4.coeff(1).unwrap(), &rat(240));
        let e6 = eisenstein(6, 4).unwrap();
        // sigma_5(2) = 33
        assert_eq!(e6.coeff(2).unwrap(), &rat(-504 * 33));
        assert_eq!(eisenstein(8, 4), Err(Error::UnsupportedWeight(8)));
    }

    /// Direct product oracle: multiply out (1-q)(1-q^2)... term by term.
    fn euler_by_direct_product(prec: usize) -> QSeries {
        let mut product = QSeries::one(prec);
        for m in 1..=prec {
            let factor = QSeries::monomial(rat(-1), m, prec);
            product = &product * &(&QSeries::one(prec) + &factor);
        }
        product
    }

    #[test]
    fn euler_product_matches_direct_expansion() {
        let sparse = euler_product(40);
        assert_eq!(sparse, euler_by_direct_product(40));
        let prefix: Vec<Rat> = sparse.coeffs()[..6].to_vec();
        let expected: Vec<Rat> = [1, -1, -1, 0, 0, 1].iter().map(|&c| rat(c)).collect();
        assert_eq!(prefix, expected);
    }

    #[test]
    fn euler_product_times_inverse_is_one() {
        let eta = euler_product(32);
        assert_eq!(&eta * &eta.pow(-1).unwrap(), QSeries::one(32));
    }

    #[test]
    fn eta_inverse_36_starts_at_one() {
        let bl = euler_product(8).pow(-36).unwrap();
        assert_eq!(bl.coeff(0).unwrap(), &rat(1));
        assert_eq!(bl.coeff(1).unwrap(), &rat(36));
    }

    #[test]
    fn basis_dimensions() {
        assert_eq!(basis(16, 4).unwrap().monomials, vec![(1, 2), (4, 0)]);
        assert_eq!(basis(4, 4).unwrap().monomials, vec![(1, 0)]);
        assert!(basis(2, 4).unwrap().monomials.is_empty());
        assert_eq!(basis(0, 4).unwrap().monomials, vec![(0, 0)]);
    }

    #[test]
    fn weight_sixteen_fit_recovers_the_anchored_form() {
        let fit = fit(16, &[(0, rat(3)), (2, rat(184032))], 8).unwrap();
        let basis = basis(16, 0).unwrap();
        let by_monomial: Vec<((u32, u32), Rat)> = basis
            .monomials
            .iter()
            .copied()
            .zip(fit.coefficients.clone())
            .collect();
        assert!(by_monomial.contains(&((4, 0), ratio(31, 48))));
        assert!(by_monomial.contains(&((1, 2), ratio(113, 48))));
        assert_eq!(fit.series.coeff(1).unwrap(), &rat(-1188));
    }

    #[test]
    fn weight_four_fit_is_e4() {
        let fit = fit(4, &[(0, rat(1))], 6).unwrap();
        assert_eq!(fit.coefficients, vec![rat(1)]);
        assert_eq!(fit.series, eisenstein(4, 6).unwrap());
    }

    #[test]
    fn fit_reproduces_every_constraint() {
        let constraints = [(0, ratio(5, 7)), (1, rat(-2))];
        let fit = fit(12, &constraints, 10).unwrap();
        for (e, v) in &constraints {
            assert_eq!(fit.series.coeff(*e).unwrap(), v);
        }
    }

    #[test]
    fn fit_error_paths() {
        assert_eq!(
            fit(16, &[(0, rat(3))], 4),
            Err(Error::DimensionMismatch {
                expected: 2,
                got: 1
            })
        );
        // Two constraints on the same exponent cannot be independent.
        assert_eq!(
            fit(16, &[(0, rat(3)), (0, rat(3))], 4),
            Err(Error::SingularSystem)
        );
    }

    #[test]
    fn discriminant_normalization() {
        let e4 = eisenstein(4, 6).unwrap();
        let e6 = eisenstein(6, 6).unwrap();
        let delta = &e4.pow(3).unwrap() - &e6.pow(2).unwrap();
        assert_eq!(delta.coeff(0).unwrap(), &rat(0));
        assert_eq!(delta.coeff(1).unwrap(), &rat(1728));
    }

    #[test]
    fn bases_have_full_rank_through_weight_24() {
        for weight in (0..=24).step_by(2) {
            let b = basis(weight, 24).unwrap();
            assert_eq!(b.coefficient_rank(), b.dimension(), "weight {weight}");
        }
    }
}
