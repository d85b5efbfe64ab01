//! Exact linear algebra on small dense systems.
//!
//! Rows are cleared of denominators and eliminated with the fraction-free
//! Bareiss scheme over big integers, so there is never a tolerance question:
//! a pivot is either zero or it is not.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::qseries::Rat;

/// Multiply each row (and its right-hand side, when given) by the LCM of its
/// denominators, producing an integer matrix with the same solution set.
fn clear_denominators(rows: &[Vec<Rat>], rhs: Option<&[Rat]>) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
    let mut int_rows = Vec::with_capacity(rows.len());
    let mut int_rhs = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let mut lcm = BigInt::one();
        for entry in row {
            lcm = lcm.lcm(entry.denom());
        }
        if let Some(rhs) = rhs {
            lcm = lcm.lcm(rhs[i].denom());
        }
        let scale = |x: &BigRational| -> BigInt {
            let scaled = x * BigRational::from_integer(lcm.clone());
            debug_assert!(scaled.is_integer());
            scaled.to_integer()
        };
        int_rows.push(row.iter().map(scale).collect());
        if let Some(rhs) = rhs {
            int_rhs.push(scale(&rhs[i]));
        }
    }
    (int_rows, int_rhs)
}

/// One Bareiss elimination step: eliminate column `col` below row `piv`.
/// `prev` is the previous pivot (1 initially); every division is exact.
fn bareiss_eliminate(m: &mut [Vec<BigInt>], piv: usize, col: usize, prev: &BigInt) {
    let pivot_row = m[piv].clone();
    let pivot = pivot_row[col].clone();
    for row in m.iter_mut().skip(piv + 1) {
        let factor = row[col].clone();
        for (entry, pivot_entry) in row.iter_mut().zip(&pivot_row) {
            let num = &pivot * &*entry - &factor * pivot_entry;
            let (q, r) = num.div_rem(prev);
            debug_assert!(r.is_zero(), "Bareiss division must be exact");
            *entry = q;
        }
    }
}

/// Solve the square system `matrix * x = rhs` exactly.
///
/// Fails with [`Error::SingularSystem`] when the matrix is not invertible.
pub(crate) fn solve_exact(matrix: &[Vec<Rat>], rhs: &[Rat]) -> Result<Vec<Rat>> {
    let n = matrix.len();
    assert_eq!(rhs.len(), n);
    if n == 0 {
        return Ok(Vec::new());
    }
    assert!(matrix.iter().all(|row| row.len() == n));

    // Augmented integer matrix [A | b].
    let (mut aug, int_rhs) = clear_denominators(matrix, Some(rhs));
    for (row, b) in aug.iter_mut().zip(int_rhs) {
        row.push(b);
    }

    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot_row = (k..n)
            .find(|&r| !aug[r][k].is_zero())
            .ok_or(Error::SingularSystem)?;
        aug.swap(k, pivot_row);
        bareiss_eliminate(&mut aug, k, k, &prev);
        prev = aug[k][k].clone();
    }

    // Exact rational back substitution on the triangular system.
    let mut solution = vec![Rat::zero(); n];
    for i in (0..n).rev() {
        let mut acc = BigRational::from_integer(aug[i][n].clone());
        for j in i + 1..n {
            acc -= BigRational::from_integer(aug[i][j].clone()) * &solution[j];
        }
        solution[i] = acc / BigRational::from_integer(aug[i][i].clone());
    }
    Ok(solution)
}

/// Rank of a rectangular rational matrix.
pub(crate) fn rank(rows: &[Vec<Rat>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let (mut m, _) = clear_denominators(rows, None);
    let cols = m[0].len();
    let mut prev = BigInt::one();
    let mut piv = 0;
    for col in 0..cols {
        if piv == m.len() {
            break;
        }
        let Some(pivot_row) = (piv..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(piv, pivot_row);
        bareiss_eliminate(&mut m, piv, col, &prev);
        prev = m[piv][col].clone();
        piv += 1;
    }
    piv
}
