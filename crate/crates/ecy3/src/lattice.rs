//! Integral lattices of small rank and the Neron-Severi arithmetic of
//! elliptic surfaces.
//!
//! The negative definite lattices here (A1, A2 and their orthogonal sums)
//! are searched exhaustively: the box bound from the inverse Gram diagonal
//! is exact, the ranks are at most three, and the norms stay small, so the
//! obviously-correct search doubles as the oracle for every theta-series
//! coefficient.
//!
//! Alongside the definite lattices, [`SurfaceClass`] carries divisor classes
//! on an elliptic surface in the basis (sigma, z, f) with the fixed pairing
//! `sigma^2 = z^2 = -3`, `f^2 = 0`, `f.sigma = f.z = 1` and a declared value
//! of `sigma.z`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::qseries::{rat, QSeries, Rat};

/// An integral symmetric bilinear form given by its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramLattice {
    gram: Vec<Vec<i64>>,
    negative_definite: bool,
}

impl GramLattice {
    /// Wrap a Gram matrix, checking symmetry and recording definiteness.
    pub fn new(gram: Vec<Vec<i64>>) -> Result<GramLattice> {
        let rank = gram.len();
        assert!(rank > 0, "lattice rank must be positive");
        assert!(
            gram.iter().all(|row| row.len() == rank),
            "gram matrix must be square"
        );
        for (i, row) in gram.iter().enumerate() {
            for (j, entry) in row.iter().enumerate().take(i) {
                if *entry != gram[j][i] {
                    return Err(Error::AsymmetricGram);
                }
            }
        }
        let negative_definite = leading_minors_alternate(&gram);
        Ok(GramLattice {
            gram,
            negative_definite,
        })
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    /// True when the leading principal minors alternate in sign starting
    /// negative, i.e. the form is negative definite.
    pub fn is_negative_definite(&self) -> bool {
        self.negative_definite
    }

    /// The norm `v^T G v` of an integer coordinate vector.
    pub fn norm(&self, v: &[i64]) -> i64 {
        assert_eq!(v.len(), self.rank());
        let mut total = 0i64;
        for (i, &vi) in v.iter().enumerate() {
            for (j, &vj) in v.iter().enumerate() {
                total += self.gram[i][j] * vi * vj;
            }
        }
        total
    }

    /// Block-diagonal orthogonal sum of two lattices.
    pub fn direct_sum(&self, other: &GramLattice) -> GramLattice {
        let n = self.rank();
        let m = other.rank();
        let mut gram = vec![vec![0i64; n + m]; n + m];
        for (target, source) in gram.iter_mut().zip(&self.gram) {
            target[..n].copy_from_slice(source);
        }
        for (target, source) in gram[n..].iter_mut().zip(&other.gram) {
            target[n..].copy_from_slice(source);
        }
        GramLattice::new(gram).expect("blocks of symmetric matrices are symmetric")
    }

    /// All vectors of exactly the given (negative) norm, in lexicographic
    /// coordinate order.
    pub fn enumerate_by_norm(&self, norm_value: i64) -> Result<Vec<LatticeVec>> {
        if !self.negative_definite {
            return Err(Error::IndefiniteLattice);
        }
        if norm_value >= 0 {
            return Err(Error::NonNegativeNorm(norm_value));
        }
        let mut found = Vec::new();
        self.scan_box(-norm_value, |v, norm| {
            if norm == norm_value {
                found.push(LatticeVec { coords: v.to_vec() });
            }
        });
        debug_assert!(found.windows(2).all(|w| w[0] < w[1]));
        Ok(found)
    }

    /// Theta series `sum_v q^(|norm(v)|/2)` truncated at `prec`.
    ///
    /// Requires an even negative definite form; the constant term 1 is the
    /// zero vector.
    pub fn theta_series(&self, prec: usize) -> Result<QSeries> {
        if !self.negative_definite {
            return Err(Error::IndefiniteLattice);
        }
        // An integral form is even iff its diagonal is, and then every
        // |norm|/2 exponent is an integer.
        for i in 0..self.rank() {
            if self.gram[i][i] % 2 != 0 {
                return Err(Error::OddLattice(self.gram[i][i]));
            }
        }
        let mut counts = vec![0u64; prec + 1];
        self.scan_box(2 * prec as i64, |_, norm| {
            let r = (-norm) / 2;
            if r >= 0 && (r as usize) < counts.len() {
                counts[r as usize] += 1;
            }
        });
        Ok(QSeries::new(
            counts.into_iter().map(|c| rat(c as i64)).collect(),
        ))
    }

    /// Visit every coordinate vector in the exact search box for norms of
    /// absolute value at most `max_abs_norm`, in lexicographic order.
    fn scan_box(&self, max_abs_norm: i64, mut visit: impl FnMut(&[i64], i64)) {
        let bounds = self.coordinate_bounds(max_abs_norm);
        let rank = self.rank();
        let mut v: Vec<i64> = bounds.iter().map(|b| -b).collect();
        'outer: loop {
            visit(&v, self.norm(&v));
            // Odometer step: bump the last coordinate that has room, reset
            // everything after it.
            for i in (0..rank).rev() {
                if v[i] < bounds[i] {
                    v[i] += 1;
                    for j in i + 1..rank {
                        v[j] = -bounds[j];
                    }
                    continue 'outer;
                }
            }
            return;
        }
    }

    /// Per-coordinate bound for vectors with `|v^T G v| <= max_abs_norm`:
    /// writing P = -G (positive definite), `v_i^2 <= max_abs_norm * (P^-1)_ii`.
    fn coordinate_bounds(&self, max_abs_norm: i64) -> Vec<i64> {
        assert!(max_abs_norm >= 0);
        let rank = self.rank();
        let positive: Vec<Vec<BigInt>> = self
            .gram
            .iter()
            .map(|row| row.iter().map(|&x| BigInt::from(-x)).collect())
            .collect();
        let det = int_det(&positive);
        debug_assert!(det.is_positive());
        (0..rank)
            .map(|i| {
                let minor = int_det(&delete_row_col(&positive, i));
                floor_sqrt_ratio(&(BigInt::from(max_abs_norm) * minor), &det)
            })
            .collect()
    }
}

/// Integer coordinates of a lattice vector; the derived ordering is
/// lexicographic.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LatticeVec {
    pub coords: Vec<i64>,
}

/// The negative definite root lattice A1 = [[-2]] or A2 = [[-2,1],[1,-2]].
pub fn root_lattice_a(n: u32) -> Result<GramLattice> {
    match n {
        1 => GramLattice::new(vec![vec![-2]]),
        2 => GramLattice::new(vec![vec![-2, 1], vec![1, -2]]),
        _ => Err(Error::UnsupportedRank(n)),
    }
}

/// The vector-counting constraints attached to isolated Noether-Lefschetz
/// intersections at nodes and cusps of the dual discriminant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstrainedKind {
    /// Pairs `(a, b)` with `a != 0`, `b != 0` and `a^2 + b^2 = r`.
    A1A1BothNonzero,
    /// Pairs `(a, b)` with `a != 0`, `b != 0`, `a != b` and `a^2 - ab + b^2 = r`.
    A2DistinctNonzero,
}

/// Count the constrained coordinate pairs for a given positive target `r`.
pub fn constrained_count(kind: ConstrainedKind, r: u64) -> u64 {
    assert!(r >= 1);
    // Both quadratic forms satisfy form(a,b) >= (a^2+b^2)/2.
    let bound = (2 * r).isqrt() as i64 + 1;
    let r = r as i64;
    let mut count = 0;
    for a in -bound..=bound {
        for b in -bound..=bound {
            if a == 0 || b == 0 {
                continue;
            }
            let hit = match kind {
                ConstrainedKind::A1A1BothNonzero => a * a + b * b == r,
                ConstrainedKind::A2DistinctNonzero => a != b && a * a - a * b + b * b == r,
            };
            if hit {
                count += 1;
            }
        }
    }
    count
}

/// A divisor class on an elliptic surface in the basis (sigma, z, f).
///
/// `sigma` is a fixed section class, `z` the zero section, `f` the fiber.
/// The pairing depends on the declared intersection number `sigma.z`, so
/// classes only pair with classes carrying the same declaration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurfaceClass {
    pub sigma_coef: i64,
    pub z_coef: i64,
    pub f_coef: i64,
    /// The declared intersection number `sigma . z` (nonnegative).
    pub sigma_dot_z: i64,
}

impl SurfaceClass {
    pub fn new(sigma_coef: i64, z_coef: i64, f_coef: i64, sigma_dot_z: i64) -> SurfaceClass {
        assert!(
            sigma_dot_z >= 0,
            "sigma.z is a nonnegative intersection number"
        );
        SurfaceClass {
            sigma_coef,
            z_coef,
            f_coef,
            sigma_dot_z,
        }
    }

    /// The section class sigma itself.
    pub fn sigma(sigma_dot_z: i64) -> SurfaceClass {
        SurfaceClass::new(1, 0, 0, sigma_dot_z)
    }

    /// The zero-section class z.
    pub fn zero_section(sigma_dot_z: i64) -> SurfaceClass {
        SurfaceClass::new(0, 1, 0, sigma_dot_z)
    }

    /// The fiber class f.
    pub fn fiber(sigma_dot_z: i64) -> SurfaceClass {
        SurfaceClass::new(0, 0, 1, sigma_dot_z)
    }

    /// Bilinear intersection pairing; both classes must declare the same
    /// `sigma.z`.
    pub fn intersect(&self, other: &SurfaceClass) -> i64 {
        assert_eq!(
            self.sigma_dot_z, other.sigma_dot_z,
            "classes live on different lattices"
        );
        let sz = self.sigma_dot_z;
        -3 * self.sigma_coef * other.sigma_coef - 3 * self.z_coef * other.z_coef
            + sz * (self.sigma_coef * other.z_coef + self.z_coef * other.sigma_coef)
            + (self.sigma_coef * other.f_coef + self.f_coef * other.sigma_coef)
            + (self.z_coef * other.f_coef + self.f_coef * other.z_coef)
    }

    /// Self-intersection number of the class.
    pub fn self_intersection(&self) -> i64 {
        self.intersect(self)
    }
}

/// Class of the k-th power of a section under the fiberwise group law:
/// `k*sigma - (k-1)*z + (sigma.z + 3) k (k-1) * f`.
pub fn mw_power_class(k: i64, sigma_dot_z: i64) -> SurfaceClass {
    SurfaceClass::new(k, -(k - 1), (sigma_dot_z + 3) * k * (k - 1), sigma_dot_z)
}

/// Norm of the orthogonal projection of sigma away from the span of (f, z):
/// `-2 (sigma.z + 3)`.
pub fn projection_norm(sigma_dot_z: i64) -> i64 {
    assert!(sigma_dot_z >= 0);
    -2 * (sigma_dot_z + 3)
}

/// The same projection norm computed the long way: solve the 2x2 system for
/// the (f, z)-component of sigma over the rationals and pair what is left
/// with sigma. Exists as an independent cross-check of [`projection_norm`].
pub fn gram_projection_norm(sigma_dot_z: i64) -> Rat {
    assert!(sigma_dot_z >= 0);
    // <f,z> Gram matrix and the pairings of sigma against (f, z).
    let pairing = vec![vec![rat(0), rat(1)], vec![rat(1), rat(-3)]];
    let sigma_against = vec![rat(1), rat(sigma_dot_z)];
    let component =
        linalg::solve_exact(&pairing, &sigma_against).expect("the polarization form is unimodular");
    // (sigma - a f - b z) . sigma with sigma^2 = -3.
    rat(-3) - &component[0] * rat(1) - &component[1] * rat(sigma_dot_z)
}

/// Pushforward of a section class to the ambient threefold, as coefficients
/// of (l, f): always `(1, sigma.z + 3)`.
pub fn pushforward_to_x(sigma_dot_z: i64) -> (i64, i64) {
    assert!(sigma_dot_z >= 0);
    (1, sigma_dot_z + 3)
}

/// Sign-alternating leading principal minors, the definiteness test for a
/// negative definite symmetric matrix.
fn leading_minors_alternate(gram: &[Vec<i64>]) -> bool {
    (1..=gram.len()).all(|k| {
        let block: Vec<Vec<BigInt>> = gram[..k]
            .iter()
            .map(|row| row[..k].iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let minor = int_det(&block);
        if k % 2 == 1 {
            minor.is_negative()
        } else {
            minor.is_positive()
        }
    })
}

/// Exact integer determinant by fraction-free elimination.
fn int_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut work: Vec<Vec<BigInt>> = m.to_vec();
    let mut prev = BigInt::from(1);
    let mut sign = 1i32;
    for k in 0..n {
        let Some(pivot_row) = (k..n).find(|&r| !work[r][k].is_zero()) else {
            return BigInt::zero();
        };
        if pivot_row != k {
            work.swap(k, pivot_row);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &work[k][k] * &work[i][j] - &work[i][k] * &work[k][j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero());
                work[i][j] = q;
            }
            work[i][k] = BigInt::zero();
        }
        prev = work[k][k].clone();
    }
    if sign < 0 {
        -prev
    } else {
        prev
    }
}

fn delete_row_col(m: &[Vec<BigInt>], skip: usize) -> Vec<Vec<BigInt>> {
    m.iter()
        .enumerate()
        .filter(|&(i, _)| i != skip)
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|&(j, _)| j != skip)
                .map(|(_, x)| x.clone())
                .collect()
        })
        .collect()
}

/// Largest integer `s >= 0` with `s^2 * den <= num`.
fn floor_sqrt_ratio(num: &BigInt, den: &BigInt) -> i64 {
    assert!(!den.is_zero() && !num.is_negative() && den.is_positive());
    let mut s = (num / den).sqrt();
    while (&s + 1u32) * (&s + 1u32) * den <= *num {
        s += 1u32;
    }
    while &s * &s * den > *num {
        s -= 1u32;
    }
    s.to_i64().expect("search boxes stay far below i64")
}
