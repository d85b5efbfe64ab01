//! Assembly of the section-curve counts `h(n)` and the genus-0
//! Gromov-Witten series of the Weierstrass threefold.
//!
//! The count generating series is pinned down twice, by routes that share
//! no code path past the q-series kernel:
//!
//! 1. the closed form: an explicit rational combination of `E4^4`,
//!    `E4 E6^2` and the theta series of A1 and A2;
//! 2. the correction identity: fit the weight-16 form from its two
//!    geometric anchors, then strip the excess contributions of singular
//!    surfaces (tangent, bitangent, and flex-tangent lines), with every
//!    constant pulled live from the geometry and lattice modules.
//!
//! [`CountLedger::build`] computes both, refuses to hand out an `h` series
//! unless they agree at every exponent from 1 up, and assembles the
//! Gromov-Witten series from the verified counts.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::geometry::{self, LinePosition};
use crate::lattice::root_lattice_a;
use crate::modforms::{self, FitResult};
use crate::qseries::{rat, ratio, QSeries, Rat};

/// Weight of the Noether-Lefschetz generating form: half the rank of the
/// signature-(4,28) cohomology lattice of the line surfaces.
pub const PHI_WEIGHT: u32 = 16;

/// The section count at level zero. It is not produced by either series
/// route (both are stated for exponents >= 1) and is pinned here as the
/// known multiple-cover count of the plane.
pub const H_ZERO: i64 = -3;

/// Geometric anchor data feeding the weight-16 fit and the correction
/// terms, together with the provenance of each value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Anchors {
    /// Constant-term anchor: the Hodge-bundle Euler integral.
    pub phi0: i64,
    /// Second-coefficient anchor: nodes of the dual discriminant.
    pub phi2: i64,
    /// Cusps of the dual discriminant, weighting the A2 correction.
    pub dual_cusps: i64,
    /// Monodromy cover degree at a generic tangent line.
    pub mult_tangent: i64,
    /// Monodromy cover degree at a bitangent line.
    pub mult_node: i64,
    /// Monodromy cover degree at a flex-tangent line.
    pub mult_cusp: i64,
    /// Exponent of the Euler product in the fiber-component correction,
    /// minus the nodal fiber count of the line surfaces.
    pub bl_exponent: i64,
    /// Human-readable origin of each anchor, in a fixed order.
    pub provenance: Vec<String>,
}

impl Anchors {
    /// Pull every anchor live from the geometry and lattice modules.
    ///
    /// Nothing here is a stored constant of the assembly layer: the fit
    /// constraints come from the Hodge bundle and the Pluecker dual, the
    /// multiplicities from the monodromy cover degrees of the classified
    /// line positions, and the Euler-product exponent from the nodal fiber
    /// count.
    pub fn from_geometry() -> Result<Anchors> {
        let hodge = geometry::hodge_constants();
        let discriminant = geometry::discriminant_invariants();
        let dual = geometry::pluecker_dual(&discriminant)?;
        let tangent = geometry::classify_line(LinePosition::GenericTangent);
        let node = geometry::classify_line(LinePosition::Bitangent);
        let cusp = geometry::classify_line(LinePosition::TangentAtFlex);
        let surface = geometry::e3_surface_invariants();

        let anchors = Anchors {
            phi0: hodge.euler_integral,
            phi2: dual.nodes as i64,
            dual_cusps: dual.cusps as i64,
            mult_tangent: tangent.monodromy_cover_degree() as i64,
            mult_node: node.monodromy_cover_degree() as i64,
            mult_cusp: cusp.monodromy_cover_degree() as i64,
            bl_exponent: -i64::from(surface.nodal_fibers),
            provenance: Vec::new(),
        };
        let provenance = vec![
            format!("hodge_constants.euler_integral={}", anchors.phi0),
            format!(
                "pluecker_dual({},{},{}).nodes={}",
                discriminant.degree, discriminant.nodes, discriminant.cusps, anchors.phi2
            ),
            format!(
                "pluecker_dual({},{},{}).cusps={}",
                discriminant.degree, discriminant.nodes, discriminant.cusps, anchors.dual_cusps
            ),
            format!(
                "monodromy_cover_degree(generic-tangent)={}",
                anchors.mult_tangent
            ),
            format!("monodromy_cover_degree(bitangent)={}", anchors.mult_node),
            format!(
                "monodromy_cover_degree(tangent-at-flex)={}",
                anchors.mult_cusp
            ),
            format!(
                "e3_surface_invariants.nodal_fibers={}",
                surface.nodal_fibers
            ),
        ];
        Ok(Anchors {
            provenance,
            ..anchors
        })
    }
}

/// Fit the weight-16 form from the two geometric anchors, exactly.
pub fn phi_fit(prec: usize, anchors: &Anchors) -> Result<FitResult> {
    modforms::fit(
        PHI_WEIGHT,
        &[(0, rat(anchors.phi0)), (2, rat(anchors.phi2))],
        prec,
    )
}

/// The fitted weight-16 series, `3 - 1188 q + 184032 q^2 + ...`.
pub fn phi_series(prec: usize) -> Result<QSeries> {
    Ok(phi_fit(prec, &Anchors::from_geometry()?)?.series)
}

/// The raw closed-form combination, before the level-zero overwrite.
///
/// Its constant term is 47253, a bookkeeping artifact of the theta
/// constant terms; it is recorded by a test and interpreted nowhere.
fn closed_form_combination(prec: usize) -> Result<QSeries> {
    let e4 = modforms::eisenstein(4, prec)?;
    let e6 = modforms::eisenstein(6, prec)?;
    let theta1 = root_lattice_a(1)?.theta_series(prec)?;
    let theta2 = root_lattice_a(2)?.theta_series(prec)?;

    let eisenstein_part =
        &e4.pow(4)?.scale(&ratio(31, 48)) + &(&e4 * &e6.pow(2)?).scale(&ratio(113, 48));
    let theta_part = &(&theta1.scale(&rat(93582)) - &(&theta1 * &theta1).scale(&rat(46008)))
        - &theta2.scale(&rat(324));
    Ok(&eisenstein_part + &theta_part)
}

/// Section counts by the closed form
/// `31/48 E4^4 + 113/48 E4 E6^2 + 93582 Theta1 - 46008 Theta1^2 - 324 Theta2`,
/// valid at exponents >= 1; the constant term is overwritten with
/// [`H_ZERO`].
pub fn h_series_closed_form(prec: usize) -> Result<QSeries> {
    let mut series = closed_form_combination(prec)?;
    series.set_coeff(0, rat(H_ZERO))?;
    Ok(series)
}

/// Section counts by the correction identity: fit the weight-16 form from
/// its anchors, then remove the excess contributions of singular surfaces.
///
/// Every constant is taken from `anchors`: the tangent-line weight is the
/// (negated) `q^1` coefficient of the fitted form itself, and each theta
/// correction is divided by the monodromy cover degree of its line
/// position. Valid at exponents >= 1; the constant term is overwritten
/// with [`H_ZERO`].
pub fn h_series_correction_from(prec: usize, anchors: &Anchors) -> Result<QSeries> {
    // The tangent-line weight is read off the fitted q^1 coefficient, so
    // the fit always runs to order 1 even for a constant-term request.
    let working_prec = prec.max(1);
    let phi = phi_fit(working_prec, anchors)?.series;
    let theta1 = root_lattice_a(1)?.theta_series(working_prec)?;
    let theta2 = root_lattice_a(2)?.theta_series(working_prec)?;
    let one = QSeries::one(working_prec);

    let tangent_weight = -phi.coeff(1)?.clone();
    let tangent_term = theta1.scale(&(tangent_weight / rat(anchors.mult_tangent)));
    let shifted = &theta1 - &one;
    let node_term = (&shifted * &shifted).scale(&ratio(anchors.phi2, anchors.mult_node));
    let cusp_term =
        (&theta2 - &theta1.scale(&rat(3))).scale(&ratio(anchors.dual_cusps, anchors.mult_cusp));

    let mut series = &(&(&phi + &tangent_term) - &node_term) - &cusp_term;
    series.set_coeff(0, rat(H_ZERO))?;
    Ok(series.truncate(prec))
}

/// [`h_series_correction_from`] with anchors pulled live from geometry.
pub fn h_series_correction(prec: usize) -> Result<QSeries> {
    h_series_correction_from(prec, &Anchors::from_geometry()?)
}

/// The fiber-component correction series, the Euler product raised to the
/// nodal-fiber exponent (`-36` here).
pub fn bl_correction(prec: usize) -> QSeries {
    let exponent = -i64::from(geometry::e3_surface_invariants().nodal_fibers);
    modforms::euler_product(prec)
        .pow(exponent)
        .expect("the Euler product has constant term 1")
}

/// Contribution of the component whose section carries `i` of the `n`
/// fiber classes: `h(i) * [eta^-36]_(n-i)`.
///
/// Defined for `0 < i <= n`; the `i = 0` piece is not localized over
/// isolated lines and is not computed this way.
pub fn component_contribution(n: usize, i: usize, prec: usize) -> Result<Rat> {
    if i == 0 || i > n {
        return Err(Error::InvalidComponentIndex { n, i });
    }
    let working_prec = prec.max(n);
    let h = h_series_closed_form(working_prec)?;
    let bl = bl_correction(working_prec);
    Ok(h.coeff(i)? * bl.coeff(n - i)?)
}

/// Which theta series to use when evaluating the conjectural vertical
/// contribution. The source formula does not say; the choice is yours.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThetaChoice {
    A1,
    A2,
}

/// Which Euler-product power to convolve against in the conjectural
/// vertical contribution. The source formula is ambiguous between the
/// plain product and its -36th power; the choice is yours.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EtaChoice {
    Eta,
    EtaInv36,
}

/// How to fill the `i = 0` slot of the Gromov-Witten assembly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CMode {
    /// Report only the section-component contributions (`c_{n,0} = 0`).
    Zero,
    /// EXPERIMENTAL: evaluate the conjectural formula
    /// `c_{n,0} = 3 [eta^-36]_n + sum_i [Theta]_i [eta-choice]_(n-i)`
    /// under an explicitly chosen interpretation. Nothing is asserted
    /// about these values.
    Conjecture { theta: ThetaChoice, eta: EtaChoice },
}

/// The conjectural vertical contribution series under a chosen
/// interpretation. EXPERIMENTAL: this series is a reading of an ambiguous
/// formula, not a validated count.
pub fn conjecture_c_series(prec: usize, theta: ThetaChoice, eta: EtaChoice) -> Result<QSeries> {
    let theta_series = match theta {
        ThetaChoice::A1 => root_lattice_a(1)?.theta_series(prec)?,
        ThetaChoice::A2 => root_lattice_a(2)?.theta_series(prec)?,
    };
    let eta_series = match eta {
        EtaChoice::Eta => modforms::euler_product(prec),
        EtaChoice::EtaInv36 => bl_correction(prec),
    };
    // sum_{i=1}^n [Theta]_i [E]_(n-i) is the convolution with the theta
    // constant term dropped.
    let positive_part = &theta_series - &QSeries::constant(theta_series.coeff(0)?.clone(), prec);
    Ok(&bl_correction(prec).scale(&rat(3)) + &(&positive_part * &eta_series))
}

/// The assembled count data, with the cross-check between the two `h`
/// routes already enforced by [`CountLedger::build`].
#[derive(Clone, Debug)]
pub struct CountLedger {
    /// The fitted weight-16 series.
    pub phi: QSeries,
    /// Basis coefficients of the fit, aligned with the weight-16 monomial
    /// basis (31/48 and 113/48 land here).
    pub phi_basis: Vec<Rat>,
    /// Counts by the closed form.
    pub h_closed_form: QSeries,
    /// Counts by the correction identity.
    pub h_correction: QSeries,
    /// The fiber-component correction series.
    pub bl: QSeries,
    /// The assembled Gromov-Witten series.
    pub gw: QSeries,
    /// The vertical-contribution mode used for `gw`.
    pub c_mode: CMode,
    /// The geometric anchors and their provenance.
    pub anchors: Anchors,
}

impl CountLedger {
    /// Compute everything at the given precision and verify the ledger
    /// invariants before returning.
    pub fn build(prec: usize, c_mode: CMode) -> Result<CountLedger> {
        let anchors = Anchors::from_geometry()?;
        let fit = phi_fit(prec, &anchors)?;
        let h_closed_form = h_series_closed_form(prec)?;
        let h_correction = h_series_correction_from(prec, &anchors)?;
        let bl = bl_correction(prec);

        // Section-part convolution: drop h(0), which counts no section
        // component, and convolve the rest against the fiber correction.
        let mut h_positive = h_closed_form.clone();
        h_positive.set_coeff(0, rat(0))?;
        let mut gw = &h_positive * &bl;
        if let CMode::Conjecture { theta, eta } = c_mode {
            gw = &gw + &conjecture_c_series(prec, theta, eta)?;
        }

        let ledger = CountLedger {
            phi: fit.series,
            phi_basis: fit.coefficients,
            h_closed_form,
            h_correction,
            bl,
            gw,
            c_mode,
            anchors,
        };
        ledger.verify()?;
        Ok(ledger)
    }

    /// Re-run the ledger invariants: the two `h` routes must agree at every
    /// exponent >= 1, the counts at levels 1 and 2 must vanish, and every
    /// count must be an integer.
    pub fn verify(&self) -> Result<()> {
        for exponent in 1..=self.h_closed_form.prec().min(self.h_correction.prec()) {
            let closed = self.h_closed_form.coeff(exponent)?;
            let corrected = self.h_correction.coeff(exponent)?;
            if closed != corrected {
                return Err(Error::HSeriesMismatch {
                    exponent,
                    closed_form: closed.to_string(),
                    correction: corrected.to_string(),
                });
            }
        }
        for exponent in [1usize, 2] {
            if exponent <= self.h_closed_form.prec() {
                let value = self.h_closed_form.coeff(exponent)?;
                if !value.is_zero() {
                    return Err(Error::UnexpectedLowOrderCount {
                        exponent,
                        value: value.to_string(),
                    });
                }
            }
        }
        self.h_values()?;
        Ok(())
    }

    /// The counts `h(0) .. h(prec)` as integers; errors if any coefficient
    /// is a proper fraction.
    pub fn h_values(&self) -> Result<Vec<BigInt>> {
        self.h_closed_form
            .coeffs()
            .iter()
            .enumerate()
            .map(|(exponent, value)| {
                if value.is_integer() {
                    Ok(value.to_integer())
                } else {
                    Err(Error::NonIntegralCoefficient {
                        exponent,
                        value: value.to_string(),
                    })
                }
            })
            .collect()
    }
}

/// The verified count series (closed-form route, cross-checked against the
/// correction route).
pub fn h_series(prec: usize) -> Result<QSeries> {
    Ok(CountLedger::build(prec, CMode::Zero)?.h_closed_form)
}

/// The assembled Gromov-Witten series under the chosen vertical mode.
pub fn gw_series(prec: usize, c_mode: CMode) -> Result<QSeries> {
    Ok(CountLedger::build(prec, c_mode)?.gw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modforms::basis;

    #[test]
    fn phi_matches_its_anchors_and_known_coefficients() {
        let phi = phi_series(8).unwrap();
        assert_eq!(phi.coeff(0).unwrap(), &rat(3));
        assert_eq!(phi.coeff(1).unwrap(), &rat(-1188));
        assert_eq!(phi.coeff(2).unwrap(), &rat(184032));
    }

    #[test]
    fn phi_basis_coefficients() {
        let anchors = Anchors::from_geometry().unwrap();
        let fit = phi_fit(4, &anchors).unwrap();
        let monomials = basis(PHI_WEIGHT, 0).unwrap().monomials;
        let labeled: Vec<((u32, u32), Rat)> = monomials.into_iter().zip(fit.coefficients).collect();
        assert!(labeled.contains(&((4, 0), ratio(31, 48))));
        assert!(labeled.contains(&((1, 2), ratio(113, 48))));
    }

    #[test]
    fn anchors_are_pulled_live() {
        let anchors = Anchors::from_geometry().unwrap();
        assert_eq!(anchors.phi0, geometry::hodge_constants().euler_integral);
        let dual = geometry::pluecker_dual(&geometry::discriminant_invariants()).unwrap();
        assert_eq!(anchors.phi2, dual.nodes as i64);
        assert_eq!(anchors.dual_cusps, dual.cusps as i64);
        assert_eq!(
            (anchors.mult_tangent, anchors.mult_node, anchors.mult_cusp),
            (2, 4, 6)
        );
        assert_eq!(anchors.bl_exponent, -36);
        assert_eq!(anchors.provenance.len(), 7);
    }

    #[test]
    fn closed_form_constant_term_is_recorded_not_interpreted() {
        let raw = closed_form_combination(4).unwrap();
        assert_eq!(raw.coeff(0).unwrap(), &rat(47253));
        let h = h_series_closed_form(4).unwrap();
        assert_eq!(h.coeff(0).unwrap(), &rat(H_ZERO));
    }

    #[test]
    fn the_two_h_routes_agree() {
        let closed = h_series_closed_form(32).unwrap();
        let corrected = h_series_correction(32).unwrap();
        for exponent in 1..=32 {
            assert_eq!(
                closed.coeff(exponent).unwrap(),
                corrected.coeff(exponent).unwrap(),
                "exponent {exponent}"
            );
        }
    }

    #[test]
    fn low_counts_vanish() {
        let h = h_series(8).unwrap();
        assert_eq!(h.coeff(0).unwrap(), &rat(-3));
        assert_eq!(h.coeff(1).unwrap(), &rat(0));
        assert_eq!(h.coeff(2).unwrap(), &rat(0));
    }

    #[test]
    fn counts_are_integers() {
        let ledger = CountLedger::build(24, CMode::Zero).unwrap();
        let values = ledger.h_values().unwrap();
        assert_eq!(values.len(), 25);
        assert_eq!(values[1], BigInt::from(0));
        assert_eq!(values[2], BigInt::from(0));
    }

    #[test]
    fn tampered_ledger_fails_verification() {
        let mut ledger = CountLedger::build(8, CMode::Zero).unwrap();
        ledger.h_correction.set_coeff(3, rat(1)).unwrap();
        assert!(matches!(
            ledger.verify(),
            Err(Error::HSeriesMismatch { exponent: 3, .. })
        ));

        let mut low_order = CountLedger::build(8, CMode::Zero).unwrap();
        low_order.h_closed_form.set_coeff(2, rat(5)).unwrap();
        low_order.h_correction.set_coeff(2, rat(5)).unwrap();
        assert!(matches!(
            low_order.verify(),
            Err(Error::UnexpectedLowOrderCount { exponent: 2, .. })
        ));
    }

    #[test]
    fn phi_refits_from_any_two_independent_coefficients() {
        let prec = 16;
        let anchors = Anchors::from_geometry().unwrap();
        let phi = phi_fit(prec, &anchors).unwrap().series;
        for (first, second) in [(1usize, 3usize), (0, 5), (2, 7)] {
            let constraints = [
                (first, phi.coeff(first).unwrap().clone()),
                (second, phi.coeff(second).unwrap().clone()),
            ];
            let refit = modforms::fit(PHI_WEIGHT, &constraints, prec).unwrap();
            assert_eq!(refit.series, phi, "constraints at {first},{second}");
        }
    }

    #[test]
    fn component_contributions() {
        let h = h_series_closed_form(8).unwrap();
        let h3 = h.coeff(3).unwrap();
        assert_eq!(&component_contribution(3, 3, 8).unwrap(), h3);
        assert_eq!(component_contribution(4, 3, 8).unwrap(), h3 * rat(36));
        assert_eq!(component_contribution(9, 1, 16).unwrap(), rat(0));
        assert_eq!(component_contribution(9, 2, 16).unwrap(), rat(0));
        assert_eq!(
            component_contribution(3, 0, 8),
            Err(Error::InvalidComponentIndex { n: 3, i: 0 })
        );
        assert_eq!(
            component_contribution(3, 4, 8),
            Err(Error::InvalidComponentIndex { n: 3, i: 4 })
        );
    }

    #[test]
    fn gw_zero_mode_is_the_section_convolution() {
        let prec = 12;
        let gw = gw_series(prec, CMode::Zero).unwrap();
        let h = h_series_closed_form(prec).unwrap();
        let bl = bl_correction(prec);
        assert_eq!(gw.coeff(0).unwrap(), &rat(0));
        assert_eq!(gw.coeff(1).unwrap(), &rat(0));
        assert_eq!(gw.coeff(3).unwrap(), h.coeff(3).unwrap());
        let expected_4 = h.coeff(4).unwrap() + h.coeff(3).unwrap() * rat(36);
        assert_eq!(gw.coeff(4).unwrap(), &expected_4);
        // Full convolution identity.
        for n in 0..=prec {
            let mut acc = rat(0);
            for i in 1..=n {
                acc += h.coeff(i).unwrap() * bl.coeff(n - i).unwrap();
            }
            assert_eq!(gw.coeff(n).unwrap(), &acc, "exponent {n}");
        }
    }

    #[test]
    fn conjecture_mode_adds_the_chosen_c_series() {
        let prec = 8;
        let mode = CMode::Conjecture {
            theta: ThetaChoice::A1,
            eta: EtaChoice::EtaInv36,
        };
        let with_c = gw_series(prec, mode).unwrap();
        let without = gw_series(prec, CMode::Zero).unwrap();
        let c = conjecture_c_series(prec, ThetaChoice::A1, EtaChoice::EtaInv36).unwrap();
        assert_eq!(with_c, &without + &c);
        assert_eq!(c.coeff(0).unwrap(), &rat(3));
        // Swapping the interpretation changes the series; both are exposed,
        // neither is asserted.
        let other = conjecture_c_series(prec, ThetaChoice::A2, EtaChoice::Eta).unwrap();
        assert_ne!(c, other);
    }
}
