//! Plane-curve and fibration bookkeeping for the Weierstrass threefold.
//!
//! Everything here is exact integer arithmetic on classical invariants: the
//! discriminant curve of the fibration, the Pluecker formulas relating a
//! plane curve to its dual, the Chern constants of the Hodge bundle, and
//! the classification of singular fibers by how a line meets the
//! discriminant.

use crate::error::{Error, Result};
use crate::lattice::{root_lattice_a, GramLattice};

/// Degrees of the two Weierstrass coefficient forms on the plane.
const WEIERSTRASS_A_DEGREE: u64 = 12;
const WEIERSTRASS_B_DEGREE: u64 = 18;

/// The (degree, nodes, cusps) triple of a plane curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlaneCurveInvariants {
    pub degree: u64,
    pub nodes: u64,
    pub cusps: u64,
}

/// Invariants of the discriminant curve of a general Weierstrass fibration
/// over the plane: degree 36, no nodes, 216 cusps.
///
/// The degree is that of `4a^3` with `deg a = 12`; the cusps sit at the
/// transverse intersections of the two coefficient curves, so there are
/// `12 * 18` of them.
pub fn discriminant_invariants() -> PlaneCurveInvariants {
    PlaneCurveInvariants {
        degree: 3 * WEIERSTRASS_A_DEGREE,
        nodes: 0,
        cusps: WEIERSTRASS_A_DEGREE * WEIERSTRASS_B_DEGREE,
    }
}

/// Invariants of the dual curve by the Pluecker formulas.
///
/// ```text
/// d* = d(d-1) - 2n - 3c
/// c* = 3d(d-2) - 6n - 8c
/// n* = (d*(d*-1) - 3c* - d) / 2
/// ```
///
/// The node formula is the degree formula dualized and solved for `n*`.
/// It sometimes circulates with the opposite sign,
/// `(d - d*(d*-1) + 3c*) / 2`; that reading returns negative counts on
/// every classical example (it gives -184032 for the discriminant curve
/// here) and is not used.
pub fn pluecker_dual(c: &PlaneCurveInvariants) -> Result<PlaneCurveInvariants> {
    if c.degree < 2 {
        return Err(Error::DegreeTooSmall(c.degree));
    }
    let (d, n, k) = (c.degree as i128, c.nodes as i128, c.cusps as i128);
    let invalid = |invariant: &'static str, value: i128| Error::NegativeInvariant {
        invariant,
        value: value as i64,
        degree: c.degree,
        nodes: c.nodes,
        cusps: c.cusps,
    };

    let dual_degree = d * (d - 1) - 2 * n - 3 * k;
    if dual_degree <= 0 {
        return Err(invalid("degree", dual_degree));
    }
    let dual_cusps = 3 * d * (d - 2) - 6 * n - 8 * k;
    if dual_cusps < 0 {
        return Err(invalid("cusps", dual_cusps));
    }
    let node_numerator = dual_degree * (dual_degree - 1) - 3 * dual_cusps - d;
    if node_numerator % 2 != 0 {
        return Err(Error::NonIntegralNodes {
            degree: c.degree,
            nodes: c.nodes,
            cusps: c.cusps,
        });
    }
    let dual_nodes = node_numerator / 2;
    if dual_nodes < 0 {
        return Err(invalid("nodes", dual_nodes));
    }
    Ok(PlaneCurveInvariants {
        degree: dual_degree as u64,
        nodes: dual_nodes as u64,
        cusps: dual_cusps as u64,
    })
}

/// Chern data of the Hodge bundle of the family of line surfaces:
/// `c1 = 3h`, `c2 = 3h^2`, and the integral of `c2` over the plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HodgeConstants {
    pub c1_multiple: i64,
    pub c2_multiple: i64,
    /// `c2` evaluated against `h^2 = point`; the constant term anchor of
    /// the fitted weight-16 form.
    pub euler_integral: i64,
}

pub fn hodge_constants() -> HodgeConstants {
    // The pushed-forward dualizing sheaf is O(1)^3 minus a trivial summand,
    // so its total Chern class is (1 + h)^3: c1 = 3h, c2 = 3h^2.
    let c1_multiple = 3;
    let c2_multiple = 3;
    HodgeConstants {
        c1_multiple,
        c2_multiple,
        euler_integral: c2_multiple,
    }
}

/// How a line meets the discriminant curve, named from the line's side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LinePosition {
    /// Simple tangency at a general point (a general point of the dual).
    GenericTangent,
    /// Order-3 contact at a flex of the discriminant (a flex of the dual).
    FlexTangent,
    /// Tangent at two points (a node of the dual).
    Bitangent,
    /// Tangent at a flex from the dual-cusp side (a cusp of the dual).
    TangentAtFlex,
    /// Through a cusp along the cuspidal direction; same surface as a flex
    /// of the dual.
    CuspSpecialDirection,
    /// Through a cusp in a generic direction; the surface stays smooth.
    CuspGenericDirection,
    /// Transverse to the discriminant everywhere.
    Transverse,
}

impl LinePosition {
    pub const ALL: [LinePosition; 7] = [
        LinePosition::GenericTangent,
        LinePosition::FlexTangent,
        LinePosition::Bitangent,
        LinePosition::TangentAtFlex,
        LinePosition::CuspSpecialDirection,
        LinePosition::CuspGenericDirection,
        LinePosition::Transverse,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            LinePosition::GenericTangent => "generic-tangent",
            LinePosition::FlexTangent => "flex-tangent",
            LinePosition::Bitangent => "bitangent",
            LinePosition::TangentAtFlex => "tangent-at-flex",
            LinePosition::CuspSpecialDirection => "cusp-special-direction",
            LinePosition::CuspGenericDirection => "cusp-generic-direction",
            LinePosition::Transverse => "transverse",
        }
    }
}

/// Surface singularity types that occur on line surfaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Singularity {
    A1,
    A2,
}

impl Singularity {
    pub fn label(&self) -> &'static str {
        match self {
            Singularity::A1 => "A1",
            Singularity::A2 => "A2",
        }
    }
}

/// Kodaira type of the distinguished singular fiber after resolution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kodaira {
    I0,
    I1,
    I2,
    II,
    III,
    I3,
    None,
}

impl Kodaira {
    pub fn label(&self) -> &'static str {
        match self {
            Kodaira::I0 => "I0",
            Kodaira::I1 => "I1",
            Kodaira::I2 => "I2",
            Kodaira::II => "II",
            Kodaira::III => "III",
            Kodaira::I3 => "I3",
            Kodaira::None => "none",
        }
    }
}

/// One row of the singular-fiber classification.
#[derive(Clone, Debug, PartialEq)]
pub struct FiberClassification {
    pub position: LinePosition,
    /// Surface singularities before resolution (a multiset; empty means
    /// the surface is smooth).
    pub singularities: Vec<Singularity>,
    /// Kodaira type of each distinguished fiber; repeated once per
    /// singularity when there are several.
    pub kodaira: Kodaira,
    /// The lattice of exceptional curves, when there are any.
    pub a0_lattice: Option<GramLattice>,
}

impl FiberClassification {
    /// Human-readable fiber label, e.g. `I2+I2` for the bitangent row.
    pub fn fiber_label(&self) -> String {
        let copies = self.singularities.len().max(1);
        vec![self.kodaira.label(); copies].join("+")
    }

    /// Degree of the Galois cover that trivializes the local monodromy:
    /// one Picard-Lefschetz factor of 2 per A1, the full symmetric group
    /// of order 6 for an A2.
    pub fn monodromy_cover_degree(&self) -> u64 {
        self.singularities
            .iter()
            .map(|s| match s {
                Singularity::A1 => 2,
                Singularity::A2 => 6,
            })
            .product()
    }
}

/// Classification of the line surface by the position of the line.
pub fn classify_line(position: LinePosition) -> FiberClassification {
    let a1 = || root_lattice_a(1).expect("rank 1 is supported");
    let a2 = || root_lattice_a(2).expect("rank 2 is supported");
    let (singularities, kodaira, a0_lattice) = match position {
        LinePosition::GenericTangent => (vec![Singularity::A1], Kodaira::I2, Some(a1())),
        LinePosition::FlexTangent | LinePosition::CuspSpecialDirection => {
            (vec![Singularity::A1], Kodaira::III, Some(a1()))
        }
        LinePosition::Bitangent => (
            vec![Singularity::A1, Singularity::A1],
            Kodaira::I2,
            Some(a1().direct_sum(&a1())),
        ),
        LinePosition::TangentAtFlex => (vec![Singularity::A2], Kodaira::I3, Some(a2())),
        LinePosition::CuspGenericDirection => (Vec::new(), Kodaira::II, None),
        LinePosition::Transverse => (Vec::new(), Kodaira::I1, None),
    };
    FiberClassification {
        position,
        singularities,
        kodaira,
        a0_lattice,
    }
}

/// Fixed invariants of a relatively minimal elliptic surface over a line:
/// 36 nodal fibers and Hodge numbers (0, 2, 30).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct E3SurfaceInvariants {
    pub nodal_fibers: u32,
    pub h01: u32,
    pub h02: u32,
    pub h11: u32,
    /// Degree of the line bundle pulled back as the canonical bundle.
    pub canonical_degree: u32,
}

pub fn e3_surface_invariants() -> E3SurfaceInvariants {
    E3SurfaceInvariants {
        nodal_fibers: 36,
        h01: 0,
        h02: 2,
        h11: 30,
        canonical_degree: 1,
    }
}
