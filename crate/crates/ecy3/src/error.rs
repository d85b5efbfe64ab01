use thiserror::Error;

/// Errors produced by the exact kernels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Inversion (or a negative power) of a series whose constant term is zero.
    #[error("series is not invertible: constant term is zero")]
    NonInvertible,
    /// Coefficient extraction beyond the truncation order.
    #[error("coefficient q^{index} is out of range: series truncated at order {prec}")]
    OutOfRange { index: usize, prec: usize },
    /// Eisenstein expansions are only implemented for weights 4 and 6.
    #[error("unsupported Eisenstein weight {0}: only 4 and 6 are available")]
    UnsupportedWeight(u32),
    /// The constraint matrix of a coefficient fit is not invertible.
    #[error("singular constraint system: the chosen coefficients do not pin down the form")]
    SingularSystem,
    /// A coefficient fit needs exactly one constraint per basis monomial.
    #[error("constraint count {got} does not match basis dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    /// Root lattices are only built for A1 and A2.
    #[error("unsupported root lattice rank {0}: only A1 and A2 are available")]
    UnsupportedRank(u32),
    /// A Gram matrix must be symmetric.
    #[error("gram matrix is not symmetric")]
    AsymmetricGram,
    /// Short-vector enumeration and theta series require a negative definite form.
    #[error("lattice is not negative definite")]
    IndefiniteLattice,
    /// Theta exponents |norm|/2 require an even lattice.
    #[error("lattice is odd: diagonal entry {0} breaks the |norm|/2 exponent convention")]
    OddLattice(i64),
    /// Enumeration targets must be negative on a negative definite lattice.
    #[error("norm value {0} is not negative")]
    NonNegativeNorm(i64),
    /// Dual-curve invariants are only defined for degree >= 2.
    #[error("curve degree {0} is too small: dual invariants need degree >= 2")]
    DegreeTooSmall(u64),
    /// The dual node-count formula evaluated to a half-integer.
    #[error("dual node count is not integral for ({degree}, {nodes}, {cusps})")]
    NonIntegralNodes { degree: u64, nodes: u64, cusps: u64 },
    /// A dual invariant came out negative; the input is not a valid curve.
    #[error("dual {invariant} is negative ({value}) for ({degree}, {nodes}, {cusps})")]
    NegativeInvariant {
        invariant: &'static str,
        value: i64,
        degree: u64,
        nodes: u64,
        cusps: u64,
    },
    /// Component contributions are defined for 0 < i <= n only.
    #[error("component index i={i} out of range for n={n}: need 0 < i <= n")]
    InvalidComponentIndex { n: usize, i: usize },
    /// The two h-series routes disagreed; the ledger refuses to vouch for h.
    #[error("h-series mismatch at q^{exponent}: closed-form route {closed_form}, correction route {correction}")]
    HSeriesMismatch {
        exponent: usize,
        closed_form: String,
        correction: String,
    },
    /// An extraction point expected an integer and found a proper fraction.
    #[error("coefficient at q^{exponent} is not an integer: {value}")]
    NonIntegralCoefficient { exponent: usize, value: String },
    /// The counts at levels 1 and 2 must vanish (those components are empty).
    #[error("count h({exponent}) = {value}, expected 0")]
    UnexpectedLowOrderCount { exponent: usize, value: String },
}

pub type Result<T> = std::result::Result<T, Error>;
