//! Exact constructions of elliptic curve points over towers of quadratic
//! extensions, with verifiable independence certificates.
//!
//! Everything here is exact: rationals are arbitrary-precision fractions,
//! number fields are quotient rings `Q[λ]/(f)` with `deg f ≤ 4`, and every
//! polynomial identity the constructions rely on is checked coefficient by
//! coefficient. There is no floating point anywhere in the crate.
//!
//! The library has three point-producing pipelines, one per base-field
//! degree:
//!
//! * [`quad`] — curves `y² = x³ + αx + β` over a quadratic field `Q(√m)`.
//!   A one-parameter family of twists produces points whose y-coordinates
//!   live in `K(√δ)` for varying squarefree integers `δ`.
//! * [`cubic`] — Legendre curves `y² = x(x−1)(x−λ)` with `λ` a cubic
//!   irrationality. A rational parameter `t₀` specializes a polynomial
//!   identity into a point over `K(√δ)` with `δ` the squarefree part of a
//!   degree-11 polynomial value.
//! * [`quartic`] — Legendre curves with `λ` quartic. Rational points on the
//!   auxiliary quartic `v² = P(u)` seed the construction.
//!
//! The [`certificate`] module assembles forged points into a self-contained
//! JSON document: curve data, point coordinates, the squarefree discriminant
//! `δ` of each point's field, and a bounded torsion probe per point. A
//! standalone verifier re-checks every claim from the serialized bytes
//! alone.
//!
//! A narrative guide with runnable examples lives in `book/`; its chapters
//! are compiled as doc-tests through the [`guide`] module.

pub mod certificate;
pub mod cubic;
pub mod elliptic;
pub mod guide;
pub mod kummer;
pub mod laurent;
pub mod number_field;
pub mod poly;
pub mod quad;
pub mod quartic;
pub mod rational;
pub mod squarefree;
pub mod suites;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

pub use rational::{rat, rat_int};

use thiserror::Error;

/// Crate-wide error type.
///
/// Skip conditions during point forging are deliberately *not* errors; see
/// [`certificate::SkipReason`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero has no quadratic field")]
    ZeroSquarefree,
    #[error("minimal polynomial must be monic")]
    NotMonic,
    #[error("unsupported field degree {0}; expected 2, 3 or 4")]
    UnsupportedDegree(usize),
    #[error("polynomial is reducible; witness factor: {0}")]
    Reducible(String),
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("mismatched quadratic extensions: sqrt({0}) vs sqrt({1})")]
    DeltaMismatch(BigInt, BigInt),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not invertible")]
    NotInvertible,
    #[error("operation requires a quadratic field of the form Q(sqrt(m))")]
    NotQuadratic,
    #[error("{0} is not squarefree")]
    NotSquarefree(BigInt),
    #[error("ramified square root: valuation {0} is odd")]
    OddValuation(i64),
    #[error("leading coefficient is not a rational square")]
    NonSquareLeading,
    #[error("valuation undetermined at this precision")]
    UndeterminedValuation,
    #[error("insufficient series precision; raise precision")]
    InsufficientPrecision,
    #[error("singular curve")]
    SingularCurve,
    #[error("j-invariant is 0 or 1728; the twist construction requires otherwise")]
    ForbiddenJInvariant,
    #[error("point is not on the curve")]
    OffCurve,
    #[error("degenerate specialization: T1(u, v) = 0")]
    DegenerateSpecialization,
    #[error("construction degenerate: the specialization polynomial vanishes identically")]
    DegenerateConstruction,
    #[error("height bound must be at least 1")]
    InvalidHeightBound,
    #[error("target point count must be at least 1")]
    InvalidTarget,
    #[error("genus formula requires n >= 2")]
    GenusRange,
    #[error("lambda values must be pairwise distinct and different from 0 and 1")]
    DegenerateLambdas,
    #[error("invalid curve description: {0}")]
    BadCurveDescription(String),
    #[error("invalid certificate: {0}")]
    BadCertificate(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
