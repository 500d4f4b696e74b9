//! Exact computational algebra for braid group representations inside
//! iterated twisted tensor products of finite group algebras.
//!
//! The library is organized around a small tower of abstractions:
//!
//! * [`cyclo`] — exact arithmetic in cyclotomic fields `Q(zeta_M)`, the
//!   coefficient domain for everything else.
//! * [`groups`] — finite groups, 2-cocycle twisted base algebras,
//!   bihomomorphisms and orbits of bilinear forms.
//! * [`ttp`] — the iterated twisted tensor product `A_n(G, tau)` with
//!   monomial normal-form multiplication, star structure, regular
//!   representation, center and fixed-subalgebra computations.
//! * [`ybo`] — Yang–Baxter operators `r = sum f(g) g`: braid-relation
//!   verification, unitarity, symmetries, localization and braid-image
//!   closure.
//! * [`search`] — exhaustive enumeration of YBO candidates over finite
//!   coefficient ansaetze and symmetry-orbit deduplication.
//! * [`spectra`] — quadratic Gauss sums and exact eigenvalue profiles.
//! * [`tower`] — Bratteli diagrams of the algebra towers and the fusion
//!   rings they are compared against.

pub mod cyclo;
pub mod groups;
pub mod linalg;
pub mod search;
pub mod spectra;
pub mod tower;
pub mod ttp;
pub mod ybo;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero in Q(zeta_{0})")]
    DivisionByZero(u32),
    #[error("incompatible cyclotomic moduli {0} and {1} (neither divides the other)")]
    IncompatibleModuli(u32, u32),
    #[error("{0} is not coprime to the cyclotomic modulus {1}")]
    NotCoprime(i64, u32),
    #[error("modulus {0} does not divide target modulus {1}")]
    NotDivisor(u32, u32),
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("invalid 2-cocycle: {0}")]
    InvalidCocycle(String),
    #[error("not a bihomomorphism: {0}")]
    NotBihomomorphism(String),
    #[error("not a linear character: {0}")]
    NotCharacter(String),
    #[error("not an alpha-preserving automorphism")]
    NotFormAutomorphism,
    #[error("generator position {0} out of range 1..={1}")]
    PositionOutOfRange(usize, usize),
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("unsupported base: {0}")]
    UnsupportedBase(String),
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("modulus must be odd, got {0}")]
    EvenModulus(u32),
    #[error("form is degenerate over Z_{0}")]
    DegenerateForm(u32),
    #[error("form is neither symmetric nor skew-symmetric")]
    NotSymmetricOrSkew,
    #[error("symplectic reduction failed: no unit pivot (composite modulus?)")]
    SymplecticPivot,
    #[error("sweep of {required} candidates exceeds budget {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("eigenvalue candidates incomplete: multiplicities sum to {found} of {dim}")]
    CandidatesIncomplete { found: usize, dim: usize },
    #[error("symmetry action invalid here: {0}")]
    InvalidAction(String),
    #[error("symmetry orbit left the enumerated solution set")]
    OrbitEscapes,
}

pub type Result<T> = std::result::Result<T, Error>;
