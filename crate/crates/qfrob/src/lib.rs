//! Exact computations around Frobenius homomorphisms of Lusztig quantum
//! groups at roots of unity.
//!
//! The crate is organised bottom-up:
//!
//! * [`cyclo`]: Laurent polynomials in `q`, q-integers, cyclotomic rings.
//! * [`rootsys`]: root systems, Weyl groups, orbits of root pairs.
//! * [`lattice`]: the numbers `l_a`, parity of the lattice spanned by
//!   `l_i a_i`, PBW dimension counts.
//! * [`nichols`]: diagonal braidings, Cartan type recognition, Nichols
//!   algebra dimensions, the small quantum group classifier.
//! * [`pbw2`]: rank two divided-power straightening and commutators in the
//!   Frobenius quotient.
//! * [`frobenius`]: classification rows and reference tables.
//!
//! ```
//! use qfrob::rootsys::{build_root_system, Family};
//! use qfrob::frobenius::{classify, CaseTag};
//!
//! let b3 = build_root_system(Family::B, 3).unwrap();
//! let row = classify(&b3, 4).unwrap();
//! assert_eq!(row.case_tag, CaseTag::Duality);
//! assert_eq!(row.g0.to_string(), "A1^3");
//! assert_eq!(row.g_ell.to_string(), "C3");
//! assert!(row.braided);
//! ```

pub mod cyclo;
pub mod frobenius;
pub mod lattice;
pub mod nichols;
pub mod pbw2;
pub mod rootsys;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A Cartan type that does not exist (`E5`, `G3`, ...).
    #[error("invalid type: {0}")]
    InvalidType(String),
    /// An argument outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A computation refused because it would exceed a configured bound.
    #[error("bound exceeded: {0}")]
    Bound(String),
    /// Straightening met an out-of-order pair with no encoded rule.
    #[error("rule gap: {0}")]
    RuleGap(String),
    /// A division that must be exact in the integral form was not.
    #[error("inexact division: {0}")]
    Inexact(String),
}

#[cfg(doctest)]
mod book_doctests {
    #[doc = include_str!("../../../book/src/introduction.md")]
    struct Introduction;
    #[doc = include_str!("../../../book/src/roots.md")]
    struct Roots;
    #[doc = include_str!("../../../book/src/lattice.md")]
    struct Lattice;
    #[doc = include_str!("../../../book/src/nichols.md")]
    struct Nichols;
    #[doc = include_str!("../../../book/src/straightening.md")]
    struct Straightening;
    #[doc = include_str!("../../../book/src/classification.md")]
    struct Classification;
}
