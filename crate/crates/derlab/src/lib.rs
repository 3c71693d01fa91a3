//! Exact decision procedures for differential simplicity of polynomial and
//! truncated power-series rings under families of derivations.
//!
//! The library works over `k[x1..xn]` and `k[[x1..xn]]` (represented modulo
//! a total-degree truncation) with exact rational arithmetic throughout.
//! It decides whether the ring is simple under a family of derivations and
//! produces checkable certificates either way, classifies commuting families
//! containing the coordinate partials, extracts the n-member simple subset,
//! builds slice coordinates, and certifies local nilpotency of commutative
//! bases.

pub mod derivation;
pub mod matrix;
pub mod parse;
pub mod poly;
pub mod report;
pub mod ring;
pub mod scalar;
pub mod session;
pub mod structure;
pub mod uni;

pub use derivation::{
    BasisReport, Derivation, DerivationError, DerivationFamily, NilpotencyReport,
    NilpotencyVerdict,
};
pub use parse::{parse_derivation, parse_poly, ParseError};
pub use poly::{Monomial, Poly, PolyError};
pub use ring::{RingMode, RingSpec};
pub use scalar::Scalar;
pub use session::{Session, SessionError};
pub use structure::{
    classify_family, commutant_form_witness, family_simplicity, is_commutant_form,
    rebuild_case_a_member, rebuild_case_b_member, simplicity_upgrade, slice_coordinates,
    stable_ideal_oracle, verify_nilpotent_basis, CaseBMember, Classification,
    CommutantFormWitness, NilpotentBasisReport, SimplicityCertificate, SliceCoordinates,
    StructureError,
};
pub use uni::{series_gcd_order, uni_antiderivative, uni_extended_gcd, UniError};
