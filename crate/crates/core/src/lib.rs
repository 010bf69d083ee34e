//! Exact verification of intersecting set families.
//!
//! Builds the circular-shift family `P_k` and the projective-plane family
//! `R_k`, both regular intersecting families whose diversity exceeds that of
//! `Q_k = { A ⊆ [2k+1] : |A| >= k+1 }`, and checks every claimed property by
//! exhaustive enumeration. Closed-form counts are evaluated in exact arithmetic
//! generic over the integer scalar; [`BigCount`] and [`Rational`] are the
//! default instantiations.

pub mod bounds;
pub mod budget;
pub mod constructions;
pub mod error;
pub mod family;
pub mod field;
pub mod projective;
pub mod properties;
pub mod search;
pub mod sfam;
pub mod subset;

/// Exact integer of unbounded width.
pub type BigCount = num_bigint::BigInt;
/// Exact normalized rational over [`BigCount`].
pub type Rational = num_rational::Ratio<BigCount>;

pub use budget::Budget;
pub use error::{Error, Result, SwapPlanError};
pub use family::Family;
pub use properties::{
    degree_profile, diversity, is_intersecting, is_regular, is_upset, DegreeProfile,
    DiversityResult, Intersection, Regularity, Upset,
};
pub use subset::SubsetWord;
