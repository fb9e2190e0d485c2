//! Executable combinatorics of Hassett's moduli spaces of weighted stable
//! pointed curves `M_{g,A[n]}`.
//!
//! * [`weights`]: exact rational weight data, coincidence tests, signatures.
//! * [`perm`]: admissible transpositions and the group they generate.
//! * [`moduli`]: forgetful and reduction morphisms, boundary divisors,
//!   automorphism descriptors for `g >= 1`.
//! * [`kapranov`]: the blow-up tower `P^{n-3} -> ... -> M_{0,n}`.
//!
//! Markings are indexed from 1.

pub mod error;
pub mod kapranov;
pub mod moduli;
pub mod perm;
pub mod weights;

pub use error::{Error, Result};
pub use kapranov::{
    detect_losev_manin, feasible_cremona_degrees, identify_step, kapranov_aut, kapranov_centers,
    kapranov_tower, kapranov_weights, BlowupCenter, CremonaAnalysis, TowerClass, TowerEntry,
    TowerStep,
};
pub use moduli::{
    aut_descriptor_coarse, aut_descriptor_stack, boundary_divisors, contracted_divisors,
    forgetful_exists, forgetful_target, reduction_exists, BoundaryDivisor, GroupDescriptor,
    SpecialFactor,
};
pub use perm::{
    admissibility_partition, admissible_group, is_admissible, signature_preserving_group,
    ExplicitGroup, PermGroup, Permutation,
};
pub use weights::{
    canonical_alignment, parse_weight_data, weight_data_equivalent, Signature, WeightData,
};
