//! Additive, regular and super-regular 2-designs built from difference
//! families over finite abelian groups and finite fields.
//!
//! The pipeline runs from strong difference families over `G`
//! ([`families`]) through liftings into `G x F_q` ([`lifting`]) to relative
//! difference families and their developments ([`designs`]). Every
//! constructed object is re-verified by an independent checker before it is
//! returned. [`analysis`] holds the arithmetic admissibility tests and
//! [`format`] the JSON file format used by the command-line tool.

pub mod algebra;
pub mod analysis;
pub mod carrier;
pub mod catalog;
pub mod designs;
pub mod differences;
pub mod error;
pub mod families;
pub mod format;
pub mod gf;
pub mod lifting;

pub use algebra::{AbelianGroup, Subgroup};
pub use carrier::Carrier;
pub use designs::{develop, verify_design, verify_super_regular, Design};
pub use error::{Error, Result};
pub use families::{
    DifferenceMatrix, KSet, PartialSpread, RelativeDifferenceFamily, StrongDifferenceFamily,
};
pub use format::{parse_family, FamilyFile, Role};
pub use gf::{FieldElement, FiniteField};
