//! Partial difference sets in finite groups: parameter feasibility, group
//! ring certification, Cayley graph checks and the known constructions.

pub mod arith;
pub mod cayley;
pub mod class_function;
pub mod constructions;
pub mod error;
pub mod finite_field;
pub mod group;
pub mod group_ring;
pub mod io;
pub mod scalar;
pub mod scan;
pub mod srg_params;

pub use cayley::{cayley, verify_srg, Graph, SrgCheck};
pub use class_function::{center_obstruction, class_meet_nonempty, phi_report, PhiReport};
pub use error::{Error, Result};
pub use group::FiniteGroup;
pub use group_ring::{verify_pds, GroupRingElem, PdsCandidate, PdsCertificate};
pub use scalar::Scalar;
pub use srg_params::{AbelianVerdict, FeasibilityVerdict, SrgParams};

/// Parameters in machine integers.
pub type Params = SrgParams<i64>;
/// Parameters in arbitrary precision.
pub type BigParams = SrgParams<num_bigint::BigInt>;
pub type IntGroupRingElem<'g> = GroupRingElem<'g, i64>;
