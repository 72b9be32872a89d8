//! Explicit partial difference sets: the triangular family, the two sets of
//! order 27, and the Hermitian-quadrangle family of order `q³`.

mod godsil;
mod hermitian;
mod order27;
mod triangular;

pub use godsil::{godsil_pds, GodsilConstruction, GodsilInvariants};
pub use hermitian::{build_hermitian_geometry, build_hermitian_geometry_capped, HermitianGeometry, Point, HERMITIAN_CAP};
pub use order27::{order27_pds, Order27Construction, Order27Variant};
pub use triangular::{triangular_pds, TriangularConstruction};

use crate::cayley::{cayley, verify_srg, SrgCheck};
use crate::group::FiniteGroup;
use crate::group_ring::{verify_pds, PdsCandidate, PdsCertificate};
use crate::srg_params::SrgParams;
use crate::Result;

/// Both independent checks of a subset against a parameter set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certification {
    pub params: SrgParams<i64>,
    pub pds: PdsCertificate,
    pub srg: SrgCheck,
}

impl Certification {
    pub fn run(group: &FiniteGroup, subset: &[usize], params: &SrgParams<i64>) -> Result<Certification> {
        let c = PdsCandidate::new(group, subset)?;
        let pds = verify_pds(&c, params)?;
        let srg = verify_srg(&cayley(group, subset)?);
        Ok(Certification { params: params.clone(), pds, srg })
    }

    /// The `(k, λ, μ)` counted on the Cayley graph equal the parameters.
    pub fn srg_agrees(&self) -> bool {
        let p = &self.params;
        self.srg.params().map(|(k, l, m)| (k as i64, l as i64, m as i64)) == Some((p.k, p.lambda, p.mu))
    }

    pub fn passed(&self) -> bool {
        self.pds.passed() && self.srg_agrees()
    }
}
