//! Free-field realization of induced modules over natural parabolics.

mod carrier;
mod realization;
mod verify;
mod weyl;

use std::sync::Arc;

pub use carrier::{wakimoto_module, WakimotoModule};
pub use realization::{level_zero, FieldTerm, Free, GSym, Realization};
pub use verify::{
    chevalley, dump_realization, match_to_verma, phi, verify_homomorphism, HomomorphismReport, MatchReport,
    RealizationDump, RelationViolation, WeightBlock,
};
pub use weyl::{weyl_product, OscMode, WeylMono, WeylPoly};

use crate::algebra::CartanType;
use crate::error::Result;
use crate::module::WeightModule;
use crate::partitions::{natural_parabolic, ImaginarySpec, ParabolicSubalgebra};

/// The functor `V ↦ W(V)` for a fixed natural parabolic.
#[derive(Clone, Debug)]
pub struct ImaginaryWakimotoFunctor {
    pub parabolic: ParabolicSubalgebra,
}

impl ImaginaryWakimotoFunctor {
    /// Natural parabolic for `omega` with the full Heisenberg subalgebra in the
    /// Levi factor.
    pub fn new(t: CartanType, omega: &[usize], level: i64) -> Result<Self> {
        let alg = crate::algebra::AffineAlgebra::new(t);
        Ok(ImaginaryWakimotoFunctor { parabolic: natural_parabolic(&alg, omega, ImaginarySpec::Full, level)? })
    }

    pub fn apply(&self, v: Arc<dyn WeightModule>) -> Result<WakimotoModule> {
        wakimoto_module(self.parabolic.clone(), v)
    }
}
