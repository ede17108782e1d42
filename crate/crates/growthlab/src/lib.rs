//! growthlab: exact experiments with product sets, word balls, and translate
//! covers in finitely generated nilpotent groups.
//!
//! Everything here is exact integer arithmetic — no floats touch any set
//! computation — and every covering or inclusion the library reports has been
//! verified by exhaustive membership before it is returned.

pub mod asymptotic;
pub mod cover;
pub mod error;
pub mod fm;
pub mod functorial;
pub mod group;
pub mod product;
pub mod set;
pub mod witness;

pub use asymptotic::{
    approx_profile, criterion_cover, inner_ball_check, inverse_bound, padding_cert,
    positive_length, semigroup_certificate, ApproxProfile, CertStatus, InverseBoundCert,
    PaddingCert, ProfileEntry, SemigroupCert,
};
pub use cover::{
    min_cover, polynomial_growth_cover, ruzsa_cover, verify_cover, CoverResult, ExactLimits,
};
pub use error::{Error, Result};
pub use functorial::{lift_cover, push_cover, FiniteKernel, Hom};
pub use fm::{
    fm_power_check, lift_cover_fm, normalizes, thicken_check, truncate_semigroup, FmCheckReport,
    FmLiftReport, NormStatus, SemigroupDesc, TruncatedSet,
};
pub use group::{Coords, Element, FiniteTable, Group, GroupSpec};
pub use product::{
    ball, bass_guivarch_degree, default_fit_window, estimate_degree, growth_sequence, power,
    GrowthEstimate, GrowthRecord,
};
pub use set::ElementSet;
pub use witness::{slope_inequality, OneSidedFamily, TranslateFailure, WitnessReport};

/// Hard cap on the number of distinct elements any single enumeration may
/// produce.  Degree-four growth makes balls explode quickly; a predictable
/// failure beats memory exhaustion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub limit: usize,
}

impl Budget {
    pub const DEFAULT_LIMIT: usize = 5_000_000;

    pub fn new(limit: usize) -> Self {
        Budget { limit }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            limit: Self::DEFAULT_LIMIT,
        }
    }
}
