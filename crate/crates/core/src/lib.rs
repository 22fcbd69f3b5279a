//! Exact-arithmetic Hankel transforms of generating functions defined by
//! quadratic continued fractions, with (alpha, beta) Somos-4 certification.
//!
//! The library works entirely over arbitrary-precision rationals — no
//! floating point anywhere. Its pieces:
//!
//! - [`rational`]: the exact scalar type.
//! - [`series`]: truncated formal power series and a fixed-point solver for
//!   self-referential defining equations.
//! - [`cf`]: the canonical quadratic continued-fraction form, the quadratic
//!   transformation tau and its orbit, canonical-form fitting, and the
//!   closed-form Somos-4 certificate with its residual identities.
//! - [`hankel`]: Hankel matrices, exact determinants (fraction-free Bareiss
//!   plus a cofactor oracle), and the orbit product formula for Hankel
//!   transforms.
//! - [`somos`]: (alpha, beta) Somos-4 generation, division-free residual
//!   checking, and parameter fitting.
//! - [`gf`]: a small expression language for generating functions with a
//!   self-reference symbol.
//! - [`presets`], [`pipeline`], [`report`]: built-in conjecture families and
//!   the end-to-end verification pipeline with deterministic reports.

pub mod cf;
pub mod gf;
pub mod hankel;
pub mod pipeline;
pub mod presets;
pub mod rational;
pub mod report;
pub mod rng;
pub mod series;
pub mod somos;

pub use cf::{
    fit_canonical_cf, induction_residual, orbit_somos_residual, product_sum_residual,
    series_from_cf, somos_certificate, tau_orbit, tau_transform, CFParams, CanonicalFit, CfError,
    SomosCertificate, TauOrbit,
};
pub use gf::{bindings, eval_gf, parse_gf, pretty_print, Bindings, GFExpr, GfError};
pub use hankel::{
    det_bareiss, det_naive, hankel_matrix, hankel_transform, hankel_via_orbit, HankelError,
    OrbitHankel, RationalMatrix,
};
pub use pipeline::{
    degeneracy_reason, expected_somos_params, somos_seed_pipeline, verify_preset, verify_sweep,
    PipelineError, SweepResult,
};
pub use presets::{somos_seed_series, PresetError, PresetId, ALL_PRESETS};
pub use rational::Rational;
pub use report::{ResidualSet, VerificationReport};
pub use series::{fixed_point_solve, PowerSeries, SeriesError};
pub use somos::{somos4_fit, somos4_generate, somos4_residuals, Somos4Params, SomosError};

#[cfg(test)]
mod tests {
    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn core_types_are_shareable_across_threads() {
        assert_send_sync::<crate::Rational>();
        assert_send_sync::<crate::PowerSeries>();
        assert_send_sync::<crate::CFParams>();
        assert_send_sync::<crate::TauOrbit>();
        assert_send_sync::<crate::RationalMatrix>();
        assert_send_sync::<crate::VerificationReport>();
    }
}
