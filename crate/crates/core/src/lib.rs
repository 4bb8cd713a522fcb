//! Spectral solver for the time-fractional pseudo-parabolic equation
//! generated by the one-dimensional Dunkl operator: special functions,
//! the Dunkl transform, the direct Cauchy problem, and the inverse
//! source problem with stability reporting.

pub mod dunkl;
pub mod error;
pub mod forward;
pub mod fractional;
pub mod function;
pub mod grid;
pub mod inverse;
pub mod io;
pub mod params;
pub mod specfun;

pub use dunkl::{
    dunkl_apply, dunkl_apply_sq, dunkl_transform, inverse_dunkl_transform, l2_norm,
    sobolev_h2_norm, TransformPlan, DECAY_TOL,
};
pub use error::{Error, Result};
pub use forward::{
    solve_forward, solve_forward_spectral, solve_forward_spectral_ibp, spectral_symbol,
    spectral_to_field, SolutionField, SpectralEvolution,
};
pub use fractional::{caputo_l1, caputo_l1_real, spectral_ode_residual, RESIDUAL_SKIP_FRACTION};
pub use function::{PhysicalFunction, SpectralFunction};
pub use grid::{measure_weight, PhysicalGrid, SpectralGrid, TimeGrid};
pub use inverse::{
    recover_source_spectral, recover_state_spectral, solve_isp, stability_report,
    stability_report_spectral, stability_table, IspDiagnostics, SourcePair, StabilityRecord,
    StabilityRow,
};
pub use params::ProblemParams;
pub use specfun::{bessel_j_normalized, dunkl_kernel, gamma_fn, mittag_leffler, MLParams};
