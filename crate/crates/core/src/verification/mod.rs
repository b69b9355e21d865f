//! Numerical certificates: weak form, entropy conditions, power-law fits of
//! the singular behaviour and the classical/weak agreement map.

mod entropy;
mod fit;
mod scan;
pub mod suite;
mod weak_form;

pub use entropy::{lax_gaps, oleinik_scan, rh_residual, LaxGaps, OleinikReport};
pub use fit::{fit_power_law, holder_fit, holder_sample, FitReport, HolderTarget};
pub use scan::{
    agreement_disagreement_scan, classical_interior_points, omega_a_points, wedge_points,
    AgreementReport,
};
pub use weak_form::{weak_form_residual, weak_form_residual_displaced, TestFunction};
