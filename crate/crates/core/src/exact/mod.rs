//! Exact walk engine over Gaussian-integer Laurent polynomials in z = e^{iω},
//! and exact extraction of the trigonometric series of P₀(ω, t).

mod engine;
mod laurent;
mod series;

pub use engine::{
    exact_evolve, extract_bc, extract_konno_a, return_series_at, BcSeries, ExactQubit, ExactState, PhaseExponents,
    DEFAULT_EXACT_HORIZON,
};
pub use laurent::{gaussian, GaussianInt, LaurentPoly};
pub use series::{Dyadic, TrigSeries};
