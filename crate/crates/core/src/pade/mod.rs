//! Explicit simultaneous approximations to `e^{1/n}, …, e^{k/n}`.
//!
//! For the nodes `α_s = s/n` and an exponent vector `ℓ̄`, the auxiliary
//! polynomial `Ω(x) = ∏ (α_s − x)^{ℓ_s} = Σ σ_i x^i` yields
//! `A_0(t) = Σ t^{L−i} i! σ_i` and, from the shifted nodes `α_s − α_j`, the
//! polynomials `A_j(t)` with `e^{α_j t} A_0(t) − A_j(t) = O(t^{L+1})`.
//! Taking `ℓ̄^{(u)}` (all `ℓ` except `ℓ − 1` at index `u`) for `u = 0..=k`
//! and scaling by `n^{kℓ}/(ℓ−1)!` gives the integer system.

pub mod approx;
pub mod determinant;
pub mod fast;
pub mod json;
pub mod omega;
pub mod vectors;

pub use approx::{
    a0_poly, aj_poly, normalize_system, remainder_series, remainder_series_of, remainder_value,
    ApproximationSystem,
};
pub use determinant::{bareiss_determinant, system_determinant};
pub use fast::{normalized_values, IntegerRoute};
pub use json::SystemDocument;
pub use omega::{omega_poly, sigma_closed_form, sigma_closed_form_all};
pub use vectors::{check_parameters, AlphaVector, BetaVector, ExponentVector, Nodes};
