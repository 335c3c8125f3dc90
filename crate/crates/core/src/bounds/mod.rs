//! Analytic estimates behind `ω(k, H)`.
//!
//! Everything here is evaluated in log scale: quantities such as `(k!)^ℓ`
//! at `ℓ ≈ 2200` overflow any float long before they become interesting.
//! Bounds with an "`ℓ ≥ e^s`" or "`log H ≥ s e^s`" guarantee are still
//! evaluated outside that range and carry a [`Flagged`] hypothesis bit.

pub mod functions;
pub mod lemmas;
pub mod maxima;
pub mod params;
pub mod report;
pub mod tail;

pub use functions::{
    d_of_k, epsilon_h, f_func, f_unsimplified, omega_theorem, omega_theorem_loglog, q_func, r_func,
    r_func_with, s_func, theorem_hypothesis, theta, z_inverse, Flagged,
};
pub use lemmas::{a_u0_bound, i1_bound, l_star_bound, proof_steps, sum_l_bound, ProofStep};
pub use maxima::{
    c_n_max, c_of_k, c_small_max, max_abs_product, max_product_bound, raw_max_product, table_value,
    MaxEstimate,
};
pub use params::{BoundParams, DConstant};
pub use report::BoundReport;
pub use tail::{gamma_tail, gamma_tail_series, TailEvaluation};
