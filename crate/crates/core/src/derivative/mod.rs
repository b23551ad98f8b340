//! Analytic derivatives of the QR factorisation with respect to a scalar
//! parameter, given the direction `∂A`.
//!
//! * [`thin`]: `∂Q_mn`, `∂R_nn` (algorithm independent).
//! * [`omega`]: the skew-symmetric `Ω` blocks with `∂Q_mm = Q_mm·Ω_mm`.
//! * [`wy`]: `∂Y`, `∂T`, `∂τ` of the compact WY and factored-form representations.
//! * [`full`]: `∂Q_mp` for the Householder `Q`, and the assembled `∂Q_mm`, `∂R_mn`.
//! * [`givens`]: the 2×1 case showing the `∂Q_mp` formula fails for a Givens `Q`.

pub mod full;
pub mod givens;
pub mod omega;
pub mod thin;
pub mod wy;

pub use full::{dq_mm_product_rule, dq_mp_forms, full_q_derivative, DqMpForms, FullDerivative};
pub use givens::{givens_2x1_counterexample, GivensReport};
pub use omega::{omega_pp, omega_thin, OmegaBlocks};
pub use thin::{thin_derivative, ThinDerivative};
pub use wy::{factored_derivative, wy_derivative, z_block, FactoredDerivative, WYDerivative, ZBlock};
