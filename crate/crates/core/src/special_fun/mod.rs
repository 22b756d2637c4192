//! Real special functions behind the kernel.

pub mod asymptotics;
pub mod bessel;
pub mod gamma;
pub mod hypergeometric;
pub mod jacobi;
pub mod legendre;
mod params;

pub use asymptotics::{endpoint_asymptotic, in_exceptional_p, in_exceptional_q, AsymptoticCase, Endpoint, LegendreFunction};
pub use bessel::bessel_j;
pub use gamma::{gamma_ln, gamma_reciprocal};
pub use hypergeometric::olver_2f1;
pub use jacobi::jacobi_poly;
pub use legendre::{ferrers_p, olver_q};
pub use params::{parse_rational, rat, rat_to_f64, Params, Rational};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpecialError {
    #[error("domain error: {0}")]
    Domain(String),
}
