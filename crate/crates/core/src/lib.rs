//! Generalized spherical means M_t^{α,β} on radial profiles.

pub mod envelopes;
pub mod kernel;
pub mod pde;
pub mod quad;
pub mod regions;
pub mod special_fun;
pub mod transforms;
pub mod verify;
