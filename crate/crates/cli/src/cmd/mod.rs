pub mod kernel;
pub mod pde;
pub mod regions;
pub mod tnorm;
pub mod verify;
