//! Chaos-based image encryption from floating-point rounding divergence.
//!
//! Two simulations of Chua's circuit that compute the same real-valued
//! right-hand side with different operation orderings drift apart after a
//! few thousand fixed-step RK4 iterations. The half-distance between the
//! two pseudo-orbits is log-transformed and reduced mod 256 into a
//! keystream, which XOR-encrypts 8-bit grayscale images. The `analysis`
//! module provides the statistical tests used to validate cipher quality.

pub mod analysis;
pub mod chua;
pub mod cipher;
pub mod integrator;
pub mod keyfile;
pub mod keystream;
pub mod pgm;

pub use chua::{ChuaParams, ChuaState, StateDerivative};
pub use cipher::{decrypt_image, encrypt_image, xor_bytes, CipherError, Image};
pub use integrator::{rk4_step, simulate, RhsChoice, SimulationPlan, Trajectory};
pub use keystream::{generate_keystream, KeyConfig, Keystream, KeystreamError};
