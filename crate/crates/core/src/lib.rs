//! Dynamics of entangled two-mode cavity fields in squeezed vacuum reservoirs.
//!
//! The crate evolves the density matrix of two single-mode cavities coupled
//! either to separate single-mode-squeezed reservoirs or to one common
//! two-mode-squeezed reservoir, and quantifies the entanglement of the modes
//! along the way (concurrence for singly excited states, logarithmic
//! negativity for doubly excited ones). Closed-form solutions for the ordinary
//! vacuum and for the squeezed-coherence decay serve as independent ground
//! truth for the numerical engine.

pub mod error;
pub mod fock;
pub mod linalg;
pub mod lindblad;
pub mod measures;
pub mod oracles;
pub mod propagator;

pub use error::{Error, Result};

/// Double-precision complex scalar used throughout.
pub type C64 = num_complex::Complex64;
/// Dense complex matrix.
pub type CMat = ndarray::Array2<C64>;
/// Dense complex vector.
pub type CVec = ndarray::Array1<C64>;
