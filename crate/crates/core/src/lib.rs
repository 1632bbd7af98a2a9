//! Exact computer algebra for the cyclotomic Witt ring `W = ⊕ Z·φ_n`.
//!
//! The crate is organised bottom-up:
//!
//! * [`arith`]: factorization, Möbius/Euler functions, Ramanujan sums and
//!   cyclotomic polynomials over big integers.
//! * [`roots`]: brute-force multisets of roots of unity, the independent
//!   oracle every closed-form formula in [`witt`] and [`lambda`] is checked
//!   against.
//! * [`witt`]: the ring itself, with Frobenius, Verschiebung, traces,
//!   projections and the finite Fourier/zeta checks.
//! * [`lambda`]: λ- and γ-operations and the gamma filtration.
//! * [`linalg`]: exact integer matrices, Hermite normal form lattices and the
//!   matrix-to-Witt-class bridge.
//! * [`rig`]: rigs, matrix props over rigs and the `F[±1]` global sections.
//! * [`spectrum`]: ideals, primes, Zariski topology and localization of
//!   finite commutative rigs.
//! * [`sweeps`]: bulk comparisons of closed forms against the oracles.
//!
//! Sweeps go through [`par`], which runs on rayon when the `parallel`
//! feature is enabled and sequentially otherwise.

pub mod arith;
pub mod error;
pub mod lambda;
pub mod linalg;
pub mod par;
pub mod poly;
pub mod rig;
pub mod roots;
pub mod spectrum;
pub mod sweeps;
pub mod witt;

pub use error::{Error, Result};
pub use lambda::WittSeries;
pub use linalg::{HnfLattice, IntMatrix};
pub use poly::IntPolynomial;
pub use roots::RootMultiset;
pub use witt::WittElement;
