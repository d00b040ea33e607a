//! # gfa — graph function algebras
//!
//! A Lie algebra and Lie bialgebra structure on functions over weighted
//! graphs, together with the discrete calculus it is built from and two
//! physics applications driven by it.
//!
//! The pieces, bottom to top:
//!
//! - [`scalar`]: one arithmetic contract over four domains — `f64`,
//!   `Complex64`, exact `Z_n` residues, exact big rationals. Everything
//!   algebraic in this crate is written once against [`scalar::Scalar`]
//!   and runs exactly over the exact domains.
//! - [`graph`]: the weighted-graph model (symmetric weights `w`, optional
//!   directed weights `γ` with `w_ij = γ_ij² + γ_ji²`), a JSON wire
//!   format, and structural queries: triangles, girth, hop distances,
//!   exact maximum independent sets and two-packings, line graphs.
//! - [`calculus`]: base functions, node/edge inner products, the
//!   difference operator `d`, its adjoint `d*`, the Laplacian `Δ = d*d`,
//!   and the defect-corrected Leibniz identity `d` satisfies.
//! - [`lie`]: the bracket `[f,h]_i = Σ_j w_ij (f_i h_j − f_j h_i)`,
//!   adjoint matrices (`ad_1 = −Δ`), the Jacobiator in closed form with a
//!   brute-force cross-check, admissibility over fields and residue
//!   rings, structure constants, Killing form, center, the second-order
//!   Leibniz rule, and edge-split brackets.
//! - [`ring_weights`]: Beck zero-divisor graphs of `Z_n`, modulus
//!   qualification (at least three distinct primes; 30 is the smallest),
//!   and exhaustive/sampled searches for Jacobi-admissible zero-divisor
//!   weighings.
//! - [`bialgebra`]: the co-bracket `[h]_ij = w_ij (h_i − h_j)`, the
//!   node/edge duality pairing, the classical Yang-Baxter check for basis
//!   r-matrices, co-adjoint actions, and the Manin-double bracket.
//! - [`schrodinger`]: free-particle dynamics for `H = (ℏ²/2m)·L_u²` with
//!   purely imaginary operator weights `w = i·u`; spectral and formal
//!   plane-wave energies are both computed and their gap reported.
//! - [`fokker_planck`]: the Δ_FP operator family, Gaussian ansatz
//!   constructors, the evolution matrix `M = ½·Δ·diag(a) + ⅛·Δ²·diag(b)`,
//!   stationarity (`det M`, which vanishes structurally), eigenvalue
//!   stability, constant-weight closed forms, and weight scans.
//! - [`cli`] / [`report`]: the `gfa` binary — one subcommand per
//!   capability, deterministic JSON reports, and explicit comparison
//!   records wherever a computed value disagrees with a printed claim.
//!
//! Runnable walkthroughs live in `examples/`; the spec-level checks live
//! in `tests/acceptance.rs`.

pub mod bialgebra;
pub mod calculus;
pub mod cli;
pub mod error;
pub mod fokker_planck;
pub mod graph;
pub mod lie;
pub mod matrix;
pub mod report;
pub mod ring_weights;
pub mod scalar;
pub mod schrodinger;

pub use error::{Error, Result};
pub use scalar::{Scalar, ScalarDomain};
