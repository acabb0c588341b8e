//! # susyloops
//!
//! Supersymmetric (Darboux/Wronskian) partners of the quantum harmonic
//! oscillator and the dynamics they inherit.
//!
//! Starting from `V₀(x) = x²/2` and `k` seed solutions with factorization
//! energies `ε₁ > ε₂ > … > ε_k` (all below the oscillator ground level), the
//! crate builds the partner potential `V_k`, its spectrum
//! `{ε_k, …, ε₁} ∪ {n + 1/2}`, the polynomial Heisenberg algebra generated by
//! the natural ladder operators `L_k^± = B_k^+ a^± B_k`, the nonlinear coherent
//! states `L_k^-|z⟩ = z|z⟩`, the evolution loops of `U(t) = e^{-iH_k t}` and the
//! Aharonov–Anandan geometric phases of cyclic states.
//!
//! Every closed form is paired with an independent numerical route:
//!
//! - `V_k` from the Wronskian formula and from the iterated Riccati chain
//!   ([`susychain`]);
//! - the analytic spectrum against a finite-difference discretization solved
//!   by Sturm bisection ([`numverify`]);
//! - the hypergeometric coherent-state phase against the coefficient sum
//!   ([`loops`], [`states`]).
//!
//! Units are natural (`ħ = m = ω = 1`).
//!
//! ## Modules
//!
//! - [`specfun`]: log-Gamma, Kummer `₁F₁`, generalized `₀F_q`.
//! - [`seed`]: seed solutions `u(x; ε, ν)` and their derivatives.
//! - [`susychain`]: grids, Wronskians, Riccati chain, intertwiners.
//! - [`algebra`]: spectrum descriptor, ladder polynomials, ladder action.
//! - [`states`]: state vectors and nonlinear coherent states.
//! - [`loops`]: evolution loops and geometric phases.
//! - [`numverify`]: discretized Hamiltonian eigenvalue oracle.
//! - [`cli`]: the `susyloops` command-line front end.
//!
//! See `examples/` for one runnable program per capability.

#![forbid(unsafe_code)]
// `!(a <= b)` guards also reject NaN; frozen reference values keep all their digits.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod algebra;
pub mod cli;
mod dd;
pub mod error;
pub mod loops;
pub mod numverify;
pub mod seed;
pub mod specfun;
pub mod states;
pub mod susychain;

pub use algebra::{Direction, LadderPolynomials, Polynomial, SpectrumDescriptor};
pub use error::{Error, Result};
pub use loops::{LoopKind, LoopReport, PhaseResult};
pub use seed::{SeedEval, SeedSpec};
pub use states::{CoherentState, StateVector};
pub use susychain::{Grid, PotentialTable, RiccatiChain, SusyChain, WronskianTable};
