//! Numerical laboratory for quantum vacuum-fluctuation engines.
//!
//! An interacting many-body system sits in its entangled ground state; local
//! energy measurements project it onto the separable eigenbasis of the local
//! Hamiltonian, and any subsystem caught in an excited state is reset by a
//! local pulse, extracting the excess energy as work. The measurement
//! apparatus foots the bill ("quantum heat"), and the cycle closes by
//! relaxation back to the entangled ground state through a cold bath.
//!
//! This crate computes the figures of merit of that cycle — average work `W`,
//! quantum heat `Q`, local entanglement gap `Δ`, efficiency `η = W/Q`, and
//! work standard deviation `σ` — for several families of working media:
//!
//! - [`two_qubit`]: two coupled qubits, fully closed-form.
//! - [`chain_ff`]: uniform closed qubit chains via the free-fermion
//!   (Jordan–Wigner + Bogoliubov) solution, with thermodynamic-limit
//!   elliptic-integral forms and weak/strong-coupling asymptotics.
//! - [`open_chain`]: open chains with per-site parameters, perturbative
//!   weak- and deep-strong-coupling closed forms.
//! - [`exact`]: dense exact-diagonalization oracle for arbitrary qubit
//!   chains (N ≤ 14) plus a reproducible Monte Carlo cycle sampler.
//! - [`oscillator`]: coupled harmonic-oscillator networks — two-oscillator
//!   closed forms and outcome probabilities, general couplings via the
//!   matrix square root `Ω = √K`, linear chains and D-dimensional lattices.
//! - [`dynamics`]: measurement dynamics of the two-qubit engine with an
//!   explicit meter qubit, low-temperature relaxation rates, and the
//!   resulting power estimate.
//!
//! All analytic routes are cross-validated against independent brute-force
//! oracles (exact diagonalization, quadrature, Monte Carlo) in the test
//! suites; `tests/acceptance.rs` runs the full battery.

pub mod chain_ff;
pub mod dynamics;
pub mod elliptic;
pub mod exact;
pub mod linalg;
pub mod metrics;
pub mod open_chain;
pub mod oscillator;
pub mod two_qubit;

pub use metrics::{metrics_from_energies, EngineMetrics, GroundStateEnergies};
