//! Perturbative closed forms for open qubit chains with per-site
//! frequencies and per-bond couplings, in the two limits where the chain is
//! analytically transparent.
//!
//! Weak coupling (H_int as perturbation): the ground state acquires
//! amplitudes on the N−1 nearest-neighbor pair excitations only, giving
//!
//! ```text
//! W = Δ = (1/4) Σ_j g_j²/(ω_j+ω_{j+1})     η = 1/2
//! P(1_j 1_{j+1}) = (g_j/(ω_j+ω_{j+1}))²/4
//! ```
//!
//! Deep strong coupling (H_loc as perturbation): the positive-parity
//! combination of the two antialigned σ^x product states is the ground
//! state; every even-excitation outcome is equiprobable, so
//!
//! ```text
//! W = (1/2) Σ_j ω_j     Δ = (1/2) Σ_j g_j     η = (1 + Σg/Σω)⁻¹
//! ```
//!
//! Both operations flag (rather than reject) parameters outside their
//! regime, so parameter sweeps can cross regimes without aborting.

use crate::metrics::{metrics_from_energies, EngineMetrics, GroundStateEnergies};
use thiserror::Error;

/// Reduced bond couplings above this trip the weak-coupling warning.
pub const WEAK_REGIME_LIMIT: f64 = 0.2;

/// g/ω ratios below this trip the deep-strong-coupling warning.
pub const STRONG_REGIME_LIMIT: f64 = 5.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OpenChainError {
    #[error("invalid open chain: {0}")]
    InvalidSpec(String),
}

/// Open chain of N ≥ 2 qubits: frequencies ω_j and N−1 bond couplings g_j.
#[derive(Debug, Clone, PartialEq)]
pub struct OpenChainSpec {
    omegas: Vec<f64>,
    couplings: Vec<f64>,
}

impl OpenChainSpec {
    pub fn new(omegas: Vec<f64>, couplings: Vec<f64>) -> Result<Self, OpenChainError> {
        if omegas.len() < 2 {
            return Err(OpenChainError::InvalidSpec(format!(
                "need at least 2 qubits, got {}",
                omegas.len()
            )));
        }
        if omegas.iter().any(|&w| !(w > 0.0)) {
            return Err(OpenChainError::InvalidSpec(
                "all frequencies must be positive".into(),
            ));
        }
        if couplings.len() != omegas.len() - 1 {
            return Err(OpenChainError::InvalidSpec(format!(
                "expected {} couplings, got {}",
                omegas.len() - 1,
                couplings.len()
            )));
        }
        Ok(Self { omegas, couplings })
    }

    pub fn uniform(n: usize, omega: f64, g: f64) -> Result<Self, OpenChainError> {
        Self::new(vec![omega; n], vec![g; n.saturating_sub(1)])
    }

    pub fn n(&self) -> usize {
        self.omegas.len()
    }

    pub fn omegas(&self) -> &[f64] {
        &self.omegas
    }

    pub fn couplings(&self) -> &[f64] {
        &self.couplings
    }

    /// Per-bond frequency sums ω_j + ω_{j+1}.
    fn bond_sums(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.couplings
            .iter()
            .enumerate()
            .map(|(j, &g)| (g, self.omegas[j] + self.omegas[j + 1]))
    }
}

/// Output of [`weak_coupling_metrics`].
#[derive(Debug, Clone, PartialEq)]
pub struct WeakCouplingResult {
    pub metrics: EngineMetrics,
    /// Probability of measuring the local ground state.
    pub p_ground: f64,
    /// P(1_j 1_{j+1}) for each bond j.
    pub pair_probabilities: Vec<f64>,
    /// Set when some g_j/(ω_j+ω_{j+1}) exceeds [`WEAK_REGIME_LIMIT`].
    pub regime_warning: bool,
}

/// Second-order perturbative metrics and outcome probabilities, valid for
/// g_j ≪ ω_j + ω_{j+1}.
pub fn weak_coupling_metrics(spec: &OpenChainSpec) -> WeakCouplingResult {
    let mut work = 0.0;
    let mut e_loc2 = 0.0;
    let mut pair_probabilities = Vec::with_capacity(spec.couplings.len());
    let mut worst_ratio = 0.0f64;
    for (g, bond_sum) in spec.bond_sums() {
        let ratio = g / bond_sum;
        worst_ratio = worst_ratio.max(ratio.abs());
        let p = 0.25 * ratio * ratio;
        pair_probabilities.push(p);
        work += 0.25 * g * g / bond_sum;
        e_loc2 += p * bond_sum * bond_sum; // = g²/4
    }
    let p_ground = 1.0 - pair_probabilities.iter().sum::<f64>();
    // Far outside the regime the implied-distribution variance e_loc2 − W²
    // goes negative; clamp so sweeps crossing regimes still get a value.
    let variance = (e_loc2 - work * work).max(0.0);
    let metrics = metrics_from_energies(GroundStateEnergies {
        e_loc_expect: work,
        e_loc2_expect: work * work + variance,
        e0_loc: 0.0,
        e_gs: -work, // Δ = W at this order
    })
    .expect("variance clamped non-negative");
    WeakCouplingResult {
        metrics,
        p_ground,
        pair_probabilities,
        regime_warning: worst_ratio > WEAK_REGIME_LIMIT,
    }
}

/// Output of [`strong_coupling_metrics`].
#[derive(Debug, Clone, PartialEq)]
pub struct StrongCouplingResult {
    pub metrics: EngineMetrics,
    /// Set when min_j g_j / max_j ω_j falls below [`STRONG_REGIME_LIMIT`].
    pub regime_warning: bool,
}

/// Zeroth-order deep-strong-coupling metrics, valid for g_j ≫ ω_j.
///
/// σ comes from the equiprobable even-parity outcome distribution of the
/// positive-parity ground state: the bits of an even-parity uniform string
/// are pairwise independent, so Var(Σ l_j ω_j) = Σ ω_j²/4.
pub fn strong_coupling_metrics(spec: &OpenChainSpec) -> StrongCouplingResult {
    let sum_omega: f64 = spec.omegas.iter().sum();
    let sum_omega2: f64 = spec.omegas.iter().map(|w| w * w).sum();
    let sum_g: f64 = spec.couplings.iter().sum();

    let work = 0.5 * sum_omega;
    let gap = 0.5 * sum_g;
    let variance = 0.25 * sum_omega2;
    let metrics = metrics_from_energies(GroundStateEnergies {
        e_loc_expect: work,
        e_loc2_expect: work * work + variance,
        e0_loc: 0.0,
        e_gs: -gap,
    })
    .expect("variance is non-negative");

    let min_g = spec.couplings.iter().cloned().fold(f64::INFINITY, f64::min);
    let max_omega = spec.omegas.iter().cloned().fold(0.0f64, f64::max);
    StrongCouplingResult {
        metrics,
        regime_warning: min_g / max_omega < STRONG_REGIME_LIMIT,
    }
}
