//! Closed-form two-qubit engine.
//!
//! Two qubits with frequencies ω_A ≥ ω_B coupled through (g/2)·σ_A^x σ_B^x.
//! Everything is a function of the reduced coupling γ = g/(ω_A+ω_B) and the
//! detuning δ = (ω_A−ω_B)/(ω_A+ω_B). The interacting eigenstates mix
//! {|00⟩, |11⟩} (angle φ) and {|01⟩, |10⟩} (angle ψ); the ground state is
//! cos φ |00⟩ − sin φ |11⟩, so a single local measurement on either qubit
//! resolves the post-measurement state.

use crate::metrics::{metrics_from_energies, EngineMetrics, GroundStateEnergies};
use std::f64::consts::FRAC_PI_4;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TwoQubitError {
    #[error("invalid two-qubit spec: {0}")]
    InvalidSpec(String),
    /// The trade-off curve η(W) is only defined for 0 ≤ W < (ω_A+ω_B)/2.
    #[error("work {work} outside [0, {max}) where the trade-off is defined")]
    WorkOutOfRange { work: f64, max: f64 },
}

/// Two coupled qubits; requires ω_A ≥ ω_B > 0 (so 0 ≤ δ < 1) and g ≥ 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitSpec {
    omega_a: f64,
    omega_b: f64,
    g: f64,
}

impl TwoQubitSpec {
    pub fn new(omega_a: f64, omega_b: f64, g: f64) -> Result<Self, TwoQubitError> {
        if !(omega_a > 0.0 && omega_b > 0.0) {
            return Err(TwoQubitError::InvalidSpec(format!(
                "frequencies must be positive, got ({omega_a}, {omega_b})"
            )));
        }
        if omega_a < omega_b {
            return Err(TwoQubitError::InvalidSpec(format!(
                "require omega_a >= omega_b (delta >= 0), got ({omega_a}, {omega_b})"
            )));
        }
        if !(g >= 0.0) {
            return Err(TwoQubitError::InvalidSpec(format!(
                "coupling must be non-negative, got {g}"
            )));
        }
        Ok(Self { omega_a, omega_b, g })
    }

    /// Construct from the sum ω_A+ω_B and the reduced parameters (γ, δ).
    pub fn from_reduced(sum: f64, gamma: f64, delta: f64) -> Result<Self, TwoQubitError> {
        if !(sum > 0.0) {
            return Err(TwoQubitError::InvalidSpec(format!(
                "frequency sum must be positive, got {sum}"
            )));
        }
        if !(0.0..1.0).contains(&delta) {
            return Err(TwoQubitError::InvalidSpec(format!(
                "detuning delta must lie in [0, 1), got {delta}"
            )));
        }
        Self::new(
            0.5 * sum * (1.0 + delta),
            0.5 * sum * (1.0 - delta),
            gamma * sum,
        )
    }

    pub fn omega_a(&self) -> f64 {
        self.omega_a
    }

    pub fn omega_b(&self) -> f64 {
        self.omega_b
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    /// ω_A + ω_B, the natural energy scale.
    pub fn sum(&self) -> f64 {
        self.omega_a + self.omega_b
    }

    /// Reduced coupling γ = g/(ω_A+ω_B).
    pub fn gamma(&self) -> f64 {
        self.g / self.sum()
    }

    /// Reduced detuning δ = (ω_A−ω_B)/(ω_A+ω_B) ∈ [0, 1).
    pub fn delta(&self) -> f64 {
        (self.omega_a - self.omega_b) / self.sum()
    }
}

/// Eigenstate angles and eigenenergies of the interacting two-qubit system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitSpectrum {
    /// Mixing angle of the {|00⟩, |11⟩} sector.
    pub phi: f64,
    /// Mixing angle of the {|01⟩, |10⟩} sector.
    pub psi: f64,
    pub e_phi_plus: f64,
    pub e_phi_minus: f64,
    pub e_psi_plus: f64,
    pub e_psi_minus: f64,
}

/// Angles and energies of the four entangled eigenstates.
///
/// tan φ = γ/(1+√(1+γ²)), tan ψ = γ/(δ+√(δ²+γ²)),
/// E_φ± = (ω_A+ω_B)/2 · (1±√(1+γ²)), E_ψ± = (ω_A+ω_B)/2 · (1±√(δ²+γ²)).
/// Both angles land in [0, π/2); at δ = 0 the ψ sector mixes maximally
/// (ψ = π/4), which also covers the degenerate point γ = δ = 0.
pub fn spectrum(spec: &TwoQubitSpec) -> TwoQubitSpectrum {
    let gamma = spec.gamma();
    let delta = spec.delta();
    let half_sum = 0.5 * spec.sum();

    let root_phi = (1.0 + gamma * gamma).sqrt();
    let root_psi = (delta * delta + gamma * gamma).sqrt();

    let phi = gamma.atan2(1.0 + root_phi);
    let psi = if delta == 0.0 {
        FRAC_PI_4
    } else {
        gamma.atan2(delta + root_psi)
    };

    TwoQubitSpectrum {
        phi,
        psi,
        e_phi_plus: half_sum * (1.0 + root_phi),
        // 1 − √(1+γ²) cancels at small γ; −γ²/(1+√(1+γ²)) does not.
        e_phi_minus: -half_sum * gamma * gamma / (1.0 + root_phi),
        e_psi_plus: half_sum * (1.0 + root_psi),
        e_psi_minus: half_sum * (1.0 - root_psi),
    }
}

/// Probabilities of the two measurement outcomes (|00⟩, |11⟩).
///
/// P_11 = (1 − 1/√(1+γ²))/2, evaluated as γ²/(2√(1+γ²)(1+√(1+γ²))) to
/// avoid cancellation at small γ; the pair sums to one exactly.
pub fn outcome_probabilities(spec: &TwoQubitSpec) -> (f64, f64) {
    let p11 = excited_probability(spec.gamma());
    (1.0 - p11, p11)
}

fn excited_probability(gamma: f64) -> f64 {
    let root = (1.0 + gamma * gamma).sqrt();
    0.5 * gamma * gamma / (root * (1.0 + root))
}

/// Engine figures of merit for the two-qubit engine.
///
/// W = (ω_A+ω_B)/2 · (1 − 1/√(1+γ²)), Q = (ω_A+ω_B)/2 · γ²/√(1+γ²),
/// η = 1/(1+√(1+γ²)), σ = (ω_A+ω_B)/2 · γ/√(1+γ²); Δ = −E_φ⁻.
/// At γ = 0 the efficiency is undefined (W = Q = 0).
pub fn metrics(spec: &TwoQubitSpec) -> EngineMetrics {
    let gamma = spec.gamma();
    let sum = spec.sum();
    let root = (1.0 + gamma * gamma).sqrt();

    // Ground state cos φ |00⟩ − sin φ |11⟩: the only excited outcome carries
    // local energy ω_A+ω_B, so ⟨H_loc⟩ = P_11 (ω_A+ω_B) and
    // ⟨H_loc²⟩ = P_11 (ω_A+ω_B)². Cancellation-free forms throughout.
    let p11 = excited_probability(gamma);
    let e = GroundStateEnergies {
        e_loc_expect: sum * p11,
        e_loc2_expect: sum * sum * p11,
        e0_loc: 0.0,
        e_gs: -0.5 * sum * gamma * gamma / (1.0 + root),
    };
    metrics_from_energies(e).expect("two-qubit variance is non-negative by construction")
}

/// Efficiency as a function of the work output, Eq.-of-curve form
/// η = 1 − (ω_A+ω_B) / (2(ω_A+ω_B−W)); defined for 0 ≤ W < (ω_A+ω_B)/2.
pub fn efficiency_work_tradeoff(spec: &TwoQubitSpec, work: f64) -> Result<f64, TwoQubitError> {
    let sum = spec.sum();
    if !(0.0..0.5 * sum).contains(&work) {
        return Err(TwoQubitError::WorkOutOfRange {
            work,
            max: 0.5 * sum,
        });
    }
    Ok(1.0 - sum / (2.0 * (sum - work)))
}
