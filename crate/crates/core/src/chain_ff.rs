//! Analytic solution of the uniform closed qubit chain via the free-fermion
//! mapping.
//!
//! A Jordan–Wigner transformation turns the chain into free fermions whose
//! boundary condition depends on the excitation-number parity: antiperiodic
//! momenta p = (2m−1)π/N for the even sector, periodic p = 2mπ/N for the
//! odd one, with m = −⌊(N−1)/2⌋ … ⌊N/2⌋. A Bogoliubov rotation (u_p, v_p)
//! then diagonalizes each momentum pair into quasiparticles of energy
//! Ω_p = √(ω² + g² + 2ωg cos p). Ground-state quantities use the even
//! sector, where the quasiparticle vacuum lives:
//!
//! ```text
//! Δ  = (Σ_p Ω_p − Nω)/2        W  = ω Σ_p v_p²
//! σ² = 2ω² Σ_p u_p² v_p²
//! ```
//!
//! For N odd the grid contains p = π with Ω_π = ω − g, which goes negative
//! past the critical point — the fingerprint of geometrical frustration in
//! the antiferromagnetic phase. The sum keeps the sign.

use crate::elliptic::{complete_elliptic_e, complete_elliptic_k};
use crate::metrics::{metrics_from_energies, EngineMetrics, GroundStateEnergies};
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChainError {
    #[error("chain needs at least {min} qubits, got {n}")]
    TooShort { n: usize, min: usize },
    /// The closed-chain free-fermion formulas do not apply at N = 2, where
    /// the two bonds coincide; use the two-qubit module instead.
    #[error("N = 2 is handled by the two-qubit closed forms")]
    DelegatesToTwoQubit,
}

/// Momentum quantization sector, fixed by the excitation-number parity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sector {
    /// Antiperiodic boundary conditions, p = (2m−1)π/N. Ground-state sums
    /// live here.
    EvenExcitations,
    /// Periodic boundary conditions, p = 2mπ/N.
    OddExcitations,
}

/// The N allowed momenta of one sector, all in (−π, π].
#[derive(Debug, Clone, PartialEq)]
pub struct MomentumGrid {
    n: usize,
    sector: Sector,
    momenta: Vec<f64>,
}

impl MomentumGrid {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sector(&self) -> Sector {
        self.sector
    }

    pub fn momenta(&self) -> &[f64] {
        &self.momenta
    }
}

/// Enumerate the sector's momenta.
///
/// Momenta are generated as integer multiples kπ/N and normalized to
/// (−π, π] exactly, so p = 0 and p = π come out bit-exact and downstream
/// code can branch on them reliably (kπ/N rounding would otherwise miss π
/// by one ulp for N odd).
pub fn momentum_grid(n: usize, sector: Sector) -> MomentumGrid {
    assert!(n >= 2, "momentum grid needs n >= 2");
    let n_i = n as i64;
    let mut momenta: Vec<f64> = (-((n_i - 1) / 2)..=n_i / 2)
        .map(|m| {
            let k = match sector {
                Sector::EvenExcitations => 2 * m - 1,
                Sector::OddExcitations => 2 * m,
            };
            // k ranges over [−N, N]; k = −N means p = −π ≡ π.
            let k = if k <= -n_i { k + 2 * n_i } else { k };
            if k == n_i {
                PI
            } else if k == 0 {
                0.0
            } else {
                k as f64 * PI / n_i as f64
            }
        })
        .collect();
    momenta.sort_by(f64::total_cmp);
    MomentumGrid { n, sector, momenta }
}

/// One Bogoliubov quasiparticle mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BogoliubovMode {
    pub p: f64,
    pub u: f64,
    pub v: f64,
    /// Quasiparticle energy Ω_p; signed (Ω_π = ω − g) at p = π.
    pub omega_p: f64,
}

/// Bogoliubov coefficients and quasiparticle energy at momentum p.
///
/// At p ∈ {0, ±π} (and at g = 0) the momentum-space Hamiltonian is already
/// diagonal: u = 1, v = 0, Ω_p = ω + g cos p.
pub fn mode(omega: f64, g: f64, p: f64) -> BogoliubovMode {
    assert!(omega > 0.0 && g >= 0.0);
    if g == 0.0 || p == 0.0 || p.abs() == PI {
        return BogoliubovMode {
            p,
            u: 1.0,
            v: 0.0,
            omega_p: omega + g * p.cos(),
        };
    }
    let cos_p = p.cos();
    let omega_p = (omega * omega + g * g + 2.0 * omega * g * cos_p).sqrt();
    let v2 = 0.5 * (1.0 - (omega + g * cos_p) / omega_p);
    let u = (1.0 - v2).sqrt();
    let v = p.signum() * v2.sqrt();
    BogoliubovMode { p, u, v, omega_p }
}

/// Exact engine metrics of the uniform closed chain of n ≥ 3 qubits, from
/// the even-sector quasiparticle sums; Q and η are assembled through the
/// shared metric layer.
pub fn metrics_closed_chain(n: usize, omega: f64, g: f64) -> Result<EngineMetrics, ChainError> {
    if n < 2 {
        return Err(ChainError::TooShort { n, min: 2 });
    }
    if n == 2 {
        return Err(ChainError::DelegatesToTwoQubit);
    }
    let grid = momentum_grid(n, Sector::EvenExcitations);
    let mut sum_omega = 0.0;
    let mut sum_v2 = 0.0;
    let mut sum_u2v2 = 0.0;
    for &p in grid.momenta() {
        let m = mode(omega, g, p);
        sum_omega += m.omega_p;
        sum_v2 += m.v * m.v;
        sum_u2v2 += m.u * m.u * m.v * m.v;
    }
    let gap = 0.5 * (sum_omega - n as f64 * omega);
    let work = omega * sum_v2;
    let variance = 2.0 * omega * omega * sum_u2v2;
    Ok(metrics_from_energies(GroundStateEnergies {
        e_loc_expect: work,
        e_loc2_expect: variance + work * work,
        e0_loc: 0.0,
        e_gs: -gap,
    })
    .expect("quasiparticle variance is non-negative"))
}

/// Per-site quantities in the N → ∞ limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermodynamicLimit {
    pub gap_per_site: f64,
    pub work_per_site: f64,
    /// σ/√N = min(ω, g)/2 in both phases.
    pub sigma_per_sqrt_site: f64,
    pub efficiency: Option<f64>,
}

/// Thermodynamic limit of the chain sums.
///
/// Away from the critical point the sums become complete elliptic
/// integrals of parameter m = −4ωg/(ω−g)²:
///
/// ```text
/// Δ/N = |ω−g|/π · E(m) − ω/2
/// W/N = ω/2 − sgn(ω−g)/(2π) · [(ω−g)E(m) + (ω+g)K(m)]
/// ```
///
/// At g = ω both are nonanalytic but finite: W/(Nω) = 1/2 − 1/π and
/// η = π/2 − 1 exactly, which this function special-cases.
pub fn thermodynamic_limit(omega: f64, g: f64) -> ThermodynamicLimit {
    assert!(omega > 0.0 && g >= 0.0);
    if g == 0.0 {
        return ThermodynamicLimit {
            gap_per_site: 0.0,
            work_per_site: 0.0,
            sigma_per_sqrt_site: 0.0,
            efficiency: None,
        };
    }
    if g == omega {
        let work = omega * (0.5 - 1.0 / PI);
        let gap = omega * (2.0 / PI - 0.5);
        return ThermodynamicLimit {
            gap_per_site: gap,
            work_per_site: work,
            sigma_per_sqrt_site: 0.5 * omega,
            efficiency: Some(PI / 2.0 - 1.0),
        };
    }
    let diff = omega - g;
    let m = -4.0 * omega * g / (diff * diff);
    let e = complete_elliptic_e(m);
    let k = complete_elliptic_k(m);
    let gap = diff.abs() / PI * e - 0.5 * omega;
    let work = 0.5 * omega - diff.signum() / (2.0 * PI) * (diff * e + (omega + g) * k);
    ThermodynamicLimit {
        gap_per_site: gap,
        work_per_site: work,
        sigma_per_sqrt_site: 0.5 * omega.min(g),
        efficiency: Some(work / (work + gap)),
    }
}

/// Closed-form asymptotics of the chain metrics in one coupling regime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainAsymptotics {
    pub gap: f64,
    pub work: f64,
    pub efficiency: Option<f64>,
    pub sigma: f64,
}

/// Weak-coupling (diamagnetic) asymptotics, g ≪ ω:
/// Δ ≃ W ≃ Ng²/(8ω), η ≃ 1/2, σ ≃ √N g/2.
pub fn weak_coupling_asymptotics(
    n: usize,
    omega: f64,
    g: f64,
) -> Result<ChainAsymptotics, ChainError> {
    if n <= 2 {
        return Err(ChainError::TooShort { n, min: 3 });
    }
    let w = n as f64 * g * g / (8.0 * omega);
    Ok(ChainAsymptotics {
        gap: w,
        work: w,
        efficiency: (g > 0.0).then_some(0.5),
        sigma: 0.5 * (n as f64).sqrt() * g,
    })
}

/// Deep-strong-coupling (antiferromagnetic) asymptotics, g ≫ ω:
/// Δ ≃ (2⌊N/2⌋ − N/2)g, W ≃ (2⌊N/2⌋ − N/2)ω, η ≃ ω/g, σ ≃ √N ω/2.
/// The ⌊N/2⌋ factor carries the even/odd frustration difference.
pub fn strong_coupling_asymptotics(
    n: usize,
    omega: f64,
    g: f64,
) -> Result<ChainAsymptotics, ChainError> {
    if n < 3 {
        return Err(ChainError::TooShort { n, min: 3 });
    }
    let count = 2.0 * (n / 2) as f64 - 0.5 * n as f64;
    Ok(ChainAsymptotics {
        gap: count * g,
        work: count * omega,
        efficiency: (g > 0.0).then_some(omega / g),
        sigma: 0.5 * (n as f64).sqrt() * omega,
    })
}
