//! Nearest-neighbor oscillator chains and D-dimensional lattices.
//!
//! The open-boundary chain has K = k₀(2I − T) with T the hop matrix, whose
//! sine modes are known exactly: k_m = 4k₀ sin²(mπ/(2(N+1))). Since the
//! diagonal of K is uniform, every engine quantity reduces to O(N) mode
//! sums — no dense matrices needed:
//!
//! ```text
//! ⟨H_loc⟩ = (k₀/2) Σ 1/Ω_m + ¼ Σ Ω_m     Σ Ω_m = √k₀ (cot(π/(4(N+1))) − 1)
//! σ² = (k₀²/2) Tr K⁻¹ − Nk₀/4            Tr K⁻¹ = N(N+2)/(6k₀)
//! ```
//!
//! The local energy grows as N ln N while both reference energies stay
//! linear in N, so the 1D chain's efficiency creeps toward one. In D
//! dimensions the mode vector runs over {1..M}^D with
//! k_m⃗ = 4k₀ Σ_α sin²(m_απ/(2(M+1))) and the infrared log is cut off, so
//! work per oscillator saturates.

use super::{CouplingMatrix, OscillatorError};
use crate::metrics::{metrics_from_energies, EngineMetrics, GroundStateEnergies};
use nalgebra::DMatrix;
use std::f64::consts::PI;

/// Fitted value of the constant C in ⟨H_loc⟩ ≃ N√k₀/(2π)·(ln(4N/π) + C).
pub const LOG_CONSTANT_FITTED: f64 = 2.577;

/// First Euler–Maclaurin estimate of the same constant.
pub const LOG_CONSTANT_EULER_MACLAURIN: f64 = 2.5;

/// Largest lattice (total oscillator count) the mode sums will iterate.
pub const LATTICE_SITE_CAP: usize = 4_000_000;

/// Chain metrics plus the two exactly-known diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearChainMetrics {
    pub metrics: EngineMetrics,
    /// Tr K⁻¹ = Σ_m 1/k_m, closed form N(N+2)/(6k₀).
    pub trace_k_inverse: f64,
    /// Σ_m Ω_m, closed form √k₀ (cot(π/(4(N+1))) − 1).
    pub sum_frequencies: f64,
}

fn validate_chain(n: usize, k0: f64) -> Result<(), OscillatorError> {
    if n < 2 {
        return Err(OscillatorError::InvalidSpec(format!(
            "chain needs at least 2 oscillators, got {n}"
        )));
    }
    if !(k0 > 0.0) {
        return Err(OscillatorError::InvalidSpec(format!(
            "force constant must be positive, got {k0}"
        )));
    }
    Ok(())
}

/// Engine metrics of the 1D chain from exact mode sums.
pub fn linear_chain_metrics(n: usize, k0: f64) -> Result<LinearChainMetrics, OscillatorError> {
    validate_chain(n, k0)?;
    let nf = n as f64;
    let mut sum_omega = 0.0;
    let mut sum_inv_omega = 0.0;
    let mut trace_k_inverse = 0.0;
    for m in 1..=n {
        let s = (m as f64 * PI / (2.0 * (nf + 1.0))).sin();
        let k_m = 4.0 * k0 * s * s;
        let omega_m = k_m.sqrt();
        sum_omega += omega_m;
        sum_inv_omega += 1.0 / omega_m;
        trace_k_inverse += 1.0 / k_m;
    }

    let e_loc = 0.5 * k0 * sum_inv_omega + 0.25 * sum_omega;
    let e0_loc = 0.5 * nf * (2.0 * k0).sqrt();
    let e_gs = 0.5 * sum_omega;
    let variance = 0.5 * k0 * k0 * trace_k_inverse - 0.25 * nf * k0;
    let metrics = metrics_from_energies(GroundStateEnergies {
        e_loc_expect: e_loc,
        e_loc2_expect: e_loc * e_loc + variance.max(0.0),
        e0_loc,
        e_gs,
    })
    .expect("chain variance is non-negative");
    Ok(LinearChainMetrics {
        metrics,
        trace_k_inverse,
        sum_frequencies: sum_omega,
    })
}

/// Closed form of Σ_m Ω_m.
pub fn chain_frequency_sum_closed_form(n: usize, k0: f64) -> f64 {
    k0.sqrt() * (1.0 / (PI / (4.0 * (n as f64 + 1.0))).tan() - 1.0)
}

/// Closed form of Tr K⁻¹.
pub fn chain_trace_k_inverse_closed_form(n: usize, k0: f64) -> f64 {
    n as f64 * (n as f64 + 2.0) / (6.0 * k0)
}

/// Closed form of the chain's work standard deviation,
/// σ = √(N(N−1)k₀) / (2√3).
pub fn chain_sigma_closed_form(n: usize, k0: f64) -> f64 {
    (n as f64 * (n as f64 - 1.0) * k0).sqrt() / (2.0 * 3.0f64.sqrt())
}

/// Large-N asymptotics of the three chain energies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainOscAsymptotics {
    /// ⟨H_loc⟩ ≃ N√k₀/(2π) · (ln(4N/π) + C).
    pub e_loc: f64,
    /// E_0loc ≃ N√(k₀/2).
    pub e0_loc: f64,
    /// E_gs ≃ 2N√k₀/π.
    pub e_gs: f64,
}

/// Evaluate the asymptotic forms with the log constant `c` (use
/// [`LOG_CONSTANT_FITTED`] unless exploring the Euler–Maclaurin estimate).
pub fn linear_chain_asymptotics(n: usize, k0: f64, c: f64) -> ChainOscAsymptotics {
    let nf = n as f64;
    ChainOscAsymptotics {
        e_loc: nf * k0.sqrt() / (2.0 * PI) * ((4.0 * nf / PI).ln() + c),
        e0_loc: nf * (0.5 * k0).sqrt(),
        e_gs: 2.0 * nf * k0.sqrt() / PI,
    }
}

/// Back out the log constant from the exact ⟨H_loc⟩ at one chain length:
/// C_fit = 2π ⟨H_loc⟩/(N√k₀) − ln(4N/π).
pub fn fit_log_constant(n: usize, k0: f64) -> Result<f64, OscillatorError> {
    let chain = linear_chain_metrics(n, k0)?;
    let e_loc = chain.metrics.work + n as f64 * (0.5 * k0).sqrt();
    Ok(2.0 * PI * e_loc / (n as f64 * k0.sqrt()) - (4.0 * n as f64 / PI).ln())
}

/// Engine metrics of the D-dimensional M^D lattice with nearest-neighbor
/// coupling k₀ and open boundaries, via mode sums over {1..M}^D.
pub fn lattice_metrics(m_side: usize, dim: usize, k0: f64) -> Result<EngineMetrics, OscillatorError> {
    if !(1..=3).contains(&dim) {
        return Err(OscillatorError::InvalidSpec(format!(
            "dimension must be 1, 2, or 3, got {dim}"
        )));
    }
    if m_side < 2 {
        return Err(OscillatorError::InvalidSpec(format!(
            "need at least 2 oscillators per side, got {m_side}"
        )));
    }
    if !(k0 > 0.0) {
        return Err(OscillatorError::InvalidSpec(format!(
            "force constant must be positive, got {k0}"
        )));
    }
    let n = m_side.pow(dim as u32);
    if n > LATTICE_SITE_CAP {
        return Err(OscillatorError::SizeExceeded {
            n,
            cap: LATTICE_SITE_CAP,
        });
    }

    // Per-axis sin² table; k_m⃗ = 4k₀ (s₁ + … + s_D).
    let s: Vec<f64> = (1..=m_side)
        .map(|m| {
            let x = (m as f64 * PI / (2.0 * (m_side as f64 + 1.0))).sin();
            x * x
        })
        .collect();

    let mut sum_omega = 0.0;
    let mut sum_inv_omega = 0.0;
    let mut sum_inv_k = 0.0;
    let mut accumulate = |k_m: f64| {
        let omega_m = k_m.sqrt();
        sum_omega += omega_m;
        sum_inv_omega += 1.0 / omega_m;
        sum_inv_k += 1.0 / k_m;
    };
    match dim {
        1 => {
            for &s1 in &s {
                accumulate(4.0 * k0 * s1);
            }
        }
        2 => {
            for &s1 in &s {
                for &s2 in &s {
                    accumulate(4.0 * k0 * (s1 + s2));
                }
            }
        }
        _ => {
            for &s1 in &s {
                for &s2 in &s {
                    for &s3 in &s {
                        accumulate(4.0 * k0 * (s1 + s2 + s3));
                    }
                }
            }
        }
    }

    let nf = n as f64;
    let diag = 2.0 * dim as f64 * k0; // K_jj
    let e_loc = 0.25 * (diag * sum_inv_omega + sum_omega);
    let e0_loc = 0.5 * nf * diag.sqrt();
    let e_gs = 0.5 * sum_omega;
    let variance = 0.125 * (diag * diag * sum_inv_k - nf * diag);
    Ok(metrics_from_energies(GroundStateEnergies {
        e_loc_expect: e_loc,
        e_loc2_expect: e_loc * e_loc + variance.max(0.0),
        e0_loc,
        e_gs,
    })
    .expect("lattice variance is non-negative"))
}

/// Dense coupling matrix of the same lattice (Kronecker-sum structure),
/// for cross-checking the mode sums against the generic network route at
/// moderate N.
pub fn lattice_coupling_matrix(
    m_side: usize,
    dim: usize,
    k0: f64,
) -> Result<CouplingMatrix, OscillatorError> {
    if !(1..=3).contains(&dim) || m_side < 2 {
        return Err(OscillatorError::InvalidSpec(format!(
            "bad lattice: m_side={m_side}, dim={dim}"
        )));
    }
    let n = m_side.pow(dim as u32);
    if n > 4096 {
        return Err(OscillatorError::SizeExceeded { n, cap: 4096 });
    }
    // Site index = Σ_α c_α M^α; neighbors differ by one in one coordinate.
    let coords = |site: usize| {
        let mut c = [0usize; 3];
        let mut rest = site;
        for slot in c.iter_mut().take(dim) {
            *slot = rest % m_side;
            rest /= m_side;
        }
        c
    };
    let mut k = DMatrix::zeros(n, n);
    for site in 0..n {
        k[(site, site)] = 2.0 * dim as f64 * k0;
        let c = coords(site);
        let mut stride = 1;
        for alpha in 0..dim {
            if c[alpha] + 1 < m_side {
                let neighbor = site + stride;
                k[(site, neighbor)] = -k0;
                k[(neighbor, site)] = -k0;
            }
            stride *= m_side;
        }
    }
    CouplingMatrix::new(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oscillator::{metrics_network, metrics_two_oscillator, TwoOscSpec};

    #[test]
    fn two_site_chain_equals_two_oscillator_engine() {
        // Tridiagonal 2×2 with k₀ equals the two-oscillator model at g = k₀.
        let chain = linear_chain_metrics(2, 1.3).unwrap();
        let two = metrics_two_oscillator(&TwoOscSpec::new(1.3, 1.3).unwrap());
        assert!((chain.metrics.work - two.work).abs() < 1e-12);
        assert!((chain.metrics.heat - two.heat).abs() < 1e-12);
        assert!((chain.metrics.std_dev - two.std_dev).abs() < 1e-12);
        // Mode frequencies √k₀ and √(3k₀).
        let diff = chain.sum_frequencies - (1.3f64.sqrt() + (3.0 * 1.3f64).sqrt());
        assert!(diff.abs() < 1e-12);
    }

    #[test]
    fn three_site_closed_forms() {
        let k0 = 0.8;
        let chain = linear_chain_metrics(3, k0).unwrap();
        assert!((chain.trace_k_inverse - 2.5 / k0).abs() < 1e-12);
        // σ = √(6k₀)/(2√3).
        let sigma = (6.0 * k0).sqrt() / (2.0 * 3.0f64.sqrt());
        assert!((chain.metrics.std_dev - sigma).abs() < 1e-12);
    }

    #[test]
    fn closed_forms_across_sizes() {
        for &n in &[2usize, 3, 10, 100, 1000] {
            let k0 = 1.7;
            let chain = linear_chain_metrics(n, k0).unwrap();
            let scale = chain.sum_frequencies.abs().max(1.0);
            assert!(
                (chain.sum_frequencies - chain_frequency_sum_closed_form(n, k0)).abs()
                    < 1e-10 * scale,
                "frequency sum at n={n}"
            );
            let scale = chain.trace_k_inverse.abs().max(1.0);
            assert!(
                (chain.trace_k_inverse - chain_trace_k_inverse_closed_form(n, k0)).abs()
                    < 1e-10 * scale,
                "trace at n={n}"
            );
            let sigma = chain_sigma_closed_form(n, k0);
            assert!(
                (chain.metrics.std_dev - sigma).abs() < 1e-10 * sigma.max(1.0),
                "sigma at n={n}"
            );
        }
    }

    #[test]
    fn chain_matches_dense_network_route() {
        for &n in &[2usize, 5, 30] {
            let k0 = 0.9;
            let chain = linear_chain_metrics(n, k0).unwrap();
            let k = lattice_coupling_matrix(n, 1, k0).unwrap();
            let dense = metrics_network(&k).unwrap();
            assert!((chain.metrics.work - dense.work).abs() < 1e-9);
            assert!((chain.metrics.heat - dense.heat).abs() < 1e-9);
            assert!((chain.metrics.std_dev - dense.std_dev).abs() < 1e-9);
        }
    }

    #[test]
    fn asymptotics_track_exact_values() {
        let n = 10_000;
        let k0 = 1.0;
        let chain = linear_chain_metrics(n, k0).unwrap();
        let e_loc_exact = chain.metrics.work + n as f64 * (0.5 * k0).sqrt();
        let asym = linear_chain_asymptotics(n, k0, LOG_CONSTANT_FITTED);
        assert!(
            (asym.e_loc - e_loc_exact).abs() / e_loc_exact < 0.01,
            "asym {} vs exact {}",
            asym.e_loc,
            e_loc_exact
        );
        let c_fit = fit_log_constant(n, k0).unwrap();
        assert!(
            (c_fit - LOG_CONSTANT_FITTED).abs() < 0.08,
            "fitted constant {c_fit}"
        );
        assert!(
            (c_fit - LOG_CONSTANT_EULER_MACLAURIN).abs() < 0.2,
            "Euler–Maclaurin estimate should be close too: {c_fit}"
        );
    }

    #[test]
    fn efficiency_grows_with_chain_length() {
        let eta = |n: usize| {
            linear_chain_metrics(n, 1.0)
                .unwrap()
                .metrics
                .efficiency
                .unwrap()
        };
        let mut last = 0.0;
        for &n in &[2usize, 4, 8, 16, 64, 256, 1024, 2000] {
            let e = eta(n);
            assert!(e > last, "efficiency not increasing at n={n}");
            last = e;
        }
        assert!(last > 0.9);
    }

    #[test]
    fn lattice_dim_one_equals_chain() {
        let lattice = lattice_metrics(50, 1, 2.0).unwrap();
        let chain = linear_chain_metrics(50, 2.0).unwrap().metrics;
        assert!((lattice.work - chain.work).abs() < 1e-10);
        assert!((lattice.heat - chain.heat).abs() < 1e-10);
        assert!((lattice.std_dev - chain.std_dev).abs() < 1e-10);
    }

    #[test]
    fn lattice_matches_dense_route() {
        for &(m, d) in &[(4usize, 2usize), (3, 3)] {
            let sums = lattice_metrics(m, d, 1.1).unwrap();
            let dense = metrics_network(&lattice_coupling_matrix(m, d, 1.1).unwrap()).unwrap();
            assert!((sums.work - dense.work).abs() < 1e-9, "m={m} d={d}");
            assert!((sums.heat - dense.heat).abs() < 1e-9);
            assert!((sums.std_dev - dense.std_dev).abs() < 1e-9);
        }
    }

    #[test]
    fn work_per_oscillator_decreases_with_dimension() {
        let m = 10usize;
        let w = |d: usize| {
            let n = m.pow(d as u32) as f64;
            lattice_metrics(m, d, 1.0).unwrap().work / n
        };
        let (w1, w2, w3) = (w(1), w(2), w(3));
        assert!(w1 > w2, "{w1} vs {w2}");
        assert!(w2 > w3, "{w2} vs {w3}");

        let eta = |d: usize| {
            lattice_metrics(6, d, 1.0)
                .unwrap()
                .efficiency
                .unwrap()
        };
        assert!(eta(2) > eta(3));
    }

    #[test]
    fn lattice_rejects_bad_input() {
        assert!(lattice_metrics(10, 4, 1.0).is_err());
        assert!(lattice_metrics(1, 2, 1.0).is_err());
        assert!(lattice_metrics(10, 2, 0.0).is_err());
        assert!(matches!(
            lattice_metrics(200, 3, 1.0),
            Err(OscillatorError::SizeExceeded { .. })
        ));
    }
}
