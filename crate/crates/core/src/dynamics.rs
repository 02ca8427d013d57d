//! Cycle dynamics for the two-qubit engine: the measurement step modeled
//! with an explicit meter qubit, and the relaxation step modeled with a
//! low-temperature GKSL rate equation.
//!
//! During measurement the three-qubit system (A, B, meter M) evolves under
//! H_loc + H_int + H_M with H_M = g_M σ_A⁺σ_A⁻ σ_M^x. Starting from
//! cos φ |000⟩ − sin φ |110⟩, four of the eight amplitudes stay exactly
//! zero; the live ones oscillate at the four Bohr frequencies
//!
//! ```text
//! Ω_pq = (ω_A+ω_B)/2 · (1 + pγ_M + q√((1+pγ_M)² + γ²)),  p,q = ±
//! ```
//!
//! and admit a closed-form solution used here as the oracle for the
//! adaptive integrator. The meter readout is modeled as complete after
//! half a period of the fastest beat, t_M = π/ν with ν = Ω₊₊ − Ω₋₋.
//!
//! Relaxation to the entangled ground state through a cold bath keeps only
//! the downhill rates Γ± between the eigenstates (φ⁺, ψ⁺, ψ⁻, φ⁻); the
//! triangular rate equation integrates in closed form. Populations settle
//! on the timescale t_p = 1/Γ₋, coherences on t_c = 2/(Γ₊+Γ₋), and the
//! engine power is estimated as P ≈ W/(t_M + 5 t_p).

use crate::two_qubit::{self, TwoQubitSpec};
use nalgebra::Matrix4;
use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DynamicsError {
    #[error("invalid dynamics spec: {0}")]
    InvalidSpec(String),
    #[error("integrator step size collapsed at t = {t} (h = {step:.3e})")]
    IntegrationFailure { t: f64, step: f64 },
    /// Γ₋ = 0 (resonant qubits with γ > 0): the ψ⁻ → φ⁻ channel closes and
    /// t_p diverges.
    #[error("relaxation is degenerate: gamma_minus = {gamma_minus:.3e}")]
    DegenerateRelaxation { gamma_minus: f64 },
}

/// Meter qubit coupled to qubit A with strength g_M.
///
/// g_M = 0 is accepted as the meter switched off, which is useful as a
/// null test of the integrator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeterSpec {
    g_m: f64,
}

impl MeterSpec {
    pub fn new(g_m: f64) -> Result<Self, DynamicsError> {
        if !(g_m >= 0.0) {
            return Err(DynamicsError::InvalidSpec(format!(
                "meter coupling must be non-negative, got {g_m}"
            )));
        }
        Ok(Self { g_m })
    }

    pub fn g_m(&self) -> f64 {
        self.g_m
    }

    /// γ_M = g_M/(ω_A+ω_B).
    pub fn gamma_m(&self, spec: &TwoQubitSpec) -> f64 {
        self.g_m / spec.sum()
    }
}

/// Cold-bath parameters for the relaxation step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelaxationSpec {
    /// Energy-independent bath spectral density K.
    pub spectral_density: f64,
    /// k_B T in energy units.
    pub temperature: f64,
}

impl RelaxationSpec {
    pub fn new(spectral_density: f64, temperature: f64) -> Result<Self, DynamicsError> {
        if !(spectral_density > 0.0) {
            return Err(DynamicsError::InvalidSpec(format!(
                "spectral density must be positive, got {spectral_density}"
            )));
        }
        if !(temperature >= 0.0) {
            return Err(DynamicsError::InvalidSpec(format!(
                "temperature must be non-negative, got {temperature}"
            )));
        }
        Ok(Self {
            spectral_density,
            temperature,
        })
    }
}

/// Time-resolved three-qubit state during the measurement step.
///
/// Amplitude index is the basis state `abc` (qubit A, qubit B, meter M),
/// i.e. `4a + 2b + c`. The four components 010, 011, 100, 101 are zero for
/// the engine's initial condition and stay so.
#[derive(Debug, Clone)]
pub struct ThreeQubitTrajectory {
    pub times: Vec<f64>,
    pub amplitudes: Vec<[Complex64; 8]>,
    /// ⟨H_loc⟩(t)
    pub e_loc: Vec<f64>,
    /// ⟨H_int⟩(t)
    pub e_int: Vec<f64>,
    /// ⟨H_M⟩(t)
    pub e_meter: Vec<f64>,
}

impl ThreeQubitTrajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// |Ψ_state(t_i)|².
    pub fn probability(&self, i: usize, state: usize) -> f64 {
        self.amplitudes[i][state].norm_sqr()
    }

    /// Total norm Σ|Ψ|² at step i.
    pub fn norm(&self, i: usize) -> f64 {
        self.amplitudes[i].iter().map(|a| a.norm_sqr()).sum()
    }

    /// ⟨H_loc + H_int⟩(t_i), the two-qubit share of the energy.
    pub fn e_two_qubit(&self, i: usize) -> f64 {
        self.e_loc[i] + self.e_int[i]
    }
}

struct Hamiltonian3 {
    omega_a: f64,
    omega_b: f64,
    g: f64,
    g_m: f64,
}

impl Hamiltonian3 {
    /// dψ/dt = −i H ψ.
    fn rhs(&self, y: &[Complex64; 8]) -> [Complex64; 8] {
        let mut out = [Complex64::ZERO; 8];
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    let i = 4 * a + 2 * b + c;
                    let mut h = (a as f64 * self.omega_a + b as f64 * self.omega_b) * y[i];
                    h += 0.5 * self.g * y[4 * (1 - a) + 2 * (1 - b) + c];
                    if a == 1 {
                        h += self.g_m * y[4 * a + 2 * b + (1 - c)];
                    }
                    out[i] = -Complex64::i() * h;
                }
            }
        }
        out
    }

    fn energies(&self, y: &[Complex64; 8]) -> (f64, f64, f64) {
        let mut e_loc = 0.0;
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    e_loc += (a as f64 * self.omega_a + b as f64 * self.omega_b)
                        * y[4 * a + 2 * b + c].norm_sqr();
                }
            }
        }
        let pair = |i: usize, j: usize| (y[i].conj() * y[j]).re;
        let e_int = self.g * (pair(0, 6) + pair(1, 7) + pair(2, 4) + pair(3, 5));
        let e_meter = 2.0 * self.g_m * (pair(4, 5) + pair(6, 7));
        (e_loc, e_int, e_meter)
    }
}

const ATOL: f64 = 1e-12;
const RTOL: f64 = 1e-10;

/// Integrate the three-qubit Schrödinger equation from the post-relaxation
/// state cos φ |000⟩ − sin φ |110⟩, recording the state every `dt_out` up
/// to `t_end`.
pub fn evolve_measurement(
    spec: &TwoQubitSpec,
    meter: &MeterSpec,
    t_end: f64,
    dt_out: f64,
) -> Result<ThreeQubitTrajectory, DynamicsError> {
    if !(t_end > 0.0) || !(dt_out > 0.0) {
        return Err(DynamicsError::InvalidSpec(format!(
            "need positive t_end and dt_out, got ({t_end}, {dt_out})"
        )));
    }
    let h3 = Hamiltonian3 {
        omega_a: spec.omega_a(),
        omega_b: spec.omega_b(),
        g: spec.g(),
        g_m: meter.g_m(),
    };
    let phi = two_qubit::spectrum(spec).phi;
    let mut y = [Complex64::ZERO; 8];
    y[0b000] = Complex64::new(phi.cos(), 0.0);
    y[0b110] = Complex64::new(-phi.sin(), 0.0);

    let mut times = vec![0.0];
    let mut amplitudes = vec![y];
    let mut t = 0.0;
    let mut h = dt_out.min(t_end) * 1e-2;
    let mut next = dt_out.min(t_end);
    while t < t_end {
        let target = next.min(t_end);
        integrate_to(&h3, &mut y, &mut t, target, &mut h)?;
        times.push(t);
        amplitudes.push(y);
        next += dt_out;
    }

    let (mut e_loc, mut e_int, mut e_meter) = (Vec::new(), Vec::new(), Vec::new());
    for a in &amplitudes {
        let (l, i, m) = h3.energies(a);
        e_loc.push(l);
        e_int.push(i);
        e_meter.push(m);
    }
    Ok(ThreeQubitTrajectory {
        times,
        amplitudes,
        e_loc,
        e_int,
        e_meter,
    })
}

/// Dormand–Prince 5(4) with PI-free step control, integrating to `target`
/// exactly.
fn integrate_to(
    h3: &Hamiltonian3,
    y: &mut [Complex64; 8],
    t: &mut f64,
    target: f64,
    h: &mut f64,
) -> Result<(), DynamicsError> {
    #[rustfmt::skip]
    const A: [[f64; 6]; 6] = [
        [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
        [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
        [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
        [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
        [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
    ];
    // b5 − b4: error weights, including the k7 (FSAL) stage.
    const E: [f64; 7] = [
        35.0 / 384.0 - 5179.0 / 57600.0,
        0.0,
        500.0 / 1113.0 - 7571.0 / 16695.0,
        125.0 / 192.0 - 393.0 / 640.0,
        -2187.0 / 6784.0 + 92097.0 / 339200.0,
        11.0 / 84.0 - 187.0 / 2100.0,
        -1.0 / 40.0,
    ];

    let min_step = 1e-14 * target.abs().max(1.0);
    while *t < target {
        if *h < min_step {
            return Err(DynamicsError::IntegrationFailure { t: *t, step: *h });
        }
        let step = h.min(target - *t);
        let mut k = [[Complex64::ZERO; 8]; 7];
        k[0] = h3.rhs(y);
        for stage in 0..6 {
            let mut ys = *y;
            for (s, ks) in k.iter().enumerate().take(stage + 1) {
                let a = A[stage][s];
                if a != 0.0 {
                    for (yi, ki) in ys.iter_mut().zip(ks) {
                        *yi += step * a * ki;
                    }
                }
            }
            k[stage + 1] = h3.rhs(&ys);
        }
        // Stage 7 used A[5] (the 5th-order weights), so k[6] = f(y_new).
        let mut y_new = *y;
        for (s, ks) in k.iter().enumerate().take(6) {
            let a = A[5][s];
            if a != 0.0 {
                for (yi, ki) in y_new.iter_mut().zip(ks) {
                    *yi += step * a * ki;
                }
            }
        }

        let mut err_sq = 0.0;
        for i in 0..8 {
            let mut e = Complex64::ZERO;
            for (s, ks) in k.iter().enumerate() {
                e += E[s] * ks[i];
            }
            e *= step;
            let scale = ATOL + RTOL * y[i].norm().max(y_new[i].norm());
            err_sq += (e.re / scale).powi(2) + (e.im / scale).powi(2);
        }
        let err = (err_sq / 16.0).sqrt();

        if err <= 1.0 {
            *t += step;
            *y = y_new;
            let grow = if err == 0.0 {
                5.0
            } else {
                (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
            };
            *h = step * grow;
        } else {
            *h = step * (0.9 * err.powf(-0.2)).clamp(0.2, 1.0);
        }
    }
    Ok(())
}

/// The four Bohr frequencies Ω_pq, ordered (++, +−, −+, −−).
pub fn bohr_frequencies(spec: &TwoQubitSpec, meter: &MeterSpec) -> [f64; 4] {
    let gamma = spec.gamma();
    let gamma_m = meter.gamma_m(spec);
    let half_sum = 0.5 * spec.sum();
    let mut out = [0.0; 4];
    let mut idx = 0;
    for p in [1.0, -1.0] {
        for q in [1.0, -1.0] {
            let a = 1.0 + p * gamma_m;
            out[idx] = half_sum * (a + q * (a * a + gamma * gamma).sqrt());
            idx += 1;
        }
    }
    out
}

/// Closed-form amplitudes (Ψ000, Ψ001, Ψ110, Ψ111) at time t; requires
/// g > 0 (the four-mode decomposition degenerates at zero coupling).
pub fn analytic_amplitudes(
    spec: &TwoQubitSpec,
    meter: &MeterSpec,
    t: f64,
) -> [Complex64; 4] {
    assert!(spec.g() > 0.0, "analytic solution needs g > 0");
    let phi = two_qubit::spectrum(spec).phi;
    let (cos_phi, sin_phi) = (phi.cos(), phi.sin());
    let omegas = bohr_frequencies(spec, meter);
    let signs_p = [1.0, 1.0, -1.0, -1.0];

    let mut psi = [Complex64::ZERO; 4];
    for (idx, &omega) in omegas.iter().enumerate() {
        let p = signs_p[idx];
        let r = 2.0 * omega / spec.g();
        let weight = (cos_phi - r * sin_phi) / (1.0 + r * r);
        let phase = (-Complex64::i() * omega * t).exp();
        let w = 0.5 * weight * phase;
        psi[0] += w;
        psi[1] += p * w;
        psi[2] += r * w;
        psi[3] += p * r * w;
    }
    psi
}

/// Measurement-time estimate (t_M, ν): ν = Ω₊₊ − Ω₋₋ is the largest Bohr
/// frequency difference and t_M = π/ν half the corresponding beat period.
pub fn measurement_time(spec: &TwoQubitSpec, meter: &MeterSpec) -> (f64, f64) {
    let gamma = spec.gamma();
    let gamma_m = meter.gamma_m(spec);
    let plus = 1.0 + gamma_m;
    let minus = 1.0 - gamma_m;
    let nu = 0.5
        * spec.sum()
        * (2.0 * gamma_m
            + (plus * plus + gamma * gamma).sqrt()
            + (minus * minus + gamma * gamma).sqrt());
    (PI / nu, nu)
}

/// First local maximum of |Ψ111(t)|² from the analytic solution: a grid
/// scan followed by golden-section refinement. Used to validate t_M.
pub fn first_psi111_peak(spec: &TwoQubitSpec, meter: &MeterSpec, t_max: f64) -> Option<f64> {
    let p111 = |t: f64| analytic_amplitudes(spec, meter, t)[3].norm_sqr();
    let n = 4000;
    let dt = t_max / n as f64;
    let mut prev = p111(0.0);
    let mut curr = p111(dt);
    for i in 1..n {
        let next = p111((i + 1) as f64 * dt);
        if curr >= prev && curr > next {
            // Bracketed: golden-section maximize on [t_i − dt, t_i + dt].
            let (mut lo, mut hi) = ((i as f64 - 1.0) * dt, (i as f64 + 1.0) * dt);
            let inv_phi = 0.5 * (5.0f64.sqrt() - 1.0);
            let mut x1 = hi - inv_phi * (hi - lo);
            let mut x2 = lo + inv_phi * (hi - lo);
            let (mut f1, mut f2) = (p111(x1), p111(x2));
            for _ in 0..200 {
                if f1 < f2 {
                    lo = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = lo + inv_phi * (hi - lo);
                    f2 = p111(x2);
                } else {
                    hi = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = hi - inv_phi * (hi - lo);
                    f1 = p111(x1);
                }
                if hi - lo < 1e-12 * t_max {
                    break;
                }
            }
            return Some(0.5 * (lo + hi));
        }
        prev = curr;
        curr = next;
    }
    None
}

/// Downhill transition rates and characteristic times of the cold-bath
/// relaxation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelaxationRates {
    /// Rate of φ⁺ → ψ⁺ and ψ⁺ → φ⁻ transitions.
    pub gamma_plus: f64,
    /// Rate of φ⁺ → ψ⁻ and ψ⁻ → φ⁻ transitions.
    pub gamma_minus: f64,
    /// Population relaxation time 1/Γ₋.
    pub t_p: f64,
    /// Coherence decay time 2/(Γ₊+Γ₋).
    pub t_c: f64,
    /// Set when k_B T is not small against the φ⁻ ↔ ψ⁻ gap.
    pub low_temperature_warning: bool,
}

/// Γ± = πK (1 + 1/√(1+γ²)) (1 ± γ/√(δ²+γ²)).
///
/// Errors with [`DynamicsError::DegenerateRelaxation`] at δ = 0 with γ > 0,
/// where Γ₋ vanishes and the ground state decouples from ψ⁻.
pub fn relaxation_rates(
    spec: &TwoQubitSpec,
    relax: &RelaxationSpec,
) -> Result<RelaxationRates, DynamicsError> {
    let gamma = spec.gamma();
    let delta = spec.delta();
    let k = relax.spectral_density;

    let prefactor = PI * k * (1.0 + 1.0 / (1.0 + gamma * gamma).sqrt());
    let ratio = if gamma == 0.0 {
        0.0
    } else {
        gamma / (delta * delta + gamma * gamma).sqrt()
    };
    let gamma_plus = prefactor * (1.0 + ratio);
    let gamma_minus = prefactor * (1.0 - ratio);
    if gamma_minus <= 1e-14 * gamma_plus {
        return Err(DynamicsError::DegenerateRelaxation { gamma_minus });
    }

    // Low-temperature condition: k_B T small against E_ψ⁻ − E_φ⁻.
    let s = two_qubit::spectrum(spec);
    let gap = s.e_psi_minus - s.e_phi_minus;
    let low_temperature_warning = relax.temperature > 0.1 * gap;

    let t_p = 1.0 / gamma_minus;
    let t_c = 2.0 / (gamma_plus + gamma_minus);
    debug_assert!(t_p >= t_c);
    Ok(RelaxationRates {
        gamma_plus,
        gamma_minus,
        t_p,
        t_c,
        low_temperature_warning,
    })
}

/// Rate-equation generator M in the (φ⁺, ψ⁺, ψ⁻, φ⁻) basis: dp/dt = −M p.
/// Lower triangular; eigenvalues are {Γ₊+Γ₋, Γ₊, Γ₋, 0}.
pub fn rate_matrix(gamma_plus: f64, gamma_minus: f64) -> Matrix4<f64> {
    Matrix4::new(
        gamma_plus + gamma_minus, 0.0, 0.0, 0.0, //
        -gamma_plus, gamma_plus, 0.0, 0.0, //
        -gamma_minus, 0.0, gamma_minus, 0.0, //
        0.0, -gamma_plus, -gamma_minus, 0.0,
    )
}

/// Exact solution of the triangular rate equation at the requested times.
///
/// Populations are ordered (φ⁺, ψ⁺, ψ⁻, φ⁻) and must sum to one. The
/// (1 − e^{−Γt})/Γ factors are evaluated with `exp_m1`, which remains exact
/// through the degenerate limits Γ₋ → 0 and Γ₊ ≈ Γ₋.
pub fn evolve_populations(
    initial: [f64; 4],
    gamma_plus: f64,
    gamma_minus: f64,
    times: &[f64],
) -> Vec<[f64; 4]> {
    let sum: f64 = initial.iter().sum();
    assert!(
        (sum - 1.0).abs() < 1e-9,
        "populations must sum to 1, got {sum}"
    );
    let ramp = |rate: f64, t: f64| {
        if rate == 0.0 {
            t
        } else {
            -(-rate * t).exp_m1() / rate
        }
    };
    times
        .iter()
        .map(|&t| {
            let total = gamma_plus + gamma_minus;
            let p1 = initial[0] * (-total * t).exp();
            let p2 = (-gamma_plus * t).exp()
                * (initial[1] + gamma_plus * initial[0] * ramp(gamma_minus, t));
            let p3 = (-gamma_minus * t).exp()
                * (initial[2] + gamma_minus * initial[0] * ramp(gamma_plus, t));
            let p4 = 1.0 - p1 - p2 - p3;
            [p1, p2, p3, p4]
        })
        .collect()
}

/// Engine power estimate P ≈ W/(t_M + 5 t_p); the factor 5 buys a 99%
/// ground-state return probability before the next cycle.
pub fn power_estimate(
    spec: &TwoQubitSpec,
    meter: &MeterSpec,
    relax: &RelaxationSpec,
) -> Result<f64, DynamicsError> {
    let work = two_qubit::metrics(spec).work;
    let (t_m, _) = measurement_time(spec, meter);
    let rates = relaxation_rates(spec, relax)?;
    Ok(work / (t_m + 5.0 * rates.t_p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn paper_specs() -> (TwoQubitSpec, MeterSpec) {
        // g = 10 (ω_A+ω_B), g_M = 50 (ω_A+ω_B) with ω_A = 1.2, ω_B = 0.8.
        let spec = TwoQubitSpec::new(1.2, 0.8, 20.0).unwrap();
        let meter = MeterSpec::new(100.0).unwrap();
        (spec, meter)
    }

    #[test]
    fn initial_condition() {
        let (spec, meter) = paper_specs();
        let traj = evolve_measurement(&spec, &meter, 1e-3, 1e-3).unwrap();
        let phi = two_qubit::spectrum(&spec).phi;
        assert!((traj.probability(0, 0b000) - phi.cos().powi(2)).abs() < 1e-15);
        assert!((traj.probability(0, 0b110) - phi.sin().powi(2)).abs() < 1e-15);
        assert!((traj.norm(0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn meter_off_leaves_initial_subspace() {
        let spec = TwoQubitSpec::new(1.2, 0.8, 2.0).unwrap();
        let meter = MeterSpec::new(0.0).unwrap();
        let traj = evolve_measurement(&spec, &meter, 3.0, 0.1).unwrap();
        for i in 0..traj.len() {
            // The initial state is an eigenstate of the {000, 110} block:
            // populations stay frozen, everything else stays empty.
            for state in [0b001, 0b010, 0b011, 0b100, 0b101, 0b111] {
                assert!(traj.probability(i, state) < 1e-18, "leak into {state:#05b}");
            }
            let p0 = traj.probability(i, 0b000);
            assert!((p0 - traj.probability(0, 0b000)).abs() < 1e-9);
        }
    }

    #[test]
    fn norm_and_nulls_conserved() {
        let (spec, meter) = paper_specs();
        let (t_m, _) = measurement_time(&spec, &meter);
        let traj = evolve_measurement(&spec, &meter, 2.0 * t_m, t_m / 50.0).unwrap();
        for i in 0..traj.len() {
            assert!((traj.norm(i) - 1.0).abs() < 1e-9, "norm at step {i}");
            for state in [0b010, 0b011, 0b100, 0b101] {
                assert!(traj.probability(i, state) < 1e-18);
            }
        }
    }

    #[test]
    fn ode_matches_analytic_solution() {
        let (spec, meter) = paper_specs();
        let (t_m, _) = measurement_time(&spec, &meter);
        let traj = evolve_measurement(&spec, &meter, 2.0 * t_m, t_m / 20.0).unwrap();
        for (i, &t) in traj.times.iter().enumerate() {
            let psi = analytic_amplitudes(&spec, &meter, t);
            for (slot, state) in [(0usize, 0b000usize), (1, 0b001), (2, 0b110), (3, 0b111)]
                .into_iter()
            {
                let diff = (traj.amplitudes[i][state] - psi[slot]).norm();
                assert!(diff < 1e-8, "t={t} state={state:#05b} diff={diff:.2e}");
            }
        }
    }

    #[test]
    fn analytic_initial_condition_and_normalization() {
        for &(g, g_m) in &[(0.5, 1.0), (2.0, 10.0), (20.0, 100.0), (60.0, 3.0)] {
            let spec = TwoQubitSpec::new(1.2, 0.8, g).unwrap();
            let meter = MeterSpec::new(g_m).unwrap();
            let phi = two_qubit::spectrum(&spec).phi;
            let psi0 = analytic_amplitudes(&spec, &meter, 0.0);
            assert!((psi0[0].re - phi.cos()).abs() < 1e-12, "psi000(0)");
            assert!((psi0[2].re + phi.sin()).abs() < 1e-12, "psi110(0)");
            assert!(psi0[1].norm() < 1e-12 && psi0[3].norm() < 1e-12);
            for &t in &[0.3, 1.7, 4.0] {
                let psi = analytic_amplitudes(&spec, &meter, t);
                let norm: f64 = psi.iter().map(|a| a.norm_sqr()).sum();
                assert!((norm - 1.0).abs() < 1e-12, "norm at t={t}");
            }
        }
    }

    #[test]
    fn measurement_time_limits() {
        // γ → 0: ν = (ω_A+ω_B)/2 · (2γ_M + |1+γ_M| + |1−γ_M|).
        let spec = TwoQubitSpec::new(1.2, 0.8, 0.0).unwrap();
        let meter = MeterSpec::new(0.6).unwrap();
        let (_, nu) = measurement_time(&spec, &meter);
        assert!((nu - (0.6 + 1.3 + 0.7)).abs() < 1e-14);

        // γ_M ≫ γ, 1: ν ≈ 2 g_M, t_M ≈ π/(2 g_M).
        let spec = TwoQubitSpec::new(1.2, 0.8, 1.0).unwrap();
        let meter = MeterSpec::new(2.0e4).unwrap();
        let (t_m, nu) = measurement_time(&spec, &meter);
        assert!((nu - 2.0 * 2.0e4).abs() / nu < 1e-4);
        assert!((t_m - PI / (2.0 * 2.0e4)).abs() / t_m < 1e-4);
    }

    #[test]
    fn peak_near_t_m() {
        let (spec, meter) = paper_specs();
        let (t_m, _) = measurement_time(&spec, &meter);
        let peak = first_psi111_peak(&spec, &meter, 3.0 * t_m).unwrap();
        assert!(
            (peak - t_m).abs() / t_m < 0.1,
            "peak {peak} vs t_M {t_m}"
        );
    }

    #[test]
    fn relaxation_rate_values() {
        // γ = 0: Γ± = 2πK.
        let spec = TwoQubitSpec::new(1.2, 0.8, 0.0).unwrap();
        let relax = RelaxationSpec::new(0.01, 0.0).unwrap();
        let r = relaxation_rates(&spec, &relax).unwrap();
        assert!((r.gamma_plus - 2.0 * PI * 0.01).abs() < 1e-15);
        assert!((r.gamma_minus - 2.0 * PI * 0.01).abs() < 1e-15);
        assert!((r.t_p - 1.0 / (2.0 * PI * 0.01)).abs() < 1e-10);
        assert_eq!(r.t_p, r.t_c);

        // δ → 1⁻ at fixed γ: Γ₋ → πK (1 + 1/√(1+γ²)) (1 − γ/√(1+γ²)).
        let gamma: f64 = 0.7;
        let spec = TwoQubitSpec::from_reduced(2.0, gamma, 1.0 - 1e-9).unwrap();
        let r = relaxation_rates(&spec, &relax).unwrap();
        let expect = PI * 0.01 * (1.0 + 1.0 / (1.0 + gamma * gamma).sqrt())
            * (1.0 - gamma / (1.0 + gamma * gamma).sqrt());
        assert!((r.gamma_minus - expect).abs() / expect < 1e-6);
    }

    #[test]
    fn degenerate_relaxation_at_zero_detuning() {
        let spec = TwoQubitSpec::new(1.0, 1.0, 2.0).unwrap();
        let relax = RelaxationSpec::new(0.01, 0.0).unwrap();
        assert!(matches!(
            relaxation_rates(&spec, &relax),
            Err(DynamicsError::DegenerateRelaxation { .. })
        ));
    }

    #[test]
    fn rate_matrix_eigenvalues() {
        let (gp, gm) = (0.31, 0.12);
        let m = rate_matrix(gp, gm);
        // Independent route: generic complex eigensolve.
        let dm = nalgebra::DMatrix::from_fn(4, 4, |i, j| m[(i, j)]);
        let mut eigs: Vec<f64> = dm
            .complex_eigenvalues()
            .iter()
            .map(|z| {
                assert!(z.im.abs() < 1e-14);
                z.re
            })
            .collect();
        eigs.sort_by(f64::total_cmp);
        let expected = [0.0, gm, gp, gp + gm];
        for (a, b) in eigs.iter().zip(expected) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn population_solutions() {
        let (gp, gm) = (0.9, 0.2);
        // Ground state stays put.
        let traj = evolve_populations([0.0, 0.0, 0.0, 1.0], gp, gm, &[0.0, 1.0, 10.0]);
        for p in &traj {
            assert_eq!(*p, [0.0, 0.0, 0.0, 1.0]);
        }
        // From ψ⁺: p_φ⁻(t) = 1 − e^{−Γ₊ t}.
        let times: Vec<f64> = (0..20).map(|i| 0.3 * i as f64).collect();
        let traj = evolve_populations([0.0, 1.0, 0.0, 0.0], gp, gm, &times);
        for (p, &t) in traj.iter().zip(&times) {
            assert!((p[3] - (1.0 - (-gp * t).exp())).abs() < 1e-14);
        }
        // Any initial state: simplex preserved, φ⁻ fills up.
        let init = [0.4, 0.3, 0.2, 0.1];
        let traj = evolve_populations(init, gp, gm, &times);
        for p in &traj {
            let sum: f64 = p.iter().sum();
            assert!((sum - 1.0).abs() < 1e-12);
            assert!(p.iter().all(|&x| (-1e-12..=1.0 + 1e-12).contains(&x)));
        }
        // 99% in the ground state by 5 t_p when Γ₋ is clearly slowest.
        let t_p = 1.0 / gm;
        for init in [[1.0, 0.0, 0.0, 0.0], [0.0, 1.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0]] {
            let p = evolve_populations(init, gp, gm, &[5.0 * t_p]);
            assert!(p[0][3] >= 0.99, "init {init:?}: {}", p[0][3]);
        }
    }

    #[test]
    fn power_estimate_composition() {
        let spec = TwoQubitSpec::new(1.2, 0.8, 2.0).unwrap();
        let meter = MeterSpec::new(10.0).unwrap();
        let relax = RelaxationSpec::new(0.01, 0.0).unwrap();
        let p = power_estimate(&spec, &meter, &relax).unwrap();
        let w = two_qubit::metrics(&spec).work;
        let (t_m, _) = measurement_time(&spec, &meter);
        let t_p = relaxation_rates(&spec, &relax).unwrap().t_p;
        assert!((p - w / (t_m + 5.0 * t_p)).abs() < 1e-15);
        assert!(p > 0.0);

        // Larger detuning at fixed γ extracts the same work faster.
        let lo = TwoQubitSpec::from_reduced(2.0, 1.0, 0.2).unwrap();
        let hi = TwoQubitSpec::from_reduced(2.0, 1.0, 0.8).unwrap();
        let p_lo = power_estimate(&lo, &meter, &relax).unwrap();
        let p_hi = power_estimate(&hi, &meter, &relax).unwrap();
        assert!(p_hi > p_lo);
    }
}
