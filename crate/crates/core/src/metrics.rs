//! Engine-agnostic figures of merit.
//!
//! Every working medium in this crate reduces to four ground-state energies:
//! the expectation values of the local Hamiltonian and its square in the
//! interacting ground state, the local ground-state energy, and the
//! interacting ground-state energy. [`metrics_from_energies`] turns those
//! into work, heat, gap, efficiency, and work standard deviation:
//!
//! ```text
//! W = ⟨H_loc⟩ − E_0loc        Δ = E_0loc − E_gs       Q = W + Δ
//! η = W/Q (undefined at Q=0)  σ = √(⟨H_loc²⟩ − ⟨H_loc⟩²)
//! ```

use thiserror::Error;

/// Relative tolerance below which a negative variance is attributed to
/// eigensolver round-off and clamped to zero.
pub const VARIANCE_CLAMP_TOL: f64 = 1e-12;

/// The four ground-state energy expectation values every model must supply.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroundStateEnergies {
    /// ⟨H_loc⟩ in the interacting ground state.
    pub e_loc_expect: f64,
    /// ⟨H_loc²⟩ in the interacting ground state.
    pub e_loc2_expect: f64,
    /// Ground-state energy of the local Hamiltonian alone.
    pub e0_loc: f64,
    /// Ground-state energy of the full interacting Hamiltonian.
    pub e_gs: f64,
}

/// Figures of merit for one engine cycle.
///
/// `heat == work + gap` holds exactly as computed; `efficiency` is `None`
/// when `heat == 0` (e.g. at zero coupling) so emitters can print an empty
/// cell instead of NaN. For energies violating the ⟨l|H_int|l⟩ = 0 premise,
/// `gap` may be negative and `efficiency` may leave [0, 1]; the type
/// represents such inputs without judging them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EngineMetrics {
    /// Average work output W.
    pub work: f64,
    /// Average quantum heat Q supplied by the measurement apparatus.
    pub heat: f64,
    /// Local entanglement gap Δ.
    pub gap: f64,
    /// η = W/Q, or `None` when Q = 0.
    pub efficiency: Option<f64>,
    /// Standard deviation σ of the work output across cycle realizations.
    pub std_dev: f64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricsError {
    /// ⟨H_loc²⟩ − ⟨H_loc⟩² came out negative beyond round-off tolerance.
    #[error("local energy variance {variance:.3e} is negative beyond tolerance")]
    InvalidEnergies { variance: f64 },
}

/// Assemble the engine figures of merit from ground-state energies.
///
/// Variances in `[-VARIANCE_CLAMP_TOL·max(1, ⟨H_loc⟩²), 0)` are clamped to
/// zero; anything more negative is an error.
pub fn metrics_from_energies(e: GroundStateEnergies) -> Result<EngineMetrics, MetricsError> {
    let work = e.e_loc_expect - e.e0_loc;
    let gap = e.e0_loc - e.e_gs;
    let heat = work + gap;

    let variance = e.e_loc2_expect - e.e_loc_expect * e.e_loc_expect;
    let variance = if variance >= 0.0 {
        variance
    } else if variance >= -VARIANCE_CLAMP_TOL * f64::max(1.0, e.e_loc_expect * e.e_loc_expect) {
        0.0
    } else {
        return Err(MetricsError::InvalidEnergies { variance });
    };

    let efficiency = if heat == 0.0 { None } else { Some(work / heat) };

    let m = EngineMetrics {
        work,
        heat,
        gap,
        efficiency,
        std_dev: variance.sqrt(),
    };
    // Invariant by construction; keep it visible.
    debug_assert_eq!(m.heat, m.work + m.gap);
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uncoupled_system_is_all_zero_with_undefined_efficiency() {
        let m = metrics_from_energies(GroundStateEnergies {
            e_loc_expect: 0.0,
            e_loc2_expect: 0.0,
            e0_loc: 0.0,
            e_gs: 0.0,
        })
        .unwrap();
        assert_eq!(m.work, 0.0);
        assert_eq!(m.heat, 0.0);
        assert_eq!(m.gap, 0.0);
        assert_eq!(m.efficiency, None);
        assert_eq!(m.std_dev, 0.0);
    }

    #[test]
    fn table_arithmetic() {
        let m = metrics_from_energies(GroundStateEnergies {
            e_loc_expect: 1.0,
            e_loc2_expect: 1.0,
            e0_loc: 0.5,
            e_gs: 0.2,
        })
        .unwrap();
        assert_eq!(m.work, 0.5);
        assert!((m.heat - 0.8).abs() < 1e-15);
        assert!((m.gap - 0.3).abs() < 1e-15);
        assert!((m.efficiency.unwrap() - 0.625).abs() < 1e-15);
        assert_eq!(m.std_dev, 0.0);
    }

    #[test]
    fn round_off_variance_is_clamped() {
        let m = metrics_from_energies(GroundStateEnergies {
            e_loc_expect: 2.0,
            e_loc2_expect: 4.0 - 3.0e-12, // variance -3e-12, within 1e-12 * 4
            e0_loc: 0.0,
            e_gs: -1.0,
        })
        .unwrap();
        assert_eq!(m.std_dev, 0.0);
    }

    #[test]
    fn genuinely_negative_variance_is_an_error() {
        let err = metrics_from_energies(GroundStateEnergies {
            e_loc_expect: 2.0,
            e_loc2_expect: 3.9,
            e0_loc: 0.0,
            e_gs: -1.0,
        })
        .unwrap_err();
        assert!(matches!(err, MetricsError::InvalidEnergies { .. }));
    }

    #[test]
    fn heat_is_work_plus_gap_exactly() {
        // Exercise awkward magnitudes; the identity must hold bit-for-bit
        // because heat is computed as work + gap.
        for &(a, b, c, d) in &[
            (1.0e-9, 1.1e-18, 0.0, -3.0e2),
            (7.3, 60.0, 0.1, -2.0),
            (1.0e8, 1.1e16, 2.0e7, 1.9e7),
        ] {
            let m = metrics_from_energies(GroundStateEnergies {
                e_loc_expect: a,
                e_loc2_expect: b,
                e0_loc: c,
                e_gs: d,
            })
            .unwrap();
            assert_eq!(m.heat, m.work + m.gap);
        }
    }
}
