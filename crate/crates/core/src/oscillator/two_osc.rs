//! Two coupled oscillators: closed-form metrics and the Fock-outcome
//! distribution from a joint generating function.
//!
//! H = ½(p₁²+p₂²) + ½k₀(x₁²+x₂²) + ½g(x₁−x₂)², split so the local
//! oscillators have frequency ω = √(k₀+g) while the normal modes sit at
//! ω₊ = √k₀ and ω₋ = √(k₀+2g). Local measurements find |n₁,n₂⟩ with
//!
//! ```text
//! P(n₁,n₂) = n₁! n₂! C² · [t₁^n₁ t₂^n₂] exp(a(t₁²+t₂²)/2 + b t₁t₂)²
//! a = (ω² − ω₊ω₋)/D,  b = ω(ω₋−ω₊)/D,  D = (ω+ω₊)(ω+ω₋)
//! C = 2√ω (ω₊ω₋)^¼ / √D
//! ```
//!
//! Only even n₁+n₂ appear (parity). The series coefficients are
//! accumulated in exact rational arithmetic: a and b enter as their exact
//! dyadic f64 values, so the only float rounding is one conversion per
//! table entry.

use super::{CouplingMatrix, OscillatorError};
use crate::metrics::{metrics_from_energies, EngineMetrics, GroundStateEnergies};
use nalgebra::DMatrix;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Largest supported Fock cutoff for the generating-function expansion.
pub const GEN_FUNCTION_CAP: usize = 60;

/// Two oscillators with force constant k₀ > 0 and coupling g ≥ 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoOscSpec {
    k0: f64,
    g: f64,
}

impl TwoOscSpec {
    pub fn new(k0: f64, g: f64) -> Result<Self, OscillatorError> {
        if !(k0 > 0.0) {
            return Err(OscillatorError::InvalidSpec(format!(
                "force constant must be positive, got {k0}"
            )));
        }
        if !(g >= 0.0) {
            return Err(OscillatorError::InvalidSpec(format!(
                "coupling must be non-negative, got {g}"
            )));
        }
        Ok(Self { k0, g })
    }

    pub fn k0(&self) -> f64 {
        self.k0
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    /// Local oscillator frequency ω = √(k₀+g).
    pub fn omega(&self) -> f64 {
        (self.k0 + self.g).sqrt()
    }

    /// Center-of-mass mode frequency ω₊ = √k₀.
    pub fn omega_plus(&self) -> f64 {
        self.k0.sqrt()
    }

    /// Relative mode frequency ω₋ = √(k₀+2g).
    pub fn omega_minus(&self) -> f64 {
        (self.k0 + 2.0 * self.g).sqrt()
    }

    /// The equivalent 2×2 coupling matrix [[k₀+g, −g], [−g, k₀+g]].
    pub fn coupling_matrix(&self) -> CouplingMatrix {
        let d = self.k0 + self.g;
        CouplingMatrix::new(DMatrix::from_row_slice(2, 2, &[d, -self.g, -self.g, d]))
            .expect("two-oscillator matrix is symmetric with positive diagonal")
    }
}

/// Closed-form engine metrics:
///
/// ```text
/// ⟨H_loc⟩ = (ω₊+ω₋)/4 · (ω²/(ω₊ω₋) + 1)    E_0loc = ω
/// E_gs = (ω₊+ω₋)/2                          σ = ωg/(2ω₊ω₋)
/// ```
pub fn metrics_two_oscillator(spec: &TwoOscSpec) -> EngineMetrics {
    let omega = spec.omega();
    let (wp, wm) = (spec.omega_plus(), spec.omega_minus());
    let e_loc = 0.25 * (wp + wm) * (omega * omega / (wp * wm) + 1.0);
    let sigma = omega * spec.g() / (2.0 * wp * wm);
    metrics_from_energies(GroundStateEnergies {
        e_loc_expect: e_loc,
        e_loc2_expect: e_loc * e_loc + sigma * sigma,
        e0_loc: omega,
        e_gs: 0.5 * (wp + wm),
    })
    .expect("two-oscillator variance is non-negative")
}

/// Truncated Fock-outcome table P(n₁, n₂), n ≤ n_max.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityTable {
    /// P(n₁, n₂) at entry (n₁, n₂); exactly zero for odd n₁+n₂.
    pub p: DMatrix<f64>,
    /// 1 − ΣP over the table: the probability mass beyond the cutoff.
    pub tail: f64,
    pub n_max: usize,
}

impl ProbabilityTable {
    pub fn total(&self) -> f64 {
        self.p.sum()
    }

    /// Σ P(n₁,n₂) E(n₁,n₂) with E = (n₁+n₂+1)ω: the truncated ⟨H_loc⟩.
    pub fn energy_moment(&self, omega: f64) -> f64 {
        let mut out = 0.0;
        for n1 in 0..=self.n_max {
            for n2 in 0..=self.n_max {
                out += self.p[(n1, n2)] * (n1 + n2 + 1) as f64 * omega;
            }
        }
        out
    }
}

/// Expand the generating function up to `n_max` (≤ [`GEN_FUNCTION_CAP`])
/// and fail if more than `tail_tol` probability lies beyond the cutoff.
pub fn two_oscillator_probabilities(
    spec: &TwoOscSpec,
    n_max: usize,
    tail_tol: f64,
) -> Result<ProbabilityTable, OscillatorError> {
    if n_max > GEN_FUNCTION_CAP {
        return Err(OscillatorError::TruncationInsufficient {
            n_max,
            cap: GEN_FUNCTION_CAP,
            tail: f64::NAN,
        });
    }
    let omega = spec.omega();
    let (wp, wm) = (spec.omega_plus(), spec.omega_minus());
    let denom = (omega + wp) * (omega + wm);
    let a = (omega * omega - wp * wm) / denom;
    let b = omega * (wm - wp) / denom;
    let c2 = 4.0 * omega * (wp * wm).sqrt() / denom; // C²

    let rational = |x: f64| BigRational::from_float(x).expect("finite");
    let half_a = rational(0.5 * a);
    let b_rat = rational(b);
    // factorials[k] = k! as exact rationals.
    let mut factorials: Vec<BigRational> = Vec::with_capacity(n_max + 1);
    factorials.push(BigRational::one());
    for k in 1..=n_max {
        let prev = factorials[k - 1].clone();
        factorials.push(prev * rational(k as f64));
    }

    let mut p = DMatrix::zeros(n_max + 1, n_max + 1);
    for n1 in 0..=n_max {
        for n2 in 0..=n_max {
            if (n1 + n2) % 2 == 1 {
                continue; // exact parity zero
            }
            // coeff = Σ_k (a/2)^i/i! (a/2)^j/j! b^k/k!, 2i = n1−k, 2j = n2−k.
            let mut coeff = BigRational::zero();
            for k in (n1 % 2..=n1.min(n2)).step_by(2) {
                let i = (n1 - k) / 2;
                let j = (n2 - k) / 2;
                let term = pow_rat(&half_a, i) * pow_rat(&half_a, j) * pow_rat(&b_rat, k)
                    / (&factorials[i] * &factorials[j] * &factorials[k]);
                coeff += term;
            }
            let p_rat = &factorials[n1] * &factorials[n2] * &coeff * &coeff;
            p[(n1, n2)] = c2 * p_rat.to_f64().expect("probability fits in f64");
        }
    }
    let tail = (1.0 - p.sum()).max(0.0);
    if tail > tail_tol {
        return Err(OscillatorError::TruncationInsufficient {
            n_max,
            cap: GEN_FUNCTION_CAP,
            tail,
        });
    }
    Ok(ProbabilityTable { p, tail, n_max })
}

fn pow_rat(x: &BigRational, n: usize) -> BigRational {
    let mut out = BigRational::one();
    for _ in 0..n {
        out *= x;
    }
    out
}
