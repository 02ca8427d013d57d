//! Complete elliptic integrals K(m) and E(m) by the arithmetic-geometric
//! mean, in the *parameter* convention:
//!
//! ```text
//! K(m) = ∫₀^(π/2) dθ / √(1 − m sin²θ)
//! E(m) = ∫₀^(π/2) √(1 − m sin²θ) dθ
//! ```
//!
//! Negative parameters (needed for the qubit-chain thermodynamic limit,
//! where m = −4ωg/(ω−g)²) are reduced to [0, 1) with the imaginary-modulus
//! transformation (DLMF 19.7.5):
//!
//! ```text
//! K(−μ) = K(μ/(1+μ)) / √(1+μ)
//! E(−μ) = √(1+μ) · E(μ/(1+μ))
//! ```

use std::f64::consts::PI;

const MAX_ITER: usize = 40;

/// AGM convergence threshold (relative).
const AGM_TOL: f64 = 1e-13;

/// Complete elliptic integral of the first kind, parameter m < 1.
///
/// K(0) = π/2; K(m) → ∞ as m → 1⁻; m ≥ 1 returns infinity/NaN.
pub fn complete_elliptic_k(m: f64) -> f64 {
    if m.is_nan() || m > 1.0 {
        return f64::NAN;
    }
    if m == 1.0 {
        return f64::INFINITY;
    }
    if m < 0.0 {
        let mu = -m;
        return complete_elliptic_k(mu / (1.0 + mu)) / (1.0 + mu).sqrt();
    }
    // K(m) = π / (2 AGM(1, √(1−m)))
    let mut a = 1.0;
    let mut b = (1.0 - m).sqrt();
    for _ in 0..MAX_ITER {
        if (a - b).abs() <= AGM_TOL * a {
            break;
        }
        let an = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = an;
    }
    PI / (2.0 * a)
}

/// Complete elliptic integral of the second kind, parameter m ≤ 1.
///
/// E(0) = π/2; E(1) = 1.
pub fn complete_elliptic_e(m: f64) -> f64 {
    if m.is_nan() || m > 1.0 {
        return f64::NAN;
    }
    if m == 1.0 {
        return 1.0;
    }
    if m < 0.0 {
        let mu = -m;
        return (1.0 + mu).sqrt() * complete_elliptic_e(mu / (1.0 + mu));
    }
    // E(m) = K(m) (1 − Σₙ 2^(n−1) cₙ²), c₀² = m, cₙ = (aₙ₋₁ − bₙ₋₁)/2
    let mut a: f64 = 1.0;
    let mut b = (1.0 - m).sqrt();
    let mut sum = 0.5 * m; // n = 0 term
    let mut pow2 = 0.5;
    for _ in 0..MAX_ITER {
        if (a - b).abs() <= AGM_TOL * a {
            break;
        }
        let c = 0.5 * (a - b);
        let an = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = an;
        pow2 *= 2.0;
        sum += pow2 * c * c;
    }
    PI / (2.0 * a) * (1.0 - sum)
}
