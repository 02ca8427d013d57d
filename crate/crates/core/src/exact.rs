//! Dense exact-diagonalization oracle for qubit chains, plus a reproducible
//! Monte Carlo cycle sampler.
//!
//! Chains of N ≤ 14 qubits with per-site frequencies and per-bond σ^x σ^x
//! couplings are diagonalized exactly. The Hamiltonian commutes with the
//! global σ^z parity, so the Hilbert space splits into even- and
//! odd-excitation sectors of dimension 2^(N−1); the ground state is found
//! per sector and, on (near-)degeneracy, the even-sector state is returned —
//! the positive-parity state is the physical ground state in the deep-strong
//! coupling limit.
//!
//! Basis convention: computational-basis index `l` carries qubit `j`
//! (0-based, left to right) at bit `n−1−j`, so `|110...⟩` is the state with
//! the first two qubits excited and `l = 3·2^(n−2)`.

use crate::linalg::{self, LinalgError};
use crate::metrics::{metrics_from_energies, EngineMetrics, GroundStateEnergies, MetricsError};
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Hard cap on the chain length; 2^14 × 2^14 dense matrices are the limit
/// of what this oracle is meant for.
pub const MAX_QUBITS: usize = 14;

/// Energies closer than this (relative to max(1, |E|)) count as degenerate
/// for the even-parity tie-break.
pub const DEGENERACY_TOL: f64 = 1e-10;

/// Eigensolver tolerance passed to the iterative path.
const EIGEN_TOL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    /// Periodic chain: bond j couples sites j and (j+1) mod N; N bonds.
    Closed,
    /// Open chain: bond j couples sites j and j+1; N−1 bonds.
    Open,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExactError {
    #[error("chain of {n} qubits exceeds the dense-oracle cap of {cap}")]
    SizeExceeded { n: usize, cap: usize },
    #[error("invalid chain spec: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Eigensolver(#[from] LinalgError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
}

/// A chain of qubits with transition frequencies ω_j and bond couplings g_j.
///
/// H = Σ_j ω_j σ_j⁺σ_j⁻ + Σ_bonds (g_j/2) σ_j^x σ_{j+1}^x. The local
/// ground-state energy is zero by this convention.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitChainSpec {
    omegas: Vec<f64>,
    couplings: Vec<f64>,
    boundary: Boundary,
}

impl QubitChainSpec {
    pub fn new(
        omegas: Vec<f64>,
        couplings: Vec<f64>,
        boundary: Boundary,
    ) -> Result<Self, ExactError> {
        let n = omegas.len();
        if n < 2 {
            return Err(ExactError::InvalidSpec(format!(
                "need at least 2 qubits, got {n}"
            )));
        }
        if omegas.iter().any(|&w| !(w > 0.0)) {
            return Err(ExactError::InvalidSpec(
                "all frequencies must be positive".into(),
            ));
        }
        let expected = match boundary {
            Boundary::Closed => n,
            Boundary::Open => n - 1,
        };
        if couplings.len() != expected {
            return Err(ExactError::InvalidSpec(format!(
                "expected {expected} couplings for {n} qubits ({boundary:?}), got {}",
                couplings.len()
            )));
        }
        Ok(Self {
            omegas,
            couplings,
            boundary,
        })
    }

    /// All frequencies equal to `omega`, all couplings equal to `g`.
    pub fn uniform(n: usize, omega: f64, g: f64, boundary: Boundary) -> Result<Self, ExactError> {
        let bonds = match boundary {
            Boundary::Closed => n,
            Boundary::Open => n.saturating_sub(1),
        };
        Self::new(vec![omega; n], vec![g; bonds], boundary)
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

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    /// Bonds as (site, site, coupling) triples.
    pub fn bonds(&self) -> Vec<(usize, usize, f64)> {
        let n = self.n();
        self.couplings
            .iter()
            .enumerate()
            .map(|(j, &g)| (j, (j + 1) % n, g))
            .collect()
    }

    /// Local energy E_l of computational-basis state `l`.
    pub fn local_energy(&self, l: u64) -> f64 {
        let n = self.n();
        self.omegas
            .iter()
            .enumerate()
            .filter(|(j, _)| l >> (n - 1 - j) & 1 == 1)
            .map(|(_, &w)| w)
            .sum()
    }

    fn check_size(&self) -> Result<(), ExactError> {
        if self.n() > MAX_QUBITS {
            return Err(ExactError::SizeExceeded {
                n: self.n(),
                cap: MAX_QUBITS,
            });
        }
        Ok(())
    }
}

/// Number of excited qubits in basis state `l`.
pub fn excitation_count(l: u64) -> u32 {
    l.count_ones()
}

/// Dense 2^N × 2^N Hamiltonian of the chain, real symmetric; the local part
/// is diagonal in the computational basis.
pub fn build_hamiltonian(spec: &QubitChainSpec) -> Result<DMatrix<f64>, ExactError> {
    spec.check_size()?;
    let n = spec.n();
    let dim = 1usize << n;
    let mut h = DMatrix::zeros(dim, dim);
    for l in 0..dim {
        h[(l, l)] = spec.local_energy(l as u64);
    }
    for (j, k, g) in spec.bonds() {
        let mask = (1usize << (n - 1 - j)) | (1usize << (n - 1 - k));
        for l in 0..dim {
            h[(l ^ mask, l)] += 0.5 * g;
        }
    }
    Ok(h)
}

/// Lowest eigenpair of a real symmetric matrix, with parity-aware
/// tie-breaking.
///
/// If the matrix has dimension 2^n and is block-diagonal in the global
/// σ^z parity (true for every chain Hamiltonian built here), the two parity
/// sectors are solved separately; on near-degeneracy within
/// [`DEGENERACY_TOL`] the even-sector eigenvector is returned. Other
/// symmetric matrices fall through to a plain lowest-eigenpair solve.
pub fn ground_state(h: &DMatrix<f64>) -> Result<(f64, DVector<f64>), ExactError> {
    let asym = linalg::max_asymmetry(h);
    let scale = h.amax();
    if asym > 1e-12 * scale.max(1.0) {
        return Err(LinalgError::NotSymmetric { max_asym: asym }.into());
    }

    let dim = h.nrows();
    if dim.is_power_of_two() && dim >= 4 && respects_parity(h) {
        let (e_even, v_even) = sector_ground(h, 0)?;
        let (e_odd, v_odd) = sector_ground(h, 1)?;
        let tol = DEGENERACY_TOL * f64::max(1.0, e_even.abs().max(e_odd.abs()));
        return Ok(if e_even <= e_odd + tol {
            (e_even, v_even)
        } else {
            (e_odd, v_odd)
        });
    }

    Ok(linalg::lowest_eigenpair(h, EIGEN_TOL)?)
}

/// Does the matrix only couple basis states of equal excitation parity?
fn respects_parity(h: &DMatrix<f64>) -> bool {
    let dim = h.nrows();
    for i in 0..dim {
        for j in 0..i {
            if h[(i, j)] != 0.0 && (i ^ j).count_ones() % 2 == 1 {
                return false;
            }
        }
    }
    true
}

/// Basis states of the given excitation parity (0 = even, 1 = odd),
/// ascending.
fn parity_basis(dim: usize, parity: u32) -> Vec<usize> {
    (0..dim).filter(|l| l.count_ones() % 2 == parity).collect()
}

fn sector_ground(h: &DMatrix<f64>, parity: u32) -> Result<(f64, DVector<f64>), ExactError> {
    let dim = h.nrows();
    let basis = parity_basis(dim, parity);
    let m = basis.len();
    let mut block = DMatrix::zeros(m, m);
    for (a, &la) in basis.iter().enumerate() {
        for (b, &lb) in basis.iter().enumerate() {
            block[(a, b)] = h[(la, lb)];
        }
    }
    let (e, v) = linalg::lowest_eigenpair(&block, EIGEN_TOL)?;
    let mut full = DVector::zeros(dim);
    for (a, &la) in basis.iter().enumerate() {
        full[la] = v[a];
    }
    Ok((e, full))
}

/// Ground state resolved per parity sector without materializing the full
/// 2^N matrix; returns (energy, sector basis, amplitudes on that basis).
fn ground_state_sectors(
    spec: &QubitChainSpec,
) -> Result<(f64, Vec<usize>, DVector<f64>), ExactError> {
    spec.check_size()?;
    let n = spec.n();
    let dim = 1usize << n;

    let mut best: Option<(f64, Vec<usize>, DVector<f64>)> = None;
    for parity in [0u32, 1] {
        let basis = parity_basis(dim, parity);
        // Position of each full-space index inside the sector.
        let mut pos = vec![u32::MAX; dim];
        for (a, &l) in basis.iter().enumerate() {
            pos[l] = a as u32;
        }
        let m = basis.len();
        let mut block = DMatrix::zeros(m, m);
        for (a, &l) in basis.iter().enumerate() {
            block[(a, a)] = spec.local_energy(l as u64);
        }
        for (j, k, g) in spec.bonds() {
            let mask = (1usize << (n - 1 - j)) | (1usize << (n - 1 - k));
            for (a, &l) in basis.iter().enumerate() {
                let b = pos[l ^ mask] as usize;
                block[(b, a)] += 0.5 * g;
            }
        }
        let (e, v) = linalg::lowest_eigenpair(&block, EIGEN_TOL)?;
        best = match best {
            None => Some((e, basis, v)),
            // `best` holds the even sector here; keep it on a tie.
            Some((e0, b0, v0)) => {
                let tol = DEGENERACY_TOL * f64::max(1.0, e0.abs().max(e.abs()));
                if e < e0 - tol {
                    Some((e, basis, v))
                } else {
                    Some((e0, b0, v0))
                }
            }
        };
    }
    Ok(best.expect("two sectors were solved"))
}

/// All Table-style figures of merit from the exact ground state. The local
/// ground-state energy is zero by the Hamiltonian convention.
pub fn engine_metrics_exact(spec: &QubitChainSpec) -> Result<EngineMetrics, ExactError> {
    let (e_gs, basis, amps) = ground_state_sectors(spec)?;
    let mut e_loc = 0.0;
    let mut e_loc2 = 0.0;
    for (a, &l) in basis.iter().enumerate() {
        let p = amps[a] * amps[a];
        let el = spec.local_energy(l as u64);
        e_loc += p * el;
        e_loc2 += p * el * el;
    }
    Ok(metrics_from_energies(GroundStateEnergies {
        e_loc_expect: e_loc,
        e_loc2_expect: e_loc2,
        e0_loc: 0.0,
        e_gs,
    })?)
}

/// Measurement-outcome distribution over the full computational basis.
#[derive(Debug, Clone)]
pub struct OutcomeDistribution {
    /// P_l = |⟨l|ground⟩|², indexed by basis state l.
    pub probabilities: Vec<f64>,
    /// W_l = E_l − E_0loc, indexed by basis state l.
    pub work_values: Vec<f64>,
}

impl OutcomeDistribution {
    /// Number of basis states (2^N).
    pub fn len(&self) -> usize {
        self.probabilities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probabilities.is_empty()
    }

    /// Mean work Σ_l P_l W_l.
    pub fn mean_work(&self) -> f64 {
        self.probabilities
            .iter()
            .zip(&self.work_values)
            .map(|(p, w)| p * w)
            .sum()
    }

    /// Work variance Σ_l P_l (W_l − W)².
    pub fn work_variance(&self) -> f64 {
        let mean = self.mean_work();
        self.probabilities
            .iter()
            .zip(&self.work_values)
            .map(|(p, w)| p * (w - mean) * (w - mean))
            .sum()
    }

    /// Rows (l, excitation count, P_l, W_l), e.g. for CSV export.
    pub fn rows(&self) -> impl Iterator<Item = (u64, u32, f64, f64)> + '_ {
        self.probabilities
            .iter()
            .zip(&self.work_values)
            .enumerate()
            .map(|(l, (&p, &w))| (l as u64, excitation_count(l as u64), p, w))
    }
}

/// Full outcome distribution P_l = |⟨l|ground⟩|² with work values
/// W_l = E_l (the local ground-state energy is zero).
///
/// For uniform closed chains the ground state lives in the even-excitation
/// sector, so P_l vanishes identically on odd-parity states; for non-uniform
/// couplings the parity support is whatever the ground state gives.
pub fn outcome_distribution(spec: &QubitChainSpec) -> Result<OutcomeDistribution, ExactError> {
    let (_, basis, amps) = ground_state_sectors(spec)?;
    let dim = 1usize << spec.n();
    let mut probabilities = vec![0.0; dim];
    for (a, &l) in basis.iter().enumerate() {
        probabilities[l] = amps[a] * amps[a];
    }
    let work_values = (0..dim).map(|l| spec.local_energy(l as u64)).collect();
    Ok(OutcomeDistribution {
        probabilities,
        work_values,
    })
}

/// One sampled engine cycle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleRecord {
    pub sample: u64,
    /// Measured basis state.
    pub outcome: u64,
    /// Work extracted in this realization.
    pub work: f64,
}

/// Outcome of [`sample_cycles`].
#[derive(Debug, Clone)]
pub struct SampleStats {
    pub mean_work: f64,
    /// Population standard deviation of the sampled work values.
    pub std_work: f64,
    /// Fourth central moment, for the standard error of `std_work`.
    pub fourth_moment: f64,
    pub records: Vec<CycleRecord>,
}

impl SampleStats {
    pub fn n_samples(&self) -> usize {
        self.records.len()
    }

    /// Standard error of the sample mean.
    pub fn mean_standard_error(&self) -> f64 {
        self.std_work / (self.n_samples() as f64).sqrt()
    }

    /// Delta-method standard error of the sample standard deviation.
    pub fn std_standard_error(&self) -> f64 {
        let n = self.n_samples() as f64;
        let m2 = self.std_work * self.std_work;
        if m2 == 0.0 {
            return 0.0;
        }
        ((self.fourth_moment - m2 * m2) / (4.0 * m2 * n)).sqrt()
    }
}

/// Draw `n_samples` i.i.d. cycles from the outcome distribution.
///
/// Sample i uses a ChaCha stream keyed by (seed, i), so results are
/// reproducible and independent of evaluation order.
pub fn sample_cycles(
    spec: &QubitChainSpec,
    n_samples: u64,
    seed: u64,
) -> Result<SampleStats, ExactError> {
    if n_samples == 0 {
        return Err(ExactError::InvalidSpec("need at least one sample".into()));
    }
    let dist = outcome_distribution(spec)?;
    let mut cumulative = Vec::with_capacity(dist.len());
    let mut acc = 0.0;
    for &p in &dist.probabilities {
        acc += p;
        cumulative.push(acc);
    }

    let base = ChaCha8Rng::seed_from_u64(seed);
    let mut records = Vec::with_capacity(n_samples as usize);
    let mut sum = 0.0;
    for i in 0..n_samples {
        let mut rng = base.clone();
        rng.set_stream(i);
        let u: f64 = rng.gen();
        let l = cumulative.partition_point(|&c| c <= u).min(dist.len() - 1);
        let work = dist.work_values[l];
        sum += work;
        records.push(CycleRecord {
            sample: i,
            outcome: l as u64,
            work,
        });
    }
    let mean = sum / n_samples as f64;
    let (mut m2, mut m4) = (0.0, 0.0);
    for r in &records {
        let d = r.work - mean;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    m2 /= n_samples as f64;
    m4 /= n_samples as f64;
    Ok(SampleStats {
        mean_work: mean,
        std_work: m2.sqrt(),
        fourth_moment: m4,
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::two_qubit::{self, TwoQubitSpec};

    fn uniform(n: usize, omega: f64, g: f64, boundary: Boundary) -> QubitChainSpec {
        QubitChainSpec::uniform(n, omega, g, boundary).unwrap()
    }

    fn kron_chain_hamiltonian(spec: &QubitChainSpec) -> DMatrix<f64> {
        let n = spec.n();
        let id = DMatrix::<f64>::identity(2, 2);
        let number = DMatrix::from_row_slice(2, 2, &[0.0, 0.0, 0.0, 1.0]);
        let sigma_x = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        // Independent construction path: explicit Kronecker products.
        let site_op = |ops: &[(usize, &DMatrix<f64>)]| {
            let mut out = DMatrix::<f64>::identity(1, 1);
            for j in 0..n {
                let factor = ops
                    .iter()
                    .find(|(s, _)| *s == j)
                    .map(|(_, m)| (*m).clone())
                    .unwrap_or_else(|| id.clone());
                out = out.kronecker(&factor);
            }
            out
        };
        let dim = 1 << n;
        let mut h = DMatrix::zeros(dim, dim);
        for (j, &w) in spec.omegas().iter().enumerate() {
            h += w * site_op(&[(j, &number)]);
        }
        for (j, k, g) in spec.bonds() {
            h += 0.5 * g * site_op(&[(j, &sigma_x), (k, &sigma_x)]);
        }
        h
    }

    #[test]
    fn two_qubit_open_matrix_layout() {
        let spec = uniform(2, 1.0, 0.6, Boundary::Open);
        let h = build_hamiltonian(&spec).unwrap();
        let expected = DMatrix::from_row_slice(
            4,
            4,
            &[
                0.0, 0.0, 0.0, 0.3, //
                0.0, 1.0, 0.3, 0.0, //
                0.0, 0.3, 1.0, 0.0, //
                0.3, 0.0, 0.0, 2.0,
            ],
        );
        assert_eq!(h, expected);
    }

    #[test]
    fn zero_coupling_is_diagonal() {
        let spec = uniform(3, 0.7, 0.0, Boundary::Closed);
        let h = build_hamiltonian(&spec).unwrap();
        for i in 0..8 {
            for j in 0..8 {
                if i != j {
                    assert_eq!(h[(i, j)], 0.0);
                }
            }
        }
        assert_eq!(h[(7, 7)], 0.7 * 3.0);
    }

    #[test]
    fn matches_kronecker_construction() {
        for spec in [
            uniform(3, 1.0, 1.0, Boundary::Closed),
            QubitChainSpec::new(
                vec![1.1, 0.7, 1.4, 0.9],
                vec![0.4, 0.9, 0.2],
                Boundary::Open,
            )
            .unwrap(),
        ] {
            let direct = build_hamiltonian(&spec).unwrap();
            let via_kron = kron_chain_hamiltonian(&spec);
            assert!((&direct - &via_kron).amax() < 1e-14);

            // Eigenvalues agree with a generic dense solve of the
            // independently constructed matrix.
            let (ev_direct, _) = linalg::symmetric_eigen_ascending(&direct);
            let (ev_kron, _) = linalg::symmetric_eigen_ascending(&via_kron);
            for (a, b) in ev_direct.iter().zip(ev_kron.iter()) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn parity_is_conserved() {
        let spec = QubitChainSpec::new(
            vec![1.0, 0.5, 1.5, 0.8],
            vec![0.3, 0.7, 0.2, 0.5],
            Boundary::Closed,
        )
        .unwrap();
        let h = build_hamiltonian(&spec).unwrap();
        assert!(respects_parity(&h));
    }

    #[test]
    fn size_cap() {
        let spec = uniform(15, 1.0, 1.0, Boundary::Closed);
        assert!(matches!(
            build_hamiltonian(&spec),
            Err(ExactError::SizeExceeded { n: 15, cap: 14 })
        ));
    }

    #[test]
    fn ground_state_uncoupled() {
        let spec = uniform(3, 1.0, 0.0, Boundary::Closed);
        let h = build_hamiltonian(&spec).unwrap();
        let (e, v) = ground_state(&h).unwrap();
        assert!(e.abs() < 1e-14);
        assert!((v[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ground_state_matches_two_qubit_formula() {
        // Open pair with g = 2: the two-qubit model at gamma = 1, whose
        // ground energy is 1 − √2.
        let spec = QubitChainSpec::new(vec![1.2, 0.8], vec![2.0], Boundary::Open).unwrap();
        let h = build_hamiltonian(&spec).unwrap();
        let (e, _) = ground_state(&h).unwrap();
        assert!((e - (1.0 - std::f64::consts::SQRT_2)).abs() < 1e-13);
    }

    #[test]
    fn deep_strong_ground_state_is_even_parity() {
        let spec = uniform(4, 1.0, 100.0, Boundary::Closed);
        let h = build_hamiltonian(&spec).unwrap();
        let (e, v) = ground_state(&h).unwrap();
        // e ≈ −2g + Nω/2 with O(ω²/g) corrections.
        assert!((e + 198.0).abs() < 0.05, "e = {e}");
        for l in 0..16usize {
            if l.count_ones() % 2 == 1 {
                assert_eq!(v[l], 0.0, "odd-parity amplitude at l={l}");
            }
        }
        let p_even: f64 = (0..16usize)
            .filter(|l| l.count_ones() % 2 == 0)
            .map(|l| v[l] * v[l])
            .sum();
        assert!((p_even - 1.0).abs() < 1e-12);
    }

    #[test]
    fn metrics_zero_coupling() {
        let m = engine_metrics_exact(&uniform(4, 1.0, 0.0, Boundary::Closed)).unwrap();
        assert_eq!(m.work, 0.0);
        assert_eq!(m.efficiency, None);
    }

    #[test]
    fn two_qubit_oracle_agreement() {
        // N=2 open chain with bond g equals the two-qubit model with the
        // same g; a closed pair would double the bond.
        let tq = TwoQubitSpec::new(1.2, 0.8, 2.0).unwrap();
        let analytic = two_qubit::metrics(&tq);
        let spec = QubitChainSpec::new(vec![1.2, 0.8], vec![2.0], Boundary::Open).unwrap();
        let exact = engine_metrics_exact(&spec).unwrap();
        assert!((exact.work - analytic.work).abs() < 1e-13);
        assert!((exact.heat - analytic.heat).abs() < 1e-13);
        assert!((exact.gap - analytic.gap).abs() < 1e-13);
        assert!((exact.std_dev - analytic.std_dev).abs() < 1e-13);
        assert!((exact.efficiency.unwrap() - analytic.efficiency.unwrap()).abs() < 1e-13);
        // Spot values at gamma = 1.
        assert!((exact.work - 0.292_893_218_813_452_5).abs() < 1e-12);
        assert!((exact.heat - 0.707_106_781_186_547_6).abs() < 1e-12);
    }

    #[test]
    fn distribution_two_qubit() {
        let spec = QubitChainSpec::new(vec![1.2, 0.8], vec![2.0], Boundary::Open).unwrap();
        let dist = outcome_distribution(&spec).unwrap();
        let tq = TwoQubitSpec::new(1.2, 0.8, 2.0).unwrap();
        let (p00, p11) = two_qubit::outcome_probabilities(&tq);
        assert!((dist.probabilities[0b00] - p00).abs() < 1e-13);
        assert!((dist.probabilities[0b11] - p11).abs() < 1e-13);
        assert!(dist.probabilities[0b01].abs() < 1e-15);
        assert!(dist.probabilities[0b10].abs() < 1e-15);
        let total: f64 = dist.probabilities.iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn distribution_consistent_with_metrics() {
        for &(n, g) in &[(4usize, 0.5), (5, 2.0), (6, 1.0)] {
            let spec = uniform(n, 1.0, g, Boundary::Closed);
            let dist = outcome_distribution(&spec).unwrap();
            let m = engine_metrics_exact(&spec).unwrap();
            assert!((dist.mean_work() - m.work).abs() < 1e-10);
            assert!((dist.work_variance().sqrt() - m.std_dev).abs() < 1e-10);
            let total: f64 = dist.probabilities.iter().sum();
            assert!((total - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn uniform_closed_chain_has_even_parity_support() {
        let dist = outcome_distribution(&uniform(4, 1.0, 1.0, Boundary::Closed)).unwrap();
        for (l, p) in dist.probabilities.iter().enumerate() {
            if l.count_ones() % 2 == 1 {
                assert!(p.abs() < 1e-10, "P_{l} = {p}");
            }
        }
    }

    #[test]
    fn sampler_zero_coupling_and_determinism() {
        let spec = uniform(3, 1.0, 0.0, Boundary::Closed);
        let stats = sample_cycles(&spec, 500, 42).unwrap();
        assert_eq!(stats.mean_work, 0.0);
        assert_eq!(stats.std_work, 0.0);
        assert!(stats.records.iter().all(|r| r.outcome == 0));

        let spec = uniform(4, 1.0, 2.0, Boundary::Closed);
        let a = sample_cycles(&spec, 200, 7).unwrap();
        let b = sample_cycles(&spec, 200, 7).unwrap();
        assert_eq!(a.records, b.records);
        let c = sample_cycles(&spec, 200, 8).unwrap();
        assert_ne!(a.records, c.records);
    }

    #[test]
    fn sampler_mean_within_four_standard_errors() {
        // Two-qubit engine at gamma = 1 via the open pair.
        let spec = QubitChainSpec::new(vec![1.2, 0.8], vec![2.0], Boundary::Open).unwrap();
        let analytic = engine_metrics_exact(&spec).unwrap();
        let stats = sample_cycles(&spec, 40_000, 123).unwrap();
        let se = stats.mean_standard_error();
        assert!(
            (stats.mean_work - analytic.work).abs() < 4.0 * se,
            "mean {} vs {} (se {se})",
            stats.mean_work,
            analytic.work
        );
    }
}
