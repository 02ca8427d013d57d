//! Ready-made datasets: each preset writes one CSV plus a manifest.

use crate::output::{Manifest, Table, Value};
use qve_core::chain_ff;
use qve_core::dynamics::{self, MeterSpec};
use qve_core::oscillator::{self, TwoOscSpec};
use qve_core::two_qubit::{self, TwoQubitSpec};
use std::io;
use std::path::{Path, PathBuf};
use std::time::Instant;

pub const PRESET_NAMES: &[&str] = &["fig3", "fig4", "fig5", "fig8", "figA6", "figA7"];

/// Two-qubit work/efficiency versus reduced coupling, log grid.
fn fig3() -> Table {
    let mut t = Table::new(vec!["gamma", "work_over_sum", "efficiency"]);
    let points = 401;
    for i in 0..points {
        let gamma = 10f64.powf(-2.0 + 4.0 * i as f64 / (points - 1) as f64);
        let spec = TwoQubitSpec::from_reduced(2.0, gamma, 0.2).unwrap();
        let m = two_qubit::metrics(&spec);
        t.push(vec![
            gamma.into(),
            (m.work / spec.sum()).into(),
            m.efficiency.into(),
        ]);
    }
    t
}

/// Two-oscillator work/efficiency contour grid over (k0, g).
fn fig4() -> Table {
    let mut t = Table::new(vec!["k0", "g", "work", "efficiency"]);
    for i in 0..40 {
        let k0 = 0.05 + 1.95 * i as f64 / 39.0;
        for j in 0..41 {
            let g = 2.0 * j as f64 / 40.0;
            let m = oscillator::metrics_two_oscillator(&TwoOscSpec::new(k0, g).unwrap());
            t.push(vec![k0.into(), g.into(), m.work.into(), m.efficiency.into()]);
        }
    }
    t
}

/// Qubit-chain work per qubit and efficiency over (g/ω, N).
fn fig5() -> Table {
    let mut t = Table::new(vec!["g_over_omega", "n", "work_per_qubit", "efficiency"]);
    for i in 0..=300 {
        let g = 0.01 * i as f64;
        for n in 3..=100usize {
            let m = chain_ff::metrics_closed_chain(n, 1.0, g).unwrap();
            t.push(vec![
                g.into(),
                n.into(),
                (m.work / n as f64).into(),
                m.efficiency.into(),
            ]);
        }
    }
    t
}

/// Lattice work per oscillator and efficiency versus side length, D = 1..3.
fn fig8() -> Table {
    let mut t = Table::new(vec!["dim", "m_side", "n", "work_per_oscillator", "efficiency"]);
    let caps = [(1usize, 1000usize), (2, 60), (3, 20)];
    for (dim, cap) in caps {
        for m_side in 2..=cap {
            let n = m_side.pow(dim as u32);
            let m = oscillator::lattice_metrics(m_side, dim, 1.0).unwrap();
            t.push(vec![
                dim.into(),
                m_side.into(),
                n.into(),
                (m.work / n as f64).into(),
                m.efficiency.into(),
            ]);
        }
    }
    t
}

/// Measurement parameters matching the dynamics figures:
/// g = 10(ω_A+ω_B), g_M = 50(ω_A+ω_B).
fn measurement_setup() -> (TwoQubitSpec, MeterSpec, f64) {
    let spec = TwoQubitSpec::new(1.2, 0.8, 20.0).unwrap();
    let meter = MeterSpec::new(100.0).unwrap();
    let (t_m, _) = dynamics::measurement_time(&spec, &meter);
    (spec, meter, t_m)
}

/// Probabilities of the live three-qubit components during measurement.
fn fig_a6() -> Table {
    let (spec, meter, t_m) = measurement_setup();
    let traj = dynamics::evolve_measurement(&spec, &meter, 2.0 * t_m, t_m / 1000.0).unwrap();
    let mut t = Table::new(vec!["t", "p000", "p001", "p110", "p111"]);
    for i in 0..traj.len() {
        t.push(vec![
            traj.times[i].into(),
            traj.probability(i, 0b000).into(),
            traj.probability(i, 0b001).into(),
            traj.probability(i, 0b110).into(),
            traj.probability(i, 0b111).into(),
        ]);
    }
    t
}

/// Energy flows between the two-qubit system and the meter.
fn fig_a7() -> Table {
    let (spec, meter, t_m) = measurement_setup();
    let traj = dynamics::evolve_measurement(&spec, &meter, 2.0 * t_m, t_m / 1000.0).unwrap();
    let mut t = Table::new(vec!["t", "e_loc", "e_int", "e_meter", "e_two_qubit_total"]);
    for i in 0..traj.len() {
        t.push(vec![
            traj.times[i].into(),
            traj.e_loc[i].into(),
            traj.e_int[i].into(),
            traj.e_meter[i].into(),
            traj.e_two_qubit(i).into(),
        ]);
    }
    t
}

/// Build and write the named preset into `dir`, returning the data path.
pub fn run_preset(name: &str, dir: &Path) -> io::Result<PathBuf> {
    let start = Instant::now();
    let table = match name {
        "fig3" => fig3(),
        "fig4" => fig4(),
        "fig5" => fig5(),
        "fig8" => fig8(),
        "figA6" => fig_a6(),
        "figA7" => fig_a7(),
        other => {
            return Err(io::Error::new(
                io::ErrorKind::InvalidInput,
                format!("unknown preset '{other}' (expected one of {PRESET_NAMES:?})"),
            ))
        }
    };
    std::fs::create_dir_all(dir)?;
    let path = dir.join(format!("{name}.csv"));
    table.emit(Some(&path), crate::output::Format::Csv)?;
    Manifest::new(
        &format!("preset {name}"),
        serde_json::json!({ "preset": name }),
        start.elapsed().as_secs_f64(),
        table.rows.len(),
    )
    .write_for(&path)?;
    Ok(path)
}
