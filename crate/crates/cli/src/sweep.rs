//! Config-driven parameter sweeps.
//!
//! A sweep is the Cartesian product of named ranges, evaluated by a bounded
//! worker pool. Row order is the lexicographic nesting of the configured
//! ranges (first range outermost) regardless of parallelism, and per-row
//! evaluation errors land in an `error` column instead of aborting the
//! sweep — parameter grids routinely cross undefined regions.

use crate::output::{Table, Value};
use qve_core::chain_ff;
use qve_core::dynamics::{self, MeterSpec, RelaxationSpec};
use qve_core::exact::{self, Boundary, QubitChainSpec};
use qve_core::metrics::EngineMetrics;
use qve_core::open_chain::{self, OpenChainSpec};
use qve_core::oscillator::{self, TwoOscSpec};
use qve_core::two_qubit::{self, TwoQubitSpec};
use rayon::prelude::*;
use serde::Deserialize;
use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "config error: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    TwoQubit,
    ChainFf,
    ChainExact,
    OpenChain,
    TwoOsc,
    Network,
    ChainOsc,
    Lattice,
    Dynamics,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scale {
    #[default]
    Linear,
    Log,
}

#[derive(Debug, Clone, Deserialize)]
pub struct ParameterRange {
    pub name: String,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
    #[serde(default)]
    pub scale: Scale,
}

impl ParameterRange {
    fn values(&self) -> Result<Vec<f64>, ConfigError> {
        if self.steps == 0 {
            return Err(ConfigError(format!(
                "parameter '{}': steps must be >= 1",
                self.name
            )));
        }
        if self.steps == 1 {
            return Ok(vec![self.start]);
        }
        match self.scale {
            Scale::Linear => {
                let step = (self.stop - self.start) / (self.steps - 1) as f64;
                Ok((0..self.steps)
                    .map(|i| self.start + i as f64 * step)
                    .collect())
            }
            Scale::Log => {
                if self.start <= 0.0 || self.stop <= 0.0 {
                    return Err(ConfigError(format!(
                        "parameter '{}': log scale needs positive bounds",
                        self.name
                    )));
                }
                let (a, b) = (self.start.ln(), self.stop.ln());
                let step = (b - a) / (self.steps - 1) as f64;
                Ok((0..self.steps)
                    .map(|i| (a + i as f64 * step).exp())
                    .collect())
            }
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct OutputSpec {
    pub path: PathBuf,
    #[serde(default = "default_format")]
    pub format: String,
}

fn default_format() -> String {
    "csv".into()
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub model: Model,
    #[serde(default)]
    pub parameters: Vec<ParameterRange>,
    #[serde(default)]
    pub fixed: BTreeMap<String, f64>,
    #[serde(default)]
    pub output: Option<OutputSpec>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub parallelism: Option<usize>,
}

/// Parameter names each model requires (swept or fixed).
fn required_parameters(model: Model) -> &'static [&'static str] {
    match model {
        Model::TwoQubit => &["omega_a", "omega_b", "g"],
        Model::ChainFf | Model::ChainExact => &["n", "omega", "g"],
        Model::OpenChain => &["n", "omega", "g"],
        Model::TwoOsc => &["k0", "g"],
        Model::Network => &["n"],
        Model::ChainOsc => &["n", "k0"],
        Model::Lattice => &["m", "dim", "k0"],
        Model::Dynamics => &["omega_a", "omega_b", "g", "g_m", "spectral_density"],
    }
}

/// Columns appended after the swept parameters.
fn result_columns(model: Model) -> Vec<&'static str> {
    let mut cols = vec!["work", "heat", "gap", "efficiency", "std_dev"];
    match model {
        Model::TwoQubit => cols.extend(["gamma", "delta"]),
        Model::ChainFf | Model::ChainExact => cols.extend(["work_per_qubit"]),
        Model::OpenChain => cols.extend(["regime_warning"]),
        Model::ChainOsc => cols.extend(["trace_k_inverse", "sum_frequencies"]),
        Model::Lattice => cols.extend(["n_total", "work_per_oscillator"]),
        Model::Dynamics => cols.extend(["t_m", "nu", "t_p", "t_c", "power"]),
        Model::TwoOsc | Model::Network => {}
    }
    cols.push("error");
    cols
}

fn metrics_values(m: &EngineMetrics) -> Vec<Value> {
    vec![
        m.work.into(),
        m.heat.into(),
        m.gap.into(),
        m.efficiency.into(),
        m.std_dev.into(),
    ]
}

fn empty_metrics(extra: usize) -> Vec<Value> {
    std::iter::repeat_with(|| Value::Empty).take(5 + extra).collect()
}

struct Point<'a> {
    params: &'a BTreeMap<String, f64>,
    seed: u64,
    index: usize,
}

impl Point<'_> {
    fn get(&self, name: &str) -> Result<f64, String> {
        self.params
            .get(name)
            .copied()
            .ok_or_else(|| format!("missing parameter '{name}'"))
    }

    fn get_usize(&self, name: &str) -> Result<usize, String> {
        let v = self.get(name)?;
        if v < 0.0 || v.fract() != 0.0 {
            return Err(format!("parameter '{name}' must be a non-negative integer, got {v}"));
        }
        Ok(v as usize)
    }
}

/// Evaluate one grid point: result columns without the trailing `error`.
fn evaluate(model: Model, point: &Point) -> Result<Vec<Value>, String> {
    match model {
        Model::TwoQubit => {
            let spec = TwoQubitSpec::new(
                point.get("omega_a")?,
                point.get("omega_b")?,
                point.get("g")?,
            )
            .map_err(|e| e.to_string())?;
            let mut row = metrics_values(&two_qubit::metrics(&spec));
            row.push(spec.gamma().into());
            row.push(spec.delta().into());
            Ok(row)
        }
        Model::ChainFf => {
            let n = point.get_usize("n")?;
            let m = chain_ff::metrics_closed_chain(n, point.get("omega")?, point.get("g")?)
                .map_err(|e| e.to_string())?;
            let mut row = metrics_values(&m);
            row.push((m.work / n as f64).into());
            Ok(row)
        }
        Model::ChainExact => {
            let n = point.get_usize("n")?;
            let spec =
                QubitChainSpec::uniform(n, point.get("omega")?, point.get("g")?, Boundary::Closed)
                    .map_err(|e| e.to_string())?;
            let m = exact::engine_metrics_exact(&spec).map_err(|e| e.to_string())?;
            let mut row = metrics_values(&m);
            row.push((m.work / n as f64).into());
            Ok(row)
        }
        Model::OpenChain => {
            let n = point.get_usize("n")?;
            let spec = OpenChainSpec::uniform(n, point.get("omega")?, point.get("g")?)
                .map_err(|e| e.to_string())?;
            let deep = point.params.get("deep_strong").copied().unwrap_or(0.0) != 0.0;
            let (metrics, warning) = if deep {
                let r = open_chain::strong_coupling_metrics(&spec);
                (r.metrics, r.regime_warning)
            } else {
                let r = open_chain::weak_coupling_metrics(&spec);
                (r.metrics, r.regime_warning)
            };
            let mut row = metrics_values(&metrics);
            row.push(i64::from(warning).into());
            Ok(row)
        }
        Model::TwoOsc => {
            let spec = TwoOscSpec::new(point.get("k0")?, point.get("g")?)
                .map_err(|e| e.to_string())?;
            Ok(metrics_values(&oscillator::metrics_two_oscillator(&spec)))
        }
        Model::Network => {
            // A random SPD ensemble: each row draws its matrix from
            // (sweep seed, row index).
            let n = point.get_usize("n")?;
            let k = oscillator::random_spd(n, point.seed ^ point.index as u64);
            let m = oscillator::metrics_network(&k).map_err(|e| e.to_string())?;
            Ok(metrics_values(&m))
        }
        Model::ChainOsc => {
            let n = point.get_usize("n")?;
            let chain = oscillator::linear_chain_metrics(n, point.get("k0")?)
                .map_err(|e| e.to_string())?;
            let mut row = metrics_values(&chain.metrics);
            row.push(chain.trace_k_inverse.into());
            row.push(chain.sum_frequencies.into());
            Ok(row)
        }
        Model::Lattice => {
            let m_side = point.get_usize("m")?;
            let dim = point.get_usize("dim")?;
            let m = oscillator::lattice_metrics(m_side, dim, point.get("k0")?)
                .map_err(|e| e.to_string())?;
            let n = m_side.pow(dim as u32);
            let mut row = metrics_values(&m);
            row.push(n.into());
            row.push((m.work / n as f64).into());
            Ok(row)
        }
        Model::Dynamics => {
            let spec = TwoQubitSpec::new(
                point.get("omega_a")?,
                point.get("omega_b")?,
                point.get("g")?,
            )
            .map_err(|e| e.to_string())?;
            let meter = MeterSpec::new(point.get("g_m")?).map_err(|e| e.to_string())?;
            let relax = RelaxationSpec::new(
                point.get("spectral_density")?,
                point.params.get("temperature").copied().unwrap_or(0.0),
            )
            .map_err(|e| e.to_string())?;
            let mut row = metrics_values(&two_qubit::metrics(&spec));
            let (t_m, nu) = dynamics::measurement_time(&spec, &meter);
            row.push(t_m.into());
            row.push(nu.into());
            match dynamics::relaxation_rates(&spec, &relax) {
                Ok(rates) => {
                    row.push(rates.t_p.into());
                    row.push(rates.t_c.into());
                    let power = dynamics::power_estimate(&spec, &meter, &relax)
                        .map_err(|e| e.to_string())?;
                    row.push(power.into());
                    Ok(row)
                }
                Err(e) => Err(e.to_string()),
            }
        }
    }
}

/// Run the configured sweep and return the result table.
pub fn run_sweep(config: &SweepConfig) -> Result<Table, ConfigError> {
    let mut ranges = Vec::with_capacity(config.parameters.len());
    for p in &config.parameters {
        ranges.push(p.values()?);
    }
    if config.parameters.is_empty() {
        return Err(ConfigError("no parameters to sweep".into()));
    }
    for range in &ranges {
        if range.is_empty() {
            return Err(ConfigError("empty parameter range".into()));
        }
    }

    // Every required parameter must be swept or fixed.
    let swept: Vec<&str> = config.parameters.iter().map(|p| p.name.as_str()).collect();
    for required in required_parameters(config.model) {
        if !swept.contains(required) && !config.fixed.contains_key(*required) {
            return Err(ConfigError(format!(
                "model requires parameter '{required}' (swept or fixed)"
            )));
        }
    }
    for name in &swept {
        if config.fixed.contains_key(*name) {
            return Err(ConfigError(format!(
                "parameter '{name}' is both swept and fixed"
            )));
        }
    }

    let total: usize = ranges.iter().map(Vec::len).product();
    let result_cols = result_columns(config.model);
    let extra = result_cols.len() - 6; // minus five metrics and `error`

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.parallelism.unwrap_or(0))
        .build()
        .map_err(|e| ConfigError(format!("thread pool: {e}")))?;

    let rows: Vec<Vec<Value>> = pool.install(|| {
        (0..total)
            .into_par_iter()
            .map(|index| {
                // Decompose the row index into range indices, first range
                // outermost.
                let mut params = config.fixed.clone();
                let mut rest = index;
                let mut coords = vec![0usize; ranges.len()];
                for (slot, range) in coords.iter_mut().zip(&ranges).rev() {
                    *slot = rest % range.len();
                    rest /= range.len();
                }
                for ((p, range), &i) in config.parameters.iter().zip(&ranges).zip(&coords) {
                    params.insert(p.name.clone(), range[i]);
                }
                let point = Point {
                    params: &params,
                    seed: config.seed,
                    index,
                };
                let mut row: Vec<Value> = ranges
                    .iter()
                    .zip(&coords)
                    .map(|(range, &i)| Value::Float(range[i]))
                    .collect();
                match evaluate(config.model, &point) {
                    Ok(values) => {
                        row.extend(values);
                        row.push(Value::Empty);
                    }
                    Err(message) => {
                        row.extend(empty_metrics(extra));
                        row.push(Value::Text(message));
                    }
                }
                row
            })
            .collect()
    });

    let mut columns: Vec<String> = config.parameters.iter().map(|p| p.name.clone()).collect();
    columns.extend(result_cols.iter().map(|s| s.to_string()));
    let mut table = Table::new(columns);
    for row in rows {
        table.push(row);
    }
    Ok(table)
}
