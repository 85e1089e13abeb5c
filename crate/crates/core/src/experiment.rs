//! Parameter sweeps over the synthetic data sets, aggregated into CSV rows
//! of medians and quartiles.

use std::fmt::Write as _;
use std::time::Duration;

use crate::engine::{reduce, EngineConfig};
use crate::error::{Error, Result};
use crate::generators::{gen_geometric, gen_partition, GeometricConfig, PartitionConfig};
use crate::instance::Instance;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Generator {
    Partition { n: usize, p_e: f64, alpha: f64, beta: f64 },
    Geometric { m: usize, sigma: f64, k: Option<usize> },
}

/// Parameter swept by the grid, which also names the key column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sweep {
    Alpha,
    Sigma,
    /// Grid values are `n` (partition) or `m` (geometric); the key is `|V|`.
    Size,
}

impl Sweep {
    pub fn column(self) -> &'static str {
        match self {
            Sweep::Alpha => "alpha",
            Sweep::Sigma => "sigma",
            Sweep::Size => "numberOfPoints",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    /// Base parameters; the swept one is overwritten per cell.
    pub generator: Generator,
    pub sweep: Sweep,
    pub values: Vec<f64>,
    pub reps: usize,
    /// Repetition `r` uses seed `seed + r` in every cell.
    pub seed: u64,
    pub engine: EngineConfig,
    /// Measure durations; without it they are reported as 0 and the CSV is
    /// fully reproducible.
    pub timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub q25: f64,
    pub median: f64,
    pub q75: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub key: f64,
    pub eliminated_variables: Summary,
    pub eliminated_triangles: Summary,
    pub duration: Summary,
}

pub const COLUMNS: [&str; 9] = [
    "medianEliminatedVariables",
    "q25EliminatedVariables",
    "q75EliminatedVariables",
    "medianEliminatedTriangles",
    "q25EliminatedTriangles",
    "q75EliminatedTriangles",
    "medianDuration",
    "q25Duration",
    "q75Duration",
];

/// Inclusive quantile: linear interpolation between order statistics at
/// position `p (len - 1)`.
pub fn quantile(sorted: &[f64], p: f64) -> f64 {
    assert!(!sorted.is_empty(), "quantile of empty sample");
    let h = p * (sorted.len() - 1) as f64;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

pub fn summarize(values: &[f64]) -> Summary {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    Summary {
        q25: quantile(&v, 0.25),
        median: quantile(&v, 0.5),
        q75: quantile(&v, 0.75),
    }
}

impl ExperimentSpec {
    pub fn validate(&self) -> Result<()> {
        if self.reps == 0 {
            return Err(Error::InvalidConfig("at least one repetition is needed".into()));
        }
        if self.values.is_empty() {
            return Err(Error::InvalidConfig("empty parameter grid".into()));
        }
        match (self.sweep, self.generator) {
            (Sweep::Alpha, Generator::Geometric { .. }) => {
                Err(Error::InvalidConfig("alpha sweeps need the partition generator".into()))
            }
            (Sweep::Sigma, Generator::Partition { .. }) => {
                Err(Error::InvalidConfig("sigma sweeps need the geometric generator".into()))
            }
            (Sweep::Size, _) if self.values.iter().any(|&v| v < 1.0 || v.fract() != 0.0) => {
                Err(Error::InvalidConfig("sizes must be positive integers".into()))
            }
            _ => self.engine.validate(),
        }
    }

    /// Generator parameters of one grid cell.
    pub fn cell(&self, value: f64) -> Generator {
        match (self.generator, self.sweep) {
            (Generator::Partition { n, p_e, beta, .. }, Sweep::Alpha) => {
                Generator::Partition { n, p_e, alpha: value, beta }
            }
            (Generator::Partition { p_e, alpha, beta, .. }, Sweep::Size) => {
                Generator::Partition { n: value as usize, p_e, alpha, beta }
            }
            (Generator::Geometric { m, k, .. }, Sweep::Sigma) => {
                Generator::Geometric { m, sigma: value, k }
            }
            (Generator::Geometric { sigma, k, .. }, Sweep::Size) => {
                Generator::Geometric { m: value as usize, sigma, k }
            }
            (g, _) => g,
        }
    }

    fn key(&self, value: f64) -> f64 {
        match (self.sweep, self.generator) {
            (Sweep::Size, Generator::Partition { .. }) => 8.0 * value,
            (Sweep::Size, Generator::Geometric { .. }) => 9.0 * value,
            _ => value,
        }
    }
}

pub fn generate(generator: Generator, seed: u64) -> Result<Instance> {
    match generator {
        Generator::Partition { n, p_e, alpha, beta } => {
            Ok(gen_partition(&PartitionConfig { n, p_e, alpha, beta, seed })?.0)
        }
        Generator::Geometric { m, sigma, k } => {
            Ok(gen_geometric(&GeometricConfig::new(m, sigma, k, seed))?.0)
        }
    }
}

pub fn run_experiment(spec: &ExperimentSpec) -> Result<Vec<Row>> {
    spec.validate()?;
    let mut rows = Vec::new();
    for &value in &spec.values {
        let cell = spec.cell(value);
        let mut edges = Vec::with_capacity(spec.reps);
        let mut triples = Vec::with_capacity(spec.reps);
        let mut durations = Vec::with_capacity(spec.reps);
        for r in 0..spec.reps {
            let inst = generate(cell, spec.seed.wrapping_add(r as u64))?;
            let stats = reduce(&inst, &spec.engine)?.stats();
            edges.push(stats.fixed_edge_fraction);
            triples.push(stats.fixed_triple_fraction);
            let d = if spec.timing { stats.runtime } else { Duration::ZERO };
            durations.push(d.as_nanos() as f64);
        }
        rows.push(Row {
            key: spec.key(value),
            eliminated_variables: summarize(&edges),
            eliminated_triangles: summarize(&triples),
            duration: summarize(&durations),
        });
    }
    rows.sort_by(|a, b| a.key.total_cmp(&b.key));
    Ok(rows)
}

pub fn to_csv(sweep: Sweep, rows: &[Row]) -> String {
    let mut out = String::new();
    writeln!(out, "{},{}", sweep.column(), COLUMNS.join(",")).unwrap();
    for r in rows {
        let s = |x: Summary| [x.median, x.q25, x.q75];
        let cells: Vec<String> = s(r.eliminated_variables)
            .into_iter()
            .chain(s(r.eliminated_triangles))
            .chain(s(r.duration))
            .map(|v| v.to_string())
            .collect();
        writeln!(out, "{},{}", r.key, cells.join(",")).unwrap();
    }
    out
}
