//! Grid sweeps over `(lambda, gamma)`, level-crossing detection and CSV
//! export.
//!
//! CSV layout: header `lambda,gamma,value`, one row per node with lambda as
//! the outer loop, numbers written as `{:.12e}`, LF line endings.

use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use crate::eigen::energy_gap;
use crate::error::{Error, Result};
use crate::observables::{ground_concurrence, ground_concurrence_from_state, ground_fidelity_map};

pub const MAX_RESOLUTION: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Observable {
    Gap,
    Concurrence,
    Fidelity,
}

impl Observable {
    pub fn name(self) -> &'static str {
        match self {
            Observable::Gap => "gap",
            Observable::Concurrence => "concurrence",
            Observable::Fidelity => "fidelity",
        }
    }

    /// Value at a single parameter point.
    pub fn evaluate(self, lambda: f64, gamma: f64) -> f64 {
        match self {
            Observable::Gap => energy_gap(lambda, gamma),
            Observable::Concurrence => ground_concurrence(lambda, gamma)
                .unwrap_or_else(|_| ground_concurrence_from_state(lambda, gamma)),
            Observable::Fidelity => ground_fidelity_map(lambda, gamma),
        }
    }
}

impl fmt::Display for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Observable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gap" => Ok(Observable::Gap),
            "concurrence" => Ok(Observable::Concurrence),
            "fidelity" => Ok(Observable::Fidelity),
            other => Err(Error::invalid(format!("unknown observable `{other}`"))),
        }
    }
}

/// Uniform grid on a closed interval, both endpoints included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Axis {
    pub fn new(min: f64, max: f64, count: usize) -> Result<Self> {
        if !(min.is_finite() && max.is_finite()) || min >= max {
            return Err(Error::invalid(format!("axis range [{min}, {max}] is empty or not finite")));
        }
        if !(2..=MAX_RESOLUTION).contains(&count) {
            return Err(Error::invalid(format!(
                "resolution must lie in [2, {MAX_RESOLUTION}], got {count}"
            )));
        }
        Ok(Self { min, max, count })
    }

    /// Node `i`. Written as a weighted mean of the endpoints so that a range
    /// symmetric about zero yields nodes that are exact negatives of each
    /// other.
    pub fn node(&self, i: usize) -> f64 {
        let last = self.count - 1;
        if i == 0 {
            return self.min;
        }
        if i == last {
            return self.max;
        }
        ((last - i) as f64 * self.min + i as f64 * self.max) / last as f64
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(|i| self.node(i))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    pub lambda_axis: Axis,
    pub gamma_axis: Axis,
    /// Row-major, lambda outer.
    pub values: Vec<f64>,
    pub observable: Observable,
}

impl SweepGrid {
    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.gamma_axis.count + j]
    }

    /// `(lambda, gamma, value)` in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        let g = self.gamma_axis.count;
        self.values
            .iter()
            .enumerate()
            .map(move |(k, &v)| (self.lambda_axis.node(k / g), self.gamma_axis.node(k % g), v))
    }
}

/// Evaluates `observable` on a `resolution x resolution` grid.
pub fn sweep(
    observable: Observable,
    lambda_range: (f64, f64),
    gamma_range: (f64, f64),
    resolution: usize,
) -> Result<SweepGrid> {
    let lambda_axis = Axis::new(lambda_range.0, lambda_range.1, resolution)?;
    let gamma_axis = Axis::new(gamma_range.0, gamma_range.1, resolution)?;
    let mut values = Vec::with_capacity(resolution * resolution);
    for lambda in lambda_axis.nodes() {
        for gamma in gamma_axis.nodes() {
            values.push(observable.evaluate(lambda, gamma));
        }
    }
    Ok(SweepGrid {
        lambda_axis,
        gamma_axis,
        values,
        observable,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrossingSet {
    pub points: Vec<(f64, f64)>,
    pub threshold: f64,
}

impl CrossingSet {
    /// Largest `|r - 1|` over the detected points.
    pub fn max_radial_deviation(&self) -> f64 {
        self.points
            .iter()
            .map(|&(l, g)| energy_gap(l, g))
            .fold(0.0, f64::max)
    }
}

/// Grid nodes of a gap sweep whose value is at most `threshold`.
pub fn detect_crossings(grid: &SweepGrid, threshold: f64) -> Result<CrossingSet> {
    if grid.observable != Observable::Gap {
        return Err(Error::invalid(format!(
            "crossing detection needs a gap sweep, got {}",
            grid.observable
        )));
    }
    if !(threshold > 0.0 && threshold.is_finite()) {
        return Err(Error::invalid(format!("threshold must be positive, got {threshold}")));
    }
    let points: Vec<_> = grid
        .iter()
        .filter(|&(_, _, v)| v <= threshold)
        .map(|(l, g, _)| (l, g))
        .collect();
    if points.is_empty() {
        return Err(Error::EmptyResult { threshold });
    }
    Ok(CrossingSet { points, threshold })
}

fn fmt_real(x: f64) -> String {
    format!("{x:.12e}")
}

pub const GRID_HEADER: &str = "lambda,gamma,value";
pub const CROSSINGS_HEADER: &str = "lambda,gamma";

pub fn write_csv<W: Write>(grid: &SweepGrid, mut out: W) -> std::io::Result<()> {
    writeln!(out, "{GRID_HEADER}")?;
    for (l, g, v) in grid.iter() {
        writeln!(out, "{},{},{}", fmt_real(l), fmt_real(g), fmt_real(v))?;
    }
    out.flush()
}

pub fn export_csv(grid: &SweepGrid, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let ctx = || format!("writing {}", path.display());
    let file = File::create(path).map_err(|e| Error::io(ctx(), e))?;
    write_csv(grid, BufWriter::new(file)).map_err(|e| Error::io(ctx(), e))
}

pub fn write_crossings_csv<W: Write>(set: &CrossingSet, mut out: W) -> std::io::Result<()> {
    writeln!(out, "{CROSSINGS_HEADER}")?;
    for &(l, g) in &set.points {
        writeln!(out, "{},{}", fmt_real(l), fmt_real(g))?;
    }
    out.flush()
}

pub fn export_crossings_csv(set: &CrossingSet, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let ctx = || format!("writing {}", path.display());
    let file = File::create(path).map_err(|e| Error::io(ctx(), e))?;
    write_crossings_csv(set, BufWriter::new(file)).map_err(|e| Error::io(ctx(), e))
}

/// Reads rows written by [`write_csv`] back as `(lambda, gamma, value)`.
pub fn read_csv<R: BufRead>(input: R) -> Result<Vec<(f64, f64, f64)>> {
    let mut lines = input.lines();
    let header = lines
        .next()
        .transpose()
        .map_err(|e| Error::io("reading CSV header", e))?;
    if header.as_deref() != Some(GRID_HEADER) {
        return Err(Error::invalid(format!("unexpected CSV header {header:?}")));
    }
    let mut rows = Vec::new();
    for (n, line) in lines.enumerate() {
        let line = line.map_err(|e| Error::io("reading CSV row", e))?;
        let fields = line
            .split(',')
            .map(|f| f.parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::invalid(format!("row {}: {e}", n + 1)))?;
        match fields[..] {
            [l, g, v] => rows.push((l, g, v)),
            _ => return Err(Error::invalid(format!("row {} has {} fields", n + 1, fields.len()))),
        }
    }
    Ok(rows)
}

pub fn import_csv(path: impl AsRef<Path>) -> Result<Vec<(f64, f64, f64)>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(format!("opening {}", path.display()), e))?;
    read_csv(BufReader::new(file))
}
