//! Table-style sweeps over a design set, and CSV I/O for their results.

use std::io::{Read, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::Catalog;
use crate::cells::{cell_metrics, FaCell, FaKind};
use crate::cost::{pdp, reduction_of};
use crate::design::{build_design, DesignSet};
use crate::error::{Error, Result};
use crate::metrics::{Evaluator, MredConvention, Strategy};
use crate::pareto::{Objective, ParetoPoint};

pub const DEFAULT_SAMPLES: u64 = 1_000_000;
pub const DEFAULT_SEED: u64 = 1;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SweepMode {
    /// Exhaustive for cells and 8x8 sets, sampled with the defaults for
    /// 16x16 sets.
    #[default]
    Auto,
    Exhaustive,
    Sampled {
        n: u64,
        seed: u64,
    },
}

#[derive(Clone, Debug)]
pub struct SweepSpec {
    pub set: DesignSet,
    pub mode: SweepMode,
    pub mred: MredConvention,
    /// Caps worker threads; `None` uses the global pool.
    pub workers: Option<usize>,
}

impl SweepSpec {
    pub fn new(set: DesignSet) -> Self {
        SweepSpec {
            set,
            mode: SweepMode::Auto,
            mred: MredConvention::Skip,
            workers: None,
        }
    }

    /// The concrete mode after applying the set's default.
    pub fn resolved_mode(&self) -> SweepMode {
        match self.mode {
            SweepMode::Auto if self.set.exhaustive_by_default() => SweepMode::Exhaustive,
            SweepMode::Auto => SweepMode::Sampled {
                n: DEFAULT_SAMPLES,
                seed: DEFAULT_SEED,
            },
            m => m,
        }
    }
}

/// One result row. Error columns are computed; hardware columns come from
/// the catalog (delay, power) and the construction census (size).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub name: String,
    pub mred: f64,
    pub med: f64,
    pub er: f64,
    pub nmed: f64,
    pub delay_ps: f64,
    pub power_uw: f64,
    pub size: u64,
    pub pdp_fj: f64,
    pub area_red_pct: f64,
    pub pdp_red_pct: f64,
}

struct ErrorCols {
    mred: f64,
    med: f64,
    er: f64,
    nmed: f64,
}

/// Treats the cell as a 3-input adder: ED = |s + 2c − (a + b + cin)|.
fn cell_errors(kind: FaKind) -> ErrorCols {
    let cell = FaCell::get(kind);
    let (mut wrong, mut ed_sum, mut red_sum) = (0u32, 0u32, 0.0);
    for row in 0..8u8 {
        let (a, b, c) = (row & 4 != 0, row & 2 != 0, row & 1 != 0);
        let exact = a as u32 + b as u32 + c as u32;
        let (s, co) = cell.eval(a, b, c);
        let ed = exact.abs_diff(s as u32 + 2 * co as u32);
        wrong += (ed != 0) as u32;
        ed_sum += ed;
        if exact != 0 {
            red_sum += ed as f64 / exact as f64;
        }
    }
    let med = ed_sum as f64 / 8.0;
    ErrorCols {
        mred: red_sum / 7.0,
        med,
        er: wrong as f64 / 8.0,
        nmed: med / 3.0,
    }
}

/// Evaluates every design of the set; rows follow the set's design order.
pub fn run_sweep(spec: &SweepSpec, catalog: &Catalog) -> Result<Vec<SweepRow>> {
    let run = || -> Result<Vec<SweepRow>> {
        let names = spec.set.names();
        let base = catalog.lookup(spec.set.baseline())?;
        let base_pdp: f64 = pdp(base)?;
        let base_size = size_of(spec.set, spec.set.baseline())?;
        names
            .par_iter()
            .map(|name| {
                let entry = catalog.lookup(name)?;
                let size = size_of(spec.set, name)?;
                if size != entry.size {
                    log::warn!("{name}: census size {size} differs from catalog size {}", entry.size);
                }
                let pdp_fj: f64 = pdp(entry)?;
                let e = errors_of(spec, name)?;
                Ok(SweepRow {
                    name: name.clone(),
                    mred: e.mred,
                    med: e.med,
                    er: e.er,
                    nmed: e.nmed,
                    delay_ps: entry.delay_ps.unwrap_or(f64::NAN),
                    power_uw: entry.power_uw(),
                    size,
                    pdp_fj,
                    area_red_pct: reduction_of(base_size as f64, size as f64),
                    pdp_red_pct: reduction_of(base_pdp, pdp_fj),
                })
            })
            .collect()
    };
    match spec.workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::Io(std::io::Error::other(e)))?
            .install(run),
        None => run(),
    }
}

fn size_of(set: DesignSet, name: &str) -> Result<u64> {
    if set == DesignSet::Cells {
        let kind: FaKind = name.parse()?;
        Ok(cell_metrics(kind).size)
    } else {
        Ok(build_design(name)?.area())
    }
}

fn errors_of(spec: &SweepSpec, name: &str) -> Result<ErrorCols> {
    if spec.set == DesignSet::Cells {
        return Ok(cell_errors(name.parse()?));
    }
    let m = build_design(name)?;
    let eval = Evaluator::new().mred(spec.mred);
    let r = match spec.resolved_mode() {
        SweepMode::Sampled { n, seed } => eval.sampled::<f64, _>(&m, n, seed, Strategy::Uniform)?,
        _ => eval.exhaustive::<f64, _>(&m)?,
    };
    Ok(ErrorCols {
        mred: r.mred,
        med: r.med,
        er: r.er,
        nmed: r.nmed,
    })
}

/// Writes rows as CSV preceded by a `#` comment echoing the sweep settings.
pub fn write_sweep_csv<W: Write>(spec: &SweepSpec, rows: &[SweepRow], mut out: W) -> Result<()> {
    let mode = match spec.resolved_mode() {
        SweepMode::Sampled { n, seed } => format!("sampled n={n} seed={seed}"),
        _ => "exhaustive".to_string(),
    };
    let mred = match spec.mred {
        MredConvention::Skip => "skip",
        MredConvention::Zero => "zero",
    };
    writeln!(out, "# set={} mode={mode} mred={mred}", spec.set)?;
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_sweep_csv<R: Read>(input: R) -> Result<Vec<SweepRow>> {
    let mut rdr = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(input);
    rdr.deserialize().map(|r| r.map_err(Error::from)).collect()
}

/// Builds Pareto points from any CSV with a `name` column. Objective
/// columns must parse as numbers.
pub fn points_from_csv<R: Read>(input: R, objectives: &[Objective]) -> Result<Vec<ParetoPoint<f64>>> {
    let mut rdr = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(input);
    let headers = rdr.headers()?.clone();
    let column = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::Csv(format!("missing column `{name}`")))
    };
    let name_col = column("name")?;
    let cols = objectives.iter().map(|o| column(&o.name)).collect::<Result<Vec<_>>>()?;
    let mut points = Vec::new();
    for record in rdr.records() {
        let record = record?;
        let values = cols
            .iter()
            .map(|&c| {
                let field = &record[c];
                field
                    .trim()
                    .parse::<f64>()
                    .map_err(|_| Error::Csv(format!("`{field}` in column `{}` is not a number", &headers[c])))
            })
            .collect::<Result<Vec<_>>>()?;
        points.push(ParetoPoint::new(&record[name_col], objectives.to_vec(), values)?);
    }
    Ok(points)
}
