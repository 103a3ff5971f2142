//! Single-criterion weight sweeps, optimum crossovers and the
//! supplier/criterion association table.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::dataset::DecisionDataset;
use crate::error::{Error, Result, Stage, StageExt};
use crate::pipeline::{group_weights, run_pipeline_with_weights, Approach, RunConfig};
use crate::topsis::{crisp_decision_matrix, entropy_weights, topsis_crisp, Method, RankingResult};

/// Changes in cc smaller than this count as flat.
pub const DEAD_BAND: f64 = 1e-9;

/// `0.1, 0.2, ..., 0.9`.
pub fn default_grid() -> Vec<f64> {
    (1..=9).map(|k| k as f64 / 10.0).collect()
}

/// Parses either a comma-separated list (`0.2,0.5,0.8`) or an inclusive
/// `start:stop:step` range.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let num = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| Error::Domain(format!("invalid grid value {s:?}")))
    };
    let parts: Vec<&str> = spec.split(':').collect();
    let grid = match parts.as_slice() {
        [start, stop, step] => {
            let (start, stop, step) = (num(start)?, num(stop)?, num(step)?);
            if !(step > 0.0) || stop < start {
                return Err(Error::Domain(format!("invalid grid range {spec:?}")));
            }
            let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
            (0..count).map(|k| ((start + k as f64 * step) * 1e12).round() / 1e12).collect()
        }
        [_] => spec.split(',').map(num).collect::<Result<Vec<_>>>()?,
        _ => return Err(Error::Domain(format!("invalid grid {spec:?}"))),
    };
    Ok(grid)
}

fn check_grid(grid: &[f64], upper_inclusive: bool) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::Domain("sweep grid is empty".into()));
    }
    for &a in grid {
        let ok = a > 0.0 && if upper_inclusive { a.is_finite() } else { a < 1.0 };
        if !ok {
            let bound = if upper_inclusive { "(0, inf)" } else { "(0, 1)" };
            return Err(Error::Domain(format!("sweep value {a} outside {bound}")));
        }
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain("sweep grid must be strictly increasing".into()));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Crossover {
    /// Consecutive grid points bracketing the change of optimum.
    pub interval: (f64, f64),
    pub outgoing: String,
    pub incoming: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub criterion: String,
    pub criterion_index: usize,
    pub method: Method,
    pub grid: Vec<f64>,
    pub suppliers: Vec<String>,
    /// `curves[i][g]` is supplier `i`'s cc at `grid[g]`.
    pub curves: Vec<Vec<f64>>,
    /// Index of the rank-1 supplier at each grid point.
    pub optimal: Vec<usize>,
    pub crossovers: Vec<Crossover>,
}

impl SweepResult {
    fn assemble(ds: &DecisionDataset, j: usize, method: Method, grid: &[f64], runs: Vec<RankingResult>) -> Self {
        let suppliers = ds.suppliers().to_vec();
        let curves = (0..suppliers.len()).map(|i| runs.iter().map(|r| r.scores[i].cc).collect()).collect();
        let optimal: Vec<usize> = runs.iter().map(RankingResult::best).collect();
        let crossovers = optimal
            .windows(2)
            .zip(grid.windows(2))
            .filter(|(o, _)| o[0] != o[1])
            .map(|(o, g)| Crossover {
                interval: (g[0], g[1]),
                outgoing: suppliers[o[0]].clone(),
                incoming: suppliers[o[1]].clone(),
            })
            .collect();
        SweepResult {
            criterion: ds.criteria()[j].id.clone(),
            criterion_index: j,
            method,
            grid: grid.to_vec(),
            suppliers,
            curves,
            optimal,
            crossovers,
        }
    }

    /// Plot-ready rows: `alpha,supplier_id,cc`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Schema { location: "sweep csv".into(), message: e.to_string() };
        w.write_record(["alpha", "supplier_id", "cc"]).map_err(io)?;
        for (g, alpha) in self.grid.iter().enumerate() {
            for (i, s) in self.suppliers.iter().enumerate() {
                w.write_record([alpha.to_string(), s.clone(), self.curves[i][g].to_string()]).map_err(io)?;
            }
        }
        let bytes = w.into_inner().map_err(|e| Error::Schema { location: "sweep csv".into(), message: e.to_string() })?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

fn criterion_position(ds: &DecisionDataset, j: usize) -> Result<()> {
    if j >= ds.criteria().len() {
        return Err(Error::Domain(format!("criterion #{j} does not exist")));
    }
    Ok(())
}

fn evaluate<F>(grid: &[f64], parallel: bool, f: F) -> Result<Vec<RankingResult>>
where
    F: Fn(f64) -> Result<RankingResult> + Sync,
{
    if parallel {
        grid.par_iter().map(|&a| f(a)).collect()
    } else {
        grid.iter().map(|&a| f(a)).collect()
    }
}

fn fuzzy_sweep(
    ds: &DecisionDataset,
    j: usize,
    grid: &[f64],
    method: Method,
    config: &RunConfig,
    parallel: bool,
) -> Result<SweepResult> {
    if method == Method::Classical {
        return Err(Error::Domain("use sweep_classical for the crisp baseline".into()));
    }
    criterion_position(ds, j)?;
    check_grid(grid, false).at(Stage::Sensitivity, "grid")?;
    let id = ds.criteria()[j].id.clone();
    let base = group_weights(ds)?;
    let config = RunConfig { approach: Approach::from(method), ..config.clone() };
    let runs = evaluate(grid, parallel, |alpha| {
        let mut w = base.clone();
        w.criteria = base.criteria.with_alpha(j, alpha).at(Stage::Sensitivity, id.as_str())?;
        let run = run_pipeline_with_weights(ds, &config, w)?;
        Ok(run.ranking(method).expect("requested method").clone())
    })?;
    Ok(SweepResult::assemble(ds, j, method, grid, runs))
}

/// Sweeps criterion `j`'s representative weight over `grid` and re-runs
/// the fuzzy pipeline at each point. Grid points are evaluated in parallel.
pub fn sweep_weight(ds: &DecisionDataset, j: usize, grid: &[f64], method: Method, config: &RunConfig) -> Result<SweepResult> {
    fuzzy_sweep(ds, j, grid, method, config, true)
}

/// Same as [`sweep_weight`], one grid point at a time.
pub fn sweep_weight_sequential(
    ds: &DecisionDataset,
    j: usize,
    grid: &[f64],
    method: Method,
    config: &RunConfig,
) -> Result<SweepResult> {
    fuzzy_sweep(ds, j, grid, method, config, false)
}

/// Crisp baseline sweep: criterion `j`'s entropy weight is multiplied by
/// each `alpha` and the weights re-normalised. `alpha = 1` is the plain
/// baseline, so values above one are allowed here.
pub fn sweep_classical(ds: &DecisionDataset, j: usize, grid: &[f64]) -> Result<SweepResult> {
    criterion_position(ds, j)?;
    check_grid(grid, true).at(Stage::Sensitivity, "grid")?;
    let matrix = crisp_decision_matrix(ds);
    let base = entropy_weights(&matrix).at(Stage::Ranking, "classical")?;
    let objectives = ds.objectives();
    let runs = evaluate(grid, true, |alpha| {
        let mut w = base.clone();
        w[j] *= alpha;
        let total: f64 = w.iter().sum();
        if !(total > 0.0) {
            return Err(Error::DegenerateRanking("all entropy weights vanish".into()).at(Stage::Sensitivity, "classical"));
        }
        w.iter_mut().for_each(|x| *x /= total);
        topsis_crisp(&matrix, &w, &objectives, ds.suppliers()).at(Stage::Ranking, "classical")
    })?;
    Ok(SweepResult::assemble(ds, j, Method::Classical, grid, runs))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Association {
    P,
    N,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AssociationCell {
    pub association: Association,
    /// `|delta| <= DEAD_BAND`; always classified N.
    pub flat: bool,
    /// cc at the largest grid value minus cc at the smallest.
    pub delta: f64,
}

impl fmt::Display for AssociationCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.association, self.flat) {
            (Association::P, _) => f.write_str("P"),
            (Association::N, false) => f.write_str("N"),
            (Association::N, true) => f.write_str("N (flat)"),
        }
    }
}

impl AssociationCell {
    pub fn from_delta(delta: f64) -> Self {
        AssociationCell {
            association: if delta > DEAD_BAND { Association::P } else { Association::N },
            flat: delta.abs() <= DEAD_BAND,
            delta,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AssociationTable {
    pub method: Method,
    pub suppliers: Vec<String>,
    pub criteria: Vec<String>,
    /// `cells[i][j]` for supplier `i` and criterion `j`.
    pub cells: Vec<Vec<AssociationCell>>,
}

/// Sweeps every criterion and classifies each supplier's response.
pub fn association_table(ds: &DecisionDataset, grid: &[f64], method: Method, config: &RunConfig) -> Result<AssociationTable> {
    let m = ds.criteria().len();
    let sweeps: Vec<SweepResult> = (0..m)
        .map(|j| match method {
            Method::Classical => sweep_classical(ds, j, grid),
            _ => sweep_weight(ds, j, grid, method, config),
        })
        .collect::<Result<_>>()?;
    let cells = (0..ds.suppliers().len())
        .map(|i| {
            sweeps
                .iter()
                .map(|s| {
                    let curve = &s.curves[i];
                    AssociationCell::from_delta(curve[curve.len() - 1] - curve[0])
                })
                .collect()
        })
        .collect();
    Ok(AssociationTable {
        method,
        suppliers: ds.suppliers().to_vec(),
        criteria: ds.criteria().iter().map(|c| c.id.clone()).collect(),
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        assert_eq!(default_grid(), vec![0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9]);
        assert_eq!(parse_grid("0.1:0.9:0.1").unwrap(), default_grid());
        assert_eq!(parse_grid("0.2, 0.5,0.8").unwrap(), vec![0.2, 0.5, 0.8]);
        assert_eq!(parse_grid("0.25:0.75:0.25").unwrap(), vec![0.25, 0.5, 0.75]);
        assert!(parse_grid("0.1:0.9").is_err());
        assert!(parse_grid("a,b").is_err());
        assert!(check_grid(&[0.0, 0.5], false).is_err());
        assert!(check_grid(&[0.5, 1.0], false).is_err());
        assert!(check_grid(&[0.5, 0.4], false).is_err());
        assert!(check_grid(&[0.5, 1.0, 2.0], true).is_ok());
    }

    #[test]
    fn dead_band() {
        assert_eq!(AssociationCell::from_delta(1e-3).to_string(), "P");
        assert_eq!(AssociationCell::from_delta(-1e-3).to_string(), "N");
        assert_eq!(AssociationCell::from_delta(1e-12).to_string(), "N (flat)");
        assert_eq!(AssociationCell::from_delta(-1e-12).to_string(), "N (flat)");
    }
}
