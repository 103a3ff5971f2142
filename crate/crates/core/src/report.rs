//! Serialisation of rankings and sweeps as JSON, CSV or a text table.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pipeline::PipelineRun;
use crate::reliability::ReliabilityProfile;
use crate::sensitivity::{AssociationTable, SweepResult};
use crate::topsis::{Distances, RankingResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
    Table,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "table" | "text" => Ok(ReportFormat::Table),
            other => Err(Error::Domain(format!("unknown report format {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionReliability {
    pub criterion: String,
    pub class_count: usize,
    pub profile: ReliabilityProfile,
    pub applied_r_star: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Report {
    pub rankings: Vec<RankingResult>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub reliability: Vec<CriterionReliability>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub sensitivity: Vec<SweepResult>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub associations: Vec<AssociationTable>,
}

impl Report {
    pub fn from_run(run: &PipelineRun) -> Self {
        Report {
            rankings: run.rankings().into_iter().cloned().collect(),
            reliability: run
                .numerical
                .iter()
                .map(|a| CriterionReliability {
                    criterion: a.criterion.clone(),
                    class_count: a.frame.class_count(),
                    profile: a.profile,
                    applied_r_star: a.applied_r_star,
                })
                .collect(),
            ..Report::default()
        }
    }

    pub fn with_sweeps(mut self, sweeps: Vec<SweepResult>) -> Self {
        self.sensitivity = sweeps;
        self
    }

    pub fn with_associations(mut self, tables: Vec<AssociationTable>) -> Self {
        self.associations = tables;
        self
    }
}

pub fn render_json(report: &Report) -> Result<String> {
    let mut s = serde_json::to_string_pretty(report)
        .map_err(|e| Error::Schema { location: "report".into(), message: e.to_string() })?;
    s.push('\n');
    Ok(s)
}

fn csv_error(e: impl std::fmt::Display) -> Error {
    Error::Schema { location: "report csv".into(), message: e.to_string() }
}

/// One row per (method, supplier); distance columns not used by a method
/// are left empty.
pub fn render_ranking_csv(rankings: &[RankingResult]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "method", "supplier", "d_plus", "d_minus", "d1_plus", "d2_plus", "d1_minus", "d2_minus", "rc1", "rc2", "cc",
        "rank", "tied",
    ])
    .map_err(csv_error)?;
    for r in rankings {
        for s in &r.scores {
            let blank = String::new;
            let mut cols: Vec<String> = vec![r.method.to_string(), s.supplier.clone()];
            match s.distances {
                Distances::Svns { s_plus, s_minus } => {
                    cols.extend([s_plus.to_string(), s_minus.to_string()]);
                    cols.extend(std::iter::repeat_with(blank).take(6));
                }
                Distances::Classical { d_plus, d_minus } => {
                    cols.extend([d_plus.to_string(), d_minus.to_string()]);
                    cols.extend(std::iter::repeat_with(blank).take(6));
                }
                Distances::Ivfs { d1_plus, d2_plus, d1_minus, d2_minus, rc1, rc2 } => {
                    cols.extend(std::iter::repeat_with(blank).take(2));
                    cols.extend([d1_plus, d2_plus, d1_minus, d2_minus, rc1, rc2].map(|x| x.to_string()));
                }
            }
            cols.extend([s.cc.to_string(), s.rank.to_string(), s.tied.to_string()]);
            w.write_record(&cols).map_err(csv_error)?;
        }
    }
    String::from_utf8(w.into_inner().map_err(csv_error)?).map_err(csv_error)
}

fn table_ranking(out: &mut String, r: &RankingResult) {
    let _ = writeln!(out, "{} approach", r.method.to_string().to_uppercase());
    let ivfs = matches!(r.scores.first().map(|s| s.distances), Some(Distances::Ivfs { .. }));
    if ivfs {
        let _ = writeln!(
            out,
            "{:<10} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8} {:>13}",
            "Supplier", "d1+", "d2+", "d1-", "d2-", "RC1", "RC2", "RC", "Ranking Score"
        );
    } else {
        let _ = writeln!(out, "{:<10} {:>8} {:>8} {:>8} {:>13}", "Supplier", "d+", "d-", "cc", "Ranking Score");
    }
    for s in &r.scores {
        let rank = if s.tied { format!("{}=", s.rank) } else { s.rank.to_string() };
        match s.distances {
            Distances::Svns { s_plus: p, s_minus: m } | Distances::Classical { d_plus: p, d_minus: m } => {
                let _ = writeln!(out, "{:<10} {p:>8.4} {m:>8.4} {:>8.4} {rank:>13}", s.supplier, s.cc);
            }
            Distances::Ivfs { d1_plus, d2_plus, d1_minus, d2_minus, rc1, rc2 } => {
                let _ = writeln!(
                    out,
                    "{:<10} {d1_plus:>8.4} {d2_plus:>8.4} {d1_minus:>8.4} {d2_minus:>8.4} {rc1:>8.4} {rc2:>8.4} {:>8.4} {rank:>13}",
                    s.supplier, s.cc
                );
            }
        }
    }
}

fn table_sweep(out: &mut String, s: &SweepResult) {
    let _ = writeln!(out, "Sensitivity of {} ({})", s.criterion, s.method);
    let _ = write!(out, "{:<8}", "alpha");
    for name in &s.suppliers {
        let _ = write!(out, " {name:>8}");
    }
    let _ = writeln!(out, " {:>8}", "optimal");
    for (g, alpha) in s.grid.iter().enumerate() {
        let _ = write!(out, "{alpha:<8}");
        for curve in &s.curves {
            let _ = write!(out, " {:>8.4}", curve[g]);
        }
        let _ = writeln!(out, " {:>8}", s.suppliers[s.optimal[g]]);
    }
    if s.crossovers.is_empty() {
        let _ = writeln!(out, "no crossover");
    }
    for c in &s.crossovers {
        let _ = writeln!(out, "crossover in ({}, {}): {} -> {}", c.interval.0, c.interval.1, c.outgoing, c.incoming);
    }
}

fn table_association(out: &mut String, t: &AssociationTable) {
    let _ = writeln!(out, "Association ({})", t.method);
    let _ = write!(out, "{:<10}", "Supplier");
    for c in &t.criteria {
        let _ = write!(out, " {c:>8}");
    }
    out.push('\n');
    for (i, s) in t.suppliers.iter().enumerate() {
        let _ = write!(out, "{s:<10}");
        for cell in &t.cells[i] {
            let _ = write!(out, " {:>8}", cell.to_string());
        }
        out.push('\n');
    }
}

pub fn render_table(report: &Report) -> String {
    let mut out = String::new();
    for (k, r) in report.rankings.iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        table_ranking(&mut out, r);
    }
    if !report.reliability.is_empty() {
        let _ = writeln!(out, "\nReliability");
        let _ = writeln!(out, "{:<10} {:>7} {:>10} {:>10} {:>10} {:>10}", "Criterion", "classes", "R^s", "R^d", "R*", "applied");
        for r in &report.reliability {
            let p = &r.profile;
            let _ = writeln!(
                out,
                "{:<10} {:>7} {:>10.4} {:>10.4} {:>10.4} {:>10.4}",
                r.criterion, r.class_count, p.r_static, p.r_dynamic, p.r_normalized, r.applied_r_star
            );
        }
    }
    for s in &report.sensitivity {
        out.push('\n');
        table_sweep(&mut out, s);
    }
    for t in &report.associations {
        out.push('\n');
        table_association(&mut out, t);
    }
    out
}

fn write_file(path: PathBuf, contents: &str) -> Result<PathBuf> {
    std::fs::write(&path, contents).map_err(|source| Error::Io { path: path.clone(), source })?;
    Ok(path)
}

/// Writes the report into `dir` and returns the files written.
///
/// JSON and table formats produce a single `report.json` / `report.txt`;
/// CSV produces `ranking.csv` plus one `sweep-<criterion>-<method>.csv` per
/// sweep.
pub fn emit_report(report: &Report, dir: &Path, format: ReportFormat) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|source| Error::Io { path: dir.to_path_buf(), source })?;
    match format {
        ReportFormat::Json => Ok(vec![write_file(dir.join("report.json"), &render_json(report)?)?]),
        ReportFormat::Table => Ok(vec![write_file(dir.join("report.txt"), &render_table(report))?]),
        ReportFormat::Csv => {
            let mut files = Vec::new();
            if !report.rankings.is_empty() {
                files.push(write_file(dir.join("ranking.csv"), &render_ranking_csv(&report.rankings)?)?);
            }
            for s in &report.sensitivity {
                let name = format!("sweep-{}-{}.csv", s.criterion, s.method);
                files.push(write_file(dir.join(name), &s.to_csv()?)?);
            }
            Ok(files)
        }
    }
}
