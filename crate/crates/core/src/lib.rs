//! Multi-criteria supplier ranking with single-valued neutrosophic and
//! interval-valued fuzzy numbers.
//!
//! Crisp numerical assessments are fuzzified over a frame of discernment
//! whose granularity follows the criterion weight, adjusted by frame
//! reliability, and integrated into fuzzy numbers. Linguistic assessments
//! are aggregated across decision makers. Both kinds meet in a weighted
//! decision matrix that TOPSIS ranks; an entropy-weighted crisp TOPSIS is
//! provided as a baseline, and weight sweeps expose how the optimum moves.

pub mod aggregation;
pub mod dataset;
pub mod error;
pub mod fuzzify;
pub mod fuzzy;
pub mod pipeline;
pub mod reliability;
pub mod report;
pub mod sensitivity;
pub mod topsis;

pub use aggregation::{CriterionWeightSet, DecisionMatrix, DmWeights, MatrixStage};
pub use dataset::{
    generate_dataset, load_dataset, parse_dataset, Assessment, CriterionKind, CriterionSpec, DecisionDataset,
    DecisionMaker, Objective,
};
pub use error::{Error, Result, Stage};
pub use fuzzify::{ClassThresholds, Frame, RangeValue};
pub use fuzzy::{Ivfs, PerformanceTerm, Scheme, Svn, TermRole, WeightTerm};
pub use pipeline::{run_pipeline, Approach, PipelineRun, RunConfig};
pub use reliability::ReliabilityProfile;
pub use report::{emit_report, Report, ReportFormat};
pub use sensitivity::{association_table, sweep_classical, sweep_weight, AssociationTable, SweepResult};
pub use topsis::{Method, RankingResult};

/// Seed of the bundled example dataset.
pub const BUNDLED_SEED: u64 = 2019;

/// The bundled example dataset (10 DMs, 8 suppliers, 8 criteria), as JSON.
pub const BUNDLED_DATASET: &str = include_str!("../data/bundled.json");

pub fn bundled_dataset() -> Result<DecisionDataset> {
    parse_dataset(BUNDLED_DATASET)
}
