//! End-to-end ranking run: weights, fuzzification of numerical criteria,
//! reliability adjustment, aggregation, weighting and TOPSIS.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::aggregation::{
    aggregate_linguistic_ivfs, aggregate_linguistic_svns, criteria_weights_ivfs, criteria_weights_svns,
    dm_weights_svns, integrate_numeric_ivfs, integrate_numeric_svns, normalize_weight_matrix_ivfs,
    weight_matrix_svns, CriterionWeightSet, DecisionMatrix, DmWeights, MatrixStage,
};
use crate::dataset::{CriterionKind, DecisionDataset};
use crate::error::{Error, Result, Stage, StageExt};
use crate::fuzzify::{build_frame, class_count_for_weight, crisp_to_range, range_memberships, ClassThresholds, Frame, RangeValue};
use crate::fuzzy::{Ivfs, Svn};
use crate::reliability::{adjusted_normalized_memberships, reliability_profiles, ReliabilityContext, ReliabilityProfile};
use crate::topsis::{ideal_solutions_svns, rank_classical, rank_ivfs, rank_svns, Method, RankingResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Approach {
    Svns,
    Ivfs,
    Both,
    Classical,
}

impl Approach {
    pub fn methods(self) -> &'static [Method] {
        match self {
            Approach::Svns => &[Method::Svns],
            Approach::Ivfs => &[Method::Ivfs],
            Approach::Both => &[Method::Svns, Method::Ivfs],
            Approach::Classical => &[Method::Classical],
        }
    }

    fn wants(self, m: Method) -> bool {
        self.methods().contains(&m)
    }
}

impl From<Method> for Approach {
    fn from(m: Method) -> Self {
        match m {
            Method::Svns => Approach::Svns,
            Method::Ivfs => Approach::Ivfs,
            Method::Classical => Approach::Classical,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub approach: Approach,
    pub reliability: bool,
    pub thresholds: ClassThresholds,
    pub sweep_grid: Vec<f64>,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            approach: Approach::Both,
            reliability: true,
            thresholds: ClassThresholds::default(),
            sweep_grid: crate::sensitivity::default_grid(),
            seed: crate::BUNDLED_SEED,
        }
    }
}

impl RunConfig {
    pub fn with_approach(mut self, approach: Approach) -> Self {
        self.approach = approach;
        self
    }

    pub fn with_reliability(mut self, on: bool) -> Self {
        self.reliability = on;
        self
    }
}

/// Group weights shared by both schemes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupWeights {
    pub dm: DmWeights,
    pub dm_ivfs: Vec<Ivfs>,
    pub criteria: CriterionWeightSet,
}

/// Computes DM weights and criterion weights.
pub fn group_weights(ds: &DecisionDataset) -> Result<GroupWeights> {
    let dm = dm_weights_svns(&ds.dm_importances()).at(Stage::Weights, "decision makers")?;
    let dm_ivfs: Vec<Ivfs> = ds.dm_importances().iter().map(|t| t.ivfs()).collect();
    let importance = ds.criterion_importance();
    let mut svns = Vec::with_capacity(importance.len());
    let mut ivfs = Vec::with_capacity(importance.len());
    for (j, row) in importance.iter().enumerate() {
        let id = &ds.criteria()[j].id;
        let rows = std::slice::from_ref(row);
        svns.extend(criteria_weights_svns(rows, &dm).at(Stage::Weights, id.as_str())?);
        ivfs.extend(criteria_weights_ivfs(rows, &dm_ivfs).at(Stage::Weights, id.as_str())?);
    }
    let criteria = CriterionWeightSet::new(svns, ivfs).at(Stage::Weights, "criteria")?;
    Ok(GroupWeights { dm, dm_ivfs, criteria })
}

/// Fuzzification and reliability intermediates for one numerical criterion.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NumericalArtifacts {
    pub criterion: String,
    pub index: usize,
    pub frame: Frame,
    /// Per supplier.
    pub ranges: Vec<RangeValue>,
    /// Per supplier, per class.
    pub memberships: Vec<Vec<f64>>,
    pub profile: ReliabilityProfile,
    /// The `R*` actually applied (1 when reliability is off).
    pub applied_r_star: f64,
    /// Per supplier, per class; each row sums to one.
    pub class_weights: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SvnsArtifacts {
    pub raw: DecisionMatrix<Svn>,
    pub weighted: DecisionMatrix<Svn>,
    pub pis: Vec<Svn>,
    pub nis: Vec<Svn>,
    pub ranking: RankingResult,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IvfsArtifacts {
    pub raw: DecisionMatrix<Ivfs>,
    pub normalized_weighted: DecisionMatrix<Ivfs>,
    pub ranking: RankingResult,
}

/// Everything a run produces, for inspection and reporting.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PipelineRun {
    pub weights: GroupWeights,
    pub numerical: Vec<NumericalArtifacts>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub svns: Option<SvnsArtifacts>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ivfs: Option<IvfsArtifacts>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classical: Option<RankingResult>,
}

impl PipelineRun {
    /// Rankings in method order: SVNS, IVFS, classical.
    pub fn rankings(&self) -> Vec<&RankingResult> {
        let mut out = Vec::new();
        out.extend(self.svns.as_ref().map(|s| &s.ranking));
        out.extend(self.ivfs.as_ref().map(|s| &s.ranking));
        out.extend(self.classical.as_ref());
        out
    }

    pub fn ranking(&self, method: Method) -> Option<&RankingResult> {
        match method {
            Method::Svns => self.svns.as_ref().map(|s| &s.ranking),
            Method::Ivfs => self.ivfs.as_ref().map(|s| &s.ranking),
            Method::Classical => self.classical.as_ref(),
        }
    }
}

pub fn run_pipeline(ds: &DecisionDataset, config: &RunConfig) -> Result<PipelineRun> {
    let weights = group_weights(ds)?;
    run_pipeline_with_weights(ds, config, weights)
}

/// Runs with precomputed (possibly overridden) group weights.
pub fn run_pipeline_with_weights(ds: &DecisionDataset, config: &RunConfig, weights: GroupWeights) -> Result<PipelineRun> {
    let (_, n, m) = ds.shape();
    if n < 2 {
        return Err(Error::DegenerateRanking(format!("ranking needs at least two suppliers, found {n}"))
            .at(Stage::Ranking, "suppliers"));
    }
    if weights.criteria.len() != m {
        return Err(Error::Shape { expected: m, found: weights.criteria.len() }.at(Stage::Weights, "criteria"));
    }
    let classical = if config.approach.wants(Method::Classical) {
        Some(rank_classical(ds).at(Stage::Ranking, "classical")?)
    } else {
        None
    };
    let fuzzy = config.approach.wants(Method::Svns) || config.approach.wants(Method::Ivfs);
    let numerical = if fuzzy { numerical_artifacts(ds, config, &weights.criteria)? } else { Vec::new() };

    let svns = if config.approach.wants(Method::Svns) {
        Some(svns_branch(ds, &weights, &numerical)?)
    } else {
        None
    };
    let ivfs = if config.approach.wants(Method::Ivfs) {
        Some(ivfs_branch(ds, &weights, &numerical)?)
    } else {
        None
    };
    Ok(PipelineRun { weights, numerical, svns, ivfs, classical })
}

struct Fuzzified {
    index: usize,
    frame: Frame,
    ranges: Vec<RangeValue>,
    memberships: Vec<Vec<f64>>,
    ctx: ReliabilityContext,
}

fn fuzzify_criterion(ds: &DecisionDataset, j: usize, alpha: f64, thresholds: &ClassThresholds) -> Result<Fuzzified> {
    let id = ds.criteria()[j].id.as_str();
    let count = class_count_for_weight(alpha, thresholds).at(Stage::Fuzzification, id)?;
    let frame = build_frame(&ds.criterion_values(j), count).at(Stage::Fuzzification, id)?;
    let mut ranges = Vec::with_capacity(ds.suppliers().len());
    let mut memberships = Vec::with_capacity(ds.suppliers().len());
    for (i, s) in ds.suppliers().iter().enumerate() {
        let entity = || format!("{s}/{id}");
        let r = crisp_to_range(&ds.crisp_values(i, j)).at(Stage::Membership, entity())?;
        memberships.push(range_memberships(&frame, r).at(Stage::Membership, entity())?);
        ranges.push(r);
    }
    let ctx = ReliabilityContext::for_frame(&frame, ranges.iter().map(RangeValue::midpoint).collect())
        .at(Stage::Reliability, id)?;
    Ok(Fuzzified { index: j, frame, ranges, memberships, ctx })
}

fn numerical_artifacts(
    ds: &DecisionDataset,
    config: &RunConfig,
    weights: &CriterionWeightSet,
) -> Result<Vec<NumericalArtifacts>> {
    let numeric: Vec<usize> =
        (0..ds.criteria().len()).filter(|&j| ds.criteria()[j].kind == CriterionKind::Numerical).collect();
    if numeric.is_empty() {
        return Ok(Vec::new());
    }
    let fuzzified: Vec<Fuzzified> = numeric
        .par_iter()
        .map(|&j| fuzzify_criterion(ds, j, weights.alpha()[j], &config.thresholds))
        .collect::<Result<_>>()?;
    let frames: Vec<&Frame> = fuzzified.iter().map(|f| &f.frame).collect();
    let ctxs: Vec<&ReliabilityContext> = fuzzified.iter().map(|f| &f.ctx).collect();
    let profiles = reliability_profiles(&frames, &ctxs).at(Stage::Reliability, "numerical criteria")?;

    fuzzified
        .into_iter()
        .zip(profiles)
        .map(|(f, profile)| {
            let id = ds.criteria()[f.index].id.clone();
            let applied = if config.reliability { profile.r_normalized } else { 1.0 };
            let class_weights = f
                .memberships
                .iter()
                .zip(ds.suppliers())
                .map(|(m, s)| adjusted_normalized_memberships(m, applied).at(Stage::Reliability, format!("{s}/{id}")))
                .collect::<Result<Vec<_>>>()?;
            Ok(NumericalArtifacts {
                criterion: id,
                index: f.index,
                frame: f.frame,
                ranges: f.ranges,
                memberships: f.memberships,
                profile,
                applied_r_star: applied,
                class_weights,
            })
        })
        .collect()
}

fn numerical_for(numerical: &[NumericalArtifacts], j: usize) -> Option<&NumericalArtifacts> {
    numerical.iter().find(|a| a.index == j)
}

fn assemble<T: Copy + Send>(
    ds: &DecisionDataset,
    numerical: &[NumericalArtifacts],
    integrate: impl Fn(&[f64], &Frame) -> Result<T> + Sync,
    aggregate: impl Fn(&DecisionDataset, usize, usize) -> Result<T> + Sync,
) -> Result<DecisionMatrix<T>> {
    let (_, n, m) = ds.shape();
    let columns: Vec<Vec<T>> = (0..m)
        .into_par_iter()
        .map(|j| {
            let id = ds.criteria()[j].id.as_str();
            (0..n)
                .map(|i| {
                    let entity = || format!("{}/{id}", ds.suppliers()[i]);
                    match numerical_for(numerical, j) {
                        Some(a) => integrate(&a.class_weights[i], &a.frame).at(Stage::Integration, entity()),
                        None => aggregate(ds, i, j).at(Stage::LinguisticAggregation, entity()),
                    }
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let rows = (0..n).map(|i| columns.iter().map(|c| c[i]).collect()).collect();
    DecisionMatrix::from_rows(rows, MatrixStage::RawAggregated)
}

fn svns_branch(ds: &DecisionDataset, weights: &GroupWeights, numerical: &[NumericalArtifacts]) -> Result<SvnsArtifacts> {
    let raw = assemble(
        ds,
        numerical,
        |a, frame| integrate_numeric_svns(a, frame.classes()),
        |ds, i, j| aggregate_linguistic_svns(&ds.terms(i, j), &weights.dm),
    )?;
    let weighted = weight_matrix_svns(&raw, weights.criteria.svns()).at(Stage::Weighting, "svns")?;
    let (pis, nis) = ideal_solutions_svns(&weighted, &ds.objectives()).at(Stage::Ranking, "svns")?;
    let ranking = rank_svns(&weighted, &pis, &nis, ds.suppliers()).at(Stage::Ranking, "svns")?;
    Ok(SvnsArtifacts { raw, weighted, pis, nis, ranking })
}

fn ivfs_branch(ds: &DecisionDataset, weights: &GroupWeights, numerical: &[NumericalArtifacts]) -> Result<IvfsArtifacts> {
    let raw = assemble(
        ds,
        numerical,
        |a, frame| integrate_numeric_ivfs(a, frame.classes()),
        |ds, i, j| aggregate_linguistic_ivfs(&ds.terms(i, j), &weights.dm_ivfs),
    )?;
    let normalized_weighted = normalize_weight_matrix_ivfs(&raw, weights.criteria.ivfs(), &ds.objectives())
        .map_err(|e| match e {
            Error::Normalization { criterion, reason } => {
                let id = criterion_label(ds, &criterion);
                Error::Normalization { criterion: id.clone(), reason }.at(Stage::Weighting, id)
            }
            other => other.at(Stage::Weighting, "ivfs"),
        })?;
    let ranking = rank_ivfs(&normalized_weighted, ds.suppliers()).at(Stage::Ranking, "ivfs")?;
    Ok(IvfsArtifacts { raw, normalized_weighted, ranking })
}

/// Maps a `#j` placeholder to the criterion id.
fn criterion_label(ds: &DecisionDataset, placeholder: &str) -> String {
    placeholder
        .strip_prefix('#')
        .and_then(|k| k.parse::<usize>().ok())
        .and_then(|j| ds.criteria().get(j))
        .map_or_else(|| placeholder.to_string(), |c| c.id.clone())
}
