//! Group aggregation: decision-maker weights, criterion weights, integrated
//! fuzzy numbers for numerical criteria, aggregated fuzzy numbers for
//! linguistic criteria, and the weighted decision matrices of both schemes.

use serde::Serialize;

use crate::dataset::Objective;
use crate::error::{Error, Result};
use crate::fuzzy::{ivfs_combine, svn_product, Ivfs, IvfsOp, PerformanceTerm, Svn, WeightTerm};

/// Tolerance on `sum(A) == 1` for class weights.
const WEIGHT_SUM_TOL: f64 = 1e-9;

/// Relative weights of the decision makers; nonnegative, summing to one.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DmWeights {
    sigma: Vec<f64>,
}

impl DmWeights {
    pub fn sigma(&self) -> &[f64] {
        &self.sigma
    }

    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_empty()
    }
}

/// Decision-maker weights from SVN importances:
/// `sigma_k ∝ a_k + b_k * a_k / (a_k + c_k)`.
pub fn dm_weights_from_svns(importances: &[Svn]) -> Result<DmWeights> {
    if importances.is_empty() {
        return Err(Error::MissingData("no decision makers".into()));
    }
    let mut scores = Vec::with_capacity(importances.len());
    for (k, s) in importances.iter().enumerate() {
        let denom = s.a() + s.c();
        if denom <= 0.0 {
            return Err(Error::DegenerateImportance { dm: k });
        }
        scores.push(s.a() + s.b() * (s.a() / denom));
    }
    let total: f64 = scores.iter().sum();
    if total <= 0.0 {
        return Err(Error::DegenerateImportance { dm: 0 });
    }
    Ok(DmWeights {
        sigma: scores.into_iter().map(|x| x / total).collect(),
    })
}

pub fn dm_weights_svns(importances: &[WeightTerm]) -> Result<DmWeights> {
    let svns: Vec<Svn> = importances.iter().map(|t| t.svn()).collect();
    dm_weights_from_svns(&svns)
}

/// Weighted SVN aggregation
/// `(1 - prod (1 - a)^sigma, prod b^sigma, prod c^sigma)`.
///
/// Equal inputs are pooled first, so unanimous input returns that value
/// unchanged.
pub fn svn_group_aggregate(values: &[Svn], sigma: &DmWeights) -> Result<Svn> {
    if values.len() != sigma.len() {
        return Err(Error::MissingData(format!(
            "{} of {} decision-maker ratings present",
            values.len(),
            sigma.len()
        )));
    }
    let mut pooled: Vec<(Svn, f64)> = Vec::new();
    for (v, &w) in values.iter().zip(sigma.sigma()) {
        match pooled.iter_mut().find(|(p, _)| p == v) {
            Some((_, acc)) => *acc += w,
            None => pooled.push((*v, w)),
        }
    }
    if let [(only, _)] = pooled.as_slice() {
        return Ok(*only);
    }
    let (mut not_truth, mut indet, mut fals) = (1.0, 1.0, 1.0);
    for (v, w) in &pooled {
        not_truth *= (1.0 - v.a()).powf(*w);
        indet *= v.b().powf(*w);
        fals *= v.c().powf(*w);
    }
    Svn::new(
        (1.0 - not_truth).clamp(0.0, 1.0),
        indet.clamp(0.0, 1.0),
        fals.clamp(0.0, 1.0),
    )
}

/// SVN weight of each criterion from every decision maker's importance
/// rating. `importances[j][k]` is DM `k`'s rating of criterion `j`.
pub fn criteria_weights_svns(importances: &[Vec<WeightTerm>], sigma: &DmWeights) -> Result<Vec<Svn>> {
    importances
        .iter()
        .enumerate()
        .map(|(j, row)| {
            if row.len() < sigma.len() {
                return Err(Error::MissingData(format!(
                    "criterion #{j} has no importance rating from decision maker #{}",
                    row.len()
                )));
            }
            let svns: Vec<Svn> = row.iter().map(|t| t.svn()).collect();
            svn_group_aggregate(&svns, sigma)
        })
        .collect()
}

pub fn aggregate_linguistic_svns(terms: &[PerformanceTerm], sigma: &DmWeights) -> Result<Svn> {
    let svns: Vec<Svn> = terms.iter().map(|t| t.svn()).collect();
    svn_group_aggregate(&svns, sigma)
}

/// `(1/t) * sum_k weights[k] * values[k]`, componentwise.
pub fn ivfs_group_mean(values: &[Ivfs], weights: &[Ivfs]) -> Result<Ivfs> {
    if values.is_empty() || values.len() != weights.len() {
        return Err(Error::MissingData(format!(
            "{} of {} decision-maker ratings present",
            values.len(),
            weights.len()
        )));
    }
    let mut acc = [0.0; 5];
    for (v, w) in values.iter().zip(weights) {
        let p = ivfs_combine(*w, *v, IvfsOp::Mul)?;
        for (a, x) in acc.iter_mut().zip(p.components()) {
            *a += x;
        }
    }
    let t = values.len() as f64;
    Ivfs::from_components(acc.map(|x| x / t))
}

/// IVFS weight of each criterion; `dm_ivfs[k]` is DM `k`'s own weight.
pub fn criteria_weights_ivfs(importances: &[Vec<WeightTerm>], dm_ivfs: &[Ivfs]) -> Result<Vec<Ivfs>> {
    importances
        .iter()
        .enumerate()
        .map(|(j, row)| {
            if row.len() < dm_ivfs.len() {
                return Err(Error::MissingData(format!(
                    "criterion #{j} has no importance rating from decision maker #{}",
                    row.len()
                )));
            }
            let values: Vec<Ivfs> = row.iter().map(|t| t.ivfs()).collect();
            ivfs_group_mean(&values, dm_ivfs)
        })
        .collect()
}

pub fn aggregate_linguistic_ivfs(terms: &[PerformanceTerm], dm_ivfs: &[Ivfs]) -> Result<Ivfs> {
    let values: Vec<Ivfs> = terms.iter().map(|t| t.ivfs()).collect();
    ivfs_group_mean(&values, dm_ivfs)
}

fn check_class_weights(weights: &[f64], classes: &[PerformanceTerm]) -> Result<()> {
    if weights.len() != classes.len() {
        return Err(Error::Shape { expected: classes.len(), found: weights.len() });
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > WEIGHT_SUM_TOL || weights.iter().any(|w| *w < 0.0) {
        return Err(Error::Domain(format!(
            "class weights must be nonnegative and sum to 1, got sum {total}"
        )));
    }
    Ok(())
}

/// Class-weighted mean of the SVN rows of `classes`.
pub fn integrate_numeric_svns(weights: &[f64], classes: &[PerformanceTerm]) -> Result<Svn> {
    check_class_weights(weights, classes)?;
    let mut acc = [0.0; 3];
    for (w, class) in weights.iter().zip(classes) {
        for (a, x) in acc.iter_mut().zip(class.svn().components()) {
            *a += w * x;
        }
    }
    Svn::new(acc[0].clamp(0.0, 1.0), acc[1].clamp(0.0, 1.0), acc[2].clamp(0.0, 1.0))
}

/// Class-weighted mean of the IVFS rows of `classes`.
pub fn integrate_numeric_ivfs(weights: &[f64], classes: &[PerformanceTerm]) -> Result<Ivfs> {
    check_class_weights(weights, classes)?;
    let mut acc = [0.0; 5];
    for (w, class) in weights.iter().zip(classes) {
        for (a, x) in acc.iter_mut().zip(class.ivfs().components()) {
            *a += w * x;
        }
    }
    Ivfs::from_components(acc)
}

/// Per-criterion weights in both schemes plus the scalar `alpha_j` (the SVN
/// truth degree) used for class counts and sensitivity sweeps.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionWeightSet {
    svns: Vec<Svn>,
    ivfs: Vec<Ivfs>,
    alpha: Vec<f64>,
}

impl CriterionWeightSet {
    pub fn new(svns: Vec<Svn>, ivfs: Vec<Ivfs>) -> Result<Self> {
        if svns.len() != ivfs.len() {
            return Err(Error::Shape { expected: svns.len(), found: ivfs.len() });
        }
        let alpha = svns.iter().map(Svn::a).collect();
        Ok(CriterionWeightSet { svns, ivfs, alpha })
    }

    pub fn svns(&self) -> &[Svn] {
        &self.svns
    }

    pub fn ivfs(&self) -> &[Ivfs] {
        &self.ivfs
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    pub fn len(&self) -> usize {
        self.svns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.svns.is_empty()
    }

    /// Copy with criterion `j`'s representative weight set to `alpha`.
    ///
    /// The SVN weight becomes `(alpha, 1 - alpha, 1 - alpha)`; the IVFS
    /// weight is rescaled by `alpha / alpha_j` with components capped at 1,
    /// so `alpha == alpha_j` leaves it untouched.
    pub fn with_alpha(&self, j: usize, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::Domain(format!("sweep weight {alpha} outside (0, 1)")));
        }
        let base = *self
            .alpha
            .get(j)
            .ok_or_else(|| Error::Domain(format!("criterion #{j} does not exist")))?;
        let mut next = self.clone();
        next.svns[j] = Svn::new(alpha, 1.0 - alpha, 1.0 - alpha)?;
        next.alpha[j] = alpha;
        if alpha != base {
            if base <= 0.0 {
                return Err(Error::Domain(format!("criterion #{j} has zero truth weight; cannot rescale")));
            }
            let scaled = self.ivfs[j].scale(alpha / base)?;
            next.ivfs[j] = Ivfs::from_components(scaled.components().map(|x| x.min(1.0)))?;
        }
        Ok(next)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatrixStage {
    RawAggregated,
    Weighted,
    NormalizedWeighted,
}

/// Suppliers × criteria matrix of fuzzy cells, row-major.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecisionMatrix<T> {
    rows: usize,
    cols: usize,
    stage: MatrixStage,
    cells: Vec<T>,
}

impl<T: Copy> DecisionMatrix<T> {
    pub fn new(rows: usize, cols: usize, stage: MatrixStage, cells: Vec<T>) -> Result<Self> {
        if cells.len() != rows * cols {
            return Err(Error::Shape { expected: rows * cols, found: cells.len() });
        }
        Ok(DecisionMatrix { rows, cols, stage, cells })
    }

    pub fn from_rows(rows: Vec<Vec<T>>, stage: MatrixStage) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != m) {
            return Err(Error::Shape { expected: m, found: bad.len() });
        }
        Self::new(n, m, stage, rows.into_iter().flatten().collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn stage(&self) -> MatrixStage {
        self.stage
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.cells[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.cells[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = T> + '_ {
        (0..self.rows).map(move |i| self.get(i, j))
    }

    pub fn cells(&self) -> &[T] {
        &self.cells
    }

    fn map_cells(&self, stage: MatrixStage, mut f: impl FnMut(usize, usize, T) -> Result<T>) -> Result<Self> {
        let mut cells = Vec::with_capacity(self.cells.len());
        for i in 0..self.rows {
            for j in 0..self.cols {
                cells.push(f(i, j, self.get(i, j))?);
            }
        }
        Self::new(self.rows, self.cols, stage, cells)
    }

    fn expect_stage(&self, stage: MatrixStage) -> Result<()> {
        if self.stage != stage {
            return Err(Error::Domain(format!("expected a {stage:?} matrix, got {:?}", self.stage)));
        }
        Ok(())
    }
}

/// Applies each criterion's SVN weight to its column with the SVN product.
pub fn weight_matrix_svns(d: &DecisionMatrix<Svn>, weights: &[Svn]) -> Result<DecisionMatrix<Svn>> {
    d.expect_stage(MatrixStage::RawAggregated)?;
    if weights.len() != d.cols() {
        return Err(Error::Shape { expected: d.cols(), found: weights.len() });
    }
    d.map_cells(MatrixStage::Weighted, |_, j, x| Ok(svn_product(x, weights[j])))
}

/// Linear scale normalisation of an IVFS matrix.
///
/// Benefit columns are divided by the largest outer-upper component.
/// Cost columns take `a_min / x` for every component, listed in ascending
/// order so the inner/outer ordering survives the reciprocal.
pub fn normalize_matrix_ivfs(x: &DecisionMatrix<Ivfs>, objectives: &[Objective]) -> Result<DecisionMatrix<Ivfs>> {
    x.expect_stage(MatrixStage::RawAggregated)?;
    if objectives.len() != x.cols() {
        return Err(Error::Shape { expected: x.cols(), found: objectives.len() });
    }
    let mut divisors = Vec::with_capacity(x.cols());
    for (j, obj) in objectives.iter().enumerate() {
        let d = match obj {
            Objective::Benefit => x.column(j).map(|v| v.c()).fold(f64::NEG_INFINITY, f64::max),
            Objective::Cost => x.column(j).map(|v| v.a()).fold(f64::INFINITY, f64::min),
        };
        if !(d > 0.0 && d.is_finite()) {
            let which = match obj {
                Objective::Benefit => "largest upper bound",
                Objective::Cost => "smallest lower bound",
            };
            return Err(Error::Normalization {
                criterion: format!("#{j}"),
                reason: format!("{which} is {d}"),
            });
        }
        divisors.push(d);
    }
    x.map_cells(MatrixStage::RawAggregated, |_, j, v| {
        let d = divisors[j];
        let c = v.components();
        match objectives[j] {
            Objective::Benefit => Ivfs::from_components(c.map(|t| t / d)),
            Objective::Cost => Ivfs::new(d / c[4], d / c[3], d / c[2], d / c[1], d / c[0]),
        }
    })
}

/// Normalises, then multiplies each column by its criterion's IVFS weight.
pub fn normalize_weight_matrix_ivfs(
    x: &DecisionMatrix<Ivfs>,
    weights: &[Ivfs],
    objectives: &[Objective],
) -> Result<DecisionMatrix<Ivfs>> {
    if weights.len() != x.cols() {
        return Err(Error::Shape { expected: x.cols(), found: weights.len() });
    }
    let r = normalize_matrix_ivfs(x, objectives)?;
    r.map_cells(MatrixStage::NormalizedWeighted, |_, j, v| ivfs_combine(v, weights[j], IvfsOp::Mul))
}
