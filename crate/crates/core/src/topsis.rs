//! Ideal solutions, distances, closeness coefficients and rankings for the
//! SVNS and IVFS schemes, plus the crisp entropy-weighted baseline.

use serde::Serialize;

use crate::aggregation::DecisionMatrix;
use crate::dataset::{Assessment, DecisionDataset, Objective};
use crate::error::{Error, Result};
use crate::fuzzy::{Ivfs, Svn};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Svns,
    Ivfs,
    Classical,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Svns => "svns",
            Method::Ivfs => "ivfs",
            Method::Classical => "classical",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Distances {
    Svns { s_plus: f64, s_minus: f64 },
    Ivfs { d1_plus: f64, d2_plus: f64, d1_minus: f64, d2_minus: f64, rc1: f64, rc2: f64 },
    Classical { d_plus: f64, d_minus: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SupplierScore {
    pub supplier: String,
    #[serde(flatten)]
    pub distances: Distances,
    pub cc: f64,
    /// 1 is best.
    pub rank: usize,
    /// Another supplier has exactly the same closeness coefficient.
    pub tied: bool,
}

/// Scores in dataset supplier order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankingResult {
    pub method: Method,
    pub scores: Vec<SupplierScore>,
}

impl RankingResult {
    fn build(method: Method, suppliers: &[String], rows: Vec<(Distances, f64)>) -> Result<Self> {
        if suppliers.len() != rows.len() {
            return Err(Error::Shape { expected: rows.len(), found: suppliers.len() });
        }
        let ccs: Vec<f64> = rows.iter().map(|r| r.1).collect();
        let ranks = ranks_by_descending(&ccs);
        let scores = suppliers
            .iter()
            .zip(rows)
            .enumerate()
            .map(|(i, (s, (distances, cc)))| SupplierScore {
                supplier: s.clone(),
                distances,
                cc,
                rank: ranks[i],
                tied: ccs.iter().enumerate().any(|(k, &o)| k != i && o == cc),
            })
            .collect();
        Ok(RankingResult { method, scores })
    }

    pub fn cc(&self) -> Vec<f64> {
        self.scores.iter().map(|s| s.cc).collect()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.scores.iter().map(|s| s.rank).collect()
    }

    /// Index of the rank-1 supplier.
    pub fn best(&self) -> usize {
        self.scores.iter().position(|s| s.rank == 1).expect("nonempty ranking")
    }
}

/// Rank numbers (1 = largest value); ties keep input order.
pub fn ranks_by_descending(values: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&x, &y| values[y].total_cmp(&values[x]));
    let mut ranks = vec![0; values.len()];
    for (r, &i) in order.iter().enumerate() {
        ranks[i] = r + 1;
    }
    ranks
}

/// Kendall rank correlation between two rank vectors of the same items.
pub fn kendall_tau(a: &[usize], b: &[usize]) -> f64 {
    let n = a.len().min(b.len());
    if n < 2 {
        return 1.0;
    }
    let mut score = 0i64;
    for i in 0..n {
        for j in i + 1..n {
            let x = (a[i] as i64 - a[j] as i64).signum();
            let y = (b[i] as i64 - b[j] as i64).signum();
            score += x * y;
        }
    }
    score as f64 / (n * (n - 1) / 2) as f64
}

fn closeness(minus: f64, plus: f64, supplier: &str) -> Result<f64> {
    let total = plus + minus;
    if !(total > 0.0) {
        return Err(Error::DegenerateRanking(format!(
            "supplier {supplier} is at zero distance from both ideal solutions"
        )));
    }
    Ok((minus / total).clamp(0.0, 1.0))
}

/// Positive and negative ideal SVNs per criterion.
///
/// For a benefit criterion the positive ideal takes the largest truth and
/// the smallest indeterminacy and falsity; cost criteria swap the roles.
pub fn ideal_solutions_svns(dw: &DecisionMatrix<Svn>, objectives: &[Objective]) -> Result<(Vec<Svn>, Vec<Svn>)> {
    if dw.rows() == 0 {
        return Err(Error::MissingData("empty decision matrix".into()));
    }
    if objectives.len() != dw.cols() {
        return Err(Error::Shape { expected: dw.cols(), found: objectives.len() });
    }
    let mut pis = Vec::with_capacity(dw.cols());
    let mut nis = Vec::with_capacity(dw.cols());
    for (j, obj) in objectives.iter().enumerate() {
        let (mut lo, mut hi) = ([f64::INFINITY; 3], [f64::NEG_INFINITY; 3]);
        for cell in dw.column(j) {
            for (k, x) in cell.components().into_iter().enumerate() {
                lo[k] = lo[k].min(x);
                hi[k] = hi[k].max(x);
            }
        }
        let best = Svn::new(hi[0], lo[1], lo[2])?;
        let worst = Svn::new(lo[0], hi[1], hi[2])?;
        match obj {
            Objective::Benefit => {
                pis.push(best);
                nis.push(worst);
            }
            Objective::Cost => {
                pis.push(worst);
                nis.push(best);
            }
        }
    }
    Ok((pis, nis))
}

fn svn_distance(row: &[Svn], ideal: &[Svn]) -> f64 {
    row.iter()
        .zip(ideal)
        .map(|(x, p)| {
            let d = [x.a() - p.a(), x.b() - p.b(), x.c() - p.c()];
            d.iter().map(|v| v * v).sum::<f64>()
        })
        .sum::<f64>()
        .sqrt()
}

/// Euclidean distances to the ideals and closeness `s- / (s+ + s-)`.
pub fn rank_svns(dw: &DecisionMatrix<Svn>, pis: &[Svn], nis: &[Svn], suppliers: &[String]) -> Result<RankingResult> {
    if pis.len() != dw.cols() || nis.len() != dw.cols() {
        return Err(Error::Shape { expected: dw.cols(), found: pis.len().min(nis.len()) });
    }
    let mut rows = Vec::with_capacity(dw.rows());
    for i in 0..dw.rows() {
        let s_plus = svn_distance(dw.row(i), pis);
        let s_minus = svn_distance(dw.row(i), nis);
        let name = suppliers.get(i).map_or("?", String::as_str);
        rows.push((Distances::Svns { s_plus, s_minus }, closeness(s_minus, s_plus, name)?));
    }
    RankingResult::build(Method::Svns, suppliers, rows)
}

fn ivfs_triple_distance(triple: [f64; 3], target: f64) -> f64 {
    (triple.iter().map(|x| (x - target).powi(2)).sum::<f64>() / 3.0).sqrt()
}

/// Distances of a normalised weighted IVFS matrix to the fixed ideals
/// `[(1,1);1;(1,1)]` and `[(0,0);0;(0,0)]`.
///
/// `D1` measures the triple `(a, b, c')`, `D2` the triple `(a', b, c)`;
/// the closeness is the mean of `D2-/(D2+ + D2-)` and `D1-/(D1+ + D1-)`.
pub fn rank_ivfs(rw: &DecisionMatrix<Ivfs>, suppliers: &[String]) -> Result<RankingResult> {
    if let Some(bad) = rw.cells().iter().find(|c| c.components().iter().any(|x| !(0.0..=1.0).contains(x))) {
        return Err(Error::Domain(format!("IVFS cell {bad} has components outside [0, 1]; normalize first")));
    }
    let mut rows = Vec::with_capacity(rw.rows());
    for i in 0..rw.rows() {
        let (mut d1p, mut d2p, mut d1m, mut d2m) = (0.0, 0.0, 0.0, 0.0);
        for v in rw.row(i) {
            let t1 = [v.a(), v.b(), v.c_inner()];
            let t2 = [v.a_inner(), v.b(), v.c()];
            d1p += ivfs_triple_distance(t1, 1.0);
            d2p += ivfs_triple_distance(t2, 1.0);
            d1m += ivfs_triple_distance(t1, 0.0);
            d2m += ivfs_triple_distance(t2, 0.0);
        }
        let name = suppliers.get(i).map_or("?", String::as_str);
        let rc1 = closeness(d2m, d2p, name)?;
        let rc2 = closeness(d1m, d1p, name)?;
        let distances = Distances::Ivfs { d1_plus: d1p, d2_plus: d2p, d1_minus: d1m, d2_minus: d2m, rc1, rc2 };
        rows.push((distances, 0.5 * (rc1 + rc2)));
    }
    RankingResult::build(Method::Ivfs, suppliers, rows)
}

/// Crisp matrix for the baseline: DM means of crisp values, and of terms
/// scored VB = 1 through EG = 9.
pub fn crisp_decision_matrix(ds: &DecisionDataset) -> Vec<Vec<f64>> {
    let (t, n, m) = ds.shape();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let sum: f64 = (0..t)
                        .map(|k| match ds.cell(i, j, k) {
                            Assessment::Crisp(x) => x,
                            Assessment::Term(term) => term.crisp_score(),
                        })
                        .sum();
                    sum / t as f64
                })
                .collect()
        })
        .collect()
}

/// Shannon-entropy criterion weights of a crisp matrix with nonnegative
/// entries.
pub fn entropy_weights(matrix: &[Vec<f64>]) -> Result<Vec<f64>> {
    let n = matrix.len();
    let m = matrix.first().map_or(0, Vec::len);
    if n < 2 {
        return Err(Error::DegenerateRanking("entropy weights need at least two suppliers".into()));
    }
    if let Some(x) = matrix.iter().flatten().find(|x| !(**x >= 0.0 && x.is_finite())) {
        return Err(Error::Domain(format!("entropy weighting needs nonnegative values, got {x}")));
    }
    let ln_n = (n as f64).ln();
    let divergence: Vec<f64> = (0..m)
        .map(|j| {
            let total: f64 = matrix.iter().map(|r| r[j]).sum();
            if total <= 0.0 || matrix.iter().all(|r| r[j] == matrix[0][j]) {
                return 0.0;
            }
            let entropy: f64 = matrix
                .iter()
                .map(|r| r[j] / total)
                .filter(|p| *p > 0.0)
                .map(|p| -p * p.ln())
                .sum::<f64>()
                / ln_n;
            (1.0 - entropy).max(0.0)
        })
        .collect();
    let total: f64 = divergence.iter().sum();
    if total <= 0.0 {
        return Ok(vec![1.0 / m as f64; m]);
    }
    Ok(divergence.into_iter().map(|d| d / total).collect())
}

/// Crisp TOPSIS with vector normalisation.
pub fn topsis_crisp(
    matrix: &[Vec<f64>],
    weights: &[f64],
    objectives: &[Objective],
    suppliers: &[String],
) -> Result<RankingResult> {
    let m = weights.len();
    if objectives.len() != m || matrix.iter().any(|r| r.len() != m) {
        return Err(Error::Shape { expected: m, found: objectives.len() });
    }
    let norms: Vec<f64> = (0..m).map(|j| matrix.iter().map(|r| r[j] * r[j]).sum::<f64>().sqrt()).collect();
    let v: Vec<Vec<f64>> = matrix
        .iter()
        .map(|r| {
            (0..m)
                .map(|j| if norms[j] > 0.0 { weights[j] * r[j] / norms[j] } else { 0.0 })
                .collect()
        })
        .collect();
    let (mut best, mut worst) = (Vec::with_capacity(m), Vec::with_capacity(m));
    for (j, obj) in objectives.iter().enumerate() {
        let hi = v.iter().map(|r| r[j]).fold(f64::NEG_INFINITY, f64::max);
        let lo = v.iter().map(|r| r[j]).fold(f64::INFINITY, f64::min);
        match obj {
            Objective::Benefit => {
                best.push(hi);
                worst.push(lo);
            }
            Objective::Cost => {
                best.push(lo);
                worst.push(hi);
            }
        }
    }
    let dist = |r: &[f64], ideal: &[f64]| r.iter().zip(ideal).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt();
    let mut rows = Vec::with_capacity(v.len());
    for (i, r) in v.iter().enumerate() {
        let (d_plus, d_minus) = (dist(r, &best), dist(r, &worst));
        let name = suppliers.get(i).map_or("?", String::as_str);
        rows.push((Distances::Classical { d_plus, d_minus }, closeness(d_minus, d_plus, name)?));
    }
    RankingResult::build(Method::Classical, suppliers, rows)
}

/// Entropy-weighted crisp TOPSIS over DM-averaged assessments.
pub fn rank_classical(ds: &DecisionDataset) -> Result<RankingResult> {
    let matrix = crisp_decision_matrix(ds);
    let weights = entropy_weights(&matrix)?;
    topsis_crisp(&matrix, &weights, &ds.objectives(), ds.suppliers())
}
