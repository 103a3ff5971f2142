//! Independent reference implementations used by the integration tests.
//!
//! Nothing here calls into the engine's arithmetic: lexicons are restated,
//! integrals are taken numerically and every stage is written out directly.

#![allow(dead_code)]

use mcda_core::{Assessment, CriterionKind, DecisionDataset, Objective};

pub const SVN_WEIGHT: [(&str, [f64; 3]); 5] = [
    ("VI", [0.9, 0.1, 0.1]),
    ("I", [0.75, 0.25, 0.2]),
    ("M", [0.5, 0.5, 0.5]),
    ("UI", [0.35, 0.75, 0.8]),
    ("VUI", [0.1, 0.9, 0.9]),
];

pub const SVN_PERFORMANCE: [(&str, [f64; 3]); 9] = [
    ("EG", [1.0, 0.0, 0.0]),
    ("VVG", [0.9, 0.1, 0.1]),
    ("VG", [0.8, 0.15, 0.2]),
    ("G", [0.7, 0.25, 0.3]),
    ("MG", [0.6, 0.35, 0.4]),
    ("M", [0.5, 0.5, 0.5]),
    ("MB", [0.4, 0.65, 0.6]),
    ("B", [0.3, 0.75, 0.7]),
    ("VB", [0.2, 0.85, 0.8]),
];

pub const IVFS_WEIGHT: [(&str, [f64; 5]); 5] = [
    ("VUI", [0.0, 0.0, 0.0, 0.15, 0.15]),
    ("UI", [0.0, 0.15, 0.3, 0.45, 0.55]),
    ("M", [0.25, 0.35, 0.5, 0.65, 0.75]),
    ("I", [0.45, 0.55, 0.7, 0.8, 0.95]),
    ("VI", [0.55, 0.75, 0.9, 0.95, 1.0]),
];

pub const IVFS_PERFORMANCE: [(&str, [f64; 5]); 9] = [
    ("VB", [0.0, 0.0, 0.0, 1.0, 1.5]),
    ("B", [0.0, 0.5, 1.0, 2.5, 3.5]),
    ("MB", [0.0, 1.5, 3.0, 4.5, 5.5]),
    ("M", [1.0, 2.5, 4.0, 5.5, 6.5]),
    ("MG", [2.5, 3.5, 5.0, 6.5, 7.5]),
    ("G", [4.5, 5.5, 6.0, 7.0, 8.5]),
    ("VG", [5.5, 6.5, 7.0, 8.0, 9.5]),
    ("VVG", [7.5, 8.5, 9.0, 9.5, 10.0]),
    ("EG", [8.5, 9.5, 10.0, 10.0, 10.0]),
];

pub const LADDER: [&str; 9] = ["VB", "B", "MB", "M", "MG", "G", "VG", "VVG", "EG"];

pub fn lookup<const N: usize>(table: &[(&str, [f64; N])], code: &str) -> [f64; N] {
    table.iter().find(|(c, _)| *c == code).unwrap_or_else(|| panic!("no row {code}")).1
}

pub fn trapezoid(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    if b <= a {
        return 0.0;
    }
    let h = (b - a) / n as f64;
    let mut s = 0.5 * (f(a) + f(b));
    for k in 1..n {
        s += f(a + k as f64 * h);
    }
    s * h
}

/// Triangle or shoulder membership, written as min/max of two ramps.
#[derive(Debug, Clone, Copy)]
pub struct Tri {
    pub l: f64,
    pub p: f64,
    pub r: f64,
}

impl Tri {
    pub fn eval(&self, x: f64) -> f64 {
        let up = if self.p > self.l { (x - self.l) / (self.p - self.l) } else if x >= self.p { 1.0 } else { 0.0 };
        let down = if self.r > self.p { (self.r - x) / (self.r - self.p) } else if x <= self.p { 1.0 } else { 0.0 };
        up.min(down).clamp(0.0, 1.0)
    }
}

/// Regular partition of `[lo, hi]` into `n` classes (grid step span/2n).
pub fn regular_classes(lo: f64, hi: f64, n: usize) -> Vec<Tri> {
    let a = |i: usize| lo + (hi - lo) * i as f64 / (2 * n) as f64;
    (0..n)
        .map(|k| {
            if k == 0 {
                Tri { l: lo, p: lo, r: a(3) }
            } else if k == n - 1 {
                Tri { l: a(2 * n - 3), p: hi, r: hi }
            } else {
                Tri { l: a(2 * k - 1), p: a(2 * k + 1), r: a(2 * k + 3) }
            }
        })
        .collect()
}

pub fn oracle_range_membership(t: &Tri, lo: f64, hi: f64, n: usize) -> f64 {
    if lo == hi {
        return t.eval(lo);
    }
    let u = lo.max(t.l);
    let v = hi.min(t.r);
    if v <= u {
        return 0.0;
    }
    trapezoid(|x| t.eval(x), u, v, n) / (v - u)
}

pub fn oracle_similarity(x: &Tri, y: &Tri, lo: f64, hi: f64, n: usize) -> f64 {
    let overlap = trapezoid(|s| x.eval(s).min(y.eval(s)), lo, hi, n);
    let union = trapezoid(|s| x.eval(s) + y.eval(s), lo, hi, n) - overlap;
    overlap / union
}

pub fn class_count(alpha: f64, t: [f64; 3]) -> usize {
    if alpha < t[0] {
        3
    } else if alpha < t[1] {
        5
    } else if alpha < t[2] {
        7
    } else {
        9
    }
}

/// Closeness coefficients of the reference pipeline.
#[derive(Debug, Clone)]
pub struct OracleRun {
    pub sigma: Vec<f64>,
    pub w: Vec<[f64; 3]>,
    pub i_w: Vec<[f64; 5]>,
    pub svn_raw: Vec<Vec<[f64; 3]>>,
    pub ivfs_raw: Vec<Vec<[f64; 5]>>,
    pub svns_cc: Vec<f64>,
    pub ivfs_cc: Vec<f64>,
    pub classical_cc: Vec<f64>,
}

fn code_of(a: Assessment) -> &'static str {
    match a {
        Assessment::Term(t) => t.code(),
        Assessment::Crisp(_) => panic!("crisp value on a linguistic criterion"),
    }
}

/// Reference pipeline with the default class thresholds and reliability
/// applied (which cancels in the per-supplier normalisation).
pub fn oracle_pipeline(ds: &DecisionDataset) -> OracleRun {
    let (t, n, m) = ds.shape();
    let quad = 20_000;

    let dm_svn: Vec<[f64; 3]> = ds.decision_makers().iter().map(|d| lookup(&SVN_WEIGHT, d.importance.code())).collect();
    let dm_ivfs: Vec<[f64; 5]> =
        ds.decision_makers().iter().map(|d| lookup(&IVFS_WEIGHT, d.importance.code())).collect();
    let raw: Vec<f64> = dm_svn.iter().map(|[a, b, c]| a + b * (a / (a + c))).collect();
    let total: f64 = raw.iter().sum();
    let sigma: Vec<f64> = raw.iter().map(|x| x / total).collect();

    let svn_agg = |vals: &[[f64; 3]]| -> [f64; 3] {
        let mut p0 = 1.0;
        let mut p1 = 1.0;
        let mut p2 = 1.0;
        for (v, s) in vals.iter().zip(&sigma) {
            p0 *= (1.0 - v[0]).powf(*s);
            p1 *= v[1].powf(*s);
            p2 *= v[2].powf(*s);
        }
        [1.0 - p0, p1, p2]
    };
    let ivfs_agg = |vals: &[[f64; 5]]| -> [f64; 5] {
        let mut acc = [0.0; 5];
        for (v, d) in vals.iter().zip(&dm_ivfs) {
            for q in 0..5 {
                acc[q] += d[q] * v[q];
            }
        }
        acc.map(|x| x / t as f64)
    };

    let w: Vec<[f64; 3]> = ds
        .criterion_importance()
        .iter()
        .map(|row| svn_agg(&row.iter().map(|x| lookup(&SVN_WEIGHT, x.code())).collect::<Vec<_>>()))
        .collect();
    let i_w: Vec<[f64; 5]> = ds
        .criterion_importance()
        .iter()
        .map(|row| ivfs_agg(&row.iter().map(|x| lookup(&IVFS_WEIGHT, x.code())).collect::<Vec<_>>()))
        .collect();

    let mut svn_raw = vec![vec![[0.0; 3]; m]; n];
    let mut ivfs_raw = vec![vec![[0.0; 5]; m]; n];
    for j in 0..m {
        match ds.criteria()[j].kind {
            CriterionKind::Numerical => {
                let all = ds.criterion_values(j);
                let lo = all.iter().copied().fold(f64::INFINITY, f64::min);
                let hi = all.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                let count = class_count(w[j][0], [0.3, 0.5, 0.75]);
                let tris = regular_classes(lo, hi, count);
                let start = (9 - count) / 2;
                let labels = &LADDER[start..start + count];
                for i in 0..n {
                    let v = ds.crisp_values(i, j);
                    let rlo = v.iter().copied().fold(f64::INFINITY, f64::min);
                    let rhi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                    let mem: Vec<f64> = tris.iter().map(|tr| oracle_range_membership(tr, rlo, rhi, quad)).collect();
                    let s: f64 = mem.iter().sum();
                    let a: Vec<f64> = mem.iter().map(|x| x / s).collect();
                    let mut sv = [0.0; 3];
                    let mut iv = [0.0; 5];
                    for (weight, code) in a.iter().zip(labels) {
                        let row = lookup(&SVN_PERFORMANCE, code);
                        let irow = lookup(&IVFS_PERFORMANCE, code);
                        for q in 0..3 {
                            sv[q] += weight * row[q];
                        }
                        for q in 0..5 {
                            iv[q] += weight * irow[q];
                        }
                    }
                    svn_raw[i][j] = sv;
                    ivfs_raw[i][j] = iv;
                }
            }
            CriterionKind::Linguistic => {
                for i in 0..n {
                    let codes: Vec<&str> = (0..t).map(|k| code_of(ds.cell(i, j, k))).collect();
                    svn_raw[i][j] = svn_agg(&codes.iter().map(|c| lookup(&SVN_PERFORMANCE, c)).collect::<Vec<_>>());
                    ivfs_raw[i][j] = ivfs_agg(&codes.iter().map(|c| lookup(&IVFS_PERFORMANCE, c)).collect::<Vec<_>>());
                }
            }
        }
    }

    let objectives = ds.objectives();
    let svns_cc = svns_closeness(&svn_raw, &w, &objectives);
    let ivfs_cc = ivfs_closeness(&ivfs_raw, &i_w, &objectives);
    let classical_cc = classical_closeness(ds);
    OracleRun { sigma, w, i_w, svn_raw, ivfs_raw, svns_cc, ivfs_cc, classical_cc }
}

/// Weighting, ideals and closeness for SVN matrices.
pub fn svns_closeness(raw: &[Vec<[f64; 3]>], w: &[[f64; 3]], objectives: &[Objective]) -> Vec<f64> {
    let weighted: Vec<Vec<[f64; 3]>> = raw
        .iter()
        .map(|row| {
            row.iter()
                .zip(w)
                .map(|(x, y)| [x[0] * y[0], x[1] + y[1] - x[1] * y[1], x[2] + y[2] - x[2] * y[2]])
                .collect()
        })
        .collect();
    svns_closeness_weighted(&weighted, objectives)
}

pub fn svns_closeness_weighted(v: &[Vec<[f64; 3]>], objectives: &[Objective]) -> Vec<f64> {
    let m = objectives.len();
    let mut pis = vec![[0.0; 3]; m];
    let mut nis = vec![[0.0; 3]; m];
    for j in 0..m {
        let col: Vec<[f64; 3]> = v.iter().map(|r| r[j]).collect();
        let max = |q: usize| col.iter().map(|c| c[q]).fold(f64::NEG_INFINITY, f64::max);
        let min = |q: usize| col.iter().map(|c| c[q]).fold(f64::INFINITY, f64::min);
        let good = [max(0), min(1), min(2)];
        let bad = [min(0), max(1), max(2)];
        match objectives[j] {
            Objective::Benefit => {
                pis[j] = good;
                nis[j] = bad;
            }
            Objective::Cost => {
                pis[j] = bad;
                nis[j] = good;
            }
        }
    }
    v.iter()
        .map(|row| {
            let mut sp = 0.0;
            let mut sm = 0.0;
            for j in 0..m {
                for q in 0..3 {
                    sp += (row[j][q] - pis[j][q]).powi(2);
                    sm += (row[j][q] - nis[j][q]).powi(2);
                }
            }
            let (sp, sm) = (sp.sqrt(), sm.sqrt());
            sm / (sp + sm)
        })
        .collect()
}

/// Normalisation, weighting and fixed-ideal closeness for IVFS matrices.
pub fn ivfs_closeness(raw: &[Vec<[f64; 5]>], w: &[[f64; 5]], objectives: &[Objective]) -> Vec<f64> {
    let m = objectives.len();
    let mut weighted = raw.to_vec();
    for j in 0..m {
        match objectives[j] {
            Objective::Benefit => {
                let c_plus = raw.iter().map(|r| r[j][4]).fold(f64::NEG_INFINITY, f64::max);
                for (i, row) in raw.iter().enumerate() {
                    weighted[i][j] = row[j].map(|x| x / c_plus);
                }
            }
            Objective::Cost => {
                let a_minus = raw.iter().map(|r| r[j][0]).fold(f64::INFINITY, f64::min);
                for (i, row) in raw.iter().enumerate() {
                    let x = row[j];
                    weighted[i][j] = [a_minus / x[4], a_minus / x[3], a_minus / x[2], a_minus / x[1], a_minus / x[0]];
                }
            }
        }
        for row in weighted.iter_mut() {
            for q in 0..5 {
                row[j][q] *= w[j][q];
            }
        }
    }
    ivfs_closeness_normalized(&weighted)
}

pub fn ivfs_closeness_normalized(v: &[Vec<[f64; 5]>]) -> Vec<f64> {
    v.iter()
        .map(|row| {
            let d = |trip: [f64; 3], target: f64| (trip.iter().map(|x| (x - target).powi(2)).sum::<f64>() / 3.0).sqrt();
            let (mut d1p, mut d2p, mut d1m, mut d2m) = (0.0, 0.0, 0.0, 0.0);
            for x in row {
                let t1 = [x[0], x[2], x[3]];
                let t2 = [x[1], x[2], x[4]];
                d1p += d(t1, 1.0);
                d2p += d(t2, 1.0);
                d1m += d(t1, 0.0);
                d2m += d(t2, 0.0);
            }
            let rc1 = d2m / (d2p + d2m);
            let rc2 = d1m / (d1p + d1m);
            (rc1 + rc2) / 2.0
        })
        .collect()
}

/// Crisp entropy-weighted TOPSIS on DM means (terms scored 1..9).
pub fn classical_closeness(ds: &DecisionDataset) -> Vec<f64> {
    let (t, n, m) = ds.shape();
    let x: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    (0..t)
                        .map(|k| match ds.cell(i, j, k) {
                            Assessment::Crisp(v) => v,
                            Assessment::Term(term) => (LADDER.iter().position(|c| *c == term.code()).unwrap() + 1) as f64,
                        })
                        .sum::<f64>()
                        / t as f64
                })
                .collect()
        })
        .collect();
    crisp_topsis(&x, &entropy(&x), &ds.objectives())
}

pub fn entropy(x: &[Vec<f64>]) -> Vec<f64> {
    let n = x.len();
    let m = x[0].len();
    let mut d = vec![0.0; m];
    for j in 0..m {
        let col: Vec<f64> = x.iter().map(|r| r[j]).collect();
        if col.iter().all(|v| *v == col[0]) {
            continue;
        }
        let s: f64 = col.iter().sum();
        let e: f64 = -col.iter().map(|v| v / s).filter(|p| *p > 0.0).map(|p| p * p.ln()).sum::<f64>() / (n as f64).ln();
        d[j] = 1.0 - e;
    }
    let total: f64 = d.iter().sum();
    if total == 0.0 {
        return vec![1.0 / m as f64; m];
    }
    d.iter().map(|v| v / total).collect()
}

pub fn crisp_topsis(x: &[Vec<f64>], w: &[f64], objectives: &[Objective]) -> Vec<f64> {
    let m = w.len();
    let norm: Vec<f64> = (0..m).map(|j| x.iter().map(|r| r[j] * r[j]).sum::<f64>().sqrt()).collect();
    let v: Vec<Vec<f64>> =
        x.iter().map(|r| (0..m).map(|j| if norm[j] > 0.0 { w[j] * r[j] / norm[j] } else { 0.0 }).collect()).collect();
    let mut best = vec![0.0; m];
    let mut worst = vec![0.0; m];
    for j in 0..m {
        let hi = v.iter().map(|r| r[j]).fold(f64::NEG_INFINITY, f64::max);
        let lo = v.iter().map(|r| r[j]).fold(f64::INFINITY, f64::min);
        (best[j], worst[j]) = match objectives[j] {
            Objective::Benefit => (hi, lo),
            Objective::Cost => (lo, hi),
        };
    }
    v.iter()
        .map(|r| {
            let dp: f64 = (0..m).map(|j| (r[j] - best[j]).powi(2)).sum::<f64>().sqrt();
            let dm: f64 = (0..m).map(|j| (r[j] - worst[j]).powi(2)).sum::<f64>().sqrt();
            dm / (dp + dm)
        })
        .collect()
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
