//! Decision datasets: schema, validation, JSON/CSV loading and the seeded
//! generator used for experiments.
//!
//! On disk a dataset is one JSON document:
//!
//! ```json
//! {
//!   "decision_makers": [{ "id": "DM1", "importance": "VI" }],
//!   "criteria": [{
//!     "id": "C1", "name": "Lead time", "kind": "numerical", "objective": "cost",
//!     "importance": { "DM1": "I" }
//!   }],
//!   "suppliers": ["S1", "S2"],
//!   "assessments": [
//!     { "supplier": "S1", "criterion": "C1", "dm": "DM1", "value": 12.5 },
//!     { "supplier": "S2", "criterion": "C1", "dm": "DM1", "value": 30 }
//!   ]
//! }
//! ```
//!
//! Numerical assessments carry a number, linguistic ones a performance code
//! (`VB` … `EG`).

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fs;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Stage, StageExt};
use crate::fuzzy::{PerformanceTerm, WeightTerm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    /// Larger is better.
    Benefit,
    /// Smaller is better.
    Cost,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CriterionKind {
    Numerical,
    Linguistic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionSpec {
    pub id: String,
    pub name: String,
    pub kind: CriterionKind,
    pub objective: Objective,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionMaker {
    pub id: String,
    pub importance: WeightTerm,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Assessment {
    Crisp(f64),
    Term(PerformanceTerm),
}

/// Validated suppliers × criteria × decision-makers tensor.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionDataset {
    decision_makers: Vec<DecisionMaker>,
    criteria: Vec<CriterionSpec>,
    /// `criterion_importance[j][k]`: DM `k`'s rating of criterion `j`.
    criterion_importance: Vec<Vec<WeightTerm>>,
    suppliers: Vec<String>,
    /// Indexed `[supplier][criterion][dm]`.
    cells: Vec<Assessment>,
}

impl DecisionDataset {
    /// Builds a dataset from in-memory parts, enforcing every invariant.
    /// `cells` is indexed `[supplier][criterion][dm]`, row-major.
    pub fn new(
        decision_makers: Vec<DecisionMaker>,
        criteria: Vec<CriterionSpec>,
        criterion_importance: Vec<Vec<WeightTerm>>,
        suppliers: Vec<String>,
        cells: Vec<Assessment>,
    ) -> Result<Self> {
        check_unique("decision maker", decision_makers.iter().map(|d| d.id.as_str()))?;
        check_unique("criterion", criteria.iter().map(|c| c.id.as_str()))?;
        check_unique("supplier", suppliers.iter().map(String::as_str))?;
        if decision_makers.is_empty() || criteria.is_empty() || suppliers.is_empty() {
            return Err(Error::Schema {
                location: "dataset".into(),
                message: "needs at least one decision maker, criterion and supplier".into(),
            });
        }
        if criterion_importance.len() != criteria.len() {
            return Err(Error::Shape { expected: criteria.len(), found: criterion_importance.len() });
        }
        for (c, row) in criteria.iter().zip(&criterion_importance) {
            if row.len() != decision_makers.len() {
                return Err(Error::MissingData(format!(
                    "criterion {} has {} of {} importance ratings",
                    c.id,
                    row.len(),
                    decision_makers.len()
                )));
            }
        }
        let (n, m, t) = (suppliers.len(), criteria.len(), decision_makers.len());
        if cells.len() != n * m * t {
            return Err(Error::Shape { expected: n * m * t, found: cells.len() });
        }
        let ds = DecisionDataset { decision_makers, criteria, criterion_importance, suppliers, cells };
        for i in 0..n {
            for j in 0..m {
                for k in 0..t {
                    let loc = || ds.cell_location(i, j, k);
                    match (ds.criteria[j].kind, ds.cell(i, j, k)) {
                        (CriterionKind::Numerical, Assessment::Crisp(x)) if !x.is_finite() => {
                            return Err(Error::Schema { location: loc(), message: format!("value {x} is not finite") })
                        }
                        (CriterionKind::Numerical, Assessment::Term(t)) => {
                            return Err(Error::Schema {
                                location: loc(),
                                message: format!("numerical criterion given linguistic term {t}"),
                            })
                        }
                        (CriterionKind::Linguistic, Assessment::Crisp(x)) => {
                            return Err(Error::Schema {
                                location: loc(),
                                message: format!("linguistic criterion given number {x}"),
                            })
                        }
                        _ => {}
                    }
                }
            }
        }
        Ok(ds)
    }

    fn cell_location(&self, i: usize, j: usize, k: usize) -> String {
        format!(
            "supplier {} / criterion {} / dm {}",
            self.suppliers[i], self.criteria[j].id, self.decision_makers[k].id
        )
    }

    pub fn decision_makers(&self) -> &[DecisionMaker] {
        &self.decision_makers
    }

    pub fn criteria(&self) -> &[CriterionSpec] {
        &self.criteria
    }

    pub fn criterion_importance(&self) -> &[Vec<WeightTerm>] {
        &self.criterion_importance
    }

    pub fn suppliers(&self) -> &[String] {
        &self.suppliers
    }

    /// `(decision makers, suppliers, criteria)`.
    pub fn shape(&self) -> (usize, usize, usize) {
        (self.decision_makers.len(), self.suppliers.len(), self.criteria.len())
    }

    pub fn objectives(&self) -> Vec<Objective> {
        self.criteria.iter().map(|c| c.objective).collect()
    }

    pub fn dm_importances(&self) -> Vec<WeightTerm> {
        self.decision_makers.iter().map(|d| d.importance).collect()
    }

    pub fn criterion_index(&self, id: &str) -> Option<usize> {
        self.criteria.iter().position(|c| c.id == id)
    }

    pub fn cell(&self, supplier: usize, criterion: usize, dm: usize) -> Assessment {
        let (t, m) = (self.decision_makers.len(), self.criteria.len());
        self.cells[(supplier * m + criterion) * t + dm]
    }

    /// Every decision maker's crisp value for one numerical cell.
    pub fn crisp_values(&self, supplier: usize, criterion: usize) -> Vec<f64> {
        (0..self.decision_makers.len())
            .filter_map(|k| match self.cell(supplier, criterion, k) {
                Assessment::Crisp(x) => Some(x),
                Assessment::Term(_) => None,
            })
            .collect()
    }

    /// Every decision maker's term for one linguistic cell.
    pub fn terms(&self, supplier: usize, criterion: usize) -> Vec<PerformanceTerm> {
        (0..self.decision_makers.len())
            .filter_map(|k| match self.cell(supplier, criterion, k) {
                Assessment::Term(t) => Some(t),
                Assessment::Crisp(_) => None,
            })
            .collect()
    }

    /// All crisp values of a numerical criterion across suppliers and DMs.
    pub fn criterion_values(&self, criterion: usize) -> Vec<f64> {
        (0..self.suppliers.len())
            .flat_map(|i| self.crisp_values(i, criterion))
            .collect()
    }

    /// Copy with supplier rows reordered: row `i` of the result is row
    /// `order[i]` of `self`.
    pub fn permute_suppliers(&self, order: &[usize]) -> Result<Self> {
        let n = self.suppliers.len();
        let mut seen = vec![false; n];
        if order.len() != n || order.iter().any(|&i| i >= n || std::mem::replace(&mut seen[i], true)) {
            return Err(Error::Domain("supplier order is not a permutation".into()));
        }
        let block = self.criteria.len() * self.decision_makers.len();
        let cells = order
            .iter()
            .flat_map(|&i| self.cells[i * block..(i + 1) * block].iter().copied())
            .collect();
        let suppliers = order.iter().map(|&i| self.suppliers[i].clone()).collect();
        DecisionDataset::new(
            self.decision_makers.clone(),
            self.criteria.clone(),
            self.criterion_importance.clone(),
            suppliers,
            cells,
        )
    }

    /// Copy with every crisp value of `criterion` mapped through `f`.
    pub fn map_crisp(&self, criterion: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        let mut next = self.clone();
        let (t, m) = (self.decision_makers.len(), self.criteria.len());
        for i in 0..self.suppliers.len() {
            for k in 0..t {
                let idx = (i * m + criterion) * t + k;
                if let Assessment::Crisp(x) = next.cells[idx] {
                    next.cells[idx] = Assessment::Crisp(f(x));
                }
            }
        }
        DecisionDataset::new(next.decision_makers, next.criteria, next.criterion_importance, next.suppliers, next.cells)
    }

    /// Copy with one linguistic cell replaced.
    pub fn with_term(&self, supplier: usize, criterion: usize, dm: usize, term: PerformanceTerm) -> Result<Self> {
        let mut next = self.clone();
        let (t, m) = (self.decision_makers.len(), self.criteria.len());
        next.cells[(supplier * m + criterion) * t + dm] = Assessment::Term(term);
        DecisionDataset::new(next.decision_makers, next.criteria, next.criterion_importance, next.suppliers, next.cells)
    }

    pub fn to_file(&self) -> DatasetFile {
        let criteria = self
            .criteria
            .iter()
            .zip(&self.criterion_importance)
            .map(|(c, row)| CriterionEntry {
                id: c.id.clone(),
                name: c.name.clone(),
                kind: c.kind,
                objective: c.objective,
                importance: self
                    .decision_makers
                    .iter()
                    .zip(row)
                    .map(|(d, t)| (d.id.clone(), t.code().to_string()))
                    .collect(),
            })
            .collect();
        let mut assessments = Vec::with_capacity(self.cells.len());
        for (i, s) in self.suppliers.iter().enumerate() {
            for (j, c) in self.criteria.iter().enumerate() {
                for (k, d) in self.decision_makers.iter().enumerate() {
                    let value = match self.cell(i, j, k) {
                        Assessment::Crisp(x) => RawValue::Number(x),
                        Assessment::Term(t) => RawValue::Code(t.code().to_string()),
                    };
                    assessments.push(AssessmentEntry {
                        supplier: s.clone(),
                        criterion: c.id.clone(),
                        dm: d.id.clone(),
                        value,
                    });
                }
            }
        }
        DatasetFile {
            decision_makers: self
                .decision_makers
                .iter()
                .map(|d| DmEntry { id: d.id.clone(), importance: d.importance.code().to_string() })
                .collect(),
            criteria,
            suppliers: self.suppliers.clone(),
            assessments,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_file()).expect("dataset serializes");
        s.push('\n');
        s
    }
}

fn check_unique<'a>(kind: &'static str, ids: impl Iterator<Item = &'a str>) -> Result<()> {
    let mut seen = HashSet::new();
    for id in ids {
        if !seen.insert(id) {
            return Err(Error::DuplicateId { kind, id: id.to_string() });
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DmEntry {
    pub id: String,
    pub importance: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CriterionEntry {
    pub id: String,
    #[serde(default)]
    pub name: String,
    pub kind: CriterionKind,
    pub objective: Objective,
    pub importance: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawValue {
    Number(f64),
    Code(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssessmentEntry {
    pub supplier: String,
    pub criterion: String,
    pub dm: String,
    pub value: RawValue,
}

/// On-disk layout of a dataset, before validation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetFile {
    pub decision_makers: Vec<DmEntry>,
    pub criteria: Vec<CriterionEntry>,
    pub suppliers: Vec<String>,
    #[serde(default)]
    pub assessments: Vec<AssessmentEntry>,
}

impl DatasetFile {
    pub fn validate(self) -> Result<DecisionDataset> {
        let mut dms = Vec::with_capacity(self.decision_makers.len());
        for (k, d) in self.decision_makers.iter().enumerate() {
            let importance = d.importance.parse().map_err(|e| schema(format!("decision_makers[{k}] ({})", d.id), e))?;
            dms.push(DecisionMaker { id: d.id.clone(), importance });
        }
        check_unique("decision maker", dms.iter().map(|d| d.id.as_str()))?;
        check_unique("criterion", self.criteria.iter().map(|c| c.id.as_str()))?;
        check_unique("supplier", self.suppliers.iter().map(String::as_str))?;

        let mut criteria = Vec::with_capacity(self.criteria.len());
        let mut importance = Vec::with_capacity(self.criteria.len());
        for (j, c) in self.criteria.iter().enumerate() {
            let mut row = Vec::with_capacity(dms.len());
            for d in &dms {
                let code = c.importance.get(&d.id).ok_or_else(|| {
                    Error::MissingData(format!("criteria[{j}] ({}) has no importance rating from {}", c.id, d.id))
                })?;
                row.push(code.parse().map_err(|e| schema(format!("criteria[{j}] ({}) / importance {}", c.id, d.id), e))?);
            }
            if let Some(extra) = c.importance.keys().find(|id| !dms.iter().any(|d| &d.id == *id)) {
                return Err(Error::Schema {
                    location: format!("criteria[{j}] ({})", c.id),
                    message: format!("importance rating from unknown decision maker `{extra}`"),
                });
            }
            criteria.push(CriterionSpec { id: c.id.clone(), name: c.name.clone(), kind: c.kind, objective: c.objective });
            importance.push(row);
        }

        let s_idx: HashMap<&str, usize> = self.suppliers.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let c_idx: HashMap<&str, usize> = criteria.iter().enumerate().map(|(j, c)| (c.id.as_str(), j)).collect();
        let d_idx: HashMap<&str, usize> = dms.iter().enumerate().map(|(k, d)| (d.id.as_str(), k)).collect();
        let (n, m, t) = (self.suppliers.len(), criteria.len(), dms.len());
        let mut cells: Vec<Option<Assessment>> = vec![None; n * m * t];
        for (row, a) in self.assessments.iter().enumerate() {
            let loc = || format!("assessments[{row}] (supplier {}, criterion {}, dm {})", a.supplier, a.criterion, a.dm);
            let lookup = |map: &HashMap<&str, usize>, key: &str, what: &str| {
                map.get(key).copied().ok_or_else(|| Error::Schema {
                    location: loc(),
                    message: format!("unknown {what} `{key}`"),
                })
            };
            let i = lookup(&s_idx, &a.supplier, "supplier")?;
            let j = lookup(&c_idx, &a.criterion, "criterion")?;
            let k = lookup(&d_idx, &a.dm, "decision maker")?;
            let value = match (&a.value, criteria[j].kind) {
                (RawValue::Number(x), CriterionKind::Numerical) => Assessment::Crisp(*x),
                (RawValue::Code(code), CriterionKind::Linguistic) => {
                    Assessment::Term(code.parse().map_err(|e| schema(loc(), e))?)
                }
                (RawValue::Code(code), CriterionKind::Numerical) => {
                    return Err(Error::Schema { location: loc(), message: format!("numerical criterion given `{code}`") })
                }
                (RawValue::Number(x), CriterionKind::Linguistic) => {
                    return Err(Error::Schema { location: loc(), message: format!("linguistic criterion given number {x}") })
                }
            };
            let slot = &mut cells[(i * m + j) * t + k];
            if slot.is_some() {
                return Err(Error::Schema { location: loc(), message: "duplicate assessment".into() });
            }
            *slot = Some(value);
        }
        let mut complete = Vec::with_capacity(cells.len());
        for (idx, c) in cells.into_iter().enumerate() {
            match c {
                Some(v) => complete.push(v),
                None => {
                    let (i, j, k) = (idx / (m * t), (idx / t) % m, idx % t);
                    return Err(Error::MissingData(format!(
                        "no assessment for supplier {} / criterion {} / dm {}",
                        self.suppliers[i], criteria[j].id, dms[k].id
                    )));
                }
            }
        }
        DecisionDataset::new(dms, criteria, importance, self.suppliers, complete)
    }
}

fn schema(location: String, err: Error) -> Error {
    Error::Schema { location, message: err.to_string() }
}

pub fn parse_dataset(json: &str) -> Result<DecisionDataset> {
    let file: DatasetFile = serde_json::from_str(json).map_err(|e| Error::Schema {
        location: format!("line {}, column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    file.validate()
}

pub fn load_dataset(path: impl AsRef<Path>) -> Result<DecisionDataset> {
    let path = path.as_ref();
    let entity = path.display().to_string();
    let text = fs::read_to_string(path)
        .map_err(|source| Error::Io { path: path.to_path_buf(), source })
        .at(Stage::Load, entity.as_str())?;
    parse_dataset(&text).at(Stage::Load, entity)
}

/// Replaces the assessments of `file` with rows read from CSV with header
/// `supplier,criterion,dm,value`.
pub fn import_assessments_csv(mut file: DatasetFile, csv_text: &str) -> Result<DecisionDataset> {
    let kinds: HashMap<String, CriterionKind> = file.criteria.iter().map(|c| (c.id.clone(), c.kind)).collect();
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(csv_text.as_bytes());
    let headers = reader.headers().map_err(|e| csv_error("header", e))?.clone();
    let expected = ["supplier", "criterion", "dm", "value"];
    if headers.iter().collect::<Vec<_>>() != expected {
        return Err(Error::Schema {
            location: "csv header".into(),
            message: format!("expected `{}`, got `{}`", expected.join(","), headers.iter().collect::<Vec<_>>().join(",")),
        });
    }
    file.assessments.clear();
    for (row, record) in reader.records().enumerate() {
        let line = row + 2;
        let record = record.map_err(|e| csv_error(&format!("csv line {line}"), e))?;
        let field = |c: usize| record.get(c).unwrap_or_default().to_string();
        let (supplier, criterion, dm, raw) = (field(0), field(1), field(2), field(3));
        let value = match kinds.get(&criterion) {
            Some(CriterionKind::Numerical) => RawValue::Number(raw.parse().map_err(|_| Error::Schema {
                location: format!("csv line {line}, column value"),
                message: format!("`{raw}` is not a number"),
            })?),
            _ => RawValue::Code(raw),
        };
        file.assessments.push(AssessmentEntry { supplier, criterion, dm, value });
    }
    file.validate()
}

fn csv_error(location: &str, e: csv::Error) -> Error {
    Error::Schema { location: location.to_string(), message: e.to_string() }
}

/// Criterion description for the generator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratedCriterion {
    pub id: String,
    #[serde(default)]
    pub name: String,
    pub kind: CriterionKind,
    pub objective: Objective,
    /// Crisp value range for numerical criteria.
    #[serde(default)]
    pub range: Option<(f64, f64)>,
    /// Decimal places kept for generated crisp values.
    #[serde(default = "default_decimals")]
    pub decimals: u32,
}

fn default_decimals() -> u32 {
    2
}

/// Eight resilience criteria: three numerical, five linguistic.
pub fn default_criteria() -> Vec<GeneratedCriterion> {
    let num = |id: &str, name: &str, objective, range, decimals| GeneratedCriterion {
        id: id.into(),
        name: name.into(),
        kind: CriterionKind::Numerical,
        objective,
        range: Some(range),
        decimals,
    };
    let ling = |id: &str, name: &str, objective| GeneratedCriterion {
        id: id.into(),
        name: name.into(),
        kind: CriterionKind::Linguistic,
        objective,
        range: None,
        decimals: 0,
    };
    vec![
        num("C1", "Number of critical nodes in the supply chain", Objective::Cost, (2.0, 20.0), 0),
        num("C2", "Buffer capacity (units)", Objective::Benefit, (100.0, 1000.0), 0),
        num("C3", "Lead time (days)", Objective::Cost, (5.0, 40.0), 1),
        ling("C4", "Supply chain density", Objective::Cost),
        ling("C5", "Supply chain complexity", Objective::Benefit),
        ling("C6", "Responsiveness", Objective::Benefit),
        ling("C7", "Re-engineering", Objective::Benefit),
        ling("C8", "Supplier's resource flexibility", Objective::Benefit),
    ]
}

/// Decision-maker importances the generator draws from. Panel members are
/// at least of medium standing.
const GENERATED_DM_TERMS: [WeightTerm; 3] = [WeightTerm::Medium, WeightTerm::Important, WeightTerm::VeryImportant];

/// Reproducible pseudo-random dataset.
///
/// Crisp values are uniform on each numerical criterion's range; linguistic
/// assessments and criterion importances are uniform over their
/// vocabularies.
pub fn generate_dataset(seed: u64, dms: usize, suppliers: usize, criteria: &[GeneratedCriterion]) -> Result<DecisionDataset> {
    if dms == 0 || suppliers == 0 || criteria.is_empty() {
        return Err(Error::Domain("generator shape must be positive".into()));
    }
    for c in criteria {
        if c.kind == CriterionKind::Numerical {
            match c.range {
                Some((lo, hi)) if lo < hi && lo.is_finite() && hi.is_finite() => {}
                _ => {
                    return Err(Error::Schema {
                        location: format!("criterion {}", c.id),
                        message: "numerical criterion needs a range lo < hi".into(),
                    })
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let decision_makers: Vec<DecisionMaker> = (1..=dms)
        .map(|k| DecisionMaker {
            id: format!("DM{k}"),
            importance: *GENERATED_DM_TERMS.choose(&mut rng).expect("nonempty"),
        })
        .collect();
    let importance: Vec<Vec<WeightTerm>> = criteria
        .iter()
        .map(|_| (0..dms).map(|_| *WeightTerm::ALL.choose(&mut rng).expect("nonempty")).collect())
        .collect();
    let supplier_ids: Vec<String> = (1..=suppliers).map(|i| format!("S{i}")).collect();
    let mut cells = Vec::with_capacity(suppliers * criteria.len() * dms);
    for _ in 0..suppliers {
        for c in criteria {
            for _ in 0..dms {
                cells.push(match (c.kind, c.range) {
                    (CriterionKind::Numerical, Some((lo, hi))) => {
                        let scale = 10f64.powi(c.decimals as i32);
                        let x: f64 = rng.gen_range(lo..=hi);
                        Assessment::Crisp(((x * scale).round() / scale).clamp(lo, hi))
                    }
                    _ => Assessment::Term(*PerformanceTerm::LADDER.choose(&mut rng).expect("nonempty")),
                });
            }
        }
    }
    let specs = criteria
        .iter()
        .map(|c| CriterionSpec { id: c.id.clone(), name: c.name.clone(), kind: c.kind, objective: c.objective })
        .collect();
    DecisionDataset::new(decision_makers, specs, importance, supplier_ids, cells)
}
