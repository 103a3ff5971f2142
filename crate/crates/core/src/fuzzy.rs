//! Single-valued neutrosophic numbers, triangular interval-valued fuzzy
//! numbers, and the two linguistic lexicons that map terms onto them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Truth, indeterminacy and falsity degrees, each in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Svn {
    a: f64,
    b: f64,
    c: f64,
}

impl Svn {
    pub const IDENTITY: Svn = Svn { a: 1.0, b: 0.0, c: 0.0 };
    pub const ANNIHILATOR: Svn = Svn { a: 0.0, b: 1.0, c: 1.0 };

    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        for (name, v) in [("truth", a), ("indeterminacy", b), ("falsity", c)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Domain(format!("SVN {name} degree {v} outside [0, 1]")));
            }
        }
        Ok(Svn { a, b, c })
    }

    const fn raw(a: f64, b: f64, c: f64) -> Self {
        Svn { a, b, c }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn components(&self) -> [f64; 3] {
        [self.a, self.b, self.c]
    }
}

impl fmt::Display for Svn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// Neutrosophic product: truth multiplies, indeterminacy and falsity combine
/// as probabilistic sums `t + s - ts`.
pub fn svn_product(x: Svn, y: Svn) -> Svn {
    let prob_sum = |t: f64, s: f64| {
        if t == 1.0 || s == 1.0 {
            1.0
        } else {
            (t + s - t * s).clamp(0.0, 1.0)
        }
    };
    Svn::raw(x.a * y.a, prob_sum(x.b, y.b), prob_sum(x.c, y.c))
}

impl std::ops::Mul for Svn {
    type Output = Svn;

    fn mul(self, rhs: Svn) -> Svn {
        svn_product(self, rhs)
    }
}

/// Triangular interval-valued fuzzy number `[(a, a'); b; (c', c)]`.
///
/// `a`/`c` bound the outer (upper membership) triangle and `a'`/`c'` the
/// inner (lower membership) triangle; both share the peak `b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Ivfs {
    a: f64,
    a_inner: f64,
    b: f64,
    c_inner: f64,
    c: f64,
}

impl Ivfs {
    pub const ONE: Ivfs = Ivfs::raw([1.0; 5]);
    pub const ZERO: Ivfs = Ivfs::raw([0.0; 5]);

    pub fn new(a: f64, a_inner: f64, b: f64, c_inner: f64, c: f64) -> Result<Self> {
        Self::from_components([a, a_inner, b, c_inner, c])
    }

    pub fn from_components(v: [f64; 5]) -> Result<Self> {
        if v.iter().any(|x| !x.is_finite()) {
            return Err(Error::Domain(format!("IVFS component not finite: {v:?}")));
        }
        if v.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Domain(format!(
                "IVFS components must satisfy a <= a' <= b <= c' <= c, got {v:?}"
            )));
        }
        Ok(Self::raw(v))
    }

    const fn raw(v: [f64; 5]) -> Self {
        Ivfs {
            a: v[0],
            a_inner: v[1],
            b: v[2],
            c_inner: v[3],
            c: v[4],
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn a_inner(&self) -> f64 {
        self.a_inner
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c_inner(&self) -> f64 {
        self.c_inner
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn components(&self) -> [f64; 5] {
        [self.a, self.a_inner, self.b, self.c_inner, self.c]
    }

    /// Multiplies every component by a nonnegative scalar.
    pub fn scale(&self, k: f64) -> Result<Self> {
        if !(k >= 0.0 && k.is_finite()) {
            return Err(Error::Domain(format!("IVFS scale factor {k} must be finite and >= 0")));
        }
        Ok(Self::raw(self.components().map(|x| x * k)))
    }
}

impl fmt::Display for Ivfs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[({}, {}); {}; ({}, {})]",
            self.a, self.a_inner, self.b, self.c_inner, self.c
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IvfsOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Componentwise combination: outer with outer, inner with inner, peak with
/// peak.
///
/// Subtraction and division can break the component ordering; such results
/// are rejected rather than reordered.
pub fn ivfs_combine(v: Ivfs, u: Ivfs, op: IvfsOp) -> Result<Ivfs> {
    let (vs, us) = (v.components(), u.components());
    if op == IvfsOp::Div && us.contains(&0.0) {
        return Err(Error::Arithmetic(format!("division by IVFS with a zero component: {u}")));
    }
    let mut out = [0.0; 5];
    for (o, (x, y)) in out.iter_mut().zip(vs.iter().zip(us.iter())) {
        *o = match op {
            IvfsOp::Add => x + y,
            IvfsOp::Sub => x - y,
            IvfsOp::Mul => x * y,
            IvfsOp::Div => x / y,
        };
    }
    Ivfs::from_components(out)
        .map_err(|_| Error::InvalidResult(format!("{v} {op:?} {u} yields unordered components {out:?}")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TermRole {
    Weight,
    Performance,
}

impl fmt::Display for TermRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TermRole::Weight => "weight",
            TermRole::Performance => "performance",
        })
    }
}

/// Importance vocabulary for decision makers and criteria.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum WeightTerm {
    #[serde(rename = "VUI")]
    VeryUnimportant,
    #[serde(rename = "UI")]
    Unimportant,
    #[serde(rename = "M")]
    Medium,
    #[serde(rename = "I")]
    Important,
    #[serde(rename = "VI")]
    VeryImportant,
}

impl WeightTerm {
    pub const ALL: [WeightTerm; 5] = [
        WeightTerm::VeryUnimportant,
        WeightTerm::Unimportant,
        WeightTerm::Medium,
        WeightTerm::Important,
        WeightTerm::VeryImportant,
    ];

    pub fn code(self) -> &'static str {
        match self {
            WeightTerm::VeryUnimportant => "VUI",
            WeightTerm::Unimportant => "UI",
            WeightTerm::Medium => "M",
            WeightTerm::Important => "I",
            WeightTerm::VeryImportant => "VI",
        }
    }

    pub fn svn(self) -> Svn {
        match self {
            WeightTerm::VeryImportant => Svn::raw(0.9, 0.1, 0.1),
            WeightTerm::Important => Svn::raw(0.75, 0.25, 0.2),
            WeightTerm::Medium => Svn::raw(0.5, 0.5, 0.5),
            WeightTerm::Unimportant => Svn::raw(0.35, 0.75, 0.8),
            WeightTerm::VeryUnimportant => Svn::raw(0.1, 0.9, 0.9),
        }
    }

    pub fn ivfs(self) -> Ivfs {
        match self {
            WeightTerm::VeryUnimportant => Ivfs::raw([0.0, 0.0, 0.0, 0.15, 0.15]),
            WeightTerm::Unimportant => Ivfs::raw([0.0, 0.15, 0.3, 0.45, 0.55]),
            WeightTerm::Medium => Ivfs::raw([0.25, 0.35, 0.5, 0.65, 0.75]),
            WeightTerm::Important => Ivfs::raw([0.45, 0.55, 0.7, 0.8, 0.95]),
            WeightTerm::VeryImportant => Ivfs::raw([0.55, 0.75, 0.9, 0.95, 1.0]),
        }
    }
}

impl FromStr for WeightTerm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        WeightTerm::ALL
            .into_iter()
            .find(|t| t.code() == s)
            .ok_or_else(|| Error::Lexicon {
                token: s.to_string(),
                role: TermRole::Weight,
            })
    }
}

impl fmt::Display for WeightTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// Nine-step performance ladder, worst to best.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PerformanceTerm {
    #[serde(rename = "VB")]
    VeryBad,
    #[serde(rename = "B")]
    Bad,
    #[serde(rename = "MB")]
    MediumBad,
    #[serde(rename = "M")]
    Medium,
    #[serde(rename = "MG")]
    MediumGood,
    #[serde(rename = "G")]
    Good,
    #[serde(rename = "VG")]
    VeryGood,
    #[serde(rename = "VVG")]
    VeryVeryGood,
    #[serde(rename = "EG")]
    ExtremelyGood,
}

impl PerformanceTerm {
    pub const LADDER: [PerformanceTerm; 9] = [
        PerformanceTerm::VeryBad,
        PerformanceTerm::Bad,
        PerformanceTerm::MediumBad,
        PerformanceTerm::Medium,
        PerformanceTerm::MediumGood,
        PerformanceTerm::Good,
        PerformanceTerm::VeryGood,
        PerformanceTerm::VeryVeryGood,
        PerformanceTerm::ExtremelyGood,
    ];

    pub fn code(self) -> &'static str {
        match self {
            PerformanceTerm::VeryBad => "VB",
            PerformanceTerm::Bad => "B",
            PerformanceTerm::MediumBad => "MB",
            PerformanceTerm::Medium => "M",
            PerformanceTerm::MediumGood => "MG",
            PerformanceTerm::Good => "G",
            PerformanceTerm::VeryGood => "VG",
            PerformanceTerm::VeryVeryGood => "VVG",
            PerformanceTerm::ExtremelyGood => "EG",
        }
    }

    /// Position on the ladder, 0 for VB through 8 for EG.
    pub fn ordinal(self) -> usize {
        self as usize
    }

    /// Crisp score used by the classical baseline: VB = 1 through EG = 9.
    pub fn crisp_score(self) -> f64 {
        (self.ordinal() + 1) as f64
    }

    pub fn svn(self) -> Svn {
        match self {
            PerformanceTerm::VeryBad => Svn::raw(0.2, 0.85, 0.8),
            PerformanceTerm::Bad => Svn::raw(0.3, 0.75, 0.7),
            PerformanceTerm::MediumBad => Svn::raw(0.4, 0.65, 0.6),
            PerformanceTerm::Medium => Svn::raw(0.5, 0.5, 0.5),
            PerformanceTerm::MediumGood => Svn::raw(0.6, 0.35, 0.4),
            PerformanceTerm::Good => Svn::raw(0.7, 0.25, 0.3),
            PerformanceTerm::VeryGood => Svn::raw(0.8, 0.15, 0.2),
            PerformanceTerm::VeryVeryGood => Svn::raw(0.9, 0.1, 0.1),
            PerformanceTerm::ExtremelyGood => Svn::raw(1.0, 0.0, 0.0),
        }
    }

    pub fn ivfs(self) -> Ivfs {
        match self {
            PerformanceTerm::VeryBad => Ivfs::raw([0.0, 0.0, 0.0, 1.0, 1.5]),
            PerformanceTerm::Bad => Ivfs::raw([0.0, 0.5, 1.0, 2.5, 3.5]),
            PerformanceTerm::MediumBad => Ivfs::raw([0.0, 1.5, 3.0, 4.5, 5.5]),
            PerformanceTerm::Medium => Ivfs::raw([1.0, 2.5, 4.0, 5.5, 6.5]),
            PerformanceTerm::MediumGood => Ivfs::raw([2.5, 3.5, 5.0, 6.5, 7.5]),
            PerformanceTerm::Good => Ivfs::raw([4.5, 5.5, 6.0, 7.0, 8.5]),
            PerformanceTerm::VeryGood => Ivfs::raw([5.5, 6.5, 7.0, 8.0, 9.5]),
            PerformanceTerm::VeryVeryGood => Ivfs::raw([7.5, 8.5, 9.0, 9.5, 10.0]),
            PerformanceTerm::ExtremelyGood => Ivfs::raw([8.5, 9.5, 10.0, 10.0, 10.0]),
        }
    }
}

impl FromStr for PerformanceTerm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PerformanceTerm::LADDER
            .into_iter()
            .find(|t| t.code() == s)
            .ok_or_else(|| Error::Lexicon {
                token: s.to_string(),
                role: TermRole::Performance,
            })
    }
}

impl fmt::Display for PerformanceTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// A term together with the vocabulary it belongs to. `M` exists in both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LinguisticTerm {
    Weight(WeightTerm),
    Performance(PerformanceTerm),
}

impl LinguisticTerm {
    pub fn parse(code: &str, role: TermRole) -> Result<Self> {
        match role {
            TermRole::Weight => code.parse().map(LinguisticTerm::Weight),
            TermRole::Performance => code.parse().map(LinguisticTerm::Performance),
        }
    }

    pub fn role(&self) -> TermRole {
        match self {
            LinguisticTerm::Weight(_) => TermRole::Weight,
            LinguisticTerm::Performance(_) => TermRole::Performance,
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            LinguisticTerm::Weight(t) => t.code(),
            LinguisticTerm::Performance(t) => t.code(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Svns,
    Ivfs,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FuzzyNumber {
    Svn(Svn),
    Ivfs(Ivfs),
}

pub fn lexicon_lookup(term: LinguisticTerm, scheme: Scheme) -> FuzzyNumber {
    match (term, scheme) {
        (LinguisticTerm::Weight(t), Scheme::Svns) => FuzzyNumber::Svn(t.svn()),
        (LinguisticTerm::Weight(t), Scheme::Ivfs) => FuzzyNumber::Ivfs(t.ivfs()),
        (LinguisticTerm::Performance(t), Scheme::Svns) => FuzzyNumber::Svn(t.svn()),
        (LinguisticTerm::Performance(t), Scheme::Ivfs) => FuzzyNumber::Ivfs(t.ivfs()),
    }
}

/// Parses `code` in `role` and returns its tabulated fuzzy number.
pub fn lookup_code(code: &str, role: TermRole, scheme: Scheme) -> Result<FuzzyNumber> {
    LinguisticTerm::parse(code, role).map(|t| lexicon_lookup(t, scheme))
}
