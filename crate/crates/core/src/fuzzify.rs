//! Fuzzified universes of discourse for numerical criteria.
//!
//! A [`Frame`] splits `[lo, hi]` into `2n` equal steps and places `n`
//! triangular classes on the grid: a left shoulder peaking at `lo`, `n - 2`
//! symmetric interior triangles, and a right shoulder peaking at `hi`.
//! All integrals over class functions are evaluated in closed form.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fuzzy::PerformanceTerm;

/// Triangular membership function `left <= peak <= right`.
///
/// `left == peak` gives a left shoulder whose value at `left` is 1;
/// `peak == right` gives a right shoulder.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassShape {
    pub left: f64,
    pub peak: f64,
    pub right: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Segment {
    Zero,
    Rising,
    Falling,
}

impl ClassShape {
    pub fn new(left: f64, peak: f64, right: f64) -> Result<Self> {
        if !(left <= peak && peak <= right && left < right) || !(left.is_finite() && right.is_finite()) {
            return Err(Error::Domain(format!(
                "class shape requires left <= peak <= right with left < right, got ({left}, {peak}, {right})"
            )));
        }
        Ok(ClassShape { left, peak, right })
    }

    pub fn eval(&self, x: f64) -> f64 {
        if x < self.left || x > self.right {
            0.0
        } else if x <= self.peak {
            if self.peak == self.left {
                1.0
            } else {
                (x - self.left) / (self.peak - self.left)
            }
        } else {
            (self.right - x) / (self.right - self.peak)
        }
    }

    pub fn support(&self) -> (f64, f64) {
        (self.left, self.right)
    }

    pub fn area(&self) -> f64 {
        0.5 * (self.right - self.left)
    }

    fn breakpoints(&self) -> [f64; 3] {
        [self.left, self.peak, self.right]
    }

    fn segment(&self, mid: f64) -> Segment {
        if mid < self.left || mid > self.right {
            Segment::Zero
        } else if mid < self.peak {
            Segment::Rising
        } else {
            Segment::Falling
        }
    }

    /// Value of the linear piece `seg` extended to `x`.
    fn on_segment(&self, seg: Segment, x: f64) -> f64 {
        match seg {
            Segment::Zero => 0.0,
            Segment::Rising => (x - self.left) / (self.peak - self.left),
            Segment::Falling => (self.right - x) / (self.right - self.peak),
        }
    }

    /// One-sided endpoint values of the linear piece covering `(p, q)`.
    fn piece(&self, p: f64, q: f64) -> (f64, f64) {
        let seg = self.segment(0.5 * (p + q));
        (self.on_segment(seg, p), self.on_segment(seg, q))
    }

    /// Exact integral over `[u, v]`.
    pub fn integral(&self, u: f64, v: f64) -> f64 {
        if v <= u {
            return 0.0;
        }
        knots(u, v, &self.breakpoints())
            .windows(2)
            .map(|w| {
                let (fp, fq) = self.piece(w[0], w[1]);
                0.5 * (fp + fq) * (w[1] - w[0])
            })
            .sum()
    }

    /// Exact integral of `min(self, other)` over the real line.
    pub fn min_integral(&self, other: &ClassShape) -> f64 {
        let u = self.left.max(other.left);
        let v = self.right.min(other.right);
        if v <= u {
            return 0.0;
        }
        let mut cuts: Vec<f64> = self.breakpoints().to_vec();
        cuts.extend_from_slice(&other.breakpoints());
        let xs = knots(u, v, &cuts);
        let mut total = 0.0;
        for w in xs.windows(2) {
            let (p, q) = (w[0], w[1]);
            let (f0, f1) = self.piece(p, q);
            let (g0, g1) = other.piece(p, q);
            let (d0, d1) = (f0 - g0, f1 - g1);
            if d0 * d1 < 0.0 {
                // both pieces linear, so they cross exactly once
                let t = d0 / (d0 - d1);
                let x = p + t * (q - p);
                let y = f0 + t * (f1 - f0);
                total += 0.5 * (f0.min(g0) + y) * (x - p) + 0.5 * (y + f1.min(g1)) * (q - x);
            } else {
                total += 0.5 * (f0.min(g0) + f1.min(g1)) * (q - p);
            }
        }
        total
    }
}

/// `u`, `v`, and every cut strictly between them, sorted and deduplicated.
fn knots(u: f64, v: f64, cuts: &[f64]) -> Vec<f64> {
    let mut xs = Vec::with_capacity(cuts.len() + 2);
    xs.push(u);
    xs.extend(cuts.iter().copied().filter(|&x| x > u && x < v));
    xs.push(v);
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    xs
}

/// Weight thresholds mapping a criterion weight to a class count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, serde::Deserialize)]
pub struct ClassThresholds(pub [f64; 3]);

impl Default for ClassThresholds {
    fn default() -> Self {
        ClassThresholds([0.3, 0.5, 0.75])
    }
}

impl ClassThresholds {
    pub fn new(bands: [f64; 3]) -> Result<Self> {
        let ok = bands.iter().all(|t| *t > 0.0 && *t < 1.0) && bands.windows(2).all(|w| w[0] < w[1]);
        if !ok {
            return Err(Error::Domain(format!(
                "class-count thresholds must be strictly increasing in (0, 1), got {bands:?}"
            )));
        }
        Ok(ClassThresholds(bands))
    }
}

/// Number of classes for a criterion with representative weight `alpha`.
/// Heavier criteria get finer frames.
pub fn class_count_for_weight(alpha: f64, thresholds: &ClassThresholds) -> Result<usize> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::Domain(format!("criterion weight {alpha} outside [0, 1]")));
    }
    let [t3, t5, t7] = thresholds.0;
    Ok(if alpha < t3 {
        3
    } else if alpha < t5 {
        5
    } else if alpha < t7 {
        7
    } else {
        9
    })
}

/// Closed interval of crisp assessments.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RangeValue {
    pub lo: f64,
    pub hi: f64,
}

impl RangeValue {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo <= hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::Domain(format!("invalid range ({lo}, {hi})")));
        }
        Ok(RangeValue { lo, hi })
    }

    pub fn point(x: f64) -> Result<Self> {
        Self::new(x, x)
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Range spanned by the decision makers' crisp assessments of one cell.
/// Decision-maker weights do not enter.
pub fn crisp_to_range(values: &[f64]) -> Result<RangeValue> {
    let first = *values
        .first()
        .ok_or_else(|| Error::MissingData("no crisp assessments to form a range".into()))?;
    let (lo, hi) = values
        .iter()
        .fold((first, first), |(lo, hi), &x| (lo.min(x), hi.max(x)));
    RangeValue::new(lo, hi)
}

/// Fuzzified universe of discourse of one numerical criterion.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Frame {
    lo: f64,
    hi: f64,
    class_count: usize,
    grid: Vec<f64>,
    classes: Vec<PerformanceTerm>,
    shapes: Vec<ClassShape>,
}

/// Centered run of `n` labels from the nine-term ladder.
pub fn class_labels(n: usize) -> Result<Vec<PerformanceTerm>> {
    if !matches!(n, 3 | 5 | 7 | 9) {
        return Err(Error::Domain(format!("class count must be 3, 5, 7 or 9, got {n}")));
    }
    let start = (9 - n) / 2;
    Ok(PerformanceTerm::LADDER[start..start + n].to_vec())
}

/// Regular frame over `[min, max]` of `values` with `class_count` classes.
pub fn build_frame(values: &[f64], class_count: usize) -> Result<Frame> {
    let classes = class_labels(class_count)?;
    if values.is_empty() {
        return Err(Error::MissingData("no crisp values to span a frame".into()));
    }
    if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
        return Err(Error::Domain(format!("crisp value {bad} is not finite")));
    }
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if lo == hi {
        return Err(Error::DegenerateFrame {
            value: lo,
            count: values.len(),
        });
    }
    Ok(Frame::regular(lo, hi, classes))
}

impl Frame {
    fn regular(lo: f64, hi: f64, classes: Vec<PerformanceTerm>) -> Self {
        let n = classes.len();
        let steps = 2 * n;
        let step = (hi - lo) / steps as f64;
        let point = |i: usize| match i {
            0 => lo,
            i if i == steps => hi,
            i => lo + i as f64 * step,
        };
        let grid = (1..steps).map(point).collect();
        let shapes = (0..n)
            .map(|k| {
                if k == 0 {
                    ClassShape { left: lo, peak: lo, right: point(3) }
                } else if k == n - 1 {
                    ClassShape { left: point(2 * n - 3), peak: hi, right: hi }
                } else {
                    // class k (0-based) peaks at grid index 2k+1
                    ClassShape {
                        left: point(2 * k - 1),
                        peak: point(2 * k + 1),
                        right: point(2 * k + 3),
                    }
                }
            })
            .collect();
        Frame { lo, hi, class_count: n, grid, classes, shapes }
    }

    /// Frame with caller-supplied class shapes, for experimenting with
    /// non-regular partitions. The grid is left empty.
    pub fn custom(lo: f64, hi: f64, classes: Vec<PerformanceTerm>, shapes: Vec<ClassShape>) -> Result<Self> {
        if !(lo < hi) {
            return Err(Error::Domain(format!("frame requires lo < hi, got ({lo}, {hi})")));
        }
        if classes.len() != shapes.len() {
            return Err(Error::Shape { expected: classes.len(), found: shapes.len() });
        }
        if shapes.len() < 2 {
            return Err(Error::Domain("frame needs at least two classes".into()));
        }
        for s in &shapes {
            ClassShape::new(s.left, s.peak, s.right)?;
            if s.left < lo || s.right > hi {
                return Err(Error::Domain(format!("class shape {s:?} leaves the frame [{lo}, {hi}]")));
            }
        }
        Ok(Frame { lo, hi, class_count: shapes.len(), grid: Vec::new(), classes, shapes })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn span(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn class_count(&self) -> usize {
        self.class_count
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn classes(&self) -> &[PerformanceTerm] {
        &self.classes
    }

    pub fn shapes(&self) -> &[ClassShape] {
        &self.shapes
    }

    pub fn shape(&self, class_index: usize) -> Result<&ClassShape> {
        self.shapes.get(class_index).ok_or_else(|| {
            Error::Domain(format!(
                "class index {class_index} out of range for a {}-class frame",
                self.class_count
            ))
        })
    }

    pub fn contains(&self, x: f64) -> bool {
        (self.lo..=self.hi).contains(&x)
    }

    /// Clamps `x` into the frame, logging when it had to move.
    pub fn clamp(&self, x: f64) -> f64 {
        let y = x.clamp(self.lo, self.hi);
        if y != x {
            log::warn!("value {x} outside frame [{}, {}], clamped to {y}", self.lo, self.hi);
        }
        y
    }

    fn check_point(&self, x: f64) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::Domain(format!("{x} outside frame [{}, {}]", self.lo, self.hi)))
        }
    }
}

pub fn membership_at(frame: &Frame, class_index: usize, x: f64) -> Result<f64> {
    let shape = frame.shape(class_index)?;
    frame.check_point(x)?;
    Ok(shape.eval(x))
}

/// Mean membership of a range over the part of it covered by the class
/// support. A point range reduces to [`membership_at`].
pub fn range_membership(frame: &Frame, class_index: usize, r: RangeValue) -> Result<f64> {
    let shape = frame.shape(class_index)?;
    frame.check_point(r.lo)?;
    frame.check_point(r.hi)?;
    if r.lo == r.hi {
        return Ok(shape.eval(r.lo));
    }
    let u = r.lo.max(shape.left);
    let v = r.hi.min(shape.right);
    if v <= u {
        return Ok(0.0);
    }
    Ok(shape.integral(u, v) / (v - u))
}

/// Membership of `r` in every class of the frame, in class order.
pub fn range_memberships(frame: &Frame, r: RangeValue) -> Result<Vec<f64>> {
    (0..frame.class_count()).map(|k| range_membership(frame, k, r)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-9
    }

    fn trapezoid(f: impl Fn(f64) -> f64, u: f64, v: f64, n: usize) -> f64 {
        let h = (v - u) / n as f64;
        let inner: f64 = (1..n).map(|i| f(u + i as f64 * h)).sum();
        h * (0.5 * (f(u) + f(v)) + inner)
    }

    #[test]
    fn class_count_rule() {
        let t = ClassThresholds::default();
        assert_eq!(class_count_for_weight(0.9, &t).unwrap(), 9);
        assert_eq!(class_count_for_weight(0.34, &t).unwrap(), 5);
        assert_eq!(class_count_for_weight(0.5, &t).unwrap(), 7);
        assert_eq!(class_count_for_weight(0.0, &t).unwrap(), 3);
        assert_eq!(class_count_for_weight(0.75, &t).unwrap(), 9);
        assert!(class_count_for_weight(1.01, &t).is_err());
        assert!(class_count_for_weight(-0.1, &t).is_err());
    }

    #[test]
    fn thresholds_validated() {
        assert!(ClassThresholds::new([0.2, 0.4, 0.6]).is_ok());
        assert!(ClassThresholds::new([0.4, 0.4, 0.6]).is_err());
        assert!(ClassThresholds::new([0.0, 0.4, 0.6]).is_err());
        assert!(ClassThresholds::new([0.2, 0.4, 1.0]).is_err());
    }

    #[test]
    fn unit_grid_on_zero_to_eighteen() {
        let f = build_frame(&[0.0, 7.0, 18.0], 9).unwrap();
        let expected: Vec<f64> = (1..=17).map(f64::from).collect();
        assert_eq!(f.grid(), expected.as_slice());
        assert_eq!(f.classes(), &PerformanceTerm::LADDER);
    }

    #[test]
    fn seven_class_step() {
        let f = build_frame(&[24.0, 10.0, 13.5], 7).unwrap();
        assert_eq!(f.grid().len(), 13);
        for w in f.grid().windows(2) {
            assert!(close(w[1] - w[0], 1.0));
        }
        assert_eq!(f.classes().first(), Some(&PerformanceTerm::Bad));
        assert_eq!(f.classes().last(), Some(&PerformanceTerm::VeryVeryGood));
    }

    #[test]
    fn centered_labels() {
        use PerformanceTerm::*;
        assert_eq!(class_labels(5).unwrap(), vec![MediumBad, Medium, MediumGood, Good, VeryGood]);
        assert_eq!(class_labels(3).unwrap(), vec![Medium, MediumGood, Good]);
        assert!(class_labels(4).is_err());
        assert!(build_frame(&[0.0, 1.0], 11).is_err());
    }

    #[test]
    fn degenerate_frame() {
        let err = build_frame(&[5.0, 5.0, 5.0], 9).unwrap_err();
        assert!(matches!(err, Error::DegenerateFrame { count: 3, .. }));
        assert!(build_frame(&[], 9).is_err());
        assert!(build_frame(&[1.0, f64::NAN], 9).is_err());
    }

    #[test]
    fn shoulder_and_interior_shapes_follow_grid() {
        let f = build_frame(&[0.0, 18.0], 9).unwrap();
        let s = f.shapes();
        assert_eq!(s[0], ClassShape { left: 0.0, peak: 0.0, right: 3.0 });
        assert_eq!(s[1], ClassShape { left: 1.0, peak: 3.0, right: 5.0 });
        assert_eq!(s[7], ClassShape { left: 13.0, peak: 15.0, right: 17.0 });
        assert_eq!(s[8], ClassShape { left: 15.0, peak: 18.0, right: 18.0 });
    }

    #[test]
    fn membership_examples() {
        let f = build_frame(&[0.0, 18.0], 9).unwrap();
        assert_eq!(membership_at(&f, 0, 0.0).unwrap(), 1.0);
        assert_eq!(membership_at(&f, 8, 18.0).unwrap(), 1.0);
        assert_eq!(membership_at(&f, 4, 9.0).unwrap(), 1.0);
        // halfway between peak 9 and support edge 11
        assert!(close(membership_at(&f, 4, 10.0).unwrap(), 0.5));
        assert!(close(membership_at(&f, 0, 1.5).unwrap(), 0.5));
        assert!(membership_at(&f, 0, 18.5).is_err());
        assert!(membership_at(&f, 9, 1.0).is_err());
    }

    #[test]
    fn range_membership_examples() {
        let f = build_frame(&[0.0, 18.0], 9).unwrap();
        let full = RangeValue::new(7.0, 11.0).unwrap();
        assert!(close(range_membership(&f, 4, full).unwrap(), 0.5));
        let wider = RangeValue::new(2.0, 16.0).unwrap();
        assert!(close(range_membership(&f, 4, wider).unwrap(), 0.5));
        let disjoint = RangeValue::new(12.0, 14.0).unwrap();
        assert_eq!(range_membership(&f, 4, disjoint).unwrap(), 0.0);
        let touching = RangeValue::new(11.0, 14.0).unwrap();
        assert_eq!(range_membership(&f, 4, touching).unwrap(), 0.0);
        let peak = RangeValue::point(9.0).unwrap();
        assert_eq!(range_membership(&f, 4, peak).unwrap(), 1.0);
        let outside = RangeValue::new(-1.0, 3.0).unwrap();
        assert!(range_membership(&f, 0, outside).is_err());
    }

    #[test]
    fn shoulder_range_membership() {
        let f = build_frame(&[0.0, 18.0], 9).unwrap();
        // left shoulder over its whole support: area 1.5 over length 3
        let r = RangeValue::new(0.0, 3.0).unwrap();
        assert!(close(range_membership(&f, 0, r).unwrap(), 0.5));
        let r = RangeValue::new(0.0, 1.0).unwrap();
        assert!(close(range_membership(&f, 0, r).unwrap(), 5.0 / 6.0));
    }

    #[test]
    fn crisp_ranges() {
        assert_eq!(crisp_to_range(&[3.0, 5.0, 4.0]).unwrap(), RangeValue { lo: 3.0, hi: 5.0 });
        assert_eq!(crisp_to_range(&[7.0]).unwrap(), RangeValue { lo: 7.0, hi: 7.0 });
        assert_eq!(crisp_to_range(&[2.0, 2.0, 2.0]).unwrap(), RangeValue { lo: 2.0, hi: 2.0 });
        assert!(matches!(crisp_to_range(&[]).unwrap_err(), Error::MissingData(_)));
    }

    #[test]
    fn integrals_match_trapezoid() {
        let s = ClassShape::new(1.0, 2.5, 6.0).unwrap();
        for (u, v) in [(0.0, 7.0), (1.2, 2.0), (2.0, 4.0), (3.0, 5.5), (5.9, 6.5)] {
            let exact = s.integral(u, v);
            let quad = trapezoid(|x| s.eval(x), u, v, 10_000);
            assert!((exact - quad).abs() < 1e-6, "[{u},{v}] {exact} vs {quad}");
        }
        let t = ClassShape::new(2.0, 4.0, 6.5).unwrap();
        let quad = trapezoid(|x| s.eval(x).min(t.eval(x)), 0.0, 7.0, 10_000);
        assert!((s.min_integral(&t) - quad).abs() < 1e-6);
        assert!((s.min_integral(&t) - t.min_integral(&s)).abs() < 1e-12);
        assert!((s.min_integral(&s) - s.area()).abs() < 1e-12);
    }

    #[test]
    fn custom_frame_validation() {
        use PerformanceTerm::*;
        let shapes = vec![
            ClassShape::new(0.0, 1.0, 2.0).unwrap(),
            ClassShape::new(3.0, 4.0, 5.0).unwrap(),
        ];
        assert!(Frame::custom(0.0, 5.0, vec![Bad, Good], shapes.clone()).is_ok());
        assert!(Frame::custom(0.0, 4.0, vec![Bad, Good], shapes.clone()).is_err());
        assert!(Frame::custom(0.0, 5.0, vec![Bad], shapes).is_err());
    }
}
