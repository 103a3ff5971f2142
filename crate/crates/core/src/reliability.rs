//! Static, dynamic and comprehensive reliability of a fuzzified criterion,
//! and the reliability-adjusted class weights derived from them.
//!
//! Static reliability penalises overlap between adjacent classes; dynamic
//! reliability grows with the distance between test samples and the peaks
//! of those overlaps. Their product is normalised across criteria.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fuzzify::{ClassShape, Frame};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReliabilityProfile {
    pub r_static: f64,
    /// Sum of risk distances; `r_dynamic = exp(dynamic_exponent)`.
    pub dynamic_exponent: f64,
    pub r_dynamic: f64,
    pub r_comprehensive: f64,
    pub r_normalized: f64,
}

/// Test samples of one criterion and the overlap peaks they are measured
/// against.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReliabilityContext {
    test_points: Vec<f64>,
    overlap_peaks: Vec<f64>,
}

impl ReliabilityContext {
    /// Context whose overlap peaks are those of `frame`'s adjacent classes.
    pub fn for_frame(frame: &Frame, test_points: Vec<f64>) -> Result<Self> {
        Self::with_peaks(test_points, overlap_peaks(frame))
    }

    pub fn with_peaks(test_points: Vec<f64>, overlap_peaks: Vec<f64>) -> Result<Self> {
        if let Some(x) = test_points.iter().chain(&overlap_peaks).find(|x| !x.is_finite()) {
            return Err(Error::Domain(format!("reliability context value {x} is not finite")));
        }
        Ok(ReliabilityContext { test_points, overlap_peaks })
    }

    pub fn test_points(&self) -> &[f64] {
        &self.test_points
    }

    pub fn overlap_peaks(&self) -> &[f64] {
        &self.overlap_peaks
    }
}

/// Jaccard ratio of two membership functions.
pub fn shape_similarity(x: &ClassShape, y: &ClassShape) -> f64 {
    let overlap = x.min_integral(y);
    let union = x.area() + y.area() - overlap;
    if union <= 0.0 {
        0.0
    } else {
        (overlap / union).clamp(0.0, 1.0)
    }
}

/// Similarity of two adjacent classes of `frame`.
pub fn class_similarity(frame: &Frame, i: usize, l: usize) -> Result<f64> {
    if i.abs_diff(l) != 1 {
        return Err(Error::Domain(format!("classes {i} and {l} are not adjacent")));
    }
    Ok(shape_similarity(frame.shape(i)?, frame.shape(l)?))
}

/// `sum over adjacent pairs of (1 - sim)`.
pub fn static_reliability(frame: &Frame) -> Result<f64> {
    (1..frame.class_count())
        .map(|l| class_similarity(frame, l - 1, l).map(|s| 1.0 - s))
        .sum()
}

/// Point where the falling edge of `lower` meets the rising edge of
/// `upper`, or `None` when the supports do not overlap.
pub fn overlap_peak(lower: &ClassShape, upper: &ClassShape) -> Option<f64> {
    if upper.left >= lower.right || upper.peak <= lower.peak {
        return None;
    }
    let fall = lower.right - lower.peak;
    let rise = upper.peak - upper.left;
    if fall + rise <= 0.0 {
        return None;
    }
    let x = (lower.right * rise + upper.left * fall) / (rise + fall);
    (x > lower.peak && x < upper.peak).then_some(x)
}

/// Overlap peaks of every adjacent pair of classes that overlap.
pub fn overlap_peaks(frame: &Frame) -> Vec<f64> {
    frame
        .shapes()
        .windows(2)
        .filter_map(|w| overlap_peak(&w[0], &w[1]))
        .collect()
}

/// Sum of `|T - P| / D` over every test point `T` and overlap peak `P`.
pub fn risk_distance_sum(frame: &Frame, ctx: &ReliabilityContext) -> Result<f64> {
    let span = frame.span();
    let mut total = 0.0;
    for &t in ctx.test_points() {
        if !frame.contains(t) {
            return Err(Error::Domain(format!(
                "test point {t} outside frame [{}, {}]",
                frame.lo(),
                frame.hi()
            )));
        }
        total += ctx.overlap_peaks().iter().map(|p| (t - p).abs() / span).sum::<f64>();
    }
    Ok(total)
}

pub fn dynamic_reliability(frame: &Frame, ctx: &ReliabilityContext) -> Result<f64> {
    risk_distance_sum(frame, ctx).map(f64::exp)
}

/// Comprehensive reliability of each criterion, normalised by the largest.
///
/// Normalisation is carried out in log space so that large dynamic
/// exponents do not overflow.
pub fn reliability_profiles(frames: &[&Frame], ctxs: &[&ReliabilityContext]) -> Result<Vec<ReliabilityProfile>> {
    if frames.is_empty() {
        return Err(Error::Domain("reliability needs at least one numerical criterion".into()));
    }
    if frames.len() != ctxs.len() {
        return Err(Error::Shape { expected: frames.len(), found: ctxs.len() });
    }
    let mut raw = Vec::with_capacity(frames.len());
    for (frame, ctx) in frames.iter().zip(ctxs) {
        let r_static = static_reliability(frame)?;
        let exponent = risk_distance_sum(frame, ctx)?;
        raw.push((r_static, exponent));
    }
    let logs: Vec<f64> = raw.iter().map(|(s, e)| s.ln() + e).collect();
    let max_log = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max_log == f64::NEG_INFINITY {
        return Err(Error::InvalidResult("every criterion has zero static reliability".into()));
    }
    Ok(raw
        .iter()
        .zip(&logs)
        .map(|(&(r_static, exponent), &log_r)| {
            let r_dynamic = exponent.exp();
            ReliabilityProfile {
                r_static,
                dynamic_exponent: exponent,
                r_dynamic,
                r_comprehensive: r_static * r_dynamic,
                r_normalized: if log_r == max_log { 1.0 } else { (log_r - max_log).exp() },
            }
        })
        .collect())
}

/// Scales memberships by `r_star` and normalises them to sum to one.
pub fn adjusted_normalized_memberships(m: &[f64], r_star: f64) -> Result<Vec<f64>> {
    if !(r_star > 0.0 && r_star.is_finite()) {
        return Err(Error::Domain(format!("normalized reliability {r_star} must be positive")));
    }
    if let Some(bad) = m.iter().find(|x| !(**x >= 0.0 && x.is_finite())) {
        return Err(Error::Domain(format!("membership degree {bad} is not a nonnegative number")));
    }
    let adjusted: Vec<f64> = m.iter().map(|x| r_star * x).collect();
    let total: f64 = adjusted.iter().sum();
    if total <= 0.0 {
        return Err(Error::NoSupport);
    }
    Ok(adjusted.into_iter().map(|x| x / total).collect())
}
