//! Local G² spline assembly from per-span biarc interpolants.
//!
//! Each span is built independently from the two nodes that bound it, so the
//! scheme is completely local: a node perturbation touches only the (at most
//! two) spans incident to it.  G² continuity across knots needs no coupling
//! equations — adjacent spans consume identical node data.

use crate::biarc::{interpolate, HermiteData, PHBiarc};
use crate::cpoly::Complex;
use crate::error::{Error, Result};
use crate::phcurve::CurveSample;

/// One G² Hermite node: position, unit tangent, and signed curvature.
#[derive(Clone, Copy, Debug)]
pub struct SplineNode {
    pub point: Complex<f64>,
    pub tangent: Complex<f64>,
    pub curvature: f64,
}

impl SplineNode {
    /// Validates that the tangent is unit to 1e-12 and normalizes it exactly.
    pub fn new(point: Complex<f64>, tangent: Complex<f64>, curvature: f64) -> Result<Self> {
        if !point.is_finite() || !tangent.is_finite() || !curvature.is_finite() {
            return Err(Error::InvalidInput {
                reason: "node fields must be finite".into(),
            });
        }
        let norm = tangent.abs();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidInput {
                reason: format!("node tangent must be unit, |t| = {norm}"),
            });
        }
        Ok(SplineNode {
            point,
            tangent: tangent / norm,
            curvature,
        })
    }
}

/// A piecewise PH curve of `N` biarc spans over the global parameter
/// interval [0, N]; span `j` covers [j, j+1].
#[derive(Clone, Debug)]
pub struct G2Spline {
    spans: Vec<PHBiarc<f64>>,
    breakpoints: Vec<f64>,
}

impl G2Spline {
    /// Builds one biarc per consecutive node pair.  `lengths[j]` prescribes
    /// the arc length of span `j` and must exceed its chord.  Any span
    /// failure aborts the build and reports the offending span index.
    pub fn build(
        nodes: &[SplineNode],
        lengths: &[f64],
        lambda: f64,
        beta0: f64,
        beta1: f64,
    ) -> Result<Self> {
        if nodes.len() < 2 {
            return Err(Error::InvalidInput {
                reason: format!("need at least 2 nodes, got {}", nodes.len()),
            });
        }
        if lengths.len() + 1 != nodes.len() {
            return Err(Error::InvalidInput {
                reason: format!(
                    "need exactly {} span lengths for {} nodes, got {}",
                    nodes.len() - 1,
                    nodes.len(),
                    lengths.len()
                ),
            });
        }
        let mut spans = Vec::with_capacity(lengths.len());
        for (j, window) in nodes.windows(2).enumerate() {
            let span = Self::build_span(&window[0], &window[1], lengths[j], lambda, beta0, beta1)
                .map_err(|e| Error::Span {
                    index: j,
                    source: Box::new(e),
                })?;
            spans.push(span);
        }
        let breakpoints = (0..=spans.len()).map(|j| j as f64).collect();
        Ok(G2Spline { spans, breakpoints })
    }

    fn build_span(
        a: &SplineNode,
        b: &SplineNode,
        length: f64,
        lambda: f64,
        beta0: f64,
        beta1: f64,
    ) -> Result<PHBiarc<f64>> {
        let data = HermiteData::new(
            a.point,
            b.point,
            a.tangent,
            b.tangent,
            a.curvature,
            b.curvature,
            length,
        )?;
        let interp = interpolate(&data, lambda, beta0, beta1)?;
        interp
            .best()
            .cloned()
            .ok_or_else(|| Error::Infeasible {
                reason: "no biarc interpolant for span data".into(),
            })
    }

    /// Assembles a spline from pre-built spans (e.g. rotated copies of one
    /// biarc).  Adjacent spans must join to within 1e-9 of the span scale.
    pub fn from_spans(spans: Vec<PHBiarc<f64>>) -> Result<Self> {
        if spans.is_empty() {
            return Err(Error::InvalidInput {
                reason: "need at least one span".into(),
            });
        }
        for j in 1..spans.len() {
            let end = spans[j - 1].point(1.0)?;
            let start = spans[j].point(0.0)?;
            let scale = spans[j].arc_length().max(1.0);
            if (end - start).abs() > 1e-9 * scale {
                return Err(Error::InvalidInput {
                    reason: format!("spans {} and {} do not join", j - 1, j),
                });
            }
        }
        let breakpoints = (0..=spans.len()).map(|j| j as f64).collect();
        Ok(G2Spline { spans, breakpoints })
    }

    pub fn spans(&self) -> &[PHBiarc<f64>] {
        &self.spans
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn num_spans(&self) -> usize {
        self.spans.len()
    }

    /// Sum of the prescribed span lengths (each exact per the biarc invariant).
    pub fn total_length(&self) -> f64 {
        self.spans.iter().map(|s| s.arc_length()).sum()
    }

    /// Splits a global parameter into (span index, local parameter),
    /// right-continuous at interior knots.
    fn locate(&self, u: f64) -> Result<(usize, f64)> {
        let n = self.spans.len() as f64;
        if !(0.0..=n).contains(&u) {
            return Err(Error::ParamOutOfRange { t: u });
        }
        let j = (u.floor() as usize).min(self.spans.len() - 1);
        Ok((j, u - j as f64))
    }

    /// Evaluates position, frame, and curvature at global parameter
    /// `u ∈ [0, N]`; span `j` is traversed for `u ∈ [j, j+1]` under a linear
    /// reparameterization.
    pub fn evaluate_global(&self, u: f64) -> Result<CurveSample<f64>> {
        let (j, t) = self.locate(u)?;
        self.spans[j].evaluate(t)
    }

    /// Position only, at global parameter `u`.
    pub fn point_global(&self, u: f64) -> Result<Complex<f64>> {
        let (j, t) = self.locate(u)?;
        self.spans[j].point(t)
    }
}
