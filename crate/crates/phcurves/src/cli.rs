//! Text formats and command implementations behind the `phcurves` binary:
//! problem files, curve files, CSV tables, and SVG rendering.
//!
//! Curve files print floats with Rust's shortest round-trip formatting, so
//! parsing an emitted file reproduces every control point bit-exactly.
//! Human-facing tables round to 6 significant digits.

use std::fmt::Write as _;

use crate::biarc::{interpolate, HermiteData, Interpolation, PHBiarc, SignBranch};
use crate::cpoly::{BernsteinPoly, Complex};
use crate::error::{Error, Result};
use crate::phcurve::{PHSegment7, PreimageCubic};
use crate::spline::{G2Spline, SplineNode};

/// A parsed interpolation problem: Hermite data plus free parameters.
#[derive(Clone, Copy, Debug)]
pub struct ProblemSpec {
    pub data: HermiteData<f64>,
    pub lambda: f64,
    pub beta0: f64,
    pub beta1: f64,
}

/// A parsed spline problem: nodes, span lengths, free parameters.
#[derive(Clone, Debug)]
pub struct NodesSpec {
    pub nodes: Vec<SplineNode>,
    pub lengths: Vec<f64>,
    pub lambda: f64,
    pub beta0: f64,
    pub beta1: f64,
}

fn parse_f64(tok: &str, line: usize) -> Result<f64> {
    tok.parse::<f64>().map_err(|_| Error::Parse {
        line,
        reason: format!("expected a number, got {tok:?}"),
    })
}

fn parse_numbers(value: &str, n: usize, line: usize) -> Result<Vec<f64>> {
    let toks: Vec<&str> = value.split_whitespace().collect();
    if toks.len() != n {
        return Err(Error::Parse {
            line,
            reason: format!("expected {n} numbers, got {}", toks.len()),
        });
    }
    toks.iter().map(|t| parse_f64(t, line)).collect()
}

/// Key = value lines; `#` starts a comment; keys may repeat only where the
/// format allows (nodes, lengths).
fn key_value_lines(text: &str) -> impl Iterator<Item = (usize, &str, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            return None;
        }
        let (k, v) = line.split_once('=')?;
        Some((i + 1, k.trim(), v.trim()))
    })
}

/// Parses a problem file: keys p0, p1 (pairs), theta0/theta1 (radians) or
/// t0/t1 (pairs, exclusive with the angle form), k0, k1, length, and
/// optional lambda (default 1), beta0/beta1 (default 0).
pub fn parse_problem(text: &str) -> Result<ProblemSpec> {
    let mut p0 = None;
    let mut p1 = None;
    let mut theta = [None::<f64>; 2];
    let mut tvec = [None::<Complex<f64>>; 2];
    let mut k0 = None;
    let mut k1 = None;
    let mut length = None;
    let mut lambda = 1.0;
    let mut beta0 = 0.0;
    let mut beta1 = 0.0;

    for (line, key, value) in key_value_lines(text) {
        match key {
            "p0" | "p1" => {
                let v = parse_numbers(value, 2, line)?;
                let c = Complex::new(v[0], v[1]);
                if key == "p0" {
                    p0 = Some(c);
                } else {
                    p1 = Some(c);
                }
            }
            "theta0" => theta[0] = Some(parse_f64(value, line)?),
            "theta1" => theta[1] = Some(parse_f64(value, line)?),
            "t0" | "t1" => {
                let v = parse_numbers(value, 2, line)?;
                let c = Complex::new(v[0], v[1]);
                if key == "t0" {
                    tvec[0] = Some(c);
                } else {
                    tvec[1] = Some(c);
                }
            }
            "k0" => k0 = Some(parse_f64(value, line)?),
            "k1" => k1 = Some(parse_f64(value, line)?),
            "length" => length = Some(parse_f64(value, line)?),
            "lambda" => lambda = parse_f64(value, line)?,
            "beta0" => beta0 = parse_f64(value, line)?,
            "beta1" => beta1 = parse_f64(value, line)?,
            other => {
                return Err(Error::Parse {
                    line,
                    reason: format!("unknown key {other:?}"),
                })
            }
        }
    }

    let missing = |what: &str| Error::Parse {
        line: 0,
        reason: format!("missing required key {what:?}"),
    };
    let p0 = p0.ok_or_else(|| missing("p0"))?;
    let p1 = p1.ok_or_else(|| missing("p1"))?;
    let k0 = k0.ok_or_else(|| missing("k0"))?;
    let k1 = k1.ok_or_else(|| missing("k1"))?;
    let length = length.ok_or_else(|| missing("length"))?;

    let has_angles = theta.iter().any(Option::is_some);
    let has_vectors = tvec.iter().any(Option::is_some);
    if has_angles && has_vectors {
        return Err(Error::Parse {
            line: 0,
            reason: "theta0/theta1 and t0/t1 are mutually exclusive".into(),
        });
    }
    let (t0, t1) = if has_angles {
        let a0 = theta[0].ok_or_else(|| missing("theta0"))?;
        let a1 = theta[1].ok_or_else(|| missing("theta1"))?;
        (
            Complex::new(a0.cos(), a0.sin()),
            Complex::new(a1.cos(), a1.sin()),
        )
    } else {
        let mut ts = [
            tvec[0].ok_or_else(|| missing("t0 (or theta0)"))?,
            tvec[1].ok_or_else(|| missing("t1 (or theta1)"))?,
        ];
        for t in &mut ts {
            let a = t.abs();
            if !(a > 0.0) {
                return Err(Error::Parse {
                    line: 0,
                    reason: "tangent vector must be nonzero".into(),
                });
            }
            *t = *t / a;
        }
        (ts[0], ts[1])
    };

    let data = HermiteData::new(p0, p1, t0, t1, k0, k1, length)?;
    Ok(ProblemSpec {
        data,
        lambda,
        beta0,
        beta1,
    })
}

/// Parses a nodes file: repeated `node = x y tx ty kappa` lines, repeated
/// `length = v` lines (one per span, in order), optional lambda/beta0/beta1.
pub fn parse_nodes(text: &str) -> Result<NodesSpec> {
    let mut nodes = Vec::new();
    let mut lengths = Vec::new();
    let mut lambda = 1.0;
    let mut beta0 = 0.0;
    let mut beta1 = 0.0;

    for (line, key, value) in key_value_lines(text) {
        match key {
            "node" => {
                let v = parse_numbers(value, 5, line)?;
                nodes.push(SplineNode::new(
                    Complex::new(v[0], v[1]),
                    Complex::new(v[2], v[3]),
                    v[4],
                )?);
            }
            "length" => lengths.push(parse_f64(value, line)?),
            "lambda" => lambda = parse_f64(value, line)?,
            "beta0" => beta0 = parse_f64(value, line)?,
            "beta1" => beta1 = parse_f64(value, line)?,
            other => {
                return Err(Error::Parse {
                    line,
                    reason: format!("unknown key {other:?}"),
                })
            }
        }
    }
    if nodes.len() < 2 {
        return Err(Error::Parse {
            line: 0,
            reason: format!("need at least 2 nodes, got {}", nodes.len()),
        });
    }
    if lengths.len() + 1 != nodes.len() {
        return Err(Error::Parse {
            line: 0,
            reason: format!(
                "need {} lengths for {} nodes, got {}",
                nodes.len() - 1,
                nodes.len(),
                lengths.len()
            ),
        });
    }
    Ok(NodesSpec {
        nodes,
        lengths,
        lambda,
        beta0,
        beta1,
    })
}

/// One polynomial segment of an emitted curve.
#[derive(Clone, Debug)]
pub struct SegmentRecord {
    pub scale: f64,
    pub length: f64,
    pub energy: f64,
    pub preimage: [Complex<f64>; 4],
    pub controls: [Complex<f64>; 8],
}

impl SegmentRecord {
    pub fn from_segment(seg: &PHSegment7<f64>) -> Self {
        let mut controls = [Complex::zero(); 8];
        controls.copy_from_slice(seg.control_points());
        SegmentRecord {
            scale: seg.scale(),
            length: seg.arc_length(),
            energy: seg.bending_energy().unwrap_or(f64::INFINITY),
            preimage: seg.preimage().w,
            controls,
        }
    }

    /// Rebuilds the segment; control points reproduce bit-exactly because
    /// the cumulative-sum construction is deterministic.
    pub fn to_segment(&self) -> Result<PHSegment7<f64>> {
        let [w0, w1, w2, w3] = self.preimage;
        PHSegment7::new(PreimageCubic::new(w0, w1, w2, w3), self.controls[0], self.scale)
    }
}

/// A curve artifact: solver metadata plus the polynomial segments.
#[derive(Clone, Debug)]
pub struct CurveDoc {
    pub kind: String,
    pub lambda: f64,
    pub beta0: f64,
    pub beta1: f64,
    pub alpha0: f64,
    pub alpha1: f64,
    pub branch: String,
    pub energy: f64,
    pub candidate_energies: Vec<f64>,
    pub segments: Vec<SegmentRecord>,
}

impl CurveDoc {
    pub fn from_biarc(b: &PHBiarc<f64>, candidates: &[f64]) -> Self {
        CurveDoc {
            kind: "biarc".into(),
            lambda: b.params().lambda,
            beta0: b.params().beta0,
            beta1: b.params().beta1,
            alpha0: b.alpha0(),
            alpha1: b.alpha1(),
            branch: branch_str(b.params().branch).into(),
            energy: b.energy(),
            candidate_energies: candidates.to_vec(),
            segments: vec![
                SegmentRecord::from_segment(b.half_a()),
                SegmentRecord::from_segment(b.half_b()),
            ],
        }
    }

    pub fn from_spline(sp: &G2Spline, lambda: f64, beta0: f64, beta1: f64) -> Self {
        let mut segments = Vec::with_capacity(2 * sp.num_spans());
        let mut energy = 0.0;
        for span in sp.spans() {
            segments.push(SegmentRecord::from_segment(span.half_a()));
            segments.push(SegmentRecord::from_segment(span.half_b()));
            energy += span.energy();
        }
        let first = &sp.spans()[0];
        CurveDoc {
            kind: "spline".into(),
            lambda,
            beta0,
            beta1,
            alpha0: first.alpha0(),
            alpha1: first.alpha1(),
            branch: branch_str(first.params().branch).into(),
            energy,
            candidate_energies: Vec::new(),
            segments,
        }
    }
}

fn branch_str(b: SignBranch) -> &'static str {
    match b {
        SignBranch::PlusPlus => "++",
        SignBranch::PlusMinus => "+-",
    }
}

fn parse_branch(s: &str, line: usize) -> Result<SignBranch> {
    match s {
        "++" => Ok(SignBranch::PlusPlus),
        "+-" => Ok(SignBranch::PlusMinus),
        other => Err(Error::Parse {
            line,
            reason: format!("unknown branch {other:?}"),
        }),
    }
}

fn write_complexes(out: &mut String, key: &str, values: &[Complex<f64>]) {
    let _ = write!(out, "{key} =");
    for v in values {
        let _ = write!(out, " {} {}", v.re, v.im);
    }
    out.push('\n');
}

/// Emits a curve document; floats use shortest round-trip formatting.
pub fn emit_curve(doc: &CurveDoc) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "curve = {}", doc.kind);
    let _ = writeln!(out, "lambda = {}", doc.lambda);
    let _ = writeln!(out, "beta0 = {}", doc.beta0);
    let _ = writeln!(out, "beta1 = {}", doc.beta1);
    let _ = writeln!(out, "alpha0 = {}", doc.alpha0);
    let _ = writeln!(out, "alpha1 = {}", doc.alpha1);
    let _ = writeln!(out, "branch = {}", doc.branch);
    let _ = writeln!(out, "energy = {}", doc.energy);
    if !doc.candidate_energies.is_empty() {
        let _ = write!(out, "candidate_energies =");
        for e in &doc.candidate_energies {
            let _ = write!(out, " {e}");
        }
        out.push('\n');
    }
    let _ = writeln!(out, "segments = {}", doc.segments.len());
    for (i, seg) in doc.segments.iter().enumerate() {
        let _ = writeln!(out, "segment = {i}");
        let _ = writeln!(out, "scale = {}", seg.scale);
        let _ = writeln!(out, "length = {}", seg.length);
        let _ = writeln!(out, "segment_energy = {}", seg.energy);
        write_complexes(&mut out, "preimage", &seg.preimage);
        for p in &seg.controls {
            let _ = writeln!(out, "control = {} {}", p.re, p.im);
        }
    }
    out
}

/// Parses every curve document in a file (documents are separated by their
/// `curve =` headers).
pub fn parse_curves(text: &str) -> Result<Vec<CurveDoc>> {
    let mut docs: Vec<CurveDoc> = Vec::new();
    let mut controls_seen = 0usize;

    for (line, key, value) in key_value_lines(text) {
        if key == "curve" {
            docs.push(CurveDoc {
                kind: value.to_string(),
                lambda: 1.0,
                beta0: 0.0,
                beta1: 0.0,
                alpha0: 0.0,
                alpha1: 0.0,
                branch: "++".into(),
                energy: f64::INFINITY,
                candidate_energies: Vec::new(),
                segments: Vec::new(),
            });
            continue;
        }
        let doc = docs.last_mut().ok_or(Error::Parse {
            line,
            reason: "file must start with a curve = <kind> line".into(),
        })?;
        match key {
            "lambda" => doc.lambda = parse_f64(value, line)?,
            "beta0" => doc.beta0 = parse_f64(value, line)?,
            "beta1" => doc.beta1 = parse_f64(value, line)?,
            "alpha0" => doc.alpha0 = parse_f64(value, line)?,
            "alpha1" => doc.alpha1 = parse_f64(value, line)?,
            "branch" => {
                parse_branch(value, line)?;
                doc.branch = value.to_string();
            }
            "energy" => doc.energy = parse_f64(value, line)?,
            "candidate_energies" => {
                doc.candidate_energies = value
                    .split_whitespace()
                    .map(|t| parse_f64(t, line))
                    .collect::<Result<_>>()?;
            }
            "segments" => {
                let n: usize = value.parse().map_err(|_| Error::Parse {
                    line,
                    reason: format!("expected a segment count, got {value:?}"),
                })?;
                // The count is advisory; cap the reservation so a corrupt
                // file cannot request an absurd allocation.
                doc.segments.reserve(n.min(1024));
            }
            "segment" => {
                doc.segments.push(SegmentRecord {
                    scale: 0.0,
                    length: 0.0,
                    energy: 0.0,
                    preimage: [Complex::zero(); 4],
                    controls: [Complex::zero(); 8],
                });
                controls_seen = 0;
            }
            "scale" | "length" | "segment_energy" => {
                let seg = doc.segments.last_mut().ok_or(Error::Parse {
                    line,
                    reason: format!("{key} outside a segment"),
                })?;
                let v = parse_f64(value, line)?;
                match key {
                    "scale" => seg.scale = v,
                    "length" => seg.length = v,
                    _ => seg.energy = v,
                }
            }
            "preimage" => {
                let seg = doc.segments.last_mut().ok_or(Error::Parse {
                    line,
                    reason: "preimage outside a segment".into(),
                })?;
                let v = parse_numbers(value, 8, line)?;
                for k in 0..4 {
                    seg.preimage[k] = Complex::new(v[2 * k], v[2 * k + 1]);
                }
            }
            "control" => {
                let seg = doc.segments.last_mut().ok_or(Error::Parse {
                    line,
                    reason: "control outside a segment".into(),
                })?;
                if controls_seen >= 8 {
                    return Err(Error::Parse {
                        line,
                        reason: "more than 8 control points in a segment".into(),
                    });
                }
                let v = parse_numbers(value, 2, line)?;
                seg.controls[controls_seen] = Complex::new(v[0], v[1]);
                controls_seen += 1;
            }
            other => {
                return Err(Error::Parse {
                    line,
                    reason: format!("unknown key {other:?}"),
                })
            }
        }
    }
    if docs.is_empty() {
        return Err(Error::Parse {
            line: 0,
            reason: "no curve documents in file".into(),
        });
    }
    Ok(docs)
}

/// Candidate table row order mirrors the interpolation's candidate list.
fn candidate_rows(interp: &Interpolation<f64>, all: bool) -> Vec<(usize, &PHBiarc<f64>, bool)> {
    interp
        .candidates
        .iter()
        .enumerate()
        .filter(|(i, _)| all || Some(*i) == interp.selected)
        .map(|(i, c)| (i, c, Some(i) == interp.selected))
        .collect()
}

/// 6-significant-digit formatting for human tables.
fn sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    format!("{x:.5e}")
}

/// The interpolate command: returns (stdout text, curve docs).
pub fn cmd_interpolate(
    spec: &ProblemSpec,
    all_candidates: bool,
    csv: bool,
    json: bool,
) -> Result<String> {
    let interp = interpolate(&spec.data, spec.lambda, spec.beta0, spec.beta1)?;
    if interp.best().is_none() {
        return Err(Error::Infeasible {
            reason: "no candidate solves the length equation for these parameters".into(),
        });
    }
    let energies: Vec<f64> = interp.candidates.iter().map(|c| c.energy()).collect();
    let rows = candidate_rows(&interp, all_candidates);

    if csv {
        let mut out = String::from("index,alpha0,alpha1,branch,energy,selected\n");
        for (i, c, sel) in rows {
            let _ = writeln!(
                out,
                "{i},{},{},{},{},{}",
                c.alpha0(),
                c.alpha1(),
                branch_str(c.params().branch),
                sig6(c.energy()),
                sel
            );
        }
        return Ok(out);
    }
    if json {
        let mut out = String::from("{\n  \"candidates\": [\n");
        let n = rows.len();
        for (k, (i, c, sel)) in rows.into_iter().enumerate() {
            let _ = write!(
                out,
                "    {{\"index\": {i}, \"alpha0\": {}, \"alpha1\": {}, \"branch\": \"{}\", \"energy\": {}, \"selected\": {}}}",
                c.alpha0(),
                c.alpha1(),
                branch_str(c.params().branch),
                c.energy(),
                sel
            );
            out.push_str(if k + 1 < n { ",\n" } else { "\n" });
        }
        out.push_str("  ]\n}\n");
        return Ok(out);
    }

    let mut out = String::new();
    for (_, c, _) in rows {
        out.push_str(&emit_curve(&CurveDoc::from_biarc(c, &energies)));
    }
    Ok(out)
}

/// The spline command: builds the spline, emits the curve document and a
/// per-knot continuity report; optionally evaluates the error against a
/// reference log spiral sampled at the given parameters.
pub fn cmd_spline(
    spec: &NodesSpec,
    reference_spiral: Option<f64>,
    reference_samples: Option<&[f64]>,
) -> Result<String> {
    let sp = G2Spline::build(
        &spec.nodes,
        &spec.lengths,
        spec.lambda,
        spec.beta0,
        spec.beta1,
    )?;
    let mut out = emit_curve(&CurveDoc::from_spline(&sp, spec.lambda, spec.beta0, spec.beta1));

    let _ = writeln!(out, "# knot continuity report");
    for j in 1..sp.num_spans() {
        let left = sp.spans()[j - 1].evaluate(1.0)?;
        let right = sp.spans()[j].evaluate(0.0)?;
        let _ = writeln!(
            out,
            "# knot {j}: point_gap = {} tangent_gap = {} curvature_gap = {}",
            sig6((left.point - right.point).abs()),
            sig6((left.unit_tangent - right.unit_tangent).abs()),
            sig6((left.signed_curvature - right.signed_curvature).abs()),
        );
    }

    if let Some(omega) = reference_spiral {
        let samples = reference_samples.ok_or_else(|| Error::InvalidInput {
            reason: "--reference-samples required with --reference-spiral".into(),
        })?;
        if samples.len() != spec.nodes.len() {
            return Err(Error::InvalidInput {
                reason: format!(
                    "need {} reference samples, got {}",
                    spec.nodes.len(),
                    samples.len()
                ),
            });
        }
        let curve = crate::bench::AnalyticCurve::new(omega);
        let mut max_err = 0.0_f64;
        for (j, span) in sp.spans().iter().enumerate() {
            let rc = crate::bench::FittedCurve::Biarc(span);
            let phi = crate::bench::reparam_phi(&rc, &curve, samples[j], samples[j + 1])?;
            max_err = max_err.max(crate::bench::e_err(&rc, &curve, &phi));
        }
        let _ = writeln!(out, "# max_e_err = {}", sig6(max_err));
    }
    Ok(out)
}

/// Renders a curve document as SVG 1.1: sampled polyline, control polygons,
/// and porcupine curvature quills r(t) → r(t) + s·κ(t)·n(t).
pub fn render_svg(doc: &CurveDoc, porcupine_scale: f64, quills: usize) -> Result<String> {
    let segs: Vec<PHSegment7<f64>> = doc
        .segments
        .iter()
        .map(|s| s.to_segment())
        .collect::<Result<_>>()?;
    let polys: Vec<BernsteinPoly<f64>> = doc
        .segments
        .iter()
        .map(|s| BernsteinPoly::new(s.controls.to_vec()))
        .collect();
    let nseg = segs.len();

    // Sample the full curve: 200 points per segment.
    let mut curve_pts: Vec<Complex<f64>> = Vec::with_capacity(nseg * 200 + 1);
    for (k, poly) in polys.iter().enumerate() {
        let last = k + 1 == nseg;
        let m = if last { 200 } else { 199 };
        for i in 0..=m {
            curve_pts.push(poly.eval(i as f64 / 200.0)?);
        }
    }

    // Quills at uniform global parameters; cusp points are skipped.
    let mut quill_lines: Vec<(Complex<f64>, Complex<f64>, bool)> = Vec::new();
    let denominator = quills.max(2) - 1;
    for q in 0..quills.max(2) {
        let t_global = q as f64 / denominator as f64 * nseg as f64;
        let k = (t_global.floor() as usize).min(nseg - 1);
        let t = t_global - k as f64;
        if let Ok(sample) = segs[k].evaluate(t) {
            let tip = sample.point + sample.normal * (porcupine_scale * sample.signed_curvature);
            quill_lines.push((sample.point, tip, sample.signed_curvature >= 0.0));
        }
    }

    let mut min = Complex::new(f64::INFINITY, f64::INFINITY);
    let mut max = Complex::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    let mut grow = |p: &Complex<f64>| {
        min = Complex::new(min.re.min(p.re), min.im.min(p.im));
        max = Complex::new(max.re.max(p.re), max.im.max(p.im));
    };
    for p in &curve_pts {
        grow(p);
    }
    for (a, b, _) in &quill_lines {
        grow(a);
        grow(b);
    }
    for s in &doc.segments {
        for p in &s.controls {
            grow(p);
        }
    }
    let span = ((max.re - min.re).max(max.im - min.im)).max(1e-9);
    let pad = 0.05 * span;
    let (x0, y0) = (min.re - pad, min.im - pad);
    let (w, h) = (max.re - min.re + 2.0 * pad, max.im - min.im + 2.0 * pad);
    let stroke = 0.004 * span;

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{x0} {} {w} {h}\" width=\"720\" height=\"{}\">",
        -(y0 + h),
        (720.0 * h / w).round()
    );
    // World y points up; SVG y points down. Flip once here.
    out.push_str("<g transform=\"scale(1,-1)\">\n");

    for (k, s) in doc.segments.iter().enumerate() {
        let _ = write!(
            out,
            "<polyline fill=\"none\" stroke=\"#bbbbbb\" stroke-width=\"{}\" stroke-dasharray=\"{} {}\" points=\"",
            0.5 * stroke,
            2.0 * stroke,
            2.0 * stroke
        );
        for p in &s.controls {
            let _ = write!(out, "{},{} ", p.re, p.im);
        }
        let _ = writeln!(out, "\"/>  <!-- control polygon segment {k} -->");
    }

    for (a, b, positive) in &quill_lines {
        let color = if *positive { "#d62728" } else { "#1f77b4" };
        let _ = writeln!(
            out,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{color}\" stroke-width=\"{}\"/>",
            a.re,
            a.im,
            b.re,
            b.im,
            0.5 * stroke
        );
    }

    let _ = write!(
        out,
        "<polyline fill=\"none\" stroke=\"#000000\" stroke-width=\"{stroke}\" points=\""
    );
    for p in &curve_pts {
        let _ = write!(out, "{},{} ", p.re, p.im);
    }
    out.push_str("\"/>\n</g>\n</svg>\n");
    Ok(out)
}

fn format_decay(d: Option<f64>) -> String {
    d.map_or_else(String::new, |v| format!("{v:.5}"))
}

/// Spiral convergence table as CSV: h, error, decay exponent.
pub fn bench_spiral_csv(omega: f64, max_k: u32, method: crate::bench::Method) -> Result<String> {
    let h_list: Vec<f64> = (0..=max_k).map(|k| 0.5_f64.powi(k as i32)).collect();
    let rows = crate::bench::decay_table(omega, &h_list, method)?;
    let mut out = String::from("h,e_err,decay_exponent\n");
    for r in &rows {
        let _ = writeln!(out, "{},{},{}", r.h, sig6(r.e_err), format_decay(r.decay_exponent));
    }
    Ok(out)
}

/// Biarc and single-segment errors side by side on the same h grid.
pub fn bench_single_compare_csv(omega: f64, max_k: u32) -> Result<String> {
    let h_list: Vec<f64> = (0..=max_k).map(|k| 0.5_f64.powi(k as i32)).collect();
    let biarc = crate::bench::decay_table(omega, &h_list, crate::bench::Method::Biarc)?;
    let single = crate::bench::decay_table(omega, &h_list, crate::bench::Method::Single)?;
    let mut out = String::from("h,biarc_e_err,biarc_decay,single_e_err,single_decay\n");
    for (b, s) in biarc.iter().zip(&single) {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            b.h,
            sig6(b.e_err),
            format_decay(b.decay_exponent),
            sig6(s.e_err),
            format_decay(s.decay_exponent)
        );
    }
    Ok(out)
}

/// Circle convergence table as CSV: span count N doubling up to max_n.
pub fn bench_circle_csv(max_n: usize) -> Result<String> {
    let mut out = String::from("n,e_err,decay_exponent\n");
    let mut prev: Option<f64> = None;
    let mut n = 2;
    while n <= max_n {
        let study = crate::bench::circle_spline(n)?;
        let err = study.report.e_err;
        let decay = prev.map(|p| (p / err).log2());
        let _ = writeln!(out, "{n},{},{}", sig6(err), format_decay(decay));
        prev = Some(err);
        n *= 2;
    }
    Ok(out)
}

/// λ study as CSV: every grid point, the grid minimum, and optionally the
/// continuously refined minimum.
pub fn bench_lambda_csv(data: &HermiteData<f64>, continuous: bool) -> Result<String> {
    let mut out = String::from("kind,lambda,energy\n");
    for j in 1..=100 {
        let lambda = j as f64 / 10.0;
        if let Some((energy, _)) = crate::bench::energy_at_lambda(data, lambda) {
            let _ = writeln!(out, "grid,{lambda},{}", sig6(energy));
        }
    }
    let grid = crate::bench::optimize_lambda(data, false)?;
    let _ = writeln!(out, "minimum,{},{}", grid.lambda, sig6(grid.energy));
    if continuous {
        let fine = crate::bench::optimize_lambda(data, true)?;
        let _ = writeln!(out, "continuous,{},{}", fine.lambda, sig6(fine.energy));
    }
    Ok(out)
}

/// β study as CSV: the β = 0 start and the optimized point at fixed λ.
pub fn bench_beta_csv(data: &HermiteData<f64>, lambda: f64) -> Result<String> {
    let mut out = String::from("kind,beta0,beta1,energy\n");
    if let Some((start, _)) = crate::bench::energy_at_lambda(data, lambda) {
        let _ = writeln!(out, "start,0,0,{}", sig6(start));
    }
    let opt = crate::bench::optimize_beta(data, lambda)?;
    let _ = writeln!(out, "best,{},{},{}", opt.beta0, opt.beta1, sig6(opt.energy));
    Ok(out)
}

/// Maps library errors to process exit codes: 2 usage, 3 infeasible,
/// 4 numerical failure.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse { .. } | Error::InvalidInput { .. } | Error::Io(_) => 2,
        Error::Infeasible { .. } | Error::DegeneratePreimage => 3,
        Error::Span { source, .. } => exit_code(source),
        _ => 4,
    }
}
