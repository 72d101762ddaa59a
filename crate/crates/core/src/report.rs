//! Surface specification files, per-point reports, grid sweeps and the
//! identity check suite. This is the machinery behind the `hypershape`
//! binary.
//!
//! A specification is a flat JSON document:
//!
//! ```json
//! {
//!   "surface": { "x": "sin(u)*cos(v)*sin(w)", "y": "sin(u)*sin(v)*sin(w)",
//!                "z": "cos(u)*sin(w)", "t": "cos(w)" },
//!   "domain": { "u": [0.3, 2.8], "v": [0.3, 2.8], "w": [0.3, 2.8] },
//!   "samples": [5, 5, 5],
//!   "implicit": "x^2 + y^2 + z^2 + t^2",
//!   "eps_k": 1e-8,
//!   "eps_reg": 1e-12
//! }
//! ```
//!
//! `implicit`, `eps_k` and `eps_reg` are optional. Grids include both
//! endpoints and are traversed with `w` fastest, then `v`, then `u`.

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::classify::PointClass;
use crate::expr::{Expr, Mode, ParseError};
use crate::geometry::{frame_at, implicit_normal, FrameData, GeometryError, ParametricSurface, DEFAULT_EPS_REG};
use crate::matrix::Mat3;
use crate::weingarten::{
    analyze, frame_to_orthonormal, shape_operator_orthogonal, shape_operator_solve, verify_ternary_identities,
    ShapeResult, WeingartenError, ORTHOGONAL_TOL,
};

/// Fixed CSV header of grid output.
pub const CSV_HEADER: [&str; 30] = [
    "u", "v", "w", "x", "y", "z", "t", "n1", "n2", "n3", "n4", "g11", "g12", "g13", "g22", "g23", "g33", "b11", "b12",
    "b13", "b22", "b23", "b33", "K", "H", "k1", "k2", "k3", "class", "status",
];

pub mod thresholds {
    //! Pass thresholds of the identity check suite.

    /// `|Δ − |φ_u ⊗ φ_v ⊗ φ_w|²| / Δ`.
    pub const NORM_IDENTITY: f64 = 1e-9;
    /// `max |<N, φ_i>| / max |φ_i|`.
    pub const ORTHOGONALITY: f64 = 1e-10;
    /// Cramer against pivoted solve, relative to `max(1, max |a_ij|)`.
    pub const CRAMER_VS_SOLVE: f64 = 1e-10;
    /// Frame-basis matrix conjugated into the orthonormal basis against the
    /// symmetric matrix, relative to `max(1, |S|)`.
    pub const PATH_AGREEMENT: f64 = 1e-9;
    /// Characteristic polynomial coefficients of both representations,
    /// relative to `max(1, |S|)^n`.
    pub const SIMILARITY: f64 = 1e-9;
    /// Ternary identities, relative to their natural scale.
    pub const TERNARY: f64 = 1e-8;
    /// Cayley–Hamilton residual relative to `|S|³`.
    pub const CAYLEY_HAMILTON: f64 = 1e-9;
}

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error("invalid specification: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid surface: {0}")]
    Surface(#[from] GeometryError),
    #[error("invalid implicit equation: {0}")]
    Implicit(#[source] ParseError),
    #[error("samples must be at least 2 per axis, got {0:?}")]
    Samples([u32; 3]),
    #[error("{name} must be positive and finite, got {value}")]
    Threshold { name: &'static str, value: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoordinateTexts {
    pub x: String,
    pub y: String,
    pub z: String,
    pub t: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainSpec {
    pub u: [f64; 2],
    pub v: [f64; 2],
    pub w: [f64; 2],
}

/// Contents of a surface specification file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub surface: CoordinateTexts,
    pub domain: DomainSpec,
    pub samples: [u32; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub implicit: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps_k: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps_reg: Option<f64>,
}

impl SurfaceSpec {
    pub fn load(path: impl AsRef<Path>) -> Result<Self, SpecError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|source| SpecError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self, SpecError> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Why a single point could not be analyzed.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PointError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Weingarten(#[from] WeingartenError),
}

impl PointError {
    /// Name of the pipeline stage that failed.
    pub fn stage(&self) -> &'static str {
        match self {
            PointError::Geometry(GeometryError::NotRegular { .. }) => "regularity",
            PointError::Geometry(GeometryError::ZeroGradient(_) | GeometryError::WrongMode { .. }) => "implicit normal",
            PointError::Geometry(_) => "evaluation",
            PointError::Weingarten(_) => "shape operator",
        }
    }

    pub fn is_singular(&self) -> bool {
        matches!(
            self,
            PointError::Geometry(GeometryError::NotRegular { .. })
                | PointError::Weingarten(WeingartenError::NotRegular(_))
        )
    }
}

/// Everything reported about one parameter point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointReport {
    pub u: f64,
    pub v: f64,
    pub w: f64,
    pub position: [f64; 4],
    pub normal: [f64; 4],
    /// `g11 g12 g13 g22 g23 g33`.
    pub gram: [f64; 6],
    /// `b11 b12 b13 b22 b23 b33`.
    pub second_form: [f64; 6],
    /// Orthonormal-basis Weingarten matrix, same entry order.
    pub s_ortho: [f64; 6],
    #[serde(rename = "K")]
    pub gaussian: f64,
    #[serde(rename = "H")]
    pub mean: f64,
    pub k: [f64; 3],
    pub class: PointClass,
    pub residual_theorem2_i: f64,
    pub residual_theorem2_ii: f64,
    /// `None` when a principal curvature is zero.
    pub residual_eq16: Option<f64>,
    /// Implicit normal at `φ(p)`, when the spec has an implicit equation.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub implicit_normal: Option<[f64; 4]>,
}

impl PointReport {
    fn build(frame: &FrameData, shape: &ShapeResult, implicit: Option<[f64; 4]>) -> Result<Self, WeingartenError> {
        let e = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        let ternary = verify_ternary_identities(frame, &shape.s_frame, e[0], e[1], e[2])?;
        let [u, v, w] = frame.point;
        Ok(PointReport {
            u,
            v,
            w,
            position: frame.position.0.map(unsigned_zero),
            normal: frame.normal.0.map(unsigned_zero),
            gram: frame.gram.0.map(unsigned_zero),
            second_form: frame.second_form.0.map(unsigned_zero),
            s_ortho: shape.s_ortho.0.map(unsigned_zero),
            gaussian: unsigned_zero(shape.gaussian),
            mean: unsigned_zero(shape.mean),
            k: shape.principal.map(unsigned_zero),
            class: shape.classification.class,
            residual_theorem2_i: ternary.product,
            residual_theorem2_ii: ternary.sum,
            residual_eq16: shape.cayley_hamilton().ok(),
            implicit_normal: implicit.map(|n| n.map(unsigned_zero)),
        })
    }

    /// Human-readable `key: value` lines.
    pub fn to_text(&self) -> String {
        let list = |xs: &[f64]| xs.iter().map(|&x| format_float(x)).collect::<Vec<_>>().join(", ");
        let mut out = String::new();
        let mut line = |k: &str, v: String| {
            out.push_str(k);
            out.push_str(": ");
            out.push_str(&v);
            out.push('\n');
        };
        line("point", list(&[self.u, self.v, self.w]));
        line("position", list(&self.position));
        line("normal", list(&self.normal));
        line("gram", list(&self.gram));
        line("second_form", list(&self.second_form));
        line("s_ortho", list(&self.s_ortho));
        line("K", format_float(self.gaussian));
        line("H", format_float(self.mean));
        line("k1", format_float(self.k[0]));
        line("k2", format_float(self.k[1]));
        line("k3", format_float(self.k[2]));
        line("class", self.class.to_string());
        line("residual_theorem2_i", format_float(self.residual_theorem2_i));
        line("residual_theorem2_ii", format_float(self.residual_theorem2_ii));
        line(
            "residual_eq16",
            self.residual_eq16.map_or_else(|| "n/a".to_string(), format_float),
        );
        if let Some(n) = &self.implicit_normal {
            line("implicit_normal", list(n));
        }
        out
    }
}

fn unsigned_zero(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

/// Shortest round-trip decimal, `-0` printed as `0.0`.
pub fn format_float(x: f64) -> String {
    ryu::Buffer::new().format(unsigned_zero(x)).to_string()
}

/// Output format for machine-readable records.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Jsonl,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "jsonl" => Ok(OutputFormat::Jsonl),
            _ => Err(format!("unknown format `{s}` (expected csv or jsonl)")),
        }
    }
}

/// One grid sample and its outcome.
#[derive(Clone, Debug)]
pub struct GridRow {
    pub point: [f64; 3],
    pub outcome: Result<PointReport, PointError>,
}

impl GridRow {
    pub fn status(&self) -> &'static str {
        match &self.outcome {
            Ok(_) => "ok",
            Err(e) if e.is_singular() => "singular",
            Err(_) => "error",
        }
    }

    pub fn csv_line(&self) -> String {
        let mut fields: Vec<String> = self.point.iter().map(|&x| format_float(x)).collect();
        match &self.outcome {
            Ok(r) => {
                let curv = [r.gaussian, r.mean];
                let nums = r
                    .position
                    .iter()
                    .chain(&r.normal)
                    .chain(&r.gram)
                    .chain(&r.second_form)
                    .chain(&curv)
                    .chain(&r.k);
                fields.extend(nums.map(|&x| format_float(x)));
                fields.push(r.class.to_string());
            }
            Err(_) => fields.extend(std::iter::repeat_n(String::new(), CSV_HEADER.len() - 4)),
        }
        fields.push(self.status().to_string());
        fields.join(",")
    }

    pub fn json_line(&self) -> String {
        let value = match &self.outcome {
            Ok(r) => {
                let mut v = serde_json::to_value(r).expect("report serializes");
                v["status"] = json!("ok");
                v
            }
            Err(e) => json!({
                "u": self.point[0],
                "v": self.point[1],
                "w": self.point[2],
                "status": self.status(),
                "error": e.to_string(),
            }),
        };
        value.to_string()
    }
}

pub fn write_csv<W: Write>(rows: &[GridRow], mut out: W) -> io::Result<()> {
    writeln!(out, "{}", CSV_HEADER.join(","))?;
    for row in rows {
        writeln!(out, "{}", row.csv_line())?;
    }
    Ok(())
}

pub fn write_jsonl<W: Write>(rows: &[GridRow], mut out: W) -> io::Result<()> {
    for row in rows {
        writeln!(out, "{}", row.json_line())?;
    }
    Ok(())
}

/// A compiled specification, ready to evaluate.
#[derive(Clone, Debug)]
pub struct Analyzer {
    pub surface: ParametricSurface,
    pub implicit: Option<Expr>,
    pub samples: [u32; 3],
    pub eps_k: Option<f64>,
    pub eps_reg: f64,
}

fn positive(name: &'static str, value: Option<f64>) -> Result<Option<f64>, SpecError> {
    match value {
        Some(v) if !(v > 0.0 && v.is_finite()) => Err(SpecError::Threshold { name, value: v }),
        other => Ok(other),
    }
}

impl Analyzer {
    pub fn from_spec(spec: &SurfaceSpec) -> Result<Self, SpecError> {
        let s = &spec.surface;
        let d = &spec.domain;
        let surface = ParametricSurface::parse([&s.x, &s.y, &s.z, &s.t].map(String::as_str), [d.u, d.v, d.w])?;
        let implicit = spec
            .implicit
            .as_deref()
            .map(|text| Expr::parse(text, Mode::Implicit).map_err(SpecError::Implicit))
            .transpose()?;
        if spec.samples.iter().any(|&n| n < 2) {
            return Err(SpecError::Samples(spec.samples));
        }
        let eps_k = positive("eps_k", spec.eps_k)?;
        let eps_reg = positive("eps_reg", spec.eps_reg)?.unwrap_or(DEFAULT_EPS_REG);
        Ok(Analyzer {
            surface,
            implicit,
            samples: spec.samples,
            eps_k,
            eps_reg,
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, SpecError> {
        Self::from_spec(&SurfaceSpec::load(path)?)
    }

    /// Override thresholds (command-line flags take precedence over the file).
    pub fn with_overrides(mut self, eps_k: Option<f64>, eps_reg: Option<f64>) -> Result<Self, SpecError> {
        if let Some(k) = positive("eps_k", eps_k)? {
            self.eps_k = Some(k);
        }
        if let Some(r) = positive("eps_reg", eps_reg)? {
            self.eps_reg = r;
        }
        Ok(self)
    }

    pub fn frame(&self, p: [f64; 3]) -> Result<FrameData, PointError> {
        Ok(frame_at(&self.surface, p, self.eps_reg)?)
    }

    /// Full pipeline at one point. The domain box only bounds the grid;
    /// points outside it are evaluated all the same.
    pub fn analyze_point(&self, p: [f64; 3]) -> Result<PointReport, PointError> {
        let frame = self.frame(p)?;
        let shape = analyze(&frame, self.eps_k)?;
        let implicit = match &self.implicit {
            Some(f) => Some(implicit_normal(f, frame.position)?.0),
            None => None,
        };
        Ok(PointReport::build(&frame, &shape, implicit)?)
    }

    /// Sample lattice with inclusive endpoints, `w` fastest.
    pub fn grid_points(&self) -> Vec<[f64; 3]> {
        let domain = self.surface.domain();
        let axis = |a: usize| -> Vec<f64> {
            let n = self.samples[a].max(2);
            let [lo, hi] = domain[a];
            (0..n)
                .map(|i| {
                    if i == n - 1 {
                        hi
                    } else {
                        lo + (hi - lo) * f64::from(i) / f64::from(n - 1)
                    }
                })
                .collect()
        };
        let (us, vs, ws) = (axis(0), axis(1), axis(2));
        let mut out = Vec::with_capacity(us.len() * vs.len() * ws.len());
        for &u in &us {
            for &v in &vs {
                for &w in &ws {
                    out.push([u, v, w]);
                }
            }
        }
        out
    }

    /// Evaluate every grid point. Rows come back in traversal order
    /// regardless of how the work was scheduled.
    pub fn run_grid(&self) -> Vec<GridRow> {
        self.grid_points()
            .into_par_iter()
            .map(|point| GridRow {
                point,
                outcome: self.analyze_point(point),
            })
            .collect()
    }

    /// Sample the grid and measure every identity.
    pub fn run_check(&self) -> CheckReport {
        let points = self.grid_points();
        let samples: Vec<Result<PointChecks, PointError>> = points.par_iter().map(|&p| self.check_point(p)).collect();
        let mut report = CheckReport::new(points.len());
        for s in samples {
            match s {
                Ok(c) => report.absorb(&c),
                Err(e) if e.is_singular() => report.singular += 1,
                Err(_) => report.errors += 1,
            }
        }
        report
    }

    fn check_point(&self, p: [f64; 3]) -> Result<PointChecks, PointError> {
        let f = self.frame(p)?;
        let shape = analyze(&f, self.eps_k)?;
        Ok(PointChecks::measure(&f, &shape)?)
    }
}

/// Per-point residuals, each already divided by its scale.
#[derive(Clone, Debug, Default)]
struct PointChecks {
    values: [Option<f64>; IDENTITIES.len()],
}

const IDENTITIES: [(&str, f64); 8] = [
    ("norm identity (Gram determinant)", thresholds::NORM_IDENTITY),
    ("normal orthogonality", thresholds::ORTHOGONALITY),
    ("cramer vs pivoted solve", thresholds::CRAMER_VS_SOLVE),
    ("frame vs orthonormal path", thresholds::PATH_AGREEMENT),
    ("orthogonal closed form", thresholds::PATH_AGREEMENT),
    ("similarity invariants", thresholds::SIMILARITY),
    ("ternary identities", thresholds::TERNARY),
    ("cayley-hamilton", thresholds::CAYLEY_HAMILTON),
];

/// Triples of frame coordinates used for the ternary identities.
const TRIPLES: [[[f64; 3]; 3]; 2] = [
    [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
    [[1.0, 2.0, -1.0], [0.0, 1.0, 3.0], [2.0, -1.0, 1.0]],
];

impl PointChecks {
    fn measure(f: &FrameData, shape: &ShapeResult) -> Result<Self, WeingartenError> {
        let mut values = [None; IDENTITIES.len()];

        let t2 = f.ternary.norm_squared();
        values[0] = Some((f.delta - t2).abs() / f.delta);

        let ortho = f.frame.iter().map(|v| f.normal.dot(v).abs()).fold(0.0, f64::max);
        values[1] = Some(ortho / f.max_frame_norm());

        let a = shape.s_frame;
        let solved = shape_operator_solve(f)?;
        values[2] = Some((a - solved).max_abs() / a.max_abs().max(1.0));

        let s = shape.s_ortho.to_mat3();
        let s_norm = shape.s_ortho.frobenius_norm();
        let conj = frame_to_orthonormal(f, &a)?;
        values[3] = Some((conj - s).max_abs() / s_norm.max(1.0));

        if f.is_orthogonal(ORTHOGONAL_TOL) {
            let closed = shape_operator_orthogonal(f)?.to_mat3();
            values[4] = Some((conj - closed).max_abs() / s_norm.max(1.0));
        }

        values[5] = Some(similarity_residual(&a, &s));

        let mut worst: f64 = 0.0;
        for [x, y, z] in TRIPLES {
            worst = worst.max(verify_ternary_identities(f, &a, x, y, z)?.max_relative());
        }
        values[6] = Some(worst);

        if let Ok(r) = shape.cayley_hamilton() {
            values[7] = Some(r / s_norm.powi(3));
        }
        Ok(PointChecks { values })
    }
}

/// Largest relative mismatch between the characteristic polynomial
/// coefficients (trace, second invariant, determinant) of two matrices.
pub fn similarity_residual(a: &Mat3, b: &Mat3) -> f64 {
    let n = a.frobenius_norm().max(b.frobenius_norm()).max(1.0);
    let d1 = (a.trace() - b.trace()).abs() / n;
    let d2 = (a.principal_minor_sum() - b.principal_minor_sum()).abs() / (n * n);
    let d3 = (a.det() - b.det()).abs() / (n * n * n);
    d1.max(d2).max(d3)
}

/// Maximum residual of one identity across the grid.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub threshold: f64,
    /// Points where the identity applies.
    pub evaluated: usize,
    pub max_residual: Option<f64>,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        self.max_residual.is_none_or(|r| r <= self.threshold)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub points: usize,
    pub regular: usize,
    pub singular: usize,
    pub errors: usize,
    pub identities: Vec<IdentityCheck>,
}

impl CheckReport {
    fn new(points: usize) -> Self {
        CheckReport {
            points,
            regular: 0,
            singular: 0,
            errors: 0,
            identities: IDENTITIES
                .iter()
                .map(|&(name, threshold)| IdentityCheck {
                    name,
                    threshold,
                    evaluated: 0,
                    max_residual: None,
                })
                .collect(),
        }
    }

    fn absorb(&mut self, c: &PointChecks) {
        self.regular += 1;
        for (check, value) in self.identities.iter_mut().zip(c.values) {
            if let Some(v) = value {
                check.evaluated += 1;
                let worst = check
                    .max_residual
                    .map_or(v, |m| if v > m || v.is_nan() { v } else { m });
                check.max_residual = Some(worst);
            }
        }
    }

    /// All identities within threshold and at least one regular point.
    pub fn passed(&self) -> bool {
        self.regular > 0 && self.errors == 0 && self.identities.iter().all(IdentityCheck::passed)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "points: {} (regular {}, singular {}, errors {})",
            self.points, self.regular, self.singular, self.errors
        )?;
        for c in &self.identities {
            let verdict = if !c.passed() {
                "FAIL"
            } else if c.max_residual.is_none() {
                "n/a"
            } else {
                "pass"
            };
            let residual = c.max_residual.map_or_else(|| "n/a".to_string(), |r| format!("{r:.3e}"));
            writeln!(
                f,
                "{verdict:>4}  {:<34} max {residual:>10}  threshold {:.0e}  ({} points)",
                c.name, c.threshold, c.evaluated
            )?;
        }
        write!(
            f,
            "{}",
            if self.passed() {
                "all checks passed"
            } else {
                "checks FAILED"
            }
        )
    }
}
