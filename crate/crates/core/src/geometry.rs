//! Local frame of a parametric hypersurface `φ(u, v, w) ∈ E⁴`.
//!
//! One jet evaluation per coordinate function yields `φ`, the tangent frame
//! `φ_u, φ_v, φ_w` and all six second partials. From these [`frame_at`]
//! builds the Gram matrix `G`, the unit normal `N = φ_u ⊗ φ_v ⊗ φ_w / |·|`
//! and the second-form matrix `B` with `B_ij = -<φ_ij, N>`.
//!
//! The normal keeps the orientation the ternary product gives it; it is
//! never flipped.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::{EvalError, Expr, Mode, ParseError};
use crate::jet::{Jet2, Jet2x4};
use crate::matrix::Sym3;
use crate::vec4::{dot, ternary, Vec4};

/// Default relative regularity threshold: a point is singular when
/// `Δ ≤ eps_reg · (|φ_u| |φ_v| |φ_w|)²`.
pub const DEFAULT_EPS_REG: f64 = 1e-12;

/// Gradient magnitudes at or below this are treated as zero.
pub const ZERO_GRADIENT: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("frame is not regular at ({u}, {v}, {w}): gram determinant {delta:e} ≤ threshold {threshold:e}")]
    NotRegular {
        u: f64,
        v: f64,
        w: f64,
        delta: f64,
        threshold: f64,
    },
    #[error("gradient vanishes at {0}")]
    ZeroGradient(Vec4),
    #[error("coordinate {coordinate}: {source}")]
    Eval {
        coordinate: usize,
        #[source]
        source: EvalError,
    },
    #[error("coordinate {coordinate}: {source}")]
    Parse {
        coordinate: usize,
        #[source]
        source: ParseError,
    },
    #[error("expression must be in {expected:?} mode")]
    WrongMode { expected: Mode },
    #[error("invalid domain on axis {axis}: [{lo}, {hi}]")]
    InvalidDomain { axis: usize, lo: f64, hi: f64 },
    #[error("non-finite value at ({u}, {v}, {w})")]
    NonFinite { u: f64, v: f64, w: f64 },
}

/// A hypersurface given by four coordinate functions of `(u, v, w)` over
/// an inclusive parameter box.
#[derive(Clone, Debug, PartialEq)]
pub struct ParametricSurface {
    coords: [Expr; 4],
    domain: [[f64; 2]; 3],
}

impl ParametricSurface {
    pub fn new(coords: [Expr; 4], domain: [[f64; 2]; 3]) -> Result<Self, GeometryError> {
        if coords.iter().any(|e| e.mode() == Some(Mode::Implicit)) {
            return Err(GeometryError::WrongMode {
                expected: Mode::Parametric,
            });
        }
        for (axis, &[lo, hi]) in domain.iter().enumerate() {
            if !(lo <= hi) || !lo.is_finite() || !hi.is_finite() {
                return Err(GeometryError::InvalidDomain { axis, lo, hi });
            }
        }
        Ok(ParametricSurface { coords, domain })
    }

    /// Parse four coordinate expressions in parametric mode.
    pub fn parse(coords: [&str; 4], domain: [[f64; 2]; 3]) -> Result<Self, GeometryError> {
        let mut exprs = Vec::with_capacity(4);
        for (coordinate, text) in coords.iter().enumerate() {
            let e =
                Expr::parse(text, Mode::Parametric).map_err(|source| GeometryError::Parse { coordinate, source })?;
            exprs.push(e);
        }
        let coords: [Expr; 4] = exprs.try_into().expect("four coordinates");
        Self::new(coords, domain)
    }

    /// Same coordinate functions over an unbounded parameter box.
    pub fn parse_unbounded(coords: [&str; 4]) -> Result<Self, GeometryError> {
        let all = [f64::MIN, f64::MAX];
        Self::parse(coords, [all; 3])
    }

    pub fn coords(&self) -> &[Expr; 4] {
        &self.coords
    }

    pub fn domain(&self) -> [[f64; 2]; 3] {
        self.domain
    }

    pub fn contains(&self, p: [f64; 3]) -> bool {
        p.iter().zip(&self.domain).all(|(x, [lo, hi])| lo <= x && x <= hi)
    }

    /// `φ(p)` without derivatives.
    pub fn position(&self, p: [f64; 3]) -> Result<Vec4, GeometryError> {
        let mut out = [0.0; 4];
        for (i, e) in self.coords.iter().enumerate() {
            out[i] = e
                .eval_scalar(&p)
                .map_err(|source| GeometryError::Eval { coordinate: i, source })?;
        }
        Ok(Vec4(out))
    }

    /// All four coordinates as jets seeded at `p`.
    pub fn jets(&self, p: [f64; 3]) -> Result<[Jet2; 4], GeometryError> {
        let seeds = Jet2::seeds(p);
        let mut out = [Jet2::constant(0.0); 4];
        for (i, e) in self.coords.iter().enumerate() {
            out[i] = e
                .eval_jet(&seeds)
                .map_err(|source| GeometryError::Eval { coordinate: i, source })?;
        }
        Ok(out)
    }
}

/// Everything about the surface at one parameter point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameData {
    pub point: [f64; 3],
    pub position: Vec4,
    /// `φ_u, φ_v, φ_w`.
    pub frame: [Vec4; 3],
    /// Second partials in order `uu, uv, uw, vv, vw, ww`.
    pub second: [Vec4; 6],
    /// Gram matrix `G_ij = <φ_i, φ_j>`.
    pub gram: Sym3,
    /// `det G`.
    pub delta: f64,
    /// Unit normal.
    pub normal: Vec4,
    /// Unnormalized normal `φ_u ⊗ φ_v ⊗ φ_w`.
    pub ternary: Vec4,
    /// `B_ij = -<φ_ij, N>`.
    pub second_form: Sym3,
}

impl FrameData {
    /// `φ_ij` for `i, j` in `0..3`.
    pub fn second_partial(&self, i: usize, j: usize) -> Vec4 {
        self.second[Jet2::hess_index(i, j)]
    }

    /// Ambient vector with frame coordinates `c`.
    pub fn tangent(&self, c: [f64; 3]) -> Vec4 {
        self.frame[0] * c[0] + self.frame[1] * c[1] + self.frame[2] * c[2]
    }

    /// Product of the frame vector lengths.
    pub fn norm_product(&self) -> f64 {
        self.frame.iter().map(Vec4::norm).product()
    }

    /// Largest frame vector length.
    pub fn max_frame_norm(&self) -> f64 {
        self.frame.iter().map(Vec4::norm).fold(0.0, f64::max)
    }

    /// True when every off-diagonal Gram entry satisfies
    /// `|G_ij| ≤ tol · |φ_i| |φ_j|`.
    pub fn is_orthogonal(&self, tol: f64) -> bool {
        [(0, 1), (0, 2), (1, 2)]
            .iter()
            .all(|&(i, j)| self.gram.get(i, j).abs() <= tol * (self.gram.get(i, i) * self.gram.get(j, j)).sqrt())
    }
}

/// Evaluate the local frame at `p`.
///
/// Fails with [`GeometryError::NotRegular`] when
/// `Δ ≤ eps_reg · (|φ_u| |φ_v| |φ_w|)²`, i.e. the Jacobian has rank below 3.
pub fn frame_at(surface: &ParametricSurface, p: [f64; 3], eps_reg: f64) -> Result<FrameData, GeometryError> {
    let jets = surface.jets(p)?;
    let position = Vec4(jets.map(|j| j.val));
    let frame: [Vec4; 3] = std::array::from_fn(|a| Vec4(jets.map(|j| j.grad[a])));
    let second: [Vec4; 6] = std::array::from_fn(|k| Vec4(jets.map(|j| j.hess[k])));

    let gram = Sym3::from_fn(|i, j| dot(frame[i], frame[j]));
    let delta = gram.det();
    let scale = gram.get(0, 0) * gram.get(1, 1) * gram.get(2, 2);
    let [u, v, w] = p;
    if !(delta.is_finite() && scale.is_finite()) || !position.is_finite() {
        return Err(GeometryError::NonFinite { u, v, w });
    }
    let threshold = eps_reg * scale;
    if delta <= threshold {
        return Err(GeometryError::NotRegular {
            u,
            v,
            w,
            delta,
            threshold,
        });
    }

    let t = ternary(frame[0], frame[1], frame[2]);
    let normal = t * (1.0 / t.norm());
    let second_form = Sym3::from_fn(|i, j| -dot(second[Jet2::hess_index(i, j)], normal));

    Ok(FrameData {
        point: p,
        position,
        frame,
        second,
        gram,
        delta,
        normal,
        ternary: t,
        second_form,
    })
}

/// Unit normal `∇f / |∇f|` of the level set of an implicit-mode expression.
pub fn implicit_normal(f: &Expr, point: Vec4) -> Result<Vec4, GeometryError> {
    if f.mode() == Some(Mode::Parametric) {
        return Err(GeometryError::WrongMode {
            expected: Mode::Implicit,
        });
    }
    let seeds = Jet2x4::seeds(point.0);
    let j = f
        .eval(&seeds)
        .map_err(|source| GeometryError::Eval { coordinate: 0, source })?;
    let grad = Vec4(j.grad);
    let n = grad.norm();
    if !(n > ZERO_GRADIENT) {
        return Err(GeometryError::ZeroGradient(point));
    }
    Ok(grad * (1.0 / n))
}
