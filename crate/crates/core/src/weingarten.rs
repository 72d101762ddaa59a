//! The Weingarten map (shape operator) `S(X) = D_X N` and everything derived
//! from it.
//!
//! Sign convention: no leading minus. `S(φ_j) = ∂N/∂j`, and with
//! `<N, φ_i> = 0` this gives `<S(φ_j), φ_i> = -<N, φ_ij> = B_ij`. Many
//! textbooks define the shape operator as `-dN`; results here have the
//! opposite sign to those. With the normal orientation of
//! [`frame_at`](crate::geometry::frame_at), the unit hypersphere
//! parametrized by angles gets the inward normal and so `S = -I`.
//!
//! In the frame basis `{φ_u, φ_v, φ_w}` the matrix `A = (a_ij)` solves
//! `G A = B`, column by column. It is not symmetric unless the frame is
//! orthogonal. In an orthonormal basis obtained by Gram–Schmidt
//! (`G = LᵀL`), the same operator is the symmetric matrix `L⁻ᵀ B L⁻¹`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::{classify_point, Classification};
use crate::geometry::FrameData;
use crate::matrix::{det3, Mat3, Sym3};
use crate::vec4::{gram_det, ternary, Vec4};

/// Frames with `|G_ij| ≤ ORTHOGONAL_TOL · |φ_i| |φ_j|` count as orthogonal.
pub const ORTHOGONAL_TOL: f64 = 1e-10;

/// Jacobi stops once the off-diagonal norm drops below this times `|S|`.
pub const JACOBI_TOL: f64 = 1e-13;

pub const JACOBI_MAX_SWEEPS: usize = 30;

/// Relative threshold for linear dependence of a tangent triple.
pub const DEPENDENT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WeingartenError {
    #[error("frame is not regular (gram determinant {0:e})")]
    NotRegular(f64),
    #[error("frame is not orthogonal")]
    FrameNotOrthogonal,
    #[error("jacobi iteration did not converge in {0} sweeps")]
    NoConvergence(usize),
    #[error("principal curvature {0:e} is zero within {1:e}; harmonic mean undefined")]
    ZeroPrincipalCurvature(f64, f64),
    #[error("fundamental form order {0} is not in 1..=4")]
    InvalidFormOrder(u32),
    #[error("tangent vectors are linearly dependent")]
    DependentTriple,
}

/// Zero-curvature threshold used when none is configured:
/// `1e-8 · max(1, max |k_i|)`.
pub fn default_eps_k(k: &[f64; 3]) -> f64 {
    1e-8 * k.iter().fold(1.0_f64, |m, x| m.max(x.abs()))
}

fn require_regular(f: &FrameData) -> Result<(), WeingartenError> {
    if f.delta > 0.0 && f.delta.is_finite() {
        Ok(())
    } else {
        Err(WeingartenError::NotRegular(f.delta))
    }
}

/// Frame-basis matrix by Cramer's rule: nine determinant ratios, each with
/// one column of `G` replaced by a column of `B`.
pub fn shape_operator_cramer(f: &FrameData) -> Result<Mat3, WeingartenError> {
    require_regular(f)?;
    let g = f.gram.to_mat3();
    let b = f.second_form.to_mat3();
    let delta = g.det();
    if !(delta > 0.0) {
        return Err(WeingartenError::NotRegular(delta));
    }
    let mut a = Mat3::ZERO;
    for j in 0..3 {
        let rhs = b.column(j);
        for k in 0..3 {
            let rows: [[f64; 3]; 3] = std::array::from_fn(|i| {
                let mut r = g.0[i];
                r[k] = rhs[i];
                r
            });
            a.0[k][j] = det3(rows[0], rows[1], rows[2]) / delta;
        }
    }
    Ok(a)
}

/// Frame-basis matrix `G⁻¹B` by Gaussian elimination with partial pivoting.
pub fn shape_operator_solve(f: &FrameData) -> Result<Mat3, WeingartenError> {
    require_regular(f)?;
    let mut m = f.gram.to_mat3().0;
    let mut rhs = f.second_form.to_mat3().0;
    for col in 0..3 {
        let pivot = (col..3)
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
            .expect("non-empty range");
        if m[pivot][col] == 0.0 {
            return Err(WeingartenError::NotRegular(f.delta));
        }
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        for row in col + 1..3 {
            let factor = m[row][col] / m[col][col];
            for k in col..3 {
                m[row][k] -= factor * m[col][k];
            }
            for k in 0..3 {
                rhs[row][k] -= factor * rhs[col][k];
            }
        }
    }
    let mut x = [[0.0; 3]; 3];
    for row in (0..3).rev() {
        for k in 0..3 {
            let s: f64 = (row + 1..3).map(|c| m[row][c] * x[c][k]).sum();
            x[row][k] = (rhs[row][k] - s) / m[row][row];
        }
    }
    Ok(Mat3(x))
}

/// The Weingarten matrix `(a_ij)` with respect to `{φ_u, φ_v, φ_w}`.
pub fn shape_operator_general(f: &FrameData) -> Result<Mat3, WeingartenError> {
    shape_operator_cramer(f)
}

/// Closed form for an orthogonal frame: `B_ii / G_ii` on the diagonal and
/// `B_ij / sqrt(G_ii G_jj)` off it.
pub fn shape_operator_orthogonal(f: &FrameData) -> Result<Sym3, WeingartenError> {
    require_regular(f)?;
    if !f.is_orthogonal(ORTHOGONAL_TOL) {
        return Err(WeingartenError::FrameNotOrthogonal);
    }
    let (g, b) = (&f.gram, &f.second_form);
    Ok(Sym3::from_fn(|i, j| {
        if i == j {
            b.get(i, i) / g.get(i, i)
        } else {
            b.get(i, j) / (g.get(i, i) * g.get(j, j)).sqrt()
        }
    }))
}

/// Upper-triangular `L` with `G = LᵀL`.
pub fn cholesky_upper(g: &Sym3) -> Option<Mat3> {
    let mut l = Mat3::ZERO;
    for i in 0..3 {
        let d = g.get(i, i) - (0..i).map(|k| l.0[k][i] * l.0[k][i]).sum::<f64>();
        if !(d > 0.0) {
            return None;
        }
        l.0[i][i] = d.sqrt();
        for j in i + 1..3 {
            let s = g.get(i, j) - (0..i).map(|k| l.0[k][i] * l.0[k][j]).sum::<f64>();
            l.0[i][j] = s / l.0[i][i];
        }
    }
    Some(l)
}

fn upper_inverse(l: &Mat3) -> Mat3 {
    let m = &l.0;
    let mut inv = Mat3::ZERO;
    for i in 0..3 {
        inv.0[i][i] = 1.0 / m[i][i];
    }
    inv.0[0][1] = -m[0][1] * inv.0[1][1] / m[0][0];
    inv.0[1][2] = -m[1][2] * inv.0[2][2] / m[1][1];
    inv.0[0][2] = -(m[0][1] * inv.0[1][2] + m[0][2] * inv.0[2][2]) / m[0][0];
    inv
}

/// Gram–Schmidt orthonormal tangent basis `E = [φ_u φ_v φ_w] L⁻¹` together
/// with `L` and `L⁻¹`.
fn orthonormal_basis(f: &FrameData) -> Result<([Vec4; 3], Mat3, Mat3), WeingartenError> {
    require_regular(f)?;
    let l = cholesky_upper(&f.gram).ok_or(WeingartenError::NotRegular(f.delta))?;
    let inv = upper_inverse(&l);
    let basis = std::array::from_fn(|j| f.tangent(inv.column(j)));
    Ok((basis, l, inv))
}

/// Symmetric Weingarten matrix in the Gram–Schmidt orthonormal basis of the
/// frame, `L⁻ᵀ B L⁻¹`, and that basis. For an orthogonal frame this is the
/// closed form of [`shape_operator_orthogonal`].
pub fn shape_operator_orthonormal(f: &FrameData) -> Result<(Sym3, [Vec4; 3]), WeingartenError> {
    let (basis, _, inv) = orthonormal_basis(f)?;
    let full = inv.transpose() * f.second_form.to_mat3() * inv;
    Ok((full.symmetric_part(), basis))
}

/// Re-express a frame-basis matrix in the orthonormal basis: `L A L⁻¹`.
pub fn frame_to_orthonormal(f: &FrameData, a: &Mat3) -> Result<Mat3, WeingartenError> {
    let (_, l, inv) = orthonormal_basis(f)?;
    Ok(l * *a * inv)
}

/// `(K, H) = (det S, tr S / 3)`.
pub fn curvatures(s: &Mat3) -> (f64, f64) {
    (s.det(), s.trace() / 3.0)
}

/// `K` and `H` written out in the second-form and Gram entries. Valid for
/// orthogonal frames only; kept separate from [`curvatures`] as an
/// independent route to the same numbers.
pub fn curvatures_explicit(f: &FrameData) -> (f64, f64) {
    let [b11, b12, b13, b22, b23, b33] = f.second_form.0;
    let (g11, g22, g33) = (f.gram.get(0, 0), f.gram.get(1, 1), f.gram.get(2, 2));
    let k = (b11 * b22 * b33 + 2.0 * b12 * b13 * b23 - b12 * b12 * b33 - b13 * b13 * b22 - b23 * b23 * b11)
        / (g11 * g22 * g33);
    let h = (b11 / g11 + b22 / g22 + b33 / g33) / 3.0;
    (k, h)
}

/// Eigen-decomposition of a symmetric 3×3 matrix.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymmetricEigen {
    /// Descending.
    pub values: [f64; 3],
    /// `vectors[i]` is the unit eigenvector for `values[i]`.
    pub vectors: [[f64; 3]; 3],
    pub sweeps: usize,
}

/// Cyclic Jacobi rotations.
pub fn jacobi_eigen(s: &Sym3) -> Result<SymmetricEigen, WeingartenError> {
    let norm = s.frobenius_norm();
    let mut a = s.to_mat3().0;
    let mut v = Mat3::IDENTITY.0;
    let off = |a: &[[f64; 3]; 3]| (2.0 * (a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2])).sqrt();
    let mut sweeps = 0;
    while off(&a) > JACOBI_TOL * norm || !norm.is_finite() {
        if sweeps == JACOBI_MAX_SWEEPS || !norm.is_finite() {
            return Err(WeingartenError::NoConvergence(sweeps));
        }
        sweeps += 1;
        for (p, q) in [(0, 1), (0, 2), (1, 2)] {
            let apq = a[p][q];
            if apq == 0.0 {
                continue;
            }
            let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
            let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
            let c = 1.0 / (t * t + 1.0).sqrt();
            let sn = t * c;
            a[p][p] -= t * apq;
            a[q][q] += t * apq;
            a[p][q] = 0.0;
            a[q][p] = 0.0;
            let r = 3 - p - q;
            let (g, h) = (a[r][p], a[r][q]);
            a[r][p] = c * g - sn * h;
            a[p][r] = a[r][p];
            a[r][q] = sn * g + c * h;
            a[q][r] = a[r][q];
            for row in v.iter_mut() {
                let (g, h) = (row[p], row[q]);
                row[p] = c * g - sn * h;
                row[q] = sn * g + c * h;
            }
        }
    }
    let mut order = [0, 1, 2];
    order.sort_by(|&i, &j| a[j][j].total_cmp(&a[i][i]));
    Ok(SymmetricEigen {
        values: order.map(|i| a[i][i]),
        vectors: order.map(|i| [v[0][i], v[1][i], v[2][i]]),
        sweeps,
    })
}

/// Principal curvatures `k1 ≥ k2 ≥ k3`: eigenvalues of the symmetric matrix.
pub fn principal_curvatures(s_ortho: &Sym3) -> Result<[f64; 3], WeingartenError> {
    jacobi_eigen(s_ortho).map(|e| e.values)
}

/// `I^q(X, Y) = <S^{q-1} X, Y> = Yᵀ G A^{q-1} X`, with `X`, `Y` in frame
/// coordinates and `A` the frame-basis Weingarten matrix.
pub fn fundamental_form(
    q: u32,
    f: &FrameData,
    s_frame: &Mat3,
    x: [f64; 3],
    y: [f64; 3],
) -> Result<f64, WeingartenError> {
    if !(1..=4).contains(&q) {
        return Err(WeingartenError::InvalidFormOrder(q));
    }
    let mut sx = x;
    for _ in 1..q {
        sx = s_frame.mul_vec(sx);
    }
    let gsx = f.gram.to_mat3().mul_vec(sx);
    Ok(y[0] * gsx[0] + y[1] * gsx[1] + y[2] * gsx[2])
}

/// Residuals of the two ternary-product identities for a tangent triple.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TernaryResiduals {
    /// `|SX ⊗ SY ⊗ SZ − K X ⊗ Y ⊗ Z|`.
    pub product: f64,
    /// `|SX⊗Y⊗Z + X⊗SY⊗Z + X⊗Y⊗SZ − 3H X⊗Y⊗Z|`.
    pub sum: f64,
    /// `Π max(|V|, |SV|)` over `V = X, Y, Z`; bounds every term above.
    pub scale: f64,
}

impl TernaryResiduals {
    pub fn max_relative(&self) -> f64 {
        if self.scale == 0.0 {
            self.product.max(self.sum)
        } else {
            self.product.max(self.sum) / self.scale
        }
    }
}

pub fn verify_ternary_identities(
    f: &FrameData,
    s_frame: &Mat3,
    x: [f64; 3],
    y: [f64; 3],
    z: [f64; 3],
) -> Result<TernaryResiduals, WeingartenError> {
    let [xv, yv, zv] = [x, y, z].map(|c| f.tangent(c));
    let [sx, sy, sz] = [x, y, z].map(|c| f.tangent(s_frame.mul_vec(c)));
    let lengths = xv.norm() * yv.norm() * zv.norm();
    if !(gram_det(xv, yv, zv) > DEPENDENT_TOL * lengths * lengths) {
        return Err(WeingartenError::DependentTriple);
    }
    let (k, h) = curvatures(s_frame);
    let base = ternary(xv, yv, zv);
    let product = (ternary(sx, sy, sz) - base * k).norm();
    let sum = (ternary(sx, yv, zv) + ternary(xv, sy, zv) + ternary(xv, yv, sz) - base * (3.0 * h)).norm();
    let scale = [(xv, sx), (yv, sy), (zv, sz)]
        .iter()
        .map(|(v, sv)| v.norm().max(sv.norm()))
        .product();
    Ok(TernaryResiduals { product, sum, scale })
}

/// Frobenius norm of `S³ − 3H S² + (3K/h) S − K I`, where
/// `h = 3 / (1/k1 + 1/k2 + 1/k3)` is the harmonic mean of the principal
/// curvatures. Requires every `|k_i| > eps_k`.
pub fn cayley_hamilton_residual(
    s_ortho: &Sym3,
    gaussian: f64,
    mean: f64,
    k: [f64; 3],
    eps_k: f64,
) -> Result<f64, WeingartenError> {
    if let Some(&small) = k.iter().find(|x| !(x.abs() > eps_k)) {
        return Err(WeingartenError::ZeroPrincipalCurvature(small, eps_k));
    }
    let h = 3.0 / (1.0 / k[0] + 1.0 / k[1] + 1.0 / k[2]);
    let s = s_ortho.to_mat3();
    let s2 = s * s;
    let s3 = s2 * s;
    let r = s3 - s2.scale(3.0 * mean) + s.scale(3.0 * gaussian / h) - Mat3::IDENTITY.scale(gaussian);
    Ok(r.frobenius_norm())
}

/// Full shape analysis at one point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShapeResult {
    /// `(a_ij)` with respect to `{φ_u, φ_v, φ_w}`.
    pub s_frame: Mat3,
    /// Same operator in the orthonormal `basis`.
    pub s_ortho: Sym3,
    pub basis: [Vec4; 3],
    pub gaussian: f64,
    pub mean: f64,
    /// Principal curvatures, descending.
    pub principal: [f64; 3],
    /// Unit principal directions, matching `principal`.
    pub directions: [Vec4; 3],
    pub eps_k: f64,
    pub classification: Classification,
}

/// Run the whole pipeline on a regular frame. `eps_k = None` uses
/// [`default_eps_k`].
pub fn analyze(f: &FrameData, eps_k: Option<f64>) -> Result<ShapeResult, WeingartenError> {
    let s_frame = shape_operator_general(f)?;
    let (s_ortho, basis) = shape_operator_orthonormal(f)?;
    let (gaussian, mean) = curvatures(&s_frame);
    let eigen = jacobi_eigen(&s_ortho)?;
    let principal = eigen.values;
    let directions = eigen
        .vectors
        .map(|c| basis[0] * c[0] + basis[1] * c[1] + basis[2] * c[2]);
    let eps_k = eps_k.unwrap_or_else(|| default_eps_k(&principal));
    Ok(ShapeResult {
        s_frame,
        s_ortho,
        basis,
        gaussian,
        mean,
        principal,
        directions,
        eps_k,
        classification: classify_point(principal, eps_k),
    })
}

impl ShapeResult {
    /// Cayley–Hamilton residual for this point, if every principal
    /// curvature is nonzero.
    pub fn cayley_hamilton(&self) -> Result<f64, WeingartenError> {
        cayley_hamilton_residual(&self.s_ortho, self.gaussian, self.mean, self.principal, self.eps_k)
    }
}
