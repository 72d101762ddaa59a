//! Small 3×3 matrices: a symmetric type with six stored entries and a
//! general row-major type.

use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

/// Symmetric 3×3 matrix. Entries are stored once, in the order
/// `11, 12, 13, 22, 23, 33`, so `get(i, j) == get(j, i)` holds exactly.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Sym3(pub [f64; 6]);

#[inline]
const fn sym_index(i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    // 0,0→0 0,1→1 0,2→2 1,1→3 1,2→4 2,2→5
    i * 3 - i * (i + 1) / 2 + j
}

impl Sym3 {
    pub const ZERO: Sym3 = Sym3([0.0; 6]);
    pub const IDENTITY: Sym3 = Sym3([1.0, 0.0, 0.0, 1.0, 0.0, 1.0]);

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> f64) -> Self {
        Sym3([f(0, 0), f(0, 1), f(0, 2), f(1, 1), f(1, 2), f(2, 2)])
    }

    pub fn diagonal(d: [f64; 3]) -> Self {
        Sym3([d[0], 0.0, 0.0, d[1], 0.0, d[2]])
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[sym_index(i, j)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.0[sym_index(i, j)] = value;
    }

    /// Stored entries in order `11, 12, 13, 22, 23, 33`.
    pub fn entries(&self) -> [f64; 6] {
        self.0
    }

    pub fn to_mat3(&self) -> Mat3 {
        Mat3::from_fn(|i, j| self.get(i, j))
    }

    pub fn det(&self) -> f64 {
        let [a, b, c, d, e, f] = self.0;
        a * (d * f - e * e) - b * (b * f - e * c) + c * (b * e - d * c)
    }

    pub fn trace(&self) -> f64 {
        self.0[0] + self.0[3] + self.0[5]
    }

    pub fn frobenius_norm(&self) -> f64 {
        let [a, b, c, d, e, f] = self.0;
        (a * a + d * d + f * f + 2.0 * (b * b + c * c + e * e)).sqrt()
    }

    /// Largest off-diagonal magnitude.
    pub fn max_off_diagonal(&self) -> f64 {
        self.0[1].abs().max(self.0[2].abs()).max(self.0[4].abs())
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }
}

/// General 3×3 matrix, row-major: `m[i][j]` is row `i`, column `j`.
///
/// As a shape operator matrix, column `j` holds the coordinates of the image
/// of the `j`-th frame vector in the frame basis.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Mat3(pub [[f64; 3]; 3]);

impl Mat3 {
    pub const ZERO: Mat3 = Mat3([[0.0; 3]; 3]);
    pub const IDENTITY: Mat3 = Mat3([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> f64) -> Self {
        Mat3(std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))))
    }

    pub fn from_columns(cols: [[f64; 3]; 3]) -> Self {
        Mat3::from_fn(|i, j| cols[j][i])
    }

    pub fn diagonal(d: [f64; 3]) -> Self {
        Mat3::from_fn(|i, j| if i == j { d[i] } else { 0.0 })
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[i][j]
    }

    pub fn column(&self, j: usize) -> [f64; 3] {
        [self.0[0][j], self.0[1][j], self.0[2][j]]
    }

    pub fn transpose(&self) -> Mat3 {
        Mat3::from_fn(|i, j| self.0[j][i])
    }

    pub fn det(&self) -> f64 {
        det3(self.0[0], self.0[1], self.0[2])
    }

    pub fn trace(&self) -> f64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    /// Sum of the three principal 2×2 minors (second invariant).
    pub fn principal_minor_sum(&self) -> f64 {
        let m = &self.0;
        (m[0][0] * m[1][1] - m[0][1] * m[1][0])
            + (m[0][0] * m[2][2] - m[0][2] * m[2][0])
            + (m[1][1] * m[2][2] - m[1][2] * m[2][1])
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.iter().flatten().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    pub fn mul_vec(&self, v: [f64; 3]) -> [f64; 3] {
        std::array::from_fn(|i| self.0[i][0] * v[0] + self.0[i][1] * v[1] + self.0[i][2] * v[2])
    }

    pub fn scale(&self, s: f64) -> Mat3 {
        Mat3::from_fn(|i, j| self.0[i][j] * s)
    }

    /// Symmetric part `(M + Mᵀ)/2` as a [`Sym3`].
    pub fn symmetric_part(&self) -> Sym3 {
        Sym3::from_fn(|i, j| 0.5 * (self.0[i][j] + self.0[j][i]))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|x| x.is_finite())
    }
}

impl Mul for Mat3 {
    type Output = Mat3;

    fn mul(self, rhs: Mat3) -> Mat3 {
        Mat3::from_fn(|i, j| (0..3).map(|k| self.0[i][k] * rhs.0[k][j]).sum())
    }
}

impl Add for Mat3 {
    type Output = Mat3;

    fn add(self, rhs: Mat3) -> Mat3 {
        Mat3::from_fn(|i, j| self.0[i][j] + rhs.0[i][j])
    }
}

impl Sub for Mat3 {
    type Output = Mat3;

    fn sub(self, rhs: Mat3) -> Mat3 {
        Mat3::from_fn(|i, j| self.0[i][j] - rhs.0[i][j])
    }
}

impl From<Sym3> for Mat3 {
    fn from(s: Sym3) -> Mat3 {
        s.to_mat3()
    }
}

/// Determinant of the 3×3 matrix with the given rows.
#[inline]
pub fn det3(r0: [f64; 3], r1: [f64; 3], r2: [f64; 3]) -> f64 {
    r0[0] * (r1[1] * r2[2] - r1[2] * r2[1]) - r0[1] * (r1[0] * r2[2] - r1[2] * r2[0])
        + r0[2] * (r1[0] * r2[1] - r1[1] * r2[0])
}

#[inline]
pub fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}
