//! Vectors of E⁴ and the ternary (4D cross) product.
//!
//! The ternary product `x ⊗ y ⊗ z` is the formal cofactor expansion of
//!
//! ```text
//! | e1  e2  e3  e4 |
//! | x1  x2  x3  x4 |
//! | y1  y2  y3  y4 |
//! | z1  z2  z3  z4 |
//! ```
//!
//! along the basis row. Substituting a vector `t` for the basis row gives
//! `<x ⊗ y ⊗ z, t> = det4(t, x, y, z)`. Note the row order: with the
//! standard determinant, `det4(x, y, z, t) = -<x ⊗ y ⊗ z, t>`, which is what
//! makes `e1 ⊗ e2 ⊗ e3 = -e4` consistent with `det4(e1, e2, e3, e4) = 1`.
//!
//! Everything here uses only `+`, `-` and `*`, so integer-valued inputs give
//! bit-exact integer results.

use std::fmt;
use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// A point or vector of E⁴ in the standard basis.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Vec4(pub [f64; 4]);

impl Vec4 {
    pub const ZERO: Vec4 = Vec4([0.0; 4]);
    pub const E1: Vec4 = Vec4([1.0, 0.0, 0.0, 0.0]);
    pub const E2: Vec4 = Vec4([0.0, 1.0, 0.0, 0.0]);
    pub const E3: Vec4 = Vec4([0.0, 0.0, 1.0, 0.0]);
    pub const E4: Vec4 = Vec4([0.0, 0.0, 0.0, 1.0]);

    #[inline]
    pub const fn new(c1: f64, c2: f64, c3: f64, c4: f64) -> Self {
        Vec4([c1, c2, c3, c4])
    }

    /// The `i`-th standard basis vector, `i` in `0..4`.
    pub fn basis(i: usize) -> Self {
        let mut c = [0.0; 4];
        c[i] = 1.0;
        Vec4(c)
    }

    #[inline]
    pub fn components(&self) -> [f64; 4] {
        self.0
    }

    #[inline]
    pub fn dot(&self, other: &Vec4) -> f64 {
        dot(*self, *other)
    }

    #[inline]
    pub fn norm_squared(&self) -> f64 {
        dot(*self, *self)
    }

    #[inline]
    pub fn norm(&self) -> f64 {
        self.norm_squared().sqrt()
    }

    /// Largest absolute component.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }
}

impl Index<usize> for Vec4 {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for Vec4 {
    type Output = Vec4;

    fn add(self, rhs: Vec4) -> Vec4 {
        Vec4(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl AddAssign for Vec4 {
    fn add_assign(&mut self, rhs: Vec4) {
        *self = *self + rhs;
    }
}

impl Sub for Vec4 {
    type Output = Vec4;

    fn sub(self, rhs: Vec4) -> Vec4 {
        Vec4(std::array::from_fn(|i| self.0[i] - rhs.0[i]))
    }
}

impl Neg for Vec4 {
    type Output = Vec4;

    fn neg(self) -> Vec4 {
        Vec4(self.0.map(|c| -c))
    }
}

impl Mul<f64> for Vec4 {
    type Output = Vec4;

    fn mul(self, s: f64) -> Vec4 {
        Vec4(self.0.map(|c| c * s))
    }
}

impl Mul<Vec4> for f64 {
    type Output = Vec4;

    fn mul(self, v: Vec4) -> Vec4 {
        v * self
    }
}

impl From<[f64; 4]> for Vec4 {
    fn from(c: [f64; 4]) -> Self {
        Vec4(c)
    }
}

impl fmt::Display for Vec4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "({a}, {b}, {c}, {d})")
    }
}

/// Standard inner product `x1*y1 + x2*y2 + x3*y3 + x4*y4`.
#[inline]
pub fn dot(x: Vec4, y: Vec4) -> f64 {
    x.0[0] * y.0[0] + x.0[1] * y.0[1] + x.0[2] * y.0[2] + x.0[3] * y.0[3]
}

/// The six 2×2 minors of the rows `y`, `z`, indexed by column pair
/// `(0,1) (0,2) (0,3) (1,2) (1,3) (2,3)`.
#[inline]
fn pair_minors(y: Vec4, z: Vec4) -> [f64; 6] {
    let m = |a: usize, b: usize| y.0[a] * z.0[b] - y.0[b] * z.0[a];
    [m(0, 1), m(0, 2), m(0, 3), m(1, 2), m(1, 3), m(2, 3)]
}

/// The ternary product `x ⊗ y ⊗ z`.
///
/// Orthogonal to all three arguments, alternating, and its squared norm is
/// the Gram determinant of the triple.
pub fn ternary(x: Vec4, y: Vec4, z: Vec4) -> Vec4 {
    let [d12, d13, d14, d23, d24, d34] = pair_minors(y, z);
    let [x1, x2, x3, x4] = x.0;
    // 3×3 minors of rows (x, y, z) with column i removed
    let m1 = x2 * d34 - x3 * d24 + x4 * d23;
    let m2 = x1 * d34 - x3 * d14 + x4 * d13;
    let m3 = x1 * d24 - x2 * d14 + x4 * d12;
    let m4 = x1 * d23 - x2 * d13 + x3 * d12;
    Vec4([m1, -m2, m3, -m4])
}

/// Determinant of the 4×4 matrix with rows `x, y, z, t`.
pub fn det4(x: Vec4, y: Vec4, z: Vec4, t: Vec4) -> f64 {
    // Laplace expansion along the first two rows.
    let a = pair_minors(x, y);
    let b = pair_minors(z, t);
    a[0] * b[5] - a[1] * b[4] + a[2] * b[3] + a[3] * b[2] - a[4] * b[1] + a[5] * b[0]
}

/// Determinant of the Gram matrix of `x, y, z`; equals `|x ⊗ y ⊗ z|²`.
pub fn gram_det(x: Vec4, y: Vec4, z: Vec4) -> f64 {
    let (xx, xy, xz) = (dot(x, x), dot(x, y), dot(x, z));
    let (yy, yz, zz) = (dot(y, y), dot(y, z), dot(z, z));
    xx * (yy * zz - yz * yz) - xy * (xy * zz - yz * xz) + xz * (xy * yz - yy * xz)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const E: [Vec4; 4] = [Vec4::E1, Vec4::E2, Vec4::E3, Vec4::E4];

    /// Brute-force permutation-sum determinant, independent of the
    /// Laplace expansion above.
    fn leibniz_det(rows: [Vec4; 4]) -> f64 {
        let mut total = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let p = [a, b, c, d];
                        let mut seen = [false; 4];
                        if p.iter().any(|&i| std::mem::replace(&mut seen[i], true)) {
                            continue;
                        }
                        let mut inv = 0;
                        for i in 0..4 {
                            for j in i + 1..4 {
                                if p[i] > p[j] {
                                    inv += 1;
                                }
                            }
                        }
                        let sign = if inv % 2 == 0 { 1.0 } else { -1.0 };
                        total += sign * rows[0][a] * rows[1][b] * rows[2][c] * rows[3][d];
                    }
                }
            }
        }
        total
    }

    #[test]
    fn dot_examples() {
        assert_eq!(dot(Vec4::E1, Vec4::E1), 1.0);
        assert_eq!(dot(Vec4::E1, Vec4::E2), 0.0);
        let a = Vec4::new(1.0, -1.0, 0.0, 0.0);
        assert_eq!(dot(a, a), 2.0);
    }

    #[test]
    fn basis_identities() {
        assert_eq!(ternary(E[0], E[1], E[2]), -E[3]);
        assert_eq!(ternary(E[1], E[2], E[3]), E[0]);
        assert_eq!(ternary(E[2], E[3], E[0]), -E[1]);
        assert_eq!(ternary(E[3], E[0], E[1]), E[2]);
        assert_eq!(ternary(E[2], E[1], E[0]), E[3]);
    }

    #[test]
    fn ternary_examples() {
        let x = Vec4::new(3.0, -2.0, 5.0, 1.0);
        let z = Vec4::new(0.5, 4.0, -1.0, 2.0);
        assert_eq!(ternary(x, x, z), Vec4::ZERO);
        let phi_u = Vec4::new(1.0, -1.0, 0.0, 0.0);
        assert_eq!(ternary(phi_u, E[2], E[3]), Vec4::new(-1.0, -1.0, 0.0, 0.0));
    }

    #[test]
    fn det4_examples() {
        assert_eq!(det4(E[0], E[1], E[2], E[3]), 1.0);
        let x = Vec4::new(1.0, 2.0, 3.0, 4.0);
        let y = Vec4::new(-1.0, 0.0, 7.0, 2.0);
        let z = Vec4::new(5.0, 5.0, -3.0, 1.0);
        assert_eq!(det4(x, y, z, x), 0.0);
        let rows = [
            Vec4::new(0.0, 2.0, 0.0, 0.0),
            Vec4::new(1.0, -1.0, 0.0, 0.0),
            E[2],
            E[3],
        ];
        assert_eq!(leibniz_det(rows), -2.0);
        assert_eq!(det4(rows[0], rows[1], rows[2], rows[3]), -2.0);
    }

    #[test]
    fn gram_det_examples() {
        assert_eq!(gram_det(E[0], E[1], E[2]), 1.0);
        let x = Vec4::new(1.0, 2.0, 3.0, 4.0);
        assert_eq!(gram_det(x, x, E[3]), 0.0);
        assert_eq!(gram_det(Vec4::new(1.0, -1.0, 0.0, 0.0), E[2], E[3]), 2.0);
    }

    fn int_vec() -> impl Strategy<Value = Vec4> {
        prop::array::uniform4(-50i32..=50).prop_map(|c| Vec4(c.map(f64::from)))
    }

    fn real_vec() -> impl Strategy<Value = Vec4> {
        prop::array::uniform4(-10.0f64..10.0).prop_map(Vec4)
    }

    proptest! {
        #[test]
        fn ternary_orthogonal_to_arguments(x in real_vec(), y in real_vec(), z in real_vec()) {
            let t = ternary(x, y, z);
            let scale = x.norm() * y.norm() * z.norm();
            for a in [x, y, z] {
                prop_assert!(dot(t, a).abs() <= 1e-12 * scale * a.norm().max(1.0));
            }
        }

        #[test]
        fn ternary_orthogonal_exact_on_integers(x in int_vec(), y in int_vec(), z in int_vec()) {
            let t = ternary(x, y, z);
            prop_assert_eq!(dot(t, x), 0.0);
            prop_assert_eq!(dot(t, y), 0.0);
            prop_assert_eq!(dot(t, z), 0.0);
        }

        #[test]
        fn norm_identity_exact(x in int_vec(), y in int_vec(), z in int_vec()) {
            prop_assert_eq!(ternary(x, y, z).norm_squared(), gram_det(x, y, z));
        }

        #[test]
        fn alternating(x in int_vec(), y in int_vec(), z in int_vec()) {
            prop_assert_eq!(ternary(x, y, z), -ternary(y, x, z));
            prop_assert_eq!(ternary(x, y, z), -ternary(x, z, y));
            prop_assert_eq!(ternary(x, y, z), -ternary(z, y, x));
        }

        #[test]
        fn det4_matches_leibniz(x in int_vec(), y in int_vec(), z in int_vec(), t in int_vec()) {
            prop_assert_eq!(det4(x, y, z, t), leibniz_det([x, y, z, t]));
        }

        #[test]
        fn basis_row_substitution(x in int_vec(), y in int_vec(), z in int_vec(), t in int_vec()) {
            prop_assert_eq!(dot(ternary(x, y, z), t), det4(t, x, y, z));
            prop_assert_eq!(dot(ternary(x, y, z), t), -det4(x, y, z, t));
        }
    }
}
