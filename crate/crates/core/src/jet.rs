//! Second-order forward-mode differentiation.
//!
//! A [`Jet`] carries a value together with its gradient and Hessian with
//! respect to `N` seed variables. Arithmetic on jets applies the Leibniz and
//! chain rules truncated at order two, so evaluating any composite
//! expression over seeded jets yields all first and second partials at once.
//!
//! The Hessian is stored as its upper triangle (`H = N(N+1)/2` entries), so
//! mixed partials are symmetric by construction.

use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

/// Division by anything smaller than this in magnitude is a domain error.
pub const DIVISION_GUARD: f64 = 1e-300;

/// Largest integer exponent evaluated by repeated multiplication.
pub const MAX_INTEGER_POWER: f64 = 1024.0;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum DomainError {
    #[error("division by a value of magnitude {0:e} (below {DIVISION_GUARD:e})")]
    DivisionByZero(f64),
    #[error("logarithm of non-positive value {0}")]
    LogNonPositive(f64),
    #[error("square root of negative value {0}")]
    SqrtNegative(f64),
    #[error("square root is not differentiable at 0")]
    SqrtAtZero,
    #[error("real power of non-positive base {0}")]
    PowNonPositiveBase(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("seed index {index} out of range for {vars} variables")]
pub struct InvalidSeed {
    pub index: usize,
    pub vars: usize,
}

/// Value, gradient and upper-triangular Hessian with respect to `N` variables.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet<const N: usize, const H: usize> {
    pub val: f64,
    pub grad: [f64; N],
    pub hess: [f64; H],
}

/// Jet over the three surface parameters `(u, v, w)`.
pub type Jet2 = Jet<3, 6>;

/// Jet over the four ambient coordinates `(x, y, z, t)`, used for implicit
/// equations.
pub type Jet2x4 = Jet<4, 10>;

impl<const N: usize, const H: usize> Jet<N, H> {
    const SHAPE_OK: () = assert!(H == N * (N + 1) / 2, "hessian length must be N(N+1)/2");

    /// Position of `∂²/∂i∂j` in `hess`.
    #[inline]
    pub const fn hess_index(i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        i * N - i * (i + 1) / 2 + j
    }

    pub fn constant(val: f64) -> Self {
        #[allow(clippy::let_unit_value)]
        let () = Self::SHAPE_OK;
        Jet {
            val,
            grad: [0.0; N],
            hess: [0.0; H],
        }
    }

    /// Seed for variable `index` at `value`: unit gradient, zero Hessian.
    pub fn var(index: usize, value: f64) -> Result<Self, InvalidSeed> {
        if index >= N {
            return Err(InvalidSeed { index, vars: N });
        }
        let mut j = Self::constant(value);
        j.grad[index] = 1.0;
        Ok(j)
    }

    /// Seeds for all `N` variables at `point`.
    pub fn seeds(point: [f64; N]) -> [Self; N] {
        std::array::from_fn(|i| {
            let mut j = Self::constant(point[i]);
            j.grad[i] = 1.0;
            j
        })
    }

    #[inline]
    pub fn second(&self, i: usize, j: usize) -> f64 {
        self.hess[Self::hess_index(i, j)]
    }

    /// Full symmetric Hessian.
    pub fn hessian(&self) -> [[f64; N]; N] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.second(i, j)))
    }

    /// Compose an outer univariate function with value `f_val`, first
    /// derivative `f_d1` and second derivative `f_d2` at `self.val`.
    pub fn chain(self, f_val: f64, f_d1: f64, f_d2: f64) -> Self {
        let mut out = Self::constant(f_val);
        for i in 0..N {
            out.grad[i] = f_d1 * self.grad[i];
            for j in i..N {
                let k = Self::hess_index(i, j);
                out.hess[k] = f_d1 * self.hess[k] + f_d2 * self.grad[i] * self.grad[j];
            }
        }
        out
    }

    /// Quotient to second order. The value is computed as `a / b` so it
    /// matches plain floating-point division bit for bit.
    pub fn checked_div(self, rhs: Self) -> Result<Self, DomainError> {
        let b = rhs.val;
        if b.abs() < DIVISION_GUARD {
            return Err(DomainError::DivisionByZero(b));
        }
        let q = self.val / b;
        let mut out = Self::constant(q);
        // a = q b  ⇒  ∇q = (∇a − q∇b)/b,  Hq = (Ha − q Hb − ∇q∇bᵀ − ∇b∇qᵀ)/b
        for i in 0..N {
            out.grad[i] = (self.grad[i] - q * rhs.grad[i]) / b;
        }
        for i in 0..N {
            for j in i..N {
                let k = Self::hess_index(i, j);
                out.hess[k] =
                    (self.hess[k] - q * rhs.hess[k] - out.grad[i] * rhs.grad[j] - out.grad[j] * rhs.grad[i]) / b;
            }
        }
        Ok(out)
    }

    pub fn recip(self) -> Result<Self, DomainError> {
        Jet::checked_div(Self::constant(1.0), self)
    }

    pub fn sin(self) -> Self {
        let (s, c) = self.val.sin_cos();
        self.chain(s, c, -s)
    }

    pub fn cos(self) -> Self {
        let (s, c) = self.val.sin_cos();
        self.chain(c, -s, -c)
    }

    pub fn tan(self) -> Self {
        let t = self.val.tan();
        let d1 = 1.0 + t * t;
        self.chain(t, d1, 2.0 * t * d1)
    }

    pub fn exp(self) -> Self {
        let e = self.val.exp();
        self.chain(e, e, e)
    }

    pub fn ln(self) -> Result<Self, DomainError> {
        let x = self.val;
        if x <= 0.0 {
            return Err(DomainError::LogNonPositive(x));
        }
        let r = 1.0 / x;
        Ok(self.chain(x.ln(), r, -r * r))
    }

    pub fn sqrt(self) -> Result<Self, DomainError> {
        let x = self.val;
        if x < 0.0 {
            return Err(DomainError::SqrtNegative(x));
        }
        if x == 0.0 {
            return Err(DomainError::SqrtAtZero);
        }
        let s = x.sqrt();
        let d1 = 0.5 / s;
        Ok(self.chain(s, d1, -0.5 * d1 / x))
    }

    pub fn is_finite(&self) -> bool {
        self.val.is_finite() && self.grad.iter().all(|x| x.is_finite()) && self.hess.iter().all(|x| x.is_finite())
    }
}

impl<const N: usize, const H: usize> Add for Jet<N, H> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Jet {
            val: self.val + rhs.val,
            grad: std::array::from_fn(|i| self.grad[i] + rhs.grad[i]),
            hess: std::array::from_fn(|k| self.hess[k] + rhs.hess[k]),
        }
    }
}

impl<const N: usize, const H: usize> Sub for Jet<N, H> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        Jet {
            val: self.val - rhs.val,
            grad: std::array::from_fn(|i| self.grad[i] - rhs.grad[i]),
            hess: std::array::from_fn(|k| self.hess[k] - rhs.hess[k]),
        }
    }
}

impl<const N: usize, const H: usize> Neg for Jet<N, H> {
    type Output = Self;

    fn neg(self) -> Self {
        Jet {
            val: -self.val,
            grad: self.grad.map(|x| -x),
            hess: self.hess.map(|x| -x),
        }
    }
}

impl<const N: usize, const H: usize> Mul for Jet<N, H> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let (a, b) = (self.val, rhs.val);
        let mut out = Self::constant(a * b);
        for i in 0..N {
            out.grad[i] = a * rhs.grad[i] + b * self.grad[i];
            for j in i..N {
                let k = Self::hess_index(i, j);
                out.hess[k] =
                    a * rhs.hess[k] + b * self.hess[k] + self.grad[i] * rhs.grad[j] + self.grad[j] * rhs.grad[i];
            }
        }
        out
    }
}

impl<const N: usize, const H: usize> Mul<f64> for Jet<N, H> {
    type Output = Self;

    fn mul(self, s: f64) -> Self {
        Jet {
            val: self.val * s,
            grad: self.grad.map(|x| x * s),
            hess: self.hess.map(|x| x * s),
        }
    }
}

/// Number-like values an expression can be evaluated over.
///
/// Implemented for `f64` and for every [`Jet`]. Implementations must perform
/// the same floating-point operations on the value part, so a jet
/// evaluation reproduces the plain evaluation exactly.
pub trait Scalar: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self> {
    fn constant(c: f64) -> Self;
    fn value(&self) -> f64;
    fn checked_div(self, rhs: Self) -> Result<Self, DomainError>;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn tan(self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Result<Self, DomainError>;
    fn sqrt(self) -> Result<Self, DomainError>;

    /// `self^exponent`. Integer exponents up to [`MAX_INTEGER_POWER`] use
    /// repeated multiplication (negative ones take the reciprocal of the
    /// product); anything else is `exp(exponent · ln self)` and needs a
    /// positive base.
    fn pow(self, exponent: f64) -> Result<Self, DomainError> {
        if exponent.fract() == 0.0 && exponent.abs() <= MAX_INTEGER_POWER {
            let n = exponent.abs() as u32;
            let mut acc = if n == 0 { Self::constant(1.0) } else { self };
            for _ in 1..n {
                acc = acc * self;
            }
            if exponent < 0.0 {
                Self::constant(1.0).checked_div(acc)
            } else {
                Ok(acc)
            }
        } else {
            if self.value() <= 0.0 {
                return Err(DomainError::PowNonPositiveBase(self.value()));
            }
            Ok((self.ln()? * Self::constant(exponent)).exp())
        }
    }
}

impl Scalar for f64 {
    fn constant(c: f64) -> Self {
        c
    }

    fn value(&self) -> f64 {
        *self
    }

    fn checked_div(self, rhs: Self) -> Result<Self, DomainError> {
        if rhs.abs() < DIVISION_GUARD {
            return Err(DomainError::DivisionByZero(rhs));
        }
        Ok(self / rhs)
    }

    fn sin(self) -> Self {
        self.sin_cos().0
    }

    fn cos(self) -> Self {
        self.sin_cos().1
    }

    fn tan(self) -> Self {
        f64::tan(self)
    }

    fn exp(self) -> Self {
        f64::exp(self)
    }

    fn ln(self) -> Result<Self, DomainError> {
        if self <= 0.0 {
            return Err(DomainError::LogNonPositive(self));
        }
        Ok(f64::ln(self))
    }

    fn sqrt(self) -> Result<Self, DomainError> {
        if self < 0.0 {
            return Err(DomainError::SqrtNegative(self));
        }
        Ok(f64::sqrt(self))
    }
}

impl<const N: usize, const H: usize> Scalar for Jet<N, H> {
    fn constant(c: f64) -> Self {
        Jet::constant(c)
    }

    fn value(&self) -> f64 {
        self.val
    }

    fn checked_div(self, rhs: Self) -> Result<Self, DomainError> {
        Jet::checked_div(self, rhs)
    }

    fn sin(self) -> Self {
        Jet::sin(self)
    }

    fn cos(self) -> Self {
        Jet::cos(self)
    }

    fn tan(self) -> Self {
        Jet::tan(self)
    }

    fn exp(self) -> Self {
        Jet::exp(self)
    }

    fn ln(self) -> Result<Self, DomainError> {
        Jet::ln(self)
    }

    fn sqrt(self) -> Result<Self, DomainError> {
        Jet::sqrt(self)
    }
}
