//! Shape operator geometry of hypersurfaces `M³ ⊂ E⁴`.
//!
//! Given a parametrization `φ(u, v, w)` as four text expressions, the crate
//! computes the tangent frame and unit normal (via the 4D ternary cross
//! product), the Weingarten map in both the frame basis and an orthonormal
//! basis, Gaussian, mean and principal curvatures, the fundamental forms,
//! and the Dupin-indicatrix class of the point. It also measures the
//! ternary-product and Cayley–Hamilton identities the shape operator must
//! satisfy.
//!
//! ```
//! use hypershape::{analyze, frame_at, ParametricSurface, PointClass, DEFAULT_EPS_REG};
//!
//! let s = ParametricSurface::parse_unbounded(["u", "1/u", "v", "w"]).unwrap();
//! let frame = frame_at(&s, [1.0, 0.0, 0.0], DEFAULT_EPS_REG).unwrap();
//! let shape = analyze(&frame, None).unwrap();
//! assert!((shape.principal[0] - 0.5f64.sqrt()).abs() < 1e-15);
//! assert_eq!(shape.classification.class, PointClass::PlanarPair);
//! ```

// `!(x > tol)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::needless_range_loop)]

pub mod classify;
pub mod expr;
pub mod geometry;
pub mod jet;
pub mod matrix;
pub mod report;
pub mod vec4;
pub mod weingarten;

pub use classify::{classify_point, Classification, PointClass, SignPattern};
pub use expr::{Expr, Mode};
pub use geometry::{frame_at, implicit_normal, FrameData, GeometryError, ParametricSurface, DEFAULT_EPS_REG};
pub use jet::{Jet, Jet2, Jet2x4, Scalar};
pub use matrix::{Mat3, Sym3};
pub use report::{Analyzer, PointReport, SurfaceSpec};
pub use vec4::{det4, dot, gram_det, ternary, Vec4};
pub use weingarten::{
    analyze, cayley_hamilton_residual, curvatures, fundamental_form, principal_curvatures, shape_operator_general,
    shape_operator_orthogonal, shape_operator_orthonormal, verify_ternary_identities, ShapeResult, WeingartenError,
};
