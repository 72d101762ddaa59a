//! Property tests over random members of a few surface families.

mod common;

use hypershape::report::{Analyzer, CoordinateTexts, DomainSpec, SurfaceSpec};
use hypershape::weingarten::curvatures_explicit;
use hypershape::{
    analyze, dot, frame_at, fundamental_form, implicit_normal, shape_operator_orthogonal, shape_operator_orthonormal,
    verify_ternary_identities, Expr, FrameData, Mode, ParametricSurface, DEFAULT_EPS_REG,
};
use proptest::prelude::*;

/// Non-orthogonal family: a perturbed graph.
fn generic(c: [f64; 7]) -> ParametricSurface {
    ParametricSurface::parse_unbounded([
        &format!("u + ({})*v*w", c[0]),
        &format!("v + ({})*sin(u)", c[1]),
        &format!("w + ({})*u*v", c[2]),
        &format!("({})*u^2 + ({})*v*w + ({})*cos(w) + ({})*u*v*w", c[3], c[4], c[5], c[6]),
    ])
    .unwrap()
}

/// Orthogonal family: a tube around a circle with radii `big > small`.
fn tube(big: f64, small: f64) -> ParametricSurface {
    ParametricSurface::parse_unbounded([
        &format!("({big} + {small}*cos(v))*cos(u)"),
        &format!("({big} + {small}*cos(v))*sin(u)"),
        &format!("{small}*sin(v)*cos(w)"),
        &format!("{small}*sin(v)*sin(w)"),
    ])
    .unwrap()
}

fn sphere(radius: f64) -> ParametricSurface {
    ParametricSurface::parse_unbounded([
        &format!("{radius}*sin(u)*cos(v)*sin(w)"),
        &format!("{radius}*sin(u)*sin(v)*sin(w)"),
        &format!("{radius}*cos(u)*sin(w)"),
        &format!("{radius}*cos(w)"),
    ])
    .unwrap()
}

fn coefficients() -> impl Strategy<Value = [f64; 7]> {
    prop::array::uniform7(-0.5f64..0.5)
}

fn point() -> impl Strategy<Value = [f64; 3]> {
    prop::array::uniform3(-1.0f64..1.0)
}

fn regular(s: &ParametricSurface, p: [f64; 3]) -> Option<FrameData> {
    frame_at(s, p, DEFAULT_EPS_REG)
        .ok()
        .filter(|f| f.delta > 1e-6 * f.gram.0[0] * f.gram.0[3] * f.gram.0[5])
}

fn coords() -> impl Strategy<Value = [f64; 3]> {
    prop::array::uniform3(-2.0f64..2.0)
}

proptest! {
    #[test]
    fn frame_invariants(c in coefficients(), p in point()) {
        let Some(f) = regular(&generic(c), p) else { return Ok(()) };
        prop_assert!((f.normal.norm() - 1.0).abs() <= 1e-12);
        prop_assert!((f.delta - f.ternary.norm_squared()).abs() <= 1e-9 * f.delta);
        for v in f.frame {
            prop_assert!(dot(f.normal, v).abs() <= 1e-10 * f.max_frame_norm());
        }
    }

    #[test]
    fn curvature_invariants(c in coefficients(), p in point()) {
        let Some(f) = regular(&generic(c), p) else { return Ok(()) };
        let s = analyze(&f, None).unwrap();
        let scale = s.s_ortho.frobenius_norm().max(1.0);
        prop_assert!((s.s_frame.det() - s.gaussian).abs() <= 1e-9 * scale.powi(3));
        prop_assert!((s.s_frame.trace() / 3.0 - s.mean).abs() <= 1e-9 * scale);
        let [k1, k2, k3] = s.principal;
        prop_assert!(k1 >= k2 && k2 >= k3);
        prop_assert!((k1 * k2 * k3 - s.gaussian).abs() <= 1e-9 * scale.powi(3));
        prop_assert!((k1 + k2 + k3 - 3.0 * s.mean).abs() <= 1e-9 * scale);
        for d in s.directions {
            prop_assert!((d.norm() - 1.0).abs() <= 1e-12);
            prop_assert!(dot(d, f.normal).abs() <= 1e-10);
        }
    }

    #[test]
    fn ternary_identities(c in coefficients(), p in point(), x in coords(), y in coords(), z in coords()) {
        let Some(f) = regular(&generic(c), p) else { return Ok(()) };
        let s = analyze(&f, None).unwrap();
        if let Ok(r) = verify_ternary_identities(&f, &s.s_frame, x, y, z) {
            prop_assert!(r.max_relative() <= 1e-8, "{r:?}");
        }
    }

    #[test]
    fn cayley_hamilton(c in coefficients(), p in point()) {
        let Some(f) = regular(&generic(c), p) else { return Ok(()) };
        let s = analyze(&f, None).unwrap();
        if s.principal.iter().all(|k| k.abs() > 1e-6) {
            let r = s.cayley_hamilton().unwrap();
            prop_assert!(r <= 1e-9 * s.s_ortho.frobenius_norm().powi(3));
        }
    }

    #[test]
    fn first_form_is_the_metric(c in coefficients(), p in point(), x in coords(), y in coords()) {
        let Some(f) = regular(&generic(c), p) else { return Ok(()) };
        let s = analyze(&f, None).unwrap();
        let got = fundamental_form(1, &f, &s.s_frame, x, y).unwrap();
        let (xv, yv) = (f.tangent(x), f.tangent(y));
        prop_assert!((got - dot(xv, yv)).abs() <= 1e-12 * xv.norm().max(1.0) * yv.norm().max(1.0));
        // II(X, Y) = <S X, Y> is symmetric even though the frame matrix is not.
        let ii_xy = fundamental_form(2, &f, &s.s_frame, x, y).unwrap();
        let ii_yx = fundamental_form(2, &f, &s.s_frame, y, x).unwrap();
        prop_assert!((ii_xy - ii_yx).abs() <= 1e-10 * xv.norm().max(1.0) * yv.norm().max(1.0) * s.s_ortho.frobenius_norm().max(1.0));
    }

    #[test]
    fn orthogonal_paths(big in 2.0f64..4.0, small in 0.2f64..1.5, p in (-3.0f64..3.0, 0.2f64..2.9, -3.0f64..3.0)) {
        let f = frame_at(&tube(big, small), [p.0, p.1, p.2], DEFAULT_EPS_REG).unwrap();
        prop_assert!(f.is_orthogonal(1e-10));
        let closed = shape_operator_orthogonal(&f).unwrap();
        let (ortho, _) = shape_operator_orthonormal(&f).unwrap();
        for (a, b) in closed.0.iter().zip(ortho.0) {
            prop_assert!((a - b).abs() <= 1e-12 * closed.frobenius_norm().max(1.0));
        }
        let (k, h) = curvatures_explicit(&f);
        prop_assert!((k - closed.det()).abs() <= 1e-10 * closed.frobenius_norm().max(1.0).powi(3));
        prop_assert!((h - closed.trace() / 3.0).abs() <= 1e-10 * closed.frobenius_norm().max(1.0));
    }

    #[test]
    fn scaled_hypersphere(radius in 0.1f64..10.0, p in (0.2f64..2.9, -3.0f64..3.0, 0.2f64..2.9)) {
        let f = frame_at(&sphere(radius), [p.0, p.1, p.2], DEFAULT_EPS_REG).unwrap();
        let s = analyze(&f, None).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { -1.0 / radius } else { 0.0 };
                prop_assert!((s.s_ortho.get(i, j) - want).abs() <= 1e-9 / radius);
            }
        }
        prop_assert!((s.gaussian + radius.powi(-3)).abs() <= 1e-9 * radius.powi(-3));
    }

    #[test]
    fn implicit_normals_agree_up_to_sign(p in (0.2f64..2.9, -3.0f64..3.0, 0.2f64..2.9), u in 0.5f64..2.0, v in -2.0f64..2.0) {
        let cases = [
            (sphere(1.0), "x^2 + y^2 + z^2 + t^2", [p.0, p.1, p.2]),
            (common::HYPERBOLA.surface(), "x*y", [u, v, p.1]),
        ];
        for (s, g, at) in cases {
            let f = frame_at(&s, at, DEFAULT_EPS_REG).unwrap();
            let n = implicit_normal(&Expr::parse(g, Mode::Implicit).unwrap(), f.position).unwrap();
            let same = (n - f.normal).max_abs();
            let opposite = (n + f.normal).max_abs();
            prop_assert!(same.min(opposite) <= 1e-9, "{n} vs {}", f.normal);
        }
    }
}

#[test]
fn sheared_hyperplane_is_flat() {
    let s = ParametricSurface::parse_unbounded(["u", "u + v", "w", "0"]).unwrap();
    let f = frame_at(&s, [0.4, -0.3, 1.0], DEFAULT_EPS_REG).unwrap();
    let (ortho, basis) = shape_operator_orthonormal(&f).unwrap();
    assert!(ortho.0.iter().all(|&x| x == 0.0));
    for i in 0..3 {
        for j in 0..3 {
            let want = if i == j { 1.0 } else { 0.0 };
            assert!((dot(basis[i], basis[j]) - want).abs() < 1e-15);
        }
    }
}

#[test]
fn parallel_grid_matches_sequential_evaluation() {
    let spec = SurfaceSpec {
        description: None,
        surface: CoordinateTexts {
            x: common::GENERIC.coords[0].into(),
            y: common::GENERIC.coords[1].into(),
            z: common::GENERIC.coords[2].into(),
            t: common::GENERIC.coords[3].into(),
        },
        domain: DomainSpec {
            u: [-1.0, 1.0],
            v: [-1.0, 1.0],
            w: [-1.0, 1.0],
        },
        samples: [6, 5, 4],
        implicit: None,
        eps_k: None,
        eps_reg: None,
    };
    let a = Analyzer::from_spec(&spec).unwrap();
    let parallel: Vec<String> = a.run_grid().iter().map(|r| r.csv_line()).collect();
    let sequential: Vec<String> = a
        .grid_points()
        .into_iter()
        .map(|p| {
            hypershape::report::GridRow {
                point: p,
                outcome: a.analyze_point(p),
            }
            .csv_line()
        })
        .collect();
    assert_eq!(parallel, sequential);
}
