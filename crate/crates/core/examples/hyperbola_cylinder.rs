//! The hypersurface `xy = 1` in E⁴ and its single nonzero principal
//! curvature `2u³ / (1 + u⁴)^{3/2}`.

use hypershape::{analyze, frame_at, shape_operator_orthogonal, ParametricSurface, DEFAULT_EPS_REG};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let s = ParametricSurface::parse_unbounded(["u", "1/u", "v", "w"])?;
    println!(
        "{:>6} {:>20} {:>20} {:>10}  class",
        "u", "S11 computed", "closed form", "error"
    );
    for i in 0..=6 {
        let u = 0.5 + 0.25 * f64::from(i);
        let f = frame_at(&s, [u, 0.0, 0.0], DEFAULT_EPS_REG)?;
        let shape = analyze(&f, None)?;
        let closed = 2.0 * u.powi(3) / (1.0 + u.powi(4)).powf(1.5);
        let s11 = shape.s_ortho.get(0, 0);
        println!(
            "{u:>6} {s11:>20.16} {closed:>20.16} {:>10.1e}  {}",
            (s11 - closed).abs(),
            shape.classification.class
        );
        let orth = shape_operator_orthogonal(&f)?;
        assert!((orth.get(0, 0) - s11).abs() < 1e-12);
    }
    Ok(())
}
