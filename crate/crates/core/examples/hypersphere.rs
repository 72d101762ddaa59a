//! Shape operator, curvatures and fundamental forms of the unit hypersphere.
//!
//! With the normal `φ_u ⊗ φ_v ⊗ φ_w / |·|` this parametrization is oriented
//! inward, so `S = -I` and `K = H = -1`.

use std::f64::consts::FRAC_PI_2;

use hypershape::{analyze, frame_at, fundamental_form, ParametricSurface, DEFAULT_EPS_REG};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sphere = ParametricSurface::parse_unbounded([
        "sin(u)*cos(v)*sin(w)",
        "sin(u)*sin(v)*sin(w)",
        "cos(u)*sin(w)",
        "cos(w)",
    ])?;

    for p in [[FRAC_PI_2, 0.0, FRAC_PI_2], [0.7, 2.1, 1.2], [2.5, -1.0, 0.4]] {
        let f = frame_at(&sphere, p, DEFAULT_EPS_REG)?;
        let s = analyze(&f, None)?;
        println!("at {p:?}");
        println!("  φ = {}   N = {}", f.position, f.normal);
        println!("  S_ortho = {:?}", s.s_ortho.entries());
        println!("  K = {:.12}  H = {:.12}  k = {:?}", s.gaussian, s.mean, s.principal);
        println!(
            "  class {}   cayley-hamilton residual {:.2e}",
            s.classification.class,
            s.cayley_hamilton()?
        );
        let x = [1.0, 0.0, 0.0];
        let forms: Vec<f64> = (1..=4)
            .map(|q| fundamental_form(q, &f, &s.s_frame, x, x))
            .collect::<Result<_, _>>()?;
        println!("  I..IV(φ_u, φ_u) = {forms:?}");
    }

    match frame_at(&sphere, [0.0, 0.0, 0.0], DEFAULT_EPS_REG) {
        Ok(_) => println!("origin unexpectedly regular"),
        Err(e) => println!("origin: {e}"),
    }
    Ok(())
}
