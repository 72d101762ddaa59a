//! Exact first and second derivatives with second-order jets.

use hypershape::{Expr, Jet2, Mode};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let [u, v, w] = Jet2::seeds([1.0, 2.0, 0.5]);

    let f = u * v * w + (u * w).sin();
    println!("f = uvw + sin(uw) at (1, 2, 0.5)");
    println!("  value    {}", f.val);
    println!("  gradient {:?}", f.grad);
    for row in f.hessian() {
        println!("  hessian  {row:?}");
    }

    let q = (u * u + v).checked_div(w)?.sqrt()?;
    println!("sqrt((u² + v) / w): value {}, ∂/∂w {}", q.val, q.grad[2]);

    // Parsed expressions evaluate over jets just as over f64.
    let e = Expr::parse("exp(u) * cos(v) - w^3", Mode::Parametric)?;
    let j = e.eval_jet(&[u, v, w])?;
    println!("{e}: value {}, ∂²/∂u∂v {}", j.val, j.second(0, 1));

    match Expr::parse("log(u - 2)", Mode::Parametric)?.eval_jet(&[u, v, w]) {
        Ok(_) => println!("unexpected success"),
        Err(e) => println!("log(u - 2) at u = 1: {e}"),
    }
    Ok(())
}
