//! Parsing, printing and evaluating coordinate expressions.

use hypershape::{Expr, Mode};

fn main() {
    let inputs = [
        ("sin(u)*cos(v)*sin(w)", Mode::Parametric),
        ("-u^2 + 2*pi*v/w", Mode::Parametric),
        ("(1 + u^4)^(-1/2)", Mode::Parametric),
        ("x^2 + y^2 + z^2 + t^2", Mode::Implicit),
        ("u + * v", Mode::Parametric),
        ("u^v", Mode::Parametric),
        ("x + u", Mode::Implicit),
        ("foo(u)", Mode::Parametric),
    ];
    for (text, mode) in inputs {
        match Expr::parse(text, mode) {
            Ok(e) => {
                let names: Vec<&str> = e.variables().iter().map(|v| v.name()).collect();
                let value = e.eval_scalar(&[0.5, 1.5, 2.0, 1.0]);
                println!("{text:<24} -> {e:<32} vars {names:?} at (0.5, 1.5, 2, 1) = {value:?}");
            }
            Err(err) => println!("{text:<24} -> error: {err}"),
        }
    }
}
