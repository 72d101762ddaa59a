//! One witness point for every Dupin-indicatrix class.

use hypershape::{analyze, frame_at, ParametricSurface, DEFAULT_EPS_REG};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let witnesses: [(&str, [&str; 4], [f64; 3]); 6] = [
        (
            "hypersphere",
            [
                "sin(u)*cos(v)*sin(w)",
                "sin(u)*sin(v)*sin(w)",
                "cos(u)*sin(w)",
                "cos(w)",
            ],
            [1.0, 1.0, 1.0],
        ),
        ("quadric saddle", ["u", "v", "w", "u^2 + v^2 - w^2"], [0.0, 0.0, 0.0]),
        (
            "sphere × line",
            ["cos(u)", "sin(u)*cos(v)", "sin(u)*sin(v)", "w"],
            [1.0, 0.5, 0.0],
        ),
        ("saddle × line", ["u", "v", "w", "u^2 - v^2"], [0.0, 0.0, 0.0]),
        ("hyperbola × plane", ["u", "1/u", "v", "w"], [1.0, 0.0, 0.0]),
        ("hyperplane", ["u", "v", "w", "0"], [0.3, 0.3, 0.3]),
    ];
    for (name, coords, p) in witnesses {
        let s = ParametricSurface::parse_unbounded(coords)?;
        let shape = analyze(&frame_at(&s, p, DEFAULT_EPS_REG)?, None)?;
        let c = shape.classification;
        println!(
            "{name:<18} k = [{:>7.4}, {:>7.4}, {:>7.4}]  (+{} -{} 0:{})  {}",
            shape.principal[0],
            shape.principal[1],
            shape.principal[2],
            c.pattern.positive,
            c.pattern.negative,
            c.pattern.zero,
            c.class
        );
    }
    Ok(())
}
