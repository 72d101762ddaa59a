//! Run the identity suite on every bundled specification, and show the
//! asymmetric frame-basis matrix of a non-orthogonal parametrization.

use std::fs;

use hypershape::{analyze, frame_at, Analyzer, ParametricSurface, DEFAULT_EPS_REG};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/specs");
    let mut paths: Vec<_> = fs::read_dir(dir)?
        .map(|e| e.map(|e| e.path()))
        .collect::<Result<_, _>>()?;
    paths.sort();
    for path in paths {
        let report = Analyzer::load(&path)?.run_check();
        println!("== {}", path.file_name().unwrap_or_default().to_string_lossy());
        println!("{report}\n");
    }

    let sheared = ParametricSurface::parse_unbounded(["u", "u + v^2", "v", "w"])?;
    let shape = analyze(&frame_at(&sheared, [0.2, 0.7, 0.0], DEFAULT_EPS_REG)?, None)?;
    let a = shape.s_frame;
    println!("frame-basis matrix at (0.2, 0.7, 0):");
    for row in a.0 {
        println!("  {row:>10.6?}");
    }
    println!("|A - Aᵀ| = {:.6}", (a - a.transpose()).frobenius_norm());
    println!("eigenvalues of the symmetric form: {:?}", shape.principal);
    Ok(())
}
