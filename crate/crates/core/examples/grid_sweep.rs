//! Sweep a parameter grid from a JSON specification and print CSV.
//!
//! `cargo run --example grid_sweep -- specs/sphere_cylinder.json`

use std::io;

use hypershape::report::write_csv;
use hypershape::Analyzer;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/specs/flat_slab.json").into());
    let analyzer = Analyzer::load(&path)?;
    let rows = analyzer.run_grid();
    write_csv(&rows, io::stdout().lock())?;
    let singular = rows.iter().filter(|r| r.status() == "singular").count();
    eprintln!("{}: {} rows, {singular} singular", path, rows.len());
    Ok(())
}
