//! Parses an algebra from Salamon notation and prints its invariants.
//!
//!     cargo run --example describe_algebra -- "(0,21,0,0,43,0)"

use hermlie::catalog::{render_salamon, salamon};

fn main() -> hermlie::Result<()> {
    let text = std::env::args().nth(1).unwrap_or_else(|| "(0,21,0,0,43,0)".into());
    let l = salamon(&text)?;
    let f = l.structure_invariants()?;
    println!("algebra           {}", render_salamon(&l));
    println!("dimension         {}", f.dim);
    println!("derived series    {:?}", f.derived_series);
    println!("lower central     {:?}", f.lower_central_series);
    println!("center            {}", f.center);
    println!("unimodular        {}", f.unimodular);
    println!("nilpotent         {}", f.nilpotent);
    println!("two-step solvable {}", l.is_two_step_solvable());
    Ok(())
}
