//! Lists the stored six-dimensional examples and re-checks every witness.

use hermlie::catalog::{named_algebra, render_salamon, witness_lists, Bindings};
use hermlie::scalar::q;

fn main() -> hermlie::Result<()> {
    for e in witness_lists() {
        let ok = e.verdicts_reproduce()?;
        println!("{:<34} {:<16?} {:<40} {}", e.name, e.kind, render_salamon(&e.algebra), if ok { "ok" } else { "MISMATCH" });
        for w in &e.witnesses {
            println!("    {:<12} {:?}", w.label, w.expected);
        }
    }

    let mut b = Bindings::new();
    b.insert("alpha".into(), q(0, 1));
    b.insert("beta".into(), q(0, 1));
    b.insert("gamma".into(), q(1, 2));
    println!("g_{{5,17}}^{{0,0,1/2}} = {}", render_salamon(&named_algebra("g_{5,17}", &b)?));
    Ok(())
}
