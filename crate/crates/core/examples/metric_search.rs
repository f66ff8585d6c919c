//! Searches numerically for Kähler, balanced and SKT metrics and verifies
//! rationalised witnesses exactly.

use hermlie::catalog::{type_i_counterexample, witness_lists};
use hermlie::scalar::format_scalar;
use hermlie::search::{search_metric, SearchConfig};
use hermlie::shear::ConditionKind;

fn main() -> hermlie::Result<()> {
    let config = SearchConfig::from_env()?;
    let mut entries = vec![type_i_counterexample()];
    entries.extend(witness_lists().into_iter().filter(|e| e.name == "2r'_{3,0}"));
    for e in entries {
        for kind in ConditionKind::ALL {
            let r = search_metric(&e.algebra, &e.j, kind, &config)?;
            println!(
                "{:<22} {kind:<8} {:<32} residual {:.1e}, seed {}, exact {}",
                e.name,
                r.status.describe(),
                r.residual,
                r.seed,
                r.exact_verified
            );
            if let Some(g) = r.exact_metric {
                for i in 0..g.dim() {
                    let row = g.matrix().row(i);
                    let row: Vec<String> = row.iter().map(format_scalar).collect();
                    println!("    [{}]", row.join(", "));
                }
            }
        }
    }
    Ok(())
}
