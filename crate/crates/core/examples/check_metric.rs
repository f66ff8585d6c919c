//! Exact Kähler / balanced / SKT verdicts for a few Hermitian structures,
//! together with the forms that decide them.

use hermlie::catalog::{salamon, type_i_counterexample};
use hermlie::hermitian::{classify_metric, hermitian_decomposition, hermitian_forms, ClassifyOptions, ComplexStructure, Metric};

fn main() -> hermlie::Result<()> {
    let j = ComplexStructure::standard(6);

    // aff_R ⊕ h_3 ⊕ R with the identity metric: SKT but not Kähler.
    let l = salamon("(0,21,0,0,43,0)")?;
    let g = Metric::identity(6);
    let forms = hermitian_forms(&l, &g, &j, ClassifyOptions::default())?;
    println!("aff_R+h_3+R, identity metric");
    println!("  σ        = {}", forms.sigma);
    println!("  dσ       = {}", forms.d_sigma);
    println!("  dσ²      = {}", forms.d_sigma_power);
    println!("  dJ*dσ    = {}", forms.d_j_d_sigma);
    println!("  verdicts = {:?}", classify_metric(&l, &g, &j)?);

    // The stored counterexample also carries a balanced metric.
    let e = type_i_counterexample();
    for w in &e.witnesses {
        println!("aff_R+h_3+R, witness {}", w.label);
        println!("  verdicts = {:?}", classify_metric(&e.algebra, &w.metric, &e.j)?);
    }

    // Two commuting rotations: Kähler, hence balanced and SKT.
    let l = salamon("(-25,15,-46,36,0,0)")?;
    let g = Metric::identity(6);
    println!("(-25,15,-46,36,0,0), identity metric");
    println!("  verdicts = {:?}", classify_metric(&l, &g, &j)?);
    let d = hermitian_decomposition(&l, &g, &j)?;
    println!("  s = {}, r = {}, ℓ = {}, type {:?}", d.s, d.r, d.ell, d.pure_type);
    Ok(())
}
