//! Random complex shear data: the conditions evaluated on ω directly agree
//! with the conditions on the algebra the shear builds.

use hermlie::hermitian::classify_metric;
use hermlie::shear::{build_shear, random_complex_shear, shear_operators, shear_verdicts, ShearProfile};

fn main() -> hermlie::Result<()> {
    for profile in ShearProfile::ALL {
        for seed in 0..3 {
            let s = random_complex_shear(seed, profile, 6)?;
            let direct = shear_verdicts(&s.data, &s.g, &s.j)?;
            let l = build_shear(&s.data)?;
            let built = classify_metric(&l, &s.g, &s.j)?;
            let (_, lemma) = shear_operators(&s.data, &s.g, &s.j)?;
            println!(
                "{profile:?} seed {seed}: dim a = {}, derived series {:?} | K {} B {} S {} | agree {} | structure lemma {}",
                s.data.a().dim(),
                l.derived_series_dims(),
                direct.kahler,
                direct.balanced,
                direct.skt,
                direct == built,
                if lemma.is_clean() { "ok" } else { "VIOLATED" },
            );
        }
    }
    Ok(())
}
