//! Builds algebras from the Kähler and SKT normal forms and checks the
//! resulting structures exactly.

use hermlie::catalog::render_salamon;
use hermlie::hermitian::{classify_metric, hermitian_decomposition};
use hermlie::scalar::q;
use hermlie::shear::{
    kahler_normal_form, random_kahler_params, random_type_ii_params, skt_one_rotation_data, skt_two_rotation_data,
    skt_type_ii_normal_form, KahlerKind,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> hermlie::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (kind, s, r, ell) in [(KahlerKind::I, 0, 2, 1), (KahlerKind::II, 1, 0, 2), (KahlerKind::III, 1, 2, 0)] {
        let p = random_kahler_params(kind, s, r, ell, &mut rng);
        let (l, g, j) = kahler_normal_form(&p)?;
        let d = hermitian_decomposition(&l, &g, &j)?;
        println!("Kähler {kind:?}: {} -> {:?}, type {:?}", render_salamon(&l), classify_metric(&l, &g, &j)?, d.pure_type);
    }

    for (name, p) in [
        ("two rotations", skt_two_rotation_data()),
        ("one rotation, λ = 1/2", skt_one_rotation_data(&q(1, 2))),
        ("random s = 2, ℓ = 2", random_type_ii_params(2, 2, &mut rng)),
    ] {
        let (l, g, j) = skt_type_ii_normal_form(&p)?;
        println!("SKT type II ({name}): {} -> {:?}", render_salamon(&l), classify_metric(&l, &g, &j)?);
    }
    Ok(())
}
