//! The stratum of the normal origami built from `G_{p,n,k}` depends only on
//! the order of the commutator of its generators.

use porigami::families::strata_family;
use porigami::origami::Origami;

fn main() -> porigami::Result<()> {
    for (p, n, k) in [
        (2, 3, 1),
        (2, 5, 2),
        (2, 6, 4),
        (3, 3, 1),
        (3, 5, 2),
        (5, 3, 1),
    ] {
        let (g, r, s) = strata_family(p, n, k)?;
        let o = Origami::new(g, r, s)?;
        let d = o.singularity_data();
        println!(
            "G({p},{n},{k}): {:>5} squares  {:<12} genus {}",
            o.size(),
            d.stratum.to_string(),
            d.genus
        );
    }
    Ok(())
}
