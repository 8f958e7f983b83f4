//! SL(2,Z) orbits of normal origamis. Every member stays in the same stratum.

use porigami::families::{maximal_class_family, quaternion_pair, MaximalClass};
use porigami::origami::{sl2_orbit, Origami, Sl2Gen};
use porigami::Caps;

fn main() -> porigami::Result<()> {
    let (q8, i, j) = quaternion_pair(Caps::default())?;
    let w = Origami::new(q8, i, j)?;
    println!("wollmilchsau: orbit size {}", sl2_orbit(&w, 100)?.len());

    let (d16, r, s) = maximal_class_family(MaximalClass::Dihedral, 4, Caps::default())?;
    let o = Origami::new(d16, r, s)?;
    let t = o.act(Sl2Gen::T);
    println!("D_16 under T: x = {}, y = {}", t.x(), t.y());
    let orbit = sl2_orbit(&o, 1000)?;
    println!("D_16: orbit size {}, stratum {}", orbit.len(), o.stratum());
    Ok(())
}
