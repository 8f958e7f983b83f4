//! The quaternion origami: eight squares, four cone points of angle 4π.

use porigami::families::quaternion_pair;
use porigami::origami::Origami;
use porigami::Caps;

fn main() -> porigami::Result<()> {
    let (q8, i, j) = quaternion_pair(Caps::default())?;
    let o = Origami::new(q8, i, j)?;
    let d = o.singularity_data();
    println!("x = {}", o.x());
    println!("y = {}", o.y());
    println!("[x,y] = {}", o.commutator());
    println!(
        "{} squares, stratum {}, genus {}",
        o.size(),
        d.stratum,
        d.genus
    );
    Ok(())
}
